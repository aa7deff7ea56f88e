#include "fss/ridge.hpp"
#include "fss/errors.hpp"
#include "fss/metrics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>

namespace fss {

namespace {

// Shared by the parallel and serial Gram builders so that both produce
// bit-identical entries.
double kernel_rows(const Matrix& a, Index i, const Matrix& b, Index j, const KernelConfig& cfg)
{
    const Index d = a.cols();
    if (cfg.kind == KernelKind::linear) {
        double dot = 0.0;
        for (Index c = 0; c < d; ++c) {
            dot += a(i, c) * b(j, c);
        }
        return dot;
    }
    double sq = 0.0;
    for (Index c = 0; c < d; ++c) {
        const double diff = a(i, c) - b(j, c);
        sq += diff * diff;
    }
    return std::exp(-sq / (2.0 * cfg.gamma * cfg.gamma));
}

void check_dims(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.cols()) {
        throw DataError("kernel: dimension mismatch (" + std::to_string(a.cols()) + " vs " +
                        std::to_string(b.cols()) + ")");
    }
}

} // namespace

void KernelConfig::validate() const
{
    if (kind == KernelKind::rbf && !(gamma > 0.0 && std::isfinite(gamma))) {
        throw DataError("RBF kernel width gamma must be positive");
    }
}

void RidgeConfig::validate() const
{
    if (!(a >= 0.0 && std::isfinite(a))) {
        throw DataError("ridge parameter a must be non-negative");
    }
    kernel.validate();
}

double kernel_eval(std::span<const double> x, std::span<const double> y, const KernelConfig& cfg)
{
    if (x.size() != y.size()) {
        throw DataError("kernel: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()) + ")");
    }
    cfg.validate();
    if (cfg.kind == KernelKind::linear) {
        double dot = 0.0;
        for (std::size_t c = 0; c < x.size(); ++c) {
            dot += x[c] * y[c];
        }
        return dot;
    }
    double sq = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) {
        const double diff = x[c] - y[c];
        sq += diff * diff;
    }
    return std::exp(-sq / (2.0 * cfg.gamma * cfg.gamma));
}

Matrix kernel_matrix(const Matrix& a, const Matrix& b, const KernelConfig& cfg)
{
    check_dims(a, b);
    cfg.validate();
    Matrix k(a.rows(), b.rows());
    const bool same = &a == &b;
    const auto rows = static_cast<std::size_t>(a.rows());
    for_each_index(rows, Execution::parallel, [&](std::size_t ri) {
        const auto i = static_cast<Index>(ri);
        const Index end = same ? i + 1 : b.rows();
        for (Index j = 0; j < end; ++j) {
            k(i, j) = kernel_rows(a, i, b, j, cfg);
        }
    });
    if (same) {
        for (Index i = 0; i < k.rows(); ++i) {
            for (Index j = i + 1; j < k.cols(); ++j) {
                k(i, j) = k(j, i);
            }
        }
    }
    return k;
}

namespace serial {

Matrix kernel_matrix(const Matrix& a, const Matrix& b, const KernelConfig& cfg)
{
    check_dims(a, b);
    cfg.validate();
    Matrix k(a.rows(), b.rows());
    const bool same = &a == &b;
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < b.rows(); ++j) {
            k(i, j) = (same && j > i) ? kernel_rows(a, j, b, i, cfg) : kernel_rows(a, i, b, j, cfg);
        }
    }
    return k;
}

} // namespace serial

RidgeModel RidgeModel::fit(const Matrix& x, const Vector& z, const RidgeConfig& cfg)
{
    cfg.validate();
    if (x.rows() < 1) {
        throw DataError("ridge: need at least one training row");
    }
    if (z.size() != x.rows()) {
        throw DataError("ridge: targets and rows differ in length");
    }
    if (!x.allFinite() || !z.allFinite()) {
        throw DataError("ridge: non-finite training data");
    }
    Matrix k = kernel_matrix(x, x, cfg.kernel);
    Vector alpha;
    if (cfg.a > 0.0) {
        k.diagonal().array() += cfg.a;
        Eigen::LLT<Matrix> llt(k);
        if (llt.info() != Eigen::Success) {
            throw ComputeError("ridge: K + aI is not positive definite");
        }
        alpha = llt.solve(z);
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(k);
        if (eig.info() != Eigen::Success) {
            throw ComputeError("ridge: eigendecomposition of K failed");
        }
        const Vector& lambda = eig.eigenvalues();
        const double top = lambda.cwiseAbs().maxCoeff();
        if (lambda.minCoeff() < -1e-8 * std::max(top, 1.0)) {
            throw ComputeError("ridge: kernel matrix K is indefinite");
        }
        const double tol = static_cast<double>(k.rows()) * 1e-12 * top;
        Vector coeffs = eig.eigenvectors().transpose() * z;
        bool any = false;
        for (Index i = 0; i < lambda.size(); ++i) {
            if (lambda(i) > tol) {
                coeffs(i) /= lambda(i);
                any = true;
            } else {
                coeffs(i) = 0.0;
            }
        }
        if (!any) {
            throw ComputeError("ridge: K is singular (zero matrix) with a = 0");
        }
        alpha = eig.eigenvectors() * coeffs;
    }
    if (!alpha.allFinite()) {
        throw ComputeError("ridge: singular K + aI");
    }
    return RidgeModel(x, z, cfg, std::move(alpha));
}

Vector RidgeModel::predict(const Matrix& x_new) const
{
    if (x_new.cols() != x_.cols()) {
        throw DataError("ridge predict: expected " + std::to_string(x_.cols()) +
                        " features, got " + std::to_string(x_new.cols()));
    }
    const Matrix k = kernel_matrix(x_new, x_, cfg_.kernel);
    return k * alpha_;
}

int fold_count(const std::vector<int>& folds)
{
    if (folds.empty()) {
        throw DataError("cv: empty fold assignment");
    }
    int k = 0;
    for (int f : folds) {
        if (f < 0) {
            throw DataError("cv: negative fold id");
        }
        k = std::max(k, f + 1);
    }
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int f : folds) {
        ++sizes[static_cast<std::size_t>(f)];
    }
    for (int s : sizes) {
        if (s == 0 || static_cast<std::size_t>(s) == folds.size()) {
            throw DataError("cv: every fold needs test and training rows");
        }
    }
    return k;
}

double cv_score(const Matrix& x, const Vector& z, const FeatureSubset& subset,
                const std::vector<int>& folds, const RidgeConfig& cfg, const TargetScale& scale,
                Execution exec)
{
    if (subset.size() != static_cast<std::size_t>(x.cols())) {
        throw DataError("cv_score: subset length does not match feature count");
    }
    if (subset.empty()) {
        return kWorstScore;
    }
    IndexList all_rows(static_cast<std::size_t>(x.rows()));
    for (std::size_t i = 0; i < all_rows.size(); ++i) {
        all_rows[i] = i;
    }
    const Matrix xs = gather(x, all_rows, subset.indices());
    const Vector zs = scale.forward(z);
    const Vector pred = cv_predictions(
        xs, zs, folds,
        [&](const Matrix& xtr, const Vector& ztr, const Matrix& xte) {
            return RidgeModel::fit(xtr, ztr, cfg).predict(xte);
        },
        exec);
    return evaluate(z, scale.inverse(pred)).mmre;
}

} // namespace fss
