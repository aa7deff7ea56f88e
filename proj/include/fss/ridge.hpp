#pragma once

#include "fss/parallel.hpp"
#include "fss/subset.hpp"
#include "fss/types.hpp"

#include <limits>
#include <span>

namespace fss {

// Score given to subsets that cannot be evaluated (the empty subset). Any
// finite score beats it; two sentinels compare equal.
inline constexpr double kWorstScore = std::numeric_limits<double>::infinity();

enum class KernelKind { rbf, linear };

struct KernelConfig {
    KernelKind kind = KernelKind::rbf;
    double gamma = 3.5; // RBF width

    void validate() const;
};

struct RidgeConfig {
    double a = 0.1; // ridge parameter
    KernelConfig kernel;

    void validate() const;

    static RidgeConfig isbsg_defaults() { return {0.1, {KernelKind::rbf, 3.5}}; }
    static RidgeConfig desharnais_defaults() { return {0.05, {KernelKind::rbf, 5.0}}; }
};

// rbf: exp(-|x - y|^2 / (2 gamma^2)); linear: x . y
double kernel_eval(std::span<const double> x, std::span<const double> y, const KernelConfig& cfg);

// Gram matrix between the rows of `a` and the rows of `b`; parallel over rows
// of `a`. When `a` and `b` are the same object the result is symmetric by
// construction.
Matrix kernel_matrix(const Matrix& a, const Matrix& b, const KernelConfig& cfg);

namespace serial {
// Single-threaded reference for kernel_matrix; identical results.
Matrix kernel_matrix(const Matrix& a, const Matrix& b, const KernelConfig& cfg);
} // namespace serial

// Dual-form kernel ridge regressor. Predictions are z (K + aI)^-1 k, computed
// as k . alpha with alpha = (K + aI)^-1 z solved once at fit time.
class RidgeModel {
public:
    // a > 0: Cholesky of K + aI; ComputeError if it is not positive definite.
    // a = 0: minimal-norm (pseudo-inverse) solve, which also covers the
    // rank-deficient linear-kernel case.
    static RidgeModel fit(const Matrix& x, const Vector& z, const RidgeConfig& cfg);

    Vector predict(const Matrix& x_new) const;

    const Vector& dual_coefficients() const noexcept { return alpha_; }
    const RidgeConfig& config() const noexcept { return cfg_; }
    Index n_features() const noexcept { return x_.cols(); }
    Index n_train() const noexcept { return x_.rows(); }

private:
    RidgeModel(Matrix x, Vector z, RidgeConfig cfg, Vector alpha)
        : x_(std::move(x)), z_(std::move(z)), cfg_(cfg), alpha_(std::move(alpha)) {}

    Matrix x_;
    Vector z_;
    RidgeConfig cfg_;
    Vector alpha_;
};

// Out-of-fold prediction for every row: rows with folds[i] == k are predicted
// by a model trained on all other rows. Folds run in parallel under
// Execution::parallel. `fit_predict(x_train, z_train, x_test)` returns
// predictions for x_test.
template <class FitPredict>
Vector cv_predictions(const Matrix& x, const Vector& z, const std::vector<int>& folds,
                      FitPredict&& fit_predict, Execution exec = Execution::parallel);

int fold_count(const std::vector<int>& folds);

// Pooled 10-fold MMRE of ridge on the columns in `subset`. Targets are mapped
// through `scale` for fitting and predictions mapped back before scoring.
// Empty subset returns kWorstScore.
double cv_score(const Matrix& x, const Vector& z, const FeatureSubset& subset,
                const std::vector<int>& folds, const RidgeConfig& cfg,
                const TargetScale& scale = {}, Execution exec = Execution::parallel);

} // namespace fss

#include "fss/detail/cv_impl.hpp"
