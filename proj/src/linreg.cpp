#include "fss/linreg.hpp"
#include "fss/errors.hpp"
#include "fss/fdist.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace fss {

namespace {

constexpr double kRankThreshold = 1e-10;
// Relative to the total sum of squares.
constexpr double kSseTolerance = 1e-12;

struct Fit {
    LinearModel model;
    std::size_t rank = 0;
};

Fit fit_columns(const Matrix& x, const Vector& z, const IndexList& cols)
{
    if (z.size() != x.rows()) {
        throw DataError("ls_fit: targets and rows differ in length");
    }
    if (x.rows() == 0) {
        throw DataError("ls_fit: no rows");
    }
    Fit out;
    auto& m = out.model;
    m.columns = cols;
    m.n = static_cast<std::size_t>(x.rows());
    const double z_mean = z.mean();
    const Vector zc = z.array() - z_mean;

    if (cols.empty()) {
        m.intercept = z_mean;
        m.coefficients = Vector(0);
        m.sse = zc.squaredNorm();
    } else {
        Matrix xs(x.rows(), static_cast<Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            xs.col(static_cast<Index>(c)) = x.col(static_cast<Index>(cols[c]));
        }
        const Eigen::RowVectorXd means = xs.colwise().mean();
        const Matrix xc = xs.rowwise() - means;
        Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
        cod.setThreshold(kRankThreshold);
        cod.compute(xc);
        m.coefficients = cod.solve(zc);
        m.intercept = z_mean - means.dot(m.coefficients);
        out.rank = static_cast<std::size_t>(cod.rank());
        m.sse = (zc - xc * m.coefficients).squaredNorm();
    }
    m.p = out.rank + 1;
    m.residual_variance = m.n > m.p ? m.sse / static_cast<double>(m.n - m.p) : 0.0;
    return out;
}

} // namespace

Vector LinearModel::predict(const Matrix& x) const
{
    Vector out = Vector::Constant(x.rows(), intercept);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (static_cast<Index>(columns[c]) >= x.cols()) {
            throw DataError("linear model: matrix is narrower than the fitted design");
        }
        out += coefficients(static_cast<Index>(c)) * x.col(static_cast<Index>(columns[c]));
    }
    return out;
}

LinearModel ls_fit(const Matrix& x, const Vector& z, const FeatureSubset& subset)
{
    if (subset.size() != static_cast<std::size_t>(x.cols())) {
        throw DataError("ls_fit: subset length does not match feature count");
    }
    return fit_columns(x, z, subset.indices()).model;
}

double partial_f_pvalue(const Matrix& x, const Vector& z, const FeatureSubset& current,
                        std::size_t candidate)
{
    if (current.size() != static_cast<std::size_t>(x.cols()) || candidate >= current.size()) {
        throw DataError("partial_f_pvalue: subset or candidate out of range");
    }
    const FeatureSubset larger = current.with(candidate);
    const FeatureSubset smaller = current.without(candidate);
    const Fit full = fit_columns(x, z, larger.indices());
    const Fit reduced = fit_columns(x, z, smaller.indices());

    const double sst = (z.array() - z.mean()).matrix().squaredNorm();
    const double tol = kSseTolerance * sst;
    const std::size_t df1 = full.rank - reduced.rank;
    const std::size_t n = full.model.n;
    if (sst <= 0.0 || df1 == 0 || n <= full.model.p) {
        return 1.0;
    }
    const double gain = reduced.model.sse - full.model.sse;
    if (gain <= tol) {
        return 1.0;
    }
    if (full.model.sse <= tol) {
        return 0.0;
    }
    const double df2 = static_cast<double>(n - full.model.p);
    const double f = (gain / static_cast<double>(df1)) / (full.model.sse / df2);
    const double p = stats::f_sf(f, static_cast<double>(df1), df2);
    return std::clamp(p, 0.0, 1.0);
}

void StepwiseConfig::validate() const
{
    if (!(p_enter > 0.0 && p_enter < p_remove && p_remove < 1.0)) {
        throw DataError("stepwise: need 0 < p_enter < p_remove < 1");
    }
    if (max_steps == 0) {
        throw DataError("stepwise: max_steps must be positive");
    }
}

FeatureSubset stepwise(const Matrix& x, const Vector& z, const StepwiseConfig& cfg, Execution exec)
{
    cfg.validate();
    const auto n_features = static_cast<std::size_t>(x.cols());
    FeatureSubset current = cfg.direction == StepDirection::forward
                                ? FeatureSubset(n_features)
                                : FeatureSubset::full(n_features);
    std::vector<double> pvalues(n_features);
    std::size_t steps = 0;

    auto scan = [&](bool members) {
        for_each_index(n_features, exec, [&](std::size_t j) {
            pvalues[j] = current.test(j) == members ? partial_f_pvalue(x, z, current, j)
                                                    : std::numeric_limits<double>::quiet_NaN();
        });
    };
    auto take_step = [&] {
        if (++steps > cfg.max_steps) {
            throw ComputeError("stepwise: exceeded " + std::to_string(cfg.max_steps) +
                               " steps; predictors may be cycling between add and remove");
        }
    };

    for (;;) {
        scan(false);
        std::optional<std::size_t> best;
        for (std::size_t j = 0; j < n_features; ++j) {
            if (!std::isnan(pvalues[j]) && (!best || pvalues[j] < pvalues[*best])) {
                best = j;
            }
        }
        if (best && pvalues[*best] < cfg.p_enter) {
            take_step();
            current.set(*best);
            continue;
        }
        scan(true);
        std::optional<std::size_t> worst;
        for (std::size_t j = 0; j < n_features; ++j) {
            if (!std::isnan(pvalues[j]) && (!worst || pvalues[j] > pvalues[*worst])) {
                worst = j;
            }
        }
        if (worst && pvalues[*worst] > cfg.p_remove) {
            take_step();
            current.set(*worst, false);
            continue;
        }
        return current;
    }
}

} // namespace fss
