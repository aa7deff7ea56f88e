#pragma once

#include "fss/parallel.hpp"
#include "fss/subset.hpp"
#include "fss/types.hpp"

#include <cstddef>

namespace fss {

struct LinearModel {
    double intercept = 0.0;
    Vector coefficients; // aligned with `columns`
    IndexList columns;   // active feature columns of the design matrix
    double sse = 0.0;
    double residual_variance = 0.0; // sse / (n - p), 0 when n <= p
    std::size_t n = 0;
    std::size_t p = 0; // effective parameters: rank of the centered design + 1

    // `x` has the full width of the matrix the model was fitted on.
    Vector predict(const Matrix& x) const;
};

// Least squares with an unpenalized intercept. The slope vector is the
// minimal-norm solution on the centered design, so collinear columns (one-hot
// groups, duplicates) share weight instead of failing.
LinearModel ls_fit(const Matrix& x, const Vector& z, const FeatureSubset& subset);

// p-value of the partial F test for `candidate`: the model with it against
// the model without it, whichever side `current` is on. No SSE reduction
// (duplicate or constant candidate, or too few rows) gives 1; a positive
// reduction that leaves zero residual gives 0.
double partial_f_pvalue(const Matrix& x, const Vector& z, const FeatureSubset& current,
                        std::size_t candidate);

enum class StepDirection { forward, backward };

struct StepwiseConfig {
    double p_enter = 0.05;
    double p_remove = 0.10;
    StepDirection direction = StepDirection::forward;
    std::size_t max_steps = 1000;

    void validate() const;
};

// Add the smallest entry p-value below p_enter and repeat; otherwise remove
// the largest p-value above p_remove and go back to adding; stop when neither
// applies. Equal p-values resolve to the lowest feature index.
FeatureSubset stepwise(const Matrix& x, const Vector& z, const StepwiseConfig& cfg,
                       Execution exec = Execution::parallel);

} // namespace fss
