#pragma once

#include "fss/parallel.hpp"
#include "fss/ridge.hpp"
#include "fss/subset.hpp"
#include "fss/types.hpp"

#include <functional>
#include <memory>
#include <string_view>
#include <vector>

namespace fss {

enum class EvaluatorKind { ridge_wrapper, ls_filter };

std::string_view to_string(EvaluatorKind kind) noexcept;

// Pooled 10-fold CV MMRE of least squares on the columns in `subset`;
// kWorstScore for the empty subset.
double ls_cv_score(const Matrix& x, const Vector& z, const FeatureSubset& subset,
                   const std::vector<int>& folds, Execution exec = Execution::parallel);

// Binds a training matrix, its targets and fold assignment to one subset
// scoring rule: ridge CV MMRE (wrapper) or least-squares CV MMRE (filter).
// Lower is better. Copies share the bound data; calls are thread-safe.
class Evaluator {
public:
    Evaluator(Matrix x, Vector z, std::vector<int> folds, EvaluatorKind kind,
              RidgeConfig ridge = {}, TargetScale scale = {});

    double operator()(const FeatureSubset& subset) const;

    EvaluatorKind kind() const noexcept { return kind_; }
    std::size_t n_features() const noexcept { return static_cast<std::size_t>(data_->x.cols()); }
    const Matrix& x() const noexcept { return data_->x; }
    const Vector& z() const noexcept { return data_->z; }
    const std::vector<int>& folds() const noexcept { return data_->folds; }

    // Fold loop inside one evaluation; search engines parallelize across
    // subsets and keep this serial.
    Execution inner = Execution::serial;

private:
    struct Data {
        Matrix x;
        Vector z;
        std::vector<int> folds;
    };
    std::shared_ptr<const Data> data_;
    EvaluatorKind kind_;
    RidgeConfig ridge_;
    TargetScale scale_;
};

// Type-erased scoring function used by the search engines.
using SubsetScorer = std::function<double(const FeatureSubset&)>;

} // namespace fss
