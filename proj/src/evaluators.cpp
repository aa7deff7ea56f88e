#include "fss/evaluators.hpp"
#include "fss/errors.hpp"
#include "fss/linreg.hpp"
#include "fss/metrics.hpp"

namespace fss {

std::string_view to_string(EvaluatorKind kind) noexcept
{
    return kind == EvaluatorKind::ridge_wrapper ? "ridge-wrapper" : "ls-filter";
}

double ls_cv_score(const Matrix& x, const Vector& z, const FeatureSubset& subset,
                   const std::vector<int>& folds, Execution exec)
{
    if (subset.size() != static_cast<std::size_t>(x.cols())) {
        throw DataError("ls_cv_score: subset length does not match feature count");
    }
    if (subset.empty()) {
        return kWorstScore;
    }
    IndexList rows(static_cast<std::size_t>(x.rows()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = i;
    }
    const Matrix xs = gather(x, rows, subset.indices());
    const FeatureSubset all = FeatureSubset::full(static_cast<std::size_t>(xs.cols()));
    const Vector pred = cv_predictions(
        xs, z, folds,
        [&](const Matrix& xtr, const Vector& ztr, const Matrix& xte) {
            return ls_fit(xtr, ztr, all).predict(xte);
        },
        exec);
    return evaluate(z, pred).mmre;
}

Evaluator::Evaluator(Matrix x, Vector z, std::vector<int> folds, EvaluatorKind kind,
                     RidgeConfig ridge, TargetScale scale)
    : data_(std::make_shared<const Data>(Data{std::move(x), std::move(z), std::move(folds)})),
      kind_(kind), ridge_(ridge), scale_(scale)
{
    ridge_.validate();
    fold_count(data_->folds);
    if (static_cast<Index>(data_->folds.size()) != data_->x.rows() ||
        data_->z.size() != data_->x.rows()) {
        throw DataError("evaluator: rows, targets and folds differ in length");
    }
}

double Evaluator::operator()(const FeatureSubset& subset) const
{
    if (kind_ == EvaluatorKind::ridge_wrapper) {
        return cv_score(data_->x, data_->z, subset, data_->folds, ridge_, scale_, inner);
    }
    return ls_cv_score(data_->x, data_->z, subset, data_->folds, inner);
}

} // namespace fss
