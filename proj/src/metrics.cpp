#include "fss/metrics.hpp"
#include "fss/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace fss {

namespace {

void check_pair(std::span<const double> actuals, std::span<const double> predictions)
{
    if (actuals.size() != predictions.size()) {
        throw DataError("metrics: " + std::to_string(actuals.size()) + " actuals vs " +
                        std::to_string(predictions.size()) + " predictions");
    }
    if (actuals.empty()) {
        throw DataError("metrics: empty input");
    }
}

} // namespace

double relative_error(double actual, double predicted)
{
    if (!(actual > 0.0)) {
        throw DataError("relative error needs a positive actual value");
    }
    return std::abs(actual - predicted) / actual;
}

std::vector<double> relative_errors(std::span<const double> actuals,
                                    std::span<const double> predictions)
{
    check_pair(actuals, predictions);
    std::vector<double> re(actuals.size());
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        re[i] = relative_error(actuals[i], predictions[i]);
    }
    return re;
}

double mmre(std::span<const double> actuals, std::span<const double> predictions)
{
    const auto re = relative_errors(actuals, predictions);
    return std::accumulate(re.begin(), re.end(), 0.0) / static_cast<double>(re.size());
}

double pred_from_re(std::span<const double> re, double level)
{
    if (!(level > 0.0)) {
        throw DataError("PRED level must be positive");
    }
    if (re.empty()) {
        throw DataError("metrics: empty input");
    }
    std::size_t k = 0;
    for (double r : re) {
        if (kPredInclusive ? r <= level : r < level) {
            ++k;
        }
    }
    return static_cast<double>(k) / static_cast<double>(re.size());
}

double pred(std::span<const double> actuals, std::span<const double> predictions, double level)
{
    return pred_from_re(relative_errors(actuals, predictions), level);
}

EvalResult evaluate(std::span<const double> actuals, std::span<const double> predictions,
                    double level)
{
    EvalResult out;
    out.re = relative_errors(actuals, predictions);
    out.n = out.re.size();
    out.level = level;
    out.mmre = std::accumulate(out.re.begin(), out.re.end(), 0.0) / static_cast<double>(out.n);
    out.pred = pred_from_re(out.re, level);
    return out;
}

EvalResult evaluate(const Vector& actuals, const Vector& predictions, double level)
{
    return evaluate(std::span<const double>(actuals.data(), static_cast<std::size_t>(actuals.size())),
                    std::span<const double>(predictions.data(),
                                            static_cast<std::size_t>(predictions.size())),
                    level);
}

} // namespace fss
