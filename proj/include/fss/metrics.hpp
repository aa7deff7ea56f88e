#pragma once

#include "fss/types.hpp"

#include <span>
#include <vector>

namespace fss {

// PRED counts a project when RE <= l. Set to false for the strict RE < l reading.
inline constexpr bool kPredInclusive = true;
inline constexpr double kDefaultPredLevel = 0.25;

struct EvalResult {
    double mmre = 0.0;
    double pred = 0.0;
    double level = kDefaultPredLevel;
    std::vector<double> re;
    std::size_t n = 0;
};

// |actual - predicted| / actual; actual must be positive.
double relative_error(double actual, double predicted);

std::vector<double> relative_errors(std::span<const double> actuals,
                                    std::span<const double> predictions);

double mmre(std::span<const double> actuals, std::span<const double> predictions);
double pred(std::span<const double> actuals, std::span<const double> predictions,
            double level = kDefaultPredLevel);

// Fraction of the given relative errors within `level`.
double pred_from_re(std::span<const double> re, double level = kDefaultPredLevel);

EvalResult evaluate(std::span<const double> actuals, std::span<const double> predictions,
                    double level = kDefaultPredLevel);
EvalResult evaluate(const Vector& actuals, const Vector& predictions,
                    double level = kDefaultPredLevel);

} // namespace fss
