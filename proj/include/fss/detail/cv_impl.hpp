#pragma once

#include "fss/errors.hpp"

#include <string>

namespace fss {

template <class FitPredict>
Vector cv_predictions(const Matrix& x, const Vector& z, const std::vector<int>& folds,
                      FitPredict&& fit_predict, Execution exec)
{
    if (static_cast<Index>(folds.size()) != x.rows() || z.size() != x.rows()) {
        throw DataError("cv: fold assignment, targets and rows differ in length");
    }
    const int k = fold_count(folds);
    std::vector<IndexList> test_rows(static_cast<std::size_t>(k));
    std::vector<IndexList> train_rows(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < folds.size(); ++i) {
        for (int f = 0; f < k; ++f) {
            (folds[i] == f ? test_rows : train_rows)[static_cast<std::size_t>(f)].push_back(i);
        }
    }
    Vector out(x.rows());
    for_each_index(static_cast<std::size_t>(k), exec, [&](std::size_t f) {
        const Matrix x_tr = gather_rows(x, train_rows[f]);
        const Vector z_tr = gather(z, train_rows[f]);
        const Matrix x_te = gather_rows(x, test_rows[f]);
        const Vector pred = fit_predict(x_tr, z_tr, x_te);
        for (std::size_t r = 0; r < test_rows[f].size(); ++r) {
            out(static_cast<Index>(test_rows[f][r])) = pred(static_cast<Index>(r));
        }
    });
    return out;
}

} // namespace fss
