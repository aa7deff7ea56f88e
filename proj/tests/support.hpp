#pragma once

// Shared fixtures for the test binaries: seeded random data, a synthetic
// dataset with a planted signal, and fold assignments.

#include "fss/dataset.hpp"
#include "fss/rng.hpp"

#include <string>
#include <vector>

namespace fss::test {

inline Matrix random_matrix(Index rows, Index cols, Engine& eng, double lo = 0.0, double hi = 1.0)
{
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = lo + (hi - lo) * uniform01(eng);
        }
    }
    return m;
}

inline Vector random_vector(Index n, Engine& eng, double lo = 0.0, double hi = 1.0)
{
    Vector v(n);
    for (Index i = 0; i < n; ++i) {
        v(i) = lo + (hi - lo) * uniform01(eng);
    }
    return v;
}

// Fold k % 10 over a seeded shuffle of the rows.
inline std::vector<int> random_folds(std::size_t n, std::uint64_t seed, int k = 10)
{
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    Engine eng(seed);
    shuffle(std::span<std::size_t>(order), eng);
    std::vector<int> folds(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        folds[order[pos]] = static_cast<int>(pos % static_cast<std::size_t>(k));
    }
    return folds;
}

// Effort = 1 + sum of the planted columns (times `weight`) plus a little
// noise; features uniform on [0, 1]. Effort stays well above zero so MMRE is
// well conditioned.
struct Planted {
    Matrix x;
    Vector z;
};

inline Planted planted(Index rows, Index cols, const std::vector<Index>& signal,
                       std::uint64_t seed, double weight = 4.0, double noise = 0.02)
{
    Engine eng(seed);
    Planted p{random_matrix(rows, cols, eng), Vector::Ones(rows)};
    for (Index i = 0; i < rows; ++i) {
        for (Index j : signal) {
            p.z(i) += weight * p.x(i, j);
        }
        p.z(i) += noise * (uniform01(eng) - 0.5);
    }
    return p;
}

inline std::vector<FeatureDescriptor> numeric_descriptors(std::size_t n)
{
    std::vector<FeatureDescriptor> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j].id = j + 1;
        out[j].code = "F" + std::to_string(j + 1);
        out[j].source_column = out[j].code;
        out[j].norm_max = 1.0;
    }
    return out;
}

inline Dataset planted_dataset(Index rows, Index cols, const std::vector<Index>& signal,
                               std::uint64_t seed)
{
    auto p = planted(rows, cols, signal, seed);
    // Effort in "person-hours" so relative errors behave like the real data.
    p.z *= 1000.0;
    Provenance prov;
    prov.source = "synthetic";
    return Dataset(std::move(p.x), std::move(p.z), numeric_descriptors(static_cast<std::size_t>(cols)),
                   prov);
}

} // namespace fss::test
