#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace fss {

// Inclusion mask over the feature columns of a dataset. The length is fixed
// at construction.
class FeatureSubset {
public:
    FeatureSubset() = default;
    explicit FeatureSubset(std::size_t n_features, bool value = false)
        : bits_(n_features, value) {}

    static FeatureSubset full(std::size_t n) { return FeatureSubset(n, true); }
    static FeatureSubset from_indices(std::size_t n, const std::vector<std::size_t>& indices);

    std::size_t size() const noexcept { return bits_.size(); }
    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }

    bool test(std::size_t i) const { return bits_.at(i); }
    void set(std::size_t i, bool value = true) { bits_.at(i) = value; }
    void flip(std::size_t i) { bits_.at(i) = !bits_.at(i); }

    FeatureSubset with(std::size_t i) const;
    FeatureSubset without(std::size_t i) const;

    // Active column positions, ascending.
    std::vector<std::size_t> indices() const;

    // "01101..." with position 0 first.
    std::string to_string() const;
    static FeatureSubset from_string(const std::string& bits);

    bool operator==(const FeatureSubset&) const = default;

    const std::vector<bool>& bits() const noexcept { return bits_; }

private:
    std::vector<bool> bits_;
};

struct FeatureSubsetHash {
    std::size_t operator()(const FeatureSubset& s) const noexcept
    {
        return std::hash<std::vector<bool>>{}(s.bits());
    }
};

} // namespace fss
