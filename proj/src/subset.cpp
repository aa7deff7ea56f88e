#include "fss/subset.hpp"
#include "fss/errors.hpp"

#include <algorithm>

namespace fss {

FeatureSubset FeatureSubset::from_indices(std::size_t n, const std::vector<std::size_t>& indices)
{
    FeatureSubset s(n);
    for (auto i : indices) {
        s.set(i);
    }
    return s;
}

std::size_t FeatureSubset::count() const noexcept
{
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

FeatureSubset FeatureSubset::with(std::size_t i) const
{
    FeatureSubset s = *this;
    s.set(i, true);
    return s;
}

FeatureSubset FeatureSubset::without(std::size_t i) const
{
    FeatureSubset s = *this;
    s.set(i, false);
    return s;
}

std::vector<std::size_t> FeatureSubset::indices() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) {
            out.push_back(i);
        }
    }
    return out;
}

std::string FeatureSubset::to_string() const
{
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) {
            s[i] = '1';
        }
    }
    return s;
}

FeatureSubset FeatureSubset::from_string(const std::string& bits)
{
    FeatureSubset s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            s.set(i);
        } else if (bits[i] != '0') {
            throw DataError("subset string must contain only 0 and 1");
        }
    }
    return s;
}

} // namespace fss
