#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace fss {

// All randomness in the library flows through std::mt19937_64, whose output
// sequence is fixed by the C++ standard. The std distributions are not
// (they differ between standard libraries), so bounded integers and unit
// reals are derived from the raw 64-bit words here instead.
using Engine = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) noexcept
{
    return mix_seed(mix_seed(parent) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

// Uniform real in [0, 1) from the top 53 bits.
inline double uniform01(Engine& eng) noexcept
{
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) noexcept
{
    if (bound <= 1) {
        return 0;
    }
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
    std::uint64_t draw = eng();
    while (draw >= limit) {
        draw = eng();
    }
    return draw % bound;
}

template <class T>
void shuffle(std::span<T> values, Engine& eng) noexcept
{
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(eng, i));
        std::swap(values[i - 1], values[j]);
    }
}

} // namespace fss
