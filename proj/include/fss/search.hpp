#pragma once

#include "fss/evaluators.hpp"
#include "fss/parallel.hpp"
#include "fss/subset.hpp"

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace fss {

struct SearchResult {
    FeatureSubset subset;
    double score = kWorstScore;
    std::size_t evaluations = 0; // distinct scorer calls
    // Greedy: incumbent score after each accepted move.
    // GA: best-ever score after each generation.
    std::vector<double> trajectory;
};

// Memoizes scores by subset bits for one search run. Batches are scored in
// parallel; only subsets not seen before reach the scorer, and the empty
// subset is answered with kWorstScore without a call.
class ScoreCache {
public:
    explicit ScoreCache(SubsetScorer scorer) : scorer_(std::move(scorer)) {}

    std::vector<double> score(const std::vector<FeatureSubset>& batch, Execution exec);
    double score(const FeatureSubset& subset);

    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    SubsetScorer scorer_;
    std::unordered_map<FeatureSubset, double, FeatureSubsetHash> cache_;
    std::size_t evaluations_ = 0;
};

// Greedy forward selection from the empty set; each round adds the feature
// with the lowest score and stops when no addition strictly improves.
SearchResult forward_select(std::size_t n_features, const SubsetScorer& scorer,
                            Execution exec = Execution::parallel);

// Greedy backward elimination from the full set; stops when no removal
// strictly improves.
SearchResult backward_eliminate(std::size_t n_features, const SubsetScorer& scorer,
                                Execution exec = Execution::parallel);

struct GaConfig {
    std::size_t population = 100;
    std::size_t generations = 100;
    double crossover_rate = 0.8;
    double mutation_rate = 0.01; // per bit
    double elite_fraction = 0.10;
    std::uint64_t seed = 1;

    std::size_t elite_count() const noexcept;
    void validate() const;
};

// Rank-based stochastic uniform sampling: rank r (0 = fittest) of `n` owns a
// segment of length n - r; `count` pointers spaced total/count apart start
// at `offset` in [0, step). Returns ranks.
std::vector<std::size_t> stochastic_uniform_ranks(std::size_t n, std::size_t count, double offset);

// Generational GA over bit strings. The initial population is Bernoulli(1/2)
// bits with the all-ones string in slot 0. Each generation keeps the elite
// unchanged, fills the rest by stochastic-uniform parent selection, uniform
// crossover (random mask) with probability crossover_rate and per-bit
// mutation. Returns the fittest individual ever seen.
SearchResult ga_select(std::size_t n_features, const SubsetScorer& scorer, const GaConfig& cfg,
                       Execution exec = Execution::parallel);

} // namespace fss
