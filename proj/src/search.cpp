#include "fss/search.hpp"
#include "fss/errors.hpp"
#include "fss/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fss {

std::vector<double> ScoreCache::score(const std::vector<FeatureSubset>& batch, Execution exec)
{
    std::vector<FeatureSubset> pending;
    std::unordered_map<FeatureSubset, std::size_t, FeatureSubsetHash> pending_index;
    for (const auto& s : batch) {
        if (s.empty() || cache_.contains(s) || pending_index.contains(s)) {
            continue;
        }
        pending_index.emplace(s, pending.size());
        pending.push_back(s);
    }
    std::vector<double> fresh(pending.size());
    for_each_index(pending.size(), exec, [&](std::size_t i) { fresh[i] = scorer_(pending[i]); });
    evaluations_ += pending.size();
    for (std::size_t i = 0; i < pending.size(); ++i) {
        cache_.emplace(pending[i], fresh[i]);
    }

    std::vector<double> out;
    out.reserve(batch.size());
    for (const auto& s : batch) {
        out.push_back(s.empty() ? kWorstScore : cache_.at(s));
    }
    return out;
}

double ScoreCache::score(const FeatureSubset& subset)
{
    return score(std::vector<FeatureSubset>{subset}, Execution::serial).front();
}

namespace {

// Index of the minimum; the first one wins ties.
std::size_t argmin(const std::vector<double>& v)
{
    return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

} // namespace

SearchResult forward_select(std::size_t n_features, const SubsetScorer& scorer, Execution exec)
{
    ScoreCache cache(scorer);
    SearchResult res;
    res.subset = FeatureSubset(n_features);
    for (;;) {
        std::vector<FeatureSubset> moves;
        for (std::size_t j = 0; j < n_features; ++j) {
            if (!res.subset.test(j)) {
                moves.push_back(res.subset.with(j));
            }
        }
        if (moves.empty()) {
            break;
        }
        const auto scores = cache.score(moves, exec);
        const auto best = argmin(scores);
        if (!(scores[best] < res.score)) {
            break;
        }
        res.subset = moves[best];
        res.score = scores[best];
        res.trajectory.push_back(res.score);
    }
    res.evaluations = cache.evaluations();
    return res;
}

SearchResult backward_eliminate(std::size_t n_features, const SubsetScorer& scorer,
                                Execution exec)
{
    if (n_features == 0) {
        throw DataError("backward elimination needs at least one feature");
    }
    ScoreCache cache(scorer);
    SearchResult res;
    res.subset = FeatureSubset::full(n_features);
    res.score = cache.score(res.subset);
    res.trajectory.push_back(res.score);
    for (;;) {
        std::vector<FeatureSubset> moves;
        for (std::size_t j = 0; j < n_features; ++j) {
            if (res.subset.test(j)) {
                moves.push_back(res.subset.without(j));
            }
        }
        const auto scores = cache.score(moves, exec);
        const auto best = argmin(scores);
        if (!(scores[best] < res.score)) {
            break;
        }
        res.subset = moves[best];
        res.score = scores[best];
        res.trajectory.push_back(res.score);
    }
    res.evaluations = cache.evaluations();
    return res;
}

std::size_t GaConfig::elite_count() const noexcept
{
    return static_cast<std::size_t>(std::llround(elite_fraction * static_cast<double>(population)));
}

void GaConfig::validate() const
{
    auto rate = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (population < 2 || generations < 1 || !rate(crossover_rate) || !rate(mutation_rate) ||
        !rate(elite_fraction)) {
        throw DataError("GA: need population >= 2, generations >= 1 and rates in [0, 1]");
    }
    if (elite_count() < 1 || elite_count() >= population) {
        throw DataError("GA: elite count must be at least 1 and below the population size");
    }
}

std::vector<std::size_t> stochastic_uniform_ranks(std::size_t n, std::size_t count, double offset)
{
    std::vector<std::size_t> picks;
    if (n == 0 || count == 0) {
        return picks;
    }
    const double total = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
    const double step = total / static_cast<double>(count);
    picks.reserve(count);
    std::size_t rank = 0;
    double segment_end = static_cast<double>(n);
    for (std::size_t i = 0; i < count; ++i) {
        const double pointer = offset + step * static_cast<double>(i);
        while (pointer >= segment_end && rank + 1 < n) {
            ++rank;
            segment_end += static_cast<double>(n - rank);
        }
        picks.push_back(rank);
    }
    return picks;
}

SearchResult ga_select(std::size_t n_features, const SubsetScorer& scorer, const GaConfig& cfg,
                       Execution exec)
{
    cfg.validate();
    if (n_features == 0) {
        throw DataError("GA needs at least one feature");
    }
    Engine eng(cfg.seed);
    ScoreCache cache(scorer);
    const std::size_t pop_size = cfg.population;
    const std::size_t n_elite = cfg.elite_count();

    std::vector<FeatureSubset> pop;
    pop.reserve(pop_size);
    pop.push_back(FeatureSubset::full(n_features));
    while (pop.size() < pop_size) {
        FeatureSubset s(n_features);
        for (std::size_t j = 0; j < n_features; ++j) {
            s.set(j, uniform01(eng) < 0.5);
        }
        pop.push_back(std::move(s));
    }

    SearchResult res;
    res.subset = pop.front();
    for (std::size_t gen = 0;; ++gen) {
        const auto scores = cache.score(pop, exec);
        std::vector<std::size_t> order(pop_size);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
        if (scores[order.front()] < res.score) {
            res.score = scores[order.front()];
            res.subset = pop[order.front()];
        }
        res.trajectory.push_back(res.score);
        if (gen + 1 == cfg.generations) {
            break;
        }

        std::vector<FeatureSubset> next;
        next.reserve(pop_size);
        for (std::size_t e = 0; e < n_elite; ++e) {
            next.push_back(pop[order[e]]);
        }
        const std::size_t n_children = pop_size - n_elite;
        const std::size_t n_parents = n_children + (n_children % 2);
        const double step =
            static_cast<double>(pop_size) * static_cast<double>(pop_size + 1) / 2.0 /
            static_cast<double>(n_parents);
        auto ranks = stochastic_uniform_ranks(pop_size, n_parents, uniform01(eng) * step);
        shuffle(std::span<std::size_t>(ranks), eng);

        for (std::size_t k = 0; k + 1 < ranks.size() && next.size() < pop_size; k += 2) {
            FeatureSubset a = pop[order[ranks[k]]];
            FeatureSubset b = pop[order[ranks[k + 1]]];
            if (uniform01(eng) < cfg.crossover_rate) {
                for (std::size_t j = 0; j < n_features; ++j) {
                    if (uniform01(eng) >= 0.5) {
                        const bool tmp = a.test(j);
                        a.set(j, b.test(j));
                        b.set(j, tmp);
                    }
                }
            }
            for (auto* child : {&a, &b}) {
                for (std::size_t j = 0; j < n_features; ++j) {
                    if (uniform01(eng) < cfg.mutation_rate) {
                        child->flip(j);
                    }
                }
            }
            next.push_back(std::move(a));
            if (next.size() < pop_size) {
                next.push_back(std::move(b));
            }
        }
        pop = std::move(next);
    }
    res.evaluations = cache.evaluations();
    return res;
}

} // namespace fss
