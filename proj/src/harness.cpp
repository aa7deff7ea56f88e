#include "fss/harness.hpp"
#include "fss/errors.hpp"
#include "fss/rng.hpp"

#include <algorithm>
#include <limits>

namespace fss {

std::string_view to_string(MethodId id) noexcept
{
    switch (id) {
    case MethodId::BFE: return "BFE";
    case MethodId::FFS: return "FFS";
    case MethodId::BSWF: return "BSWF";
    case MethodId::FSWF: return "FSWF";
    case MethodId::LSBFE: return "LSBFE";
    case MethodId::LSFFS: return "LSFFS";
    case MethodId::GARSON: return "GARSON";
    case MethodId::LSGA: return "LSGA";
    case MethodId::GA: return "GA";
    }
    return "?";
}

std::string method_list()
{
    std::string out;
    for (auto m : kAllMethods) {
        if (!out.empty()) {
            out += ", ";
        }
        out += to_string(m);
    }
    return out;
}

MethodId parse_method(std::string_view name)
{
    for (auto m : kAllMethods) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw DataError("unknown method '" + std::string(name) + "'; valid methods: " + method_list());
}

void ExperimentConfig::validate() const
{
    ridge.validate();
    stepwise.validate();
    ga.validate();
    ann.validate();
    if (!(pred_level > 0.0)) {
        throw DataError("PRED level must be positive");
    }
    if (n_partitions == 0) {
        throw DataError("n_partitions must be at least 1");
    }
}

std::uint64_t cell_seed(std::uint64_t master_seed, MethodId method, std::size_t partition) noexcept
{
    return derive_seed(derive_seed(master_seed, 0x100 + static_cast<std::uint64_t>(method)),
                       partition);
}

TrainTestMetrics score_subset(const Dataset& dataset, const SplitPlan& plan,
                              const FeatureSubset& subset, const RidgeConfig& ridge,
                              double pred_level)
{
    const auto cols = subset.indices();
    const Matrix x_tr = gather(dataset.x(), plan.train, cols);
    const Matrix x_te = gather(dataset.x(), plan.test, cols);
    const Vector z_tr = gather(dataset.effort(), plan.train);
    const Vector z_te = gather(dataset.effort(), plan.test);
    const TargetScale scale = dataset.target_scale();

    const RidgeModel model = RidgeModel::fit(x_tr, scale.forward(z_tr), ridge);
    const auto train = evaluate(z_tr, scale.inverse(model.predict(x_tr)), pred_level);
    const auto test = evaluate(z_te, scale.inverse(model.predict(x_te)), pred_level);
    return {{train.mmre, train.pred}, {test.mmre, test.pred}};
}

PartitionResult run_method(const Dataset& dataset, const SplitPlan& plan, MethodId method,
                           const ExperimentConfig& cfg, Execution exec)
{
    const std::uint64_t seed = cell_seed(cfg.master_seed, method, plan.partition);
    const std::size_t n = dataset.n_features();
    const Matrix x_tr = gather_rows(dataset.x(), plan.train);
    const Vector z_tr = gather(dataset.effort(), plan.train);

    auto evaluator = [&](EvaluatorKind kind) {
        return Evaluator(x_tr, z_tr, plan.folds, kind, cfg.ridge, dataset.target_scale());
    };

    PartitionResult r;
    r.method = method;
    r.partition = plan.partition;
    SearchResult search;
    bool has_search = true;
    switch (method) {
    case MethodId::FFS:
        search = forward_select(n, evaluator(EvaluatorKind::ridge_wrapper), exec);
        break;
    case MethodId::BFE:
        search = backward_eliminate(n, evaluator(EvaluatorKind::ridge_wrapper), exec);
        break;
    case MethodId::LSFFS:
        search = forward_select(n, evaluator(EvaluatorKind::ls_filter), exec);
        break;
    case MethodId::LSBFE:
        search = backward_eliminate(n, evaluator(EvaluatorKind::ls_filter), exec);
        break;
    case MethodId::GA:
    case MethodId::LSGA: {
        GaConfig ga = cfg.ga;
        ga.seed = seed;
        const auto kind =
            method == MethodId::GA ? EvaluatorKind::ridge_wrapper : EvaluatorKind::ls_filter;
        search = ga_select(n, evaluator(kind), ga, exec);
        break;
    }
    case MethodId::FSWF:
    case MethodId::BSWF: {
        StepwiseConfig sw = cfg.stepwise;
        sw.direction = method == MethodId::FSWF ? StepDirection::forward : StepDirection::backward;
        search.subset = stepwise(x_tr, z_tr, sw, exec);
        has_search = false;
        break;
    }
    case MethodId::GARSON: {
        SweepConfig ann = cfg.ann;
        ann.train.seed = seed;
        search.subset = garson_eliminate(x_tr, z_tr, plan.folds, ann, exec);
        has_search = false;
        break;
    }
    }
    r.selected = search.subset;
    r.n_selected = r.selected.count();
    if (has_search) {
        r.search_score = search.score;
    }

    const auto initial =
        score_subset(dataset, plan, FeatureSubset::full(n), cfg.ridge, cfg.pred_level);
    const auto final_ = r.selected == FeatureSubset::full(n)
                            ? initial
                            : score_subset(dataset, plan, r.selected, cfg.ridge, cfg.pred_level);
    r.train_initial = initial.train;
    r.test_initial = initial.test;
    r.train_final = final_.train;
    r.test_final = final_.test;
    return r;
}

std::size_t consistency_threshold_80(std::size_t n_partitions) noexcept
{
    return (8 * n_partitions + 9) / 10;
}

namespace {

Stat stat_of(const std::vector<double>& v)
{
    if (v.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan, nan};
    }
    Stat s;
    s.min = *std::min_element(v.begin(), v.end());
    s.max = *std::max_element(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) {
        sum += x;
    }
    s.mean = std::clamp(sum / static_cast<double>(v.size()), s.min, s.max);
    return s;
}

} // namespace

std::vector<MethodSummary> summarize(const std::vector<MethodId>& methods,
                                     const std::vector<PartitionResult>& results,
                                     std::size_t n_partitions, std::size_t n_features)
{
    std::vector<MethodSummary> out;
    const std::size_t threshold = consistency_threshold_80(n_partitions);
    for (auto m : methods) {
        MethodSummary s;
        s.method = m;
        s.selection_counts.assign(n_features, 0);
        std::vector<double> cols[9];
        for (const auto& r : results) {
            if (r.method != m) {
                continue;
            }
            ++s.completed;
            const double vals[9] = {r.train_initial.mmre, r.train_initial.pred, r.train_final.mmre,
                                    r.train_final.pred,   r.test_initial.mmre,  r.test_initial.pred,
                                    r.test_final.mmre,    r.test_final.pred,
                                    static_cast<double>(r.n_selected)};
            for (int k = 0; k < 9; ++k) {
                cols[k].push_back(vals[k]);
            }
            for (auto j : r.selected.indices()) {
                ++s.selection_counts[j];
            }
        }
        s.train_initial_mmre = stat_of(cols[0]);
        s.train_initial_pred = stat_of(cols[1]);
        s.train_final_mmre = stat_of(cols[2]);
        s.train_final_pred = stat_of(cols[3]);
        s.test_initial_mmre = stat_of(cols[4]);
        s.test_initial_pred = stat_of(cols[5]);
        s.test_final_mmre = stat_of(cols[6]);
        s.test_final_pred = stat_of(cols[7]);
        s.n_selected = stat_of(cols[8]);
        for (std::size_t j = 0; j < n_features; ++j) {
            if (s.selection_counts[j] >= n_partitions) {
                s.consistent_all.push_back(j);
            }
            if (s.selection_counts[j] >= threshold) {
                s.consistent_80.push_back(j);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

ExperimentReport run_experiment(const Dataset& dataset, const std::vector<MethodId>& methods,
                                const ExperimentConfig& cfg, Execution exec)
{
    cfg.validate();
    if (methods.empty()) {
        throw DataError("no methods requested");
    }
    ExperimentReport rep;
    rep.methods = methods;
    rep.n_partitions = cfg.n_partitions;
    rep.config = cfg;
    rep.features = dataset.features();
    rep.dataset_sha256 = dataset.provenance().source_sha256;
    rep.dataset_source = dataset.provenance().source;
    rep.plans = make_splits(dataset, cfg.n_partitions, cfg.master_seed);

    const std::size_t n_cells = methods.size() * cfg.n_partitions;
    std::vector<std::optional<PartitionResult>> cells(n_cells);
    std::vector<std::string> errors(n_cells);
    for_each_index(n_cells, exec, [&](std::size_t c) {
        const auto m = methods[c / cfg.n_partitions];
        const auto& plan = rep.plans[c % cfg.n_partitions];
        try {
            cells[c] = run_method(dataset, plan, m, cfg, exec);
        } catch (const std::exception& e) {
            errors[c] = std::string(to_string(m)) + " partition " +
                        std::to_string(plan.partition) + ": " + e.what();
        }
    });
    for (std::size_t c = 0; c < n_cells; ++c) {
        if (cells[c]) {
            rep.results.push_back(std::move(*cells[c]));
        } else {
            rep.failures.push_back(
                {methods[c / cfg.n_partitions], c % cfg.n_partitions, errors[c]});
        }
    }
    rep.summaries = summarize(methods, rep.results, cfg.n_partitions, dataset.n_features());
    return rep;
}

OracleResult exhaustive_oracle(std::size_t n_features, const SubsetScorer& scorer, Execution exec)
{
    if (n_features == 0) {
        throw DataError("oracle: no features");
    }
    if (n_features > kOracleMaxFeatures) {
        throw DataError("oracle: " + std::to_string(n_features) + " features exceeds the cap of " +
                        std::to_string(kOracleMaxFeatures));
    }
    const std::size_t n_subsets = (std::size_t{1} << n_features) - 1;
    auto subset_of = [&](std::size_t mask) {
        FeatureSubset s(n_features);
        for (std::size_t j = 0; j < n_features; ++j) {
            if (mask & (std::size_t{1} << j)) {
                s.set(j);
            }
        }
        return s;
    };
    std::vector<double> scores(n_subsets);
    for_each_index(n_subsets, exec, [&](std::size_t i) { scores[i] = scorer(subset_of(i + 1)); });
    const auto best = static_cast<std::size_t>(
        std::min_element(scores.begin(), scores.end()) - scores.begin());
    return {subset_of(best + 1), scores[best], n_subsets};
}

} // namespace fss
