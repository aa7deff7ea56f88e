#include "fss/report_io.hpp"
#include "fss/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace fss {

using ojson = nlohmann::ordered_json;

namespace {

ojson number(double v)
{
    return std::isfinite(v) ? ojson(v) : ojson(nullptr);
}

double number_of(const ojson& j)
{
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

ojson ids_of(const IndexList& cols)
{
    ojson out = ojson::array();
    for (auto c : cols) {
        out.push_back(c + 1);
    }
    return out;
}

ojson phase(const PhaseMetrics& m)
{
    return {{"mmre", number(m.mmre)}, {"pred", number(m.pred)}};
}

PhaseMetrics phase_of(const ojson& j)
{
    return {number_of(j.at("mmre")), number_of(j.at("pred"))};
}

ojson stat(const Stat& s)
{
    return {{"min", number(s.min)}, {"mean", number(s.mean)}, {"max", number(s.max)}};
}

std::string fixed(double v, int digits = 3)
{
    if (!std::isfinite(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

std::string feature_list(const ExperimentReport& rep, const IndexList& cols)
{
    if (cols.empty()) {
        return "none";
    }
    std::string out;
    for (auto c : cols) {
        if (!out.empty()) {
            out += ", ";
        }
        out += std::to_string(c + 1);
        if (c < rep.features.size()) {
            out += " (" + rep.features[c].code + ")";
        }
    }
    return out;
}

ojson config_json(const ExperimentConfig& cfg)
{
    ojson ann = {{"min_hidden", cfg.ann.min_hidden ? ojson(*cfg.ann.min_hidden) : ojson(nullptr)},
                 {"max_hidden", cfg.ann.max_hidden},
                 {"max_epochs", cfg.ann.train.max_epochs},
                 {"min_improvement", cfg.ann.train.min_improvement},
                 {"window", cfg.ann.train.window},
                 {"learning_rate", cfg.ann.train.learning_rate},
                 {"momentum", cfg.ann.train.momentum},
                 {"init_scale", cfg.ann.train.init_scale}};
    return {{"ridge",
             {{"a", cfg.ridge.a},
              {"kernel", cfg.ridge.kernel.kind == KernelKind::rbf ? "rbf" : "linear"},
              {"gamma", cfg.ridge.kernel.gamma}}},
            {"stepwise",
             {{"p_enter", cfg.stepwise.p_enter},
              {"p_remove", cfg.stepwise.p_remove},
              {"max_steps", cfg.stepwise.max_steps}}},
            {"ga",
             {{"population", cfg.ga.population},
              {"generations", cfg.ga.generations},
              {"crossover_rate", cfg.ga.crossover_rate},
              {"mutation_rate", cfg.ga.mutation_rate},
              {"elite_fraction", cfg.ga.elite_fraction}}},
            {"ann", ann},
            {"pred_level", cfg.pred_level},
            {"n_partitions", cfg.n_partitions},
            {"master_seed", cfg.master_seed}};
}

ExperimentConfig config_of(const ojson& j)
{
    ExperimentConfig cfg;
    const auto& r = j.at("ridge");
    cfg.ridge.a = r.at("a").get<double>();
    cfg.ridge.kernel.kind = r.at("kernel").get<std::string>() == "rbf" ? KernelKind::rbf
                                                                       : KernelKind::linear;
    cfg.ridge.kernel.gamma = r.at("gamma").get<double>();
    const auto& s = j.at("stepwise");
    cfg.stepwise.p_enter = s.at("p_enter").get<double>();
    cfg.stepwise.p_remove = s.at("p_remove").get<double>();
    cfg.stepwise.max_steps = s.at("max_steps").get<std::size_t>();
    const auto& g = j.at("ga");
    cfg.ga.population = g.at("population").get<std::size_t>();
    cfg.ga.generations = g.at("generations").get<std::size_t>();
    cfg.ga.crossover_rate = g.at("crossover_rate").get<double>();
    cfg.ga.mutation_rate = g.at("mutation_rate").get<double>();
    cfg.ga.elite_fraction = g.at("elite_fraction").get<double>();
    const auto& a = j.at("ann");
    if (!a.at("min_hidden").is_null()) {
        cfg.ann.min_hidden = a["min_hidden"].get<std::size_t>();
    }
    cfg.ann.max_hidden = a.at("max_hidden").get<std::size_t>();
    cfg.ann.train.max_epochs = a.at("max_epochs").get<std::size_t>();
    cfg.ann.train.min_improvement = a.at("min_improvement").get<double>();
    cfg.ann.train.window = a.at("window").get<std::size_t>();
    cfg.ann.train.learning_rate = a.at("learning_rate").get<double>();
    cfg.ann.train.momentum = a.at("momentum").get<double>();
    cfg.ann.train.init_scale = a.at("init_scale").get<double>();
    cfg.pred_level = j.at("pred_level").get<double>();
    cfg.n_partitions = j.at("n_partitions").get<std::size_t>();
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    return cfg;
}

} // namespace

std::string config_to_json(const ExperimentConfig& cfg)
{
    return config_json(cfg).dump(2);
}

std::string report_to_json(const ExperimentReport& rep)
{
    ojson j;
    j["format"] = "fss-report/1";
    ojson feats = ojson::array();
    for (const auto& f : rep.features) {
        feats.push_back({{"id", f.id}, {"code", f.code}});
    }
    j["dataset"] = {{"source", rep.dataset_source},
                    {"sha256", rep.dataset_sha256},
                    {"n_features", rep.features.size()},
                    {"features", feats}};
    j["config"] = config_json(rep.config);
    ojson methods = ojson::array();
    for (auto m : rep.methods) {
        methods.push_back(std::string(to_string(m)));
    }
    j["methods"] = methods;
    j["n_partitions"] = rep.n_partitions;

    ojson plans = ojson::array();
    for (const auto& p : rep.plans) {
        plans.push_back({{"partition", p.partition},
                         {"seed", p.seed},
                         {"train", p.train},
                         {"test", p.test},
                         {"folds", p.folds}});
    }
    j["plans"] = plans;

    ojson results = ojson::array();
    for (const auto& r : rep.results) {
        results.push_back(
            {{"method", std::string(to_string(r.method))},
             {"partition", r.partition},
             {"selected", r.selected.to_string()},
             {"selected_ids", ids_of(r.selected.indices())},
             {"n_selected", r.n_selected},
             {"search_score", r.search_score ? number(*r.search_score) : ojson(nullptr)},
             {"train", {{"initial", phase(r.train_initial)}, {"final", phase(r.train_final)}}},
             {"test", {{"initial", phase(r.test_initial)}, {"final", phase(r.test_final)}}}});
    }
    j["results"] = results;

    ojson failures = ojson::array();
    for (const auto& f : rep.failures) {
        failures.push_back({{"method", std::string(to_string(f.method))},
                            {"partition", f.partition},
                            {"message", f.message}});
    }
    j["failures"] = failures;

    ojson summary = ojson::array();
    for (const auto& s : rep.summaries) {
        summary.push_back({{"method", std::string(to_string(s.method))},
                           {"completed", s.completed},
                           {"train_initial", {{"mmre", stat(s.train_initial_mmre)},
                                              {"pred", stat(s.train_initial_pred)}}},
                           {"train_final", {{"mmre", stat(s.train_final_mmre)},
                                            {"pred", stat(s.train_final_pred)}}},
                           {"test_initial", {{"mmre", stat(s.test_initial_mmre)},
                                             {"pred", stat(s.test_initial_pred)}}},
                           {"test_final", {{"mmre", stat(s.test_final_mmre)},
                                           {"pred", stat(s.test_final_pred)}}},
                           {"n_selected", stat(s.n_selected)},
                           {"selection_counts", s.selection_counts},
                           {"consistent_100", ids_of(s.consistent_all)},
                           {"consistent_80", ids_of(s.consistent_80)}});
    }
    j["summary"] = summary;
    return j.dump(1) + "\n";
}

ExperimentReport report_from_json(const std::string& text)
{
    try {
        const ojson j = ojson::parse(text);
        if (!j.is_object() || j.value("format", "") != "fss-report/1") {
            throw DataError("not an fss-report/1 file");
        }
        ExperimentReport rep;
        const auto& ds = j.at("dataset");
        rep.dataset_source = ds.at("source").get<std::string>();
        rep.dataset_sha256 = ds.at("sha256").get<std::string>();
        for (const auto& f : ds.at("features")) {
            FeatureDescriptor d;
            d.id = f.at("id").get<std::size_t>();
            d.code = f.at("code").get<std::string>();
            rep.features.push_back(std::move(d));
        }
        rep.config = config_of(j.at("config"));
        for (const auto& m : j.at("methods")) {
            rep.methods.push_back(parse_method(m.get<std::string>()));
        }
        rep.n_partitions = j.at("n_partitions").get<std::size_t>();
        for (const auto& p : j.at("plans")) {
            SplitPlan plan;
            plan.partition = p.at("partition").get<std::size_t>();
            plan.seed = p.at("seed").get<std::uint64_t>();
            plan.train = p.at("train").get<IndexList>();
            plan.test = p.at("test").get<IndexList>();
            plan.folds = p.at("folds").get<std::vector<int>>();
            rep.plans.push_back(std::move(plan));
        }
        for (const auto& rj : j.at("results")) {
            PartitionResult r;
            r.method = parse_method(rj.at("method").get<std::string>());
            r.partition = rj.at("partition").get<std::size_t>();
            r.selected = FeatureSubset::from_string(rj.at("selected").get<std::string>());
            if (r.selected.size() != rep.features.size()) {
                throw DataError("report: selection width does not match feature count");
            }
            r.n_selected = rj.at("n_selected").get<std::size_t>();
            if (!rj.at("search_score").is_null()) {
                r.search_score = rj["search_score"].get<double>();
            }
            r.train_initial = phase_of(rj.at("train").at("initial"));
            r.train_final = phase_of(rj.at("train").at("final"));
            r.test_initial = phase_of(rj.at("test").at("initial"));
            r.test_final = phase_of(rj.at("test").at("final"));
            rep.results.push_back(std::move(r));
        }
        for (const auto& fj : j.at("failures")) {
            rep.failures.push_back({parse_method(fj.at("method").get<std::string>()),
                                    fj.at("partition").get<std::size_t>(),
                                    fj.at("message").get<std::string>()});
        }
        rep.summaries = summarize(rep.methods, rep.results, rep.n_partitions, rep.features.size());
        return rep;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed report: ") + e.what());
    }
}

ExperimentReport load_report(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open report " + path);
    }
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return report_from_json(text);
}

std::string report_to_csv(const ExperimentReport& rep)
{
    std::ostringstream out;
    out << "method,partition,n_selected,selected_ids,search_score,"
           "train_initial_mmre,train_initial_pred,train_final_mmre,train_final_pred,"
           "test_initial_mmre,test_initial_pred,test_final_mmre,test_final_pred\n";
    auto num = [](double v) { return fixed(v, 6); };
    for (const auto& r : rep.results) {
        std::string ids;
        for (auto c : r.selected.indices()) {
            if (!ids.empty()) {
                ids += ' ';
            }
            ids += std::to_string(c + 1);
        }
        out << to_string(r.method) << ',' << r.partition << ',' << r.n_selected << ',' << ids
            << ',' << (r.search_score ? num(*r.search_score) : "") << ','
            << num(r.train_initial.mmre) << ',' << num(r.train_initial.pred) << ','
            << num(r.train_final.mmre) << ',' << num(r.train_final.pred) << ','
            << num(r.test_initial.mmre) << ',' << num(r.test_initial.pred) << ','
            << num(r.test_final.mmre) << ',' << num(r.test_final.pred) << '\n';
    }
    return out.str();
}

std::string format_summary(const ExperimentReport& rep)
{
    std::ostringstream out;
    out << pad("method", 8) << pad("cells", 7) << pad("test_mmre", 11) << pad("test_pred", 11)
        << pad("init_mmre", 11) << pad("init_pred", 11) << "n_selected\n";
    for (const auto& s : rep.summaries) {
        out << pad(std::string(to_string(s.method)), 8)
            << pad(std::to_string(s.completed) + "/" + std::to_string(rep.n_partitions), 7)
            << pad(fixed(s.test_final_mmre.mean), 11) << pad(fixed(s.test_final_pred.mean), 11)
            << pad(fixed(s.test_initial_mmre.mean), 11) << pad(fixed(s.test_initial_pred.mean), 11)
            << fixed(s.n_selected.mean, 1) << '\n';
    }
    return out.str();
}

std::string format_consistency(const ExperimentReport& rep)
{
    std::ostringstream out;
    for (const auto& s : rep.summaries) {
        const std::string name(to_string(s.method));
        out << pad(name, 8) << "100%  " << feature_list(rep, s.consistent_all) << '\n';
        out << pad(name, 8) << "80%   " << feature_list(rep, s.consistent_80) << '\n';
    }
    return out.str();
}

std::string format_aggregates(const ExperimentReport& rep)
{
    std::ostringstream out;
    out << pad("method", 8) << pad("stat", 6)
        << "tr_init_mmre tr_init_pred tr_fin_mmre tr_fin_pred "
           "te_init_mmre te_init_pred te_fin_mmre te_fin_pred  #F\n";
    for (const auto& s : rep.summaries) {
        const Stat* cols[] = {&s.train_initial_mmre, &s.train_initial_pred, &s.train_final_mmre,
                              &s.train_final_pred,   &s.test_initial_mmre,  &s.test_initial_pred,
                              &s.test_final_mmre,    &s.test_final_pred};
        const char* names[] = {"MIN", "MAX", "AVG"};
        for (int k = 0; k < 3; ++k) {
            out << pad(std::string(to_string(s.method)), 8) << pad(names[k], 6);
            for (const Stat* c : cols) {
                const double v = k == 0 ? c->min : k == 1 ? c->max : c->mean;
                out << pad(fixed(v), 13);
            }
            const double nf = k == 0 ? s.n_selected.min : k == 1 ? s.n_selected.max
                                                                  : s.n_selected.mean;
            out << fixed(nf, 1) << '\n';
        }
    }
    return out.str();
}

} // namespace fss
