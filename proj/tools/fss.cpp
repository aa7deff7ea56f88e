// fss: command-line front end for feature-subset selection experiments.
//
//   fss ingest <csv> --rules <rules.json> [-o dataset.json]
//   fss run --config <run.ini> [overrides]      (settings under [run])
//   fss report <report.json> [--consistency | --aggregates]
//   fss oracle <dataset.json> [--evaluator ridge|ls] [--partition N]
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 compute error.

#include "fss/dataset.hpp"
#include "fss/errors.hpp"
#include "fss/harness.hpp"
#include "fss/report_io.hpp"
#include "fss/rng.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kCompute = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string default_output_dir()
{
    const char* env = std::getenv("FSS_OUTPUT_DIR");
    return env && *env ? env : "fss-out";
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw fss::DataError("cannot write " + path.string());
    }
    out << text;
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw fss::DataError("cannot create output directory " + dir.string() + ": " +
                             ec.message());
    }
}

// ---------------------------------------------------------------------------

struct IngestArgs {
    std::string csv;
    std::string rules;
    std::string output;
};

int cmd_ingest(const IngestArgs& args)
{
    const auto rules = fss::PreprocessRules::load(args.rules);
    const auto dataset = fss::ingest_csv(args.csv, rules);
    fs::path out = args.output;
    if (out.empty()) {
        out = fs::path(default_output_dir()) / (fs::path(args.csv).stem().string() + ".dataset.json");
    }
    if (out.has_parent_path()) {
        ensure_dir(out.parent_path());
    }
    fss::save_dataset(dataset, out.string());
    for (const auto& col : dataset.provenance().dropped_columns) {
        std::fprintf(stderr, "dropped column %s\n", col.c_str());
    }
    std::fprintf(stderr, "wrote %s (%zu of %zu raw rows kept)\n", out.string().c_str(),
                 dataset.n_projects(), dataset.provenance().raw_rows);
    std::printf("%zu rows, %zu features\n", dataset.n_projects(), dataset.n_features());
    return kOk;
}

// ---------------------------------------------------------------------------

struct RunArgs {
    std::string dataset;
    std::vector<std::string> methods{"BFE", "FFS", "BSWF", "FSWF", "LSBFE",
                                     "LSFFS", "GARSON", "LSGA", "GA"};
    std::string kernel = "rbf";
    std::string output;
    int jobs = 0;
    fss::ExperimentConfig cfg;
    std::size_t ann_min_hidden = 0;
};

int cmd_run(RunArgs args)
{
    std::vector<fss::MethodId> methods;
    for (const auto& m : args.methods) {
        try {
            methods.push_back(fss::parse_method(m));
        } catch (const fss::DataError& e) {
            throw UsageError(e.what());
        }
    }
    if (methods.empty()) {
        throw UsageError("no methods given; valid methods: " + fss::method_list());
    }
    if (args.kernel != "rbf" && args.kernel != "linear") {
        throw UsageError("kernel must be rbf or linear");
    }
    args.cfg.ridge.kernel.kind = args.kernel == "rbf" ? fss::KernelKind::rbf : fss::KernelKind::linear;
    if (args.ann_min_hidden > 0) {
        args.cfg.ann.min_hidden = args.ann_min_hidden;
    }
    try {
        args.cfg.validate();
    } catch (const fss::DataError& e) {
        throw UsageError(e.what());
    }
    const fs::path out_dir = args.output.empty() ? fs::path(default_output_dir()) : fs::path(args.output);
    const auto dataset = fss::load_dataset(args.dataset);
    ensure_dir(out_dir);
    if (args.jobs > 0) {
        omp_set_num_threads(args.jobs);
    }

    std::fprintf(stderr, "running %zu method(s) x %zu partition(s) on %zu projects, %zu features, %d thread(s)\n",
                 methods.size(), args.cfg.n_partitions, dataset.n_projects(),
                 dataset.n_features(), fss::available_threads());
    const auto report = fss::run_experiment(dataset, methods, args.cfg);

    write_file(out_dir / "report.json", fss::report_to_json(report));
    write_file(out_dir / "partitions.csv", fss::report_to_csv(report));
    std::fputs(fss::format_summary(report).c_str(), stdout);
    std::fprintf(stderr, "wrote %s and %s\n", (out_dir / "report.json").string().c_str(),
                 (out_dir / "partitions.csv").string().c_str());
    if (!report.failures.empty()) {
        for (const auto& f : report.failures) {
            std::fprintf(stderr, "failed cell: %s\n", f.message.c_str());
        }
        std::fprintf(stderr, "error: compute: %zu cell(s) failed\n", report.failures.size());
        return kCompute;
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct ReportArgs {
    std::string report;
    bool consistency = false;
    bool aggregates = false;
};

int cmd_report(const ReportArgs& args)
{
    const auto report = fss::load_report(args.report);
    if (args.consistency) {
        std::fputs(fss::format_consistency(report).c_str(), stdout);
    } else if (args.aggregates) {
        std::fputs(fss::format_aggregates(report).c_str(), stdout);
    } else {
        std::fputs(fss::format_summary(report).c_str(), stdout);
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
    std::string dataset;
    std::string evaluator = "ridge";
    std::size_t partition = 0;
    std::uint64_t seed = 1;
    fss::RidgeConfig ridge = fss::RidgeConfig::desharnais_defaults();
    fss::GaConfig ga;
};

std::string ids(const fss::FeatureSubset& s)
{
    std::string out;
    for (auto j : s.indices()) {
        out += (out.empty() ? "" : " ") + std::to_string(j + 1);
    }
    return out.empty() ? "none" : out;
}

int cmd_oracle(const OracleArgs& args)
{
    if (args.evaluator != "ridge" && args.evaluator != "ls") {
        throw UsageError("evaluator must be ridge or ls");
    }
    const auto dataset = fss::load_dataset(args.dataset);
    if (dataset.n_features() > fss::kOracleMaxFeatures) {
        throw fss::DataError("oracle: dataset has " + std::to_string(dataset.n_features()) +
                             " features; the cap is " + std::to_string(fss::kOracleMaxFeatures));
    }
    const auto plan = fss::make_split(dataset.n_projects(), args.partition, args.seed);
    const fss::Evaluator eval(fss::gather_rows(dataset.x(), plan.train),
                              fss::gather(dataset.effort(), plan.train), plan.folds,
                              args.evaluator == "ridge" ? fss::EvaluatorKind::ridge_wrapper
                                                        : fss::EvaluatorKind::ls_filter,
                              args.ridge, dataset.target_scale());
    const auto n = dataset.n_features();
    std::fprintf(stderr, "enumerating %zu subsets\n", (std::size_t{1} << n) - 1);
    const auto oracle = fss::exhaustive_oracle(n, eval);
    std::printf("oracle  score=%.6f  features=%s\n", oracle.score, ids(oracle.subset).c_str());

    fss::GaConfig ga = args.ga;
    ga.seed = fss::derive_seed(args.seed, args.partition);
    const std::pair<const char*, fss::SearchResult> engines[] = {
        {"forward", fss::forward_select(n, eval)},
        {"backward", fss::backward_eliminate(n, eval)},
        {"ga", fss::ga_select(n, eval, ga)}};
    bool dominated = true;
    for (const auto& [name, res] : engines) {
        const bool ok = oracle.score <= res.score;
        dominated = dominated && ok;
        std::printf("%-8s score=%.6f  features=%s  oracle<=engine=%s\n", name, res.score,
                    ids(res.subset).c_str(), ok ? "yes" : "no");
    }
    if (!dominated) {
        std::fprintf(stderr, "error: compute: an engine beat the exhaustive oracle\n");
        return kCompute;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Feature subset selection with kernel ridge regression for effort estimation"};
    app.require_subcommand(1);
    // CLI11 reads config files at the root only; subcommand keys live in a
    // [run] (or [oracle]) section. Fallthrough lets --config follow the
    // subcommand name.
    app.set_config("--config", "", "INI/TOML configuration; command-line flags override it");
    app.fallthrough();

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Filter, encode and normalize a project CSV");
    ingest_cmd->add_option("csv", ingest.csv, "Input CSV (header row required)")
        ->required()
        ->check(CLI::ExistingFile);
    ingest_cmd->add_option("-r,--rules", ingest.rules, "Preprocessing rules (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    ingest_cmd->add_option("-o,--output", ingest.output,
                           "Dataset JSON path (default: $FSS_OUTPUT_DIR/<name>.dataset.json)");

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run FSS methods over random 80/20 partitions");
    run_cmd->add_option("--dataset", run.dataset, "Canonical dataset JSON")
        ->required()
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--methods", run.methods, "Methods: " + fss::method_list())
        ->delimiter(',');
    run_cmd->add_option("--ridge-a", run.cfg.ridge.a, "Ridge parameter a")->capture_default_str();
    run_cmd->add_option("--gamma", run.cfg.ridge.kernel.gamma, "RBF kernel width")
        ->capture_default_str();
    run_cmd->add_option("--kernel", run.kernel, "rbf or linear")->capture_default_str();
    run_cmd->add_option("--p-enter", run.cfg.stepwise.p_enter)->capture_default_str();
    run_cmd->add_option("--p-remove", run.cfg.stepwise.p_remove)->capture_default_str();
    run_cmd->add_option("--stepwise-max-steps", run.cfg.stepwise.max_steps)->capture_default_str();
    run_cmd->add_option("--ga-population", run.cfg.ga.population)->capture_default_str();
    run_cmd->add_option("--ga-generations", run.cfg.ga.generations)->capture_default_str();
    run_cmd->add_option("--ga-crossover", run.cfg.ga.crossover_rate)->capture_default_str();
    run_cmd->add_option("--ga-mutation", run.cfg.ga.mutation_rate)->capture_default_str();
    run_cmd->add_option("--ga-elite", run.cfg.ga.elite_fraction)->capture_default_str();
    run_cmd->add_option("--ann-min-hidden", run.ann_min_hidden,
                        "First hidden size of the sweep (default: min(inputs, max))");
    run_cmd->add_option("--ann-max-hidden", run.cfg.ann.max_hidden)->capture_default_str();
    run_cmd->add_option("--ann-max-epochs", run.cfg.ann.train.max_epochs)->capture_default_str();
    run_cmd->add_option("--ann-learning-rate", run.cfg.ann.train.learning_rate)
        ->capture_default_str();
    run_cmd->add_option("--ann-momentum", run.cfg.ann.train.momentum)->capture_default_str();
    run_cmd->add_option("--ann-min-improvement", run.cfg.ann.train.min_improvement)
        ->capture_default_str();
    run_cmd->add_option("--partitions", run.cfg.n_partitions)->capture_default_str();
    run_cmd->add_option("--seed", run.cfg.master_seed)->capture_default_str();
    run_cmd->add_option("--pred-level", run.cfg.pred_level)->capture_default_str();
    run_cmd->add_option("-o,--output", run.output,
                        "Output directory (default: $FSS_OUTPUT_DIR or ./fss-out)");
    run_cmd->add_option("-j,--jobs", run.jobs, "Worker threads (0: OpenMP default)");

    ReportArgs report;
    auto* report_cmd = app.add_subcommand("report", "Print a saved experiment report");
    report_cmd->add_option("report", report.report, "report.json")->required();
    auto* cons = report_cmd->add_flag("--consistency", report.consistency,
                                      "Features selected in 100% / 80% of partitions");
    report_cmd->add_flag("--aggregates", report.aggregates, "MIN/MAX/AVG table")->excludes(cons);

    OracleArgs oracle;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "Exhaustive subset search vs. the greedy and GA engines");
    oracle_cmd->add_option("dataset", oracle.dataset, "Canonical dataset JSON (<= 20 features)")
        ->required()
        ->check(CLI::ExistingFile);
    oracle_cmd->add_option("--evaluator", oracle.evaluator, "ridge or ls")->capture_default_str();
    oracle_cmd->add_option("--partition", oracle.partition)->capture_default_str();
    oracle_cmd->add_option("--seed", oracle.seed)->capture_default_str();
    oracle_cmd->add_option("--ridge-a", oracle.ridge.a)->capture_default_str();
    oracle_cmd->add_option("--gamma", oracle.ridge.kernel.gamma)->capture_default_str();
    oracle_cmd->add_option("--ga-population", oracle.ga.population)->capture_default_str();
    oracle_cmd->add_option("--ga-generations", oracle.ga.generations)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: usage: %s\n", e.what());
        return kUsage;
    }

    try {
        if (*ingest_cmd) {
            return cmd_ingest(ingest);
        }
        if (*run_cmd) {
            return cmd_run(run);
        }
        if (*report_cmd) {
            return cmd_report(report);
        }
        if (*oracle_cmd) {
            return cmd_oracle(oracle);
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: usage: %s\n", e.what());
        return kUsage;
    } catch (const fss::DataError& e) {
        std::fprintf(stderr, "error: data: %s\n", e.what());
        return kData;
    } catch (const fss::ComputeError& e) {
        std::fprintf(stderr, "error: compute: %s\n", e.what());
        return kCompute;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: compute: %s\n", e.what());
        return kCompute;
    }
    return kUsage;
}
