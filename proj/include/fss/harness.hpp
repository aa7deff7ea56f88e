#pragma once

#include "fss/ann.hpp"
#include "fss/dataset.hpp"
#include "fss/evaluators.hpp"
#include "fss/linreg.hpp"
#include "fss/metrics.hpp"
#include "fss/ridge.hpp"
#include "fss/search.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fss {

enum class MethodId { BFE, FFS, BSWF, FSWF, LSBFE, LSFFS, GARSON, LSGA, GA };

inline constexpr std::array<MethodId, 9> kAllMethods{
    MethodId::BFE,   MethodId::FFS,    MethodId::BSWF, MethodId::FSWF, MethodId::LSBFE,
    MethodId::LSFFS, MethodId::GARSON, MethodId::LSGA, MethodId::GA};

std::string_view to_string(MethodId id) noexcept;
// DataError listing the nine valid ids on an unknown name.
MethodId parse_method(std::string_view name);
std::string method_list();

struct ExperimentConfig {
    RidgeConfig ridge = RidgeConfig::desharnais_defaults();
    StepwiseConfig stepwise;
    GaConfig ga;
    SweepConfig ann;
    double pred_level = kDefaultPredLevel;
    std::size_t n_partitions = 10;
    std::uint64_t master_seed = 1;

    void validate() const;
};

struct PhaseMetrics {
    double mmre = 0.0;
    double pred = 0.0;
};

struct PartitionResult {
    MethodId method = MethodId::GA;
    std::size_t partition = 0;
    FeatureSubset selected;
    std::size_t n_selected = 0;
    // Evaluator score of `selected` where the method has one (CV MMRE on the
    // training split), otherwise absent.
    std::optional<double> search_score;
    PhaseMetrics train_initial, train_final, test_initial, test_final;
};

// Ridge on `columns` of the training rows, scored on training and test rows.
struct TrainTestMetrics {
    PhaseMetrics train, test;
};
TrainTestMetrics score_subset(const Dataset& dataset, const SplitPlan& plan,
                              const FeatureSubset& subset, const RidgeConfig& ridge,
                              double pred_level);

// Seed for one (method, partition) cell; independent of execution order.
std::uint64_t cell_seed(std::uint64_t master_seed, MethodId method, std::size_t partition) noexcept;

// Selects features on the training rows of `plan` with `method`, then scores
// ridge with all features (initial) and with the selection (final) on the
// training and test rows. Test rows are never seen before final scoring.
PartitionResult run_method(const Dataset& dataset, const SplitPlan& plan, MethodId method,
                           const ExperimentConfig& cfg, Execution exec = Execution::parallel);

struct Stat {
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

struct MethodSummary {
    MethodId method = MethodId::GA;
    std::size_t completed = 0;
    Stat train_initial_mmre, train_initial_pred, train_final_mmre, train_final_pred;
    Stat test_initial_mmre, test_initial_pred, test_final_mmre, test_final_pred;
    Stat n_selected;
    std::vector<std::size_t> selection_counts; // per feature column
    IndexList consistent_all; // columns selected in every partition
    IndexList consistent_80;  // columns selected in >= ceil(0.8 n) partitions
};

struct CellFailure {
    MethodId method = MethodId::GA;
    std::size_t partition = 0;
    std::string message;
};

struct ExperimentReport {
    std::vector<MethodId> methods;
    std::size_t n_partitions = 0;
    std::vector<PartitionResult> results; // method-major, partition-minor
    std::vector<CellFailure> failures;
    std::vector<MethodSummary> summaries; // aligned with `methods`
    std::vector<FeatureDescriptor> features;
    std::vector<SplitPlan> plans;
    ExperimentConfig config;
    std::string dataset_sha256;
    std::string dataset_source;
};

// ceil(0.8 n), exactly.
std::size_t consistency_threshold_80(std::size_t n_partitions) noexcept;

// Recomputes aggregates and consistency sets from the per-partition rows.
std::vector<MethodSummary> summarize(const std::vector<MethodId>& methods,
                                     const std::vector<PartitionResult>& results,
                                     std::size_t n_partitions, std::size_t n_features);

// Runs every method on every partition. Cells run in parallel under
// Execution::parallel; a failing cell is recorded and the rest continue.
ExperimentReport run_experiment(const Dataset& dataset, const std::vector<MethodId>& methods,
                                const ExperimentConfig& cfg, Execution exec = Execution::parallel);

struct OracleResult {
    FeatureSubset subset;
    double score = kWorstScore;
    std::size_t evaluations = 0;
};

inline constexpr std::size_t kOracleMaxFeatures = 20;

// Scores all 2^n - 1 non-empty subsets; the first minimum in mask order wins.
OracleResult exhaustive_oracle(std::size_t n_features, const SubsetScorer& scorer,
                               Execution exec = Execution::parallel);

} // namespace fss
