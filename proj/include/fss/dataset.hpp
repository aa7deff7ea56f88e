#pragma once

#include "fss/csv.hpp"
#include "fss/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fss {

enum class ColumnKind { numeric, categorical, quality_grade, effort };

struct RawColumn {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
};

// Cell values are kept as text until ingestion; nullness is decided by
// `null_markers` (the empty string is always null).
struct RawTable {
    std::vector<RawColumn> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> null_markers;

    bool is_null(const std::string& cell) const;
    std::size_t column_index(const std::string& name) const;
    std::size_t effort_index() const;

    // Throws DataError on duplicate names or effort-column count != 1.
    void validate() const;
};

// A single column mapping used to pick and name the dataset features.
struct FeatureSpec {
    std::string column;
    std::string code;
};

struct PreprocessRules {
    std::string effort_column;
    double null_threshold = 0.40;
    std::vector<std::string> null_markers{"?", "NA", "N/A", "NULL", "null"};

    // Optional data-quality column; rows whose grade sorts after
    // `max_quality_grade` (or is null) are removed.
    std::optional<std::string> quality_column;
    std::string max_quality_grade = "B";

    // Step (a): columns recorded after project completion.
    std::vector<std::string> drop_columns;
    // Columns forced to categorical even when every value parses as a number.
    std::vector<std::string> categorical_columns;
    // When non-empty, only these columns are kept, in this order, under these
    // codes. Otherwise every remaining column is kept in file order.
    std::vector<FeatureSpec> features;

    bool normalize_effort = false;

    std::string to_json() const;
    static PreprocessRules from_json(const std::string& text);
    static PreprocessRules load(const std::string& path);
};

// Assigns declared kinds to a parsed CSV: effort and quality columns from the
// rules, forced categoricals, and numeric/categorical by parseability for
// the rest.
RawTable make_raw_table(const csv::Table& table, const PreprocessRules& rules);

enum class FeatureKind { numeric, indicator };

struct FeatureDescriptor {
    std::size_t id = 0; // 1-based; id 0 is reserved for effort
    std::string code;
    FeatureKind kind = FeatureKind::numeric;
    std::string source_column;
    std::optional<std::string> category;
    double norm_min = 0.0;
    double norm_max = 0.0;

    bool operator==(const FeatureDescriptor&) const = default;
};

struct Provenance {
    std::string source;
    std::string source_sha256;
    std::string rules_json;
    std::vector<std::string> dropped_columns;
    std::size_t raw_rows = 0;

    bool operator==(const Provenance&) const = default;
};

struct NormRange {
    double min = 0.0;
    double max = 0.0;
    bool operator==(const NormRange&) const = default;
};

// Canonical immutable dataset: normalized features in [0, 1], strictly
// positive effort in original units.
class Dataset {
public:
    static constexpr std::size_t kMinProjects = 20;

    Dataset(Matrix x, Vector effort, std::vector<FeatureDescriptor> features,
            Provenance provenance = {}, bool normalized_target = false);

    const Matrix& x() const noexcept { return x_; }
    const Vector& effort() const noexcept { return effort_; }
    const std::vector<FeatureDescriptor>& features() const noexcept { return features_; }
    const Provenance& provenance() const noexcept { return provenance_; }
    NormRange effort_range() const noexcept { return effort_range_; }
    bool normalized_target() const noexcept { return normalized_target_; }

    std::size_t n_projects() const noexcept { return static_cast<std::size_t>(x_.rows()); }
    std::size_t n_features() const noexcept { return static_cast<std::size_t>(x_.cols()); }

    // Identity, or the effort min-max map in normalized-target mode. Models
    // are fitted on scaled targets; metrics always use original units.
    TargetScale target_scale() const noexcept;

    // Maps a normalized column back to original units.
    Vector denormalize_feature(std::size_t j, const Vector& normalized) const;

    // Same matrix, effort and feature codes.
    bool same_content(const Dataset& other) const;

private:
    Matrix x_;
    Vector effort_;
    std::vector<FeatureDescriptor> features_;
    Provenance provenance_;
    NormRange effort_range_;
    bool normalized_target_ = false;
};

struct OneHot {
    std::vector<std::string> levels;          // sorted
    std::vector<std::vector<double>> columns; // one per level
};

// Null cells produce an all-zero indicator row.
OneHot one_hot(std::span<const std::optional<std::string>> column);

struct Normalized {
    std::vector<double> values;
    double min = 0.0;
    double max = 0.0;
};

// Constant columns normalize to all zeros.
Normalized minmax_normalize(std::span<const double> column);

// Steps, in order: drop configured columns, drop columns over the null
// threshold, drop rows failing the quality grade, drop rows with a null
// numeric value, one-hot encode categoricals, min-max normalize numerics.
Dataset ingest(const RawTable& raw, const PreprocessRules& rules, Provenance provenance = {});

// Writes the canonical table (feature codes as headers, normalized values,
// effort last) so that it can be re-ingested.
RawTable export_table(const Dataset& dataset);

struct SplitPlan {
    static constexpr int kFolds = 10;

    std::size_t partition = 0;
    IndexList train; // ascending dataset row indices
    IndexList test;  // ascending dataset row indices
    // folds[i] is the CV fold of train[i].
    std::vector<int> folds;
    std::uint64_t seed = 0;

    bool operator==(const SplitPlan&) const = default;
};

// |train| = round(0.8 n) computed exactly as (8n + 5) / 10; 0.8n is never a
// half-integer so no tie rule is exercised.
std::size_t train_size(std::size_t n) noexcept;

// Partition p shuffles with mt19937_64 seeded by derive_seed(master_seed, p).
SplitPlan make_split(std::size_t n_projects, std::size_t partition, std::uint64_t master_seed);
std::vector<SplitPlan> make_splits(const Dataset& dataset, std::size_t n_partitions,
                                   std::uint64_t master_seed);

std::string sha256_hex(std::span<const unsigned char> bytes);
std::string sha256_file(const std::string& path);

// Canonical dataset JSON.
std::string dataset_to_json(const Dataset& dataset);
Dataset dataset_from_json(const std::string& text);
void save_dataset(const Dataset& dataset, const std::string& path);
Dataset load_dataset(const std::string& path);

// CSV file + rules file to canonical dataset, recording provenance.
Dataset ingest_csv(const std::string& csv_path, const PreprocessRules& rules);

} // namespace fss
