#include "fss/dataset.hpp"
#include "fss/errors.hpp"
#include "fss/rng.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fss {

using nlohmann::json;

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(const std::string& cell)
{
    const std::string t = trim(cell);
    if (t.empty()) {
        return std::nullopt;
    }
    const char* begin = t.data();
    if (*begin == '+') {
        ++begin;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

bool contains(const std::vector<std::string>& v, const std::string& s)
{
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::string format_double(double v)
{
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

// ---------------------------------------------------------------------------
// RawTable

bool RawTable::is_null(const std::string& cell) const
{
    const std::string t = trim(cell);
    return t.empty() || contains(null_markers, t);
}

std::size_t RawTable::column_index(const std::string& name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) {
            return i;
        }
    }
    throw DataError("unknown column '" + name + "'");
}

std::size_t RawTable::effort_index() const
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].kind == ColumnKind::effort) {
            return i;
        }
    }
    throw DataError("missing effort column");
}

void RawTable::validate() const
{
    std::set<std::string> names;
    std::size_t n_effort = 0;
    for (const auto& c : columns) {
        if (!names.insert(c.name).second) {
            throw DataError("duplicate column name '" + c.name + "'");
        }
        if (c.kind == ColumnKind::effort) {
            ++n_effort;
        }
    }
    if (n_effort == 0) {
        throw DataError("missing effort column");
    }
    if (n_effort > 1) {
        throw DataError("more than one effort column");
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != columns.size()) {
            throw DataError("row " + std::to_string(r) + " has wrong field count");
        }
    }
}

// ---------------------------------------------------------------------------
// Rules

std::string PreprocessRules::to_json() const
{
    json j;
    j["effort_column"] = effort_column;
    j["null_threshold"] = null_threshold;
    j["null_markers"] = null_markers;
    j["quality_column"] = quality_column ? json(*quality_column) : json(nullptr);
    j["max_quality_grade"] = max_quality_grade;
    j["drop_columns"] = drop_columns;
    j["categorical_columns"] = categorical_columns;
    json feats = json::array();
    for (const auto& f : features) {
        feats.push_back({{"column", f.column}, {"code", f.code}});
    }
    j["features"] = feats;
    j["normalize_effort"] = normalize_effort;
    return j.dump();
}

PreprocessRules PreprocessRules::from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("rules: ") + e.what());
    }
    if (!j.is_object()) {
        throw DataError("rules: expected a JSON object");
    }
    static const std::set<std::string> known{
        "effort_column", "null_threshold", "null_markers", "quality_column",
        "max_quality_grade", "drop_columns", "categorical_columns", "features",
        "normalize_effort"};
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) {
            throw DataError("rules: unknown key '" + key + "'");
        }
    }
    PreprocessRules r;
    try {
        r.effort_column = j.at("effort_column").get<std::string>();
        r.null_threshold = j.value("null_threshold", r.null_threshold);
        r.null_markers = j.value("null_markers", r.null_markers);
        if (j.contains("quality_column") && !j["quality_column"].is_null()) {
            r.quality_column = j["quality_column"].get<std::string>();
        }
        r.max_quality_grade = j.value("max_quality_grade", r.max_quality_grade);
        r.drop_columns = j.value("drop_columns", r.drop_columns);
        r.categorical_columns = j.value("categorical_columns", r.categorical_columns);
        if (j.contains("features")) {
            for (const auto& f : j["features"]) {
                if (f.is_string()) {
                    r.features.push_back({f.get<std::string>(), f.get<std::string>()});
                } else {
                    const auto col = f.at("column").get<std::string>();
                    r.features.push_back({col, f.value("code", col)});
                }
            }
        }
        r.normalize_effort = j.value("normalize_effort", false);
    } catch (const json::exception& e) {
        throw DataError(std::string("rules: ") + e.what());
    }
    if (!(r.null_threshold >= 0.0 && r.null_threshold <= 1.0)) {
        throw DataError("rules: null_threshold must lie in [0, 1]");
    }
    return r;
}

PreprocessRules PreprocessRules::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open rules file " + path);
    }
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return from_json(text);
}

RawTable make_raw_table(const csv::Table& table, const PreprocessRules& rules)
{
    if (table.header.empty()) {
        throw DataError("no rows");
    }
    RawTable raw;
    raw.null_markers = rules.null_markers;
    raw.rows = table.rows;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        RawColumn col{trim(table.header[c]), ColumnKind::numeric};
        if (col.name == rules.effort_column) {
            col.kind = ColumnKind::effort;
        } else if (rules.quality_column && col.name == *rules.quality_column) {
            col.kind = ColumnKind::quality_grade;
        } else if (contains(rules.categorical_columns, col.name)) {
            col.kind = ColumnKind::categorical;
        } else {
            for (const auto& row : table.rows) {
                if (!raw.is_null(row[c]) && !parse_number(row[c])) {
                    col.kind = ColumnKind::categorical;
                    break;
                }
            }
        }
        raw.columns.push_back(std::move(col));
    }
    if (std::none_of(raw.columns.begin(), raw.columns.end(),
                     [](const RawColumn& c) { return c.kind == ColumnKind::effort; })) {
        throw DataError("missing effort column '" + rules.effort_column + "'");
    }
    return raw;
}

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(Matrix x, Vector effort, std::vector<FeatureDescriptor> features,
                 Provenance provenance, bool normalized_target)
    : x_(std::move(x)), effort_(std::move(effort)), features_(std::move(features)),
      provenance_(std::move(provenance)), normalized_target_(normalized_target)
{
    if (x_.rows() != effort_.size()) {
        throw DataError("feature matrix and effort vector differ in length");
    }
    if (static_cast<std::size_t>(x_.cols()) != features_.size()) {
        throw DataError("feature descriptor count does not match matrix columns");
    }
    if (x_.rows() == 0) {
        throw DataError("no rows");
    }
    if (x_.cols() == 0) {
        throw DataError("no features");
    }
    if (n_projects() < kMinProjects) {
        throw DataError("dataset has " + std::to_string(n_projects()) +
                        " projects; at least " + std::to_string(kMinProjects) +
                        " are needed for 10-fold CV inside an 80% split");
    }
    for (Index j = 0; j < x_.cols(); ++j) {
        const auto& f = features_[static_cast<std::size_t>(j)];
        if (!(f.norm_min <= f.norm_max)) {
            throw DataError("feature " + f.code + " has norm_min > norm_max");
        }
        for (Index i = 0; i < x_.rows(); ++i) {
            const double v = x_(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                throw DataError("feature " + f.code + " has a value outside [0, 1]");
            }
            if (f.kind == FeatureKind::indicator && v != 0.0 && v != 1.0) {
                throw DataError("indicator feature " + f.code + " is not binary");
            }
        }
    }
    for (Index i = 0; i < effort_.size(); ++i) {
        if (!(effort_(i) > 0.0) || !std::isfinite(effort_(i))) {
            throw DataError("effort must be strictly positive (row " + std::to_string(i) + ")");
        }
    }
    effort_range_ = {effort_.minCoeff(), effort_.maxCoeff()};
}

TargetScale Dataset::target_scale() const noexcept
{
    if (!normalized_target_ || effort_range_.max == effort_range_.min) {
        return {};
    }
    return {effort_range_.min, effort_range_.max - effort_range_.min};
}

Vector Dataset::denormalize_feature(std::size_t j, const Vector& normalized) const
{
    const auto& f = features_.at(j);
    return (normalized.array() * (f.norm_max - f.norm_min) + f.norm_min).matrix();
}

bool Dataset::same_content(const Dataset& other) const
{
    if (x_.rows() != other.x_.rows() || x_.cols() != other.x_.cols() || x_ != other.x_ ||
        effort_ != other.effort_ || features_.size() != other.features_.size()) {
        return false;
    }
    for (std::size_t j = 0; j < features_.size(); ++j) {
        if (features_[j].code != other.features_[j].code) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Column transforms

OneHot one_hot(std::span<const std::optional<std::string>> column)
{
    std::set<std::string> levels;
    for (const auto& v : column) {
        if (v) {
            levels.insert(*v);
        }
    }
    OneHot out;
    out.levels.assign(levels.begin(), levels.end());
    out.columns.assign(out.levels.size(), std::vector<double>(column.size(), 0.0));
    for (std::size_t r = 0; r < column.size(); ++r) {
        if (!column[r]) {
            continue;
        }
        const auto it = std::lower_bound(out.levels.begin(), out.levels.end(), *column[r]);
        out.columns[static_cast<std::size_t>(it - out.levels.begin())][r] = 1.0;
    }
    return out;
}

Normalized minmax_normalize(std::span<const double> column)
{
    Normalized out;
    if (column.empty()) {
        return out;
    }
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    out.min = *lo;
    out.max = *hi;
    out.values.resize(column.size(), 0.0);
    if (out.max > out.min) {
        const double range = out.max - out.min;
        for (std::size_t i = 0; i < column.size(); ++i) {
            out.values[i] = (column[i] - out.min) / range;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ingest

Dataset ingest(const RawTable& raw, const PreprocessRules& rules, Provenance provenance)
{
    raw.validate();
    const std::size_t effort_col = raw.effort_index();
    std::optional<std::size_t> quality_col;
    for (std::size_t c = 0; c < raw.columns.size(); ++c) {
        if (raw.columns[c].kind == ColumnKind::quality_grade) {
            quality_col = c;
        }
    }
    for (const auto& name : rules.drop_columns) {
        raw.column_index(name);
    }

    // (a) configured drops and feature selection; `kept` holds (column, code).
    std::vector<std::pair<std::size_t, std::string>> kept;
    if (!rules.features.empty()) {
        for (const auto& f : rules.features) {
            const auto c = raw.column_index(f.column);
            if (c == effort_col || (quality_col && c == *quality_col)) {
                throw DataError("column '" + f.column + "' cannot be used as a feature");
            }
            if (!contains(rules.drop_columns, f.column)) {
                kept.emplace_back(c, f.code.empty() ? f.column : f.code);
            }
        }
    } else {
        for (std::size_t c = 0; c < raw.columns.size(); ++c) {
            if (c == effort_col || (quality_col && c == *quality_col) ||
                contains(rules.drop_columns, raw.columns[c].name)) {
                continue;
            }
            kept.emplace_back(c, raw.columns[c].name);
        }
    }
    for (std::size_t c = 0; c < raw.columns.size(); ++c) {
        if (contains(rules.drop_columns, raw.columns[c].name)) {
            provenance.dropped_columns.push_back(raw.columns[c].name);
        }
    }

    // (b) null-fraction filter over all raw rows.
    const std::size_t n_raw = raw.rows.size();
    provenance.raw_rows = n_raw;
    if (n_raw == 0) {
        throw DataError("no rows");
    }
    std::erase_if(kept, [&](const auto& kc) {
        const auto c = kc.first;
        const auto nulls = std::count_if(raw.rows.begin(), raw.rows.end(),
                                         [&](const auto& row) { return raw.is_null(row[c]); });
        const double frac = static_cast<double>(nulls) / static_cast<double>(n_raw);
        if (frac > rules.null_threshold) {
            provenance.dropped_columns.push_back(raw.columns[c].name);
            return true;
        }
        return false;
    });

    // (c) quality grade, (d) nulls in numeric columns or effort.
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < n_raw; ++r) {
        const auto& row = raw.rows[r];
        if (quality_col) {
            if (raw.is_null(row[*quality_col]) ||
                trim(row[*quality_col]) > rules.max_quality_grade) {
                continue;
            }
        }
        if (raw.is_null(row[effort_col])) {
            continue;
        }
        const bool numeric_null = std::any_of(kept.begin(), kept.end(), [&](const auto& kc) {
            return raw.columns[kc.first].kind == ColumnKind::numeric && raw.is_null(row[kc.first]);
        });
        if (!numeric_null) {
            rows.push_back(r);
        }
    }
    if (rows.empty()) {
        throw DataError("no rows");
    }
    if (kept.empty()) {
        throw DataError("no features");
    }

    Vector effort(static_cast<Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& cell = raw.rows[rows[i]][effort_col];
        const auto v = parse_number(cell);
        if (!v) {
            throw DataError("effort value '" + cell + "' is not numeric");
        }
        if (*v <= 0.0) {
            throw DataError("effort must be strictly positive (raw row " +
                            std::to_string(rows[i] + 1) + ")");
        }
        effort(static_cast<Index>(i)) = *v;
    }

    // (e) one-hot, (f) min-max.
    std::vector<std::vector<double>> columns;
    std::vector<FeatureDescriptor> features;
    for (const auto& [c, code] : kept) {
        const auto& name = raw.columns[c].name;
        if (raw.columns[c].kind == ColumnKind::categorical) {
            std::vector<std::optional<std::string>> values;
            values.reserve(rows.size());
            for (auto r : rows) {
                const auto& cell = raw.rows[r][c];
                values.push_back(raw.is_null(cell) ? std::nullopt
                                                   : std::optional<std::string>(trim(cell)));
            }
            auto encoded = one_hot(values);
            for (std::size_t l = 0; l < encoded.levels.size(); ++l) {
                FeatureDescriptor f;
                f.code = code + "=" + encoded.levels[l];
                f.kind = FeatureKind::indicator;
                f.source_column = name;
                f.category = encoded.levels[l];
                f.norm_min = 0.0;
                f.norm_max = 1.0;
                features.push_back(std::move(f));
                columns.push_back(std::move(encoded.columns[l]));
            }
        } else {
            std::vector<double> values;
            values.reserve(rows.size());
            for (auto r : rows) {
                const auto v = parse_number(raw.rows[r][c]);
                if (!v) {
                    throw DataError("column '" + name + "' has non-numeric value '" +
                                    raw.rows[r][c] + "'");
                }
                values.push_back(*v);
            }
            auto norm = minmax_normalize(values);
            FeatureDescriptor f;
            f.code = code;
            f.kind = FeatureKind::numeric;
            f.source_column = name;
            f.norm_min = norm.min;
            f.norm_max = norm.max;
            features.push_back(std::move(f));
            columns.push_back(std::move(norm.values));
        }
    }
    for (std::size_t j = 0; j < features.size(); ++j) {
        features[j].id = j + 1;
    }

    Matrix x(static_cast<Index>(rows.size()), static_cast<Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            x(static_cast<Index>(i), static_cast<Index>(j)) = columns[j][i];
        }
    }
    if (provenance.rules_json.empty()) {
        provenance.rules_json = rules.to_json();
    }
    return Dataset(std::move(x), std::move(effort), std::move(features), std::move(provenance),
                   rules.normalize_effort);
}

RawTable export_table(const Dataset& dataset)
{
    RawTable raw;
    for (const auto& f : dataset.features()) {
        raw.columns.push_back({f.code, ColumnKind::numeric});
    }
    std::string effort_name = "EFFORT";
    while (std::any_of(raw.columns.begin(), raw.columns.end(),
                       [&](const RawColumn& c) { return c.name == effort_name; })) {
        effort_name += "_";
    }
    raw.columns.push_back({effort_name, ColumnKind::effort});
    const auto& x = dataset.x();
    for (Index i = 0; i < x.rows(); ++i) {
        std::vector<std::string> row;
        for (Index j = 0; j < x.cols(); ++j) {
            row.push_back(format_double(x(i, j)));
        }
        row.push_back(format_double(dataset.effort()(i)));
        raw.rows.push_back(std::move(row));
    }
    return raw;
}

// ---------------------------------------------------------------------------
// Splits

std::size_t train_size(std::size_t n) noexcept
{
    return (8 * n + 5) / 10;
}

SplitPlan make_split(std::size_t n_projects, std::size_t partition, std::uint64_t master_seed)
{
    const std::size_t n_train = train_size(n_projects);
    if (n_train < static_cast<std::size_t>(SplitPlan::kFolds) || n_train == n_projects) {
        throw DataError("dataset too small for an 80/20 split with 10-fold CV");
    }
    SplitPlan plan;
    plan.partition = partition;
    plan.seed = derive_seed(master_seed, partition);
    Engine eng(plan.seed);

    std::vector<std::size_t> perm(n_projects);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    shuffle(std::span<std::size_t>(perm), eng);
    plan.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
    plan.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
    std::sort(plan.train.begin(), plan.train.end());
    std::sort(plan.test.begin(), plan.test.end());

    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(std::span<std::size_t>(order), eng);
    plan.folds.assign(n_train, 0);
    for (std::size_t k = 0; k < n_train; ++k) {
        plan.folds[order[k]] = static_cast<int>(k % SplitPlan::kFolds);
    }
    return plan;
}

std::vector<SplitPlan> make_splits(const Dataset& dataset, std::size_t n_partitions,
                                   std::uint64_t master_seed)
{
    if (n_partitions == 0) {
        throw DataError("n_partitions must be at least 1");
    }
    std::vector<SplitPlan> plans;
    plans.reserve(n_partitions);
    for (std::size_t p = 0; p < n_partitions; ++p) {
        plans.push_back(make_split(dataset.n_projects(), p, master_seed));
    }
    return plans;
}

// ---------------------------------------------------------------------------
// Persistence

std::string sha256_hex(std::span<const unsigned char> bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw ComputeError("sha256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string sha256_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path);
    }
    const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                           std::istreambuf_iterator<char>()};
    return sha256_hex(bytes);
}

std::string dataset_to_json(const Dataset& dataset)
{
    json j;
    j["format"] = "fss-dataset/1";
    j["n_projects"] = dataset.n_projects();
    j["n_features"] = dataset.n_features();
    json feats = json::array();
    for (const auto& f : dataset.features()) {
        feats.push_back({{"id", f.id},
                         {"code", f.code},
                         {"kind", f.kind == FeatureKind::indicator ? "indicator" : "numeric"},
                         {"source_column", f.source_column},
                         {"category", f.category ? json(*f.category) : json(nullptr)},
                         {"norm_min", f.norm_min},
                         {"norm_max", f.norm_max}});
    }
    j["features"] = feats;
    json x = json::array();
    for (Index i = 0; i < dataset.x().rows(); ++i) {
        json row = json::array();
        for (Index c = 0; c < dataset.x().cols(); ++c) {
            row.push_back(dataset.x()(i, c));
        }
        x.push_back(row);
    }
    j["x"] = x;
    j["effort"] = std::vector<double>(dataset.effort().data(),
                                      dataset.effort().data() + dataset.effort().size());
    j["effort_range"] = {{"min", dataset.effort_range().min}, {"max", dataset.effort_range().max}};
    j["normalized_target"] = dataset.normalized_target();
    const auto& p = dataset.provenance();
    json rules = p.rules_json.empty() ? json(nullptr) : json::parse(p.rules_json);
    j["provenance"] = {{"source", p.source},
                       {"source_sha256", p.source_sha256},
                       {"rules", rules},
                       {"dropped_columns", p.dropped_columns},
                       {"raw_rows", p.raw_rows}};
    return j.dump(1);
}

Dataset dataset_from_json(const std::string& text)
{
    try {
        const json j = json::parse(text);
        if (j.value("format", "") != "fss-dataset/1") {
            throw DataError("not an fss-dataset/1 file");
        }
        std::vector<FeatureDescriptor> features;
        for (const auto& f : j.at("features")) {
            FeatureDescriptor d;
            d.id = f.at("id").get<std::size_t>();
            d.code = f.at("code").get<std::string>();
            d.kind = f.at("kind").get<std::string>() == "indicator" ? FeatureKind::indicator
                                                                    : FeatureKind::numeric;
            d.source_column = f.value("source_column", d.code);
            if (f.contains("category") && !f["category"].is_null()) {
                d.category = f["category"].get<std::string>();
            }
            d.norm_min = f.at("norm_min").get<double>();
            d.norm_max = f.at("norm_max").get<double>();
            features.push_back(std::move(d));
        }
        const auto& rows = j.at("x");
        Matrix x(static_cast<Index>(rows.size()), static_cast<Index>(features.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != features.size()) {
                throw DataError("row " + std::to_string(i) + " has wrong width");
            }
            for (std::size_t c = 0; c < features.size(); ++c) {
                x(static_cast<Index>(i), static_cast<Index>(c)) = rows[i][c].get<double>();
            }
        }
        const auto effort_vec = j.at("effort").get<std::vector<double>>();
        Vector effort = Eigen::Map<const Vector>(effort_vec.data(),
                                                 static_cast<Index>(effort_vec.size()));
        Provenance p;
        if (j.contains("provenance")) {
            const auto& pj = j["provenance"];
            p.source = pj.value("source", "");
            p.source_sha256 = pj.value("source_sha256", "");
            if (pj.contains("rules") && !pj["rules"].is_null()) {
                p.rules_json = pj["rules"].dump();
            }
            p.dropped_columns = pj.value("dropped_columns", std::vector<std::string>{});
            p.raw_rows = pj.value("raw_rows", std::size_t{0});
        }
        return Dataset(std::move(x), std::move(effort), std::move(features), std::move(p),
                       j.value("normalized_target", false));
    } catch (const json::exception& e) {
        throw DataError(std::string("dataset file: ") + e.what());
    }
}

void save_dataset(const Dataset& dataset, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path);
    }
    out << dataset_to_json(dataset) << '\n';
}

Dataset load_dataset(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path);
    }
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return dataset_from_json(text);
}

Dataset ingest_csv(const std::string& csv_path, const PreprocessRules& rules)
{
    const auto table = csv::read_file(csv_path);
    if (table.rows.empty()) {
        throw DataError("no rows");
    }
    Provenance p;
    const auto slash = csv_path.find_last_of('/');
    p.source = slash == std::string::npos ? csv_path : csv_path.substr(slash + 1);
    p.source_sha256 = sha256_file(csv_path);
    p.rules_json = rules.to_json();
    return ingest(make_raw_table(table, rules), rules, std::move(p));
}

} // namespace fss
