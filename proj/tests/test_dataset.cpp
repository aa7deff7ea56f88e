#include "support.hpp"

#include "fss/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace fss;

namespace {

Dataset ingest_text(const std::string& text, const PreprocessRules& rules)
{
    std::istringstream in(text);
    return ingest(make_raw_table(csv::parse(in), rules), rules);
}

// n rows: id, numeric a (2i), numeric b (with '?' in rows listed in
// `null_b`), category c cycling X/Y/Z, effort 100 + 10 i.
std::string small_csv(int n, const std::set<int>& null_b = {})
{
    std::ostringstream out;
    out << "id,a,b,c,effort\n";
    const char* cats[] = {"X", "Y", "Z"};
    for (int i = 0; i < n; ++i) {
        out << i << ',' << 2 * i << ',';
        if (null_b.contains(i)) {
            out << '?';
        } else {
            out << (i % 7);
        }
        out << ',' << cats[i % 3] << ',' << 100 + 10 * i << '\n';
    }
    return out.str();
}

PreprocessRules small_rules()
{
    PreprocessRules r;
    r.effort_column = "effort";
    r.drop_columns = {"id"};
    return r;
}

} // namespace

TEST_CASE("csv parser handles quotes, CRLF, BOM and embedded newlines")
{
    std::istringstream in("\xEF\xBB\xBF"
                          "a,b\r\n\"x,1\",\"he said \"\"hi\"\"\"\r\n\"multi\nline\",2\r\n\r\n");
    const auto t = csv::parse(in);
    REQUIRE(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][0] == "x,1");
    CHECK(t.rows[0][1] == "he said \"hi\"");
    CHECK(t.rows[1][0] == "multi\nline");
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");

    std::istringstream bad("a,b\n1,2,3\n");
    CHECK_THROWS_AS(csv::parse(bad), DataError);
}

TEST_CASE("min-max normalization")
{
    const std::vector<double> a{2, 4, 6}, b{5, 5, 5}, c{0, 1};
    CHECK(minmax_normalize(a).values == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(minmax_normalize(b).values == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(minmax_normalize(c).values == std::vector<double>{0.0, 1.0});
    CHECK(minmax_normalize(a).min == 2.0);
    CHECK(minmax_normalize(a).max == 6.0);
}

TEST_CASE("one-hot encoding")
{
    using O = std::optional<std::string>;
    const std::vector<O> col{O("3GL"), O("4GL"), O("3GL")};
    const auto enc = one_hot(col);
    REQUIRE(enc.levels == std::vector<std::string>{"3GL", "4GL"});
    CHECK(enc.columns[0] == std::vector<double>{1, 0, 1});
    CHECK(enc.columns[1] == std::vector<double>{0, 1, 0});

    const std::vector<O> single{O("A")};
    CHECK(one_hot(single).columns == std::vector<std::vector<double>>{{1.0}});

    // Twelve distinct levels give twelve indicator columns, one 1 per row.
    std::vector<O> twelve;
    for (int i = 0; i < 24; ++i) {
        twelve.emplace_back("org" + std::to_string(i % 12));
    }
    const auto e12 = one_hot(twelve);
    CHECK(e12.columns.size() == 12);
    for (std::size_t r = 0; r < twelve.size(); ++r) {
        double s = 0.0;
        for (const auto& c : e12.columns) {
            s += c[r];
        }
        CHECK(s == 1.0);
    }

    const std::vector<O> with_null{O("a"), std::nullopt};
    const auto en = one_hot(with_null);
    CHECK(en.columns.size() == 1);
    CHECK(en.columns[0] == std::vector<double>{1, 0});
}

TEST_CASE("ingest: encoding, normalization and feature ids")
{
    const auto ds = ingest_text(small_csv(30), small_rules());
    CHECK(ds.n_projects() == 30);
    // a, b, c=X, c=Y, c=Z
    REQUIRE(ds.n_features() == 5);
    CHECK(ds.features()[0].code == "a");
    CHECK(ds.features()[2].code == "c=X");
    CHECK(ds.features()[4].kind == FeatureKind::indicator);
    for (std::size_t j = 0; j < ds.n_features(); ++j) {
        CHECK(ds.features()[j].id == j + 1);
    }
    CHECK(ds.x().minCoeff() >= 0.0);
    CHECK(ds.x().maxCoeff() <= 1.0);
    CHECK(ds.x()(0, 0) == 0.0);
    CHECK(ds.x()(29, 0) == 1.0);
    CHECK(ds.effort()(0) == 100.0);
    // Denormalization recovers the raw column.
    const Vector a = ds.denormalize_feature(0, ds.x().col(0));
    CHECK(a(15) == doctest::Approx(30.0));
    CHECK(ds.provenance().dropped_columns == std::vector<std::string>{"id"});
}

TEST_CASE("ingest: null-heavy column dropped, null rows filtered")
{
    // 13 of 30 nulls in b (43%) exceeds 0.40: column dropped, rows kept.
    std::set<int> many;
    for (int i = 0; i < 13; ++i) {
        many.insert(i * 2);
    }
    const auto dropped = ingest_text(small_csv(30, many), small_rules());
    CHECK(dropped.n_projects() == 30);
    CHECK(dropped.n_features() == 4);
    const auto& cols = dropped.provenance().dropped_columns;
    CHECK(std::find(cols.begin(), cols.end(), "b") != cols.end());

    // 4 of 30 nulls (13%): column kept, those rows removed, as with the
    // Desharnais 81 -> 77 filtering.
    const auto filtered = ingest_text(small_csv(30, {1, 5, 9, 20}), small_rules());
    CHECK(filtered.n_projects() == 26);
    CHECK(filtered.n_features() == 5);
}

TEST_CASE("ingest: quality grade filter and feature list")
{
    std::ostringstream csv;
    csv << "q,size,effort\n";
    for (int i = 0; i < 40; ++i) {
        csv << "ABCD"[i % 4] << ',' << i << ',' << 50 + i << '\n';
    }
    PreprocessRules r;
    r.effort_column = "effort";
    r.quality_column = "q";
    r.features = {{"size", "SZ"}};
    const auto ds = ingest_text(csv.str(), r);
    CHECK(ds.n_projects() == 20); // grades A and B only
    CHECK(ds.features()[0].code == "SZ");
}

TEST_CASE("ingest errors")
{
    CHECK_THROWS_WITH_AS(ingest_text("id,a,b,c,effort\n", small_rules()), "no rows", DataError);
    auto text = small_csv(30);
    text.replace(text.find(",100\n"), 5, ",-1\n");
    CHECK_THROWS_AS(ingest_text(text, small_rules()), DataError);
    PreprocessRules r = small_rules();
    r.effort_column = "missing";
    CHECK_THROWS_AS(ingest_text(small_csv(30), r), DataError);
    CHECK_THROWS_AS(PreprocessRules::from_json(R"({"effort_column":"e","bogus":1})"), DataError);
}

TEST_CASE("dataset invariants")
{
    Engine eng(3);
    CHECK_THROWS_AS(Dataset(test::random_matrix(10, 2, eng), Vector::Ones(10),
                            test::numeric_descriptors(2)),
                    DataError);
    Matrix x = test::random_matrix(25, 2, eng);
    x(0, 0) = 1.5;
    CHECK_THROWS_AS(Dataset(x, Vector::Ones(25), test::numeric_descriptors(2)), DataError);
    Vector z = Vector::Ones(25);
    z(3) = 0.0;
    CHECK_THROWS_AS(Dataset(test::random_matrix(25, 2, eng), z, test::numeric_descriptors(2)),
                    DataError);
}

TEST_CASE("split plans")
{
    CHECK(train_size(77) == 62);
    CHECK(train_size(467) == 374);
    for (std::size_t n : {77u, 467u, 20u, 81u}) {
        const auto plan = make_split(n, 3, 42);
        CHECK(plan.train.size() == train_size(n));
        CHECK(plan.train.size() + plan.test.size() == n);
        std::set<std::size_t> all(plan.train.begin(), plan.train.end());
        all.insert(plan.test.begin(), plan.test.end());
        CHECK(all.size() == n);
        CHECK(std::is_sorted(plan.train.begin(), plan.train.end()));
        REQUIRE(plan.folds.size() == plan.train.size());
        std::vector<int> per_fold(10, 0);
        for (int f : plan.folds) {
            REQUIRE(f >= 0);
            REQUIRE(f < 10);
            ++per_fold[static_cast<std::size_t>(f)];
        }
        CHECK(*std::max_element(per_fold.begin(), per_fold.end()) -
                  *std::min_element(per_fold.begin(), per_fold.end()) <=
              1);
    }
    CHECK(make_split(77, 3, 42) == make_split(77, 3, 42));
    CHECK_FALSE(make_split(77, 3, 42) == make_split(77, 4, 42));
}

TEST_CASE("sha256 known answer")
{
    const std::string abc = "abc";
    CHECK(sha256_hex(std::span(reinterpret_cast<const unsigned char*>(abc.data()), abc.size())) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("dataset JSON round trip and re-ingestion of the exported table")
{
    const auto ds = ingest_text(small_csv(30), small_rules());
    const auto back = dataset_from_json(dataset_to_json(ds));
    CHECK(back.same_content(ds));
    CHECK(back.features() == ds.features());
    CHECK(dataset_to_json(back) == dataset_to_json(ds));

    const auto dir = std::filesystem::temp_directory_path() / "fss_test_dataset";
    std::filesystem::create_directories(dir);
    save_dataset(ds, (dir / "d.json").string());
    CHECK(load_dataset((dir / "d.json").string()).same_content(ds));

    // Exported table ingested with no drops gives the same matrix.
    const auto table = export_table(ds);
    PreprocessRules r;
    r.effort_column = table.columns[table.effort_index()].name;
    for (const auto& c : table.columns) {
        if (c.kind != ColumnKind::effort) {
            r.features.push_back({c.name, c.name});
        }
    }
    const auto again = ingest(table, r);
    CHECK(again.x().isApprox(ds.x(), 1e-12));
    CHECK(again.effort() == ds.effort());
}
