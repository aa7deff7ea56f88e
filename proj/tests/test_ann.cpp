#include "support.hpp"

#include "fss/ann.hpp"
#include "fss/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

using namespace fss;

namespace {

// Relative importance evaluated straight from the definition, loop by loop.
std::vector<double> garson_direct(const Matrix& w_ih, const Vector& w_ho)
{
    const auto ni = static_cast<std::size_t>(w_ih.rows());
    const auto nh = static_cast<std::size_t>(w_ih.cols());
    std::vector<double> num(ni, 0.0);
    for (std::size_t m = 0; m < nh; ++m) {
        double col = 0.0;
        for (std::size_t j = 0; j < ni; ++j) {
            col += std::abs(w_ih(j, m));
        }
        if (col == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < ni; ++j) {
            num[j] += std::abs(w_ih(j, m)) / col * std::abs(w_ho(m));
        }
    }
    const double total = std::accumulate(num.begin(), num.end(), 0.0);
    for (auto& v : num) {
        v /= total;
    }
    return num;
}

MlpModel random_model(std::size_t ni, std::size_t nh, Engine& eng)
{
    MlpModel m;
    m.w_ih = test::random_matrix(static_cast<Index>(ni), static_cast<Index>(nh), eng, -1, 1);
    m.hidden_bias = test::random_vector(static_cast<Index>(nh), eng, -1, 1);
    m.w_ho = test::random_vector(static_cast<Index>(nh), eng, -1, 1);
    m.output_bias = uniform01(eng) - 0.5;
    return m;
}

} // namespace

TEST_CASE("garson fixture")
{
    MlpModel m;
    m.w_ih.resize(2, 2);
    m.w_ih << 1, 2, 3, 4;
    m.w_ho = Vector::Ones(2);
    m.hidden_bias = Vector::Zero(2);
    const auto ri = garson_importance(m);
    REQUIRE(ri.size() == 2);
    // (1/4 + 2/6) / 2 and (3/4 + 4/6) / 2.
    CHECK(ri[0] == doctest::Approx(7.0 / 24.0).epsilon(1e-12));
    CHECK(ri[1] == doctest::Approx(17.0 / 24.0).epsilon(1e-12));
    CHECK(ri == garson_direct(m.w_ih, m.w_ho));
}

TEST_CASE("garson properties")
{
    Engine eng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = random_model(1 + uniform_below(eng, 8), 1 + uniform_below(eng, 8), eng);
        const auto ri = garson_importance(m);
        const double s = std::accumulate(ri.begin(), ri.end(), 0.0);
        CHECK(std::abs(s - 1.0) < 1e-9);
        for (double v : ri) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        const auto d = garson_direct(m.w_ih, m.w_ho);
        for (std::size_t j = 0; j < ri.size(); ++j) {
            CHECK(ri[j] == doctest::Approx(d[j]).epsilon(1e-12));
        }
        MlpModel scaled = m;
        scaled.w_ho *= 3.7;
        const auto rs = garson_importance(scaled);
        for (std::size_t j = 0; j < ri.size(); ++j) {
            CHECK(rs[j] == doctest::Approx(ri[j]).epsilon(1e-12));
        }
    }

    MlpModel sym;
    sym.w_ih = Matrix::Constant(2, 3, -0.4);
    sym.w_ho = Vector::Constant(3, 0.9);
    sym.hidden_bias = Vector::Zero(3);
    CHECK(garson_importance(sym) == std::vector<double>{0.5, 0.5});

    MlpModel dead = sym;
    dead.w_ih.row(1).setZero();
    CHECK(garson_importance(dead)[1] == 0.0);
    dead.w_ih.col(0).setZero();
    CHECK(garson_importance(dead)[0] == 1.0);
}

TEST_CASE("backprop gradient matches central differences")
{
    Engine eng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t ni = 1 + uniform_below(eng, 4);
        const std::size_t nh = 1 + uniform_below(eng, 5);
        const auto m = random_model(ni, nh, eng);
        const Matrix x = test::random_matrix(9, static_cast<Index>(ni), eng);
        const Vector z = test::random_vector(9, eng);
        const auto g = mlp_gradient(m, x, z);
        const double h = 1e-6;
        auto check = [&](double analytic, auto&& perturb) {
            MlpModel p = m, q = m;
            perturb(p, h);
            perturb(q, -h);
            const double numeric = (mlp_loss(p, x, z) - mlp_loss(q, x, z)) / (2 * h);
            const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-3});
            CHECK(std::abs(analytic - numeric) / scale < 1e-4);
        };
        for (Index j = 0; j < m.w_ih.rows(); ++j) {
            for (Index k = 0; k < m.w_ih.cols(); ++k) {
                check(g.w_ih(j, k), [&](MlpModel& p, double d) { p.w_ih(j, k) += d; });
            }
        }
        for (Index k = 0; k < m.w_ho.size(); ++k) {
            check(g.w_ho(k), [&](MlpModel& p, double d) { p.w_ho(k) += d; });
            check(g.hidden_bias(k), [&](MlpModel& p, double d) { p.hidden_bias(k) += d; });
        }
        check(g.output_bias, [&](MlpModel& p, double d) { p.output_bias += d; });
    }
}

TEST_CASE("training")
{
    Engine eng(31);
    const Matrix x = test::random_matrix(40, 3, eng);

    const Vector c = Vector::Constant(40, 0.6);
    const auto mc = mlp_train(x, c, 4, {});
    CHECK((mc.predict(x).array() - 0.6).abs().maxCoeff() < 0.01);

    const Vector z = x.col(0);
    TrainConfig cfg;
    const auto mz = mlp_train(x, z, 4, cfg);
    CHECK(mlp_loss(mz, x, z) < 0.01);
    CHECK(mlp_loss(mz, x, z) <= mlp_loss(mlp_init(3, 4, cfg.seed), x, z));
    CHECK(mlp_train(x, z, 4, cfg) == mz);

    TrainConfig wild;
    wild.learning_rate = 1e6;
    wild.momentum = 0.0;
    CHECK_THROWS_AS(mlp_train(x, Vector(z * 1e3), 4, wild), ComputeError);
}

TEST_CASE("sweep candidates")
{
    SweepConfig cfg;
    CHECK(sweep_candidates(8, cfg) == std::vector<std::size_t>{8, 9, 10, 11, 12, 13, 14, 15, 16});
    CHECK(sweep_candidates(3, cfg).front() == 3);
    CHECK(sweep_candidates(3, cfg).size() == 14);
    CHECK(sweep_candidates(82, cfg) == std::vector<std::size_t>{16});
    cfg.min_hidden = 20;
    CHECK_THROWS_AS(sweep_candidates(8, cfg), DataError);
}

TEST_CASE("architecture sweep")
{
    Engine eng(37);
    const Matrix x = test::random_matrix(40, 2, eng);
    const Vector z = 1.0 + x.col(0).array() * 3.0;
    const auto folds = test::random_folds(40, 4);
    SweepConfig cfg;
    cfg.max_hidden = 4;
    cfg.train.max_epochs = 200;
    const auto r = architecture_sweep(x, z, folds, cfg);
    CHECK(r.candidates.size() == 3);
    CHECK(r.hidden >= 2);
    CHECK(r.hidden <= 4);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [h, s] : r.candidates) {
        best = std::min(best, s);
    }
    CHECK(r.validation_mmre == best);
    CHECK(architecture_sweep(x, z, folds, cfg, Execution::serial).model == r.model);

    cfg.train.learning_rate = 1e6;
    cfg.train.momentum = 0.0;
    CHECK_THROWS_AS(architecture_sweep(x, Vector(z * 1e6), folds, cfg), ComputeError);
}

TEST_CASE("garson elimination keeps half")
{
    Engine eng(41);
    SweepConfig cfg;
    cfg.train.max_epochs = 60;
    cfg.max_hidden = 8;

    const Matrix x2 = test::random_matrix(30, 2, eng);
    const Vector z2 = 1.0 + 4.0 * x2.col(1).array();
    const auto folds = test::random_folds(30, 5);
    const auto s2 = garson_eliminate(x2, z2, folds, cfg);
    CHECK(s2.count() == 1);

    const Matrix x5 = test::random_matrix(30, 5, eng);
    const Vector z5 = 1.0 + x5.col(0).array();
    CHECK(garson_eliminate(x5, z5, folds, cfg).count() == 3);
    CHECK_THROWS_AS(garson_eliminate(Matrix(x5.leftCols(1)), z5, folds, cfg), DataError);
}
