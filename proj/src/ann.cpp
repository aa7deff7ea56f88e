#include "fss/ann.hpp"
#include "fss/errors.hpp"
#include "fss/metrics.hpp"
#include "fss/ridge.hpp"
#include "fss/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fss {

namespace {

Matrix hidden_activations(const MlpModel& m, const Matrix& x)
{
    Matrix h = x * m.w_ih;
    h.rowwise() += m.hidden_bias.transpose();
    return h.array().tanh().matrix();
}

void check_shapes(const MlpModel& m, const Matrix& x, const Vector& z)
{
    if (static_cast<std::size_t>(x.cols()) != m.n_inputs()) {
        throw DataError("mlp: expected " + std::to_string(m.n_inputs()) + " inputs, got " +
                        std::to_string(x.cols()));
    }
    if (z.size() != x.rows() || x.rows() == 0) {
        throw DataError("mlp: targets and rows differ in length or are empty");
    }
}

} // namespace

Vector MlpModel::predict(const Matrix& x) const
{
    if (static_cast<std::size_t>(x.cols()) != n_inputs()) {
        throw DataError("mlp: expected " + std::to_string(n_inputs()) + " inputs, got " +
                        std::to_string(x.cols()));
    }
    return (hidden_activations(*this, x) * w_ho).array() + output_bias;
}

double mlp_loss(const MlpModel& model, const Matrix& x, const Vector& z)
{
    check_shapes(model, x, z);
    return (model.predict(x) - z).squaredNorm() / static_cast<double>(x.rows());
}

MlpGradient mlp_gradient(const MlpModel& model, const Matrix& x, const Vector& z)
{
    check_shapes(model, x, z);
    const Matrix h = hidden_activations(model, x);
    const Vector out = (h * model.w_ho).array() + model.output_bias;
    const Vector d_out = 2.0 * (out - z) / static_cast<double>(x.rows());

    MlpGradient g;
    g.w_ho = h.transpose() * d_out;
    g.output_bias = d_out.sum();
    const Matrix d_hidden =
        ((d_out * model.w_ho.transpose()).array() * (1.0 - h.array().square())).matrix();
    g.w_ih = x.transpose() * d_hidden;
    g.hidden_bias = d_hidden.colwise().sum().transpose();
    return g;
}

MlpModel mlp_init(std::size_t n_inputs, std::size_t n_hidden, std::uint64_t seed, double scale)
{
    if (n_inputs == 0 || n_hidden == 0) {
        throw DataError("mlp: need at least one input and one hidden node");
    }
    const double s = scale > 0.0 ? scale : 1.0 / std::sqrt(static_cast<double>(n_inputs));
    Engine eng(seed);
    auto draw = [&] { return (2.0 * uniform01(eng) - 1.0) * s; };
    MlpModel m;
    m.w_ih.resize(static_cast<Index>(n_inputs), static_cast<Index>(n_hidden));
    m.hidden_bias.resize(static_cast<Index>(n_hidden));
    m.w_ho.resize(static_cast<Index>(n_hidden));
    for (Index c = 0; c < m.w_ih.cols(); ++c) {
        for (Index r = 0; r < m.w_ih.rows(); ++r) {
            m.w_ih(r, c) = draw();
        }
    }
    for (Index i = 0; i < m.hidden_bias.size(); ++i) {
        m.hidden_bias(i) = draw();
    }
    for (Index i = 0; i < m.w_ho.size(); ++i) {
        m.w_ho(i) = draw();
    }
    m.output_bias = draw();
    return m;
}

void TrainConfig::validate() const
{
    if (max_epochs == 0 || window == 0 || !(learning_rate > 0.0) || !(momentum >= 0.0) ||
        !(momentum < 1.0) || !(min_improvement >= 0.0) || !(init_scale >= 0.0)) {
        throw DataError("mlp: invalid training configuration");
    }
}

MlpModel mlp_train(const Matrix& x, const Vector& z, std::size_t hidden, const TrainConfig& cfg)
{
    cfg.validate();
    MlpModel m = mlp_init(static_cast<std::size_t>(x.cols()), hidden, cfg.seed, cfg.init_scale);
    check_shapes(m, x, z);

    MlpGradient vel;
    vel.w_ih = Matrix::Zero(m.w_ih.rows(), m.w_ih.cols());
    vel.hidden_bias = Vector::Zero(m.hidden_bias.size());
    vel.w_ho = Vector::Zero(m.w_ho.size());

    MlpModel best = m;
    double best_loss = mlp_loss(m, x, z);
    std::vector<double> history{best_loss};
    history.reserve(cfg.max_epochs + 1);

    for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        const MlpGradient g = mlp_gradient(m, x, z);
        vel.w_ih = cfg.momentum * vel.w_ih - cfg.learning_rate * g.w_ih;
        vel.hidden_bias = cfg.momentum * vel.hidden_bias - cfg.learning_rate * g.hidden_bias;
        vel.w_ho = cfg.momentum * vel.w_ho - cfg.learning_rate * g.w_ho;
        vel.output_bias = cfg.momentum * vel.output_bias - cfg.learning_rate * g.output_bias;
        m.w_ih += vel.w_ih;
        m.hidden_bias += vel.hidden_bias;
        m.w_ho += vel.w_ho;
        m.output_bias += vel.output_bias;

        const double loss = mlp_loss(m, x, z);
        if (!std::isfinite(loss)) {
            throw ComputeError("mlp: training diverged (non-finite loss); "
                               "the learning rate is too high");
        }
        if (loss < best_loss) {
            best_loss = loss;
            best = m;
        }
        history.push_back(loss);
        // Plateau: the loss moved by less than the threshold either way over
        // the window. A rising loss (momentum overshoot or divergence) keeps
        // going, so divergence surfaces as a non-finite loss.
        if (history.size() > cfg.window) {
            const double before = history[history.size() - 1 - cfg.window];
            if (std::abs(before - loss) <= cfg.min_improvement * std::max(before, 1e-300)) {
                break;
            }
        }
    }
    return best;
}

void SweepConfig::validate() const
{
    if (max_hidden == 0 || (min_hidden && (*min_hidden == 0 || *min_hidden > max_hidden))) {
        throw DataError("architecture sweep: need 1 <= min_hidden <= max_hidden");
    }
    train.validate();
}

std::vector<std::size_t> sweep_candidates(std::size_t n_inputs, const SweepConfig& cfg)
{
    cfg.validate();
    const std::size_t lo =
        cfg.min_hidden.value_or(std::clamp<std::size_t>(n_inputs, 1, cfg.max_hidden));
    std::vector<std::size_t> out;
    for (std::size_t h = lo; h <= cfg.max_hidden; ++h) {
        out.push_back(h);
    }
    return out;
}

SweepResult architecture_sweep(const Matrix& x, const Vector& z, const std::vector<int>& folds,
                               const SweepConfig& cfg, Execution exec)
{
    const auto candidates = sweep_candidates(static_cast<std::size_t>(x.cols()), cfg);
    const double z_min = z.minCoeff();
    const double z_range = z.maxCoeff() > z_min ? z.maxCoeff() - z_min : 1.0;
    const TargetScale scale{z_min, z_range};
    const Vector zn = scale.forward(z);

    std::vector<double> scores(candidates.size(), kWorstScore);
    std::vector<std::exception_ptr> errors(candidates.size());
    for_each_index(candidates.size(), exec, [&](std::size_t c) {
        TrainConfig tc = cfg.train;
        tc.seed = derive_seed(cfg.train.seed, candidates[c]);
        try {
            const Vector pred = cv_predictions(
                x, zn, folds,
                [&](const Matrix& xtr, const Vector& ztr, const Matrix& xte) {
                    return mlp_train(xtr, ztr, candidates[c], tc).predict(xte);
                },
                Execution::serial);
            scores[c] = evaluate(z, scale.inverse(pred)).mmre;
        } catch (const ComputeError&) {
            errors[c] = std::current_exception();
        }
    });

    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (!errors[c] && (!best || scores[c] < scores[*best])) {
            best = c;
        }
    }
    if (!best) {
        std::rethrow_exception(errors.front());
    }
    SweepResult out;
    out.hidden = candidates[*best];
    out.validation_mmre = scores[*best];
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        out.candidates.emplace_back(candidates[c], scores[c]);
    }
    TrainConfig tc = cfg.train;
    tc.seed = derive_seed(cfg.train.seed, out.hidden);
    out.model = mlp_train(x, zn, out.hidden, tc);
    return out;
}

std::vector<double> garson_importance(const MlpModel& model)
{
    const Index ni = model.w_ih.rows();
    const Index nh = model.w_ih.cols();
    std::vector<double> ri(static_cast<std::size_t>(ni), 0.0);
    for (Index m = 0; m < nh; ++m) {
        const double col_sum = model.w_ih.col(m).cwiseAbs().sum();
        if (col_sum == 0.0) {
            continue;
        }
        const double out_w = std::abs(model.w_ho(m));
        for (Index j = 0; j < ni; ++j) {
            ri[static_cast<std::size_t>(j)] += std::abs(model.w_ih(j, m)) / col_sum * out_w;
        }
    }
    double total = 0.0;
    for (double v : ri) {
        total += v;
    }
    if (total > 0.0) {
        for (double& v : ri) {
            v /= total;
        }
    }
    return ri;
}

FeatureSubset garson_eliminate(const Matrix& x, const Vector& z, const std::vector<int>& folds,
                               const SweepConfig& cfg, Execution exec)
{
    const auto n = static_cast<std::size_t>(x.cols());
    if (n < 2) {
        throw DataError("garson elimination needs at least two inputs");
    }
    const std::size_t keep = (n + 1) / 2;
    IndexList active(n);
    for (std::size_t j = 0; j < n; ++j) {
        active[j] = j;
    }
    IndexList rows(static_cast<std::size_t>(x.rows()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = i;
    }
    for (std::size_t round = 0; active.size() > keep; ++round) {
        SweepConfig rc = cfg;
        rc.train.seed = derive_seed(cfg.train.seed, 1000 + round);
        const SweepResult sweep = architecture_sweep(gather(x, rows, active), z, folds, rc, exec);
        const auto ri = garson_importance(sweep.model);
        const auto weakest = static_cast<std::size_t>(
            std::min_element(ri.begin(), ri.end()) - ri.begin());
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(weakest));
    }
    return FeatureSubset::from_indices(n, active);
}

} // namespace fss
