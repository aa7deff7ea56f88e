#pragma once

#include "fss/parallel.hpp"
#include "fss/subset.hpp"
#include "fss/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fss {

// One hidden tanh layer, linear output.
struct MlpModel {
    Matrix w_ih;        // n_inputs x n_hidden
    Vector hidden_bias; // n_hidden
    Vector w_ho;        // n_hidden
    double output_bias = 0.0;

    std::size_t n_inputs() const noexcept { return static_cast<std::size_t>(w_ih.rows()); }
    std::size_t n_hidden() const noexcept { return static_cast<std::size_t>(w_ih.cols()); }

    Vector predict(const Matrix& x) const;
    bool operator==(const MlpModel&) const = default;
};

struct MlpGradient {
    Matrix w_ih;
    Vector hidden_bias;
    Vector w_ho;
    double output_bias = 0.0;
};

// Mean squared error over the rows of x.
double mlp_loss(const MlpModel& model, const Matrix& x, const Vector& z);
// Backpropagated gradient of mlp_loss.
MlpGradient mlp_gradient(const MlpModel& model, const Matrix& x, const Vector& z);

// Weights and biases uniform in [-s, s]; s = 1/sqrt(n_inputs) unless given.
MlpModel mlp_init(std::size_t n_inputs, std::size_t n_hidden, std::uint64_t seed,
                  double scale = 0.0);

struct TrainConfig {
    std::size_t max_epochs = 500;
    // Stop once the MSE improved by less than this fraction over `window`
    // epochs.
    double min_improvement = 1e-6;
    std::size_t window = 10;
    double learning_rate = 0.05;
    double momentum = 0.9;
    double init_scale = 0.0; // 0 selects 1/sqrt(n_inputs)
    std::uint64_t seed = 1;

    void validate() const;
};

// Full-batch gradient descent with momentum on MSE. `z` must already be
// scaled to [0, 1]. Returns the lowest-loss weights seen, so the final MSE
// never exceeds the initial one. ComputeError on a non-finite loss.
MlpModel mlp_train(const Matrix& x, const Vector& z, std::size_t hidden, const TrainConfig& cfg);

struct SweepConfig {
    std::optional<std::size_t> min_hidden; // default min(n_inputs, max_hidden)
    std::size_t max_hidden = 16;
    TrainConfig train;

    void validate() const;
};

struct SweepResult {
    std::size_t hidden = 0;
    double validation_mmre = 0.0;
    MlpModel model; // best architecture retrained on all rows
    std::vector<std::pair<std::size_t, double>> candidates; // (hidden, cv MMRE)
};

std::vector<std::size_t> sweep_candidates(std::size_t n_inputs, const SweepConfig& cfg);

// Scores every hidden-layer size by pooled fold MMRE (targets in original
// units; normalized internally by the min/max of z), keeps the best (lowest
// size on ties) and retrains it on all rows. Diverged candidates are skipped;
// if all diverge the first error is rethrown.
SweepResult architecture_sweep(const Matrix& x, const Vector& z, const std::vector<int>& folds,
                               const SweepConfig& cfg, Execution exec = Execution::parallel);

// Relative importance of each input: per hidden node, input weight
// magnitudes normalized over inputs and scaled by |w_ho|; summed over hidden
// nodes and normalized to 1. Hidden nodes with all-zero inputs contribute 0.
std::vector<double> garson_importance(const MlpModel& model);

// Repeated sweep + importance, dropping the least important input each
// round, until ceil(n/2) inputs remain.
FeatureSubset garson_eliminate(const Matrix& x, const Vector& z, const std::vector<int>& folds,
                               const SweepConfig& cfg, Execution exec = Execution::parallel);

} // namespace fss
