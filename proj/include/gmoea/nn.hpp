#pragma once

// Minimal fully-connected network engine: batched forward/backward, Adam,
// and the two adversarial losses. Probabilities are clamped to
// [1e-7, 1 - 1e-7] before any logarithm so gradients stay finite.

#include <Eigen/Dense>
#include <vector>

#include "gmoea/core.hpp"

namespace gmoea {

enum class Activation { Relu, Sigmoid };

inline constexpr double kProbEps = 1e-7;

struct MlpParams {
  // layer l maps a_{l-1} (rows = dims, cols = batch) to W[l] a_{l-1} + b[l].
  std::vector<Eigen::MatrixXd> W;
  std::vector<Eigen::VectorXd> b;
  Activation hidden = Activation::Relu;  // output activation is always sigmoid

  std::size_t layers() const { return W.size(); }
  Eigen::Index in_dim() const { return W.front().cols(); }
  Eigen::Index out_dim() const { return W.back().rows(); }
  std::size_t param_count() const;
};

// Glorot-uniform weights (+-sqrt(6/(fan_in+fan_out))), zero biases.
// dims = {in, h1, ..., out}, at least two entries.
MlpParams mlp_init(const std::vector<int>& dims, Activation hidden, RngStream& rng);

struct ForwardCache {
  std::vector<Eigen::MatrixXd> z;  // pre-activations per layer
  std::vector<Eigen::MatrixXd> a;  // a[0] = input, a[l] = activation of layer l
};

// X has one column per sample. Returns the output activations (sigmoid).
Eigen::MatrixXd mlp_forward(const MlpParams& p, const Eigen::MatrixXd& X,
                            ForwardCache* cache = nullptr);

struct Gradients {
  std::vector<Eigen::MatrixXd> dW;
  std::vector<Eigen::VectorXd> db;
  Eigen::MatrixXd dX;  // gradient w.r.t. the input batch (for chaining nets)
};

// d_out = dLoss/d(output activations), same shape as the forward output.
Gradients mlp_backward(const MlpParams& p, const ForwardCache& cache,
                       const Eigen::MatrixXd& d_out);

struct AdamState {
  std::vector<Eigen::MatrixXd> mW, vW;
  std::vector<Eigen::VectorXd> mb, vb;
  long long t = 0;

  static AdamState zeros_like(const MlpParams& p);
};

// One bias-corrected Adam update; increments t exactly once.
void adam_step(MlpParams& p, AdamState& s, const Gradients& g, double lr, double beta1,
               double beta2, double eps = 1e-8);

// ---------------------------------------------------------------------------
// Adversarial losses over discriminator output probabilities. Each gradient
// row vector has one entry per sample and already carries the 1/m batch
// averaging, so chaining through mlp_backward needs no extra scaling.
// ---------------------------------------------------------------------------

struct DiscLossGrad {
  double loss = 0.0;
  Eigen::RowVectorXd d_real, d_fake, d_gen;
};

// loss = -[mean log D(real) + mean log(1-D(fake)) + mean log(1-D(G(z)))].
// Empty groups contribute zero. Inputs are row vectors of probabilities.
DiscLossGrad disc_loss_and_grad(const Eigen::RowVectorXd& p_real,
                                const Eigen::RowVectorXd& p_fake,
                                const Eigen::RowVectorXd& p_gen);

struct GenLossGrad {
  double loss = 0.0;
  Eigen::RowVectorXd d_gen;
};

// Saturating form: loss = mean log(1-D(G(z))) (descended directly).
// Non-saturating form: loss = -mean log D(G(z)).
GenLossGrad gen_loss_and_grad(const Eigen::RowVectorXd& p_gen, bool non_saturating);

// Flat dump of all parameters (dims header + float64 payload); test support
// and offline inspection.
void save_params(const MlpParams& p, const std::string& path);
MlpParams load_params(const std::string& path);

}  // namespace gmoea
