#pragma once

// Per-generation GAN: a generator (D-D-D-D) and discriminator (D-D-1) pair
// trained on the unit-cube normalized population, plus the multivariate
// normal latent model fitted to the "real" half.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gmoea/core.hpp"
#include "gmoea/nn.hpp"
#include "gmoea/selection.hpp"

namespace gmoea {

struct GanConfig {
  int epochs = 200;
  int batch = 32;
  double lr_d = 1e-4;
  double lr_g = 4e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  bool non_saturating = false;   // generator loss variant
  bool adam_reset = false;       // reset optimizer state each generation
  Activation hidden = Activation::Relu;
};

// Sample mean and covariance (divisor n-1) of the real-labelled unit-cube
// vectors. Requires n >= 2.
struct LatentModel {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
  Eigen::MatrixXd L;  // Cholesky factor of sigma (jittered if needed)
};

void real_statistics(const std::vector<DecisionVector>& reals, Eigen::VectorXd& mu,
                     Eigen::MatrixXd& sigma);

// Lower-triangular L with L L^T ~= sigma + j I. Jitter schedule
// {0, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2}; if every attempt fails the fallback is
// the diagonal factor sqrt(max(diag(sigma), 0)).
Eigen::MatrixXd cholesky_psd(const Eigen::MatrixXd& sigma);

LatentModel fit_latent_model(const LabeledDataset& data);

// m draws from N(mu, L L^T); one column per draw. Each draw consumes exactly
// dim standard normals in coordinate order.
Eigen::MatrixXd sample_latent(const LatentModel& model, int m, RngStream& rng);

struct GanPair {
  MlpParams G, D;
  AdamState adam_g, adam_d;
  GanConfig cfg;
};

GanPair gan_init(int dim, const GanConfig& cfg, RngStream& rng);

struct LossTraceRow {
  int generation = 0;
  int epoch = 0;
  int batch = 0;
  double d_loss = 0.0;
  double g_loss = 0.0;
};

void write_loss_trace_csv(const std::vector<LossTraceRow>& rows, std::ostream& out);

// One generation of adversarial training (epochs x floor(n/batch) updates of
// each network). Touches no objective evaluations. Appends to `trace` when
// non-null.
void train(GanPair& gan, const LabeledDataset& data, const LatentModel& model, int generation,
           RngStream& rng, std::vector<LossTraceRow>* trace = nullptr);

// n offspring decision vectors: G(z) mapped from the unit cube back to the
// decision box. All within bounds, none evaluated.
std::vector<DecisionVector> generate_candidates(const GanPair& gan, const LatentModel& model,
                                                int n, const BoxBounds& bounds, RngStream& rng);

}  // namespace gmoea
