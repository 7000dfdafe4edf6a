#include "gmoea/gan.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace gmoea {

void real_statistics(const std::vector<DecisionVector>& reals, Eigen::VectorXd& mu,
                     Eigen::MatrixXd& sigma) {
  const std::size_t n = reals.size();
  if (n < 2) throw PreconditionError("real_statistics: need >= 2 samples, got " +
                                     std::to_string(n));
  const Eigen::Index d = static_cast<Eigen::Index>(reals.front().size());
  for (const auto& r : reals)
    if (static_cast<Eigen::Index>(r.size()) != d)
      throw DimensionError("real_statistics: ragged sample dimensions");

  Eigen::MatrixXd X(d, static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < d; ++i) X(i, static_cast<Eigen::Index>(j)) = reals[j][i];

  mu = X.rowwise().mean();
  Eigen::MatrixXd centered = X.colwise() - mu;
  sigma = centered * centered.transpose() / static_cast<double>(n - 1);
}

Eigen::MatrixXd cholesky_psd(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols()) throw DimensionError("cholesky_psd: non-square matrix");
  static const double jitters[] = {0.0, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
  const Eigen::Index d = sigma.rows();
  for (double j : jitters) {
    Eigen::MatrixXd m = sigma + j * Eigen::MatrixXd::Identity(d, d);
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) {
      Eigen::MatrixXd L = llt.matrixL();
      // Accept only a proper positive-definite factor; semidefinite inputs
      // (zero/NaN pivots) escalate through the jitter schedule.
      if (L.allFinite() && (L.diagonal().array() > 0.0).all()) return L;
    }
  }
  // Degenerate even at maximum jitter: keep only per-coordinate spread.
  Eigen::VectorXd diag = sigma.diagonal().cwiseMax(0.0).cwiseSqrt();
  return diag.asDiagonal();
}

LatentModel fit_latent_model(const LabeledDataset& data) {
  std::vector<DecisionVector> reals;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (data.label[i] == 1) reals.push_back(data.x_unit[i]);
  LatentModel m;
  real_statistics(reals, m.mu, m.sigma);
  m.L = cholesky_psd(m.sigma);
  return m;
}

Eigen::MatrixXd sample_latent(const LatentModel& model, int m, RngStream& rng) {
  if (m < 1) throw RangeError("sample_latent: m must be >= 1");
  const Eigen::Index d = model.mu.size();
  Eigen::MatrixXd Z(d, m);
  Eigen::VectorXd n(d);
  for (int j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) n[i] = rng.normal();
    Z.col(j) = model.mu + model.L * n;
  }
  return Z;
}

GanPair gan_init(int dim, const GanConfig& cfg, RngStream& rng) {
  if (dim < 1) throw RangeError("gan_init: dimension must be >= 1");
  GanPair p;
  p.cfg = cfg;
  p.G = mlp_init({dim, dim, dim, dim}, cfg.hidden, rng);  // two hidden layers
  p.D = mlp_init({dim, dim, 1}, cfg.hidden, rng);         // one hidden layer
  p.adam_g = AdamState::zeros_like(p.G);
  p.adam_d = AdamState::zeros_like(p.D);
  return p;
}

void write_loss_trace_csv(const std::vector<LossTraceRow>& rows, std::ostream& out) {
  out << "generation,epoch,batch,d_loss,g_loss\n";
  for (const auto& r : rows)
    out << r.generation << ',' << r.epoch << ',' << r.batch << ',' << r.d_loss << ',' << r.g_loss
        << "\n";
}

void train(GanPair& gan, const LabeledDataset& data, const LatentModel& model, int generation,
           RngStream& rng, std::vector<LossTraceRow>* trace) {
  const std::size_t n = data.size();
  if (n == 0) throw PreconditionError("train: empty dataset");
  const std::size_t n_real = data.count_real();
  if (n_real == 0 || n_real == n)
    throw PreconditionError("train: dataset must contain both real and fake samples");

  if (gan.cfg.adam_reset) {
    gan.adam_g = AdamState::zeros_like(gan.G);
    gan.adam_d = AdamState::zeros_like(gan.D);
  }

  const int m = gan.cfg.batch;
  const int n_batches = static_cast<int>(n) / m;
  const Eigen::Index d = gan.G.in_dim();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < gan.cfg.epochs; ++epoch) {
    rng.shuffle(order);
    for (int bi = 0; bi < n_batches; ++bi) {
      // ---- discriminator update -------------------------------------------
      std::vector<std::size_t> real_idx, fake_idx;
      for (int k = 0; k < m; ++k) {
        const std::size_t idx = order[static_cast<std::size_t>(bi * m + k)];
        (data.label[idx] == 1 ? real_idx : fake_idx).push_back(idx);
      }
      Eigen::MatrixXd Z = sample_latent(model, m, rng);
      Eigen::MatrixXd Gz = mlp_forward(gan.G, Z);

      const Eigen::Index nr = static_cast<Eigen::Index>(real_idx.size());
      const Eigen::Index nf = static_cast<Eigen::Index>(fake_idx.size());
      Eigen::MatrixXd Din(d, nr + nf + m);
      auto fill = [&](const std::vector<std::size_t>& src, Eigen::Index col0) {
        for (std::size_t k = 0; k < src.size(); ++k)
          for (Eigen::Index i = 0; i < d; ++i)
            Din(i, col0 + static_cast<Eigen::Index>(k)) = data.x_unit[src[k]][i];
      };
      fill(real_idx, 0);
      fill(fake_idx, nr);
      Din.rightCols(m) = Gz;

      ForwardCache dcache;
      Eigen::MatrixXd probs = mlp_forward(gan.D, Din, &dcache);
      DiscLossGrad dl = disc_loss_and_grad(probs.block(0, 0, 1, nr),
                                           probs.block(0, nr, 1, nf),
                                           probs.rightCols(m));
      Eigen::MatrixXd d_out(1, nr + nf + m);
      d_out << dl.d_real, dl.d_fake, dl.d_gen;
      Gradients dg = mlp_backward(gan.D, dcache, d_out);
      adam_step(gan.D, gan.adam_d, dg, gan.cfg.lr_d, gan.cfg.beta1, gan.cfg.beta2);

      // ---- generator update ------------------------------------------------
      Eigen::MatrixXd Z2 = sample_latent(model, m, rng);
      ForwardCache gcache;
      Eigen::MatrixXd Gz2 = mlp_forward(gan.G, Z2, &gcache);
      ForwardCache dcache2;
      Eigen::MatrixXd p_gen = mlp_forward(gan.D, Gz2, &dcache2);
      GenLossGrad gl = gen_loss_and_grad(p_gen.row(0), gan.cfg.non_saturating);
      Gradients through_d = mlp_backward(gan.D, dcache2, gl.d_gen);
      Gradients gg = mlp_backward(gan.G, gcache, through_d.dX);
      adam_step(gan.G, gan.adam_g, gg, gan.cfg.lr_g, gan.cfg.beta1, gan.cfg.beta2);

      if (trace) trace->push_back({generation, epoch, bi, dl.loss, gl.loss});
    }
  }
}

std::vector<DecisionVector> generate_candidates(const GanPair& gan, const LatentModel& model,
                                                int n, const BoxBounds& bounds, RngStream& rng) {
  if (n < 1) throw RangeError("generate_candidates: n must be >= 1");
  Eigen::MatrixXd Z = sample_latent(model, n, rng);
  Eigen::MatrixXd out = mlp_forward(gan.G, Z);
  std::vector<DecisionVector> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    DecisionVector y(static_cast<std::size_t>(out.rows()));
    for (Eigen::Index i = 0; i < out.rows(); ++i) y[static_cast<std::size_t>(i)] = out(i, j);
    xs.push_back(clamp(from_unit(y, bounds), bounds));
  }
  return xs;
}

}  // namespace gmoea
