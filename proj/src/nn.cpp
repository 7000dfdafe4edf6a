#include "gmoea/nn.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

namespace gmoea {

namespace {

inline Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& z) {
  return 1.0 / (1.0 + (-z.array()).exp());
}

inline double clamp_prob(double p) {
  return std::min(1.0 - kProbEps, std::max(kProbEps, p));
}

}  // namespace

std::size_t MlpParams::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < W.size(); ++l)
    n += static_cast<std::size_t>(W[l].size() + b[l].size());
  return n;
}

MlpParams mlp_init(const std::vector<int>& dims, Activation hidden, RngStream& rng) {
  if (dims.size() < 2) throw PreconditionError("mlp_init: need at least input and output dims");
  for (int d : dims)
    if (d < 1) throw RangeError("mlp_init: non-positive layer width");
  MlpParams p;
  p.hidden = hidden;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int fan_in = dims[l], fan_out = dims[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    Eigen::MatrixXd W(fan_out, fan_in);
    for (Eigen::Index r = 0; r < W.rows(); ++r)        // fixed draw order: row-major
      for (Eigen::Index c = 0; c < W.cols(); ++c) W(r, c) = rng.uniform(-limit, limit);
    p.W.push_back(std::move(W));
    p.b.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return p;
}

Eigen::MatrixXd mlp_forward(const MlpParams& p, const Eigen::MatrixXd& X, ForwardCache* cache) {
  if (X.rows() != p.in_dim())
    throw DimensionError("mlp_forward: input has " + std::to_string(X.rows()) +
                         " rows, network expects " + std::to_string(p.in_dim()));
  if (cache) {
    cache->z.clear();
    cache->a.clear();
    cache->a.push_back(X);
  }
  Eigen::MatrixXd a = X;
  for (std::size_t l = 0; l < p.layers(); ++l) {
    Eigen::MatrixXd z = (p.W[l] * a).colwise() + p.b[l];
    if (l + 1 == p.layers()) {
      a = sigmoid(z);
    } else if (p.hidden == Activation::Relu) {
      a = z.array().max(0.0);
    } else {
      a = sigmoid(z);
    }
    if (cache) {
      cache->z.push_back(std::move(z));
      cache->a.push_back(a);
    }
  }
  return a;
}

Gradients mlp_backward(const MlpParams& p, const ForwardCache& cache,
                       const Eigen::MatrixXd& d_out) {
  const std::size_t L = p.layers();
  if (cache.z.size() != L || cache.a.size() != L + 1)
    throw StateError("mlp_backward: cache does not match network depth");
  if (d_out.rows() != p.out_dim() || d_out.cols() != cache.a.back().cols())
    throw DimensionError("mlp_backward: d_out shape mismatch");

  Gradients g;
  g.dW.resize(L);
  g.db.resize(L);

  Eigen::MatrixXd da = d_out;
  for (std::size_t l = L; l-- > 0;) {
    Eigen::MatrixXd dz;
    if (l + 1 == L || p.hidden == Activation::Sigmoid) {
      const auto& a = cache.a[l + 1];
      dz = da.array() * a.array() * (1.0 - a.array());
    } else {  // relu; subgradient 0 at the kink
      dz = da.array() * (cache.z[l].array() > 0.0).cast<double>();
    }
    g.dW[l] = dz * cache.a[l].transpose();
    g.db[l] = dz.rowwise().sum();
    da = p.W[l].transpose() * dz;
  }
  g.dX = std::move(da);
  return g;
}

AdamState AdamState::zeros_like(const MlpParams& p) {
  AdamState s;
  for (std::size_t l = 0; l < p.layers(); ++l) {
    s.mW.push_back(Eigen::MatrixXd::Zero(p.W[l].rows(), p.W[l].cols()));
    s.vW.push_back(Eigen::MatrixXd::Zero(p.W[l].rows(), p.W[l].cols()));
    s.mb.push_back(Eigen::VectorXd::Zero(p.b[l].size()));
    s.vb.push_back(Eigen::VectorXd::Zero(p.b[l].size()));
  }
  return s;
}

namespace {

template <typename T>
void adam_update_tensor(T& param, T& m, T& v, const T& grad, double lr, double b1, double b2,
                        double eps, double bc1, double bc2) {
  m = b1 * m + (1.0 - b1) * grad;
  v = (b2 * v.array() + (1.0 - b2) * grad.array().square()).matrix();
  param -= (lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + eps)).matrix();
}

}  // namespace

void adam_step(MlpParams& p, AdamState& s, const Gradients& g, double lr, double beta1,
               double beta2, double eps) {
  if (s.mW.size() != p.layers()) throw StateError("adam_step: state does not match network");
  if (g.dW.size() != p.layers()) throw StateError("adam_step: gradients do not match network");
  s.t += 1;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(s.t));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(s.t));
  for (std::size_t l = 0; l < p.layers(); ++l) {
    adam_update_tensor(p.W[l], s.mW[l], s.vW[l], g.dW[l], lr, beta1, beta2, eps, bc1, bc2);
    adam_update_tensor(p.b[l], s.mb[l], s.vb[l], g.db[l], lr, beta1, beta2, eps, bc1, bc2);
  }
}

DiscLossGrad disc_loss_and_grad(const Eigen::RowVectorXd& p_real, const Eigen::RowVectorXd& p_fake,
                                const Eigen::RowVectorXd& p_gen) {
  DiscLossGrad out;
  out.d_real = Eigen::RowVectorXd::Zero(p_real.size());
  out.d_fake = Eigen::RowVectorXd::Zero(p_fake.size());
  out.d_gen = Eigen::RowVectorXd::Zero(p_gen.size());

  double loss = 0.0;
  if (p_real.size() > 0) {
    const double m = static_cast<double>(p_real.size());
    for (Eigen::Index i = 0; i < p_real.size(); ++i) {
      const double p = clamp_prob(p_real[i]);
      loss -= std::log(p) / m;
      out.d_real[i] = -1.0 / (p * m);
    }
  }
  auto one_minus_term = [&loss](const Eigen::RowVectorXd& probs, Eigen::RowVectorXd& grad) {
    if (probs.size() == 0) return;
    const double m = static_cast<double>(probs.size());
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
      const double p = clamp_prob(probs[i]);
      loss -= std::log(1.0 - p) / m;
      grad[i] = 1.0 / ((1.0 - p) * m);
    }
  };
  one_minus_term(p_fake, out.d_fake);
  one_minus_term(p_gen, out.d_gen);
  out.loss = loss;
  return out;
}

GenLossGrad gen_loss_and_grad(const Eigen::RowVectorXd& p_gen, bool non_saturating) {
  if (p_gen.size() == 0) throw PreconditionError("gen_loss_and_grad: empty batch");
  GenLossGrad out;
  out.d_gen = Eigen::RowVectorXd::Zero(p_gen.size());
  const double m = static_cast<double>(p_gen.size());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < p_gen.size(); ++i) {
    const double p = clamp_prob(p_gen[i]);
    if (non_saturating) {
      loss -= std::log(p) / m;
      out.d_gen[i] = -1.0 / (p * m);
    } else {
      loss += std::log(1.0 - p) / m;
      out.d_gen[i] = -1.0 / ((1.0 - p) * m);
    }
  }
  out.loss = loss;
  return out;
}

void save_params(const MlpParams& p, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw StateError("save_params: cannot open " + path);
  const std::uint64_t L = p.layers();
  f.write(reinterpret_cast<const char*>(&L), sizeof L);
  std::uint64_t hidden = p.hidden == Activation::Relu ? 0 : 1;
  f.write(reinterpret_cast<const char*>(&hidden), sizeof hidden);
  for (std::size_t l = 0; l < L; ++l) {
    const std::uint64_t rows = static_cast<std::uint64_t>(p.W[l].rows());
    const std::uint64_t cols = static_cast<std::uint64_t>(p.W[l].cols());
    f.write(reinterpret_cast<const char*>(&rows), sizeof rows);
    f.write(reinterpret_cast<const char*>(&cols), sizeof cols);
  }
  for (std::size_t l = 0; l < L; ++l) {
    for (Eigen::Index r = 0; r < p.W[l].rows(); ++r)
      for (Eigen::Index c = 0; c < p.W[l].cols(); ++c) {
        const double v = p.W[l](r, c);
        f.write(reinterpret_cast<const char*>(&v), sizeof v);
      }
    for (Eigen::Index r = 0; r < p.b[l].size(); ++r) {
      const double v = p.b[l][r];
      f.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
  }
}

MlpParams load_params(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw StateError("load_params: cannot open " + path);
  std::uint64_t L = 0, hidden = 0;
  f.read(reinterpret_cast<char*>(&L), sizeof L);
  f.read(reinterpret_cast<char*>(&hidden), sizeof hidden);
  MlpParams p;
  p.hidden = hidden == 0 ? Activation::Relu : Activation::Sigmoid;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> shapes(L);
  for (auto& s : shapes) {
    f.read(reinterpret_cast<char*>(&s.first), sizeof s.first);
    f.read(reinterpret_cast<char*>(&s.second), sizeof s.second);
  }
  for (const auto& s : shapes) {
    Eigen::MatrixXd W(static_cast<Eigen::Index>(s.first), static_cast<Eigen::Index>(s.second));
    for (Eigen::Index r = 0; r < W.rows(); ++r)
      for (Eigen::Index c = 0; c < W.cols(); ++c) {
        double v;
        f.read(reinterpret_cast<char*>(&v), sizeof v);
        W(r, c) = v;
      }
    Eigen::VectorXd b(static_cast<Eigen::Index>(s.first));
    for (Eigen::Index r = 0; r < b.size(); ++r) {
      double v;
      f.read(reinterpret_cast<char*>(&v), sizeof v);
      b[r] = v;
    }
    p.W.push_back(std::move(W));
    p.b.push_back(std::move(b));
  }
  if (!f) throw StateError("load_params: truncated file " + path);
  return p;
}

}  // namespace gmoea
