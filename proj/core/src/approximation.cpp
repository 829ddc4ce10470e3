#include "ltc/approximation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "ltc/errors.hpp"

namespace ltc {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

Index idx(std::size_t i) { return static_cast<Index>(i); }

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double result = 0.0;
  double f = 1.0 / static_cast<double>(base);
  while (i > 0) {
    result += f * static_cast<double>(i % base);
    i /= base;
    f /= static_cast<double>(base);
  }
  return result;
}

std::uint64_t nth_prime(std::size_t k) {
  static constexpr std::array<std::uint64_t, 24> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                                            41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  if (k >= kPrimes.size()) throw std::invalid_argument("Halton sampling supports at most 24 dimensions");
  return kPrimes[k];
}

// Halton points 1..count mapped onto the box, one per row.
MatrixXd halton_sample(const Box& box, std::size_t count) {
  MatrixXd pts(idx(count), idx(box.size()));
  for (std::size_t r = 0; r < count; ++r) {
    for (std::size_t d = 0; d < box.size(); ++d) {
      pts(idx(r), idx(d)) = box[d].lo + box[d].width() * radical_inverse(r + 1, nth_prime(d));
    }
  }
  return pts;
}

// Validation points: full 33-per-axis grid for dim <= 2, otherwise a grid
// of at least 1000 points while that stays small, else seeded uniform draws.
MatrixXd validation_points(const Box& box) {
  const std::size_t dim = box.size();
  std::size_t per_axis = 33;
  if (dim > 2) {
    per_axis = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(std::pow(1000.0, 1.0 / dim) - 1e-9)));
  }
  const double total = std::pow(static_cast<double>(per_axis), static_cast<double>(dim));
  if (total > 20000.0) {
    std::mt19937_64 rng(0x76a11da7eULL);
    MatrixXd pts(2000, idx(dim));
    for (Index r = 0; r < pts.rows(); ++r) {
      for (std::size_t d = 0; d < dim; ++d) {
        pts(r, idx(d)) = std::uniform_real_distribution<double>(box[d].lo, box[d].hi)(rng);
      }
    }
    return pts;
  }
  const auto count = static_cast<std::size_t>(total);
  MatrixXd pts(idx(count), idx(dim));
  for (std::size_t r = 0; r < count; ++r) {
    std::size_t rem = r;
    for (std::size_t d = 0; d < dim; ++d) {
      const std::size_t k = rem % per_axis;
      rem /= per_axis;
      pts(idx(r), idx(d)) = box[d].lo + box[d].width() * static_cast<double>(k) / static_cast<double>(per_axis - 1);
    }
  }
  return pts;
}

MatrixXd feature_matrix(const FeedForwardApprox& fit, const MatrixXd& pts) {
  MatrixXd phi(pts.rows(), fit.projection.rows());
  for (Index r = 0; r < pts.rows(); ++r) {
    const VectorXd x = pts.row(r).transpose();
    phi.row(r) = logistic(fit.hidden(x)).transpose();
  }
  return phi;
}

MatrixXd target_matrix(const VectorField& field, const MatrixXd& pts) {
  MatrixXd y(pts.rows(), idx(field.dim));
  for (Index r = 0; r < pts.rows(); ++r) {
    const VectorXd fx = field(pts.row(r).transpose());
    if (static_cast<std::size_t>(fx.size()) != field.dim || !fx.allFinite()) {
      throw DomainError("vector field returned a non-finite or mis-sized value inside its domain");
    }
    y.row(r) = fx.transpose();
  }
  return y;
}

void require_box(const Box& box, std::size_t dim) {
  if (box.size() != dim || dim == 0) throw std::invalid_argument("field domain dimension mismatch");
  for (std::size_t d = 0; d < dim; ++d) {
    if (!std::isfinite(box[d].lo) || !std::isfinite(box[d].hi) || box[d].lo > box[d].hi) {
      throw std::invalid_argument("field domain axis " + std::to_string(d) + " is not a finite interval");
    }
  }
}

// Largest Euclidean norm over the box (attained at a corner).
double max_norm(const Box& box) {
  double sum = 0.0;
  for (const auto& iv : box) {
    const double m = std::max(std::abs(iv.lo), std::abs(iv.hi));
    sum += m * m;
  }
  return std::sqrt(sum);
}

}  // namespace

VectorXd logistic(const VectorXd& z) {
  VectorXd out(z.size());
  for (Index i = 0; i < z.size(); ++i) out[i] = sigmoid_activation(z[i], 1.0, 0.0);
  return out;
}

VectorXd FeedForwardApprox::hidden(const VectorXd& x) const { return projection * x + bias; }

VectorXd FeedForwardApprox::operator()(const VectorXd& x) const { return readout * logistic(hidden(x)); }

FeedForwardApprox fit_feedforward(const VectorField& field, std::size_t n_features, std::size_t n_samples,
                                  double ridge, std::uint64_t seed, double gamma_scale) {
  if (n_features < 1) throw std::invalid_argument("n_features must be >= 1");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw std::invalid_argument("ridge must be finite and >= 0");
  if (!(gamma_scale > 0.0)) throw std::invalid_argument("gamma_scale must be > 0");
  require_box(field.domain, field.dim);

  const std::size_t dim = field.dim;
  double radius = 0.0;
  for (const auto& iv : field.domain) radius = std::max(radius, 0.5 * iv.width());
  if (radius == 0.0) throw DomainError("field domain has zero extent on every axis");
  const double scale = 2.0 * gamma_scale / radius;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  FeedForwardApprox fit;
  fit.projection.resize(idx(n_features), idx(dim));
  fit.bias.resize(idx(n_features));
  for (std::size_t k = 0; k < n_features; ++k) {
    double p_lo = 0.0;
    double p_hi = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double c = scale * unit(rng);
      fit.projection(idx(k), idx(d)) = c;
      p_lo += std::min(c * field.domain[d].lo, c * field.domain[d].hi);
      p_hi += std::max(c * field.domain[d].lo, c * field.domain[d].hi);
    }
    // Sigmoid centre C_k x + mu_k = 0 somewhere inside the domain.
    const double centre = p_lo + (p_hi - p_lo) * 0.5 * (unit(rng) + 1.0);
    fit.bias[idx(k)] = -centre;
  }

  const MatrixXd pts = halton_sample(field.domain, n_samples);
  const MatrixXd phi = feature_matrix(fit, pts);
  const MatrixXd targets = target_matrix(field, pts);

  MatrixXd coef;  // N x n
  if (ridge > 0.0) {
    MatrixXd stacked(phi.rows() + phi.cols(), phi.cols());
    stacked << phi, std::sqrt(ridge) * MatrixXd::Identity(phi.cols(), phi.cols());
    MatrixXd rhs = MatrixXd::Zero(stacked.rows(), targets.cols());
    rhs.topRows(targets.rows()) = targets;
    coef = stacked.colPivHouseholderQr().solve(rhs);
  } else {
    const Eigen::ColPivHouseholderQR<MatrixXd> qr(phi);
    if (qr.rank() < phi.cols()) {
      throw RankDeficient("feature matrix has rank " + std::to_string(qr.rank()) + " < " +
                          std::to_string(phi.cols()) + " features; use a ridge parameter > 0");
    }
    coef = qr.solve(targets);
  }
  fit.readout = coef.transpose();
  if (!fit.readout.allFinite()) throw NumericError("ridge solve produced non-finite readout weights");

  const MatrixXd val = validation_points(field.domain);
  const MatrixXd residual = feature_matrix(fit, val) * coef - target_matrix(field, val);
  fit.sup_error = residual.rowwise().norm().maxCoeff();
  return fit;
}

double ridge_loss(const VectorField& field, const FeedForwardApprox& fit, std::size_t n_samples, double ridge) {
  const MatrixXd pts = halton_sample(field.domain, n_samples);
  const MatrixXd residual = feature_matrix(fit, pts) * fit.readout.transpose() - target_matrix(field, pts);
  return residual.squaredNorm() + ridge * fit.readout.squaredNorm();
}

double estimate_lipschitz(const VectorField& field, std::size_t grid_points_per_axis) {
  require_box(field.domain, field.dim);
  for (std::size_t d = 0; d < field.dim; ++d) {
    if (field.domain[d].width() <= 0.0) {
      throw DomainError("cannot estimate a Lipschitz constant: domain axis " + std::to_string(d) + " has zero width");
    }
  }
  const std::size_t dim = field.dim;
  double best = 0.0;
  auto consider = [&](const VectorXd& p, const VectorXd& fp, const VectorXd& q, const VectorXd& fq) {
    const double dist = (p - q).norm();
    if (dist > 0.0) best = std::max(best, (fp - fq).norm() / dist);
  };

  if (dim <= 3) {
    const std::size_t g = std::max<std::size_t>(2, grid_points_per_axis);
    std::size_t total = 1;
    for (std::size_t d = 0; d < dim; ++d) total *= g;

    std::vector<VectorXd> points(total);
    std::vector<VectorXd> values(total);
    for (std::size_t r = 0; r < total; ++r) {
      VectorXd x(idx(dim));
      std::size_t rem = r;
      for (std::size_t d = 0; d < dim; ++d) {
        x[idx(d)] = field.domain[d].lo +
                    field.domain[d].width() * static_cast<double>(rem % g) / static_cast<double>(g - 1);
        rem /= g;
      }
      points[r] = x;
      values[r] = field(x);
    }

    // Stencil offsets in {-2..2}^dim whose first nonzero component is
    // positive, so every unordered pair is visited once.
    constexpr int kReach = 2;
    std::vector<std::vector<int>> offsets;
    std::vector<int> off(dim, -kReach);
    for (;;) {
      auto first = std::find_if(off.begin(), off.end(), [](int v) { return v != 0; });
      if (first != off.end() && *first > 0) offsets.push_back(off);
      std::size_t d = 0;
      while (d < dim && off[d] == kReach) off[d++] = -kReach;
      if (d == dim) break;
      ++off[d];
    }

    for (std::size_t r = 0; r < total; ++r) {
      std::vector<long> coord(dim);
      std::size_t rem = r;
      for (std::size_t d = 0; d < dim; ++d) {
        coord[d] = static_cast<long>(rem % g);
        rem /= g;
      }
      for (const auto& o : offsets) {
        std::size_t q = 0;
        std::size_t stride = 1;
        bool inside = true;
        for (std::size_t d = 0; d < dim && inside; ++d) {
          const long c = coord[d] + o[d];
          inside = c >= 0 && c < static_cast<long>(g);
          q += static_cast<std::size_t>(c) * stride;
          stride *= g;
        }
        if (inside) consider(points[r], values[r], points[q], values[q]);
      }
    }
    return best;
  }

  double diameter = 0.0;
  for (const auto& iv : field.domain) diameter += iv.width() * iv.width();
  diameter = std::sqrt(diameter);

  std::mt19937_64 rng(0x11b5c412ULL);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> log_len(-4.0, -1.0);
  constexpr std::size_t kPairs = 100000;
  for (std::size_t k = 0; k < kPairs; ++k) {
    VectorXd p(idx(dim));
    VectorXd dir(idx(dim));
    for (std::size_t d = 0; d < dim; ++d) {
      p[idx(d)] = std::uniform_real_distribution<double>(field.domain[d].lo, field.domain[d].hi)(rng);
      dir[idx(d)] = normal(rng);
    }
    const double len = diameter * std::pow(10.0, log_len(rng));
    VectorXd q = p + len * dir.normalized();
    for (std::size_t d = 0; d < dim; ++d) q[idx(d)] = std::clamp(q[idx(d)], field.domain[d].lo, field.domain[d].hi);
    consider(p, field(p), q, field(q));
  }
  return best;
}

MatrixXd AugmentedSystem::coupling() const {
  return block_w.bottomRightCorner(idx(n_hidden), idx(n_hidden));
}

VectorXd AugmentedSystem::initial_state(const VectorXd& x0, const FeedForwardApprox& fit) const {
  if (static_cast<std::size_t>(x0.size()) != n) throw DimensionMismatch("x0 dimension does not match the system");
  VectorXd z(idx(size()));
  z.head(idx(n)) = x0;
  z.tail(idx(n_hidden)) = fit.hidden(x0);
  return z;
}

std::size_t AugmentedSystem::max_row_fan_in() const {
  std::size_t best = 0;
  for (Index i = 0; i < block_w.rows(); ++i) {
    std::size_t count = 0;
    for (Index j = idx(n); j < block_w.cols(); ++j) count += block_w(i, j) != 0.0 ? 1 : 0;
    best = std::max(best, count);
  }
  return best;
}

VectorXd AugmentedSystem::derivative(const VectorXd& z) const {
  if (z.size() != idx(size())) throw DimensionMismatch("augmented state has the wrong dimension");
  const Index offset = idx(n);
  const VectorXd sig = logistic(z.tail(idx(n_hidden)));
  const double inv_tau = 1.0 / tau_base;
  VectorXd dz(z.size());
  for (Index i = 0; i < z.size(); ++i) {
    double gated = 0.0;  // sum_j W_ij sigma_j
    double fan = 0.0;    // sum of sigma_j over nonzero W_ij
    for (Index j = 0; j < idx(n_hidden); ++j) {
      const double w = block_w(i, offset + j);
      if (w == 0.0) continue;
      gated += w * sig[j];
      fan += sig[j];
    }
    const double rate = inv_tau + w_l * fan;
    dz[i] = -rate * (z[i] - bias_aug[i]) + gated + resting_aug[i];
  }
  return dz;
}

AugmentedSystem assemble_augmented_system(const FeedForwardApprox& fit, double tau_base, double w_l,
                                          const VectorXd& resting_a1, const VectorXd& resting_a2) {
  const Index n = fit.readout.rows();
  const Index hidden = fit.readout.cols();
  if (n < 1 || hidden < 1) throw std::invalid_argument("fit must have at least one output and one feature");
  if (fit.projection.rows() != hidden || fit.projection.cols() != n || fit.bias.size() != hidden) {
    throw std::invalid_argument("fit shapes are inconsistent (readout n x N, projection N x n, bias N)");
  }
  if (resting_a1.size() != n || resting_a2.size() != hidden) {
    throw std::invalid_argument("resting vectors must have sizes n and N");
  }
  if (!(tau_base > 0.0) || !std::isfinite(tau_base)) throw std::invalid_argument("tau must be finite and > 0");
  if (!(w_l > 0.0) || !std::isfinite(w_l)) throw std::invalid_argument("W_l must be finite and > 0");
  if (tau_base * w_l > kMaxTauCoupling) {
    throw ConditionsViolated("tau * W_l = " + std::to_string(tau_base * w_l) + " exceeds " +
                             std::to_string(kMaxTauCoupling) + "; the state-dependent decay must stay a small "
                             "perturbation of 1/tau");
  }

  AugmentedSystem sys;
  sys.n = static_cast<std::size_t>(n);
  sys.n_hidden = static_cast<std::size_t>(hidden);
  sys.tau_base = tau_base;
  sys.w_l = w_l;
  sys.block_w = MatrixXd::Zero(n + hidden, n + hidden);
  sys.block_w.topRightCorner(n, hidden) = fit.readout;
  sys.block_w.bottomRightCorner(hidden, hidden) = fit.projection * fit.readout;
  sys.bias_aug = VectorXd::Zero(n + hidden);
  sys.bias_aug.tail(hidden) = fit.bias;
  sys.resting_aug.resize(n + hidden);
  sys.resting_aug << resting_a1, resting_a2;
  return sys;
}

TauConditions check_tau_conditions(const AugmentedSystem& system, const Box& domain, double epsilon_l, double eta,
                                   double l_gtilde, double horizon) {
  TauConditions out;
  const double fan = static_cast<double>(system.max_row_fan_in());
  out.tau_sys_min = 1.0 / (1.0 / system.tau_base + system.w_l * fan);
  out.tau_sys_max = system.tau_base;

  const double max_x = max_norm(domain) + eta;

  const double a_value = max_x / out.tau_sys_min;
  out.a.margin = 0.5 * epsilon_l - a_value;
  out.a.ok = a_value < 0.5 * epsilon_l;

  const double mu_norm = system.bias_aug.norm();
  const double b_value = mu_norm / out.tau_sys_min;
  const double b_bound = l_gtilde > 0.0 ? eta * l_gtilde / (2.0 * std::expm1(l_gtilde * horizon))
                                        : eta / (2.0 * horizon);
  out.b_bias.margin = b_bound - b_value;
  out.b_bias.ok = b_value < b_bound;

  const double rate = 1.0 / out.tau_sys_min;
  out.b_rate.margin = 0.5 * l_gtilde - rate;
  out.b_rate.ok = rate < 0.5 * l_gtilde;

  const double coupling = system.tau_base * system.w_l;
  out.tau_coupling.margin = kMaxTauCoupling - coupling;
  out.tau_coupling.ok = coupling <= kMaxTauCoupling;
  return out;
}

double gtilde_lipschitz(const AugmentedSystem& system) {
  if (system.block_w.size() == 0) return 0.0;
  const Eigen::JacobiSVD<MatrixXd> svd(system.block_w);
  // sup sigma' = 1/4 for the logistic function.
  return 2.0 * 0.25 * svd.singularValues()[0];
}

LtcNetwork realize_as_ltc(const AugmentedSystem& system) {
  const std::size_t n = system.n;
  const std::size_t hidden = system.n_hidden;
  const std::size_t total = n + hidden;
  if (system.block_w.rows() != idx(total) || system.block_w.cols() != idx(total) ||
      system.bias_aug.size() != idx(total) || system.resting_aug.size() != idx(total)) {
    throw std::invalid_argument("augmented system shapes are inconsistent");
  }
  for (Index i = 0; i < idx(total); ++i) {
    for (Index j = 0; j < idx(n); ++j) {
      if (system.block_w(i, j) != 0.0) {
        throw RealizationError("block_w(" + std::to_string(i) + ", " + std::to_string(j) +
                               ") is nonzero; output coordinates cannot drive any synapse");
      }
    }
  }
  if (!(system.tau_base > 0.0) || !(system.w_l > 0.0)) {
    throw RealizationError("tau and W_l must be positive to map onto a leak and a synaptic weight");
  }

  // Augmented coordinate a -> network neuron.
  auto neuron_of = [&](std::size_t a) { return a < n ? hidden + a : a - n; };

  const double g_leak = 1.0 / system.tau_base;
  std::vector<NeuronParams> neurons(total);
  for (std::size_t a = 0; a < total; ++a) {
    NeuronParams p;
    p.c_m = 1.0;
    p.g_leak = g_leak;
    p.v_leak = system.tau_base * system.resting_aug[idx(a)] + system.bias_aug[idx(a)];
    if (!std::isfinite(p.v_leak) || !std::isfinite(p.g_leak)) {
      throw RealizationError("augmented coordinate " + std::to_string(a) + ": leak parameters are not finite");
    }
    neurons[neuron_of(a)] = p;
  }

  std::vector<ChemicalSynapse> chem;
  for (std::size_t a = 0; a < total; ++a) {
    for (std::size_t j = 0; j < hidden; ++j) {
      const double entry = system.block_w(idx(a), idx(n + j));
      if (entry == 0.0) continue;
      ChemicalSynapse s;
      s.src = j;
      s.dst = neuron_of(a);
      s.w = system.w_l;
      s.gamma = 1.0;
      s.mu = 0.0;
      s.e_rev = entry / system.w_l + system.bias_aug[idx(a)];
      if (!std::isfinite(s.e_rev)) {
        throw RealizationError("block_w(" + std::to_string(a) + ", " + std::to_string(n + j) +
                               "): reversal potential entry / W_l is not finite");
      }
      chem.push_back(s);
    }
  }
  return LtcNetwork(std::move(neurons), std::move(chem), {}, n);
}

StateVector augmented_to_network(const AugmentedSystem& system, const VectorXd& z) {
  if (z.size() != idx(system.size())) throw DimensionMismatch("augmented state has the wrong dimension");
  StateVector u(z.size());
  u.head(idx(system.n_hidden)) = z.tail(idx(system.n_hidden));
  u.tail(idx(system.n)) = z.head(idx(system.n));
  return u;
}

VectorXd network_to_augmented(const AugmentedSystem& system, const StateVector& u) {
  if (u.size() != idx(system.size())) throw DimensionMismatch("network state has the wrong dimension");
  VectorXd z(u.size());
  z.head(idx(system.n)) = u.tail(idx(system.n));
  z.tail(idx(system.n_hidden)) = u.head(idx(system.n_hidden));
  return z;
}

TimeConstants choose_time_constants(const Box& domain, double epsilon_l, double eta, std::size_t fan_in,
                                    std::optional<double> tau, std::optional<double> w_l) {
  if (tau && w_l) return {*tau, *w_l};
  if (tau) return {*tau, kAutoTauCoupling / *tau};
  if (w_l) return {kAutoTauCoupling / *w_l, *w_l};
  if (!(epsilon_l > 0.0)) throw std::invalid_argument("epsilon_l must be > 0 to choose tau");
  const double rate_budget = 0.25 * epsilon_l / (max_norm(domain) + eta);
  // 1/tau + W_l k = (1 + c k) / tau with W_l = c / tau.
  const double t = (1.0 + kAutoTauCoupling * static_cast<double>(fan_in)) / rate_budget;
  return {t, kAutoTauCoupling / t};
}

ApproximationReport approximate_trajectory(const VectorField& field, const VectorXd& x0, double horizon,
                                           const PipelineConfig& config) {
  require_box(field.domain, field.dim);
  if (static_cast<std::size_t>(x0.size()) != field.dim) {
    throw DimensionMismatch("x0 has " + std::to_string(x0.size()) + " entries, field has dimension " +
                            std::to_string(field.dim));
  }
  if (!box_contains(field.domain, x0)) throw DomainError("x0 lies outside the field domain");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon must be finite and > 0");
  if (!(config.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");

  const double ratio = config.dt / config.reference_dt;
  const double stride = std::round(ratio);
  if (!(stride >= 1.0) || std::abs(ratio - stride) > 1e-9 * stride) {
    throw std::invalid_argument("dt must be an integer multiple of reference_dt");
  }

  ApproximationReport report;

  SolverConfig ref_cfg{Method::kRk4, config.reference_dt, horizon, static_cast<std::size_t>(stride)};
  report.reference = integrate([&field](const VectorXd& x) { return field(x); }, x0, ref_cfg);

  report.lipschitz_f = estimate_lipschitz(field, config.lipschitz_grid);
  report.epsilon = config.epsilon;
  report.eta = 0.5 * std::min(config.epsilon, config.lambda_dist);
  const double lf = report.lipschitz_f;
  const double eps_bound = lf > 0.0 ? report.eta * lf / (2.0 * std::expm1(lf * horizon)) : report.eta / (2.0 * horizon);
  report.epsilon_l = 0.5 * eps_bound;

  report.fitted =
      fit_feedforward(field, config.n_features, config.n_samples, config.ridge, config.seed, config.gamma_scale);

  const Index n = idx(field.dim);
  const Index hidden = idx(config.n_features);
  const VectorXd a1 = config.resting_a1.size() == 0 ? VectorXd::Zero(n) : config.resting_a1;
  const VectorXd a2 = config.resting_a2.size() == 0 ? VectorXd::Zero(hidden) : config.resting_a2;
  const TimeConstants tc =
      choose_time_constants(field.domain, report.epsilon_l, report.eta, config.n_features, config.tau, config.w_l);
  report.system = assemble_augmented_system(report.fitted, tc.tau, tc.w_l, a1, a2);
  report.network = realize_as_ltc(report.system);
  report.l_gtilde = gtilde_lipschitz(report.system);
  report.conditions =
      check_tau_conditions(report.system, field.domain, report.epsilon_l, report.eta, report.l_gtilde, horizon);

  const StateVector u0 = augmented_to_network(report.system, report.system.initial_state(x0, report.fitted));
  report.ltc = simulate(report.network, u0, SolverConfig{config.method, config.dt, horizon, 1});

  if (report.ltc.samples() != report.reference.samples()) {
    throw std::logic_error("reference and network trajectories are on different grids");
  }
  const Index out_offset = hidden;
  double worst = 0.0;
  for (Index k = 0; k < report.ltc.states.rows(); ++k) {
    const double err = (report.ltc.states.row(k).segment(out_offset, n) - report.reference.states.row(k)).norm();
    worst = std::max(worst, err);
  }
  report.sup_traj_error = worst;
  return report;
}

}  // namespace ltc
