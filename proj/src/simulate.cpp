#include "survbench/simulate.hpp"

#include <cmath>
#include <sstream>

#include "survbench/linalg.hpp"

namespace survbench {
namespace {

constexpr const char* kCovStream = "sim.covariates";
constexpr const char* kTimeStream = "sim.time";
constexpr const char* kCensorStream = "sim.censor";
constexpr const char* kMeanStream = "sim.means";

std::vector<double> parse_mean(const KeyValueConfig& kv, const std::string& key,
                               const std::vector<double>& fallback) {
  return kv.get_double_list(key, fallback);
}

}  // namespace

void SimConfig::validate() const {
  if (!(mixture_p > 0.0 && mixture_p < 1.0)) {
    throw Error("sim config: mixture_p must be in (0,1)");
  }
  if (!(censor_lo > 0.0 && censor_lo < censor_hi)) {
    throw Error("sim config: need 0 < censor_lo < censor_hi");
  }
  if (!(weibull_shape > 0.0)) throw Error("sim config: weibull_shape must be > 0");
  if (!(weibull_scale > 0.0)) throw Error("sim config: weibull_scale must be > 0");
  if (d == 0) throw Error("sim config: d must be >= 1");
  if (!random_means && (mu1.size() != d || mu2.size() != d)) {
    throw Error("sim config: mean vectors must have length d");
  }
  build_covariance(corr_c, d);  // positive definiteness check
}

SimConfig SimConfig::from_config(const KeyValueConfig& kv) {
  SimConfig cfg;
  cfg.n = static_cast<std::size_t>(kv.get_u64("n", cfg.n));
  cfg.d = static_cast<std::size_t>(kv.get_u64("d", cfg.d));
  cfg.mixture_p = kv.get_double("mixture_p", cfg.mixture_p);
  cfg.random_means = kv.get_bool("random_means", cfg.random_means);
  cfg.mu1 = parse_mean(kv, "mu1", cfg.mu1);
  cfg.mu2 = parse_mean(kv, "mu2", cfg.mu2);
  cfg.corr_c = kv.get_double("corr_c", cfg.corr_c);
  cfg.weibull_shape = kv.get_double("weibull_shape", cfg.weibull_shape);
  cfg.weibull_scale = kv.get_double("weibull_scale", cfg.weibull_scale);
  cfg.censor_lo = kv.get_double("censor_lo", cfg.censor_lo);
  cfg.censor_hi = kv.get_double("censor_hi", cfg.censor_hi);
  cfg.seed = kv.get_u64("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

CovarianceSpec build_covariance(double corr_c, std::size_t d) {
  if (d == 0) throw Error("build_covariance: d must be >= 1");
  Matrix sigma(d, d);
  for (std::size_t i = 0; i < d; ++i) sigma.at(i, i) = 1.0;
  if (corr_c != 0.0) {
    if (d != 5) {
      throw Error("build_covariance: the correlated pattern is defined for d=5");
    }
    // 1-based pairs (1,2),(1,3),(3,4),(4,5) and transposes
    const std::size_t pairs[4][2] = {{0, 1}, {0, 2}, {2, 3}, {3, 4}};
    for (const auto& p : pairs) {
      sigma.at(p[0], p[1]) = corr_c;
      sigma.at(p[1], p[0]) = corr_c;
    }
  }
  const auto eig = linalg::jacobi_eigenvalues(sigma);
  CovarianceSpec spec;
  spec.min_eigenvalue = eig.front();
  spec.max_eigenvalue = eig.back();
  if (!(spec.min_eigenvalue > 0.0)) {
    std::ostringstream msg;
    msg << "build_covariance: matrix not positive definite (smallest eigenvalue "
        << spec.min_eigenvalue << ")";
    throw Error(msg.str());
  }
  spec.sigma = sigma;
  spec.chol = sigma;
  if (!linalg::cholesky(spec.chol)) {
    throw Error("build_covariance: Cholesky factorization failed");
  }
  return spec;
}

double interaction_f(std::span<const double> x) {
  if (x.size() < 4) throw Error("interaction_f: needs at least 4 coordinates");
  return x[0] * x[1] - x[0] * x[2] + 2.0 * x[0] * x[3];
}

double weibull_from_uniform(double u, double shape) {
  return std::pow(-std::log(u), 1.0 / shape);
}

std::pair<Matrix, std::vector<int>> sample_covariates(const SimConfig& cfg,
                                                      SeededRng& rng) {
  cfg.validate();
  const auto cov = build_covariance(cfg.corr_c, cfg.d);
  std::vector<double> mu1 = cfg.mu1;
  std::vector<double> mu2 = cfg.mu2;
  if (cfg.random_means) {
    SeededRng mean_rng = rng.child(stream_tag(kMeanStream));
    mu1.resize(cfg.d);
    mu2.resize(cfg.d);
    for (auto& v : mu1) v = mean_rng.normal();
    for (auto& v : mu2) v = mean_rng.normal();
  }
  Matrix x(cfg.n, cfg.d);
  std::vector<int> groups(cfg.n);
  std::vector<double> z(cfg.d);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    SeededRng row = rng.child(i);
    const int g = row.bernoulli(cfg.mixture_p) ? 1 : 0;
    groups[i] = g;
    for (std::size_t j = 0; j < cfg.d; ++j) z[j] = row.normal();
    const auto& mu = g == 1 ? mu2 : mu1;
    for (std::size_t j = 0; j < cfg.d; ++j) {
      double v = mu[j];
      for (std::size_t k = 0; k <= j; ++k) v += cov.chol.at(j, k) * z[k];
      x.at(i, j) = v;
    }
  }
  return {std::move(x), std::move(groups)};
}

double sample_survival_time(std::span<const double> x, const SimConfig& cfg,
                            SeededRng& rng) {
  const double w = weibull_from_uniform(rng.uniform_open(), cfg.weibull_shape);
  return w * std::exp(interaction_f(x)) * cfg.weibull_scale;
}

SurvivalOutcome apply_censoring(double t, const SimConfig& cfg, SeededRng& rng) {
  const double c = rng.uniform_range(cfg.censor_lo, cfg.censor_hi);
  return {t < c ? t : c, t < c};
}

Dataset generate_dataset(const SimConfig& cfg) {
  cfg.validate();
  SeededRng cov_rng(cfg.seed, stream_tag(kCovStream));
  SeededRng time_rng(cfg.seed, stream_tag(kTimeStream));
  SeededRng censor_rng(cfg.seed, stream_tag(kCensorStream));

  auto [x, groups] = sample_covariates(cfg, cov_rng);
  std::vector<SurvivalOutcome> outcomes(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    SeededRng trow = time_rng.child(i);
    SeededRng crow = censor_rng.child(i);
    const double t = sample_survival_time(
        std::span<const double>(x.row(i), cfg.d), cfg, trow);
    outcomes[i] = apply_censoring(t, cfg, crow);
  }
  return make_dataset(std::move(x), std::vector<std::uint8_t>(cfg.n * cfg.d, 0),
                      std::move(outcomes), std::move(groups));
}

}  // namespace survbench
