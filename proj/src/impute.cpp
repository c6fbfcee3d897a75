#include "survbench/impute.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "survbench/linalg.hpp"

namespace survbench {
namespace {

void require_observed_columns(const Dataset& train) {
  for (std::size_t j = 0; j < train.dim(); ++j) {
    bool any = false;
    for (std::size_t i = 0; i < train.n() && !any; ++i) any = !train.masked(i, j);
    if (!any) {
      throw Error("imputer fit: column " + std::to_string(j) + " is all-missing");
    }
  }
}

std::vector<double> observed_column_means(const Dataset& train) {
  std::vector<double> means(train.dim());
  for (std::size_t j = 0; j < train.dim(); ++j) {
    double sum = 0.0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < train.n(); ++i) {
      if (!train.masked(i, j)) {
        sum += train.x.at(i, j);
        ++cnt;
      }
    }
    means[j] = sum / static_cast<double>(cnt);
  }
  return means;
}

}  // namespace

ImputeStrategy impute_strategy_from_name(const std::string& name) {
  if (name == "none" || name == "identity" || name == "neumiss") {
    return ImputeStrategy::None;
  }
  if (name == "median") return ImputeStrategy::Median;
  if (name == "knn") return ImputeStrategy::Knn;
  if (name == "iterative" || name == "multiple") return ImputeStrategy::Iterative;
  throw Error("unknown imputation strategy: " + name);
}

std::string impute_strategy_name(ImputeStrategy s) {
  switch (s) {
    case ImputeStrategy::None: return "none";
    case ImputeStrategy::Median: return "median";
    case ImputeStrategy::Knn: return "knn";
    case ImputeStrategy::Iterative: return "iterative";
  }
  return "?";
}

Imputer::Imputer(ImputerConfig cfg) : cfg_(cfg) {
  if (cfg_.knn_k < 1) throw Error("imputer: knn_k must be >= 1");
  if (cfg_.max_iter < 1) throw Error("imputer: max_iter must be >= 1");
  if (!(cfg_.ridge_alpha >= 0.0)) throw Error("imputer: ridge_alpha must be >= 0");
}

void Imputer::fit(const Dataset& train) {
  dim_ = train.dim();
  if (cfg_.strategy != ImputeStrategy::None) {
    if (train.n() == 0) throw Error("imputer fit: empty training set");
    require_observed_columns(train);
  }
  switch (cfg_.strategy) {
    case ImputeStrategy::None: break;
    case ImputeStrategy::Median: fit_median(train); break;
    case ImputeStrategy::Knn: fit_knn(train); break;
    case ImputeStrategy::Iterative: fit_iterative(train); break;
  }
  fitted_ = true;
}

void Imputer::fit_median(const Dataset& train) {
  medians_.assign(dim_, 0.0);
  std::vector<double> col;
  for (std::size_t j = 0; j < dim_; ++j) {
    col.clear();
    for (std::size_t i = 0; i < train.n(); ++i) {
      if (!train.masked(i, j)) col.push_back(train.x.at(i, j));
    }
    std::sort(col.begin(), col.end());
    const std::size_t m = col.size();
    medians_[j] = m % 2 == 1 ? col[m / 2] : 0.5 * (col[m / 2 - 1] + col[m / 2]);
  }
}

void Imputer::fit_knn(const Dataset& train) {
  train_x_ = train.x;
  train_mask_ = train.mask;
  col_means_ = observed_column_means(train);
  std_mean_.assign(dim_, 0.0);
  std_scale_.assign(dim_, 1.0);
  if (cfg_.knn_standardize) {
    for (std::size_t j = 0; j < dim_; ++j) {
      double ss = 0.0;
      std::size_t cnt = 0;
      for (std::size_t i = 0; i < train.n(); ++i) {
        if (!train.masked(i, j)) {
          const double dv = train.x.at(i, j) - col_means_[j];
          ss += dv * dv;
          ++cnt;
        }
      }
      std_mean_[j] = col_means_[j];
      const double sd = std::sqrt(ss / static_cast<double>(cnt));
      std_scale_[j] = sd > 0.0 ? sd : 1.0;
    }
  }
}

void Imputer::fit_iterative(const Dataset& train) {
  col_means_ = observed_column_means(train);
  const std::size_t n = train.n();
  const std::size_t d = dim_;

  // Mean-initialized working copy; only missing cells ever change.
  Matrix x = train.x;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (train.masked(i, j)) x.at(i, j) = col_means_[j];
    }
  }

  double obs_min = std::numeric_limits<double>::infinity();
  double obs_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (!train.masked(i, j)) {
        obs_min = std::min(obs_min, train.x.at(i, j));
        obs_max = std::max(obs_max, train.x.at(i, j));
      }
    }
  }
  const double threshold = cfg_.tol * (obs_max - obs_min);

  coef_ = Matrix(d, d > 1 ? d - 1 : 1);
  intercept_.assign(d, 0.0);
  converged_ = false;
  cycles_ = 0;

  const std::size_t p = d > 1 ? d - 1 : 0;
  Matrix ztz(p, p);
  std::vector<double> zty(p), zbar(p), w(p), zrow(p);

  for (int cycle = 1; cycle <= cfg_.max_iter; ++cycle) {
    cycles_ = cycle;
    double max_change = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      // Regress column j's observed entries on the other columns' current
      // values; ridge on centered covariates, unpenalized intercept.
      double ybar = 0.0;
      std::size_t n_obs = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!train.masked(i, j)) {
          ybar += train.x.at(i, j);
          ++n_obs;
        }
      }
      ybar /= static_cast<double>(n_obs);

      if (p == 0) {
        intercept_[j] = ybar;
      } else {
        std::fill(zbar.begin(), zbar.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
          if (train.masked(i, j)) continue;
          std::size_t c = 0;
          for (std::size_t k = 0; k < d; ++k) {
            if (k != j) zbar[c++] += x.at(i, k);
          }
        }
        for (auto& v : zbar) v /= static_cast<double>(n_obs);

        std::fill(ztz.data.begin(), ztz.data.end(), 0.0);
        std::fill(zty.begin(), zty.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
          if (train.masked(i, j)) continue;
          std::size_t c = 0;
          for (std::size_t k = 0; k < d; ++k) {
            if (k != j) {
              zrow[c] = x.at(i, k) - zbar[c];
              ++c;
            }
          }
          const double yv = train.x.at(i, j) - ybar;
          for (std::size_t a = 0; a < p; ++a) {
            zty[a] += zrow[a] * yv;
            for (std::size_t b = 0; b <= a; ++b) ztz.at(a, b) += zrow[a] * zrow[b];
          }
        }
        for (std::size_t a = 0; a < p; ++a) {
          for (std::size_t b = a + 1; b < p; ++b) ztz.at(a, b) = ztz.at(b, a);
          ztz.at(a, a) += cfg_.ridge_alpha;
        }
        Matrix chol = ztz;
        if (!linalg::cholesky(chol)) {
          throw Error("iterative imputer: singular normal equations for column " +
                      std::to_string(j));
        }
        w = linalg::cholesky_solve(chol, zty);
        double b0 = ybar;
        for (std::size_t a = 0; a < p; ++a) b0 -= w[a] * zbar[a];
        std::copy(w.begin(), w.end(), coef_.row(j));
        intercept_[j] = b0;
      }

      // Overwrite this column's missing entries with predictions.
      for (std::size_t i = 0; i < n; ++i) {
        if (!train.masked(i, j)) continue;
        double pred = intercept_[j];
        if (p > 0) {
          std::size_t c = 0;
          for (std::size_t k = 0; k < d; ++k) {
            if (k != j) pred += coef_.at(j, c++) * x.at(i, k);
          }
        }
        max_change = std::max(max_change, std::abs(pred - x.at(i, j)));
        x.at(i, j) = pred;
      }
    }
    if (max_change <= threshold) {
      converged_ = true;
      break;
    }
  }
}

Dataset Imputer::transform(const Dataset& ds) const {
  if (!fitted_) throw Error("imputer: transform before fit");
  if (cfg_.strategy == ImputeStrategy::None) return ds;
  if (ds.dim() != dim_) throw Error("imputer: column count mismatch");

  Dataset out = ds;
  const std::size_t d = dim_;
  switch (cfg_.strategy) {
    case ImputeStrategy::None:
      break;
    case ImputeStrategy::Median:
      for (std::size_t i = 0; i < ds.n(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          if (ds.masked(i, j)) out.x.at(i, j) = medians_[j];
        }
      }
      break;
    case ImputeStrategy::Knn:
      for (std::size_t i = 0; i < ds.n(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          if (ds.masked(i, j)) out.x.at(i, j) = knn_fill(ds, i, j);
        }
      }
      break;
    case ImputeStrategy::Iterative:
      for (std::size_t i = 0; i < ds.n(); ++i) {
        bool any = false;
        for (std::size_t j = 0; j < d; ++j) {
          if (ds.masked(i, j)) {
            out.x.at(i, j) = col_means_[j];  // mean init
            any = true;
          }
        }
        if (!any) continue;
        // One round-robin refinement with the train-fitted regressions.
        for (std::size_t j = 0; j < d; ++j) {
          if (!ds.masked(i, j)) continue;
          double pred = intercept_[j];
          if (d > 1) {
            std::size_t c = 0;
            for (std::size_t k = 0; k < d; ++k) {
              if (k != j) pred += coef_.at(j, c++) * out.x.at(i, k);
            }
          }
          out.x.at(i, j) = pred;
        }
      }
      break;
  }
  std::fill(out.mask.begin(), out.mask.end(), 0);
  return out;
}

double Imputer::knn_fill(const Dataset& ds, std::size_t row, std::size_t col) const {
  const std::size_t d = dim_;
  const std::size_t n_train = train_x_.rows;
  const double dd = static_cast<double>(d);
  // (distance, train row) for candidate donors: column observed, >=1 shared
  // coordinate with the query row.
  std::vector<std::pair<double, std::size_t>> cand;
  for (std::size_t r = 0; r < n_train; ++r) {
    if (train_mask_[r * d + col] != 0) continue;
    double ss = 0.0;
    std::size_t shared = 0;
    for (std::size_t k = 0; k < d; ++k) {
      if (ds.masked(row, k) || train_mask_[r * d + k] != 0) continue;
      double a = ds.x.at(row, k);
      double b = train_x_.at(r, k);
      if (cfg_.knn_standardize) {
        a = (a - std_mean_[k]) / std_scale_[k];
        b = (b - std_mean_[k]) / std_scale_[k];
      }
      ss += (a - b) * (a - b);
      ++shared;
    }
    if (shared == 0) continue;
    cand.emplace_back(std::sqrt(ss * dd / static_cast<double>(shared)), r);
  }
  if (cand.empty()) {
    ++fallback_count_;
    std::cerr << "survbench: knn imputer fell back to the column mean (row "
              << row << ", column " << col << ")\n";
    return col_means_[col];
  }
  const std::size_t k = std::min<std::size_t>(cand.size(), cfg_.knn_k);
  std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += train_x_.at(cand[i].second, col);
  return sum / static_cast<double>(k);
}

std::vector<double> Imputer::state_fingerprint() const {
  std::vector<double> fp;
  fp.push_back(static_cast<double>(cfg_.strategy));
  fp.push_back(fitted_ ? 1.0 : 0.0);
  auto append = [&fp](const std::vector<double>& v) {
    fp.insert(fp.end(), v.begin(), v.end());
  };
  append(medians_);
  append(col_means_);
  fp.insert(fp.end(), train_x_.data.begin(), train_x_.data.end());
  for (const auto m : train_mask_) fp.push_back(m);
  append(std_mean_);
  append(std_scale_);
  fp.insert(fp.end(), coef_.data.begin(), coef_.data.end());
  append(intercept_);
  return fp;
}

}  // namespace survbench
