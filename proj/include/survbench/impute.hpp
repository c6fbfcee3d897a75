#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "survbench/dataset.hpp"

namespace survbench {

// None is the pass-through used for the no-missing baseline and for the
// neumiss pseudo-strategy (the mask travels through untouched).
enum class ImputeStrategy { None, Median, Knn, Iterative };

ImputeStrategy impute_strategy_from_name(const std::string& name);
std::string impute_strategy_name(ImputeStrategy s);

struct ImputerConfig {
  ImputeStrategy strategy = ImputeStrategy::Median;
  int knn_k = 10;
  // Standardize by train-column mean/sd before the KNN distance; the raw
  // variant is kept behind this flag.
  bool knn_standardize = true;
  int max_iter = 30;
  double tol = 1e-2;
  double ridge_alpha = 1e-3;
};

// Fit-on-train / transform-anywhere. All fitted state derives from the
// training rows only; transform never alters observed entries and returns a
// complete dataset (mask all-false), except for the None pass-through.
class Imputer {
 public:
  explicit Imputer(ImputerConfig cfg = {});

  void fit(const Dataset& train);
  Dataset transform(const Dataset& ds) const;

  bool fitted() const { return fitted_; }
  const ImputerConfig& config() const { return cfg_; }

  // Flat copy of every fitted number; bitwise-compared by the leakage tests.
  std::vector<double> state_fingerprint() const;

  const std::vector<double>& column_medians() const { return medians_; }
  const std::vector<double>& column_means() const { return col_means_; }
  int iterative_cycles() const { return cycles_; }
  bool iterative_converged() const { return converged_; }
  // KNN rows that fell back to the column mean during transforms.
  std::size_t fallback_count() const { return fallback_count_; }

 private:
  void fit_median(const Dataset& train);
  void fit_knn(const Dataset& train);
  void fit_iterative(const Dataset& train);
  double knn_fill(const Dataset& ds, std::size_t row, std::size_t col) const;

  ImputerConfig cfg_;
  bool fitted_ = false;
  std::size_t dim_ = 0;

  std::vector<double> medians_;
  std::vector<double> col_means_;

  // KNN: retained training matrix and distance standardization.
  Matrix train_x_;
  std::vector<std::uint8_t> train_mask_;
  std::vector<double> std_mean_;
  std::vector<double> std_scale_;

  // Iterative: per-column ridge fit (coefficients over the other columns in
  // index order, plus intercept).
  Matrix coef_;
  std::vector<double> intercept_;
  int cycles_ = 0;
  bool converged_ = false;

  mutable std::size_t fallback_count_ = 0;
};

}  // namespace survbench
