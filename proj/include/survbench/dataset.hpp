#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "survbench/common.hpp"

namespace survbench {

// Observed follow-up: time = min(T, C), event = 1{T < C}.
struct SurvivalOutcome {
  double time = 0.0;
  bool event = false;
};

// Censored-survival dataset with an explicit missingness mask. A cell whose
// mask entry is set holds the NaN poison and must never reach a learner or
// metric; group labels are simulation ground truth and are kept out of every
// model's feature view.
struct Dataset {
  Matrix x;                           // n x d covariates
  std::vector<std::uint8_t> mask;     // n x d, 1 = missing
  std::vector<SurvivalOutcome> outcomes;
  std::vector<int> groups;            // empty when absent

  std::size_t n() const { return x.rows; }
  std::size_t dim() const { return x.cols; }
  bool has_groups() const { return !groups.empty(); }

  bool masked(std::size_t i, std::size_t j) const {
    return mask[i * x.cols + j] != 0;
  }
  double value(std::size_t i, std::size_t j) const {
    assert(!masked(i, j) && "read of a masked cell");
    return x.at(i, j);
  }

  bool complete() const;
  std::size_t missing_count() const;

  // Overwrites every masked cell with the poison value.
  void poison_masked();
  // Validates shape consistency and outcome positivity; throws Error.
  void check() const;
};

Dataset make_dataset(Matrix x, std::vector<std::uint8_t> mask,
                     std::vector<SurvivalOutcome> outcomes,
                     std::vector<int> groups = {});

// Row subset in the given order; preserves columns, mask and outcome pairing.
Dataset dataset_split(const Dataset& ds, std::span<const std::size_t> indices);
Dataset dataset_concat(const Dataset& a, const Dataset& b);

struct ColumnStats {
  double mean = 0.0;
  double sd = 0.0;  // population convention (divide by n_observed)
  std::size_t n_observed = 0;
};

// Mean and sd over the observed entries of column j. Fewer than two observed
// entries is a degenerate column.
ColumnStats column_stats(const Dataset& ds, std::size_t j);

// CSV with header x0..x{d-1},time,event[,group]; missing entries are empty
// fields, event is 0/1. Values carry 17 significant digits so that the
// round-trip is bit-exact.
std::string to_csv(const Dataset& ds);
Dataset from_csv_text(const std::string& text);
void write_csv(const Dataset& ds, const std::string& path);
Dataset read_csv(const std::string& path);

}  // namespace survbench
