#pragma once

#include <cstdint>
#include <string>

#include "survbench/dataset.hpp"
#include "survbench/rng.hpp"

namespace survbench {

enum class Mechanism { Mcar, SelfMasking };

// One amputation scenario. MCAR uses p, self-masking uses tau; a default
// constructed value of the unused field is required.
struct AmputationSpec {
  Mechanism mechanism = Mechanism::Mcar;
  double p = 0.0;
  double tau = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

Mechanism mechanism_from_name(const std::string& name);
std::string mechanism_name(Mechanism m);

// Masks each not-yet-missing covariate cell independently with probability p;
// outcomes are never masked. Per-row child streams of rng.
Dataset ampute_mcar(const Dataset& ds, double p, SeededRng& rng);

// MNAR self-masking: cell (i,j) becomes missing iff |x_ij - mean_j| >
// tau * sd_j, with mean/sd over the currently observed entries of column j
// (population sd). Deterministic; a zero-sd column is degenerate.
Dataset ampute_self_masking(const Dataset& ds, double tau);

Dataset ampute(const Dataset& ds, const AmputationSpec& spec);

// count(masked) / (n*d)
double missing_fraction(const Dataset& ds);

}  // namespace survbench
