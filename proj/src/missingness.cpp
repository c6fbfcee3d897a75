#include "survbench/missingness.hpp"

#include <cmath>

namespace survbench {

void AmputationSpec::validate() const {
  if (mechanism == Mechanism::Mcar) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error("amputation: p must be in [0,1]");
    if (tau != 0.0) throw Error("amputation: tau set for MCAR");
  } else {
    if (!(tau > 0.0)) throw Error("amputation: tau must be > 0");
    if (p != 0.0) throw Error("amputation: p set for self-masking");
  }
}

Mechanism mechanism_from_name(const std::string& name) {
  if (name == "mcar") return Mechanism::Mcar;
  if (name == "selfmask" || name == "self-masking" || name == "mnar") {
    return Mechanism::SelfMasking;
  }
  throw Error("unknown missingness mechanism: " + name);
}

std::string mechanism_name(Mechanism m) {
  return m == Mechanism::Mcar ? "mcar" : "selfmask";
}

Dataset ampute_mcar(const Dataset& ds, double p, SeededRng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("ampute_mcar: p must be in [0,1]");
  Dataset out = ds;
  const std::size_t d = ds.dim();
  for (std::size_t i = 0; i < ds.n(); ++i) {
    SeededRng row = rng.child(i);
    for (std::size_t j = 0; j < d; ++j) {
      const bool hit = row.bernoulli(p);  // one draw per cell, masked or not
      if (hit && !out.masked(i, j)) out.mask[i * d + j] = 1;
    }
  }
  out.poison_masked();
  return out;
}

Dataset ampute_self_masking(const Dataset& ds, double tau) {
  if (!(tau > 0.0)) throw Error("ampute_self_masking: tau must be > 0");
  Dataset out = ds;
  const std::size_t d = ds.dim();
  for (std::size_t j = 0; j < d; ++j) {
    const auto stats = column_stats(ds, j);
    if (stats.sd == 0.0) {
      throw Error("ampute_self_masking: degenerate column " + std::to_string(j) +
                  " with zero sd");
    }
    const double cut = tau * stats.sd;
    for (std::size_t i = 0; i < ds.n(); ++i) {
      if (!ds.masked(i, j) && std::abs(ds.x.at(i, j) - stats.mean) > cut) {
        out.mask[i * d + j] = 1;
      }
    }
  }
  out.poison_masked();
  return out;
}

Dataset ampute(const Dataset& ds, const AmputationSpec& spec) {
  spec.validate();
  if (spec.mechanism == Mechanism::Mcar) {
    SeededRng rng(spec.seed, stream_tag("ampute.mcar"));
    return ampute_mcar(ds, spec.p, rng);
  }
  return ampute_self_masking(ds, spec.tau);
}

double missing_fraction(const Dataset& ds) {
  if (ds.n() == 0 || ds.dim() == 0) {
    throw Error("missing_fraction: empty dataset");
  }
  return static_cast<double>(ds.missing_count()) /
         static_cast<double>(ds.n() * ds.dim());
}

}  // namespace survbench
