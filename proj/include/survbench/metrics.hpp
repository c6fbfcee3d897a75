#pragma once

#include <span>
#include <vector>

#include "survbench/dataset.hpp"

namespace survbench {

// Right-continuous step function: value(t) is the value attached to the last
// breakpoint <= t, and initial_value before the first breakpoint.
struct StepFunction {
  std::vector<double> times;   // strictly increasing
  std::vector<double> values;
  double initial_value = 0.0;

  double operator()(double t) const;
};

struct KmRow {
  double time = 0.0;       // distinct event time
  double survival = 0.0;   // S(t) just after the events at this time
  std::size_t at_risk = 0;
  std::size_t events = 0;
};

// Kaplan-Meier survival estimate; rows censored at t stay in the risk set
// for the events at t.
std::vector<KmRow> kaplan_meier_table(std::span<const SurvivalOutcome> outcomes);
StepFunction kaplan_meier(std::span<const SurvivalOutcome> outcomes);

// Nelson-Aalen cumulative hazard.
StepFunction nelson_aalen(std::span<const SurvivalOutcome> outcomes);

// Kaplan-Meier estimate of the censoring distribution G(t) = P(C > t),
// i.e. the usual estimator with event and censoring roles swapped.
StepFunction censoring_kaplan_meier(std::span<const SurvivalOutcome> outcomes);

// Harrell's concordance. Comparable ordered pairs (i,j): t_i < t_j with
// event_i, plus t_i == t_j with event_i and not event_j. Concordant pairs
// (risk_i > risk_j) score 1, tied risks score 1/2. Throws when no pair is
// comparable (uninformative fold).
double harrell_c(std::span<const double> risks,
                 std::span<const SurvivalOutcome> outcomes);

// Uno's IPCW concordance. Pairs restricted to t_i < min(t_j, tau) with
// event_i, weighted by 1 / G(t_i)^2 where G is the censoring Kaplan-Meier
// fitted on the training outcomes.
double uno_c(std::span<const double> risks,
             std::span<const SurvivalOutcome> test_outcomes,
             std::span<const SurvivalOutcome> train_outcomes, double tau);

}  // namespace survbench
