#include "survbench/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace survbench {
namespace {

struct TimeGroup {
  double time;
  std::size_t at_risk;
  std::size_t events;
};

// Distinct observed times with event counts and at-risk sizes, ascending.
std::vector<TimeGroup> time_groups(std::span<const SurvivalOutcome> outcomes,
                                   bool count_censorings_as_events) {
  std::vector<const SurvivalOutcome*> sorted;
  sorted.reserve(outcomes.size());
  for (const auto& o : outcomes) sorted.push_back(&o);
  std::sort(sorted.begin(), sorted.end(),
            [](const SurvivalOutcome* a, const SurvivalOutcome* b) {
              return a->time < b->time;
            });
  std::vector<TimeGroup> groups;
  std::size_t i = 0;
  const std::size_t n = sorted.size();
  while (i < n) {
    const double t = sorted[i]->time;
    std::size_t events = 0;
    std::size_t j = i;
    while (j < n && sorted[j]->time == t) {
      const bool ev = count_censorings_as_events ? !sorted[j]->event
                                                 : sorted[j]->event;
      events += ev ? 1 : 0;
      ++j;
    }
    groups.push_back({t, n - i, events});
    i = j;
  }
  return groups;
}

StepFunction km_from_groups(const std::vector<TimeGroup>& groups) {
  StepFunction f;
  f.initial_value = 1.0;
  double s = 1.0;
  for (const auto& g : groups) {
    if (g.events == 0) continue;
    s *= 1.0 - static_cast<double>(g.events) / static_cast<double>(g.at_risk);
    f.times.push_back(g.time);
    f.values.push_back(s);
  }
  return f;
}

}  // namespace

double StepFunction::operator()(double t) const {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return initial_value;
  return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

std::vector<KmRow> kaplan_meier_table(std::span<const SurvivalOutcome> outcomes) {
  if (outcomes.empty()) throw Error("kaplan_meier: empty outcome list");
  std::vector<KmRow> rows;
  double s = 1.0;
  for (const auto& g : time_groups(outcomes, false)) {
    if (g.events == 0) continue;
    s *= 1.0 - static_cast<double>(g.events) / static_cast<double>(g.at_risk);
    rows.push_back({g.time, s, g.at_risk, g.events});
  }
  return rows;
}

StepFunction kaplan_meier(std::span<const SurvivalOutcome> outcomes) {
  if (outcomes.empty()) throw Error("kaplan_meier: empty outcome list");
  return km_from_groups(time_groups(outcomes, false));
}

StepFunction nelson_aalen(std::span<const SurvivalOutcome> outcomes) {
  if (outcomes.empty()) throw Error("nelson_aalen: empty outcome list");
  StepFunction f;
  f.initial_value = 0.0;
  double h = 0.0;
  for (const auto& g : time_groups(outcomes, false)) {
    if (g.events == 0) continue;
    h += static_cast<double>(g.events) / static_cast<double>(g.at_risk);
    f.times.push_back(g.time);
    f.values.push_back(h);
  }
  return f;
}

StepFunction censoring_kaplan_meier(std::span<const SurvivalOutcome> outcomes) {
  if (outcomes.empty()) throw Error("censoring_kaplan_meier: empty outcome list");
  return km_from_groups(time_groups(outcomes, true));
}

double harrell_c(std::span<const double> risks,
                 std::span<const SurvivalOutcome> outcomes) {
  const std::size_t n = outcomes.size();
  if (risks.size() != n) throw Error("harrell_c: size mismatch");
  if (n < 2) throw Error("harrell_c: need at least 2 rows");
  double weight = 0.0;
  std::size_t comparable = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!outcomes[i].event) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const bool usable =
          outcomes[i].time < outcomes[j].time ||
          (outcomes[i].time == outcomes[j].time && !outcomes[j].event);
      if (!usable) continue;
      ++comparable;
      if (risks[i] > risks[j]) {
        weight += 1.0;
      } else if (risks[i] == risks[j]) {
        weight += 0.5;
      }
    }
  }
  if (comparable == 0) {
    throw Error("harrell_c: no comparable pairs (uninformative test fold)");
  }
  return weight / static_cast<double>(comparable);
}

double uno_c(std::span<const double> risks,
             std::span<const SurvivalOutcome> test_outcomes,
             std::span<const SurvivalOutcome> train_outcomes, double tau) {
  const std::size_t n = test_outcomes.size();
  if (risks.size() != n) throw Error("uno_c: size mismatch");
  if (n < 2) throw Error("uno_c: need at least 2 rows");
  if (!(tau > 0.0)) throw Error("uno_c: tau must be > 0");
  const StepFunction g = censoring_kaplan_meier(train_outcomes);
  double num = 0.0;
  double den = 0.0;
  std::size_t comparable = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!test_outcomes[i].event) continue;
    const double ti = test_outcomes[i].time;
    if (!(ti < tau)) continue;
    double w = 0.0;  // weight resolved lazily: only comparable i need G(t_i)
    bool w_ready = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !(ti < test_outcomes[j].time)) continue;
      if (!w_ready) {
        const double gi = g(ti);
        if (!(gi > 0.0)) {
          throw Error("uno_c: censoring survival estimate is 0 at a needed time");
        }
        w = 1.0 / (gi * gi);
        w_ready = true;
      }
      ++comparable;
      den += w;
      if (risks[i] > risks[j]) {
        num += w;
      } else if (risks[i] == risks[j]) {
        num += 0.5 * w;
      }
    }
  }
  if (comparable == 0) {
    throw Error("uno_c: no comparable pairs (uninformative test fold)");
  }
  return num / den;
}

}  // namespace survbench
