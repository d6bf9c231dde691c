#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "doeblin/chain.hpp"

namespace doeblin {

/// Sparse integer-valued measure on the state space; zero entries are pruned.
class CountingMeasure {
 public:
  CountingMeasure() = default;

  void add(State x, std::int64_t count);
  std::int64_t at(State x) const;
  std::int64_t total_mass() const;
  bool empty() const { return counts_.empty(); }
  std::size_t support_size() const { return counts_.size(); }

  const std::map<State, std::int64_t>& counts() const { return counts_; }

  /// Entries with state > bound removed.
  CountingMeasure restricted(State bound) const;

  bool operator==(const CountingMeasure&) const = default;

  /// JSON array of sorted {"state":..,"count":..} objects.
  std::string to_json() const;
  /// CSV body, one "state,count" row per atom, sorted by state.
  std::string to_csv() const;

  static CountingMeasure delta(State x) {
    CountingMeasure m;
    m.add(x, 1);
    return m;
  }

 private:
  std::map<State, std::int64_t> counts_;
};

enum class PPKind { taboo, potential };

/// One step of the Taboo Dynamics: push every unit through the chain,
/// drop whatever lands on s*, then set mass at s* to 1.
CountingMeasure taboo_step(const CountingMeasure& m, const ChainModel& model,
                           const NoiseField& noise, std::int64_t t);

/// One step of the Potential Dynamics: push every unit through the chain,
/// then add one unit at s*.
CountingMeasure potential_step(const CountingMeasure& m, const ChainModel& model,
                               const NoiseField& noise, std::int64_t t);

CountingMeasure iterate_dynamics(CountingMeasure m0, PPKind kind, const ChainModel& model,
                                 const NoiseField& noise, std::int64_t t0, std::int64_t n_steps);

}  // namespace doeblin
