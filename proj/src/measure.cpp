#include "doeblin/measure.hpp"

#include <sstream>

namespace doeblin {

void CountingMeasure::add(State x, std::int64_t count) {
  if (count == 0) return;
  auto it = counts_.find(x);
  if (it == counts_.end()) {
    counts_.emplace(x, count);
    return;
  }
  it->second += count;
  if (it->second == 0) counts_.erase(it);
}

std::int64_t CountingMeasure::at(State x) const {
  auto it = counts_.find(x);
  return it == counts_.end() ? 0 : it->second;
}

std::int64_t CountingMeasure::total_mass() const {
  std::int64_t total = 0;
  for (auto& [x, c] : counts_) total += c;
  return total;
}

CountingMeasure CountingMeasure::restricted(State bound) const {
  CountingMeasure r;
  for (auto& [x, c] : counts_) {
    if (x <= bound) r.add(x, c);
  }
  return r;
}

std::string CountingMeasure::to_json() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (auto& [x, c] : counts_) {
    if (!first) os << ',';
    first = false;
    os << "{\"state\":" << x << ",\"count\":" << c << '}';
  }
  os << ']';
  return os.str();
}

std::string CountingMeasure::to_csv() const {
  std::ostringstream os;
  os << "state,count\n";
  for (auto& [x, c] : counts_) os << x << ',' << c << '\n';
  return os.str();
}

CountingMeasure taboo_step(const CountingMeasure& m, const ChainModel& model,
                           const NoiseField& noise, std::int64_t t) {
  const State s = model.reference_state();
  CountingMeasure out;
  for (auto& [x, c] : m.counts()) {
    const State y = step(model, x, noise.at(t, x));
    if (y != s) out.add(y, c);
  }
  out.add(s, 1);
  return out;
}

CountingMeasure potential_step(const CountingMeasure& m, const ChainModel& model,
                               const NoiseField& noise, std::int64_t t) {
  CountingMeasure out;
  for (auto& [x, c] : m.counts()) out.add(step(model, x, noise.at(t, x)), c);
  out.add(model.reference_state(), 1);
  return out;
}

CountingMeasure iterate_dynamics(CountingMeasure m0, PPKind kind, const ChainModel& model,
                                 const NoiseField& noise, std::int64_t t0, std::int64_t n_steps) {
  for (std::int64_t i = 0; i < n_steps; ++i) {
    m0 = kind == PPKind::taboo ? taboo_step(m0, model, noise, t0 + i)
                               : potential_step(m0, model, noise, t0 + i);
  }
  return m0;
}

}  // namespace doeblin
