#include "doeblin/eft.hpp"

#include <cmath>
#include <deque>

#include "doeblin/errors.hpp"

namespace doeblin {

EffGraph sample_eff(const JumpDistribution& dist, std::int64_t lo, std::int64_t hi,
                    const NoiseField& noise) {
  if (lo > hi) throw UsageError("sample_eff: empty window");
  EffGraph g;
  g.lo = lo;
  g.hi = hi;
  g.edge_length.reserve(size_t(hi - lo) + 1);
  for (std::int64_t i = lo; i <= hi; ++i)
    g.edge_length.push_back(sample_jump(dist, noise.component(i, 0, 0)));
  return g;
}

EffGraph couple_bridge_eft(const BridgeGraph& bridge) {
  if (bridge.model().kind() != ChainModel::Kind::renewal)
    throw UsageError("couple_bridge_eft: renewal bridge required");
  const State s_star = bridge.model().reference_state();
  EffGraph g;
  g.lo = bridge.t_min();
  g.hi = bridge.t_max() - 1;
  g.edge_length.reserve(size_t(g.hi - g.lo) + 1);
  for (std::int64_t t = g.lo; t <= g.hi; ++t) {
    const State jump_state = bridge.column(t).at(s_star).next;
    g.edge_length.push_back(jump_state + 1);
  }
  return g;
}

std::vector<std::pair<std::int64_t, std::int64_t>> flying_edges(const EffGraph& eff) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t i = eff.lo; i <= std::min<std::int64_t>(eff.hi, -1); ++i) {
    const std::int64_t target = eff.target_of(i);
    if (target > 0) out.emplace_back(i, target);
  }
  return out;
}

std::int64_t oscillating_step(const JumpDistribution& q, std::int64_t z, double u) {
  const std::int64_t jump = sample_jump(q, u);
  return z < 0 ? z + jump : z - jump;
}

MeetingResult meeting_experiment(const JumpDistribution& dist, std::int64_t z0,
                                 std::int64_t horizon, std::int64_t trials, std::uint64_t seed) {
  if (z0 <= 0) throw UsageError("meeting_experiment: z0 must be > 0");
  if (trials < 1) throw UsageError("meeting_experiment: trials must be >= 1");
  const NoiseField noise(seed, Coupling::totally_independent, 1);
  std::int64_t hits = 0;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    std::int64_t z = z0;
    for (std::int64_t n = 0; n < horizon; ++n) {
      z = oscillating_step(dist, z, noise.component(n, trial, 0));
      if (z == 0) {
        ++hits;
        break;
      }
    }
  }
  MeetingResult r;
  r.trials = trials;
  r.frequency = double(hits) / double(trials);
  const double half = 1.959963985 * std::sqrt(r.frequency * (1.0 - r.frequency) / double(trials));
  r.ci_low = std::max(0.0, r.frequency - half);
  r.ci_high = std::min(1.0, r.frequency + half);
  return r;
}

DescendantCount descendant_count(const EffGraph& eff, std::int64_t vertex, std::int64_t cap) {
  if (vertex < eff.lo || vertex > eff.hi) throw UsageError("descendant_count: vertex outside window");
  // reverse adjacency within the window
  std::vector<std::vector<std::int64_t>> incoming(size_t(eff.hi - eff.lo) + 1);
  for (std::int64_t i = eff.lo; i <= eff.hi; ++i) {
    const std::int64_t t = eff.target_of(i);
    if (t >= eff.lo && t <= eff.hi) incoming[size_t(t - eff.lo)].push_back(i);
  }
  DescendantCount dc;
  std::deque<std::int64_t> frontier{vertex};
  while (!frontier.empty()) {
    const std::int64_t v = frontier.front();
    frontier.pop_front();
    for (std::int64_t pred : incoming[size_t(v - eff.lo)]) {
      if (++dc.count >= cap) {
        dc.count = cap;
        dc.censored = true;
        return dc;
      }
      frontier.push_back(pred);
    }
  }
  return dc;
}

}  // namespace doeblin
