#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "doeblin/bridge.hpp"
#include "doeblin/chain.hpp"
#include "doeblin/distribution.hpp"

namespace doeblin {

/// Eternal family forest on an integer window: vertex i carries one outgoing
/// edge to i + edge_length[i], with i.i.d. lengths >= 1.
struct EffGraph {
  std::int64_t lo = 0, hi = 0;  // vertices lo..hi inclusive
  std::vector<std::int64_t> edge_length;

  std::int64_t length_at(std::int64_t i) const { return edge_length[size_t(i - lo)]; }
  std::int64_t target_of(std::int64_t i) const { return i + length_at(i); }
  std::int64_t vertex_count() const { return hi - lo + 1; }
};

EffGraph sample_eff(const JumpDistribution& dist, std::int64_t lo, std::int64_t hi,
                    const NoiseField& noise);

/// Recurrence-time EFF coupled to a renewal Bridge Graph: the edge at t has
/// length (bridge jump at t) + 1, which equals the first-return time of the
/// path started at (t, s*).
EffGraph couple_bridge_eft(const BridgeGraph& bridge);

/// Edges (i, i + eta_i) with i < 0 < i + eta_i.
std::vector<std::pair<std::int64_t, std::int64_t>> flying_edges(const EffGraph& eff);

/// One step of the one-sided anti-symmetric oscillating walk: from z < 0 the
/// walk jumps up by eta ~ q, from z >= 0 down by eta.
std::int64_t oscillating_step(const JumpDistribution& q, std::int64_t z, double u);

struct MeetingResult {
  double frequency = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  std::int64_t trials = 0;
};

/// Fraction of trials in which the oscillating walk started at z0 hits 0
/// within the horizon (equivalently: two coupled renewal walks at initial
/// separation z0 meet).
MeetingResult meeting_experiment(const JumpDistribution& dist, std::int64_t z0,
                                 std::int64_t horizon, std::int64_t trials, std::uint64_t seed);

/// Number of window vertices whose forward orbit reaches `vertex`, censored
/// at cap. The result carries a censoring flag.
struct DescendantCount {
  std::int64_t count = 0;
  bool censored = false;
};
DescendantCount descendant_count(const EffGraph& eff, std::int64_t vertex, std::int64_t cap);

}  // namespace doeblin
