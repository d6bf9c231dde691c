#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "doeblin/chain.hpp"
#include "doeblin/measure.hpp"

namespace doeblin {

/// One trajectory started from (start, s*), truncated at the horizon.
/// states[k] is the state at time start + k; states[0] == s*.
struct Path {
  std::int64_t start = 0;
  std::vector<State> states;
  std::optional<std::int64_t> first_return;  // absolute time of first return to s*

  State at(std::int64_t t) const { return states[size_t(t - start)]; }
};

Path trace_path(const ChainModel& model, const NoiseField& noise, std::int64_t start,
                std::int64_t horizon);

/// Windowed Bridge Graph: the union of the paths from (t, s*) for every
/// t in [t_min, t_max), truncated at t_max. Storage is column-sparse and
/// coalesced paths share their common suffix. Each interior vertex has
/// exactly one outgoing edge (to the next column).
class BridgeGraph {
 public:
  struct Vertex {
    State next = 0;
    bool has_next = false;
    std::int64_t starts_through = 0;  // window starts whose path passes here
    std::optional<std::int64_t> first_axis_time;  // min u >= t with the forward orbit at s*
  };

  std::int64_t t_min() const { return t_min_; }
  std::int64_t t_max() const { return t_max_; }
  const ChainModel& model() const { return model_; }
  const NoiseField& noise() const { return noise_; }

  const std::map<State, Vertex>& column(std::int64_t t) const;
  bool occupied(std::int64_t t, State x) const;
  std::size_t vertex_count() const;

  /// State of the path started at (s, s*) at time t (s <= t <= t_max),
  /// following the stored out-edges.
  State path_state(std::int64_t s, std::int64_t t) const;
  /// First return of that path to s* (absolute time), if within the window.
  std::optional<std::int64_t> path_first_return(std::int64_t s) const;

  /// CSV rows: time,state,parent_time,parent_state,n_starts_through,taboo_flag.
  std::string export_csv() const;

  friend BridgeGraph build_bridge(const ChainModel&, const NoiseField&, std::int64_t,
                                  std::int64_t, std::size_t);

 private:
  BridgeGraph(ChainModel model, NoiseField noise, std::int64_t t_min, std::int64_t t_max)
      : model_(std::move(model)), noise_(noise), t_min_(t_min), t_max_(t_max) {}

  std::map<State, Vertex>& col(std::int64_t t) { return cols_[size_t(t - t_min_)]; }

  ChainModel model_;
  NoiseField noise_;
  std::int64_t t_min_, t_max_;
  std::vector<std::map<State, Vertex>> cols_;
};

BridgeGraph build_bridge(const ChainModel& model, const NoiseField& noise, std::int64_t t_min,
                         std::int64_t t_max, std::size_t max_vertices = 50'000'000);

std::set<State> s_set(const BridgeGraph& bridge, std::int64_t at);

/// Windowed taboo/potential multiplicities at a column, by brute-force
/// per-start path inspection over the stored graph.
CountingMeasure multiplicities(const BridgeGraph& bridge, std::int64_t at, PPKind kind);

/// Same multiplicities computed by walking every path directly from the
/// noise field, without materializing a graph. Equivalent to
/// multiplicities(build_bridge(model, noise, t_min, at+1), at, kind).
CountingMeasure windowed_multiplicities(const ChainModel& model, const NoiseField& noise,
                                        std::int64_t t_min, std::int64_t at, PPKind kind);

struct RecurrenceTimes {
  std::int64_t t0 = 0, t1 = 0;  // starts in [t0, t1)
  struct Entry {
    std::int64_t length;  // first-return time minus start; horizon_cap when censored
    bool censored;
  };
  std::vector<Entry> entries;  // indexed by t - t0

  double mean_uncensored() const;
  double censored_fraction() const;
};

RecurrenceTimes recurrence_times(const ChainModel& model, const NoiseField& noise,
                                 std::int64_t t0, std::int64_t t1, std::int64_t horizon_cap);

}  // namespace doeblin
