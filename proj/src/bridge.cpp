#include "doeblin/bridge.hpp"

#include <sstream>

#include "doeblin/errors.hpp"

namespace doeblin {

Path trace_path(const ChainModel& model, const NoiseField& noise, std::int64_t start,
                std::int64_t horizon) {
  if (start >= horizon) throw UsageError("trace_path: start must precede horizon");
  const State s = model.reference_state();
  Path p;
  p.start = start;
  p.states.reserve(size_t(horizon - start) + 1);
  p.states.push_back(s);
  State x = s;
  for (std::int64_t t = start; t < horizon; ++t) {
    x = step(model, x, noise.at(t, x));
    p.states.push_back(x);
    if (x == s && !p.first_return) p.first_return = t + 1;
  }
  return p;
}

const std::map<State, BridgeGraph::Vertex>& BridgeGraph::column(std::int64_t t) const {
  if (t < t_min_ || t > t_max_) throw UsageError("BridgeGraph: time outside window");
  return cols_[size_t(t - t_min_)];
}

bool BridgeGraph::occupied(std::int64_t t, State x) const {
  return column(t).count(x) > 0;
}

std::size_t BridgeGraph::vertex_count() const {
  std::size_t n = 0;
  for (auto& c : cols_) n += c.size();
  return n;
}

State BridgeGraph::path_state(std::int64_t s, std::int64_t t) const {
  State x = model_.reference_state();
  for (std::int64_t u = s; u < t; ++u) x = column(u).at(x).next;
  return x;
}

std::optional<std::int64_t> BridgeGraph::path_first_return(std::int64_t s) const {
  if (s + 1 > t_max_) return std::nullopt;
  const State x1 = column(s).at(model_.reference_state()).next;
  return cols_[size_t(s + 1 - t_min_)].at(x1).first_axis_time;
}

BridgeGraph build_bridge(const ChainModel& model, const NoiseField& noise, std::int64_t t_min,
                         std::int64_t t_max, std::size_t max_vertices) {
  if (t_min >= t_max) throw UsageError("build_bridge: empty window");
  BridgeGraph g(model, noise, t_min, t_max);
  g.cols_.resize(size_t(t_max - t_min) + 1);
  const State s_star = model.reference_state();
  std::size_t n_vertices = 0;

  for (std::int64_t s = t_min; s < t_max; ++s) {
    State x = s_star;
    for (std::int64_t t = s; t <= t_max; ++t) {
      auto& c = g.col(t);
      auto it = c.find(x);
      if (it != c.end()) break;  // coalesced: suffix already stored
      if (++n_vertices > max_vertices) {
        std::ostringstream os;
        os << "build_bridge: vertex budget exceeded at column t=" << t;
        throw ResourceError(os.str());
      }
      BridgeGraph::Vertex v;
      if (t < t_max) {
        v.next = step(model, x, noise.at(t, x));
        v.has_next = true;
      }
      c.emplace(x, v);
      if (t == t_max) break;
      x = c.at(x).next;
    }
  }

  // starts_through: forward accumulation along the unique out-edges
  for (std::int64_t t = t_min; t < t_max; ++t) {
    auto& c = g.col(t);
    auto it = c.find(s_star);
    if (it != c.end()) it->second.starts_through += 1;  // the start (t, s*)
    for (auto& [x, v] : c) {
      if (v.has_next && v.starts_through > 0)
        g.col(t + 1)[v.next].starts_through += v.starts_through;
    }
  }

  // first_axis_time: backward propagation
  for (std::int64_t t = t_max; t >= t_min; --t) {
    auto& c = g.col(t);
    for (auto& [x, v] : c) {
      if (x == s_star) v.first_axis_time = t;
      else if (v.has_next) v.first_axis_time = g.col(t + 1).at(v.next).first_axis_time;
    }
  }
  return g;
}

std::set<State> s_set(const BridgeGraph& bridge, std::int64_t at) {
  std::set<State> out;
  for (auto& [x, v] : bridge.column(at)) out.insert(x);
  return out;
}

CountingMeasure multiplicities(const BridgeGraph& bridge, std::int64_t at, PPKind kind) {
  if (at < bridge.t_min() || at > bridge.t_max())
    throw UsageError("multiplicities: column outside window");
  const State s_star = bridge.model().reference_state();
  CountingMeasure out;
  for (std::int64_t s = bridge.t_min(); s < at && s < bridge.t_max(); ++s) {
    const State y = bridge.path_state(s, at);
    if (kind == PPKind::taboo) {
      const auto fr = bridge.path_first_return(s);
      if (fr && *fr <= at) continue;
    }
    out.add(y, 1);
  }
  out.add(s_star, 1);
  return out;
}

CountingMeasure windowed_multiplicities(const ChainModel& model, const NoiseField& noise,
                                        std::int64_t t_min, std::int64_t at, PPKind kind) {
  const State s_star = model.reference_state();
  CountingMeasure out;
  for (std::int64_t s = t_min; s < at; ++s) {
    State x = s_star;
    bool visited_axis = false;
    for (std::int64_t t = s; t < at; ++t) {
      x = step(model, x, noise.at(t, x));
      if (x == s_star && t + 1 <= at) visited_axis = true;
    }
    if (kind == PPKind::taboo && visited_axis) continue;
    out.add(x, 1);
  }
  out.add(s_star, 1);
  return out;
}

double RecurrenceTimes::mean_uncensored() const {
  double sum = 0.0;
  std::int64_t n = 0;
  for (auto& e : entries) {
    if (!e.censored) {
      sum += double(e.length);
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / double(n);
}

double RecurrenceTimes::censored_fraction() const {
  if (entries.empty()) return 0.0;
  std::int64_t n = 0;
  for (auto& e : entries) n += e.censored ? 1 : 0;
  return double(n) / double(entries.size());
}

RecurrenceTimes recurrence_times(const ChainModel& model, const NoiseField& noise,
                                 std::int64_t t0, std::int64_t t1, std::int64_t horizon_cap) {
  if (horizon_cap < 1) throw UsageError("recurrence_times: horizon_cap must be >= 1");
  const State s_star = model.reference_state();
  RecurrenceTimes rt;
  rt.t0 = t0;
  rt.t1 = t1;
  rt.entries.reserve(size_t(t1 - t0));
  for (std::int64_t s = t0; s < t1; ++s) {
    State x = s_star;
    std::int64_t len = horizon_cap;
    bool censored = true;
    for (std::int64_t k = 0; k < horizon_cap; ++k) {
      x = step(model, x, noise.at(s + k, x));
      if (x == s_star) {
        len = k + 1;
        censored = false;
        break;
      }
    }
    rt.entries.push_back({len, censored});
  }
  return rt;
}

std::string BridgeGraph::export_csv() const {
  // taboo_flag per vertex: forward DP of taboo counts over the stored graph
  std::vector<std::map<State, std::int64_t>> taboo(cols_.size());
  const State s_star = model_.reference_state();
  for (std::int64_t t = t_min_; t <= t_max_; ++t) {
    auto& tc = taboo[size_t(t - t_min_)];
    if (t < t_max_ && cols_[size_t(t - t_min_)].count(s_star)) tc[s_star] += 1;
    if (t == t_max_) break;
    for (auto& [x, v] : cols_[size_t(t - t_min_)]) {
      auto it = tc.find(x);
      if (it == tc.end() || it->second == 0 || !v.has_next) continue;
      if (v.next != s_star) taboo[size_t(t + 1 - t_min_)][v.next] += it->second;
    }
  }
  std::ostringstream os;
  os << "time,state,parent_time,parent_state,n_starts_through,taboo_flag\n";
  for (std::int64_t t = t_min_; t <= t_max_; ++t) {
    auto& tc = taboo[size_t(t - t_min_)];
    for (auto& [x, v] : cols_[size_t(t - t_min_)]) {
      os << t << ',' << x << ',';
      if (v.has_next) os << (t + 1) << ',' << v.next;
      else os << ',';
      std::int64_t tcount = 0;
      if (auto it = tc.find(x); it != tc.end()) tcount = it->second;
      os << ',' << v.starts_through << ',' << (tcount > 0 ? 1 : 0) << '\n';
    }
  }
  return os.str();
}

}  // namespace doeblin
