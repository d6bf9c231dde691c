#include "doeblin/sampler.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "doeblin/errors.hpp"

namespace doeblin {
namespace {

void require_monotone_common(const ChainModel& model, const NoiseField& noise) {
  if (!model.monotone()) throw UsageError("sampler: model is not monotone");
  if (!noise.common_mode()) throw UsageError("sampler: common-coupling noise required");
}

// Memoizing evaluator for L_n. The workload chain uses the running-maximum
// Loynes recursion over prefix sums of the (integer) increments; other
// monotone chains walk the path forward from (-n, s*).
class LoynesEvaluator {
 public:
  LoynesEvaluator(const ChainModel& model, const NoiseField& noise)
      : model_(model), noise_(noise) {}

  State value(std::int64_t n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    State v;
    if (model_.kind() == ChainModel::Kind::workload) {
      extend_prefix(n);
      v = loynes_max_[size_t(n)];
    } else {
      v = walk(n).first;
    }
    memo_.emplace(n, v);
    return v;
  }

  // (L_n, path visited s* at some time in (-n, 0])
  std::pair<State, bool> walk(std::int64_t n) const {
    State x = model_.reference_state();
    bool visited = false;
    for (std::int64_t t = -n; t < 0; ++t) {
      x = step(model_, x, noise_.at(t, x));
      if (x == model_.reference_state()) visited = true;
    }
    return {x, visited};
  }

  std::int64_t distinct_evals() const { return std::int64_t(memo_.size()); }

 private:
  void extend_prefix(std::int64_t n) {
    while (std::int64_t(loynes_max_.size()) <= n) {
      const std::int64_t k = std::int64_t(loynes_max_.size());  // next backward index
      if (k == 0) {
        loynes_max_.push_back(0);
        continue;
      }
      const UniformVec u = noise_.at(-k, 0);
      const std::int64_t inc = sample_jump(model_.service_dist(), u[0]) -
                               sample_jump(model_.interarrival_dist(), u[1]);
      prefix_sum_ += inc;
      loynes_max_.push_back(std::max(loynes_max_.back(), prefix_sum_));
    }
  }

  const ChainModel& model_;
  const NoiseField& noise_;
  std::unordered_map<std::int64_t, State> memo_;
  std::int64_t prefix_sum_ = 0;
  std::vector<State> loynes_max_;  // loynes_max_[n] = L_n
};

struct RecordScan {
  std::vector<RecordEntry> records;  // values <= K only
  bool exceeded = false;             // a value > K was seen
  std::int64_t depth_used = 0;
};

// Linear scan of L_0, L_1, ... until a value exceeds K or max_n is reached.
RecordScan scan_records_linear(LoynesEvaluator& ev, State K, std::int64_t max_n) {
  RecordScan rs;
  State cur = ev.value(0);
  std::int64_t cur_start = 0;
  rs.depth_used = 0;
  for (std::int64_t n = 1; n <= max_n; ++n) {
    const State v = ev.value(n);
    rs.depth_used = n;
    if (v != cur) {
      rs.records.push_back({cur, cur_start, n - cur_start});
      cur = v;
      cur_start = n;
      if (v > K) {
        rs.exceeded = true;
        return rs;
      }
    }
  }
  rs.records.push_back({cur, cur_start, max_n - cur_start + 1});
  return rs;
}

// Record boundaries located by doubling then bisection (L is nondecreasing).
RecordScan scan_records_exponential(LoynesEvaluator& ev, State K, std::int64_t max_n) {
  RecordScan rs;
  State cur = ev.value(0);
  std::int64_t cur_start = 0;
  rs.depth_used = 0;
  while (true) {
    // find the smallest n > cur_start with L_n > cur, or learn L_max_n == cur
    std::int64_t lo = cur_start;  // L_lo == cur
    std::int64_t stepn = 1;
    std::int64_t hi = -1;
    while (true) {
      const std::int64_t probe = std::min(cur_start + stepn, max_n);
      rs.depth_used = std::max(rs.depth_used, probe);
      if (ev.value(probe) > cur) {
        hi = probe;
        break;
      }
      lo = probe;
      if (probe == max_n) break;
      stepn *= 2;
    }
    if (hi < 0) {  // constant out to max_n
      rs.records.push_back({cur, cur_start, max_n - cur_start + 1});
      return rs;
    }
    while (lo + 1 < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (ev.value(mid) > cur) hi = mid;
      else lo = mid;
    }
    rs.records.push_back({cur, cur_start, hi - cur_start});
    cur = ev.value(hi);
    cur_start = hi;
    rs.depth_used = std::max(rs.depth_used, hi);
    if (cur > K) {
      rs.exceeded = true;
      return rs;
    }
    if (cur_start == max_n) {
      rs.records.push_back({cur, cur_start, 1});
      return rs;
    }
  }
}

}  // namespace

State loynes_value(const ChainModel& model, const NoiseField& noise, std::int64_t n) {
  require_monotone_common(model, noise);
  if (n < 0) throw UsageError("loynes_value: n must be >= 0");
  LoynesEvaluator ev(model, noise);
  return ev.value(n);
}

PPSample sample_potential_pp(const ChainModel& model, const NoiseField& noise, State K,
                             std::int64_t max_n, Strategy strategy) {
  require_monotone_common(model, noise);
  if (K < 0 || max_n < 0) throw UsageError("sample_potential_pp: K and max_n must be >= 0");
  LoynesEvaluator ev(model, noise);
  const RecordScan rs = strategy == Strategy::linear ? scan_records_linear(ev, K, max_n)
                                                     : scan_records_exponential(ev, K, max_n);
  PPSample out;
  for (auto& r : rs.records) {
    if (r.value <= K) {
      out.atoms.add(r.value, r.run);
      out.records.push_back(r);
    }
  }
  out.status = rs.exceeded ? SampleStatus::exact : SampleStatus::censored;
  out.depth_used = rs.depth_used;
  out.loynes_evals = ev.distinct_evals();
  return out;
}

PPSample sample_taboo_pp(const ChainModel& model, const NoiseField& noise, State K,
                         std::int64_t max_n) {
  require_monotone_common(model, noise);
  if (K < 0 || max_n < 0) throw UsageError("sample_taboo_pp: K and max_n must be >= 0");
  PPSample out;
  if (model.kind() == ChainModel::Kind::workload) {
    // The workload Taboo PP is simple: its atoms are exactly the strict
    // record values, each with multiplicity 1.
    LoynesEvaluator ev(model, noise);
    const RecordScan rs = scan_records_linear(ev, K, max_n);
    for (auto& r : rs.records) {
      if (r.value <= K) {
        out.atoms.add(r.value, 1);
        out.records.push_back(r);
      }
    }
    out.status = rs.exceeded ? SampleStatus::exact : SampleStatus::censored;
    out.depth_used = rs.depth_used;
    out.loynes_evals = ev.distinct_evals();
    return out;
  }
  // General monotone chain: explicit path tracking with first-return
  // bookkeeping; a start at depth n contributes iff its path never touches
  // s* in (-n, 0].
  LoynesEvaluator ev(model, noise);
  State prev = model.reference_state();
  std::int64_t first_idx = 0;
  std::int64_t evals = 1;
  out.atoms.add(prev, 1);  // depth 0: the vertex (0, s*) itself
  out.records.push_back({prev, 0, 1});
  out.status = SampleStatus::censored;
  out.depth_used = 0;
  for (std::int64_t n = 1; n <= max_n; ++n) {
    const auto [v, visited] = ev.walk(n);
    ++evals;
    out.depth_used = n;
    if (v > K) {
      out.status = SampleStatus::exact;
      break;
    }
    if (v > prev) {
      out.records.push_back({v, n, 1});
      prev = v;
      first_idx = n;
    } else if (v == prev && n > first_idx) {
      out.records.back().run += 1;
    }
    if (!visited) out.atoms.add(v, 1);
  }
  out.loynes_evals = evals;
  return out;
}

GapStats backward_gap_stats(const ChainModel& model, const NoiseField& noise,
                            std::int64_t n_events, std::int64_t max_n) {
  require_monotone_common(model, noise);
  LoynesEvaluator ev(model, noise);
  GapStats gs;
  State cur = ev.value(0);
  std::int64_t last_record = 0;
  for (std::int64_t n = 1; n <= max_n; ++n) {
    const State v = ev.value(n);
    if (v > cur) {
      gs.gaps.push_back(n - last_record);
      last_record = n;
      cur = v;
      if (std::int64_t(gs.gaps.size()) >= n_events) return gs;
    }
  }
  gs.censored_tail = true;
  return gs;
}

PPSample renewal_windowed_sample(const ChainModel& model, const NoiseField& noise, State K,
                                 std::int64_t depth, PPKind kind) {
  if (model.kind() != ChainModel::Kind::renewal)
    throw UsageError("renewal_windowed_sample: renewal model required");
  if (K < 0 || depth < 0) throw UsageError("renewal_windowed_sample: bad K or depth");
  const JumpDistribution& dist = model.jump_dist();
  std::unordered_map<std::int64_t, std::int64_t> jump_at;
  auto jump = [&](std::int64_t t) {
    auto it = jump_at.find(t);
    if (it != jump_at.end()) return it->second;
    const std::int64_t j = sample_jump(dist, noise.component(t, 0, 0));
    jump_at.emplace(t, j);
    return j;
  };
  PPSample out;
  out.atoms.add(0, 1);
  if (kind == PPKind::taboo) {
    for (std::int64_t s = -depth; s < 0; ++s) {
      const std::int64_t e = s + jump(s);
      if (e >= 1 && e <= K) out.atoms.add(e, 1);
    }
    const auto bound = dist.support_bound();
    out.status = (bound && depth + 1 >= *bound) ? SampleStatus::exact : SampleStatus::censored;
  } else {
    // first axis point >= 0 of the orbit from s, memoized with a stack
    std::unordered_map<std::int64_t, std::int64_t> first_axis;
    auto orbit_landing = [&](std::int64_t s0) {
      std::vector<std::int64_t> chain;
      std::int64_t t = s0;
      while (t < 0) {
        auto it = first_axis.find(t);
        if (it != first_axis.end()) {
          t = it->second;
          break;
        }
        chain.push_back(t);
        t += jump(t);
      }
      for (std::int64_t c : chain) first_axis.emplace(c, t);
      return t;
    };
    for (std::int64_t s = -depth; s < 0; ++s) {
      const std::int64_t y = orbit_landing(s);
      if (y <= K) out.atoms.add(y, 1);
    }
    out.status = SampleStatus::censored;
  }
  out.depth_used = depth;
  out.loynes_evals = 0;
  return out;
}

std::string PPSample::to_json() const {
  std::ostringstream os;
  os << "{\"atoms\":" << atoms.to_json() << ",\"status\":\""
     << (status == SampleStatus::exact ? "exact" : "censored")
     << "\",\"depth_used\":" << depth_used << ",\"records\":[";
  for (size_t i = 0; i < records.size(); ++i) {
    if (i) os << ',';
    os << "{\"value\":" << records[i].value << ",\"index\":" << records[i].index
       << ",\"run\":" << records[i].run << '}';
  }
  os << "]}";
  return os.str();
}

}  // namespace doeblin
