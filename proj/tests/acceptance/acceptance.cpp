// Acceptance gate: one line per criterion, nonzero exit on any gating failure.

#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "doeblin/bridge.hpp"
#include "doeblin/chain.hpp"
#include "doeblin/eft.hpp"
#include "doeblin/estimators.hpp"
#include "doeblin/measure.hpp"
#include "doeblin/sampler.hpp"

using namespace doeblin;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& label, const std::string& detail = "") {
  std::printf("criterion %02d %s  %s%s%s\n", id, ok ? "PASS" : "FAIL", label.c_str(),
              detail.empty() ? "" : "  -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void parallel_for(std::int64_t n, F f, int threads = 8) {
  std::vector<std::thread> pool;
  const std::int64_t chunk = (n + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const std::int64_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo < hi) pool.emplace_back([&f, lo, hi] {
      for (std::int64_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

// ---- criteria 1 and 2: the windowed point processes are pathwise fixed ----
// points of their one-step dynamics, exactly, on identical noise.
void fixed_point_criterion(int id, PPKind kind) {
  const ChainModel models[] = {ChainModel::parse("renewal:geo:0.5"),
                               ChainModel::parse("queue:geo:0.2:geo:0.2")};
  std::atomic<std::int64_t> bad{0};
  for (const auto& m : models) {
    parallel_for(1000, [&](std::int64_t i) {
      const NoiseField noise = make_noise(m, std::uint64_t(i) + 1, Coupling::totally_independent);
      const CountingMeasure col0 = windowed_multiplicities(m, noise, -200, 0, kind);
      const CountingMeasure col1 = windowed_multiplicities(m, noise, -200, 1, kind);
      const CountingMeasure stepped = kind == PPKind::taboo
                                          ? taboo_step(col0, m, noise, 0)
                                          : potential_step(col0, m, noise, 0);
      if (!(stepped == col1)) ++bad;
    });
  }
  report(id, bad == 0,
         kind == PPKind::taboo ? "taboo dynamics fixed point, 1000 seeds, window 200"
                               : "potential dynamics fixed point, 1000 seeds, window 200",
         bad == 0 ? "" : std::to_string(bad.load()) + " mismatches");
}

// ---- criterion 3: mean taboo measure equals the occupation measure ----
void mean_measure_criterion() {
  const auto m = ChainModel::parse("renewal:geo:0.5");
  const std::int64_t n = 100000;
  std::vector<CountingMeasure> samples(static_cast<size_t>(n));
  parallel_for(n, [&](std::int64_t i) {
    const NoiseField noise = make_noise(m, std::uint64_t(i) + 1, Coupling::totally_independent);
    samples[size_t(i)] = renewal_windowed_sample(m, noise, 5, 60, PPKind::taboo).atoms;
  });
  const EstimatorReport mm = mean_measure(samples, 5);
  const EstimatorReport oracle = invariant_measure_oracle(m, 5, 100000, 777);
  bool ok = true;
  std::string detail;
  for (State j = 0; j <= 5; ++j) {
    const auto& a = mm.per_state[size_t(j)];
    const auto& b = oracle.per_state[size_t(j)];
    const double pooled = std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
    if (std::abs(a.estimate - b.estimate) > 3.0 * pooled) ok = false;
    if (std::abs(b.estimate - std::pow(0.5, double(j))) > 3.0 * b.stderr_ + 1e-12) ok = false;
    if (j == 1) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "mean(1)=%.4f oracle(1)=%.4f", a.estimate, b.estimate);
      detail = buf;
    }
  }
  report(3, ok, "mean taboo measure matches the occupation oracle on [0,5], 1e5 samples", detail);
}

// ---- criterion 4: unit taboo mass at the axis, every model, every seed ----
void axis_mass_criterion() {
  std::int64_t bad = 0, total = 0;
  const auto renewal = ChainModel::parse("renewal:geo:0.5");
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const NoiseField noise = make_noise(renewal, seed, Coupling::totally_independent);
    ++total;
    if (renewal_windowed_sample(renewal, noise, 10, 128, PPKind::taboo).atoms.at(0) != 1) ++bad;
  }
  for (const char* spec : {"queue:geo:0.2:geo:0.2", "reflectedrw"}) {
    const auto m = ChainModel::parse(spec);
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const NoiseField noise = make_noise(m, seed, Coupling::common);
      ++total;
      if (sample_taboo_pp(m, noise, 10, 4096).atoms.at(0) != 1) ++bad;
    }
  }
  const auto lazy = ChainModel::parse("lazyrw");
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const NoiseField noise = make_noise(lazy, seed, Coupling::maximal_shift);
    ++total;
    if (windowed_multiplicities(lazy, noise, -100, 0, PPKind::taboo).at(0) != 1) ++bad;
  }
  report(4, bad == 0, "taboo mass at the axis equals 1 across all models and seeds",
         std::to_string(total) + " samples");
}

// ---- criterion 5: samplers equal brute-force graph multiplicities ----
void sampler_vs_graph_criterion() {
  std::atomic<std::int64_t> bad{0};
  const auto renewal = ChainModel::parse("renewal:geo:0.5");
  parallel_for(500, [&](std::int64_t i) {
    const NoiseField noise = make_noise(renewal, std::uint64_t(i) + 1,
                                        Coupling::totally_independent);
    const BridgeGraph g = build_bridge(renewal, noise, -256, 1);
    for (PPKind kind : {PPKind::taboo, PPKind::potential}) {
      if (!(renewal_windowed_sample(renewal, noise, 20, 256, kind).atoms ==
            multiplicities(g, 0, kind).restricted(20)))
        ++bad;
    }
  });
  const auto queue = ChainModel::parse("queue:geo:0.2:geo:0.2");
  parallel_for(500, [&](std::int64_t i) {
    const NoiseField noise = make_noise(queue, std::uint64_t(i) + 1, Coupling::common);
    const PPSample tab = sample_taboo_pp(queue, noise, 20, 8192);
    const PPSample pot = sample_potential_pp(queue, noise, 20, 8192, Strategy::exponential_search);
    const std::int64_t wt = tab.status == SampleStatus::exact ? tab.depth_used : 8192;
    if (!(tab.atoms == multiplicities(build_bridge(queue, noise, -wt, 1), 0, PPKind::taboo)
                           .restricted(20)))
      ++bad;
    const std::int64_t wp = pot.status == SampleStatus::exact ? pot.depth_used : 8192;
    if (!(pot.atoms == multiplicities(build_bridge(queue, noise, -wp, 1), 0, PPKind::potential)
                           .restricted(20)))
      ++bad;
  });
  report(5, bad == 0, "exact samples equal bridge multiplicities on [0,20], 500 seeds x 2 models",
         bad == 0 ? "" : std::to_string(bad.load()) + " mismatches");
}

// ---- criterion 6: exponential search equals linear and saves evaluations ----
void search_strategy_criterion() {
  const auto m = ChainModel::parse("reflectedrw");
  std::atomic<std::int64_t> mismatch{0}, deep{0}, saved{0};
  parallel_for(500, [&](std::int64_t i) {
    const NoiseField noise = make_noise(m, std::uint64_t(i) + 1, Coupling::common);
    const PPSample lin = sample_potential_pp(m, noise, 20, 32768, Strategy::linear);
    const PPSample exp = sample_potential_pp(m, noise, 20, 32768, Strategy::exponential_search);
    if (!(lin.atoms == exp.atoms)) ++mismatch;
    if (lin.depth_used >= 64) {
      ++deep;
      if (exp.loynes_evals < lin.loynes_evals) ++saved;
    }
  });
  const double frac = deep == 0 ? 0.0 : double(saved.load()) / double(deep.load());
  char buf[96];
  std::snprintf(buf, sizeof(buf), "fewer evaluations on %.0f%% of %" PRId64 " deep seeds",
                100.0 * frac, deep.load());
  report(6, mismatch == 0 && frac >= 0.9,
         "exponential search: identical samples, fewer backward evaluations", buf);
}

// ---- criterion 7: null recurrent potential mass diverges with the depth ----
void potential_divergence_criterion() {
  const auto m = ChainModel::parse("renewal:zeta:0.75");
  double means[3] = {0, 0, 0};
  const std::int64_t depths[3] = {1000, 10000, 100000};
  for (int d = 0; d < 3; ++d) {
    std::atomic<std::int64_t> total{0};
    parallel_for(200, [&](std::int64_t i) {
      const NoiseField noise = make_noise(m, std::uint64_t(i) + 1,
                                          Coupling::totally_independent);
      total += renewal_windowed_sample(m, noise, 0, depths[d], PPKind::potential).atoms.at(0);
    });
    means[d] = double(total.load()) / 200.0;
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "mean mass %.1f -> %.1f -> %.1f", means[0], means[1], means[2]);
  report(7, means[0] < means[1] && means[1] < means[2],
         "potential mass at the axis grows with depth caps 1e3/1e4/1e5", buf);
}

// ---- criterion 8: heavier jump tails delay meetings ----
void connectivity_criterion() {
  const double alphas[4] = {0.9, 0.75, 0.5, 0.25};
  double freq[4];
  std::vector<std::thread> pool;
  for (int a = 0; a < 4; ++a) {
    pool.emplace_back([&, a] {
      const auto q = JumpDistribution::zeta(alphas[a]);
      freq[a] = meeting_experiment(q, 1, 100000, 1000, 900 + std::uint64_t(a)).frequency;
    });
  }
  for (auto& t : pool) t.join();
  bool mono = true;
  for (int a = 1; a < 4; ++a) mono = mono && freq[a] <= freq[a - 1];
  char buf[120];
  std::snprintf(buf, sizeof(buf), "freq = %.3f %.3f %.3f %.3f", freq[0], freq[1], freq[2],
                freq[3]);
  report(8, mono && freq[0] - freq[3] >= 0.2,
         "meeting frequency falls by >= 0.2 and is monotone across tail exponents", buf);
}

// ---- criterion 9: mean first-return time of the geometric renewal chain ----
void recurrence_mean_criterion() {
  const auto m = ChainModel::parse("renewal:geo:0.5");
  const NoiseField noise = make_noise(m, 5, Coupling::totally_independent);
  const RecurrenceTimes rt = recurrence_times(m, noise, 0, 1000000, 10000);
  const double mean = rt.mean_uncensored();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "mean = %.4f", mean);
  report(9, std::abs(mean - 2.0) <= 0.04 && rt.censored_fraction() == 0.0,
         "mean first-return time over 1e6 starts equals 2 within 2%", buf);
}

// ---- criterion 10: bridge/forest coupling audit ----
void coupling_audit_criterion() {
  const auto m = ChainModel::parse("renewal:geo:0.5");
  std::atomic<std::int64_t> bad{0};
  parallel_for(1000, [&](std::int64_t i) {
    const NoiseField noise = make_noise(m, std::uint64_t(i) + 1, Coupling::totally_independent);
    const BridgeGraph bridge = build_bridge(m, noise, -10000, 1);
    const EffGraph eff = couple_bridge_eft(bridge);
    for (std::int64_t t = -10000; t < 0; ++t) {
      const std::int64_t eta = sample_jump(m.jump_dist(), noise.component(t, 0, 0));
      if (eff.length_at(t) != eta) {
        ++bad;
        return;
      }
      if (t + eta <= 1) {
        const auto fr = bridge.path_first_return(t);
        if (!fr || *fr != t + eta) {
          ++bad;
          return;
        }
      }
    }
    std::set<std::int64_t> targets;
    for (const auto& e : flying_edges(eff)) targets.insert(e.second);
    std::set<State> off_axis = s_set(bridge, 0);
    off_axis.erase(0);
    if (std::set<State>(targets.begin(), targets.end()) != off_axis) ++bad;
    else if (std::int64_t(s_set(bridge, 0).size()) - 1 != std::int64_t(targets.size())) ++bad;
  });
  report(10, bad == 0,
         "forest edges = first-return times and flying edges = off-axis states, 1e3 seeds",
         bad == 0 ? "" : std::to_string(bad.load()) + " bad seeds");
}

// ---- criterion 11: rejection sampler hits the stationary law ----
void rejection_criterion() {
  const auto m = ChainModel::parse("renewal:emp:1=0.5,2=0.5");
  const std::int64_t n = 100000;
  std::vector<State> out(static_cast<size_t>(n));
  parallel_for(n, [&](std::int64_t i) {
    auto sampler = [&](std::int64_t attempt) {
      const std::uint64_t s = std::uint64_t(i) * 2654435761ULL + std::uint64_t(attempt) + 7;
      const NoiseField noise = make_noise(m, s, Coupling::totally_independent);
      return renewal_windowed_sample(m, noise, 1, 2, PPKind::taboo).atoms;
    };
    out[size_t(i)] =
        rejection_stationary_sample(sampler, 3.0, 100000, std::uint64_t(i) + 31).state;
  });
  std::int64_t c0 = 0, c1 = 0, other = 0;
  for (State s : out) (s == 0 ? c0 : s == 1 ? c1 : other) += 1;
  const double tv = 0.5 * (std::abs(double(c0) / n - 2.0 / 3.0) +
                           std::abs(double(c1) / n - 1.0 / 3.0) + double(other) / n);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "freq = (%.4f, %.4f), tv = %.4f", double(c0) / n,
                double(c1) / n, tv);
  report(11, tv <= 0.01, "rejection sampler matches (2/3, 1/3) within tv 0.01, 1e5 draws", buf);
}

// ---- criterion 12: clustering diagnostic benchmark ----
void k_function_criterion() {
  // gating half: independently thinned synthetic samples have K = 1
  const NoiseField gen(9090, Coupling::totally_independent, 1);
  std::vector<CountingMeasure> synthetic(100000);
  parallel_for(100000, [&](std::int64_t i) {
    CountingMeasure mm;
    for (State x = 1; x <= 10; ++x)
      if (gen.component(i, x, 0) < 0.5) mm.add(x, 1);
    synthetic[size_t(i)] = std::move(mm);
  });
  const KEstimate k1 = k_function(synthetic, 5, 3);
  const bool gate = k1.defined && std::abs(k1.value - 1.0) <= 3.0 * k1.stderr_;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "synthetic K=%.4f (se %.4f)", k1.value, k1.stderr_);
  report(12, gate, "independent thinning yields K=1 within 3 standard errors", buf);

  // reported, non-gating: inhibition of the critical queue at small radii
  const auto q = ChainModel::parse("queue:geo:0.2:geo:0.2");
  std::vector<CountingMeasure> perfect;
  std::atomic<std::int64_t> censored{0};
  std::vector<CountingMeasure> slots(1000);
  std::vector<char> ok_slot(1000, 0);
  parallel_for(1000, [&](std::int64_t i) {
    const NoiseField noise = make_noise(q, std::uint64_t(i) + 1, Coupling::common);
    const PPSample s = sample_taboo_pp(q, noise, 600, 1 << 20);
    if (s.status == SampleStatus::exact) {
      slots[size_t(i)] = std::move(s.atoms);
      ok_slot[size_t(i)] = 1;
    } else {
      ++censored;
    }
  });
  for (size_t i = 0; i < slots.size(); ++i)
    if (ok_slot[i]) perfect.push_back(std::move(slots[i]));
  for (State r : {2, 5, 20}) {
    const KEstimate k = k_function(perfect, 500, r);
    std::printf("criterion 12 note  critical queue K_500(%" PRId64 ") = %.4f (se %.4f, %zu "
                "perfect samples, %" PRId64 " censored)%s\n",
                r, k.value, k.stderr_, perfect.size(), censored.load(),
                k.defined && k.value < 1.0 ? "  [inhibition]" : "");
  }
}

// ---- criterion 13: the taboo mean does not depend on the coupling ----
void coupling_independence_criterion() {
  const auto m = ChainModel::parse("renewal:geo:0.5");
  auto batch = [&](Coupling c, std::uint64_t base) {
    std::vector<CountingMeasure> samples(10000);
    parallel_for(10000, [&](std::int64_t i) {
      const NoiseField noise = make_noise(m, base + std::uint64_t(i), c);
      samples[size_t(i)] = renewal_windowed_sample(m, noise, 5, 60, PPKind::taboo).atoms;
    });
    return mean_measure(samples, 5);
  };
  const EstimatorReport indep = batch(Coupling::totally_independent, 1);
  const EstimatorReport common = batch(Coupling::common, 50001);
  bool ok = true;
  for (State j = 0; j <= 5; ++j) {
    const auto& a = indep.per_state[size_t(j)];
    const auto& b = common.per_state[size_t(j)];
    const double pooled = std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
    if (std::abs(a.estimate - b.estimate) > 3.0 * pooled + 1e-12) ok = false;
  }
  report(13, ok, "taboo means agree across couplings within 3 pooled standard errors");
}

}  // namespace

int main() {
  fixed_point_criterion(1, PPKind::taboo);
  fixed_point_criterion(2, PPKind::potential);
  mean_measure_criterion();
  axis_mass_criterion();
  sampler_vs_graph_criterion();
  search_strategy_criterion();
  potential_divergence_criterion();
  connectivity_criterion();
  recurrence_mean_criterion();
  coupling_audit_criterion();
  rejection_criterion();
  k_function_criterion();
  coupling_independence_criterion();
  std::printf("%s: %d criteria failed\n", failures == 0 ? "OK" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
