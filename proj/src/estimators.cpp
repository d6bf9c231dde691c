#include "doeblin/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doeblin/errors.hpp"
#include "doeblin/noise.hpp"

namespace doeblin {

std::string EstimatorReport::to_csv() const {
  std::ostringstream os;
  os << "state,estimate,stderr,n,censored_fraction\n";
  for (size_t j = 0; j < per_state.size(); ++j) {
    os << j << ',' << per_state[j].estimate << ',' << per_state[j].stderr_ << ',' << n_samples
       << ',' << censored_fraction << '\n';
  }
  return os.str();
}

std::string EstimatorReport::to_json() const {
  std::ostringstream os;
  os << "{\"n\":" << n_samples << ",\"censored_fraction\":" << censored_fraction
     << ",\"states\":[";
  for (size_t j = 0; j < per_state.size(); ++j) {
    if (j) os << ',';
    os << "{\"state\":" << j << ",\"estimate\":" << per_state[j].estimate
       << ",\"stderr\":" << per_state[j].stderr_ << '}';
  }
  os << "]}";
  return os.str();
}

EstimatorReport invariant_measure_oracle(const ChainModel& model, State K,
                                         std::int64_t n_excursions, std::uint64_t seed,
                                         std::int64_t excursion_cap) {
  if (K < 0) throw UsageError("invariant_measure_oracle: K must be >= 0");
  if (n_excursions < 1) throw UsageError("invariant_measure_oracle: need >= 1 excursion");
  const NoiseField noise(seed, Coupling::totally_independent, model.arity());
  const State s_star = model.reference_state();
  std::vector<double> sum(size_t(K) + 1, 0.0), sumsq(size_t(K) + 1, 0.0);
  std::vector<std::int64_t> visits(size_t(K) + 1, 0);
  std::int64_t censored = 0;
  std::int64_t t = 0;  // global noise time, advanced across excursions
  for (std::int64_t e = 0; e < n_excursions; ++e) {
    std::fill(visits.begin(), visits.end(), 0);
    State x = s_star;
    visits[size_t(s_star)] = 1;
    bool ok = false;
    for (std::int64_t k = 0; k < excursion_cap; ++k) {
      x = step(model, x, noise.at(t++, x));
      if (x == s_star) {
        ok = true;
        break;
      }
      if (x >= 0 && x <= K) ++visits[size_t(x)];
    }
    if (!ok) ++censored;
    for (size_t j = 0; j <= size_t(K); ++j) {
      sum[j] += double(visits[j]);
      sumsq[j] += double(visits[j]) * double(visits[j]);
    }
  }
  EstimatorReport rep;
  rep.n_samples = n_excursions;
  rep.censored_fraction = double(censored) / double(n_excursions);
  rep.meta = "invariant_measure_oracle model=" + model.name();
  const double n = double(n_excursions);
  for (size_t j = 0; j <= size_t(K); ++j) {
    const double mean = sum[j] / n;
    const double var = n > 1 ? std::max(0.0, (sumsq[j] - n * mean * mean) / (n - 1.0)) : 0.0;
    rep.per_state.push_back({mean, std::sqrt(var / n)});
  }
  return rep;
}

EstimatorReport mean_measure(const std::vector<CountingMeasure>& samples, State K) {
  if (samples.size() < 2) throw UsageError("mean_measure: need >= 2 samples");
  if (K < 0) throw UsageError("mean_measure: K must be >= 0");
  const double n = double(samples.size());
  EstimatorReport rep;
  rep.n_samples = std::int64_t(samples.size());
  std::vector<double> sum(size_t(K) + 1, 0.0), sumsq(size_t(K) + 1, 0.0);
  for (auto& m : samples) {
    for (auto& [x, c] : m.counts()) {
      if (x >= 0 && x <= K) {
        sum[size_t(x)] += double(c);
        sumsq[size_t(x)] += double(c) * double(c);
      }
    }
  }
  for (size_t j = 0; j <= size_t(K); ++j) {
    const double mean = sum[j] / n;
    const double var = std::max(0.0, (sumsq[j] - n * mean * mean) / (n - 1.0));
    rep.per_state.push_back({mean, std::sqrt(var / n)});
  }
  return rep;
}

KEstimate k_function(const std::vector<CountingMeasure>& samples, State i, State r) {
  if (r < 1) throw UsageError("k_function: r must be >= 1");
  if (samples.size() < 2) throw UsageError("k_function: need >= 2 samples");
  // per-sample statistics: X = mass in the open interval (i-r, i+r),
  // C = 1{M(i)=1}, D = X minus the mass at i (off-focal count). The ratio
  // compares E[X | C] against its value under independence, 1 + E[D].
  const double n = double(samples.size());
  double s_c = 0, s_cx = 0, s_d = 0;
  double s_dd = 0, s_cc = 0, s_cxcx = 0, s_cx_d = 0, s_cx_c = 0, s_c_d = 0;
  for (auto& m : samples) {
    double x = 0;
    for (auto& [st, c] : m.counts()) {
      if (st > i - r && st < i + r) x += double(c);
    }
    const double d = x - double(m.at(i));
    const double cflag = m.at(i) == 1 ? 1.0 : 0.0;
    const double cx = cflag * x;
    s_c += cflag;
    s_cx += cx;
    s_d += d;
    s_dd += d * d;
    s_cc += cflag * cflag;
    s_cxcx += cx * cx;
    s_cx_d += cx * d;
    s_cx_c += cx * cflag;
    s_c_d += cflag * d;
  }
  KEstimate k;
  const double m_c = s_c / n, m_cx = s_cx / n, m_d = s_d / n;
  if (m_c == 0.0) return k;  // undefined: conditioning event never observed
  const double denom = 1.0 + m_d;
  k.defined = true;
  k.value = (m_cx / m_c) / denom;
  // delta method for f(m_cx, m_c, m_d) = m_cx / (m_c * (1 + m_d))
  const double g1 = 1.0 / (m_c * denom);
  const double g2 = -m_cx / (m_c * m_c * denom);
  const double g3 = -m_cx / (m_c * denom * denom);
  const double c11 = s_cxcx / n - m_cx * m_cx;
  const double c22 = s_cc / n - m_c * m_c;
  const double c33 = s_dd / n - m_d * m_d;
  const double c12 = s_cx_c / n - m_cx * m_c;
  const double c13 = s_cx_d / n - m_cx * m_d;
  const double c23 = s_c_d / n - m_c * m_d;
  double var = g1 * g1 * c11 + g2 * g2 * c22 + g3 * g3 * c33 + 2 * g1 * g2 * c12 +
               2 * g1 * g3 * c13 + 2 * g2 * g3 * c23;
  k.stderr_ = std::sqrt(std::max(0.0, var) / n);
  return k;
}

State biased_point_sample(const CountingMeasure& sample, double u) {
  if (sample.empty()) throw UsageError("biased_point_sample: empty sample");
  const double total = double(sample.total_mass());
  double cum = 0.0;
  State last = 0;
  for (auto& [x, c] : sample.counts()) {
    cum += double(c) / total;
    last = x;
    if (cum >= u) return x;
  }
  return last;  // u ~ 1.0 rounding
}

RejectionResult rejection_stationary_sample(
    const std::function<CountingMeasure(std::int64_t attempt)>& taboo_sampler, double M_bound,
    std::int64_t max_attempts, std::uint64_t seed) {
  if (!(M_bound > 0.0)) throw UsageError("rejection_stationary_sample: M_bound must be > 0");
  const NoiseField pick_noise(seed, Coupling::totally_independent, 2);
  for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
    const CountingMeasure t = taboo_sampler(attempt);
    if (t.empty()) throw UsageError("rejection_stationary_sample: sampler produced empty measure");
    const double mass = double(t.total_mass());
    if (mass > M_bound)
      throw std::runtime_error("rejection_stationary_sample: M_bound violated by a sample");
    const UniformVec u = pick_noise.at(attempt, 0);
    const State y = biased_point_sample(t, u[0]);
    if (u[1] < mass / M_bound) return {y, attempt + 1};
  }
  throw ResourceError("rejection_stationary_sample: max_attempts exhausted");
}

}  // namespace doeblin
