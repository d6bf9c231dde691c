#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "doeblin/chain.hpp"
#include "doeblin/measure.hpp"

namespace doeblin {

struct StateEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

struct EstimatorReport {
  std::vector<StateEstimate> per_state;  // index = state, 0..K
  std::int64_t n_samples = 0;
  double censored_fraction = 0.0;
  std::string meta;

  std::string to_csv() const;
  std::string to_json() const;
};

/// Occupation oracle for the invariant measure: sigma(j) is the mean number
/// of visits to j per excursion from s*, so sigma(s*) = 1 by construction.
EstimatorReport invariant_measure_oracle(const ChainModel& model, State K,
                                         std::int64_t n_excursions, std::uint64_t seed,
                                         std::int64_t excursion_cap = 10'000'000);

/// Per-state empirical mean and standard error over a collection of samples.
EstimatorReport mean_measure(const std::vector<CountingMeasure>& samples, State K);

/// Ratio K-function: conditional mean count in the open interval (i-r, i+r)
/// given an atom of multiplicity exactly 1 at i, divided by what that mean
/// would be if the atom at i were independent of the rest of the sample
/// (1 + the unconditional mean count excluding state i). Equals 1 for
/// independently thinned samples, > 1 under clustering, < 1 under
/// inhibition. Standard error by the delta method.
struct KEstimate {
  bool defined = false;
  double value = 0.0;
  double stderr_ = 0.0;
};
KEstimate k_function(const std::vector<CountingMeasure>& samples, State i, State r);

/// A state drawn from the sample with probability proportional to its
/// multiplicity (cumulative inverse over states in increasing order).
State biased_point_sample(const CountingMeasure& sample, double u);

/// Rejection sampler for the stationary distribution of a positive recurrent
/// chain: redraw taboo samples until a multiplicity-biased point is accepted
/// with probability (total mass)/M_bound.
struct RejectionResult {
  State state = 0;
  std::int64_t attempts = 0;
};
RejectionResult rejection_stationary_sample(
    const std::function<CountingMeasure(std::int64_t attempt)>& taboo_sampler, double M_bound,
    std::int64_t max_attempts, std::uint64_t seed);

}  // namespace doeblin
