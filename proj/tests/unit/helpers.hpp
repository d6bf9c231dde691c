#pragma once

#include <cstdint>

#include "doeblin/chain.hpp"
#include "doeblin/distribution.hpp"
#include "doeblin/noise.hpp"

namespace testutil {

// First time t >= t_from whose axis uniform draws the wanted jump value.
inline std::int64_t find_jump_time(const doeblin::JumpDistribution& d,
                                   const doeblin::NoiseField& noise, std::int64_t want,
                                   std::int64_t t_from = 0) {
  for (std::int64_t t = t_from; t < t_from + 200000; ++t)
    if (doeblin::sample_jump(d, noise.component(t, 0, 0)) == want) return t;
  return INT64_MIN;
}

// Workload increment (service minus interarrival) read off the noise at time t.
inline std::int64_t workload_increment(const doeblin::ChainModel& m,
                                       const doeblin::NoiseField& noise, std::int64_t t) {
  const doeblin::UniformVec u = noise.at(t, 0);
  return doeblin::sample_jump(m.service_dist(), u[0]) -
         doeblin::sample_jump(m.interarrival_dist(), u[1]);
}

}  // namespace testutil
