#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "doeblin/distribution.hpp"
#include "doeblin/noise.hpp"

namespace doeblin {

using State = std::int64_t;

/// A countable-state chain given by a deterministic transition rule
/// h(x, u) driven by per-step uniforms. Built-ins:
///   renewal:<dist>   i -> i-1 for i>0, 0 -> eta-1 with eta ~ dist
///   lazyrw           lazy walk on Z, maximally coupled wiring (stay 1/2, +-1 1/4)
///   reflectedrw      x -> max(x +- 1, 0), +-1 with prob 1/2 each
///   queue:<s>:<u>    Lindley workload W -> max(W + sigma - upsilon, 0)
class ChainModel {
 public:
  enum class Kind { renewal, lazy_rw, reflected_rw, workload };

  static ChainModel renewal(JumpDistribution jump);
  static ChainModel lazy_rw();
  static ChainModel reflected_rw();
  static ChainModel workload(JumpDistribution service, JumpDistribution interarrival);
  static ChainModel parse(const std::string& spec);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  State reference_state() const { return 0; }
  int arity() const { return arity_; }
  bool monotone() const { return monotone_; }
  const JumpDistribution& jump_dist() const;     // renewal
  const JumpDistribution& service_dist() const;  // workload
  const JumpDistribution& interarrival_dist() const;

 private:
  ChainModel() = default;
  Kind kind_ = Kind::renewal;
  std::string name_;
  int arity_ = 1;
  bool monotone_ = false;
  std::optional<JumpDistribution> dist_a_;  // renewal jump / workload service
  std::optional<JumpDistribution> dist_b_;  // workload interarrival
};

/// One transition. Throws UsageError on arity mismatch.
State step(const ChainModel& model, State x, const UniformVec& u);

/// Noise field matching the model's per-step uniform arity.
NoiseField make_noise(const ChainModel& model, std::uint64_t seed, Coupling mode);

}  // namespace doeblin
