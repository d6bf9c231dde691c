#include "doeblin/chain.hpp"

#include <algorithm>

#include "doeblin/errors.hpp"

namespace doeblin {

ChainModel ChainModel::renewal(JumpDistribution jump) {
  // aperiodicity guard: the return-time law must not live on a sublattice
  if (jump.support_gcd() != 1) throw SpecError("renewal: gcd of jump support must be 1");
  ChainModel m;
  m.kind_ = Kind::renewal;
  m.name_ = "renewal:" + jump.spec_string();
  m.arity_ = 1;
  m.monotone_ = false;
  m.dist_a_ = std::move(jump);
  return m;
}

ChainModel ChainModel::lazy_rw() {
  ChainModel m;
  m.kind_ = Kind::lazy_rw;
  m.name_ = "lazyrw";
  m.arity_ = 1;
  m.monotone_ = false;
  return m;
}

ChainModel ChainModel::reflected_rw() {
  ChainModel m;
  m.kind_ = Kind::reflected_rw;
  m.name_ = "reflectedrw";
  m.arity_ = 1;
  m.monotone_ = true;
  return m;
}

ChainModel ChainModel::workload(JumpDistribution service, JumpDistribution interarrival) {
  ChainModel m;
  m.kind_ = Kind::workload;
  m.name_ = "queue:" + service.spec_string() + ":" + interarrival.spec_string();
  m.arity_ = 2;
  m.monotone_ = true;
  m.dist_a_ = std::move(service);
  m.dist_b_ = std::move(interarrival);
  return m;
}

ChainModel ChainModel::parse(const std::string& spec) {
  if (spec == "lazyrw") return lazy_rw();
  if (spec == "reflectedrw") return reflected_rw();
  if (spec.rfind("renewal:", 0) == 0)
    return renewal(JumpDistribution::parse(spec.substr(8)));
  if (spec.rfind("queue:", 0) == 0) {
    // queue:<kind>:<param>:<kind>:<param>; each dist spec is exactly two ':' tokens
    std::string rest = spec.substr(6);
    std::vector<std::string> tok;
    size_t pos = 0;
    while (true) {
      auto c = rest.find(':', pos);
      if (c == std::string::npos) {
        tok.push_back(rest.substr(pos));
        break;
      }
      tok.push_back(rest.substr(pos, c - pos));
      pos = c + 1;
    }
    if (tok.size() != 4) throw SpecError("queue spec needs two distributions: " + spec);
    return workload(JumpDistribution::parse(tok[0] + ":" + tok[1]),
                    JumpDistribution::parse(tok[2] + ":" + tok[3]));
  }
  throw SpecError("unknown model spec: " + spec);
}

const JumpDistribution& ChainModel::jump_dist() const {
  if (kind_ != Kind::renewal) throw UsageError("jump_dist: not a renewal model");
  return *dist_a_;
}

const JumpDistribution& ChainModel::service_dist() const {
  if (kind_ != Kind::workload) throw UsageError("service_dist: not a workload model");
  return *dist_a_;
}

const JumpDistribution& ChainModel::interarrival_dist() const {
  if (kind_ != Kind::workload) throw UsageError("interarrival_dist: not a workload model");
  return *dist_b_;
}

State step(const ChainModel& model, State x, const UniformVec& u) {
  if (u.n != model.arity()) throw UsageError("step: uniform arity mismatch");
  switch (model.kind()) {
    case ChainModel::Kind::renewal:
      if (x > 0) return x - 1;
      return sample_jump(model.jump_dist(), u[0]) - 1;
    case ChainModel::Kind::lazy_rw: {
      // One common uniform encodes a direction and a parity offset; a state
      // moves iff its parity matches the offset. Marginal: stay 1/2, +-1 1/4;
      // adjacent states coalesce (maximally coupled lazy walk).
      const bool up = u[0] < 0.5;
      const double v = up ? u[0] * 2.0 : (u[0] - 0.5) * 2.0;
      const std::int64_t offset = v < 0.5 ? 0 : 1;
      if (((x + offset) & 1) == 0) return x + (up ? 1 : -1);
      return x;
    }
    case ChainModel::Kind::reflected_rw:
      return u[0] < 0.5 ? std::max<State>(x - 1, 0) : x + 1;
    case ChainModel::Kind::workload: {
      const std::int64_t service = sample_jump(model.service_dist(), u[0]);
      const std::int64_t interarrival = sample_jump(model.interarrival_dist(), u[1]);
      return std::max<State>(x + service - interarrival, 0);
    }
  }
  throw UsageError("step: unknown model kind");
}

NoiseField make_noise(const ChainModel& model, std::uint64_t seed, Coupling mode) {
  return NoiseField(seed, mode, model.arity());
}

}  // namespace doeblin
