#include "doeblin/noise.hpp"

#include <string>

#include "doeblin/errors.hpp"

namespace doeblin {
namespace {

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

inline std::uint64_t prf(std::uint64_t seed, std::int64_t t, std::int64_t x, int i) {
  std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ std::uint64_t(t));
  h = mix64(h ^ std::uint64_t(x));
  h = mix64(h ^ (std::uint64_t(std::uint32_t(i)) + 0xa0761d6478bd642fULL));
  return h;
}

}  // namespace

Coupling parse_coupling(const std::string& s) {
  if (s == "independent" || s == "totally_independent") return Coupling::totally_independent;
  if (s == "common") return Coupling::common;
  if (s == "maximal_shift") return Coupling::maximal_shift;
  throw SpecError("unknown coupling: " + s);
}

const char* coupling_name(Coupling c) {
  switch (c) {
    case Coupling::totally_independent: return "independent";
    case Coupling::common: return "common";
    case Coupling::maximal_shift: return "maximal_shift";
  }
  return "?";
}

double NoiseField::component(std::int64_t t, std::int64_t x, int i) const {
  const std::int64_t xe = common_mode() ? 0 : x;
  return double(prf(seed_, t, xe, i) >> 11) * 0x1.0p-53;
}

UniformVec NoiseField::at(std::int64_t t, std::int64_t x) const {
  UniformVec u;
  u.n = arity_;
  for (int i = 0; i < arity_; ++i) u.v[i] = component(t, x, i);
  return u;
}

}  // namespace doeblin
