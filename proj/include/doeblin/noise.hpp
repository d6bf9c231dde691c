#pragma once

#include <cstdint>
#include <string>

namespace doeblin {

enum class Coupling { totally_independent, common, maximal_shift };

Coupling parse_coupling(const std::string& s);
const char* coupling_name(Coupling c);

/// Up to two uniforms per (t,x) site.
struct UniformVec {
  double v[2] = {0.0, 0.0};
  int n = 0;
  double operator[](int i) const { return v[i]; }
};

/// Random-access field of uniforms xi_t^x, driven by a counter-based PRF
/// (three chained murmur3/splitmix finalizer rounds over (seed, t, x, i)).
/// In common and maximal_shift modes the state coordinate is ignored, so
/// all states at a given time share one uniform vector.
class NoiseField {
 public:
  NoiseField(std::uint64_t seed, Coupling mode, int arity)
      : seed_(seed), mode_(mode), arity_(arity) {}

  std::uint64_t seed() const { return seed_; }
  Coupling mode() const { return mode_; }
  bool common_mode() const { return mode_ != Coupling::totally_independent; }
  int arity() const { return arity_; }

  double component(std::int64_t t, std::int64_t x, int i) const;
  UniformVec at(std::int64_t t, std::int64_t x) const;

 private:
  std::uint64_t seed_;
  Coupling mode_;
  int arity_;
};

}  // namespace doeblin
