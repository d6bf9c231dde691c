#include <doctest.h>

#include "doeblin/errors.hpp"
#include "doeblin/noise.hpp"

using namespace doeblin;

TEST_CASE("common mode ignores the state coordinate") {
  const NoiseField f(42, Coupling::common, 2);
  const UniformVec a = f.at(5, 0);
  const UniformVec b = f.at(5, 17);
  CHECK(a[0] == b[0]);
  CHECK(a[1] == b[1]);
  const NoiseField g(42, Coupling::maximal_shift, 1);
  CHECK(g.at(-3, 2)[0] == g.at(-3, 999)[0]);
}

TEST_CASE("totally independent mode separates states") {
  int equal = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const NoiseField f(seed, Coupling::totally_independent, 1);
    if (f.component(5, 0, 0) == f.component(5, 1, 0)) ++equal;
  }
  CHECK(equal == 0);
}

TEST_CASE("per-site components are distinct") {
  const NoiseField f(7, Coupling::totally_independent, 2);
  for (std::int64_t t = -50; t < 50; ++t) CHECK(f.component(t, 3, 0) != f.component(t, 3, 1));
}

TEST_CASE("fields with equal seeds replay identically") {
  const NoiseField a(123456789, Coupling::totally_independent, 2);
  const NoiseField b(123456789, Coupling::totally_independent, 2);
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t t = (i * 2654435761LL) % 100003 - 50000;
    const std::int64_t x = (i * 40503LL) % 997;
    const UniformVec ua = a.at(t, x);
    const UniformVec ub = b.at(t, x);
    CHECK(ua[0] == ub[0]);
    CHECK(ua[1] == ub[1]);
  }
}

TEST_CASE("uniforms live in the unit interval") {
  const NoiseField f(9, Coupling::totally_independent, 1);
  for (std::int64_t t = -1000; t < 1000; ++t) {
    const double u = f.component(t, t / 3, 0);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("coupling names parse and print") {
  CHECK(parse_coupling("independent") == Coupling::totally_independent);
  CHECK(parse_coupling("totally_independent") == Coupling::totally_independent);
  CHECK(parse_coupling("common") == Coupling::common);
  CHECK(parse_coupling("maximal_shift") == Coupling::maximal_shift);
  CHECK_THROWS_AS((void)parse_coupling("bogus"), SpecError);
  CHECK(parse_coupling(coupling_name(Coupling::common)) == Coupling::common);
  CHECK(parse_coupling(coupling_name(Coupling::maximal_shift)) == Coupling::maximal_shift);
}
