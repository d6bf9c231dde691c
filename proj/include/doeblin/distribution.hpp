#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace doeblin {

/// Law of a strictly positive integer jump. Supported families: geometric(p)
/// on {1,2,...}, Poisson(lambda) shifted to {1,2,...}, zeta(alpha) with
/// pmf proportional to j^-(alpha+1), and finite empirical laws.
///
/// quantile() is the right-continuous generalized inverse
/// min{k : cdf(k) > u} (ties at atoms of the cdf resolve rightward), so
/// sampling with a uniform u in [0,1) reproduces the law exactly.
class JumpDistribution {
 public:
  enum class Kind { geometric, shifted_poisson, zeta, empirical };

  static JumpDistribution geometric(double p);
  static JumpDistribution shifted_poisson(double lambda);
  static JumpDistribution zeta(double alpha);
  static JumpDistribution empirical(std::vector<std::pair<std::int64_t, double>> entries);

  /// Parses "geo:0.5", "poi:25", "zeta:0.75", "emp:1=0.5,2=0.5".
  static JumpDistribution parse(const std::string& spec);

  Kind kind() const { return kind_; }
  double pmf(std::int64_t k) const;
  double cdf(std::int64_t k) const;
  std::int64_t quantile(double u) const;
  /// Mean of the law; nullopt means infinite (zeta with alpha <= 1).
  std::optional<double> mean() const;
  /// Largest support value, or nullopt for unbounded support.
  std::optional<std::int64_t> support_bound() const;
  /// gcd of the support (1 for the unbounded families).
  std::int64_t support_gcd() const;

  std::string spec_string() const { return spec_; }

 private:
  JumpDistribution() = default;

  Kind kind_ = Kind::geometric;
  std::string spec_;
  double p_ = 0.0;       // geometric
  double lambda_ = 0.0;  // shifted poisson
  double alpha_ = 0.0;   // zeta
  double zeta_norm_ = 0.0;  // zeta(alpha_+1), series value
  std::vector<std::pair<std::int64_t, double>> emp_;  // sorted by value
  std::vector<double> emp_cdf_;
  // cdf table for poisson/zeta, cum[k-1] = cdf(k)
  std::vector<double> cdf_table_;

  double zeta_tail(std::int64_t k) const;  // sum_{j>k} pmf(j), Euler-Maclaurin
};

std::int64_t sample_jump(const JumpDistribution& dist, double u);

}  // namespace doeblin
