#include "doeblin/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "doeblin/errors.hpp"

namespace doeblin {
namespace {

constexpr std::int64_t kZetaTableSize = 1 << 16;

// Riemann zeta for s > 1 via direct summation plus Euler-Maclaurin tail,
// relative error well below 1e-12 for s in (1, 3].
double riemann_zeta(double s) {
  const std::int64_t n = 200000;
  double sum = 0.0;
  for (std::int64_t j = n; j >= 1; --j) sum += std::pow(double(j), -s);
  const double nn = double(n);
  sum += std::pow(nn, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(nn, -s);
  sum -= (s / 12.0) * std::pow(nn, -s - 1.0);
  return sum;
}

}  // namespace

double JumpDistribution::zeta_tail(std::int64_t k) const {
  // sum_{j>k} j^-(s) with s = alpha+1, un-normalized.
  const double s = alpha_ + 1.0;
  const double kk = double(k);
  double t = std::pow(kk, 1.0 - s) / (s - 1.0);
  t -= 0.5 * std::pow(kk, -s);
  t += (s / 12.0) * std::pow(kk, -s - 1.0);
  return t;
}

JumpDistribution JumpDistribution::geometric(double p) {
  if (!(p > 0.0 && p < 1.0)) throw SpecError("geometric: p must be in (0,1)");
  JumpDistribution d;
  d.kind_ = Kind::geometric;
  d.p_ = p;
  std::ostringstream os;
  os << "geo:" << p;
  d.spec_ = os.str();
  return d;
}

JumpDistribution JumpDistribution::shifted_poisson(double lambda) {
  if (!(lambda > 0.0)) throw SpecError("poisson: lambda must be > 0");
  JumpDistribution d;
  d.kind_ = Kind::shifted_poisson;
  d.lambda_ = lambda;
  // cumulative table until it saturates in double precision
  double term = std::exp(-lambda);  // P(Pois = 0) -> pmf at k=1
  double cum = term;
  d.cdf_table_.push_back(cum);
  for (std::int64_t k = 2; cum < 1.0 && k < 4000000; ++k) {
    term *= lambda / double(k - 1);
    cum += term;
    d.cdf_table_.push_back(std::min(cum, 1.0));
    if (1.0 - cum < 1e-18 && term < 1e-18) break;
  }
  std::ostringstream os;
  os << "poi:" << lambda;
  d.spec_ = os.str();
  return d;
}

JumpDistribution JumpDistribution::zeta(double alpha) {
  if (!(alpha > 0.0)) throw SpecError("zeta: alpha must be > 0");
  JumpDistribution d;
  d.kind_ = Kind::zeta;
  d.alpha_ = alpha;
  d.zeta_norm_ = riemann_zeta(alpha + 1.0);
  d.cdf_table_.reserve(kZetaTableSize);
  double cum = 0.0;
  for (std::int64_t k = 1; k <= kZetaTableSize; ++k) {
    cum += std::pow(double(k), -(alpha + 1.0)) / d.zeta_norm_;
    d.cdf_table_.push_back(cum);
  }
  std::ostringstream os;
  os << "zeta:" << alpha;
  d.spec_ = os.str();
  return d;
}

JumpDistribution JumpDistribution::empirical(std::vector<std::pair<std::int64_t, double>> entries) {
  if (entries.empty()) throw SpecError("empirical: no entries");
  std::sort(entries.begin(), entries.end());
  double total = 0.0;
  for (size_t i = 0; i < entries.size(); ++i) {
    auto [v, p] = entries[i];
    if (v < 1) throw SpecError("empirical: support must be strictly positive");
    if (!(p > 0.0)) throw SpecError("empirical: probabilities must be positive");
    if (i > 0 && entries[i - 1].first == v) throw SpecError("empirical: duplicate value");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw SpecError("empirical: probabilities must sum to 1");
  JumpDistribution d;
  d.kind_ = Kind::empirical;
  d.emp_ = std::move(entries);
  double cum = 0.0;
  for (auto& [v, p] : d.emp_) {
    cum += p;
    d.emp_cdf_.push_back(cum);
  }
  d.emp_cdf_.back() = 1.0;
  std::ostringstream os;
  os << "emp:";
  for (size_t i = 0; i < d.emp_.size(); ++i) {
    if (i) os << ',';
    os << d.emp_[i].first << '=' << d.emp_[i].second;
  }
  d.spec_ = os.str();
  return d;
}

JumpDistribution JumpDistribution::parse(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw SpecError("distribution spec needs ':': " + spec);
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  try {
    if (kind == "geo") return geometric(std::stod(rest));
    if (kind == "poi") return shifted_poisson(std::stod(rest));
    if (kind == "zeta") return zeta(std::stod(rest));
    if (kind == "emp") {
      std::vector<std::pair<std::int64_t, double>> entries;
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw SpecError("empirical entry needs '=': " + item);
        entries.emplace_back(std::stoll(item.substr(0, eq)), std::stod(item.substr(eq + 1)));
      }
      return empirical(std::move(entries));
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const SpecError*>(&e)) throw;
    throw SpecError("bad distribution spec: " + spec);
  }
  throw SpecError("unknown distribution kind: " + kind);
}

double JumpDistribution::pmf(std::int64_t k) const {
  if (k < 1) return 0.0;
  switch (kind_) {
    case Kind::geometric:
      return p_ * std::pow(1.0 - p_, double(k - 1));
    case Kind::shifted_poisson: {
      double lg = -lambda_ + double(k - 1) * std::log(lambda_) - std::lgamma(double(k));
      return std::exp(lg);
    }
    case Kind::zeta:
      return std::pow(double(k), -(alpha_ + 1.0)) / zeta_norm_;
    case Kind::empirical: {
      auto it = std::lower_bound(emp_.begin(), emp_.end(), std::make_pair(k, 0.0));
      if (it != emp_.end() && it->first == k) return it->second;
      return 0.0;
    }
  }
  return 0.0;
}

double JumpDistribution::cdf(std::int64_t k) const {
  if (k < 1) return 0.0;
  switch (kind_) {
    case Kind::geometric:
      return 1.0 - std::pow(1.0 - p_, double(k));
    case Kind::shifted_poisson:
      if (size_t(k) >= cdf_table_.size()) return 1.0;
      return cdf_table_[size_t(k - 1)];
    case Kind::zeta:
      if (k <= std::int64_t(cdf_table_.size())) return cdf_table_[size_t(k - 1)];
      return 1.0 - zeta_tail(k) / zeta_norm_;
    case Kind::empirical: {
      auto it = std::upper_bound(emp_.begin(), emp_.end(),
                                 std::make_pair(k, std::numeric_limits<double>::infinity()));
      if (it == emp_.begin()) return 0.0;
      return emp_cdf_[size_t(it - emp_.begin() - 1)];
    }
  }
  return 0.0;
}

std::int64_t JumpDistribution::quantile(double u) const {
  switch (kind_) {
    case Kind::geometric: {
      // min{k : 1-(1-p)^k > u}, ties resolved rightward
      double k = std::ceil(std::log1p(-u) / std::log1p(-p_));
      std::int64_t ki = std::max<std::int64_t>(1, std::int64_t(k) - 1);
      while (cdf(ki) <= u) ++ki;
      while (ki > 1 && cdf(ki - 1) > u) --ki;
      return ki;
    }
    case Kind::shifted_poisson: {
      auto it = std::upper_bound(cdf_table_.begin(), cdf_table_.end(), u);
      if (it == cdf_table_.end()) return std::int64_t(cdf_table_.size());
      return std::int64_t(it - cdf_table_.begin()) + 1;
    }
    case Kind::zeta: {
      if (u < cdf_table_.back()) {
        auto it = std::upper_bound(cdf_table_.begin(), cdf_table_.end(), u);
        return std::int64_t(it - cdf_table_.begin()) + 1;
      }
      // deep tail: binary search directly on the cdf, so the inversion
      // identity cdf(q(u)) > u >= cdf(q(u)-1) holds by construction
      constexpr std::int64_t kCap = std::int64_t(1) << 62;
      // saturate: for small alpha the true quantile can overflow 64 bits
      if (!(cdf(kCap) > u)) return kCap;
      std::int64_t lo = kZetaTableSize, hi = kCap;
      while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (cdf(mid) > u) hi = mid;
        else lo = mid;
      }
      return hi;
    }
    case Kind::empirical: {
      auto it = std::upper_bound(emp_cdf_.begin(), emp_cdf_.end(), u);
      if (it == emp_cdf_.end()) return emp_.back().first;
      return emp_[size_t(it - emp_cdf_.begin())].first;
    }
  }
  return 1;
}

std::optional<double> JumpDistribution::mean() const {
  switch (kind_) {
    case Kind::geometric:
      return 1.0 / p_;
    case Kind::shifted_poisson:
      return lambda_ + 1.0;
    case Kind::zeta:
      if (alpha_ <= 1.0) return std::nullopt;
      return riemann_zeta(alpha_) / zeta_norm_;
    case Kind::empirical: {
      double m = 0.0;
      for (auto& [v, p] : emp_) m += double(v) * p;
      return m;
    }
  }
  return std::nullopt;
}

std::optional<std::int64_t> JumpDistribution::support_bound() const {
  if (kind_ == Kind::empirical) return emp_.back().first;
  return std::nullopt;
}

std::int64_t JumpDistribution::support_gcd() const {
  if (kind_ != Kind::empirical) return 1;
  std::int64_t g = 0;
  for (auto& [v, p] : emp_) g = std::gcd(g, v);
  return g;
}

std::int64_t sample_jump(const JumpDistribution& dist, double u) {
  return dist.quantile(u);
}

}  // namespace doeblin
