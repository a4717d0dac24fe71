#include "qperc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qperc {

double survival_probability(double delta, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("survival: tol <= 0");
  if (!std::isfinite(delta)) throw std::invalid_argument("survival: bad delta");
  if (delta <= 0.0) return 0.0;
  const double lambda = 1.0 + delta;
  auto f = [lambda](double g) { return 1.0 - std::exp(-lambda * g) - g; };
  double lo = std::min(tol, 0.5), hi = 1.0 - std::min(tol, 0.5);
  // f > 0 just right of 0 for delta > 0 and f(hi) <= tol always; the bracket
  // only degenerates for delta so small/large that an endpoint already meets
  // the residual tolerance.
  if (std::fabs(f(lo)) <= tol && f(lo) <= 0.0) return lo;
  if (f(hi) >= 0.0) return hi;  // root within tol of 1 (huge delta)
  double mid = 0.5;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::fabs(fm) <= tol) return mid;
    (fm > 0.0 ? lo : hi) = mid;
  }
  return mid;
}

namespace {

BoundResult from_log(double log_value, std::string formula) {
  BoundResult r;
  r.log_value = log_value;
  r.value = std::exp(log_value);
  r.clipped = std::clamp(r.value, 0.0, 1.0);
  r.formula = std::move(formula);
  return r;
}

}  // namespace

BoundResult chernoff_deviation(uint64_t N, double p, double a) {
  if (N == 0 || !(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("chernoff_deviation: need N >= 1, p in (0,1]");
  const double np = static_cast<double>(N) * p;
  if (!(a > 0.0 && a <= np / 2.0))
    throw std::invalid_argument(
        "chernoff_deviation: a outside (0, Np/2]");
  return from_log(std::log(2.0) - a * a / (4.0 * np),
                  "2*exp(-a^2/(4Np))");
}

BoundResult chernoff_upper(uint64_t N, double p, double b) {
  if (N == 0 || !(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("chernoff_upper: need N >= 1, p in (0,1]");
  if (!(b > 0.0)) throw std::invalid_argument("chernoff_upper: b <= 0");
  const double np = static_cast<double>(N) * p;
  return from_log(b * np * (1.0 - std::log(b)), "(e/b)^(bNp)");
}

double harper_bound(uint64_t s, uint32_t d) {
  if (d < 1 || d > 63) throw std::invalid_argument("harper_bound: bad d");
  if (s < 1 || s > (uint64_t{1} << (d - 1)))
    throw std::invalid_argument("harper_bound: s outside [1, 2^{d-1}]");
  const double sd = static_cast<double>(s);
  return sd * (static_cast<double>(d) - std::log2(sd));
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("binary_entropy: x outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double inverse_binary_entropy(double y) {
  if (!(y >= 0.0 && y <= 1.0))
    throw std::invalid_argument("inverse_binary_entropy: y outside [0,1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (binary_entropy(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BoundResult tree_count_bound(uint64_t k, uint64_t max_degree) {
  if (k < 1 || max_degree < 1)
    throw std::invalid_argument("tree_count_bound: need k, Delta >= 1");
  const double kk = static_cast<double>(k);
  const double logd = std::log(static_cast<double>(max_degree));
  // k^{k-2} Delta^{k-1} / (k-1)!  vs  (e Delta)^{k-1}, both in log space
  const double log_a =
      (kk - 2.0) * std::log(kk) + (kk - 1.0) * logd - std::lgamma(kk);
  const double log_b = (kk - 1.0) * (1.0 + logd);
  if (log_a <= log_b) return from_log(log_a, "k^(k-2)Delta^(k-1)/(k-1)!");
  return from_log(log_b, "(e*Delta)^(k-1)");
}

double b_of_s(double s, uint32_t d) {
  if (d < 1 || d > 63) throw std::invalid_argument("b_of_s: bad d");
  const double n = std::ldexp(1.0, static_cast<int>(d));
  if (!(s >= 1.0 && s <= n))
    throw std::invalid_argument("b_of_s: s outside [1, 2^d]");
  return 1.0 - std::log2(s) / static_cast<double>(d);
}

GrowthSchedule growth_schedule(uint32_t d, double c7, double c8, double start,
                               double target) {
  if (!(c7 > 0.0) || !(c8 > 0.0))
    throw std::invalid_argument("growth_schedule: c7, c8 must be positive");
  const double n = std::ldexp(1.0, static_cast<int>(d));
  if (!(start >= 1.0 && start <= target && target <= n))
    throw std::invalid_argument("growth_schedule: need 1 <= start <= target <= 2^d");
  GrowthSchedule out;
  double x = start;
  constexpr uint64_t kMaxRounds = 1'000'000;
  while (x < target) {
    if (out.rounds >= kMaxRounds)
      throw std::runtime_error(
          "growth_schedule: did not reach target (target too close to 2^d)");
    const double b = b_of_s(x, d);
    out.total_radius += 2.0 * static_cast<double>(d) / (c8 * b) + 5.0;
    x *= 1.0 + c7 * b;
    ++out.rounds;
  }
  return out;
}

}  // namespace qperc
