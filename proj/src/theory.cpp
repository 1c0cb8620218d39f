#include "randcx/theory.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "randcx/errors.hpp"
#include "randcx/rng.hpp"

namespace randcx {

namespace {

// Bisection keeping f(lo) < 0 < f(hi); the tolerance is relative to the bracket end.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tolerance) {
  if (!(f(lo) < 0.0) || !(f(hi) > 0.0)) throw DomainError("bisect: bracket does not straddle a sign change");
  while (hi - lo > tolerance * hi) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double v = f(mid);
    if (v == 0.0) return mid;
    (v < 0.0 ? lo : hi) = mid;
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

void require_d(int d, const char* what) {
  if (d < 2) throw DomainError(std::string(what) + ": d must be at least 2");
}

void require_tolerance(double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("root tolerance must be positive");
}

double log_factorial(int m) { return std::lgamma(static_cast<double>(m) + 1.0); }

}  // namespace

ThresholdConstant c_star(int d, double tolerance) {
  require_d(d, "c_star");
  require_tolerance(tolerance);
  const double dd = d;
  // Negative near 0 (log x dominates), positive just below the trivial root x = 1.
  auto f = [dd](double x) { return (dd + 1.0) * (1.0 - x) + (1.0 + dd * x) * std::log(x); };
  const double x = bisect(f, 1e-12, 1.0 - 1e-12, tolerance);
  ThresholdConstant out;
  out.d = d;
  out.kind = ConstantKind::kTopHomology;
  out.root = x;
  out.residual = std::abs(f(x));
  out.value = -std::log(x) / std::pow(1.0 - x, dd);
  return out;
}

ThresholdConstant c_collapse(int d, double tolerance) {
  require_d(d, "c_collapse");
  require_tolerance(tolerance);
  const double dd = d;
  // Stationarity of x / (1 - e^{-x})^d; negative for small x when d >= 2.
  auto f = [dd](double x) { return std::expm1(x) - dd * x; };
  const double x = bisect(f, 1e-6, 50.0, tolerance);
  ThresholdConstant out;
  out.d = d;
  out.kind = ConstantKind::kCollapse;
  out.root = x;
  out.residual = std::abs(f(x));
  out.value = x / std::pow(-std::expm1(-x), dd);
  return out;
}

const std::vector<std::string>& threshold_tags() {
  static const std::vector<std::string> tags = {
      "gnp-connectivity",   // G connected, log n / n
      "gnp-pure",           // no isolated vertices, log n / n
      "gnp-cycles",         // H_1(G) != 0, 1/n
      "gnp-giant",          // giant component, 1/n
      "lm-homology",        // H_{d-1}(Y_d) = 0, d log n / n
      "lm-pure",            // Y_d pure d-dimensional, d log n / n
      "lm-collapse",        // Y_d not d-collapsible, c_d / n
      "lm-top-homology",    // H_d(Y_d) != 0, c_d* / n
      "clique-pi1",         // pi_1(X) = 0, n^{-1/3}
      "clique-appearance",  // H_k(X) != 0, n^{-1/k}
      "clique-pure",        // X^k pure, ((k/2+1) log n / n)^{1/(k+1)}
      "clique-vanishing",   // H_k(X; R) = 0, ((k/2+1) log n + (k/2) log log n)/n)^{1/(k+1)}
      "cech-appearance",    // H_k(C) != 0, n r^d = n^{-(k+2)/(k+1)}
      "cech-vanishing",     // H_k(C) = 0, n r^d = log n
      "rips-appearance",    // H_k(VR) != 0, n r^d = n^{-(2k+2)/(2k+1)}
      "rips-vanishing",     // H_k(VR) = 0, n r^d = log n (up to a constant)
  };
  return tags;
}

double threshold_function(const std::string& tag, long long n, int d_or_k) {
  if (n < 3) throw DomainError("threshold_function: n must be at least 3");
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  const double k = d_or_k;
  auto need = [&](int lo) {
    if (d_or_k < lo) throw DomainError("threshold_function: " + tag + " requires d_or_k >= " + std::to_string(lo));
  };
  if (tag == "gnp-connectivity" || tag == "gnp-pure") return ln / nn;
  if (tag == "gnp-cycles" || tag == "gnp-giant") return 1.0 / nn;
  if (tag == "lm-homology" || tag == "lm-pure") {
    need(1);
    return k * ln / nn;
  }
  if (tag == "lm-collapse" || tag == "lm-top-homology") {
    need(1);
    // d = 1 is the graph case: cycles appear at 1/n.
    if (d_or_k == 1) return 1.0 / nn;
    return (tag == "lm-collapse" ? c_collapse(d_or_k) : c_star(d_or_k)).value / nn;
  }
  if (tag == "clique-pi1") return std::pow(nn, -1.0 / 3.0);
  if (tag == "clique-appearance") {
    need(1);
    return std::pow(nn, -1.0 / k);
  }
  if (tag == "clique-pure") {
    need(1);
    return std::pow((k / 2.0 + 1.0) * ln / nn, 1.0 / (k + 1.0));
  }
  if (tag == "clique-vanishing") {
    need(1);
    return std::pow(((k / 2.0 + 1.0) * ln + (k / 2.0) * std::log(ln)) / nn, 1.0 / (k + 1.0));
  }
  if (tag == "cech-appearance") {
    need(1);
    return std::pow(nn, -(k + 2.0) / (k + 1.0));
  }
  if (tag == "rips-appearance") {
    need(1);
    return std::pow(nn, -(2.0 * k + 2.0) / (2.0 * k + 1.0));
  }
  if (tag == "cech-vanishing" || tag == "rips-vanishing") return ln;
  std::string msg = "threshold_function: unknown tag '" + tag + "'; supported:";
  for (const auto& t : threshold_tags()) msg += " " + t;
  throw DomainError(msg);
}

double prob_acyclic_limit(double c) {
  if (!(c >= 0.0)) throw DomainError("prob_acyclic_limit: c must be non-negative");
  if (c >= 1.0) throw DomainError("prob_acyclic_limit: c >= 1, cycles appear w.h.p. (limit 0)");
  return std::sqrt(1.0 - c) * std::exp(c / 2.0 + c * c / 4.0);
}

double expected_simplex_boundaries(int d, double c) {
  if (d < 1) throw DomainError("expected_simplex_boundaries: d must be at least 1");
  if (!(c >= 0.0)) throw DomainError("expected_simplex_boundaries: c must be non-negative");
  if (c == 0.0) return 0.0;
  return std::exp((d + 2) * std::log(c) - log_factorial(d + 2));
}

double prob_top_vanishing_limit(int d, double c) {
  if (d < 2) throw DomainError("prob_top_vanishing_limit: d must be at least 2");
  const double mean = expected_simplex_boundaries(d, c);
  if (c >= c_star(d).value) throw DomainError("prob_top_vanishing_limit: requires c below c_d*");
  return std::exp(-mean);
}

double expected_faces_clique(long long n, double p, int i) {
  if (n < 0 || i < 0) throw DomainError("expected_faces_clique: n and i must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("expected_faces_clique: p must lie in [0,1]");
  const long long m = static_cast<long long>(i) + 1;
  if (m > n) return 0.0;
  const double edges = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
  if (p == 0.0 && edges > 0) return 0.0;
  long double binom = 1.0L;
  for (long long j = 1; j <= m; ++j) binom = binom * static_cast<long double>(n - m + j) / static_cast<long double>(j);
  if (std::isfinite(static_cast<double>(binom))) return static_cast<double>(binom * std::pow(static_cast<long double>(p), edges));
  const double pw = edges * std::log(p);
  const double log_binom = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(m) + 1.0) -
                           std::lgamma(static_cast<double>(n - m) + 1.0);
  return std::exp(log_binom + pw);
}

double euler_prediction(long long n, double p) {
  if (n < 0) throw DomainError("euler_prediction: n must be non-negative");
  double sum = 0.0, magnitude = 0.0, previous = std::numeric_limits<double>::infinity();
  for (long long i = 0; i < n; ++i) {
    const double term = expected_faces_clique(n, p, static_cast<int>(i));
    sum += (i % 2 == 0) ? term : -term;
    magnitude += term;
    // Consecutive term ratios decrease in i, so once the terms shrink they keep shrinking.
    if (term < previous && term < 1e-15 * magnitude) break;
    previous = term;
  }
  return std::abs(sum);
}

BettiPrediction expected_betti_first_order(long long n, double p, int k) {
  if (k < 1) throw DomainError("expected_betti_first_order: k must be at least 1");
  BettiPrediction out;
  out.value = expected_faces_clique(n, p, k);
  const double nn = static_cast<double>(n);
  out.window_lo = std::pow(nn, -1.0 / k);
  out.window_hi = std::pow(nn, -1.0 / (k + 1.0));
  out.in_window = p > out.window_lo && p < out.window_hi;
  return out;
}

std::string to_string(Domination d) {
  switch (d) {
    case Domination::kVanishes: return "vanishes";
    case Domination::kNonvanishes: return "nonvanishes";
    case Domination::kIndeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Domination fowler_domination(const std::vector<double>& alphas, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > alphas.size())
    throw DomainError("fowler_domination: k must satisfy 1 <= k <= number of exponents");
  for (double a : alphas)
    if (!(a >= 0.0)) throw DomainError("fowler_domination: exponents must be non-negative");
  double top = 0.0, below = 0.0;
  for (int i = 1; i <= k; ++i) {
    top += alphas[i - 1] * static_cast<double>(binomial(k, i));
    below += alphas[i - 1] * static_cast<double>(binomial(k - 1, i));
  }
  if (top < 1.0) return Domination::kVanishes;
  if (below < 1.0) return Domination::kNonvanishes;
  return Domination::kIndeterminate;
}

ScalingExponents geometric_scaling(const std::string& model, int d, int k) {
  if (d < 2 || k < 1) throw DomainError("geometric_scaling: requires d >= 2 and k >= 1");
  if (model == "rips") return {2 * k + 2, d * (2 * k + 1)};
  if (model == "cech") {
    if (k > d - 1) throw DomainError("geometric_scaling: cech requires k <= d-1");
    return {k + 2, d * (k + 1)};
  }
  throw DomainError("geometric_scaling: model must be rips or cech");
}

VanishingWindow bw_window(long long n, int d, int k) {
  if (n < 3) throw DomainError("bw_window: n must be at least 3");
  if (d < 2 || k < 1 || k > d - 1) throw DomainError("bw_window: requires d >= 2 and 1 <= k <= d-1");
  const double ln = std::log(static_cast<double>(n));
  return {ln + k * std::log(ln), ln + (k - 2) * std::log(ln)};
}

}  // namespace randcx
