#pragma once

#include <string>
#include <utility>
#include <vector>

namespace randcx {

enum class ConstantKind { kCollapse, kTopHomology };

struct ThresholdConstant {
  int d = 0;
  double value = 0.0;
  ConstantKind kind = ConstantKind::kTopHomology;
  double residual = 0.0;  // |defining equation| at the root
  double root = 0.0;      // the inner root x the value is computed from
};

/// Default relative bisection tolerance on the root; bisection stops earlier when the
/// midpoint can no longer be represented between the endpoints.
inline constexpr double kRootTolerance = 1e-15;

/// Top-homology constant c_d*: x in (0,1) solving
/// (d+1)(1-x) + (1+dx) log x = 0, then c = -log x / (1-x)^d. Requires d >= 2.
ThresholdConstant c_star(int d, double tolerance = kRootTolerance);

/// Collapsibility constant c_d = min_{x>0} x / (1-e^{-x})^d. The minimiser
/// solves e^x - 1 - dx = 0; the residual refers to that equation. Requires d >= 2.
ThresholdConstant c_collapse(int d, double tolerance = kRootTolerance);

/// Tags accepted by threshold_function, in a stable order.
const std::vector<std::string>& threshold_tags();

/// Leading-order threshold for a (model, property) pair. Tags for
/// Erdos-Renyi, Linial-Meshulam and clique models return p; the geometric
/// tags (cech-*, rips-*) return the value of n r^d. Lower-order terms of the
/// form omega(1) are dropped. Throws DomainError for n < 3, an unknown tag
/// (the message lists the supported ones) or an invalid d_or_k.
double threshold_function(const std::string& tag, long long n, int d_or_k);

/// Limit of P[H_1(G(n, c/n)) = 0]: sqrt(1-c) exp(c/2 + c^2/4). The limit is
/// 0 for c >= 1, which is reported as DomainError since the formula does not apply.
double prob_acyclic_limit(double c);

/// Poisson mean c^{d+2}/(d+2)! of boundary-of-(d+1)-simplex subcomplexes in Y_d(n, c/n).
double expected_simplex_boundaries(int d, double c);

/// exp(-c^{d+2}/(d+2)!); DomainError unless 0 <= c < c_d*.
double prob_top_vanishing_limit(int d, double c);

/// E[f_i] of X(n,p): C(n, i+1) p^{C(i+1,2)}.
double expected_faces_clique(long long n, double p, int i);

/// |sum_i (-1)^i E[f_i]| for X(n,p). Summation stops once the terms are
/// decreasing and fall below 1e-15 of the sum of magnitudes so far.
double euler_prediction(long long n, double p);

struct BettiPrediction {
  double value = 0.0;
  bool in_window = false;
  double window_lo = 0.0;  // n^{-1/k}
  double window_hi = 0.0;  // n^{-1/(k+1)}
};

/// Leading-order E[beta_k] of X(n,p), C(n,k+1) p^{C(k+1,2)}, valid when
/// n^{-1/k} << p << n^{-1/(k+1)}. The value is returned outside the window
/// too, with in_window = false. Requires k >= 1.
BettiPrediction expected_betti_first_order(long long n, double p, int k);

enum class Domination { kVanishes, kNonvanishes, kIndeterminate };

std::string to_string(Domination d);

/// Rational cohomology H^{k-1} of the multi-parameter complex with
/// p_i = n^{-alpha_i}: vanishes when sum_{i<=k} alpha_i C(k,i) < 1,
/// non-vanishes when that sum is >= 1 and sum_{i<k} alpha_i C(k-1,i) < 1.
/// Otherwise neither hypothesis holds. DomainError unless 1 <= k <= |alphas|
/// and all alphas are non-negative.
Domination fowler_domination(const std::vector<double>& alphas, int k);

struct ScalingExponents {
  int n_exponent = 0;
  int r_exponent = 0;
};

/// Normalisation n^a r^b for the subcritical E[beta_k]: (2k+2, d(2k+1)) for
/// "rips" with d >= 2, k >= 1; (k+2, d(k+1)) for "cech" with d >= 2 and 1 <= k <= d-1.
ScalingExponents geometric_scaling(const std::string& model, int d, int k);

struct VanishingWindow {
  double vanish_above = 0.0;    // beta_k = 0 once n r^d >= log n + k log log n
  double nonvanish_below = 0.0; // beta_k -> inf while n r^d <= log n + (k-2) log log n
};

/// Critical-regime window for the Cech complex of uniform points, as values of n r^d.
/// Requires d >= 2, 1 <= k <= d-1 and n >= 3.
VanishingWindow bw_window(long long n, int d, int k);

}  // namespace randcx
