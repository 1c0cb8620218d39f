#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "randcx/complex.hpp"
#include "randcx/homology.hpp"
#include "randcx/models.hpp"
#include "randcx/rng.hpp"

namespace randcx {

enum class ModelKind { kGnp, kLinialMeshulam, kClique, kMulti, kRips, kCech };

ModelKind parse_model_kind(const std::string& tag);
std::string to_string(ModelKind kind);

/// One random model with its scanned parameter. `param` is p for the
/// Erdos-Renyi style models (c with p = c/n when per_n is set) and r for the
/// geometric ones. For kMulti, probs are the p_i and param scales nothing.
struct ModelConfig {
  ModelKind kind = ModelKind::kGnp;
  std::size_t n = 0;
  double param = 0.0;
  bool per_n = false;
  int d = 2;                       // Y_d dimension, or ambient dimension for point clouds
  int max_dim = 2;                 // truncation for clique / geometric complexes
  std::vector<double> probs;       // multi-parameter model
  PointDistribution distribution = PointDistribution::kUniformCube;

  /// The probability or radius actually passed to the generator.
  double effective_param() const;
  ModelConfig with_param(double value) const;
};

/// Draws the complex of trial `seed.stream_index`. Deterministic in (config, seed).
SimplicialComplex sample(const ModelConfig& config, RngSeed seed);

/// A property of a complex. Parsed from "name[:arg[:arg]]":
///   connected | pure:d | betti-zero:k[:field] | betti-nonzero:k[:field] |
///   collapsible:d | garland:d | acyclic | giant:fraction | torsion-free:k
/// Field defaults to f2. "acyclic" means beta_k(F2) = 0 for every k >= 1
/// (a forest, for graphs). garland on a complex that is not pure d-dimensional is false.
struct PropertySpec {
  enum class Kind { kConnected, kPure, kBettiZero, kBettiNonzero, kCollapsible, kGarland, kAcyclic, kGiant, kTorsionFree };
  Kind kind = Kind::kConnected;
  int degree = 0;
  double fraction = 0.0;
  Field field = Field::f2();

  static PropertySpec parse(const std::string& text);
  std::string name() const;
};

/// Throws ResourceError when an invariant exceeds its budget.
bool evaluate(const PropertySpec& property, const SimplicialComplex& complex);

enum class Outcome : std::uint8_t { kFalse, kTrue, kError };

struct TrialRecord {
  RngSeed seed;
  ModelConfig config;
  std::vector<Outcome> outcomes;  // one per property
  double sample_seconds = 0.0;
  std::vector<double> property_seconds;
};

TrialRecord run_trial(const ModelConfig& config, const std::vector<PropertySpec>& properties, RngSeed seed);

/// Re-executes a record; the outcomes equal the recorded ones.
std::vector<Outcome> replay(const TrialRecord& record, const std::vector<PropertySpec>& properties);

/// Exact (Clopper-Pearson) two-sided interval for successes out of trials.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};
Interval clopper_pearson(std::size_t successes, std::size_t trials, double confidence = 0.95);

struct Estimate {
  std::string property;
  std::size_t successes = 0;
  std::size_t trials = 0;   // trials that produced a value
  std::size_t errors = 0;   // trials whose evaluation raised ResourceError
  double estimate = 0.0;
  Interval ci;
};

struct RunOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  unsigned jobs = 1;
  double confidence = 0.95;
  /// Stream index of the first trial; trial t uses stream first_stream + t.
  std::uint64_t first_stream = 0;
};

/// Calls body(i) for i in [0, count) on `jobs` threads. Results must be
/// written to slot i so that the output does not depend on scheduling.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

/// One estimate per property, all evaluated on the same samples.
std::vector<Estimate> estimate(const ModelConfig& config, const std::vector<PropertySpec>& properties,
                               const RunOptions& options);

struct ScanResult {
  std::string property;
  std::vector<double> grid;
  std::vector<double> estimates;
  std::vector<Interval> ci;
  std::vector<double> ci_halfwidth;
  std::vector<std::size_t> trials;
  std::vector<std::size_t> errors;
  std::optional<double> crossing;
};

/// Linear interpolation at the first pair of neighbouring grid points whose
/// estimates bracket 1/2.
std::optional<double> half_crossing(const std::vector<double>& grid, const std::vector<double>& estimates);

/// Estimates on every grid value of config.param. Trial t uses the same seed at
/// every grid point, so monotone properties give coupled, monotone curves.
/// DomainError unless the grid is sorted.
std::vector<ScanResult> scan(const ModelConfig& config, const std::vector<PropertySpec>& properties,
                             const std::vector<double>& grid, const RunOptions& options);

void write_scan_csv(std::ostream& out, const ScanResult& result);

struct GiantRow {
  double c = 0.0;
  double mean_fraction = 0.0;   // largest component / n
  double stderr_fraction = 0.0;
  double mean_largest = 0.0;    // vertices in the largest component
  double largest_over_log_n = 0.0;
  std::size_t trials = 0;
};

/// Largest component of G(n, c/n) per c.
std::vector<GiantRow> giant_component_experiment(std::size_t n, const std::vector<double>& c_grid,
                                                 const RunOptions& options);

void write_giant_csv(std::ostream& out, const std::vector<GiantRow>& rows);

inline constexpr double kPersistenceCapFactor = 2.5;

struct PersistenceRow {
  std::size_t n = 0;
  double cap = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  /// median / (log n / log log n)^{1/k}
  double ratio = 0.0;
  std::size_t censored = 0;  // trials with a class still alive at the cap
  std::size_t trials = 0;
};

/// Maximal death/birth persistence of degree-k classes of the Rips
/// filtration on n uniform points in [0,1]^d, scanned up to
/// cap_factor * (log n / (omega_d n))^{1/d} with omega_d the unit-ball volume
/// (sqrt(log n / (pi n)) in the plane). Requires d >= 2 and 1 <= k <= d-1;
/// desk-scale runs use d = 2, k = 1.
std::vector<PersistenceRow> persistence_experiment(const std::vector<std::size_t>& n_list, int d, int k,
                                                   const RunOptions& options,
                                                   double cap_factor = kPersistenceCapFactor);

void write_persistence_csv(std::ostream& out, const std::vector<PersistenceRow>& rows);

/// Two-sample chi-squared test on integer histograms. Adjacent values are
/// pooled left to right until each bin expects at least 5 in both samples; a
/// short remainder joins the last bin. Returns the p-value (1 when fewer than
/// two bins remain).
double chi_squared_two_sample(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

struct LinkCheck {
  double p_value = 1.0;
  std::vector<std::size_t> link_edges;   // per trial
  std::vector<std::size_t> graph_edges;  // per trial
};

/// Edge counts of lk(0) in Y_2(n, p) versus G(n-1, q) (q = p unless given),
/// compared by the two-sample chi-squared test.
LinkCheck link_distribution_check(std::size_t n, double p, const RunOptions& options,
                                  std::optional<double> q = std::nullopt);

struct BettiCurveRow {
  double p = 0.0;
  double expected_edges = 0.0;
  std::vector<double> mean_betti;  // degrees 0 .. max_degree
  double prediction = 0.0;         // |E[chi]|
};

/// Mean Betti numbers of X(n, p) per p (rational policy) with |E[chi]|.
/// Faces are generated up to max_degree + 1 so the listed degrees are exact.
std::vector<BettiCurveRow> betti_curves(std::size_t n, const std::vector<double>& p_grid, int max_degree,
                                        const RunOptions& options);

void write_betti_curves_csv(std::ostream& out, const std::vector<BettiCurveRow>& rows);

struct ScalingRow {
  std::size_t n = 0;
  double r = 0.0;
  double mean_betti = 0.0;
  double normaliser = 0.0;  // n^a r^b
  double ratio = 0.0;
  std::size_t trials = 0;
};

/// Subcritical E[beta_k] of the Rips or Cech complex on uniform points in
/// [0,1]^d with r = scale * n^{-exponent}, normalised by geometric_scaling.
std::vector<ScalingRow> scaling_experiment(const std::string& model, int d, int k,
                                           const std::vector<std::size_t>& n_list, double scale, double exponent,
                                           const RunOptions& options);

void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows);

}  // namespace randcx
