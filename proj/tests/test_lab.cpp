#include <doctest.h>

#include <cmath>
#include <sstream>

#include "randcx/errors.hpp"
#include "randcx/lab.hpp"
#include "randcx/persistence.hpp"

using namespace randcx;

namespace {

ModelConfig gnp(std::size_t n, double p) {
  ModelConfig c;
  c.kind = ModelKind::kGnp;
  c.n = n;
  c.param = p;
  return c;
}

ModelConfig lm(std::size_t n, double p) {
  ModelConfig c;
  c.kind = ModelKind::kLinialMeshulam;
  c.n = n;
  c.d = 2;
  c.param = p;
  return c;
}

// P[Binomial(n, q) >= x] by direct summation of the pmf.
double upper_tail(std::size_t x, std::size_t n, double q) {
  double s = 0;
  for (std::size_t i = x; i <= n; ++i)
    s += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) + i * std::log(q) +
                  (n - i) * std::log1p(-q));
  return s;
}

std::vector<std::size_t> repeat(std::initializer_list<std::pair<std::size_t, std::size_t>> counts) {
  std::vector<std::size_t> out;
  for (auto [value, times] : counts) out.insert(out.end(), times, value);
  return out;
}

}  // namespace

TEST_CASE("property parsing") {
  CHECK(PropertySpec::parse("connected").name() == "connected");
  CHECK(PropertySpec::parse("betti-zero:1").name() == "betti-zero:1:f2");
  CHECK(PropertySpec::parse("betti-nonzero:2:rational").name() == "betti-nonzero:2:rational");
  CHECK(PropertySpec::parse("betti-zero:1:fp:5").field == Field::fp(5));
  CHECK(PropertySpec::parse("giant:0.5").fraction == 0.5);
  CHECK(PropertySpec::parse("collapsible:2").degree == 2);
  for (const char* bad : {"", "nope", "pure", "pure:x", "giant:2", "collapsible:0", "betti-zero:1:f2:3", "connected:1"})
    CHECK_THROWS_AS(PropertySpec::parse(bad), DomainError);
}

TEST_CASE("properties on fixed complexes") {
  const auto k4 = gen_gnp(4, 1, {0, 0});
  CHECK(evaluate(PropertySpec::parse("connected"), k4));
  CHECK_FALSE(evaluate(PropertySpec::parse("acyclic"), k4));
  CHECK(evaluate(PropertySpec::parse("acyclic"), gen_gnp(5, 0, {0, 0})));
  CHECK(evaluate(PropertySpec::parse("pure:1"), k4));
  CHECK(evaluate(PropertySpec::parse("giant:1"), k4));
  CHECK_FALSE(evaluate(PropertySpec::parse("giant:0.5"), gen_gnp(4, 0, {0, 0})));
  const auto y = gen_linial_meshulam(6, 2, 1, {0, 0});
  CHECK(evaluate(PropertySpec::parse("betti-zero:1"), y));
  CHECK(evaluate(PropertySpec::parse("betti-nonzero:2:rational"), y));
  CHECK_FALSE(evaluate(PropertySpec::parse("collapsible:2"), y));
  CHECK(evaluate(PropertySpec::parse("garland:2"), y));
  CHECK(evaluate(PropertySpec::parse("torsion-free:1"), y));
  // Not pure 2-dimensional: the certificate does not apply.
  CHECK_FALSE(evaluate(PropertySpec::parse("garland:2"), gen_linial_meshulam(6, 2, 0, {0, 0})));
}

TEST_CASE("estimate examples") {
  RunOptions o;
  o.trials = 20;
  auto e = estimate(gnp(50, 1), {PropertySpec::parse("connected")}, o);
  CHECK(e[0].estimate == 1.0);
  CHECK(e[0].successes == 20);
  CHECK(e[0].ci.hi == 1.0);
  // beta_1 of the complete graph is C(n-1, 2) > 0.
  e = estimate(lm(60, 0), {PropertySpec::parse("betti-zero:1:f2")}, o);
  CHECK(e[0].estimate == 0.0);
  CHECK(e[0].ci.lo == 0.0);
}

TEST_CASE("resource errors are counted separately") {
  RunOptions o;
  o.trials = 3;
  // C(30,3) = 4060 triangles exceeds the Smith form budget.
  const auto e = estimate(lm(30, 1), {PropertySpec::parse("torsion-free:1"), PropertySpec::parse("connected")}, o);
  CHECK(e[0].errors == 3);
  CHECK(e[0].trials == 0);
  CHECK(e[1].errors == 0);
  CHECK(e[1].estimate == 1.0);
}

TEST_CASE("replay and worker-count independence") {
  const auto props = std::vector{PropertySpec::parse("betti-zero:1"), PropertySpec::parse("pure:2"),
                                 PropertySpec::parse("collapsible:2")};
  const auto cfg = lm(14, 0.25);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rec = run_trial(cfg, props, {5, s});
    CHECK(replay(rec, props) == rec.outcomes);
    CHECK(rec.property_seconds.size() == props.size());
  }
  RunOptions o;
  o.trials = 60;
  o.seed = 11;
  const auto serial = estimate(cfg, props, o);
  o.jobs = 4;
  const auto threaded = estimate(cfg, props, o);
  for (std::size_t j = 0; j < props.size(); ++j) CHECK(serial[j].successes == threaded[j].successes);
}

TEST_CASE("clopper-pearson against exact binomial tails") {
  for (auto [x, n] : {std::pair<std::size_t, std::size_t>{3, 20}, {10, 20}, {1, 50}, {49, 50}, {500, 1000}}) {
    const auto ci = clopper_pearson(x, n, 0.95);
    CHECK(upper_tail(x, n, ci.lo) == doctest::Approx(0.025).epsilon(1e-6));
    CHECK(1 - upper_tail(x + 1, n, ci.hi) == doctest::Approx(0.025).epsilon(1e-6));
  }
  CHECK(clopper_pearson(0, 10).lo == 0.0);
  CHECK(clopper_pearson(10, 10).hi == 1.0);
  CHECK_THROWS_AS(clopper_pearson(11, 10), DomainError);
}

TEST_CASE("half crossing") {
  CHECK(*half_crossing({1, 2, 3}, {0.1, 0.3, 0.7}) == doctest::Approx(2.5));
  CHECK(*half_crossing({1, 2, 3}, {0.9, 0.5, 0.1}) == 2.0);
  CHECK(*half_crossing({1, 2}, {1.0, 0.0}) == doctest::Approx(1.5));
  CHECK_FALSE(half_crossing({1, 2, 3}, {0.6, 0.7, 0.9}).has_value());
}

TEST_CASE("coupled scans are monotone") {
  RunOptions o;
  o.trials = 200;
  o.seed = 3;
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.01 * i);
  const auto r = scan(gnp(60, 0), {PropertySpec::parse("connected")}, grid, o);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(r[0].estimates[i] >= r[0].estimates[i - 1]);
  CHECK(r[0].crossing.has_value());
  std::vector<double> c_grid = {1, 2, 3, 4, 5, 6, 7, 8};
  auto cfg = lm(16, 0);
  cfg.per_n = true;
  o.trials = 60;
  const auto y = scan(cfg, {PropertySpec::parse("betti-zero:1"), PropertySpec::parse("pure:2")}, c_grid, o);
  for (const auto& res : y)
    for (std::size_t i = 1; i < c_grid.size(); ++i) CHECK(res.estimates[i] >= res.estimates[i - 1]);
  CHECK_THROWS_AS(scan(cfg, {PropertySpec::parse("connected")}, {2, 1}, o), DomainError);
  std::ostringstream csv;
  write_scan_csv(csv, y[0]);
  CHECK(csv.str().rfind("param,estimate,ci_lo,ci_hi,trials,errors\n", 0) == 0);
}

TEST_CASE("chi-squared two-sample against closed forms") {
  // Two bins: df = 1, survival erfc(sqrt(x/2)).
  const auto a = repeat({{0, 30}, {1, 70}}), b = repeat({{0, 50}, {1, 50}});
  // Expected per bin 40/40 and 60/60.
  const double stat2 = 2 * (100.0 / 40 + 100.0 / 60);
  CHECK(chi_squared_two_sample(a, b) == doctest::Approx(std::erfc(std::sqrt(stat2 / 2))).epsilon(1e-10));
  // Three bins: df = 2, survival exp(-x/2).
  const auto c = repeat({{0, 20}, {1, 30}, {2, 50}}), d = repeat({{0, 30}, {1, 30}, {2, 40}});
  const double stat3 = 2 * (25.0 / 25 + 0 + 25.0 / 45);
  CHECK(chi_squared_two_sample(c, d) == doctest::Approx(std::exp(-stat3 / 2)).epsilon(1e-10));
  CHECK(chi_squared_two_sample(c, c) == doctest::Approx(1.0));
  CHECK(chi_squared_two_sample(repeat({{0, 10}}), repeat({{0, 10}})) == 1.0);
}

TEST_CASE("link distribution check") {
  RunOptions o;
  o.trials = 2000;
  o.seed = 9;
  CHECK(link_distribution_check(30, 0.2, o).p_value > 0.001);
  CHECK(link_distribution_check(30, 0.2, o, 0.4).p_value < 0.01);
  const auto zero = link_distribution_check(30, 0.0, o);
  CHECK(zero.p_value == 1.0);
  CHECK(zero.link_edges == zero.graph_edges);
  const auto one = link_distribution_check(30, 1.0, o);
  CHECK(one.p_value == 1.0);
  CHECK(one.link_edges[0] == 29 * 28 / 2);
}

TEST_CASE("giant component small cases") {
  RunOptions o;
  o.trials = 10;
  const auto rows = giant_component_experiment(500, {0.0, 3.0}, o);
  CHECK(rows[0].mean_fraction == doctest::Approx(1.0 / 500));
  CHECK(rows[0].stderr_fraction == 0.0);
  CHECK(rows[1].mean_fraction > 0.8);
  std::ostringstream csv;
  write_giant_csv(csv, rows);
  CHECK(csv.str().rfind("c,mean_fraction,stderr,mean_largest,largest_over_log_n,trials\n", 0) == 0);
}

TEST_CASE("persistence experiment plumbing") {
  RunOptions o;
  o.trials = 5;
  // A cap far below typical spacing: no edge, so no 1-class is ever born.
  auto rows = persistence_experiment({10}, 2, 1, o, 1e-3);
  CHECK(rows[0].median == 0.0);
  CHECK(rows[0].censored == 0);
  rows = persistence_experiment({60}, 2, 1, o);
  CHECK(rows[0].cap == doctest::Approx(2.5 * std::sqrt(std::log(60.0) / (M_PI * 60))));
  CHECK(rows[0].q1 <= rows[0].median);
  CHECK(rows[0].median <= rows[0].q3);
  CHECK(rows[0].ratio == doctest::Approx(rows[0].median / (std::log(60.0) / std::log(std::log(60.0)))));
  CHECK_THROWS_AS(persistence_experiment({10}, 2, 2, o), DomainError);
}

TEST_CASE("betti curves endpoints") {
  RunOptions o;
  o.trials = 4;
  const auto rows = betti_curves(10, {0.0, 0.5, 1.0}, 3, o);
  CHECK(rows[0].mean_betti[0] == 10.0);
  CHECK(rows[0].prediction == 10.0);
  CHECK(rows[2].mean_betti[0] == 1.0);
  for (int k = 1; k <= 3; ++k) CHECK(rows[2].mean_betti[static_cast<std::size_t>(k)] == 0.0);
  CHECK(rows[2].prediction == doctest::Approx(1.0));
  CHECK(rows[1].expected_edges == doctest::Approx(22.5));
  std::ostringstream csv;
  write_betti_curves_csv(csv, rows);
  CHECK(csv.str().rfind("p,expected_edges,degree,mean_betti,prediction\n", 0) == 0);
}

TEST_CASE("scaling experiment plumbing") {
  RunOptions o;
  o.trials = 3;
  const auto rows = scaling_experiment("rips", 2, 1, {100}, 1.0, 0.6, o);
  CHECK(rows[0].normaliser == doctest::Approx(std::pow(100.0, 4) * std::pow(rows[0].r, 6)));
  CHECK(rows[0].r == doctest::Approx(std::pow(100.0, -0.6)));
  CHECK_THROWS_AS(scaling_experiment("cech", 2, 2, {100}, 1.0, 0.6, o), DomainError);
}
