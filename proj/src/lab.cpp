#include "randcx/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "randcx/collapse.hpp"
#include "randcx/errors.hpp"
#include "randcx/persistence.hpp"
#include "randcx/spectral.hpp"
#include "randcx/theory.hpp"

namespace randcx {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.push_back("");
  return out;
}

int parse_int(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError(context + ": expected an integer, got '" + s + "'");
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError(context + ": expected a number, got '" + s + "'");
}

std::size_t largest_component(const SimplicialComplex& c) {
  const auto labels = component_labels(c);
  std::vector<std::size_t> sizes;
  for (auto l : labels) {
    if (l >= sizes.size()) sizes.resize(l + 1, 0);
    ++sizes[l];
  }
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

double quantile(std::vector<double> sorted_values, double q) {
  if (sorted_values.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted_values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted_values.size() - 1);
  return sorted_values[lo] + (pos - static_cast<double>(lo)) * (sorted_values[hi] - sorted_values[lo]);
}

double unit_ball_volume(int d) { return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0); }

}  // namespace

ModelKind parse_model_kind(const std::string& tag) {
  if (tag == "gnp") return ModelKind::kGnp;
  if (tag == "lm") return ModelKind::kLinialMeshulam;
  if (tag == "clique") return ModelKind::kClique;
  if (tag == "multi") return ModelKind::kMulti;
  if (tag == "rips") return ModelKind::kRips;
  if (tag == "cech") return ModelKind::kCech;
  throw DomainError("unknown model '" + tag + "'; supported: gnp lm clique multi rips cech");
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kGnp: return "gnp";
    case ModelKind::kLinialMeshulam: return "lm";
    case ModelKind::kClique: return "clique";
    case ModelKind::kMulti: return "multi";
    case ModelKind::kRips: return "rips";
    case ModelKind::kCech: return "cech";
  }
  return "gnp";
}

double ModelConfig::effective_param() const {
  if (per_n) {
    if (n == 0) throw DomainError("per-n parameter with n = 0");
    return param / static_cast<double>(n);
  }
  return param;
}

ModelConfig ModelConfig::with_param(double value) const {
  ModelConfig c = *this;
  c.param = value;
  return c;
}

SimplicialComplex sample(const ModelConfig& config, RngSeed seed) {
  const double x = config.effective_param();
  switch (config.kind) {
    case ModelKind::kGnp: return gen_gnp(config.n, x, seed);
    case ModelKind::kLinialMeshulam: return gen_linial_meshulam(config.n, config.d, x, seed);
    case ModelKind::kClique: return gen_clique_complex(config.n, x, config.max_dim, seed);
    case ModelKind::kMulti: return gen_multiparameter(config.n, config.probs, seed);
    case ModelKind::kRips:
    case ModelKind::kCech: {
      if (config.d < 1) throw DomainError("geometric models need an ambient dimension d >= 1");
      const auto pts = gen_points(config.n, static_cast<std::size_t>(config.d), config.distribution, seed);
      return config.kind == ModelKind::kRips ? vietoris_rips(pts, x, config.max_dim) : cech(pts, x, config.max_dim);
    }
  }
  throw DomainError("unknown model");
}

PropertySpec PropertySpec::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty() || parts[0].empty()) throw DomainError("empty property");
  const std::string& name = parts[0];
  PropertySpec s;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo + 1 || parts.size() > hi + 1)
      throw DomainError("property '" + text + "': wrong number of arguments");
  };
  if (name == "connected") {
    need(0, 0);
    s.kind = Kind::kConnected;
  } else if (name == "acyclic") {
    need(0, 0);
    s.kind = Kind::kAcyclic;
  } else if (name == "pure" || name == "collapsible" || name == "garland" || name == "torsion-free") {
    need(1, 1);
    s.kind = name == "pure" ? Kind::kPure
             : name == "collapsible" ? Kind::kCollapsible
             : name == "garland" ? Kind::kGarland
                                 : Kind::kTorsionFree;
    s.degree = parse_int(parts[1], text);
  } else if (name == "betti-zero" || name == "betti-nonzero") {
    // The field tag may itself contain a colon ("fp:q").
    need(1, 3);
    s.kind = name == "betti-zero" ? Kind::kBettiZero : Kind::kBettiNonzero;
    s.degree = parse_int(parts[1], text);
    if (parts.size() >= 3) s.field = Field::parse(text.substr(text.find(':', text.find(':') + 1) + 1));
  } else if (name == "giant") {
    need(1, 1);
    s.kind = Kind::kGiant;
    s.fraction = parse_double(parts[1], text);
    if (!(s.fraction > 0.0 && s.fraction <= 1.0)) throw DomainError("giant: fraction must lie in (0, 1]");
  } else {
    throw DomainError("unknown property '" + name +
                      "'; supported: connected pure:d betti-zero:k[:field] betti-nonzero:k[:field] collapsible:d "
                      "garland:d acyclic giant:fraction torsion-free:k");
  }
  if (s.degree < 0) throw DomainError("property '" + text + "': negative degree");
  if ((s.kind == Kind::kCollapsible || s.kind == Kind::kGarland) && s.degree < 1)
    throw DomainError("property '" + text + "': d must be at least 1");
  return s;
}

std::string PropertySpec::name() const {
  const std::string k = std::to_string(degree);
  switch (kind) {
    case Kind::kConnected: return "connected";
    case Kind::kPure: return "pure:" + k;
    case Kind::kBettiZero: return "betti-zero:" + k + ":" + field.name();
    case Kind::kBettiNonzero: return "betti-nonzero:" + k + ":" + field.name();
    case Kind::kCollapsible: return "collapsible:" + k;
    case Kind::kGarland: return "garland:" + k;
    case Kind::kAcyclic: return "acyclic";
    case Kind::kGiant: {
      std::ostringstream os;
      os << "giant:" << fraction;
      return os.str();
    }
    case Kind::kTorsionFree: return "torsion-free:" + k;
  }
  return "?";
}

bool evaluate(const PropertySpec& property, const SimplicialComplex& c) {
  using Kind = PropertySpec::Kind;
  switch (property.kind) {
    case Kind::kConnected: return component_count(c) == 1;
    case Kind::kPure: return is_pure(c, property.degree);
    case Kind::kBettiZero: return betti_is_zero(c, property.degree, property.field);
    case Kind::kBettiNonzero: return !betti_is_zero(c, property.degree, property.field);
    case Kind::kCollapsible: return collapse(c, property.degree).collapsed;
    case Kind::kGarland: return is_pure(c, property.degree) && garland_certificate(c, property.degree).holds;
    case Kind::kAcyclic: {
      if (c.dimension() <= 1) return c.count(1) + component_count(c) == c.count(0);
      for (int k = 1; k <= c.dimension(); ++k)
        if (!betti_is_zero(c, k, Field::f2())) return false;
      return true;
    }
    case Kind::kGiant:
      return static_cast<double>(largest_component(c)) >= property.fraction * static_cast<double>(c.count(0));
    case Kind::kTorsionFree: {
      const auto h = integer_homology(c);
      const auto k = static_cast<std::size_t>(property.degree);
      return k >= h.groups.size() || h.groups[k].torsion.empty();
    }
  }
  return false;
}

TrialRecord run_trial(const ModelConfig& config, const std::vector<PropertySpec>& properties, RngSeed seed) {
  TrialRecord r;
  r.seed = seed;
  r.config = config;
  auto t0 = Clock::now();
  const auto c = sample(config, seed);
  r.sample_seconds = seconds_since(t0);
  for (const auto& p : properties) {
    t0 = Clock::now();
    Outcome o;
    try {
      o = evaluate(p, c) ? Outcome::kTrue : Outcome::kFalse;
    } catch (const ResourceError&) {
      o = Outcome::kError;
    }
    r.outcomes.push_back(o);
    r.property_seconds.push_back(seconds_since(t0));
  }
  return r;
}

std::vector<Outcome> replay(const TrialRecord& record, const std::vector<PropertySpec>& properties) {
  return run_trial(record.config, properties, record.seed).outcomes;
}

Interval clopper_pearson(std::size_t successes, std::size_t trials, double confidence) {
  if (trials == 0) return {0.0, 1.0};
  if (successes > trials) throw DomainError("clopper_pearson: successes exceed trials");
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("clopper_pearson: confidence must lie in (0, 1)");
  const double alpha = 1.0 - confidence;
  const double x = static_cast<double>(successes), n = static_cast<double>(trials);
  Interval ci;
  ci.lo = successes == 0 ? 0.0 : boost::math::quantile(boost::math::beta_distribution<>(x, n - x + 1), alpha / 2);
  ci.hi = successes == trials ? 1.0 : boost::math::quantile(boost::math::beta_distribution<>(x + 1, n - x), 1 - alpha / 2);
  return ci;
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  const unsigned n = std::min<std::size_t>(jobs, count);
  for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

std::vector<Estimate> tally(const std::vector<PropertySpec>& properties, const std::vector<std::vector<Outcome>>& outcomes,
                            double confidence) {
  std::vector<Estimate> out;
  for (std::size_t j = 0; j < properties.size(); ++j) {
    Estimate e;
    e.property = properties[j].name();
    for (const auto& row : outcomes) {
      if (row[j] == Outcome::kError) {
        ++e.errors;
        continue;
      }
      ++e.trials;
      if (row[j] == Outcome::kTrue) ++e.successes;
    }
    e.estimate = e.trials ? static_cast<double>(e.successes) / static_cast<double>(e.trials) : 0.0;
    e.ci = clopper_pearson(e.successes, e.trials, confidence);
    out.push_back(e);
  }
  return out;
}

void check_run(const RunOptions& o) {
  if (o.trials < 1) throw DomainError("trials must be at least 1");
}

}  // namespace

std::vector<Estimate> estimate(const ModelConfig& config, const std::vector<PropertySpec>& properties,
                               const RunOptions& options) {
  check_run(options);
  std::vector<std::vector<Outcome>> outcomes(options.trials);
  parallel_for(options.trials, options.jobs, [&](std::size_t t) {
    outcomes[t] = run_trial(config, properties, {options.seed, options.first_stream + t}).outcomes;
  });
  return tally(properties, outcomes, options.confidence);
}

std::optional<double> half_crossing(const std::vector<double>& grid, const std::vector<double>& estimates) {
  for (std::size_t i = 0; i + 1 < grid.size() && i + 1 < estimates.size(); ++i) {
    const double a = estimates[i] - 0.5, b = estimates[i + 1] - 0.5;
    if (a == 0.0) return grid[i];
    if ((a < 0.0) != (b < 0.0) || b == 0.0) {
      if (b == 0.0) return grid[i + 1];
      return grid[i] + (grid[i + 1] - grid[i]) * a / (a - b);
    }
  }
  return std::nullopt;
}

std::vector<ScanResult> scan(const ModelConfig& config, const std::vector<PropertySpec>& properties,
                             const std::vector<double>& grid, const RunOptions& options) {
  check_run(options);
  if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("scan: grid must be sorted");
  const std::size_t g = grid.size(), t = options.trials;
  std::vector<std::vector<Outcome>> outcomes(g * t);
  parallel_for(g * t, options.jobs, [&](std::size_t i) {
    const std::size_t point = i / t, trial = i % t;
    outcomes[i] = run_trial(config.with_param(grid[point]), properties, {options.seed, options.first_stream + trial}).outcomes;
  });
  std::vector<ScanResult> out(properties.size());
  for (std::size_t j = 0; j < properties.size(); ++j) {
    out[j].property = properties[j].name();
    out[j].grid = grid;
  }
  for (std::size_t point = 0; point < g; ++point) {
    const std::vector<std::vector<Outcome>> block(outcomes.begin() + static_cast<std::ptrdiff_t>(point * t),
                                                  outcomes.begin() + static_cast<std::ptrdiff_t>((point + 1) * t));
    const auto est = tally(properties, block, options.confidence);
    for (std::size_t j = 0; j < properties.size(); ++j) {
      out[j].estimates.push_back(est[j].estimate);
      out[j].ci.push_back(est[j].ci);
      out[j].ci_halfwidth.push_back((est[j].ci.hi - est[j].ci.lo) / 2);
      out[j].trials.push_back(est[j].trials);
      out[j].errors.push_back(est[j].errors);
    }
  }
  for (auto& r : out) r.crossing = half_crossing(r.grid, r.estimates);
  return out;
}

void write_scan_csv(std::ostream& out, const ScanResult& r) {
  out << "param,estimate,ci_lo,ci_hi,trials,errors\n";
  const auto old = out.precision(12);
  for (std::size_t i = 0; i < r.grid.size(); ++i)
    out << r.grid[i] << ',' << r.estimates[i] << ',' << r.ci[i].lo << ',' << r.ci[i].hi << ',' << r.trials[i] << ','
        << r.errors[i] << '\n';
  out.precision(old);
}

std::vector<GiantRow> giant_component_experiment(std::size_t n, const std::vector<double>& c_grid,
                                                 const RunOptions& options) {
  check_run(options);
  if (n < 2) throw DomainError("giant_component_experiment: n must be at least 2");
  for (double c : c_grid)
    if (!(c >= 0.0 && c <= static_cast<double>(n))) throw DomainError("giant_component_experiment: c must lie in [0, n]");
  const std::size_t t = options.trials;
  std::vector<std::size_t> largest(c_grid.size() * t);
  parallel_for(largest.size(), options.jobs, [&](std::size_t i) {
    const double c = c_grid[i / t];
    largest[i] = largest_component(gen_gnp(n, c / static_cast<double>(n), {options.seed, options.first_stream + i % t}));
  });
  std::vector<GiantRow> rows;
  const double nn = static_cast<double>(n);
  for (std::size_t j = 0; j < c_grid.size(); ++j) {
    double sum = 0, sum2 = 0;
    for (std::size_t i = 0; i < t; ++i) {
      const double f = static_cast<double>(largest[j * t + i]) / nn;
      sum += f;
      sum2 += f * f;
    }
    GiantRow row;
    row.c = c_grid[j];
    row.trials = t;
    row.mean_fraction = sum / static_cast<double>(t);
    const double var = t > 1 ? (sum2 - sum * sum / static_cast<double>(t)) / static_cast<double>(t - 1) : 0.0;
    row.stderr_fraction = std::sqrt(std::max(var, 0.0) / static_cast<double>(t));
    row.mean_largest = row.mean_fraction * nn;
    row.largest_over_log_n = row.mean_largest / std::log(nn);
    rows.push_back(row);
  }
  return rows;
}

void write_giant_csv(std::ostream& out, const std::vector<GiantRow>& rows) {
  out << "c,mean_fraction,stderr,mean_largest,largest_over_log_n,trials\n";
  const auto old = out.precision(12);
  for (const auto& r : rows)
    out << r.c << ',' << r.mean_fraction << ',' << r.stderr_fraction << ',' << r.mean_largest << ','
        << r.largest_over_log_n << ',' << r.trials << '\n';
  out.precision(old);
}

std::vector<PersistenceRow> persistence_experiment(const std::vector<std::size_t>& n_list, int d, int k,
                                                   const RunOptions& options, double cap_factor) {
  check_run(options);
  if (d < 2 || k < 1 || k > d - 1) throw DomainError("persistence_experiment: requires d >= 2 and 1 <= k <= d-1");
  if (!(cap_factor > 0.0)) throw DomainError("persistence_experiment: cap factor must be positive");
  std::vector<PersistenceRow> rows;
  for (std::size_t n : n_list) {
    if (n < 3) throw DomainError("persistence_experiment: n must be at least 3");
    const double nn = static_cast<double>(n);
    // Connectivity scale of the Rips graph: the diameter-r ball around a point has mass omega_d r^d.
    const double cap = cap_factor * std::pow(std::log(nn) / (unit_ball_volume(d) * nn), 1.0 / d);
    std::vector<double> values(options.trials);
    std::vector<char> censored(options.trials, 0);
    parallel_for(options.trials, options.jobs, [&](std::size_t t) {
      const auto pts = gen_points(n, static_cast<std::size_t>(d), PointDistribution::kUniformCube,
                                  {options.seed, options.first_stream + t});
      const auto f = rips_filtration(pts, cap, k + 1);
      const auto diagram = persistence_diagram(f, k);
      values[t] = max_persistence(diagram);
      censored[t] = std::any_of(diagram.begin(), diagram.end(), [](const PersistencePair& p) { return p.censored; });
    });
    PersistenceRow row;
    row.n = n;
    row.cap = cap;
    row.trials = options.trials;
    std::sort(values.begin(), values.end());
    row.median = quantile(values, 0.5);
    row.q1 = quantile(values, 0.25);
    row.q3 = quantile(values, 0.75);
    row.censored = static_cast<std::size_t>(std::count(censored.begin(), censored.end(), 1));
    const double scale = std::pow(std::log(nn) / std::log(std::log(nn)), 1.0 / k);
    row.ratio = row.median / scale;
    rows.push_back(row);
  }
  return rows;
}

void write_persistence_csv(std::ostream& out, const std::vector<PersistenceRow>& rows) {
  out << "n,cap,median,q1,q3,ratio,censored,trials\n";
  const auto old = out.precision(12);
  for (const auto& r : rows)
    out << r.n << ',' << r.cap << ',' << r.median << ',' << r.q1 << ',' << r.q3 << ',' << r.ratio << ','
        << r.censored << ',' << r.trials << '\n';
  out.precision(old);
}

double chi_squared_two_sample(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.empty() || b.empty()) throw DomainError("chi_squared_two_sample: empty sample");
  const std::size_t hi = std::max(*std::max_element(a.begin(), a.end()), *std::max_element(b.begin(), b.end()));
  std::vector<double> ha(hi + 1, 0.0), hb(hi + 1, 0.0);
  for (auto x : a) ha[x] += 1;
  for (auto x : b) hb[x] += 1;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size()), total = na + nb;
  // Pool from the left edge until the pooled bin is large enough, then the same from the right.
  auto big_enough = [&](double ca, double cb) {
    const double pooled = ca + cb;
    return pooled * na / total >= 5.0 && pooled * nb / total >= 5.0;
  };
  std::vector<std::pair<double, double>> bins;
  double ca = 0, cb = 0;
  for (std::size_t v = 0; v <= hi; ++v) {
    ca += ha[v];
    cb += hb[v];
    if (big_enough(ca, cb)) {
      bins.push_back({ca, cb});
      ca = cb = 0;
    }
  }
  if (ca + cb > 0) {
    if (bins.empty()) return 1.0;
    bins.back().first += ca;
    bins.back().second += cb;
  }
  if (bins.size() < 2) return 1.0;
  double stat = 0.0;
  for (const auto& [x, y] : bins) {
    const double pooled = x + y;
    const double ea = pooled * na / total, eb = pooled * nb / total;
    stat += (x - ea) * (x - ea) / ea + (y - eb) * (y - eb) / eb;
  }
  const boost::math::chi_squared_distribution<> dist(static_cast<double>(bins.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

LinkCheck link_distribution_check(std::size_t n, double p, const RunOptions& options, std::optional<double> q) {
  check_run(options);
  if (n < 3) throw DomainError("link_distribution_check: n must be at least 3");
  LinkCheck out;
  out.link_edges.resize(options.trials);
  out.graph_edges.resize(options.trials);
  const double qq = q.value_or(p);
  parallel_for(options.trials, options.jobs, [&](std::size_t t) {
    const std::uint64_t s = options.first_stream + t;
    // The two samples use disjoint streams so they are independent.
    out.link_edges[t] = lm_vertex_link(n, 2, p, {options.seed, 2 * s}, 0).count(1);
    out.graph_edges[t] = gen_gnp(n - 1, qq, {options.seed, 2 * s + 1}).count(1);
  });
  out.p_value = chi_squared_two_sample(out.link_edges, out.graph_edges);
  return out;
}

std::vector<BettiCurveRow> betti_curves(std::size_t n, const std::vector<double>& p_grid, int max_degree,
                                        const RunOptions& options) {
  check_run(options);
  if (max_degree < 0) throw DomainError("betti_curves: max_degree must be non-negative");
  const std::size_t t = options.trials, width = static_cast<std::size_t>(max_degree) + 1;
  std::vector<std::vector<std::size_t>> betti(p_grid.size() * t);
  parallel_for(betti.size(), options.jobs, [&](std::size_t i) {
    const auto c = gen_clique_complex(n, p_grid[i / t], max_degree + 1, {options.seed, options.first_stream + i % t});
    const auto b = betti_numbers(c, Field::rational());
    betti[i].resize(width);
    for (std::size_t k = 0; k < width; ++k) betti[i][k] = b[k];
  });
  std::vector<BettiCurveRow> rows;
  for (std::size_t j = 0; j < p_grid.size(); ++j) {
    BettiCurveRow row;
    row.p = p_grid[j];
    row.expected_edges = expected_faces_clique(static_cast<long long>(n), row.p, 1);
    row.mean_betti.assign(width, 0.0);
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t k = 0; k < width; ++k) row.mean_betti[k] += static_cast<double>(betti[j * t + i][k]);
    for (auto& m : row.mean_betti) m /= static_cast<double>(t);
    row.prediction = euler_prediction(static_cast<long long>(n), row.p);
    rows.push_back(row);
  }
  return rows;
}

void write_betti_curves_csv(std::ostream& out, const std::vector<BettiCurveRow>& rows) {
  out << "p,expected_edges,degree,mean_betti,prediction\n";
  const auto old = out.precision(12);
  for (const auto& r : rows)
    for (std::size_t k = 0; k < r.mean_betti.size(); ++k)
      out << r.p << ',' << r.expected_edges << ',' << k << ',' << r.mean_betti[k] << ',' << r.prediction << '\n';
  out.precision(old);
}

std::vector<ScalingRow> scaling_experiment(const std::string& model, int d, int k, const std::vector<std::size_t>& n_list,
                                           double scale, double exponent, const RunOptions& options) {
  check_run(options);
  const auto exps = geometric_scaling(model, d, k);
  const bool rips = model == "rips";
  std::vector<ScalingRow> rows;
  for (std::size_t n : n_list) {
    const double nn = static_cast<double>(n);
    const double r = scale * std::pow(nn, -exponent);
    std::vector<std::size_t> betti(options.trials);
    parallel_for(options.trials, options.jobs, [&](std::size_t t) {
      const auto pts = gen_points(n, static_cast<std::size_t>(d), PointDistribution::kUniformCube,
                                  {options.seed, options.first_stream + t});
      const auto c = rips ? vietoris_rips(pts, r, k + 1) : cech(pts, r, k + 1);
      betti[t] = betti_number(c, k, Field::rational());
    });
    ScalingRow row;
    row.n = n;
    row.r = r;
    row.trials = options.trials;
    double sum = 0;
    for (auto b : betti) sum += static_cast<double>(b);
    row.mean_betti = sum / static_cast<double>(options.trials);
    row.normaliser = std::pow(nn, exps.n_exponent) * std::pow(r, exps.r_exponent);
    row.ratio = row.mean_betti / row.normaliser;
    rows.push_back(row);
  }
  return rows;
}

void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows) {
  out << "n,r,mean_betti,normaliser,ratio,trials\n";
  const auto old = out.precision(12);
  for (const auto& r : rows)
    out << r.n << ',' << r.r << ',' << r.mean_betti << ',' << r.normaliser << ',' << r.ratio << ',' << r.trials << '\n';
  out.precision(old);
}

}  // namespace randcx
