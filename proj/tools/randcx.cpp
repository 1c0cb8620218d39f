// Command-line front end: generators, invariants, closed-form constants and
// seeded Monte Carlo experiments. Exit codes: 0 ok, 2 domain error, 3 resource error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "randcx/collapse.hpp"
#include "randcx/errors.hpp"
#include "randcx/homology.hpp"
#include "randcx/lab.hpp"
#include "randcx/models.hpp"
#include "randcx/persistence.hpp"
#include "randcx/spectral.hpp"
#include "randcx/theory.hpp"

using namespace randcx;
using json = nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  unsigned jobs = 1;
  std::string out;
  std::string format;  // empty: the command's natural format
};

struct ModelFlags {
  std::string model = "gnp";
  std::size_t n = 0;
  std::optional<double> p, r, c;
  std::string probs;
  int d = 2;
  int max_dim = 2;
  std::string distribution = "uniform";
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("not a number: '" + item + "'");
    }
  }
  return out;
}

// "a:b:count" (inclusive linear grid) or a comma list.
std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_list(text);
  std::stringstream ss(text);
  std::string a, b, k;
  std::getline(ss, a, ':');
  std::getline(ss, b, ':');
  std::getline(ss, k, ':');
  const auto lo = parse_list(a), hi = parse_list(b), cnt = parse_list(k);
  if (lo.size() != 1 || hi.size() != 1 || cnt.size() != 1 || cnt[0] < 1 || cnt[0] != std::floor(cnt[0]))
    throw DomainError("grid must be 'lo:hi:count' or a comma list");
  const auto count = static_cast<std::size_t>(cnt[0]);
  std::vector<double> g;
  for (std::size_t i = 0; i < count; ++i)
    g.push_back(count == 1 ? lo[0] : lo[0] + (hi[0] - lo[0]) * static_cast<double>(i) / static_cast<double>(count - 1));
  return g;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_list(text)) {
    if (v < 0 || v != std::floor(v)) throw DomainError("expected non-negative integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void add_model_flags(CLI::App* cmd, ModelFlags& m) {
  cmd->add_option("--model", m.model, "gnp | lm | clique | multi | rips | cech");
  cmd->add_option("--n", m.n, "Number of vertices or points")->required();
  cmd->add_option("--p", m.p, "Face probability");
  cmd->add_option("--c", m.c, "Scaled probability, p = c/n");
  cmd->add_option("--r", m.r, "Radius for rips / cech");
  cmd->add_option("--probs", m.probs, "Comma list p_1,...,p_m for the multi-parameter model");
  cmd->add_option("--d", m.d, "Y_d dimension, or ambient dimension for point clouds");
  cmd->add_option("--max-dim", m.max_dim, "Dimension cap for clique and geometric complexes");
  cmd->add_option("--distribution", m.distribution, "uniform | gaussian");
}

ModelConfig to_config(const ModelFlags& m) {
  ModelConfig c;
  c.kind = parse_model_kind(m.model);
  c.n = m.n;
  c.d = m.d;
  c.max_dim = m.max_dim;
  c.distribution = parse_distribution(m.distribution);
  c.probs = parse_list(m.probs);
  const bool geometric = c.kind == ModelKind::kRips || c.kind == ModelKind::kCech;
  if (geometric) {
    c.param = m.r.value_or(0.0);
  } else if (m.c) {
    c.param = *m.c;
    c.per_n = true;
  } else {
    c.param = m.p.value_or(0.0);
  }
  if (c.kind == ModelKind::kMulti && c.probs.empty()) throw DomainError("multi model needs --probs");
  return c;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

SimplicialComplex read_complex(const std::string& path) {
  if (path.empty() || path == "-") return read_scx(std::cin);
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return read_scx(in);
}

PointCloud read_points(const std::string& path) {
  if (path == "-") return read_points_csv(std::cin);
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return read_points_csv(in);
}

std::string resolve_format(const Globals& g, const char* fallback) {
  const std::string f = g.format.empty() ? fallback : g.format;
  if (f != "csv" && f != "json") throw DomainError("--format must be csv or json");
  return f;
}

json interval_json(const Interval& ci) { return json::array({ci.lo, ci.hi}); }

// Writes a json object as "key,value" rows when csv was requested.
void emit_report(std::ostream& os, const json& report, const std::string& format) {
  if (format == "json") {
    os << report.dump(2) << '\n';
    return;
  }
  os << "key,value\n";
  for (const auto& [k, v] : report.items()) {
    if (v.is_array()) {
      std::string joined;
      for (const auto& x : v) joined += (joined.empty() ? "" : " ") + (x.is_string() ? x.get<std::string>() : x.dump());
      os << k << ',' << joined << '\n';
    } else {
      os << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

json fvector_json(const FVector& f) { return json(f.counts); }

json scan_json(const ScanResult& r) {
  json j;
  j["property"] = r.property;
  j["grid"] = r.grid;
  j["estimates"] = r.estimates;
  j["ci_halfwidth"] = r.ci_halfwidth;
  j["trials"] = r.trials;
  j["errors"] = r.errors;
  j["crossing"] = r.crossing ? json(*r.crossing) : json(nullptr);
  json ci = json::array();
  for (const auto& c : r.ci) ci.push_back(interval_json(c));
  j["ci"] = ci;
  return j;
}

std::string file_safe(std::string s) {
  for (char& ch : s)
    if (ch == ':' || ch == '/') ch = '_';
  return s;
}

RunOptions run_options(const Globals& g) {
  RunOptions o;
  o.seed = g.seed;
  o.trials = g.trials;
  o.jobs = std::max(1u, g.jobs);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random simplicial complexes: generation, invariants and threshold experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--trials", g.trials, "Monte Carlo trials (per grid point for scans)");
  app.add_option("--jobs", g.jobs, "Worker threads; results do not depend on this");
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--format", g.format, "csv | json");

  // gen
  ModelFlags gen_model;
  std::uint64_t gen_trial = 0;
  bool gen_points_only = false;
  auto* gen = app.add_subcommand("gen", "Draw one complex (.scx) or point cloud (CSV)");
  add_model_flags(gen, gen_model);
  gen->add_option("--trial", gen_trial, "Stream index of the draw");
  gen->add_flag("--points", gen_points_only, "Emit the point cloud of a geometric model instead");
  gen->callback([&] {
    const auto cfg = to_config(gen_model);
    Output out(g.out);
    const RngSeed seed{g.seed, gen_trial};
    if (gen_points_only) {
      if (cfg.kind != ModelKind::kRips && cfg.kind != ModelKind::kCech) throw DomainError("--points needs rips or cech");
      write_points_csv(out.stream(), gen_points(cfg.n, static_cast<std::size_t>(cfg.d), cfg.distribution, seed));
    } else {
      write_scx(out.stream(), sample(cfg, seed));
    }
  });

  // betti
  std::string in_path, field_tag = "f2";
  bool reduced = false;
  auto* betti = app.add_subcommand("betti", "Betti numbers of a .scx complex");
  betti->add_option("--in", in_path, "Input .scx (default stdin)");
  betti->add_option("--field", field_tag, "f2 | fp:q | rational");
  betti->add_flag("--reduced", reduced, "Reduced homology");
  betti->callback([&] {
    const auto c = read_complex(in_path);
    const auto b = betti_numbers(c, Field::parse(field_tag), reduced);
    Output out(g.out);
    if (resolve_format(g, "csv") == "json") {
      json j{{"field", b.field.name()}, {"requested_field", Field::parse(field_tag).name()},
             {"reduced", b.reduced}, {"betti", b.betti}};
      out.stream() << j.dump(2) << '\n';
    } else {
      out.stream() << "degree,betti,field,reduced\n";
      for (std::size_t k = 0; k < b.betti.size(); ++k)
        out.stream() << k << ',' << b.betti[k] << ',' << b.field.name() << ',' << (b.reduced ? 1 : 0) << '\n';
    }
  });

  // snf
  std::size_t budget = kDefaultSnfBudget;
  auto* snf = app.add_subcommand("snf", "Integer homology via Smith normal form");
  snf->add_option("--in", in_path, "Input .scx (default stdin)");
  snf->add_option("--budget", budget, "Maximum faces per degree");
  snf->callback([&] {
    const auto h = integer_homology(read_complex(in_path), budget);
    Output out(g.out);
    if (resolve_format(g, "csv") == "json") {
      json groups = json::array();
      for (const auto& grp : h.groups) groups.push_back({{"free_rank", grp.free_rank}, {"torsion", grp.torsion}});
      out.stream() << json{{"groups", groups}}.dump(2) << '\n';
    } else {
      out.stream() << "degree,free_rank,torsion\n";
      for (std::size_t k = 0; k < h.groups.size(); ++k) {
        std::string t;
        for (auto x : h.groups[k].torsion) t += (t.empty() ? "" : " ") + std::to_string(x);
        out.stream() << k << ',' << h.groups[k].free_rank << ',' << t << '\n';
      }
    }
  });

  // collapse
  int collapse_d = 2;
  bool exhaustive = false;
  auto* col = app.add_subcommand("collapse", "d-collapsibility report");
  col->add_option("--in", in_path, "Input .scx (default stdin)");
  col->add_option("--d", collapse_d, "Collapse dimension");
  col->add_flag("--exhaustive", exhaustive, "Also run the exhaustive search (small complexes)");
  col->callback([&] {
    const auto c = read_complex(in_path);
    const auto r = collapse(c, collapse_d);
    json j{{"d", collapse_d}, {"collapsed", r.collapsed}, {"steps", r.steps.size()}, {"residual", fvector_json(r.residual)}};
    if (exhaustive) j["exhaustive"] = collapse_exhaustive(c, collapse_d);
    Output out(g.out);
    emit_report(out.stream(), j, resolve_format(g, "json"));
  });

  // spectral
  bool with_cheeger = false;
  auto* spec = app.add_subcommand("spectral", "Normalized Laplacian spectrum of the 1-skeleton");
  spec->add_option("--in", in_path, "Input .scx (default stdin)");
  spec->add_flag("--cheeger", with_cheeger, "Also compute the Cheeger number (at most 24 vertices)");
  spec->callback([&] {
    const auto c = read_complex(in_path);
    const auto r = spectral_gap(c);
    json j{{"lambda2", r.lambda2}, {"connected", r.connected}, {"dropped_isolated", r.dropped_isolated},
           {"eigenvalues", r.eigenvalues}};
    if (with_cheeger) j["cheeger"] = cheeger_number(c);
    Output out(g.out);
    emit_report(out.stream(), j, resolve_format(g, "json"));
  });

  // garland
  int garland_d = 2;
  auto* gar = app.add_subcommand("garland", "Link spectral-gap certificate for vanishing H_{d-1}(R)");
  gar->add_option("--in", in_path, "Input .scx (default stdin)");
  gar->add_option("--d", garland_d, "Dimension of the pure complex");
  gar->callback([&] {
    const auto r = garland_certificate(read_complex(in_path), garland_d);
    json j{{"d", garland_d}, {"holds", r.holds}, {"min_lambda2", r.min_lambda2}};
    if (r.witness) {
      j["witness"] = json(std::vector<Vertex>(r.witness->vertices().begin(), r.witness->vertices().end()));
      j["witness_lambda2"] = r.witness_lambda2;
    }
    Output out(g.out);
    emit_report(out.stream(), j, resolve_format(g, "json"));
  });

  // persist
  std::string points_path, filtration_kind = "rips";
  int persist_k = 1;
  double max_r = 0.0;
  std::size_t persist_n = 0;
  int persist_dim = 2;
  std::uint64_t persist_trial = 0;
  auto* per = app.add_subcommand("persist", "Persistence diagram of a Rips or Cech filtration");
  per->add_option("--points", points_path, "Point cloud CSV (otherwise uniform points are drawn)");
  per->add_option("--n", persist_n, "Points to draw when --points is absent");
  per->add_option("--d", persist_dim, "Ambient dimension of drawn points");
  per->add_option("--trial", persist_trial, "Stream index of the drawn points");
  per->add_option("--k", persist_k, "Homological degree");
  per->add_option("--max-r", max_r, "Scan limit")->required();
  per->add_option("--filtration", filtration_kind, "rips | cech");
  per->callback([&] {
    const auto pts = points_path.empty()
                         ? gen_points(persist_n, static_cast<std::size_t>(persist_dim), PointDistribution::kUniformCube,
                                      {g.seed, persist_trial})
                         : read_points(points_path);
    if (filtration_kind != "rips" && filtration_kind != "cech") throw DomainError("--filtration must be rips or cech");
    const auto f = filtration_kind == "rips" ? rips_filtration(pts, max_r, persist_k + 1)
                                             : cech_filtration(pts, max_r, persist_k + 1);
    const auto diagram = persistence_diagram(f, persist_k);
    Output out(g.out);
    auto& os = out.stream();
    if (resolve_format(g, "csv") == "json") {
      json pairs = json::array();
      for (const auto& p : diagram)
        pairs.push_back({{"degree", p.degree}, {"birth", p.birth}, {"death", p.death}, {"censored", p.censored}});
      os << json{{"cap", f.cap()}, {"max_persistence", max_persistence(diagram)}, {"pairs", pairs}}.dump(2) << '\n';
    } else {
      // Classes alive at the cap have no death: written as inf.
      os.precision(12);
      os << "degree,birth,death,persistence\n";
      for (const auto& p : diagram) {
        os << p.degree << ',' << p.birth << ',';
        if (p.censored)
          os << "inf,inf\n";
        else
          os << p.death << ',' << p.persistence() << '\n';
      }
    }
  });

  // constants
  std::string d_range = "2..10";
  auto* cst = app.add_subcommand("constants", "Table of c_d and c_d*");
  cst->add_option("--d-range", d_range, "lo..hi");
  cst->callback([&] {
    const auto dots = d_range.find("..");
    if (dots == std::string::npos) throw DomainError("--d-range must look like 2..10");
    const auto lo = parse_sizes(d_range.substr(0, dots)), hi = parse_sizes(d_range.substr(dots + 2));
    if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) throw DomainError("--d-range must look like 2..10");
    Output out(g.out);
    auto& os = out.stream();
    const bool js = resolve_format(g, "csv") == "json";
    json rows = json::array();
    os.precision(16);
    if (!js) os << "d,c_d,c_d_star,residual_c_d,residual_c_d_star\n";
    for (std::size_t d = lo[0]; d <= hi[0]; ++d) {
      const auto c = c_collapse(static_cast<int>(d)), s = c_star(static_cast<int>(d));
      if (js)
        rows.push_back({{"d", d}, {"c_d", c.value}, {"c_d_star", s.value}, {"residual_c_d", c.residual},
                        {"residual_c_d_star", s.residual}});
      else
        os << d << ',' << c.value << ',' << s.value << ',' << c.residual << ',' << s.residual << '\n';
    }
    if (js) os << rows.dump(2) << '\n';
  });

  // predict
  std::string formula, tag, alphas;
  long long pn = 0;
  double pp = 0.0, pc = 0.0;
  int pd = 2, pk = 1;
  std::string geo_model = "rips";
  auto* pre = app.add_subcommand("predict", "Evaluate a closed-form prediction by name");
  pre->add_option("formula", formula,
                  "threshold | c_star | c_collapse | prob_acyclic_limit | expected_simplex_boundaries | "
                  "prob_top_vanishing_limit | expected_faces_clique | euler_prediction | expected_betti_first_order | "
                  "fowler_domination | geometric_scaling | bw_window")
      ->required();
  pre->add_option("--tag", tag, "Threshold tag (for 'threshold')");
  pre->add_option("--n", pn, "n");
  pre->add_option("--p", pp, "p");
  pre->add_option("--c", pc, "c");
  pre->add_option("--d", pd, "d (also the Y_d dimension for lm-* thresholds)");
  pre->add_option("--k", pk, "k, or the face dimension i for expected_faces_clique");
  pre->add_option("--alphas", alphas, "Comma list of exponents");
  pre->add_option("--model", geo_model, "rips | cech (geometric_scaling)");
  pre->callback([&] {
    json j{{"formula", formula}};
    if (formula == "threshold") {
      j["tag"] = tag;
      j["value"] = threshold_function(tag, pn, tag.rfind("lm-", 0) == 0 ? pd : pk);
    } else if (formula == "c_star" || formula == "c_collapse") {
      const auto c = formula == "c_star" ? c_star(pd) : c_collapse(pd);
      j["value"] = c.value;
      j["root"] = c.root;
      j["residual"] = c.residual;
    } else if (formula == "prob_acyclic_limit") {
      j["value"] = prob_acyclic_limit(pc);
    } else if (formula == "expected_simplex_boundaries") {
      j["value"] = expected_simplex_boundaries(pd, pc);
    } else if (formula == "prob_top_vanishing_limit") {
      j["value"] = prob_top_vanishing_limit(pd, pc);
    } else if (formula == "expected_faces_clique") {
      j["value"] = expected_faces_clique(pn, pp, pk);
    } else if (formula == "euler_prediction") {
      j["value"] = euler_prediction(pn, pp);
    } else if (formula == "expected_betti_first_order") {
      const auto b = expected_betti_first_order(pn, pp, pk);
      j["value"] = b.value;
      j["in_window"] = b.in_window;
      j["window_lo"] = b.window_lo;
      j["window_hi"] = b.window_hi;
      if (!b.in_window) std::cerr << "warning: p lies outside (n^{-1/k}, n^{-1/(k+1)})\n";
    } else if (formula == "fowler_domination") {
      j["value"] = to_string(fowler_domination(parse_list(alphas), pk));
    } else if (formula == "geometric_scaling") {
      const auto s = geometric_scaling(geo_model, pd, pk);
      j["n_exponent"] = s.n_exponent;
      j["r_exponent"] = s.r_exponent;
    } else if (formula == "bw_window") {
      const auto w = bw_window(pn, pd, pk);
      j["vanish_above"] = w.vanish_above;
      j["nonvanish_below"] = w.nonvanish_below;
    } else {
      throw DomainError("unknown formula '" + formula + "'");
    }
    Output out(g.out);
    out.stream().precision(16);
    emit_report(out.stream(), j, resolve_format(g, "csv"));
  });

  // estimate
  ModelFlags est_model;
  std::vector<std::string> props;
  double confidence = 0.95;
  auto* est = app.add_subcommand("estimate", "Fraction of trials with a property, with exact CI");
  add_model_flags(est, est_model);
  est->add_option("--property", props, "Property spec (repeatable)")->required();
  est->add_option("--confidence", confidence, "CI level");
  est->callback([&] {
    std::vector<PropertySpec> specs;
    for (const auto& s : props) specs.push_back(PropertySpec::parse(s));
    auto o = run_options(g);
    o.confidence = confidence;
    const auto res = estimate(to_config(est_model), specs, o);
    Output out(g.out);
    auto& os = out.stream();
    os.precision(12);
    if (resolve_format(g, "csv") == "json") {
      json rows = json::array();
      for (const auto& e : res)
        rows.push_back({{"property", e.property}, {"estimate", e.estimate}, {"ci", interval_json(e.ci)},
                        {"successes", e.successes}, {"trials", e.trials}, {"errors", e.errors}});
      os << rows.dump(2) << '\n';
    } else {
      os << "property,estimate,ci_lo,ci_hi,successes,trials,errors\n";
      for (const auto& e : res)
        os << e.property << ',' << e.estimate << ',' << e.ci.lo << ',' << e.ci.hi << ',' << e.successes << ','
           << e.trials << ',' << e.errors << '\n';
    }
  });

  // scan
  ModelFlags scan_model;
  std::vector<std::string> scan_props;
  std::string grid_text;
  auto* scn = app.add_subcommand("scan", "Coupled threshold scan over a parameter grid");
  add_model_flags(scn, scan_model);
  scn->add_option("--property", scan_props, "Property spec (repeatable)")->required();
  scn->add_option("--grid", grid_text, "lo:hi:count or comma list of p (or c with --per-n, or r)")->required();
  bool per_n = false;
  scn->add_flag("--per-n", per_n, "Grid values are c with p = c/n");
  scn->add_option("--confidence", confidence, "CI level");
  scn->callback([&] {
    std::vector<PropertySpec> specs;
    for (const auto& s : scan_props) specs.push_back(PropertySpec::parse(s));
    auto cfg = to_config(scan_model);
    cfg.per_n = per_n;
    auto o = run_options(g);
    o.confidence = confidence;
    const auto results = scan(cfg, specs, parse_grid(grid_text), o);
    for (const auto& r : results)
      std::cerr << r.property << " crossing: " << (r.crossing ? std::to_string(*r.crossing) : "none") << '\n';
    if (resolve_format(g, "csv") == "json") {
      json all = json::array();
      for (const auto& r : results) all.push_back(scan_json(r));
      Output out(g.out);
      out.stream() << all.dump(2) << '\n';
      return;
    }
    if (results.size() == 1 || g.out.empty() || g.out == "-") {
      Output out(g.out);
      for (const auto& r : results) {
        if (results.size() > 1) out.stream() << "# " << r.property << '\n';
        write_scan_csv(out.stream(), r);
      }
      return;
    }
    // Several properties with a file target: one CSV per property.
    for (const auto& r : results) {
      const auto dot = g.out.rfind('.');
      const std::string stem = dot == std::string::npos ? g.out : g.out.substr(0, dot);
      const std::string ext = dot == std::string::npos ? ".csv" : g.out.substr(dot);
      Output out(stem + "." + file_safe(r.property) + ext);
      write_scan_csv(out.stream(), r);
    }
  });

  // giant
  std::size_t giant_n = 5000;
  std::string c_grid = "0.5,1,1.5,2";
  auto* gia = app.add_subcommand("giant", "Largest component of G(n, c/n)");
  gia->add_option("--n", giant_n, "Vertices");
  gia->add_option("--c-grid", c_grid, "Comma list or lo:hi:count of c");
  gia->callback([&] {
    const auto rows = giant_component_experiment(giant_n, parse_grid(c_grid), run_options(g));
    Output out(g.out);
    if (resolve_format(g, "csv") == "json") {
      json all = json::array();
      for (const auto& r : rows)
        all.push_back({{"c", r.c}, {"mean_fraction", r.mean_fraction}, {"stderr", r.stderr_fraction},
                       {"mean_largest", r.mean_largest}, {"largest_over_log_n", r.largest_over_log_n},
                       {"trials", r.trials}});
      out.stream() << all.dump(2) << '\n';
    } else {
      write_giant_csv(out.stream(), rows);
    }
  });

  // persist-exp
  std::string n_list = "100,300,1000";
  int pe_d = 2, pe_k = 1;
  double cap_factor = kPersistenceCapFactor;
  auto* pex = app.add_subcommand("persist-exp", "Maximal persistence growth of Rips 1-cycles");
  pex->add_option("--n-list", n_list, "Comma list of point counts");
  pex->add_option("--d", pe_d, "Ambient dimension");
  pex->add_option("--k", pe_k, "Homological degree");
  pex->add_option("--cap-factor", cap_factor, "Scan limit as a multiple of (log n/(omega_d n))^{1/d}");
  pex->callback([&] {
    const auto rows = persistence_experiment(parse_sizes(n_list), pe_d, pe_k, run_options(g), cap_factor);
    Output out(g.out);
    if (resolve_format(g, "csv") == "json") {
      json all = json::array();
      for (const auto& r : rows)
        all.push_back({{"n", r.n}, {"cap", r.cap}, {"median", r.median}, {"q1", r.q1}, {"q3", r.q3},
                       {"ratio", r.ratio}, {"censored", r.censored}, {"trials", r.trials}});
      out.stream() << all.dump(2) << '\n';
    } else {
      write_persistence_csv(out.stream(), rows);
    }
  });

  // linkcheck
  std::size_t lc_n = 100;
  double lc_p = 0.05;
  std::optional<double> lc_q;
  std::size_t repetitions = 1;
  auto* lck = app.add_subcommand("linkcheck", "Chi-squared test: lk(0) in Y_2(n,p) versus G(n-1,p)");
  lck->add_option("--n", lc_n, "Vertices");
  lck->add_option("--p", lc_p, "Triangle probability");
  lck->add_option("--q", lc_q, "Edge probability of the comparison graph (default p)");
  lck->add_option("--repetitions", repetitions, "Independent repetitions of the test");
  lck->callback([&] {
    Output out(g.out);
    auto& os = out.stream();
    os.precision(12);
    auto o = run_options(g);
    const bool js = resolve_format(g, "csv") == "json";
    json all = json::array();
    if (!js) os << "repetition,p_value\n";
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
      o.first_stream = rep * g.trials;
      const double pv = link_distribution_check(lc_n, lc_p, o, lc_q).p_value;
      if (js)
        all.push_back({{"repetition", rep}, {"p_value", pv}});
      else
        os << rep << ',' << pv << '\n';
    }
    if (js) os << all.dump(2) << '\n';
  });

  // betti-curves
  std::size_t bc_n = 25;
  std::string bc_grid = "0:0.6:25";
  int bc_degree = 5;
  auto* bcv = app.add_subcommand("betti-curves", "Mean Betti numbers of X(n,p) with the |E[chi]| prediction");
  bcv->add_option("--n", bc_n, "Vertices");
  bcv->add_option("--grid", bc_grid, "lo:hi:count or comma list of p");
  bcv->add_option("--max-degree", bc_degree, "Largest Betti degree");
  bcv->callback([&] {
    const auto rows = betti_curves(bc_n, parse_grid(bc_grid), bc_degree, run_options(g));
    Output out(g.out);
    if (resolve_format(g, "csv") == "json") {
      json all = json::array();
      for (const auto& r : rows)
        all.push_back({{"p", r.p}, {"expected_edges", r.expected_edges}, {"mean_betti", r.mean_betti},
                       {"prediction", r.prediction}});
      out.stream() << all.dump(2) << '\n';
    } else {
      write_betti_curves_csv(out.stream(), rows);
    }
  });

  // scaling
  std::string sc_model = "rips", sc_n = "500,1000,2000";
  int sc_d = 2, sc_k = 1;
  double sc_scale = 1.0, sc_exponent = 0.6;
  auto* sca = app.add_subcommand("scaling", "Subcritical E[beta_k] normalised by n^a r^b");
  sca->add_option("--model", sc_model, "rips | cech");
  sca->add_option("--d", sc_d, "Ambient dimension");
  sca->add_option("--k", sc_k, "Homological degree");
  sca->add_option("--n-list", sc_n, "Comma list of point counts");
  sca->add_option("--scale", sc_scale, "r = scale * n^{-exponent}");
  sca->add_option("--exponent", sc_exponent, "r = scale * n^{-exponent}");
  sca->callback([&] {
    const auto rows = scaling_experiment(sc_model, sc_d, sc_k, parse_sizes(sc_n), sc_scale, sc_exponent, run_options(g));
    Output out(g.out);
    if (resolve_format(g, "csv") == "json") {
      json all = json::array();
      for (const auto& r : rows)
        all.push_back({{"n", r.n}, {"r", r.r}, {"mean_betti", r.mean_betti}, {"normaliser", r.normaliser},
                       {"ratio", r.ratio}, {"trials", r.trials}});
      out.stream() << all.dump(2) << '\n';
    } else {
      write_scaling_csv(out.stream(), rows);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
