#include "lipjet/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

#include "lipjet/bounds.hpp"
#include "lipjet/covering.hpp"
#include "lipjet/jet_file.hpp"
#include "lipjet/sandwich.hpp"

namespace lipjet::cli {

using nlohmann::json;

namespace {

// Ordered key/value report printed either as "key: value" lines or as one
// JSON object with the same keys.
class Report {
 public:
  void add(const std::string& key, json value) {
    if (!doc_.contains(key)) keys_.push_back(key);
    doc_[key] = std::move(value);
  }

  void print(std::ostream& out, bool as_json) const {
    if (as_json) {
      out << doc_.dump(2) << '\n';
      return;
    }
    for (const auto& key : keys_) {
      const json& v = doc_.at(key);
      out << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }

 private:
  std::vector<std::string> keys_;
  json doc_ = json::object();
};

json maybe(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json maybe(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

// ------------------------------------------------------------------ norm

struct NormArgs {
  std::string file;
  double eta = 0.0;
};

int cmd_norm(const NormArgs& a, bool eta_given, bool as_json, std::ostream& out) {
  const LipFunction f = load_jet_file(a.file);
  const NormReport r = lip_norm(f, eta_given ? a.eta : f.gamma());
  Report rep;
  rep.add("file", a.file);
  rep.add("gamma", f.gamma());
  rep.add("eta", r.eta);
  rep.add("q", r.q);
  rep.add("sites", f.size());
  json levels = json::array();
  for (int l = 0; l <= r.q; ++l) {
    json pair = r.holder_pair[l] ? json::array({r.holder_pair[l]->first, r.holder_pair[l]->second}) : json(nullptr);
    levels.push_back({{"level", l},
                      {"pointwise", r.pointwise[l]},
                      {"pointwise_site", r.pointwise_site[l]},
                      {"holder", r.holder[l]},
                      {"holder_pair", pair}});
  }
  rep.add("levels", levels);
  rep.add("overall", r.overall);
  rep.print(out, as_json);
  return kOk;
}

// ---------------------------------------------------------------- bounds

const std::map<std::string, std::vector<std::string>>& bound_requirements() {
  static const std::map<std::string, std::vector<std::string>> req{
      {"g", {"rho", "theta", "l", "diam"}},
      {"h", {"rho", "theta", "l", "diam"}},
      {"nesting", {"rho", "theta", "diam"}},
      {"local1", {"rho", "theta", "A", "r0", "delta"}},
      {"local2", {"rho", "theta", "A", "r0", "delta"}},
      {"delta-star", {"A", "r0", "rho"}},
      {"delta0-pointwise", {"eps", "eps0", "k", "gamma", "l"}},
      {"delta0-single", {"eps", "eps0", "k", "gamma", "eta"}},
      {"sandwich", {"eps", "k", "gamma", "eta"}},
  };
  return req;
}

const std::vector<std::string>& bound_flags() {
  static const std::vector<std::string> flags{"rho", "theta", "l",   "diam", "A",     "r0",
                                              "delta", "eps", "eps0", "k",  "gamma", "eta"};
  return flags;
}

int integer_flag(double v, const char* name) {
  if (v != std::floor(v) || v < 0) throw InputError(std::string("--") + name + " must be a nonnegative integer");
  return static_cast<int>(v);
}

json query_json(const BoundQuery& q) {
  json j = json::object();
  if (q.has_rho()) j["rho"] = q.rho();
  if (q.has_theta()) j["theta"] = q.theta();
  if (q.has_level()) j["l"] = q.level();
  if (q.has_diam()) j["diam"] = q.diam();
  if (q.has_norm_bound()) j["A"] = q.norm_bound();
  if (q.has_anchor_bound()) j["r0"] = q.anchor_bound();
  if (q.has_delta()) j["delta"] = q.delta();
  return j;
}

void add_bound(Report& rep, const BoundReport& b) {
  rep.add("name", b.name);
  rep.add("inputs", query_json(b.inputs));
  rep.add("value", b.value);
  rep.add("attained_at", maybe(b.attained_at));
  rep.add("attained", b.attained);
  if (b.refined_value) rep.add("refined_value", *b.refined_value);
  rep.add("method", b.method);
}

int cmd_bounds(const std::string& which, const std::map<std::string, double>& v,
               const std::map<std::string, bool>& given, bool as_json, std::ostream& out,
               std::ostream& err) {
  std::vector<std::string> missing;
  for (const auto& name : bound_requirements().at(which)) {
    if (!given.at(name)) missing.push_back("--" + name);
  }
  if (!missing.empty()) {
    err << "lipjet: error: --which " << which << " needs";
    for (const auto& m : missing) err << ' ' << m;
    err << '\n';
    return kInputError;
  }
  auto at = [&](const char* name) { return v.at(name); };
  BoundQuery q;
  if (given.at("rho")) q.set_rho(at("rho"));
  if (given.at("theta")) q.set_theta(at("theta"));
  if (given.at("l")) q.set_level(integer_flag(at("l"), "l"));
  if (given.at("diam")) q.set_diam(at("diam"));
  if (given.at("A")) q.set_norm_bound(at("A"));
  if (given.at("r0")) q.set_anchor_bound(at("r0"));
  if (given.at("delta")) q.set_delta(at("delta"));

  Report rep;
  if (which == "g") {
    add_bound(rep, g_const(q));
    rep.add("case_one_bound", remainder_bound(q, RemainderCase::one).value);
  } else if (which == "h") {
    add_bound(rep, h_const(q));
    rep.add("case_two_bound", remainder_bound(q, RemainderCase::two).value);
  } else if (which == "nesting") {
    add_bound(rep, nesting_factor(at("rho"), at("theta"), at("diam")));
  } else if (which == "local1") {
    add_bound(rep, local_bound_I(q));
  } else if (which == "local2") {
    add_bound(rep, local_bound_II(q));
    rep.add("e_sequence", e_sequence(q));
  } else if (which == "delta-star") {
    add_bound(rep, delta_star(at("A"), at("r0"), at("rho")));
  } else if (which == "delta0-pointwise") {
    add_bound(rep, delta0_pointwise(at("eps"), at("eps0"), at("k"), at("gamma"), integer_flag(at("l"), "l")));
  } else if (which == "delta0-single") {
    add_bound(rep, delta0_single_point(at("eps"), at("eps0"), at("k"), at("gamma"), at("eta")));
  } else {
    const SandwichConstants c = sandwich_constants(at("eps"), at("k"), at("gamma"), at("eta"));
    rep.add("name", "sandwich");
    rep.add("inputs", {{"eps", at("eps")}, {"K", at("k")}, {"gamma", at("gamma")}, {"eta", at("eta")}});
    rep.add("delta0", c.delta0);
    rep.add("eps0", c.eps0);
    rep.add("theta_aux", c.theta_aux);
    rep.add("eps_used", c.eps_used);
    rep.add("method", "theta = 1/(2(1+e)); single-point delta0 at (theta eps, theta eps / 2), capped at 1 and halved");
  }
  rep.print(out, as_json);
  return kOk;
}

// ----------------------------------------------------------------- cover

int cmd_cover(const std::string& file, double delta, const std::string& check, bool as_json,
              std::ostream& out) {
  const LipFunction f = load_jet_file(file);
  Report rep;
  rep.add("file", file);
  rep.add("sites", f.size());
  rep.add("delta", delta);
  rep.add("diameter", diameter(f.sites()));
  int code = kOk;
  if (!check.empty()) {
    const std::vector<std::size_t> centers = load_indices(check);
    const CoverCheck c = is_cover(f.sites(), centers, delta);
    rep.add("mode", "check");
    rep.add("count", centers.size());
    rep.add("centers", centers);
    rep.add("verified", c.covered);
    rep.add("uncovered_witness", maybe(c.uncovered_witness));
    if (!c.covered) code = kRejected;
  } else {
    const CoverPlan p = greedy_cover(f.sites(), delta);
    rep.add("mode", "greedy");
    rep.add("count", p.center_indices.size());
    rep.add("centers", p.center_indices);
    rep.add("verified", p.verified);
    rep.add("uncovered_witness", maybe(p.uncovered_witness));
  }
  rep.print(out, as_json);
  return code;
}

// --------------------------------------------------------------- certify

struct CertifyArgs {
  std::string f, g, theorem, cover;
  double eps = 0.0, eps0 = 0.0, k1 = 0.0, k2 = 0.0, eta = 0.0;
  int l = 0;
  std::size_t anchor = 0;
};

int cmd_certify(const CertifyArgs& a, const std::map<std::string, bool>& given, bool as_json,
                std::ostream& out, std::ostream& err) {
  std::vector<std::string> missing;
  auto need = [&](const char* name) {
    if (!given.at(name)) missing.push_back(std::string("--") + name);
  };
  need("eps");
  need("k1");
  need("k2");
  if (a.theorem == "pointwise") need("l");
  if (a.theorem != "pointwise") need("eta");
  if (!missing.empty()) {
    err << "lipjet: error: --theorem " << a.theorem << " needs";
    for (const auto& m : missing) err << ' ' << m;
    err << '\n';
    return kInputError;
  }
  const LipFunction f = load_jet_file(a.f);
  const LipFunction g = load_jet_file(a.g);

  // Without --cover, B is the greedy cover at the theorem's delta0.
  auto cover_for = [&](double delta0) {
    return a.cover.empty() ? greedy_cover(f.sites(), delta0).center_indices : load_indices(a.cover);
  };
  Certificate c;
  if (a.theorem == "pointwise") {
    const double d0 = delta0_pointwise(a.eps, a.eps0, a.k1 + a.k2, f.gamma(), a.l).value;
    c = certify_pointwise(f, g, cover_for(d0), a.eps, a.eps0, a.k1, a.k2, a.l);
  } else if (a.theorem == "single-point") {
    c = certify_single_point(f, g, a.anchor, a.eps, a.eps0, a.k1, a.k2, a.eta);
  } else {
    if (a.eta >= f.gamma()) {
      throw InputError("eta must be strictly below gamma; the conclusion fails at eta = gamma");
    }
    const double d0 = sandwich_constants(a.eps, a.k1 + a.k2, f.gamma(), a.eta).delta0;
    c = certify_full(f, g, cover_for(d0), a.eps, a.k1, a.k2, a.eta);
  }

  Report rep;
  rep.add("theorem", theorem_name(c.theorem));
  rep.add("eps", c.eps);
  rep.add("eps0", c.eps0);
  rep.add("k1", c.k1);
  rep.add("k2", c.k2);
  rep.add("gamma", c.gamma);
  if (c.eta) rep.add("eta", *c.eta);
  if (c.level) rep.add("l", *c.level);
  rep.add("delta0", c.delta0);
  if (c.constants) rep.add("theta_aux", c.constants->theta_aux);
  if (c.anchor) {
    rep.add("anchor", *c.anchor);
    rep.add("region", c.region);
  } else {
    rep.add("cover_source", a.cover.empty() ? "greedy" : a.cover);
    rep.add("cover", c.cover);
  }
  json hyps = json::array();
  for (const auto& h : c.hypotheses) {
    hyps.push_back({{"name", h.name},
                    {"passed", h.passed},
                    {"measured", h.measured},
                    {"limit", h.limit},
                    {"witness", maybe(h.witness)}});
  }
  rep.add("hypotheses", hyps);
  rep.add("guaranteed_bound", c.guaranteed_bound);
  rep.add("measured_value", c.measured_value);
  rep.add("ratio", c.measured_value / c.guaranteed_bound);
  rep.add("valid", c.valid);
  rep.add("conclusion_holds", c.conclusion_holds);

  int code = kOk;
  std::string verdict = "certified";
  if (c.soundness_violation()) {
    code = kSoundnessViolation;
    verdict = "soundness violation: hypotheses hold but the conclusion fails";
  } else if (!c.valid) {
    code = kRejected;
    verdict = std::string("rejected: hypothesis ") + c.first_failure()->name + " failed";
  }
  rep.add("verdict", verdict);
  rep.print(out, as_json);
  return code;
}

// ------------------------------------------------------------------ plan

struct PlanArgs {
  std::string file, mode, out;
  double eps = 0.0, k1 = 0.0, k2 = 0.0, eta = 0.0, eps0 = 0.0;
  int l = 0;
  bool cube = false;
};

int cmd_plan(const PlanArgs& a, const std::map<std::string, bool>& given, bool as_json,
             std::ostream& out, std::ostream& err) {
  std::vector<std::string> missing;
  for (const char* name : {"eps", "k1", "k2"}) {
    if (!given.at(name)) missing.push_back(std::string("--") + name);
  }
  if (a.mode == "lip" && !given.at("eta")) missing.push_back("--eta");
  if (a.mode == "pointwise" && !given.at("l")) missing.push_back("--l");
  if (!missing.empty()) {
    err << "lipjet: error: --mode " << a.mode << " needs";
    for (const auto& m : missing) err << ' ' << m;
    err << '\n';
    return kInputError;
  }
  const LipFunction f = load_jet_file(a.file);
  PlanRequest r;
  r.mode = a.mode == "lip" ? PlanMode::lip : PlanMode::pointwise;
  r.eps = a.eps;
  r.k1 = a.k1;
  r.k2 = a.k2;
  r.gamma = f.gamma();
  if (r.mode == PlanMode::lip) r.eta = a.eta;
  if (r.mode == PlanMode::pointwise) {
    r.level = a.l;
    r.eps0 = a.eps0;
  }
  r.cube_sample = a.cube;
  const Plan p = plan_approximation(f.sites(), r);
  if (!a.out.empty()) write_json_file(json{{"centers", p.centers}}, a.out);

  Report rep;
  rep.add("file", a.file);
  rep.add("mode", a.mode);
  rep.add("sites", f.size());
  rep.add("eps", r.eps);
  rep.add("k1", r.k1);
  rep.add("k2", r.k2);
  rep.add("gamma", r.gamma);
  if (r.eta) rep.add("eta", *r.eta);
  if (r.level) rep.add("l", *r.level);
  rep.add("delta0", p.delta0);
  rep.add("eps0", p.eps0);
  rep.add("n", p.n);
  rep.add("verified", p.verified);
  rep.add("centers", p.centers);
  if (p.cube_ceiling) {
    const CubeBound& cb = *p.cube_ceiling;
    rep.add("cube_bound", {{"d", cb.d}, {"delta0", cb.delta0}, {"omega_d", cb.omega_d}, {"bound", cb.bound}, {"m", cb.m}});
    rep.add("within_cube_bound", static_cast<long long>(p.n) <= cb.m);
  }
  rep.print(out, as_json);
  return kOk;
}

// --------------------------------------------------------------- example

int cmd_example(const std::string& kind_name, const CounterexampleParams& params, const std::string& dir,
                bool as_json, std::ostream& out) {
  static const std::map<std::string, CounterexampleKind> kinds{
      {"eta-equals-gamma", CounterexampleKind::eta_equals_gamma},
      {"eps0-dependence", CounterexampleKind::eps0_dependence},
      {"nesting-a", CounterexampleKind::nesting_a},
      {"nesting-b", CounterexampleKind::nesting_b},
  };
  const Counterexample ex = counterexample(kinds.at(kind_name), params);
  std::filesystem::create_directories(dir);
  const std::filesystem::path root(dir);
  std::vector<std::string> files{"f.json"};
  save_jet_file(ex.f, root / "f.json");
  double measured = 0.0;
  if (ex.g) {
    const LipFunction d = diff(ex.f, *ex.g);
    save_jet_file(*ex.g, root / "g.json");
    save_jet_file(d, root / "diff.json");
    files.insert(files.end(), {"g.json", "diff.json"});
    measured = lip_norm(d, ex.eta).overall;
  } else {
    measured = lip_norm(ex.f, ex.eta).overall;
  }
  const json expectation{{"kind", kind_name},
                         {"eta", ex.eta},
                         {"expected", ex.expected},
                         {"measured", measured},
                         {"measured_on", ex.g ? "diff.json" : "f.json"},
                         {"gamma_norm_f", lip_norm_value(ex.f)},
                         {"cover", ex.cover},
                         {"note", ex.note}};
  write_json_file(expectation, root / "expectation.json");
  files.push_back("expectation.json");

  Report rep;
  for (const auto& [key, value] : expectation.items()) rep.add(key, value);
  rep.add("out", dir);
  rep.add("files", files);
  rep.print(out, as_json);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lip(gamma) jets on finite point clouds", "lipjet"};
  app.require_subcommand(1, 1);
  std::string format = "text";
  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  NormArgs norm;
  CLI::App* s_norm = app.add_subcommand("norm", "Exact Lip(eta) norm of a jet file");
  s_norm->add_option("file", norm.file, "Jet file")->required();
  CLI::Option* o_norm_eta = s_norm->add_option("--eta", norm.eta, "Regularity in (0, gamma]; default gamma");
  add_format(s_norm);

  std::string which;
  std::map<std::string, double> bvals;
  std::map<std::string, CLI::Option*> bopts;
  CLI::App* s_bounds = app.add_subcommand("bounds", "Evaluate an explicit constant");
  s_bounds->add_option("--which", which, "Constant to evaluate")
      ->required()
      ->check(CLI::IsMember({"g", "h", "nesting", "local1", "local2", "delta-star", "delta0-pointwise",
                             "delta0-single", "sandwich"}));
  for (const auto& name : bound_flags()) {
    bvals[name] = 0.0;
    bopts[name] = s_bounds->add_option("--" + name, bvals[name]);
  }
  add_format(s_bounds);

  std::string cover_file, cover_check;
  double cover_delta = 0.0;
  CLI::App* s_cover = app.add_subcommand("cover", "Build or check a delta-cover of the sites");
  s_cover->add_option("file", cover_file, "Jet file whose sites are covered")->required();
  s_cover->add_option("--delta", cover_delta, "Closed-ball radius")->required();
  CLI::Option* o_greedy = s_cover->add_flag("--greedy", "Farthest-point greedy cover (default)");
  s_cover->add_option("--check", cover_check, "JSON file of center indices to verify")->excludes(o_greedy);
  add_format(s_cover);

  CertifyArgs cert;
  CLI::App* s_cert = app.add_subcommand("certify", "Check a sandwich-theorem certificate");
  s_cert->add_option("f", cert.f, "First jet file")->required();
  s_cert->add_option("g", cert.g, "Second jet file")->required();
  s_cert->add_option("--theorem", cert.theorem)->required()->check(CLI::IsMember({"pointwise", "single-point", "full"}));
  std::map<std::string, CLI::Option*> copts;
  copts["eps"] = s_cert->add_option("--eps", cert.eps);
  copts["eps0"] = s_cert->add_option("--eps0", cert.eps0, "Gap allowed on B (pointwise, single-point)");
  copts["k1"] = s_cert->add_option("--k1", cert.k1);
  copts["k2"] = s_cert->add_option("--k2", cert.k2);
  copts["l"] = s_cert->add_option("--l", cert.l);
  copts["eta"] = s_cert->add_option("--eta", cert.eta);
  s_cert->add_option("--anchor", cert.anchor, "Anchor site (single-point)");
  s_cert->add_option("--cover", cert.cover, "JSON file of cover indices; default greedy at delta0");
  add_format(s_cert);

  PlanArgs plan;
  CLI::App* s_plan = app.add_subcommand("plan", "Covering-based approximation plan");
  s_plan->add_option("file", plan.file, "Jet file whose sites are planned over")->required();
  s_plan->add_option("--mode", plan.mode)->required()->check(CLI::IsMember({"lip", "pointwise"}));
  std::map<std::string, CLI::Option*> popts;
  popts["eps"] = s_plan->add_option("--eps", plan.eps);
  popts["k1"] = s_plan->add_option("--k1", plan.k1);
  popts["k2"] = s_plan->add_option("--k2", plan.k2);
  popts["eta"] = s_plan->add_option("--eta", plan.eta);
  popts["l"] = s_plan->add_option("--l", plan.l);
  s_plan->add_option("--eps0", plan.eps0, "Pointwise mode gap allowed on the centers");
  s_plan->add_flag("--cube", plan.cube, "Sites sample [0,1]^d; attach the cube ceiling");
  s_plan->add_option("--out", plan.out, "Write the centers to this JSON file");
  add_format(s_plan);

  std::string ex_kind, ex_out;
  CounterexampleParams ex;
  CLI::App* s_ex = app.add_subcommand("example", "Write a sharpness instance as jet files");
  s_ex->add_option("--kind", ex_kind)
      ->required()
      ->check(CLI::IsMember({"eta-equals-gamma", "eps0-dependence", "nesting-a", "nesting-b"}));
  s_ex->add_option("--out", ex_out, "Output directory")->required();
  s_ex->add_option("--k0", ex.k0);
  s_ex->add_option("--eps", ex.eps);
  s_ex->add_option("--eps0", ex.eps0);
  s_ex->add_option("--n", ex.n);
  s_ex->add_option("--a", ex.a);
  add_format(s_ex);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const bool as_json = format == "json";
  auto given = [](const std::map<std::string, CLI::Option*>& opts) {
    std::map<std::string, bool> out;
    for (const auto& [name, opt] : opts) out[name] = opt->count() > 0;
    return out;
  };
  try {
    if (s_norm->parsed()) return cmd_norm(norm, o_norm_eta->count() > 0, as_json, out);
    if (s_bounds->parsed()) return cmd_bounds(which, bvals, given(bopts), as_json, out, err);
    if (s_cover->parsed()) return cmd_cover(cover_file, cover_delta, cover_check, as_json, out);
    if (s_cert->parsed()) return cmd_certify(cert, given(copts), as_json, out, err);
    if (s_plan->parsed()) return cmd_plan(plan, given(popts), as_json, out, err);
    return cmd_example(ex_kind, ex, ex_out, as_json, out);
  } catch (const InputError& e) {
    err << "lipjet: error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "lipjet: error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace lipjet::cli
