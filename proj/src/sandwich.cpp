#include "lipjet/sandwich.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lipjet {

const char* theorem_name(Theorem t) {
  switch (t) {
    case Theorem::pointwise: return "pointwise";
    case Theorem::single_point: return "single-point";
    case Theorem::full: return "full";
  }
  return "?";
}

const HypothesisCheck* Certificate::first_failure() const {
  for (const auto& h : hypotheses) {
    if (!h.passed) return &h;
  }
  return nullptr;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

void require_norm_caps(double k1, double k2) {
  require(k1 >= 0.0 && k2 >= 0.0 && std::isfinite(k1) && std::isfinite(k2), "K1 and K2 must be finite and >= 0");
  require(k1 + k2 > 0.0, "(K1, K2) must not both be 0");
}

void require_eps(double eps, double eps0, double k) {
  require(eps > 0.0 && std::isfinite(eps), "eps must be positive");
  require(eps0 >= 0.0 && eps0 < std::min(k, eps), "eps0 must lie in [0, min{K1 + K2, eps})");
}

HypothesisCheck norm_check(const std::string& name, const LipFunction& f, double cap) {
  HypothesisCheck h;
  h.name = name;
  h.measured = lip_norm_value(f);
  h.limit = cap;
  h.passed = h.measured <= cap;
  return h;
}

HypothesisCheck cover_check(const LipFunction& f, std::span<const std::size_t> cover, double delta0) {
  HypothesisCheck h;
  h.name = "cover";
  h.limit = delta0;
  const CoverCheck c = is_cover(f.sites(), cover, delta0);
  h.passed = c.covered;
  h.witness = c.uncovered_witness;
  if (c.uncovered_witness) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t b : cover) nearest = std::min(nearest, distance(f.site(*c.uncovered_witness), f.site(b)));
    h.measured = nearest;
  } else {
    h.measured = delta0;
  }
  return h;
}

// max over levels j <= top and sites in `where` of |F^(j)(x)|.
double worst_gap(const LipFunction& d, std::span<const std::size_t> where, int top,
                 std::optional<std::size_t>* witness) {
  double worst = 0.0;
  for (std::size_t x : where) {
    for (int j = 0; j <= top; ++j) {
      const double v = d.jet(x, j).op_norm();
      if (v > worst) {
        worst = v;
        if (witness) *witness = x;
      }
    }
  }
  return worst;
}

HypothesisCheck closeness_check(const LipFunction& d, std::span<const std::size_t> where, double eps0) {
  for (std::size_t x : where) {
    require(x < d.size(), "site index " + std::to_string(x) + " out of range");
  }
  HypothesisCheck h;
  h.name = "closeness";
  h.limit = eps0;
  h.measured = worst_gap(d, where, d.k(), &h.witness);
  h.passed = h.measured <= eps0;
  return h;
}

void finish(Certificate& c) {
  c.valid = std::all_of(c.hypotheses.begin(), c.hypotheses.end(), [](const auto& h) { return h.passed; });
  c.conclusion_holds = c.measured_value <= c.guaranteed_bound * (1.0 + kConclusionSlack);
}

}  // namespace

Certificate certify_pointwise(const LipFunction& f, const LipFunction& g,
                              std::span<const std::size_t> cover, double eps, double eps0, double k1,
                              double k2, int l) {
  require_norm_caps(k1, k2);
  require_eps(eps, eps0, k1 + k2);
  require(l >= 0 && l <= f.k(), "l must lie in 0..k");
  const LipFunction d = diff(f, g);

  Certificate c;
  c.theorem = Theorem::pointwise;
  c.eps = eps;
  c.eps0 = eps0;
  c.k1 = k1;
  c.k2 = k2;
  c.gamma = f.gamma();
  c.level = l;
  c.cover.assign(cover.begin(), cover.end());
  c.delta0 = delta0_pointwise(eps, eps0, k1 + k2, f.gamma(), l).value;
  c.guaranteed_bound = eps;
  c.hypotheses.push_back(norm_check("norm-f", f, k1));
  c.hypotheses.push_back(norm_check("norm-g", g, k2));
  c.hypotheses.push_back(cover_check(f, cover, c.delta0));
  c.hypotheses.push_back(closeness_check(d, cover, eps0));

  std::vector<std::size_t> all(d.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  c.measured_value = worst_gap(d, all, l, nullptr);
  finish(c);
  return c;
}

Certificate certify_single_point(const LipFunction& f, const LipFunction& g, std::size_t anchor,
                                 double eps, double eps0, double k1, double k2, double eta) {
  require_norm_caps(k1, k2);
  require_eps(eps, eps0, k1 + k2);
  require(eta > 0.0 && eta < f.gamma(), "eta must lie in (0, gamma)");
  require(anchor < f.size(), "anchor index out of range");
  const LipFunction d = diff(f, g);

  Certificate c;
  c.theorem = Theorem::single_point;
  c.eps = eps;
  c.eps0 = eps0;
  c.k1 = k1;
  c.k2 = k2;
  c.gamma = f.gamma();
  c.eta = eta;
  c.anchor = anchor;
  c.delta0 = delta0_single_point(eps, eps0, k1 + k2, f.gamma(), eta).value;
  c.guaranteed_bound = eps;
  c.hypotheses.push_back(norm_check("norm-f", f, k1));
  c.hypotheses.push_back(norm_check("norm-g", g, k2));
  const std::size_t one[] = {anchor};
  c.hypotheses.push_back(closeness_check(d, one, eps0));

  for (std::size_t i = 0; i < d.size(); ++i) {
    if (distance(d.site(i), d.site(anchor)) <= c.delta0) c.region.push_back(i);
  }
  c.measured_value = lip_norm(restrict_to(d, c.region), eta).overall;
  finish(c);
  return c;
}

Certificate certify_full(const LipFunction& f, const LipFunction& g,
                         std::span<const std::size_t> cover, double eps, double k1, double k2,
                         double eta) {
  require_norm_caps(k1, k2);
  require(eps > 0.0 && std::isfinite(eps), "eps must be positive");
  require(eta > 0.0, "eta must be positive");
  require(eta < f.gamma(), "eta must be strictly below gamma; the conclusion fails at eta = gamma");
  const LipFunction d = diff(f, g);

  Certificate c;
  c.theorem = Theorem::full;
  c.eps = eps;
  c.k1 = k1;
  c.k2 = k2;
  c.gamma = f.gamma();
  c.eta = eta;
  c.cover.assign(cover.begin(), cover.end());
  c.constants = sandwich_constants(eps, k1 + k2, f.gamma(), eta);
  c.delta0 = c.constants->delta0;
  c.eps0 = c.constants->eps0;
  c.guaranteed_bound = eps;
  c.hypotheses.push_back(norm_check("norm-f", f, k1));
  c.hypotheses.push_back(norm_check("norm-g", g, k2));
  c.hypotheses.push_back(cover_check(f, cover, c.delta0));
  c.hypotheses.push_back(closeness_check(d, cover, c.eps0));
  c.measured_value = lip_norm(d, eta).overall;
  finish(c);
  return c;
}

Plan plan_approximation(std::span<const Point> sites, const PlanRequest& r) {
  require(!sites.empty(), "the site set is empty");
  require_norm_caps(r.k1, r.k2);
  require(r.eps > 0.0 && std::isfinite(r.eps), "eps must be positive");
  const double k = r.k1 + r.k2;
  Plan plan;
  plan.request = r;
  if (r.mode == PlanMode::lip) {
    require(r.eta.has_value(), "lip mode needs eta");
    const SandwichConstants sc = sandwich_constants(r.eps, k, r.gamma, *r.eta);
    plan.delta0 = sc.delta0;
    plan.eps0 = sc.eps0;
  } else {
    require(r.level.has_value(), "pointwise mode needs l");
    require_eps(r.eps, r.eps0, k);
    plan.delta0 = delta0_pointwise(r.eps, r.eps0, k, r.gamma, *r.level).value;
    plan.eps0 = r.eps0;
  }
  const CoverPlan cover = greedy_cover(sites, plan.delta0);
  plan.centers = cover.center_indices;
  plan.n = plan.centers.size();
  plan.verified = cover.verified;
  if (r.cube_sample) plan.cube_ceiling = cube_bound(sites.front().dim(), plan.delta0);
  return plan;
}

namespace {

SymForm scalar(double v) { return SymForm::from_coeffs(0, 1, 1, {v}); }
SymForm slope(double v) { return SymForm::from_coeffs(1, 1, 1, {v}); }

}  // namespace

Counterexample counterexample(CounterexampleKind kind, const CounterexampleParams& p) {
  switch (kind) {
    case CounterexampleKind::eta_equals_gamma: {
      require(p.eps > 0.0 && p.k0 > p.eps / 2.0, "needs K0 > eps/2 > 0");
      require(p.n >= 1, "needs N >= 1");
      const double h = 1.0 / p.n;
      std::vector<Point> sites{Point{0.0}, Point{h}};
      LipFunction f(1.0, sites, {{scalar(0.0)}, {scalar(p.k0 / p.n)}});
      LipFunction g(1.0, sites, {{scalar(0.0)}, {scalar(-p.k0 / p.n)}});
      return {kind, std::move(f), std::move(g), 1.0, 2.0 * p.k0, {0},
              "psi - phi vanishes on B = {0} yet its Lip(1) norm is 2 K0"};
    }
    case CounterexampleKind::eps0_dependence: {
      require(0.0 < p.eps0 && p.eps0 < p.eps && p.eps < 1.0 && 1.0 < p.k0,
              "needs 0 < eps0 < eps < 1 < K0");
      require(2.0 * p.eps0 * p.k0 > p.eps * p.eps, "needs 2 eps0 K0 > eps^2");
      const double x0 = 2.0 * p.eps0 / p.k0;
      std::vector<Point> sites{Point{0.0}, Point{x0}};
      LipFunction f(1.0, sites, {{scalar(-p.eps0)}, {scalar(p.eps0)}});
      LipFunction g = LipFunction::zero(1.0, sites, 1);
      return {kind, std::move(f), std::move(g), 0.5, std::sqrt(2.0 * p.eps0 * p.k0), {0, 1},
              "gaps <= eps0 on B = Sigma yet the Lip(1/2) norm is sqrt(2 eps0 K0)"};
    }
    case CounterexampleKind::nesting_a: {
      std::vector<Point> sites{Point{-1.0}, Point{0.0}, Point{1.0}};
      std::vector<std::vector<SymForm>> jets;
      for (double x : {-1.0, 0.0, 1.0}) jets.push_back({scalar(x * x), slope(2.0 * x)});
      LipFunction f(2.0, sites, std::move(jets));
      return {kind, std::move(f), std::nullopt, 1.5, 2.0 * std::sqrt(2.0), {},
              "x^2 jet: Lip(2) norm 2, Lip(3/2) norm 2 sqrt 2, ratio equals the nesting factor"};
    }
    case CounterexampleKind::nesting_b: {
      require(p.a > 0.0 && std::isfinite(p.a), "needs A > 0");
      std::vector<Point> sites{Point{0.0}, Point{1.0}};
      LipFunction f(2.0, sites, {{scalar(-p.a), slope(p.a)}, {scalar(p.a), slope(p.a)}});
      return {kind, std::move(f), std::nullopt, 1.0, 2.0 * p.a, {},
              "Lip(2) norm A, Lip(1) norm 2A, ratio equals the nesting factor 2"};
    }
  }
  throw InputError("unknown counterexample kind");
}

}  // namespace lipjet
