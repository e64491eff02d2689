// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "instances.hpp"
#include "lipjet/bounds.hpp"
#include "lipjet/covering.hpp"
#include "lipjet/jets.hpp"
#include "lipjet/sandwich.hpp"
#include "oracles.hpp"
#include "random_jets.hpp"

using namespace lipjet;
using namespace lipjet::testing;

namespace {

constexpr double kExact = 1e-12;
constexpr double kOracleTol = 1e-6;
constexpr double kSlack = 1e-9;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < limit_seconds, "runtime over " + std::to_string(limit_seconds) + " s");
  std::printf("%s %d %s (%.2f s) %s\n", o.ok ? "PASS" : "FAIL", id, name, secs, o.detail.str().c_str());
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

SymForm scalar(double v) { return SymForm::from_coeffs(0, 1, 1, {v}); }
SymForm slope(double v) { return SymForm::from_coeffs(1, 1, 1, {v}); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

int main() {
  criterion(1, "x^2 jet on {-1, 0, 1}: norms 2 and 2 sqrt 2, nesting ratio sqrt 2", 1.0, [](Outcome& o) {
    std::vector<std::vector<SymForm>> jets;
    for (double x : {-1.0, 0.0, 1.0}) jets.push_back({scalar(x * x), slope(2 * x)});
    const LipFunction f(2.0, {Point{-1.0}, Point{0.0}, Point{1.0}}, jets);
    const double top = lip_norm(f, 2.0).overall, mid = lip_norm(f, 1.5).overall;
    const double c = nesting_factor(2, 1.5, diameter(f.sites())).value;
    o.detail << "norm(2) = " << top << ", norm(3/2) = " << mid << ", factor = " << c << "; ";
    o.require(std::abs(top - 2) <= kExact, "Lip(2) norm");
    o.require(std::abs(mid - 2 * std::sqrt(2.0)) <= kExact, "Lip(3/2) norm");
    o.require(c == std::sqrt(2.0), "nesting factor");
    o.require(std::abs(mid / top - c) <= kExact, "ratio realizes the factor");
  });

  criterion(2, "two-site A = 1 jet: norms 1 and 2, nesting factor 2 attained", 1.0, [](Outcome& o) {
    const LipFunction f(2.0, {Point{0.0}, Point{1.0}}, {{scalar(-1), slope(1)}, {scalar(1), slope(1)}});
    const double top = lip_norm(f, 2.0).overall, low = lip_norm(f, 1.0).overall;
    const double c = nesting_factor(2, 1, 1).value;
    o.detail << "norm(2) = " << top << ", norm(1) = " << low << ", factor = " << c << "; ";
    o.require(std::abs(top - 1) <= kExact, "Lip(2) norm");
    o.require(std::abs(low - 2) <= kExact, "Lip(1) norm");
    o.require(c == 2.0, "nesting factor");
    o.require(std::abs(low / top - c) <= kExact, "ratio attains the factor");
  });

  criterion(3, "eta = gamma sharpness: difference norm 2 K0 with zero gaps on B", 1.0, [](Outcome& o) {
    const Counterexample c = counterexample(CounterexampleKind::eta_equals_gamma, {.k0 = 1, .eps = 0.5, .n = 10});
    const double norm = lip_norm(diff(c.f, *c.g), 1.0).overall;
    const double gap = max_gap(c.f, *c.g, c.cover);
    o.detail << "norm = " << norm << ", gap on B = " << gap << "; ";
    o.require(std::abs(norm - 2.0) <= kExact, "difference norm");
    o.require(gap == 0.0, "gaps on B");
    bool rejected = false;
    try {
      certify_full(c.f, *c.g, c.cover, 0.5, 1, 1, 1.0);
    } catch (const InputError&) {
      rejected = true;
    }
    o.require(rejected, "certify_full must reject eta = gamma");
  });

  criterion(4, "eps0 dependence: Lip(1/2) norm sqrt 0.4 exceeds eps", 1.0, [](Outcome& o) {
    const Counterexample c = counterexample(CounterexampleKind::eps0_dependence, {.k0 = 2, .eps = 0.5, .eps0 = 0.1});
    const double norm = lip_norm(diff(c.f, *c.g), 0.5).overall;
    o.detail << "norm = " << norm << "; ";
    o.require(std::abs(norm - std::sqrt(0.4)) <= kExact, "difference norm");
    o.require(norm > 0.5, "exceeds eps");
  });

  criterion(5, "soundness: 500 pointwise, 500 single-point, 500 full instances", 300.0, [](Outcome& o) {
    Rng rng(20260101);
    SoundnessTally pointwise, above, below, full;
    for (int t = 0; t < 500; ++t) {
      pointwise.add(pointwise_instance(rng));
      (t % 2 == 0 ? above : below).add(single_point_instance(rng, t % 2 == 0));
      full.add(full_instance(rng));
    }
    const std::pair<const char*, const SoundnessTally*> rows[] = {
        {"pointwise", &pointwise}, {"single eta>k", &above}, {"single eta<=k", &below}, {"full", &full}};
    for (const auto& [name, t] : rows) {
      o.detail << name << " " << t->valid << "/" << t->trials << " valid, " << t->violations
               << " violations, worst ratio " << t->worst_ratio << "; ";
      o.require(t->violations == 0, std::string(name) + " violation");
      // Instances are built to satisfy the hypotheses; a low valid count
      // would make the suite vacuous.
      o.require(t->valid >= t->trials * 95 / 100, std::string(name) + " too few valid instances");
    }
  });

  criterion(6, "constants agree with independent oracles on 20 draws each", 60.0, [](Outcome& o) {
    Rng rng(606);
    double worst = 0;
    auto agree = [&](double mine, double theirs, const char* what) {
      const double e = rel(mine, theirs);
      worst = std::max(worst, e);
      if (e > kOracleTol) o.detail << what << " " << mine << " vs " << theirs << "; ";
      o.require(e <= kOracleTol, what);
    };
    for (int t = 0; t < 20; ++t) {
      const double rho = uniform(rng, 0.3, 3.9);
      const int n = level_of(rho);
      const double diam = uniform(rng, 0.2, 3.0);
      const double theta = uniform(rng, n + 0.05 * (rho - n), rho - 0.05 * (rho - n));
      const int l = uniform_int(rng, 0, n);
      const BoundQuery q = BoundQuery{}.set_rho(rho).set_theta(theta).set_level(l).set_diam(diam);
      agree(g_const(q).value, oracle::g_grid(rho, theta, l, diam), "g_const");
    }
    for (int t = 0; t < 20; ++t) {
      const double rho = uniform(rng, 1.05, 3.9);
      const int n = level_of(rho);
      const double theta = uniform(rng, 0.05, n);
      const int l = uniform_int(rng, 0, level_of(theta));
      const double diam = uniform(rng, 0.2, 3.0);
      const BoundQuery q = BoundQuery{}.set_rho(rho).set_theta(theta).set_level(l).set_diam(diam);
      agree(h_const(q).value, oracle::h_grid(rho, theta, l, diam), "h_const");
    }
    for (int t = 0; t < 20; ++t) {
      const double gamma = uniform_int(rng, 0, 2) + uniform(rng, 0.1, 1.0), k = uniform(rng, 0.2, 3), eps = uniform(rng, 0.05, 3);
      const double eps0 = uniform(rng, 0, 0.9) * std::min(k, eps);
      const int l = uniform_int(rng, 0, level_of(gamma));
      agree(delta0_pointwise(eps, eps0, k, gamma, l).value, oracle::delta0_pointwise_grid(eps, eps0, k, gamma, l),
            "delta0_pointwise");
    }
    for (int t = 0; t < 20; ++t) {
      const bool above = t % 2 == 0;
      const double gamma = uniform_int(rng, above ? 0 : 1, 2) + uniform(rng, 0.1, 1.0);
      const int k = level_of(gamma);
      const double eta = above ? uniform(rng, k + 0.05 * (gamma - k), gamma - 0.05 * (gamma - k)) : uniform(rng, 0.05, k);
      const double kb = uniform(rng, 0.2, 3), eps = uniform(rng, 0.05, 3);
      const double eps0 = t % 4 < 2 ? 0.0 : uniform(rng, 0, 0.9) * std::min(kb, eps);
      agree(delta0_single_point(eps, eps0, kb, gamma, eta).value, oracle::delta0_single_grid(eps, eps0, kb, gamma, eta),
            "delta0_single_point");
    }
    for (int t = 0; t < 20; ++t) {
      const double rho = uniform_int(rng, 1, 3) + uniform(rng, 0.1, 1.0), a = uniform(rng, 0.2, 3);
      const double r0 = a * uniform(rng, 0.01, 0.99);
      agree(delta_star(a, r0, rho).value, oracle::delta_star_grid(a, r0, rho), "delta_star");
    }
    for (int t = 0; t < 20; ++t) {
      const double rho = uniform(rng, 1.05, 4.0);
      const double theta = uniform(rng, 0.05, level_of(rho));
      const double a = uniform(rng, 0.2, 3), r0 = a * uniform(rng, 0, 0.99), delta = uniform(rng, 0, 1);
      const std::vector<double> mine = e_sequence(
          BoundQuery{}.set_rho(rho).set_theta(theta).set_norm_bound(a).set_anchor_bound(r0).set_delta(delta));
      const std::vector<double> theirs = oracle::e_sequence(rho, theta, a, r0, delta);
      o.require(mine.size() == theirs.size(), "e_sequence length");
      for (std::size_t s = 0; s < std::min(mine.size(), theirs.size()); ++s) agree(mine[s], theirs[s], "e_sequence");
    }
    for (int t = 0; t < 20; ++t) {
      const double gamma = uniform_int(rng, 0, 2) + uniform(rng, 0.1, 1.0);
      const double eta = uniform(rng, 0.05, gamma - 0.01), k = uniform(rng, 0.2, 3), eps = uniform(rng, 0.05, 3);
      const SandwichConstants mine = sandwich_constants(eps, k, gamma, eta);
      const oracle::Chain theirs = oracle::sandwich_chain(eps, k, gamma, eta);
      agree(mine.delta0, theirs.delta0, "sandwich delta0");
      agree(mine.eps0, theirs.eps0, "sandwich eps0");
    }
    o.detail << "worst relative disagreement " << worst << "; ";
  });

  criterion(7, "nesting: 200 random jets within the factor and 1 + e", 60.0, [](Outcome& o) {
    Rng rng(707);
    int violations = 0;
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
      const double gamma = uniform(rng, 0.2, 4.0);
      const LipFunction f = random_jet(
          rng, gamma, random_sites(rng, uniform_int(rng, 1, 3), uniform_int(rng, 2, 15), uniform(rng, 0.05, 3.0)),
          uniform_int(rng, 1, 2));
      const double eta = uniform(rng, 0.02, gamma * 0.999);
      const double full = lip_norm_value(f), low = lip_norm(f, eta).overall;
      const double c = nesting_factor(gamma, eta, diameter(f.sites())).value;
      worst = std::max(worst, low / (c * full));
      if (low > c * full * (1 + kSlack) || low > (1 + std::numbers::e) * full * (1 + kSlack)) ++violations;
    }
    o.detail << violations << " violations, worst ratio to the factor " << worst << "; ";
    o.require(violations == 0, "nesting violation");
  });

  criterion(8, "covering: 50 x 50 grid at delta0 = 0.25, at most 32 centers; packing checks", 10.0, [](Outcome& o) {
    std::vector<Point> grid;
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) grid.push_back(Point{i / 49.0, j / 49.0});
    }
    const CubeBound b = cube_bound(2, 0.25);
    const CoverPlan p = greedy_cover(grid, 0.25);
    o.detail << "centers " << p.center_indices.size() << ", m = " << b.m << "; ";
    o.require(b.m == 32, "cube bound m");
    o.require(p.verified && is_cover(grid, p.center_indices, 0.25).covered, "cover verified");
    o.require(static_cast<long long>(p.center_indices.size()) <= b.m, "centers within the bound");
    const std::vector<std::size_t> pack = greedy_packing(grid, 0.25);
    bool separated = true;
    for (std::size_t i = 0; i < pack.size(); ++i) {
      for (std::size_t j = i + 1; j < pack.size(); ++j) separated = separated && distance(grid[pack[i]], grid[pack[j]]) > 0.25;
    }
    bool maximal = true;
    for (const Point& s : grid) {
      bool near = false;
      for (std::size_t k : pack) near = near || distance(s, grid[k]) <= 0.25;
      maximal = maximal && near;
    }
    o.detail << "packing " << pack.size() << "; ";
    o.require(separated, "packing separation");
    o.require(maximal, "packing maximality");
  });

  criterion(9, "degenerate inputs: single sites, delta = 0, zero jets, identical pairs", 10.0, [](Outcome& o) {
    const LipFunction single(2.5, {Point{0.3, 0.1}},
                             {{SymForm::from_coeffs(0, 2, 1, {-0.7}), SymForm::from_coeffs(1, 2, 1, {0.2, 0.4}),
                               SymForm::from_coeffs(2, 2, 1, {1.0, 0.5, 0.5, -2.0})}});
    const NormReport r = lip_norm(single, 2.5);
    const double top = std::max({0.7, std::sqrt(0.2), SymForm::from_coeffs(2, 2, 1, {1.0, 0.5, 0.5, -2.0}).op_norm()});
    o.require(r.overall == top, "single-site norm is the pointwise part");
    o.require(r.holder == std::vector<double>{0, 0, 0}, "single-site holder parts");
    const BoundQuery at0 = BoundQuery{}.set_rho(2.5).set_norm_bound(2).set_anchor_bound(0.3).set_delta(0);
    o.require(local_bound_I(BoundQuery(at0).set_theta(2.2)).value == 0.3, "local bound I at delta = 0");
    o.require(local_bound_II(BoundQuery(at0).set_theta(1.5)).value == 0.3, "local bound II at delta = 0");
    const std::vector<double> es = e_sequence(BoundQuery(at0).set_theta(0.5));
    o.require(es == std::vector<double>{0.3, 0.3}, "E-sequence at delta = 0");
    Rng rng(909);
    const std::vector<Point> sites = random_sites(rng, 3, 20, 1.0);
    const LipFunction zero = LipFunction::zero(2.5, sites, 2);
    o.require(lip_norm_value(zero) == 0.0 && lip_norm(zero, 0.5).overall == 0.0, "zero jet norms");
    std::vector<std::size_t> all(sites.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const LipFunction f = with_norm(random_jet(rng, 2.5, sites, 2), 0.9);
    const Certificate pw = certify_pointwise(f, f, all, 0.5, 0.0, 1, 1, 2);
    const Certificate sp = certify_single_point(f, f, 0, 0.5, 0.0, 1, 1, 1.5);
    const Certificate fl = certify_full(f, f, all, 0.5, 1, 1, 2.0);
    for (const Certificate* c : {&pw, &sp, &fl}) {
      o.require(c->valid && c->conclusion_holds && c->measured_value == 0.0, "identical-pair certificate");
    }
    const Certificate zz = certify_full(zero, zero, std::vector<std::size_t>{0}, 0.5, 1, 0, 1.0);
    o.require(zz.measured_value == 0.0 && zz.hypotheses[0].passed && zz.hypotheses[1].passed, "zero-jet certificate");
    o.require(greedy_cover(std::vector<Point>{Point{1.0}}, 0.1).center_indices.size() == 1, "single-site cover");
    o.require(nesting_factor(2, 1.5, 0).value == 1.0, "nesting factor at diameter 0");
  });

  return failures == 0 ? 0 : 1;
}
