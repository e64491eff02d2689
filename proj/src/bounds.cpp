#include "lipjet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "lipjet/jets.hpp"

namespace lipjet {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kArgTol = 1e-12;
constexpr double kDeltaStarTol = 1e-10;
constexpr double kRelTol = 1e-10;
constexpr int kMaxBisection = 200;
constexpr int kCoarseGrid = 10000;

std::string fmt(double v) { return std::to_string(v); }

BoundReport make_report(std::string name, BoundQuery inputs) {
  BoundReport out;
  out.name = std::move(name);
  out.inputs = std::move(inputs);
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

template <typename T>
T get(const std::optional<T>& v, const char* name) {
  if (!v) throw InputError(std::string("bound query is missing ") + name);
  return *v;
}

// Shrinks [lo, hi] with pred(lo) true and pred(hi) false; returns lo.
double bisect_last_true(const std::function<bool(double)>& pred, double lo, double hi,
                        double tol) {
  for (int it = 0; it < kMaxBisection && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? lo : hi) = mid;
  }
  return lo;
}

// Largest t in (0, hi] with pred(t), for pred true on an initial interval
// and false beyond it: halving brackets the crossing, then bisection to a
// tolerance relative to the bracket. Returns 0 only if pred fails down to
// the smallest normal double.
double sup_feasible(const std::function<bool(double)>& pred, double hi, double tol) {
  if (pred(hi)) return hi;
  double lo = 0.5 * hi;
  while (!pred(lo)) {
    hi = lo;
    lo *= 0.5;
    if (lo < std::numeric_limits<double>::min()) return 0.0;
  }
  return bisect_last_true(pred, lo, hi, std::min(tol, lo * tol));
}

void require_representable(double t, const char* name) {
  if (!(t > 0.0)) {
    throw InputError(std::string(name) + " is below the smallest positive double for these parameters");
  }
}

struct ScanResult {
  double t = 0.0;
  bool limited = false;  // true when a violation was found inside [0, upper]
};

// Largest t in [0, upper] such that pred holds on all of [0, t], located by a
// coarse first-violation scan and bisection inside the violating cell, then
// shrunk by one tolerance (absolute, or 1e-10 relative when smaller). A violation in the first cell restarts the scan on
// that cell, with the tolerance scaled alike.
ScanResult initial_interval(const std::function<bool(double)>& pred, double upper, double tol) {
  const double full = upper;
  while (upper >= std::numeric_limits<double>::min()) {
    const double scaled_tol = tol * upper / full;
    double last_ok = 0.0;
    for (int i = 1; i <= kCoarseGrid; ++i) {
      const double t = upper * i / kCoarseGrid;
      if (!pred(t)) {
        if (i == 1) break;
        const double cell_tol = std::min(scaled_tol, kRelTol * t);
        const double lo = bisect_last_true(pred, last_ok, t, cell_tol);
        return {std::max(lo - cell_tol, 0.5 * lo), true};
      }
      last_ok = t;
    }
    if (last_ok > 0.0 && pred(upper)) return {upper, upper < full};
    upper /= kCoarseGrid;
  }
  return {0.0, true};
}

// Shared crossing logic for G and H: rising(r) increasing, falling(r)
// decreasing on (0, diam).
BoundReport crossing_infimum(const std::string& name, const BoundQuery& q,
                             const std::function<double(double)>& rising,
                             const std::function<double(double)>& falling) {
  const double diam = q.diam();
  auto gap = [&](double r) { return rising(r) - falling(r); };
  auto peak = [&](double r) { return std::max(rising(r), falling(r)); };
  BoundReport out = make_report(name, q);
  if (gap(diam) <= 0.0) {
    out.value = peak(diam);
    out.attained_at = diam;
    out.attained = false;
    out.method = "no interior crossing; limit as r -> diam";
    return out;
  }
  double lo = 0.0, hi = diam;
  for (int it = 0; it < kMaxBisection && hi - lo > kArgTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) <= 0.0 ? lo : hi) = mid;
  }
  const double best = lo > 0.0 && peak(lo) < peak(hi) ? lo : hi;
  out.value = peak(best);
  out.attained_at = best;
  if (diam - best <= kArgTol) {
    // The crossing sits on the open endpoint up to rounding.
    out.attained = false;
    out.method = "crossing at r = diam; limit as r -> diam";
    return out;
  }
  out.method = "crossing of the increasing and decreasing branches, bisection";
  return out;
}

}  // namespace

// ---------------------------------------------------------------- BoundQuery

BoundQuery& BoundQuery::set_rho(double rho) {
  require(rho > 0.0 && std::isfinite(rho), "rho must be positive and finite");
  rho_ = rho;
  return *this;
}
BoundQuery& BoundQuery::set_theta(double theta) {
  require(theta > 0.0 && std::isfinite(theta), "theta must be positive and finite");
  theta_ = theta;
  return *this;
}
BoundQuery& BoundQuery::set_level(int l) {
  require(l >= 0, "level must be >= 0");
  level_ = l;
  return *this;
}
BoundQuery& BoundQuery::set_diam(double diam) {
  require(diam >= 0.0 && std::isfinite(diam), "diam must be finite and >= 0");
  diam_ = diam;
  return *this;
}
BoundQuery& BoundQuery::set_norm_bound(double a) {
  require(a >= 0.0 && std::isfinite(a), "A must be finite and >= 0");
  a_ = a;
  return *this;
}
BoundQuery& BoundQuery::set_anchor_bound(double r0) {
  require(r0 >= 0.0 && std::isfinite(r0), "r0 must be finite and >= 0");
  r0_ = r0;
  return *this;
}
BoundQuery& BoundQuery::set_delta(double delta) {
  require(delta >= 0.0 && delta <= 1.0, "delta must lie in [0, 1]");
  delta_ = delta;
  return *this;
}

double BoundQuery::rho() const { return get(rho_, "rho"); }
double BoundQuery::theta() const { return get(theta_, "theta"); }
int BoundQuery::level() const { return get(level_, "l"); }
double BoundQuery::diam() const { return get(diam_, "diam"); }
double BoundQuery::norm_bound() const { return get(a_, "A"); }
double BoundQuery::anchor_bound() const { return get(r0_, "r0"); }
double BoundQuery::delta() const { return get(delta_, "delta"); }
int BoundQuery::n() const { return level_of(rho()); }
int BoundQuery::q() const { return level_of(theta()); }

// ------------------------------------------------------------- G, H, nesting

BoundReport g_const(const BoundQuery& q) {
  const double rho = q.rho(), theta = q.theta();
  const int n = q.n(), l = q.level();
  require(theta > n && theta < rho, "G needs theta in (n, rho) = (" + std::to_string(n) + ", " + fmt(rho) + ")");
  require(l <= n, "G needs l <= n");
  require(q.diam() > 0.0, "G needs diam > 0");
  auto rising = [=](double r) { return std::pow(r, rho - theta); };
  auto falling = [=](double r) {
    double sum = 1.0;
    for (int s = 0; s <= n - l; ++s) sum += std::pow(r, s) / factorial(s);
    return sum / std::pow(r, theta - l);
  };
  return crossing_infimum("G", q, rising, falling);
}

BoundReport h_const(const BoundQuery& q) {
  const double rho = q.rho(), theta = q.theta();
  const int n = q.n(), l = q.level();
  require(n >= 1, "H needs rho > 1");
  require(theta <= n, "H needs theta in (0, n]");
  const int qq = q.q();
  require(l <= qq, "H needs l <= q");
  require(q.diam() > 0.0, "H needs diam > 0");
  auto rising = [=](double r) {
    double sum = std::pow(r, rho - theta);
    for (int i = qq + 1; i <= n; ++i) sum += std::pow(r, i - theta) / factorial(i - l);
    return sum;
  };
  auto falling = [=](double r) {
    double sum = 1.0;
    for (int s = 0; s <= qq - l; ++s) sum += std::pow(r, s) / factorial(s);
    return sum / std::pow(r, theta - l);
  };
  return crossing_infimum("H", q, rising, falling);
}

BoundReport remainder_bound(const BoundQuery& q, RemainderCase which) {
  BoundReport inf = which == RemainderCase::one ? g_const(q) : h_const(q);
  const double diam = q.diam(), rho = q.rho(), theta = q.theta();
  double companion = std::pow(diam, rho - theta);
  if (which == RemainderCase::two) {
    for (int i = q.q() + 1; i <= q.n(); ++i) companion += std::pow(diam, i - theta) / factorial(i - q.level());
  }
  BoundReport out = inf;
  out.name = which == RemainderCase::one ? "remainder-case-one" : "remainder-case-two";
  if (companion <= inf.value) {
    out.value = companion;
    out.method = "diameter companion bound";
  } else {
    out.method = inf.name + ": " + inf.method;
  }
  return out;
}

BoundReport nesting_factor(double rho, double theta, double diam) {
  require(theta > 0.0 && theta < rho, "nesting needs 0 < theta < rho");
  BoundQuery q;
  q.set_rho(rho).set_theta(theta).set_diam(diam);
  const int n = q.n(), qq = q.q();
  BoundReport out = make_report("nesting", q);
  if (theta > n) {
    out.value = std::max(1.0, std::min(1.0 + kE, std::pow(diam, rho - theta)));
    out.method = "theta in (n, rho)";
    return out;
  }
  double c1_inner = std::pow(diam, rho - theta);
  for (int j = qq + 1; j <= n; ++j) c1_inner += std::pow(diam, j - theta) / factorial(j - qq);
  const double c1 = std::max(1.0, std::min(1.0 + kE, c1_inner));
  const double c2 = std::max(1.0, std::min(1.0 + kE, std::pow(diam, qq + 1 - theta))) *
                    (1.0 + std::min(kE, std::pow(diam, rho - n))) *
                    std::pow(1.0 + std::min(kE, diam), n - (qq + 1));
  out.value = std::min(c1, c2);
  out.method = "min{C1, C2}, C1 = " + fmt(c1) + ", C2 = " + fmt(c2);
  return out;
}

// ------------------------------------------------------------- local bounds

GrowthBounds growth_bounds(const BoundQuery& q, double dist_x, double dist_y, double gap,
                           int sub_q) {
  const double rho = q.rho(), a = q.norm_bound(), r0 = q.anchor_bound();
  const int n = q.n(), l = q.level();
  require(l <= sub_q && sub_q <= n, "growth bounds need 0 <= l <= sub_q <= n");
  require(dist_x >= 0.0 && dist_y >= 0.0 && gap >= 0.0, "distances must be >= 0");
  GrowthBounds out;
  if (q.has_theta() && q.theta() > n && q.theta() < rho) {
    out.remainder_rhs = a * std::pow(dist_x + dist_y, rho - q.theta()) * std::pow(gap, q.theta() - l);
  }
  double s_term = 0.0;
  if (sub_q < n) {
    for (int j = sub_q + 1 - l; j <= n - l; ++j) s_term += std::pow(dist_x, j) / factorial(j);
  }
  double anchor = 0.0;
  for (int j = 0; j <= sub_q - l; ++j) anchor += std::pow(dist_x, j) / factorial(j);
  out.pointwise_rhs = std::min(a, a * (std::pow(dist_x, rho - l) + s_term) + r0 * anchor);
  return out;
}

BoundReport local_bound_I(const BoundQuery& q) {
  const double rho = q.rho(), theta = q.theta(), a = q.norm_bound(), r0 = q.anchor_bound(),
               delta = q.delta();
  const int n = q.n();
  require(theta > n && theta < rho, "local bound I needs theta in (n, rho)");
  require(r0 <= a, "local bound I needs r0 <= A");
  BoundReport out = make_report("local-I", q);
  out.value = std::max(std::pow(2.0 * delta, rho - theta) * a,
                       std::min(a, a * std::pow(delta, rho - n) + r0 * std::exp(delta)));
  out.method = "max{(2d)^(rho-theta) A, min{A, A d^(rho-n) + r0 e^d}}";
  return out;
}

namespace {

void require_local_two(const BoundQuery& q) {
  require(q.rho() > 1.0, "local bound II needs rho > 1");
  require(q.theta() <= q.n(), "local bound II needs theta in (0, n]");
  require(q.norm_bound() > 0.0, "local bound II needs A > 0");
  require(q.anchor_bound() < q.norm_bound(), "local bound II needs r0 in [0, A)");
  (void)q.delta();
}

}  // namespace

std::vector<double> e_sequence(const BoundQuery& q) {
  require_local_two(q);
  const double rho = q.rho(), a = q.norm_bound(), r0 = q.anchor_bound(), delta = q.delta();
  const int n = q.n(), qq = q.q();
  const double half = std::pow(2.0 * delta, (rho - n) / 2.0);
  const double root = std::sqrt(2.0 * delta);
  const double anchor = r0 * std::exp(delta);
  std::vector<double> out;
  double e = (1.0 + half) * std::max(half * a, std::min(a, std::pow(delta, rho - n) * a + anchor));
  out.push_back(e);
  for (int s = 1; s <= n - (qq + 1); ++s) {
    e = (1.0 + root) * std::max(root * e, std::min(e, delta * e + anchor));
    out.push_back(e);
  }
  return out;
}

double x_term(int t, double r0, double delta) {
  if (t <= 0) return 0.0;
  const double g = 1.0 + std::sqrt(2.0 * delta);
  double sum = 0.0;
  for (int j = 0; j < t; ++j) sum += std::pow(delta, j) * std::pow(g, j);
  return g * r0 * std::exp(delta) * sum;
}

bool delta_star_conditions_hold(double a, double r0, double rho, double delta) {
  const int n = level_of(rho);
  const double xi = (rho - n) / 2.0;
  const double root = std::sqrt(2.0 * delta);
  const double anchor = r0 * std::exp(delta);
  const double top = std::pow(delta, rho - n) * a;
  // (I)
  if (!(std::max(1.0 + root, 1.0 + std::pow(2.0 * delta, xi)) < 2.0)) return false;
  // (II)
  if (!(anchor <= a * (1.0 - std::pow(delta, rho - n)))) return false;
  // (III)
  if (!((std::pow(2.0, xi) - std::pow(delta, xi)) * std::pow(delta, xi) * a <= anchor)) return false;
  // (IV)
  if (!(2.0 * root * (top + anchor) <= anchor)) return false;
  // (V); (1 - (2d)^n) / (1 - 2d) written as a finite geometric sum.
  double geometric = 0.0;
  for (int j = 0; j < n; ++j) geometric += std::pow(2.0 * delta, j);
  const double lhs = root * (std::pow(2.0, n) * (top + r0 * delta * std::exp(delta)) + 2.0 * anchor * geometric);
  return lhs <= anchor;
}

BoundReport delta_star(double a, double r0, double rho) {
  require(rho > 1.0, "delta_star needs rho > 1");
  require(r0 > 0.0, "delta_star needs r0 > 0 (use the r0 = 0 closed form)");
  require(r0 < a, "delta_star needs r0 < A");
  BoundQuery q;
  q.set_norm_bound(a).set_anchor_bound(r0).set_rho(rho);
  const ScanResult scan = initial_interval(
      [&](double d) { return delta_star_conditions_hold(a, r0, rho, d); }, 1.0, kDeltaStarTol);
  require_representable(scan.t, "delta_star");
  BoundReport out = make_report("delta-star", q);
  out.value = scan.t;
  out.attained_at = scan.t;
  out.method = "first-violation scan of conditions (I)-(V) on 1e4 points, bisection to 1e-10";
  return out;
}

BoundReport local_bound_II(const BoundQuery& q) {
  const std::vector<double> es = e_sequence(q);
  const double rho = q.rho(), theta = q.theta(), a = q.norm_bound(), r0 = q.anchor_bound(),
               delta = q.delta();
  const int n = q.n(), qq = q.q();
  const int b = n - (qq + 1);
  const double anchor = r0 * std::exp(delta);
  auto wrap = [&](double e) {
    return std::max(std::pow(2.0 * delta, qq + 1 - theta) * e, std::min(e, delta * e + anchor));
  };
  BoundReport out = make_report("local-II", q);
  out.value = wrap(es.back());
  out.method = "E-sequence bound with E_{q+1}";
  if (r0 > 0.0) {
    const double star = delta_star(a, r0, rho).value;
    if (delta <= star) {
      const double root = std::sqrt(2.0 * delta);
      const double cal_e = (1.0 + std::pow(2.0 * delta, (rho - n) / 2.0)) * std::pow(1.0 + root, b) *
                               (std::pow(delta, rho - (qq + 1)) * a + r0 * std::pow(delta, b) * std::exp(delta)) +
                           x_term(b, r0, delta);
      out.refined_value = wrap(cal_e);
      out.attained_at = star;
      out.method += "; refined form valid since delta <= delta_star = " + fmt(star);
    }
  }
  return out;
}

// ------------------------------------------------------------- delta_0 chain

namespace {

void require_sandwich_params(double eps, double eps0, double k_bound) {
  require(eps > 0.0 && std::isfinite(eps), "eps must be positive");
  require(k_bound > 0.0 && std::isfinite(k_bound), "K = K1 + K2 must be positive");
  require(eps0 >= 0.0 && eps0 < std::min(k_bound, eps), "eps0 must lie in [0, min{K, eps})");
}

}  // namespace

BoundReport delta0_pointwise(double eps, double eps0, double k_bound, double gamma, int l) {
  require_sandwich_params(eps, eps0, k_bound);
  const int k = level_of(gamma);
  require(l >= 0 && l <= k, "l must lie in 0..k");
  const double target = std::min(k_bound, eps);
  auto feasible = [&](double t) { return k_bound * std::pow(t, gamma - l) + eps0 * std::exp(t) <= target; };
  BoundReport out = make_report("delta0-pointwise", BoundQuery{}.set_rho(gamma).set_level(l).set_norm_bound(k_bound));
  out.value = sup_feasible(feasible, 1.0, kArgTol);
  require_representable(out.value, "delta0");
  out.attained_at = out.value;
  out.method = "bisection on K t^(gamma-l) + eps0 e^t <= min{K, eps}";
  return out;
}

bool single_point_conditions_hold(double eps, double eps0, double k_bound, double gamma,
                                  double eta, double d) {
  const int k = level_of(gamma);
  const int q = level_of(eta);
  const double root = std::sqrt(2.0 * d);
  const double half = std::pow(2.0 * d, (gamma - k) / 2.0);
  const double anchor = eps0 * std::exp(d);
  const double two_kq = std::pow(2.0, k - q);
  // (A)
  if (!(std::max(1.0 + half, 1.0 + root) < 2.0)) return false;
  // (B)
  if (!(std::pow(2.0 * d, (gamma - eta) / 2.0 + (q + 1 - eta) / 2.0) <= eps / (two_kq * k_bound))) return false;
  // (C)
  if (!((1.0 + half) * (std::pow(d, gamma - k) * k_bound + anchor) <= eps)) return false;
  // (D)
  if (!(two_kq * (std::pow(d, gamma - k) * k_bound + eps0 * d * std::exp(d)) +
            (1.0 + root) / (1.0 - 2.0 * d) * anchor <=
        eps)) {
    return false;
  }
  // (E)
  return anchor <= (1.0 - d) * eps;
}

BoundReport delta0_single_point(double eps, double eps0, double k_bound, double gamma,
                                double eta) {
  require_sandwich_params(eps, eps0, k_bound);
  require(eta > 0.0 && eta < gamma, "eta must lie in (0, gamma)");
  const int k = level_of(gamma);
  BoundReport out = make_report("delta0-single-point",
                  BoundQuery{}.set_rho(gamma).set_theta(eta).set_norm_bound(k_bound).set_anchor_bound(eps0));
  if (eta > k) {
    const double target = std::min(k_bound, eps);
    auto feasible = [&](double t) {
      return k_bound * std::pow(2.0 * t, gamma - eta) <= target &&
             k_bound * std::pow(t, gamma - k) + eps0 * std::exp(t) <= target;
    };
    out.value = sup_feasible(feasible, 1.0, kArgTol);
    out.method = "eta in (k, gamma): bisection on both increasing constraints";
  } else {
    double cap = 1.0;
    if (eps0 > 0.0) cap = std::min(1.0, delta_star(k_bound, eps0, gamma).value);
    const ScanResult scan = initial_interval(
        [&](double d) { return single_point_conditions_hold(eps, eps0, k_bound, gamma, eta, d); },
        cap, kArgTol);
    out.value = scan.t;
    out.method = std::string("eta in (0, k]: conditions (A)-(E) on [0, t], cap ") +
                 (eps0 > 0.0 ? "min{1, delta_star} = " + fmt(cap) : "1 (eps0 = 0)");
  }
  require_representable(out.value, "delta0");
  out.attained_at = out.value;
  return out;
}

double sandwich_theta() { return 1.0 / (2.0 * (1.0 + kE)); }

SandwichConstants sandwich_constants(double eps, double k_bound, double gamma, double eta) {
  require(eps > 0.0 && std::isfinite(eps), "eps must be positive");
  require(k_bound > 0.0 && std::isfinite(k_bound), "K = K1 + K2 must be positive");
  require(eta > 0.0 && eta < gamma, "eta must lie in (0, gamma)");
  SandwichConstants out;
  out.theta_aux = sandwich_theta();
  out.eps_used = std::min(eps, k_bound);
  const double th = out.theta_aux;
  double d0 = delta0_single_point(th * out.eps_used, 0.5 * th * out.eps_used, k_bound, gamma, eta).value;
  d0 = std::min(d0, 1.0) / 2.0;
  out.delta0 = d0;
  out.eps0 = std::min(th, std::pow(d0, eta) / (std::exp(d0) * (1.0 + std::exp(d0)))) * out.eps_used / 2.0;
  require_representable(out.eps0, "eps0");
  return out;
}

}  // namespace lipjet
