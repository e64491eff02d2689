#pragma once

// Explicit constants of the remainder, nesting and local Lipschitz
// estimates, and the constructive delta_0 / epsilon_0 of the sandwich
// theorems.

#include <optional>
#include <string>
#include <vector>

namespace lipjet {

/// Inputs shared by the bound evaluators. Only the fields an evaluator
/// reads need to be set; setters validate ranges and getters throw
/// InputError naming the missing field.
class BoundQuery {
 public:
  BoundQuery& set_rho(double rho);      // > 0
  BoundQuery& set_theta(double theta);  // > 0
  BoundQuery& set_level(int l);         // >= 0
  BoundQuery& set_diam(double diam);    // >= 0
  BoundQuery& set_norm_bound(double a); // A >= 0
  BoundQuery& set_anchor_bound(double r0);  // >= 0
  BoundQuery& set_delta(double delta);  // in [0, 1]

  double rho() const;
  double theta() const;
  int level() const;
  double diam() const;
  double norm_bound() const;
  double anchor_bound() const;
  double delta() const;

  /// rho in (n, n+1].
  int n() const;
  /// theta in (q, q+1].
  int q() const;

  bool has_rho() const { return rho_.has_value(); }
  bool has_theta() const { return theta_.has_value(); }
  bool has_level() const { return level_.has_value(); }
  bool has_diam() const { return diam_.has_value(); }
  bool has_norm_bound() const { return a_.has_value(); }
  bool has_anchor_bound() const { return r0_.has_value(); }
  bool has_delta() const { return delta_.has_value(); }

 private:
  std::optional<double> rho_, theta_, diam_, a_, r0_, delta_;
  std::optional<int> level_;
};

struct BoundReport {
  std::string name;
  BoundQuery inputs;
  double value = 0.0;
  /// Minimizing radius for G / H, or the limiting delta for delta scans.
  std::optional<double> attained_at;
  /// False when an infimum is only approached at the open endpoint.
  bool attained = true;
  /// Second bound reported alongside value (the E-calligraphic form of the
  /// local bound II when r0 > 0 and delta <= delta_star).
  std::optional<double> refined_value;
  std::string method;
};

/// inf_{r in (0, diam)} max{r^(rho-theta), r^-(theta-l) (1 + sum_{s=0}^{n-l} r^s/s!)}.
/// Requires theta in (n, rho), 0 <= l <= n, diam > 0.
BoundReport g_const(const BoundQuery& q);

/// inf_{r in (0, diam)} max{r^(rho-theta) + sum_{i=q+1}^n r^(i-theta)/(i-l)!,
///                          r^-(theta-l) (1 + sum_{s=0}^{q-l} r^s/s!)}.
/// Requires theta in (0, n], n >= 1, 0 <= l <= q, diam > 0.
BoundReport h_const(const BoundQuery& q);

enum class RemainderCase { one, two };

/// min{diam companion, G} (case one) or min{diam companion, H} (case two):
/// the factor on the Lip(rho) norm bounding every Holder quotient of the
/// (altered) level-l remainder at exponent theta.
BoundReport remainder_bound(const BoundQuery& q, RemainderCase which);

/// Constant C with |psi_[q]|_Lip(theta) <= C |psi|_Lip(rho) on a set of the
/// given diameter. Always <= 1 + e.
BoundReport nesting_factor(double rho, double theta, double diam);

struct GrowthBounds {
  /// A (dist_x + dist_y)^(rho-theta) |y - x|^(theta-l); set when theta in (n, rho).
  std::optional<double> remainder_rhs;
  /// min{A, A [dist_x^(rho-l) + S_{l,sub_q}] + r0 sum_{j=0}^{sub_q-l} dist_x^j / j!}.
  double pointwise_rhs = 0.0;
};

/// Pointwise growth away from an anchor p: dist_x = |x - p|, dist_y =
/// |y - p|, gap = |y - x|. Reads rho, level, A, r0 and (optionally) theta.
GrowthBounds growth_bounds(const BoundQuery& q, double dist_x, double dist_y, double gap,
                           int sub_q);

/// max{(2 delta)^(rho-theta) A, min{A, A delta^(rho-n) + r0 e^delta}}.
/// Requires theta in (n, rho), r0 in [0, A], delta in [0, 1].
BoundReport local_bound_I(const BoundQuery& q);

/// E_n, E_{n-1}, ..., E_{q+1} of the recursive local bound.
/// Requires rho > 1, theta in (0, n], r0 in [0, A), delta in [0, 1].
std::vector<double> e_sequence(const BoundQuery& q);

/// X_t(delta) = (1 + sqrt(2 delta)) r0 e^delta sum_{j<t} delta^j (1 + sqrt(2 delta))^j.
double x_term(int t, double r0, double delta);

/// Largest t such that the five smallness conditions on delta hold on all of
/// [0, t]; requires 0 < r0 < A and rho > 1.
BoundReport delta_star(double a, double r0, double rho);

/// Whether the five smallness conditions hold at a single delta.
bool delta_star_conditions_hold(double a, double r0, double rho, double delta);

/// max{(2 delta)^(q+1-theta) E, min{E, delta E + r0 e^delta}} with E = E_{q+1};
/// refined_value carries the E-calligraphic form when 0 < r0 and delta <= delta_star.
BoundReport local_bound_II(const BoundQuery& q);

/// sup{t > 0 : K t^(gamma-l) + eps0 e^t <= min{K, eps}}.
BoundReport delta0_pointwise(double eps, double eps0, double k_bound, double gamma, int l);

/// delta_0 of the single-point theorem: the two-inequality supremum when
/// eta > k, otherwise the largest t <= min{1, delta_star} with conditions
/// (A)-(E) on [0, t].
BoundReport delta0_single_point(double eps, double eps0, double k_bound, double gamma,
                                double eta);

/// Conditions (A)-(E) of the single-point construction at one delta.
bool single_point_conditions_hold(double eps, double eps0, double k_bound, double gamma,
                                  double eta, double delta);

struct SandwichConstants {
  double delta0 = 0.0;
  double eps0 = 0.0;
  double theta_aux = 0.0;
  /// min{eps, K}; the chain runs on the clamped epsilon.
  double eps_used = 0.0;
};

/// 1 / (2 (1 + e)).
double sandwich_theta();

/// Constructive (delta_0, eps_0) of the full sandwich theorem.
SandwichConstants sandwich_constants(double eps, double k_bound, double gamma, double eta);

}  // namespace lipjet
