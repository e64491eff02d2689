#pragma once

// Certificates for the pointwise, single-point and full sandwich theorems,
// the covering-based approximation planner, and the sharpness instances.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipjet/bounds.hpp"
#include "lipjet/covering.hpp"
#include "lipjet/jets.hpp"

namespace lipjet {

enum class Theorem { pointwise, single_point, full };

const char* theorem_name(Theorem t);

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double limit = 0.0;
  /// Site witnessing the worst gap, or the first uncovered site.
  std::optional<std::size_t> witness;
};

struct Certificate {
  Theorem theorem = Theorem::full;
  double eps = 0.0;
  double eps0 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double gamma = 0.0;
  std::optional<double> eta;
  std::optional<int> level;
  std::vector<std::size_t> cover;
  std::optional<std::size_t> anchor;
  double delta0 = 0.0;
  /// Full theorem only.
  std::optional<SandwichConstants> constants;
  /// Single-point theorem only: sites within delta0 of the anchor.
  std::vector<std::size_t> region;

  std::vector<HypothesisCheck> hypotheses;
  double guaranteed_bound = 0.0;
  double measured_value = 0.0;
  bool valid = false;
  bool conclusion_holds = false;

  /// valid and not conclusion_holds: the theorem would be contradicted.
  bool soundness_violation() const { return valid && !conclusion_holds; }
  /// First failed hypothesis, if any.
  const HypothesisCheck* first_failure() const;
};

/// Relative slack absorbing rounding in the measured conclusion.
inline constexpr double kConclusionSlack = 1e-9;

Certificate certify_pointwise(const LipFunction& f, const LipFunction& g,
                              std::span<const std::size_t> cover, double eps, double eps0, double k1,
                              double k2, int l);

Certificate certify_single_point(const LipFunction& f, const LipFunction& g, std::size_t anchor,
                                 double eps, double eps0, double k1, double k2, double eta);

/// Rejects eta >= gamma with InputError: the conclusion is false at eta = gamma.
Certificate certify_full(const LipFunction& f, const LipFunction& g,
                         std::span<const std::size_t> cover, double eps, double k1, double k2,
                         double eta);

enum class PlanMode { lip, pointwise };

struct PlanRequest {
  PlanMode mode = PlanMode::lip;
  double eps = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double gamma = 0.0;
  /// Lip mode.
  std::optional<double> eta;
  /// Pointwise mode: level l and the caller's eps0.
  std::optional<int> level;
  double eps0 = 0.0;
  /// Attach the unit-cube covering ceiling.
  bool cube_sample = false;
};

struct Plan {
  PlanRequest request;
  double delta0 = 0.0;
  double eps0 = 0.0;
  std::vector<std::size_t> centers;
  std::size_t n = 0;
  bool verified = false;
  std::optional<CubeBound> cube_ceiling;
};

Plan plan_approximation(std::span<const Point> sites, const PlanRequest& request);

enum class CounterexampleKind { eta_equals_gamma, eps0_dependence, nesting_a, nesting_b };

struct CounterexampleParams {
  double k0 = 1.0;
  double eps = 0.5;
  double eps0 = 0.1;
  int n = 10;
  double a = 1.0;
};

struct Counterexample {
  CounterexampleKind kind;
  LipFunction f;
  std::optional<LipFunction> g;
  /// Regularity at which `expected` is measured (on f - g, or on f alone).
  double eta = 0.0;
  double expected = 0.0;
  /// Cover B of the instance, when it comes with one.
  std::vector<std::size_t> cover;
  std::string note;
};

Counterexample counterexample(CounterexampleKind kind, const CounterexampleParams& p);

}  // namespace lipjet
