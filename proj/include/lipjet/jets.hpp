#pragma once

// Lip(gamma) functions on finite site sets, represented by their jets
// (psi^(0), ..., psi^(k)) at every site.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lipjet/tensor.hpp"

namespace lipjet {

/// The integer k with r in (k, k+1], i.e. ceil(r) - 1. Requires r > 0.
int level_of(double r);

/// Sites closer than this are rejected as duplicates.
inline constexpr double kMinSiteSeparation = 1e-9;

/// Jet family over a finite site set: jets[i][l] = psi^(l)(sites[i]).
class LipFunction {
 public:
  LipFunction(double gamma, std::vector<Point> sites, std::vector<std::vector<SymForm>> jets);

  /// All-zero jet of the given shape.
  static LipFunction zero(double gamma, std::vector<Point> sites, int codim);

  double gamma() const { return gamma_; }
  int k() const { return k_; }
  int dim() const { return dim_; }
  int codim() const { return codim_; }
  std::size_t size() const { return sites_.size(); }

  const std::vector<Point>& sites() const { return sites_; }
  const Point& site(std::size_t i) const { return sites_.at(i); }
  const SymForm& jet(std::size_t site, int level) const;
  const std::vector<SymForm>& jets_at(std::size_t site) const { return jets_.at(site); }

 private:
  double gamma_;
  int k_;
  int dim_;
  int codim_;
  std::vector<Point> sites_;
  std::vector<std::vector<SymForm>> jets_;
};

/// Exact Lip(eta) norm of the level-q truncation over the site set.
struct NormReport {
  double eta = 0.0;
  int q = 0;
  /// pointwise[l] = max_x |psi^(l)(x)|.
  std::vector<double> pointwise;
  std::vector<std::size_t> pointwise_site;
  /// holder[l] = max_{x != y} |R_l(x, y)| / |y - x|^(eta - l); 0 for a single site.
  std::vector<double> holder;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> holder_pair;
  double overall = 0.0;
};

/// R_l(x, y) = psi^(l)(y) - sum_{s=0}^{k-l} psi^(l+s)(x)[(y - x)^s] / s!.
SymForm remainder(const LipFunction& f, int level, std::size_t x, std::size_t y);

/// Remainder of the truncation (psi^(0), ..., psi^(q)) at level l <= q.
SymForm truncated_remainder(const LipFunction& f, int q, int level, std::size_t x, std::size_t y);

/// Smallest M for which the level-q truncation, q = level_of(eta), is
/// Lip(eta) with norm M on the site set. eta must lie in (0, gamma].
NormReport lip_norm(const LipFunction& f, double eta);

/// Lip(gamma) norm with gamma taken from f.
double lip_norm_value(const LipFunction& f);

/// Psi_x(y) = sum_{s=0}^k psi^(s)(x)[(y - x)^s] / s!.
Vec proposal_eval(const LipFunction& f, std::size_t x, const Vec& y);

struct HolderCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

/// Compares |Psi_x(y) - Psi_w(z)| against
/// M (e^{r1} |y - z| + (e^{r2} + e^{1 + |z - x|}) |x - w|^{gamma - k}),
/// r1 = max(|x - z|, |x - y|), r2 = max(|z - w|, |z - x|), M = Lip(gamma) norm.
/// Requires gamma > 1, |x - w| <= 1 and |y - z| <= 1.
HolderCheck holder_estimate_check(const LipFunction& f, std::size_t x, std::size_t w,
                                  const Vec& y, const Vec& z);

LipFunction diff(const LipFunction& f, const LipFunction& g);
LipFunction scale(const LipFunction& f, double c);
/// Keeps levels 0..q; the result has gamma = q + 1.
LipFunction truncate(const LipFunction& f, int q);
LipFunction restrict_to(const LipFunction& f, std::span<const std::size_t> indices);

double factorial(int n);

}  // namespace lipjet
