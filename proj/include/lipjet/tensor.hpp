#pragma once

// Dense symmetric multilinear forms R^d x ... x R^d -> R^m with the
// Hilbertian (inner-product) tensor norms.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lipjet {

/// Raised for any rejected input: bad dimensions, out-of-range parameters,
/// malformed data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Vec = Eigen::VectorXd;

/// A site of the finite domain Sigma in R^d.
class Point {
 public:
  explicit Point(Vec coords);
  Point(std::initializer_list<double> coords);

  const Vec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }

 private:
  Vec coords_;
};

/// Displacement to - from.
Vec displacement(const Point& from, const Point& to);
double distance(const Point& a, const Point& b);

/// Largest number of rows d^l a form may carry.
inline constexpr std::size_t kMaxFormRows = 100000;

/// Relative tolerance on coefficient asymmetry accepted by from_coeffs.
inline constexpr double kSymmetryTolerance = 1e-12;

/// A symmetric l-linear form from R^d into R^m.
///
/// Coefficients are stored densely as a (d^l) x m row-major block: entry
/// (i_1, ..., i_l, j) lives at ((i_1 * d + i_2) * d + ... + i_l) * m + j.
/// Degree 0 is a plain vector of R^m. Every constructed form is exactly
/// symmetric: coefficients are group-averaged over index permutations.
class SymForm {
 public:
  /// Zero form.
  SymForm(int degree, int dim, int codim);

  /// Validates finiteness and shape, rejects coefficient blocks whose
  /// asymmetry exceeds `tolerance` relative to the largest entry, then
  /// symmetrizes.
  static SymForm from_coeffs(int degree, int dim, int codim, std::vector<double> coeffs,
                             double tolerance = kSymmetryTolerance);

  /// Symmetrizes arbitrary coefficients without an asymmetry check.
  static SymForm symmetrized(int degree, int dim, int codim, std::vector<double> coeffs);

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  int codim() const { return codim_; }
  std::size_t rows() const { return rows_; }
  std::span<const double> coeffs() const { return coeffs_; }

  /// Evaluate on v_1 (x) ... (x) v_l.
  Vec apply(std::span<const Vec> vectors) const;

  /// Fix `times` input slots to `direction`; the result has degree
  /// degree() - times.
  SymForm contract(const Vec& direction, int times) const;

  /// Spectral norm of the (d^l) x m coefficient matrix, i.e. the operator
  /// norm from the Euclidean tensor-power space into R^m.
  double op_norm() const;

  /// Largest |c - orbit mean| over all coefficients.
  double max_asymmetry() const;

  bool is_zero() const;

  SymForm& operator+=(const SymForm& other);
  SymForm& operator-=(const SymForm& other);
  SymForm& operator*=(double c);

  friend SymForm operator+(SymForm a, const SymForm& b) { return a += b; }
  friend SymForm operator-(SymForm a, const SymForm& b) { return a -= b; }
  friend SymForm operator*(SymForm a, double c) { return a *= c; }
  friend SymForm operator*(double c, SymForm a) { return a *= c; }

  /// Exact coefficient-wise equality.
  friend bool operator==(const SymForm& a, const SymForm& b);

 private:
  SymForm(int degree, int dim, int codim, std::vector<double> coeffs);
  void require_same_shape(const SymForm& other, const char* op) const;

  int degree_;
  int dim_;
  int codim_;
  std::size_t rows_;
  std::vector<double> coeffs_;
};

/// d^l, throwing if it exceeds kMaxFormRows.
std::size_t form_rows(int dim, int degree);

/// Exact coefficient-wise symmetrization of a (d^l) x m block.
void symmetrize_in_place(std::vector<double>& coeffs, int degree, int dim, int codim);

}  // namespace lipjet
