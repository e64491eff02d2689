#include "lipjet/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lipjet {

Point::Point(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) throw InputError("point must have dimension >= 1");
  if (!coords_.allFinite()) throw InputError("point coordinates must be finite");
}

Point::Point(std::initializer_list<double> coords)
    : Point(Vec(Eigen::Map<const Vec>(coords.begin(), static_cast<Eigen::Index>(coords.size())))) {}

Vec displacement(const Point& from, const Point& to) {
  if (from.dim() != to.dim()) throw InputError("points have different dimensions");
  return to.coords() - from.coords();
}

double distance(const Point& a, const Point& b) { return displacement(a, b).norm(); }

std::size_t form_rows(int dim, int degree) {
  if (dim < 1) throw InputError("form dimension must be >= 1");
  if (degree < 0) throw InputError("form degree must be >= 0");
  std::size_t rows = 1;
  for (int i = 0; i < degree; ++i) {
    rows *= static_cast<std::size_t>(dim);
    if (rows > kMaxFormRows) {
      throw InputError("form of degree " + std::to_string(degree) + " in dimension " +
                       std::to_string(dim) + " exceeds the dense storage cap");
    }
  }
  return rows;
}

namespace {

// Row index of the sorted (canonical) multi-index of `row`.
std::size_t canonical_row(std::size_t row, int degree, int dim, std::vector<int>& digits) {
  for (int i = degree - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(row % dim);
    row /= dim;
  }
  std::sort(digits.begin(), digits.end());
  std::size_t out = 0;
  for (int i = 0; i < degree; ++i) out = out * dim + digits[i];
  return out;
}

template <typename F>
void for_each_orbit_member(std::size_t rows, int degree, int dim, F&& f) {
  std::vector<int> digits(degree);
  for (std::size_t r = 0; r < rows; ++r) f(r, canonical_row(r, degree, dim, digits));
}

}  // namespace

void symmetrize_in_place(std::vector<double>& coeffs, int degree, int dim, int codim) {
  if (degree < 2) return;
  const std::size_t rows = form_rows(dim, degree);
  const auto m = static_cast<std::size_t>(codim);
  std::vector<double> sum(rows * m, 0.0);
  std::vector<int> count(rows, 0);
  std::vector<char> uniform(rows * m, 1);
  for_each_orbit_member(rows, degree, dim, [&](std::size_t r, std::size_t c) {
    ++count[c];
    for (std::size_t j = 0; j < m; ++j) {
      sum[c * m + j] += coeffs[r * m + j];
      if (coeffs[r * m + j] != coeffs[c * m + j]) uniform[c * m + j] = 0;
    }
  });
  std::vector<double> out(coeffs.size());
  for_each_orbit_member(rows, degree, dim, [&](std::size_t r, std::size_t c) {
    for (std::size_t j = 0; j < m; ++j) {
      // Already-symmetric orbits keep their bits so that repeated
      // symmetrization is the identity.
      out[r * m + j] = uniform[c * m + j] ? coeffs[c * m + j] : sum[c * m + j] / count[c];
    }
  });
  coeffs = std::move(out);
}

SymForm::SymForm(int degree, int dim, int codim)
    : degree_(degree), dim_(dim), codim_(codim), rows_(form_rows(dim, degree)) {
  if (codim < 1) throw InputError("form codimension must be >= 1");
  coeffs_.assign(rows_ * static_cast<std::size_t>(codim), 0.0);
}

SymForm::SymForm(int degree, int dim, int codim, std::vector<double> coeffs)
    : degree_(degree), dim_(dim), codim_(codim), rows_(form_rows(dim, degree)),
      coeffs_(std::move(coeffs)) {}

SymForm SymForm::symmetrized(int degree, int dim, int codim, std::vector<double> coeffs) {
  SymForm shape(degree, dim, codim);
  if (coeffs.size() != shape.coeffs_.size()) {
    throw InputError("form of degree " + std::to_string(degree) + " needs " +
                     std::to_string(shape.coeffs_.size()) + " coefficients, got " +
                     std::to_string(coeffs.size()));
  }
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw InputError("form coefficients must be finite");
  }
  symmetrize_in_place(coeffs, degree, dim, codim);
  return SymForm(degree, dim, codim, std::move(coeffs));
}

SymForm SymForm::from_coeffs(int degree, int dim, int codim, std::vector<double> coeffs,
                             double tolerance) {
  SymForm raw = symmetrized(degree, dim, codim, coeffs);
  // symmetrized() validated shape; measure asymmetry of the raw input.
  SymForm unsym(degree, dim, codim, std::move(coeffs));
  double scale = 0.0;
  for (double c : unsym.coeffs_) scale = std::max(scale, std::abs(c));
  if (unsym.max_asymmetry() > tolerance * scale) {
    throw InputError("form coefficients are not symmetric within relative tolerance " +
                     std::to_string(tolerance));
  }
  return raw;
}

double SymForm::max_asymmetry() const {
  if (degree_ < 2) return 0.0;
  SymForm sym = symmetrized(degree_, dim_, codim_, coeffs_);
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    worst = std::max(worst, std::abs(coeffs_[i] - sym.coeffs_[i]));
  }
  return worst;
}

SymForm SymForm::contract(const Vec& direction, int times) const {
  if (times < 0 || times > degree_) {
    throw InputError("cannot contract a degree-" + std::to_string(degree_) + " form " +
                     std::to_string(times) + " times");
  }
  if (direction.size() != dim_) throw InputError("contraction direction has wrong dimension");
  std::vector<double> cur = coeffs_;
  std::size_t rows = rows_;
  const auto m = static_cast<std::size_t>(codim_);
  const auto d = static_cast<std::size_t>(dim_);
  for (int t = 0; t < times; ++t) {
    const std::size_t out_rows = rows / d;
    std::vector<double> next(out_rows * m, 0.0);
    for (std::size_t a = 0; a < out_rows; ++a) {
      for (std::size_t k = 0; k < d; ++k) {
        const double u = direction[static_cast<Eigen::Index>(k)];
        const double* src = &cur[(a * d + k) * m];
        double* dst = &next[a * m];
        for (std::size_t j = 0; j < m; ++j) dst[j] += src[j] * u;
      }
    }
    cur = std::move(next);
    rows = out_rows;
  }
  return SymForm(degree_ - times, dim_, codim_, std::move(cur));
}

Vec SymForm::apply(std::span<const Vec> vectors) const {
  if (static_cast<int>(vectors.size()) != degree_) {
    throw InputError("degree-" + std::to_string(degree_) + " form applied to " +
                     std::to_string(vectors.size()) + " vectors");
  }
  SymForm cur = *this;
  for (const Vec& v : vectors) cur = cur.contract(v, 1);
  return Eigen::Map<const Vec>(cur.coeffs_.data(), codim_);
}

double SymForm::op_norm() const {
  if (codim_ == 1) {
    return Eigen::Map<const Vec>(coeffs_.data(), static_cast<Eigen::Index>(coeffs_.size())).norm();
  }
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> mat(coeffs_.data(), static_cast<Eigen::Index>(rows_), codim_);
  if (mat.isZero(0.0)) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
  return svd.singularValues()(0);
}

bool SymForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

void SymForm::require_same_shape(const SymForm& other, const char* op) const {
  if (degree_ != other.degree_ || dim_ != other.dim_ || codim_ != other.codim_) {
    throw InputError(std::string("shape mismatch in form ") + op);
  }
}

SymForm& SymForm::operator+=(const SymForm& other) {
  require_same_shape(other, "addition");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SymForm& SymForm::operator-=(const SymForm& other) {
  require_same_shape(other, "subtraction");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SymForm& SymForm::operator*=(double c) {
  if (!std::isfinite(c)) throw InputError("scale factor must be finite");
  for (double& x : coeffs_) x *= c;
  return *this;
}

bool operator==(const SymForm& a, const SymForm& b) {
  return a.degree_ == b.degree_ && a.dim_ == b.dim_ && a.codim_ == b.codim_ &&
         a.coeffs_ == b.coeffs_;
}

}  // namespace lipjet
