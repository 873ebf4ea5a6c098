#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "supergrade/cyclotomic.hpp"

namespace supergrade {

using Mat = Eigen::Matrix<Cyclo, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Cyclo, Eigen::Dynamic, 1>;

struct DimensionMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

bool is_zero(const Mat& m);
bool mat_equal(const Mat& a, const Mat& b);

/// Reduced row echelon form; pivots normalized to 1, zero rows dropped.
/// The result is the canonical basis of the row space.
Mat rref(Mat m);
long rank(const Mat& m);

/// Rows of the result form the canonical basis of {x : m x = 0}.
Mat kernel_basis(const Mat& m);

Cyclo det(Mat m);
bool is_invertible(const Mat& m);
/// Exact inverse; throws on singular input.
Mat inverse(Mat m);
Mat mat_pow(const Mat& m, long k);  // k >= 0
Mat kron(const Mat& a, const Mat& b);

/// One solution of A x = b, if any.
std::optional<Vec> solve(const Mat& A, const Vec& b);

/// A subspace of F^n in canonical form: the basis rows are the reduced row
/// echelon form of any spanning set, so equal subspaces have identical
/// representations.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(long ambient_dim);
  static Subspace full(long ambient_dim);
  /// Span of the rows of `vectors_as_rows` (may be empty: pass rows=0).
  static Subspace span(const Mat& vectors_as_rows, long ambient_dim);
  static Subspace span_of(const std::vector<Vec>& vectors, long ambient_dim);

  long ambient_dim() const { return ambient_; }
  long dim() const { return static_cast<long>(basis_.rows()); }
  /// Canonical RREF basis, one vector per row.
  const Mat& basis() const { return basis_; }
  Vec basis_vector(long i) const { return basis_.row(i).transpose(); }

  bool is_zero() const { return dim() == 0; }
  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the basis, if v lies in the subspace.
  std::optional<Vec> coordinates_of(const Vec& v) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// Image under the linear map given by `action` (columns = images of the
  /// standard basis), i.e. { action * v : v in this }.
  Subspace apply(const Mat& action) const;

  friend bool operator==(const Subspace& a, const Subspace& b);
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  long ambient_ = 0;
  Mat basis_;  // dim x ambient, RREF
};

/// Direct-sum test: the subspaces are independent and jointly span F^n.
bool is_direct_sum_decomposition(const std::vector<Subspace>& parts, long ambient_dim);

/// Eigen decomposition for exact matrices of finite multiplicative order
/// (or with rational spectrum).  Returns eigenpairs covering the full space,
/// or nullopt when the spectrum cannot be resolved inside the field.
struct EigenSplit {
  std::vector<std::pair<Cyclo, Subspace>> pairs;
};
std::optional<EigenSplit> eigen_split(const Mat& m, long field_order);

/// Minimal polynomial coefficients (ascending, monic) of a square matrix.
std::vector<Cyclo> minimal_polynomial(const Mat& m);

/// All rational roots of a polynomial with rational coefficients.
std::vector<Rational> rational_roots(const std::vector<Rational>& poly);

/// Roots of a rational-coefficient polynomial that have the monomial form
/// q * zeta_field^j with q rational (covers split centers like F[t]/(t^2+1)).
std::vector<Cyclo> monomial_roots(const std::vector<Rational>& poly, long field_order);

}  // namespace supergrade
