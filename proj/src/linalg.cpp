#include "supergrade/linalg.hpp"

#include <algorithm>

namespace supergrade {

bool is_zero(const Mat& m) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

bool mat_equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

Mat rref(Mat m) {
  const long rows = m.rows(), cols = m.cols();
  long lead = 0;
  for (long col = 0; col < cols && lead < rows; ++col) {
    long piv = -1;
    for (long r = lead; r < rows; ++r)
      if (!m(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    m.row(lead).swap(m.row(piv));
    Cyclo inv = m(lead, col).inverse();
    for (long j = col; j < cols; ++j) m(lead, j) *= inv;
    for (long r = 0; r < rows; ++r) {
      if (r == lead || m(r, col).is_zero()) continue;
      Cyclo f = m(r, col);
      for (long j = col; j < cols; ++j) m(r, j) -= f * m(lead, j);
    }
    ++lead;
  }
  return m.topRows(lead);
}

long rank(const Mat& m) { return rref(m).rows(); }

Mat kernel_basis(const Mat& m) {
  const long cols = m.cols();
  Mat r = rref(m);
  std::vector<long> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  for (long i = 0; i < r.rows(); ++i) {
    long j = 0;
    while (j < cols && r(i, j).is_zero()) ++j;
    pivot_col.push_back(j);
    if (j < cols) is_pivot[j] = true;
  }
  std::vector<long> free_cols;
  for (long j = 0; j < cols; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat basis(static_cast<long>(free_cols.size()), cols);
  basis.setZero();
  for (size_t k = 0; k < free_cols.size(); ++k) {
    long f = free_cols[k];
    basis(static_cast<long>(k), f) = Cyclo(1);
    for (long i = 0; i < r.rows(); ++i)
      if (pivot_col[i] < cols) basis(static_cast<long>(k), pivot_col[i]) = -r(i, f);
  }
  return rref(std::move(basis));
}

Cyclo det(Mat m) {
  if (m.rows() != m.cols()) throw DimensionMismatchError("det of non-square matrix");
  const long n = m.rows();
  Cyclo d(1);
  for (long col = 0; col < n; ++col) {
    long piv = -1;
    for (long r = col; r < n; ++r)
      if (!m(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return Cyclo(0);
    if (piv != col) {
      m.row(col).swap(m.row(piv));
      d = -d;
    }
    d *= m(col, col);
    Cyclo inv = m(col, col).inverse();
    for (long r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      Cyclo f = m(r, col) * inv;
      for (long j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return d;
}

bool is_invertible(const Mat& m) {
  return m.rows() == m.cols() && !det(m).is_zero();
}

Mat inverse(Mat m) {
  if (m.rows() != m.cols()) throw DimensionMismatchError("inverse of non-square matrix");
  const long n = m.rows();
  Mat aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat::Identity(n, n);
  Mat r = rref(std::move(aug));
  if (r.rows() < n) throw std::domain_error("matrix is singular");
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      if (r(i, j) != Cyclo(i == j ? 1 : 0))
        throw std::domain_error("matrix is singular");
  return r.rightCols(n);
}

Mat mat_pow(const Mat& m, long k) {
  if (m.rows() != m.cols()) throw DimensionMismatchError("power of non-square matrix");
  Mat acc = Mat::Identity(m.rows(), m.cols());
  for (long i = 0; i < k; ++i) acc = acc * m;
  return acc;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      for (long k = 0; k < b.rows(); ++k)
        for (long l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

std::optional<Vec> solve(const Mat& A, const Vec& b) {
  if (A.rows() != b.size()) throw DimensionMismatchError("solve: shape mismatch");
  Mat aug(A.rows(), A.cols() + 1);
  aug.leftCols(A.cols()) = A;
  aug.col(A.cols()) = b;
  Mat r = rref(std::move(aug));
  Vec x = Vec::Zero(A.cols());
  for (long i = 0; i < r.rows(); ++i) {
    long j = 0;
    while (j < r.cols() && r(i, j).is_zero()) ++j;
    if (j == A.cols()) return std::nullopt;  // row (0 ... 0 | 1): inconsistent
    if (j < A.cols()) x(j) = r(i, A.cols());
  }
  return x;
}

Subspace Subspace::zero(long ambient_dim) {
  Subspace s;
  s.ambient_ = ambient_dim;
  s.basis_ = Mat(0, ambient_dim);
  return s;
}

Subspace Subspace::full(long ambient_dim) {
  Subspace s;
  s.ambient_ = ambient_dim;
  s.basis_ = Mat::Identity(ambient_dim, ambient_dim);
  return s;
}

Subspace Subspace::span(const Mat& vectors_as_rows, long ambient_dim) {
  if (vectors_as_rows.rows() > 0 && vectors_as_rows.cols() != ambient_dim)
    throw DimensionMismatchError("span: vector length differs from ambient dimension");
  Subspace s;
  s.ambient_ = ambient_dim;
  s.basis_ = vectors_as_rows.rows() == 0 ? Mat(0, ambient_dim) : rref(vectors_as_rows);
  return s;
}

Subspace Subspace::span_of(const std::vector<Vec>& vectors, long ambient_dim) {
  Mat rows(static_cast<long>(vectors.size()), ambient_dim);
  for (size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim)
      throw DimensionMismatchError("span: vector length differs from ambient dimension");
    rows.row(static_cast<long>(i)) = vectors[i].transpose();
  }
  return span(rows, ambient_dim);
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_) throw DimensionMismatchError("contains: ambient mismatch");
  Mat stacked(basis_.rows() + 1, ambient_);
  stacked.topRows(basis_.rows()) = basis_;
  stacked.row(basis_.rows()) = v.transpose();
  return rref(std::move(stacked)).rows() == basis_.rows();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_)
    throw DimensionMismatchError("contains: ambient mismatch");
  if (other.dim() == 0) return true;
  Mat stacked(basis_.rows() + other.basis_.rows(), ambient_);
  stacked.topRows(basis_.rows()) = basis_;
  stacked.bottomRows(other.basis_.rows()) = other.basis_;
  return rref(std::move(stacked)).rows() == basis_.rows();
}

std::optional<Vec> Subspace::coordinates_of(const Vec& v) const {
  if (dim() == 0)
    return supergrade::is_zero(Mat(v.transpose())) ? std::optional<Vec>(Vec(0))
                                                   : std::nullopt;
  return supergrade::solve(basis_.transpose(), v);
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatchError("sum: ambient mismatch");
  Mat stacked(basis_.rows() + other.basis_.rows(), ambient_);
  stacked.topRows(basis_.rows()) = basis_;
  stacked.bottomRows(other.basis_.rows()) = other.basis_;
  return span(stacked, ambient_);
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_)
    throw DimensionMismatchError("intersect: ambient mismatch");
  if (dim() == 0 || other.dim() == 0) return zero(ambient_);
  // x = a^T U = b^T V  <=>  (a, -b) in ker [U^T  V^T]
  Mat joint(ambient_, basis_.rows() + other.basis_.rows());
  joint.leftCols(basis_.rows()) = basis_.transpose();
  joint.rightCols(other.basis_.rows()) = -other.basis_.transpose();
  Mat ker = kernel_basis(joint);  // rows (a | b)
  Mat vecs(ker.rows(), ambient_);
  for (long i = 0; i < ker.rows(); ++i) {
    Vec a = ker.row(i).head(basis_.rows()).transpose();
    vecs.row(i) = (basis_.transpose() * a).transpose();
  }
  return span(vecs, ambient_);
}

Subspace Subspace::apply(const Mat& action) const {
  if (action.cols() != ambient_) throw DimensionMismatchError("apply: shape mismatch");
  Mat img(basis_.rows(), action.rows());
  for (long i = 0; i < basis_.rows(); ++i)
    img.row(i) = (action * basis_.row(i).transpose()).transpose();
  return span(img, action.rows());
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && mat_equal(a.basis_, b.basis_);
}

bool is_direct_sum_decomposition(const std::vector<Subspace>& parts, long ambient_dim) {
  long total = 0;
  Subspace acc = Subspace::zero(ambient_dim);
  for (const auto& p : parts) {
    if (p.ambient_dim() != ambient_dim) return false;
    total += p.dim();
    acc = acc.sum(p);
  }
  return total == ambient_dim && acc.dim() == ambient_dim;
}

std::vector<Cyclo> minimal_polynomial(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatchError("minimal_polynomial: non-square");
  const long n = m.rows();
  const long d2 = n * n;
  auto flatten = [&](const Mat& p) {
    Vec v(d2);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) v(i * n + j) = p(i, j);
    return v;
  };
  std::vector<Mat> powers{Mat::Identity(n, n)};
  for (long k = 1;; ++k) {
    powers.push_back(powers.back() * m);
    // Is powers[k] a combination of the previous ones?
    Mat A(d2, k);
    for (long c = 0; c < k; ++c) A.col(c) = flatten(powers[c]);
    auto sol = solve(A, flatten(powers[k]));
    if (sol) {
      std::vector<Cyclo> poly(k + 1);
      for (long c = 0; c < k; ++c) poly[c] = -(*sol)(c);
      poly[k] = Cyclo(1);
      return poly;
    }
  }
}

std::vector<Rational> rational_roots(const std::vector<Rational>& poly) {
  std::vector<Rational> roots;
  auto eval = [&](const Rational& x) {
    Rational acc(0);
    for (long i = static_cast<long>(poly.size()) - 1; i >= 0; --i) acc = acc * x + poly[i];
    return acc;
  };
  if (poly.empty()) return roots;
  // strip trailing/leading zero structure
  size_t low = 0;
  while (low < poly.size() && poly[low] == 0) ++low;
  if (low == poly.size()) return roots;  // zero polynomial: treat as no reported roots
  if (low > 0) roots.push_back(Rational(0));
  // clear denominators -> integer polynomial
  BigInt den(1);
  for (size_t i = low; i < poly.size(); ++i)
    den = den / gcd(den, poly[i].get_den()) * poly[i].get_den();
  std::vector<BigInt> ip;
  for (size_t i = low; i < poly.size(); ++i)
    ip.push_back(poly[i].get_num() * (den / poly[i].get_den()));
  while (!ip.empty() && ip.back() == 0) ip.pop_back();
  if (ip.size() < 2) return roots;
  auto divisors = [](BigInt v) {
    std::vector<BigInt> ds;
    v = abs(v);
    for (BigInt d(1); d * d <= v; ++d)
      if (v % d == 0) {
        ds.push_back(d);
        ds.push_back(v / d);
      }
    return ds;
  };
  for (const BigInt& p : divisors(ip.front()))
    for (const BigInt& q : divisors(ip.back()))
      for (int sign : {1, -1}) {
        Rational cand(sign * p, q);
        cand.canonicalize();
        if (eval(cand) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Cyclo> monomial_roots(const std::vector<Rational>& poly, long field_order) {
  std::vector<Cyclo> roots;
  size_t low = 0;
  while (low < poly.size() && poly[low] == 0) ++low;
  if (low == poly.size()) return roots;
  if (low > 0) roots.push_back(Cyclo(0));
  BigInt den(1);
  for (size_t i = low; i < poly.size(); ++i)
    den = den / gcd(den, poly[i].get_den()) * poly[i].get_den();
  std::vector<BigInt> ip;
  for (size_t i = low; i < poly.size(); ++i)
    ip.push_back(poly[i].get_num() * (den / poly[i].get_den()));
  while (!ip.empty() && ip.back() == 0) ip.pop_back();
  if (ip.size() < 2) return roots;
  auto divisors = [](BigInt v) {
    std::vector<BigInt> ds;
    v = abs(v);
    for (BigInt d(1); d * d <= v; ++d)
      if (v % d == 0) {
        ds.push_back(d);
        ds.push_back(v / d);
      }
    return ds;
  };
  auto eval = [&](const Cyclo& x) {
    Cyclo acc(0);
    for (long i = static_cast<long>(poly.size()) - 1; i >= 0; --i)
      acc = acc * x + Cyclo(poly[i]);
    return acc;
  };
  for (const BigInt& p : divisors(ip.front()))
    for (const BigInt& q : divisors(ip.back()))
      for (long j = 0; j < field_order; ++j) {
        Rational r(p, q);
        r.canonicalize();
        Cyclo cand = Cyclo::rational_in(field_order, r) * Cyclo::zeta(field_order, j);
        if (!eval(cand).is_zero()) continue;
        bool dup = false;
        for (const auto& known : roots)
          if (known == cand) dup = true;
        if (!dup) roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end(),
            [](const Cyclo& a, const Cyclo& b) { return Cyclo::compare(a, b) < 0; });
  return roots;
}

std::optional<EigenSplit> eigen_split(const Mat& m, long field_order) {
  if (m.rows() != m.cols()) throw DimensionMismatchError("eigen_split: non-square");
  const long n = m.rows();
  std::vector<Cyclo> candidates;

  // Path 1: finite order up to scalar, m^k = c * I.
  Mat p = Mat::Identity(n, n);
  const long limit = 4 * std::max<long>(field_order, 4);
  for (long k = 1; k <= limit; ++k) {
    p = p * m;
    bool scalar = true;
    Cyclo c = p(0, 0);
    for (long i = 0; i < n && scalar; ++i)
      for (long j = 0; j < n && scalar; ++j)
        if (p(i, j) != (i == j ? c : Cyclo(0))) scalar = false;
    if (scalar && !c.is_zero()) {
      candidates = nth_roots_in_field(c, k, field_order);
      break;
    }
  }

  // Path 2: rational-coefficient minimal polynomial with roots of monomial
  // form q * zeta^j in the field.
  if (candidates.empty()) {
    auto mp = minimal_polynomial(m);
    std::vector<Rational> rp;
    bool all_rational = true;
    for (const auto& c : mp) {
      if (!c.is_rational()) {
        all_rational = false;
        break;
      }
      rp.push_back(c.rational_value());
    }
    if (all_rational) candidates = monomial_roots(rp, field_order);
  }

  EigenSplit out;
  long covered = 0;
  for (const Cyclo& lambda : candidates) {
    Mat shifted = m;
    for (long i = 0; i < n; ++i) shifted(i, i) -= lambda;
    Mat kb = kernel_basis(shifted);
    if (kb.rows() == 0) continue;
    out.pairs.emplace_back(lambda, Subspace::span(kb, n));
    covered += kb.rows();
  }
  if (covered != n) return std::nullopt;
  return out;
}

}  // namespace supergrade
