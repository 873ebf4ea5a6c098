#include "supergrade/superalg.hpp"

#include <algorithm>
#include <sstream>

namespace supergrade {

namespace {
long msq_index(long size, long i, long j) { return i * size + j; }
}  // namespace

SuperAlgebra SuperAlgebra::matrix_super(long n, long m) {
  if (n < 0 || m < 0 || n + m == 0)
    throw std::invalid_argument("matrix_super requires n,m >= 0 and n+m > 0");
  SuperAlgebra a;
  a.kind_ = Kind::MatrixSuper;
  a.n_ = n;
  a.m_ = m;
  const long size = n + m;
  a.dim_ = size * size;
  a.parity_.resize(a.dim_);
  auto side = [n](long i) { return i < n ? 0 : 1; };
  for (long i = 0; i < size; ++i)
    for (long j = 0; j < size; ++j)
      a.parity_[msq_index(size, i, j)] = side(i) ^ side(j);
  a.table_.assign(a.dim_, std::vector<std::vector<std::pair<long, Rational>>>(a.dim_));
  for (long i = 0; i < size; ++i)
    for (long j = 0; j < size; ++j)
      for (long k = 0; k < size; ++k)
        for (long l = 0; l < size; ++l)
          if (j == k)
            a.table_[msq_index(size, i, j)][msq_index(size, k, l)].push_back(
                {msq_index(size, i, l), Rational(1)});
  return a;
}

SuperAlgebra SuperAlgebra::q_type(long n) {
  if (n < 1) throw std::invalid_argument("q_type requires n >= 1");
  SuperAlgebra a;
  a.kind_ = Kind::QType;
  a.n_ = n;
  a.dim_ = 2 * n * n;
  a.parity_.assign(a.dim_, 0);
  for (long i = n * n; i < a.dim_; ++i) a.parity_[i] = 1;
  a.table_.assign(a.dim_, std::vector<std::vector<std::pair<long, Rational>>>(a.dim_));
  const long nn = n * n;
  // X_ij X_kl = d_jk X_il ; X_ij (tY_kl) = d_jk tY_il ;
  // (tY_ij) X_kl = d_jk tY_il ; (tY_ij)(tY_kl) = d_jk X_il   (t central, t^2 = 1)
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      for (long l = 0; l < n; ++l) {
        long ij = msq_index(n, i, j), jl = msq_index(n, j, l), il = msq_index(n, i, l);
        a.table_[ij][jl].push_back({il, Rational(1)});
        a.table_[ij][nn + jl].push_back({nn + il, Rational(1)});
        a.table_[nn + ij][jl].push_back({nn + il, Rational(1)});
        a.table_[nn + ij][nn + jl].push_back({il, Rational(1)});
      }
  return a;
}

SuperAlgebra SuperAlgebra::pair_sop(const SuperAlgebra& base) {
  SuperAlgebra a;
  a.kind_ = Kind::PairSop;
  a.base_ = std::make_shared<const SuperAlgebra>(base);
  const long bd = base.dim();
  a.dim_ = 2 * bd;
  a.parity_.resize(a.dim_);
  for (long i = 0; i < bd; ++i) a.parity_[i] = a.parity_[bd + i] = base.parity(i);
  a.table_.assign(a.dim_, std::vector<std::vector<std::pair<long, Rational>>>(a.dim_));
  for (long i = 0; i < bd; ++i)
    for (long j = 0; j < bd; ++j) {
      for (const auto& [k, c] : base.table_[i][j]) a.table_[i][j].push_back({k, c});
      // second coordinate: b o b' = (-1)^{|b||b'|} b' b
      Rational sign = (base.parity(i) && base.parity(j)) ? Rational(-1) : Rational(1);
      for (const auto& [k, c] : base.table_[j][i])
        a.table_[bd + i][bd + j].push_back({bd + k, sign * c});
    }
  return a;
}

SuperAlgebra SuperAlgebra::direct_sum(const SuperAlgebra& l, const SuperAlgebra& r) {
  SuperAlgebra a;
  a.kind_ = Kind::DirectSum;
  a.base_ = std::make_shared<const SuperAlgebra>(l);
  a.right_ = std::make_shared<const SuperAlgebra>(r);
  const long ld = l.dim(), rd = r.dim();
  a.dim_ = ld + rd;
  a.parity_.resize(a.dim_);
  for (long i = 0; i < ld; ++i) a.parity_[i] = l.parity(i);
  for (long i = 0; i < rd; ++i) a.parity_[ld + i] = r.parity(i);
  a.table_.assign(a.dim_, std::vector<std::vector<std::pair<long, Rational>>>(a.dim_));
  for (long i = 0; i < ld; ++i)
    for (long j = 0; j < ld; ++j)
      for (const auto& [k, c] : l.table_[i][j]) a.table_[i][j].push_back({k, c});
  for (long i = 0; i < rd; ++i)
    for (long j = 0; j < rd; ++j)
      for (const auto& [k, c] : r.table_[i][j])
        a.table_[ld + i][ld + j].push_back({ld + k, c});
  return a;
}

const SuperAlgebra& SuperAlgebra::base() const {
  if (!base_) throw std::logic_error("algebra has no base component");
  return *base_;
}
const SuperAlgebra& SuperAlgebra::left() const { return base(); }
const SuperAlgebra& SuperAlgebra::right() const {
  if (!right_) throw std::logic_error("algebra has no right summand");
  return *right_;
}

Vec SuperAlgebra::mul(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw AlgebraMismatchError("element dimension does not match the algebra");
  Vec r = Vec::Zero(dim_);
  for (long i = 0; i < dim_; ++i) {
    if (x(i).is_zero()) continue;
    for (long j = 0; j < dim_; ++j) {
      if (y(j).is_zero()) continue;
      for (const auto& [k, c] : table_[i][j]) r(k) += x(i) * y(j) * Cyclo(Rational(c));
    }
  }
  return r;
}

Vec SuperAlgebra::unit() const {
  Vec u = Vec::Zero(dim_);
  switch (kind_) {
    case Kind::MatrixSuper: {
      long size = n_ + m_;
      for (long i = 0; i < size; ++i) u(msq_index(size, i, i)) = Cyclo(1);
      break;
    }
    case Kind::QType:
      for (long i = 0; i < n_; ++i) u(msq_index(n_, i, i)) = Cyclo(1);
      break;
    case Kind::PairSop: {
      Vec b = base().unit();
      u.head(base().dim()) = b;
      u.tail(base().dim()) = b;
      break;
    }
    case Kind::DirectSum: {
      u.head(left().dim()) = left().unit();
      u.tail(right().dim()) = right().unit();
      break;
    }
  }
  return u;
}

Vec SuperAlgebra::basis_element(long i) const {
  Vec v = Vec::Zero(dim_);
  v(i) = Cyclo(1);
  return v;
}

std::string SuperAlgebra::basis_label(long i) const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::MatrixSuper: {
      long size = n_ + m_;
      os << "E" << (i / size + 1) << (i % size + 1);
      break;
    }
    case Kind::QType: {
      long nn = n_ * n_;
      if (i < nn)
        os << "E" << (i / n_ + 1) << (i % n_ + 1);
      else
        os << "tE" << ((i - nn) / n_ + 1) << ((i - nn) % n_ + 1);
      break;
    }
    case Kind::PairSop:
    case Kind::DirectSum: {
      long ld = base().dim();
      if (i < ld)
        os << "L:" << base().basis_label(i);
      else
        os << "R:" << (kind_ == Kind::PairSop ? base() : right()).basis_label(i - ld);
      break;
    }
  }
  return os.str();
}

std::string SuperAlgebra::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::MatrixSuper: os << "M(" << n_ << "|" << m_ << ")"; break;
    case Kind::QType: os << "Q(" << n_ << ")"; break;
    case Kind::PairSop: os << base().describe() + " (+) sop"; break;
    case Kind::DirectSum: os << left().describe() << " (+) " << right().describe(); break;
  }
  return os.str();
}

bool SuperAlgebra::same_structure(const SuperAlgebra& o) const {
  if (kind_ != o.kind_ || n_ != o.n_ || m_ != o.m_ || dim_ != o.dim_) return false;
  if (kind_ == Kind::PairSop) return base().same_structure(o.base());
  if (kind_ == Kind::DirectSum)
    return left().same_structure(o.left()) && right().same_structure(o.right());
  return true;
}

Mat SuperAlgebra::to_matrix(const Vec& v) const {
  if (kind_ != Kind::MatrixSuper) throw AlgebraMismatchError("to_matrix: not MatrixSuper");
  const long size = n_ + m_;
  Mat m(size, size);
  for (long i = 0; i < size; ++i)
    for (long j = 0; j < size; ++j) m(i, j) = v(msq_index(size, i, j));
  return m;
}

Vec SuperAlgebra::from_matrix(const Mat& m) const {
  if (kind_ != Kind::MatrixSuper) throw AlgebraMismatchError("from_matrix: not MatrixSuper");
  const long size = n_ + m_;
  if (m.rows() != size || m.cols() != size)
    throw DimensionMismatchError("from_matrix: wrong shape");
  Vec v(dim_);
  for (long i = 0; i < size; ++i)
    for (long j = 0; j < size; ++j) v(msq_index(size, i, j)) = m(i, j);
  return v;
}

std::pair<Mat, Mat> SuperAlgebra::to_xy(const Vec& v) const {
  if (kind_ != Kind::QType) throw AlgebraMismatchError("to_xy: not QType");
  Mat x(n_, n_), y(n_, n_);
  for (long i = 0; i < n_; ++i)
    for (long j = 0; j < n_; ++j) {
      x(i, j) = v(msq_index(n_, i, j));
      y(i, j) = v(n_ * n_ + msq_index(n_, i, j));
    }
  return {x, y};
}

Vec SuperAlgebra::from_xy(const Mat& x, const Mat& y) const {
  if (kind_ != Kind::QType) throw AlgebraMismatchError("from_xy: not QType");
  Vec v(dim_);
  for (long i = 0; i < n_; ++i)
    for (long j = 0; j < n_; ++j) {
      v(msq_index(n_, i, j)) = x(i, j);
      v(n_ * n_ + msq_index(n_, i, j)) = y(i, j);
    }
  return v;
}

std::pair<Vec, Vec> SuperAlgebra::split_pair(const Vec& v) const {
  if (kind_ != Kind::PairSop && kind_ != Kind::DirectSum)
    throw AlgebraMismatchError("split_pair: not a pair algebra");
  long ld = base().dim();
  return {v.head(ld), v.tail(dim_ - ld)};
}

Vec SuperAlgebra::join_pair(const Vec& a, const Vec& b) const {
  if (kind_ != Kind::PairSop && kind_ != Kind::DirectSum)
    throw AlgebraMismatchError("join_pair: not a pair algebra");
  Vec v(dim_);
  v.head(a.size()) = a;
  v.tail(b.size()) = b;
  return v;
}

SuperMap identity_map(const SuperAlgebra& alg) {
  return SuperMap{Mat::Identity(alg.dim(), alg.dim()), SuperMap::Claim::Automorphism};
}

SuperMap map_from_function(const SuperAlgebra& alg,
                           const std::function<Vec(const Vec&)>& fn,
                           SuperMap::Claim claim) {
  Mat action(alg.dim(), alg.dim());
  for (long j = 0; j < alg.dim(); ++j) action.col(j) = fn(alg.basis_element(j));
  return SuperMap{std::move(action), claim};
}

SuperMap compose(const SuperMap& f, const SuperMap& g) {
  return SuperMap{f.action * g.action, SuperMap::Claim::Unchecked};
}

SuperMap map_power(const SuperMap& f, long k) {
  return SuperMap{mat_pow(f.action, k), SuperMap::Claim::Unchecked};
}

SuperMap map_inverse(const SuperMap& f) {
  return SuperMap{inverse(f.action), f.claimed};
}

bool map_equal(const SuperMap& f, const SuperMap& g) {
  return mat_equal(f.action, g.action);
}

Vec apply(const SuperMap& f, const Vec& v) { return f.action * v; }

SuperMap parity_map(const SuperAlgebra& alg) {
  Mat action = Mat::Zero(alg.dim(), alg.dim());
  for (long i = 0; i < alg.dim(); ++i) action(i, i) = Cyclo(alg.parity(i) ? -1 : 1);
  return SuperMap{std::move(action), SuperMap::Claim::Automorphism};
}

namespace {

Mat negate_top_right(const SuperAlgebra& alg, Mat m) {
  // negate the n x m block B of (A,B;C,D)
  if (alg.m() > 0) m.block(0, alg.n(), alg.n(), alg.m()) *= Cyclo(-1);
  return m;
}

}  // namespace

SuperMap apply_canonical_map_builder(const SuperAlgebra& alg, CanonicalMapKind kind) {
  switch (kind) {
    case CanonicalMapKind::Osp: {
      if (alg.kind() != SuperAlgebra::Kind::MatrixSuper || alg.m() % 2 != 0)
        throw AlgebraMismatchError("osp needs MatrixSuper with even odd-block size");
      const long n = alg.n(), s = alg.m() / 2, size = n + alg.m();
      Mat j = Mat::Identity(size, size);
      for (long i = 0; i < s; ++i) {
        j(n + i, n + i) = Cyclo(0);
        j(n + s + i, n + s + i) = Cyclo(0);
        j(n + i, n + s + i) = Cyclo(1);
        j(n + s + i, n + i) = Cyclo(-1);
      }
      Mat jinv = inverse(j);
      return map_from_function(
          alg,
          [&, j, jinv](const Vec& v) {
            Mat m = negate_top_right(alg, alg.to_matrix(v)).transpose();
            return alg.from_matrix(jinv * m * j);
          },
          SuperMap::Claim::Superinvolution);
    }
    case CanonicalMapKind::Trp: {
      if (alg.kind() != SuperAlgebra::Kind::MatrixSuper || alg.n() != alg.m())
        throw AlgebraMismatchError("trp needs MatrixSuper with n == m");
      const long r = alg.n();
      return map_from_function(
          alg,
          [&, r](const Vec& v) {
            Mat m = alg.to_matrix(v);
            Mat out(2 * r, 2 * r);
            out.block(0, 0, r, r) = m.block(r, r, r, r).transpose();
            out.block(0, r, r, r) = -m.block(0, r, r, r).transpose();
            out.block(r, 0, r, r) = m.block(r, 0, r, r).transpose();
            out.block(r, r, r, r) = m.block(0, 0, r, r).transpose();
            return alg.from_matrix(out);
          },
          SuperMap::Claim::Superinvolution);
    }
    case CanonicalMapKind::Exchange: {
      if (alg.kind() != SuperAlgebra::Kind::PairSop)
        throw AlgebraMismatchError("exchange needs a pair algebra");
      return map_from_function(
          alg,
          [&](const Vec& v) {
            auto [a, b] = alg.split_pair(v);
            return alg.join_pair(b, a);
          },
          SuperMap::Claim::Superinvolution);
    }
    case CanonicalMapKind::Tau: {
      if (alg.kind() != SuperAlgebra::Kind::MatrixSuper)
        throw AlgebraMismatchError("tau needs MatrixSuper");
      return map_from_function(
          alg,
          [&](const Vec& v) {
            return alg.from_matrix(negate_top_right(alg, alg.to_matrix(v)).transpose());
          },
          SuperMap::Claim::Superantiautomorphism);
    }
  }
  throw std::logic_error("unknown canonical map kind");
}

Vec apply_canonical_map(const SuperAlgebra& alg, CanonicalMapKind kind, const Vec& x) {
  return apply(apply_canonical_map_builder(alg, kind), x);
}

SuperMap plain_transpose_map(const SuperAlgebra& alg) {
  if (alg.kind() != SuperAlgebra::Kind::MatrixSuper)
    throw AlgebraMismatchError("plain transpose needs MatrixSuper");
  return map_from_function(
      alg, [&](const Vec& v) { return alg.from_matrix(alg.to_matrix(v).transpose()); });
}

SuperMap conjugation_map(const SuperAlgebra& alg, const Mat& t) {
  Mat tinv = inverse(t);
  return map_from_function(
      alg, [&, t, tinv](const Vec& v) { return alg.from_matrix(tinv * alg.to_matrix(v) * t); },
      SuperMap::Claim::Automorphism);
}

SuperMap tau_conjugate_map(const SuperAlgebra& alg, const Mat& phi) {
  Mat pinv = inverse(phi);
  return map_from_function(
      alg,
      [&, phi, pinv](const Vec& v) {
        Mat t = negate_top_right(alg, alg.to_matrix(v)).transpose();
        return alg.from_matrix(pinv * t * phi);
      },
      SuperMap::Claim::Superantiautomorphism);
}

SuperMap pair_lift_type1(const SuperAlgebra& pair_alg, const SuperMap& f0) {
  const long bd = pair_alg.base().dim();
  Mat action = Mat::Zero(2 * bd, 2 * bd);
  action.block(0, 0, bd, bd) = f0.action;
  action.block(bd, bd, bd, bd) = f0.action;
  return SuperMap{std::move(action), SuperMap::Claim::Unchecked};
}

SuperMap pair_lift_type2(const SuperAlgebra& pair_alg, const SuperMap& f0) {
  const long bd = pair_alg.base().dim();
  Mat action = Mat::Zero(2 * bd, 2 * bd);
  action.block(0, bd, bd, bd) = f0.action;
  action.block(bd, 0, bd, bd) = f0.action;
  return SuperMap{std::move(action), SuperMap::Claim::Unchecked};
}

SuperMap q_lift(const SuperAlgebra& q_alg, const Mat& psi0_action, const Cyclo& unit) {
  if (q_alg.kind() != SuperAlgebra::Kind::QType)
    throw AlgebraMismatchError("q_lift needs QType");
  const long nn = q_alg.n() * q_alg.n();
  Mat action = Mat::Zero(2 * nn, 2 * nn);
  action.block(0, 0, nn, nn) = psi0_action;
  action.block(nn, nn, nn, nn) = psi0_action * unit;
  return SuperMap{std::move(action), SuperMap::Claim::Unchecked};
}

SuperMap direct_sum_map(const SuperAlgebra& sum_alg, const SuperMap& f, const SuperMap& g) {
  const long ld = sum_alg.left().dim(), rd = sum_alg.right().dim();
  Mat action = Mat::Zero(ld + rd, ld + rd);
  action.block(0, 0, ld, ld) = f.action;
  action.block(ld, ld, rd, rd) = g.action;
  return SuperMap{std::move(action), SuperMap::Claim::Unchecked};
}

MapCheckReport check_super_map(const SuperAlgebra& alg, const SuperMap& f,
                               SuperMap::Claim claim) {
  MapCheckReport report;
  const long d = alg.dim();
  if (f.action.rows() != d || f.action.cols() != d) {
    report.witnesses.push_back({-1, -1, "action matrix has wrong shape"});
    return report;
  }
  for (long j = 0; j < d; ++j)
    for (long i = 0; i < d; ++i)
      if (!f.action(i, j).is_zero() && alg.parity(i) != alg.parity(j)) {
        report.witnesses.push_back(
            {i, j, "image of " + alg.basis_label(j) + " has mixed parity"});
        return report;
      }
  if (!is_invertible(f.action)) {
    report.witnesses.push_back({-1, -1, "action matrix is singular"});
    return report;
  }
  const bool anti = claim == SuperMap::Claim::Superantiautomorphism ||
                    claim == SuperMap::Claim::Superinvolution;
  for (long i = 0; i < d; ++i) {
    Vec fi = f.action.col(i);
    for (long j = 0; j < d; ++j) {
      Vec fj = f.action.col(j);
      Vec lhs = f.action * alg.mul(alg.basis_element(i), alg.basis_element(j));
      Vec rhs;
      if (anti) {
        rhs = alg.mul(fj, fi);
        if (alg.parity(i) && alg.parity(j)) rhs = -rhs;
      } else {
        rhs = alg.mul(fi, fj);
      }
      if (!mat_equal(Mat(lhs), Mat(rhs))) {
        report.witnesses.push_back(
            {i, j,
             "law fails on (" + alg.basis_label(i) + ", " + alg.basis_label(j) + ")"});
        if (report.witnesses.size() >= 8) return report;
      }
    }
  }
  if (!report.witnesses.empty()) return report;
  if (claim == SuperMap::Claim::Superinvolution &&
      !mat_equal(f.action * f.action, Mat(Mat::Identity(d, d)))) {
    report.witnesses.push_back({-1, -1, "map squared is not the identity"});
    return report;
  }
  report.ok = true;
  return report;
}

AlgebraOps full_algebra_ops(const SuperAlgebra& alg) {
  SuperAlgebra copy = alg;
  return AlgebraOps{alg.dim(),
                    [copy](const Vec& a, const Vec& b) { return copy.mul(a, b); },
                    alg.unit()};
}

Subspace center_subspace(const AlgebraOps& ops) {
  const long d = ops.dim;
  Mat constraints(d * d, d);
  for (long i = 0; i < d; ++i) {
    Vec ei = Vec::Zero(d);
    ei(i) = Cyclo(1);
    for (long j = 0; j < d; ++j) {
      Vec ej = Vec::Zero(d);
      ej(j) = Cyclo(1);
      Vec comm = ops.mul(ej, ei) - ops.mul(ei, ej);
      constraints.block(i * d, j, d, 1) = comm;
    }
  }
  return Subspace::span(kernel_basis(constraints), d);
}

std::vector<Vec> central_primitive_idempotents(const AlgebraOps& ops,
                                               long field_order) {
  const long d = ops.dim;
  Subspace center = center_subspace(ops);
  const long k = center.dim();
  if (k == 0) throw std::logic_error("algebra has zero center (not unital?)");

  // Refine the ambient space into common eigenspaces of the multiplication
  // operators of the center basis; the parts are the Wedderburn pieces.
  std::vector<Subspace> parts{Subspace::full(d)};
  for (long i = 0; i < k; ++i) {
    Mat mult(d, d);
    Vec zi = center.basis_vector(i);
    for (long j = 0; j < d; ++j) {
      Vec ej = Vec::Zero(d);
      ej(j) = Cyclo(1);
      mult.col(j) = ops.mul(zi, ej);
    }
    auto es = eigen_split(mult, field_order);
    if (!es) continue;  // this operator alone may not split; others may separate
    std::vector<Subspace> refined;
    for (const auto& part : parts)
      for (const auto& [lam, eigensp] : es->pairs) {
        Subspace cut = part.intersect(eigensp);
        if (!cut.is_zero()) refined.push_back(cut);
      }
    parts = std::move(refined);
  }
  if (static_cast<long>(parts.size()) != k)
    throw std::logic_error("center does not split over Q(zeta_" +
                           std::to_string(field_order) + ")");

  // For each part find the central element acting as 1 on it and 0 elsewhere.
  std::vector<Vec> idems;
  for (size_t target = 0; target < parts.size(); ++target) {
    long rows = 0;
    for (const auto& p : parts) rows += p.dim();
    Mat system(rows * d, k);
    Vec rhs(rows * d);
    long row = 0;
    for (size_t j = 0; j < parts.size(); ++j)
      for (long b = 0; b < parts[j].dim(); ++b) {
        Vec v = parts[j].basis_vector(b);
        for (long c = 0; c < k; ++c)
          system.block(row * d, c, d, 1) = ops.mul(center.basis_vector(c), v);
        rhs.segment(row * d, d) = j == target ? v : Vec(Vec::Zero(d));
        ++row;
      }
    auto sol = solve(system, rhs);
    if (!sol) throw std::logic_error("no central idempotent for a Wedderburn piece");
    Vec e = Vec::Zero(d);
    for (long c = 0; c < k; ++c) e += center.basis_vector(c) * (*sol)(c);
    idems.push_back(e);
  }

  // verification: orthogonal idempotents summing to the unit
  Vec total = Vec::Zero(d);
  for (const auto& e : idems) total += e;
  if (!mat_equal(Mat(total), Mat(ops.unit)))
    throw std::logic_error("idempotents do not sum to the unit");
  for (size_t i = 0; i < idems.size(); ++i)
    for (size_t j = 0; j < idems.size(); ++j) {
      Vec p = ops.mul(idems[i], idems[j]);
      Vec expect = i == j ? idems[i] : Vec(Vec::Zero(d));
      if (!mat_equal(Mat(p), Mat(expect)))
        throw std::logic_error("idempotent system fails orthogonality");
    }
  return idems;
}

namespace {

// Returns true if v enlarged the span; maintains `basis` in RREF.
bool add_to_span(Mat& basis, const Vec& v) {
  Mat stacked(basis.rows() + 1, v.size());
  stacked.topRows(basis.rows()) = basis;
  stacked.row(basis.rows()) = v.transpose();
  Mat r = rref(std::move(stacked));
  if (r.rows() == basis.rows()) return false;
  basis = std::move(r);
  return true;
}

}  // namespace

Subspace star_ideal_closure(const SuperAlgebra& alg, const SuperMap& star,
                            const std::vector<Vec>& seeds) {
  const long d = alg.dim();
  Mat basis(0, d);
  SuperMap sigma = parity_map(alg);
  std::vector<Vec> queue;
  for (const auto& s : seeds)
    if (add_to_span(basis, s)) queue.push_back(s);
  while (!queue.empty()) {
    Vec v = queue.back();
    queue.pop_back();
    std::vector<Vec> candidates;
    for (long j = 0; j < d; ++j) {
      Vec ej = alg.basis_element(j);
      candidates.push_back(alg.mul(ej, v));
      candidates.push_back(alg.mul(v, ej));
    }
    candidates.push_back(star.action * v);
    candidates.push_back(sigma.action * v);
    for (auto& c : candidates)
      if (add_to_span(basis, c)) queue.push_back(c);
  }
  return Subspace::span(basis, d);
}

SimplicityReport involution_simple(const SuperAlgebra& alg, const SuperMap& star) {
  auto star_check = check_super_map(alg, star, SuperMap::Claim::Superinvolution);
  if (!star_check.ok)
    throw std::invalid_argument("involution_simple: star is not a superinvolution: " +
                                (star_check.witnesses.empty()
                                     ? std::string("unknown")
                                     : star_check.witnesses.front().reason));
  SimplicityReport report;
  const long d = alg.dim();
  // R^2 != 0
  bool square_nonzero = false;
  for (long i = 0; i < d && !square_nonzero; ++i)
    for (long j = 0; j < d && !square_nonzero; ++j)
      if (!is_zero(Mat(alg.mul(alg.basis_element(i), alg.basis_element(j)))))
        square_nonzero = true;
  if (!square_nonzero) {
    report.simple = false;
    report.witness = "R^2 = 0";
    return report;
  }
  std::vector<Vec> seeds = central_primitive_idempotents(full_algebra_ops(alg));
  const size_t n_idem = seeds.size();
  for (long i = 0; i < d; ++i) seeds.push_back(alg.basis_element(i));
  for (size_t s = 0; s < seeds.size(); ++s) {
    Subspace ideal = star_ideal_closure(alg, star, {seeds[s]});
    if (ideal.dim() > 0 && ideal.dim() < d) {
      report.simple = false;
      report.witness = s < n_idem
                           ? "central idempotent #" + std::to_string(s) +
                                 " generates a proper stable ideal of dimension " +
                                 std::to_string(ideal.dim())
                           : "basis element " + alg.basis_label(s - n_idem) +
                                 " generates a proper stable ideal of dimension " +
                                 std::to_string(ideal.dim());
      report.ideal = ideal;
      return report;
    }
  }
  report.simple = true;
  return report;
}

SuperinvolutionSearchResult superinvolution_search(const SuperAlgebra& alg) {
  if (alg.dim() > 32)
    throw std::invalid_argument("superinvolution_search: dimension exceeds the bound 32");
  SuperinvolutionSearchResult result;
  auto try_candidate = [&](const SuperMap& f, const std::string& name) {
    if (check_super_map(alg, f, SuperMap::Claim::Superinvolution).ok) {
      for (const auto& known : result.found)
        if (map_equal(known, f)) return;
      SuperMap g = f;
      g.claimed = SuperMap::Claim::Superinvolution;
      result.found.push_back(g);
      result.notes.push_back("found: " + name);
    }
  };
  switch (alg.kind()) {
    case SuperAlgebra::Kind::MatrixSuper: {
      if (alg.n() == alg.m())
        try_candidate(apply_canonical_map_builder(alg, CanonicalMapKind::Trp), "trp");
      if (alg.m() % 2 == 0)
        try_candidate(apply_canonical_map_builder(alg, CanonicalMapKind::Osp), "osp");
      try_candidate(apply_canonical_map_builder(alg, CanonicalMapKind::Tau), "tau");
      result.exhaustive = false;
      result.notes.push_back("matrix family searched: canonical osp/trp/tau forms");
      break;
    }
    case SuperAlgebra::Kind::PairSop: {
      try_candidate(apply_canonical_map_builder(alg, CanonicalMapKind::Exchange), "exchange");
      result.exhaustive = false;
      break;
    }
    case SuperAlgebra::Kind::QType: {
      const long n = alg.n();
      // Any parity-preserving linear f splits as f(X + tY) = psi0(X) + t psi1(Y).
      // The involution law forces psi1 = lambda psi0 with psi1(I) = lambda I
      // central, lambda^2 = -1 from the odd-odd law, lambda^2 = 1 from f^2 = id.
      // Step 1: the centralizer of M_n is the scalars.
      SuperAlgebra mn = SuperAlgebra::matrix_super(n, 0);
      Mat constraints(mn.dim() * mn.dim(), mn.dim());
      for (long i = 0; i < mn.dim(); ++i) {
        Vec ei = mn.basis_element(i);
        for (long j = 0; j < mn.dim(); ++j) {
          Vec ej = mn.basis_element(j);
          constraints.block(i * mn.dim(), j, mn.dim(), 1) =
              Vec(mn.mul(ej, ei) - mn.mul(ei, ej));
        }
      }
      bool central_scalars = rank(kernel_basis(constraints)) == 1;
      result.notes.push_back(std::string("centralizer of M_n is the scalar line: ") +
                             (central_scalars ? "verified" : "FAILED"));
      // Step 2: in-field solutions of lambda^2 = -1.
      const long ambient = 4;
      auto lambdas = nth_roots_in_field(Cyclo(-1), 2, ambient);
      bool contradiction = true;
      for (const auto& lam : lambdas) {
        if (lam * lam == Cyclo(1)) contradiction = false;
        result.notes.push_back("candidate unit lambda = " + lam.str() +
                               ": lambda^2 = -1 holds, lambda^2 = 1 " +
                               ((lam * lam == Cyclo(1)) ? "holds" : "fails"));
      }
      result.exhaustive = central_scalars && contradiction && n <= 2;
      if (result.exhaustive)
        result.notes.push_back(
            "no unit satisfies both scalar equations: no superinvolution exists");
      break;
    }
    case SuperAlgebra::Kind::DirectSum:
      result.exhaustive = false;
      result.notes.push_back("direct sums are searched componentwise by the caller");
      break;
  }
  return result;
}

}  // namespace supergrade
