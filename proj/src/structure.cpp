#include "supergrade/structure.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace supergrade {

namespace {

// row-major vectorization operators: vec(A X) = lmul_op(A) vec(X),
// vec(X B) = rmul_op(B) vec(X)
Mat lmul_op(const Mat& a) {
  const long n = a.rows();
  Mat op = Mat::Zero(n * n, n * n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      for (long k = 0; k < n; ++k) op(i * n + j, k * n + j) = a(i, k);
  return op;
}

Mat rmul_op(const Mat& b) {
  const long n = b.rows();
  Mat op = Mat::Zero(n * n, n * n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      for (long l = 0; l < n; ++l) op(i * n + j, i * n + l) = b(l, j);
  return op;
}

Vec flatten(const Mat& m) {
  Vec v(m.rows() * m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

Mat unflatten(const Vec& v, long rows, long cols) {
  Mat m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

std::optional<Cyclo> scalar_ratio(const Mat& a, const Mat& b) {
  // c with a == c * b
  for (long i = 0; i < b.rows(); ++i)
    for (long j = 0; j < b.cols(); ++j)
      if (!b(i, j).is_zero()) {
        Cyclo c = a(i, j) / b(i, j);
        Mat diff = a - b * c;
        return is_zero(diff) ? std::optional<Cyclo>(c) : std::nullopt;
      }
  return is_zero(a) ? std::optional<Cyclo>(Cyclo(0)) : std::nullopt;
}

bool grading_stable_under(const Grading& grading, const Mat& action) {
  for (long i = 0; i < grading.index_size(); ++i) {
    const Subspace& c = grading.component_at(i);
    if (!c.is_zero() && c.apply(action) != c) return false;
  }
  return true;
}

}  // namespace

std::optional<Mat> find_invertible_in_span(const std::vector<Mat>& generators) {
  if (generators.empty()) return std::nullopt;
  const long k = generators[0].rows();
  // canonical independent spanning set
  Mat rows(static_cast<long>(generators.size()), k * k);
  for (size_t i = 0; i < generators.size(); ++i)
    rows.row(static_cast<long>(i)) = flatten(generators[i]).transpose();
  Mat basis = rref(rows);
  const long s = basis.rows();
  if (s == 0) return std::nullopt;
  std::vector<Mat> gens;
  for (long i = 0; i < s; ++i) gens.push_back(unflatten(basis.row(i).transpose(), k, k));
  for (const auto& g : gens)
    if (is_invertible(g)) return g;
  // determinant grid test: det is a polynomial of degree <= k per variable,
  // so the grid {0..k}^s decides identical vanishing exactly
  double points = 1;
  for (long i = 0; i < s; ++i) points *= (k + 1);
  if (points > 200000)
    throw std::logic_error("invertibility search space too large to decide");
  std::vector<long> coord(s, 0);
  while (true) {
    Mat cand = Mat::Zero(k, k);
    for (long i = 0; i < s; ++i)
      if (coord[i] != 0) cand += gens[i] * Cyclo(coord[i]);
    if (!is_zero(cand) && is_invertible(cand)) return cand;
    long pos = 0;
    while (pos < s && coord[pos] == k) coord[pos++] = 0;
    if (pos == s) break;
    ++coord[pos];
  }
  return std::nullopt;
}

std::optional<Mat> solve_intertwiner(const std::vector<std::pair<Mat, Mat>>& pairs,
                                     long size) {
  // M f_t = g_t M  <=>  (rmul_op(f_t) - lmul_op(g_t)) vec(M) = 0
  Mat system(static_cast<long>(pairs.size()) * size * size, size * size);
  long row = 0;
  for (const auto& [f, g] : pairs) {
    system.block(row, 0, size * size, size * size) = rmul_op(f) - lmul_op(g);
    row += size * size;
  }
  Mat ker = kernel_basis(system);
  std::vector<Mat> cands;
  for (long i = 0; i < ker.rows(); ++i)
    cands.push_back(unflatten(ker.row(i).transpose(), size, size));
  return find_invertible_in_span(cands);
}

ExchangeResult exchange_decompose(const SuperAlgebra& alg, const ActionHom& alpha,
                                  const ActionHom& beta,
                                  const std::vector<Character>& lambda) {
  validate_action(alg, alpha);
  validate_action(alg, beta);
  if (!(alpha.group == beta.group))
    throw ExchangeHypothesisError("alpha and beta must act for the same group");
  const AbGroup& g = alpha.group;
  for (const auto& lam : lambda)
    if (!mat_equal(alpha.character_action(lam), beta.character_action(lam)))
      throw ExchangeHypothesisError("alpha and beta differ on the character " +
                                    to_string(GroupElem{lam.coords}));
  for (size_t i = 0; i < g.ngens(); ++i)
    for (size_t j = 0; j < g.ngens(); ++j)
      if (!mat_equal(alpha.gen_images[i].action * beta.gen_images[j].action,
                     beta.gen_images[j].action * alpha.gen_images[i].action))
        throw ExchangeHypothesisError(
            "alpha and beta images do not commute elementwise (generators " +
            std::to_string(i) + ", " + std::to_string(j) + ")");

  ExchangeResult result;
  for (size_t i = 0; i < g.ngens(); ++i)
    result.gamma_gen_images.push_back(
        SuperMap{inverse(alpha.gen_images[i].action) * beta.gen_images[i].action,
                 SuperMap::Claim::Automorphism});
  result.subgroup_h = orth_complement(g, lambda);

  const long d = alg.dim();
  for (const auto& h : result.subgroup_h) {
    Subspace comp = Subspace::full(d);
    for (size_t i = 0; i < g.ngens(); ++i) {
      Cyclo val = char_eval(g, g.char_gen(i), h);
      Mat shifted = result.gamma_gen_images[i].action;
      for (long r = 0; r < d; ++r) shifted(r, r) -= val;
      comp = comp.intersect(Subspace::span(kernel_basis(shifted), d));
    }
    result.h_components.emplace_back(h, comp);
  }
  {
    std::vector<Subspace> parts;
    for (const auto& [h, c] : result.h_components) parts.push_back(c);
    if (!is_direct_sum_decomposition(parts, d))
      throw ExchangeHypothesisError("gamma eigenspaces do not decompose the space");
  }

  result.first_grading = grading_of_action(alg, alpha);
  result.second_grading = grading_of_action(alg, beta);

  auto component_of = [&](const GroupElem& h) -> const Subspace& {
    for (const auto& [hh, c] : result.h_components)
      if (hh == h) return c;
    throw std::logic_error("h-component lookup failed");
  };

  result.reconstructed_first = Grading::over_group(g, d);
  result.reconstructed_second = Grading::over_group(g, d);
  for (const auto& elem : g.elements()) {
    Subspace acc1 = Subspace::zero(d), acc2 = Subspace::zero(d);
    for (const auto& h : result.subgroup_h) {
      acc1 = acc1.sum(
          result.second_grading.component(g.mul(elem, h)).intersect(component_of(h)));
      acc2 = acc2.sum(
          result.first_grading.component(g.mul(elem, h)).intersect(component_of(g.inv(h))));
    }
    result.reconstructed_first.set_component(elem, acc1);
    result.reconstructed_second.set_component(elem, acc2);
  }
  result.identities_hold = result.reconstructed_first == result.first_grading &&
                           result.reconstructed_second == result.second_grading;
  return result;
}

PairMapDecomposition decompose_pair_map(const SuperAlgebra& pair_alg,
                                        const SuperMap& phi) {
  if (pair_alg.kind() != SuperAlgebra::Kind::PairSop)
    throw AlgebraMismatchError("decompose_pair_map needs a pair algebra");
  auto check = check_super_map(pair_alg, phi, SuperMap::Claim::Automorphism);
  if (!check.ok)
    throw DecompositionError("map is not an automorphism: " +
                             (check.witnesses.empty() ? "unknown"
                                                      : check.witnesses[0].reason));
  SuperMap ex = apply_canonical_map_builder(pair_alg, CanonicalMapKind::Exchange);
  if (!mat_equal(phi.action * ex.action, ex.action * phi.action))
    throw DecompositionError("map does not commute with the exchange involution");
  const long bd = pair_alg.base().dim();
  auto block_zero = [&](long r0, long c0) {
    return is_zero(Mat(phi.action.block(r0, c0, bd, bd)));
  };
  PairMapDecomposition out;
  if (block_zero(bd, 0) && block_zero(0, bd)) {
    out.map_type = 1;
    Mat f0 = phi.action.block(0, 0, bd, bd);
    if (!mat_equal(f0, Mat(phi.action.block(bd, bd, bd, bd))))
      throw DecompositionError("diagonal blocks differ; map does not commute with exchange");
    out.phi0 = SuperMap{f0, SuperMap::Claim::Automorphism};
    auto c0 = check_super_map(pair_alg.base(), out.phi0, SuperMap::Claim::Automorphism);
    if (!c0.ok) throw DecompositionError("type-1 base map is not an automorphism");
    if (!map_equal(pair_lift_type1(pair_alg, out.phi0), phi))
      throw DecompositionError("type-1 reconstruction mismatch");
  } else if (block_zero(0, 0) && block_zero(bd, bd)) {
    out.map_type = 2;
    Mat f0 = phi.action.block(bd, 0, bd, bd);
    if (!mat_equal(f0, Mat(phi.action.block(0, bd, bd, bd))))
      throw DecompositionError("antidiagonal blocks differ; map does not commute with exchange");
    out.phi0 = SuperMap{f0, SuperMap::Claim::Superantiautomorphism};
    auto c0 =
        check_super_map(pair_alg.base(), out.phi0, SuperMap::Claim::Superantiautomorphism);
    if (!c0.ok) throw DecompositionError("type-2 base map is not a superantiautomorphism");
    if (!map_equal(pair_lift_type2(pair_alg, out.phi0), phi))
      throw DecompositionError("type-2 reconstruction mismatch");
  } else {
    throw DecompositionError("map neither preserves nor swaps the two ideals");
  }
  return out;
}

QMapDecomposition decompose_q_map(const SuperAlgebra& q_alg, const SuperMap& psi,
                                  SuperMap::Claim kind) {
  if (q_alg.kind() != SuperAlgebra::Kind::QType)
    throw AlgebraMismatchError("decompose_q_map needs a Q(n) algebra");
  if (kind != SuperMap::Claim::Automorphism &&
      kind != SuperMap::Claim::Superantiautomorphism)
    throw std::invalid_argument("kind must be automorphism or superantiautomorphism");
  auto check = check_super_map(q_alg, psi, kind);
  if (!check.ok)
    throw DecompositionError("map is not of the claimed kind: " +
                             (check.witnesses.empty() ? "unknown"
                                                      : check.witnesses[0].reason));
  const long n = q_alg.n(), nn = n * n;
  Mat psi0 = psi.action.block(0, 0, nn, nn);
  Mat psi1 = psi.action.block(nn, nn, nn, nn);
  // psi1(I) must be a scalar matrix
  Vec iv(nn);
  SuperAlgebra mn = SuperAlgebra::matrix_super(n, 0);
  iv = flatten(Mat(Mat::Identity(n, n)));
  Mat w = unflatten(psi1 * iv, n, n);
  auto lam = scalar_ratio(w, Mat(Mat::Identity(n, n)));
  if (!lam) throw DecompositionError("psi1(I) is not a scalar matrix");
  if (!mat_equal(psi1, Mat(psi0 * (*lam))))
    throw DecompositionError("psi1 is not a scalar multiple of psi0");
  Cyclo lam2 = *lam * *lam;
  if (kind == SuperMap::Claim::Automorphism && lam2 != Cyclo(1))
    throw DecompositionError("automorphism unit does not satisfy lambda^2 = 1");
  if (kind == SuperMap::Claim::Superantiautomorphism && lam2 != Cyclo(-1))
    throw DecompositionError("antiautomorphism unit does not satisfy lambda^2 = -1");
  QMapDecomposition out;
  out.psi0 = SuperMap{psi0, kind == SuperMap::Claim::Automorphism
                                ? SuperMap::Claim::Automorphism
                                : SuperMap::Claim::Superantiautomorphism};
  out.unit = *lam;
  if (!map_equal(q_lift(q_alg, psi0, *lam), psi))
    throw DecompositionError("q-map reconstruction mismatch");
  return out;
}

Vec SubAlg::to_sub(const SuperAlgebra&, const Vec& ambient) const {
  auto sol = solve(Mat(basis.transpose()), ambient);
  if (!sol) throw std::logic_error("vector is not in the subalgebra");
  return *sol;
}

Vec SubAlg::to_ambient(const Vec& sub) const { return basis.transpose() * sub; }

Vec SubAlg::mul(const SuperAlgebra& alg, const Vec& a, const Vec& b) const {
  return to_sub(alg, alg.mul(to_ambient(a), to_ambient(b)));
}

Mat SubAlg::restrict_map(const SuperAlgebra& alg, const Mat& ambient_action) const {
  const long k = basis.rows();
  Mat out(k, k);
  for (long j = 0; j < k; ++j)
    out.col(j) = to_sub(alg, ambient_action * to_ambient(Vec(Vec::Unit(k, j))));
  return out;
}

AlgebraOps SubAlg::ops(const SuperAlgebra& alg) const {
  SubAlg self = *this;
  SuperAlgebra amb = alg;
  return AlgebraOps{basis.rows(),
                    [self, amb](const Vec& a, const Vec& b) { return self.mul(amb, a, b); },
                    unit};
}

SubAlg make_subalgebra(const SuperAlgebra& alg, const Subspace& space) {
  SubAlg sub;
  sub.ambient_dim = alg.dim();
  const long d = alg.dim();
  // parity split
  Mat even_rows = Mat::Zero(d, d), odd_rows = Mat::Zero(d, d);
  long ne = 0, no = 0;
  for (long i = 0; i < d; ++i)
    if (alg.parity(i) == 0)
      even_rows(ne++, i) = Cyclo(1);
    else
      odd_rows(no++, i) = Cyclo(1);
  Subspace even = space.intersect(Subspace::span(even_rows.topRows(ne), d));
  Subspace odd = space.intersect(Subspace::span(odd_rows.topRows(no), d));
  if (even.dim() + odd.dim() != space.dim())
    throw std::invalid_argument("subspace is not parity-split");
  sub.basis = Mat(space.dim(), d);
  sub.basis.topRows(even.dim()) = even.basis();
  sub.basis.bottomRows(odd.dim()) = odd.basis();
  sub.parity.assign(space.dim(), 0);
  for (long i = even.dim(); i < space.dim(); ++i) sub.parity[i] = 1;
  // closure under multiplication
  for (long i = 0; i < space.dim(); ++i)
    for (long j = 0; j < space.dim(); ++j) {
      Vec prod = alg.mul(sub.basis.row(i).transpose(), sub.basis.row(j).transpose());
      if (!space.contains(prod))
        throw std::invalid_argument("subspace is not closed under multiplication");
    }
  // unit: ambient unit when inside; otherwise a two-sided local unit
  Vec global_unit = alg.unit();
  if (space.contains(global_unit)) {
    sub.unit = sub.to_sub(alg, global_unit);
  } else {
    // solve u * b_j = b_j = b_j * u for all j, u in the subspace
    const long k = space.dim();
    Mat system(2 * k * k, k);
    for (long j = 0; j < k; ++j) {
      Vec bj = sub.basis.row(j).transpose();
      for (long c = 0; c < k; ++c) {
        Vec bc = sub.basis.row(c).transpose();
        Vec lp = sub.to_sub(alg, alg.mul(bc, bj));
        Vec rp = sub.to_sub(alg, alg.mul(bj, bc));
        system.block(j * k, c, k, 1) = lp;
        system.block(k * k + j * k, c, k, 1) = rp;
      }
    }
    // want system-linear combination equal to stacked (b_j ; b_j)
    Vec target(2 * k * k);
    for (long j = 0; j < k; ++j) {
      Vec ej = Vec::Unit(k, j);
      target.segment(j * k, k) = ej;
      target.segment(k * k + j * k, k) = ej;
    }
    auto sol = solve(system, target);
    if (!sol) throw std::invalid_argument("subalgebra has no unit");
    sub.unit = *sol;
  }
  return sub;
}

std::string to_string(BlockKind k) {
  switch (k) {
    case BlockKind::MatrixOsp: return "matrix-osp";
    case BlockKind::MatrixTrp: return "matrix-trp";
    case BlockKind::PairExchange: return "pair-exchange";
    case BlockKind::QPairExchange: return "q-pair-exchange";
  }
  return "?";
}

namespace {

// superinvolution check on a subalgebra view
bool subalg_superinvolution(const SuperAlgebra& alg, const SubAlg& sub, const Mat& f) {
  const long k = sub.basis.rows();
  if (!mat_equal(f * f, Mat(Mat::Identity(k, k)))) return false;
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) {
      Vec lhs = f * sub.mul(alg, Vec(Vec::Unit(k, i)), Vec(Vec::Unit(k, j)));
      Vec rhs = sub.mul(alg, Vec(f.col(j)), Vec(f.col(i)));
      if (sub.parity[i] && sub.parity[j]) rhs = -rhs;
      if (!mat_equal(Mat(lhs), Mat(rhs))) return false;
    }
  return true;
}

struct BlockFingerprint {
  long dim_even = 0, dim_odd = 0;
  long sym_even = 0, sym_odd = 0;  // phi-fixed dimensions by parity
};

BlockFingerprint fingerprint(const SuperAlgebra&, const SubAlg& sub, const Mat& f) {
  BlockFingerprint fp;
  const long k = sub.basis.rows();
  for (int p : sub.parity) (p ? fp.dim_odd : fp.dim_even)++;
  Mat shifted = f - Mat::Identity(k, k);
  Mat fixed = kernel_basis(shifted);
  // split the fixed space by parity
  Mat evens = Mat::Zero(k, k), odds = Mat::Zero(k, k);
  long ne = 0, no = 0;
  for (long i = 0; i < k; ++i)
    if (sub.parity[i] == 0)
      evens(ne++, i) = Cyclo(1);
    else
      odds(no++, i) = Cyclo(1);
  Subspace fix = Subspace::span(fixed, k);
  fp.sym_even = fix.intersect(Subspace::span(evens.topRows(ne), k)).dim();
  fp.sym_odd = fix.intersect(Subspace::span(odds.topRows(no), k)).dim();
  return fp;
}

BlockFingerprint canonical_fingerprint(long a, long b, CanonicalMapKind kind) {
  SuperAlgebra model = SuperAlgebra::matrix_super(a, b);
  SuperMap f = apply_canonical_map_builder(model, kind);
  SubAlg sub = make_subalgebra(model, Subspace::full(model.dim()));
  return fingerprint(model, sub, sub.restrict_map(model, f.action));
}

Mat canonical_s_matrix(BlockKind kind, long s, long r) {
  switch (kind) {
    case BlockKind::MatrixOsp: {
      Mat m = Mat::Zero(s + 2 * r, s + 2 * r);
      for (long i = 0; i < s; ++i) m(i, i) = Cyclo(1);
      for (long i = 0; i < r; ++i) {
        m(s + i, s + r + i) = Cyclo(1);
        m(s + r + i, s + i) = Cyclo(-1);
      }
      return m;
    }
    case BlockKind::MatrixTrp: {
      Mat m = Mat::Zero(2 * s, 2 * s);
      for (long i = 0; i < s; ++i) {
        m(i, s + i) = Cyclo(1);
        m(s + i, i) = Cyclo(1);
      }
      return m;
    }
    case BlockKind::PairExchange: {
      Mat m = Mat::Zero(2 * s, 2 * s);
      for (long i = 0; i < s; ++i) {
        m(i, s + i) = Cyclo(1);
        m(s + i, i) = Cyclo(1);
      }
      return m;
    }
    case BlockKind::QPairExchange: {
      Mat m = Mat::Zero(4 * s, 4 * s);
      for (long i = 0; i < 2 * s; ++i) {
        m(i, 2 * s + i) = Cyclo(1);
        m(2 * s + i, i) = Cyclo(1);
      }
      return m;
    }
  }
  throw std::logic_error("unknown block kind");
}

}  // namespace

IdentityDecomposition identity_decomposition(const SuperAlgebra& alg,
                                             const Grading& grading,
                                             const SuperMap& phi) {
  if (!grading_stable_under(grading, phi.action))
    throw DecompositionError("phi does not preserve every grading component");
  const Subspace& re = grading.component_at(grading.identity_index());
  if (re.is_zero()) throw DecompositionError("identity component is zero");
  SubAlg sub = make_subalgebra(alg, re);
  Mat phi_sub = sub.restrict_map(alg, phi.action);
  if (!subalg_superinvolution(alg, sub, phi_sub))
    throw DecompositionError("phi does not restrict to a superinvolution on R_e");

  IdentityDecomposition out;
  AlgebraOps ops = sub.ops(alg);
  std::vector<Vec> fine = central_primitive_idempotents(ops);
  for (const auto& f : fine) out.fine_idempotents.push_back(sub.to_ambient(f));

  // Stage 1: sigma-orbits of the fine idempotents give the sigma-stable
  // super-blocks.  (sigma permutes them since it is an automorphism.)
  Mat sigma_sub = sub.restrict_map(alg, parity_map(alg).action);
  auto locate_fine = [&](const Vec& v) {
    for (size_t i = 0; i < fine.size(); ++i)
      if (mat_equal(Mat(fine[i]), Mat(v))) return static_cast<long>(i);
    throw DecompositionError("sigma does not permute the central idempotents");
  };
  std::vector<long> parent(fine.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<long(long)> find = [&](long x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto unite = [&](long a, long b) { parent[find(a)] = find(b); };
  for (size_t i = 0; i < fine.size(); ++i) unite(i, locate_fine(sigma_sub * fine[i]));
  std::vector<std::vector<long>> super_orbits;
  for (size_t root = 0; root < fine.size(); ++root) {
    if (find(root) != static_cast<long>(root)) continue;
    std::vector<long> orbit;
    for (size_t i = 0; i < fine.size(); ++i)
      if (find(i) == static_cast<long>(root)) orbit.push_back(i);
    super_orbits.push_back(orbit);
  }
  // Stage 2: phi permutes the super-block units (phi maps sigma-stable
  // minimal ideals to sigma-stable minimal ideals; the fine idempotents may
  // be parity-mixed, so phi need not permute them individually).
  std::vector<Vec> super_units;
  for (const auto& orbit : super_orbits) {
    Vec e = Vec::Zero(sub.basis.rows());
    for (long i : orbit) e += fine[i];
    super_units.push_back(e);
  }
  auto locate_super = [&](const Vec& v) {
    for (size_t i = 0; i < super_units.size(); ++i)
      if (mat_equal(Mat(super_units[i]), Mat(v))) return static_cast<long>(i);
    throw DecompositionError("phi does not permute the super-block idempotents");
  };
  std::vector<long> sparent(super_units.size());
  std::iota(sparent.begin(), sparent.end(), 0);
  std::function<long(long)> sfind = [&](long x) {
    return sparent[x] == x ? x : sparent[x] = sfind(sparent[x]);
  };
  std::vector<long> phi_image(super_units.size());
  for (size_t i = 0; i < super_units.size(); ++i) {
    phi_image[i] = locate_super(phi_sub * super_units[i]);
    sparent[sfind(i)] = sfind(phi_image[i]);
  }
  std::vector<std::vector<long>> blocks_of_super;
  for (size_t root = 0; root < super_units.size(); ++root) {
    if (sfind(root) != static_cast<long>(root)) continue;
    std::vector<long> members;
    for (size_t i = 0; i < super_units.size(); ++i)
      if (sfind(i) == static_cast<long>(root)) members.push_back(i);
    blocks_of_super.push_back(members);
  }

  for (const auto& members : blocks_of_super) {
    IdentityBlock block;
    Vec e = Vec::Zero(sub.basis.rows());
    long nfine = 0;
    for (long i : members) {
      e += super_units[i];
      nfine += static_cast<long>(super_orbits[i].size());
    }
    const long nsup = static_cast<long>(members.size());
    block.idempotent = sub.to_ambient(e);
    // block = e R_e (two-sided ideal of R_e for central e)
    std::vector<Vec> gens;
    for (long j = 0; j < sub.basis.rows(); ++j)
      gens.push_back(sub.to_ambient(sub.mul(alg, e, Vec(Vec::Unit(sub.basis.rows(), j)))));
    block.space = Subspace::span_of(gens, alg.dim());
    SubAlg bsub = make_subalgebra(alg, block.space);
    Mat phi_block = bsub.restrict_map(alg, phi.action);
    BlockFingerprint fp = fingerprint(alg, bsub, phi_block);
    const long bdim = block.space.dim();

    if (nsup == 1 && nfine == 1) {
      // simple block: matrix superalgebra with osp or trp superinvolution
      long t = 0;
      while (t * t < bdim) ++t;
      if (t * t != bdim) throw DecompositionError("simple block of non-square dimension");
      bool matched = false;
      for (long a = 0; a <= t && !matched; ++a) {
        long b = t - a;
        if (a * a + b * b != fp.dim_even) continue;
        if (a == b && a > 0) {
          BlockFingerprint cf = canonical_fingerprint(a, b, CanonicalMapKind::Trp);
          if (cf.sym_even == fp.sym_even && cf.sym_odd == fp.sym_odd) {
            block.kind = BlockKind::MatrixTrp;
            block.s = a;
            block.r = 0;
            matched = true;
            break;
          }
        }
        if (b % 2 == 0 && !matched) {
          BlockFingerprint cf = canonical_fingerprint(a, b, CanonicalMapKind::Osp);
          if (cf.sym_even == fp.sym_even && cf.sym_odd == fp.sym_odd) {
            block.kind = BlockKind::MatrixOsp;
            block.s = a;
            block.r = b / 2;
            matched = true;
            break;
          }
        }
      }
      if (!matched)
        throw DecompositionError("simple block does not match the osp/trp catalog");
    } else if (nsup == 1 && nfine == 2) {
      throw DecompositionError(
          "block of Q-type: a simple superalgebra Q(s) cannot carry a superinvolution");
    } else if (nsup == 2 && nfine == 2) {
      long half = bdim / 2;
      long w = 0;
      while (w * w < half) ++w;
      if (w * w != half || 2 * half != bdim)
        throw DecompositionError("pair block of unexpected dimension");
      block.kind = BlockKind::PairExchange;
      block.s = w;
      block.r = 0;
    } else if (nsup == 2 && nfine == 4) {
      long w2 = bdim / 4;  // = s^2 per fine piece
      long s = 0;
      while (s * s < w2) ++s;
      if (s * s != w2) throw DecompositionError("q-pair block of unexpected dimension");
      block.kind = BlockKind::QPairExchange;
      block.s = s;
      block.r = 0;
    } else {
      throw DecompositionError("block with unrecognized idempotent pattern (" +
                               std::to_string(nsup) + " super-blocks, " +
                               std::to_string(nfine) + " fine idempotents)");
    }
    block.s_canonical = canonical_s_matrix(block.kind, block.s, block.r);
    out.blocks.push_back(std::move(block));
  }

  if (alg.kind() == SuperAlgebra::Kind::MatrixSuper) {
    const long size = alg.n() + alg.m();
    SuperMap tau = apply_canonical_map_builder(alg, CanonicalMapKind::Tau);
    std::vector<std::pair<Mat, Mat>> full_pairs, re_pairs;
    for (long i = 0; i < alg.dim(); ++i) {
      Vec x = alg.basis_element(i);
      full_pairs.emplace_back(alg.to_matrix(apply(phi, x)), alg.to_matrix(apply(tau, x)));
    }
    for (long i = 0; i < re.dim(); ++i) {
      Vec x = re.basis_vector(i);
      re_pairs.emplace_back(alg.to_matrix(apply(phi, x)), alg.to_matrix(apply(tau, x)));
    }
    out.phi_matrix = solve_intertwiner(full_pairs, size);
    out.s_matrix = solve_intertwiner(re_pairs, size);
    if (out.phi_matrix)
      out.notes.push_back("phi = X -> Phi^-1 X^tau Phi verified on the full algebra");
    if (out.s_matrix)
      out.notes.push_back("phi|R_e = X -> S^-1 X^tau S verified on the identity component");
  } else {
    out.notes.push_back(
        "ambient algebra is not MatrixSuper; S/Phi tau-forms reported per block only");
  }
  return out;
}

namespace {

bool verify_root(const SuperAlgebra& alg, const Grading& grading, const SuperMap& phi,
                 const SuperMap& psi, long k) {
  if (!check_super_map(alg, psi, SuperMap::Claim::Automorphism).ok) return false;
  if (!grading_stable_under(grading, psi.action)) return false;
  if (!mat_equal(psi.action * phi.action, phi.action * psi.action)) return false;
  return mat_equal(mat_pow(psi.action, k), mat_pow(phi.action, k));
}

// all k-th roots of c, allowing field enlargement; returns (roots, order)
std::pair<std::vector<Cyclo>, long> scalar_roots(const Cyclo& c, long k, long field_order) {
  auto in_field = nth_roots_in_field(c, k, field_order);
  if (!in_field.empty()) return {in_field, field_order};
  auto lifted = nth_root_enlarging(c, k);
  if (!lifted) return {{}, field_order};
  return {nth_roots_in_field(c.promoted(lifted->order), k, lifted->order), lifted->order};
}

}  // namespace

SuperMap find_commuting_root(const SuperAlgebra& alg, const SuperMap& phi,
                             const Grading& grading, RootMode mode,
                             RootSearchReport* report) {
  const long k = mode == RootMode::Square ? 2 : 4;
  RootSearchReport local;
  RootSearchReport& rep = report ? *report : local;
  if (mode == RootMode::Square &&
      (alg.kind() != SuperAlgebra::Kind::MatrixSuper || alg.m() != 0))
    throw std::invalid_argument(
        "square mode requires an ordinary matrix algebra (trivial super structure)");
  if (!grading_stable_under(grading, phi.action))
    throw std::invalid_argument("phi does not preserve the grading");

  auto attempt = [&](const SuperMap& psi, const std::string& name) -> bool {
    if (verify_root(alg, grading, phi, psi, k)) {
      rep.notes.push_back("verified root: " + name);
      return true;
    }
    return false;
  };

  // 1. identity, then even powers of phi (automorphisms commuting with phi)
  SuperMap id = identity_map(alg);
  if (attempt(id, "identity")) return id;
  for (long e = 2; e <= 24; e += 2) {
    SuperMap cand = map_power(phi, e);
    if (attempt(cand, "phi^" + std::to_string(e))) return cand;
  }
  // 1b. phi itself, when phi is an automorphism
  if (check_super_map(alg, phi, SuperMap::Claim::Automorphism).ok) {
    if (attempt(phi, "phi")) return phi;
    if (alg.kind() == SuperAlgebra::Kind::PairSop) {
      auto dec = decompose_pair_map(alg, phi);
      if (dec.map_type == 2) {
        // base antiautomorphism: lift a commuting root of it (type 1)
        Grading base_trivial = trivial_grading(
            alg.base(), grading.is_group_indexed() ? grading.group() : AbGroup({1}));
        try {
          SuperMap psi0 =
              find_commuting_root(alg.base(), dec.phi0, base_trivial, mode, nullptr);
          SuperMap psi = pair_lift_type1(alg, psi0);
          if (attempt(psi, "type-1 lift of base root")) return psi;
        } catch (const std::exception&) {
        }
      }
    }
  }

  // 2. structured construction on matrix superalgebras
  if (alg.kind() == SuperAlgebra::Kind::MatrixSuper &&
      check_super_map(alg, phi, SuperMap::Claim::Superantiautomorphism).ok) {
    try {
      IdentityDecomposition idd = identity_decomposition(alg, grading, phi);
      const long size = alg.n() + alg.m();
      // P with phi^k = X -> P^-1 X P
      Mat phik = mat_pow(phi.action, k);
      std::vector<std::pair<Mat, Mat>> pairs;
      for (long i = 0; i < alg.dim(); ++i) {
        Vec x = alg.basis_element(i);
        pairs.emplace_back(alg.to_matrix(Vec(phik * x)), alg.to_matrix(x));
      }
      auto p_opt = solve_intertwiner(pairs, size);
      if (p_opt) {
        // express P over the fine central idempotents of R_e
        std::vector<Mat> fj;
        for (const auto& f : idd.fine_idempotents) fj.push_back(alg.to_matrix(f));
        Mat coords(size * size, static_cast<long>(fj.size()));
        for (size_t j = 0; j < fj.size(); ++j) coords.col(static_cast<long>(j)) = flatten(fj[j]);
        auto cs = solve(coords, flatten(*p_opt));
        if (cs) {
          // normalization candidates: divide by each nonzero piece scalar
          for (long norm = 0; norm < static_cast<long>(fj.size()); ++norm) {
            if ((*cs)(norm).is_zero()) continue;
            std::vector<std::vector<Cyclo>> per_piece;
            long order_used = 0;
            bool feasible = true;
            for (long j = 0; j < static_cast<long>(fj.size()) && feasible; ++j) {
              Cyclo cj = (*cs)(j) / (*cs)(norm);
              long base_order = lcm_long(
                  grading.is_group_indexed() ? grading.group().ambient_order() : 4,
                  cj.order());
              auto [roots, used] = scalar_roots(cj, k, base_order);
              if (roots.empty()) feasible = false;
              per_piece.push_back(roots);
              order_used = std::max(order_used, used);
            }
            if (!feasible) continue;
            // enumerate combinations
            std::vector<size_t> sel(fj.size(), 0);
            while (true) {
              Mat t = Mat::Zero(size, size);
              for (size_t j = 0; j < fj.size(); ++j)
                t += fj[j] * per_piece[j][sel[j]].promoted(
                                 order_used % per_piece[j][sel[j]].order() == 0
                                     ? order_used
                                     : per_piece[j][sel[j]].order());
              if (is_invertible(t)) {
                SuperMap psi = conjugation_map(alg, t);
                if (attempt(psi, "block-scalar k-th root of P")) {
                  rep.enlarged_order = order_used;
                  return psi;
                }
              }
              size_t pos = 0;
              while (pos < sel.size() && sel[pos] + 1 == per_piece[pos].size())
                sel[pos++] = 0;
              if (pos == sel.size()) break;
              ++sel[pos];
            }
          }
        }
      }
    } catch (const std::exception& e) {
      rep.notes.push_back(std::string("structured path unavailable: ") + e.what());
    }
  }

  // 3. fallback: exhaustive root-of-unity block scalars over R_e idempotents
  if (alg.kind() == SuperAlgebra::Kind::MatrixSuper) {
    try {
      SubAlg sub = make_subalgebra(alg, grading.component_at(grading.identity_index()));
      std::vector<Vec> fine = central_primitive_idempotents(sub.ops(alg));
      std::vector<Mat> fj;
      for (const auto& f : fine) fj.push_back(alg.to_matrix(sub.to_ambient(f)));
      const long nroots = grading.is_group_indexed()
                              ? grading.group().ambient_order()
                              : 4;
      std::vector<Cyclo> units;
      for (long t = 0; t < nroots; ++t) units.push_back(Cyclo::zeta(nroots, t));
      std::vector<size_t> sel(fj.size(), 0);
      const long size = alg.n() + alg.m();
      while (true) {
        Mat t = Mat::Zero(size, size);
        for (size_t j = 0; j < fj.size(); ++j) t += fj[j] * units[sel[j]];
        if (is_invertible(t)) {
          SuperMap psi = conjugation_map(alg, t);
          if (attempt(psi, "exhaustive block-scalar search")) return psi;
        }
        size_t pos = 0;
        while (pos < sel.size() && sel[pos] + 1 == units.size()) sel[pos++] = 0;
        if (pos == sel.size()) break;
        ++sel[pos];
      }
    } catch (const std::exception& e) {
      rep.notes.push_back(std::string("fallback unavailable: ") + e.what());
    }
  }

  std::string detail;
  for (const auto& n : rep.notes) detail += "; " + n;
  throw RootNotFoundError("no commuting root found within the parameterized family" +
                          detail);
}

bool fine_antiauto_obstruction(const SuperAlgebra& alg, const Grading& grading,
                               ObstructionReport* out) {
  ObstructionReport local;
  ObstructionReport& rep = out ? *out : local;
  rep.notes.push_back(
      "assumption: superantiautomorphisms parameterized as tau-conjugates "
      "X -> Phi^-1 X^tau Phi with Phi invertible homogeneous");
  if (alg.kind() != SuperAlgebra::Kind::MatrixSuper)
    throw AlgebraMismatchError("obstruction check needs a matrix superalgebra");
  for (long i = 0; i < grading.index_size(); ++i)
    if (grading.component_at(i).dim() > 1)
      throw std::invalid_argument("grading is not fine");
  auto check = verify_grading(alg, grading);
  if (!check.ok)
    throw std::invalid_argument("obstruction check requires a valid grading: " +
                                check.violations[0]);
  const AbGroup& g = grading.group();
  const long size = alg.n() + alg.m();
  const long field = g.ambient_order();
  SuperMap tau = apply_canonical_map_builder(alg, CanonicalMapKind::Tau);

  // homogeneous component data
  std::vector<long> support = grading.support();
  std::vector<Mat> v(grading.index_size());
  std::vector<int> par(grading.index_size(), 0);
  for (long idx : support) {
    Vec vec = grading.component_at(idx).basis_vector(0);
    v[idx] = alg.to_matrix(vec);
    if (!is_invertible(v[idx]))
      throw std::invalid_argument(
          "fine component is not spanned by an invertible element");
    for (long i = 0; i < alg.dim(); ++i)
      if (!vec(i).is_zero()) par[idx] = alg.parity(i);
  }
  auto in_support = [&](long idx) {
    return std::find(support.begin(), support.end(), idx) != support.end();
  };
  // structure scalar: v_a v_b = s v_{ab}
  auto structure_scalar = [&](long a, long b) -> Cyclo {
    long ab = grading.mul_index(a, b);
    if (!in_support(ab)) throw std::logic_error("support is not closed");
    auto s = scalar_ratio(v[a] * v[b], v[ab]);
    if (!s || s->is_zero()) throw std::logic_error("fine components do not multiply by scalars");
    return *s;
  };
  // c_{ab} = koszul * (s'/s) * c_a c_b, where v_a v_b = s v_{ab}, v_b v_a = s' v_{ab}
  auto relation_factor = [&](long a, long b) {
    Cyclo s = structure_scalar(a, b);
    Cyclo sp = structure_scalar(b, a);
    Cyclo f = sp / s;
    if (par[a] && par[b]) f = -f;
    return f;
  };

  const long e_idx = grading.identity_index();
  // per-generator scalar candidates from the cyclic relation c_gen^order = 1/K
  std::vector<long> gen_idx;
  std::vector<std::vector<Cyclo>> gen_cands;
  for (size_t i = 0; i < g.ngens(); ++i) {
    if (g.factors()[i] == 1) continue;
    long gi = g.index_of(g.gen(i));
    if (!in_support(gi)) throw std::logic_error("generator not in support");
    Cyclo acc(1);
    long cur = e_idx;
    for (long step = 0; step < g.factors()[i]; ++step) {
      acc *= relation_factor(cur, gi);
      cur = grading.mul_index(cur, gi);
    }
    // c_e = acc * c_gen^order  =>  c_gen^order = acc^{-1}
    auto mono = monomial_form(acc.promoted(field % acc.order() == 0 ? field : acc.order()));
    if (!mono || abs(mono->first) != 1)
      throw std::logic_error("cannot enumerate scalar candidates exactly");
    auto cands = nth_roots_in_field(acc.inverse(), g.factors()[i], field);
    if (cands.empty()) {
      rep.notes.push_back("generator " + std::to_string(i) +
                          " admits no scalar in the field: obstructed");
      rep.obstructed = true;
      if (out) *out = rep;
      return true;
    }
    gen_idx.push_back(gi);
    gen_cands.push_back(cands);
  }

  rep.unknowns = size * size;
  std::vector<size_t> sel(gen_idx.size(), 0);
  bool found = false;
  while (!found) {
    ++rep.scalar_candidates;
    // BFS assignment of c over the support
    std::vector<std::optional<Cyclo>> c(grading.index_size());
    c[e_idx] = Cyclo(1);
    bool progress = true;
    while (progress) {
      progress = false;
      for (long idx = 0; idx < grading.index_size(); ++idx) {
        if (!c[idx]) continue;
        for (size_t t = 0; t < gen_idx.size(); ++t) {
          long next = grading.mul_index(idx, gen_idx[t]);
          if (c[next]) continue;
          c[next] = relation_factor(idx, gen_idx[t]) * (*c[idx]) * gen_cands[t][sel[t]];
          progress = true;
        }
      }
    }
    bool consistent = true;
    for (long a : support)
      for (long b : support) {
        if (!c[a] || !c[b] || !c[grading.mul_index(a, b)]) {
          consistent = false;
          break;
        }
        Cyclo expect = relation_factor(a, b) * (*c[a]) * (*c[b]);
        if (expect != *c[grading.mul_index(a, b)]) consistent = false;
      }
    if (consistent) {
      // linear system for Phi: tau(V_g) Phi = c_g Phi V_g, Phi homogeneous
      std::vector<Mat> blocks;
      for (long idx : support) {
        Mat tvg = alg.to_matrix(apply(tau, alg.from_matrix(v[idx])));
        blocks.push_back(lmul_op(tvg) - rmul_op(v[idx]) * (*c[idx]));
      }
      for (int want_parity = 0; want_parity <= 1; ++want_parity) {
        std::vector<long> banned;  // coordinates that must vanish
        for (long i = 0; i < size; ++i)
          for (long j = 0; j < size; ++j) {
            int p = (i < alg.n() ? 0 : 1) ^ (j < alg.n() ? 0 : 1);
            if (p != want_parity) banned.push_back(i * size + j);
          }
        if (static_cast<long>(banned.size()) == size * size) continue;
        Mat system(static_cast<long>(blocks.size()) * size * size +
                       static_cast<long>(banned.size()),
                   size * size);
        long row = 0;
        for (const auto& b : blocks) {
          system.block(row, 0, size * size, size * size) = b;
          row += size * size;
        }
        for (long idx : banned) {
          system.row(row).setZero();
          system(row, idx) = Cyclo(1);
          ++row;
        }
        rep.constraint_rows = std::max(rep.constraint_rows, row);
        Mat ker = kernel_basis(system);
        std::vector<Mat> cands;
        for (long i = 0; i < ker.rows(); ++i)
          cands.push_back(unflatten(ker.row(i).transpose(), size, size));
        auto phi_mat = find_invertible_in_span(cands);
        if (phi_mat) {
          SuperMap candidate = tau_conjugate_map(alg, *phi_mat);
          if (check_super_map(alg, candidate, SuperMap::Claim::Superantiautomorphism).ok &&
              grading_stable_under(grading, candidate.action)) {
            rep.notes.push_back("preserving superantiautomorphism found (parity " +
                                std::to_string(want_parity) + " conjugator)");
            found = true;
            break;
          }
        }
      }
    }
    if (found) break;
    size_t pos = 0;
    while (pos < sel.size() && sel[pos] + 1 == gen_cands[pos].size()) sel[pos++] = 0;
    if (pos == sel.size()) break;
    ++sel[pos];
  }
  rep.obstructed = !found;
  if (out) *out = rep;
  return rep.obstructed;
}

}  // namespace supergrade
