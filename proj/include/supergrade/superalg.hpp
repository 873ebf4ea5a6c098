#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "supergrade/linalg.hpp"

namespace supergrade {

struct AlgebraMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Finite-dimensional associative superalgebra with a fixed homogeneous
/// basis, described by its structure constants and a parity assignment.
/// Elements are coordinate vectors (Vec) in the flattened basis.
///
/// Flattening conventions: matrices are row-major; in a pair algebra the
/// first component precedes the second; in Q(n) the X part precedes tY.
class SuperAlgebra {
 public:
  enum class Kind { MatrixSuper, QType, PairSop, DirectSum };

  /// Empty placeholder; assign a real algebra from a named constructor.
  SuperAlgebra() = default;

  /// M_{n,m}(F): full (n+m)x(n+m) matrices, deg E_ij even iff i,j are on
  /// the same side of the (n|m) split.
  static SuperAlgebra matrix_super(long n, long m);
  /// Q(n) = A + tA, A = M_n(F), t^2 = 1, odd part tA.
  static SuperAlgebra q_type(long n);
  /// base + base^sop with the twisted second-coordinate product.
  static SuperAlgebra pair_sop(const SuperAlgebra& base);
  /// Plain direct sum of two superalgebras (test/diagnostic constructions).
  static SuperAlgebra direct_sum(const SuperAlgebra& a, const SuperAlgebra& b);

  Kind kind() const { return kind_; }
  long n() const { return n_; }
  long m() const { return m_; }
  const SuperAlgebra& base() const;    // PairSop
  const SuperAlgebra& left() const;    // DirectSum
  const SuperAlgebra& right() const;   // DirectSum

  long dim() const { return dim_; }
  int parity(long basis_index) const { return parity_[basis_index]; }
  const std::vector<int>& parities() const { return parity_; }

  Vec mul(const Vec& x, const Vec& y) const;
  Vec unit() const;
  Vec basis_element(long i) const;
  std::string basis_label(long i) const;
  std::string describe() const;

  bool same_structure(const SuperAlgebra& other) const;

  // MatrixSuper element <-> (n+m)x(n+m) matrix
  Mat to_matrix(const Vec& v) const;
  Vec from_matrix(const Mat& m) const;
  // QType element <-> (X, Y) pair of nxn matrices
  std::pair<Mat, Mat> to_xy(const Vec& v) const;
  Vec from_xy(const Mat& x, const Mat& y) const;
  // PairSop / DirectSum element <-> component vectors
  std::pair<Vec, Vec> split_pair(const Vec& v) const;
  Vec join_pair(const Vec& a, const Vec& b) const;

 private:
  Kind kind_ = Kind::MatrixSuper;
  long n_ = 0, m_ = 0;
  long dim_ = 0;
  std::vector<int> parity_;
  std::shared_ptr<const SuperAlgebra> base_, right_;
  // structure constants: product of basis i and j is sum of coeff * basis k
  std::vector<std::vector<std::vector<std::pair<long, Rational>>>> table_;
};

/// Linear operator on a superalgebra, stored as its full action matrix on
/// the flattened basis (columns = images of basis elements).
struct SuperMap {
  enum class Claim { Unchecked, Automorphism, Superantiautomorphism, Superinvolution };
  Mat action;
  Claim claimed = Claim::Unchecked;
};

SuperMap identity_map(const SuperAlgebra& alg);
SuperMap map_from_function(const SuperAlgebra& alg,
                           const std::function<Vec(const Vec&)>& fn,
                           SuperMap::Claim claim = SuperMap::Claim::Unchecked);
SuperMap compose(const SuperMap& f, const SuperMap& g);  // f after g
SuperMap map_power(const SuperMap& f, long k);
SuperMap map_inverse(const SuperMap& f);
bool map_equal(const SuperMap& f, const SuperMap& g);
Vec apply(const SuperMap& f, const Vec& v);

/// sigma: identity on the even part, -identity on the odd part.
SuperMap parity_map(const SuperAlgebra& alg);

enum class CanonicalMapKind { Osp, Trp, Exchange, Tau };

/// The canonical maps of the three families:
///  - Osp on M_{r,2s}: X -> J^{-1} (negate top-right block of X)^t J with
///    J = diag(I_r, [[0, I_s], [-I_s, 0]]).
///  - Trp on M_{r,r}: (X,Y;Z,T) -> (T^t, -Y^t; Z^t, X^t).
///  - Exchange on pair algebras: (a,b) -> (b,a).
///  - Tau on M_{n,m}: X -> (negate top-right block of X)^t.
SuperMap apply_canonical_map_builder(const SuperAlgebra& alg, CanonicalMapKind kind);
Vec apply_canonical_map(const SuperAlgebra& alg, CanonicalMapKind kind, const Vec& x);

/// Plain entrywise transpose on MatrixSuper (not a superinvolution when the
/// odd part is nontrivial; kept as a counterexample generator).
SuperMap plain_transpose_map(const SuperAlgebra& alg);

/// X -> T^{-1} X T on MatrixSuper.
SuperMap conjugation_map(const SuperAlgebra& alg, const Mat& t);
/// X -> Phi^{-1} X^tau Phi on MatrixSuper.
SuperMap tau_conjugate_map(const SuperAlgebra& alg, const Mat& phi);
/// Lift a base map to the pair algebra: (x,y) -> (f0 x, f0 y).
SuperMap pair_lift_type1(const SuperAlgebra& pair_alg, const SuperMap& f0);
/// (x,y) -> (f0 y, f0 x).
SuperMap pair_lift_type2(const SuperAlgebra& pair_alg, const SuperMap& f0);
/// On Q(n): X + tY -> psi0(X) + unit * t * psi0(Y); psi0 acts on M_n.
SuperMap q_lift(const SuperAlgebra& q_alg, const Mat& psi0_action, const Cyclo& unit);
/// Componentwise map on a direct sum.
SuperMap direct_sum_map(const SuperAlgebra& sum_alg, const SuperMap& f, const SuperMap& g);

struct MapCheckWitness {
  long i = -1, j = -1;  // basis indices involved (-1 when not applicable)
  std::string reason;
};

struct MapCheckReport {
  bool ok = false;
  std::vector<MapCheckWitness> witnesses;
};

/// Verifies the claimed identities on all homogeneous basis pairs:
/// automorphism f(xy) = f(x)f(y); superantiautomorphism
/// f(xy) = (-1)^{|x||y|} f(y)f(x); superinvolution additionally f o f = id.
/// Parity preservation and invertibility are checked first.
MapCheckReport check_super_map(const SuperAlgebra& alg, const SuperMap& f,
                               SuperMap::Claim claim);

/// Product function + unit for subalgebra-style computations.
struct AlgebraOps {
  long dim = 0;
  std::function<Vec(const Vec&, const Vec&)> mul;
  Vec unit;
};
AlgebraOps full_algebra_ops(const SuperAlgebra& alg);

/// Pairwise-orthogonal idempotents summing to the unit, one per Wedderburn
/// block of the (split semisimple) algebra.  Works by eigenvalue splitting
/// of a separating central element; eigenvalues are located among rationals
/// and rational multiples of roots of unity in Q(zeta_field_order).  Throws
/// when the center does not split there.
std::vector<Vec> central_primitive_idempotents(const AlgebraOps& ops,
                                               long field_order = 4);

/// Basis of the center as a subspace of the algebra.
Subspace center_subspace(const AlgebraOps& ops);

struct SimplicityReport {
  bool simple = false;
  std::string witness;  // description of a proper stable ideal when found
  Subspace ideal;       // the offending ideal (when !simple)
};

/// Involution simplicity: R^2 != 0 and no proper nonzero Z2-graded *-stable
/// ideal.  Decided by closing each central primitive idempotent and each
/// basis element under left/right basis multiplication, * and sigma.
SimplicityReport involution_simple(const SuperAlgebra& alg, const SuperMap& star);

struct SuperinvolutionSearchResult {
  std::vector<SuperMap> found;
  bool exhaustive = false;  // true when nonexistence outside `found` is certified
  std::vector<std::string> notes;
};

/// Searches the canonical families for superinvolutions.  For QType with
/// n <= 2 an exhaustive constraint solve certifies global nonexistence:
/// any parity-preserving candidate splits as (psi0, psi1); psi1(I) must be
/// a central scalar lambda with lambda^2 = -1 while the involution law
/// forces lambda^2 = 1, and the scalar equations have no common solution.
SuperinvolutionSearchResult superinvolution_search(const SuperAlgebra& alg);

/// Smallest Z2-graded *-stable two-sided ideal containing the seed vectors.
Subspace star_ideal_closure(const SuperAlgebra& alg, const SuperMap& star,
                            const std::vector<Vec>& seeds);

}  // namespace supergrade
