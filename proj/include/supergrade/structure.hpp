#pragma once

#include "supergrade/gradings.hpp"

namespace supergrade {

struct ExchangeHypothesisError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DecompositionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RootNotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExchangeResult {
  std::vector<SuperMap> gamma_gen_images;  // gamma(chi_i) = alpha(chi_i)^-1 beta(chi_i)
  std::vector<GroupElem> subgroup_h;       // H = Lambda^perp
  std::vector<std::pair<GroupElem, Subspace>> h_components;  // V^(h), h in H
  Grading first_grading;          // from alpha
  Grading second_grading;         // from beta
  Grading reconstructed_first;    // oplus_h (second_{gh} cap V^(h))
  Grading reconstructed_second;   // oplus_h (first_{gh} cap V^(h^-1))
  bool identities_hold = false;
};

/// The exchange engine: checks the hypotheses (alpha = beta on Lambda,
/// elementwise commuting images), builds gamma, H = Lambda^perp and the
/// eigenspaces V^(h), and verifies both reconstruction identities by exact
/// subspace arithmetic.
ExchangeResult exchange_decompose(const SuperAlgebra& alg, const ActionHom& alpha,
                                  const ActionHom& beta,
                                  const std::vector<Character>& lambda);

struct PairMapDecomposition {
  int map_type = 0;  // 1 or 2
  SuperMap phi0;     // on the base algebra
};

/// Splits an automorphism of A + A^sop commuting with the exchange
/// involution into (type 1) (x,y) -> (f0 x, f0 y) with f0 an automorphism,
/// or (type 2) (x,y) -> (f0 y, f0 x) with f0 a superantiautomorphism.
PairMapDecomposition decompose_pair_map(const SuperAlgebra& pair_alg,
                                        const SuperMap& phi);

struct QMapDecomposition {
  SuperMap psi0;  // action on M_n (the even part)
  Cyclo unit;     // +-1 for automorphisms, +-i for antiautomorphisms
};

/// On Q(n): psi(X + tY) = psi0(X) + unit * t * psi0(Y); the unit comes from
/// psi1(I) which must be a scalar matrix.
QMapDecomposition decompose_q_map(const SuperAlgebra& q_alg, const SuperMap& psi,
                                  SuperMap::Claim kind);

enum class BlockKind { MatrixOsp, MatrixTrp, PairExchange, QPairExchange };
std::string to_string(BlockKind k);

struct IdentityBlock {
  Subspace space;  // inside the ambient algebra
  Vec idempotent;  // central idempotent of R_e generating the block
  BlockKind kind = BlockKind::MatrixOsp;
  long s = 0, r = 0;  // canonical parameters (meaning depends on kind)
  Mat s_canonical;    // the canonical S_i for this kind, block-sized
};

struct IdentityDecomposition {
  std::vector<IdentityBlock> blocks;
  std::vector<Vec> fine_idempotents;  // central primitive idempotents of R_e
  std::optional<Mat> s_matrix;    // S with phi|R_e = X -> S^-1 X^tau S (MatrixSuper)
  std::optional<Mat> phi_matrix;  // Phi with phi = X -> Phi^-1 X^tau Phi (MatrixSuper)
  std::vector<std::string> notes;
};

/// Decomposes the identity component of a graded superalgebra under a
/// component-preserving antiautomorphism phi (whose restriction to R_e is a
/// superinvolution) into *-simple blocks, recognizing each block against
/// the involution-simple catalog and producing the canonical S data.
IdentityDecomposition identity_decomposition(const SuperAlgebra& alg,
                                             const Grading& grading,
                                             const SuperMap& phi);

enum class RootMode { Square, Fourth };

struct RootSearchReport {
  long enlarged_order = 0;  // nonzero when scalar roots required a larger field
  std::vector<std::string> notes;
};

/// Returns a grading-preserving automorphism psi with psi^k = phi^k
/// (k = 2 or 4) and psi phi = phi psi.  The structured construction via the
/// identity decomposition and block-scalar fourth roots is attempted first,
/// then an exhaustive search over block-scalar parameterizations; every
/// candidate is verified exactly before being returned.
SuperMap find_commuting_root(const SuperAlgebra& alg, const SuperMap& phi,
                             const Grading& grading, RootMode mode,
                             RootSearchReport* report = nullptr);

struct ObstructionReport {
  bool obstructed = false;
  long scalar_candidates = 0;
  long constraint_rows = 0;
  long unknowns = 0;
  std::vector<std::string> notes;
};

/// True iff no superantiautomorphism of the form X -> Phi^-1 X^tau Phi
/// preserves every component of the fine grading.  Decided exactly: the
/// component scalars form a projective character determined by the group
/// generators up to finitely many root-of-unity choices; each choice leaves
/// a linear system for Phi whose solution space is searched for an
/// invertible element (grid polynomial identity testing on det).
bool fine_antiauto_obstruction(const SuperAlgebra& alg, const Grading& grading,
                               ObstructionReport* out = nullptr);

/// Solve M f_t = g_t M over all listed pairs for an invertible M;
/// returns nullopt when the solution space has no invertible element.
std::optional<Mat> solve_intertwiner(const std::vector<std::pair<Mat, Mat>>& pairs,
                                     long size);

/// An invertible element of span(generators), or nullopt (exact decision by
/// determinant grid testing).
std::optional<Mat> find_invertible_in_span(const std::vector<Mat>& generators);

/// Subalgebra view: a multiplicatively closed homogeneous subspace with its
/// own coordinates, products, parity and unit.
struct SubAlg {
  Mat basis;                 // k x d rows, parity-homogeneous
  std::vector<int> parity;   // per row
  Vec unit;                  // in subalgebra coordinates
  long ambient_dim = 0;

  Vec to_sub(const SuperAlgebra& alg, const Vec& ambient) const;
  Vec to_ambient(const Vec& sub) const;
  Vec mul(const SuperAlgebra& alg, const Vec& a, const Vec& b) const;
  Mat restrict_map(const SuperAlgebra& alg, const Mat& ambient_action) const;
  AlgebraOps ops(const SuperAlgebra& alg) const;
};

/// Builds the view; throws if the subspace is not parity-split, not closed
/// under multiplication, or has no unit (the ambient unit must belong to it).
SubAlg make_subalgebra(const SuperAlgebra& alg, const Subspace& space);

}  // namespace supergrade
