#pragma once

#include <variant>

#include "supergrade/abgroup.hpp"
#include "supergrade/superalg.hpp"

namespace supergrade {

/// Decomposition of an algebra indexed by the elements of a finite abelian
/// group or of a finite semigroup table.  Components are stored
/// extensionally as canonical subspaces of the flattened algebra; every
/// index slot carries a (possibly zero) subspace.
class Grading {
 public:
  Grading() = default;
  static Grading over_group(AbGroup g, long ambient_dim);
  static Grading over_semigroup(SemigroupTable t, long ambient_dim);

  bool is_group_indexed() const { return std::holds_alternative<AbGroup>(index_); }
  const AbGroup& group() const;
  const SemigroupTable& semigroup() const;

  long index_size() const { return static_cast<long>(components_.size()); }
  long ambient_dim() const { return ambient_; }

  const Subspace& component_at(long idx) const { return components_.at(idx); }
  void set_component_at(long idx, Subspace s);
  const Subspace& component(const GroupElem& g) const;
  void set_component(const GroupElem& g, Subspace s);

  std::vector<long> support() const;
  long mul_index(long a, long b) const;
  /// Index of the identity; throws for semigroups without a declared one.
  long identity_index() const;
  bool has_identity_index() const;

  friend bool operator==(const Grading& a, const Grading& b);
  friend bool operator!=(const Grading& a, const Grading& b) { return !(a == b); }

 private:
  std::variant<AbGroup, SemigroupTable> index_ = AbGroup(std::vector<long>{});
  std::vector<Subspace> components_;
  long ambient_ = 0;
};

/// Homomorphism G^ -> Aut R given by the images of the coordinate
/// generators of the dual group.
struct ActionHom {
  AbGroup group;
  std::vector<SuperMap> gen_images;  // one per invariant factor
  Mat character_action(const Character& chi) const;
};

/// Throws unless every generator image is a parity-preserving automorphism,
/// the images commute pairwise, and image(chi_i)^{n_i} = id.
void validate_action(const SuperAlgebra& alg, const ActionHom& hom);

/// deg E_ij = g_i^{-1} g_j for the given tuple (on MatrixSuper).
Grading elementary_grading(const SuperAlgebra& alg, const AbGroup& g,
                           const std::vector<GroupElem>& tuple);

/// Everything in the identity component.
Grading trivial_grading(const SuperAlgebra& alg, const AbGroup& g);

/// Z_k x Z_k grading of a k x k matrix (super)algebra with components
/// span{ D^a P^b }, D = diag(1, zeta_k, ...), P the cyclic shift.
Grading pauli_fine_grading(const SuperAlgebra& alg);

/// Grading on C (x) D from an elementary grading on C = M_p and a fine
/// grading on D = M_q over the same group; deg(c (x) d) = deg c * deg d.
/// Returns the grading together with the ambient product algebra M_{pq}.
struct TensorGradingResult {
  SuperAlgebra algebra;
  Grading grading;
};
TensorGradingResult tensor_grading(const SuperAlgebra& alg_c, const Grading& elem,
                                   const SuperAlgebra& alg_d, const Grading& fine);

/// Reindex a grading along an injection of its group into a larger one:
/// factor i of the source lands in coordinate target_coords[i] of the
/// target (the factor sizes must match).
Grading embed_grading(const Grading& g, const AbGroup& target,
                      const std::vector<size_t>& target_coords);

/// R_g = intersection over generators chi of ker(alpha(chi) - chi(g) id).
Grading grading_of_action(const SuperAlgebra& alg, const ActionHom& alpha);

/// alpha(chi) acts as chi(g) id on each component.
ActionHom action_of_grading(const SuperAlgebra& alg, const Grading& grading);

struct GradingCheckReport {
  bool ok = false;
  std::vector<std::string> violations;
};

/// Checks (i) direct-sum spanning, (ii) R_g R_h within R_{gh} on basis
/// products, (iii) components parity-split, (iv) star-stability of every
/// component when a star map is supplied.
GradingCheckReport verify_grading(const SuperAlgebra& alg, const Grading& grading,
                                  const SuperMap* star = nullptr);

struct SupportReport {
  std::vector<long> support;
  bool commutes = false;
  std::optional<bool> all_invertible;  // empty when no identity is declared
  std::vector<std::string> notes;
};

/// Support commutation and invertibility conclusions for a star-compatible
/// grading of an involution-simple algebra; throws when the preconditions
/// fail.
SupportReport support_properties(const SuperAlgebra& alg, const Grading& grading,
                                 const SuperMap& star);

}  // namespace supergrade
