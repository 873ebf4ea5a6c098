#pragma once

#include "supergrade/structure.hpp"

namespace supergrade {

struct ClassificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GradingType { I, II, III, QII };
std::string to_string(GradingType t);

/// A grading of A + A^sop (or Q(n) + Q(n)^sop) together with the parameters
/// of its classified form.  For QII the base data lives on B = M_n.
struct TypedGrading {
  GradingType type = GradingType::I;
  SuperAlgebra algebra;       // the pair algebra
  Grading grading;            // on the pair algebra
  SuperAlgebra base_algebra;  // A, or B = M_n for QII
  Grading base_grading;       // on base_algebra
  std::optional<SuperMap> dagger;  // on base_algebra
  std::optional<GroupElem> h;
  long lambda_index = 1;
  std::vector<std::string> notes;
};

/// R_g = A_g + A_g^sop.
TypedGrading build_type_I(const SuperAlgebra& pair_alg, const Grading& base);

/// R_g = {(x, x^dagger) : x in A_g} + {(x, -x^dagger) : x in A_{gh}},
/// o(h) = 2, dagger a base-graded superinvolution on A.
TypedGrading build_type_II(const SuperAlgebra& pair_alg, const Grading& base,
                           const SuperMap& dagger, const GroupElem& h);

/// The four-piece order-4 form: o(h) = 4, dagger a base-graded
/// superantiautomorphism with dagger^4 = id, dagger^2 != id; pieces are cut
/// by the +-eigenspaces of dagger^2.
TypedGrading build_type_III(const SuperAlgebra& pair_alg, const Grading& base,
                            const SuperMap& dagger, const GroupElem& h);

/// On Q(n) + Q(n)^sop: R_g = {(x,x^d) : x in B_g} + {(tx,-tx^d) : x in B_{gh}}
/// + {(x,-x^d) : x in B_{gh^2}} + {(tx,tx^d) : x in B_{gh^3}}, o(h) = 4,
/// dagger an ordinary involution on B = M_n preserving the base grading.
TypedGrading build_q_type_II(const SuperAlgebra& pair_alg, const Grading& base_on_b,
                             const SuperMap& dagger_on_b, const GroupElem& h);

/// The Z_4 = {1, i, -1, -i} grading of M_{n,m} + M_{n,m}^sop built literally
/// from its four defining components; equals the order-4 form with trivial
/// base, dagger = tau and h = -i (element (3) under the 0..3 -> 1,i,-1,-i
/// convention).
TypedGrading z4_example(long n = 1, long m = 1);

/// Maps a star-compatible grading of an involution-simple pair algebra back
/// to its classified form and parameters.  Character images are typed via
/// the pair/Q decompositions; the type-1 subgroup index discriminates the
/// branches, commuting-root construction recovers dagger, and every
/// candidate parameter tuple is accepted only after the rebuilt grading
/// matches the input exactly.
TypedGrading classify(const SuperAlgebra& pair_alg, const Grading& grading,
                      const SuperMap& exchange);

}  // namespace supergrade
