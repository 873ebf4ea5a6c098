#include "supergrade/gradings.hpp"

#include <algorithm>
#include <sstream>

namespace supergrade {

Grading Grading::over_group(AbGroup g, long ambient_dim) {
  Grading r;
  r.ambient_ = ambient_dim;
  r.components_.assign(g.order(), Subspace::zero(ambient_dim));
  r.index_ = std::move(g);
  return r;
}

Grading Grading::over_semigroup(SemigroupTable t, long ambient_dim) {
  t.validate();
  Grading r;
  r.ambient_ = ambient_dim;
  r.components_.assign(t.size, Subspace::zero(ambient_dim));
  r.index_ = std::move(t);
  return r;
}

const AbGroup& Grading::group() const {
  if (!is_group_indexed()) throw std::logic_error("grading is not group-indexed");
  return std::get<AbGroup>(index_);
}

const SemigroupTable& Grading::semigroup() const {
  if (is_group_indexed()) throw std::logic_error("grading is group-indexed");
  return std::get<SemigroupTable>(index_);
}

void Grading::set_component_at(long idx, Subspace s) {
  if (s.ambient_dim() != ambient_)
    throw DimensionMismatchError("component has wrong ambient dimension");
  components_.at(idx) = std::move(s);
}

const Subspace& Grading::component(const GroupElem& g) const {
  return components_.at(group().index_of(g));
}

void Grading::set_component(const GroupElem& g, Subspace s) {
  set_component_at(group().index_of(g), std::move(s));
}

std::vector<long> Grading::support() const {
  std::vector<long> out;
  for (long i = 0; i < index_size(); ++i)
    if (!components_[i].is_zero()) out.push_back(i);
  return out;
}

long Grading::mul_index(long a, long b) const {
  if (is_group_indexed()) {
    const AbGroup& g = group();
    return g.index_of(g.mul(g.element_at(a), g.element_at(b)));
  }
  return semigroup().mul(a, b);
}

bool Grading::has_identity_index() const {
  return is_group_indexed() || semigroup().identity.has_value();
}

long Grading::identity_index() const {
  if (is_group_indexed()) return group().index_of(group().identity());
  if (!semigroup().identity) throw std::logic_error("semigroup has no declared identity");
  return *semigroup().identity;
}

bool operator==(const Grading& a, const Grading& b) {
  if (a.ambient_ != b.ambient_ || a.index_size() != b.index_size()) return false;
  if (a.is_group_indexed() != b.is_group_indexed()) return false;
  if (a.is_group_indexed() && !(a.group() == b.group())) return false;
  for (long i = 0; i < a.index_size(); ++i)
    if (a.components_[i] != b.components_[i]) return false;
  return true;
}

Mat ActionHom::character_action(const Character& chi) const {
  group.validate(chi);
  if (gen_images.empty()) throw std::logic_error("action without generator images");
  const long d = gen_images[0].action.rows();
  Mat acc = Mat::Identity(d, d);
  for (size_t i = 0; i < group.ngens(); ++i)
    acc = acc * mat_pow(gen_images[i].action, chi.coords[i]);
  return acc;
}

void validate_action(const SuperAlgebra& alg, const ActionHom& hom) {
  if (hom.gen_images.size() != hom.group.ngens())
    throw std::invalid_argument("action must have one image per group generator");
  for (size_t i = 0; i < hom.gen_images.size(); ++i) {
    auto check = check_super_map(alg, hom.gen_images[i], SuperMap::Claim::Automorphism);
    if (!check.ok)
      throw std::invalid_argument("generator image " + std::to_string(i) +
                                  " is not an automorphism: " +
                                  (check.witnesses.empty() ? "unknown"
                                                           : check.witnesses[0].reason));
    Mat p = mat_pow(hom.gen_images[i].action, hom.group.factors()[i]);
    if (!mat_equal(p, Mat(Mat::Identity(alg.dim(), alg.dim()))))
      throw std::invalid_argument("generator image " + std::to_string(i) +
                                  " has order not dividing the factor");
  }
  for (size_t i = 0; i < hom.gen_images.size(); ++i)
    for (size_t j = i + 1; j < hom.gen_images.size(); ++j)
      if (!mat_equal(hom.gen_images[i].action * hom.gen_images[j].action,
                     hom.gen_images[j].action * hom.gen_images[i].action))
        throw std::invalid_argument("generator images do not commute");
}

Grading elementary_grading(const SuperAlgebra& alg, const AbGroup& g,
                           const std::vector<GroupElem>& tuple) {
  if (alg.kind() != SuperAlgebra::Kind::MatrixSuper)
    throw AlgebraMismatchError("elementary grading needs a matrix (super)algebra");
  const long size = alg.n() + alg.m();
  if (static_cast<long>(tuple.size()) != size)
    throw std::invalid_argument("tuple length must equal the matrix size");
  for (const auto& t : tuple) g.validate(t);
  Grading grading = Grading::over_group(g, alg.dim());
  std::vector<std::vector<Vec>> buckets(g.order());
  for (long i = 0; i < size; ++i)
    for (long j = 0; j < size; ++j) {
      GroupElem deg = g.mul(g.inv(tuple[i]), tuple[j]);
      buckets[g.index_of(deg)].push_back(alg.basis_element(i * size + j));
    }
  for (long idx = 0; idx < g.order(); ++idx)
    grading.set_component_at(idx, Subspace::span_of(buckets[idx], alg.dim()));
  return grading;
}

Grading trivial_grading(const SuperAlgebra& alg, const AbGroup& g) {
  Grading grading = Grading::over_group(g, alg.dim());
  grading.set_component(g.identity(), Subspace::full(alg.dim()));
  return grading;
}

Grading pauli_fine_grading(const SuperAlgebra& alg) {
  if (alg.kind() != SuperAlgebra::Kind::MatrixSuper)
    throw AlgebraMismatchError("pauli grading needs a matrix (super)algebra");
  const long k = alg.n() + alg.m();
  if (k < 2) throw std::invalid_argument("pauli grading needs matrix size >= 2");
  AbGroup g({k, k});
  const long zord = lcm_long(k, 4);
  Mat d = Mat::Zero(k, k), p = Mat::Zero(k, k);
  for (long i = 0; i < k; ++i) {
    d(i, i) = Cyclo::zeta(zord, (zord / k) * i);
    p((i + 1) % k, i) = Cyclo(1);
  }
  Grading grading = Grading::over_group(g, alg.dim());
  Mat da = Mat::Identity(k, k);
  for (long a = 0; a < k; ++a) {
    Mat dapb = da;
    for (long b = 0; b < k; ++b) {
      grading.set_component(GroupElem{{a, b}},
                            Subspace::span_of({alg.from_matrix(dapb)}, alg.dim()));
      dapb = dapb * p;
    }
    da = da * d;
  }
  return grading;
}

TensorGradingResult tensor_grading(const SuperAlgebra& alg_c, const Grading& elem,
                                   const SuperAlgebra& alg_d, const Grading& fine) {
  if (!elem.is_group_indexed() || !fine.is_group_indexed() ||
      !(elem.group() == fine.group()))
    throw std::invalid_argument("tensor grading needs both factors over the same group");
  if (alg_c.m() != 0 || alg_d.m() != 0)
    throw AlgebraMismatchError("tensor grading is built for plain matrix factors");
  const AbGroup& g = elem.group();
  const long p = alg_c.n(), q = alg_d.n();
  SuperAlgebra out = SuperAlgebra::matrix_super(p * q, 0);
  Grading grading = Grading::over_group(g, out.dim());
  std::vector<std::vector<Vec>> buckets(g.order());
  for (long i1 = 0; i1 < g.order(); ++i1)
    for (long i2 = 0; i2 < g.order(); ++i2) {
      const Subspace& c = elem.component_at(i1);
      const Subspace& d = fine.component_at(i2);
      if (c.is_zero() || d.is_zero()) continue;
      long target = g.index_of(g.mul(g.element_at(i1), g.element_at(i2)));
      for (long bc = 0; bc < c.dim(); ++bc)
        for (long bd = 0; bd < d.dim(); ++bd) {
          Mat mc = alg_c.to_matrix(c.basis_vector(bc));
          Mat md = alg_d.to_matrix(d.basis_vector(bd));
          buckets[target].push_back(out.from_matrix(kron(mc, md)));
        }
    }
  for (long idx = 0; idx < g.order(); ++idx)
    grading.set_component_at(idx, Subspace::span_of(buckets[idx], out.dim()));
  return TensorGradingResult{std::move(out), std::move(grading)};
}

Grading embed_grading(const Grading& g, const AbGroup& target,
                      const std::vector<size_t>& target_coords) {
  const AbGroup& src = g.group();
  if (target_coords.size() != src.ngens())
    throw std::invalid_argument("embed_grading: one target coordinate per factor");
  for (size_t i = 0; i < src.ngens(); ++i)
    if (target_coords[i] >= target.ngens() ||
        target.factors()[target_coords[i]] != src.factors()[i])
      throw std::invalid_argument("embed_grading: factor sizes do not match");
  Grading out = Grading::over_group(target, g.ambient_dim());
  for (long idx = 0; idx < g.index_size(); ++idx) {
    if (g.component_at(idx).is_zero()) continue;
    GroupElem e = src.element_at(idx);
    GroupElem image = target.identity();
    for (size_t i = 0; i < src.ngens(); ++i)
      image.coords[target_coords[i]] = e.coords[i];
    out.set_component(image, g.component_at(idx));
  }
  return out;
}

Grading grading_of_action(const SuperAlgebra& alg, const ActionHom& alpha) {
  validate_action(alg, alpha);
  const AbGroup& g = alpha.group;
  Grading grading = Grading::over_group(g, alg.dim());
  for (const auto& elem : g.elements()) {
    Subspace comp = Subspace::full(alg.dim());
    for (size_t i = 0; i < g.ngens(); ++i) {
      Cyclo val = char_eval(g, g.char_gen(i), elem);
      Mat shifted = alpha.gen_images[i].action;
      for (long r = 0; r < shifted.rows(); ++r) shifted(r, r) -= val;
      comp = comp.intersect(Subspace::span(kernel_basis(shifted), alg.dim()));
    }
    grading.set_component(elem, comp);
  }
  // direct-sum sanity: eigenspace intersections must fill the algebra
  std::vector<Subspace> parts;
  for (long i = 0; i < grading.index_size(); ++i) parts.push_back(grading.component_at(i));
  if (!is_direct_sum_decomposition(parts, alg.dim()))
    throw std::logic_error("action eigenspaces do not decompose the algebra");
  return grading;
}

ActionHom action_of_grading(const SuperAlgebra& alg, const Grading& grading) {
  auto report = verify_grading(alg, grading);
  if (!report.ok)
    throw std::invalid_argument("action_of_grading: invalid grading: " +
                                (report.violations.empty() ? "unknown"
                                                           : report.violations[0]));
  const AbGroup& g = grading.group();
  const long d = alg.dim();
  // stacked basis of all components, rows; remember the degree of each row
  Mat basis(d, d);
  std::vector<GroupElem> row_degree;
  long r = 0;
  for (long idx = 0; idx < grading.index_size(); ++idx) {
    const Subspace& comp = grading.component_at(idx);
    for (long i = 0; i < comp.dim(); ++i) {
      basis.row(r++) = comp.basis_vector(i).transpose();
      row_degree.push_back(g.element_at(idx));
    }
  }
  if (r != d) throw std::logic_error("grading components do not span");
  Mat bt = basis.transpose();  // columns are the graded basis
  Mat bt_inv = inverse(bt);
  ActionHom hom;
  hom.group = g;
  for (size_t i = 0; i < g.ngens(); ++i) {
    Mat diag = Mat::Zero(d, d);
    for (long row = 0; row < d; ++row)
      diag(row, row) = char_eval(g, g.char_gen(i), row_degree[row]);
    hom.gen_images.push_back(
        SuperMap{bt * diag * bt_inv, SuperMap::Claim::Automorphism});
  }
  return hom;
}

GradingCheckReport verify_grading(const SuperAlgebra& alg, const Grading& grading,
                                  const SuperMap* star) {
  GradingCheckReport report;
  if (grading.ambient_dim() != alg.dim()) {
    report.violations.push_back("grading ambient dimension differs from the algebra");
    return report;
  }
  std::vector<Subspace> parts;
  for (long i = 0; i < grading.index_size(); ++i) parts.push_back(grading.component_at(i));
  if (!is_direct_sum_decomposition(parts, alg.dim()))
    report.violations.push_back("components do not form a direct-sum decomposition");
  Mat sigma = parity_map(alg).action;
  for (long i = 0; i < grading.index_size(); ++i) {
    const Subspace& comp = grading.component_at(i);
    if (comp.is_zero()) continue;
    if (comp.apply(sigma) != comp)
      report.violations.push_back("component #" + std::to_string(i) +
                                  " is not parity-split");
    if (star && comp.apply(star->action) != comp)
      report.violations.push_back("component #" + std::to_string(i) +
                                  " is not star-stable");
  }
  for (long a = 0; a < grading.index_size(); ++a) {
    const Subspace& ca = grading.component_at(a);
    if (ca.is_zero()) continue;
    for (long b = 0; b < grading.index_size(); ++b) {
      const Subspace& cb = grading.component_at(b);
      if (cb.is_zero()) continue;
      const Subspace& target = grading.component_at(grading.mul_index(a, b));
      for (long i = 0; i < ca.dim(); ++i)
        for (long j = 0; j < cb.dim(); ++j) {
          Vec prod = alg.mul(ca.basis_vector(i), cb.basis_vector(j));
          if (!is_zero(Mat(prod)) && !target.contains(prod)) {
            std::ostringstream os;
            os << "product of components #" << a << " x #" << b
               << " leaves component #" << grading.mul_index(a, b);
            report.violations.push_back(os.str());
            goto next_pair;
          }
        }
    next_pair:;
    }
  }
  report.ok = report.violations.empty();
  return report;
}

SupportReport support_properties(const SuperAlgebra& alg, const Grading& grading,
                                 const SuperMap& star) {
  auto check = verify_grading(alg, grading, &star);
  if (!check.ok)
    throw std::invalid_argument("support_properties: grading fails verification: " +
                                check.violations[0]);
  auto simple = involution_simple(alg, star);
  if (!simple.simple)
    throw std::invalid_argument("support_properties: algebra is not involution simple: " +
                                simple.witness);
  SupportReport report;
  report.support = grading.support();
  report.commutes = true;
  for (long a : report.support)
    for (long b : report.support)
      if (grading.mul_index(a, b) != grading.mul_index(b, a)) {
        report.commutes = false;
        report.notes.push_back("support indices " + std::to_string(a) + ", " +
                               std::to_string(b) + " do not commute");
      }
  if (grading.is_group_indexed()) {
    report.all_invertible = true;  // group elements are invertible
  } else if (grading.semigroup().identity) {
    long e = *grading.semigroup().identity;
    bool identity_in_support =
        std::find(report.support.begin(), report.support.end(), e) != report.support.end();
    if (identity_in_support) {
      bool all = true;
      for (long a : report.support)
        if (!grading.semigroup().is_invertible(a)) {
          all = false;
          report.notes.push_back("support index " + std::to_string(a) +
                                 " is not invertible");
        }
      report.all_invertible = all;
    } else {
      report.notes.push_back("identity not in support; invertibility test skipped");
    }
  } else {
    report.notes.push_back("no declared identity; invertibility test skipped");
  }
  return report;
}

}  // namespace supergrade
