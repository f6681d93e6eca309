#ifndef SLICELAB_SLODOWY_HPP
#define SLICELAB_SLODOWY_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "slicelab/liecore.hpp"

namespace slicelab::slodowy {

using lie::Element;
using lie::GroupElement;
using lie::LieAlgebra;

struct Sl2Triple {
  Element xi;
  Element h;
  Element eta;
};

struct TripleCheck {
  bool ok = true;
  std::string failing;  // first relation that fails, empty when ok
};

/// Checks [ξ,η]=h, [h,ξ]=2ξ, [h,η]=-2η exactly.
TripleCheck verify_triple(const LieAlgebra& alg, const Sl2Triple& t);

/// Parses "2,1" into {2, 1}.
std::vector<int> parse_partition(std::string_view text);

/// Triple whose ξ is the Jordan nilpotent of `partition` (blocks in the given
/// order). Each block of size k carries ξ = ΣE_{i,i+1}, h = diag(k-1,...,1-k),
/// η = Σ i(k-i) E_{i+1,i}. The partition {} or all ones gives the zero triple.
Sl2Triple standard_triple(const LieAlgebra& alg, const std::vector<int>& partition);

Sl2Triple zero_triple(const LieAlgebra& alg);

/// ad_h eigenspace decomposition with integer eigenvalues.
class Grading {
 public:
  /// Throws MathError when ad_h has a non-integer or non-real eigenvalue.
  static Grading of(const LieAlgebra& alg, const Element& h);

  /// Eigenvalues in increasing order.
  const std::vector<int>& eigenvalues() const { return eigenvalues_; }
  /// Columns span g_λ; empty matrix (dim × 0) when λ is not an eigenvalue.
  QMatrix space(int lambda) const;
  std::size_t dimension(int lambda) const;
  /// Direct sum of the g_λ with λ satisfying `pred`.
  template <class Pred>
  QMatrix sum_of(Pred pred) const;

  /// Splits x into its homogeneous components.
  std::map<int, Element> components(const Element& x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<int> eigenvalues_;
  std::map<int, QMatrix> spaces_;
  QMatrix to_graded_;  // coordinates in the concatenated eigenbasis
};

/// S_τ = ξ + g_η together with the parabolic data of the triple.
class SlodowySlice {
 public:
  /// Verifies the triple before building anything.
  SlodowySlice(const LieAlgebra& alg, Sl2Triple triple);

  const LieAlgebra& algebra() const { return *alg_; }
  const Sl2Triple& triple() const { return triple_; }
  const Element& base() const { return triple_.xi; }
  const Grading& grading() const { return grading_; }

  /// Basis of g_η ordered by ad_h degree (0, -1, -2, ...).
  const std::vector<Element>& directions() const { return directions_; }
  const std::vector<int>& direction_degrees() const { return direction_degrees_; }
  /// p_τ = ⊕_{λ≤0} g_λ.
  const QMatrix& parabolic() const { return parabolic_; }
  /// u_τ = ⊕_{λ<0} g_λ.
  const QMatrix& nilradical() const { return nilradical_; }
  /// (u_τ)_ξ = ⊕_{λ≤-2} g_λ.
  const QMatrix& stabilizer_nilradical() const { return stab_nilradical_; }

  std::size_t dimension() const { return directions_.size(); }
  std::size_t codimension() const { return alg_->dim() - directions_.size(); }
  bool is_principal() const { return principal_; }
  bool is_even() const { return grading_.dimension(-1) == 0; }

  bool contains(const Element& y) const;
  /// y ∈ ξ + p_τ.
  bool in_affine_parabolic(const Element& y) const;
  /// Slice coordinates of y ∈ S_τ in the `directions()` basis; throws if y ∉ S_τ.
  QVector coordinates(const Element& y) const;
  Element point(const QVector& coords) const;
  /// ξ + c·(first direction); for principal sl₂ this is e + c·f.
  Element point_on_first_direction(const Rational& c) const;

 private:
  const LieAlgebra* alg_;
  Sl2Triple triple_;
  Grading grading_;
  std::vector<Element> directions_;
  std::vector<int> direction_degrees_;
  QMatrix direction_matrix_;
  QMatrix parabolic_;
  QMatrix nilradical_;
  QMatrix stab_nilradical_;
  bool principal_ = false;
};

struct SliceConjugation {
  GroupElement u;  // in (U_τ)_ξ
  Element s;       // in S_τ, with Ad(u, s) = y
};

/// The unique (u, s) ∈ (U_τ)_ξ × S_τ with Ad_u(s) = y, for y ∈ ξ + p_τ.
/// Uses graded elimination and verifies the result before returning.
SliceConjugation conjugate_to_slice(const SlodowySlice& slice, const Element& y);

/// x_τ: the point of the principal slice with χ(x_τ) = χ(x).
Element chi_section(const SlodowySlice& slice, const Element& x);

/// True when u = exp(z) with z ∈ (u_τ)_ξ.
bool in_stabilizer_unipotent(const SlodowySlice& slice, const GroupElement& u);

// ---- template definitions ----

template <class Pred>
QMatrix Grading::sum_of(Pred pred) const {
  std::vector<QVector> cols;
  for (const auto& [lambda, basis] : spaces_) {
    if (!pred(lambda)) continue;
    for (std::size_t j = 0; j < basis.cols(); ++j) cols.push_back(basis.col(j));
  }
  return QMatrix::from_columns(dim_, cols);
}

}  // namespace slicelab::slodowy

#endif  // SLICELAB_SLODOWY_HPP
