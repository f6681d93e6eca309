#ifndef SLICELAB_POISSONGEOM_HPP
#define SLICELAB_POISSONGEOM_HPP

#include <string>
#include <string_view>
#include <utility>

#include "slicelab/liecore.hpp"
#include "slicelab/slodowy.hpp"
#include "slicelab/wonderful.hpp"

namespace slicelab::poisson {

using lie::Covector;
using lie::Element;
using lie::GroupElement;
using lie::LieAlgebra;

/// Spaces with an implemented moment map or bivector.
enum class Space { lie_poisson, tstarg_left, tstarg_right, tstarg_both, g_stau, gbar_stau };

/// "lie-poisson", "tstarg-left", "tstarg-right", "tstarg-both", "g-stau", "gbar-stau".
Space parse_space(std::string_view name);
std::string space_name(Space s);

/// Poisson bivector at a point as the matrix of P: T*X → TX in a chosen basis
/// and its dual basis, so column j is P applied to the j-th dual basis covector.
class PointedBivector {
 public:
  /// Throws MathError unless `m` is square and skew.
  explicit PointedBivector(QMatrix m);

  const QMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }
  QVector apply(const QVector& covector) const { return m_ * covector; }
  /// Even by skew-symmetry.
  std::size_t rank() const { return slicelab::rank(m_); }

 private:
  QMatrix m_;
};

/// (X₁ × X₂, P₁ ⊕ (−P₂)).
PointedBivector product(const PointedBivector& p1, const PointedBivector& p2);

/// A point (g, x) of T*G ≅ G × g in left trivialization. Tangent and cotangent
/// vectors at it are pairs in g ⊕ g.
struct CotangentPoint {
  GroupElement g;
  Element x;
};

/// A point (y₁, y₂) of g ⊕ g. Paired with (b₁, b₂) as ⟨y₁,b₁⟩ − ⟨y₂,b₂⟩.
struct MomentValue {
  Element left;
  Element right;
  friend bool operator==(const MomentValue&, const MomentValue&) = default;
};

Rational pair_moment(const LieAlgebra& alg, const MomentValue& v, const Element& b1, const Element& b2);

// ---- Lie–Poisson structure on g ----

/// P_y(α) = [κ(α), y].
Element lie_poisson_apply(const LieAlgebra& alg, const Element& y, const Covector& alpha);
PointedBivector lie_poisson_bivector(const LieAlgebra& alg, const Element& y);

// ---- T*G ----

/// ω((y₁,z₁),(y₂,z₂)) = ⟨y₁,z₂⟩ − ⟨y₂,z₁⟩ + ⟨x,[y₁,y₂]⟩.
Rational cotangent_form(const LieAlgebra& alg, const Element& x, const std::pair<Element, Element>& v1,
                        const std::pair<Element, Element>& v2);
/// P(α,β) = (κ(β), [x,κ(β)] − κ(α)).
std::pair<Element, Element> cotangent_bivector_apply(const LieAlgebra& alg, const Element& x, const Covector& alpha,
                                                     const Covector& beta);
/// The same map as a 2d × 2d matrix; identical in left-trivialized coordinates at every g.
PointedBivector cotangent_bivector(const LieAlgebra& alg, const Element& x);

// ---- moment maps ----

/// ρ(g,y) = (Ad_g y, y).
MomentValue rho(const LieAlgebra& alg, const CotangentPoint& p);
Element rho_left(const LieAlgebra& alg, const CotangentPoint& p);
Element rho_right(const CotangentPoint& p);
/// μ(x,(g,y)) = (ν(x) − Ad_g y, −y) on X × T*G, with ν(x) supplied.
MomentValue mu_with_tstarg(const LieAlgebra& alg, const Element& nu_x, const CotangentPoint& p);
/// μ̄(x,(γ,(y₁,y₂))) = (ν(x) − y₁, −y₂) on X × T*Ḡ(log D).
MomentValue mu_with_log_cotangent(const Element& nu_x, const wonderful::LogCotangentPoint& p);
/// (γ,(y₁,y₂)) ↦ (y₁,y₂).
MomentValue rho_bar(const wonderful::LogCotangentPoint& p);
/// (g,s) ↦ Ad_g(s) on G × S_τ; throws if s ∉ S_τ.
Element mu_g_stau(const LieAlgebra& alg, const GroupElement& g, const Element& s,
                  const slodowy::SlodowySlice& slice);
/// (γ,(x,y)) ↦ x on Ḡ × S_τ; throws if y ∉ S_τ.
Element rho_bar_tau(const wonderful::LogCotangentPoint& p, const slodowy::SlodowySlice& slice);

// ---- moment condition H_{ν^b} = −V_b ----

struct MomentCheck {
  bool ok = false;
  QVector hamiltonian;   // H_{ν^b} = −P(dν^b)
  QVector fundamental;   // −V_b
};

/// Lie–Poisson g with the adjoint action and ν = id, at y.
MomentCheck check_moment_lie_poisson(const LieAlgebra& alg, const Element& y, const Element& b);
/// T*G with the (G×G)-action (k₁,k₂)·(h,y) = (k₁hk₂⁻¹, Ad_{k₂}y) and ρ, for the
/// element (b₁, b₂); (0, b) is the right action with ρ_R, (b, 0) the left with ρ_L.
MomentCheck check_moment_tstarg(const LieAlgebra& alg, const CotangentPoint& p, const Element& b1,
                                const Element& b2);

// ---- Poisson transversals ----

struct TransversalDecomposition {
  bool success = false;
  QMatrix tangent;       // columns: basis of T_yY
  QMatrix complement;    // columns: basis of P(T_yY†)
  std::size_t sum_rank = 0;
  QMatrix induced;       // P_Y in the tangent basis (only on success)
};

/// Tests TX|_Y = TY ⊕ P(TY†) at one point.
TransversalDecomposition transversal_check(const PointedBivector& ambient, const QMatrix& tangent);

/// Tangent space of the slice preimage of `space` at a point, in the ambient coordinates:
/// g_η for the Lie–Poisson g and g ⊕ g_η for T*G with ρ_R.
QMatrix slice_tangent(const slodowy::SlodowySlice& slice, Space space);
/// Orbit tangent (fundamental vector fields) at the point.
QMatrix orbit_tangent_lie_poisson(const LieAlgebra& alg, const Element& y);
QMatrix orbit_tangent_tstarg_right(const LieAlgebra& alg, const CotangentPoint& p);

/// dim g − dim g_η, cross-checked against the preimage dimension inside `space`.
std::size_t slice_codimension(const slodowy::SlodowySlice& slice, Space space);

}  // namespace slicelab::poisson

#endif  // SLICELAB_POISSONGEOM_HPP
