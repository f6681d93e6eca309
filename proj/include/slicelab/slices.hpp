#ifndef SLICELAB_SLICES_HPP
#define SLICELAB_SLICES_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slicelab/liecore.hpp"
#include "slicelab/poissongeom.hpp"
#include "slicelab/slodowy.hpp"
#include "slicelab/wonderful.hpp"

namespace slicelab::slices {

using lie::Element;
using lie::GroupElement;
using lie::LieAlgebra;
using poisson::Space;
using slodowy::SlodowySlice;
using wonderful::LogCotangentPoint;
using wonderful::Subspace;

/// A point (g, y) of T*G (left, right or both actions) or of G × S_τ.
struct XPoint {
  Space space;
  GroupElement g;
  Element y;
  friend bool operator==(const XPoint&, const XPoint&) = default;
};

/// Builds a G × S_τ point; throws unless s ∈ S_τ.
XPoint g_stau_point(const GroupElement& g, const Element& s, const SlodowySlice& slice);

/// ν(x): ρ_R for T*G-right, ρ_L for T*G-left, Ad_g s for G × S_τ.
Element nu(const LieAlgebra& alg, const XPoint& x);
/// k·x for the G-action on X (T*G-right: (hk⁻¹, Ad_k y); G × S_τ: (kg, s)).
XPoint act_x(const LieAlgebra& alg, const GroupElement& k, const XPoint& x);

/// ν(x) ∈ S_τ; for T*G-both, (Ad_g y, y) ∈ S_τ × S_τ.
bool slice_membership(const LieAlgebra& alg, const XPoint& x, const SlodowySlice& slice);
/// ρ̄_τ(γ,(x,y)) = x ∈ S_τ for a point of Ḡ × S_τ.
bool slice_membership(const LogCotangentPoint& p, const SlodowySlice& slice);

/// x ∈ S_τ and Ad_g(x) = x.
bool universal_centralizer_contains(const LieAlgebra& alg, const GroupElement& g, const Element& x,
                                    const SlodowySlice& slice);

/// Point (g, s) of G × S_τ used as the second factor of ψ_τ.
struct StauPoint {
  GroupElement g;
  Element s;
  friend bool operator==(const StauPoint&, const StauPoint&) = default;
};

enum class Normalization { none, x_group_identity };

/// A point of (X × (G×S_τ))⫽G or (X × (Ḡ×S_τ))⫽G held by an orbit representative.
struct ReductionClass {
  XPoint x;
  std::variant<StauPoint, LogCotangentPoint> second;
  Normalization normalization = Normalization::none;

  bool compactified() const { return std::holds_alternative<LogCotangentPoint>(second); }
  const LogCotangentPoint& log_point() const { return std::get<LogCotangentPoint>(second); }
  const StauPoint& stau_point() const { return std::get<StauPoint>(second); }
};

bool operator==(const ReductionClass& a, const ReductionClass& b);

/// The zero-moment condition: ν(x) = Ad_g s, resp. ν(x) = y₁ with y₂ ∈ S_τ.
bool zero_moment(const LieAlgebra& alg, const ReductionClass& c, const SlodowySlice& slice);

/// [x : (e, ν(x))]; throws unless x lies in the slice preimage.
ReductionClass psi_tau(const LieAlgebra& alg, const XPoint& x, const SlodowySlice& slice);
/// [x : (g_Δ, (ν(x), ν(x)))]; throws unless x lies in the slice preimage.
ReductionClass k_tau(const LieAlgebra& alg, const XPoint& x, const SlodowySlice& slice);

/// k·[x : p] with k acting diagonally on both factors.
ReductionClass act_class(const LieAlgebra& alg, const GroupElement& k, const ReductionClass& c);
/// Moves the group component of x to the identity; throws if the zero-moment condition fails.
ReductionClass normalize_class(const LieAlgebra& alg, const ReductionClass& raw, const SlodowySlice& slice);

/// The invariant model of X/G: Ad_g y for T*G-right, s for G × S_τ.
Element quotient_model(const LieAlgebra& alg, const XPoint& x);
/// ν̄([x : (γ,(ν(x), y))]) = y.
Element nu_bar(const ReductionClass& c);

struct DiagramCheck {
  bool pi_commutes = false;     // π̄_τ ∘ k_τ = π_τ
  bool triangle = false;        // ν̄ ∘ k_τ = ν
  Element pi_tau;
  Element pi_bar_k;
};

/// Both diagram legs at x for X ∈ {T*G-right, G × S_τ}.
DiagramCheck pi_maps_commute(const LieAlgebra& alg, const XPoint& x, const SlodowySlice& slice);

/// Basis (columns) of {b : V_b = 0} at a point of X × (Ḡ × S_τ), by ε-differentiation of the
/// action. With `x` empty the X factor is dropped.
QMatrix stabilizer_infinitesimal(const LieAlgebra& alg, const std::optional<XPoint>& x,
                                 const LogCotangentPoint& p);
/// Dimension of the stabilizer in PGL₂ from the linear solve kA ∝ A, k y₁ = y₁ k (sl₂ only).
std::size_t stabilizer_dimension_pgl2(const LieAlgebra& alg, const std::optional<XPoint>& x,
                                      const LogCotangentPoint& p);

/// {A ∈ Mat₂ : x·A = A·x_τ} up to scale.
struct ProjectiveFibre {
  std::vector<QMatrix> basis;
  int projective_dim = -1;
  Element x;
  Element x_tau;
};

ProjectiveFibre compactified_fibre_pgl2(const LieAlgebra& alg, const Element& x, const SlodowySlice& slice);

/// Rank-one classes [A] on a projective line of matrices; nullopt when they are not rational.
std::optional<std::vector<QMatrix>> fibre_boundary_points(const ProjectiveFibre& fibre);

/// Sampled element of the centralizer G_s of a regular s (a polynomial in s).
GroupElement sample_centralizer(const LieAlgebra& alg, const Element& s, Sampler& sampler);

}  // namespace slicelab::slices

#endif  // SLICELAB_SLICES_HPP
