#ifndef SLICELAB_WONDERFUL_HPP
#define SLICELAB_WONDERFUL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slicelab/liecore.hpp"
#include "slicelab/slodowy.hpp"

namespace slicelab::wonderful {

using lie::Element;
using lie::GroupElement;
using lie::LieAlgebra;

using LMatrix = Matrix<LaurentPoly>;

/// How a subspace was obtained; only constructed points are known to lie in Ḡ.
enum class Origin { unchecked, graph, limit, pgl2_model, action };

/// A dim-g subspace of g⊕g, stored as the rows of its reduced echelon form.
class Subspace {
 public:
  /// Row space of `rows` (d × 2d); throws if the rank is not d.
  static Subspace from_rows(const QMatrix& rows, Origin origin = Origin::unchecked);

  std::size_t dim() const { return basis_.rows(); }
  const QMatrix& basis() const { return basis_; }
  Origin origin() const { return origin_; }
  bool certified() const { return origin_ != Origin::unchecked; }

  /// Normalized Plücker vector over d-subsets of the 2d columns in
  /// lexicographic order; the first nonzero entry is 1.
  QVector plucker() const;

  bool contains(const Element& y1, const Element& y2) const;
  /// Rank of the projection of the subspace onto the first (0) or second (1) factor.
  std::size_t projection_rank(int factor) const;

  /// Some pair (y1, y2) in the subspace, from the combination coefficients of the basis rows.
  std::pair<Element, Element> element(const QVector& coeffs) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Subspace(QMatrix basis, Origin origin) : basis_(std::move(basis)), origin_(origin) {}
  QMatrix basis_;
  Origin origin_ = Origin::unchecked;
};

/// A point (γ, (y₁, y₂)) of the log cotangent bundle.
struct LogCotangentPoint {
  Subspace gamma;
  Element y1;
  Element y2;

  /// Throws MathError unless (y1, y2) ∈ γ.
  LogCotangentPoint(Subspace g, Element a, Element b);
};

/// Plücker vector of the row space of a d × 2d matrix over any scalar tower
/// (lexicographic subset order, unnormalized).
template <class S>
std::vector<S> wedge_rows(const Matrix<S>& rows);

QVector normalize_projective(QVector v);

/// {(Ad_g y, y) : y ∈ g}.
Subspace graph_subspace(const LieAlgebra& alg, const GroupElement& g);
/// The diagonal g_Δ.
Subspace diagonal(const LieAlgebra& alg);
/// (k₁, k₂)·γ = {(Ad_{k₁} y₁, Ad_{k₂} y₂) : (y₁, y₂) ∈ γ}.
Subspace act(const LieAlgebra& alg, const GroupElement& k1, const GroupElement& k2, const Subspace& gamma);

/// A one-parameter family of subspaces given by d rows over Laurent polynomials.
struct CurveSubspace {
  LMatrix rows;  // d × 2d
};

/// Graph rows (g·y·adj(g), det(g)·y) of a curve g(t) in GL_n.
CurveSubspace graph_curve(const LieAlgebra& alg, const LMatrix& g);

/// Parses "diag(t,1)", "diag(t^2,1,t^-1)" or "[[1,t],[0,1]]" (entries are
/// Laurent polynomials in t such as "2*t^-1+3").
LMatrix parse_curve(std::string_view text);
/// k₁·diag(t^{a_i})·k₂ with sampled k₁, k₂ and exponents a_i in [-2, 2].
LMatrix sample_torus_curve(std::size_t n, Sampler& sampler);
/// Lowest-order coefficient matrix of a matrix curve (its projective limit).
QMatrix leading_matrix(const LMatrix& g);
/// Substitutes t -> t^k in every entry.
LMatrix reparametrize(const LMatrix& g, int k);
LaurentPoly parse_laurent(std::string_view text);

/// Limit at t = 0 computed by row reduction over the local ring.
Subspace limit_by_reduction(const CurveSubspace& curve);
/// Normalized lowest-order Plücker coefficients of the curve.
QVector limit_plucker(const CurveSubspace& curve);
/// Both methods; throws MathError on a degenerate curve and on disagreement.
Subspace limit(const CurveSubspace& curve);

bool is_boundary(const Subspace& gamma);

/// χ(y₁) = χ(y₂) for `samples` sampled members of γ.
bool chi_compatible(const LieAlgebra& alg, const Subspace& gamma, std::size_t samples, std::uint64_t seed);

/// (x, y) ∈ γ and y ∈ S_τ. For principal slices a positive answer also
/// asserts y = x_τ (internal error otherwise).
bool in_gbar_stau(const LieAlgebra& alg, const Subspace& gamma, const Element& x, const Element& y,
                  const slodowy::SlodowySlice& slice);

/// γ_A = {(y₁, y₂) : y₁A = Ay₂} for a nonzero 2×2 matrix A (sl₂ only).
Subspace pgl2_model(const LieAlgebra& alg, const QMatrix& a);
/// The class [A] with γ = γ_A, first nonzero entry 1; throws if γ is not of that form.
QMatrix pgl2_matrix(const LieAlgebra& alg, const Subspace& gamma);

std::string to_string(const LieAlgebra& alg, const Subspace& gamma);

// ---- template definitions ----

namespace detail {
/// Masks of all k-subsets of {0..m-1} in lexicographic order.
std::vector<std::uint32_t> lex_subsets(std::size_t m, std::size_t k);
}  // namespace detail

template <class S>
std::vector<S> wedge_rows(const Matrix<S>& rows) {
  const std::size_t m = rows.cols();
  if (m > 24) throw MathError("wedge_rows: too many columns");
  std::vector<S> cur(std::size_t{1} << m);
  cur[0] = S(1);
  std::vector<std::uint32_t> live{0};
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    std::vector<S> next(cur.size());
    std::vector<char> seen(cur.size(), 0);
    std::vector<std::uint32_t> next_live;
    for (std::uint32_t mask : live) {
      if (is_zero(cur[mask])) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const std::uint32_t bit = std::uint32_t{1} << j;
        if ((mask & bit) || is_zero(rows(r, j))) continue;
        // e_S ∧ e_j = (-1)^{#{s ∈ S : s > j}} e_{S ∪ {j}}
        const int above = __builtin_popcount(mask >> (j + 1));
        const std::uint32_t target = mask | bit;
        if (!seen[target]) {
          seen[target] = 1;
          next_live.push_back(target);
        }
        if (above % 2 == 0)
          next[target] += cur[mask] * rows(r, j);
        else
          next[target] -= cur[mask] * rows(r, j);
      }
    }
    cur = std::move(next);
    live = std::move(next_live);
  }
  const auto order = detail::lex_subsets(m, rows.rows());
  std::vector<S> out;
  out.reserve(order.size());
  for (std::uint32_t mask : order) out.push_back(cur[mask]);
  return out;
}

}  // namespace slicelab::wonderful

#endif  // SLICELAB_WONDERFUL_HPP
