#ifndef SLICELAB_LIECORE_HPP
#define SLICELAB_LIECORE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slicelab/exactnum.hpp"

namespace slicelab::lie {

/// Element of sl_n given by its coordinates in the algebra's basis.
struct Element {
  QVector coords;

  Element() = default;
  explicit Element(QVector c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  bool is_zero() const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& s);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Rational& s) { return a *= s; }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }
  Element operator-() const { return *this * Rational(-1); }
  friend bool operator==(const Element&, const Element&) = default;
};

/// Linear functional on g, stored by its values on the basis vectors.
struct Covector {
  QVector coords;

  Covector() = default;
  explicit Covector(QVector c) : coords(std::move(c)) {}
  Rational operator()(const Element& z) const;
  friend bool operator==(const Covector&, const Covector&) = default;
};

/// Characteristic-polynomial coefficients (c_2, ..., c_n) of det(λI - x).
struct InvariantVector {
  QVector coeffs;
  friend bool operator==(const InvariantVector&, const InvariantVector&) = default;
};

/// Element of PGL_n: an invertible matrix scaled so its first nonzero entry is 1.
class GroupElement {
 public:
  static GroupElement identity(std::size_t n);
  /// Throws MathError if `m` is singular.
  static GroupElement from_matrix(const QMatrix& m);

  const QMatrix& matrix() const { return m_; }
  std::size_t n() const { return m_.rows(); }
  GroupElement inverse() const;

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.m_ == b.m_; }

 private:
  explicit GroupElement(QMatrix m) : m_(std::move(m)) {}
  QMatrix m_;
};

/// True when a and b are nonzero multiples of each other.
bool proportional(const QMatrix& a, const QMatrix& b);

/// sl_n realized by trace-zero rational matrices. Basis order: E_ij for
/// i < j (lexicographic), then H_i = E_ii - E_{i+1,i+1}, then E_ji for the
/// same pairs. For n = 2 this is (e, h, f).
class LieAlgebra {
 public:
  static LieAlgebra sl(std::size_t n);
  /// "a1" -> sl_2, "a2" -> sl_3.
  static LieAlgebra from_name(std::string_view name);

  std::size_t n() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t rank() const { return n_ - 1; }
  std::string name() const;

  const std::vector<QMatrix>& basis_matrices() const { return basis_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  Element basis_element(std::size_t i) const;
  Element zero() const { return Element(QVector(dim())); }
  /// Index of a named basis vector ("e", "E12", "H1", ...); throws if unknown.
  std::size_t index_of(std::string_view name) const;

  Element from_matrix(const QMatrix& m) const;
  QMatrix to_matrix(const Element& x) const;

  /// Generic coordinate conversions for scalar towers over Q.
  template <class S>
  std::vector<S> coords_of(const Matrix<S>& m) const;
  template <class S>
  Matrix<S> matrix_of(const std::vector<S>& coords) const;

  /// [x, y] computed from the cached structure constants.
  Element bracket(const Element& x, const Element& y) const;
  /// Matrix of ad_x in the basis (column j = [x, b_j]).
  QMatrix ad(const Element& x) const;

  const QMatrix& killing_gram() const { return gram_; }
  Rational killing(const Element& x, const Element& y) const;
  template <class S>
  S killing_generic(const std::vector<S>& x, const std::vector<S>& y) const;

  /// The covector <x, .>.
  Covector flat(const Element& x) const;
  /// Inverse of flat: the element k with <k, z> = alpha(z).
  Element kappa(const Covector& alpha) const;

  /// Structure constant table entry: coordinates of [b_i, b_j].
  const QVector& structure_constants(std::size_t i, std::size_t j) const {
    return table_[i * dim() + j];
  }
  /// Copy of this algebra with one structure-constant coordinate replaced.
  /// Gram matrix is recomputed from the altered table. Used by fixtures.
  LieAlgebra with_structure_constant(std::size_t i, std::size_t j, std::size_t k,
                                     const Rational& value) const;

 private:
  LieAlgebra() = default;
  void build_caches();

  std::size_t n_ = 0;
  std::vector<QMatrix> basis_;
  std::vector<std::string> names_;
  std::vector<std::pair<std::size_t, std::size_t>> offdiag_;  // (row, col) per root vector
  std::vector<QVector> table_;
  QMatrix gram_;
  QMatrix gram_inv_;
};

bool is_regular(const LieAlgebra& alg, const Element& x);
/// Basis (as matrix columns) of the centralizer g_x = ker ad_x.
QMatrix centralizer(const LieAlgebra& alg, const Element& x);
InvariantVector chi(const LieAlgebra& alg, const Element& x);
/// Characteristic polynomial coefficients [1, c_1, ..., c_n] of det(λI - m).
QVector char_poly(const QMatrix& m);

/// Ad_g(x) = g x g^{-1}.
Element Ad(const LieAlgebra& alg, const GroupElement& g, const Element& x);
/// exp of a nilpotent matrix as a finite sum; throws if not nilpotent.
QMatrix exp_nilpotent(const QMatrix& z);
GroupElement exp_nilpotent(const LieAlgebra& alg, const Element& z);
/// log of a unipotent matrix; throws if u - I is not nilpotent.
QMatrix log_unipotent(const QMatrix& u);

std::string to_string(const LieAlgebra& alg, const Element& x);

/// Parses "(c1,...,cd)" in basis coordinates, a matrix literal "[[..],[..]]", or a
/// combination of basis names such as "e+h" or "2*E12-1/2*H1".
Element parse_element(const LieAlgebra& alg, std::string_view text);

/// Element with sampled coordinates.
Element sample_element(const LieAlgebra& alg, Sampler& sampler);
/// Invertible matrix with sampled entries (singular draws are skipped).
GroupElement sample_group(std::size_t n, Sampler& sampler);

// ---- template definitions ----

template <class S>
std::vector<S> LieAlgebra::coords_of(const Matrix<S>& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw MathError("coords_of: wrong matrix size");
  std::vector<S> c(dim());
  for (std::size_t k = 0; k < offdiag_.size(); ++k) {
    const auto [r, col] = offdiag_[k];
    const std::size_t idx = k < offdiag_.size() / 2 ? k : k + (n_ - 1);
    c[idx] = m(r, col);
  }
  S running{};
  S tr{};
  for (std::size_t i = 0; i < n_; ++i) tr += m(i, i);
  if (!is_zero(tr)) throw MathError("coords_of: matrix is not trace-free");
  const std::size_t h0 = offdiag_.size() / 2;
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    running += m(i, i);
    c[h0 + i] = running;
  }
  return c;
}

template <class S>
Matrix<S> LieAlgebra::matrix_of(const std::vector<S>& coords) const {
  if (coords.size() != dim()) throw MathError("matrix_of: wrong coordinate length");
  Matrix<S> m(n_, n_);
  const std::size_t half = offdiag_.size() / 2;
  for (std::size_t k = 0; k < offdiag_.size(); ++k) {
    const auto [r, col] = offdiag_[k];
    const std::size_t idx = k < half ? k : k + (n_ - 1);
    m(r, col) += coords[idx];
  }
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    m(i, i) += coords[half + i];
    m(i + 1, i + 1) -= coords[half + i];
  }
  return m;
}

template <class S>
S LieAlgebra::killing_generic(const std::vector<S>& x, const std::vector<S>& y) const {
  S acc{};
  for (std::size_t i = 0; i < dim(); ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (gram_(i, j).is_zero() || is_zero(y[j])) continue;
      acc += x[i] * S(gram_(i, j)) * y[j];
    }
  }
  return acc;
}

}  // namespace slicelab::lie

#endif  // SLICELAB_LIECORE_HPP
