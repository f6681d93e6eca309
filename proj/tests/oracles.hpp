#ifndef SLICELAB_TESTS_ORACLES_HPP
#define SLICELAB_TESTS_ORACLES_HPP

// Independent reference computations: nothing here calls rref, kernel or the
// cached Killing data of the library.

#include <cstddef>
#include <vector>

#include "slicelab/exactnum.hpp"
#include "slicelab/liecore.hpp"

namespace oracle {

using slicelab::QMatrix;
using slicelab::QVector;
using slicelab::Rational;

/// Cofactor expansion along the first row.
template <class S>
S laplace_det(const slicelab::Matrix<S>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return S(1);
  if (n == 1) return m(0, 0);
  S total(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (slicelab::is_zero(m(0, j))) continue;
    slicelab::Matrix<S> minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const S term = m(0, j) * laplace_det(minor);
    if (j % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline QMatrix submatrix(const QMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  QMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

/// Largest k with a nonzero k×k minor.
inline std::size_t minor_rank(const QMatrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k)
    for (const auto& r : subsets(m.rows(), k))
      for (const auto& c : subsets(m.cols(), k))
        if (!laplace_det(submatrix(m, r, c)).is_zero()) return k;
  return 0;
}

/// Maximal minors of a k×m matrix over column subsets in lexicographic order,
/// scaled so the first nonzero entry is 1.
inline QVector normalized_maximal_minors(const QMatrix& rows) {
  std::vector<std::size_t> all(rows.rows());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  QVector out;
  for (const auto& c : subsets(rows.cols(), rows.rows())) out.push_back(laplace_det(submatrix(rows, all, c)));
  Rational lead(0);
  for (const auto& v : out)
    if (!v.is_zero()) {
      lead = v;
      break;
    }
  if (!lead.is_zero())
    for (auto& v : out) v /= lead;
  return out;
}

/// sl₂ coordinates in the (e, h, f) basis read off a trace-free 2×2 matrix.
inline QVector sl2_coords(const QMatrix& m) { return {m(0, 1), m(0, 0), m(1, 0)}; }

inline QMatrix sl2_matrix(const Rational& e, const Rational& h, const Rational& f) { return QMatrix{{h, e}, {f, -h}}; }

inline QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

/// tr(ad_x ad_y) for sl₂ built from matrix commutators by hand.
inline Rational sl2_killing(const QMatrix& x, const QMatrix& y) {
  const QMatrix basis[3] = {sl2_matrix(1, 0, 0), sl2_matrix(0, 1, 0), sl2_matrix(0, 0, 1)};
  Rational tr(0);
  for (std::size_t j = 0; j < 3; ++j) {
    const QVector c = sl2_coords(commutator(x, commutator(y, basis[j])));
    tr += c[j];
  }
  return tr;
}

}  // namespace oracle

#endif  // SLICELAB_TESTS_ORACLES_HPP
