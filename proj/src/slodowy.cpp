#include "slicelab/slodowy.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>

namespace slicelab::slodowy {

using lie::exp_nilpotent;
using lie::is_regular;

TripleCheck verify_triple(const LieAlgebra& alg, const Sl2Triple& t) {
  if (alg.bracket(t.xi, t.eta) != t.h) return {false, "[xi,eta]=h"};
  if (alg.bracket(t.h, t.xi) != t.xi * Rational(2)) return {false, "[h,xi]=2xi"};
  if (alg.bracket(t.h, t.eta) != t.eta * Rational(-2)) return {false, "[h,eta]=-2eta"};
  return {};
}

std::vector<int> parse_partition(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string piece(text.substr(pos, comma - pos));
    piece.erase(std::remove_if(piece.begin(), piece.end(), [](unsigned char c) { return std::isspace(c); }),
                piece.end());
    if (piece.empty() || !std::all_of(piece.begin(), piece.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw MathError("invalid partition '" + std::string(text) + "'");
    const int v = std::stoi(piece);
    if (v <= 0) throw MathError("invalid partition '" + std::string(text) + "': parts must be positive");
    parts.push_back(v);
    pos = comma + 1;
  }
  return parts;
}

Sl2Triple zero_triple(const LieAlgebra& alg) { return {alg.zero(), alg.zero(), alg.zero()}; }

Sl2Triple standard_triple(const LieAlgebra& alg, const std::vector<int>& partition) {
  const std::size_t n = alg.n();
  long total = 0;
  for (int p : partition) {
    if (p <= 0) throw MathError("invalid partition: parts must be positive");
    total += p;
  }
  if (!partition.empty() && total != static_cast<long>(n))
    throw MathError("invalid partition: parts sum to " + std::to_string(total) + ", expected " +
                    std::to_string(n));
  QMatrix xi(n, n), h(n, n), eta(n, n);
  std::size_t offset = 0;
  for (int part : partition) {
    const long k = part;
    for (long i = 0; i < k; ++i) {
      const std::size_t r = offset + static_cast<std::size_t>(i);
      h(r, r) = Rational(k - 1 - 2 * i);
      if (i + 1 < k) {
        xi(r, r + 1) = Rational(1);
        eta(r + 1, r) = Rational((i + 1) * (k - i - 1));
      }
    }
    offset += static_cast<std::size_t>(k);
  }
  Sl2Triple t{alg.from_matrix(xi), alg.from_matrix(h), alg.from_matrix(eta)};
  const TripleCheck check = verify_triple(alg, t);
  if (!check.ok) throw MathError("standard_triple: relation " + check.failing + " fails");
  return t;
}

Grading Grading::of(const LieAlgebra& alg, const Element& h) {
  const QMatrix adh = alg.ad(h);
  const std::size_t d = alg.dim();
  // Every eigenvalue is bounded by the maximal absolute row sum.
  Rational bound(0);
  for (std::size_t i = 0; i < d; ++i) {
    Rational row(0);
    for (std::size_t j = 0; j < d; ++j) row += adh(i, j).sign() < 0 ? -adh(i, j) : adh(i, j);
    bound = std::max(bound, row);
  }
  const mpz_class ceil_bound = (bound.numerator() + bound.denominator() - 1) / bound.denominator();
  const long r = ceil_bound.get_si();

  Grading g;
  g.dim_ = d;
  std::size_t total = 0;
  std::vector<QVector> cols;
  for (long lambda = -r; lambda <= r; ++lambda) {
    const QMatrix space = kernel(adh - QMatrix::identity(d) * Rational(lambda));
    if (space.cols() == 0) continue;
    g.eigenvalues_.push_back(static_cast<int>(lambda));
    g.spaces_.emplace(static_cast<int>(lambda), space);
    total += space.cols();
    for (std::size_t j = 0; j < space.cols(); ++j) cols.push_back(space.col(j));
  }
  if (total != d) throw MathError("grading: ad_h is not diagonalizable with integer eigenvalues");
  g.to_graded_ = slicelab::inverse(QMatrix::from_columns(d, cols));
  return g;
}

QMatrix Grading::space(int lambda) const {
  const auto it = spaces_.find(lambda);
  return it == spaces_.end() ? QMatrix(dim_, 0) : it->second;
}

std::size_t Grading::dimension(int lambda) const {
  const auto it = spaces_.find(lambda);
  return it == spaces_.end() ? 0 : it->second.cols();
}

std::map<int, Element> Grading::components(const Element& x) const {
  const QVector graded = to_graded_ * x.coords;
  std::map<int, Element> out;
  std::size_t offset = 0;
  for (const auto& [lambda, basis] : spaces_) {
    QVector part(dim_);
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      const Rational& c = graded[offset + j];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < dim_; ++i) part[i] += c * basis(i, j);
    }
    out.emplace(lambda, Element(std::move(part)));
    offset += basis.cols();
  }
  return out;
}

SlodowySlice::SlodowySlice(const LieAlgebra& alg, Sl2Triple triple)
    : alg_(&alg), triple_(std::move(triple)) {
  const TripleCheck check = verify_triple(alg, triple_);
  if (!check.ok) throw MathError("SlodowySlice: not an sl2-triple (" + check.failing + " fails)");
  grading_ = Grading::of(alg, triple_.h);
  const QMatrix ad_eta = alg.ad(triple_.eta);
  const auto& eig = grading_.eigenvalues();
  std::vector<QVector> dir_cols;
  for (auto it = eig.rbegin(); it != eig.rend(); ++it) {
    const QMatrix space = grading_.space(*it);
    const QMatrix k = kernel(ad_eta * space);
    const QMatrix basis = space * k;
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      directions_.emplace_back(basis.col(j));
      direction_degrees_.push_back(*it);
      dir_cols.push_back(basis.col(j));
    }
  }
  direction_matrix_ = QMatrix::from_columns(alg.dim(), dir_cols);
  parabolic_ = grading_.sum_of([](int l) { return l <= 0; });
  nilradical_ = grading_.sum_of([](int l) { return l < 0; });
  stab_nilradical_ = grading_.sum_of([](int l) { return l <= -2; });
  principal_ = is_regular(alg, triple_.xi) && is_regular(alg, triple_.h) && is_regular(alg, triple_.eta);
}

bool SlodowySlice::contains(const Element& y) const {
  return solve(direction_matrix_, (y - triple_.xi).coords).has_value();
}

bool SlodowySlice::in_affine_parabolic(const Element& y) const {
  return solve(parabolic_, (y - triple_.xi).coords).has_value();
}

QVector SlodowySlice::coordinates(const Element& y) const {
  auto c = solve(direction_matrix_, (y - triple_.xi).coords);
  if (!c) throw MathError("SlodowySlice::coordinates: point is not in the slice");
  return *c;
}

Element SlodowySlice::point(const QVector& coords) const {
  if (coords.size() != directions_.size()) throw MathError("SlodowySlice::point: wrong number of coordinates");
  return triple_.xi + Element(direction_matrix_ * coords);
}

Element SlodowySlice::point_on_first_direction(const Rational& c) const {
  if (directions_.empty()) throw MathError("SlodowySlice: slice is a single point");
  return triple_.xi + directions_.front() * c;
}

bool in_stabilizer_unipotent(const SlodowySlice& slice, const GroupElement& u) {
  const LieAlgebra& alg = slice.algebra();
  QMatrix log;
  try {
    log = lie::log_unipotent(u.matrix());
  } catch (const MathError&) {
    return false;
  }
  return solve(slice.stabilizer_nilradical(), alg.from_matrix(log).coords).has_value();
}

SliceConjugation conjugate_to_slice(const SlodowySlice& slice, const Element& y) {
  const LieAlgebra& alg = slice.algebra();
  if (!slice.in_affine_parabolic(y))
    throw MathError("conjugate_to_slice: element " + lie::to_string(alg, y) + " is not in xi + p_tau");
  const Grading& gr = slice.grading();
  const Element& xi = slice.base();
  const QMatrix ad_xi = alg.ad(xi);
  const QMatrix ad_eta = alg.ad(slice.triple().eta);

  GroupElement u = GroupElement::identity(alg.n());
  const int lowest = gr.eigenvalues().front();
  for (int lambda = 0; lambda >= lowest; --lambda) {
    const Element s = lie::Ad(alg, u.inverse(), y);
    const auto comps = gr.components(s - xi);
    const auto it = comps.find(lambda);
    if (it == comps.end() || it->second.is_zero()) continue;
    // d_λ = a - ad_ξ(z) with a ∈ g_η ∩ g_λ and z ∈ g_{λ-2}.
    const QMatrix space = gr.space(lambda);
    const QMatrix slice_part = space * kernel(ad_eta * space);
    const QMatrix lower = gr.space(lambda - 2);
    const QMatrix system = hstack(slice_part, -(ad_xi * lower));
    const auto sol = solve(system, it->second.coords);
    if (!sol) throw MathError("conjugate_to_slice: graded elimination failed (internal error)");
    QVector zc(sol->begin() + static_cast<long>(slice_part.cols()), sol->end());
    if (zc.empty()) continue;
    const Element z(lower * zc);
    if (z.is_zero()) continue;
    u = u * exp_nilpotent(alg, z);
  }

  SliceConjugation out{u, lie::Ad(alg, u.inverse(), y)};
  if (!slice.contains(out.s)) throw MathError("conjugate_to_slice: result not in the slice (internal error)");
  if (lie::Ad(alg, out.u, out.s) != y) throw MathError("conjugate_to_slice: Ad(u,s) != y (internal error)");
  if (!in_stabilizer_unipotent(slice, out.u))
    throw MathError("conjugate_to_slice: u not in the unipotent stabilizer (internal error)");
  return out;
}

Element chi_section(const SlodowySlice& slice, const Element& x) {
  if (!slice.is_principal()) throw MathError("chi_section: slice is not principal");
  const LieAlgebra& alg = slice.algebra();
  const std::size_t r = slice.dimension();  // = rank, one direction per invariant
  const QVector target = lie::chi(alg, x).coeffs;
  QVector coords(r);
  // Invariant c_{k+2} is affine in coordinate k once coordinates 0..k-1 are fixed.
  for (std::size_t k = 0; k < r; ++k) {
    coords[k] = Rational(0);
    const Rational at0 = lie::chi(alg, slice.point(coords)).coeffs[k];
    coords[k] = Rational(1);
    const Rational slope = lie::chi(alg, slice.point(coords)).coeffs[k] - at0;
    if (slope.is_zero()) throw MathError("chi_section: invariant does not depend on slice coordinate");
    coords[k] = (target[k] - at0) / slope;
  }
  Element s = slice.point(coords);
  if (lie::chi(alg, s) != lie::chi(alg, x)) throw MathError("chi_section: verification failed (internal error)");
  return s;
}

}  // namespace slicelab::slodowy
