#include "slicelab/wonderful.hpp"

#include <algorithm>
#include <cctype>

namespace slicelab::wonderful {

namespace detail {

std::vector<std::uint32_t> lex_subsets(std::size_t m, std::size_t k) {
  std::vector<std::uint32_t> out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > m) return out;
  for (;;) {
    std::uint32_t mask = 0;
    for (auto i : idx) mask |= std::uint32_t{1} << i;
    out.push_back(mask);
    // advance to the next combination in lexicographic order
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

}  // namespace detail

namespace {

template <class S>
Matrix<S> minor_matrix(const Matrix<S>& m, std::size_t skip_r, std::size_t skip_c) {
  Matrix<S> out(m.rows() - 1, m.cols() - 1);
  for (std::size_t i = 0, oi = 0; i < m.rows(); ++i) {
    if (i == skip_r) continue;
    for (std::size_t j = 0, oj = 0; j < m.cols(); ++j) {
      if (j == skip_c) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

/// Cofactor expansion; works over rings such as Laurent polynomials.
template <class S>
S laplace_det(const Matrix<S>& m) {
  if (m.rows() == 0) return S(1);
  if (m.rows() == 1) return m(0, 0);
  S acc{};
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_zero(m(0, j))) continue;
    const S term = m(0, j) * laplace_det(minor_matrix(m, 0, j));
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

template <class S>
Matrix<S> adjugate(const Matrix<S>& m) {
  const std::size_t n = m.rows();
  Matrix<S> adj(n, n);
  if (n == 1) {
    adj(0, 0) = S(1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const S c = laplace_det(minor_matrix(m, i, j));
      adj(j, i) = (i + j) % 2 == 0 ? c : -c;
    }
  return adj;
}

std::string strip_spaces(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

QVector normalize_projective(QVector v) {
  for (const auto& x : v)
    if (!x.is_zero()) {
      const Rational inv = x.inverse();
      for (auto& y : v) y *= inv;
      return v;
    }
  throw MathError("normalize_projective: zero vector");
}

Subspace Subspace::from_rows(const QMatrix& rows, Origin origin) {
  if (rows.cols() != 2 * rows.rows()) throw MathError("Subspace: expected a d x 2d basis matrix");
  const auto r = rref(rows);
  if (r.rank != rows.rows()) throw MathError("Subspace: basis rows are linearly dependent");
  return Subspace(r.reduced, origin);
}

QVector Subspace::plucker() const { return normalize_projective(wedge_rows(basis_)); }

bool Subspace::contains(const Element& y1, const Element& y2) const {
  const std::size_t d = dim();
  if (y1.size() != d || y2.size() != d) throw MathError("Subspace::contains: dimension mismatch");
  QVector v(y1.coords);
  v.insert(v.end(), y2.coords.begin(), y2.coords.end());
  return solve(basis_.transpose(), v).has_value();
}

std::size_t Subspace::projection_rank(int factor) const {
  const std::size_t d = dim();
  QMatrix part(d, d);
  const std::size_t off = factor == 0 ? 0 : d;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) part(i, j) = basis_(i, off + j);
  return rank(part);
}

std::pair<Element, Element> Subspace::element(const QVector& coeffs) const {
  const std::size_t d = dim();
  const QVector v = basis_.transpose() * coeffs;
  return {Element(QVector(v.begin(), v.begin() + static_cast<long>(d))),
          Element(QVector(v.begin() + static_cast<long>(d), v.end()))};
}

LogCotangentPoint::LogCotangentPoint(Subspace g, Element a, Element b)
    : gamma(std::move(g)), y1(std::move(a)), y2(std::move(b)) {
  if (!gamma.contains(y1, y2)) throw MathError("LogCotangentPoint: pair is not in the subspace");
}

Subspace graph_subspace(const LieAlgebra& alg, const GroupElement& g) {
  const std::size_t d = alg.dim();
  QMatrix rows(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    const Element b = alg.basis_element(i);
    const Element left = lie::Ad(alg, g, b);
    for (std::size_t j = 0; j < d; ++j) {
      rows(i, j) = left.coords[j];
      rows(i, d + j) = b.coords[j];
    }
  }
  return Subspace::from_rows(rows, Origin::graph);
}

Subspace diagonal(const LieAlgebra& alg) { return graph_subspace(alg, GroupElement::identity(alg.n())); }

Subspace act(const LieAlgebra& alg, const GroupElement& k1, const GroupElement& k2, const Subspace& gamma) {
  const std::size_t d = gamma.dim();
  QMatrix rows(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    QVector e(d);
    e[i] = Rational(1);
    const auto [y1, y2] = gamma.element(e);
    const Element a = lie::Ad(alg, k1, y1);
    const Element b = lie::Ad(alg, k2, y2);
    for (std::size_t j = 0; j < d; ++j) {
      rows(i, j) = a.coords[j];
      rows(i, d + j) = b.coords[j];
    }
  }
  return Subspace::from_rows(rows, gamma.certified() ? Origin::action : Origin::unchecked);
}

CurveSubspace graph_curve(const LieAlgebra& alg, const LMatrix& g) {
  const std::size_t n = alg.n();
  if (g.rows() != n || g.cols() != n) throw MathError("graph_curve: curve has the wrong matrix size");
  const LaurentPoly det = laplace_det(g);
  if (det.is_zero()) throw MathError("graph_curve: curve is not generically invertible");
  const LMatrix adj = adjugate(g);
  const std::size_t d = alg.dim();
  LMatrix rows(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    const LMatrix b = alg.basis_matrices()[i].map([](const Rational& r) { return LaurentPoly(r); });
    const auto left = alg.coords_of(g * b * adj);
    for (std::size_t j = 0; j < d; ++j) rows(i, j) = left[j];
    rows(i, d + i) = det;
  }
  return CurveSubspace{rows};
}

LaurentPoly parse_laurent(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw MathError("parse error: empty Laurent polynomial");
  // split into signed terms; a '-' right after '^' belongs to the exponent
  std::vector<std::string> terms;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if ((c == '+' || c == '-') && i > 0 && s[i - 1] != '^') {
      terms.push_back(cur);
      cur.clear();
    }
    cur += c;
  }
  terms.push_back(cur);
  LaurentPoly out;
  for (std::string term : terms) {
    bool negative = false;
    if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
      negative = term[0] == '-';
      term.erase(0, 1);
    }
    if (term.empty()) throw MathError("parse error: dangling sign in '" + s + "'");
    const std::size_t tpos = term.find('t');
    std::string coeff = term.substr(0, tpos);
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    Rational c = coeff.empty() ? Rational(1) : Rational::parse(coeff);
    int exponent = 0;
    if (tpos != std::string::npos) {
      const std::string rest = term.substr(tpos + 1);
      if (rest.empty()) {
        exponent = 1;
      } else {
        if (rest[0] != '^' || rest.size() < 2) throw MathError("parse error: bad exponent in '" + term + "'");
        try {
          std::size_t used = 0;
          exponent = std::stoi(rest.substr(1), &used);
          if (used != rest.size() - 1) throw MathError("");
        } catch (const std::exception&) {
          throw MathError("parse error: bad exponent in '" + term + "'");
        }
      }
    }
    out += LaurentPoly::monomial(negative ? -c : c, exponent);
  }
  return out;
}

LMatrix parse_curve(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.rfind("diag(", 0) == 0 && s.back() == ')') {
    const auto parts = split_top_level(s.substr(5, s.size() - 6));
    LMatrix m(parts.size(), parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) m(i, i) = parse_laurent(parts[i]);
    return m;
  }
  if (s.size() >= 4 && s.front() == '[' && s.back() == ']') {
    const auto rows = split_top_level(s.substr(1, s.size() - 2));
    std::vector<std::vector<LaurentPoly>> entries;
    for (const auto& r : rows) {
      if (r.size() < 2 || r.front() != '[' || r.back() != ']')
        throw MathError("parse error: malformed matrix row '" + r + "'");
      std::vector<LaurentPoly> row;
      for (const auto& e : split_top_level(r.substr(1, r.size() - 2))) row.push_back(parse_laurent(e));
      entries.push_back(std::move(row));
    }
    if (entries.empty() || entries.size() != entries.front().size())
      throw MathError("parse error: curve matrix must be square");
    return LMatrix::from_rows(entries.size(), entries);
  }
  throw MathError("parse error: expected diag(...) or [[...],...] but got '" + s + "'");
}

LMatrix sample_torus_curve(std::size_t n, Sampler& sampler) {
  const auto lift = [](const QMatrix& m) { return m.map([](const Rational& r) { return LaurentPoly(r); }); };
  const QMatrix k1 = lie::sample_group(n, sampler).matrix();
  const QMatrix k2 = lie::sample_group(n, sampler).matrix();
  LMatrix torus(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const long e = (sampler.next().numerator().get_si() % 5 + 5) % 5 - 2;
    torus(i, i) = LaurentPoly::monomial(Rational(1), static_cast<int>(e));
  }
  return lift(k1) * torus * lift(k2);
}

QMatrix leading_matrix(const LMatrix& g) {
  int v = 0;
  bool any = false;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (g(i, j).is_zero()) continue;
      v = any ? std::min(v, g(i, j).valuation()) : g(i, j).valuation();
      any = true;
    }
  if (!any) throw MathError("leading_matrix: zero curve");
  return g.map([v](const LaurentPoly& p) { return p.coeff(v); });
}

LMatrix reparametrize(const LMatrix& g, int k) {
  return g.map([k](const LaurentPoly& p) { return p.substitute_power(k); });
}

QVector limit_plucker(const CurveSubspace& curve) {
  const auto w = wedge_rows(curve.rows);
  bool any = false;
  int v = 0;
  for (const auto& p : w) {
    if (p.is_zero()) continue;
    v = any ? std::min(v, p.valuation()) : p.valuation();
    any = true;
  }
  if (!any) throw MathError("limit: degenerate curve (generic rank below dim g)");
  QVector out;
  out.reserve(w.size());
  for (const auto& p : w) out.push_back(p.coeff(v));
  return normalize_projective(std::move(out));
}

Subspace limit_by_reduction(const CurveSubspace& curve) {
  LMatrix rows = curve.rows;
  const std::size_t d = rows.rows();
  // Each pass lowers the valuation of the curve's Plücker vector, so the loop terminates
  // for curves of full generic rank.
  for (int pass = 0; pass < 100000; ++pass) {
    for (std::size_t i = 0; i < d; ++i) {
      int v = 0;
      bool any = false;
      for (std::size_t j = 0; j < rows.cols(); ++j) {
        if (rows(i, j).is_zero()) continue;
        v = any ? std::min(v, rows(i, j).valuation()) : rows(i, j).valuation();
        any = true;
      }
      if (!any) throw MathError("limit: degenerate curve (generic rank below dim g)");
      if (v != 0)
        for (std::size_t j = 0; j < rows.cols(); ++j) rows(i, j) = rows(i, j).shifted(-v);
    }
    const QMatrix lead = rows.map([](const LaurentPoly& p) { return p.coeff(0); });
    const QMatrix dep = kernel(lead.transpose());
    if (dep.cols() == 0) return Subspace::from_rows(lead, Origin::limit);
    const QVector c = dep.col(0);
    std::size_t pick = d;
    for (std::size_t i = d; i-- > 0;)
      if (!c[i].is_zero()) {
        pick = i;
        break;
      }
    std::vector<LaurentPoly> combined(rows.cols());
    for (std::size_t i = 0; i < d; ++i) {
      if (c[i].is_zero()) continue;
      const LaurentPoly ci(c[i]);
      for (std::size_t j = 0; j < rows.cols(); ++j) combined[j] += ci * rows(i, j);
    }
    rows.set_row(pick, combined);
  }
  throw MathError("limit: row reduction did not terminate (internal error)");
}

Subspace limit(const CurveSubspace& curve) {
  const QVector expected = limit_plucker(curve);
  Subspace s = limit_by_reduction(curve);
  if (s.plucker() != expected)
    throw MathError("limit: row reduction and Plücker evaluation disagree (internal error)");
  return s;
}

bool is_boundary(const Subspace& gamma) {
  return gamma.projection_rank(0) < gamma.dim() || gamma.projection_rank(1) < gamma.dim();
}

bool chi_compatible(const LieAlgebra& alg, const Subspace& gamma, std::size_t samples, std::uint64_t seed) {
  Sampler sampler(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const auto [y1, y2] = gamma.element(sampler.vector(gamma.dim()));
    if (lie::chi(alg, y1) != lie::chi(alg, y2)) return false;
  }
  return true;
}

bool in_gbar_stau(const LieAlgebra& alg, const Subspace& gamma, const Element& x, const Element& y,
                  const slodowy::SlodowySlice& slice) {
  if (!gamma.contains(x, y) || !slice.contains(y)) return false;
  if (slice.is_principal() && slodowy::chi_section(slice, x) != y)
    throw MathError("in_gbar_stau: member pair violates y = x_tau (subspace not in the compactification?)");
  (void)alg;
  return true;
}

Subspace pgl2_model(const LieAlgebra& alg, const QMatrix& a) {
  if (alg.n() != 2) throw MathError("pgl2_model: only defined for sl2");
  if (a.rows() != 2 || a.cols() != 2) throw MathError("pgl2_model: expected a 2x2 matrix");
  if (a.is_zero_matrix()) throw MathError("pgl2_model: matrix must be nonzero");
  const std::size_t d = alg.dim();
  QMatrix system(4, 2 * d);
  for (std::size_t j = 0; j < d; ++j) {
    const QMatrix& b = alg.basis_matrices()[j];
    const QMatrix left = b * a;
    const QMatrix right = a * b;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) {
        system(2 * r + c, j) = left(r, c);
        system(2 * r + c, d + j) = -right(r, c);
      }
  }
  const QMatrix k = kernel(system);
  if (k.cols() != d) throw MathError("pgl2_model: solution space is not 3-dimensional (internal error)");
  return Subspace::from_rows(k.transpose(), Origin::pgl2_model);
}

QMatrix pgl2_matrix(const LieAlgebra& alg, const Subspace& gamma) {
  if (alg.n() != 2) throw MathError("pgl2_matrix: only defined for sl2");
  const std::size_t d = alg.dim();
  // unknown A = (a00, a01, a10, a11); one block of 4 equations y1 A - A y2 = 0 per basis row
  QMatrix system(4 * d, 4);
  for (std::size_t i = 0; i < d; ++i) {
    QVector e(d);
    e[i] = Rational(1);
    const auto [y1, y2] = gamma.element(e);
    const QMatrix m1 = alg.to_matrix(y1), m2 = alg.to_matrix(y2);
    for (std::size_t u = 0; u < 4; ++u) {
      QMatrix unit(2, 2);
      unit(u / 2, u % 2) = Rational(1);
      const QMatrix r = m1 * unit - unit * m2;
      for (std::size_t q = 0; q < 4; ++q) system(4 * i + q, u) = r(q / 2, q % 2);
    }
  }
  const QMatrix k = kernel(system);
  if (k.cols() != 1) throw MathError("pgl2_matrix: subspace is not of the form gamma_A");
  return QMatrix(2, 2, normalize_projective(k.col(0)));
}

std::string to_string(const LieAlgebra& alg, const Subspace& gamma) {
  std::string s = "{";
  for (std::size_t i = 0; i < gamma.dim(); ++i) {
    QVector e(gamma.dim());
    e[i] = Rational(1);
    const auto [y1, y2] = gamma.element(e);
    s += (i ? ", (" : "(") + lie::to_string(alg, y1) + ", " + lie::to_string(alg, y2) + ")";
  }
  return s + "}";
}

}  // namespace slicelab::wonderful
