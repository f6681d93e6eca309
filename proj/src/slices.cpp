#include "slicelab/slices.hpp"

namespace slicelab::slices {

namespace {

using DMatrix = Matrix<Dual>;

DMatrix to_dual(const QMatrix& m) {
  return m.map([](const Rational& r) { return Dual(r); });
}

/// exp(εb) = I + εb over the dual numbers.
DMatrix infinitesimal(const LieAlgebra& alg, const Element& b) {
  return DMatrix::identity(alg.n()) + alg.to_matrix(b).map([](const Rational& r) { return Dual(Rational(0), r); });
}

QVector eps_coords(const LieAlgebra& alg, const DMatrix& m) {
  QVector out;
  for (const auto& c : alg.coords_of(m)) out.push_back(c.eps);
  return out;
}

/// d/dε Ad_{exp(εb)} y.
QVector ad_derivative(const LieAlgebra& alg, const DMatrix& k, const Element& y) {
  return eps_coords(alg, k * to_dual(alg.to_matrix(y)) * slicelab::inverse(k));
}

bool is_perfect_square(const mpz_class& z) { return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0; }

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q.sign() < 0) return std::nullopt;
  const mpz_class num = q.numerator(), den = q.denominator();
  if (!is_perfect_square(num) || !is_perfect_square(den)) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

QMatrix normalized_matrix(const QMatrix& m) {
  std::vector<Rational> flat;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
  return QMatrix(m.rows(), m.cols(), wonderful::normalize_projective(flat));
}

}  // namespace

XPoint g_stau_point(const GroupElement& g, const Element& s, const SlodowySlice& slice) {
  if (!slice.contains(s)) throw MathError("G x S_tau point: second component is not in the slice");
  return XPoint{Space::g_stau, g, s};
}

Element nu(const LieAlgebra& alg, const XPoint& x) {
  switch (x.space) {
    case Space::tstarg_right: return x.y;
    case Space::tstarg_left:
    case Space::g_stau: return lie::Ad(alg, x.g, x.y);
    default: throw MathError("nu: no g-valued moment map on " + poisson::space_name(x.space));
  }
}

XPoint act_x(const LieAlgebra& alg, const GroupElement& k, const XPoint& x) {
  switch (x.space) {
    case Space::tstarg_right: return {x.space, x.g * k.inverse(), lie::Ad(alg, k, x.y)};
    case Space::tstarg_left:
    case Space::g_stau: return {x.space, k * x.g, x.y};
    default: throw MathError("act_x: unsupported space " + poisson::space_name(x.space));
  }
}

bool slice_membership(const LieAlgebra& alg, const XPoint& x, const SlodowySlice& slice) {
  if (x.space == Space::tstarg_both) return slice.contains(lie::Ad(alg, x.g, x.y)) && slice.contains(x.y);
  return slice.contains(nu(alg, x));
}

bool slice_membership(const LogCotangentPoint& p, const SlodowySlice& slice) {
  return slice.contains(p.y2) && slice.contains(p.y1);
}

bool universal_centralizer_contains(const LieAlgebra& alg, const GroupElement& g, const Element& x,
                                    const SlodowySlice& slice) {
  return slice.contains(x) && lie::Ad(alg, g, x) == x;
}

bool operator==(const ReductionClass& a, const ReductionClass& b) {
  if (!(a.x == b.x) || a.compactified() != b.compactified()) return false;
  if (!a.compactified()) return a.stau_point() == b.stau_point();
  const auto& p = a.log_point();
  const auto& q = b.log_point();
  return p.gamma == q.gamma && p.y1 == q.y1 && p.y2 == q.y2;
}

bool zero_moment(const LieAlgebra& alg, const ReductionClass& c, const SlodowySlice& slice) {
  const Element v = nu(alg, c.x);
  if (!c.compactified()) {
    const auto& sp = c.stau_point();
    return slice.contains(sp.s) && v == lie::Ad(alg, sp.g, sp.s);
  }
  return slice.contains(c.log_point().y2) && v == c.log_point().y1;
}

ReductionClass psi_tau(const LieAlgebra& alg, const XPoint& x, const SlodowySlice& slice) {
  if (!slice_membership(alg, x, slice)) throw MathError("psi_tau: point is not in the slice preimage");
  return ReductionClass{x, StauPoint{GroupElement::identity(alg.n()), nu(alg, x)}, Normalization::none};
}

ReductionClass k_tau(const LieAlgebra& alg, const XPoint& x, const SlodowySlice& slice) {
  if (!slice_membership(alg, x, slice)) throw MathError("k_tau: point is not in the slice preimage");
  const Element v = nu(alg, x);
  return ReductionClass{x, LogCotangentPoint(wonderful::diagonal(alg), v, v), Normalization::none};
}

ReductionClass act_class(const LieAlgebra& alg, const GroupElement& k, const ReductionClass& c) {
  ReductionClass out{act_x(alg, k, c.x), c.second, Normalization::none};
  if (c.compactified()) {
    const auto& p = c.log_point();
    const GroupElement e = GroupElement::identity(alg.n());
    out.second = LogCotangentPoint(wonderful::act(alg, k, e, p.gamma), lie::Ad(alg, k, p.y1), p.y2);
  } else {
    const auto& sp = c.stau_point();
    out.second = StauPoint{k * sp.g, sp.s};
  }
  return out;
}

ReductionClass normalize_class(const LieAlgebra& alg, const ReductionClass& raw, const SlodowySlice& slice) {
  if (!zero_moment(alg, raw, slice)) throw MathError("normalize_class: zero-moment condition violated");
  GroupElement k = raw.x.g;
  if (raw.x.space == Space::g_stau)
    k = raw.x.g.inverse();
  else if (raw.x.space != Space::tstarg_right)
    throw MathError("normalize_class: unsupported space " + poisson::space_name(raw.x.space));
  ReductionClass out = act_class(alg, k, raw);
  out.normalization = Normalization::x_group_identity;
  return out;
}

Element quotient_model(const LieAlgebra& alg, const XPoint& x) {
  switch (x.space) {
    case Space::tstarg_right: return lie::Ad(alg, x.g, x.y);
    case Space::g_stau: return x.y;
    default: throw MathError("quotient_model: no explicit X/G model for " + poisson::space_name(x.space));
  }
}

Element nu_bar(const ReductionClass& c) {
  if (!c.compactified()) throw MathError("nu_bar: class has no compactified factor");
  return c.log_point().y2;
}

DiagramCheck pi_maps_commute(const LieAlgebra& alg, const XPoint& x, const SlodowySlice& slice) {
  const ReductionClass k = normalize_class(alg, k_tau(alg, x, slice), slice);
  DiagramCheck out;
  out.pi_tau = quotient_model(alg, x);
  out.pi_bar_k = quotient_model(alg, k.x);
  out.pi_commutes = out.pi_tau == out.pi_bar_k;
  out.triangle = nu_bar(k) == nu(alg, x);
  return out;
}

QMatrix stabilizer_infinitesimal(const LieAlgebra& alg, const std::optional<XPoint>& x,
                                 const LogCotangentPoint& p) {
  const std::size_t d = alg.dim();
  const QMatrix annihilator = kernel(p.gamma.basis());  // 2d × d, columns vanish on γ
  std::vector<QVector> columns;
  for (std::size_t j = 0; j < d; ++j) {
    const DMatrix k = infinitesimal(alg, alg.basis_element(j));
    QVector col;
    if (x) {
      const DMatrix g = to_dual(x->g.matrix());
      DMatrix moved;
      if (x->space == Space::tstarg_right)
        moved = g * slicelab::inverse(k);
      else if (x->space == Space::g_stau)
        moved = k * g;
      else
        throw MathError("stabilizer_infinitesimal: unsupported space " + poisson::space_name(x->space));
      const QVector vy = eps_coords(alg, slicelab::inverse(g) * moved - DMatrix::identity(alg.n()));
      col.insert(col.end(), vy.begin(), vy.end());
      if (x->space == Space::tstarg_right) {
        const QVector vz = ad_derivative(alg, k, x->y);
        col.insert(col.end(), vz.begin(), vz.end());
      }
    }
    // (γ, (y₁, y₂)) ↦ ((k,e)·γ, (Ad_k y₁, y₂))
    const QVector v1 = ad_derivative(alg, k, p.y1);
    col.insert(col.end(), v1.begin(), v1.end());
    for (std::size_t i = 0; i < d; ++i) {
      QVector e(d);
      e[i] = Rational(1);
      const auto [u1, u2] = p.gamma.element(e);
      QVector moved = ad_derivative(alg, k, u1);
      moved.resize(2 * d);
      const QVector normal = annihilator.transpose() * moved;
      col.insert(col.end(), normal.begin(), normal.end());
    }
    columns.push_back(std::move(col));
  }
  return kernel(QMatrix::from_columns(columns.front().size(), columns));
}

std::size_t stabilizer_dimension_pgl2(const LieAlgebra& alg, const std::optional<XPoint>& x,
                                      const LogCotangentPoint& p) {
  if (alg.n() != 2) throw MathError("stabilizer_dimension_pgl2: only defined for pgl2");
  const QMatrix a = wonderful::pgl2_matrix(alg, p.gamma);
  const QMatrix y1 = alg.to_matrix(p.y1);
  // unknowns (k00, k01, k10, k11, λ)
  std::vector<QVector> rows;
  for (std::size_t q = 0; q < 4; ++q) {
    QVector kA(5), ky(5);
    for (std::size_t u = 0; u < 4; ++u) {
      QMatrix unit(2, 2);
      unit(u / 2, u % 2) = Rational(1);
      kA[u] = (unit * a)(q / 2, q % 2);
      ky[u] = (unit * y1 - y1 * unit)(q / 2, q % 2);
    }
    kA[4] = -a(q / 2, q % 2);
    rows.push_back(kA);
    rows.push_back(ky);
  }
  if (x) {
    if (x->space != Space::tstarg_right && x->space != Space::g_stau)
      throw MathError("stabilizer_dimension_pgl2: unsupported space " + poisson::space_name(x->space));
    // the G-factor is moved freely, so k must be scalar
    rows.push_back(QVector{0, 1, 0, 0, 0});
    rows.push_back(QVector{0, 0, 1, 0, 0});
    rows.push_back(QVector{1, 0, 0, -1, 0});
  }
  const QMatrix sol = kernel(QMatrix::from_rows(5, rows));
  QMatrix k_part(4, sol.cols());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < sol.cols(); ++j) k_part(i, j) = sol(i, j);
  return rank(k_part) - 1;
}

ProjectiveFibre compactified_fibre_pgl2(const LieAlgebra& alg, const Element& x, const SlodowySlice& slice) {
  if (alg.n() != 2) throw MathError("compactified_fibre_pgl2: only defined for pgl2");
  ProjectiveFibre out;
  out.x = x;
  out.x_tau = slodowy::chi_section(slice, x);
  const QMatrix xm = alg.to_matrix(x), tm = alg.to_matrix(out.x_tau);
  QMatrix system(4, 4);
  for (std::size_t u = 0; u < 4; ++u) {
    QMatrix unit(2, 2);
    unit(u / 2, u % 2) = Rational(1);
    const QMatrix r = xm * unit - unit * tm;
    for (std::size_t q = 0; q < 4; ++q) system(q, u) = r(q / 2, q % 2);
  }
  const QMatrix k = kernel(system);
  for (std::size_t j = 0; j < k.cols(); ++j) {
    QMatrix a(2, 2, k.col(j));
    if (!wonderful::pgl2_model(alg, a).contains(x, out.x_tau))
      throw MathError("compactified_fibre_pgl2: fibre member fails certification (internal error)");
    out.basis.push_back(std::move(a));
  }
  out.projective_dim = static_cast<int>(k.cols()) - 1;
  return out;
}

std::optional<std::vector<QMatrix>> fibre_boundary_points(const ProjectiveFibre& fibre) {
  if (fibre.basis.size() != 2) throw MathError("fibre_boundary_points: fibre is not a projective line");
  const QMatrix& b0 = fibre.basis[0];
  const QMatrix& b1 = fibre.basis[1];
  // det(a·B0 + b·B1) = q0 a² + q1 ab + q2 b²
  const Rational q0 = determinant(b0), q2 = determinant(b1);
  const Rational q1 = determinant(b0 + b1) - q0 - q2;
  if (q0.is_zero() && q1.is_zero() && q2.is_zero())
    throw MathError("fibre_boundary_points: every point of the line is singular");
  std::vector<std::pair<Rational, Rational>> roots;  // (a, b)
  if (q0.is_zero()) {
    roots.emplace_back(Rational(1), Rational(0));
    if (!q1.is_zero()) roots.emplace_back(-q2, q1);
  } else {
    const Rational disc = q1 * q1 - Rational(4) * q0 * q2;
    const auto root = rational_sqrt(disc);
    if (!root) return std::nullopt;
    roots.emplace_back((-q1 + *root) / (Rational(2) * q0), Rational(1));
    if (!root->is_zero()) roots.emplace_back((-q1 - *root) / (Rational(2) * q0), Rational(1));
  }
  std::vector<QMatrix> out;
  for (const auto& [a, b] : roots) out.push_back(normalized_matrix(b0 * a + b1 * b));
  return out;
}

GroupElement sample_centralizer(const LieAlgebra& alg, const Element& s, Sampler& sampler) {
  if (!lie::is_regular(alg, s)) throw MathError("sample_centralizer: element is not regular");
  const std::size_t n = alg.n();
  const QMatrix sm = alg.to_matrix(s);
  for (;;) {
    QMatrix m(n, n);
    QMatrix power = QMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
      m += power * sampler.next();
      power = power * sm;
    }
    if (!determinant(m).is_zero()) return GroupElement::from_matrix(m);
  }
}

}  // namespace slicelab::slices
