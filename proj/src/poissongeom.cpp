#include "slicelab/poissongeom.hpp"

namespace slicelab::poisson {

namespace {

using DMatrix = Matrix<Dual>;
using DVector = std::vector<Dual>;

DMatrix to_dual(const QMatrix& m) {
  return m.map([](const Rational& r) { return Dual(r); });
}

DVector to_dual(const QVector& v) { return DVector(v.begin(), v.end()); }

QVector eps_part(const DVector& v) {
  QVector out;
  out.reserve(v.size());
  for (const auto& d : v) out.push_back(d.eps);
  return out;
}

QVector concat(const QVector& a, const QVector& b) {
  QVector out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// Ad_g(y) over dual numbers, in algebra coordinates.
DVector ad_dual(const LieAlgebra& alg, const DMatrix& g, const DVector& y) {
  return alg.coords_of(g * alg.matrix_of(y) * slicelab::inverse(g));
}

/// Basis of the column space of m.
QMatrix column_basis(const QMatrix& m) {
  if (m.cols() == 0) return m;
  const auto r = rref(m.transpose());
  std::vector<QVector> cols;
  for (std::size_t i = 0; i < r.rank; ++i) cols.push_back(r.reduced.row(i));
  return QMatrix::from_columns(m.rows(), cols);
}

}  // namespace

Space parse_space(std::string_view name) {
  if (name == "lie-poisson") return Space::lie_poisson;
  if (name == "tstarg-left") return Space::tstarg_left;
  if (name == "tstarg-right") return Space::tstarg_right;
  if (name == "tstarg-both") return Space::tstarg_both;
  if (name == "g-stau") return Space::g_stau;
  if (name == "gbar-stau") return Space::gbar_stau;
  throw MathError("unknown space '" + std::string(name) + "'");
}

std::string space_name(Space s) {
  switch (s) {
    case Space::lie_poisson: return "lie-poisson";
    case Space::tstarg_left: return "tstarg-left";
    case Space::tstarg_right: return "tstarg-right";
    case Space::tstarg_both: return "tstarg-both";
    case Space::g_stau: return "g-stau";
    case Space::gbar_stau: return "gbar-stau";
  }
  return "?";
}

PointedBivector::PointedBivector(QMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw MathError("PointedBivector: matrix is not square");
  if (m_.transpose() != -m_) throw MathError("PointedBivector: matrix is not skew-symmetric");
}

PointedBivector product(const PointedBivector& p1, const PointedBivector& p2) {
  const std::size_t a = p1.dim(), b = p2.dim();
  QMatrix m(a + b, a + b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < a; ++j) m(i, j) = p1.matrix()(i, j);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) m(a + i, a + j) = -p2.matrix()(i, j);
  return PointedBivector(std::move(m));
}

Rational pair_moment(const LieAlgebra& alg, const MomentValue& v, const Element& b1, const Element& b2) {
  return alg.killing(v.left, b1) - alg.killing(v.right, b2);
}

Element lie_poisson_apply(const LieAlgebra& alg, const Element& y, const Covector& alpha) {
  return alg.bracket(alg.kappa(alpha), y);
}

PointedBivector lie_poisson_bivector(const LieAlgebra& alg, const Element& y) {
  const std::size_t d = alg.dim();
  QMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    QVector e(d);
    e[j] = Rational(1);
    m.set_col(j, lie_poisson_apply(alg, y, Covector(e)).coords);
  }
  return PointedBivector(std::move(m));
}

Rational cotangent_form(const LieAlgebra& alg, const Element& x, const std::pair<Element, Element>& v1,
                        const std::pair<Element, Element>& v2) {
  return alg.killing(v1.first, v2.second) - alg.killing(v2.first, v1.second) +
         alg.killing(x, alg.bracket(v1.first, v2.first));
}

std::pair<Element, Element> cotangent_bivector_apply(const LieAlgebra& alg, const Element& x, const Covector& alpha,
                                                     const Covector& beta) {
  const Element kb = alg.kappa(beta);
  return {kb, alg.bracket(x, kb) - alg.kappa(alpha)};
}

PointedBivector cotangent_bivector(const LieAlgebra& alg, const Element& x) {
  const std::size_t d = alg.dim();
  QMatrix m(2 * d, 2 * d);
  const Covector zero{QVector(d)};
  for (std::size_t j = 0; j < 2 * d; ++j) {
    QVector e(d);
    e[j % d] = Rational(1);
    const auto [y, z] = j < d ? cotangent_bivector_apply(alg, x, Covector(e), zero)
                              : cotangent_bivector_apply(alg, x, zero, Covector(e));
    m.set_col(j, concat(y.coords, z.coords));
  }
  return PointedBivector(std::move(m));
}

MomentValue rho(const LieAlgebra& alg, const CotangentPoint& p) { return {rho_left(alg, p), p.x}; }

Element rho_left(const LieAlgebra& alg, const CotangentPoint& p) { return lie::Ad(alg, p.g, p.x); }

Element rho_right(const CotangentPoint& p) { return p.x; }

MomentValue mu_with_tstarg(const LieAlgebra& alg, const Element& nu_x, const CotangentPoint& p) {
  return {nu_x - lie::Ad(alg, p.g, p.x), -p.x};
}

MomentValue mu_with_log_cotangent(const Element& nu_x, const wonderful::LogCotangentPoint& p) {
  return {nu_x - p.y1, -p.y2};
}

MomentValue rho_bar(const wonderful::LogCotangentPoint& p) { return {p.y1, p.y2}; }

Element mu_g_stau(const LieAlgebra& alg, const GroupElement& g, const Element& s,
                  const slodowy::SlodowySlice& slice) {
  if (!slice.contains(s)) throw MathError("moment map on G x S_tau: point is not in the slice");
  return lie::Ad(alg, g, s);
}

Element rho_bar_tau(const wonderful::LogCotangentPoint& p, const slodowy::SlodowySlice& slice) {
  if (!slice.contains(p.y2)) throw MathError("moment map on Gbar x S_tau: second coordinate is not in the slice");
  return p.y1;
}

MomentCheck check_moment_lie_poisson(const LieAlgebra& alg, const Element& y, const Element& b) {
  const std::size_t d = alg.dim();
  const DVector bd = to_dual(b.coords);
  // dν^b by differentiating ν^b(y) = ⟨y, b⟩ along each coordinate axis
  QVector alpha(d);
  for (std::size_t i = 0; i < d; ++i) {
    DVector yd = to_dual(y.coords);
    yd[i].eps = Rational(1);
    alpha[i] = alg.killing_generic(yd, bd).eps;
  }
  const Element h = -lie_poisson_apply(alg, y, Covector(alpha));
  // V_b(y) = d/dε Ad_{exp(εb)} y
  DMatrix k = DMatrix::identity(alg.n());
  const QMatrix bm = alg.to_matrix(b);
  for (std::size_t i = 0; i < alg.n(); ++i)
    for (std::size_t j = 0; j < alg.n(); ++j) k(i, j).eps = bm(i, j);
  const QVector v = eps_part(ad_dual(alg, k, to_dual(y.coords)));
  MomentCheck out;
  out.hamiltonian = h.coords;
  out.fundamental = (-Element(v)).coords;
  out.ok = out.hamiltonian == out.fundamental;
  return out;
}

MomentCheck check_moment_tstarg(const LieAlgebra& alg, const CotangentPoint& p, const Element& b1,
                                const Element& b2) {
  const std::size_t d = alg.dim();
  const std::size_t n = alg.n();
  const DVector b1d = to_dual(b1.coords);
  const DVector b2d = to_dual(b2.coords);
  const DMatrix g0 = to_dual(p.g.matrix());
  auto nu_b = [&](const DMatrix& g, const DVector& y) {
    return alg.killing_generic(ad_dual(alg, g, y), b1d) - alg.killing_generic(y, b2d);
  };
  // Left-trivialized differential: α along g·exp(εb_i), β along y + εb_i.
  QVector alpha(d), beta(d);
  for (std::size_t i = 0; i < d; ++i) {
    const DMatrix step = DMatrix::identity(n) + alg.basis_matrices()[i].map([](const Rational& r) {
      return Dual(Rational(0), r);
    });
    alpha[i] = nu_b(g0 * step, to_dual(p.x.coords)).eps;
    DVector yd = to_dual(p.x.coords);
    yd[i].eps = Rational(1);
    beta[i] = nu_b(g0, yd).eps;
  }
  const auto [hy, hz] = cotangent_bivector_apply(alg, p.x, Covector(alpha), Covector(beta));
  // Fundamental vector field of (b₁,b₂) via k_i = exp(εb_i) = I + εb_i.
  auto unipotent = [&](const Element& b) {
    return DMatrix::identity(n) + alg.to_matrix(b).map([](const Rational& r) { return Dual(Rational(0), r); });
  };
  const DMatrix k1 = unipotent(b1);
  const DMatrix k2 = unipotent(b2);
  const DMatrix moved = k1 * g0 * slicelab::inverse(k2);
  const QVector vy = eps_part(alg.coords_of(slicelab::inverse(g0) * moved - DMatrix::identity(n)));
  const QVector vz = eps_part(ad_dual(alg, k2, to_dual(p.x.coords)));
  MomentCheck out;
  out.hamiltonian = concat((-hy).coords, (-hz).coords);
  out.fundamental = concat((-Element(vy)).coords, (-Element(vz)).coords);
  out.ok = out.hamiltonian == out.fundamental;
  return out;
}

TransversalDecomposition transversal_check(const PointedBivector& ambient, const QMatrix& tangent) {
  const std::size_t m = ambient.dim();
  if (tangent.rows() != m) throw MathError("transversal_check: tangent basis has the wrong ambient dimension");
  TransversalDecomposition out;
  out.tangent = column_basis(tangent);
  const QMatrix annihilator = kernel(out.tangent.transpose());
  out.complement = column_basis(ambient.matrix() * annihilator);
  const QMatrix both = hstack(out.tangent, out.complement);
  out.sum_rank = rank(both);
  out.success = out.sum_rank == m && both.cols() == m;
  if (!out.success) return out;
  // Extend each covector on TY by zero on P(TY†), apply P and read off TY coordinates.
  const std::size_t k = out.tangent.cols();
  const QMatrix dual = slicelab::inverse(both.transpose());
  out.induced = QMatrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    QVector rhs(m);
    rhs[i] = Rational(1);
    const QVector alpha = dual * rhs;
    const auto c = solve(out.tangent, ambient.apply(alpha));
    if (!c) throw MathError("transversal_check: induced bivector leaves the tangent space (internal error)");
    out.induced.set_col(i, *c);
  }
  return out;
}

QMatrix slice_tangent(const slodowy::SlodowySlice& slice, Space space) {
  const std::size_t d = slice.algebra().dim();
  std::vector<QVector> cols;
  if (space == Space::lie_poisson) {
    for (const auto& v : slice.directions()) cols.push_back(v.coords);
    return QMatrix::from_columns(d, cols);
  }
  if (space == Space::tstarg_right) {
    for (std::size_t i = 0; i < d; ++i) {
      QVector v(2 * d);
      v[i] = Rational(1);
      cols.push_back(v);
    }
    for (const auto& v : slice.directions()) cols.push_back(concat(QVector(d), v.coords));
    return QMatrix::from_columns(2 * d, cols);
  }
  throw MathError("slice_tangent: unsupported space " + space_name(space));
}

QMatrix orbit_tangent_lie_poisson(const LieAlgebra& alg, const Element& y) {
  QMatrix m(alg.dim(), alg.dim());
  for (std::size_t i = 0; i < alg.dim(); ++i) m.set_col(i, alg.bracket(alg.basis_element(i), y).coords);
  return m;
}

QMatrix orbit_tangent_tstarg_right(const LieAlgebra& alg, const CotangentPoint& p) {
  const std::size_t d = alg.dim();
  QMatrix m(2 * d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Element b = alg.basis_element(i);
    m.set_col(i, concat((-b).coords, alg.bracket(b, p.x).coords));
  }
  return m;
}

std::size_t slice_codimension(const slodowy::SlodowySlice& slice, Space space) {
  const std::size_t d = slice.algebra().dim();
  const std::size_t codim = d - slice.dimension();
  const QMatrix t = slice_tangent(slice, space);
  if (t.rows() - rank(t) != codim)
    throw MathError("slice_codimension: preimage dimension disagrees with dim g - dim g_eta (internal error)");
  return codim;
}

}  // namespace slicelab::poisson
