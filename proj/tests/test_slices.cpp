#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "slicelab/slices.hpp"

using namespace slicelab;
using namespace slicelab::lie;
using namespace slicelab::slices;

namespace {

const LieAlgebra& sl2() {
  static const LieAlgebra alg = LieAlgebra::sl(2);
  return alg;
}
const LieAlgebra& sl3() {
  static const LieAlgebra alg = LieAlgebra::sl(3);
  return alg;
}
Element E(const std::string& name) { return sl2().basis_element(sl2().index_of(name)); }
const SlodowySlice& principal2() {
  static const SlodowySlice s(sl2(), slodowy::standard_triple(sl2(), {2}));
  return s;
}
const SlodowySlice& principal3() {
  static const SlodowySlice s(sl3(), slodowy::standard_triple(sl3(), {3}));
  return s;
}
Element s_of(long c) { return E("e") + E("f") * Rational(c); }

/// Ad_g y by explicit 2×2 conjugation.
Element conj2(const QMatrix& g, const Element& y) {
  return Element(oracle::sl2_coords(g * sl2().to_matrix(y) * slicelab::inverse(g)));
}

QMatrix projective(const QMatrix& m) {
  return QMatrix(2, 2, wonderful::normalize_projective({m(0, 0), m(0, 1), m(1, 0), m(1, 1)}));
}

XPoint sample_right(const LieAlgebra& alg, const SlodowySlice& slice, Sampler& s) {
  return XPoint{Space::tstarg_right, sample_group(alg.n(), s), slice.point(s.vector(slice.dimension()))};
}

}  // namespace

TEST_CASE("slice membership of moment images") {
  const GroupElement id = GroupElement::identity(2);
  CHECK(!slice_membership(sl2(), XPoint{Space::tstarg_right, id, E("h")}, principal2()));
  CHECK(slice_membership(sl2(), XPoint{Space::tstarg_right, id, s_of(3)}, principal2()));
  const GroupElement u = exp_nilpotent(sl2(), E("e"));
  // ν = ρ_L = Ad_g y for the left action
  CHECK(nu(sl2(), XPoint{Space::tstarg_left, u, E("f")}) == conj2(u.matrix(), E("f")));
  CHECK(!slice_membership(sl2(), XPoint{Space::tstarg_left, u, E("e") + E("f")}, principal2()));
  CHECK(slice_membership(sl2(), XPoint{Space::tstarg_both, id, s_of(2)}, principal2()));
  CHECK(!slice_membership(sl2(), XPoint{Space::tstarg_both, u, s_of(2)}, principal2()));
}

TEST_CASE("universal centralizer membership") {
  CHECK(universal_centralizer_contains(sl2(), GroupElement::identity(2), s_of(1), principal2()));
  CHECK(universal_centralizer_contains(sl2(), exp_nilpotent(sl2(), E("e")), E("e"), principal2()));
  CHECK(!universal_centralizer_contains(sl2(), GroupElement::from_matrix(QMatrix{{4, 0}, {0, 1}}), s_of(1),
                                        principal2()));
  CHECK(!universal_centralizer_contains(sl2(), GroupElement::identity(2), E("h"), principal2()));
  Sampler s(61);
  for (int i = 0; i < 10; ++i) {
    const Element x = s_of(1) + E("f") * s.next();
    const GroupElement g = sample_centralizer(sl2(), x, s);
    CHECK(conj2(g.matrix(), x) == x);
    CHECK(universal_centralizer_contains(sl2(), g, x, principal2()));
  }
}

TEST_CASE("G x S_tau points and the group action on X") {
  CHECK_THROWS_AS(g_stau_point(GroupElement::identity(2), E("h"), principal2()), MathError);
  const GroupElement g = GroupElement::from_matrix(QMatrix{{1, 2}, {0, 1}});
  const XPoint p = g_stau_point(g, s_of(2), principal2());
  CHECK(nu(sl2(), p) == conj2(g.matrix(), s_of(2)));
  CHECK(quotient_model(sl2(), p) == s_of(2));

  const GroupElement k = GroupElement::from_matrix(QMatrix{{2, 1}, {1, 1}});
  const XPoint q = act_x(sl2(), k, p);
  CHECK(q.g == k * g);
  CHECK(q.y == s_of(2));
  const XPoint r = act_x(sl2(), k, XPoint{Space::tstarg_right, g, E("h")});
  CHECK(r.g == g * k.inverse());
  CHECK(r.y == conj2(k.matrix(), E("h")));
  // the quotient model is invariant
  CHECK(quotient_model(sl2(), r) == quotient_model(sl2(), XPoint{Space::tstarg_right, g, E("h")}));
}

TEST_CASE("psi and k at a point of the slice preimage") {
  const XPoint x{Space::tstarg_right, GroupElement::identity(2), s_of(1)};
  const auto c = psi_tau(sl2(), x, principal2());
  REQUIRE(!c.compactified());
  CHECK(c.stau_point().g == GroupElement::identity(2));
  CHECK(c.stau_point().s == s_of(1));
  CHECK(zero_moment(sl2(), c, principal2()));

  const auto k = k_tau(sl2(), x, principal2());
  REQUIRE(k.compactified());
  CHECK(k.log_point().gamma == wonderful::diagonal(sl2()));
  CHECK(k.log_point().y1 == s_of(1));
  CHECK(k.log_point().y2 == s_of(1));
  CHECK(nu_bar(k) == s_of(1));
  CHECK(zero_moment(sl2(), k, principal2()));

  CHECK_THROWS_AS(psi_tau(sl2(), XPoint{Space::tstarg_right, GroupElement::identity(2), E("h")}, principal2()),
                  MathError);
  CHECK_THROWS_AS(k_tau(sl2(), XPoint{Space::tstarg_right, GroupElement::identity(2), E("h")}, principal2()),
                  MathError);
}

TEST_CASE("normalization is idempotent and constant on orbits") {
  Sampler s(62);
  for (const auto& [alg, slice] : {std::pair{&sl2(), &principal2()}, std::pair{&sl3(), &principal3()}}) {
    for (int i = 0; i < 5; ++i) {
      const XPoint x = sample_right(*alg, *slice, s);
      for (const auto& raw : {psi_tau(*alg, x, *slice), k_tau(*alg, x, *slice)}) {
        const auto base = normalize_class(*alg, raw, *slice);
        CHECK(base.normalization == Normalization::x_group_identity);
        CHECK(base.x.g == GroupElement::identity(alg->n()));
        CHECK(normalize_class(*alg, base, *slice) == base);
        const GroupElement k = sample_group(alg->n(), s);
        CHECK(normalize_class(*alg, act_class(*alg, k, raw), *slice) == base);
      }
    }
  }
}

TEST_CASE("normalization refuses classes off the zero level") {
  const XPoint x{Space::tstarg_right, GroupElement::identity(2), s_of(1)};
  const ReductionClass bad{x, StauPoint{GroupElement::identity(2), s_of(2)}};
  CHECK(!zero_moment(sl2(), bad, principal2()));
  CHECK_THROWS_AS(normalize_class(sl2(), bad, principal2()), MathError);
}

TEST_CASE("both diagram legs commute") {
  Sampler s(63);
  for (const auto& [alg, slice] : {std::pair{&sl2(), &principal2()}, std::pair{&sl3(), &principal3()}}) {
    for (int i = 0; i < 5; ++i) {
      const XPoint x = sample_right(*alg, *slice, s);
      const auto d = pi_maps_commute(*alg, x, *slice);
      CHECK(d.pi_commutes);
      CHECK(d.triangle);
      CHECK(d.pi_tau == Ad(*alg, x.g, x.y));
      const Element sp = slice->point(s.vector(slice->dimension()));
      const XPoint y = g_stau_point(sample_centralizer(*alg, sp, s), sp, *slice);
      const auto e = pi_maps_commute(*alg, y, *slice);
      CHECK(e.pi_commutes);
      CHECK(e.triangle);
      CHECK(e.pi_tau == sp);
    }
  }
}

TEST_CASE("compactified fibres over the principal slice") {
  for (long c : {0L, 1L, 4L}) {
    const auto fib = compactified_fibre_pgl2(sl2(), s_of(c), principal2());
    CHECK(fib.projective_dim == 1);
    CHECK(fib.x_tau == s_of(c));
    // every member satisfies x·A = A·x
    for (const QMatrix& a : fib.basis) CHECK(sl2().to_matrix(s_of(c)) * a == a * sl2().to_matrix(s_of(c)));
  }
  // over e the fibre is span{I, e}
  const auto fe = compactified_fibre_pgl2(sl2(), E("e"), principal2());
  REQUIRE(fe.basis.size() == 2);
  const QMatrix spans = QMatrix::from_columns(
      4, {QVector{1, 0, 0, 1}, QVector{0, 1, 0, 0}, QVector{fe.basis[0](0, 0), fe.basis[0](0, 1), fe.basis[0](1, 0),
                                                           fe.basis[0](1, 1)},
          QVector{fe.basis[1](0, 0), fe.basis[1](0, 1), fe.basis[1](1, 0), fe.basis[1](1, 1)}});
  CHECK(oracle::minor_rank(spans) == 2);
}

TEST_CASE("boundary of the fibre over s(1)") {
  const auto fib = compactified_fibre_pgl2(sl2(), s_of(1), principal2());
  const auto pts = fibre_boundary_points(fib);
  REQUIRE(pts);
  REQUIRE(pts->size() == 2);
  const QMatrix id = QMatrix::identity(2), sm = sl2().to_matrix(s_of(1));
  const QMatrix plus = projective(id + sm), minus = projective(id - sm);
  CHECK(plus == QMatrix{{1, 1}, {1, 1}});
  CHECK(minus == QMatrix{{1, -1}, {-1, 1}});
  CHECK((((*pts)[0] == plus && (*pts)[1] == minus) || ((*pts)[0] == minus && (*pts)[1] == plus)));
  for (const QMatrix& a : *pts) {
    CHECK(oracle::laplace_det(a).is_zero());
    CHECK(wonderful::is_boundary(wonderful::pgl2_model(sl2(), a)));
  }
  // s(2) has irrational boundary points
  CHECK(!fibre_boundary_points(compactified_fibre_pgl2(sl2(), s_of(2), principal2())));
}

TEST_CASE("free locus") {
  Sampler s(64);
  for (const auto& [alg, slice] : {std::pair{&sl2(), &principal2()}, std::pair{&sl3(), &principal3()}}) {
    for (int i = 0; i < 5; ++i) {
      const XPoint x = sample_right(*alg, *slice, s);
      const auto c = k_tau(*alg, x, *slice);
      CHECK(stabilizer_infinitesimal(*alg, c.x, c.log_point()).cols() == 0);
    }
  }
  // a boundary point of Ḡ × S_τ alone keeps a stabilizer
  const wonderful::LogCotangentPoint p(wonderful::pgl2_model(sl2(), QMatrix{{0, 0}, {0, 1}}), sl2().zero(), E("e"));
  CHECK(stabilizer_infinitesimal(sl2(), std::nullopt, p).cols() > 0);
  CHECK(stabilizer_dimension_pgl2(sl2(), std::nullopt, p) == stabilizer_infinitesimal(sl2(), std::nullopt, p).cols());
  // G moves only the first factor, and (k, e) fixes the diagonal only for k = e
  const wonderful::LogCotangentPoint q(wonderful::diagonal(sl2()), s_of(1), s_of(1));
  CHECK(stabilizer_infinitesimal(sl2(), std::nullopt, q).cols() == 0);
  CHECK(stabilizer_dimension_pgl2(sl2(), std::nullopt, q) == 0);
  // at the boundary point [I + s(1)] both solvers still agree
  const wonderful::LogCotangentPoint b(wonderful::pgl2_model(sl2(), QMatrix{{1, 1}, {1, 1}}), s_of(1), s_of(1));
  CHECK(stabilizer_dimension_pgl2(sl2(), std::nullopt, b) == stabilizer_infinitesimal(sl2(), std::nullopt, b).cols());
}

TEST_CASE("group and infinitesimal stabilizers agree") {
  Sampler s(65);
  for (int i = 0; i < 10; ++i) {
    const XPoint x = sample_right(sl2(), principal2(), s);
    const auto p = k_tau(sl2(), x, principal2()).log_point();
    CHECK(stabilizer_dimension_pgl2(sl2(), x, p) == stabilizer_infinitesimal(sl2(), x, p).cols());
    const QMatrix a(2, 2, s.vector(4));
    if (a.is_zero_matrix()) continue;
    const auto gamma = wonderful::pgl2_model(sl2(), a);
    const auto [y1, y2] = gamma.element(s.vector(3));
    const wonderful::LogCotangentPoint bare(gamma, y1, y2);
    CHECK(stabilizer_dimension_pgl2(sl2(), std::nullopt, bare) ==
          stabilizer_infinitesimal(sl2(), std::nullopt, bare).cols());
  }
}
