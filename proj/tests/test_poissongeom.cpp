#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "slicelab/poissongeom.hpp"

using namespace slicelab;
using namespace slicelab::lie;
using namespace slicelab::poisson;

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

/// Killing form through the hand-built ad traces.
Rational K(const Element& x, const Element& y) { return oracle::sl2_killing(sl2().to_matrix(x), sl2().to_matrix(y)); }
Element br(const Element& x, const Element& y) {
  return Element(oracle::sl2_coords(oracle::commutator(sl2().to_matrix(x), sl2().to_matrix(y))));
}

}  // namespace

TEST_CASE("space names round-trip") {
  for (Space s : {Space::lie_poisson, Space::tstarg_left, Space::tstarg_right, Space::tstarg_both, Space::g_stau,
                  Space::gbar_stau})
    CHECK(parse_space(space_name(s)) == s);
  CHECK(space_name(Space::tstarg_right) == "tstarg-right");
  CHECK_THROWS_AS(parse_space("t*h"), MathError);
}

TEST_CASE("Lie-Poisson bivector examples") {
  // P_y(α) = [κα, y]: at y = h with κα = e this is [e, h] = -2e
  CHECK(lie_poisson_apply(sl2(), E("h"), sl2().flat(E("e"))) == br(E("e"), E("h")));
  CHECK(lie_poisson_apply(sl2(), E("h"), sl2().flat(E("e"))) == E("e") * Rational(-2));
  Sampler s(41);
  for (int i = 0; i < 10; ++i) {
    const Element y = sample_element(sl3(), s);
    CHECK(lie_poisson_apply(sl3(), y, sl3().flat(y)).is_zero());
  }
}

TEST_CASE("Lie-Poisson bracket of linear functions") {
  // {f_a, f_b}(y) = a(P_y b) = <y, [κa, κb]>
  Sampler s(42);
  for (int i = 0; i < 20; ++i) {
    const Element y = sample_element(sl2(), s);
    const Covector a(s.vector(3)), b(s.vector(3));
    const Element ka = sl2().kappa(a), kb = sl2().kappa(b);
    CHECK(a(lie_poisson_apply(sl2(), y, b)) == K(y, br(ka, kb)));
  }
}

TEST_CASE("Lie-Poisson bivector is skew with orbit-dimension rank") {
  CHECK(lie_poisson_bivector(sl2(), sl2().zero()).rank() == 0);
  const auto ph = lie_poisson_bivector(sl2(), E("h"));
  CHECK(ph.rank() == 2);
  CHECK(oracle::minor_rank(ph.matrix()) == 2);
  CHECK(ph.matrix() == -ph.matrix().transpose());
  CHECK_THROWS_AS(PointedBivector(QMatrix{{0, 1}, {0, 0}}), MathError);
}

TEST_CASE("cotangent symplectic form values") {
  const Element z = sl2().zero();
  CHECK(cotangent_form(sl2(), z, {E("e"), z}, {z, E("f")}) == Rational(4));
  CHECK(cotangent_form(sl2(), z, {E("e"), z}, {z, E("f")}) == K(E("e"), E("f")));
  CHECK(cotangent_form(sl2(), E("h"), {E("e"), E("f")}, {E("e"), E("f")}) == Rational(0));
  CHECK(cotangent_form(sl2(), E("h"), {E("e"), z}, {E("f"), z}) == Rational(8));
  CHECK(cotangent_form(sl2(), E("h"), {E("e"), z}, {E("f"), z}) == K(E("h"), br(E("e"), E("f"))));
}

TEST_CASE("cotangent bivector formula") {
  const auto [a, b] = cotangent_bivector_apply(sl2(), E("h"), sl2().flat(E("e")), sl2().flat(E("f")));
  CHECK(a == E("f"));
  CHECK(b == E("f") * Rational(-2) - E("e"));
  const auto [c, d] = cotangent_bivector_apply(sl2(), sl2().zero(), Covector(QVector{0, 0, 0}), sl2().flat(E("h")));
  CHECK(c == E("h"));
  CHECK(d.is_zero());
}

TEST_CASE("cotangent bivector inverts the symplectic form") {
  Sampler s(43);
  for (const LieAlgebra* alg : {&sl2(), &sl3()}) {
    const std::size_t d = alg->dim();
    for (int i = 0; i < 20; ++i) {
      const Element x = sample_element(*alg, s);
      const Covector a(s.vector(d)), b(s.vector(d));
      const Element v = sample_element(*alg, s), w = sample_element(*alg, s);
      const auto p = cotangent_bivector_apply(*alg, x, a, b);
      CHECK(cotangent_form(*alg, x, p, {v, w}) == a(v) + b(w));
    }
    const auto full = cotangent_bivector(*alg, sample_element(*alg, s));
    CHECK(full.rank() == 2 * d);
  }
}

TEST_CASE("moment map values") {
  const Element f = E("f");
  const auto r0 = rho(sl2(), {GroupElement::identity(2), f});
  CHECK(r0.left == f);
  CHECK(r0.right == f);
  const auto r1 = rho(sl2(), {exp_nilpotent(sl2(), E("e")), f});
  CHECK(r1.left == Element(QVector{-1, 1, 1}));
  CHECK(r1.right == f);

  Sampler s(44);
  for (int i = 0; i < 10; ++i) {
    const GroupElement g0 = sample_group(2, s), g = sample_group(2, s);
    const Element x0 = sample_element(sl2(), s), y = sample_element(sl2(), s);
    const Element nu = rho_left(sl2(), {g0, x0});
    const auto m = mu_with_tstarg(sl2(), nu, {g, y});
    const QMatrix gm = g.matrix();
    const Element ad_gy(oracle::sl2_coords(gm * sl2().to_matrix(y) * slicelab::inverse(gm)));
    CHECK(m.left == nu - ad_gy);
    CHECK(m.right == -y);
  }
}

TEST_CASE("moment condition, Lie-Poisson adjoint action") {
  Sampler s(45);
  for (const LieAlgebra* alg : {&sl2(), &sl3()}) {
    for (int i = 0; i < 20; ++i) {
      const Element y = sample_element(*alg, s), b = sample_element(*alg, s);
      CHECK(check_moment_lie_poisson(*alg, y, b).ok);
    }
  }
  const auto zero = check_moment_lie_poisson(sl2(), E("h"), sl2().zero());
  CHECK(zero.ok);
  CHECK(Element(zero.hamiltonian).is_zero());
}

TEST_CASE("moment condition on the cotangent bundle") {
  Sampler s(46);
  const Element z = sl2().zero();
  for (int i = 0; i < 20; ++i) {
    const Element x = sample_element(sl2(), s), b = sample_element(sl2(), s), c = sample_element(sl2(), s);
    const GroupElement g = sample_group(2, s);
    CHECK(check_moment_tstarg(sl2(), {GroupElement::identity(2), x}, z, b).ok);
    CHECK(check_moment_tstarg(sl2(), {g, x}, z, b).ok);
    CHECK(check_moment_tstarg(sl2(), {g, x}, c, z).ok);
    CHECK(check_moment_tstarg(sl2(), {g, x}, c, b).ok);
  }
}

TEST_CASE("the moment check detects a wrong sign") {
  // flipping b2 flips exactly one side of the right-action identity unless it vanishes
  const Element x = E("e") + E("h") * Rational(2);
  const auto c = check_moment_tstarg(sl2(), {GroupElement::identity(2), x}, sl2().zero(), E("f"));
  REQUIRE(c.ok);
  const QVector flipped = Element(c.hamiltonian) == Element(c.fundamental) ? (-Element(c.fundamental)).coords
                                                                           : c.fundamental;
  CHECK(Element(c.hamiltonian) != Element(flipped));
}

TEST_CASE("product structure negates the second factor") {
  const auto p1 = lie_poisson_bivector(sl2(), E("h")), p2 = lie_poisson_bivector(sl2(), E("e"));
  const auto p = product(p1, p2);
  REQUIRE(p.dim() == 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(p.matrix()(i, j) == p1.matrix()(i, j));
      CHECK(p.matrix()(3 + i, 3 + j) == -p2.matrix()(i, j));
      CHECK(p.matrix()(i, 3 + j).is_zero());
    }
  CHECK(pair_moment(sl2(), {E("e"), E("f")}, E("f"), E("e")) == Rational(0));
  CHECK(pair_moment(sl2(), {E("e"), E("h")}, E("f"), sl2().zero()) == Rational(4));
  CHECK(pair_moment(sl2(), {E("e"), E("h")}, sl2().zero(), E("h")) == Rational(-8));
}

TEST_CASE("transversal decompositions in sl2") {
  const auto pe = lie_poisson_bivector(sl2(), E("e"));
  const auto ok = transversal_check(pe, QMatrix::from_columns(3, {E("f").coords}));
  CHECK(ok.success);
  CHECK(ok.complement.cols() == 2);
  // complement = span{e, h}
  CHECK(rank(hstack(ok.complement, QMatrix::from_columns(3, {E("e").coords, E("h").coords}))) == 2);

  const auto bad = transversal_check(pe, QMatrix::from_columns(3, {E("e").coords}));
  CHECK(!bad.success);
  CHECK(bad.sum_rank == 1);

  const auto full = transversal_check(cotangent_bivector(sl2(), E("h")), QMatrix::identity(6));
  CHECK(full.success);
  CHECK(full.complement.cols() == 0);
}

TEST_CASE("slice codimensions") {
  const slodowy::SlodowySlice p2(sl2(), slodowy::standard_triple(sl2(), {2}));
  const slodowy::SlodowySlice p3(sl3(), slodowy::standard_triple(sl3(), {3}));
  const slodowy::SlodowySlice m3(sl3(), slodowy::standard_triple(sl3(), {2, 1}));
  const slodowy::SlodowySlice z3(sl3(), slodowy::zero_triple(sl3()));
  for (Space sp : {Space::lie_poisson, Space::tstarg_right}) {
    CHECK(slice_codimension(p2, sp) == 2);
    CHECK(slice_codimension(p3, sp) == 6);
    CHECK(slice_codimension(m3, sp) == 4);
    CHECK(slice_codimension(z3, sp) == 0);
  }
}

TEST_CASE("slices are transverse to orbits at sampled points") {
  Sampler s(47);
  for (const std::vector<int>& part : {std::vector<int>{3}, std::vector<int>{2, 1}}) {
    const slodowy::SlodowySlice slice(sl3(), slodowy::standard_triple(sl3(), part));
    for (int i = 0; i < 5; ++i) {
      const Element y = slice.point(s.vector(slice.dimension()));
      const QMatrix t = slice_tangent(slice, Space::lie_poisson);
      const auto dec = transversal_check(lie_poisson_bivector(sl3(), y), t);
      CHECK(dec.success);
      CHECK(oracle::minor_rank(dec.induced.transpose() + dec.induced) == 0);
      CHECK(rank(hstack(t, orbit_tangent_lie_poisson(sl3(), y))) == 8);
      const GroupElement g = sample_group(3, s);
      const QMatrix tt = slice_tangent(slice, Space::tstarg_right);
      CHECK(transversal_check(cotangent_bivector(sl3(), y), tt).success);
      CHECK(rank(hstack(tt, orbit_tangent_tstarg_right(sl3(), {g, y}))) == 16);
    }
  }
}
