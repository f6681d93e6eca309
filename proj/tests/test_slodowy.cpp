#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "slicelab/slodowy.hpp"

using namespace slicelab;
using namespace slicelab::lie;
using namespace slicelab::slodowy;

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
Element E3(const std::string& name) { return sl3().basis_element(sl3().index_of(name)); }

const SlodowySlice& principal2() {
  static const SlodowySlice s(sl2(), standard_triple(sl2(), {2}));
  return s;
}
const SlodowySlice& principal3() {
  static const SlodowySlice s(sl3(), standard_triple(sl3(), {3}));
  return s;
}

}  // namespace

TEST_CASE("partition parsing") {
  CHECK(parse_partition("2,1") == std::vector<int>{2, 1});
  CHECK(parse_partition(" 3 ") == std::vector<int>{3});
  CHECK_THROWS_AS(parse_partition("2,,1"), MathError);
  CHECK_THROWS_AS(parse_partition("0"), MathError);
  CHECK_THROWS_AS(standard_triple(sl3(), {2}), MathError);
}

TEST_CASE("standard triples") {
  const Sl2Triple t2 = standard_triple(sl2(), {2});
  CHECK(t2.xi == E("e"));
  CHECK(t2.h == E("h"));
  CHECK(t2.eta == E("f"));
  CHECK(verify_triple(sl2(), t2).ok);

  const Sl2Triple t3 = standard_triple(sl3(), {3});
  CHECK(sl3().to_matrix(t3.xi) == QMatrix{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  CHECK(sl3().to_matrix(t3.h) == QMatrix{{2, 0, 0}, {0, 0, 0}, {0, 0, -2}});
  CHECK(sl3().to_matrix(t3.eta) == QMatrix{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}});
  // [ξ,η] = h by matrix commutator
  CHECK(oracle::commutator(sl3().to_matrix(t3.xi), sl3().to_matrix(t3.eta)) == sl3().to_matrix(t3.h));
  CHECK(verify_triple(sl3(), t3).ok);

  const Sl2Triple t21 = standard_triple(sl3(), {2, 1});
  CHECK(verify_triple(sl3(), t21).ok);
  CHECK(centralizer(sl3(), t21.eta).cols() == 4);
  CHECK(oracle::minor_rank(sl3().ad(t21.eta)) == 4);
}

TEST_CASE("triple verification reports the failing relation") {
  const Sl2Triple bad{E("e"), E("h"), E("e")};
  const auto c = verify_triple(sl2(), bad);
  CHECK(!c.ok);
  CHECK(c.failing == "[xi,eta]=h");
  const Sl2Triple scaled{E("e") * Rational(2), E("h"), E("f") * Rational(1, 2)};
  CHECK(verify_triple(sl2(), scaled).ok);
  CHECK_THROWS_AS(SlodowySlice(sl2(), bad), MathError);
}

TEST_CASE("gradings") {
  const Grading g2 = Grading::of(sl2(), E("h"));
  CHECK(g2.eigenvalues() == std::vector<int>{-2, 0, 2});
  for (int l : {-2, 0, 2}) CHECK(g2.dimension(l) == 1);

  const Grading g3 = principal3().grading();
  CHECK(g3.eigenvalues() == std::vector<int>{-4, -2, 0, 2, 4});
  CHECK(g3.dimension(-4) == 1);
  CHECK(g3.dimension(-2) == 2);
  CHECK(g3.dimension(0) == 2);
  CHECK(g3.dimension(2) == 2);
  CHECK(g3.dimension(4) == 1);

  const SlodowySlice zero(sl3(), zero_triple(sl3()));
  CHECK(zero.grading().eigenvalues() == std::vector<int>{0});
  CHECK(zero.dimension() == 8);
  CHECK(zero.codimension() == 0);

  // each eigenvector really is one: [h, v] = λ v
  for (int l : g3.eigenvalues()) {
    const QMatrix sp = g3.space(l);
    for (std::size_t j = 0; j < sp.cols(); ++j) {
      const Element v(sp.col(j));
      CHECK(sl3().bracket(principal3().triple().h, v) == v * Rational(l));
    }
  }
}

TEST_CASE("subminimal (2,1) slice is odd and has the stabilizer gap") {
  const SlodowySlice s(sl3(), standard_triple(sl3(), {2, 1}));
  CHECK(!s.is_principal());
  CHECK(!s.is_even());
  CHECK(s.dimension() == 4);
  CHECK(rank(s.stabilizer_nilradical()) < rank(s.nilradical()));
  CHECK(principal3().is_even());
  CHECK(rank(principal3().stabilizer_nilradical()) == rank(principal3().nilradical()));
}

TEST_CASE("slice membership and coordinates") {
  const auto& s = principal2();
  CHECK(s.contains(E("e") + E("f") * Rational(3)));
  CHECK(!s.contains(E("h")));
  CHECK(s.point_on_first_direction(Rational(4)) == E("e") + E("f") * Rational(4));
  CHECK(s.coordinates(E("e") + E("f") * Rational(5)) == QVector{5});
  CHECK_THROWS_AS(s.coordinates(E("h")), MathError);
  CHECK(s.in_affine_parabolic(E("e") + E("h")));
  CHECK(!s.in_affine_parabolic(E("h")));
}

TEST_CASE("slice conjugation examples in sl2") {
  const auto& sl = principal2();
  const auto at_slice = conjugate_to_slice(sl, E("e") + E("f") * Rational(2));
  CHECK(at_slice.u == GroupElement::identity(2));
  CHECK(at_slice.s == E("e") + E("f") * Rational(2));

  const auto r1 = conjugate_to_slice(sl, E("e") + E("h"));
  CHECK(r1.u == exp_nilpotent(sl2(), -E("f")));
  CHECK(r1.s == E("e") + E("f"));

  const Element y = E("e") + E("h") * Rational(2) + E("f") * Rational(3);
  const auto r2 = conjugate_to_slice(sl, y);
  CHECK(r2.u == exp_nilpotent(sl2(), E("f") * Rational(-2)));
  CHECK(r2.s == E("e") + E("f") * Rational(7));
  CHECK(oracle::laplace_det(sl2().to_matrix(r2.s)) == oracle::laplace_det(sl2().to_matrix(y)));
  // u s u^{-1} = y by hand
  CHECK(r2.u.matrix() * sl2().to_matrix(r2.s) * slicelab::inverse(r2.u.matrix()) == sl2().to_matrix(y));

  CHECK_THROWS_AS(conjugate_to_slice(sl, E("h")), MathError);
}

TEST_CASE("slice conjugation closed form on sampled sl2 inputs") {
  Sampler s(31);
  for (int i = 0; i < 20; ++i) {
    const Rational a = s.next(), c = s.next();
    const auto r = conjugate_to_slice(principal2(), E("e") + E("h") * a + E("f") * c);
    CHECK(r.s == E("e") + E("f") * (c + a * a));
    CHECK(r.u.matrix() == QMatrix{{1, 0}, {-a, 1}});
  }
}

TEST_CASE("slice conjugation in sl3 for every partition") {
  Sampler s(32);
  for (const std::vector<int>& p : {std::vector<int>{3}, std::vector<int>{2, 1}}) {
    const SlodowySlice slice(sl3(), standard_triple(sl3(), p));
    for (int i = 0; i < 15; ++i) {
      const Element y = slice.base() + Element(slice.parabolic() * s.vector(slice.parabolic().cols()));
      const auto r = conjugate_to_slice(slice, y);
      CHECK(slice.contains(r.s));
      CHECK(in_stabilizer_unipotent(slice, r.u));
      CHECK(r.u.matrix() * sl3().to_matrix(r.s) * slicelab::inverse(r.u.matrix()) == sl3().to_matrix(y));
      CHECK(oracle::laplace_det(sl3().to_matrix(r.s)) == oracle::laplace_det(sl3().to_matrix(y)));
    }
  }
}

TEST_CASE("chi section on sl2") {
  const auto& sl = principal2();
  CHECK(chi_section(sl, E("e")) == E("e"));
  CHECK(chi_section(sl, E("h")) == E("e") + E("f"));
  CHECK(chi_section(sl, E("f")) == E("e"));
}

TEST_CASE("chi section on sl3 matches the companion form") {
  Sampler s(33);
  for (int i = 0; i < 10; ++i) {
    const Element x = sample_element(sl3(), s);
    const QMatrix m = sl3().to_matrix(x);
    // c2 = sum of principal 2x2 minors, c3 = -det
    Rational c2(0);
    for (const auto& rc : oracle::subsets(3, 2)) c2 += oracle::laplace_det(oracle::submatrix(m, rc, rc));
    const Rational c3 = -oracle::laplace_det(m);
    const QMatrix expected{{0, 1, 0}, {-c2 / Rational(2), 0, 1}, {-c3, -c2 / Rational(2), 0}};
    const Element xs = chi_section(principal3(), x);
    CHECK(sl3().to_matrix(xs) == expected);
    CHECK(chi_section(principal3(), xs) == xs);
  }
}

TEST_CASE("chi section needs a principal slice") {
  const SlodowySlice s(sl3(), standard_triple(sl3(), {2, 1}));
  CHECK_THROWS_AS(chi_section(s, E3("E12")), MathError);
}
