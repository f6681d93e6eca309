#include "slicelab/suites.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>

#include "slicelab/poissongeom.hpp"
#include "slicelab/slices.hpp"
#include "slicelab/slodowy.hpp"
#include "slicelab/wonderful.hpp"

namespace slicelab::suites {

using lie::Covector;
using lie::Element;
using lie::GroupElement;
using lie::LieAlgebra;
using slodowy::SlodowySlice;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Runs named checks, each with its own deterministic sample stream.
class Recorder {
 public:
  Recorder(std::string prefix, const Config& config, std::vector<CheckResult>& out)
      : prefix_(std::move(prefix)), config_(config), out_(out) {}

  std::size_t scaled(std::size_t base_count) const {
    return std::max<std::size_t>(1, base_count * config_.samples / 20);
  }

  /// f(sampler) returns a witness on failure.
  void sampled(const std::string& name, std::size_t base_count,
               const std::function<std::optional<Witness>(Sampler&)>& f) {
    run(name, [&](Sampler& s) -> std::optional<Witness> {
      const std::size_t count = scaled(base_count);
      for (std::size_t i = 0; i < count; ++i) {
        if (auto w = f(s)) {
          (*w)["sample"] = std::to_string(i);
          return w;
        }
      }
      return std::nullopt;
    });
  }

  void single(const std::string& name, const std::function<std::optional<Witness>()>& f) {
    run(name, [&](Sampler&) { return f(); });
  }

 private:
  void run(const std::string& name, const std::function<std::optional<Witness>(Sampler&)>& body) {
    const std::string full = prefix_ + "." + name;
    Sampler sampler(config_.seed ^ fnv1a(full));
    CheckResult r{full, true, {}};
    try {
      if (auto w = body(sampler)) {
        r.passed = false;
        r.witness = std::move(*w);
      }
    } catch (const std::exception& e) {
      r.passed = false;
      r.witness = {{"error", e.what()}};
    }
    out_.push_back(std::move(r));
  }

  std::string prefix_;
  const Config& config_;
  std::vector<CheckResult>& out_;
};

std::optional<Witness> fail_if(bool bad, Witness w) {
  if (bad) return w;
  return std::nullopt;
}

std::vector<std::string> algebras_of(const Config& c) {
  if (c.algebra) return {*c.algebra};
  return {"a1", "a2"};
}

std::string partition_label(const std::vector<int>& p) {
  if (p.empty()) return "zero";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "-" : "") + std::to_string(p[i]);
  return s;
}

std::vector<std::vector<int>> partitions_of(const LieAlgebra& alg, const Config& c) {
  if (c.partition) return {*c.partition};
  if (alg.n() == 2) return {{2}, {}};
  return {{3}, {2, 1}, {}};
}

std::vector<int> principal_partition(const LieAlgebra& alg) { return {static_cast<int>(alg.n())}; }

SlodowySlice make_slice(const LieAlgebra& alg, const std::vector<int>& p) {
  return SlodowySlice(alg, p.empty() ? slodowy::zero_triple(alg) : slodowy::standard_triple(alg, p));
}

Element random_slice_point(const SlodowySlice& slice, Sampler& s) { return slice.point(s.vector(slice.dimension())); }

std::string str(const LieAlgebra& alg, const Element& x) { return lie::to_string(alg, x); }

// ---------------------------------------------------------------- liecore

void liecore_into(const LieAlgebra& alg, const Config& config, std::vector<CheckResult>& out) {
  Recorder r(alg.name() + ".liecore", config, out);
  const std::size_t d = alg.dim();

  r.single("structure.antisymmetry", [&]() -> std::optional<Witness> {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Element a(alg.structure_constants(i, j)), b(alg.structure_constants(j, i));
        if (a != -b) return Witness{{"i", alg.basis_names()[i]}, {"j", alg.basis_names()[j]}};
      }
    return std::nullopt;
  });

  r.single("structure.jacobi_basis", [&]() -> std::optional<Witness> {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          const Element x = alg.basis_element(i), y = alg.basis_element(j), z = alg.basis_element(k);
          const Element jac = alg.bracket(alg.bracket(x, y), z) + alg.bracket(alg.bracket(y, z), x) +
                              alg.bracket(alg.bracket(z, x), y);
          if (!jac.is_zero())
            return Witness{{"x", str(alg, x)}, {"y", str(alg, y)}, {"z", str(alg, z)}, {"jacobiator", str(alg, jac)}};
        }
    return std::nullopt;
  });

  r.sampled("jacobi", 50, [&](Sampler& s) {
    const Element x = lie::sample_element(alg, s), y = lie::sample_element(alg, s), z = lie::sample_element(alg, s);
    const Element jac =
        alg.bracket(alg.bracket(x, y), z) + alg.bracket(alg.bracket(y, z), x) + alg.bracket(alg.bracket(z, x), y);
    return fail_if(!jac.is_zero(),
                   {{"x", str(alg, x)}, {"y", str(alg, y)}, {"z", str(alg, z)}, {"jacobiator", str(alg, jac)}});
  });

  r.single("killing.symmetric_nondegenerate", [&]() -> std::optional<Witness> {
    const QMatrix& g = alg.killing_gram();
    return fail_if(g != g.transpose() || rank(g) != d, {{"gram", to_string(g)}});
  });

  r.sampled("killing.invariance", 50, [&](Sampler& s) {
    const Element x = lie::sample_element(alg, s), y = lie::sample_element(alg, s), z = lie::sample_element(alg, s);
    const Rational v = alg.killing(alg.bracket(x, y), z) + alg.killing(y, alg.bracket(x, z));
    return fail_if(!v.is_zero(), {{"x", str(alg, x)}, {"y", str(alg, y)}, {"z", str(alg, z)}, {"value", v.str()}});
  });

  r.sampled("killing.ad_invariance", 20, [&](Sampler& s) {
    const GroupElement g = lie::sample_group(alg.n(), s);
    const Element x = lie::sample_element(alg, s), y = lie::sample_element(alg, s);
    const Rational a = alg.killing(lie::Ad(alg, g, x), lie::Ad(alg, g, y)), b = alg.killing(x, y);
    return fail_if(a != b, {{"g", to_string(g.matrix())}, {"x", str(alg, x)}, {"y", str(alg, y)},
                            {"lhs", a.str()}, {"rhs", b.str()}});
  });

  r.sampled("killing.trace_identity", 20, [&](Sampler& s) {
    const Element x = lie::sample_element(alg, s), y = lie::sample_element(alg, s);
    const Rational a = alg.killing(x, y);
    const Rational b = Rational(static_cast<long>(2 * alg.n())) * trace(alg.to_matrix(x) * alg.to_matrix(y));
    return fail_if(a != b, {{"x", str(alg, x)}, {"y", str(alg, y)}, {"killing", a.str()}, {"2n_trace", b.str()}});
  });

  r.sampled("ad.homomorphism", 20, [&](Sampler& s) {
    const GroupElement g = lie::sample_group(alg.n(), s), h = lie::sample_group(alg.n(), s);
    const Element x = lie::sample_element(alg, s);
    const Element a = lie::Ad(alg, g * h, x), b = lie::Ad(alg, g, lie::Ad(alg, h, x));
    return fail_if(a != b, {{"x", str(alg, x)}, {"lhs", str(alg, a)}, {"rhs", str(alg, b)}});
  });

  r.sampled("chi.invariance", 20, [&](Sampler& s) {
    const GroupElement g = lie::sample_group(alg.n(), s);
    const Element x = lie::sample_element(alg, s);
    const auto a = lie::chi(alg, lie::Ad(alg, g, x)), b = lie::chi(alg, x);
    return fail_if(a != b, {{"x", str(alg, x)}, {"chi_x", to_string(b.coeffs)}, {"chi_gx", to_string(a.coeffs)}});
  });

  r.sampled("centralizer.regular_dimension", 20, [&](Sampler& s) {
    const Element x = lie::sample_element(alg, s);
    const std::size_t dim = lie::centralizer(alg, x).cols();
    return fail_if(lie::is_regular(alg, x) != (dim == alg.rank()), {{"x", str(alg, x)}, {"dim", std::to_string(dim)}});
  });
}

// ---------------------------------------------------------------- slodowy

void slodowy_into(const LieAlgebra& alg, const Config& config, std::vector<CheckResult>& out) {
  for (const auto& part : partitions_of(alg, config)) {
    Recorder r(alg.name() + ".slodowy." + partition_label(part), config, out);
    const SlodowySlice slice = make_slice(alg, part);
    const auto& gr = slice.grading();

    r.single("triple.relations", [&]() {
      const auto c = slodowy::verify_triple(alg, slice.triple());
      return fail_if(!c.ok, {{"failing", c.failing}});
    });

    r.single("grading.bracket_compatible", [&]() -> std::optional<Witness> {
      for (int a : gr.eigenvalues())
        for (int b : gr.eigenvalues()) {
          const QMatrix sa = gr.space(a), sb = gr.space(b), target = gr.space(a + b);
          for (std::size_t i = 0; i < sa.cols(); ++i)
            for (std::size_t j = 0; j < sb.cols(); ++j) {
              const Element br = alg.bracket(Element(sa.col(i)), Element(sb.col(j)));
              if (br.is_zero()) continue;
              if (!solve(target, br.coords))
                return Witness{{"a", std::to_string(a)}, {"b", std::to_string(b)}, {"bracket", str(alg, br)}};
            }
        }
      return std::nullopt;
    });

    r.single("slice.inside_parabolic", [&]() -> std::optional<Witness> {
      for (const auto& v : slice.directions())
        if (!solve(slice.parabolic(), v.coords)) return Witness{{"direction", str(alg, v)}};
      return fail_if(!slice.in_affine_parabolic(slice.base()), {{"base", str(alg, slice.base())}});
    });

    r.single("slice.dim_eta_equals_dim_xi", [&]() {
      const std::size_t a = lie::centralizer(alg, slice.triple().eta).cols();
      const std::size_t b = lie::centralizer(alg, slice.triple().xi).cols();
      return fail_if(a != b || a != slice.dimension(),
                     {{"dim_g_eta", std::to_string(a)}, {"dim_g_xi", std::to_string(b)}});
    });

    r.single("slice.stabilizer_nilradical", [&]() {
      const bool equal = rank(slice.stabilizer_nilradical()) == rank(slice.nilradical());
      return fail_if(equal != (gr.dimension(-1) == 0), {{"dim_g_minus1", std::to_string(gr.dimension(-1))}});
    });

    r.sampled("conjugate.roundtrip", 50, [&](Sampler& s) {
      const Element y = slice.base() + Element(slice.parabolic() * s.vector(slice.parabolic().cols()));
      const auto c = slodowy::conjugate_to_slice(slice, y);
      const bool ok = lie::Ad(alg, c.u, c.s) == y && slice.contains(c.s) &&
                      slodowy::in_stabilizer_unipotent(slice, c.u) && lie::chi(alg, c.s) == lie::chi(alg, y);
      return fail_if(!ok, {{"y", str(alg, y)}, {"s", str(alg, c.s)}, {"u", to_string(c.u.matrix())}});
    });

    if (slice.is_principal()) {
      r.sampled("chi_section.idempotent", 20, [&](Sampler& s) {
        const Element x = lie::sample_element(alg, s);
        const Element xs = slodowy::chi_section(slice, x);
        const bool ok = slodowy::chi_section(slice, xs) == xs && lie::chi(alg, xs) == lie::chi(alg, x) &&
                        slice.contains(xs);
        return fail_if(!ok, {{"x", str(alg, x)}, {"x_tau", str(alg, xs)}});
      });

      r.sampled("chi_section.closed_form", 20, [&](Sampler& s) {
        const Element x = lie::sample_element(alg, s);
        const QVector c = lie::chi(alg, x).coeffs;
        QMatrix expected(alg.n(), alg.n());
        if (alg.n() == 2) {
          expected = QMatrix{{0, 1}, {-c[0], 0}};
        } else {
          const Rational a = -c[0] / Rational(2), b = -c[1];
          expected = QMatrix{{0, 1, 0}, {a, 0, 1}, {b, a, 0}};
        }
        const Element xs = slodowy::chi_section(slice, x);
        return fail_if(alg.to_matrix(xs) != expected,
                       {{"x", str(alg, x)}, {"x_tau", str(alg, xs)}, {"expected", to_string(expected)}});
      });
    } else if (!part.empty()) {
      r.single("chi_section.rejects_non_principal", [&]() -> std::optional<Witness> {
        try {
          slodowy::chi_section(slice, alg.zero());
        } catch (const MathError&) {
          return std::nullopt;
        }
        return Witness{{"error", "non-principal slice accepted"}};
      });
    }

    if (alg.n() == 2 && slice.is_principal()) {
      r.sampled("conjugate.closed_form", 20, [&](Sampler& s) {
        const Rational a = s.next(), c = s.next();
        const Element e = alg.basis_element(0), h = alg.basis_element(1), f = alg.basis_element(2);
        const Element y = e + h * a + f * c;
        const auto res = slodowy::conjugate_to_slice(slice, y);
        const Element s_expected = e + f * (c + a * a);
        const GroupElement u_expected = lie::exp_nilpotent(alg, f * (-a));
        return fail_if(res.s != s_expected || !(res.u == u_expected),
                       {{"a", a.str()}, {"c", c.str()}, {"s", str(alg, res.s)}, {"u", to_string(res.u.matrix())}});
      });
    }
  }
}

// ---------------------------------------------------------------- poisson

Covector covector_of(Sampler& s, std::size_t d) { return Covector(s.vector(d)); }

Rational dot(const QVector& a, const QVector& b) {
  Rational acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void poisson_into(const LieAlgebra& alg, const Config& config, std::vector<CheckResult>& out) {
  Recorder r(alg.name() + ".poisson", config, out);
  const std::size_t d = alg.dim();
  const Element zero = alg.zero();

  r.sampled("lie_poisson.bracket_consistency", 20, [&](Sampler& s) {
    const Element y = lie::sample_element(alg, s);
    const Covector a = covector_of(s, d), b = covector_of(s, d);
    // {f_a, f_b}(y) = a(P_y b) = κ(y, [κa, κb])
    const Rational lhs = a(poisson::lie_poisson_apply(alg, y, b));
    const Rational rhs = alg.killing(y, alg.bracket(alg.kappa(a), alg.kappa(b)));
    return fail_if(lhs != rhs, {{"y", str(alg, y)}, {"lhs", lhs.str()}, {"rhs", rhs.str()}});
  });

  r.sampled("lie_poisson.radial_kernel", 20, [&](Sampler& s) {
    const Element y = lie::sample_element(alg, s);
    const Element v = poisson::lie_poisson_apply(alg, y, alg.flat(y));
    return fail_if(!v.is_zero(), {{"y", str(alg, y)}, {"value", str(alg, v)}});
  });

  // {f_a, f_b} for linear functions f_a(y) = a·y is again linear; its covector:
  auto bracket_cov = [&](const QVector& a, const QVector& b) {
    QVector c(d);
    for (std::size_t i = 0; i < d; ++i)
      c[i] = dot(a, poisson::lie_poisson_apply(alg, alg.basis_element(i), Covector(b)).coords);
    return c;
  };
  r.sampled("lie_poisson.jacobi", 50, [&](Sampler& s) {
    const Element y = lie::sample_element(alg, s);
    const QVector a = s.vector(d), b = s.vector(d), c = s.vector(d);
    auto term = [&](const QVector& p, const QVector& q, const QVector& w) {
      return dot(p, poisson::lie_poisson_apply(alg, y, Covector(bracket_cov(q, w))).coords);
    };
    const Rational j = term(a, b, c) + term(b, c, a) + term(c, a, b);
    return fail_if(!j.is_zero(), {{"y", str(alg, y)}, {"jacobiator", j.str()}});
  });

  r.sampled("cotangent.omega_roundtrip", 20, [&](Sampler& s) {
    const Element x = lie::sample_element(alg, s);
    const Covector a = covector_of(s, d), b = covector_of(s, d);
    const Element v = lie::sample_element(alg, s), w = lie::sample_element(alg, s);
    const auto p = poisson::cotangent_bivector_apply(alg, x, a, b);
    const Rational lhs = poisson::cotangent_form(alg, x, p, {v, w});
    const Rational rhs = a(v) + b(w);
    return fail_if(lhs != rhs, {{"x", str(alg, x)}, {"lhs", lhs.str()}, {"rhs", rhs.str()}});
  });

  r.sampled("cotangent.bivector_invertible", 20, [&](Sampler& s) {
    const Element x = lie::sample_element(alg, s);
    const std::size_t rk = poisson::cotangent_bivector(alg, x).rank();
    return fail_if(rk != 2 * d, {{"x", str(alg, x)}, {"rank", std::to_string(rk)}});
  });

  r.single("bivector.rank_at_zero", [&]() {
    const std::size_t rk = poisson::lie_poisson_bivector(alg, zero).rank();
    return fail_if(rk != 0, {{"rank", std::to_string(rk)}});
  });

  r.sampled("bivector.rank_is_orbit_dimension", 20, [&](Sampler& s) {
    const Element y = lie::sample_element(alg, s);
    const std::size_t rk = poisson::lie_poisson_bivector(alg, y).rank();
    const std::size_t orbit = d - lie::centralizer(alg, y).cols();
    return fail_if(rk != orbit || rk % 2 != 0, {{"y", str(alg, y)}, {"rank", std::to_string(rk)}});
  });

  r.sampled("bivector.product_blocks", 10, [&](Sampler& s) {
    const Element y1 = lie::sample_element(alg, s), y2 = lie::sample_element(alg, s);
    const auto p1 = poisson::lie_poisson_bivector(alg, y1), p2 = poisson::lie_poisson_bivector(alg, y2);
    const auto p = poisson::product(p1, p2);
    bool ok = p.dim() == 2 * d;
    for (std::size_t i = 0; i < d && ok; ++i)
      for (std::size_t j = 0; j < d && ok; ++j)
        ok = p.matrix()(i, j) == p1.matrix()(i, j) && p.matrix()(d + i, d + j) == -p2.matrix()(i, j) &&
             p.matrix()(i, d + j).is_zero() && p.matrix()(d + i, j).is_zero();
    return fail_if(!ok, {{"y1", str(alg, y1)}, {"y2", str(alg, y2)}});
  });

  r.sampled("moment.lie_poisson_adjoint", 20, [&](Sampler& s) {
    const Element y = lie::sample_element(alg, s), b = lie::sample_element(alg, s);
    const auto c = poisson::check_moment_lie_poisson(alg, y, b);
    return fail_if(!c.ok, {{"y", str(alg, y)}, {"b", str(alg, b)}, {"H", to_string(c.hamiltonian)},
                           {"minus_V", to_string(c.fundamental)}});
  });

  auto tstarg_moment = [&](const std::string& name, bool general_g, bool left, bool right) {
    r.sampled(name, 20, [&, general_g, left, right](Sampler& s) {
      const GroupElement g = general_g ? lie::sample_group(alg.n(), s) : GroupElement::identity(alg.n());
      const Element x = lie::sample_element(alg, s);
      const Element b1 = left ? lie::sample_element(alg, s) : zero;
      const Element b2 = right ? lie::sample_element(alg, s) : zero;
      const auto c = poisson::check_moment_tstarg(alg, {g, x}, b1, b2);
      return fail_if(!c.ok, {{"g", to_string(g.matrix())}, {"x", str(alg, x)}, {"b1", str(alg, b1)},
                             {"b2", str(alg, b2)}, {"H", to_string(c.hamiltonian)},
                             {"minus_V", to_string(c.fundamental)}});
    });
  };
  tstarg_moment("moment.tstarg_right_at_identity", false, false, true);
  tstarg_moment("moment.tstarg_right_general", true, false, true);
  tstarg_moment("moment.tstarg_left_general", true, true, false);
  tstarg_moment("moment.tstarg_both_general", true, true, true);

  r.sampled("moment.zero_b", 5, [&](Sampler& s) {
    const Element y = lie::sample_element(alg, s);
    const auto c = poisson::check_moment_lie_poisson(alg, y, zero);
    const bool ok = c.ok && Element(c.hamiltonian).is_zero();
    return fail_if(!ok, {{"y", str(alg, y)}});
  });

  r.sampled("equivariance.rho", 20, [&](Sampler& s) {
    const GroupElement h = lie::sample_group(alg.n(), s), k1 = lie::sample_group(alg.n(), s),
                       k2 = lie::sample_group(alg.n(), s);
    const Element y = lie::sample_element(alg, s);
    const poisson::CotangentPoint moved{k1 * h * k2.inverse(), lie::Ad(alg, k2, y)};
    const auto lhs = poisson::rho(alg, moved);
    const auto base = poisson::rho(alg, {h, y});
    const poisson::MomentValue rhs{lie::Ad(alg, k1, base.left), lie::Ad(alg, k2, base.right)};
    return fail_if(!(lhs == rhs), {{"y", str(alg, y)}});
  });

  const SlodowySlice principal = make_slice(alg, principal_partition(alg));
  r.sampled("equivariance.rho_tau", 20, [&](Sampler& s) {
    const Element sp = random_slice_point(principal, s);
    const GroupElement g = lie::sample_group(alg.n(), s), k = lie::sample_group(alg.n(), s);
    const Element lhs = poisson::mu_g_stau(alg, k * g, sp, principal);
    const Element rhs = lie::Ad(alg, k, poisson::mu_g_stau(alg, g, sp, principal));
    return fail_if(lhs != rhs, {{"s", str(alg, sp)}});
  });

  r.sampled("equivariance.rho_bar_tau", 20, [&](Sampler& s) {
    const Element sp = random_slice_point(principal, s);
    const GroupElement g = lie::sample_group(alg.n(), s), k = lie::sample_group(alg.n(), s);
    const wonderful::LogCotangentPoint p(wonderful::graph_subspace(alg, g), lie::Ad(alg, g, sp), sp);
    const GroupElement e = GroupElement::identity(alg.n());
    const wonderful::LogCotangentPoint q(wonderful::act(alg, k, e, p.gamma), lie::Ad(alg, k, p.y1), p.y2);
    const Element lhs = poisson::rho_bar_tau(q, principal);
    const Element rhs = lie::Ad(alg, k, poisson::rho_bar_tau(p, principal));
    return fail_if(lhs != rhs, {{"s", str(alg, sp)}});
  });

  for (const auto& part : partitions_of(alg, config)) {
    const SlodowySlice slice = make_slice(alg, part);
    const std::string tag = "slice." + partition_label(part);
    const std::size_t expected_codim = d - lie::centralizer(alg, slice.triple().eta).cols();

    r.single(tag + ".codimension", [&]() {
      const std::size_t a = poisson::slice_codimension(slice, poisson::Space::lie_poisson);
      const std::size_t b = poisson::slice_codimension(slice, poisson::Space::tstarg_right);
      return fail_if(a != expected_codim || b != expected_codim,
                     {{"lie_poisson", std::to_string(a)}, {"tstarg_right", std::to_string(b)},
                      {"expected", std::to_string(expected_codim)}});
    });

    r.sampled(tag + ".transversal_lie_poisson", 20, [&](Sampler& s) {
      const Element y = random_slice_point(slice, s);
      const auto t = poisson::transversal_check(poisson::lie_poisson_bivector(alg, y),
                                                poisson::slice_tangent(slice, poisson::Space::lie_poisson));
      const QMatrix both = hstack(poisson::slice_tangent(slice, poisson::Space::lie_poisson),
                                  poisson::orbit_tangent_lie_poisson(alg, y));
      const bool ok = t.success && t.complement.cols() == expected_codim && rank(both) == d;
      return fail_if(!ok, {{"y", str(alg, y)}, {"sum_rank", std::to_string(t.sum_rank)},
                           {"orbit_sum_rank", std::to_string(rank(both))}});
    });

    r.sampled(tag + ".transversal_tstarg_right", 20, [&](Sampler& s) {
      const Element y = random_slice_point(slice, s);
      const GroupElement g = lie::sample_group(alg.n(), s);
      const QMatrix tangent = poisson::slice_tangent(slice, poisson::Space::tstarg_right);
      const auto t = poisson::transversal_check(poisson::cotangent_bivector(alg, y), tangent);
      const QMatrix both = hstack(tangent, poisson::orbit_tangent_tstarg_right(alg, {g, y}));
      const bool ok = t.success && t.complement.cols() == expected_codim && rank(both) == 2 * d;
      return fail_if(!ok, {{"y", str(alg, y)}, {"sum_rank", std::to_string(t.sum_rank)},
                           {"orbit_sum_rank", std::to_string(rank(both))}});
    });
  }
}

// ---------------------------------------------------------------- wonderful

void wonderful_into(const LieAlgebra& alg, const Config& config, std::vector<CheckResult>& out) {
  Recorder r(alg.name() + ".wonderful", config, out);
  const std::size_t n = alg.n();
  const bool small = n == 2;
  // Plücker vectors of sl3 curves live in a 12870-dimensional space; keep those sweeps short.
  const std::size_t curves = small ? 10 : 5;
  const std::size_t plucker_curves = small ? 10 : 2;
  // For sl3 the two limit methods are compared only in limit.methods_agree.
  auto lim_of = [small](const wonderful::CurveSubspace& c) {
    return small ? wonderful::limit(c) : wonderful::limit_by_reduction(c);
  };

  r.single("graph.identity_is_diagonal", [&]() {
    const auto g = wonderful::graph_subspace(alg, GroupElement::identity(n));
    bool ok = !wonderful::is_boundary(g);
    for (std::size_t i = 0; i < alg.dim() && ok; ++i) ok = g.contains(alg.basis_element(i), alg.basis_element(i));
    return fail_if(!ok, {{"gamma", wonderful::to_string(alg, g)}});
  });

  r.sampled("graph.equivariance", 10, [&](Sampler& s) {
    const GroupElement g = lie::sample_group(n, s), k1 = lie::sample_group(n, s), k2 = lie::sample_group(n, s);
    const auto lhs = wonderful::graph_subspace(alg, k1 * g * k2.inverse());
    const auto rhs = wonderful::act(alg, k1, k2, wonderful::graph_subspace(alg, g));
    return fail_if(!(lhs == rhs), {{"g", to_string(g.matrix())}});
  });

  r.single("graph.injective", [&]() -> std::optional<Witness> {
    Sampler s(config.seed ^ fnv1a(alg.name() + ".graph.injective"));
    std::vector<GroupElement> gs;
    std::vector<wonderful::Subspace> spaces;
    std::vector<QVector> pl;
    while (gs.size() < r.scaled(20)) {
      const GroupElement g = lie::sample_group(n, s);
      if (std::find(gs.begin(), gs.end(), g) != gs.end()) continue;
      gs.push_back(g);
      spaces.push_back(wonderful::graph_subspace(alg, g));
      if (small) pl.push_back(spaces.back().plucker());
    }
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = i + 1; j < gs.size(); ++j) {
        const bool same = small ? pl[i] == pl[j] : spaces[i] == spaces[j];
        if (same) return Witness{{"g1", to_string(gs[i].matrix())}, {"g2", to_string(gs[j].matrix())}};
      }
    return std::nullopt;
  });

  r.sampled("limit.constant_curve", 3, [&](Sampler& s) {
    const GroupElement g = lie::sample_group(n, s);
    const auto curve = g.matrix().map([](const Rational& q) { return LaurentPoly(q); });
    const auto lim = lim_of(wonderful::graph_curve(alg, curve));
    return fail_if(!(lim == wonderful::graph_subspace(alg, g)) || wonderful::is_boundary(lim),
                   {{"g", to_string(g.matrix())}});
  });

  r.sampled("limit.methods_agree", plucker_curves, [&](Sampler& s) {
    const auto g = wonderful::sample_torus_curve(n, s);
    const auto curve = wonderful::graph_curve(alg, g);
    const auto by_reduction = wonderful::limit_by_reduction(curve);
    const auto by_plucker = wonderful::limit_plucker(curve);
    return fail_if(by_reduction.plucker() != by_plucker,
                   {{"reduction", wonderful::to_string(alg, by_reduction)}, {"plucker", to_string(by_plucker)}});
  });

  r.sampled("limit.reparametrization_invariant", curves, [&](Sampler& s) {
    const auto g = wonderful::sample_torus_curve(n, s);
    const int k = 2 + static_cast<int>((s.next().numerator().get_si() % 2 + 2) % 2);
    const auto a = lim_of(wonderful::graph_curve(alg, g));
    const auto b = lim_of(wonderful::graph_curve(alg, wonderful::reparametrize(g, k)));
    return fail_if(!(a == b), {{"k", std::to_string(k)}, {"limit", wonderful::to_string(alg, a)},
                               {"reparametrized", wonderful::to_string(alg, b)}});
  });

  r.sampled("limit.unit_invariant", curves, [&](Sampler& s) {
    const auto g = wonderful::sample_torus_curve(n, s);
    auto curve = wonderful::graph_curve(alg, g);
    const auto a = wonderful::limit_by_reduction(curve);
    for (std::size_t i = 0; i < curve.rows.rows(); ++i) {
      const LaurentPoly unit = LaurentPoly::monomial(s.next_nonzero(), static_cast<int>(i % 3) - 1);
      for (std::size_t j = 0; j < curve.rows.cols(); ++j) curve.rows(i, j) *= unit;
    }
    const auto b = wonderful::limit_by_reduction(curve);
    return fail_if(!(a == b), {{"limit", wonderful::to_string(alg, a)}, {"rescaled", wonderful::to_string(alg, b)}});
  });

  r.sampled("limit.chi_compatible", small ? 20 : 5, [&](Sampler& s) {
    const auto lim = lim_of(wonderful::graph_curve(alg, wonderful::sample_torus_curve(n, s)));
    const std::uint64_t inner = s.next().numerator().get_ui();
    return fail_if(!wonderful::chi_compatible(alg, lim, 20, inner), {{"gamma", wonderful::to_string(alg, lim)}});
  });

  r.single("boundary.torus_limit", [&]() {
    wonderful::LMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = LaurentPoly::monomial(Rational(1), static_cast<int>(n - 1 - i));
    const auto lim = lim_of(wonderful::graph_curve(alg, g));
    const bool ok = wonderful::is_boundary(lim) && wonderful::chi_compatible(alg, lim, 20, config.seed);
    return fail_if(!ok, {{"gamma", wonderful::to_string(alg, lim)}});
  });

  if (!small) return;

  r.single("limit.diag_t_1", [&]() {
    const auto lim = lim_of(wonderful::graph_curve(alg, wonderful::parse_curve("diag(t,1)")));
    const Element e = alg.basis_element(0), h = alg.basis_element(1), f = alg.basis_element(2);
    const QMatrix rows{{0, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 0}};
    const auto expected = wonderful::Subspace::from_rows(rows);
    const auto model = wonderful::pgl2_model(alg, QMatrix{{0, 0}, {0, 1}});
    const bool ok = lim == expected && lim == model && wonderful::is_boundary(lim) && lim.contains(f, alg.zero()) &&
                    !lim.contains(h, -h) && lim.contains(alg.zero(), e);
    return fail_if(!ok, {{"limit", wonderful::to_string(alg, lim)}});
  });

  r.single("limit.projective_equivalence", [&]() {
    const auto a = lim_of(wonderful::graph_curve(alg, wonderful::parse_curve("diag(t,t^-1)")));
    const auto b = lim_of(wonderful::graph_curve(alg, wonderful::parse_curve("diag(t^2,1)")));
    return fail_if(!(a == b), {{"a", wonderful::to_string(alg, a)}, {"b", wonderful::to_string(alg, b)}});
  });

  r.sampled("pgl2.matches_curve_limit", 10, [&](Sampler& s) {
    const auto g = wonderful::sample_torus_curve(n, s);
    const auto lim = lim_of(wonderful::graph_curve(alg, g));
    const QMatrix a = wonderful::leading_matrix(g);
    const auto model = wonderful::pgl2_model(alg, a);
    return fail_if(!(lim == model), {{"A", to_string(a)}, {"limit", wonderful::to_string(alg, lim)},
                                     {"model", wonderful::to_string(alg, model)}});
  });

  r.sampled("pgl2.graph_agrees", 10, [&](Sampler& s) {
    const GroupElement g = lie::sample_group(n, s);
    return fail_if(!(wonderful::graph_subspace(alg, g) == wonderful::pgl2_model(alg, g.matrix())),
                   {{"g", to_string(g.matrix())}});
  });

  r.sampled("boundary.rank_one_models", 20, [&](Sampler& s) {
    QVector u = s.vector(2), v = s.vector(2);
    if (u[0].is_zero() && u[1].is_zero()) u[0] = Rational(1);
    if (v[0].is_zero() && v[1].is_zero()) v[1] = Rational(1);
    const QMatrix a{{u[0] * v[0], u[0] * v[1]}, {u[1] * v[0], u[1] * v[1]}};
    const auto gamma = wonderful::pgl2_model(alg, a);
    const bool ok = wonderful::is_boundary(gamma) && wonderful::chi_compatible(alg, gamma, 20, config.seed) &&
                    wonderful::pgl2_matrix(alg, gamma) == QMatrix(2, 2, wonderful::normalize_projective(
                                                                         {a(0, 0), a(0, 1), a(1, 0), a(1, 1)}));
    return fail_if(!ok, {{"A", to_string(a)}, {"gamma", wonderful::to_string(alg, gamma)}});
  });

  r.single("chi_compatible.detects_non_members", [&]() -> std::optional<Witness> {
    // A random 3-dimensional subspace is generically not in the compactification.
    Sampler s(config.seed ^ fnv1a("random-subspace"));
    for (int attempt = 0; attempt < 20; ++attempt) {
      const QMatrix rows(3, 6, s.vector(18));
      if (rank(rows) != 3) continue;
      const auto gamma = wonderful::Subspace::from_rows(rows);
      if (!wonderful::chi_compatible(alg, gamma, 20, config.seed)) return std::nullopt;
    }
    return Witness{{"error", "no random subspace violated chi-compatibility"}};
  });
}

// ---------------------------------------------------------------- slices

void slices_into(const LieAlgebra& alg, const Config& config, std::vector<CheckResult>& out) {
  Recorder r(alg.name() + ".slices", config, out);
  const std::size_t n = alg.n();
  const SlodowySlice slice = make_slice(alg, principal_partition(alg));
  using slices::XPoint;
  using poisson::Space;

  // Points of the slice preimages X_τ for both implemented X.
  auto sample_x = [&](Space space, Sampler& s) {
    const Element sp = random_slice_point(slice, s);
    if (space == Space::tstarg_right) return XPoint{space, lie::sample_group(n, s), sp};
    return slices::g_stau_point(slices::sample_centralizer(alg, sp, s), sp, slice);
  };

  r.sampled("universal_centralizer.matches_tstarg_both", 50, [&](Sampler& s) {
    const std::size_t kind = static_cast<std::size_t>((s.next().numerator().get_si() % 4 + 4) % 4);
    const Element x = kind < 2 ? random_slice_point(slice, s) : lie::sample_element(alg, s);
    GroupElement g = GroupElement::identity(n);
    if (kind % 2 == 0 && lie::is_regular(alg, x))
      g = slices::sample_centralizer(alg, x, s);
    else
      g = lie::sample_group(n, s);
    const bool a = slices::universal_centralizer_contains(alg, g, x, slice);
    const bool b = slices::slice_membership(alg, XPoint{Space::tstarg_both, g, x}, slice);
    return fail_if(a != b, {{"g", to_string(g.matrix())}, {"x", str(alg, x)}});
  });

  for (Space space : {Space::tstarg_right, Space::g_stau}) {
    const std::string tag = poisson::space_name(space);

    r.sampled("psi_tau.zero_moment." + tag, 20, [&, space](Sampler& s) {
      const XPoint x = sample_x(space, s);
      const auto c = slices::psi_tau(alg, x, slice);
      const auto nc = slices::normalize_class(alg, c, slice);
      const bool ok = slices::zero_moment(alg, c, slice) && slices::zero_moment(alg, nc, slice) &&
                      slices::normalize_class(alg, nc, slice) == nc;
      return fail_if(!ok, {{"g", to_string(x.g.matrix())}, {"y", str(alg, x.y)}});
    });

    r.sampled("k_tau.in_gbar_stau." + tag, 20, [&, space](Sampler& s) {
      const XPoint x = sample_x(space, s);
      const auto c = slices::k_tau(alg, x, slice);
      const auto& p = c.log_point();
      const bool ok = wonderful::in_gbar_stau(alg, p.gamma, p.y1, p.y2, slice) && !wonderful::is_boundary(p.gamma) &&
                      slices::zero_moment(alg, c, slice);
      return fail_if(!ok, {{"g", to_string(x.g.matrix())}, {"y", str(alg, x.y)}});
    });

    r.sampled("diagram.commutes." + tag, 20, [&, space](Sampler& s) {
      const XPoint x = sample_x(space, s);
      const auto dc = slices::pi_maps_commute(alg, x, slice);
      return fail_if(!dc.pi_commutes || !dc.triangle, {{"g", to_string(x.g.matrix())}, {"y", str(alg, x.y)},
                                                       {"pi", str(alg, dc.pi_tau)},
                                                       {"pi_bar_k", str(alg, dc.pi_bar_k)}});
    });

    r.sampled("normalize.orbit." + tag, 10, [&, space](Sampler& s) {
      const XPoint x = sample_x(space, s);
      const auto raw = slices::k_tau(alg, x, slice);
      const auto base = slices::normalize_class(alg, raw, slice);
      const GroupElement k = lie::sample_group(n, s);
      const auto moved = slices::normalize_class(alg, slices::act_class(alg, k, raw), slice);
      return fail_if(!(moved == base), {{"g", to_string(x.g.matrix())}, {"k", to_string(k.matrix())}});
    });

    r.sampled("free_locus.k_tau." + tag, 20, [&, space](Sampler& s) {
      const XPoint x = sample_x(space, s);
      const auto c = slices::k_tau(alg, x, slice);
      const QMatrix stab = slices::stabilizer_infinitesimal(alg, c.x, c.log_point());
      return fail_if(stab.cols() != 0, {{"g", to_string(x.g.matrix())}, {"dim", std::to_string(stab.cols())}});
    });
  }

  if (n != 2) return;

  r.sampled("free_locus.group_agreement", 10, [&](Sampler& s) {
    // alternate free points k_τ(x) with bare points of Ḡ × S_τ
    const bool with_x = s.next().sign() >= 0;
    std::optional<XPoint> x;
    std::optional<wonderful::LogCotangentPoint> p;
    if (with_x) {
      x = sample_x(Space::tstarg_right, s);
      p = slices::k_tau(alg, *x, slice).log_point();
    } else {
      QMatrix a(2, 2, s.vector(4));
      if (s.next().sign() > 0) a = QMatrix{{a(0, 0), a(0, 1)}, {a(0, 0) * a(1, 1), a(0, 1) * a(1, 1)}};
      if (a.is_zero_matrix()) a = QMatrix{{0, 0}, {0, 1}};
      const auto gamma = wonderful::pgl2_model(alg, a);
      const auto [y1, y2] = gamma.element(s.vector(3));
      p.emplace(gamma, y1, y2);
    }
    const std::size_t inf = slices::stabilizer_infinitesimal(alg, x, *p).cols();
    const std::size_t grp = slices::stabilizer_dimension_pgl2(alg, x, *p);
    return fail_if(inf != grp, {{"gamma", wonderful::to_string(alg, p->gamma)}, {"y1", str(alg, p->y1)},
                                {"infinitesimal", std::to_string(inf)}, {"group", std::to_string(grp)}});
  });

  r.single("free_locus.boundary_alone_has_stabilizer", [&]() {
    const auto gamma = wonderful::pgl2_model(alg, QMatrix{{0, 0}, {0, 1}});
    const wonderful::LogCotangentPoint p(gamma, alg.zero(), alg.basis_element(0));
    const std::size_t inf = slices::stabilizer_infinitesimal(alg, std::nullopt, p).cols();
    return fail_if(inf == 0, {{"dim", std::to_string(inf)}});
  });

  auto s_of = [&](long c) { return slice.point_on_first_direction(Rational(c)); };

  r.sampled("fibre.projective_line", 20, [&](Sampler& s) {
    const Element x = slice.point_on_first_direction(s.next());
    const auto fib = slices::compactified_fibre_pgl2(alg, x, slice);
    return fail_if(fib.projective_dim != 1, {{"x", str(alg, x)}, {"dim", std::to_string(fib.projective_dim)}});
  });

  r.single("fibre.named_points", [&]() -> std::optional<Witness> {
    for (long c : {0L, 1L, 4L}) {
      const auto fib = slices::compactified_fibre_pgl2(alg, s_of(c), slice);
      if (fib.projective_dim != 1) return Witness{{"c", std::to_string(c)}, {"dim", std::to_string(fib.projective_dim)}};
    }
    return std::nullopt;
  });

  r.single("fibre.boundary_over_s1", [&]() -> std::optional<Witness> {
    const Element x = s_of(1);
    const auto fib = slices::compactified_fibre_pgl2(alg, x, slice);
    const auto pts = slices::fibre_boundary_points(fib);
    if (!pts || pts->size() != 2) return Witness{{"error", "expected two rational boundary points"}};
    const QMatrix sm = alg.to_matrix(x), id = QMatrix::identity(2);
    auto norm = [](const QMatrix& m) {
      return QMatrix(2, 2, wonderful::normalize_projective({m(0, 0), m(0, 1), m(1, 0), m(1, 1)}));
    };
    const QMatrix plus = norm(id + sm), minus = norm(id - sm);
    const bool match = ((*pts)[0] == plus && (*pts)[1] == minus) || ((*pts)[0] == minus && (*pts)[1] == plus);
    bool boundary = true;
    for (const auto& a : *pts) boundary = boundary && rank(a) == 1 && wonderful::is_boundary(wonderful::pgl2_model(alg, a));
    return fail_if(!match || !boundary, {{"points", to_string((*pts)[0]) + " " + to_string((*pts)[1])}});
  });

  r.sampled("fibre.open_part_is_centralizer", 20, [&](Sampler& s) {
    const Element x = slice.point_on_first_direction(s.next());
    const auto fib = slices::compactified_fibre_pgl2(alg, x, slice);
    const QMatrix a = fib.basis[0] * s.next() + fib.basis[1] * s.next();
    if (a.is_zero_matrix()) return std::optional<Witness>{};
    const bool invertible = !determinant(a).is_zero();
    const bool boundary = wonderful::is_boundary(wonderful::pgl2_model(alg, a));
    bool ok = invertible != boundary;
    if (invertible) ok = ok && lie::Ad(alg, GroupElement::from_matrix(a), x) == x;
    return fail_if(!ok, {{"x", str(alg, x)}, {"A", to_string(a)}});
  });
}

void append_for_algebras(const Config& config, std::vector<CheckResult>& out,
                         void (*fn)(const LieAlgebra&, const Config&, std::vector<CheckResult>&)) {
  for (const auto& name : algebras_of(config)) {
    const LieAlgebra alg = LieAlgebra::from_name(name);
    fn(alg, config, out);
  }
}

}  // namespace

void Config::validate() const {
  if (algebra && *algebra != "a1" && *algebra != "a2")
    throw MathError("invalid algebra '" + *algebra + "' (expected a1 or a2)");
  if (samples == 0) throw MathError("samples must be positive");
  if (partition) {
    if (!algebra) throw MathError("a partition requires --algebra");
    const LieAlgebra alg = LieAlgebra::from_name(*algebra);
    slodowy::standard_triple(alg, *partition);
    if (partition->empty()) throw MathError("partition must be nonempty");
  }
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* SuiteReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"liecore", "slodowy", "poisson", "wonderful", "slices", "all"};
  return names;
}

std::vector<CheckResult> liecore_checks(const LieAlgebra& alg, const Config& config) {
  std::vector<CheckResult> out;
  liecore_into(alg, config, out);
  return out;
}

SuiteReport run_suite(const std::string& name, const Config& config) {
  config.validate();
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw MathError("unknown suite '" + name + "'");
  SuiteReport report{name, config, {}};
  const bool all = name == "all";
  if (all || name == "liecore") append_for_algebras(config, report.checks, liecore_into);
  if (all || name == "slodowy") append_for_algebras(config, report.checks, slodowy_into);
  if (all || name == "poisson") append_for_algebras(config, report.checks, poisson_into);
  if (all || name == "wonderful") append_for_algebras(config, report.checks, wonderful_into);
  if (all || name == "slices") append_for_algebras(config, report.checks, slices_into);
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return report;
}

std::string to_json(const SuiteReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["suite"] = report.suite;
  nlohmann::ordered_json cfg;
  cfg["algebra"] = report.config.algebra ? nlohmann::ordered_json(*report.config.algebra) : nlohmann::ordered_json();
  if (report.config.partition)
    cfg["partition"] = *report.config.partition;
  else
    cfg["partition"] = nullptr;
  cfg["samples"] = report.config.samples;
  cfg["seed"] = report.config.seed;
  j["config_echo"] = cfg;
  j["passed"] = report.passed();
  std::size_t failed = 0;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = c.passed ? "pass" : "fail";
    if (!c.passed) {
      ++failed;
      nlohmann::ordered_json w = nlohmann::ordered_json::object();
      for (const auto& [k, v] : c.witness) w[k] = v;
      cj["witness"] = w;
    }
    checks.push_back(cj);
  }
  j["summary"] = {{"total", report.checks.size()}, {"failed", failed}};
  j["checks"] = checks;
  return j.dump(2);
}

}  // namespace slicelab::suites
