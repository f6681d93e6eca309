#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "slicelab/slices.hpp"
#include "slicelab/slodowy.hpp"
#include "slicelab/suites.hpp"
#include "slicelab/wonderful.hpp"

using namespace slicelab;
using json = nlohmann::ordered_json;

namespace {

constexpr int kUsageError = 2;

/// Settings gathered from flags, SLICELAB_SEED and the key=value config file.
struct Settings {
  std::string algebra;
  std::string partition;
  std::string seed;
  std::string samples;
};

void read_config_file(const std::string& path, Settings& out) {
  std::ifstream in(path);
  if (!in) throw MathError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw MathError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    if (key == "algebra") out.algebra = value;
    else if (key == "partition") out.partition = value;
    else if (key == "seed") out.seed = value;
    else if (key == "samples") out.samples = value;
    else throw MathError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

std::uint64_t parse_unsigned(const std::string& what, const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw MathError("invalid " + what + " '" + text + "'");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw MathError("invalid " + what + " '" + text + "'");
  }
}

/// Resolves precedence: flags > SLICELAB_SEED > config file > defaults.
suites::Config resolve(const Settings& flags, const std::string& config_path) {
  Settings file;
  if (!config_path.empty()) read_config_file(config_path, file);
  auto pick = [](const std::string& a, const std::string& b) { return a.empty() ? b : a; };

  suites::Config c;
  const std::string algebra = pick(flags.algebra, file.algebra);
  if (!algebra.empty()) c.algebra = algebra;
  const std::string partition = pick(flags.partition, file.partition);
  if (!partition.empty()) {
    c.partition = slodowy::parse_partition(partition);
    // a partition of n determines sl_n when no algebra was named
    int size = 0;
    for (int part : *c.partition) size += part;
    if (!c.algebra && (size == 2 || size == 3)) c.algebra = "a" + std::to_string(size - 1);
  }
  std::string seed = flags.seed;
  if (seed.empty())
    if (const char* env = std::getenv("SLICELAB_SEED")) seed = env;
  if (seed.empty()) seed = file.seed;
  if (!seed.empty()) c.seed = parse_unsigned("seed", seed);
  const std::string samples = pick(flags.samples, file.samples);
  if (!samples.empty()) c.samples = parse_unsigned("samples", samples);
  c.validate();
  return c;
}

lie::LieAlgebra algebra_or(const suites::Config& c, const std::string& fallback) {
  return lie::LieAlgebra::from_name(c.algebra.value_or(fallback));
}

json element_json(const lie::LieAlgebra& alg, const lie::Element& x) {
  json coords = json::array();
  for (std::size_t i = 0; i < x.size(); ++i) coords.push_back(x.coords[i].str());
  json j;
  j["element"] = lie::to_string(alg, x);
  j["coords"] = coords;
  return j;
}

json matrix_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

int cmd_verify(const std::string& suite, const suites::Config& c) {
  const auto report = suites::run_suite(suite, c);
  std::cout << suites::to_json(report) << "\n";
  return report.passed() ? 0 : 1;
}

int cmd_limit(const std::string& spec, suites::Config c, bool as_json) {
  const wonderful::LMatrix curve = wonderful::parse_curve(spec);
  if (!c.algebra) c.algebra = curve.rows() == 2 ? "a1" : "a2";
  const auto alg = lie::LieAlgebra::from_name(*c.algebra);
  if (curve.rows() != alg.n()) throw MathError("curve size does not match --algebra " + *c.algebra);
  const auto gamma = wonderful::limit(wonderful::graph_curve(alg, curve));
  const QVector pl = gamma.plucker();
  const bool boundary = wonderful::is_boundary(gamma);
  if (as_json) {
    json pj = json::array();
    for (std::size_t i = 0; i < pl.size(); ++i) pj.push_back(pl[i].str());
    json j;
    j["schema"] = 1;
    j["curve"] = spec;
    j["algebra"] = alg.name();
    j["basis"] = matrix_json(gamma.basis());
    j["subspace"] = wonderful::to_string(alg, gamma);
    j["plucker"] = pj;
    j["boundary"] = boundary;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "subspace: " << wonderful::to_string(alg, gamma) << "\n";
    std::cout << "basis:\n";
    for (std::size_t i = 0; i < gamma.basis().rows(); ++i) std::cout << "  " << to_string(gamma.basis().row(i)) << "\n";
    std::cout << "plucker (nonzero coordinates of " << pl.size() << "):";
    for (std::size_t i = 0; i < pl.size(); ++i)
      if (!pl[i].is_zero()) std::cout << " [" << i << "]=" << pl[i].str();
    std::cout << "\n";
    std::cout << "boundary: " << (boundary ? "true" : "false") << "\n";
  }
  return 0;
}

/// "s(c)" names the point e + c·f of the principal sl₂ slice; anything else is an element spec.
lie::Element parse_point(const lie::LieAlgebra& alg, const slodowy::SlodowySlice& slice, const std::string& spec) {
  if (spec.size() > 3 && spec.rfind("s(", 0) == 0 && spec.back() == ')')
    return slice.point_on_first_direction(Rational::parse(spec.substr(2, spec.size() - 3)));
  return lie::parse_element(alg, spec);
}

int cmd_fibre(const std::string& spec, const suites::Config& c, bool as_json) {
  const auto alg = algebra_or(c, "a1");
  if (alg.n() != 2) throw MathError("fibre: only a1 (pgl2) fibres are computed");
  const slodowy::SlodowySlice slice(alg, slodowy::standard_triple(alg, {2}));
  const auto fib = slices::compactified_fibre_pgl2(alg, parse_point(alg, slice, spec), slice);
  const auto boundary = slices::fibre_boundary_points(fib);
  if (as_json) {
    json basis = json::array();
    for (const auto& m : fib.basis) basis.push_back(matrix_json(m));
    json j;
    j["schema"] = 1;
    j["x"] = element_json(alg, fib.x);
    j["x_tau"] = element_json(alg, fib.x_tau);
    j["basis"] = basis;
    j["projective_dim"] = fib.projective_dim;
    if (boundary) {
      json pts = json::array();
      for (const auto& m : *boundary) pts.push_back(matrix_json(m));
      j["boundary_points"] = pts;
    } else {
      j["boundary_points"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "x: " << lie::to_string(alg, fib.x) << "\n";
    std::cout << "x_tau: " << lie::to_string(alg, fib.x_tau) << "\n";
    std::cout << "projective_dim: " << fib.projective_dim << "\n";
    std::cout << "basis:\n";
    for (const auto& m : fib.basis) std::cout << "  " << to_string(m) << "\n";
    if (boundary) {
      std::cout << "boundary:\n";
      for (const auto& m : *boundary) std::cout << "  " << to_string(m) << "\n";
    } else {
      std::cout << "boundary: not rational\n";
    }
  }
  return 0;
}

int cmd_slice_project(const std::string& spec, const suites::Config& c, bool as_json) {
  const auto alg = algebra_or(c, "a1");
  const std::vector<int> part = c.partition.value_or(std::vector<int>{static_cast<int>(alg.n())});
  const slodowy::SlodowySlice slice(alg, slodowy::standard_triple(alg, part));
  const lie::Element y = lie::parse_element(alg, spec);
  const auto res = slodowy::conjugate_to_slice(slice, y);
  const lie::Element log_u = alg.from_matrix(lie::log_unipotent(res.u.matrix()));
  if (as_json) {
    json j;
    j["schema"] = 1;
    j["y"] = element_json(alg, y);
    j["u"] = matrix_json(res.u.matrix());
    j["log_u"] = element_json(alg, log_u);
    j["s"] = element_json(alg, res.s);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "u: exp(" << lie::to_string(alg, log_u) << ") = " << to_string(res.u.matrix()) << "\n";
    std::cout << "s: " << lie::to_string(alg, res.s) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Slodowy slices, wonderful limits and universal centralizers"};
  app.require_subcommand(1);
  Settings flags;
  std::string config_path;
  bool as_json = false;
  app.add_option("--algebra", flags.algebra, "a1 (sl2) or a2 (sl3)");
  app.add_option("--seed", flags.seed, "sampling seed (overrides SLICELAB_SEED)");
  app.add_option("--samples", flags.samples, "base sample count (default 20)");
  app.add_option("--config", config_path, "line-based key=value config file");
  app.add_flag("--json", as_json, "machine-readable output");

  std::string suite, curve, point, element;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "liecore, slodowy, poisson, wonderful, slices or all")->required();
  verify->add_option("--partition", flags.partition, "restrict slice checks to one partition, e.g. 2,1");
  auto* limit = app.add_subcommand("limit", "limit t->0 of the graph of a Laurent curve");
  limit->add_option("--curve", curve, "e.g. diag(t,1) or [[t,1],[0,t^-1]]")->required();
  auto* fibre = app.add_subcommand("fibre", "compactified universal centralizer fibre (a1)");
  fibre->add_option("--point", point, "s(c) or an element of sl2")->required();
  auto* project = app.add_subcommand("slice-project", "conjugate an element of xi+p into the slice");
  project->add_option("--element", element, "e.g. e+h, (1,1,0) or [[1,1],[0,-1]]")->required();
  project->add_option("--partition", flags.partition, "Jordan type of xi, e.g. 2,1");
  for (auto* sub : {verify, limit, fibre, project}) {
    sub->add_option("--algebra", flags.algebra);
    sub->add_option("--seed", flags.seed);
    sub->add_option("--samples", flags.samples);
    sub->add_option("--config", config_path);
    sub->add_flag("--json", as_json);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    const suites::Config config = resolve(flags, config_path);
    if (*verify) return cmd_verify(suite, config);
    if (*limit) return cmd_limit(curve, config, as_json);
    if (*fibre) return cmd_fibre(point, config, as_json);
    return cmd_slice_project(element, config, as_json);
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
