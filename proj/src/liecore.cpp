#include "slicelab/liecore.hpp"

#include <algorithm>
#include <cctype>

namespace slicelab::lie {

bool Element::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& r) { return r.is_zero(); });
}

Element& Element::operator+=(const Element& o) {
  if (o.size() != size()) throw MathError("Element: dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] += o.coords[i];
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (o.size() != size()) throw MathError("Element: dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

Element& Element::operator*=(const Rational& s) {
  for (auto& c : coords) c *= s;
  return *this;
}

Rational Covector::operator()(const Element& z) const {
  if (z.size() != coords.size()) throw MathError("Covector: dimension mismatch");
  Rational acc(0);
  for (std::size_t i = 0; i < coords.size(); ++i) acc += coords[i] * z.coords[i];
  return acc;
}

namespace {

QMatrix normalize_projective(QMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) {
        const Rational s = m(i, j).inverse();
        return m * s;
      }
  throw MathError("GroupElement: zero matrix");
}

}  // namespace

GroupElement GroupElement::identity(std::size_t n) { return GroupElement(QMatrix::identity(n)); }

GroupElement GroupElement::from_matrix(const QMatrix& m) {
  if (m.rows() != m.cols()) throw MathError("GroupElement: matrix not square");
  if (determinant(m).is_zero()) throw MathError("GroupElement: singular matrix");
  return GroupElement(normalize_projective(m));
}

GroupElement GroupElement::inverse() const { return GroupElement(normalize_projective(slicelab::inverse(m_))); }

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return GroupElement(normalize_projective(a.m_ * b.m_));
}

bool proportional(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.is_zero_matrix() || b.is_zero_matrix()) return false;
  // rank of the two flattened vectors must be 1
  std::vector<QVector> rows{QVector(), QVector()};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      rows[0].push_back(a(i, j));
      rows[1].push_back(b(i, j));
    }
  return rank(QMatrix::from_rows(rows[0].size(), rows)) == 1;
}

LieAlgebra LieAlgebra::sl(std::size_t n) {
  if (n < 2) throw MathError("LieAlgebra::sl: n must be at least 2");
  LieAlgebra alg;
  alg.n_ = n;
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pos.emplace_back(i, j);
  auto unit = [n](std::size_t r, std::size_t c) {
    QMatrix m(n, n);
    m(r, c) = Rational(1);
    return m;
  };
  auto root_name = [n](std::size_t r, std::size_t c) {
    if (n == 2) return std::string(r < c ? "e" : "f");
    return "E" + std::to_string(r + 1) + std::to_string(c + 1);
  };
  for (auto [i, j] : pos) {
    alg.basis_.push_back(unit(i, j));
    alg.names_.push_back(root_name(i, j));
    alg.offdiag_.emplace_back(i, j);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    QMatrix h(n, n);
    h(i, i) = Rational(1);
    h(i + 1, i + 1) = Rational(-1);
    alg.basis_.push_back(h);
    alg.names_.push_back(n == 2 ? "h" : "H" + std::to_string(i + 1));
  }
  for (auto [i, j] : pos) {
    alg.basis_.push_back(unit(j, i));
    alg.names_.push_back(root_name(j, i));
    alg.offdiag_.emplace_back(j, i);
  }
  // Structure constants from matrix commutators.
  const std::size_t d = alg.dim();
  alg.table_.resize(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const QMatrix c = alg.basis_[i] * alg.basis_[j] - alg.basis_[j] * alg.basis_[i];
      alg.table_[i * d + j] = alg.coords_of(c);
    }
  alg.build_caches();
  return alg;
}

LieAlgebra LieAlgebra::from_name(std::string_view name) {
  if (name == "a1") return sl(2);
  if (name == "a2") return sl(3);
  throw MathError("unknown algebra '" + std::string(name) + "' (expected a1 or a2)");
}

std::string LieAlgebra::name() const { return "a" + std::to_string(n_ - 1); }

void LieAlgebra::build_caches() {
  const std::size_t d = dim();
  std::vector<QMatrix> ads;
  ads.reserve(d);
  for (std::size_t i = 0; i < d; ++i) ads.push_back(ad(basis_element(i)));
  gram_ = QMatrix(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      gram_(i, j) = trace(ads[i] * ads[j]);
      gram_(j, i) = trace(ads[j] * ads[i]);
    }
  if (slicelab::rank(gram_) == d) {
    gram_inv_ = slicelab::inverse(gram_);
  } else {
    gram_inv_ = QMatrix();
  }
}

Element LieAlgebra::basis_element(std::size_t i) const {
  QVector c(dim());
  c.at(i) = Rational(1);
  return Element(std::move(c));
}

std::size_t LieAlgebra::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw MathError("unknown basis vector '" + std::string(name) + "' in " + this->name());
}

Element LieAlgebra::from_matrix(const QMatrix& m) const { return Element(coords_of(m)); }

QMatrix LieAlgebra::to_matrix(const Element& x) const { return matrix_of(x.coords); }

Element LieAlgebra::bracket(const Element& x, const Element& y) const {
  const std::size_t d = dim();
  if (x.size() != d || y.size() != d) throw MathError("bracket: dimension mismatch");
  QVector out(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (x.coords[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (y.coords[j].is_zero()) continue;
      const QVector& c = table_[i * d + j];
      const Rational w = x.coords[i] * y.coords[j];
      for (std::size_t k = 0; k < d; ++k)
        if (!c[k].is_zero()) out[k] += w * c[k];
    }
  }
  return Element(std::move(out));
}

QMatrix LieAlgebra::ad(const Element& x) const {
  const std::size_t d = dim();
  QMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) m.set_col(j, bracket(x, basis_element(j)).coords);
  return m;
}

Rational LieAlgebra::killing(const Element& x, const Element& y) const {
  return killing_generic(x.coords, y.coords);
}

Covector LieAlgebra::flat(const Element& x) const { return Covector(gram_.transpose() * x.coords); }

Element LieAlgebra::kappa(const Covector& alpha) const {
  if (gram_inv_.empty()) throw MathError("kappa: Killing form is degenerate");
  // <k, z> = k^T G z = alpha^T z  =>  G^T k = alpha
  return Element(gram_inv_.transpose() * alpha.coords);
}

LieAlgebra LieAlgebra::with_structure_constant(std::size_t i, std::size_t j, std::size_t k,
                                               const Rational& value) const {
  LieAlgebra copy = *this;
  copy.table_.at(i * dim() + j).at(k) = value;
  copy.build_caches();
  return copy;
}

bool is_regular(const LieAlgebra& alg, const Element& x) {
  return centralizer(alg, x).cols() == alg.rank();
}

QMatrix centralizer(const LieAlgebra& alg, const Element& x) { return kernel(alg.ad(x)); }

QVector char_poly(const QMatrix& m) {
  // Faddeev-LeVerrier: M_1 = I, c_k = -tr(A M_k)/k, M_{k+1} = A M_k + c_k I.
  const std::size_t n = m.rows();
  QVector c(n + 1);
  c[0] = Rational(1);
  QMatrix mk = QMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const QMatrix am = m * mk;
    c[k] = -trace(am) / Rational(static_cast<long>(k));
    mk = am + QMatrix::identity(n) * c[k];
  }
  return c;
}

InvariantVector chi(const LieAlgebra& alg, const Element& x) {
  const QVector c = char_poly(alg.to_matrix(x));
  return InvariantVector{QVector(c.begin() + 2, c.end())};
}

Element Ad(const LieAlgebra& alg, const GroupElement& g, const Element& x) {
  const QMatrix& gm = g.matrix();
  return alg.from_matrix(gm * alg.to_matrix(x) * slicelab::inverse(gm));
}

QMatrix exp_nilpotent(const QMatrix& z) {
  const std::size_t n = z.rows();
  QMatrix sum = QMatrix::identity(n);
  QMatrix term = QMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    term = term * z * Rational(1, static_cast<long>(k));
    if (term.is_zero_matrix()) return sum;
    sum += term;
  }
  throw MathError("exp_nilpotent: argument is not nilpotent");
}

GroupElement exp_nilpotent(const LieAlgebra& alg, const Element& z) {
  return GroupElement::from_matrix(exp_nilpotent(alg.to_matrix(z)));
}

QMatrix log_unipotent(const QMatrix& u) {
  const std::size_t n = u.rows();
  const QMatrix nil = u - QMatrix::identity(n);
  QMatrix sum(n, n);
  QMatrix power = QMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * nil;
    if (power.is_zero_matrix()) return sum;
    const Rational coeff(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
    sum += power * coeff;
  }
  throw MathError("log_unipotent: matrix is not unipotent");
}

std::string to_string(const LieAlgebra& alg, const Element& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Rational& c = x.coords[i];
    if (c.is_zero()) continue;
    if (!s.empty()) s += c.sign() < 0 ? "-" : "+";
    else if (c.sign() < 0) s += "-";
    const Rational a = c.sign() < 0 ? -c : c;
    if (a != Rational(1)) s += a.str() + "*";
    s += alg.basis_names()[i];
  }
  return s.empty() ? "0" : s;
}

namespace {

std::vector<std::string> split_top(const std::string& s) {
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

std::string strip(const std::string& s, char open, char close) {
  if (s.size() < 2 || s.front() != open || s.back() != close)
    throw MathError(std::string("parse error: expected '") + open + "...'" + close + "' in '" + s + "'");
  return s.substr(1, s.size() - 2);
}

}  // namespace

Element parse_element(const LieAlgebra& alg, std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw MathError("parse error: empty element");
  if (s.rfind("[[", 0) == 0) {
    const auto rows = split_top(strip(s, '[', ']'));
    QMatrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto entries = split_top(strip(rows[i], '[', ']'));
      if (entries.size() != rows.size()) throw MathError("parse error: matrix literal is not square");
      for (std::size_t j = 0; j < entries.size(); ++j) m(i, j) = Rational::parse(entries[j]);
    }
    if (m.rows() != alg.n()) throw MathError("parse error: matrix size does not match the algebra");
    return alg.from_matrix(m);
  }
  if (s.front() == '(') {
    const auto entries = split_top(strip(s, '(', ')'));
    if (entries.size() != alg.dim())
      throw MathError("parse error: expected " + std::to_string(alg.dim()) + " coordinates");
    QVector v(alg.dim());
    for (std::size_t i = 0; i < entries.size(); ++i) v[i] = Rational::parse(entries[i]);
    return Element(v);
  }
  // linear combination of basis names
  Element x = alg.zero();
  std::size_t pos = 0;
  while (pos < s.size()) {
    Rational sign(1);
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = Rational(-1);
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw MathError("parse error: dangling sign in '" + s + "'");
    const auto star = term.find('*');
    Rational coeff(1);
    std::string name = term;
    if (star != std::string::npos) {
      coeff = Rational::parse(term.substr(0, star));
      name = term.substr(star + 1);
    }
    const auto& names = alg.basis_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw MathError("parse error: unknown basis element '" + name + "'");
    x += alg.basis_element(alg.index_of(name)) * (sign * coeff);
    pos = end;
  }
  return x;
}

Element sample_element(const LieAlgebra& alg, Sampler& sampler) { return Element(sampler.vector(alg.dim())); }

GroupElement sample_group(std::size_t n, Sampler& sampler) {
  for (;;) {
    QMatrix m(n, n, sampler.vector(n * n));
    if (!determinant(m).is_zero()) return GroupElement::from_matrix(m);
  }
}

}  // namespace slicelab::lie
