#include "slicelab/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace slicelab {

Rational::Rational(long num, long den) {
  if (den == 0) throw MathError("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw MathError("Rational::parse: empty string");
  if (s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw MathError("Rational::parse: malformed rational '" + s + "'");
  if (q.get_den() == 0) throw MathError("Rational::parse: zero denominator");
  q.canonicalize();
  return Rational(q);
}

Rational Rational::inverse() const {
  if (is_zero()) throw MathError("Rational: inverse of zero");
  return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw MathError("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Dual Dual::inverse() const {
  if (value.is_zero()) throw MathError("Dual: inverse of a non-unit");
  const Rational inv = value.inverse();
  return Dual(inv, -eps * inv * inv);
}

LaurentPoly::LaurentPoly(std::vector<Rational> coefficients, int lowest_exponent)
    : coeffs_(std::move(coefficients)), low_(lowest_exponent) {
  normalize();
}

LaurentPoly LaurentPoly::monomial(Rational c, int exponent) {
  return LaurentPoly(std::vector<Rational>{std::move(c)}, exponent);
}

void LaurentPoly::normalize() {
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first].is_zero()) ++first;
  if (first == coeffs_.size()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  std::size_t last = coeffs_.size();
  while (coeffs_[last - 1].is_zero()) --last;
  coeffs_ = std::vector<Rational>(coeffs_.begin() + first, coeffs_.begin() + last);
  low_ += static_cast<int>(first);
}

int LaurentPoly::valuation() const {
  if (is_zero()) throw MathError("LaurentPoly: valuation of zero");
  return low_;
}

int LaurentPoly::degree() const {
  if (is_zero()) throw MathError("LaurentPoly: degree of zero");
  return low_ + static_cast<int>(coeffs_.size()) - 1;
}

Rational LaurentPoly::coeff(int exponent) const {
  const long idx = static_cast<long>(exponent) - low_;
  if (idx < 0 || idx >= static_cast<long>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<std::size_t>(idx)];
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly p = *this;
  if (!p.is_zero()) p.low_ += k;
  return p;
}

LaurentPoly LaurentPoly::substitute_power(int k) const {
  if (k < 1) throw MathError("LaurentPoly::substitute_power: exponent must be >= 1");
  if (is_zero()) return *this;
  std::vector<Rational> c((coeffs_.size() - 1) * static_cast<std::size_t>(k) + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * static_cast<std::size_t>(k)] = coeffs_[i];
  return LaurentPoly(std::move(c), low_ * k);
}

Rational LaurentPoly::evaluate(const Rational& at) const {
  if (is_zero()) return Rational(0);
  if (at.is_zero()) {
    if (low_ < 0) throw MathError("LaurentPoly::evaluate: pole at t = 0");
    return coeff(0);
  }
  // Horner from the top degree, then scale by at^low.
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  Rational scale(1);
  const Rational base = low_ >= 0 ? at : at.inverse();
  for (int i = 0; i < std::abs(low_); ++i) scale *= base;
  return acc * scale;
}

LaurentPoly LaurentPoly::inverse() const {
  if (!is_monomial()) throw MathError("LaurentPoly: only monomials are invertible");
  return monomial(coeffs_.front().inverse(), -low_);
}

std::string LaurentPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    const int e = low_ + static_cast<int>(i);
    Rational c = coeffs_[i];
    if (!first) {
      os << (c.sign() < 0 ? "-" : "+");
      c = c.sign() < 0 ? -c : c;
    } else if (c.sign() < 0 && e != 0 && c == Rational(-1)) {
      os << "-";
      c = Rational(1);
    }
    first = false;
    if (e == 0) {
      os << c.str();
      continue;
    }
    if (c != Rational(1)) os << c.str() << "*";
    os << "t";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(degree(), o.degree());
  std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[low_ - lo + i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[o.low_ - lo + i] += o.coeffs_[i];
  coeffs_ = std::move(c);
  low_ = lo;
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  if (is_zero() || o.is_zero()) return *this = LaurentPoly();
  std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(c);
  low_ += o.low_;
  normalize();
  return *this;
}

Rational sample_rational(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 engine(seq);
  const std::uint64_t draw = engine();
  const long num = static_cast<long>(draw % 19) - 9;
  const long den = static_cast<long>((draw / 19) % 3) + 1;
  return Rational(num, den);
}

Rational Sampler::next_nonzero() {
  for (;;) {
    Rational r = next();
    if (!r.is_zero()) return r;
  }
}

QVector Sampler::vector(std::size_t n) {
  QVector v(n);
  for (auto& x : v) x = next();
  return v;
}

std::string to_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

std::string to_string(const QMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) s += (i ? "," : "") + to_string(m.row(i));
  return s + "]";
}

}  // namespace slicelab
