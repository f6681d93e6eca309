#ifndef SLICELAB_EXACTNUM_HPP
#define SLICELAB_EXACTNUM_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slicelab {

/// Raised when an exact computation meets a violated precondition.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(static_cast<long>(v)) {}
  Rational(long v) : v_(v) {}
  Rational(long long v) : v_(static_cast<long>(v)) {}
  Rational(long num, long den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p", "-p" or "p/q".
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  Rational inverse() const;

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

/// Element a + b·ε of Q[ε]/(ε²).
struct Dual {
  Rational value;
  Rational eps;

  Dual() = default;
  Dual(Rational v) : value(std::move(v)) {}
  Dual(int v) : value(v) {}
  Dual(Rational v, Rational e) : value(std::move(v)), eps(std::move(e)) {}

  static Dual variable(const Rational& at) { return Dual(at, Rational(1)); }

  Dual operator-() const { return Dual(-value, -eps); }
  Dual& operator+=(const Dual& o) { value += o.value; eps += o.eps; return *this; }
  Dual& operator-=(const Dual& o) { value -= o.value; eps -= o.eps; return *this; }
  Dual& operator*=(const Dual& o) {
    eps = value * o.eps + eps * o.value;
    value *= o.value;
    return *this;
  }
  /// Requires a nonzero value part.
  Dual inverse() const;
  Dual& operator/=(const Dual& o) { return *this *= o.inverse(); }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend bool operator==(const Dual& a, const Dual& b) {
    return a.value == b.value && a.eps == b.eps;
  }
  std::string str() const { return value.str() + "+" + eps.str() + "e"; }
};

/// Laurent polynomial Σ c_k t^k with finitely many nonzero terms.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(Rational c) : LaurentPoly(monomial(std::move(c), 0)) {}
  LaurentPoly(int c) : LaurentPoly(Rational(c)) {}
  /// coefficients[i] multiplies t^(lowest_exponent + i).
  LaurentPoly(std::vector<Rational> coefficients, int lowest_exponent);

  static LaurentPoly monomial(Rational c, int exponent);
  static LaurentPoly t() { return monomial(Rational(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Lowest exponent with nonzero coefficient; throws on the zero polynomial.
  int valuation() const;
  int degree() const;
  Rational coeff(int exponent) const;
  /// Coefficient of t^valuation; zero for the zero polynomial.
  Rational lowest_coeff() const { return is_zero() ? Rational(0) : coeffs_.front(); }
  bool is_monomial() const { return coeffs_.size() == 1; }

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  int lowest_exponent() const { return low_; }

  /// Multiply by t^k.
  LaurentPoly shifted(int k) const;
  /// Substitute t -> t^k for k >= 1.
  LaurentPoly substitute_power(int k) const;
  /// Value at a rational point (nonzero when negative exponents occur).
  Rational evaluate(const Rational& at) const;
  /// Inverse of a monomial c·t^k.
  LaurentPoly inverse() const;

  std::string str() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator/=(const LaurentPoly& o) { return *this *= o.inverse(); }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend LaurentPoly operator/(LaurentPoly a, const LaurentPoly& b) { return a /= b; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();

  std::vector<Rational> coeffs_;
  int low_ = 0;
};

// Scalar traits used by the generic matrix algorithms.
inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(const Dual& d) { return d.value.is_zero() && d.eps.is_zero(); }
inline bool is_zero(const LaurentPoly& p) { return p.is_zero(); }
inline bool is_unit(const Rational& r) { return !r.is_zero(); }
inline bool is_unit(const Dual& d) { return !d.value.is_zero(); }
inline bool is_unit(const LaurentPoly& p) { return p.is_monomial(); }
inline Rational inverse_of(const Rational& r) { return r.inverse(); }
inline Dual inverse_of(const Dual& d) { return d.inverse(); }
inline LaurentPoly inverse_of(const LaurentPoly& p) { return p.inverse(); }

/// Dense row-major matrix over an exact scalar type.
template <class S>
class Matrix {
 public:
  using Scalar = S;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<S> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw MathError("Matrix: data size mismatch");
  }
  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != cols_) throw MathError("Matrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<S>>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw MathError("Matrix::from_columns: length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }
  static Matrix from_rows(std::size_t cols, const std::vector<std::vector<S>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw MathError("Matrix::from_rows: length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<S> row(std::size_t r) const {
    return std::vector<S>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  std::vector<S> col(std::size_t c) const {
    std::vector<S> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
  }
  void set_row(std::size_t r, const std::vector<S>& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = v[j];
  }
  void set_col(std::size_t c, const std::vector<S>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!slicelab::is_zero(x)) return false;
    return true;
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<const S&>()))> {
    Matrix<decltype(f(std::declval<const S&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const S& s) { return a *= s; }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }
  Matrix operator-() const {
    Matrix out(*this);
    for (auto& x : out.data_) x = -x;
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw MathError("Matrix product: dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (slicelab::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (slicelab::is_zero(b(k, j))) continue;
          out(i, j) += aik * b(k, j);
        }
      }
    return out;
  }
  friend std::vector<S> operator*(const Matrix& a, const std::vector<S>& v) {
    if (a.cols_ != v.size()) throw MathError("Matrix-vector product: dimension mismatch");
    std::vector<S> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (!slicelab::is_zero(a(i, k)) && !slicelab::is_zero(v[k])) out[i] += a(i, k) * v[k];
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw MathError("Matrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using QMatrix = Matrix<Rational>;
using QVector = std::vector<Rational>;

template <class S>
Matrix<S> hstack(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows()) throw MathError("hstack: row mismatch");
  Matrix<S> out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

template <class S>
Matrix<S> vstack(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw MathError("vstack: column mismatch");
  Matrix<S> out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) out.set_row(i, a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) out.set_row(a.rows() + i, b.row(i));
  return out;
}

template <class S>
S trace(const Matrix<S>& m) {
  S t{};
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

template <class S>
struct RrefResult {
  Matrix<S> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form over a field. Pivot: first unit entry in column
/// order at or below the current row.
template <class S>
RrefResult<S> rref(Matrix<S> m) {
  RrefResult<S> res;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && !is_unit(m(p, c))) ++p;
    if (p == m.rows()) {
      for (std::size_t q = row; q < m.rows(); ++q)
        if (!is_zero(m(q, c))) throw MathError("rref: nonzero non-unit pivot candidate");
      continue;
    }
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const S inv = inverse_of(m(row, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t q = 0; q < m.rows(); ++q) {
      if (q == row || is_zero(m(q, c))) continue;
      const S f = m(q, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(q, j) -= f * m(row, j);
    }
    res.pivots.push_back(c);
    ++row;
  }
  res.rank = row;
  res.reduced = std::move(m);
  return res;
}

template <class S>
std::size_t rank(const Matrix<S>& m) {
  return rref(m).rank;
}

/// Columns form a basis of {v : m v = 0}, in the standard free-variable order.
template <class S>
Matrix<S> kernel(const Matrix<S>& m) {
  const auto r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<std::vector<S>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> v(m.cols());
    v[free] = S(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return Matrix<S>::from_columns(m.cols(), basis);
}

/// Some solution of m x = b, or nullopt when the system is inconsistent.
template <class S>
std::optional<std::vector<S>> solve(const Matrix<S>& m, const std::vector<S>& b) {
  if (b.size() != m.rows()) throw MathError("solve: right-hand side length mismatch");
  Matrix<S> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  std::vector<S> x(m.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.reduced(i, m.cols());
  return x;
}

/// Inverse by Gauss-Jordan with unit pivots; works over Q and Q[ε]/(ε²).
template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw MathError("inverse: matrix not square");
  const std::size_t n = m.rows();
  const auto r = rref(hstack(m, Matrix<S>::identity(n)));
  if (r.rank < n || r.pivots[n - 1] != n - 1) throw MathError("inverse: singular matrix");
  Matrix<S> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = r.reduced(i, n + j);
  return out;
}

/// Determinant by elimination over a field.
template <class S>
S determinant(Matrix<S> m) {
  if (m.rows() != m.cols()) throw MathError("determinant: matrix not square");
  const std::size_t n = m.rows();
  S det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && !is_unit(m(p, c))) ++p;
    if (p == n) return S{};
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const S inv = inverse_of(m(c, c));
    for (std::size_t q = c + 1; q < n; ++q) {
      if (is_zero(m(q, c))) continue;
      const S f = m(q, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(q, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Deterministic identity-testing sample: numerator in [-9, 9], denominator in {1, 2, 3}.
Rational sample_rational(std::uint64_t seed, std::uint64_t index);

/// Sequential stream of sample_rational values for one seed.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, std::uint64_t start = 0) : seed_(seed), next_(start) {}
  Rational next() { return sample_rational(seed_, next_++); }
  Rational next_nonzero();
  QVector vector(std::size_t n);
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t next_;
};

std::string to_string(const QVector& v);
std::string to_string(const QMatrix& m);

}  // namespace slicelab

#endif  // SLICELAB_EXACTNUM_HPP
