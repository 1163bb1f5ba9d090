#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <Eigen/Core>

namespace fvslab {

/// Exact arbitrary-precision fraction, always kept in lowest terms.
///
/// Thin value wrapper over GMP's mpq. The wrapper exists so that no gmpxx
/// expression template ever escapes into Eigen expressions.
class Rational {
public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Accepts `p/q`, `p`, with optional leading sign. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  [[nodiscard]] std::string str() const { return value_.get_str(); }
  [[nodiscard]] double to_double() const { return value_.get_d(); }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& o) { mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), o.value_.get_mpq_t()); return *this; }
  Rational& operator-=(const Rational& o) { mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), o.value_.get_mpq_t()); return *this; }
  Rational& operator*=(const Rational& o) { mpq_mul(value_.get_mpq_t(), value_.get_mpq_t(), o.value_.get_mpq_t()); return *this; }
  Rational& operator/=(const Rational& o);

  /// this -= a * b without allocating a temporary Rational.
  void submul(const Rational& a, const Rational& b);
  /// this += a * b
  void addmul(const Rational& a, const Rational& b);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(Rational a) { mpq_neg(a.value_.get_mpq_t(), a.value_.get_mpq_t()); return a; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.value_.get_mpq_t(), b.value_.get_mpq_t()) != 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.value_.get_mpq_t(), b.value_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(Rational r) { return r.sign() < 0 ? -r : r; }

/// Vertex cost: a non-negative rational or +infinity (an undeletable vertex).
class Cost {
public:
  Cost() = default;
  Cost(Rational value);  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Cost(I value) : Cost(Rational(value)) {}  // NOLINT(google-explicit-constructor)

  static Cost infinite() { Cost c; c.finite_.reset(); return c; }
  /// Accepts everything Rational::parse accepts plus `inf`.
  static Cost parse(std::string_view text);

  [[nodiscard]] bool is_infinite() const { return !finite_.has_value(); }
  [[nodiscard]] bool is_finite() const { return finite_.has_value(); }
  /// Throws std::logic_error for infinite costs.
  [[nodiscard]] const Rational& value() const;
  [[nodiscard]] std::string str() const { return finite_ ? finite_->str() : "inf"; }

  friend bool operator==(const Cost&, const Cost&) = default;

private:
  std::optional<Rational> finite_ = Rational(0);
};

std::ostream& operator<<(std::ostream& os, const Cost& c);

}  // namespace fvslab

namespace Eigen {
template <>
struct NumTraits<fvslab::Rational> : GenericNumTraits<fvslab::Rational> {
  using Real = fvslab::Rational;
  using NonInteger = fvslab::Rational;
  using Literal = fvslab::Rational;
  using Nested = fvslab::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 20,
    MulCost = 40
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace fvslab {

using Vector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RowVector = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;
using Matrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Zero-initialised exact vector; Eigen leaves class scalars default-constructed
/// (which is zero for Rational) but this spells the intent.
inline Vector zeros(Eigen::Index n) { return Vector::Constant(n, Rational(0)); }

/// Rank of a rational matrix by exact Gaussian elimination.
template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> a = m;
  Eigen::Index rank = 0;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r) {
      if (a(r, c) != Scalar(0)) { pivot = r; break; }
    }
    if (pivot < 0) continue;
    a.row(rank).swap(a.row(pivot));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      if (a(r, c) == Scalar(0)) continue;
      const Scalar factor = a(r, c) / a(rank, c);
      for (Eigen::Index k = c; k < cols; ++k) a(r, k) -= factor * a(rank, k);
    }
    ++rank;
  }
  return rank;
}

}  // namespace fvslab
