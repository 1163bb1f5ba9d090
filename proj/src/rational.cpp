#include "fvslab/rational.hpp"

#include <cctype>
#include <ostream>

namespace fvslab {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string strip_plus(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-') {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  mpz_class n(strip_plus(num), 10);
  mpz_class d(strip_plus(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational r;
  r.value_ = mpq_class(n, d);
  r.value_.canonicalize();
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  mpq_div(value_.get_mpq_t(), value_.get_mpq_t(), o.value_.get_mpq_t());
  return *this;
}

namespace {
mpq_class& scratch() {
  thread_local mpq_class tmp;
  return tmp;
}
}  // namespace

void Rational::submul(const Rational& a, const Rational& b) {
  mpq_class& t = scratch();
  mpq_mul(t.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
  mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), t.get_mpq_t());
}

void Rational::addmul(const Rational& a, const Rational& b) {
  mpq_class& t = scratch();
  mpq_mul(t.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
  mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), t.get_mpq_t());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Cost::Cost(Rational value) : finite_(std::move(value)) {
  if (finite_->sign() < 0) throw std::invalid_argument("negative vertex cost " + finite_->str());
}

Cost Cost::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text == "inf" || text == "+inf" || text == "infinity") return infinite();
  return Cost(Rational::parse(text));
}

const Rational& Cost::value() const {
  if (!finite_) throw std::logic_error("Cost::value() on infinite cost");
  return *finite_;
}

std::ostream& operator<<(std::ostream& os, const Cost& c) { return os << c.str(); }

}  // namespace fvslab
