#include "cssbkit/rational.h"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace cssbkit {
namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rat::Rat(std::int64_t integer) : value_(static_cast<long>(integer)) {}

Rat::Rat(std::int64_t numerator, std::int64_t denominator)
    : value_(static_cast<long>(numerator), static_cast<long>(denominator)) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  value_.canonicalize();
}

Rat::Rat(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rat Rat::Parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!IsDigits(num) || !IsDigits(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  }
  if (negative) n = -n;
  return Rat(mpq_class(n, d));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.value_ == 0) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rat::ToString() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rat::ToDecimal(int digits) const {
  // Scale to an integer carrying `digits` significant digits, then place the
  // decimal point by hand so the output never depends on float formatting.
  if (value_ == 0) return "0~";
  mpz_class num = abs(value_.get_num());
  const mpz_class& den = value_.get_den();
  // exponent e such that 10^e <= |v| < 10^(e+1)
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
  auto pow10 = [](long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return r;
  };
  auto at_least = [&](long k) {  // |v| >= 10^k
    return k >= 0 ? num >= den * pow10(k) : num * pow10(-k) >= den;
  };
  while (!at_least(e)) --e;
  while (at_least(e + 1)) ++e;
  const long shift = digits - 1 - e;
  mpz_class scaled_num = shift >= 0 ? num * pow10(shift) : num;
  mpz_class scaled_den = shift >= 0 ? den : den * pow10(-shift);
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(),
              scaled_den.get_mpz_t());
  if (2 * r >= scaled_den) ++q;  // round half up
  std::string body = q.get_str();
  long point = static_cast<long>(body.size()) - shift;  // digits before '.'
  std::string out;
  if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + body;
  } else if (point >= static_cast<long>(body.size())) {
    out = body + std::string(static_cast<std::size_t>(point) - body.size(), '0');
  } else {
    out = body.substr(0, static_cast<std::size_t>(point)) + "." +
          body.substr(static_cast<std::size_t>(point));
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return (value_ < 0 ? "-" : "") + out + "~";
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
  return os << r.ToString();
}

Rat Pow(const Rat& base, std::uint64_t exponent) {
  Rat result(1);
  Rat b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

Rat Abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

}  // namespace cssbkit
