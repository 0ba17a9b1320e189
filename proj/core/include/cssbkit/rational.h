#ifndef CSSBKIT_RATIONAL_H_
#define CSSBKIT_RATIONAL_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cssbkit {

// Exact rational number. Always held in canonical form (positive
// denominator, numerator and denominator coprime). Every payoff, discount
// factor and continuation value in the library is a Rat; nothing is ever
// rounded.
class Rat {
 public:
  Rat() = default;
  Rat(std::int64_t integer);  // NOLINT(google-explicit-constructor)
  Rat(std::int64_t numerator, std::int64_t denominator);
  explicit Rat(mpq_class value);

  // Accepts "p/q", "p" and an optional leading sign. Throws
  // std::invalid_argument on anything else or on a zero denominator.
  static Rat Parse(std::string_view text);

  std::string numerator() const { return value_.get_num().get_str(); }
  std::string denominator() const { return value_.get_den().get_str(); }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  // "p/q", or "p" when the denominator is 1.
  std::string ToString() const;
  // Decimal rendering with `digits` significant digits followed by "~".
  // For display only.
  std::string ToDecimal(int digits = 20) const;

  const mpq_class& raw() const { return value_; }

  Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
  Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
  Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.value_)); }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  mpq_class value_{0};
};

Rat Pow(const Rat& base, std::uint64_t exponent);
Rat Abs(const Rat& r);

}  // namespace cssbkit

#endif  // CSSBKIT_RATIONAL_H_
