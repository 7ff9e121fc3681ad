#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace stvss {

/// Exact rational number with 64-bit numerator/denominator, always kept in
/// canonical reduced form (denominator > 0, gcd(|num|, den) == 1).
/// Intermediate products run through 128-bit arithmetic; any operation whose
/// reduced result does not fit 64 bits throws std::overflow_error.
class rational {
 public:
  rational() = default;
  rational(long long value) : num_(value) {}  // NOLINT: implicit by design
  rational(long long num, long long den);

  // Reduces a 128-bit fraction down to the 64-bit canonical form.
  static rational from_int128(__int128 num, __int128 den);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  rational operator-() const;
  rational& operator+=(const rational& o);
  rational& operator-=(const rational& o);
  rational& operator*=(const rational& o);
  rational& operator/=(const rational& o);

  friend rational operator+(rational a, const rational& b) { return a += b; }
  friend rational operator-(rational a, const rational& b) { return a -= b; }
  friend rational operator*(rational a, const rational& b) { return a *= b; }
  friend rational operator/(rational a, const rational& b) { return a /= b; }

  friend bool operator==(const rational& a, const rational& b) = default;
  friend std::strong_ordering operator<=>(const rational& a, const rational& b);

  double to_double() const;

  /// "p/q" reduced; integral values print without the "/q" part.
  std::string str() const;

  /// Fixed-point decimal with `places` digits, rounded half away from zero,
  /// computed in exact integer arithmetic.
  std::string decimal(int places) const;

  /// Accepts "p", "p/q", or a plain decimal such as "-0.25".
  static std::optional<rational> parse(std::string_view text);

 private:
  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace stvss
