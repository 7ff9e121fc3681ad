#include "stvss/rational.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace stvss {

namespace {

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long narrow(__int128 v) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min()) {
    throw std::overflow_error("rational: value exceeds 64-bit range");
  }
  return static_cast<long long>(v);
}

}  // namespace

rational::rational(long long num, long long den) {
  *this = from_int128(num, den);
}

rational rational::from_int128(__int128 num, __int128 den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return rational();
  __int128 g = gcd128(num, den);
  rational r;
  r.num_ = narrow(num / g);
  r.den_ = narrow(den / g);
  return r;
}

rational rational::operator-() const {
  rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

rational& rational::operator+=(const rational& o) {
  *this = from_int128(static_cast<__int128>(num_) * o.den_ +
                          static_cast<__int128>(o.num_) * den_,
                      static_cast<__int128>(den_) * o.den_);
  return *this;
}

rational& rational::operator-=(const rational& o) { return *this += -o; }

rational& rational::operator*=(const rational& o) {
  *this = from_int128(static_cast<__int128>(num_) * o.num_,
                      static_cast<__int128>(den_) * o.den_);
  return *this;
}

rational& rational::operator/=(const rational& o) {
  if (o.num_ == 0) throw std::invalid_argument("rational: division by zero");
  *this = from_int128(static_cast<__int128>(num_) * o.den_,
                      static_cast<__int128>(den_) * o.num_);
  return *this;
}

std::strong_ordering operator<=>(const rational& a, const rational& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string rational::decimal(int places) const {
  if (places < 0) throw std::invalid_argument("rational: negative precision");
  __int128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  __int128 n = abs128(static_cast<__int128>(num_)) * scale;
  __int128 q = n / den_;
  __int128 r = n % den_;
  if (2 * r >= den_) ++q;  // round half away from zero

  std::string digits;
  if (q == 0) {
    digits = "0";
  } else {
    while (q > 0) {
      digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(q % 10)));
      q /= 10;
    }
  }
  if (places > 0) {
    if (digits.size() <= static_cast<size_t>(places)) {
      digits.insert(0, static_cast<size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<size_t>(places), ".");
  }
  if (num_ < 0 && digits.find_first_of("123456789") != std::string::npos) {
    digits.insert(digits.begin(), '-');
  }
  return digits;
}

std::optional<rational> rational::parse(std::string_view text) {
  auto parse_ll = [](std::string_view s, long long& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    long long num = 0;
    long long den = 0;
    if (!parse_ll(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_ll(text.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    return rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 18) return std::nullopt;
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      whole.remove_prefix(1);
    }
    long long w = 0;
    if (!whole.empty() && !parse_ll(whole, w)) return std::nullopt;
    long long f = 0;
    if (!parse_ll(frac, f)) return std::nullopt;
    if (f < 0) return std::nullopt;
    __int128 den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    __int128 num = static_cast<__int128>(w) * den + f;
    if (negative) num = -num;
    return from_int128(num, den);
  }
  long long v = 0;
  if (!parse_ll(text, v)) return std::nullopt;
  return rational(v);
}

}  // namespace stvss
