#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace schutz {

// Exact rational on long long, always reduced, denominator > 0.
// Intermediates run through __int128; anything that would not fit back
// into long long after reduction throws std::overflow_error instead of
// silently wrapping.  Good enough for the coordinate ranges we generate.
class Rat {
 public:
  Rat() = default;
  Rat(long long n) : num_(n) {}
  Rat(long long n, long long d) { *this = make(n, d); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  static Rat make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi) throw std::overflow_error("rational overflow");
    Rat r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  int sign() const { return num_ < 0 ? -1 : num_ > 0 ? 1 : 0; }

  std::string to_string() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  // Accepts "-3", "7/2", "-7/2".  Returns nullopt on anything else.
  static std::optional<Rat> parse(std::string_view sv) {
    auto split = sv.find('/');
    std::string_view ns = sv.substr(0, split);
    long long n, d = 1;
    if (!parse_ll(ns, n)) return std::nullopt;
    if (split != std::string_view::npos) {
      std::string_view ds = sv.substr(split + 1);
      if (!parse_ll(ds, d) || d <= 0) return std::nullopt;
    }
    return make(n, d);
  }

 private:
  using i128 = __int128;

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static bool parse_ll(std::string_view sv, long long& out) {
    if (sv.empty()) return false;
    bool neg = false;
    size_t i = 0;
    if (sv[0] == '-' || sv[0] == '+') {
      neg = sv[0] == '-';
      i = 1;
      if (sv.size() == 1) return false;
    }
    i128 v = 0;
    for (; i < sv.size(); ++i) {
      if (sv[i] < '0' || sv[i] > '9') return false;
      v = v * 10 + (sv[i] - '0');
      if (v > i128(INT64_MAX) + 1) return false;
    }
    if (neg) v = -v;
    if (v < INT64_MIN || v > INT64_MAX) return false;
    out = static_cast<long long>(v);
    return true;
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace schutz
