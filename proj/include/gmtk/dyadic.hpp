#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmtk {

/// Exact dyadic rational num / 2^k, normalized so num is odd or zero.
/// Arithmetic is exact; overflow throws rather than wrapping.
struct Dyadic {
  std::int64_t num = 0;
  int k = 0;  // denominator exponent, k >= 0

  Dyadic() = default;
  Dyadic(std::int64_t n, int exp) : num(n), k(exp) { normalize(); }

  static Dyadic from_int(std::int64_t n) { return Dyadic(n, 0); }

  void normalize() {
    if (k < 0) throw std::invalid_argument("dyadic: negative exponent");
    if (num == 0) {
      k = 0;
      return;
    }
    while (k > 0 && (num & 1) == 0) {
      num >>= 1;
      --k;
    }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(std::int64_t(1) << k); }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    int kk = std::max(a.k, b.k);
    if (kk > 60) throw std::overflow_error("dyadic: exponent too large");
    std::int64_t an = a.num << (kk - a.k);
    std::int64_t bn = b.num << (kk - b.k);
    return Dyadic(an + bn, kk);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    return a + Dyadic(-b.num, b.k);
  }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return (a - b).num < 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.num == b.num && a.k == b.k; }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }

  std::string str() const {
    if (k == 0) return std::to_string(num);
    return std::to_string(num) + "/2^" + std::to_string(k);
  }
};

inline Dyadic dyadic_min(const Dyadic& a, const Dyadic& b) { return a < b ? a : b; }
inline Dyadic dyadic_max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

}  // namespace gmtk
