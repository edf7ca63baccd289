#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qeorbit {

using int128 = __int128;

/// Exact rational arithmetic over 128-bit integers.  Wide enough for the
/// degree <= 4 unitary integration tables at every dimension this library
/// evaluates exactly; all operations reduce by gcd and throw on overflow
/// instead of wrapping.
class Rational {
public:
  Rational() = default;
  Rational(long long n) : num_(n) {}
  Rational(int128 n, int128 d) : num_(n), den_(d) { normalize(); }

  int128 num() const { return num_; }
  int128 den() const { return den_; }

  Rational operator-() const { return Rational(-num_, den_, already_normal{}); }

  Rational& operator+=(const Rational& o) {
    num_ = checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_));
    den_ = checked_mul(den_, o.den_);
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    num_ = checked_mul(num_, o.num_);
    den_ = checked_mul(den_, o.den_);
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    num_ = checked_mul(num_, o.den_);
    den_ = checked_mul(den_, o.num_);
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(num_) /
                               static_cast<long double>(den_));
  }

  std::string str() const {
    std::string s = int128_str(num_);
    if (den_ != 1) s += "/" + int128_str(den_);
    return s;
  }

  static std::string int128_str(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    std::string s;
    while (u) { s.insert(s.begin(), char('0' + int(u % 10))); u /= 10; }
    if (neg) s.insert(s.begin(), '-');
    return s;
  }

private:
  struct already_normal {};
  Rational(int128 n, int128 d, already_normal) : num_(n), den_(d) {}

  static int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { int128 t = a % b; a = b; b = t; }
    return a;
  }
  static int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow (mul)");
    return r;
  }
  static int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow (add)");
    return r;
  }
  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    if (num_ == 0) { den_ = 1; return; }
    int128 g = gcd128(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  int128 num_ = 0;
  int128 den_ = 1;
};

}  // namespace qeorbit
