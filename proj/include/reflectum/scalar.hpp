#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace reflectum {

// Exact rational scalar over Q. Canonical form throughout: gcd(|num|, den) = 1,
// den > 0, zero is 0/1. Values whose numerator and denominator both fit in a
// signed 64-bit word are kept inline; larger values spill over to GMP and are
// demoted back as soon as they fit again, so equality is plain field-wise
// comparison on the fast path.
class Scalar {
 public:
  Scalar() noexcept : num_(0), den_(1), big_(nullptr) {}
  Scalar(long long n) noexcept : num_(n), den_(1), big_(nullptr) {}
  Scalar(long long n, long long d);
  Scalar(const Scalar& o);
  Scalar(Scalar&& o) noexcept;
  Scalar& operator=(const Scalar& o);
  Scalar& operator=(Scalar&& o) noexcept;
  ~Scalar();

  // Parses "p" or "p/q"; throws std::invalid_argument on malformed input.
  static Scalar parse(const std::string& s);
  std::string str() const;

  bool is_zero() const noexcept { return big_ == nullptr && num_ == 0; }
  bool is_one() const noexcept { return big_ == nullptr && num_ == 1 && den_ == 1; }
  bool is_small() const noexcept { return big_ == nullptr; }
  // Only meaningful when is_small().
  long long num_small() const noexcept { return num_; }
  long long den_small() const noexcept { return den_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);  // throws on division by zero
  Scalar inverse() const;               // throws on zero

  // a += b*c without materializing a temporary on the fast path.
  void add_mul(const Scalar& b, const Scalar& c);

  friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
  friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
  friend Scalar operator*(Scalar a, const Scalar& b) { a *= b; return a; }
  friend Scalar operator/(Scalar a, const Scalar& b) { a /= b; return a; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  struct Big;  // wraps mpq_class
  void promote_set(const void* mpq_src);  // takes an mpq_class*
  void demote_if_small();
  void clear_big() noexcept;

  std::int64_t num_;
  std::int64_t den_;  // > 0 when small; 0 marks the big representation
  Big* big_;
};

}  // namespace reflectum
