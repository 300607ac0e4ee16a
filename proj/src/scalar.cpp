#include "reflectum/scalar.hpp"

#include <gmpxx.h>

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace reflectum {

struct Scalar::Big {
  mpq_class q;
};

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 uabs128(i128 v) { return v < 0 ? u128(-v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) { return v >= -i128(kMax) && v <= i128(kMax); }

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 a = uabs128(v);
  mpz_class hi(static_cast<unsigned long>(a >> 64));
  mpz_class lo(static_cast<unsigned long>(a & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpq_class to_mpq(const Scalar&, std::int64_t n, std::int64_t d) {
  mpq_class q = mpq_class(to_mpz(i128(n))) / mpq_class(to_mpz(i128(d)));
  q.canonicalize();
  return q;
}

}  // namespace

Scalar::Scalar(long long n, long long d) : num_(0), den_(1), big_(nullptr) {
  if (d == 0) throw std::invalid_argument("Scalar: zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  u128 g = gcd128(uabs128(nn), u128(dd));
  if (g > 1) {
    nn /= i128(g);
    dd /= i128(g);
  }
  if (fits64(nn) && fits64(dd)) {
    num_ = std::int64_t(nn);
    den_ = std::int64_t(dd);
  } else {
    mpq_class q(to_mpz(nn));
    q /= mpq_class(to_mpz(dd));
    q.canonicalize();
    promote_set(&q);
  }
}

Scalar::Scalar(const Scalar& o) : num_(o.num_), den_(o.den_), big_(nullptr) {
  if (o.big_) big_ = new Big{o.big_->q};
}

Scalar::Scalar(Scalar&& o) noexcept : num_(o.num_), den_(o.den_), big_(o.big_) {
  o.big_ = nullptr;
  o.num_ = 0;
  o.den_ = 1;
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this == &o) return *this;
  clear_big();
  num_ = o.num_;
  den_ = o.den_;
  if (o.big_) big_ = new Big{o.big_->q};
  return *this;
}

Scalar& Scalar::operator=(Scalar&& o) noexcept {
  if (this == &o) return *this;
  clear_big();
  num_ = o.num_;
  den_ = o.den_;
  big_ = o.big_;
  o.big_ = nullptr;
  o.num_ = 0;
  o.den_ = 1;
  return *this;
}

Scalar::~Scalar() { clear_big(); }

void Scalar::clear_big() noexcept {
  delete big_;
  big_ = nullptr;
}

void Scalar::promote_set(const void* mpq_src) {
  const mpq_class& q = *static_cast<const mpq_class*>(mpq_src);
  if (big_) {
    big_->q = q;
  } else {
    big_ = new Big{q};
  }
  num_ = 0;
  den_ = 0;
  demote_if_small();
}

void Scalar::demote_if_small() {
  if (!big_) return;
  const mpq_class& q = big_->q;
  if (mpz_fits_slong_p(q.get_num().get_mpz_t()) &&
      mpz_fits_slong_p(q.get_den().get_mpz_t())) {
    long n = mpz_get_si(q.get_num().get_mpz_t());
    long d = mpz_get_si(q.get_den().get_mpz_t());
    clear_big();
    num_ = n;
    den_ = d;
  }
}

Scalar Scalar::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Scalar: empty string");
  auto slash = s.find('/');
  std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
  std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto valid = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!valid(ns) || !valid(ds)) throw std::invalid_argument("Scalar: bad rational '" + s + "'");
  mpq_class q{mpz_class(ns)};
  mpz_class d(ds);
  if (d == 0) throw std::invalid_argument("Scalar: zero denominator in '" + s + "'");
  q /= mpq_class(d);
  q.canonicalize();
  Scalar r;
  r.promote_set(&q);
  return r;
}

std::string Scalar::str() const {
  if (big_) return big_->q.get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  if (r.big_) {
    r.big_->q = -r.big_->q;
  } else {
    r.num_ = -r.num_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (!big_ && !o.big_) {
    if (o.num_ == 0) return *this;
    if (num_ == 0) {
      num_ = o.num_;
      den_ = o.den_;
      return *this;
    }
    i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    i128 d = i128(den_) * o.den_;
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    u128 g = gcd128(uabs128(n), u128(d));
    n /= i128(g);
    d /= i128(g);
    if (fits64(n) && fits64(d)) {
      num_ = std::int64_t(n);
      den_ = std::int64_t(d);
      return *this;
    }
    mpq_class q = mpq_class(to_mpz(n)) / mpq_class(to_mpz(d));
    q.canonicalize();
    promote_set(&q);
    return *this;
  }
  mpq_class a = big_ ? big_->q : to_mpq(*this, num_, den_);
  mpq_class b = o.big_ ? o.big_->q : to_mpq(o, o.num_, o.den_);
  a += b;
  promote_set(&a);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (!big_ && !o.big_) {
    Scalar t;
    t.num_ = -o.num_;
    t.den_ = o.den_;
    return *this += t;
  }
  mpq_class a = big_ ? big_->q : to_mpq(*this, num_, den_);
  mpq_class b = o.big_ ? o.big_->q : to_mpq(o, o.num_, o.den_);
  a -= b;
  promote_set(&a);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0) return *this;
    if (o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    // Cross-reduce before multiplying so the result is already canonical.
    u128 g1 = gcd128(uabs128(num_), u128(o.den_));
    u128 g2 = gcd128(uabs128(o.num_), u128(den_));
    i128 n = (i128(num_) / i128(g1)) * (i128(o.num_) / i128(g2));
    i128 d = (i128(den_) / i128(g2)) * (i128(o.den_) / i128(g1));
    if (fits64(n) && fits64(d)) {
      num_ = std::int64_t(n);
      den_ = std::int64_t(d);
      return *this;
    }
    mpq_class q = mpq_class(to_mpz(n)) / mpq_class(to_mpz(d));
    q.canonicalize();
    promote_set(&q);
    return *this;
  }
  mpq_class a = big_ ? big_->q : to_mpq(*this, num_, den_);
  mpq_class b = o.big_ ? o.big_->q : to_mpq(o, o.num_, o.den_);
  a *= b;
  promote_set(&a);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
  return *this *= o.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("Scalar: inverse of zero");
  if (!big_) {
    Scalar r;
    if (num_ > 0) {
      r.num_ = den_;
      r.den_ = num_;
    } else {
      r.num_ = -den_;
      r.den_ = -num_;
    }
    return r;
  }
  Scalar r;
  mpq_class q = 1 / big_->q;
  r.promote_set(&q);
  return r;
}

void Scalar::add_mul(const Scalar& b, const Scalar& c) {
  if (!big_ && !b.big_ && !c.big_) {
    if (b.num_ == 0 || c.num_ == 0) return;
    u128 g1 = gcd128(uabs128(b.num_), u128(c.den_));
    u128 g2 = gcd128(uabs128(c.num_), u128(b.den_));
    i128 pn = (i128(b.num_) / i128(g1)) * (i128(c.num_) / i128(g2));
    i128 pd = (i128(b.den_) / i128(g2)) * (i128(c.den_) / i128(g1));
    if (!fits64(pn) || !fits64(pd)) {
      // The reduced product needs more than 64 bits; further int128 products
      // below could overflow, so take the exact big-number route.
      Scalar t = b;
      t *= c;
      *this += t;
      return;
    }
    i128 n = i128(num_) * pd + pn * den_;
    i128 d = i128(den_) * pd;
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    u128 g = gcd128(uabs128(n), u128(d));
    n /= i128(g);
    d /= i128(g);
    if (fits64(n) && fits64(d)) {
      num_ = std::int64_t(n);
      den_ = std::int64_t(d);
      return;
    }
    mpq_class q = mpq_class(to_mpz(n)) / mpq_class(to_mpz(d));
    q.canonicalize();
    promote_set(&q);
    return;
  }
  Scalar t = b;
  t *= c;
  *this += t;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  // Canonical demotion means a big value never equals a small one.
  if (!a.big_ || !b.big_) return false;
  return a.big_->q == b.big_->q;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace reflectum
