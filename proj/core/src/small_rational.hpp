#pragma once

// Rational with 64-bit numerator and denominator; every operation checks for overflow and
// throws SmallRational::Overflow so callers can redo the work with GMP.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>

namespace krlab::detail {

class SmallRational {
 public:
  struct Overflow {};

  SmallRational() = default;
  SmallRational(std::int64_t n) : n_(n) {}  // NOLINT(google-explicit-constructor)
  explicit SmallRational(const mpq_class& q) {
    if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) throw Overflow{};
    n_ = q.get_num().get_si();
    d_ = q.get_den().get_si();
  }

  mpq_class to_mpq() const { return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_))); }
  bool is_zero() const { return n_ == 0; }

  friend SmallRational operator+(const SmallRational& l, const SmallRational& r) {
    if (l.d_ == r.d_) return make(static_cast<__int128>(l.n_) + r.n_, l.d_);
    return make(static_cast<__int128>(l.n_) * r.d_ + static_cast<__int128>(r.n_) * l.d_,
                static_cast<__int128>(l.d_) * r.d_);
  }
  friend SmallRational operator-(const SmallRational& l, const SmallRational& r) { return l + (-r); }
  friend SmallRational operator*(const SmallRational& l, const SmallRational& r) {
    return make(static_cast<__int128>(l.n_) * r.n_, static_cast<__int128>(l.d_) * r.d_);
  }
  friend SmallRational operator/(const SmallRational& l, const SmallRational& r) {
    __int128 n = static_cast<__int128>(l.n_) * r.d_, d = static_cast<__int128>(l.d_) * r.n_;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return make(n, d);
  }
  SmallRational operator-() const {
    if (n_ == INT64_MIN) throw Overflow{};
    SmallRational r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
  }
  SmallRational& operator+=(const SmallRational& o) { return *this = *this + o; }

 private:
  static SmallRational make(__int128 n, __int128 d) {
    if (n == 0) return {};
    if (d != 1) {
      __int128 a = n < 0 ? -n : n, b = d;
      while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
      }
      n /= a;
      d /= a;
    }
    if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX) throw Overflow{};
    SmallRational r;
    r.n_ = static_cast<std::int64_t>(n);
    r.d_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
};

}  // namespace krlab::detail
