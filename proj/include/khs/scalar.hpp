#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace khs {

/// Element of the field with two elements.
struct F2 {
  bool bit = false;

  constexpr F2() = default;
  constexpr explicit F2(long v) : bit((v & 1L) != 0) {}

  friend constexpr F2 operator+(F2 a, F2 b) { return from_bit(a.bit != b.bit); }
  friend constexpr F2 operator-(F2 a, F2 b) { return from_bit(a.bit != b.bit); }
  friend constexpr F2 operator*(F2 a, F2 b) { return from_bit(a.bit && b.bit); }
  friend F2 operator/(F2 a, F2 b) {
    if (!b.bit) throw std::domain_error("F2: division by zero");
    return a;
  }
  constexpr F2 operator-() const { return *this; }
  F2& operator+=(F2 o) { bit = bit != o.bit; return *this; }
  F2& operator-=(F2 o) { bit = bit != o.bit; return *this; }
  friend constexpr bool operator==(F2 a, F2 b) { return a.bit == b.bit; }

  static constexpr F2 from_bit(bool b) {
    F2 r;
    r.bit = b;
    return r;
  }
};

enum class RingKind { Integers, F2, Rationals };

inline std::string to_string(RingKind r) {
  switch (r) {
    case RingKind::Integers: return "Z";
    case RingKind::F2: return "F2";
    case RingKind::Rationals: return "Q";
  }
  return "?";
}

inline int characteristic(RingKind r) { return r == RingKind::F2 ? 2 : 0; }

template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<F2> {
  static constexpr RingKind ring = RingKind::F2;
  static constexpr bool is_field = true;
  static bool is_zero(F2 x) { return !x.bit; }
  static F2 from_int(long v) { return F2(v); }
  static F2 inverse(F2 x) { return F2(1) / x; }
  static mpq_class to_rational(F2 x) { return mpq_class(x.bit ? 1 : 0); }
  static F2 from_rational(const mpq_class& v) {
    if (mpz_even_p(v.get_den_mpz_t())) throw std::domain_error("F2: even denominator");
    return F2::from_bit(mpz_odd_p(v.get_num_mpz_t()) != 0);
  }
  static std::string str(F2 x) { return x.bit ? "1" : "0"; }
};

template <>
struct ScalarTraits<mpq_class> {
  static constexpr RingKind ring = RingKind::Rationals;
  static constexpr bool is_field = true;
  static bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
  static mpq_class from_int(long v) { return mpq_class(v); }
  static mpq_class inverse(const mpq_class& x) {
    if (sgn(x) == 0) throw std::domain_error("Q: division by zero");
    return mpq_class(1) / x;
  }
  static mpq_class to_rational(const mpq_class& x) { return x; }
  static mpq_class from_rational(const mpq_class& v) { return v; }
  static std::string str(const mpq_class& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<mpz_class> {
  static constexpr RingKind ring = RingKind::Integers;
  static constexpr bool is_field = false;
  static bool is_zero(const mpz_class& x) { return sgn(x) == 0; }
  static mpz_class from_int(long v) { return mpz_class(v); }
  static mpq_class to_rational(const mpz_class& x) { return mpq_class(x); }
  static mpz_class from_rational(const mpq_class& v) {
    if (v.get_den() != 1) throw std::domain_error("Z: non-integral value");
    return v.get_num();
  }
  static std::string str(const mpz_class& x) { return x.get_str(); }
};

template <class K>
concept Field = ScalarTraits<K>::is_field;

template <class K>
inline bool is_zero(const K& x) {
  return ScalarTraits<K>::is_zero(x);
}

}  // namespace khs
