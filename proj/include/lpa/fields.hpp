// Coefficient fields for symbolic elements: the rationals (GMP) and
// compile-time prime fields.

#pragma once

#include <cstdint>
#include <string>

#include "lpa/arith.hpp"

namespace lpa {

template <long P>
class PrimeField {
  static_assert(P >= 2, "prime modulus required");

 public:
  PrimeField() = default;
  PrimeField(long v) : v_(((v % P) + P) % P) {}

  long value() const { return v_; }
  static constexpr long characteristic() { return P; }

  friend PrimeField operator+(PrimeField a, PrimeField b) { return {a.v_ + b.v_}; }
  friend PrimeField operator-(PrimeField a, PrimeField b) { return {a.v_ - b.v_}; }
  friend PrimeField operator*(PrimeField a, PrimeField b) { return {a.v_ * b.v_}; }
  friend PrimeField operator-(PrimeField a) { return {-a.v_}; }
  PrimeField& operator+=(PrimeField o) { return *this = *this + o; }
  PrimeField& operator-=(PrimeField o) { return *this = *this - o; }
  PrimeField& operator*=(PrimeField o) { return *this = *this * o; }
  friend bool operator==(PrimeField a, PrimeField b) { return a.v_ == b.v_; }
  friend bool operator!=(PrimeField a, PrimeField b) { return a.v_ != b.v_; }

  PrimeField inverse() const {
    long r = 1, b = v_, e = P - 2;
    while (e) {
      if (e & 1) r = r * b % P;
      b = b * b % P;
      e >>= 1;
    }
    return {r};
  }

 private:
  long v_ = 0;
};

template <class K>
struct FieldTraits {
  static std::string name() { return "Q"; }
  static long characteristic() { return 0; }
};

template <long P>
struct FieldTraits<PrimeField<P>> {
  static std::string name() { return "F" + std::to_string(P); }
  static long characteristic() { return P; }
};

inline std::string scalar_to_string(const Rat& x) { return x.get_str(); }
template <long P>
std::string scalar_to_string(const PrimeField<P>& x) {
  return std::to_string(x.value());
}

}  // namespace lpa
