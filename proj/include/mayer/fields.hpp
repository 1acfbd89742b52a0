// Coefficient fields for the sparse column reduction engine.
//
// Both fields realise Z[xi_N] faithfully on the matrices we reduce:
//  - ExactCyclotomicField works in Q(xi_N) with GMP rationals;
//  - ModularCyclotomicField maps xi to an element of order N in F_p with
//    p = 1 (mod N), a ring homomorphism Z[xi] -> F_p. Ranks mod p never
//    exceed ranks over Q(xi); for a 62-bit prime they agree unless p divides
//    every maximal nonvanishing minor.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mayer/cyclotomic.hpp"

namespace mayer {

class ModularCyclotomicField {
 public:
  using value_type = std::uint64_t;

  /// `index` selects the index-th prime p = 1 (mod order) below 2^62.
  static ModularCyclotomicField for_order(int order, int index = 0);

  int order() const { return order_; }
  std::uint64_t prime() const { return prime_; }
  std::uint64_t omega() const { return powers_[1 % powers_.size()]; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    const value_type s = a + b;
    return s >= prime_ ? s - prime_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + prime_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : prime_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % prime_);
  }
  value_type pow(value_type base, std::uint64_t exp) const;
  value_type inv(value_type a) const;

  /// Image of xi^exponent.
  value_type root(long exponent) const;
  /// Image of sum_i coeffs[i] xi^i (any length, indices taken mod N).
  value_type from_power_basis(std::span<const long> coeffs) const;

 private:
  ModularCyclotomicField(int order, std::uint64_t prime);

  int order_;
  std::uint64_t prime_;
  std::vector<value_type> powers_;
};

class ExactCyclotomicField {
 public:
  using value_type = CyclotomicNumber;

  explicit ExactCyclotomicField(int order);

  int order() const { return order_; }
  value_type zero() const { return CyclotomicNumber(order_); }
  value_type one() const { return CyclotomicNumber(order_, mpq_class(1)); }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const { return a.inverse(); }

  value_type root(long exponent) const;
  value_type from_power_basis(std::span<const long> coeffs) const;

 private:
  int order_;
  std::vector<CyclotomicNumber> roots_;
};

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

}  // namespace mayer
