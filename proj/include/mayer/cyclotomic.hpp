// Exact arithmetic in the cyclotomic field Q(xi_N), N prime, and dense exact
// linear algebra (rank, kernel) over it.
//
// Elements are stored in the basis {1, xi, ..., xi^(N-2)}. Every operation
// reduces eagerly with xi^(N-1) = -(1 + xi + ... + xi^(N-2)), so two numbers
// are equal exactly when their coefficient vectors are equal.
#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace mayer {

/// Deterministic primality test for the small orders used here.
bool is_prime(long n);

/// Throws std::invalid_argument unless `order` is a prime >= 2.
void require_prime_order(int order);

class CyclotomicNumber {
 public:
  /// Zero of Q(xi_order).
  explicit CyclotomicNumber(int order);
  CyclotomicNumber(int order, const mpq_class& rational);
  /// Accepts either N-1 canonical coefficients or N coefficients in the
  /// power basis {1, ..., xi^(N-1)}; the latter are reduced.
  CyclotomicNumber(int order, std::vector<mpq_class> coeffs);

  /// xi^(exponent mod order).
  static CyclotomicNumber root(int order, long exponent);

  int order() const { return order_; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;

  /// Complex conjugate: the substitution xi -> xi^(N-1).
  CyclotomicNumber conj() const;
  /// Galois automorphism xi -> xi^k, gcd(k, N) = 1.
  CyclotomicNumber galois(long k) const;
  /// Multiplicative inverse; throws std::domain_error on zero.
  CyclotomicNumber inverse() const;
  /// Field norm down to Q (product of all Galois conjugates).
  mpq_class norm() const;

  std::complex<double> to_complex() const;

  CyclotomicNumber& operator+=(const CyclotomicNumber& other);
  CyclotomicNumber& operator-=(const CyclotomicNumber& other);
  CyclotomicNumber& operator*=(const CyclotomicNumber& other);
  CyclotomicNumber& operator/=(const CyclotomicNumber& other);
  CyclotomicNumber operator-() const;

  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

 private:
  void check_same_order(const CyclotomicNumber& other) const;

  int order_;
  std::vector<mpq_class> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& a);

/// xi^(exponent mod order) for prime order.
CyclotomicNumber root_of_unity(int order, long exponent);
inline CyclotomicNumber cyc_mul(const CyclotomicNumber& a, const CyclotomicNumber& b) { return a * b; }
inline CyclotomicNumber cyc_conj(const CyclotomicNumber& a) { return a.conj(); }
inline std::complex<double> cyc_to_complex(const CyclotomicNumber& a) { return a.to_complex(); }

/// Dense row-major matrix over Q(xi_N).
class CycMatrix {
 public:
  CycMatrix(int order, std::size_t rows, std::size_t cols);

  static CycMatrix identity(int order, std::size_t n);

  int order() const { return order_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  CyclotomicNumber& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const CyclotomicNumber& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool is_zero() const;
  CycMatrix conjugate_transpose() const;
  CycMatrix transpose() const;

  /// Complex embedding, row-major.
  std::vector<std::complex<double>> to_complex() const;

  friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b);
  friend bool operator==(const CycMatrix& a, const CycMatrix& b);

 private:
  int order_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<CyclotomicNumber> entries_;
};

/// Rank over Q(xi_N) by Gaussian elimination; pivots are the first nonzero
/// entry of each column below the current row.
std::size_t exact_rank(const CycMatrix& m);

/// Columns form a basis of the right null space (reduced row echelon form,
/// one basis vector per free column).
CycMatrix exact_kernel_basis(const CycMatrix& m);

/// Columns of `left` followed by the columns of `right`.
CycMatrix hconcat(const CycMatrix& left, const CycMatrix& right);

}  // namespace mayer
