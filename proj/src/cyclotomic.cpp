#include "mayer/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace mayer {

bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_prime_order(int order) {
  if (!is_prime(order)) {
    throw std::invalid_argument("cyclotomic order must be a prime >= 2, got " + std::to_string(order));
  }
}

namespace {

// Reduce a length-N power-basis vector into the canonical length-(N-1) basis.
std::vector<mpq_class> canonicalize(int order, std::vector<mpq_class> power) {
  const auto n = static_cast<std::size_t>(order);
  if (power.size() == n) {
    const mpq_class top = power[n - 1];
    power.pop_back();
    if (sgn(top) != 0) {
      for (auto& c : power) c -= top;
    }
  }
  return power;
}

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

CyclotomicNumber::CyclotomicNumber(int order) : order_(order) {
  require_prime_order(order);
  coeffs_.assign(static_cast<std::size_t>(order - 1), mpq_class(0));
}

CyclotomicNumber::CyclotomicNumber(int order, const mpq_class& rational) : CyclotomicNumber(order) {
  coeffs_[0] = rational;
}

CyclotomicNumber::CyclotomicNumber(int order, std::vector<mpq_class> coeffs) : order_(order) {
  require_prime_order(order);
  const auto n = static_cast<std::size_t>(order);
  if (coeffs.size() != n && coeffs.size() != n - 1) {
    throw std::invalid_argument("cyclotomic coefficient vector must have N-1 or N entries");
  }
  for (auto& c : coeffs) c.canonicalize();
  coeffs_ = canonicalize(order, std::move(coeffs));
}

CyclotomicNumber CyclotomicNumber::root(int order, long exponent) {
  require_prime_order(order);
  std::vector<mpq_class> power(static_cast<std::size_t>(order), mpq_class(0));
  power[static_cast<std::size_t>(mod(exponent, order))] = 1;
  return CyclotomicNumber(order, std::move(power));
}

bool CyclotomicNumber::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return false;
  }
  return true;
}

CyclotomicNumber CyclotomicNumber::galois(long k) const {
  if (mod(k, order_) == 0) throw std::invalid_argument("galois exponent must be coprime to N");
  std::vector<mpq_class> power(static_cast<std::size_t>(order_), mpq_class(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    power[static_cast<std::size_t>(mod(static_cast<long>(i) * k, order_))] += coeffs_[i];
  }
  return CyclotomicNumber(order_, std::move(power));
}

CyclotomicNumber CyclotomicNumber::conj() const { return galois(order_ - 1); }

mpq_class CyclotomicNumber::norm() const {
  CyclotomicNumber product = *this;
  for (long k = 2; k < order_; ++k) product *= galois(k);
  // The norm is fixed by every automorphism, hence rational.
  return product.coeffs_[0];
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in cyclotomic field");
  CyclotomicNumber others(order_, mpq_class(1));
  for (long k = 2; k < order_; ++k) others *= galois(k);
  const CyclotomicNumber n = *this * others;
  const mpq_class inv_norm = 1 / n.coeffs_[0];
  for (auto& c : others.coeffs_) c *= inv_norm;
  return others;
}

std::complex<double> CyclotomicNumber::to_complex() const {
  std::complex<double> sum{0.0, 0.0};
  const double step = 2.0 * std::numbers::pi / order_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    sum += coeffs_[i].get_d() * std::polar(1.0, step * static_cast<double>(i));
  }
  return sum;
}

void CyclotomicNumber::check_same_order(const CyclotomicNumber& other) const {
  if (order_ != other.order_) {
    throw std::invalid_argument("cyclotomic operands over different fields: N=" + std::to_string(order_) +
                                " vs N=" + std::to_string(other.order_));
  }
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& other) {
  check_same_order(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& other) {
  check_same_order(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  a.check_same_order(b);
  const auto n = static_cast<std::size_t>(a.order_);
  std::vector<mpq_class> power(n, mpq_class(0));
  mpq_class term;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      term = a.coeffs_[i] * b.coeffs_[j];
      power[(i + j) % n] += term;
    }
  }
  CyclotomicNumber out(a.order_);
  out.coeffs_ = canonicalize(a.order_, std::move(power));
  return out;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& other) {
  *this = *this * other;
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator/=(const CyclotomicNumber& other) {
  *this = *this * other.inverse();
  return *this;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& a) {
  bool first = true;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const mpq_class& c = a.coeffs()[i];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    const mpq_class mag = abs(c);
    if (i == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << "*";
      os << "xi";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os;
}

CyclotomicNumber root_of_unity(int order, long exponent) { return CyclotomicNumber::root(order, exponent); }

CycMatrix::CycMatrix(int order, std::size_t rows, std::size_t cols)
    : order_(order), rows_(rows), cols_(cols), entries_(rows * cols, CyclotomicNumber(order)) {}

CycMatrix CycMatrix::identity(int order, std::size_t n) {
  CycMatrix m(order, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CyclotomicNumber(order, mpq_class(1));
  return m;
}

bool CycMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

CycMatrix CycMatrix::conjugate_transpose() const {
  CycMatrix out(order_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!at(r, c).is_zero()) out.at(c, r) = at(r, c).conj();
    }
  }
  return out;
}

CycMatrix CycMatrix::transpose() const {
  CycMatrix out(order_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  }
  return out;
}

std::vector<std::complex<double>> CycMatrix::to_complex() const {
  std::vector<std::complex<double>> out(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) out[i] = entries_[i].to_complex();
  return out;
}

CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
  if (a.order_ != b.order_) throw std::invalid_argument("matrix product over different fields");
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  CycMatrix out(a.order_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const CyclotomicNumber& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const CyclotomicNumber& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        out.at(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

bool operator==(const CycMatrix& a, const CycMatrix& b) {
  return a.order_ == b.order_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

namespace {

// In-place reduced row echelon form; returns pivot column of each pivot row.
std::vector<std::size_t> row_reduce(CycMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(row, c));
    }
    const CyclotomicNumber inv = m.at(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) {
      if (!m.at(row, c).is_zero()) m.at(row, c) *= inv;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      const CyclotomicNumber factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!m.at(row, c).is_zero()) m.at(r, c) -= factor * m.at(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t exact_rank(const CycMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  CycMatrix work = m;
  // Forward elimination only; no back-substitution needed for the rank.
  std::size_t rank = 0;
  for (std::size_t col = 0; col < work.cols() && rank < work.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < work.rows() && work.at(pivot, col).is_zero()) ++pivot;
    if (pivot == work.rows()) continue;
    if (pivot != rank) {
      for (std::size_t c = col; c < work.cols(); ++c) std::swap(work.at(pivot, c), work.at(rank, c));
    }
    const CyclotomicNumber inv = work.at(rank, col).inverse();
    for (std::size_t r = rank + 1; r < work.rows(); ++r) {
      if (work.at(r, col).is_zero()) continue;
      const CyclotomicNumber factor = work.at(r, col) * inv;
      for (std::size_t c = col; c < work.cols(); ++c) {
        if (!work.at(rank, c).is_zero()) work.at(r, c) -= factor * work.at(rank, c);
      }
    }
    ++rank;
  }
  return rank;
}

CycMatrix exact_kernel_basis(const CycMatrix& m) {
  CycMatrix work = m;
  const std::vector<std::size_t> pivots = row_reduce(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;

  CycMatrix basis(m.order(), m.cols(), m.cols() - pivots.size());
  std::size_t out_col = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.at(free, out_col) = CyclotomicNumber(m.order(), mpq_class(1));
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (!work.at(r, free).is_zero()) basis.at(pivots[r], out_col) = -work.at(r, free);
    }
    ++out_col;
  }
  return basis;
}

CycMatrix hconcat(const CycMatrix& left, const CycMatrix& right) {
  if (left.order() != right.order()) throw std::invalid_argument("hconcat over different fields");
  if (left.rows() != right.rows()) throw std::invalid_argument("hconcat row mismatch");
  CycMatrix out(left.order(), left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    for (std::size_t c = 0; c < left.cols(); ++c) out.at(r, c) = left.at(r, c);
    for (std::size_t c = 0; c < right.cols(); ++c) out.at(r, left.cols() + c) = right.at(r, c);
  }
  return out;
}

}  // namespace mayer
