#include "mayer/fields.hpp"

#include <stdexcept>
#include <string>

namespace mayer {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

long wrap(long e, long n) {
  long r = e % n;
  return r < 0 ? r + n : r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

ModularCyclotomicField::ModularCyclotomicField(int order, std::uint64_t prime) : order_(order), prime_(prime) {
  std::uint64_t omega = 1;
  for (std::uint64_t x = 2; x < prime; ++x) {
    omega = powmod(x, (prime - 1) / static_cast<std::uint64_t>(order), prime);
    if (omega != 1) break;
  }
  powers_.resize(static_cast<std::size_t>(order));
  powers_[0] = 1;
  for (std::size_t i = 1; i < powers_.size(); ++i) powers_[i] = mulmod(powers_[i - 1], omega, prime);
}

ModularCyclotomicField ModularCyclotomicField::for_order(int order, int index) {
  require_prime_order(order);
  const auto n = static_cast<std::uint64_t>(order);
  const std::uint64_t limit = 1ULL << 62U;
  std::uint64_t k = (limit - 2) / n;
  int found = 0;
  for (; k > 0; --k) {
    const std::uint64_t candidate = k * n + 1;
    if (!is_prime_u64(candidate)) continue;
    if (found == index) return ModularCyclotomicField(order, candidate);
    ++found;
  }
  throw std::runtime_error("no prime = 1 mod " + std::to_string(order) + " found");
}

ModularCyclotomicField::value_type ModularCyclotomicField::pow(value_type base, std::uint64_t exp) const {
  return powmod(base, exp, prime_);
}

ModularCyclotomicField::value_type ModularCyclotomicField::inv(value_type a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_p");
  return powmod(a, prime_ - 2, prime_);
}

ModularCyclotomicField::value_type ModularCyclotomicField::root(long exponent) const {
  return powers_[static_cast<std::size_t>(wrap(exponent, order_))];
}

ModularCyclotomicField::value_type ModularCyclotomicField::from_power_basis(std::span<const long> coeffs) const {
  value_type acc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    const auto mag = static_cast<std::uint64_t>(coeffs[i] < 0 ? -coeffs[i] : coeffs[i]) % prime_;
    const value_type term = mul(mag, root(static_cast<long>(i)));
    acc = coeffs[i] < 0 ? sub(acc, term) : add(acc, term);
  }
  return acc;
}

ExactCyclotomicField::ExactCyclotomicField(int order) : order_(order) {
  require_prime_order(order);
  for (int i = 0; i < order; ++i) roots_.push_back(CyclotomicNumber::root(order, i));
}

ExactCyclotomicField::value_type ExactCyclotomicField::root(long exponent) const {
  return roots_[static_cast<std::size_t>(wrap(exponent, order_))];
}

ExactCyclotomicField::value_type ExactCyclotomicField::from_power_basis(std::span<const long> coeffs) const {
  std::vector<mpq_class> power(static_cast<std::size_t>(order_), mpq_class(0));
  for (std::size_t i = 0; i < coeffs.size(); ++i) power[i % power.size()] += coeffs[i];
  return CyclotomicNumber(order_, std::move(power));
}

}  // namespace mayer
