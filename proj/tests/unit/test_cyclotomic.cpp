#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mayer/cyclotomic.hpp"
#include "mayer/fields.hpp"

using namespace mayer;

namespace {

CyclotomicNumber random_number(std::mt19937_64& rng, int order) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::vector<mpq_class> c;
  for (int i = 0; i + 1 < order; ++i) {
    mpq_class v(num(rng), den(rng));
    v.canonicalize();
    c.push_back(v);
  }
  return CyclotomicNumber(order, c);
}

CyclotomicNumber make(int order, std::vector<long> coeffs) {
  std::vector<mpq_class> c(coeffs.begin(), coeffs.end());
  return CyclotomicNumber(order, c);
}

}  // namespace

TEST_CASE("roots of unity in the canonical basis", "[cyclotomic]") {
  CHECK(root_of_unity(2, 1) == make(2, {-1}));
  CHECK(root_of_unity(3, 2) == make(3, {-1, -1}));
  CHECK(root_of_unity(5, 4) == make(5, {-1, -1, -1, -1}));
  CHECK(root_of_unity(5, 0) == make(5, {1, 0, 0, 0}));
  CHECK(root_of_unity(3, -1) == root_of_unity(3, 2));
  CHECK_THROWS_AS(root_of_unity(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(root_of_unity(1, 0), std::invalid_argument);
}

TEST_CASE("products of roots", "[cyclotomic]") {
  CHECK(cyc_mul(root_of_unity(5, 1), root_of_unity(5, 2)) == make(5, {0, 0, 0, 1}));
  CHECK(cyc_mul(root_of_unity(3, 1), root_of_unity(3, 2)) == make(3, {1, 0}));
  const auto one_plus = make(3, {1, 1}) + root_of_unity(3, 2);
  CHECK(one_plus.is_zero());
  std::mt19937_64 rng(7);
  CHECK(cyc_mul(one_plus, random_number(rng, 3)).is_zero());
  CHECK_THROWS(root_of_unity(3, 1) * root_of_unity(5, 1));
}

TEST_CASE("conjugation", "[cyclotomic]") {
  CHECK(cyc_conj(root_of_unity(3, 1)) == make(3, {-1, -1}));
  const CyclotomicNumber r(5, mpq_class(3, 7));
  CHECK(cyc_conj(r) == r);
  std::mt19937_64 rng(11);
  for (int order : {2, 3, 5, 7}) {
    for (int t = 0; t < 20; ++t) {
      const auto a = random_number(rng, order);
      CHECK(cyc_conj(cyc_conj(a)) == a);
      const auto z = cyc_to_complex(cyc_conj(a));
      CHECK(std::abs(z - std::conj(cyc_to_complex(a))) < 1e-12);
    }
  }
}

TEST_CASE("complex embedding", "[cyclotomic]") {
  CHECK(std::abs(cyc_to_complex(root_of_unity(2, 1)) - std::complex<double>(-1, 0)) < 1e-15);
  CHECK(std::abs(cyc_to_complex(root_of_unity(3, 1)) - std::complex<double>(-0.5, 0.8660254037844386)) < 1e-15);
  const auto sum = make(3, {1, 0}) + root_of_unity(3, 1) + root_of_unity(3, 2);
  CHECK(std::abs(cyc_to_complex(sum)) < 1e-15);

  std::mt19937_64 rng(3);
  for (int order : {3, 5, 7}) {
    for (int t = 0; t < 30; ++t) {
      const auto a = random_number(rng, order), b = random_number(rng, order);
      const auto za = cyc_to_complex(a), zb = cyc_to_complex(b);
      CHECK(std::abs(cyc_to_complex(a + b) - (za + zb)) < 1e-12);
      CHECK(std::abs(cyc_to_complex(a * b) - za * zb) < 1e-12 * std::max(1.0, std::abs(za * zb)));
    }
  }
}

TEST_CASE("field axioms on random elements", "[cyclotomic][property]") {
  std::mt19937_64 rng(19);
  for (int order : {2, 3, 5, 7}) {
    for (int t = 0; t < 25; ++t) {
      const auto a = random_number(rng, order), b = random_number(rng, order), c = random_number(rng, order);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == CyclotomicNumber(order, mpq_class(1)));
        CHECK(a.norm() != 0);
      }
    }
  }
  CHECK_THROWS_AS(CyclotomicNumber(5).inverse(), std::domain_error);
}

TEST_CASE("partial sums of roots", "[cyclotomic]") {
  for (int order : {2, 3, 5, 7, 11}) {
    CyclotomicNumber acc(order);
    for (int k = 0; k < order; ++k) {
      acc += root_of_unity(order, k);
      if (k < order - 1) CHECK_FALSE(acc.is_zero());
    }
    CHECK(acc.is_zero());
  }
}

TEST_CASE("exact rank and kernel", "[cyclotomic]") {
  CHECK(exact_rank(CycMatrix(3, 0, 4)) == 0);
  CHECK(exact_rank(CycMatrix(3, 4, 0)) == 0);
  CHECK(exact_rank(CycMatrix::identity(5, 5)) == 5);
  CHECK(exact_kernel_basis(CycMatrix::identity(3, 4)).cols() == 0);
  CHECK(exact_kernel_basis(CycMatrix(3, 3, 3)).cols() == 3);

  // B_1 of the 3-simplex, transposed into column convention.
  const int n3 = 3;
  CycMatrix d1(n3, 4, 6);
  const int edges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int j = 0; j < 6; ++j) {
    d1.at(std::size_t(edges[j][0]), std::size_t(j)) = root_of_unity(n3, 1);
    d1.at(std::size_t(edges[j][1]), std::size_t(j)) = root_of_unity(n3, 0);
  }
  CHECK(exact_rank(d1) == 4);
  const auto z = exact_kernel_basis(d1);
  CHECK(z.cols() == 2);
  CHECK((d1 * z).is_zero());
}

TEST_CASE("rank is invariant under conjugate transpose", "[cyclotomic][property]") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> size(1, 5), coin(0, 2);
  for (int t = 0; t < 40; ++t) {
    const int order = t % 2 ? 3 : 5;
    CycMatrix m(order, std::size_t(size(rng)), std::size_t(size(rng)));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (coin(rng) == 0) m.at(i, j) = random_number(rng, order);
      }
    }
    CHECK(exact_rank(m) == exact_rank(m.conjugate_transpose()));
    const auto k = exact_kernel_basis(m);
    CHECK(k.cols() == m.cols() - exact_rank(m));
    if (k.cols() > 0) CHECK((m * k).is_zero());
  }
}

TEST_CASE("modular field has a primitive root of the right order", "[fields]") {
  for (int order : {2, 3, 5, 7}) {
    const auto f = ModularCyclotomicField::for_order(order);
    CHECK((f.prime() - 1) % std::uint64_t(order) == 0);
    CHECK(f.pow(f.root(1), std::uint64_t(order)) == 1);
    for (int k = 1; k < order; ++k) CHECK(f.root(k) != 1);
    const auto x = f.root(1);
    CHECK(f.mul(x, f.inv(x)) == 1);
  }
}
