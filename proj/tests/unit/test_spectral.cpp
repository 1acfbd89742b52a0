#include <catch2/catch_amalgamated.hpp>

#include "mayer/io.hpp"
#include "mayer/spectral.hpp"
#include "oracles/classical.hpp"
#include "support/random_complex.hpp"

using namespace mayer;
using cd = std::complex<double>;

namespace {

FilteredComplex fixture(const std::string& name) {
  std::vector<std::string> w;
  return parse_complex(std::filesystem::path(MAYER_FIXTURES) / (name + ".cplx"), &w);
}

cd xi3(int e) { return std::polar(1.0, 2.0 * M_PI * e / 3.0); }

void check_spectrum(const std::vector<double>& got, std::vector<double> want, double tol) {
  std::sort(want.begin(), want.end());
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < tol);
}

}  // namespace

TEST_CASE("Laplacians of the hollow tetrahedron", "[spectral]") {
  const auto k = fixture("boundary_delta3");
  const MayerPersistence engine(k, 3);
  // Displayed matrices, transposed into column convention.
  Eigen::MatrixXcd l01(4, 4), l02(4, 4);
  l01 << 3, 2.0 * xi3(2), -1, 2.0 * xi3(1), 2.0 * xi3(1), 3, 2.0 * xi3(2), -1, -1, 2.0 * xi3(1), 3, 2.0 * xi3(2),
      2.0 * xi3(2), -1, 2.0 * xi3(1), 3;
  l02 << 3, xi3(2), xi3(2), xi3(2), xi3(1), 3, xi3(2), xi3(2), xi3(1), xi3(1), 3, xi3(2), xi3(1), xi3(1), xi3(1), 3;
  CHECK((laplacian_matrix(engine, 0, 1).matrix() - l01.transpose()).norm() < 1e-12);
  CHECK((laplacian_matrix(engine, 0, 2).matrix() - l02.transpose()).norm() < 1e-12);

  const double s3 = std::sqrt(3.0);
  for (auto method : {EigenMethod::Jacobi, EigenMethod::Eigen}) {
    check_spectrum(hermitian_eigenvalues(laplacian_matrix(engine, 0, 1), method), {0, 4 - 2 * s3, 4, 4 + 2 * s3}, 1e-8);
    check_spectrum(hermitian_eigenvalues(laplacian_matrix(engine, 0, 2), method), {2 - s3, 3, 5, 2 + s3}, 1e-8);
    check_spectrum(hermitian_eigenvalues(laplacian_matrix(engine, 1, 1), method), {0, 0, 2 - s3, 3, 5, 2 + s3}, 1e-8);
    check_spectrum(hermitian_eigenvalues(laplacian_matrix(engine, 1, 2), method), {0, 0, 2 - s3, 3, 2 + s3, 5}, 1e-8);
  }
}

TEST_CASE("hexagon spectra", "[spectral]") {
  const auto k = fixture("hexagon");
  const MayerPersistence e3(k, 3), e5(k, 5);
  const std::vector<double> s3{0.12, 0.47, 1.65, 2.35, 3.53, 3.88}, s5{0.04, 0.66, 1.38, 2.62, 3.34, 3.96};
  check_spectrum(hermitian_eigenvalues(laplacian_matrix(e3, 0, 2)), s3, 0.005);
  check_spectrum(hermitian_eigenvalues(laplacian_matrix(e3, 1, 1)), s3, 0.005);
  check_spectrum(hermitian_eigenvalues(laplacian_matrix(e5, 0, 4)), s5, 0.005);
  check_spectrum(hermitian_eigenvalues(laplacian_matrix(e5, 1, 1)), s5, 0.005);
  CHECK(laplacian_matrix(e3, 0, 1).frobenius_norm() == 0.0);
  CHECK(laplacian_matrix(e5, 1, 3).frobenius_norm() == 0.0);
}

TEST_CASE("small Hermitian matrices", "[spectral]") {
  Eigen::MatrixXcd m(2, 2);
  m << 2, cd(0, 1), cd(0, -1), 2;
  const HermitianMatrix h(m);
  check_spectrum(jacobi_eigenvalues(h), {1, 3}, 1e-12);
  check_spectrum(hermitian_eigenvalues(h, EigenMethod::Eigen), {1, 3}, 1e-12);
  const HermitianMatrix id(Eigen::MatrixXcd::Identity(5, 5));
  check_spectrum(jacobi_eigenvalues(id), {1, 1, 1, 1, 1}, 1e-14);
  CHECK(jacobi_eigenvalues(HermitianMatrix(0)).empty());
}

TEST_CASE("random Hermitian: Jacobi against Eigen", "[spectral][property]") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int t = 0; t < 30; ++t) {
    const long n = 1 + t % 12;
    Eigen::MatrixXcd a(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) a(i, j) = cd(g(rng), g(rng));
    const HermitianMatrix h(Eigen::MatrixXcd(a * a.adjoint()));
    const auto j = hermitian_eigenvalues(h, EigenMethod::Jacobi);
    const auto e = hermitian_eigenvalues(h, EigenMethod::Eigen);
    for (long i = 0; i < n; ++i) CHECK(std::abs(j[std::size_t(i)] - e[std::size_t(i)]) < 1e-9 * (1 + h.frobenius_norm()));
    double sum = 0;
    for (double x : j) sum += x;
    CHECK(std::abs(sum - h.trace()) < 1e-9 * (1 + h.frobenius_norm()));
  }
}

TEST_CASE("spectral summary", "[spectral]") {
  const std::vector<double> zeros{0, 0, 0};
  const auto s = spectral_summary(zeros, 3);
  CHECK(s.zero_count == 3);
  CHECK_FALSE(s.lambda1.has_value());
  CHECK(s.mean_positive == 0.0);
  CHECK_FALSE(s.cross_check_failed);

  const std::vector<double> mixed{-1e-12, 0.5, 2.0};
  const auto m = spectral_summary(mixed, 2);
  CHECK(m.zero_count == 1);
  CHECK(*m.lambda1 == 0.5);
  CHECK(m.lambda_max == 2.0);
  CHECK(m.mean_positive == Catch::Approx(1.25));
  CHECK(m.cross_check_failed);

  const std::vector<double> bad{-0.1, 1.0};
  CHECK_THROWS_AS(spectral_summary(bad), NumericalError);
}

TEST_CASE("harmonic count equals Betti number on fixtures", "[spectral][property]") {
  for (const char* name : {"delta3", "boundary_delta3", "hexagon", "mobius", "torus", "octahedron"}) {
    INFO(name);
    const auto k = fixture(name);
    for (int order : {2, 3, 5}) {
      const MayerPersistence engine(k, order);
      for (int n = 0; n <= k.max_dimension(); ++n) {
        for (int q = 1; q < order; ++q) {
          const auto s = spectral_summary(hermitian_eigenvalues(laplacian_matrix(engine, n, q)),
                                          engine.betti(n, q, kUnbounded));
          CHECK_FALSE(s.cross_check_failed);
        }
      }
    }
  }
}

TEST_CASE("persistent Laplacians on random complexes", "[spectral][property]") {
  testing_support::Rng rng(404);
  for (int t = 0; t < 30; ++t) {
    const int order = std::array{2, 3, 5}[std::size_t(t % 3)];
    const auto k = testing_support::random_complex(rng, 6, 5, 3);
    const MayerPersistence engine(k, order);
    const auto& r = k.critical_values();
    for (int n = 0; n <= std::min(k.max_dimension(), 2); ++n) {
      for (int q = 1; q < order; ++q) {
        for (std::size_t i = 0; i < r.size(); ++i) {
          CHECK((persistent_laplacian(engine, n, q, r[i], r[i]).matrix() -
                 laplacian_matrix(engine, n, q, r[i]).matrix())
                    .norm() < 1e-9);
          for (std::size_t j = i; j < r.size(); ++j) {
            const auto f = persistent_factors(engine, n, q, r[i], r[j]);
            if (f.down.size() > 0 && f.up.size() > 0) CHECK((f.down * f.up).norm() < 1e-9);
            const auto h = persistent_laplacian(engine, n, q, r[i], r[j]);
            const auto s = spectral_summary(hermitian_eigenvalues(h), engine.persistent_betti(n, q, r[i], r[j]));
            CHECK_FALSE(s.cross_check_failed);
            double trace = f.down.squaredNorm() + f.up.squaredNorm();
            CHECK(std::abs(h.trace() - trace) < 1e-9 * (1 + trace));
          }
        }
      }
    }
  }
}

TEST_CASE("N = 2 persistent Laplacian matches the classical oracle", "[spectral][oracle]") {
  testing_support::Rng rng(505);
  for (int t = 0; t < 25; ++t) {
    const auto k = testing_support::random_complex(rng, 6, 5, 3);
    const MayerPersistence engine(k, 2);
    const auto& r = k.critical_values();
    for (int n : {0, 1}) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = i; j < r.size(); ++j) {
          const Eigen::MatrixXd want = oracle::persistent_laplacian(k, n, r[i], r[j]);
          const auto got = persistent_laplacian(engine, n, 1, r[i], r[j]);
          REQUIRE(got.order() == std::size_t(want.rows()));
          CHECK((got.matrix() - want.cast<cd>()).norm() < 1e-8 * (1 + want.norm()));
        }
      }
    }
  }
}
