// Mayer Laplacians, persistent Mayer Laplacians and Hermitian eigenvalues.
//
// Column convention throughout: with M_down = M_{n,q} and M_up =
// M_{n+N-q,N-q} (complex embeddings),
//     L_{n,q} = M_down^H M_down + M_up M_up^H.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mayer/mayer_chain.hpp"

namespace mayer {

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t order) : m_(Eigen::MatrixXcd::Zero(long(order), long(order))) {}
  /// Takes `m` and symmetrizes it.
  explicit HermitianMatrix(Eigen::MatrixXcd m);

  std::size_t order() const { return static_cast<std::size_t>(m_.rows()); }
  std::complex<double> operator()(std::size_t i, std::size_t j) const { return m_(long(i), long(j)); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::MatrixXcd& matrix() { return m_; }

  /// H <- (H + H^H) / 2.
  void symmetrize();
  double frobenius_norm() const { return m_.norm(); }
  double trace() const { return m_.trace().real(); }

 private:
  Eigen::MatrixXcd m_;
};

/// Dense complex copy of the leading rows x cols block, scale included.
Eigen::MatrixXcd complex_block(const MonomialMatrix& m, std::size_t rows, std::size_t cols);

/// L_{n,q} of K_level.
HermitianMatrix laplacian_matrix(const MayerPersistence& engine, int n, int q, double level = kUnbounded);
HermitianMatrix laplacian_matrix(const FilteredComplex& k, int n, int q, int order, double level = kUnbounded);

/// The two factors of the persistent Laplacian:
///     Delta^{a,b} = down^H down + up up^H,
/// where down is M_{n,q} on K_a and up = R Z with Z an orthonormal basis of
/// the kernel of the rows of M^b_{n+N-q,N-q} outside K_a.
struct PersistentFactors {
  Eigen::MatrixXcd down;
  Eigen::MatrixXcd up;
  /// Columns of M^b_up whose rows outside K_a are all zero.
  std::size_t free_columns = 0;
  /// Dimension of the remaining kernel, computed exactly.
  std::size_t kernel_columns = 0;
};

PersistentFactors persistent_factors(const MayerPersistence& engine, int n, int q, double a, double b);

/// Delta^{a,b}_{n,q}; a = b gives laplacian_matrix at that level.
HermitianMatrix persistent_laplacian(const MayerPersistence& engine, int n, int q, double a, double b);
HermitianMatrix persistent_laplacian(const FilteredComplex& k, double a, double b, int n, int q, int order);

enum class EigenMethod { Jacobi, Eigen, Auto };

/// Orders up to this size use Jacobi under EigenMethod::Auto.
inline constexpr std::size_t kJacobiOrderLimit = 96;

/// Cyclic Jacobi on the real embedding [[A, -B], [B, A]] of H = A + iB, then
/// each doubled eigenvalue taken once. Ascending.
std::vector<double> jacobi_eigenvalues(const HermitianMatrix& h);
/// Ascending eigenvalues.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h, EigenMethod method = EigenMethod::Auto);

struct SpectrumReport {
  std::vector<double> eigenvalues;
  std::size_t zero_count = 0;
  std::optional<double> lambda1;
  double lambda_max = 0.0;
  double mean_positive = 0.0;
  double tolerance_used = 0.0;
  std::optional<std::size_t> expected_zero;
  bool cross_check_failed = false;
};

/// Zero threshold tau = rel_tol * max(1, lambda_max).
inline constexpr double kZeroTolerance = 1e-8;

/// `eigs` ascending. Throws NumericalError when some eigenvalue is < -tau.
SpectrumReport spectral_summary(std::span<const double> eigs, std::optional<std::size_t> expected_zero = std::nullopt,
                                double rel_tol = kZeroTolerance);

}  // namespace mayer
