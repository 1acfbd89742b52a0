#include "mayer/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mayer {

namespace {

std::vector<std::complex<double>> root_table(int order) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k) out[std::size_t(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / order);
  out[0] = 1.0;
  if (order % 2 == 0) out[std::size_t(order / 2)] = -1.0;
  return out;
}

int exponent_diff(std::uint32_t a, std::uint32_t b, int order) {
  return static_cast<int>((static_cast<long>(a) - static_cast<long>(b) + order) % order);
}

// out += M^H M over the leading rows x cols block.
void add_down_gram(const MonomialMatrix& m, std::size_t rows, std::size_t cols, Eigen::MatrixXcd& out) {
  if (rows == 0 || cols == 0) return;
  const int order = m.order();
  const auto roots = root_table(order);
  const double w = std::norm(m.complex_scale());
  std::vector<std::vector<MonomialMatrix::Entry>> by_row(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    for (const auto& e : m.column(j)) {
      if (e.row < rows) by_row[e.row].push_back({static_cast<std::uint32_t>(j), e.exponent});
    }
  }
  for (const auto& row : by_row) {
    for (const auto& x : row) {
      for (const auto& y : row) {
        out(x.row, y.row) += w * roots[std::size_t(exponent_diff(y.exponent, x.exponent, order))];
      }
    }
  }
}

// out += M M^H over the leading rows x cols block.
void add_up_gram(const MonomialMatrix& m, std::size_t rows, std::size_t cols, Eigen::MatrixXcd& out) {
  if (rows == 0 || cols == 0) return;
  const int order = m.order();
  const auto roots = root_table(order);
  const double w = std::norm(m.complex_scale());
  std::vector<MonomialMatrix::Entry> col;
  for (std::size_t j = 0; j < cols; ++j) {
    col.clear();
    for (const auto& e : m.column(j)) {
      if (e.row < rows) col.push_back(e);
    }
    for (const auto& x : col) {
      for (const auto& y : col) {
        out(x.row, y.row) += w * roots[std::size_t(exponent_diff(x.exponent, y.exponent, order))];
      }
    }
  }
}

// Modified Gram-Schmidt, two passes; drops columns that vanish.
Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& z) {
  Eigen::MatrixXcd q(z.rows(), z.cols());
  long kept = 0;
  for (long j = 0; j < z.cols(); ++j) {
    Eigen::VectorXcd v = z.col(j);
    const double original = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (long k = 0; k < kept; ++k) v -= q.col(k).dot(v) * q.col(k);
    }
    const double len = v.norm();
    if (len <= 1e-12 * std::max(1.0, original)) {
      throw NumericalError("kernel basis lost independence during orthonormalization");
    }
    q.col(kept++) = v / len;
  }
  return q.leftCols(kept);
}

}  // namespace

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("Hermitian matrix must be square");
  symmetrize();
}

void HermitianMatrix::symmetrize() {
  Eigen::MatrixXcd h = (m_ + m_.adjoint()) * 0.5;
  m_ = std::move(h);
}

Eigen::MatrixXcd complex_block(const MonomialMatrix& m, std::size_t rows, std::size_t cols) {
  const auto roots = root_table(m.order());
  const std::complex<double> s = m.complex_scale();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(long(rows), long(cols));
  for (std::size_t j = 0; j < cols; ++j) {
    for (const auto& e : m.column(j)) {
      if (e.row < rows) out(e.row, long(j)) = s * roots[e.exponent];
    }
  }
  return out;
}

HermitianMatrix laplacian_matrix(const MayerPersistence& engine, int n, int q, double level) {
  const FilteredComplex& k = engine.complex();
  const int order = engine.order();
  const std::size_t dim = k.sublevel_count(n, level);
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(long(dim), long(dim));
  add_down_gram(engine.composed(n, q), k.sublevel_count(n - q, level), dim, l);
  add_up_gram(engine.composed(n + order - q, order - q), dim, k.sublevel_count(n + order - q, level), l);
  return HermitianMatrix(std::move(l));
}

HermitianMatrix laplacian_matrix(const FilteredComplex& k, int n, int q, int order, double level) {
  MayerPersistence engine(k, order);
  return laplacian_matrix(engine, n, q, level);
}

PersistentFactors persistent_factors(const MayerPersistence& engine, int n, int q, double a, double b) {
  if (a > b) throw std::invalid_argument("persistent Laplacian needs a <= b");
  const FilteredComplex& k = engine.complex();
  const int order = engine.order();
  const int top = n + order - q;
  const std::size_t ca = k.sublevel_count(n, a);
  const std::size_t cb = k.sublevel_count(n, b);
  const MonomialMatrix& down = engine.composed(n, q);
  const MonomialMatrix& up = engine.composed(top, order - q);
  const std::size_t up_cols = k.sublevel_count(top, b);

  PersistentFactors out;
  out.down = complex_block(down, k.sublevel_count(n - q, a), ca);

  std::vector<std::size_t> free, active;
  for (std::size_t j = 0; j < up_cols; ++j) {
    const auto col = up.column(j);
    const bool touches_s =
        std::any_of(col.begin(), col.end(), [&](const MonomialMatrix::Entry& e) { return e.row >= ca && e.row < cb; });
    (touches_s ? active : free).push_back(j);
  }
  out.free_columns = free.size();

  Eigen::MatrixXcd q_active;
  if (!active.empty()) {
    CycMatrix s_block(order, cb - ca, active.size());
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (const auto& e : up.column(active[i])) {
        if (e.row >= ca && e.row < cb) s_block.at(e.row - ca, i) = CyclotomicNumber::root(order, e.exponent);
      }
    }
    const CycMatrix kernel = exact_kernel_basis(s_block);
    const auto flat = kernel.to_complex();
    Eigen::MatrixXcd z(long(kernel.rows()), long(kernel.cols()));
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
      for (std::size_t c = 0; c < kernel.cols(); ++c) z(long(r), long(c)) = flat[r * kernel.cols() + c];
    }
    q_active = orthonormalize(z);
  }
  out.kernel_columns = static_cast<std::size_t>(q_active.cols());

  const auto roots = root_table(order);
  const std::complex<double> s = up.complex_scale();
  auto r_column = [&](std::size_t j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(long(ca));
    for (const auto& e : up.column(j)) {
      if (e.row < ca) v(e.row) = s * roots[e.exponent];
    }
    return v;
  };
  out.up = Eigen::MatrixXcd::Zero(long(ca), long(free.size()) + q_active.cols());
  for (std::size_t i = 0; i < free.size(); ++i) out.up.col(long(i)) = r_column(free[i]);
  if (q_active.cols() > 0) {
    Eigen::MatrixXcd r_active(long(ca), long(active.size()));
    for (std::size_t i = 0; i < active.size(); ++i) r_active.col(long(i)) = r_column(active[i]);
    out.up.rightCols(q_active.cols()) = r_active * q_active;
  }
  return out;
}

HermitianMatrix persistent_laplacian(const MayerPersistence& engine, int n, int q, double a, double b) {
  if (a > b) throw std::invalid_argument("persistent Laplacian needs a <= b");
  const FilteredComplex& k = engine.complex();
  const int top = n + engine.order() - q;
  if (k.sublevel_count(n, a) == k.sublevel_count(n, b)) {
    // No n-simplex is born in (a, b]: the up part is just the b-level one.
    const std::size_t dim = k.sublevel_count(n, a);
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(long(dim), long(dim));
    add_down_gram(engine.composed(n, q), k.sublevel_count(n - q, a), dim, l);
    add_up_gram(engine.composed(top, engine.order() - q), dim, k.sublevel_count(top, b), l);
    return HermitianMatrix(std::move(l));
  }
  const PersistentFactors f = persistent_factors(engine, n, q, a, b);
  Eigen::MatrixXcd l = f.down.adjoint() * f.down + f.up * f.up.adjoint();
  return HermitianMatrix(std::move(l));
}

HermitianMatrix persistent_laplacian(const FilteredComplex& k, double a, double b, int n, int q, int order) {
  MayerPersistence engine(k, order);
  return persistent_laplacian(engine, n, q, a, b);
}

std::vector<double> jacobi_eigenvalues(const HermitianMatrix& h) {
  const long n = static_cast<long>(h.order());
  if (n == 0) return {};
  const Eigen::MatrixXd re = h.matrix().real();
  const Eigen::MatrixXd im = h.matrix().imag();
  Eigen::MatrixXd a(2 * n, 2 * n);
  a << re, -im, im, re;
  const long m = 2 * n;
  const double scale = h.frobenius_norm();
  const double target = 1e-12 * std::max(scale, 1e-300);

  auto off_norm = [&] {
    double sum = 0.0;
    for (long i = 0; i < m; ++i) {
      for (long j = 0; j < m; ++j) {
        if (i != j) sum += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(sum);
  };

  int sweep = 0;
  while (off_norm() >= target) {
    if (++sweep > 100) throw NumericalError("Jacobi iteration did not converge");
    for (long p = 0; p < m - 1; ++p) {
      for (long q = p + 1; q < m; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (long k = 0; k < m; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (long k = 0; k < m; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> doubled(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) doubled[std::size_t(i)] = a(i, i);
  std::sort(doubled.begin(), doubled.end());
  const double pair_tol = 1e-6 * std::max(1.0, scale);
  std::vector<double> out;
  out.reserve(std::size_t(n));
  for (std::size_t i = 0; i < doubled.size(); i += 2) {
    if (std::abs(doubled[i] - doubled[i + 1]) > pair_tol) {
      throw NumericalError("eigenvalues of the real embedding do not pair up");
    }
    out.push_back(0.5 * (doubled[i] + doubled[i + 1]));
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h, EigenMethod method) {
  if (method == EigenMethod::Auto) method = h.order() <= kJacobiOrderLimit ? EigenMethod::Jacobi : EigenMethod::Eigen;
  if (method == EigenMethod::Jacobi) return jacobi_eigenvalues(h);
  if (h.order() == 0) return {};
  Eigen::VectorXd ev;
  if (h.matrix().imag().isZero(0.0)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix().real(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
    ev = solver.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
    ev = solver.eigenvalues();
  }
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

SpectrumReport spectral_summary(std::span<const double> eigs, std::optional<std::size_t> expected_zero, double rel_tol) {
  SpectrumReport r;
  r.eigenvalues.assign(eigs.begin(), eigs.end());
  r.lambda_max = eigs.empty() ? 0.0 : eigs.back();
  r.tolerance_used = rel_tol * std::max(1.0, r.lambda_max);
  double sum = 0.0;
  std::size_t positives = 0;
  for (double v : eigs) {
    if (v < -r.tolerance_used) {
      throw NumericalError("Laplacian has a negative eigenvalue " + std::to_string(v));
    }
    if (v <= r.tolerance_used) {
      ++r.zero_count;
    } else {
      if (!r.lambda1) r.lambda1 = v;
      sum += v;
      ++positives;
    }
  }
  r.mean_positive = positives ? sum / double(positives) : 0.0;
  r.expected_zero = expected_zero;
  r.cross_check_failed = expected_zero && *expected_zero != r.zero_count;
  return r;
}

}  // namespace mayer
