// The N-differential on a filtered simplicial complex, Mayer Betti numbers,
// persistent Mayer Betti numbers and persistence diagrams.
//
// Matrix convention: D_n has one row per (n-1)-simplex and one column per
// n-simplex, both in FilteredComplex order; entry (tau, sigma) is xi^i when
// tau is the i-th face of sigma. Displayed row-vector matrices B_n are D_n^T.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mayer/cyclotomic.hpp"
#include "mayer/simplicial.hpp"

namespace mayer {

/// Raised when an internal identity fails (e.g. a negative multiplicity).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse matrix over Z[xi_N] whose nonzero entries all have the form
/// scale * xi^e for one common integer-coefficient factor `scale`.
class MonomialMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    std::uint32_t exponent;
  };

  MonomialMatrix(int order, std::size_t rows);

  int order() const { return order_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return col_start_.size() - 1; }
  std::size_t nonzeros() const { return entries_.size(); }

  /// Entries of column j, sorted by row.
  std::span<const Entry> column(std::size_t j) const {
    return {entries_.data() + col_start_[j], col_start_[j + 1] - col_start_[j]};
  }
  /// Appends a column; entries must be sorted by row with distinct rows.
  void push_column(std::span<const Entry> entries);

  /// Power-basis integer coefficients of the common factor (length N).
  const std::vector<long>& scale() const { return scale_; }
  void set_scale(std::vector<long> scale) { scale_ = std::move(scale); }

  CyclotomicNumber exact_scale() const;
  std::complex<double> complex_scale() const;

  /// Dense exact copy of the leading rows x cols block.
  CycMatrix to_cyc(std::size_t rows, std::size_t cols) const;
  CycMatrix to_cyc() const { return to_cyc(rows(), cols()); }

 private:
  int order_;
  std::size_t rows_;
  std::vector<long> scale_;
  std::vector<std::size_t> col_start_{0};
  std::vector<Entry> entries_;
};

/// Power-basis coefficients of prod_{k=1}^{q} (1 + xi + ... + xi^(k-1)).
std::vector<long> stage_factor(int order, int q);

/// D_n on the whole complex as a monomial matrix (scale 1).
MonomialMatrix monomial_boundary(const FilteredComplex& k, int n, int order);

/// M_{n,q} = D_{n-q+1} ... D_n assembled from the closed form
///   d^q sigma = c_q * sum_{j_1<...<j_q} xi^(j_1+...+j_q - q(q-1)/2) d_{j_1}...d_{j_q} sigma,
/// c_q = prod_{k=1}^{q}(1 + ... + xi^(k-1)). Zero rows when n - q < 0.
MonomialMatrix monomial_composed_boundary(const FilteredComplex& k, int n, int q, int order);

/// Dense exact D_n restricted to the sublevel complex K_level.
CycMatrix boundary_matrix(const FilteredComplex& k, int n, int order, double level = kUnbounded);

/// Dense exact M_{n,q} of K_level computed as the product D_{n-q+1} ... D_n.
CycMatrix composed_boundary(const FilteredComplex& k, int n, int q, int order, double level = kUnbounded);

/// beta_{n,q}(K_level) = dim C_n - rank M_{n,q} - rank M_{n+N-q,N-q}, with
/// dense exact ranks.
std::size_t mayer_betti(const FilteredComplex& k, int n, int q, int order, double level = kUnbounded);

/// Rank of H_{n,q}(K_a) -> H_{n,q}(K_b), computed densely as
/// dim Z^a - dim(Z^a cap B^b) with an exact kernel of M^a_{n,q}.
std::size_t persistent_betti(const FilteredComplex& k, int n, int q, int order, double a, double b);

struct DiagramPoint {
  double birth;
  double death;  // +inf for essential classes
  std::size_t multiplicity;

  bool essential() const { return death == kUnbounded; }
  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

struct Channel {
  int n = 0;
  int q = 1;
  int order = 2;
  friend bool operator==(const Channel&, const Channel&) = default;
};

struct PersistenceDiagram {
  Channel channel;
  std::vector<DiagramPoint> points;

  std::size_t total_multiplicity() const;
  /// Sum of multiplicities of points with birth <= r < death.
  std::size_t alive_at(double r) const;
};

struct CurvePoint {
  double value;
  std::size_t betti;
};

/// Pivot structure of a column reduction R = M V (V unit upper triangular).
/// For any row threshold k and column prefix c, the rank of the block
/// M[rows >= k, cols < c] equals #{j < c : low(j) >= k}.
class PivotReduction {
 public:
  explicit PivotReduction(std::vector<std::int64_t> low);

  std::size_t cols() const { return low_.size(); }
  std::span<const std::int64_t> low() const { return low_; }
  /// rank of the first c columns.
  std::size_t rank_prefix(std::size_t c) const { return rank_prefix_[c]; }
  /// rank of M[rows >= k, cols < c].
  std::size_t rank_lower_left(std::size_t k, std::size_t c) const;

 private:
  std::vector<std::int64_t> low_;
  std::vector<std::size_t> rank_prefix_;
};

enum class RankBackend { Exact, Modular, Auto };

/// Column reduction of a monomial matrix over Q(xi_N) (exact) or F_p.
PivotReduction reduce_exact(const MonomialMatrix& m);
PivotReduction reduce_modular(const MonomialMatrix& m, int prime_index = 0);

struct EngineOptions {
  RankBackend backend = RankBackend::Auto;
  /// Auto switches to the modular field above this many nonzeros.
  std::size_t exact_nonzero_limit = 20000;
};

/// Persistent Mayer homology of one filtered complex at one N. Composed
/// boundaries and their reductions are built lazily, once per (m, p), and
/// are safe to request from several threads.
class MayerPersistence {
 public:
  MayerPersistence(const FilteredComplex& k, int order, EngineOptions options = {});

  const FilteredComplex& complex() const { return *complex_; }
  int order() const { return order_; }

  const MonomialMatrix& composed(int n, int q) const;
  const PivotReduction& reduction(int n, int q) const;
  /// Backend actually used for M_{n,q}.
  RankBackend backend_used(int n, int q) const;

  std::size_t rank(int n, int q, double level) const;
  std::size_t betti(int n, int q, double level) const;
  std::size_t persistent_betti(int n, int q, double a, double b) const;

  std::vector<CurvePoint> betti_curve(int n, int q) const;
  /// beta^{r_i, r_j} for critical indices i <= j (0 below the diagonal).
  std::vector<std::vector<std::size_t>> persistent_betti_grid(int n, int q) const;
  PersistenceDiagram diagram(int n, int q) const;

 private:
  struct Slot {
    std::once_flag once;
    std::unique_ptr<MonomialMatrix> matrix;
    std::unique_ptr<PivotReduction> reduction;
    RankBackend used = RankBackend::Exact;
  };
  Slot& slot(int n, int q) const;
  void check_stage(int q) const;

  const FilteredComplex* complex_;
  int order_;
  EngineOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<Slot>> slots_;
};

PersistenceDiagram persistence_diagram(const FilteredComplex& k, int n, int q, int order);
std::vector<CurvePoint> betti_curve(const FilteredComplex& k, int n, int q, int order);

/// Consecutive pairs with different values.
std::size_t count_variations(std::span<const std::size_t> curve);
std::size_t count_variations(std::span<const CurvePoint> curve);
/// Two entries differ when exactly one is absent or both are present and
/// |x - y| > rel_tol * max(1, |x|, |y|).
std::size_t count_variations(std::span<const std::optional<double>> curve, double rel_tol);

}  // namespace mayer
