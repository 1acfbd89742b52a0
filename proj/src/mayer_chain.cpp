#include "mayer/mayer_chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mayer/fields.hpp"

namespace mayer {

MonomialMatrix::MonomialMatrix(int order, std::size_t rows) : order_(order), rows_(rows) {
  require_prime_order(order);
  scale_.assign(static_cast<std::size_t>(order), 0);
  scale_[0] = 1;
}

void MonomialMatrix::push_column(std::span<const Entry> entries) {
  entries_.insert(entries_.end(), entries.begin(), entries.end());
  col_start_.push_back(entries_.size());
}

CyclotomicNumber MonomialMatrix::exact_scale() const { return ExactCyclotomicField(order_).from_power_basis(scale_); }

std::complex<double> MonomialMatrix::complex_scale() const {
  std::complex<double> sum{0.0, 0.0};
  const double step = 2.0 * std::numbers::pi / order_;
  for (std::size_t i = 0; i < scale_.size(); ++i) {
    if (scale_[i] != 0) sum += static_cast<double>(scale_[i]) * std::polar(1.0, step * static_cast<double>(i));
  }
  return sum;
}

CycMatrix MonomialMatrix::to_cyc(std::size_t rows, std::size_t cols) const {
  CycMatrix out(order_, rows, cols);
  const CyclotomicNumber s = exact_scale();
  for (std::size_t j = 0; j < cols; ++j) {
    for (const Entry& e : column(j)) {
      if (e.row < rows) out.at(e.row, j) = s * CyclotomicNumber::root(order_, e.exponent);
    }
  }
  return out;
}

std::vector<long> stage_factor(int order, int q) {
  const auto n = static_cast<std::size_t>(order);
  std::vector<long> acc(n, 0);
  acc[0] = 1;
  for (int k = 1; k <= q; ++k) {
    // multiply by 1 + xi + ... + xi^(k-1) modulo xi^N - 1
    std::vector<long> next(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (acc[i] == 0) continue;
      for (int s = 0; s < k; ++s) next[(i + static_cast<std::size_t>(s)) % n] += acc[i];
    }
    acc = std::move(next);
  }
  return acc;
}

MonomialMatrix monomial_boundary(const FilteredComplex& k, int n, int order) {
  return monomial_composed_boundary(k, n, 1, order);
}

MonomialMatrix monomial_composed_boundary(const FilteredComplex& k, int n, int q, int order) {
  require_prime_order(order);
  if (q < 1) throw std::invalid_argument("stage q must be >= 1");
  const int target = n - q;
  MonomialMatrix m(order, target >= 0 ? k.count(target) : 0);
  m.set_scale(stage_factor(order, q));
  const auto simplices = k.simplices(n);
  if (target < 0) {
    for (std::size_t j = 0; j < simplices.size(); ++j) m.push_column({});
    return m;
  }

  const long offset = static_cast<long>(q) * (q - 1) / 2;
  std::vector<MonomialMatrix::Entry> column;
  std::vector<std::size_t> removed(static_cast<std::size_t>(q));
  std::vector<VertexId> kept;
  for (const auto& entry : simplices) {
    column.clear();
    const auto vertices = entry.simplex.vertices();
    const std::size_t len = vertices.size();
    // enumerate increasing position sets j_1 < ... < j_q
    for (std::size_t i = 0; i < removed.size(); ++i) removed[i] = i;
    while (true) {
      long exponent = -offset;
      for (std::size_t p : removed) exponent += static_cast<long>(p);
      kept.clear();
      std::size_t r = 0;
      for (std::size_t p = 0; p < len; ++p) {
        if (r < removed.size() && removed[r] == p) {
          ++r;
          continue;
        }
        kept.push_back(vertices[p]);
      }
      const auto row = k.index_of(Simplex(kept));
      if (!row) throw ConsistencyError("face missing while assembling boundary matrix");
      long e = exponent % order;
      if (e < 0) e += order;
      column.push_back({static_cast<std::uint32_t>(*row), static_cast<std::uint32_t>(e)});

      // next combination
      std::size_t i = removed.size();
      while (i > 0 && removed[i - 1] == len - removed.size() + (i - 1)) --i;
      if (i == 0) break;
      ++removed[i - 1];
      for (std::size_t t = i; t < removed.size(); ++t) removed[t] = removed[t - 1] + 1;
    }
    std::sort(column.begin(), column.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
    m.push_column(column);
  }
  return m;
}

CycMatrix boundary_matrix(const FilteredComplex& k, int n, int order, double level) {
  require_prime_order(order);
  if (n < 0) throw std::invalid_argument("dimension must be non-negative");
  const std::size_t cols = k.sublevel_count(n, level);
  const std::size_t rows = n > 0 ? k.sublevel_count(n - 1, level) : 0;
  CycMatrix d(order, rows, cols);
  if (n == 0) return d;
  const auto simplices = k.simplices(n);
  for (std::size_t j = 0; j < cols; ++j) {
    const Simplex& s = simplices[j].simplex;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
      const auto row = k.index_of(s.face(i));
      d.at(*row, j) = CyclotomicNumber::root(order, static_cast<long>(i));
    }
  }
  return d;
}

CycMatrix composed_boundary(const FilteredComplex& k, int n, int q, int order, double level) {
  require_prime_order(order);
  if (q < 1) throw std::invalid_argument("stage q must be >= 1");
  if (n - q < 0) return CycMatrix(order, 0, k.sublevel_count(n, level));
  CycMatrix product = boundary_matrix(k, n, order, level);
  for (int m = n - 1; m >= n - q + 1; --m) product = boundary_matrix(k, m, order, level) * product;
  return product;
}

namespace {

void check_channel(int n, int q, int order) {
  require_prime_order(order);
  if (n < 0) throw std::invalid_argument("dimension must be non-negative");
  if (q < 1 || q > order - 1) {
    throw std::invalid_argument("stage q must lie in 1..N-1, got q=" + std::to_string(q));
  }
}

}  // namespace

std::size_t mayer_betti(const FilteredComplex& k, int n, int q, int order, double level) {
  check_channel(n, q, order);
  const std::size_t dim = k.sublevel_count(n, level);
  const std::size_t down = exact_rank(composed_boundary(k, n, q, order, level));
  const std::size_t up = exact_rank(composed_boundary(k, n + order - q, order - q, order, level));
  return dim - down - up;
}

std::size_t persistent_betti(const FilteredComplex& k, int n, int q, int order, double a, double b) {
  check_channel(n, q, order);
  if (a > b) throw std::invalid_argument("persistent Betti number needs a <= b");
  const std::size_t ca = k.sublevel_count(n, a);
  const std::size_t cb = k.sublevel_count(n, b);
  const CycMatrix cycles = exact_kernel_basis(composed_boundary(k, n, q, order, a));
  const CycMatrix boundaries = composed_boundary(k, n + order - q, order - q, order, b);

  CycMatrix padded(order, cb, cycles.cols());
  for (std::size_t r = 0; r < ca; ++r) {
    for (std::size_t c = 0; c < cycles.cols(); ++c) padded.at(r, c) = cycles.at(r, c);
  }
  const std::size_t dim_z = cycles.cols();
  const std::size_t dim_b = exact_rank(boundaries);
  const std::size_t dim_sum = exact_rank(hconcat(padded, boundaries));
  const std::size_t dim_cap = dim_z + dim_b - dim_sum;
  return dim_z - dim_cap;
}

std::size_t PersistenceDiagram::total_multiplicity() const {
  std::size_t total = 0;
  for (const auto& p : points) total += p.multiplicity;
  return total;
}

std::size_t PersistenceDiagram::alive_at(double r) const {
  std::size_t total = 0;
  for (const auto& p : points) {
    if (p.birth <= r && r < p.death) total += p.multiplicity;
  }
  return total;
}

PivotReduction::PivotReduction(std::vector<std::int64_t> low) : low_(std::move(low)) {
  rank_prefix_.assign(low_.size() + 1, 0);
  for (std::size_t j = 0; j < low_.size(); ++j) rank_prefix_[j + 1] = rank_prefix_[j] + (low_[j] >= 0 ? 1 : 0);
}

std::size_t PivotReduction::rank_lower_left(std::size_t k, std::size_t c) const {
  std::size_t count = 0;
  for (std::size_t j = 0; j < c && j < low_.size(); ++j) {
    if (low_[j] >= 0 && static_cast<std::size_t>(low_[j]) >= k) ++count;
  }
  return count;
}

namespace {

// Standard "lowest pivot" column reduction. The common scale factor of a
// monomial matrix is a nonzero constant in either field and is dropped.
template <class Field>
PivotReduction reduce_with(const MonomialMatrix& m, const Field& field) {
  using Value = typename Field::value_type;
  using Column = std::vector<std::pair<std::uint32_t, Value>>;

  std::vector<std::int64_t> low(m.cols(), -1);
  std::vector<std::int64_t> pivot_owner(m.rows(), -1);
  std::vector<Column> stored(m.cols());
  Column column;
  Column scratch;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    column.clear();
    for (const auto& e : m.column(j)) column.emplace_back(e.row, field.root(e.exponent));
    while (!column.empty()) {
      const std::uint32_t pivot_row = column.back().first;
      const std::int64_t owner = pivot_owner[pivot_row];
      if (owner < 0) {
        const Value inv = field.inv(column.back().second);
        for (auto& [row, value] : column) value = field.mul(value, inv);
        pivot_owner[pivot_row] = static_cast<std::int64_t>(j);
        low[j] = pivot_row;
        stored[j] = column;
        break;
      }
      // column -= factor * stored[owner]; stored columns end in 1.
      const Value factor = column.back().second;
      const Column& other = stored[static_cast<std::size_t>(owner)];
      scratch.clear();
      std::size_t a = 0;
      std::size_t b = 0;
      while (a < column.size() || b < other.size()) {
        if (b == other.size() || (a < column.size() && column[a].first < other[b].first)) {
          scratch.push_back(std::move(column[a++]));
        } else if (a == column.size() || other[b].first < column[a].first) {
          scratch.emplace_back(other[b].first, field.neg(field.mul(factor, other[b].second)));
          ++b;
        } else {
          Value v = field.sub(column[a].second, field.mul(factor, other[b].second));
          if (!field.is_zero(v)) scratch.emplace_back(column[a].first, std::move(v));
          ++a;
          ++b;
        }
      }
      std::swap(column, scratch);
    }
  }
  return PivotReduction(std::move(low));
}

}  // namespace

PivotReduction reduce_exact(const MonomialMatrix& m) { return reduce_with(m, ExactCyclotomicField(m.order())); }

PivotReduction reduce_modular(const MonomialMatrix& m, int prime_index) {
  return reduce_with(m, ModularCyclotomicField::for_order(m.order(), prime_index));
}

MayerPersistence::MayerPersistence(const FilteredComplex& k, int order, EngineOptions options)
    : complex_(&k), order_(order), options_(options) {
  require_prime_order(order);
}

void MayerPersistence::check_stage(int q) const {
  if (q < 1 || q > order_ - 1) throw std::invalid_argument("stage q must lie in 1..N-1");
}

MayerPersistence::Slot& MayerPersistence::slot(int n, int q) const {
  Slot* s = nullptr;
  {
    std::lock_guard lock(mutex_);
    auto& entry = slots_[{n, q}];
    if (!entry) entry = std::make_unique<Slot>();
    s = entry.get();
  }
  std::call_once(s->once, [&] {
    s->matrix = std::make_unique<MonomialMatrix>(monomial_composed_boundary(*complex_, n, q, order_));
    bool exact = options_.backend == RankBackend::Exact ||
                 (options_.backend == RankBackend::Auto && s->matrix->nonzeros() <= options_.exact_nonzero_limit);
    s->used = exact ? RankBackend::Exact : RankBackend::Modular;
    s->reduction = std::make_unique<PivotReduction>(exact ? reduce_exact(*s->matrix) : reduce_modular(*s->matrix));
  });
  return *s;
}

const MonomialMatrix& MayerPersistence::composed(int n, int q) const { return *slot(n, q).matrix; }
const PivotReduction& MayerPersistence::reduction(int n, int q) const { return *slot(n, q).reduction; }
RankBackend MayerPersistence::backend_used(int n, int q) const { return slot(n, q).used; }

std::size_t MayerPersistence::rank(int n, int q, double level) const {
  return reduction(n, q).rank_prefix(complex_->sublevel_count(n, level));
}

std::size_t MayerPersistence::betti(int n, int q, double level) const {
  return persistent_betti(n, q, level, level);
}

std::size_t MayerPersistence::persistent_betti(int n, int q, double a, double b) const {
  check_stage(q);
  if (n < 0) throw std::invalid_argument("dimension must be non-negative");
  if (a > b) throw std::invalid_argument("persistent Betti number needs a <= b");
  const std::size_t ca = complex_->sublevel_count(n, a);
  const std::size_t down = rank(n, q, a);
  // dim(Z^a cap B^b) = dim(B^b cap C^a) = rank M^b_up - rank(rows outside K_a)
  const PivotReduction& up = reduction(n + order_ - q, order_ - q);
  const std::size_t cb_up = complex_->sublevel_count(n + order_ - q, b);
  const std::size_t killed = up.rank_prefix(cb_up) - up.rank_lower_left(ca, cb_up);
  return ca - down - killed;
}

std::vector<CurvePoint> MayerPersistence::betti_curve(int n, int q) const {
  std::vector<CurvePoint> curve;
  for (double r : complex_->critical_values()) curve.push_back({r, betti(n, q, r)});
  return curve;
}

std::vector<std::vector<std::size_t>> MayerPersistence::persistent_betti_grid(int n, int q) const {
  check_stage(q);
  const auto& values = complex_->critical_values();
  const std::size_t m = values.size();
  const int up_dim = n + order_ - q;
  const PivotReduction& up = reduction(up_dim, order_ - q);

  // killed(a, b) = #{pivots with row birth index <= a, column index <= b}
  auto index_of_value = [&](double v) {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), v) - values.begin());
  };
  std::vector<std::vector<std::size_t>> killed(m, std::vector<std::size_t>(m, 0));
  const auto rows = complex_->simplices(n);
  const auto cols = complex_->simplices(up_dim);
  for (std::size_t j = 0; j < up.cols(); ++j) {
    const std::int64_t l = up.low()[j];
    if (l < 0) continue;
    ++killed[index_of_value(rows[static_cast<std::size_t>(l)].value)][index_of_value(cols[j].value)];
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      std::size_t v = killed[a][b];
      if (a > 0) v += killed[a - 1][b];
      if (b > 0) v += killed[a][b - 1];
      if (a > 0 && b > 0) v -= killed[a - 1][b - 1];
      killed[a][b] = v;
    }
  }

  std::vector<std::vector<std::size_t>> grid(m, std::vector<std::size_t>(m, 0));
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t ca = complex_->sublevel_count(n, values[a]);
    const std::size_t z = ca - rank(n, q, values[a]);
    for (std::size_t b = a; b < m; ++b) grid[a][b] = z - killed[a][b];
  }
  return grid;
}

PersistenceDiagram MayerPersistence::diagram(int n, int q) const {
  PersistenceDiagram out;
  out.channel = {n, q, order_};
  const auto& values = complex_->critical_values();
  const std::size_t m = values.size();
  if (m == 0) return out;
  const auto grid = persistent_betti_grid(n, q);
  // 1-based critical indices with beta^{0, .} = 0
  auto beta = [&](std::size_t i, std::size_t j) -> long {
    if (i == 0) return 0;
    return static_cast<long>(grid[i - 1][j - 1]);
  };
  auto emit = [&](long mult, double birth, double death) {
    if (mult < 0) {
      throw ConsistencyError("negative persistence multiplicity in channel (n=" + std::to_string(n) +
                             ", q=" + std::to_string(q) + ", N=" + std::to_string(order_) + ")");
    }
    if (mult > 0) out.points.push_back({birth, death, static_cast<std::size_t>(mult)});
  };
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = i + 1; j <= m; ++j) {
      const long mult = (beta(i, j - 1) - beta(i, j)) - (beta(i - 1, j - 1) - beta(i - 1, j));
      emit(mult, values[i - 1], values[j - 1]);
    }
    emit(beta(i, m) - beta(i - 1, m), values[i - 1], kUnbounded);
  }
  return out;
}

PersistenceDiagram persistence_diagram(const FilteredComplex& k, int n, int q, int order) {
  return MayerPersistence(k, order).diagram(n, q);
}

std::vector<CurvePoint> betti_curve(const FilteredComplex& k, int n, int q, int order) {
  return MayerPersistence(k, order).betti_curve(n, q);
}

std::size_t count_variations(std::span<const std::size_t> curve) {
  std::size_t changes = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i] != curve[i - 1]) ++changes;
  }
  return changes;
}

std::size_t count_variations(std::span<const CurvePoint> curve) {
  std::size_t changes = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].betti != curve[i - 1].betti) ++changes;
  }
  return changes;
}

std::size_t count_variations(std::span<const std::optional<double>> curve, double rel_tol) {
  std::size_t changes = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const auto& x = curve[i - 1];
    const auto& y = curve[i];
    if (x.has_value() != y.has_value()) {
      ++changes;
    } else if (x && std::abs(*x - *y) > rel_tol * std::max({1.0, std::abs(*x), std::abs(*y)})) {
      ++changes;
    }
  }
  return changes;
}

}  // namespace mayer
