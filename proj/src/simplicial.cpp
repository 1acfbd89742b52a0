#include "mayer/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mayer {

Simplex::Simplex(std::vector<VertexId> ids) : vertices_(std::move(ids)) {
  if (vertices_.empty()) throw std::invalid_argument("simplex needs at least one vertex");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw std::invalid_argument("simplex has a repeated vertex");
  }
}

Simplex Simplex::face(std::size_t i) const {
  if (dimension() < 1) throw std::invalid_argument("a vertex has no faces");
  if (i >= vertices_.size()) {
    throw std::out_of_range("face index " + std::to_string(i) + " out of range for dimension " +
                            std::to_string(dimension()));
  }
  std::vector<VertexId> out;
  out.reserve(vertices_.size() - 1);
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    if (k != i) out.push_back(vertices_[k]);
  }
  return Simplex(Sorted{}, std::move(out));
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (VertexId v : s.vertices()) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U);
  }
  return h;
}

Simplex simplex_new(std::span<const long> ids) {
  std::vector<VertexId> out;
  out.reserve(ids.size());
  for (long id : ids) {
    if (id < 0) throw std::invalid_argument("vertex ids must be non-negative");
    out.push_back(static_cast<VertexId>(id));
  }
  return Simplex(std::move(out));
}

Simplex face(const Simplex& s, std::size_t i) { return s.face(i); }

void PointCloud::validate() const {
  if (points.empty()) throw std::invalid_argument("point cloud is empty");
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("point cloud has points of different dimensions");
  }
  if (!labels.empty() && labels.size() != points.size()) {
    throw std::invalid_argument("point cloud label count does not match point count");
  }
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

FilteredComplex FilteredComplex::from_simplices(std::vector<Entry> entries) {
  FilteredComplex k;
  int max_dim = -1;
  for (const auto& e : entries) {
    if (std::isnan(e.value)) throw std::invalid_argument("filtration value is NaN");
    max_dim = std::max(max_dim, e.simplex.dimension());
  }
  k.by_dim_.resize(static_cast<std::size_t>(max_dim + 1));
  for (auto& e : entries) k.by_dim_[static_cast<std::size_t>(e.simplex.dimension())].push_back(std::move(e));

  k.index_.resize(k.by_dim_.size());
  k.values_by_dim_.resize(k.by_dim_.size());
  for (std::size_t d = 0; d < k.by_dim_.size(); ++d) {
    auto& list = k.by_dim_[d];
    std::sort(list.begin(), list.end(), [](const Entry& a, const Entry& b) {
      if (a.value != b.value) return a.value < b.value;
      return a.simplex < b.simplex;
    });
    auto& index = k.index_[d];
    index.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!index.emplace(list[i].simplex, i).second) {
        throw std::invalid_argument("duplicate simplex in filtered complex");
      }
      k.values_by_dim_[d].push_back(list[i].value);
    }
  }

  for (std::size_t d = 1; d < k.by_dim_.size(); ++d) {
    for (const auto& e : k.by_dim_[d]) {
      for (std::size_t i = 0; i <= d; ++i) {
        const Simplex f = e.simplex.face(i);
        const auto it = k.index_[d - 1].find(f);
        if (it == k.index_[d - 1].end()) {
          throw std::invalid_argument("filtered complex is not closed under faces");
        }
        if (k.by_dim_[d - 1][it->second].value > e.value) {
          throw std::invalid_argument("filtration is not monotone: a face appears after its coface");
        }
      }
    }
  }

  for (const auto& values : k.values_by_dim_) {
    k.critical_values_.insert(k.critical_values_.end(), values.begin(), values.end());
  }
  std::sort(k.critical_values_.begin(), k.critical_values_.end());
  k.critical_values_.erase(std::unique(k.critical_values_.begin(), k.critical_values_.end()),
                           k.critical_values_.end());
  return k;
}

std::size_t FilteredComplex::size() const {
  std::size_t total = 0;
  for (const auto& list : by_dim_) total += list.size();
  return total;
}

std::span<const FilteredComplex::Entry> FilteredComplex::simplices(int n) const {
  if (n < 0 || n > max_dimension()) return {};
  return by_dim_[static_cast<std::size_t>(n)];
}

std::vector<FilteredComplex::Entry> FilteredComplex::ordered() const {
  std::vector<Entry> out;
  out.reserve(size());
  for (const auto& list : by_dim_) out.insert(out.end(), list.begin(), list.end());
  std::stable_sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.simplex.dimension() != b.simplex.dimension()) return a.simplex.dimension() < b.simplex.dimension();
    return a.simplex < b.simplex;
  });
  return out;
}

std::size_t FilteredComplex::sublevel_count(int n, double a) const {
  if (n < 0 || n > max_dimension()) return 0;
  const auto& values = values_by_dim_[static_cast<std::size_t>(n)];
  return static_cast<std::size_t>(std::upper_bound(values.begin(), values.end(), a) - values.begin());
}

std::vector<std::size_t> FilteredComplex::sublevel_sizes(double a) const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= max_dimension(); ++n) out.push_back(sublevel_count(n, a));
  return out;
}

std::optional<std::size_t> FilteredComplex::index_of(const Simplex& s) const {
  const int d = s.dimension();
  if (d > max_dimension()) return std::nullopt;
  const auto& index = index_[static_cast<std::size_t>(d)];
  const auto it = index.find(s);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<double> FilteredComplex::snap(double a) const {
  const auto it = std::upper_bound(critical_values_.begin(), critical_values_.end(), a);
  if (it == critical_values_.begin()) return std::nullopt;
  return *std::prev(it);
}

namespace {

void extend_cliques(std::span<const std::vector<double>> dist, double max_radius, int max_dim,
                    std::vector<VertexId>& current, double diameter, std::vector<FilteredComplex::Entry>& out) {
  out.push_back({Simplex(current), diameter});
  if (static_cast<int>(current.size()) > max_dim) return;
  const auto n = static_cast<VertexId>(dist.size());
  for (VertexId v = current.back() + 1; v < n; ++v) {
    double d = diameter;
    bool ok = true;
    for (VertexId u : current) {
      const double duv = dist[u][v];
      if (!(duv <= max_radius)) {
        ok = false;
        break;
      }
      d = std::max(d, duv);
    }
    if (!ok) continue;
    current.push_back(v);
    extend_cliques(dist, max_radius, max_dim, current, d, out);
    current.pop_back();
  }
}

}  // namespace

FilteredComplex vr_filtration_from_distances(std::span<const std::vector<double>> dist, int max_dim,
                                             double max_radius) {
  if (max_dim < 0) throw std::invalid_argument("max_dim must be non-negative");
  if (max_radius < 0) throw std::invalid_argument("max_radius must be non-negative");
  std::vector<FilteredComplex::Entry> entries;
  std::vector<VertexId> current;
  for (VertexId v = 0; v < dist.size(); ++v) {
    current.assign(1, v);
    extend_cliques(dist, max_radius, max_dim, current, 0.0, entries);
  }
  return FilteredComplex::from_simplices(std::move(entries));
}

FilteredComplex vr_filtration(const PointCloud& x, int max_dim, double max_radius) {
  x.validate();
  const std::size_t n = x.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i][j] = dist[j][i] = euclidean_distance(x.points[i], x.points[j]);
    }
  }
  return vr_filtration_from_distances(dist, max_dim, max_radius);
}

}  // namespace mayer
