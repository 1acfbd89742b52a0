// Simplices, point clouds, filtered simplicial complexes and the
// Vietoris-Rips construction.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace mayer {

using VertexId = std::uint32_t;

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Strictly increasing, non-empty vertex list.
class Simplex {
 public:
  /// Sorts; throws std::invalid_argument on empty input or repeated ids.
  explicit Simplex(std::vector<VertexId> ids);
  Simplex(std::initializer_list<VertexId> ids) : Simplex(std::vector<VertexId>(ids)) {}

  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
  std::span<const VertexId> vertices() const { return vertices_; }
  VertexId operator[](std::size_t i) const { return vertices_[i]; }

  /// The i-th face map: drops the vertex at position i.
  Simplex face(std::size_t i) const;

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
  friend bool operator==(const Simplex&, const Simplex&) = default;

 private:
  struct Sorted {};
  Simplex(Sorted, std::vector<VertexId> ids) : vertices_(std::move(ids)) {}

  std::vector<VertexId> vertices_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// Builds a simplex from signed ids; rejects negatives, duplicates, empty.
Simplex simplex_new(std::span<const long> ids);
Simplex face(const Simplex& s, std::size_t i);

struct PointCloud {
  std::vector<std::vector<double>> points;
  std::vector<std::string> labels;  // empty, or one per point

  std::size_t size() const { return points.size(); }
  std::size_t ambient_dimension() const { return points.empty() ? 0 : points.front().size(); }
  /// Throws std::invalid_argument if empty, ragged, or labels mismatch.
  void validate() const;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Simplices with monotone filtration values, stored per dimension in the
/// order (value, lexicographic vertices). Together with dimension this is the
/// total order (value, dimension, vertices); each sublevel complex K_a is a
/// prefix of every dimension's list.
class FilteredComplex {
 public:
  struct Entry {
    Simplex simplex;
    double value;
  };

  FilteredComplex() = default;

  /// Validates face closure and monotonicity, then sorts. Duplicate
  /// simplices are rejected.
  static FilteredComplex from_simplices(std::vector<Entry> entries);

  int max_dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  /// n-simplices in filtration order; empty span when n is out of range.
  std::span<const Entry> simplices(int n) const;
  std::size_t count(int n) const { return simplices(n).size(); }

  /// All simplices in the total order (value, dimension, vertices).
  std::vector<Entry> ordered() const;

  /// Sorted distinct filtration values.
  const std::vector<double>& critical_values() const { return critical_values_; }

  /// Number of n-simplices with value <= a.
  std::size_t sublevel_count(int n, double a) const;
  /// Per-dimension counts of K_a, dimensions 0..max_dimension().
  std::vector<std::size_t> sublevel_sizes(double a) const;

  /// Position of `s` within its dimension's list.
  std::optional<std::size_t> index_of(const Simplex& s) const;

  /// Largest critical value <= a, or nullopt if a is below every value.
  std::optional<double> snap(double a) const;

 private:
  std::vector<std::vector<Entry>> by_dim_;
  std::vector<std::vector<double>> values_by_dim_;
  std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
  std::vector<double> critical_values_;
};

inline std::vector<std::size_t> sublevel_sizes(const FilteredComplex& k, double a) { return k.sublevel_sizes(a); }

/// Every simplex of dimension <= max_dim whose vertices are pairwise within
/// max_radius; the value of a simplex is its diameter (vertices get 0).
FilteredComplex vr_filtration(const PointCloud& x, int max_dim, double max_radius = kUnbounded);

/// Same construction from a symmetric distance matrix.
FilteredComplex vr_filtration_from_distances(std::span<const std::vector<double>> dist, int max_dim,
                                             double max_radius = kUnbounded);

}  // namespace mayer
