// Wasserstein and bottleneck distances between persistence diagrams and
// between Mayer diagram families.
//
// Points off the diagonal may be matched to each other or to the diagonal;
// points with infinite death are matched only among themselves, by birth.
// A different number of infinite points on the two sides gives +inf.
#pragma once

#include <limits>
#include <vector>

#include "mayer/mayer_chain.hpp"

namespace mayer {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// W_r with L_s ground distance on the plane. r = inf gives the bottleneck
/// distance.
double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double r, double s = kInfinity);
double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double s = kInfinity);

/// The diagrams D_1 ... D_{N-1} of one homological dimension.
struct DiagramFamily {
  int order = 2;
  int n = 0;
  std::vector<PersistenceDiagram> diagrams;

  /// Throws std::invalid_argument unless there are N-1 diagrams with
  /// channels (n, q, N), q = 1 .. N-1.
  void validate() const;
};

DiagramFamily diagram_family(const MayerPersistence& engine, int n);

/// (sum_q W_r(D_q, D'_q)^r)^(1/r); max over q when r = inf.
double family_wasserstein(const DiagramFamily& f1, const DiagramFamily& f2, double r, double s = kInfinity);
double family_bottleneck(const DiagramFamily& f1, const DiagramFamily& f2, double s = kInfinity);

/// Minimum-cost perfect assignment on a square cost matrix; returns the
/// column chosen for each row.
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost);

}  // namespace mayer
