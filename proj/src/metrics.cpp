#include "mayer/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mayer {

namespace {

struct Split {
  std::vector<std::pair<double, double>> finite;
  std::vector<double> essential;
};

Split expand(const PersistenceDiagram& d) {
  Split out;
  for (const auto& p : d.points) {
    for (std::size_t k = 0; k < p.multiplicity; ++k) {
      if (p.essential()) out.essential.push_back(p.birth);
      else if (p.death > p.birth) out.finite.emplace_back(p.birth, p.death);
    }
  }
  std::sort(out.essential.begin(), out.essential.end());
  return out;
}

double ground(std::pair<double, double> x, std::pair<double, double> y, double s) {
  const double db = std::abs(x.first - y.first);
  const double dd = std::abs(x.second - y.second);
  if (std::isinf(s)) return std::max(db, dd);
  return std::pow(std::pow(db, s) + std::pow(dd, s), 1.0 / s);
}

double to_diagonal(std::pair<double, double> x, double s) {
  const double half = (x.second - x.first) / 2.0;
  if (std::isinf(s)) return half;
  return half * std::pow(2.0, 1.0 / s);
}

void check_exponents(double r, double s) {
  if (!(r >= 1.0)) throw std::invalid_argument("Wasserstein exponent r must be >= 1");
  if (!(s >= 1.0)) throw std::invalid_argument("ground exponent s must be >= 1");
}

// Augmented (m + m') x (m + m') cost matrix in the unit `power`; power = 0
// keeps raw distances.
std::vector<std::vector<double>> augmented(const Split& a, const Split& b, double s, double power) {
  const std::size_t m = a.finite.size(), k = b.finite.size(), size = m + k;
  auto lift = [&](double v) { return power == 0.0 ? v : std::pow(v, power); };
  std::vector<std::vector<double>> c(size, std::vector<double>(size, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    const double diag = lift(to_diagonal(a.finite[i], s));
    for (std::size_t j = 0; j < k; ++j) c[i][j] = lift(ground(a.finite[i], b.finite[j], s));
    for (std::size_t j = k; j < size; ++j) c[i][j] = diag;
  }
  for (std::size_t i = m; i < size; ++i) {
    for (std::size_t j = 0; j < k; ++j) c[i][j] = lift(to_diagonal(b.finite[j], s));
  }
  return c;
}

bool perfect_matching_within(const std::vector<std::vector<double>>& c, double t) {
  const std::size_t n = c.size();
  std::vector<long> match_col(n, -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t row) -> bool {
    for (std::size_t j = 0; j < n; ++j) {
      if (c[row][j] > t || seen[j]) continue;
      seen[j] = 1;
      if (match_col[j] < 0 || self(self, static_cast<std::size_t>(match_col[j]))) {
        match_col[j] = static_cast<long>(row);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    seen.assign(n, 0);
    if (!augment(augment, i)) return false;
  }
  return true;
}

double finite_bottleneck(const Split& a, const Split& b, double s) {
  const auto c = augmented(a, b, s, 0.0);
  if (c.empty()) return 0.0;
  std::vector<double> candidates{0.0};
  for (const auto& row : c) candidates.insert(candidates.end(), row.begin(), row.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_matching_within(c, candidates[mid])) hi = mid;
    else lo = mid + 1;
  }
  return candidates[lo];
}

}  // namespace

std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {};
  // Potentials formulation, 1-based with a virtual column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInfinity);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInfinity;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double r, double s) {
  check_exponents(r, s);
  if (std::isinf(r)) return bottleneck(d1, d2, s);
  const Split a = expand(d1), b = expand(d2);
  if (a.essential.size() != b.essential.size()) return kInfinity;
  double total = 0.0;
  for (std::size_t i = 0; i < a.essential.size(); ++i) total += std::pow(std::abs(a.essential[i] - b.essential[i]), r);
  const auto c = augmented(a, b, s, r);
  const auto assignment = hungarian(c);
  for (std::size_t i = 0; i < c.size(); ++i) total += c[i][assignment[i]];
  return std::pow(total, 1.0 / r);
}

double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double s) {
  check_exponents(1.0, s);
  const Split a = expand(d1), b = expand(d2);
  if (a.essential.size() != b.essential.size()) return kInfinity;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.essential.size(); ++i) worst = std::max(worst, std::abs(a.essential[i] - b.essential[i]));
  return std::max(worst, finite_bottleneck(a, b, s));
}

void DiagramFamily::validate() const {
  require_prime_order(order);
  if (diagrams.size() != static_cast<std::size_t>(order - 1)) {
    throw std::invalid_argument("a diagram family needs N-1 = " + std::to_string(order - 1) + " diagrams");
  }
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    const Channel expected{n, static_cast<int>(i) + 1, order};
    if (!(diagrams[i].channel == expected)) throw std::invalid_argument("diagram family has a mislabelled stage");
  }
}

DiagramFamily diagram_family(const MayerPersistence& engine, int n) {
  DiagramFamily f{engine.order(), n, {}};
  for (int q = 1; q < engine.order(); ++q) f.diagrams.push_back(engine.diagram(n, q));
  return f;
}

namespace {

void check_family_pair(const DiagramFamily& f1, const DiagramFamily& f2) {
  f1.validate();
  f2.validate();
  if (f1.order != f2.order || f1.n != f2.n) throw std::invalid_argument("diagram families belong to different channels");
}

}  // namespace

double family_wasserstein(const DiagramFamily& f1, const DiagramFamily& f2, double r, double s) {
  check_exponents(r, s);
  check_family_pair(f1, f2);
  if (std::isinf(r)) return family_bottleneck(f1, f2, s);
  double total = 0.0;
  for (std::size_t i = 0; i < f1.diagrams.size(); ++i) {
    total += std::pow(wasserstein(f1.diagrams[i], f2.diagrams[i], r, s), r);
  }
  return std::pow(total, 1.0 / r);
}

double family_bottleneck(const DiagramFamily& f1, const DiagramFamily& f2, double s) {
  check_family_pair(f1, f2);
  double worst = 0.0;
  for (std::size_t i = 0; i < f1.diagrams.size(); ++i) {
    worst = std::max(worst, bottleneck(f1.diagrams[i], f2.diagrams[i], s));
  }
  return worst;
}

}  // namespace mayer
