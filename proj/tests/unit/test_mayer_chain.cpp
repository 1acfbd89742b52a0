#include <catch2/catch_amalgamated.hpp>

#include "mayer/io.hpp"
#include "mayer/mayer_chain.hpp"
#include "oracles/classical.hpp"
#include "support/random_complex.hpp"

using namespace mayer;

namespace {

FilteredComplex fixture(const std::string& name) {
  std::vector<std::string> w;
  return parse_complex(std::filesystem::path(MAYER_FIXTURES) / (name + ".cplx"), &w);
}

// code 0 is zero, +-(e+1) is +-xi^e; rows given as displayed (transposed).
CycMatrix displayed(int order, const std::vector<std::vector<int>>& rows) {
  CycMatrix m(order, rows.front().size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const int c = rows[i][j];
      if (c == 0) continue;
      auto v = root_of_unity(order, std::abs(c) - 1);
      if (c < 0) v = CyclotomicNumber(order) - v;
      m.at(j, i) = v;
    }
  }
  return m;
}

}  // namespace

TEST_CASE("boundary matrices of the 3-simplex", "[mayer]") {
  const auto k = fixture("delta3");
  CHECK(boundary_matrix(k, 1, 3) == displayed(3, {{2, 1, 0, 0}, {2, 0, 1, 0}, {2, 0, 0, 1},
                                                 {0, 2, 1, 0}, {0, 2, 0, 1}, {0, 0, 2, 1}}));
  CHECK(boundary_matrix(k, 2, 3) == displayed(3, {{3, 2, 0, 1, 0, 0}, {3, 0, 2, 0, 1, 0},
                                                 {0, 3, 2, 0, 0, 1}, {0, 0, 0, 3, 2, 1}}));
  CHECK(boundary_matrix(k, 3, 3) == displayed(3, {{1, 3, 2, 1}}));
  CHECK(composed_boundary(k, 2, 2, 3) ==
        displayed(3, {{-2, -1, -3, 0}, {-2, -1, 0, -3}, {-2, 0, -1, -3}, {0, -2, -1, -3}}));
  CHECK(composed_boundary(k, 3, 2, 3) == displayed(3, {{-1, -3, -2, -2, -1, -3}}));
  CHECK(composed_boundary(k, 3, 3, 3).is_zero());
}

TEST_CASE("stage factors", "[mayer]") {
  CHECK(stage_factor(3, 1) == std::vector<long>{1, 0, 0});
  CHECK(stage_factor(3, 2) == std::vector<long>{1, 1, 0});
  CHECK(stage_factor(5, 3) == std::vector<long>{1, 2, 2, 1, 0});
}

TEST_CASE("Mayer Betti numbers of the example complexes", "[mayer]") {
  const std::vector<std::pair<std::string, std::vector<std::size_t>>> table{
      {"delta3", {1, 1, 0, 0, 2, 0}},  {"boundary_delta3", {1, 2, 0, 0, 2, 1}},
      {"hexagon", {6, 0, 0, 0, 6, 0}}, {"mobius", {1, 6, 0, 0, 6, 1}},
      {"torus", {1, 18, 0, 0, 9, 10}}, {"octahedron", {1, 3, 1, 0, 2, 3}}};
  for (const auto& [name, expected] : table) {
    INFO(name);
    const auto k = fixture(name);
    const MayerPersistence engine(k, 3);
    std::vector<std::size_t> dense, fast;
    for (int q : {1, 2}) {
      for (int n : {0, 1, 2}) {
        dense.push_back(mayer_betti(k, n, q, 3));
        fast.push_back(engine.betti(n, q, kUnbounded));
      }
    }
    CHECK(dense == expected);
    CHECK(fast == expected);
  }
}

TEST_CASE("hexagon diagram", "[mayer]") {
  const auto k = fixture("hexagon");
  const auto d = persistence_diagram(k, 0, 1, 3);
  CHECK(d.total_multiplicity() == 6);
  for (const auto& p : d.points) {
    CHECK(p.birth == 0.0);
    CHECK(p.essential());
  }
  CHECK(persistence_diagram(k, 0, 2, 3).points.empty());
}

TEST_CASE("empty complex and bad orders", "[mayer]") {
  const FilteredComplex empty;
  const MayerPersistence engine(empty, 3);
  CHECK(engine.betti(0, 1, kUnbounded) == 0);
  CHECK(engine.diagram(1, 2).points.empty());
  CHECK(engine.betti_curve(0, 1).empty());
  const auto k = fixture("hexagon");
  CHECK_THROWS_AS(MayerPersistence(k, 4), std::invalid_argument);
  const MayerPersistence e3(k, 3);
  CHECK_THROWS_AS(e3.betti(0, 3, kUnbounded), std::invalid_argument);
  CHECK_THROWS_AS(e3.betti(0, 0, kUnbounded), std::invalid_argument);
}

TEST_CASE("variation counting", "[mayer]") {
  const std::vector<std::size_t> c{1, 1, 2, 2, 0, 1};
  CHECK(count_variations(std::span<const std::size_t>(c)) == 3);
  const std::vector<std::optional<double>> l{std::nullopt, 1.0, 1.0 + 1e-9, 2.0, std::nullopt, std::nullopt};
  CHECK(count_variations(std::span<const std::optional<double>>(l), 1e-6) == 3);
}

TEST_CASE("chain identities on random complexes", "[mayer][property]") {
  testing_support::Rng rng(101);
  for (int t = 0; t < 40; ++t) {
    const int order = std::array{2, 3, 5}[std::size_t(t % 3)];
    const auto k = testing_support::random_complex(rng, 6, 4, 3);
    for (int n = 0; n <= k.max_dimension(); ++n) {
      CHECK(composed_boundary(k, n, order, order).is_zero());
      for (int q = 1; q < order; ++q) {
        CHECK(monomial_composed_boundary(k, n, q, order).to_cyc() == composed_boundary(k, n, q, order));
      }
    }
    for (int q = 1; q < order; ++q) {
      std::size_t lhs = 0, rhs = 0;
      for (int n = 0; n <= k.max_dimension(); ++n) {
        lhs += mayer_betti(k, n, q, order);
        rhs += mayer_betti(k, n, order - q, order);
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("persistent Betti numbers: engine, dense route, diagrams", "[mayer][property]") {
  testing_support::Rng rng(202);
  for (int t = 0; t < 30; ++t) {
    const int order = std::array{2, 3, 5}[std::size_t(t % 3)];
    const auto k = testing_support::random_complex(rng, 6, 5, 3);
    const MayerPersistence engine(k, order);
    const MayerPersistence modular(k, order, EngineOptions{RankBackend::Modular, 0});
    const auto& r = k.critical_values();
    for (int n = 0; n <= std::min(k.max_dimension(), 2); ++n) {
      for (int q = 1; q < order; ++q) {
        const auto diagram = engine.diagram(n, q);
        for (std::size_t i = 0; i < r.size(); ++i) {
          const std::size_t bi = engine.betti(n, q, r[i]);
          CHECK(diagram.alive_at(r[i]) == bi);
          for (std::size_t j = i; j < r.size(); ++j) {
            const std::size_t pb = engine.persistent_betti(n, q, r[i], r[j]);
            CHECK(pb == persistent_betti(k, n, q, order, r[i], r[j]));
            CHECK(pb == modular.persistent_betti(n, q, r[i], r[j]));
            CHECK(pb <= bi);
            CHECK(pb <= engine.betti(n, q, r[j]));
          }
        }
      }
    }
  }
}

TEST_CASE("N = 2 agrees with classical persistent homology", "[mayer][oracle]") {
  testing_support::Rng rng(303);
  for (int t = 0; t < 30; ++t) {
    const auto cloud = testing_support::random_cloud(rng, 3 + std::size_t(t % 4), 2);
    const auto k = vr_filtration(cloud, 2);
    const MayerPersistence engine(k, 2);
    const auto& r = k.critical_values();
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(engine.betti(0, 1, r[i]) == oracle::components(cloud.points, r[i]));
      for (std::size_t j = i; j < r.size(); ++j) {
        for (int n : {0, 1}) CHECK(engine.persistent_betti(n, 1, r[i], r[j]) == oracle::persistent_betti(k, n, r[i], r[j]));
      }
    }
  }
}
