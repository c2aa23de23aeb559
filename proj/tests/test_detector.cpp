#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>

#include "jamwatch/detector.hpp"
#include "jamwatch/error.hpp"
#include "oracles.hpp"

using namespace jamwatch;

TEST_CASE("decision boundary is inclusive") {
  CHECK(decide(5.0, 5.0) == Decision::H1);
  CHECK(decide(4.999, 5.0) == Decision::H0);
  CHECK(decide(-1e300, -std::numeric_limits<double>::infinity()) == Decision::H1);
}

TEST_CASE("separated scores") {
  const std::vector<double> h0{1, 1}, h1{100, 100};
  const std::vector<double> grid{0.5, 50, 200};
  const auto c = sweep(h0, h1, grid, ScoreKind::ReconstructionError);
  CHECK(c.points[0].p_fa == 1.0);
  CHECK(c.points[0].p_md == 0.0);
  CHECK(c.points[1].p_fa == 0.0);
  CHECK(c.points[1].p_md == 0.0);
  CHECK(c.points[2].p_fa == 0.0);
  CHECK(c.points[2].p_md == 1.0);

  const auto exact = separating_interval(h0, h1);
  REQUIRE(exact);
  CHECK(exact->lo == 1.0);
  CHECK(exact->hi == 100.0);
  // Boundary semantics: lo itself still alarms, hi is error free.
  CHECK(oracle::count(h0, h1, exact->lo).p_fa == 1.0);
  CHECK(oracle::count(h0, h1, exact->hi).p_md == 0.0);
  CHECK(oracle::count(h0, h1, exact->hi).p_fa == 0.0);

  const auto grid_interval = zero_error_interval(sweep(h0, h1, ScoreKind::ReconstructionError));
  REQUIRE(grid_interval);
  CHECK(grid_interval->lo > 1.0);
  CHECK(grid_interval->hi <= 100.0);
}

TEST_CASE("overlapping scores have no zero-error interval") {
  const std::vector<double> h0{1, 2, 3}, h1{2.5, 4};
  CHECK_FALSE(separating_interval(h0, h1));
  CHECK_FALSE(zero_error_interval(sweep(h0, h1, ScoreKind::ReconstructionError)));
  const std::vector<double> same{1, 1};
  CHECK_FALSE(separating_interval(same, same));
}

TEST_CASE("sweep equals brute-force counting on random overlapping sets") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> h0(50), h1(50);
    for (auto& v : h0) v = g(rng);
    for (auto& v : h1) v = g(rng) + 1.0;
    // Grid includes every score value so ties are exercised.
    std::vector<double> grid(h0);
    grid.insert(grid.end(), h1.begin(), h1.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const auto c = sweep(h0, h1, grid, ScoreKind::ReconstructionError);
    for (const auto& p : c.points) {
      const auto ref = oracle::count(h0, h1, p.tau);
      CHECK(p.p_fa == ref.p_fa);
      CHECK(p.p_md == ref.p_md);
    }
  }
}

TEST_CASE("default grids") {
  const std::vector<double> h0{0.2, 0.3}, h1{0.7};
  const auto lin = default_grid(h0, h1, ScoreKind::ClassProbability);
  CHECK(lin.size() == 512);
  CHECK(lin.front() == 0.0);
  CHECK(lin.back() == 1.0);
  const std::vector<double> e0{10, 20}, e1{1000};
  const auto lg = default_grid(e0, e1, ScoreKind::ReconstructionError);
  CHECK(lg.front() == doctest::Approx(10 / 1.25));
  CHECK(lg.back() == doctest::Approx(1000 * 1.25));
  CHECK(std::is_sorted(lg.begin(), lg.end()));
}

TEST_CASE("argument errors") {
  const std::vector<double> some{1.0}, none;
  CHECK_THROWS_AS(sweep(none, some, ScoreKind::ClassProbability), ArgumentError);
  CHECK_THROWS_AS(sweep(some, none, ScoreKind::ClassProbability), ArgumentError);
  const std::vector<double> bad_grid{0.5, 0.5};
  CHECK_THROWS_AS(sweep(some, some, bad_grid, ScoreKind::ClassProbability), ArgumentError);
}

TEST_CASE("csv has header and one line per threshold") {
  const std::vector<double> h0{0.1}, h1{0.9}, grid{0.0, 0.5, 1.0};
  const std::string csv = to_csv(sweep(h0, h1, grid, ScoreKind::ClassProbability));
  CHECK(csv.rfind("tau,p_fa,p_md\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("0.5,0,0\n") != std::string::npos);
}
