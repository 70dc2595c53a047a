#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "mhd1d/grid.hpp"

using namespace mhd1d;

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid(3), DomainError);
  for (int n : {4, 7, 16, 100, 255}) {
    const Grid g(n);
    CHECK(std::abs(g.dx * g.n_cells - 1.0) <= 1e-16);
    CHECK(g.n_nodes() == n + 1);
    CHECK(g.x_node(0) == 0.0);
    CHECK(g.x_node(n) == Catch::Approx(1.0).margin(1e-15));
    CHECK(g.x_center(0) == Catch::Approx(0.5 * g.dx));
  }
}

TEST_CASE("ddx_node_to_center") {
  const Grid g(4);

  SECTION("constants vanish") {
    const std::vector<double> f(g.n_nodes(), 3.25);
    for (double d : ddx_node_to_center(g, f)) CHECK(d == 0.0);
  }
  SECTION("exact on affine fields") {
    std::vector<double> f(g.n_nodes());
    for (int j = 0; j <= 4; ++j) f[j] = g.x_node(j);
    for (double d : ddx_node_to_center(g, f))
      CHECK(d == Catch::Approx(1.0).margin(1e-14));
  }
  SECTION("quadratic gives 2 x at centers") {
    const Grid g8(8);
    std::vector<double> f(g8.n_nodes());
    for (int j = 0; j <= 8; ++j) f[j] = g8.x_node(j) * g8.x_node(j);
    const auto d = ddx_node_to_center(g8, f);
    for (int i = 0; i < 8; ++i)
      CHECK(d[i] == Catch::Approx(2.0 * g8.x_center(i)).margin(1e-14));
  }
  SECTION("length mismatch") {
    CHECK_THROWS_AS(ddx_node_to_center(g, std::vector<double>(3, 0.0)),
                    DomainError);
  }
}

TEST_CASE("ddx_center_to_node") {
  const Grid g(4);

  SECTION("constant with zero-flux closure vanishes everywhere") {
    const std::vector<double> f(g.n_cells, 2.0);
    for (double d : ddx_center_to_node(g, f, BoundaryClosure::zero_flux,
                                       BoundaryClosure::zero_flux))
      CHECK(d == 0.0);
  }
  SECTION("affine is exact at interior nodes") {
    std::vector<double> f(g.n_cells);
    for (int i = 0; i < 4; ++i) f[i] = g.x_center(i);
    const auto d = ddx_center_to_node(g, f, BoundaryClosure::zero_flux,
                                      BoundaryClosure::zero_flux);
    for (int j = 1; j < 4; ++j) CHECK(d[j] == Catch::Approx(1.0).margin(1e-14));
  }
  SECTION("Dirichlet-0 ghost reflects a constant to +-2c/dx") {
    const double c = 1.75;
    const std::vector<double> f(g.n_cells, c);
    const auto d =
        ddx_center_to_node(g, f, BoundaryClosure::dirichlet_zero_ghost,
                           BoundaryClosure::dirichlet_zero_ghost);
    CHECK(d[0] == Catch::Approx(2.0 * c / g.dx));
    CHECK(d[4] == Catch::Approx(-2.0 * c / g.dx));
    for (int j = 1; j < 4; ++j) CHECK(d[j] == 0.0);
  }
  SECTION("length mismatch") {
    CHECK_THROWS_AS(ddx_center_to_node(g, std::vector<double>(9, 0.0),
                                       BoundaryClosure::zero_flux,
                                       BoundaryClosure::zero_flux),
                    DomainError);
  }
}

TEST_CASE("interp_center_to_node") {
  const Grid g(4);

  SECTION("constants reproduce") {
    const std::vector<double> f(g.n_cells, -0.75);
    for (double x : interp_center_to_node(g, f)) CHECK(x == -0.75);
  }
  SECTION("affine hits nodes at interior points") {
    std::vector<double> f(g.n_cells);
    for (int i = 0; i < 4; ++i) f[i] = g.x_center(i);
    const auto v = interp_center_to_node(g, f);
    for (int j = 1; j < 4; ++j)
      CHECK(v[j] == Catch::Approx(g.x_node(j)).margin(1e-15));
  }
  SECTION("alternating signs cancel at interior nodes") {
    const std::vector<double> f = {1.0, -1.0, 1.0, -1.0};
    const auto v = interp_center_to_node(g, f);
    for (int j = 1; j < 4; ++j) CHECK(v[j] == 0.0);
  }
}

TEST_CASE("apply_boundary pins node fields and is idempotent") {
  const Grid g(8);
  State s(g);
  s.u[0] = 1e-3;
  s.u[8] = -2e-3;
  s.w1[0] = 0.5;
  s.w2[8] = -0.25;
  apply_boundary(g, s);
  CHECK(s.u[0] == 0.0);
  CHECK(s.u[8] == 0.0);
  CHECK(s.w1[0] == 0.0);
  CHECK(s.w2[8] == 0.0);

  const State before = s;
  apply_boundary(g, s);
  CHECK(s.u == before.u);
  CHECK(s.w1 == before.w1);
  CHECK(s.w2 == before.w2);
}

TEST_CASE("theta mirror ghost makes the wall heat flux exactly zero") {
  const Grid g(8);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::vector<double> theta(g.n_cells);
  for (auto& x : theta) x = u(rng);
  const auto tx = ddx_center_to_node(g, theta, BoundaryClosure::zero_flux,
                                     BoundaryClosure::zero_flux);
  CHECK(tx[0] == 0.0);
  CHECK(tx[8] == 0.0);
}

TEST_CASE("telescoping: zero-boundary node fields integrate to zero") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n : {4, 16, 64}) {
    const Grid g(n);
    std::vector<double> f(g.n_nodes());
    for (auto& x : f) x = u(rng);
    f[0] = f[n] = 0.0;
    const auto d = ddx_node_to_center(g, f);
    const double sum = std::accumulate(d.begin(), d.end(), 0.0) * g.dx;
    CHECK(std::abs(sum) <= 1e-13);
  }
}

TEST_CASE("discrete fundamental theorem") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Grid g(32);
  std::vector<double> gfield(g.n_cells), cum(g.n_cells);
  double acc = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    gfield[i] = u(rng);
    acc += gfield[i] * g.dx;
    cum[i] = acc;
  }
  const auto d = ddx_center_to_node(g, cum, BoundaryClosure::zero_flux,
                                    BoundaryClosure::zero_flux);
  for (int j = 1; j < g.n_cells; ++j)
    CHECK(d[j] == Catch::Approx(gfield[j]).margin(1e-12));
}

TEST_CASE("both difference operators annihilate constants") {
  const Grid g(16);
  const std::vector<double> fc(g.n_cells, 4.2), fn(g.n_nodes(), 4.2);
  for (double d : ddx_node_to_center(g, fn)) CHECK(d == 0.0);
  for (double d : ddx_center_to_node(g, fc, BoundaryClosure::zero_flux,
                                     BoundaryClosure::zero_flux))
    CHECK(d == 0.0);
}

TEST_CASE("state invariant checks") {
  const Grid g(8);
  State s(g);
  CHECK_NOTHROW(check_state_positive(s));
  s.v[3] = 0.0;
  CHECK_THROWS_AS(check_state_positive(s), DomainError);
  s.v[3] = 1.0;
  s.theta[5] = -0.1;
  CHECK_THROWS_AS(check_state_positive(s), DomainError);

  s.theta[5] = 1.0;
  s.u.pop_back();
  CHECK_THROWS_AS(check_state_shape(g, s), DomainError);
}
