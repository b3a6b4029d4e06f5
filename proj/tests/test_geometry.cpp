#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dumbbell/geometry.hpp"

using namespace dumbbell;

namespace {
const NeckParams kNeck{0.1, 0.05, 0.02};
const BulkSpec kBulk{1.0, 0.5};
}  // namespace

TEST_CASE("point membership of the continuous domain") {
  const DumbbellDomain dom = build_domain(kNeck, kBulk);
  CHECK(dom.region({0.0, 0.0, 0.0}) == Region::Neck);
  CHECK(dom.region({-0.5, 0.0, 0.0}) == Region::LeftBulk);
  CHECK(dom.region({0.5, 0.1, -0.3}) == Region::RightBulk);
  CHECK(dom.region({0.0, 0.06, 0.0}) == Region::Outside);  // |y| > delta
  CHECK(dom.region({0.0, 0.0, 0.025}) == Region::Outside); // |z| > eta
  CHECK(dom.region({1.2, 0.0, 0.0}) == Region::Outside);   // past the bulk
  // Interface plane belongs to the closed domain.
  CHECK(dom.contains({-0.1, 0.3, 0.3}));
  CHECK(dom.region({-0.1, 0.3, 0.3}) == Region::LeftBulk);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(build_domain({0.1, 0.02, 0.05}, kBulk),
                  RegimeViolationError);  // eta > delta
  CHECK_THROWS_AS(build_domain({0.0, 0.05, 0.02}, kBulk),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_domain({0.1, -0.05, 0.02}, kBulk),
                  std::invalid_argument);
  // Bulks must dominate the neck.
  CHECK_THROWS_AS(build_domain({0.1, 0.09, 0.02}, BulkSpec{1.0, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_domain(kNeck, BulkSpec{1.0, 0.7}),
                  std::invalid_argument);  // r0 > L/2
  // eta == delta is permitted but flagged.
  const NeckParams flat{0.1, 0.02, 0.02};
  CHECK_NOTHROW(flat.validate());
  CHECK(flat.flat_degenerate());
}

TEST_CASE("neck volume is the analytic product") {
  CHECK(kNeck.volume() == doctest::Approx(8e-4).epsilon(1e-15));
  const DumbbellGrid grid =
      rasterize(build_domain(kNeck, kBulk), ResolutionPolicy{});
  CHECK(grid.region_volume(Region::Neck) ==
        doctest::Approx(8e-4).epsilon(1e-12));
  // Bulk boxes have volume L^3 each.
  CHECK(grid.region_volume(Region::LeftBulk) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(grid.region_volume(Region::RightBulk) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(grid.total_volume() ==
        doctest::Approx(2.0 + 8e-4).epsilon(1e-12));
}

TEST_CASE("resolution policy controls the neck spacing") {
  const DumbbellGrid grid =
      rasterize(build_domain(kNeck, kBulk), ResolutionPolicy{});
  const Axis& z = grid.axis(2);
  double h_neck = 0.0;
  for (int i = 1; i < z.size(); ++i)
    if (std::abs(z.nodes[i]) <= kNeck.eta + 1e-15 &&
        std::abs(z.nodes[i - 1]) <= kNeck.eta + 1e-15)
      h_neck = std::max(h_neck, z.nodes[i] - z.nodes[i - 1]);
  CHECK(h_neck <= 0.02 / 8 + 1e-15);
  // Region boundaries are nodes.
  bool has_eta = false, has_eps = false;
  for (int i = 0; i < z.size(); ++i)
    if (z.nodes[i] == kNeck.eta) has_eta = true;
  for (int i = 0; i < grid.axis(0).size(); ++i)
    if (grid.axis(0).nodes[i] == kNeck.eps) has_eps = true;
  CHECK(has_eta);
  CHECK(has_eps);
}

TEST_CASE("degenerate or undersized policies are errors") {
  const DumbbellDomain dom = build_domain(kNeck, kBulk);
  ResolutionPolicy p;
  p.cells_per_half = 0;
  CHECK_THROWS_AS(rasterize(dom, p), std::invalid_argument);
  p.cells_per_half = 4;
  CHECK_THROWS_AS(rasterize(dom, p), std::invalid_argument);
}

TEST_CASE("cell budget is enforced") {
  ResolutionPolicy p;
  p.cell_budget = 1000;
  CHECK_THROWS_AS(rasterize(build_domain(kNeck, kBulk), p), CellBudgetError);
}

TEST_CASE("mask is mirror-symmetric and properly labelled") {
  const DumbbellGrid grid =
      rasterize(build_domain(kNeck, kBulk), ResolutionPolicy{});
  const auto d = grid.dims();
  for (int c = 0; c < grid.active_count(); c += 7) {
    const auto [i, j, k] = grid.cell_coords(c);
    const int m = grid.active_at(d[0] - 1 - i, j, k);
    REQUIRE(m >= 0);
    const Region r = grid.region(c);
    const Region rm = grid.region(m);
    if (r == Region::Neck) CHECK(rm == Region::Neck);
    if (r == Region::LeftBulk) CHECK(rm == Region::RightBulk);
    // y and z mirrors stay active with the same label.
    CHECK(grid.active_at(i, d[1] - 1 - j, k) >= 0);
    CHECK(grid.active_at(i, j, d[2] - 1 - k) >= 0);
  }
}

TEST_CASE("active set is 6-connected") {
  const DumbbellGrid grid =
      rasterize(build_domain(kNeck, kBulk), ResolutionPolicy{});
  CHECK(grid.is_connected());
}

TEST_CASE("neck cells stay inside the closed neck box") {
  const DumbbellGrid grid =
      rasterize(build_domain(kNeck, kBulk), ResolutionPolicy{});
  for (int c = 0; c < grid.active_count(); ++c) {
    if (grid.region(c) != Region::Neck) continue;
    const Vec3 p = grid.position(c);
    CHECK(std::abs(p.x()) <= kNeck.eps + 1e-15);
    CHECK(std::abs(p.y()) <= kNeck.delta + 1e-15);
    CHECK(std::abs(p.z()) <= kNeck.eta + 1e-15);
  }
}

TEST_CASE("region volumes are refinement-independent (clipped exactly)") {
  const DumbbellDomain dom = build_domain(kNeck, kBulk);
  ResolutionPolicy coarse, fine;
  fine.cells_per_half = 16;
  const DumbbellGrid g1 = rasterize(dom, coarse);
  const DumbbellGrid g2 = rasterize(dom, fine);
  for (Region r : {Region::Neck, Region::LeftBulk, Region::RightBulk})
    CHECK(g1.region_volume(r) ==
          doctest::Approx(g2.region_volume(r)).epsilon(1e-12));
}

TEST_CASE("axis construction invariants") {
  CHECK_THROWS_AS(Axis::uniform(1.0, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(Axis::uniform(0.0, 1.0, 0), std::invalid_argument);
  Eigen::VectorXd bad(3);
  bad << 0.0, 2.0, 1.0;
  CHECK_THROWS_AS(Axis::from_nodes(bad), std::invalid_argument);
  const Axis ax = Axis::uniform(-1.0, 1.0, 4);
  CHECK(ax.size() == 5);
  CHECK(ax.nodes[0] == -1.0);
  CHECK(ax.nodes[4] == 1.0);
  CHECK(ax.edges[0] == -1.0);
  CHECK(ax.edges[5] == 1.0);
  const Axis s = Axis::single(-0.5, 0.5);
  CHECK(s.size() == 1);
  CHECK(s.cell_width(0) == 1.0);
}

TEST_CASE("mask dump is parseable and consistent") {
  const NeckParams neck{0.1, 0.05, 0.02};
  const DumbbellGrid grid = DumbbellGrid::neck_only(neck, 8, 8, 8);
  const std::string dump = grid.mask_dump();
  CHECK(dump.find("dumbbell-grid 1") == 0);
  CHECK(dump.find("dims 9 9 9") != std::string::npos);
  // RLE runs sum to the tensor size; active runs sum to the active count.
  std::istringstream is(dump.substr(dump.find("mask-rle:") + 9));
  std::string tok;
  long total = 0, active = 0;
  while (is >> tok) {
    const auto colon = tok.find(':');
    REQUIRE(colon != std::string::npos);
    const int v = std::stoi(tok.substr(0, colon));
    const long n = std::stol(tok.substr(colon + 1));
    total += n;
    if (v == 1) active += n;
  }
  CHECK(total == 9 * 9 * 9);
  CHECK(active == grid.active_count());
}
