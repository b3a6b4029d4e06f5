#include "dumbbell/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dumbbell {

namespace {

double axis_overlap(double lo1, double hi1, double lo2, double hi2) {
  return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

// Compensated accumulator; keeps bucket sums exact to a few ulps so the
// breakdown identities hold at 1e-12 even on million-cell grids.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Geometric spacing ladder covering `len`, starting at h0 and growing by
// `ratio` up to `hmax`, then rescaled so the segments sum to len exactly.
std::vector<double> graded_spacings(double len, double h0, double ratio,
                                    double hmax) {
  std::vector<double> hs;
  if (!(len > 0.0)) return hs;
  double h = std::min(h0, hmax);
  double covered = 0.0;
  while (covered < len) {
    hs.push_back(h);
    covered += h;
    h = std::min(h * ratio, hmax);
  }
  const double scale = len / covered;
  for (double& v : hs) v *= scale;
  return hs;
}

// Symmetric axis: uniform nodes across the neck span [-inner, inner]
// (n segments per half), graded outward to +-outer. Nodes land exactly on
// +-inner, 0 and +-outer, and the array is bitwise mirror-symmetric.
Axis symmetric_axis(double inner, double outer, int n, double ratio,
                    double hmax) {
  std::vector<double> pos;
  for (int i = 1; i <= n; ++i)
    pos.push_back(i == n ? inner : inner * i / n);
  const auto hs = graded_spacings(outer - inner, inner / n, ratio, hmax);
  double p = inner;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    p += hs[i];
    pos.push_back(i + 1 == hs.size() ? outer : p);
  }
  Eigen::VectorXd nodes(2 * static_cast<int>(pos.size()) + 1);
  const int m = static_cast<int>(pos.size());
  nodes[m] = 0.0;
  for (int i = 0; i < m; ++i) {
    nodes[m + 1 + i] = pos[static_cast<std::size_t>(i)];
    nodes[m - 1 - i] = -pos[static_cast<std::size_t>(i)];
  }
  return Axis::from_nodes(std::move(nodes));
}

}  // namespace

void NeckParams::validate() const {
  if (!(eps > 0.0) || !(delta > 0.0) || !(eta > 0.0))
    throw std::invalid_argument("NeckParams: lengths must be positive");
  if (eta > delta)
    throw RegimeViolationError(
        "NeckParams: eta > delta violates the eta <= delta convention");
}

std::string region_name(Region r) {
  switch (r) {
    case Region::Outside: return "Outside";
    case Region::LeftBulk: return "LeftBulk";
    case Region::Neck: return "Neck";
    case Region::RightBulk: return "RightBulk";
  }
  return "?";
}

double Box::overlap(const Box& other) const {
  return axis_overlap(lo.x(), hi.x(), other.lo.x(), other.hi.x()) *
         axis_overlap(lo.y(), hi.y(), other.lo.y(), other.hi.y()) *
         axis_overlap(lo.z(), hi.z(), other.lo.z(), other.hi.z());
}

DumbbellDomain::DumbbellDomain(const NeckParams& neck, const BulkSpec& bulk)
    : neck_(neck), bulk_(bulk) {
  neck.validate();
  const double L = bulk.half_extent;
  const double r0 = bulk.flat_radius;
  if (!(L > 0.0)) throw std::invalid_argument("BulkSpec: half_extent <= 0");
  if (L < 20.0 * std::max(neck.delta, neck.eta))
    throw std::invalid_argument(
        "BulkSpec: bulks must dominate the neck (half_extent >= 20 "
        "max(delta, eta))");
  if (!(r0 > 0.0) || r0 > 0.5 * L)
    throw std::invalid_argument(
        "BulkSpec: flat_radius must lie inside the bulk face (0, L/2]");
  neck_box_ = {Vec3(-neck.eps, -neck.delta, -neck.eta),
               Vec3(neck.eps, neck.delta, neck.eta)};
  left_box_ = {Vec3(-L - neck.eps, -0.5 * L, -0.5 * L),
               Vec3(-neck.eps, 0.5 * L, 0.5 * L)};
  right_box_ = {Vec3(neck.eps, -0.5 * L, -0.5 * L),
                Vec3(L + neck.eps, 0.5 * L, 0.5 * L)};
}

Region DumbbellDomain::region(const Vec3& p) const {
  if (neck_box_.contains(p)) return Region::Neck;
  if (left_box_.contains(p)) return Region::LeftBulk;
  if (right_box_.contains(p)) return Region::RightBulk;
  return Region::Outside;
}

const Box& DumbbellDomain::region_box(Region r) const {
  switch (r) {
    case Region::Neck: return neck_box_;
    case Region::LeftBulk: return left_box_;
    case Region::RightBulk: return right_box_;
    default: break;
  }
  throw std::invalid_argument("region_box: no box for Outside");
}

DumbbellDomain build_domain(const NeckParams& neck, const BulkSpec& bulk) {
  return DumbbellDomain(neck, bulk);
}

Axis Axis::uniform(double a, double b, int n_cells) {
  if (!(b > a)) throw std::invalid_argument("Axis: empty interval");
  if (n_cells < 1) throw std::invalid_argument("Axis: need at least one cell");
  Eigen::VectorXd nodes(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i)
    nodes[i] = (i == n_cells) ? b : a + (b - a) * i / n_cells;
  return from_nodes(std::move(nodes));
}

Axis Axis::single(double a, double b) {
  if (!(b > a)) throw std::invalid_argument("Axis: empty interval");
  Axis ax;
  ax.nodes = Eigen::VectorXd::Constant(1, 0.5 * (a + b));
  ax.edges = Eigen::VectorXd(2);
  ax.edges << a, b;
  return ax;
}

Axis Axis::from_nodes(Eigen::VectorXd nodes) {
  Axis ax;
  const int n = static_cast<int>(nodes.size());
  if (n < 1) throw std::invalid_argument("Axis: no nodes");
  ax.edges = Eigen::VectorXd(n + 1);
  ax.edges[0] = nodes[0];
  for (int i = 1; i < n; ++i) ax.edges[i] = 0.5 * (nodes[i - 1] + nodes[i]);
  ax.edges[n] = nodes[n - 1];
  ax.nodes = std::move(nodes);
  ax.validate();
  return ax;
}

void Axis::validate() const {
  const int n = size();
  if (n < 1) throw std::invalid_argument("Axis: no nodes");
  if (edges.size() != n + 1)
    throw std::invalid_argument("Axis: edges/nodes size mismatch");
  for (int i = 1; i < n; ++i)
    if (!(nodes[i] > nodes[i - 1]))
      throw std::invalid_argument("Axis: nodes must be strictly increasing");
  for (int i = 0; i < n; ++i)
    if (edges[i] > nodes[i] || nodes[i] > edges[i + 1])
      throw std::invalid_argument("Axis: node outside its cell");
}

double Axis::max_spacing() const {
  const int n = size();
  if (n == 1) return edges[1] - edges[0];
  double h = 0.0;
  for (int i = 1; i < n; ++i) h = std::max(h, nodes[i] - nodes[i - 1]);
  return h;
}

std::array<int, 3> DumbbellGrid::dims() const {
  return {axes_[0].size(), axes_[1].size(), axes_[2].size()};
}

std::array<int, 3> DumbbellGrid::cell_coords(int cell) const {
  const auto d = dims();
  const std::int64_t lin = active_lin_[static_cast<std::size_t>(cell)];
  const int i = static_cast<int>(lin % d[0]);
  const int j = static_cast<int>((lin / d[0]) % d[1]);
  const int k = static_cast<int>(lin / (static_cast<std::int64_t>(d[0]) * d[1]));
  return {i, j, k};
}

Vec3 DumbbellGrid::position(int cell) const {
  const auto c = cell_coords(cell);
  return Vec3(axes_[0].nodes[c[0]], axes_[1].nodes[c[1]], axes_[2].nodes[c[2]]);
}

int DumbbellGrid::active_at(int i, int j, int k) const {
  const auto d = dims();
  if (i < 0 || j < 0 || k < 0 || i >= d[0] || j >= d[1] || k >= d[2])
    return -1;
  const std::int64_t lin =
      i + static_cast<std::int64_t>(d[0]) * (j + static_cast<std::int64_t>(d[1]) * k);
  return active_of_lin_[static_cast<std::size_t>(lin)];
}

void DumbbellGrid::build_active(
    const std::function<Region(const Vec3&)>& region_of, std::size_t budget) {
  const auto d = dims();
  const std::int64_t total = static_cast<std::int64_t>(d[0]) * d[1] * d[2];
  active_of_lin_.assign(static_cast<std::size_t>(total), -1);
  std::size_t count = 0;
  for (int k = 0; k < d[2]; ++k)
    for (int j = 0; j < d[1]; ++j)
      for (int i = 0; i < d[0]; ++i) {
        const Vec3 p(axes_[0].nodes[i], axes_[1].nodes[j], axes_[2].nodes[k]);
        if (region_of(p) != Region::Outside) ++count;
      }
  if (count > budget) {
    std::ostringstream os;
    os << "cell budget exceeded: " << count << " active cells > cap "
       << budget;
    throw CellBudgetError(os.str());
  }
  active_lin_.reserve(count);
  region_.reserve(count);
  for (int k = 0; k < d[2]; ++k)
    for (int j = 0; j < d[1]; ++j)
      for (int i = 0; i < d[0]; ++i) {
        const Vec3 p(axes_[0].nodes[i], axes_[1].nodes[j], axes_[2].nodes[k]);
        const Region r = region_of(p);
        if (r == Region::Outside) continue;
        const std::int64_t lin =
            i + static_cast<std::int64_t>(d[0]) *
                    (j + static_cast<std::int64_t>(d[1]) * k);
        active_of_lin_[static_cast<std::size_t>(lin)] =
            static_cast<std::int32_t>(active_lin_.size());
        active_lin_.push_back(lin);
        region_.push_back(static_cast<std::uint8_t>(r));
      }
}

void DumbbellGrid::build_segments() {
  const auto d = dims();
  segments_.clear();

  // Tube half-width toward one transverse side: half the node distance when
  // that side's neighbours of BOTH endpoints are active (flux tube between
  // full columns), the outer-edge extension at the array boundary, zero at a
  // wall.
  const auto side_w = [&](int t_axis, int idx, int dir, int i1, int j1, int k1,
                          int i2, int j2, int k2) -> double {
    const Axis& ax = axes_[t_axis];
    const int n = ax.size();
    const int nb = idx + dir;
    if (nb < 0) return ax.nodes[0] - ax.edges[0];
    if (nb >= n) return ax.edges[n] - ax.nodes[n - 1];
    auto shift = [&](int i, int j, int k) {
      if (t_axis == 0) i += dir;
      if (t_axis == 1) j += dir;
      if (t_axis == 2) k += dir;
      return active_at(i, j, k);
    };
    if (shift(i1, j1, k1) >= 0 && shift(i2, j2, k2) >= 0)
      return 0.5 * std::abs(ax.nodes[nb] - ax.nodes[idx]);
    return 0.0;
  };

  const int axes_of[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  for (int axis = 0; axis < 3; ++axis) {
    const int ta = axes_of[axis][0];
    const int tb = axes_of[axis][1];
    for (int k = 0; k < d[2]; ++k)
      for (int j = 0; j < d[1]; ++j)
        for (int i = 0; i < d[0]; ++i) {
          int i2 = i, j2 = j, k2 = k;
          if (axis == 0) ++i2;
          if (axis == 1) ++j2;
          if (axis == 2) ++k2;
          if (i2 >= d[0] || j2 >= d[1] || k2 >= d[2]) continue;
          const int c1 = active_at(i, j, k);
          const int c2 = active_at(i2, j2, k2);
          if (c1 < 0 || c2 < 0) continue;
          const int idx[3] = {i, j, k};
          const double wa = side_w(ta, idx[ta], -1, i, j, k, i2, j2, k2) +
                            side_w(ta, idx[ta], +1, i, j, k, i2, j2, k2);
          const double wb = side_w(tb, idx[tb], -1, i, j, k, i2, j2, k2) +
                            side_w(tb, idx[tb], +1, i, j, k, i2, j2, k2);
          const double area = wa * wb;
          if (area <= 0.0) continue;
          const double dist =
              axes_[axis].nodes[axis == 0 ? i2 : (axis == 1 ? j2 : k2)] -
              axes_[axis].nodes[idx[axis]];
          Segment s;
          s.a = static_cast<std::int32_t>(c1);
          s.b = static_cast<std::int32_t>(c2);
          s.dist = dist;
          s.area = area;
          s.axis = static_cast<std::uint8_t>(axis);
          segments_.push_back(s);
        }
  }
}

void DumbbellGrid::build_volumes(const DumbbellDomain* domain) {
  const int n = active_count();
  volume_.resize(n);
  for (int c = 0; c < n; ++c) {
    const auto coords = cell_coords(c);
    Box cell;
    for (int a = 0; a < 3; ++a) {
      cell.lo[a] = axes_[a].edges[coords[a]];
      cell.hi[a] = axes_[a].edges[coords[a] + 1];
    }
    if (domain) {
      volume_[c] = cell.overlap(domain->neck_box()) +
                   cell.overlap(domain->left_box()) +
                   cell.overlap(domain->right_box());
    } else {
      volume_[c] = cell.volume();
    }
  }
}

double DumbbellGrid::region_volume(Region r) const {
  Kahan acc;
  if (domain_) {
    const Box& box = domain_->region_box(r);
    for (int c = 0; c < active_count(); ++c) {
      const auto coords = cell_coords(c);
      Box cell;
      for (int a = 0; a < 3; ++a) {
        cell.lo[a] = axes_[a].edges[coords[a]];
        cell.hi[a] = axes_[a].edges[coords[a] + 1];
      }
      acc.add(cell.overlap(box));
    }
  } else {
    for (int c = 0; c < active_count(); ++c)
      if (region(c) == r) acc.add(volume_[c]);
  }
  return acc.sum;
}

bool DumbbellGrid::is_connected() const {
  const int n = active_count();
  if (n == 0) return false;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    const auto [i, j, k] = cell_coords(c);
    const int nbs[6] = {active_at(i - 1, j, k), active_at(i + 1, j, k),
                        active_at(i, j - 1, k), active_at(i, j + 1, k),
                        active_at(i, j, k - 1), active_at(i, j, k + 1)};
    for (int nb : nbs) {
      if (nb >= 0 && !seen[static_cast<std::size_t>(nb)]) {
        seen[static_cast<std::size_t>(nb)] = 1;
        ++reached;
        stack.push_back(nb);
      }
    }
  }
  return reached == n;
}

DumbbellGrid DumbbellGrid::rasterize(const DumbbellDomain& domain,
                                     const ResolutionPolicy& policy) {
  if (policy.cells_per_half < 8)
    throw std::invalid_argument(
        "ResolutionPolicy: must guarantee >= 8 cells across each neck "
        "half-dimension");
  if (!(policy.grading_ratio >= 1.0))
    throw std::invalid_argument("ResolutionPolicy: grading_ratio < 1");
  if (!(policy.max_spacing_fraction > 0.0))
    throw std::invalid_argument("ResolutionPolicy: max_spacing_fraction <= 0");

  const NeckParams& neck = domain.neck();
  const double L = domain.bulk().half_extent;
  const double hmax = L * policy.max_spacing_fraction;
  const int n = policy.cells_per_half;

  DumbbellGrid g;
  g.axes_[0] = symmetric_axis(neck.eps, L + neck.eps, n, policy.grading_ratio,
                              hmax);
  g.axes_[1] =
      symmetric_axis(neck.delta, 0.5 * L, n, policy.grading_ratio, hmax);
  g.axes_[2] =
      symmetric_axis(neck.eta, 0.5 * L, n, policy.grading_ratio, hmax);
  g.neck_ = neck;
  g.bulk_ = domain.bulk();
  g.domain_ = domain;
  g.build_active([&](const Vec3& p) { return domain.region(p); },
                 policy.cell_budget);
  g.build_segments();
  g.build_volumes(&*g.domain_);
  if (!g.is_connected())
    throw std::runtime_error("rasterize: active cell set is not connected");
  return g;
}

DumbbellGrid DumbbellGrid::neck_only(const NeckParams& neck, int nx, int ny,
                                     int nz) {
  neck.validate();
  auto make = [](double half, int n) {
    return n <= 0 ? Axis::single(-half, half) : Axis::uniform(-half, half, n);
  };
  DumbbellGrid g = box(make(neck.eps, nx), make(neck.delta, ny),
                       make(neck.eta, nz), {}, Region::Neck);
  g.neck_ = neck;
  return g;
}

DumbbellGrid DumbbellGrid::box(Axis x, Axis y, Axis z,
                               std::vector<std::uint8_t> mask, Region label) {
  DumbbellGrid g;
  g.axes_ = {std::move(x), std::move(y), std::move(z)};
  const auto d = g.dims();
  const std::int64_t total = static_cast<std::int64_t>(d[0]) * d[1] * d[2];
  if (!mask.empty() && mask.size() != static_cast<std::size_t>(total))
    throw std::invalid_argument("box grid: mask size mismatch");
  g.active_of_lin_.assign(static_cast<std::size_t>(total), -1);
  for (std::int64_t lin = 0; lin < total; ++lin) {
    if (!mask.empty() && !mask[static_cast<std::size_t>(lin)]) continue;
    g.active_of_lin_[static_cast<std::size_t>(lin)] =
        static_cast<std::int32_t>(g.active_lin_.size());
    g.active_lin_.push_back(lin);
    g.region_.push_back(static_cast<std::uint8_t>(label));
  }
  if (g.active_lin_.empty())
    throw std::invalid_argument("box grid: no active cells");
  g.build_segments();
  g.build_volumes(nullptr);
  return g;
}

std::string DumbbellGrid::mask_dump() const {
  const auto d = dims();
  std::ostringstream os;
  os.precision(17);
  os << "dumbbell-grid 1\n";
  os << "dims " << d[0] << ' ' << d[1] << ' ' << d[2] << '\n';
  os << "active " << active_count() << '\n';
  const char* names[3] = {"x", "y", "z"};
  for (int a = 0; a < 3; ++a) {
    os << names[a] << "-nodes:";
    for (int i = 0; i < axes_[a].size(); ++i) os << ' ' << axes_[a].nodes[i];
    os << '\n';
    os << names[a] << "-edges:";
    for (int i = 0; i <= axes_[a].size(); ++i) os << ' ' << axes_[a].edges[i];
    os << '\n';
  }
  os << "mask-rle:";
  const std::int64_t total = static_cast<std::int64_t>(d[0]) * d[1] * d[2];
  std::int64_t run = 0;
  int value = -1;
  for (std::int64_t lin = 0; lin <= total; ++lin) {
    const int v =
        lin < total
            ? (active_of_lin_[static_cast<std::size_t>(lin)] >= 0 ? 1 : 0)
            : -1;
    if (v == value) {
      ++run;
    } else {
      if (run > 0) os << ' ' << value << ':' << run;
      value = v;
      run = 1;
    }
  }
  os << '\n';
  return os.str();
}

DumbbellGrid rasterize(const DumbbellDomain& domain,
                       const ResolutionPolicy& policy) {
  return DumbbellGrid::rasterize(domain, policy);
}

}  // namespace dumbbell
