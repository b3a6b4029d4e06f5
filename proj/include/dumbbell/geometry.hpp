#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dumbbell {

using Vec3 = Eigen::Vector3d;

struct RegimeViolationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct CellBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Half-lengths of the neck box [-eps,eps] x [-delta,delta] x [-eta,eta].
struct NeckParams {
  double eps = 0.1;
  double delta = 0.05;
  double eta = 0.02;

  void validate() const;
  bool flat_degenerate() const { return eta == delta; }  // permitted, flagged
  double volume() const { return 8.0 * eps * delta * eta; }
};

// Box bulks: left bulk (-L-eps,-eps) x (-L/2,L/2) x (-L/2,L/2), mirrored on
// the right. flat_radius is the radius within which the bulk walls are flat;
// for box bulks the whole face is flat, so the only requirement is that the
// disc fits on the face.
struct BulkSpec {
  double half_extent = 1.0;  // L
  double flat_radius = 0.5;  // r0
};

enum class Region : std::uint8_t {
  Outside = 0,
  LeftBulk = 1,
  Neck = 2,
  RightBulk = 3,
};

std::string region_name(Region r);

// Closed axis-aligned box.
struct Box {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();

  bool contains(const Vec3& p) const {
    return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() &&
           p.y() <= hi.y() && p.z() >= lo.z() && p.z() <= hi.z();
  }
  double volume() const {
    return (hi.x() - lo.x()) * (hi.y() - lo.y()) * (hi.z() - lo.z());
  }
  // Volume of the intersection with another box.
  double overlap(const Box& other) const;
};

// Continuous dumbbell domain: point-membership predicate plus region labels.
// Membership uses the closed domain, so the interface planes x = -eps, +eps
// belong to it; region precedence gives the neck its closure.
class DumbbellDomain {
 public:
  DumbbellDomain(const NeckParams& neck, const BulkSpec& bulk);

  Region region(const Vec3& p) const;
  bool contains(const Vec3& p) const { return region(p) != Region::Outside; }

  const Box& neck_box() const { return neck_box_; }
  const Box& left_box() const { return left_box_; }
  const Box& right_box() const { return right_box_; }
  const Box& region_box(Region r) const;

  const NeckParams& neck() const { return neck_; }
  const BulkSpec& bulk() const { return bulk_; }

 private:
  NeckParams neck_;
  BulkSpec bulk_;
  Box neck_box_, left_box_, right_box_;
};

DumbbellDomain build_domain(const NeckParams& neck, const BulkSpec& bulk);

// One grid axis: strictly increasing nodes plus dual-cell edges
// (edges[i] <= nodes[i] <= edges[i+1]). Rasterised axes place nodes on every
// region boundary and outer edges on the extreme nodes, so that dual-cell
// widths telescope to exact interval lengths.
struct Axis {
  Eigen::VectorXd nodes;
  Eigen::VectorXd edges;

  static Axis uniform(double a, double b, int n_cells);
  static Axis single(double a, double b);
  static Axis from_nodes(Eigen::VectorXd nodes);

  int size() const { return static_cast<int>(nodes.size()); }
  double cell_width(int i) const { return edges[i + 1] - edges[i]; }
  double max_spacing() const;
  void validate() const;
};

struct ResolutionPolicy {
  // Segments across each neck half-dimension; 8 is the supported floor.
  int cells_per_half = 8;
  // Geometric stretch factor for bulk spacing away from the neck.
  double grading_ratio = 1.4;
  // Bulk spacing cap, as a fraction of the bulk half-extent L.
  double max_spacing_fraction = 1.0 / 12.0;
  std::size_t cell_budget = 2'000'000;
};

// Masked structured grid over a tensor-product node set. Only active cells
// carry field values; per-cell volumes are the dual boxes clipped to the
// domain, and Dirichlet segments connect active 6-neighbours with tube areas
// clipped to the active cross-section.
class DumbbellGrid {
 public:
  struct Segment {
    std::int32_t a = 0;
    std::int32_t b = 0;
    double dist = 0.0;   // node distance along the axis
    double area = 0.0;   // transverse tube area
    std::uint8_t axis = 0;
  };

  // Rasterised dumbbell (domain-clipped volumes, region labels, checks).
  static DumbbellGrid rasterize(const DumbbellDomain& domain,
                                const ResolutionPolicy& policy);
  // Neck-only box grid: all cells active, labelled Neck.
  static DumbbellGrid neck_only(const NeckParams& neck, int nx, int ny,
                                int nz);
  // Generic box grid with an explicit mask (empty mask = all active).
  static DumbbellGrid box(Axis x, Axis y, Axis z,
                          std::vector<std::uint8_t> mask = {},
                          Region label = Region::Neck);

  int active_count() const { return static_cast<int>(active_lin_.size()); }
  const Axis& axis(int d) const { return axes_[d]; }
  std::array<int, 3> dims() const;

  std::array<int, 3> cell_coords(int cell) const;
  Vec3 position(int cell) const;
  Region region(int cell) const {
    return static_cast<Region>(region_[static_cast<std::size_t>(cell)]);
  }
  double volume(int cell) const { return volume_[cell]; }
  const Eigen::VectorXd& volumes() const { return volume_; }
  const std::vector<Segment>& segments() const { return segments_; }

  // Active index at tensor coordinates, or -1.
  int active_at(int i, int j, int k) const;

  // Exact volume of the active dual cells clipped to the given region box
  // (rasterised grids) or the labelled dual volume (box grids).
  double region_volume(Region r) const;

  bool is_connected() const;
  double total_volume() const { return volume_.sum(); }

  const std::optional<NeckParams>& neck() const { return neck_; }
  const std::optional<BulkSpec>& bulk() const { return bulk_; }

  // Run-length-encoded mask dump (documented in the README).
  std::string mask_dump() const;

 private:
  DumbbellGrid() = default;
  void build_active(const std::function<Region(const Vec3&)>& region_of,
                    std::size_t budget);
  void build_segments();
  void build_volumes(const DumbbellDomain* domain);

  std::array<Axis, 3> axes_;
  std::vector<std::int32_t> active_of_lin_;  // full tensor -> active id or -1
  std::vector<std::int64_t> active_lin_;     // active id -> linear index
  std::vector<std::uint8_t> region_;         // per active cell
  Eigen::VectorXd volume_;                   // per active cell
  std::vector<Segment> segments_;
  std::optional<NeckParams> neck_;
  std::optional<BulkSpec> bulk_;
  std::optional<DumbbellDomain> domain_;
};

DumbbellGrid rasterize(const DumbbellDomain& domain,
                       const ResolutionPolicy& policy);

}  // namespace dumbbell
