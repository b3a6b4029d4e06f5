// wallsim: batch front end for the dumbbell wall library.
//
// Subcommands: classify, competitor, minimise, sweep, profile. Single
// results are emitted as JSON, sweeps as CSV (or JSON with --format json),
// profiles as CSV. Output goes to stdout or atomically to --out. Exit codes:
// 0 success, 1 numerical failure (JSON error object emitted), 2 usage error.

#include <CLI11.hpp>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "dumbbell/analysis.hpp"
#include "dumbbell/competitors.hpp"
#include "dumbbell/energy.hpp"
#include "dumbbell/geometry.hpp"
#include "dumbbell/io.hpp"
#include "dumbbell/minimise.hpp"
#include "dumbbell/oracle.hpp"
#include "dumbbell/potential.hpp"
#include "dumbbell/regimes.hpp"

using nlohmann::json;
using namespace dumbbell;

namespace {

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << '\n';
  } else {
    write_file_atomic(out_path, content);
  }
}

struct FamilyFlags {
  double delta_c = 1.0, delta_p = 1.0, delta_r = 0.0;
  double eta_c = 1.0, eta_p = 1.0, eta_r = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--delta-c", delta_c, "delta law prefactor");
    cmd->add_option("--delta-p", delta_p, "delta law power of eps")
        ->required();
    cmd->add_option("--delta-r", delta_r, "delta law power of |ln eps|");
    cmd->add_option("--eta-c", eta_c, "eta law prefactor");
    cmd->add_option("--eta-p", eta_p, "eta law power of eps")->required();
    cmd->add_option("--eta-r", eta_r, "eta law power of |ln eps|");
  }
  ScalingFamily family() const {
    return {{delta_c, delta_p, delta_r}, {eta_c, eta_p, eta_r}};
  }
};

struct NeckFlags {
  double eps = 0.0, delta = 0.0, eta = 0.0;
  void attach(CLI::App* cmd) {
    cmd->add_option("--eps", eps, "neck half-length in x")->required();
    cmd->add_option("--delta", delta, "neck half-width in y")->required();
    cmd->add_option("--eta", eta, "neck half-thickness in z")->required();
  }
  NeckParams neck() const { return {eps, delta, eta}; }
};

struct WellFlags {
  double alpha = 0.0, beta = 1.0, well_scale = 1.0;
  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "left well");
    cmd->add_option("--beta", beta, "right well");
    cmd->add_option("--well-scale", well_scale, "potential prefactor w0");
  }
  DoubleWell well() const { return {alpha, beta, well_scale}; }
};

struct GridFlags {
  double L = 1.0, flat_radius = 0.0;
  int cells_per_half = 8;
  double grading_ratio = 1.4;
  double max_spacing_fraction = 1.0 / 12.0;
  std::size_t cell_budget = 2'000'000;

  void attach(CLI::App* cmd) {
    cmd->add_option("--L", L, "bulk half-extent");
    cmd->add_option("--flat-radius", flat_radius,
                    "flat-wall radius r0 (default L/2)");
    cmd->add_option("--cells-per-half", cells_per_half,
                    "cells across each neck half-dimension (>= 8)");
    cmd->add_option("--grading-ratio", grading_ratio, "bulk spacing growth");
    cmd->add_option("--max-spacing-frac", max_spacing_fraction,
                    "bulk spacing cap as a fraction of L");
    cmd->add_option("--cell-budget", cell_budget, "active-cell cap");
  }
  BulkSpec bulk() const {
    return {L, flat_radius > 0.0 ? flat_radius : 0.5 * L};
  }
  ResolutionPolicy policy() const {
    return {cells_per_half, grading_ratio, max_spacing_fraction, cell_budget};
  }
};

struct SolverFlags {
  int max_iters = 50'000;
  double grad_tol = -1.0;
  double energy_tol = 1e-12;
  double ball_radius = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-iters", max_iters, "iteration cap");
    cmd->add_option("--grad-tol", grad_tol,
                    "stationarity tolerance (default 1e-7 (beta-alpha))");
    cmd->add_option("--energy-tol", energy_tol,
                    "relative energy-decrease stop threshold");
    cmd->add_option("--ball-radius", ball_radius,
                    "L2 constraint radius about the initial state");
  }
  SolveOptions options() const {
    SolveOptions o;
    o.max_iters = max_iters;
    o.grad_tol = grad_tol;
    o.energy_tol = energy_tol;
    if (ball_radius > 0.0) o.ball_radius = ball_radius;
    return o;
  }
};

json neck_json(const NeckParams& n) {
  return json{{"eps", n.eps}, {"delta", n.delta}, {"eta", n.eta}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dumbbell wall scaling toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value config file; flags win");

  std::string out_path;
  app.add_option("--out", out_path, "output path (default: stdout)")
      ->configurable(false);

  // ---- classify ------------------------------------------------------
  auto* c_cmd = app.add_subcommand(
      "classify", "classify a scaling family and report predicted limits");
  FamilyFlags c_family;
  c_family.attach(c_cmd);
  double c_alpha = 0.0, c_beta = 1.0, c_eps = 0.0;
  c_cmd->add_option("--alpha", c_alpha, "left well");
  c_cmd->add_option("--beta", c_beta, "right well");
  c_cmd->add_option("--eps", c_eps,
                    "also evaluate the family at this concrete eps");

  // ---- competitor ----------------------------------------------------
  auto* k_cmd = app.add_subcommand(
      "competitor", "closed-form competitor energies and optimal (A,B)");
  NeckFlags k_neck;
  k_neck.attach(k_cmd);
  WellFlags k_well;
  k_well.attach(k_cmd);
  GridFlags k_grid;
  k_grid.attach(k_cmd);
  std::string k_kind = "mixed";
  k_cmd->add_option("--kind", k_kind, "affine|shell|mixed")
      ->check(CLI::IsMember({"affine", "shell", "mixed"}));
  double k_A = 0.0, k_B = 0.0, k_outer_M = 0.0, k_ball = 0.0;
  auto* k_A_opt = k_cmd->add_option("--A", k_A, "left neck value");
  auto* k_B_opt = k_cmd->add_option("--B", k_B, "right neck value");
  k_cmd->add_option("--outer-m", k_outer_M,
                    "outer shell coordinate M (default: a cosh(2M) = r0/2)");
  k_cmd->add_option("--ball-radius", k_ball,
                    "report admissibility of the sampled field for this d");
  std::string k_dump;
  k_cmd->add_option("--dump-field", k_dump,
                    "write the sampled field (binary dump) to this path");

  // ---- minimise ------------------------------------------------------
  auto* m_cmd = app.add_subcommand(
      "minimise", "constrained descent from the piecewise-constant state");
  NeckFlags m_neck;
  m_neck.attach(m_cmd);
  WellFlags m_well;
  m_well.attach(m_cmd);
  GridFlags m_grid;
  m_grid.attach(m_cmd);
  SolverFlags m_solver;
  m_solver.attach(m_cmd);
  std::string m_dump;
  m_cmd->add_option("--dump-field", m_dump,
                    "write the final field (binary dump) to this path");
  std::string m_dump_grid;
  m_cmd->add_option("--dump-grid", m_dump_grid,
                    "write the rasterised grid (text mask dump) to this path");

  // ---- sweep ---------------------------------------------------------
  auto* s_cmd = app.add_subcommand(
      "sweep", "eps-sweep over a scaling family; one row per eps");
  FamilyFlags s_family;
  s_family.attach(s_cmd);
  WellFlags s_well;
  s_well.attach(s_cmd);
  GridFlags s_grid;
  s_grid.attach(s_cmd);
  SolverFlags s_solver;
  s_solver.attach(s_cmd);
  std::vector<double> s_eps_list;
  s_cmd->add_option("--eps", s_eps_list, "eps values (repeat or comma list)")
      ->required()
      ->delimiter(',');
  double s_r1 = 0.1, s_r2 = 0.4;
  s_cmd->add_option("--shell-r1", s_r1,
                    "plateau shell inner radius / max(delta,eta)");
  s_cmd->add_option("--shell-r2", s_r2,
                    "plateau shell outer radius / max(delta,eta)");
  std::string s_format = "csv";
  s_cmd->add_option("--format", s_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  // ---- profile -------------------------------------------------------
  auto* p_cmd = app.add_subcommand(
      "profile", "minimise, then dump the rescaled neck profile as CSV");
  NeckFlags p_neck;
  p_neck.attach(p_cmd);
  WellFlags p_well;
  p_well.attach(p_cmd);
  GridFlags p_grid;
  p_grid.attach(p_cmd);
  SolverFlags p_solver;
  p_solver.attach(p_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_cmd) {
      const ScalingFamily family = c_family.family();
      const RegimeReport report = classify(family);
      json j = to_json(report);
      if (report.has_predictions()) {
        const PredictedLimits lim = predicted_limits(report, c_alpha, c_beta);
        j["absolute"] = {{"alpha", c_alpha},
                         {"beta", c_beta},
                         {"total", lim.total},
                         {"neck", lim.neck},
                         {"outside", lim.outside},
                         {"rate", to_string(lim.rate)},
                         {"outside_rate", to_string(lim.outside_rate)}};
      }
      if (c_eps > 0.0) {
        const NeckParams n = family.at(c_eps);
        json at{{"eps", n.eps}, {"delta", n.delta}, {"eta", n.eta}};
        if (n.eta < n.delta) at["finite_ratio"] = finite_ratio(n);
        if (report.has_predictions())
          at["rho"] = rate_value(report.rate, n);
        j["at_eps"] = at;
      }
      emit(out_path, j.dump(2));
      std::cerr << "classify: " << to_string(report.tag) << '\n';
      return 0;
    }

    if (*k_cmd) {
      const NeckParams neck = k_neck.neck();
      neck.validate();
      if (neck.flat_degenerate())
        std::cerr << "warning: eta == delta (outside the eta << delta "
                     "convention; prolate fits are unavailable)\n";
      const double alpha = k_well.alpha, beta = k_well.beta;
      json j;
      j["kind"] = k_kind;
      j["neck"] = neck_json(neck);
      j["alpha"] = alpha;
      j["beta"] = beta;

      CompetitorKind kind = CompetitorKind::Mixed;
      if (k_kind == "affine") kind = CompetitorKind::Affine;
      if (k_kind == "shell") kind = CompetitorKind::Shell;

      MixedChoice choice{alpha, beta};
      if (neck.eta < neck.delta) {
        const MixedChoice opt = optimal_AB(neck, alpha, beta);
        j["optimal"] = {{"A", opt.A}, {"B", opt.B}};
        if (kind == CompetitorKind::Mixed) choice = opt;
      }
      if (kind == CompetitorKind::Shell) choice = {0.5 * (alpha + beta),
                                                   0.5 * (alpha + beta)};
      if (k_A_opt->count()) choice.A = k_A;
      if (k_B_opt->count()) choice.B = k_B;
      j["A"] = choice.A;
      j["B"] = choice.B;
      j["affine_energy"] = affine_energy(neck, choice.A, choice.B);

      double outer_M = k_outer_M;
      if (kind != CompetitorKind::Affine) {
        const ShellFit fit = fit_shell_to_neck(neck);
        if (outer_M <= 0.0)
          outer_M = default_outer_coordinate(fit, k_grid.bulk().flat_radius);
        const ProlateShell left{fit.a, fit.m, outer_M, choice.A, alpha};
        const ProlateShell right{fit.a, fit.m, outer_M, choice.B, beta};
        j["fit"] = {{"a", fit.a}, {"m", fit.m}, {"outer_M", outer_M}};
        j["shell"] = {{"left_half_energy", half_shell_energy(left)},
                      {"right_half_energy", half_shell_energy(right)}};
        j["mixed"] = {
            {"exact",
             mixed_energy_exact(neck, choice, outer_M, alpha, beta)},
            {"asymptotic",
             mixed_energy_asymptotic(neck, choice, alpha, beta)}};
      }

      if (!k_dump.empty() || k_ball > 0.0) {
        const DumbbellDomain domain = build_domain(neck, k_grid.bulk());
        const DumbbellGrid grid =
            DumbbellGrid::rasterize(domain, k_grid.policy());
        CompetitorParams params;
        params.alpha = alpha;
        params.beta = beta;
        params.A = choice.A;
        params.B = choice.B;
        params.outer_M = outer_M;
        const Eigen::VectorXd field =
            build_competitor_field(grid, kind, params);
        if (k_ball > 0.0) {
          const double dist =
              l2_distance(grid, field, initial_state(grid, alpha, beta));
          j["admissibility"] = {{"l2_distance_to_initial", dist},
                                {"ball_radius", k_ball},
                                {"admissible", dist <= k_ball}};
        }
        if (!k_dump.empty()) {
          write_file_atomic(k_dump, field_dump(grid, field));
          j["field_dump"] = k_dump;
        }
      }
      emit(out_path, j.dump(2));
      std::cerr << "competitor: " << k_kind
                << " affine_energy=" << j["affine_energy"].dump() << '\n';
      return 0;
    }

    if (*m_cmd || *p_cmd) {
      const bool profile_mode = static_cast<bool>(*p_cmd);
      const NeckFlags& nf = profile_mode ? p_neck : m_neck;
      const WellFlags& wf = profile_mode ? p_well : m_well;
      const GridFlags& gf = profile_mode ? p_grid : m_grid;
      const SolverFlags& sf = profile_mode ? p_solver : m_solver;

      const NeckParams neck = nf.neck();
      if (neck.flat_degenerate())
        std::cerr << "warning: eta == delta (outside the eta << delta "
                     "convention)\n";
      const DumbbellDomain domain = build_domain(neck, gf.bulk());
      const DumbbellGrid grid = DumbbellGrid::rasterize(domain, gf.policy());
      const DoubleWell well = wf.well();
      const Eigen::VectorXd init = initial_state(grid, well.alpha, well.beta);
      const SolveResult res = minimise(grid, well, init, sf.options());

      if (profile_mode) {
        const NeckProfile prof = neck_profile(grid, res.field);
        std::ostringstream os;
        os.precision(17);
        os << "x_over_eps,value\n";
        for (int i = 0; i < prof.value.size(); ++i)
          os << prof.x_over_eps[i] << ',' << prof.value[i] << '\n';
        emit(out_path, os.str());
      } else {
        json j;
        j["neck"] = neck_json(neck);
        j["breakdown"] = to_json(res.breakdown);
        j["diagnostics"] = to_json(res.diagnostics);
        j["active_cells"] = grid.active_count();
        j["neck_fraction"] = res.breakdown.total > 0.0
                                 ? json(res.breakdown.neck / res.breakdown.total)
                                 : json(nullptr);
        if (!m_dump.empty()) {
          write_file_atomic(m_dump, field_dump(grid, res.field));
          j["field_dump"] = m_dump;
        }
        if (!m_dump_grid.empty()) {
          write_file_atomic(m_dump_grid, grid_dump(grid));
          j["grid_dump"] = m_dump_grid;
        }
        emit(out_path, j.dump(2));
      }
      std::cerr << (profile_mode ? "profile" : "minimise") << ": E="
                << res.breakdown.total
                << " reason=" << to_string(res.diagnostics.reason)
                << " iters=" << res.diagnostics.iterations << '\n';
      const bool failed = res.diagnostics.reason == Termination::NoDescent ||
                          res.diagnostics.reason == Termination::NonFinite;
      return failed ? 1 : 0;
    }

    if (*s_cmd) {
      SweepOptions opts;
      opts.solve = s_solver.options();
      opts.resolution = s_grid.policy();
      opts.shell_r1_factor = s_r1;
      opts.shell_r2_factor = s_r2;
      const auto rows = sweep(s_family.family(), s_eps_list, s_grid.bulk(),
                              s_well.well(), opts);
      if (s_format == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        emit(out_path, arr.dump(2));
      } else {
        emit(out_path, sweep_csv(rows));
      }
      std::size_t failed = 0;
      for (const auto& r : rows) failed += r.failed ? 1 : 0;
      std::cerr << "sweep: " << rows.size() << " rows (" << failed
                << " failed)\n";
      return (!rows.empty() && failed == rows.size()) ? 1 : 0;
    }
  } catch (const std::exception& e) {
    json err{{"error",
              {{"type", "numerical_failure"}, {"message", e.what()}}}};
    try {
      emit(out_path, err.dump(2));
    } catch (...) {
      std::cout << err.dump(2) << '\n';
    }
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
