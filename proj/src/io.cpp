#include "dumbbell/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dumbbell {

using nlohmann::json;

void write_file_atomic(const std::string& path, const void* data,
                       std::size_t size) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(static_cast<const char*>(data),
              static_cast<std::streamsize>(size));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("rename failed for " + target.string());
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  write_file_atomic(path, content.data(), content.size());
}

std::string grid_dump(const DumbbellGrid& grid) { return grid.mask_dump(); }

namespace {

void append_raw(std::string& buf, const void* p, std::size_t n) {
  buf.append(static_cast<const char*>(p), n);
}

template <typename T>
void append_value(std::string& buf, T v) {
  append_raw(buf, &v, sizeof(T));
}

}  // namespace

std::string field_dump(const DumbbellGrid& grid,
                       const Eigen::VectorXd& field) {
  if (field.size() != grid.active_count())
    throw std::invalid_argument("field_dump: field size mismatch");
  std::string buf;
  buf.reserve(1024 + 8 * static_cast<std::size_t>(field.size()));
  append_raw(buf, "DBWFLD1\0", 8);
  const auto d = grid.dims();
  for (int a = 0; a < 3; ++a) append_value<std::int32_t>(buf, d[a]);
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < grid.axis(a).size(); ++i)
      append_value<double>(buf, grid.axis(a).nodes[i]);
  // Mask runs over the full tensor, i fastest.
  std::vector<std::pair<std::uint8_t, std::int64_t>> runs;
  {
    int value = -1;
    std::int64_t run = 0;
    const std::int64_t total =
        static_cast<std::int64_t>(d[0]) * d[1] * d[2];
    for (std::int64_t lin = 0; lin <= total; ++lin) {
      int v = -1;
      if (lin < total) {
        const int i = static_cast<int>(lin % d[0]);
        const int j = static_cast<int>((lin / d[0]) % d[1]);
        const int k = static_cast<int>(lin / (static_cast<std::int64_t>(d[0]) * d[1]));
        v = grid.active_at(i, j, k) >= 0 ? 1 : 0;
      }
      if (v == value) {
        ++run;
      } else {
        if (run > 0) runs.emplace_back(static_cast<std::uint8_t>(value), run);
        value = v;
        run = 1;
      }
    }
  }
  append_value<std::int64_t>(buf, static_cast<std::int64_t>(runs.size()));
  for (const auto& [v, len] : runs) {
    append_value<std::uint8_t>(buf, v);
    append_value<std::int64_t>(buf, len);
  }
  append_value<std::int64_t>(buf, grid.active_count());
  for (int c = 0; c < grid.active_count(); ++c)
    append_value<double>(buf, field[c]);
  return buf;
}

namespace {

json number_or_inf(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double from_number_or_inf(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("expected number or \"inf\": " + s);
  }
  return j.get<double>();
}

std::array<std::string, 3> kappa_expressions(const RegimeReport& r) {
  switch (r.tag) {
    case RegimeTag::SuperThin:
    case RegimeTag::FlatThin:
    case RegimeTag::LetterBoxSub:
      return {"(beta-alpha)^2", "(beta-alpha)^2", "0"};
    case RegimeTag::WindowThick:
    case RegimeTag::NarrowThick:
    case RegimeTag::LetterBoxSuper:
      return {"pi*(beta-alpha)^2", "0", "pi*(beta-alpha)^2"};
    case RegimeTag::LetterBoxCritical:
      return {"pi/(pi+l)*(beta-alpha)^2", "pi^2/(pi+l)^2*(beta-alpha)^2",
              "pi*l^2/(pi+l)^2*(beta-alpha)^2"};
    case RegimeTag::OutOfScopeKS:
      return {"", "", ""};
  }
  return {"", "", ""};
}

}  // namespace

json to_json(const RegimeReport& r) {
  json j;
  j["tag"] = to_string(r.tag);
  j["ell"] = number_or_inf(r.ell);
  j["m_flat"] = r.m_flat ? json(*r.m_flat) : json(nullptr);
  j["l_narrow"] = r.l_narrow ? json(*r.l_narrow) : json(nullptr);
  j["m_flat_nonunit"] = r.m_flat_nonunit;
  if (r.has_predictions()) {
    j["rate"] = to_string(r.rate);
    j["outside_rate"] = to_string(r.outside_rate);
    j["kappa_total"] = r.kappa_total;
    j["kappa_neck"] = r.kappa_neck;
    j["kappa_outside"] = r.kappa_outside;
    j["kappa_units"] = "(beta-alpha)^2";
    const auto expr = kappa_expressions(r);
    j["kappa_total_expr"] = expr[0];
    j["kappa_neck_expr"] = expr[1];
    j["kappa_outside_expr"] = expr[2];
  } else {
    j["rate"] = nullptr;
    j["kappa_total"] = nullptr;
    j["kappa_neck"] = nullptr;
    j["kappa_outside"] = nullptr;
  }
  return j;
}

RegimeReport regime_report_from_json(const json& j) {
  RegimeReport r;
  r.tag = regime_tag_from_string(j.at("tag").get<std::string>());
  r.ell = from_number_or_inf(j.at("ell"));
  if (j.contains("m_flat") && !j["m_flat"].is_null())
    r.m_flat = j["m_flat"].get<double>();
  if (j.contains("l_narrow") && !j["l_narrow"].is_null())
    r.l_narrow = j["l_narrow"].get<double>();
  r.m_flat_nonunit = j.value("m_flat_nonunit", false);
  if (r.has_predictions()) {
    r.rate = rate_kind_from_string(j.at("rate").get<std::string>());
    r.outside_rate = j.contains("outside_rate") && !j["outside_rate"].is_null()
                         ? rate_kind_from_string(
                               j["outside_rate"].get<std::string>())
                         : r.rate;
    r.kappa_total = j.at("kappa_total").get<double>();
    r.kappa_neck = j.at("kappa_neck").get<double>();
    r.kappa_outside = j.at("kappa_outside").get<double>();
  } else {
    r.kappa_total = r.kappa_neck = r.kappa_outside =
        std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

json to_json(const EnergyBreakdown& b) {
  return json{{"total", b.total},
              {"neck", b.neck},
              {"left_bulk", b.left_bulk},
              {"right_bulk", b.right_bulk},
              {"outside", b.outside()},
              {"dirichlet_part", b.dirichlet_part},
              {"potential_part", b.potential_part}};
}

EnergyBreakdown energy_breakdown_from_json(const json& j) {
  EnergyBreakdown b;
  b.total = j.at("total").get<double>();
  b.neck = j.at("neck").get<double>();
  b.left_bulk = j.at("left_bulk").get<double>();
  b.right_bulk = j.at("right_bulk").get<double>();
  b.dirichlet_part = j.at("dirichlet_part").get<double>();
  b.potential_part = j.at("potential_part").get<double>();
  return b;
}

json to_json(const SolveDiagnostics& d) {
  json j;
  j["iterations"] = d.iterations;
  j["final_residual"] = d.final_residual;
  j["reason"] = to_string(d.reason);
  j["energy_monotone"] = d.energy_monotone;
  j["total_backtracks"] = d.total_backtracks;
  j["ball_radius"] =
      d.ball_radius_used ? json(*d.ball_radius_used) : json(nullptr);
  j["final_energy"] =
      d.energy_history.empty() ? json(nullptr) : json(d.energy_history.back());
  return j;
}

json to_json(const SweepRow& row) {
  json j;
  j["eps"] = row.eps;
  j["delta"] = row.delta;
  j["eta"] = row.eta;
  j["rho"] = row.rho;
  j["breakdown"] = to_json(row.breakdown);
  j["neck_fraction"] = number_or_inf(row.neck_fraction);
  j["scaled_total"] = row.scaled_total;
  j["scaled_neck"] = row.scaled_neck;
  j["m1"] = number_or_inf(row.m1);
  j["m2"] = number_or_inf(row.m2);
  j["profile_deviation"] = number_or_inf(row.profile_deviation);
  j["active_cells"] = row.active_cells;
  j["iterations"] = row.iterations;
  j["termination"] = row.termination;
  j["degenerate"] = row.degenerate;
  j["failed"] = row.failed;
  j["error"] = row.error;
  return j;
}

SweepRow sweep_row_from_json(const json& j) {
  SweepRow row;
  row.eps = j.at("eps").get<double>();
  row.delta = j.at("delta").get<double>();
  row.eta = j.at("eta").get<double>();
  row.rho = j.at("rho").get<double>();
  row.breakdown = energy_breakdown_from_json(j.at("breakdown"));
  row.neck_fraction = from_number_or_inf(j.at("neck_fraction"));
  row.scaled_total = j.at("scaled_total").get<double>();
  row.scaled_neck = j.at("scaled_neck").get<double>();
  row.m1 = from_number_or_inf(j.at("m1"));
  row.m2 = from_number_or_inf(j.at("m2"));
  row.profile_deviation = from_number_or_inf(j.at("profile_deviation"));
  row.active_cells = j.at("active_cells").get<std::size_t>();
  row.iterations = j.at("iterations").get<int>();
  row.termination = j.at("termination").get<std::string>();
  row.degenerate = j.at("degenerate").get<bool>();
  row.failed = j.at("failed").get<bool>();
  row.error = j.value("error", "");
  return row;
}

std::string sweep_csv_header() {
  return "eps,delta,eta,rho,total,neck,left_bulk,right_bulk,outside,"
         "dirichlet,potential,neck_fraction,scaled_total,scaled_neck,"
         "m1,m2,profile_deviation,active_cells,iterations,termination,"
         "degenerate,failed,error";
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << sweep_csv_header() << '\n';
  for (const auto& r : rows) {
    std::string err = r.error;
    for (char& ch : err)
      if (ch == ',' || ch == '\n') ch = ';';
    os << fmt(r.eps) << ',' << fmt(r.delta) << ',' << fmt(r.eta) << ','
       << fmt(r.rho) << ',' << fmt(r.breakdown.total) << ','
       << fmt(r.breakdown.neck) << ',' << fmt(r.breakdown.left_bulk) << ','
       << fmt(r.breakdown.right_bulk) << ',' << fmt(r.breakdown.outside())
       << ',' << fmt(r.breakdown.dirichlet_part) << ','
       << fmt(r.breakdown.potential_part) << ',' << fmt(r.neck_fraction)
       << ',' << fmt(r.scaled_total) << ',' << fmt(r.scaled_neck) << ','
       << fmt(r.m1) << ',' << fmt(r.m2) << ',' << fmt(r.profile_deviation)
       << ',' << r.active_cells << ',' << r.iterations << ','
       << r.termination << ',' << (r.degenerate ? 1 : 0) << ','
       << (r.failed ? 1 : 0) << ',' << err << '\n';
  }
  return os.str();
}

}  // namespace dumbbell
