#include "vlcm/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace vlcm {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  return in;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::uint64_t to_u64(const std::string& s) { return std::strtoull(s.c_str(), nullptr, 10); }

void expect_header(std::istream& in, const std::string& expected,
                   const std::string& path) {
  std::string line;
  if (!std::getline(in, line) || line != expected)
    throw std::runtime_error("unexpected header in '" + path + "'");
}

}  // namespace

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_ber_curve_csv(const std::string& path, const BerCurve& curve) {
  auto out = open_out(path);
  out << "eb_n0_db,ber,bits,errors\n";
  for (const auto& p : curve.points)
    out << format_g17(p.eb_n0_db) << ',' << format_g17(p.ber) << ',' << p.bits
        << ',' << p.errors << '\n';
}

BerCurve read_ber_curve_csv(const std::string& path) {
  auto in = open_in(path);
  expect_header(in, "eb_n0_db,ber,bits,errors", path);
  BerCurve curve;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 4) throw std::runtime_error("bad row in '" + path + "'");
    curve.points.push_back(
        {to_double(cols[0]), to_double(cols[1]), to_u64(cols[2]), to_u64(cols[3])});
  }
  return curve;
}

void write_sweep_csv(const std::string& path, const std::string& x_name,
                     const std::vector<SweepPoint>& points) {
  auto out = open_out(path);
  out << x_name << ",ber,bits,errors\n";
  for (const auto& p : points)
    out << format_g17(p.x) << ',' << format_g17(p.ber.ber) << ',' << p.ber.bits
        << ',' << p.ber.errors << '\n';
}

std::vector<SweepPoint> read_sweep_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file '" + path + "'");
  std::vector<SweepPoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 4) throw std::runtime_error("bad row in '" + path + "'");
    SweepPoint p;
    p.x = to_double(cols[0]);
    p.ber = {0.0, to_double(cols[1]), to_u64(cols[2]), to_u64(cols[3])};
    points.push_back(p);
  }
  return points;
}

void write_bound_curve_csv(const std::string& path, const BoundCurve& curve) {
  auto out = open_out(path);
  out << "eb_n0_db,ber_bound,ber_bound_raw\n";
  for (const auto& p : curve.points)
    out << format_g17(p.eb_n0_db) << ',' << format_g17(p.ber_bound) << ','
        << format_g17(p.ber_bound_raw) << '\n';
}

BoundCurve read_bound_curve_csv(const std::string& path) {
  auto in = open_in(path);
  expect_header(in, "eb_n0_db,ber_bound,ber_bound_raw", path);
  BoundCurve curve;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 3) throw std::runtime_error("bad row in '" + path + "'");
    curve.points.push_back({to_double(cols[0]), to_double(cols[1]), to_double(cols[2])});
  }
  return curve;
}

void write_placement_metrics_csv(const std::string& path,
                                 const std::vector<PlacementMetricsRow>& rows) {
  auto out = open_out(path);
  out << "placement,modulation,d_min_h,d_avg_h\n";
  for (const auto& r : rows)
    out << r.placement << ',' << r.modulation << ',' << format_g17(r.d_min_h)
        << ',' << format_g17(r.d_avg_h) << '\n';
}

std::vector<PlacementMetricsRow> read_placement_metrics_csv(const std::string& path) {
  auto in = open_in(path);
  expect_header(in, "placement,modulation,d_min_h,d_avg_h", path);
  std::vector<PlacementMetricsRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 4) throw std::runtime_error("bad row in '" + path + "'");
    rows.push_back({cols[0], cols[1], to_double(cols[2]), to_double(cols[3])});
  }
  return rows;
}

namespace {

void write_map(const std::string& path, const RateMap& map,
               const std::function<std::string(const RateMapCell&)>& fmt) {
  auto out = open_out(path);
  for (std::size_t iy = 0; iy < map.ny; ++iy) {
    for (std::size_t ix = 0; ix < map.nx; ++ix) {
      if (ix) out << ',';
      const RateMapCell& cell = map.at(ix, iy);
      out << (cell.valid ? fmt(cell) : "nan");
    }
    out << '\n';
  }
}

}  // namespace

void write_gamma_map_csv(const std::string& path, const RateMap& map) {
  write_map(path, map,
            [](const RateMapCell& c) { return format_g17(c.gamma_bar_db); });
}

void write_rate_map_csv(const std::string& path, const RateMap& map) {
  write_map(path, map,
            [](const RateMapCell& c) { return std::to_string(c.max_rate_bpcu); });
}

std::vector<std::vector<double>> read_matrix_csv(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split(line, ',')) row.push_back(to_double(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_coverage_csv(const std::string& path,
                        const std::vector<std::pair<int, double>>& rows) {
  auto out = open_out(path);
  out << "eta,percent\n";
  for (const auto& [eta, percent] : rows)
    out << eta << ',' << format_g17(percent) << '\n';
}

std::vector<std::pair<int, double>> read_coverage_csv(const std::string& path) {
  auto in = open_in(path);
  expect_header(in, "eta,percent", path);
  std::vector<std::pair<int, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 2) throw std::runtime_error("bad row in '" + path + "'");
    rows.emplace_back(static_cast<int>(to_double(cols[0])), to_double(cols[1]));
  }
  return rows;
}

}  // namespace vlcm
