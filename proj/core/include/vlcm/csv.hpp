#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vlcm/analysis.hpp"
#include "vlcm/montecarlo.hpp"

namespace vlcm {

/// Shortest decimal form that round-trips a double exactly (%.17g).
std::string format_g17(double value);

/// All files use a header row, LF line endings, and %.17g floats, so every
/// emitted CSV re-parses into the producing in-memory values bit-exactly.

void write_ber_curve_csv(const std::string& path, const BerCurve& curve);
BerCurve read_ber_curve_csv(const std::string& path);

void write_sweep_csv(const std::string& path, const std::string& x_name,
                     const std::vector<SweepPoint>& points);
std::vector<SweepPoint> read_sweep_csv(const std::string& path);

void write_bound_curve_csv(const std::string& path, const BoundCurve& curve);
BoundCurve read_bound_curve_csv(const std::string& path);

struct PlacementMetricsRow {
  std::string placement;
  std::string modulation;
  double d_min_h = 0.0;
  double d_avg_h = 0.0;
};
void write_placement_metrics_csv(const std::string& path,
                                 const std::vector<PlacementMetricsRow>& rows);
std::vector<PlacementMetricsRow> read_placement_metrics_csv(
    const std::string& path);

/// Matrix CSVs carry one row per grid y (south row first) with
/// comma-separated cells; cells without data are written as "nan".
void write_gamma_map_csv(const std::string& path, const RateMap& map);
void write_rate_map_csv(const std::string& path, const RateMap& map);
std::vector<std::vector<double>> read_matrix_csv(const std::string& path);

void write_coverage_csv(const std::string& path,
                        const std::vector<std::pair<int, double>>& rows);
std::vector<std::pair<int, double>> read_coverage_csv(const std::string& path);

}  // namespace vlcm
