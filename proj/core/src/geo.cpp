#include "edgecast/geo.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <limits>
#include <unordered_set>

#include "edgecast/rng.hpp"

namespace edgecast::geo {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * (kPi / 180.0); }

}  // namespace

bool is_valid(const GeoPoint& p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 &&
         p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

void validate(const GeoPoint& p, const char* what) {
  if (!is_valid(p)) {
    throw invalid_input_error(std::string(what) + ": coordinate out of range (lat=" +
                              std::to_string(p.lat) + ", lon=" + std::to_string(p.lon) + ")");
  }
}

double BBox::diagonal_deg() const {
  const double dlat = max_lat - min_lat;
  const double dlon = max_lon - min_lon;
  return std::sqrt(dlat * dlat + dlon * dlon);
}

std::uint32_t BlockGrid::block_of(const GeoPoint& p) const {
  // Clamp so points on the max edges land in the last row/column; every
  // point of the bbox maps to exactly one block.
  const double fr = (p.lat - bbox.min_lat) / (bbox.max_lat - bbox.min_lat);
  const double fc = (p.lon - bbox.min_lon) / (bbox.max_lon - bbox.min_lon);
  auto clamp_idx = [](double f, std::uint32_t n) {
    const auto i = static_cast<std::int64_t>(f * n);
    return static_cast<std::uint32_t>(std::clamp<std::int64_t>(i, 0, n - 1));
  };
  return clamp_idx(fr, rows) * cols + clamp_idx(fc, cols);
}

BlockGrid make_grid(const BBox& bbox, std::uint32_t rows, std::uint32_t cols) {
  if (bbox.degenerate()) throw invalid_input_error("grid: degenerate bounding box");
  if (rows == 0 || cols == 0) throw invalid_input_error("grid: rows and cols must be >= 1");
  return BlockGrid{bbox, rows, cols};
}

const GeoPoint& Topology::ap(ApId id) const {
  if (id >= aps.size()) throw invalid_topology_error("unknown ApId " + std::to_string(id));
  return aps[id];
}

std::vector<bool> Topology::edge_presence(std::span<const std::uint32_t> edge_units) const {
  if (edge_units.size() != aps.size()) {
    throw invalid_input_error("edge_presence: one capacity entry per AP required");
  }
  std::vector<bool> present(grid.block_count(), false);
  for (std::size_t i = 0; i < aps.size(); ++i) {
    if (edge_units[i] > 0) present[grid.block_of(aps[i])] = true;
  }
  return present;
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  validate(a, "haversine");
  validate(b, "haversine");
  const double phi1 = deg2rad(a.lat);
  const double phi2 = deg2rad(b.lat);
  const double dphi = deg2rad(b.lat - a.lat);
  const double dlam = deg2rad(b.lon - a.lon);
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlam / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

std::pair<ApId, double> nearest_ap(const GeoPoint& ue, const Topology& topo) {
  if (topo.aps.empty()) throw invalid_topology_error("nearest_ap: topology has no APs");
  return ApIndex(topo).nearest(ue);
}

ApIndex::ApIndex(const Topology& topo) {
  const std::size_t n = topo.aps.size();
  if (n == 0) throw invalid_topology_error("ApIndex: topology has no APs");
  lat_rad_.reserve(n);
  cos_lat_.reserve(n);
  lon_rad_.reserve(n);
  for (const auto& p : topo.aps) {
    lat_rad_.push_back(deg2rad(p.lat));
    cos_lat_.push_back(std::cos(deg2rad(p.lat)));
    lon_rad_.push_back(deg2rad(p.lon));
  }
}

std::pair<ApId, double> ApIndex::nearest(const GeoPoint& ue) const {
  validate(ue, "nearest");
  const double phi = deg2rad(ue.lat);
  const double cphi = std::cos(phi);
  const double lam = deg2rad(ue.lon);
  ApId best = 0;
  double best_h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lat_rad_.size(); ++i) {
    const double s1 = std::sin((lat_rad_[i] - phi) / 2.0);
    const double s2 = std::sin((lon_rad_[i] - lam) / 2.0);
    // The haversine term is monotone in distance, so comparing it directly
    // selects the same AP (and the same tie set) as comparing kilometers.
    const double h = s1 * s1 + cphi * cos_lat_[i] * s2 * s2;
    if (h < best_h) {
      best_h = h;
      best = static_cast<ApId>(i);
    }
  }
  const double km = 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(best_h)));
  return {best, km};
}

namespace {

BBox bbox_of_points(const std::vector<GeoPoint>& pts) {
  BBox b{90.0, 180.0, -90.0, -180.0};
  for (const auto& p : pts) {
    b.min_lat = std::min(b.min_lat, p.lat);
    b.max_lat = std::max(b.max_lat, p.lat);
    b.min_lon = std::min(b.min_lon, p.lon);
    b.max_lon = std::max(b.max_lon, p.lon);
  }
  // Pad degenerate extents (single AP, collinear points) so the grid stays
  // well-formed.
  const double eps = 1e-3;
  if (!(b.min_lat < b.max_lat)) {
    b.min_lat -= eps;
    b.max_lat += eps;
  }
  if (!(b.min_lon < b.max_lon)) {
    b.min_lon -= eps;
    b.max_lon += eps;
  }
  return b;
}

double parse_double_field(std::string_view field, std::size_t line_no, const char* name) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw parse_error("ap csv line " + std::to_string(line_no) + ": bad " + name + " '" +
                      std::string(field) + "'");
  }
  return value;
}

}  // namespace

Topology load_ap_csv(const std::string& path, std::uint32_t grid_rows,
                     std::uint32_t grid_cols, const GeoPoint& cloud) {
  std::ifstream in(path);
  if (!in) throw parse_error("ap csv: cannot open '" + path + "'");

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw parse_error("ap csv: empty file '" + path + "'");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "ap_id,lat,lon") {
    throw parse_error("ap csv line 1: expected header 'ap_id,lat,lon', got '" + line + "'");
  }

  std::vector<GeoPoint> pts;
  std::unordered_set<long long> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        line.find(',', c2 + 1) != std::string::npos) {
      throw parse_error("ap csv line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const std::string_view id_f(line.data(), c1);
    const std::string_view lat_f(line.data() + c1 + 1, c2 - c1 - 1);
    const std::string_view lon_f(line.data() + c2 + 1, line.size() - c2 - 1);

    long long id = 0;
    auto [ptr, ec] = std::from_chars(id_f.data(), id_f.data() + id_f.size(), id);
    if (ec != std::errc() || ptr != id_f.data() + id_f.size()) {
      throw parse_error("ap csv line " + std::to_string(line_no) + ": bad ap_id '" +
                        std::string(id_f) + "'");
    }
    if (!seen_ids.insert(id).second) {
      throw parse_error("ap csv line " + std::to_string(line_no) + ": duplicate ap_id " +
                        std::to_string(id));
    }

    GeoPoint p{parse_double_field(lat_f, line_no, "lat"),
               parse_double_field(lon_f, line_no, "lon")};
    if (!is_valid(p)) {
      throw parse_error("ap csv line " + std::to_string(line_no) +
                        ": coordinate out of range (lat=" + std::string(lat_f) +
                        ", lon=" + std::string(lon_f) + ")");
    }
    pts.push_back(p);  // file order defines the dense ApId
  }
  if (pts.empty()) throw parse_error("ap csv: no AP rows in '" + path + "'");

  Topology topo;
  topo.grid = make_grid(bbox_of_points(pts), grid_rows, grid_cols);
  topo.aps = std::move(pts);
  topo.cloud_location = cloud;
  return topo;
}

Topology synth_aps(std::uint32_t n, const BBox& bbox, SynthMode mode,
                   std::uint64_t seed, std::uint32_t grid_rows,
                   std::uint32_t grid_cols, const GeoPoint& cloud) {
  if (n == 0) throw invalid_input_error("synth_aps: n must be >= 1");
  if (bbox.degenerate()) throw invalid_input_error("synth_aps: degenerate bounding box");

  rng::Stream rs(rng::splitmix64(seed));
  std::vector<GeoPoint> pts;
  pts.reserve(n);

  if (mode == SynthMode::uniform) {
    for (std::uint32_t i = 0; i < n; ++i) {
      pts.push_back({rs.uniform(bbox.min_lat, bbox.max_lat),
                     rs.uniform(bbox.min_lon, bbox.max_lon)});
    }
  } else {
    const std::uint32_t k = (n + 49) / 50;
    std::vector<GeoPoint> centers;
    centers.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      centers.push_back({rs.uniform(bbox.min_lat, bbox.max_lat),
                         rs.uniform(bbox.min_lon, bbox.max_lon)});
    }
    const double sigma = 0.01 * bbox.diagonal_deg();
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto& c = centers[rs.uniform_index(k)];
      GeoPoint p{rs.normal(c.lat, sigma), rs.normal(c.lon, sigma)};
      p.lat = std::clamp(p.lat, bbox.min_lat, bbox.max_lat);
      p.lon = std::clamp(p.lon, bbox.min_lon, bbox.max_lon);
      pts.push_back(p);
    }
  }

  Topology topo;
  topo.aps = std::move(pts);
  topo.cloud_location = cloud;
  topo.grid = make_grid(bbox, grid_rows, grid_cols);
  return topo;
}

}  // namespace edgecast::geo
