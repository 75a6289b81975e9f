#pragma once

// Geospatial topology: AP coordinates, great-circle distances, the block
// grid, dataset ingestion and synthetic city generation.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "edgecast/errors.hpp"

namespace edgecast::geo {

inline constexpr double kEarthRadiusKm = 6371.0;

using ApId = std::uint32_t;

struct GeoPoint {
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, [-180, 180]
};

bool is_valid(const GeoPoint& p);
void validate(const GeoPoint& p, const char* what);

struct BBox {
  double min_lat = 0.0;
  double min_lon = 0.0;
  double max_lat = 0.0;
  double max_lon = 0.0;

  bool degenerate() const { return !(min_lat < max_lat) || !(min_lon < max_lon); }
  bool contains(const GeoPoint& p) const {
    return p.lat >= min_lat && p.lat <= max_lat && p.lon >= min_lon && p.lon <= max_lon;
  }
  double diagonal_deg() const;
};

// City presets. The dataset behind the study is not redistributable, so the
// city is named by its bounding box and the cloud by a datacenter location
// (The Dalles, Oregon — roughly 2700 km from the Chicago loop).
inline constexpr BBox kChicagoBBox{41.64, -87.94, 42.02, -87.52};
inline constexpr GeoPoint kChicagoCenter{41.8781, -87.6298};
inline constexpr GeoPoint kOregonDatacenter{45.5946, -121.1787};

/// Partition of a bounding box into rows x cols blocks. Points inside the
/// bbox map to exactly one block; the max edges fold into the last cell.
struct BlockGrid {
  BBox bbox;
  std::uint32_t rows = 32;
  std::uint32_t cols = 32;

  std::uint32_t block_count() const { return rows * cols; }
  std::uint32_t block_of(const GeoPoint& p) const;
};

BlockGrid make_grid(const BBox& bbox, std::uint32_t rows, std::uint32_t cols);

struct Topology {
  std::vector<GeoPoint> aps;  // index == ApId, dense 0..n-1
  GeoPoint cloud_location = kOregonDatacenter;
  BlockGrid grid;

  std::size_t ap_count() const { return aps.size(); }
  const GeoPoint& ap(ApId id) const;

  /// Per-block edge availability (the S of the application tuple): block b is
  /// flagged iff some AP with nonzero edge capacity lies in it.
  std::vector<bool> edge_presence(std::span<const std::uint32_t> edge_units) const;
};

/// Great-circle distance over a spherical earth, R = 6371 km.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

/// AP minimizing haversine distance to `ue`; ties go to the lowest ApId.
std::pair<ApId, double> nearest_ap(const GeoPoint& ue, const Topology& topo);

/// Precomputed trigonometry for repeated nearest-AP queries. nearest_ap()
/// delegates here, so both entry points rank candidates identically (the
/// comparison key is monotone in distance).
class ApIndex {
 public:
  explicit ApIndex(const Topology& topo);
  std::pair<ApId, double> nearest(const GeoPoint& ue) const;

 private:
  std::vector<double> lat_rad_;
  std::vector<double> cos_lat_;
  std::vector<double> lon_rad_;
};

/// Loads `ap_id,lat,lon` CSV. Row order defines the dense ApIds; the grid is
/// fitted to the bounding box of the points.
Topology load_ap_csv(const std::string& path, std::uint32_t grid_rows = 32,
                     std::uint32_t grid_cols = 32,
                     const GeoPoint& cloud = kOregonDatacenter);

enum class SynthMode { uniform, clustered };

/// Deterministic synthetic AP set: `uniform` draws i.i.d. points in the bbox,
/// `clustered` draws ceil(n/50) centers and Gaussian offsets with sigma = 1%
/// of the bbox diagonal, clipped to the bbox.
Topology synth_aps(std::uint32_t n, const BBox& bbox, SynthMode mode,
                   std::uint64_t seed, std::uint32_t grid_rows = 32,
                   std::uint32_t grid_cols = 32,
                   const GeoPoint& cloud = kOregonDatacenter);

}  // namespace edgecast::geo
