#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include <Eigen/Core>

#include "voxdet/common.hpp"

namespace voxdet {

/// World-space position in millimeters.
struct WorldPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Fractional voxel index in storage order (z, y, x).
struct VoxelCoord {
  double z = 0.0;
  double y = 0.0;
  double x = 0.0;
};

/// Axis-aligned cube given by world center and edge length. Detections and
/// ground-truth boxes both use a single diameter.
struct Cube {
  WorldPoint center;
  double diameter_mm = 0.0;
};

/// Dense 3D scalar field. Voxels are stored in (z, y, x) order; world
/// coordinates are (x, y, z) millimeters with origin_mm the world position of
/// voxel (0, 0, 0). Immutable by convention once filled: tile workers share
/// volumes read-only.
class Volume {
 public:
  Volume() = default;
  Volume(std::array<int64_t, 3> shape_zyx, std::array<double, 3> spacing_zyx,
         WorldPoint origin_mm);

  const std::array<int64_t, 3>& shape() const { return shape_; }
  const std::array<double, 3>& spacing_mm() const { return spacing_; }
  const WorldPoint& origin_mm() const { return origin_; }

  int64_t numel() const { return values_.size(); }

  const float& at(int64_t z, int64_t y, int64_t x) const {
    return values_[(z * shape_[1] + y) * shape_[2] + x];
  }
  float& at(int64_t z, int64_t y, int64_t x) {
    return values_[(z * shape_[1] + y) * shape_[2] + x];
  }

  Eigen::ArrayXf& values() { return values_; }
  const Eigen::ArrayXf& values() const { return values_; }

 private:
  std::array<int64_t, 3> shape_{0, 0, 0};
  std::array<double, 3> spacing_{1.0, 1.0, 1.0};
  WorldPoint origin_;
  Eigen::ArrayXf values_;
};

VoxelCoord world_to_voxel(const Volume& v, const WorldPoint& p);
WorldPoint voxel_to_world(const Volume& v, const VoxelCoord& c);

/// Overlapping tile plan over a volume.
struct TileSpec {
  std::array<int64_t, 3> tile_shape{0, 0, 0};
  std::array<int64_t, 3> overlap{0, 0, 0};
  std::vector<std::array<int64_t, 3>> offsets;  // (z, y, x) start indices
};

/// Tile offsets stride by (tile_shape - overlap); the last tile on each axis
/// is shifted back to end exactly at the volume boundary. Volumes smaller
/// than one tile are treated as zero-padded at the high end.
TileSpec plan_tiles(const Volume& v, std::array<int64_t, 3> tile_shape,
                    std::array<int64_t, 3> overlap);

/// Copy of the subvolume starting at `offset`. The returned volume's origin
/// is adjusted so world coordinates agree with the parent. Reads past the
/// parent extent (legal only when the parent is smaller than the tile) are
/// zero-filled.
Volume extract_tile(const Volume& v, std::array<int64_t, 3> offset,
                    std::array<int64_t, 3> tile_shape);

/// Raw little-endian float32 voxels in (z, y, x) order plus a JSON sidecar
/// ("<basename>.json") with shape, spacing and origin.
void write_volume(const std::filesystem::path& raw_path, const Volume& v);
Volume read_volume(const std::filesystem::path& raw_path);

}  // namespace voxdet
