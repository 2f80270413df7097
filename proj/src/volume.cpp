#include "voxdet/volume.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace voxdet {

static_assert(std::endian::native == std::endian::little,
              "volume files are little-endian; big-endian hosts unsupported");

Volume::Volume(std::array<int64_t, 3> shape_zyx, std::array<double, 3> spacing_zyx,
               WorldPoint origin_mm)
    : shape_(shape_zyx), spacing_(spacing_zyx), origin_(origin_mm) {
  for (int a = 0; a < 3; ++a) {
    check_config(shape_[a] >= 1, "volume shape components must be >= 1");
    check_config(spacing_[a] > 0.0, "volume spacing components must be > 0");
  }
  values_ = Eigen::ArrayXf::Zero(shape_[0] * shape_[1] * shape_[2]);
}

VoxelCoord world_to_voxel(const Volume& v, const WorldPoint& p) {
  const auto& s = v.spacing_mm();
  const auto& o = v.origin_mm();
  return VoxelCoord{(p.z - o.z) / s[0], (p.y - o.y) / s[1], (p.x - o.x) / s[2]};
}

WorldPoint voxel_to_world(const Volume& v, const VoxelCoord& c) {
  const auto& s = v.spacing_mm();
  const auto& o = v.origin_mm();
  return WorldPoint{o.x + c.x * s[2], o.y + c.y * s[1], o.z + c.z * s[0]};
}

TileSpec plan_tiles(const Volume& v, std::array<int64_t, 3> tile_shape,
                    std::array<int64_t, 3> overlap) {
  for (int a = 0; a < 3; ++a) {
    check_config(tile_shape[a] >= 1, "tile shape must be >= 1");
    check_config(overlap[a] >= 0 && overlap[a] < tile_shape[a],
                 "overlap must satisfy 0 <= overlap < tile_shape");
  }
  std::array<std::vector<int64_t>, 3> per_axis;
  for (int a = 0; a < 3; ++a) {
    const int64_t extent = std::max(v.shape()[a], tile_shape[a]);  // padded extent
    const int64_t stride = tile_shape[a] - overlap[a];
    for (int64_t start = 0;; start += stride) {
      if (start + tile_shape[a] >= extent) {
        const int64_t last = extent - tile_shape[a];
        if (per_axis[a].empty() || per_axis[a].back() != last) per_axis[a].push_back(last);
        break;
      }
      per_axis[a].push_back(start);
    }
  }
  TileSpec spec;
  spec.tile_shape = tile_shape;
  spec.overlap = overlap;
  for (int64_t z : per_axis[0])
    for (int64_t y : per_axis[1])
      for (int64_t x : per_axis[2]) spec.offsets.push_back({z, y, x});
  return spec;
}

Volume extract_tile(const Volume& v, std::array<int64_t, 3> offset,
                    std::array<int64_t, 3> tile_shape) {
  for (int a = 0; a < 3; ++a) {
    const int64_t padded = std::max(v.shape()[a], tile_shape[a]);
    check_shape(offset[a] >= 0 && offset[a] + tile_shape[a] <= padded,
                "tile extends outside the (padded) volume");
  }
  const auto& sp = v.spacing_mm();
  const WorldPoint origin{v.origin_mm().x + static_cast<double>(offset[2]) * sp[2],
                          v.origin_mm().y + static_cast<double>(offset[1]) * sp[1],
                          v.origin_mm().z + static_cast<double>(offset[0]) * sp[0]};
  Volume tile(tile_shape, sp, origin);
  const auto& shape = v.shape();
  for (int64_t z = 0; z < tile_shape[0]; ++z) {
    const int64_t pz = offset[0] + z;
    if (pz >= shape[0]) continue;  // zero-padded high end
    for (int64_t y = 0; y < tile_shape[1]; ++y) {
      const int64_t py = offset[1] + y;
      if (py >= shape[1]) continue;
      const int64_t px0 = offset[2];
      const int64_t n = std::min(tile_shape[2], shape[2] - px0);
      if (n <= 0) continue;
      std::memcpy(&tile.at(z, y, 0), &v.at(pz, py, px0), sizeof(float) * n);
    }
  }
  return tile;
}

static std::filesystem::path sidecar_path(const std::filesystem::path& raw_path) {
  auto p = raw_path;
  p.replace_extension(".json");
  return p;
}

void write_volume(const std::filesystem::path& raw_path, const Volume& v) {
  std::ofstream raw(raw_path, std::ios::binary);
  if (!raw) throw IoError("cannot open for writing: " + raw_path.string());
  raw.write(reinterpret_cast<const char*>(v.values().data()),
            static_cast<std::streamsize>(sizeof(float) * v.numel()));
  if (!raw) throw IoError("short write: " + raw_path.string());

  nlohmann::json meta;
  meta["shape"] = v.shape();
  meta["spacing_mm"] = v.spacing_mm();
  meta["origin_mm"] = {v.origin_mm().x, v.origin_mm().y, v.origin_mm().z};
  std::ofstream side(sidecar_path(raw_path));
  if (!side) throw IoError("cannot open for writing: " + sidecar_path(raw_path).string());
  side << meta.dump(2) << "\n";
}

Volume read_volume(const std::filesystem::path& raw_path) {
  std::ifstream side(sidecar_path(raw_path));
  if (!side) throw IoError("missing sidecar: " + sidecar_path(raw_path).string());
  nlohmann::json meta;
  try {
    side >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad sidecar " + sidecar_path(raw_path).string() + ": " + e.what());
  }
  std::array<int64_t, 3> shape;
  std::array<double, 3> spacing;
  std::array<double, 3> origin_xyz;
  try {
    shape = meta.at("shape").get<std::array<int64_t, 3>>();
    spacing = meta.at("spacing_mm").get<std::array<double, 3>>();
    origin_xyz = meta.at("origin_mm").get<std::array<double, 3>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad sidecar fields in " + sidecar_path(raw_path).string() + ": " +
                     e.what());
  }
  Volume v(shape, spacing, WorldPoint{origin_xyz[0], origin_xyz[1], origin_xyz[2]});
  std::ifstream raw(raw_path, std::ios::binary);
  if (!raw) throw IoError("cannot open: " + raw_path.string());
  raw.read(reinterpret_cast<char*>(v.values().data()),
           static_cast<std::streamsize>(sizeof(float) * v.numel()));
  if (raw.gcount() != static_cast<std::streamsize>(sizeof(float) * v.numel()))
    throw ParseError("raw file shorter than sidecar shape: " + raw_path.string());
  return v;
}

}  // namespace voxdet
