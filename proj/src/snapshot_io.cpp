#include "kp/snapshot_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "kp/error.hpp"

namespace kp {

static_assert(std::endian::native == std::endian::little,
              "snapshot files are little-endian; big-endian hosts need byte swapping");

namespace {

std::filesystem::path with_ext(std::filesystem::path p, const char* ext) {
  if (p.extension() == ".json" || p.extension() == ".bin") p.replace_extension();
  p += ext;
  return p;
}

}  // namespace

void write_snapshot(const RealField& f, const std::filesystem::path& stem) {
  const auto header_path = with_ext(stem, ".json");
  const auto data_path = with_ext(stem, ".bin");
  nlohmann::json h = {
      {"nx", f.grid.nx},       {"ny", f.grid.ny},
      {"Lx", f.grid.lx},       {"Ly", f.grid.ly},
      {"x0", f.grid.x0},       {"y0", f.grid.y0},
      {"time_tag", f.time},    {"layout", "row-major"},
      {"dtype", "f64-le"},     {"data", data_path.filename().string()},
  };
  std::ofstream hs(header_path);
  if (!hs) throw Error(ErrorKind::kIo, "cannot write " + header_path.string());
  hs << h.dump(2) << '\n';
  std::ofstream ds(data_path, std::ios::binary);
  if (!ds) throw Error(ErrorKind::kIo, "cannot write " + data_path.string());
  ds.write(reinterpret_cast<const char*>(f.samples.data()),
           static_cast<std::streamsize>(f.samples.size() * sizeof(double)));
  if (!ds) throw Error(ErrorKind::kIo, "short write to " + data_path.string());
}

RealField read_snapshot(const std::filesystem::path& header_or_stem) {
  const auto header_path = with_ext(header_or_stem, ".json");
  std::ifstream hs(header_path);
  if (!hs) throw Error(ErrorKind::kIo, "cannot open " + header_path.string());
  nlohmann::json h;
  try {
    hs >> h;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kIo, header_path.string() + ": " + e.what());
  }
  if (h.value("layout", "") != "row-major" || h.value("dtype", "") != "f64-le") {
    throw Error(ErrorKind::kIo, header_path.string() + ": unsupported layout or dtype");
  }
  RealField f;
  try {
    f.grid = Grid2D::make(h.at("nx").get<int>(), h.at("ny").get<int>(),
                          h.at("Lx").get<double>(), h.at("Ly").get<double>(),
                          h.at("x0").get<double>(), h.at("y0").get<double>());
    f.time = h.at("time_tag").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kIo, header_path.string() + ": " + e.what());
  }
  auto data_path = header_path.parent_path() /
                   h.value("data", with_ext(header_path, ".bin").filename().string());
  std::ifstream ds(data_path, std::ios::binary);
  if (!ds) throw Error(ErrorKind::kIo, "cannot open " + data_path.string());
  f.samples.resize(f.grid.size());
  ds.read(reinterpret_cast<char*>(f.samples.data()),
          static_cast<std::streamsize>(f.samples.size() * sizeof(double)));
  if (ds.gcount() != static_cast<std::streamsize>(f.samples.size() * sizeof(double))) {
    throw Error(ErrorKind::kIo, data_path.string() + ": truncated sample data");
  }
  return f;
}

}  // namespace kp
