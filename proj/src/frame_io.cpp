#include "edgefs/frame_io.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "edgefs/error.hpp"

namespace edgefs {
namespace {

using json = nlohmann::json;

// Generous but finite: rejects absurd headers before any allocation.
constexpr long kMaxPixels = 1 << 26;
constexpr int kMaxSide = 1 << 16;

// Reads one whitespace-separated header token, skipping '#' comment lines.
std::string nextHeaderToken(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) return token;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;  // possibly empty at EOF
}

long parseHeaderInt(std::istream& in, const std::filesystem::path& path,
                    const char* field) {
  const std::string token = nextHeaderToken(in);
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::MalformedHeader,
         path.string() + ": bad " + field + " field '" + token + "'");
  errno = 0;
  const long value = std::strtol(token.c_str(), nullptr, 10);
  if (errno != 0)
    fail(ErrorCode::DimensionOverflow, path.string() + ": " + field + " out of range");
  return value;
}

struct PgmHeader {
  int width = 0;
  int height = 0;
  int maxval = 0;
};

PgmHeader readHeader(std::istream& in, const std::filesystem::path& path) {
  const std::string magic = nextHeaderToken(in);
  if (magic != "P5")
    fail(ErrorCode::MalformedHeader, path.string() + ": not a binary graymap (magic '" +
                                         magic + "')");
  const long w = parseHeaderInt(in, path, "width");
  const long h = parseHeaderInt(in, path, "height");
  if (w <= 0 || h <= 0 || w > kMaxSide || h > kMaxSide || w * h > kMaxPixels)
    fail(ErrorCode::DimensionOverflow,
         path.string() + ": unreasonable dimensions " + std::to_string(w) + "x" +
             std::to_string(h));
  const long maxval = parseHeaderInt(in, path, "maxval");
  if (maxval <= 0 || maxval > 255)
    fail(ErrorCode::MalformedHeader,
         path.string() + ": unsupported maxval " + std::to_string(maxval));
  return {static_cast<int>(w), static_cast<int>(h), static_cast<int>(maxval)};
}

std::ifstream openBinary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::FileNotFound, "cannot open " + path.string());
  return in;
}

}  // namespace

GrayImage loadPgm(const std::filesystem::path& path) {
  std::ifstream in = openBinary(path);
  const PgmHeader header = readHeader(in, path);
  // The header terminator is the single whitespace byte just consumed by the
  // maxval token scan; pixel data starts here.
  GrayImage image(header.height, header.width);
  const std::streamsize want =
      static_cast<std::streamsize>(header.width) * header.height;
  in.read(reinterpret_cast<char*>(image.data()), want);
  if (in.gcount() != want)
    fail(ErrorCode::TruncatedPayload,
         path.string() + ": payload holds " + std::to_string(in.gcount()) +
             " of " + std::to_string(want) + " bytes");
  return image;
}

void savePgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::WriteFailure, "cannot create " + path.string());
  out << "P5\n" << image.cols() << " " << image.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.data()),
            static_cast<std::streamsize>(image.size()));
  if (!out) fail(ErrorCode::WriteFailure, "short write to " + path.string());
}

std::pair<int, int> readPgmDimensions(const std::filesystem::path& path) {
  std::ifstream in = openBinary(path);
  const PgmHeader header = readHeader(in, path);
  return {header.width, header.height};
}

namespace {

double requireNumber(const json& node, const char* key, const std::string& where) {
  if (!node.contains(key) || !node[key].is_number())
    fail(ErrorCode::SchemaViolation, where + ": missing numeric field '" + key + "'");
  return node[key].get<double>();
}

std::string requireString(const json& node, const char* key,
                          const std::string& where) {
  if (!node.contains(key) || !node[key].is_string())
    fail(ErrorCode::SchemaViolation, where + ": missing string field '" + key + "'");
  return node[key].get<std::string>();
}

void checkImage(const std::filesystem::path& resolved, const CameraIntrinsics& intr,
                const std::string& where) {
  if (!std::filesystem::exists(resolved))
    fail(ErrorCode::MissingImage, where + ": image not found: " + resolved.string());
  const auto [w, h] = readPgmDimensions(resolved);
  if (w != intr.width_px || h != intr.height_px)
    fail(ErrorCode::SchemaViolation,
         where + ": " + resolved.string() + " is " + std::to_string(w) + "x" +
             std::to_string(h) + ", expected " + std::to_string(intr.width_px) +
             "x" + std::to_string(intr.height_px));
}

}  // namespace

SequenceManifest loadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FileNotFound, "cannot open " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::SchemaViolation, path.string() + ": " + e.what());
  }
  if (!root.is_object() || !root.contains("intrinsics") || !root.contains("frames"))
    fail(ErrorCode::SchemaViolation,
         path.string() + ": manifest needs 'intrinsics' and 'frames'");

  SequenceManifest manifest;
  manifest.base_dir = path.parent_path();

  const json& ji = root["intrinsics"];
  manifest.intrinsics.width_px =
      static_cast<int>(requireNumber(ji, "width_px", "intrinsics"));
  manifest.intrinsics.height_px =
      static_cast<int>(requireNumber(ji, "height_px", "intrinsics"));
  manifest.intrinsics.fov_h_rad = degToRad(requireNumber(ji, "fov_h_deg", "intrinsics"));
  manifest.intrinsics.fov_v_rad = degToRad(requireNumber(ji, "fov_v_deg", "intrinsics"));
  manifest.intrinsics.baseline_m = requireNumber(ji, "baseline_m", "intrinsics");
  manifest.intrinsics.validate();

  const json& jf = root["frames"];
  if (!jf.is_array() || jf.empty())
    fail(ErrorCode::SchemaViolation, path.string() + ": 'frames' must be a non-empty array");

  bool expect_gt = jf.front().contains("gt");
  double prev_t = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < jf.size(); ++i) {
    const json& node = jf[i];
    const std::string where = "frames[" + std::to_string(i) + "]";
    FrameRecord rec;
    rec.timestamp_s = requireNumber(node, "t", where);
    if (!(rec.timestamp_s > prev_t))
      fail(ErrorCode::NonMonotonicTimestamps,
           where + ": timestamp " + std::to_string(rec.timestamp_s) +
               " does not increase");
    prev_t = rec.timestamp_s;
    rec.left_path = requireString(node, "left", where);
    rec.right_path = requireString(node, "right", where);
    rec.gyro_z_rad_s = requireNumber(node, "gyro_z", where);
    if (node.contains("gt") != expect_gt)
      fail(ErrorCode::SchemaViolation,
           where + ": ground truth must be present on all frames or none");
    if (expect_gt) {
      const json& g = node["gt"];
      GroundTruth gt;
      gt.vx_m_s = requireNumber(g, "vx", where + ".gt");
      gt.vy_m_s = requireNumber(g, "vy", where + ".gt");
      gt.yaw_rad = requireNumber(g, "yaw", where + ".gt");
      gt.pos_x_m = requireNumber(g, "x", where + ".gt");
      gt.pos_y_m = requireNumber(g, "y", where + ".gt");
      rec.ground_truth = gt;
    }
    checkImage(manifest.base_dir / rec.left_path, manifest.intrinsics, where);
    checkImage(manifest.base_dir / rec.right_path, manifest.intrinsics, where);
    manifest.frames.push_back(std::move(rec));
  }
  return manifest;
}

void saveManifest(const SequenceManifest& manifest) {
  json root;
  root["intrinsics"] = {{"width_px", manifest.intrinsics.width_px},
                        {"height_px", manifest.intrinsics.height_px},
                        {"fov_h_deg", radToDeg(manifest.intrinsics.fov_h_rad)},
                        {"fov_v_deg", radToDeg(manifest.intrinsics.fov_v_rad)},
                        {"baseline_m", manifest.intrinsics.baseline_m}};
  root["frames"] = json::array();
  for (const FrameRecord& rec : manifest.frames) {
    json node = {{"t", rec.timestamp_s},
                 {"left", rec.left_path.generic_string()},
                 {"right", rec.right_path.generic_string()},
                 {"gyro_z", rec.gyro_z_rad_s}};
    if (rec.ground_truth) {
      const GroundTruth& gt = *rec.ground_truth;
      node["gt"] = {{"vx", gt.vx_m_s},
                    {"vy", gt.vy_m_s},
                    {"yaw", gt.yaw_rad},
                    {"x", gt.pos_x_m},
                    {"y", gt.pos_y_m}};
    }
    root["frames"].push_back(std::move(node));
  }
  const std::filesystem::path path = manifest.base_dir / "manifest.json";
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::WriteFailure, "cannot create " + path.string());
  out << root.dump(2) << "\n";
  if (!out) fail(ErrorCode::WriteFailure, "short write to " + path.string());
}

StereoFrame loadStereoFrame(const SequenceManifest& manifest, std::size_t index) {
  if (index >= manifest.frames.size())
    fail(ErrorCode::SchemaViolation,
         "frame index " + std::to_string(index) + " out of range");
  const FrameRecord& rec = manifest.frames[index];
  StereoFrame frame;
  frame.timestamp_s = rec.timestamp_s;
  frame.gyro_z_rad_s = rec.gyro_z_rad_s;
  frame.left = loadPgm(manifest.base_dir / rec.left_path);
  frame.right = loadPgm(manifest.base_dir / rec.right_path);
  return frame;
}

}  // namespace edgefs
