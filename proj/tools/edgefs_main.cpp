// Command-line front end: sequence generation, offline estimation, the
// closed-loop navigation simulator, a runtime benchmark, and metric
// recomputation.  Every subcommand is deterministic for a given --seed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include "CLI11.hpp"

#include "edgefs/error.hpp"
#include "edgefs/nav_sim.hpp"
#include "edgefs/oracles.hpp"
#include "edgefs/pipeline.hpp"
#include "edgefs/scene_sim.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Exit code classes: 0 success, 2 usage, 3 I/O, 4 malformed data, 5 internal.
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;
constexpr int kExitInternal = 5;

int exitCodeFor(const edgefs::Error& error) {
  switch (error.errorClass()) {
    case edgefs::ErrorClass::Usage:
      return kExitUsage;
    case edgefs::ErrorClass::Io:
      return kExitIo;
    case edgefs::ErrorClass::Data:
      return kExitData;
  }
  return kExitInternal;
}

/// CLI11 config support for JSON files: top-level keys map to global
/// options, one nested object per subcommand.  Command-line flags override
/// file values (CLI11's default precedence).
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool,
                        std::string) const override {
    return appToJson(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json root = json::parse(input);
    std::vector<CLI::ConfigItem> items;
    walk(root, {}, items);
    return items;
  }

 private:
  static std::string scalarToString(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    return value.dump();
  }

  static void walk(const json& node, std::vector<std::string> parents,
                   std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_object()) {
        auto deeper = parents;
        deeper.push_back(key);
        walk(value, deeper, items);
      } else {
        CLI::ConfigItem item;
        item.parents = parents;
        item.name = key;
        if (value.is_array())
          for (const auto& element : value)
            item.inputs.push_back(scalarToString(element));
        else
          item.inputs.push_back(scalarToString(value));
        items.push_back(std::move(item));
      }
    }
  }

  static json appToJson(const CLI::App* app, bool default_also) {
    json node = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
      const std::string name = opt->get_lnames().front();
      if (!opt->results().empty())
        node[name] = opt->results().size() == 1 ? json(opt->results().front())
                                                : json(opt->results());
      else if (default_also && !opt->get_default_str().empty())
        node[name] = opt->get_default_str();
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
      json child = appToJson(sub, default_also);
      if (!child.empty()) node[sub->get_name()] = std::move(child);
    }
    return node;
  }
};

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void requireOut(const std::string& out) {
  if (out.empty())
    edgefs::fail(edgefs::ErrorCode::BadConfig, "--out is required for this command");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec)
    edgefs::fail(edgefs::ErrorCode::WriteFailure, "cannot create directory " + out);
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string motion = "lateral:0.3";
  double seconds = 3.0;
  double rate_hz = 30.0;
  double distance_m = 1.0;
  double ramp_s = 0.0;
  double stripe_m = 0.10;
};

edgefs::MotionScript parseMotion(const std::string& spec, double seconds,
                                 double ramp_s, double rate_hz) {
  edgefs::MotionScript script;
  script.duration_s = seconds;
  script.ramp_s = ramp_s;
  script.rate_hz = rate_hz;
  std::stringstream stream(spec);
  std::string term;
  while (std::getline(stream, term, ',')) {
    if (term.empty()) continue;
    const auto colon = term.find(':');
    const std::string key = term.substr(0, colon);
    if (key == "hover") continue;  // all references stay zero
    if (colon == std::string::npos)
      edgefs::fail(edgefs::ErrorCode::BadConfig,
                   "motion term '" + term + "' needs the form name:value");
    double value = 0.0;
    try {
      value = std::stod(term.substr(colon + 1));
    } catch (const std::exception&) {
      edgefs::fail(edgefs::ErrorCode::BadConfig,
                   "motion term '" + term + "' has a non-numeric value");
    }
    if (key == "forward")
      script.velocity_body_m_s.x() = value;
    else if (key == "lateral")
      script.velocity_body_m_s.y() = value;
    else if (key == "yaw")
      script.yaw_rate_rad_s = value;
    else
      edgefs::fail(edgefs::ErrorCode::BadConfig,
                   "unknown motion term '" + key +
                       "' (expected forward, lateral, yaw, or hover)");
  }
  return script;
}

edgefs::CameraPose startPoseFor(const std::string& preset, std::uint64_t seed,
                                double distance_m) {
  if (preset == "room4x4") return edgefs::room4x4StartPose(seed);
  // Wall presets run along the x axis at y = 0; face it from below.
  edgefs::CameraPose pose;
  pose.position_m = {0.0, -distance_m};
  pose.yaw_rad = std::numbers::pi / 2.0;
  return pose;
}

int runGen(const GenArgs& args, std::uint64_t seed, std::string preset,
           const std::string& out) {
  if (preset.empty()) preset = "flat-wall";
  requireOut(out);
  const edgefs::CameraIntrinsics intr = edgefs::delflyStereoboard();
  const edgefs::World2D world = edgefs::makeWorld(preset, seed, args.stripe_m);
  const edgefs::MotionScript script =
      parseMotion(args.motion, args.seconds, args.ramp_s, args.rate_hz);
  const std::vector<edgefs::CameraPose> poses =
      integrateTrajectory(startPoseFor(preset, seed, args.distance_m), script);
  const edgefs::SequenceManifest manifest =
      generateSequence(world, poses, args.rate_hz, intr, seed, out);
  std::cout << "wrote " << manifest.frames.size() << " stereo frames under "
            << out << " (manifest.json)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
  std::string manifest_path;
  int window_px = 11;
  int range_px = 15;
  int min_points = 20;
  double min_disparity_px = 0.25;
  int history = 10;
  int obstacle_window = 11;
  int median_window = 5;
};

edgefs::PipelineConfig pipelineConfigFrom(int window_px, int range_px,
                                          int min_points, double min_disparity_px,
                                          int history, int obstacle_window,
                                          int median_window) {
  edgefs::PipelineConfig cfg;
  cfg.match = edgefs::MatchConfig::symmetric(window_px, range_px);
  cfg.history_capacity = history;
  cfg.min_fit_points = min_points;
  cfg.min_disparity_px = min_disparity_px;
  cfg.obstacle_window_columns = obstacle_window;
  cfg.median_window = median_window;
  return cfg;
}

json metricsToJson(const edgefs::MetricsReport& report) {
  json node;
  node["mse"] = report.mse;
  node["var"] = report.var;
  node["nmxm"] = report.nmxm_defined ? json(report.nmxm) : json();
  node["nmxm_defined"] = report.nmxm_defined;
  return node;
}

int runEstimate(const EstimateArgs& args, const std::string& out) {
  if (args.manifest_path.empty())
    edgefs::fail(edgefs::ErrorCode::BadConfig, "--manifest is required");
  requireOut(out);
  const edgefs::SequenceManifest manifest = edgefs::loadManifest(args.manifest_path);
  edgefs::EdgeFsPipeline pipeline(
      manifest.intrinsics,
      pipelineConfigFrom(args.window_px, args.range_px, args.min_points,
                         args.min_disparity_px, args.history,
                         args.obstacle_window, args.median_window));

  const fs::path csv_path = fs::path(out) / "estimates.csv";
  std::ofstream csv(csv_path, std::ios::trunc);
  if (!csv)
    edgefs::fail(edgefs::ErrorCode::WriteFailure, "cannot create " + csv_path.string());
  csv << "t,vx_est,vy_est,vx_gt,vy_gt,n_points,residual_rms\n";

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> vx_est, vy_est, vx_gt, vy_gt;
  struct BucketStat {
    int frames = 0;
    double abs_err_vx = 0.0, abs_err_vy = 0.0, depth = 0.0;
  };
  std::map<int, BucketStat> buckets;
  constexpr double kBucketWidth = 0.5;

  for (std::size_t i = 0; i < manifest.frames.size(); ++i) {
    const edgefs::StereoFrame frame = loadStereoFrame(manifest, i);
    const edgefs::FrameResult result = pipeline.process(frame);
    const edgefs::VelocityEstimate& est = result.velocity_filtered;
    const std::optional<edgefs::GroundTruth>& gt = manifest.frames[i].ground_truth;

    csv << fmt6(frame.timestamp_s) << ','
        << fmt6(est.valid ? est.vx_m_s : nan) << ','
        << fmt6(est.valid ? est.vy_m_s : nan) << ','
        << fmt6(gt ? gt->vx_m_s : nan) << ',' << fmt6(gt ? gt->vy_m_s : nan)
        << ',' << est.n_points << ',' << fmt6(est.residual_rms) << '\n';

    if (est.valid && gt) {
      vx_est.push_back(est.vx_m_s);
      vy_est.push_back(est.vy_m_s);
      vx_gt.push_back(gt->vx_m_s);
      vy_gt.push_back(gt->vy_m_s);
      if (result.depth.validCount() > 0) {
        const double mean_depth =
            result.depth.valid.select(result.depth.depth_m, 0.0).sum() /
            result.depth.validCount();
        BucketStat& b = buckets[static_cast<int>(mean_depth / kBucketWidth)];
        b.frames += 1;
        b.abs_err_vx += std::abs(est.vx_m_s - gt->vx_m_s);
        b.abs_err_vy += std::abs(est.vy_m_s - gt->vy_m_s);
        b.depth += mean_depth;
      }
    }
  }
  if (!csv) edgefs::fail(edgefs::ErrorCode::WriteFailure, "short write to estimates.csv");
  csv.close();

  std::cout << "processed " << manifest.frames.size() << " frames; "
            << vx_est.size() << " with valid estimate and ground truth\n";

  if (!vx_est.empty()) {
    const auto asArray = [](const std::vector<double>& v) {
      return Eigen::Map<const Eigen::ArrayXd>(v.data(),
                                              static_cast<Eigen::Index>(v.size()));
    };
    json metrics;
    metrics["n_frames_evaluated"] = vx_est.size();
    metrics["vx"] = metricsToJson(
        edgefs::computeMetrics(asArray(vx_est), asArray(vx_gt)));
    metrics["vy"] = metricsToJson(
        edgefs::computeMetrics(asArray(vy_est), asArray(vy_gt)));
    std::ofstream mout(fs::path(out) / "metrics.json", std::ios::trunc);
    mout << metrics.dump(2) << "\n";

    std::ofstream bout(fs::path(out) / "depth_buckets.csv", std::ios::trunc);
    bout << "bucket_lo_m,bucket_hi_m,frames,mean_measured_depth_m,"
            "mean_abs_err_vx,mean_abs_err_vy\n";
    for (const auto& [index, stat] : buckets) {
      bout << fmt6(index * kBucketWidth) << ','
           << fmt6((index + 1) * kBucketWidth) << ',' << stat.frames << ','
           << fmt6(stat.depth / stat.frames) << ','
           << fmt6(stat.abs_err_vx / stat.frames) << ','
           << fmt6(stat.abs_err_vy / stat.frames) << '\n';
    }
    std::cout << "wrote estimates.csv, metrics.json, depth_buckets.csv\n";
  } else {
    std::cout << "wrote estimates.csv (no ground truth or no valid estimates; "
                 "metrics skipped)\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// navsim

struct NavsimArgs {
  int episodes = 10;
  double max_seconds = 120.0;
  double start_distance_m = 3.0;
  edgefs::NavConfig nav;
  bool fixed_turn = false;
  double turn_angle_deg = 60.0;
};

int runNavsim(const NavsimArgs& args, std::uint64_t seed, std::string preset,
              const std::string& out) {
  if (preset.empty()) preset = "room4x4";
  requireOut(out);
  const edgefs::CameraIntrinsics intr = edgefs::delflyStereoboard();
  edgefs::NavConfig nav = args.nav;
  nav.turn_angle_rad = edgefs::degToRad(args.turn_angle_deg);
  nav.randomize_turn_direction = !args.fixed_turn;
  const edgefs::PipelineConfig pipeline_config;

  int survived = 0;
  double total_duration = 0.0;
  json episodes = json::array();
  for (int e = 0; e < args.episodes; ++e) {
    const std::uint64_t episode_seed = seed + static_cast<std::uint64_t>(e);
    const edgefs::World2D world = edgefs::makeWorld(preset, episode_seed);
    const edgefs::CameraPose start =
        startPoseFor(preset, episode_seed, args.start_distance_m);
    const edgefs::EpisodeLog log =
        runEpisode(world, start, intr, nav, pipeline_config, episode_seed,
                   args.max_seconds);

    char name[64];
    std::snprintf(name, sizeof(name), "episode_%03d", e);
    writeEpisodeCsv(log, fs::path(out) / (std::string(name) + ".csv"));
    writeEpisodeSummary(log, fs::path(out) / (std::string(name) + ".json"));

    if (!log.collision) ++survived;
    total_duration += log.duration_s;
    episodes.push_back({{"seed", log.seed},
                        {"collision", log.collision},
                        {"duration_s", log.duration_s}});
    std::cout << name << ": seed " << episode_seed << ", "
              << fmt6(log.duration_s) << " s, "
              << (log.collision ? "collision" : "clean") << "\n";
  }

  json summary;
  summary["episodes"] = args.episodes;
  summary["survived"] = survived;
  summary["mean_duration_s"] =
      args.episodes > 0 ? total_duration / args.episodes : 0.0;
  summary["runs"] = std::move(episodes);
  std::ofstream sout(fs::path(out) / "summary.json", std::ios::trunc);
  sout << summary.dump(2) << "\n";

  std::cout << survived << "/" << args.episodes << " episodes finished clean\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  int frames = 100;
  int grid_step_px = 4;
};

struct TimingStats {
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double p95_ms = 0.0;
};

TimingStats stats(std::vector<double> samples_ms) {
  TimingStats s;
  if (samples_ms.empty()) return s;
  std::sort(samples_ms.begin(), samples_ms.end());
  double sum = 0.0;
  for (double v : samples_ms) sum += v;
  s.mean_ms = sum / static_cast<double>(samples_ms.size());
  s.median_ms = samples_ms[samples_ms.size() / 2];
  const std::size_t p95 = std::min(
      samples_ms.size() - 1,
      static_cast<std::size_t>(0.95 * static_cast<double>(samples_ms.size())));
  s.p95_ms = samples_ms[p95];
  return s;
}

int runBench(const BenchArgs& args, std::uint64_t seed, std::string preset,
             const std::string& out) {
  if (preset.empty()) preset = "flat-wall";
  if (args.frames < 2)
    edgefs::fail(edgefs::ErrorCode::BadConfig, "bench needs at least 2 frames");
  const edgefs::CameraIntrinsics intr = edgefs::delflyStereoboard();
  const edgefs::World2D world = edgefs::makeWorld(preset, seed);

  edgefs::MotionScript script;
  script.velocity_body_m_s = {0.0, 0.3};
  script.duration_s = args.frames / 30.0;
  const std::vector<edgefs::CameraPose> poses =
      integrateTrajectory(startPoseFor(preset, seed, 1.0), script);

  std::vector<edgefs::StereoFrame> frames;
  frames.reserve(poses.size());
  for (std::size_t k = 0; k < poses.size(); ++k) {
    edgefs::RenderedStereo rendered = renderStereo(world, poses[k], intr, seed);
    rendered.frame.timestamp_s = static_cast<double>(k) / 30.0;
    rendered.frame.gyro_z_rad_s = 0.0;
    frames.push_back(std::move(rendered.frame));
  }

  using clock = std::chrono::steady_clock;
  edgefs::EdgeFsPipeline pipeline(intr, edgefs::PipelineConfig{});
  std::vector<double> pipeline_ms;
  for (const edgefs::StereoFrame& frame : frames) {
    const auto t0 = clock::now();
    const edgefs::FrameResult result = pipeline.process(frame);
    const auto t1 = clock::now();
    (void)result;
    pipeline_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }

  const edgefs::MatchConfig match = edgefs::PipelineConfig{}.match;
  std::vector<double> dense_ms;
  for (std::size_t k = 1; k < frames.size(); ++k) {
    const auto t0 = clock::now();
    const edgefs::oracles::DenseFlowField field = edgefs::oracles::denseBlockFlow(
        frames[k - 1].left, frames[k].left, match, args.grid_step_px);
    const auto t1 = clock::now();
    (void)field;
    dense_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }

  const TimingStats ps = stats(pipeline_ms);
  const TimingStats ds = stats(dense_ms);
  const double ratio = ds.mean_ms > 0.0 ? ps.mean_ms / ds.mean_ms : 0.0;

  std::printf("per-frame compute over %d frames (window %d, range %d):\n",
              args.frames, match.window_px, match.search_range_px);
  std::printf("  %-28s mean %8.3f ms   median %8.3f ms   p95 %8.3f ms\n",
              "full pipeline", ps.mean_ms, ps.median_ms, ps.p95_ms);
  std::printf("  %-28s mean %8.3f ms   median %8.3f ms   p95 %8.3f ms\n",
              "dense 2-D block matching", ds.mean_ms, ds.median_ms, ds.p95_ms);
  std::printf("  pipeline / dense mean ratio: %.4f\n", ratio);

  if (!out.empty()) {
    requireOut(out);
    json report;
    report["frames"] = args.frames;
    report["grid_step_px"] = args.grid_step_px;
    report["pipeline_ms"] = {{"mean", ps.mean_ms},
                             {"median", ps.median_ms},
                             {"p95", ps.p95_ms}};
    report["dense_ms"] = {{"mean", ds.mean_ms},
                          {"median", ds.median_ms},
                          {"p95", ds.p95_ms}};
    report["mean_ratio"] = ratio;
    std::ofstream rout(fs::path(out) / "bench.json", std::ios::trunc);
    rout << report.dump(2) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// metrics

int runMetrics(const std::string& csv_path) {
  if (csv_path.empty())
    edgefs::fail(edgefs::ErrorCode::BadConfig, "--csv is required");
  std::ifstream in(csv_path);
  if (!in)
    edgefs::fail(edgefs::ErrorCode::FileNotFound, "cannot open " + csv_path);
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("t,vx_est,vy_est,vx_gt,vy_gt", 0) != 0)
    edgefs::fail(edgefs::ErrorCode::SchemaViolation,
                 csv_path + ": not an estimates CSV (unexpected header)");

  std::vector<double> vx_est, vy_est, vx_gt, vy_gt;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(row, cell, ',')) cells.push_back(std::strtod(cell.c_str(), nullptr));
    if (cells.size() < 5)
      edgefs::fail(edgefs::ErrorCode::SchemaViolation,
                   csv_path + ": row with fewer than 5 columns");
    if (std::isnan(cells[1]) || std::isnan(cells[2]) || std::isnan(cells[3]) ||
        std::isnan(cells[4]))
      continue;
    vx_est.push_back(cells[1]);
    vy_est.push_back(cells[2]);
    vx_gt.push_back(cells[3]);
    vy_gt.push_back(cells[4]);
  }
  if (vx_est.empty())
    edgefs::fail(edgefs::ErrorCode::EmptyInput,
                 csv_path + ": no rows with both estimate and ground truth");

  const auto asArray = [](const std::vector<double>& v) {
    return Eigen::Map<const Eigen::ArrayXd>(v.data(),
                                            static_cast<Eigen::Index>(v.size()));
  };
  json report;
  report["n_frames_evaluated"] = vx_est.size();
  report["vx"] = metricsToJson(edgefs::computeMetrics(asArray(vx_est), asArray(vx_gt)));
  report["vy"] = metricsToJson(edgefs::computeMetrics(asArray(vy_est), asArray(vy_gt)));
  std::cout << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Column-compressed stereo/flow velocity estimation and obstacle "
      "avoidance, with a synthetic stereo world for end-to-end testing"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file; command-line flags override it");

  std::uint64_t seed = 1;
  std::string preset;
  std::string out;
  app.add_option("--seed", seed, "master RNG seed; all outputs are deterministic in it")
      ->capture_default_str();
  app.add_option("--preset", preset,
                 "world preset: flat-wall, room4x4, or pole-field "
                 "(default depends on the command)");
  app.add_option("--out", out, "output directory");

  GenArgs gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "render a stereo sequence with ground truth");
  gen_cmd->fallthrough();
  gen_cmd->add_option("--motion", gen.motion,
                      "comma-separated terms forward:V, lateral:V, yaw:W, or "
                      "hover (body frame, m/s and rad/s)")
      ->capture_default_str();
  gen_cmd->add_option("--seconds", gen.seconds, "sequence length in seconds")
      ->capture_default_str();
  gen_cmd->add_option("--rate", gen.rate_hz, "frame rate in Hz")->capture_default_str();
  gen_cmd->add_option("--distance", gen.distance_m,
                      "start distance to the wall for wall presets, meters")
      ->capture_default_str();
  gen_cmd->add_option("--ramp", gen.ramp_s,
                      "seconds to ramp the commanded motion in from zero")
      ->capture_default_str();
  gen_cmd->add_option("--stripe", gen.stripe_m, "mean texture stripe width, meters")
      ->capture_default_str();

  EstimateArgs est;
  CLI::App* est_cmd = app.add_subcommand(
      "estimate", "run the full pipeline over a recorded sequence");
  est_cmd->fallthrough();
  est_cmd->add_option("--manifest", est.manifest_path, "sequence manifest.json");
  est_cmd->add_option("--window", est.window_px, "match window in columns (odd)")
      ->capture_default_str();
  est_cmd->add_option("--range", est.range_px, "search range in columns")
      ->capture_default_str();
  est_cmd->add_option("--min-points", est.min_points,
                      "minimum columns for a velocity fit")
      ->capture_default_str();
  est_cmd->add_option("--min-disparity", est.min_disparity_px,
                      "disparity floor in px; smaller means beyond range")
      ->capture_default_str();
  est_cmd->add_option("--history", est.history, "temporal history depth in frames")
      ->capture_default_str();
  est_cmd->add_option("--obstacle-window", est.obstacle_window,
                      "columns averaged for the nearest-obstacle readout (odd)")
      ->capture_default_str();
  est_cmd->add_option("--median-window", est.median_window,
                      "velocity median filter length")
      ->capture_default_str();

  NavsimArgs nav;
  CLI::App* nav_cmd = app.add_subcommand(
      "navsim", "closed-loop obstacle-avoidance episodes in a synthetic world");
  nav_cmd->fallthrough();
  nav_cmd->add_option("--episodes", nav.episodes, "number of seeded episodes")
      ->capture_default_str();
  nav_cmd->add_option("--max-seconds", nav.max_seconds, "episode time limit")
      ->capture_default_str();
  nav_cmd->add_option("--start-distance", nav.start_distance_m,
                      "start distance to the wall for wall presets, meters")
      ->capture_default_str();
  nav_cmd->add_option("--threshold", nav.nav.obstacle_threshold_m,
                      "obstacle distance that stops forward flight, meters")
      ->capture_default_str();
  nav_cmd->add_option("--cruise", nav.nav.cruise_speed_m_s, "cruise speed, m/s")
      ->capture_default_str();
  nav_cmd->add_option("--hover-duration", nav.nav.hover_duration_s,
                      "hover time before turning, seconds")
      ->capture_default_str();
  nav_cmd->add_option("--turn-angle-deg", nav.turn_angle_deg,
                      "heading change per avoidance turn, degrees")
      ->capture_default_str();
  nav_cmd->add_option("--turn-rate", nav.nav.turn_rate_rad_s, "turn rate, rad/s")
      ->capture_default_str();
  nav_cmd->add_option("--ff-distance", nav.nav.ff_distance_m,
                      "distance where the repulsive force field engages, meters")
      ->capture_default_str();
  nav_cmd->add_option("--ff-gain", nav.nav.ff_gain,
                      "force field gain, (m/s) per meter of incursion")
      ->capture_default_str();
  nav_cmd->add_option("--tau", nav.nav.tracking_tau_s,
                      "velocity tracking time constant, seconds")
      ->capture_default_str();
  nav_cmd->add_option("--collision-radius", nav.nav.collision_radius_m,
                      "body radius for collision checks, meters")
      ->capture_default_str();
  nav_cmd->add_flag("--fixed-turn", nav.fixed_turn,
                    "always turn left instead of choosing a seeded direction");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "time the pipeline against a dense 2-D block-matching baseline");
  bench_cmd->fallthrough();
  bench_cmd->add_option("--frames", bench.frames, "frames to time")
      ->capture_default_str();
  bench_cmd->add_option("--grid-step", bench.grid_step_px,
                        "dense-baseline sampling stride in px")
      ->capture_default_str();

  std::string metrics_csv;
  CLI::App* metrics_cmd = app.add_subcommand(
      "metrics", "recompute agreement metrics from an estimates CSV");
  metrics_cmd->fallthrough();
  metrics_cmd->add_option("--csv", metrics_csv, "estimates.csv produced by estimate");

  try {
    app.parse(argc, argv);
    if (gen_cmd->parsed()) return runGen(gen, seed, preset, out);
    if (est_cmd->parsed()) return runEstimate(est, out);
    if (nav_cmd->parsed()) return runNavsim(nav, seed, preset, out);
    if (bench_cmd->parsed()) return runBench(bench, seed, preset, out);
    if (metrics_cmd->parsed()) return runMetrics(metrics_csv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const edgefs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
