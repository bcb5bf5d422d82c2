#include "inscom/harness.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "inscom/channel.h"
#include "inscom/error.h"
#include "inscom/random.h"
#include "json.hpp"

namespace inscom {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TrialResult FailedRow(const std::string& image_id, Scheme scheme, double eta,
                      double snr_db, std::int64_t seed, const std::string& why) {
  TrialResult r;
  r.image_id = image_id;
  r.scheme = std::string(SchemeName(scheme));
  r.eta = eta;
  r.snr_db = snr_db;
  r.seed = seed;
  r.cbr = kNaN;
  r.psnr_db = kNaN;
  r.tc_psnr_db = kNaN;
  r.note = "error: " + why;
  return r;
}

}  // namespace

std::string_view SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kInscom: return "inscom";
    case Scheme::kNtsccLike: return "ntscc_like";
    case Scheme::kUniform: return "uniform";
  }
  return "unknown";
}

Scheme ParseScheme(std::string_view name) {
  if (name == "inscom") return Scheme::kInscom;
  if (name == "ntscc_like") return Scheme::kNtsccLike;
  if (name == "uniform") return Scheme::kUniform;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown scheme '" + std::string(name) +
                  "' (expected inscom, ntscc_like or uniform)");
}

std::uint64_t TrialSeed(std::uint64_t master_seed, std::string_view image_id,
                        Scheme scheme, double snr_db, std::int64_t seed) {
  return CombineSeed({master_seed, HashString(image_id),
                      HashString(SchemeName(scheme)),
                      std::bit_cast<std::uint64_t>(snr_db),
                      static_cast<std::uint64_t>(seed)});
}

PipelineOutput RunPipelineDetailed(const LoadedScene& scene,
                                   const TaskCriteria& criteria,
                                   const TrialParams& params) {
  const Image& source = scene.image;
  const std::string& image_id = scene.record.id;
  try {
    RateConfig rate;
    rate.eta = params.eta;
    rate.k_min = params.k_min;
    rate.scheme = params.scheme == Scheme::kUniform ? RateScheme::kUniform
                                                    : RateScheme::kVariable;
    rate.Validate();

    TaskMaskResult task = BuildTaskMask(scene.record.graph, scene.segmentation,
                                        source, criteria);
    const std::size_t tc_pixels = task.masked.mask.Popcount();
    const FrameGeometry geometry = FrameGeometry::ForImage(
        source.width(), source.height(), source.channels());

    PipelineOutput out;
    std::string& note = out.result.note;
    SymbolFrame frame;
    if (params.scheme == Scheme::kInscom) {
      if (tc_pixels == 0) {
        frame = EmptyFrame(geometry);
        note = "warning: empty task mask, zero-symbol trial";
      } else {
        const BlockLatents lat =
            Analysis(task.masked.image, task.masked.mask);
        frame = Encode(lat, Allocate(lat, rate));
      }
    } else {
      const BlockLatents lat = Analysis(source);
      frame = Encode(lat, Allocate(lat, rate));
    }

    const ChannelConfig channel{
        params.snr_db, TrialSeed(params.master_seed, image_id, params.scheme,
                                 params.snr_db, params.seed)};
    out.transmitted = Transmit(frame, channel);
    out.reconstruction =
        Decode(out.transmitted, geometry, DecoderOptions{params.snr_db});

    const RateAccount account = Account(frame, source.width(), source.height(),
                                        source.channels());
    TrialResult& r = out.result;
    r.image_id = image_id;
    r.scheme = std::string(SchemeName(params.scheme));
    r.eta = params.eta;
    r.snr_db = params.snr_db;
    r.seed = params.seed;
    r.payload_symbols = account.payload_symbols;
    r.side_symbol_equiv = account.side_symbol_equiv;
    r.cbr = account.cbr;
    r.psnr_db = Psnr(source, out.reconstruction);
    r.tc_pixel_count = static_cast<std::int64_t>(tc_pixels);
    if (tc_pixels > 0) {
      r.tc_psnr_db = TcPsnr(source, out.reconstruction, task.masked.mask);
    } else {
      r.tc_psnr_db = kNaN;
      if (note.empty()) note = "warning: empty task mask, tc_psnr undefined";
    }
    out.task_mask = std::move(task.masked.mask);
    return out;
  } catch (const Error& e) {
    throw Error(e.code(), image_id + ": " + e.message());
  }
}

TrialResult RunPipeline(const LoadedScene& scene, const TaskCriteria& criteria,
                        const TrialParams& params) {
  return RunPipelineDetailed(scene, criteria, params).result;
}

void SweepConfig::Validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidArgument, "sweep config: " + msg);
  };
  if (eta_grid.empty()) fail("eta_grid is empty");
  if (snr_grid_db.empty()) fail("snr_grid_db is empty");
  if (schemes.empty()) fail("schemes is empty");
  if (seeds.empty()) fail("seeds is empty");
  for (double eta : eta_grid) {
    if (!(eta > 0.0) || !std::isfinite(eta)) fail("eta values must be > 0");
  }
  for (double snr : snr_grid_db) {
    if (!std::isfinite(snr)) fail("snr values must be finite");
  }
  if (k_min < 1 || k_min > kBlockArea) fail("k_min must lie in [1, 64]");
  if (threads < 1) fail("threads must be >= 1");
}

SweepConfig ParseSweepConfig(std::string_view json_text,
                             const std::filesystem::path& base_dir) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kTypeMismatch,
                std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::kTypeMismatch, "sweep config must be an object");
  }
  auto field = [&root](const char* key) -> const json& {
    auto it = root.find(key);
    if (it == root.end()) throw Error(ErrorCode::kMissingField, key);
    return *it;
  };
  auto get = [](const json& v, const char* key, auto& out) {
    try {
      v.get_to(out);
    } catch (const json::exception&) {
      throw Error(ErrorCode::kTypeMismatch,
                  std::string(key) + " has the wrong type");
    }
  };
  auto resolve = [&base_dir](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  SweepConfig cfg;
  std::string manifest, criteria, output;
  std::vector<std::string> schemes;
  get(field("manifest"), "manifest", manifest);
  get(field("criteria"), "criteria", criteria);
  get(field("output"), "output", output);
  get(field("eta_grid"), "eta_grid", cfg.eta_grid);
  get(field("snr_grid_db"), "snr_grid_db", cfg.snr_grid_db);
  get(field("schemes"), "schemes", schemes);
  get(field("seeds"), "seeds", cfg.seeds);
  if (root.contains("master_seed")) {
    get(root["master_seed"], "master_seed", cfg.master_seed);
  }
  if (root.contains("k_min")) get(root["k_min"], "k_min", cfg.k_min);
  if (root.contains("threads")) get(root["threads"], "threads", cfg.threads);
  cfg.manifest = resolve(manifest);
  cfg.criteria = resolve(criteria);
  cfg.output = resolve(output);
  for (const auto& s : schemes) cfg.schemes.push_back(ParseScheme(s));
  cfg.Validate();
  return cfg;
}

std::vector<TrialResult> RunSweep(const SweepConfig& cfg) {
  cfg.Validate();
  const TaskCriteria criteria = ParseCriteria(ReadFileBytes(cfg.criteria));
  const std::vector<ManifestEntry> entries = LoadManifestEntries(cfg.manifest);

  struct Job {
    std::size_t entry;
    Scheme scheme;
    double eta;
    double snr_db;
    std::int64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    for (Scheme scheme : cfg.schemes) {
      for (double eta : cfg.eta_grid) {
        for (double snr : cfg.snr_grid_db) {
          for (std::int64_t seed : cfg.seeds) {
            jobs.push_back({e, scheme, eta, snr, seed});
          }
        }
      }
    }
  }

  std::vector<TrialResult> rows(jobs.size());
  auto run_job = [&](std::size_t i) {
    const Job& job = jobs[i];
    const ManifestEntry& entry = entries[job.entry];
    if (!entry.scene) {
      rows[i] = FailedRow(entry.label, job.scheme, job.eta, job.snr_db,
                          job.seed, entry.error);
      return;
    }
    TrialParams params;
    params.scheme = job.scheme;
    params.eta = job.eta;
    params.snr_db = job.snr_db;
    params.seed = job.seed;
    params.master_seed = cfg.master_seed;
    params.k_min = cfg.k_min;
    try {
      rows[i] = RunPipeline(*entry.scene, criteria, params);
    } catch (const Error& e) {
      rows[i] = FailedRow(entry.label, job.scheme, job.eta, job.snr_db,
                          job.seed, e.message());
    }
  };

  const int workers =
      std::min<int>(cfg.threads, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) run_job(i);
      });
    }
  }
  return rows;
}

std::vector<TrialResult> Sweep(const SweepConfig& cfg) {
  {
    // Fail before doing any work when the destination is unwritable.
    std::ofstream probe(cfg.output, std::ios::binary | std::ios::trunc);
    if (!probe) {
      throw Error(ErrorCode::kIo, "cannot write " + cfg.output.string());
    }
  }
  std::vector<TrialResult> rows = RunSweep(cfg);
  WriteFileBytes(cfg.output, FormatCsv(rows));
  return rows;
}

std::string RenderRateDistortionSvg(const std::vector<TrialResult>& rows) {
  struct Acc {
    double cbr = 0.0;
    double tc = 0.0;
    int n = 0;
  };
  // (scheme, snr) -> eta -> running means over finite rows.
  std::map<std::pair<std::string, double>, std::map<double, Acc>> series;
  for (const auto& r : rows) {
    if (!std::isfinite(r.cbr) || !std::isfinite(r.tc_psnr_db)) continue;
    Acc& a = series[{r.scheme, r.snr_db}][r.eta];
    a.cbr += r.cbr;
    a.tc += r.tc_psnr_db;
    ++a.n;
  }

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (auto& [key, points] : series) {
    for (auto& [eta, a] : points) {
      a.cbr /= a.n;
      a.tc /= a.n;
      x_min = std::min(x_min, a.cbr);
      x_max = std::max(x_max, a.cbr);
      y_min = std::min(y_min, a.tc);
      y_max = std::max(y_max, a.tc);
    }
  }
  if (series.empty()) x_min = y_min = 0.0, x_max = y_max = 1.0;
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;

  constexpr double kW = 640, kH = 420, kLeft = 60, kRight = 180, kTop = 20,
                   kBottom = 50;
  auto px = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kW - kLeft - kRight);
  };
  auto py = [&](double y) {
    return kH - kBottom - (y - y_min) / (y_max - y_min) * (kH - kTop - kBottom);
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#9467bd", "#ff7f0e", "#8c564b",
                                            "#e377c2", "#7f7f7f", "#17becf"};

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kH - kBottom) +
         "\" x2=\"" + num(kW - kRight) + "\" y2=\"" + num(kH - kBottom) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
         num(kLeft) + "\" y2=\"" + num(kH - kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + num(kLeft) + "\" y=\"" + num(kH - 10) +
         "\" font-size=\"12\">CBR " + num(x_min) + " .. " + num(x_max) +
         "</text>\n";
  svg += "<text x=\"4\" y=\"" + num(kTop + 10) +
         "\" font-size=\"12\">TC-PSNR dB " + num(y_min) + " .. " + num(y_max) +
         "</text>\n";
  std::size_t index = 0;
  for (const auto& [key, points] : series) {
    const char* color = kColors[index % std::size(kColors)];
    std::string poly;
    for (const auto& [eta, a] : points) {
      poly += num(px(a.cbr)) + "," + num(py(a.tc)) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + poly + "\"/>\n";
    svg += "<text x=\"" + num(kW - kRight + 10) + "\" y=\"" +
           num(kTop + 16.0 * (index + 1)) + "\" font-size=\"12\" fill=\"" +
           color + "\">" + key.first + " @ " + num(key.second) +
           " dB</text>\n";
    ++index;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace inscom
