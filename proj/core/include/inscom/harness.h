#ifndef INSCOM_HARNESS_H_
#define INSCOM_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inscom/formats.h"
#include "inscom/metrics.h"
#include "inscom/ref_codec.h"
#include "inscom/toif.h"

namespace inscom {

// inscom: filtered, masked image with variable-rate allocation.
// ntscc_like: unmasked image, variable-rate allocation.
// uniform: unmasked image, fixed per-block rate.
enum class Scheme { kInscom, kNtsccLike, kUniform };

std::string_view SchemeName(Scheme scheme);
// Throws Error(kInvalidArgument) for an unknown name.
Scheme ParseScheme(std::string_view name);

// Noise seed for one trial; a pure function of its arguments, so sweep rows
// can be reproduced individually and in any execution order. eta is left
// out on purpose: every point of an eta sweep sees the same noise stream.
std::uint64_t TrialSeed(std::uint64_t master_seed, std::string_view image_id,
                        Scheme scheme, double snr_db, std::int64_t seed);

struct TrialParams {
  Scheme scheme = Scheme::kInscom;
  double eta = 1.0;
  double snr_db = 0.0;
  std::int64_t seed = 0;
  std::uint64_t master_seed = 0;
  int k_min = 1;
};

struct PipelineOutput {
  TrialResult result;
  Image reconstruction;
  Mask task_mask;
  SymbolFrame transmitted;
};

PipelineOutput RunPipelineDetailed(const LoadedScene& scene,
                                   const TaskCriteria& criteria,
                                   const TrialParams& params);

TrialResult RunPipeline(const LoadedScene& scene, const TaskCriteria& criteria,
                        const TrialParams& params);

struct SweepConfig {
  std::filesystem::path manifest;
  std::filesystem::path criteria;
  std::vector<double> eta_grid;
  std::vector<double> snr_grid_db;
  std::vector<Scheme> schemes;
  std::vector<std::int64_t> seeds;
  std::filesystem::path output;
  std::uint64_t master_seed = 0;
  int k_min = 1;
  int threads = 1;

  // Throws Error(kInvalidArgument) on empty grids or bad values.
  void Validate() const;
};

// Relative paths resolve against `base_dir` (normally the config's folder).
SweepConfig ParseSweepConfig(std::string_view json_text,
                             const std::filesystem::path& base_dir);

// One row per (image, scheme, eta, snr, seed) in that nesting order. A scene
// that fails to load or run contributes rows carrying the error in `note`.
std::vector<TrialResult> RunSweep(const SweepConfig& cfg);

// Runs the sweep and writes the CSV. Throws Error(kIo) if the output path
// is unwritable.
std::vector<TrialResult> Sweep(const SweepConfig& cfg);

// Line chart of mean TC-PSNR against mean CBR over eta, one series per
// (scheme, snr).
std::string RenderRateDistortionSvg(const std::vector<TrialResult>& rows);

}  // namespace inscom

#endif  // INSCOM_HARNESS_H_
