// Command-line front end for the instance-level transmission simulator.
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "inscom/error.h"
#include "inscom/formats.h"
#include "inscom/harness.h"
#include "inscom/metrics.h"
#include "inscom/synthetic.h"
#include "inscom/toif.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

int ExitCodeFor(inscom::ErrorCode code) {
  return inscom::IsIoError(code) ? kExitIo : kExitValidation;
}

// Prints every manifest entry as "ok <label>" or "error <label>: <reason>".
int RunValidate(const fs::path& manifest) {
  const auto entries = inscom::LoadManifestEntries(manifest);
  int exit_code = kExitOk;
  for (const auto& entry : entries) {
    if (entry.scene) {
      std::cout << "ok " << entry.label << "\n";
      continue;
    }
    std::cout << "error " << entry.label << ": " << entry.error << "\n";
    const int code = ExitCodeFor(entry.error_code);
    if (code > exit_code) exit_code = code;
  }
  std::cout << entries.size() << " entries checked\n";
  return exit_code;
}

int RunFilter(const fs::path& annotation, const fs::path& criteria_path,
              const fs::path& out_mask, const fs::path& out_image) {
  const auto scene = inscom::LoadSceneFile(annotation);
  const auto criteria =
      inscom::ParseCriteria(inscom::ReadFileBytes(criteria_path));
  const auto result = inscom::BuildTaskMask(
      scene.record.graph, scene.segmentation, scene.image, criteria);
  if (!out_mask.empty()) inscom::WriteMask(result.masked.mask, out_mask);
  if (!out_image.empty()) inscom::WriteImage(result.masked.image, out_image);
  std::cout << "kept_triplets " << result.filtered.triplets.size() << "\n";
  for (const auto& t : result.filtered.triplets) {
    std::cout << "  " << t.subject_id << " " << t.relation << " "
              << t.object_id << "\n";
  }
  std::cout << "critical_instances " << result.critical.size() << "\n";
  std::cout << "task_pixels " << result.masked.mask.Popcount() << "\n";
  return kExitOk;
}

int RunTransmit(const fs::path& annotation, const fs::path& criteria_path,
                const inscom::TrialParams& params, const fs::path& out) {
  const auto scene = inscom::LoadSceneFile(annotation);
  const auto criteria =
      inscom::ParseCriteria(inscom::ReadFileBytes(criteria_path));
  const auto output = inscom::RunPipelineDetailed(scene, criteria, params);
  if (!out.empty()) inscom::WriteImage(output.reconstruction, out);
  std::cout << inscom::FormatCsv(std::vector{output.result});
  return kExitOk;
}

int RunSweepCommand(const fs::path& config_path, const fs::path& svg) {
  const auto config = inscom::ParseSweepConfig(
      inscom::ReadFileBytes(config_path), config_path.parent_path());
  const auto rows = inscom::Sweep(config);
  std::size_t flagged = 0;
  for (const auto& row : rows) flagged += row.note.empty() ? 0 : 1;
  if (!svg.empty()) {
    inscom::WriteFileBytes(svg, inscom::RenderRateDistortionSvg(rows));
  }
  std::cout << rows.size() << " rows written to " << config.output.string()
            << " (" << flagged << " with notes)\n";
  return kExitOk;
}

std::string FormatDb(double db) {
  if (std::isinf(db)) return "inf";
  return inscom::FormatNumber(db);
}

int RunMetrics(const fs::path& ref_path, const fs::path& rec_path,
               const fs::path& mask_path) {
  const auto ref = inscom::ReadImage(ref_path);
  const auto rec = inscom::ReadImage(rec_path);
  std::cout << "mse " << inscom::FormatNumber(inscom::Mse(ref, rec)) << "\n";
  std::cout << "psnr_db " << FormatDb(inscom::Psnr(ref, rec)) << "\n";
  if (!mask_path.empty()) {
    const auto mask = inscom::ReadMask(mask_path);
    std::cout << "mse_tc "
              << inscom::FormatNumber(inscom::MseTc(ref, rec, mask)) << "\n";
    std::cout << "tc_psnr_db " << FormatDb(inscom::TcPsnr(ref, rec, mask))
              << "\n";
    std::cout << "tc_pixel_count " << mask.Popcount() << "\n";
  }
  return kExitOk;
}

int RunSynth(const fs::path& spec_path, const fs::path& out_dir) {
  const auto spec =
      inscom::ParseSyntheticSpec(inscom::ReadFileBytes(spec_path));
  const auto scene = inscom::GenerateSynthetic(spec);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw inscom::Error(inscom::ErrorCode::kIo,
                        "cannot create " + out_dir.string() + ": " +
                            ec.message());
  }
  std::cout << inscom::WriteSyntheticScene(scene, out_dir).string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instance-level semantic communication simulator"};
  app.require_subcommand(1);

  fs::path validate_manifest;
  auto* validate = app.add_subcommand("validate", "Check a scene manifest");
  validate->add_option("manifest", validate_manifest)->required();

  fs::path filter_annotation, filter_criteria, filter_mask, filter_image;
  auto* filter =
      app.add_subcommand("filter", "Build the task mask for one scene");
  filter->add_option("annotation", filter_annotation)->required();
  filter->add_option("criteria", filter_criteria)->required();
  filter->add_option("--out-mask", filter_mask, "Binary mask (PGM)");
  filter->add_option("--out-image", filter_image, "Masked image (PPM)");

  fs::path tx_annotation, tx_criteria, tx_out;
  std::string tx_scheme = "inscom";
  inscom::TrialParams tx_params;
  auto* transmit =
      app.add_subcommand("transmit", "Run one trial through the channel");
  transmit->add_option("annotation", tx_annotation)->required();
  transmit->add_option("criteria", tx_criteria)->required();
  transmit->add_option("--scheme", tx_scheme, "inscom, ntscc_like or uniform")
      ->capture_default_str();
  transmit->add_option("--eta", tx_params.eta, "Rate factor")
      ->capture_default_str();
  transmit->add_option("--snr", tx_params.snr_db, "Channel SNR in dB")
      ->capture_default_str();
  transmit->add_option("--seed", tx_params.seed)->capture_default_str();
  transmit->add_option("--master-seed", tx_params.master_seed)
      ->capture_default_str();
  transmit->add_option("--k-min", tx_params.k_min)->capture_default_str();
  transmit->add_option("--out", tx_out, "Reconstruction (PPM)");

  fs::path sweep_config, sweep_svg;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("config", sweep_config)->required();
  sweep->add_option("--svg", sweep_svg, "Rate-distortion chart");

  fs::path metrics_ref, metrics_rec, metrics_mask;
  auto* metrics = app.add_subcommand("metrics", "Compare two images");
  metrics->add_option("ref", metrics_ref)->required();
  metrics->add_option("rec", metrics_rec)->required();
  metrics->add_option("--mask", metrics_mask, "Task mask (PGM)");

  fs::path synth_spec, synth_dir;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic scene");
  synth->add_option("spec", synth_spec)->required();
  synth->add_option("--out-dir", synth_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*validate) return RunValidate(validate_manifest);
    if (*filter) {
      return RunFilter(filter_annotation, filter_criteria, filter_mask,
                       filter_image);
    }
    if (*transmit) {
      tx_params.scheme = inscom::ParseScheme(tx_scheme);
      return RunTransmit(tx_annotation, tx_criteria, tx_params, tx_out);
    }
    if (*sweep) return RunSweepCommand(sweep_config, sweep_svg);
    if (*metrics) return RunMetrics(metrics_ref, metrics_rec, metrics_mask);
    if (*synth) return RunSynth(synth_spec, synth_dir);
  } catch (const inscom::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
