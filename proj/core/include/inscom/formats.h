#ifndef INSCOM_FORMATS_H_
#define INSCOM_FORMATS_H_

// Netpbm rasters, annotation/criteria JSON and the results CSV.

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inscom/error.h"
#include "inscom/image.h"
#include "inscom/metrics.h"
#include "inscom/scene_graph.h"
#include "inscom/toif.h"

namespace inscom {

// P6, maxval 255. Errors: kMalformedHeader, kUnsupportedMaxval,
// kTruncatedData.
Image ParsePpm(std::string_view bytes);
std::string EncodePpm(const Image& img);

struct GrayRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> samples;
};

// P5, maxval 255.
GrayRaster ParsePgm(std::string_view bytes);
std::string EncodePgm(int width, int height,
                      std::span<const std::uint8_t> samples);

// Mask bit is 1 iff the sample is 255; other values besides 0 raise
// kInvalidMaskValue.
Mask ParseMaskPgm(std::string_view bytes);
std::string EncodeMaskPgm(const Mask& mask);

std::string ReadFileBytes(const std::filesystem::path& path);
// Throws Error(kIo) when the file cannot be written.
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

// P6 as color, P5 as a single-channel image.
Image ReadImage(const std::filesystem::path& path);
void WriteImage(const Image& img, const std::filesystem::path& path);
Mask ReadMask(const std::filesystem::path& path);
void WriteMask(const Mask& mask, const std::filesystem::path& path);
SegmentationMap ReadSegmentation(const std::filesystem::path& path,
                                 std::map<int, std::string> class_table);
void WriteSegmentation(const SegmentationMap& seg,
                       const std::filesystem::path& path);

struct AnnotationRecord {
  std::string id;  // optional in JSON; defaults to the image file stem
  std::string image_path;
  std::string seg_path;
  int width = 0;
  int height = 0;
  std::map<int, std::string> class_table;
  SceneGraph graph;

  friend bool operator==(const AnnotationRecord&,
                         const AnnotationRecord&) = default;
};

// Errors carry the offending field path, e.g. "instances[0].bbox".
// kMissingField, kTypeMismatch, kInvariantViolation.
AnnotationRecord ParseAnnotation(std::string_view json_text);
std::string SerializeAnnotation(const AnnotationRecord& record);

TaskCriteria ParseCriteria(std::string_view json_text);
std::string SerializeCriteria(const TaskCriteria& criteria);

// An annotation together with the rasters it references.
struct LoadedScene {
  AnnotationRecord record;
  Image image;
  SegmentationMap segmentation;
};

// Resolves raster paths relative to `base_dir` and runs the full scene
// validation; a failing report raises kInvariantViolation.
LoadedScene LoadScene(const AnnotationRecord& record,
                      const std::filesystem::path& base_dir);
LoadedScene LoadSceneFile(const std::filesystem::path& annotation_path);

// A manifest is a JSON array whose entries are annotation file paths
// (relative to the manifest) or inline annotation objects.
struct ManifestEntry {
  std::string label;  // annotation id, or the path when parsing failed
  std::optional<LoadedScene> scene;
  std::string error;  // set when `scene` is empty
  ErrorCode error_code = ErrorCode::kInvariantViolation;
};

// Per-entry failures are captured in the entry; only an unreadable or
// non-array manifest throws.
std::vector<ManifestEntry> LoadManifestEntries(const std::filesystem::path& path);

// Strict variant: the first failing entry throws.
std::vector<LoadedScene> LoadManifest(const std::filesystem::path& path);

// Fixed column order; +/-infinity prints as "inf"/"-inf" and NaN as "nan".
inline constexpr std::string_view kCsvHeader =
    "image_id,scheme,eta,snr_db,seed,payload_symbols,side_symbol_equiv,cbr,"
    "psnr_db,tc_psnr_db,tc_pixel_count,note";

std::string FormatCsvRow(const TrialResult& row);
std::string FormatCsv(std::span<const TrialResult> rows);
std::string FormatNumber(double value);
std::string CsvQuote(std::string_view field);

}  // namespace inscom

#endif  // INSCOM_FORMATS_H_
