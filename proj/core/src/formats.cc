#include "inscom/formats.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "inscom/error.h"
#include "json.hpp"

namespace inscom {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Netpbm

struct NetpbmHeader {
  char kind = 0;  // '5' or '6'
  int width = 0;
  int height = 0;
  std::size_t data_offset = 0;
};

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (IsSpace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long ReadNumber(std::string_view what) {
    SkipSpaceAndComments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      ++pos_;
    }
    if (pos_ == start || pos_ - start > 9) {
      throw Error(ErrorCode::kMalformedHeader,
                  "expected " + std::string(what) + " at byte " +
                      std::to_string(start));
    }
    long value = 0;
    std::from_chars(bytes_.data() + start, bytes_.data() + pos_, value);
    return value;
  }

  std::size_t pos() const { return pos_; }
  void Advance(std::size_t n) { pos_ += n; }
  bool AtSpace() const { return pos_ < bytes_.size() && IsSpace(bytes_[pos_]); }

 private:
  static bool IsSpace(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

NetpbmHeader ParseNetpbmHeader(std::string_view bytes, char expected_kind) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != expected_kind) {
    throw Error(ErrorCode::kMalformedHeader,
                std::string("expected magic P") + expected_kind);
  }
  HeaderReader reader(bytes);
  reader.Advance(2);
  NetpbmHeader h;
  h.kind = expected_kind;
  const long width = reader.ReadNumber("width");
  const long height = reader.ReadNumber("height");
  const long maxval = reader.ReadNumber("maxval");
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kMalformedHeader, "dimensions must be positive");
  }
  if (maxval != 255) {
    throw Error(ErrorCode::kUnsupportedMaxval,
                "maxval " + std::to_string(maxval) + " (only 255 supported)");
  }
  if (!reader.AtSpace()) {
    throw Error(ErrorCode::kMalformedHeader,
                "missing whitespace after maxval");
  }
  reader.Advance(1);
  h.width = static_cast<int>(width);
  h.height = static_cast<int>(height);
  h.data_offset = reader.pos();
  return h;
}

std::string_view PayloadOf(std::string_view bytes, const NetpbmHeader& h,
                           std::size_t channels) {
  const std::size_t need = static_cast<std::size_t>(h.width) * h.height * channels;
  const std::size_t have = bytes.size() - h.data_offset;
  if (have < need) {
    throw Error(ErrorCode::kTruncatedData,
                "expected " + std::to_string(need) + " sample bytes, found " +
                    std::to_string(have));
  }
  return bytes.substr(h.data_offset, need);
}

std::string NetpbmHeaderText(char kind, int width, int height) {
  return std::string("P") + kind + "\n" + std::to_string(width) + " " +
         std::to_string(height) + "\n255\n";
}

// ---------------------------------------------------------------------------
// JSON helpers

std::string JoinPath(const std::string& parent, std::string_view key) {
  return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

std::string IndexPath(const std::string& parent, std::size_t i) {
  return parent + "[" + std::to_string(i) + "]";
}

const json& Field(const json& obj, const std::string& path,
                  std::string_view key) {
  if (!obj.is_object()) {
    throw Error(ErrorCode::kTypeMismatch,
                (path.empty() ? std::string("<root>") : path) +
                    " must be an object");
  }
  auto it = obj.find(std::string(key));
  if (it == obj.end()) {
    throw Error(ErrorCode::kMissingField, JoinPath(path, key));
  }
  return *it;
}

[[noreturn]] void TypeMismatch(const std::string& path, std::string_view want) {
  throw Error(ErrorCode::kTypeMismatch,
              path + " must be " + std::string(want));
}

std::string AsString(const json& v, const std::string& path) {
  if (!v.is_string()) TypeMismatch(path, "a string");
  return v.get<std::string>();
}

std::int64_t AsInt(const json& v, const std::string& path) {
  if (!v.is_number_integer()) TypeMismatch(path, "an integer");
  return v.get<std::int64_t>();
}

double AsNumber(const json& v, const std::string& path) {
  if (!v.is_number()) TypeMismatch(path, "a number");
  return v.get<double>();
}

const json& AsArray(const json& v, const std::string& path) {
  if (!v.is_array()) TypeMismatch(path, "an array");
  return v;
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kTypeMismatch,
                std::string("invalid JSON: ") + e.what());
  }
}

std::string ToHex(const std::vector<std::uint8_t>& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

std::vector<std::uint8_t> FromHex(const std::string& hex,
                                  const std::string& path) {
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    TypeMismatch(path, "a hex string");
  };
  if (hex.size() % 2 != 0) TypeMismatch(path, "a hex string of even length");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 |
                                       nibble(hex[2 * i + 1]));
  }
  return out;
}

AnnotationRecord AnnotationFromJson(const json& root) {
  AnnotationRecord rec;
  rec.image_path = AsString(Field(root, "", "image"), "image");
  rec.seg_path = AsString(Field(root, "", "segmentation"), "segmentation");
  const std::int64_t width = AsInt(Field(root, "", "width"), "width");
  const std::int64_t height = AsInt(Field(root, "", "height"), "height");
  if (width <= 0 || height <= 0 || width > (1 << 20) || height > (1 << 20)) {
    throw Error(ErrorCode::kInvariantViolation,
                "width/height must be positive");
  }
  rec.width = static_cast<int>(width);
  rec.height = static_cast<int>(height);

  const json& table = Field(root, "", "class_table");
  if (!table.is_object()) TypeMismatch("class_table", "an object");
  for (const auto& [key, label] : table.items()) {
    const std::string path = "class_table." + key;
    int index = -1;
    const auto [end, ec] =
        std::from_chars(key.data(), key.data() + key.size(), index);
    if (ec != std::errc() || end != key.data() + key.size() || index < 0 ||
        index > 255) {
      throw Error(ErrorCode::kTypeMismatch,
                  path + " key must be an integer index in [0, 255]");
    }
    rec.class_table[index] = AsString(label, path);
  }

  const json& instances = AsArray(Field(root, "", "instances"), "instances");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const std::string path = IndexPath("instances", i);
    const json& obj = instances[i];
    Instance inst;
    inst.id = AsInt(Field(obj, path, "id"), JoinPath(path, "id"));
    inst.class_label =
        AsString(Field(obj, path, "class"), JoinPath(path, "class"));
    inst.score = AsNumber(Field(obj, path, "score"), JoinPath(path, "score"));
    const std::string bbox_path = JoinPath(path, "bbox");
    const json& bbox = AsArray(Field(obj, path, "bbox"), bbox_path);
    if (bbox.size() != 4) TypeMismatch(bbox_path, "an array of 4 numbers");
    inst.bbox = {AsNumber(bbox[0], IndexPath(bbox_path, 0)),
                 AsNumber(bbox[1], IndexPath(bbox_path, 1)),
                 AsNumber(bbox[2], IndexPath(bbox_path, 2)),
                 AsNumber(bbox[3], IndexPath(bbox_path, 3))};
    if (auto it = obj.find("feature"); it != obj.end()) {
      const std::string fpath = JoinPath(path, "feature");
      inst.feature = FromHex(AsString(*it, fpath), fpath);
    }
    rec.graph.instances.push_back(std::move(inst));
  }

  const json& triplets = AsArray(Field(root, "", "triplets"), "triplets");
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const std::string path = IndexPath("triplets", i);
    const json& obj = triplets[i];
    Triplet t;
    t.subject_id = AsInt(Field(obj, path, "subject"), JoinPath(path, "subject"));
    t.relation =
        AsString(Field(obj, path, "relation"), JoinPath(path, "relation"));
    t.object_id = AsInt(Field(obj, path, "object"), JoinPath(path, "object"));
    rec.graph.triplets.push_back(std::move(t));
  }

  if (auto it = root.find("id"); it != root.end()) {
    rec.id = AsString(*it, "id");
  } else {
    rec.id = std::filesystem::path(rec.image_path).stem().string();
  }

  const ValidationReport report = ValidateSceneGraph(rec.graph);
  if (!report.ok()) {
    throw Error(ErrorCode::kInvariantViolation, report.violations.front().detail);
  }
  return rec;
}

std::string FormatInteger(std::int64_t v) { return std::to_string(v); }

}  // namespace

// ---------------------------------------------------------------------------

Image ParsePpm(std::string_view bytes) {
  const NetpbmHeader h = ParseNetpbmHeader(bytes, '6');
  const std::string_view data = PayloadOf(bytes, h, 3);
  return Image(h.width, h.height, 3,
               std::vector<std::uint8_t>(data.begin(), data.end()));
}

std::string EncodePpm(const Image& img) {
  if (img.channels() != 3) {
    throw Error(ErrorCode::kInvalidArgument, "P6 needs a 3-channel image");
  }
  std::string out = NetpbmHeaderText('6', img.width(), img.height());
  out.append(img.pixels().begin(), img.pixels().end());
  return out;
}

GrayRaster ParsePgm(std::string_view bytes) {
  const NetpbmHeader h = ParseNetpbmHeader(bytes, '5');
  const std::string_view data = PayloadOf(bytes, h, 1);
  return {h.width, h.height, std::vector<std::uint8_t>(data.begin(), data.end())};
}

std::string EncodePgm(int width, int height,
                      std::span<const std::uint8_t> samples) {
  std::string out = NetpbmHeaderText('5', width, height);
  out.append(samples.begin(), samples.end());
  return out;
}

Mask ParseMaskPgm(std::string_view bytes) {
  GrayRaster raster = ParsePgm(bytes);
  for (std::size_t i = 0; i < raster.samples.size(); ++i) {
    std::uint8_t& s = raster.samples[i];
    if (s != 0 && s != 255) {
      throw Error(ErrorCode::kInvalidMaskValue,
                  "mask sample " + std::to_string(s) + " at index " +
                      std::to_string(i) + " is neither 0 nor 255");
    }
    s = s == 255 ? 1 : 0;
  }
  return Mask(raster.width, raster.height, std::move(raster.samples));
}

std::string EncodeMaskPgm(const Mask& mask) {
  std::vector<std::uint8_t> samples(mask.bits().size());
  std::transform(mask.bits().begin(), mask.bits().end(), samples.begin(),
                 [](std::uint8_t b) -> std::uint8_t { return b ? 255 : 0; });
  return EncodePgm(mask.width(), mask.height(), samples);
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

Image ReadImage(const std::filesystem::path& path) {
  const std::string bytes = ReadFileBytes(path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
    GrayRaster raster = ParsePgm(bytes);
    return Image(raster.width, raster.height, 1, std::move(raster.samples));
  }
  return ParsePpm(bytes);
}

void WriteImage(const Image& img, const std::filesystem::path& path) {
  if (img.channels() == 1) {
    WriteFileBytes(path, EncodePgm(img.width(), img.height(), img.pixels()));
  } else {
    WriteFileBytes(path, EncodePpm(img));
  }
}

Mask ReadMask(const std::filesystem::path& path) {
  return ParseMaskPgm(ReadFileBytes(path));
}

void WriteMask(const Mask& mask, const std::filesystem::path& path) {
  WriteFileBytes(path, EncodeMaskPgm(mask));
}

SegmentationMap ReadSegmentation(const std::filesystem::path& path,
                                 std::map<int, std::string> class_table) {
  GrayRaster raster = ParsePgm(ReadFileBytes(path));
  return {raster.width, raster.height, std::move(raster.samples),
          std::move(class_table)};
}

void WriteSegmentation(const SegmentationMap& seg,
                       const std::filesystem::path& path) {
  WriteFileBytes(path, EncodePgm(seg.width, seg.height, seg.labels));
}

AnnotationRecord ParseAnnotation(std::string_view json_text) {
  return AnnotationFromJson(ParseJson(json_text));
}

std::string SerializeAnnotation(const AnnotationRecord& record) {
  ordered_json root;
  root["id"] = record.id;
  root["image"] = record.image_path;
  root["segmentation"] = record.seg_path;
  root["width"] = record.width;
  root["height"] = record.height;
  ordered_json table = ordered_json::object();
  for (const auto& [index, label] : record.class_table) {
    table[std::to_string(index)] = label;
  }
  root["class_table"] = std::move(table);
  ordered_json instances = ordered_json::array();
  for (const Instance& inst : record.graph.instances) {
    ordered_json obj;
    obj["id"] = inst.id;
    obj["class"] = inst.class_label;
    obj["score"] = inst.score;
    obj["bbox"] = {inst.bbox.x1, inst.bbox.y1, inst.bbox.x2, inst.bbox.y2};
    if (!inst.feature.empty()) obj["feature"] = ToHex(inst.feature);
    instances.push_back(std::move(obj));
  }
  root["instances"] = std::move(instances);
  ordered_json triplets = ordered_json::array();
  for (const Triplet& t : record.graph.triplets) {
    triplets.push_back(ordered_json{{"subject", t.subject_id},
                                    {"relation", t.relation},
                                    {"object", t.object_id}});
  }
  root["triplets"] = std::move(triplets);
  return root.dump(2) + "\n";
}

TaskCriteria ParseCriteria(std::string_view json_text) {
  const json root = ParseJson(json_text);
  TaskCriteria crit;
  crit.task_name = AsString(Field(root, "", "task"), "task");
  const json& classes =
      AsArray(Field(root, "", "critical_classes"), "critical_classes");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    crit.critical_classes.insert(
        AsString(classes[i], IndexPath("critical_classes", i)));
  }
  const json& relations =
      AsArray(Field(root, "", "critical_relations"), "critical_relations");
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const std::string path = IndexPath("critical_relations", i);
    crit.critical_relations.emplace(
        AsString(Field(relations[i], path, "relation"),
                 JoinPath(path, "relation")),
        AsString(Field(relations[i], path, "object_class"),
                 JoinPath(path, "object_class")));
  }
  return crit;
}

std::string SerializeCriteria(const TaskCriteria& criteria) {
  ordered_json root;
  root["task"] = criteria.task_name;
  root["critical_classes"] = ordered_json::array();
  for (const auto& c : criteria.critical_classes) {
    root["critical_classes"].push_back(c);
  }
  root["critical_relations"] = ordered_json::array();
  for (const auto& [relation, object_class] : criteria.critical_relations) {
    root["critical_relations"].push_back(ordered_json{
        {"relation", relation}, {"object_class", object_class}});
  }
  return root.dump(2) + "\n";
}

LoadedScene LoadScene(const AnnotationRecord& record,
                      const std::filesystem::path& base_dir) {
  LoadedScene scene;
  scene.record = record;
  scene.image = ReadImage(base_dir / record.image_path);
  scene.segmentation =
      ReadSegmentation(base_dir / record.seg_path, record.class_table);

  ValidationReport report =
      ValidateScene(record.graph, scene.segmentation, scene.image);
  if (scene.image.width() != record.width ||
      scene.image.height() != record.height) {
    report.violations.push_back(
        {ViolationKind::kDimensionMismatch,
         "annotation declares " + std::to_string(record.width) + "x" +
             std::to_string(record.height) + ", image is " +
             std::to_string(scene.image.width()) + "x" +
             std::to_string(scene.image.height())});
  }
  if (!report.ok()) {
    throw Error(ErrorCode::kInvariantViolation,
                record.id + ": " + report.violations.front().detail);
  }
  return scene;
}

LoadedScene LoadSceneFile(const std::filesystem::path& annotation_path) {
  const AnnotationRecord record =
      ParseAnnotation(ReadFileBytes(annotation_path));
  return LoadScene(record, annotation_path.parent_path());
}

std::vector<ManifestEntry> LoadManifestEntries(
    const std::filesystem::path& path) {
  const json root = ParseJson(ReadFileBytes(path));
  if (!root.is_array()) TypeMismatch("<root>", "an array");
  const std::filesystem::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const json& item = root[i];
    ManifestEntry entry;
    entry.label = item.is_string() ? item.get<std::string>()
                                   : "manifest" + IndexPath("", i);
    try {
      if (item.is_string()) {
        entry.scene = LoadSceneFile(base / item.get<std::string>());
      } else if (item.is_object()) {
        entry.scene = LoadScene(AnnotationFromJson(item), base);
      } else {
        TypeMismatch(IndexPath("", i), "a path string or annotation object");
      }
      entry.label = entry.scene->record.id;
    } catch (const Error& e) {
      entry.error = e.what();
      entry.error_code = e.code();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<LoadedScene> LoadManifest(const std::filesystem::path& path) {
  std::vector<LoadedScene> scenes;
  for (auto& entry : LoadManifestEntries(path)) {
    if (!entry.scene) {
      throw Error(entry.error_code, entry.label + ": " + entry.error);
    }
    scenes.push_back(std::move(*entry.scene));
  }
  return scenes;
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::string CsvQuote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string FormatCsvRow(const TrialResult& r) {
  std::string line;
  line += CsvQuote(r.image_id) + ",";
  line += CsvQuote(r.scheme) + ",";
  line += FormatNumber(r.eta) + ",";
  line += FormatNumber(r.snr_db) + ",";
  line += FormatInteger(r.seed) + ",";
  line += FormatInteger(r.payload_symbols) + ",";
  line += FormatInteger(r.side_symbol_equiv) + ",";
  line += FormatNumber(r.cbr) + ",";
  line += FormatNumber(r.psnr_db) + ",";
  line += FormatNumber(r.tc_psnr_db) + ",";
  line += FormatInteger(r.tc_pixel_count) + ",";
  line += CsvQuote(r.note);
  return line;
}

std::string FormatCsv(std::span<const TrialResult> rows) {
  std::string out(kCsvHeader);
  out += "\r\n";
  for (const TrialResult& r : rows) {
    out += FormatCsvRow(r);
    out += "\r\n";
  }
  return out;
}

}  // namespace inscom
