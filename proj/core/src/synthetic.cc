#include "inscom/synthetic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "inscom/error.h"
#include "inscom/random.h"
#include "json.hpp"

namespace inscom {
namespace {

constexpr int kPlacementRetries = 200;
constexpr int kAlign = 8;

// SplitMix64 stream; fully specified, so fixtures are identical everywhere.
class LayoutRng {
 public:
  explicit LayoutRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() { return Mix64(state_++); }
  // Uniform in [lo, hi].
  int Between(int lo, int hi) {
    return lo + static_cast<int>(Next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

bool Overlaps(const PixelRect& a, const PixelRect& b) {
  return a.col_begin < b.col_end && b.col_begin < a.col_end &&
         a.row_begin < b.row_end && b.row_begin < a.row_end;
}

double FitLow(int edge, int extent) {
  double v = static_cast<double>(edge) / extent;
  while (std::floor(v * extent) < edge) v = std::nextafter(v, 2.0);
  while (v > 0.0 && std::floor(v * extent) > edge) v = std::nextafter(v, -1.0);
  return v;
}

double FitHigh(int edge, int extent) {
  double v = static_cast<double>(edge) / extent;
  while (std::ceil(v * extent) > edge) v = std::nextafter(v, -1.0);
  while (v < 1.0 && std::ceil(v * extent) < edge) v = std::nextafter(v, 2.0);
  return v;
}

std::array<std::uint8_t, 3> ColorFor(std::uint64_t key) {
  const std::uint64_t h = Mix64(key);
  // Stay away from the extremes so texture does not clip.
  return {static_cast<std::uint8_t>(40 + (h & 0xFF) % 176),
          static_cast<std::uint8_t>(40 + ((h >> 8) & 0xFF) % 176),
          static_cast<std::uint8_t>(40 + ((h >> 16) & 0xFF) % 176)};
}

std::uint8_t Textured(int base, int amplitude, std::uint64_t noise) {
  if (amplitude <= 0) return static_cast<std::uint8_t>(base);
  const int offset = static_cast<int>(noise % static_cast<std::uint64_t>(amplitude + 1)) -
                     amplitude / 2;
  return static_cast<std::uint8_t>(std::clamp(base + offset, 0, 255));
}

}  // namespace

void SyntheticSpec::Validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic spec: " + msg);
  };
  if (width < 16 || height < 16) fail("width and height must be >= 16");
  if (min_instances < 0 || max_instances < min_instances) {
    fail("instance range must satisfy 0 <= min <= max");
  }
  if (min_side < 1 || max_side < min_side) {
    fail("side range must satisfy 1 <= min_side <= max_side");
  }
  if (max_instances > 0 && (classes.empty() || relations.empty())) {
    fail("class and relation vocabularies must be non-empty");
  }
  if (background_classes.empty()) fail("need at least one background class");
  if (static_cast<int>(background_classes.size()) > height) {
    fail("more background bands than rows");
  }
  for (const auto& c : classes) {
    if (std::find(background_classes.begin(), background_classes.end(), c) !=
        background_classes.end()) {
      fail("class '" + c + "' is also a background class");
    }
  }
  if (classes.size() + background_classes.size() > 256) {
    fail("at most 256 classes fit in a segmentation PGM");
  }
  if (background_texture < 0 || instance_texture < 0) {
    fail("texture amplitudes must be non-negative");
  }
}

SyntheticSpec ParseSyntheticSpec(std::string_view json_text) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kTypeMismatch,
                std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::kTypeMismatch, "synthetic spec must be an object");
  }
  SyntheticSpec spec;
  auto get = [&root](const char* key, auto& out) {
    auto it = root.find(key);
    if (it == root.end()) return;
    try {
      it->get_to(out);
    } catch (const json::exception&) {
      throw Error(ErrorCode::kTypeMismatch, std::string(key) + " has the wrong type");
    }
  };
  get("id", spec.id);
  get("width", spec.width);
  get("height", spec.height);
  get("min_instances", spec.min_instances);
  get("max_instances", spec.max_instances);
  get("min_side", spec.min_side);
  get("max_side", spec.max_side);
  get("classes", spec.classes);
  get("relations", spec.relations);
  get("background_classes", spec.background_classes);
  get("background_texture", spec.background_texture);
  get("instance_texture", spec.instance_texture);
  get("block_aligned", spec.block_aligned);
  get("seed", spec.seed);
  spec.Validate();
  return spec;
}

BBox ExactBox(const PixelRect& rect, int width, int height) {
  return {FitLow(rect.col_begin, width), FitLow(rect.row_begin, height),
          FitHigh(rect.col_end, width), FitHigh(rect.row_end, height)};
}

SyntheticScene GenerateSynthetic(const SyntheticSpec& spec) {
  spec.Validate();
  const int w = spec.width;
  const int h = spec.height;
  LayoutRng rng(CombineSeed({spec.seed, HashString("layout")}));

  SyntheticScene scene;
  AnnotationRecord& rec = scene.record;
  rec.id = spec.id;
  rec.image_path = spec.id + ".ppm";
  rec.seg_path = spec.id + "_seg.pgm";
  rec.width = w;
  rec.height = h;

  std::map<std::string, int> class_index;
  for (const auto& c : spec.background_classes) {
    if (!class_index.contains(c)) {
      const int idx = static_cast<int>(class_index.size());
      class_index[c] = idx;
      rec.class_table[idx] = c;
    }
  }
  for (const auto& c : spec.classes) {
    if (!class_index.contains(c)) {
      const int idx = static_cast<int>(class_index.size());
      class_index[c] = idx;
      rec.class_table[idx] = c;
    }
  }

  scene.image = Image(w, h, 3);
  scene.segmentation = {w, h, std::vector<std::uint8_t>(
                                  static_cast<std::size_t>(w) * h, 0),
                        rec.class_table};
  const Philox4x32 texture(CombineSeed({spec.seed, HashString("texture")}));
  auto noise_at = [&texture](int row, int col) {
    const auto r = texture({static_cast<std::uint32_t>(row),
                            static_cast<std::uint32_t>(col), 0u, 0u});
    return r;
  };

  // Background bands.
  const int bands = static_cast<int>(spec.background_classes.size());
  std::vector<PixelRect> band_rects;
  InstanceId next_id = 1;
  for (int b = 0; b < bands; ++b) {
    const PixelRect band{0, b * h / bands, w, (b + 1) * h / bands};
    band_rects.push_back(band);
    const std::string& label = spec.background_classes[b];
    const auto color = ColorFor(CombineSeed({spec.seed, 0xB6u,
                                             static_cast<std::uint64_t>(b)}));
    for (int row = band.row_begin; row < band.row_end; ++row) {
      for (int col = 0; col < w; ++col) {
        const auto n = noise_at(row, col);
        for (int ch = 0; ch < 3; ++ch) {
          scene.image.at(row, col, ch) =
              Textured(color[ch], spec.background_texture, n[ch]);
        }
        scene.segmentation.labels[static_cast<std::size_t>(row) * w + col] =
            static_cast<std::uint8_t>(class_index.at(label));
      }
    }
    rec.graph.instances.push_back(
        {next_id++, label, 1.0, ExactBox(band, w, h), {}});
  }

  // Foreground rectangles.
  const int count = spec.max_instances == 0
                        ? 0
                        : rng.Between(spec.min_instances, spec.max_instances);
  std::vector<std::array<std::uint8_t, 3>> used_colors;
  for (int i = 0; i < count; ++i) {
    PixelRect rect;
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementRetries && !placed; ++attempt) {
      int rw = rng.Between(spec.min_side, std::min(spec.max_side, w));
      int rh = rng.Between(spec.min_side, std::min(spec.max_side, h));
      int col = rng.Between(0, w - rw);
      int row = rng.Between(0, h - rh);
      if (spec.block_aligned) {
        rw = std::max(kAlign, rw / kAlign * kAlign);
        rh = std::max(kAlign, rh / kAlign * kAlign);
        col = std::min(col / kAlign * kAlign, (w - rw) / kAlign * kAlign);
        row = std::min(row / kAlign * kAlign, (h - rh) / kAlign * kAlign);
        if (col < 0 || row < 0) continue;
      }
      rect = {col, row, col + rw, row + rh};
      placed = std::none_of(scene.rects.begin(), scene.rects.end(),
                            [&](const PixelRect& r) { return Overlaps(r, rect); });
    }
    if (!placed) {
      throw Error(ErrorCode::kSpecInfeasible,
                  "could not place instance " + std::to_string(i) +
                      " without overlap after " +
                      std::to_string(kPlacementRetries) + " attempts");
    }
    scene.rects.push_back(rect);

    const std::string& label =
        spec.classes[rng.Next() % spec.classes.size()];
    std::array<std::uint8_t, 3> color;
    std::uint64_t salt = 0;
    do {
      color = ColorFor(CombineSeed({spec.seed, 0xF6u,
                                    static_cast<std::uint64_t>(i), salt++}));
    } while (std::find(used_colors.begin(), used_colors.end(), color) !=
             used_colors.end());
    used_colors.push_back(color);

    for (int row = rect.row_begin; row < rect.row_end; ++row) {
      for (int col = rect.col_begin; col < rect.col_end; ++col) {
        const auto n = noise_at(row, col);
        for (int ch = 0; ch < 3; ++ch) {
          scene.image.at(row, col, ch) =
              Textured(color[ch], spec.instance_texture, n[ch]);
        }
        scene.segmentation.labels[static_cast<std::size_t>(row) * w + col] =
            static_cast<std::uint8_t>(class_index.at(label));
      }
    }
    const InstanceId id = next_id++;
    rec.graph.instances.push_back({id, label, 1.0, ExactBox(rect, w, h), {}});

    const int bottom = rect.row_end - 1;
    int band = 0;
    while (band + 1 < bands && bottom >= band_rects[band].row_end) ++band;
    rec.graph.triplets.push_back(
        {id, spec.relations[rng.Next() % spec.relations.size()],
         static_cast<InstanceId>(band + 1)});
  }
  return scene;
}

std::filesystem::path WriteSyntheticScene(const SyntheticScene& scene,
                                          const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " +
                                    ec.message());
  }
  WriteImage(scene.image, dir / scene.record.image_path);
  WriteSegmentation(scene.segmentation, dir / scene.record.seg_path);
  const std::filesystem::path annotation = dir / (scene.record.id + ".json");
  WriteFileBytes(annotation, SerializeAnnotation(scene.record));
  return annotation;
}

}  // namespace inscom
