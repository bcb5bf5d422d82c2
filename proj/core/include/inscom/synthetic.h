#ifndef INSCOM_SYNTHETIC_H_
#define INSCOM_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "inscom/formats.h"
#include "inscom/image.h"
#include "inscom/scene_graph.h"

namespace inscom {

// Synthetic scene layout: the background is split into horizontal bands,
// one per background class, each band also registered as an instance.
// Foreground instances are non-overlapping flat-colored rectangles; every
// foreground instance gets one triplet pointing at the band under its
// bottom edge.
struct SyntheticSpec {
  std::string id = "synthetic";
  int width = 64;
  int height = 64;
  int min_instances = 1;
  int max_instances = 3;
  int min_side = 8;
  int max_side = 24;
  std::vector<std::string> classes = {"man", "woman", "car"};
  std::vector<std::string> relations = {"walking on", "on"};
  std::vector<std::string> background_classes = {"street", "sidewalk"};
  // Peak-to-peak amplitude of the per-pixel background texture.
  int background_texture = 48;
  // Same for foreground rectangles; 0 keeps them flat.
  int instance_texture = 0;
  // Snap rectangle corners to the 8-pixel codec grid.
  bool block_aligned = false;
  std::uint64_t seed = 1;

  // Throws Error(kInvalidArgument).
  void Validate() const;
};

SyntheticSpec ParseSyntheticSpec(std::string_view json_text);

struct SyntheticScene {
  AnnotationRecord record;
  Image image;
  SegmentationMap segmentation;
  // Pixel rectangles of the foreground instances, in instance order.
  std::vector<PixelRect> rects;
};

// Throws Error(kSpecInfeasible) when the rectangles cannot be placed without
// overlap after bounded retries.
SyntheticScene GenerateSynthetic(const SyntheticSpec& spec);

// Normalized box whose pixel conversion reproduces `rect` exactly.
BBox ExactBox(const PixelRect& rect, int width, int height);

// Writes <id>.ppm, <id>_seg.pgm and <id>.json into `dir`; returns the
// annotation path.
std::filesystem::path WriteSyntheticScene(const SyntheticScene& scene,
                                          const std::filesystem::path& dir);

}  // namespace inscom

#endif  // INSCOM_SYNTHETIC_H_
