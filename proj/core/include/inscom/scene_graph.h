#ifndef INSCOM_SCENE_GRAPH_H_
#define INSCOM_SCENE_GRAPH_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "inscom/image.h"

namespace inscom {

using InstanceId = std::int64_t;

// Normalized box corners, each in [0, 1], with x1 < x2 and y1 < y2.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  bool IsValid() const;
  friend bool operator==(const BBox&, const BBox&) = default;
  friend auto operator<=>(const BBox&, const BBox&) = default;
};

// Half-open pixel rectangle [col_begin, col_end) x [row_begin, row_end).
struct PixelRect {
  int col_begin = 0;
  int row_begin = 0;
  int col_end = 0;
  int row_end = 0;

  bool Contains(int row, int col) const {
    return row >= row_begin && row < row_end && col >= col_begin &&
           col < col_end;
  }
  friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

// Low edges round down and high edges round up, clamped to the raster, so
// a box never loses a covered pixel.
PixelRect ToPixelRect(const BBox& box, int width, int height);

struct Instance {
  InstanceId id = 0;
  std::string class_label;
  double score = 1.0;
  BBox bbox;
  // Carried through annotation round trips, never interpreted.
  std::vector<std::uint8_t> feature;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Triplet {
  InstanceId subject_id = 0;
  std::string relation;
  InstanceId object_id = 0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
  friend auto operator<=>(const Triplet&, const Triplet&) = default;
};

struct SceneGraph {
  std::vector<Instance> instances;
  std::vector<Triplet> triplets;

  bool empty() const { return instances.empty() && triplets.empty(); }
  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;
};

// Per-pixel class indices plus the index -> label table.
struct SegmentationMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> labels;
  std::map<int, std::string> class_table;

  std::uint8_t at(int row, int col) const {
    return labels[static_cast<std::size_t>(row) * width + col];
  }
  friend bool operator==(const SegmentationMap&,
                         const SegmentationMap&) = default;
};

enum class ViolationKind {
  kDuplicateInstanceId,
  kDanglingReference,
  kSelfRelation,
  kDuplicateTriplet,
  kBboxOutOfRange,
  kScoreOutOfRange,
  kDimensionMismatch,
  kUnknownLabel,
  kImageTooSmall,
  kBufferLength,
};

std::string_view ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t Count(ViolationKind kind) const;
  std::string ToString() const;

  friend bool operator==(const ValidationReport&,
                         const ValidationReport&) = default;
};

// Graph-only checks: ids, references, duplicates, bbox and score ranges.
ValidationReport ValidateSceneGraph(const SceneGraph& sg);

// Graph checks plus raster consistency between segmentation and image.
ValidationReport ValidateScene(const SceneGraph& sg, const SegmentationMap& seg,
                               const Image& img);

// Throws Error(kUnknownId) when absent.
const Instance& LookupInstance(const SceneGraph& sg, InstanceId id);

}  // namespace inscom

#endif  // INSCOM_SCENE_GRAPH_H_
