#include "inscom/scene_graph.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "inscom/error.h"

namespace inscom {
namespace {

constexpr int kMinImageSide = 8;

std::string DescribeBox(const BBox& b) {
  std::ostringstream os;
  os << "(" << b.x1 << ", " << b.y1 << ", " << b.x2 << ", " << b.y2 << ")";
  return os.str();
}

int ClampEdge(double v, int limit) {
  if (!(v > 0.0)) return 0;
  if (v >= static_cast<double>(limit)) return limit;
  return static_cast<int>(v);
}

}  // namespace

bool BBox::IsValid() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  return in_unit(x1) && in_unit(y1) && in_unit(x2) && in_unit(y2) &&
         x1 < x2 && y1 < y2;
}

PixelRect ToPixelRect(const BBox& box, int width, int height) {
  PixelRect r;
  r.col_begin = ClampEdge(std::floor(box.x1 * width), width);
  r.row_begin = ClampEdge(std::floor(box.y1 * height), height);
  r.col_end = ClampEdge(std::ceil(box.x2 * width), width);
  r.row_end = ClampEdge(std::ceil(box.y2 * height), height);
  return r;
}

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDuplicateInstanceId: return "duplicate-instance-id";
    case ViolationKind::kDanglingReference: return "dangling-reference";
    case ViolationKind::kSelfRelation: return "self-relation";
    case ViolationKind::kDuplicateTriplet: return "duplicate-triplet";
    case ViolationKind::kBboxOutOfRange: return "bbox-out-of-range";
    case ViolationKind::kScoreOutOfRange: return "score-out-of-range";
    case ViolationKind::kDimensionMismatch: return "dimension-mismatch";
    case ViolationKind::kUnknownLabel: return "unknown-label";
    case ViolationKind::kImageTooSmall: return "image-too-small";
    case ViolationKind::kBufferLength: return "buffer-length";
  }
  return "unknown";
}

std::size_t ValidationReport::Count(ViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(),
                    [kind](const Violation& v) { return v.kind == kind; }));
}

std::string ValidationReport::ToString() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << ViolationKindName(v.kind) << ": " << v.detail << "\n";
  }
  return os.str();
}

ValidationReport ValidateSceneGraph(const SceneGraph& sg) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  std::unordered_set<InstanceId> ids;
  for (std::size_t i = 0; i < sg.instances.size(); ++i) {
    const Instance& inst = sg.instances[i];
    const std::string where = "instances[" + std::to_string(i) + "]";
    if (!ids.insert(inst.id).second) {
      add(ViolationKind::kDuplicateInstanceId,
          where + ": id " + std::to_string(inst.id) + " already used");
    }
    if (!inst.bbox.IsValid()) {
      add(ViolationKind::kBboxOutOfRange,
          where + ".bbox " + DescribeBox(inst.bbox) +
              " violates 0 <= x1 < x2 <= 1, 0 <= y1 < y2 <= 1");
    }
    if (!(inst.score >= 0.0 && inst.score <= 1.0)) {
      add(ViolationKind::kScoreOutOfRange,
          where + ".score " + std::to_string(inst.score) + " outside [0, 1]");
    }
  }

  std::set<std::tuple<InstanceId, std::string, InstanceId>> seen;
  for (std::size_t i = 0; i < sg.triplets.size(); ++i) {
    const Triplet& t = sg.triplets[i];
    const std::string where = "triplets[" + std::to_string(i) + "]";
    if (!ids.contains(t.subject_id)) {
      add(ViolationKind::kDanglingReference,
          where + ".subject " + std::to_string(t.subject_id) +
              " is not an instance id");
    }
    if (!ids.contains(t.object_id)) {
      add(ViolationKind::kDanglingReference,
          where + ".object " + std::to_string(t.object_id) +
              " is not an instance id");
    }
    if (t.subject_id == t.object_id) {
      add(ViolationKind::kSelfRelation,
          where + ": subject and object are both " +
              std::to_string(t.subject_id));
    }
    if (!seen.emplace(t.subject_id, t.relation, t.object_id).second) {
      add(ViolationKind::kDuplicateTriplet,
          where + ": repeats <" + std::to_string(t.subject_id) + ", " +
              t.relation + ", " + std::to_string(t.object_id) + ">");
    }
  }
  return report;
}

ValidationReport ValidateScene(const SceneGraph& sg, const SegmentationMap& seg,
                               const Image& img) {
  ValidationReport report = ValidateSceneGraph(sg);
  auto add = [&report](ViolationKind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  if (img.width() < kMinImageSide || img.height() < kMinImageSide) {
    add(ViolationKind::kImageTooSmall,
        "image " + std::to_string(img.width()) + "x" +
            std::to_string(img.height()) + " is below the 8x8 floor");
  }
  if (seg.width != img.width() || seg.height != img.height()) {
    add(ViolationKind::kDimensionMismatch,
        "segmentation " + std::to_string(seg.width) + "x" +
            std::to_string(seg.height) + " vs image " +
            std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
  const std::size_t expected =
      static_cast<std::size_t>(std::max(seg.width, 0)) * std::max(seg.height, 0);
  if (seg.labels.size() != expected) {
    add(ViolationKind::kBufferLength,
        "segmentation holds " + std::to_string(seg.labels.size()) +
            " labels, expected " + std::to_string(expected));
  }

  std::set<int> present(seg.labels.begin(), seg.labels.end());
  for (int label : present) {
    if (!seg.class_table.contains(label)) {
      add(ViolationKind::kUnknownLabel,
          "segmentation label " + std::to_string(label) +
              " has no class_table entry");
    }
  }
  return report;
}

const Instance& LookupInstance(const SceneGraph& sg, InstanceId id) {
  auto it = std::find_if(sg.instances.begin(), sg.instances.end(),
                         [id](const Instance& i) { return i.id == id; });
  if (it == sg.instances.end()) {
    throw Error(ErrorCode::kUnknownId,
                "no instance with id " + std::to_string(id));
  }
  return *it;
}

}  // namespace inscom
