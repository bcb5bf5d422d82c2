#include "inscom/toif.h"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "inscom/error.h"

namespace inscom {
namespace {

using InstanceIndex = std::unordered_map<InstanceId, const Instance*>;

InstanceIndex IndexInstances(const SceneGraph& sg) {
  InstanceIndex index;
  index.reserve(sg.instances.size());
  for (const Instance& inst : sg.instances) index.emplace(inst.id, &inst);
  return index;
}

const std::string* ClassOf(const InstanceIndex& index, InstanceId id) {
  auto it = index.find(id);
  return it == index.end() ? nullptr : &it->second->class_label;
}

// Builds a subgraph holding `kept` triplets and the instances they reference,
// preserving the source order of both.
SceneGraph Restrict(const SceneGraph& sg, std::vector<Triplet> kept) {
  std::unordered_set<InstanceId> referenced;
  for (const Triplet& t : kept) {
    referenced.insert(t.subject_id);
    referenced.insert(t.object_id);
  }
  SceneGraph out;
  for (const Instance& inst : sg.instances) {
    if (referenced.contains(inst.id)) out.instances.push_back(inst);
  }
  out.triplets = std::move(kept);
  return out;
}

}  // namespace

SceneGraph FilterSemantic(const SceneGraph& sg, const TaskCriteria& criteria) {
  const InstanceIndex index = IndexInstances(sg);
  std::vector<Triplet> kept;
  for (const Triplet& t : sg.triplets) {
    const std::string* subject_class = ClassOf(index, t.subject_id);
    if (subject_class && criteria.critical_classes.contains(*subject_class)) {
      kept.push_back(t);
    }
  }
  return Restrict(sg, std::move(kept));
}

SceneGraph FilterInstance(const SceneGraph& sg1, const TaskCriteria& criteria) {
  const InstanceIndex index = IndexInstances(sg1);
  std::vector<Triplet> kept;
  for (const Triplet& t : sg1.triplets) {
    const std::string* object_class = ClassOf(index, t.object_id);
    if (object_class &&
        criteria.critical_relations.contains({t.relation, *object_class})) {
      kept.push_back(t);
    }
  }
  return Restrict(sg1, std::move(kept));
}

std::vector<CriticalInstance> CriticalInstances(const SceneGraph& sg2) {
  const InstanceIndex index = IndexInstances(sg2);
  std::vector<CriticalInstance> out;
  std::unordered_set<InstanceId> seen;
  for (const Triplet& t : sg2.triplets) {
    auto it = index.find(t.subject_id);
    if (it == index.end() || !seen.insert(t.subject_id).second) continue;
    out.push_back({t.subject_id, it->second->bbox});
  }
  std::sort(out.begin(), out.end(),
            [](const CriticalInstance& a, const CriticalInstance& b) {
              return a.id < b.id;
            });
  return out;
}

Mask SemanticMask(const SegmentationMap& seg, const TaskCriteria& criteria) {
  // Resolve the criteria once into a per-index lookup table.
  std::vector<std::uint8_t> critical_index(256, 0);
  for (const auto& [index, label] : seg.class_table) {
    if (index >= 0 && index < 256 && criteria.critical_classes.contains(label)) {
      critical_index[static_cast<std::size_t>(index)] = 1;
    }
  }
  std::vector<std::uint8_t> bits(seg.labels.size());
  std::transform(seg.labels.begin(), seg.labels.end(), bits.begin(),
                 [&](std::uint8_t label) { return critical_index[label]; });
  return Mask(seg.width, seg.height, std::move(bits));
}

Mask InstanceMask(std::span<const BBox> boxes, int width, int height) {
  Mask mask(width, height);
  for (const BBox& box : boxes) {
    const PixelRect r = ToPixelRect(box, width, height);
    for (int row = r.row_begin; row < r.row_end; ++row) {
      for (int col = r.col_begin; col < r.col_end; ++col) {
        mask.set(row, col, true);
      }
    }
  }
  return mask;
}

MaskedImage ComposeAndApply(const Image& img, const Mask& semantic,
                            const Mask& instance) {
  if (!semantic.Matches(img) || !instance.Matches(img)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "image " + std::to_string(img.width()) + "x" +
                    std::to_string(img.height()) + ", semantic mask " +
                    std::to_string(semantic.width()) + "x" +
                    std::to_string(semantic.height()) + ", instance mask " +
                    std::to_string(instance.width()) + "x" +
                    std::to_string(instance.height()));
  }
  const auto sem = semantic.bits();
  const auto ins = instance.bits();
  std::vector<std::uint8_t> task_bits(sem.size());
  for (std::size_t i = 0; i < sem.size(); ++i) task_bits[i] = sem[i] & ins[i];

  Image out(img.width(), img.height(), img.channels());
  const int c = img.channels();
  const auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t p = 0; p < task_bits.size(); ++p) {
    if (!task_bits[p]) continue;
    for (int ch = 0; ch < c; ++ch) dst[p * c + ch] = src[p * c + ch];
  }
  return {std::move(out), Mask(img.width(), img.height(), std::move(task_bits))};
}

TaskMaskResult BuildTaskMask(const SceneGraph& sg, const SegmentationMap& seg,
                             const Image& img, const TaskCriteria& criteria) {
  TaskMaskResult result;
  result.filtered = FilterInstance(FilterSemantic(sg, criteria), criteria);
  result.critical = CriticalInstances(result.filtered);
  std::vector<BBox> boxes;
  boxes.reserve(result.critical.size());
  for (const auto& ci : result.critical) boxes.push_back(ci.bbox);
  result.semantic = SemanticMask(seg, criteria);
  result.instance = InstanceMask(boxes, img.width(), img.height());
  result.masked = ComposeAndApply(img, result.semantic, result.instance);
  return result;
}

}  // namespace inscom
