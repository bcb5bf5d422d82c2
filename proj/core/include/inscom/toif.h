#ifndef INSCOM_TOIF_H_
#define INSCOM_TOIF_H_

// Task-oriented instance filtering: criteria, two-stage triplet filtering,
// and task-mask generation.

#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inscom/image.h"
#include "inscom/scene_graph.h"

namespace inscom {

// Critical subject classes plus critical (relation, object class) pairs.
// Labels match by exact, case-sensitive string equality.
struct TaskCriteria {
  std::string task_name;
  std::set<std::string> critical_classes;
  std::set<std::pair<std::string, std::string>> critical_relations;

  friend bool operator==(const TaskCriteria&, const TaskCriteria&) = default;
};

// Keeps triplets whose subject class is critical. Instances not referenced
// by a surviving triplet are dropped.
SceneGraph FilterSemantic(const SceneGraph& sg, const TaskCriteria& criteria);

// Keeps triplets whose (relation, object class) pair is critical.
SceneGraph FilterInstance(const SceneGraph& sg1, const TaskCriteria& criteria);

struct CriticalInstance {
  InstanceId id = 0;
  BBox bbox;

  friend bool operator==(const CriticalInstance&,
                         const CriticalInstance&) = default;
};

// Distinct subjects of the filtered graph, ordered by id.
std::vector<CriticalInstance> CriticalInstances(const SceneGraph& sg2);

Mask SemanticMask(const SegmentationMap& seg, const TaskCriteria& criteria);

Mask InstanceMask(std::span<const BBox> boxes, int width, int height);

struct MaskedImage {
  Image image;
  Mask mask;
};

// Returns (x_T, m_T) with m_T = m_sem AND m_ins; pixels outside m_T are
// zeroed on every channel. Throws Error(kDimensionMismatch).
MaskedImage ComposeAndApply(const Image& img, const Mask& semantic,
                            const Mask& instance);

// Runs both filtering stages and composes the task mask for one scene.
struct TaskMaskResult {
  SceneGraph filtered;
  std::vector<CriticalInstance> critical;
  Mask semantic;
  Mask instance;
  MaskedImage masked;
};

TaskMaskResult BuildTaskMask(const SceneGraph& sg, const SegmentationMap& seg,
                             const Image& img, const TaskCriteria& criteria);

}  // namespace inscom

#endif  // INSCOM_TOIF_H_
