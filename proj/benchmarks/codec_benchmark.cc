#include <cmath>
#include <cstdint>

#include <benchmark/benchmark.h>

#include "inscom/channel.h"
#include "inscom/harness.h"
#include "inscom/ref_codec.h"
#include "inscom/synthetic.h"

namespace {

inscom::SyntheticScene MakeScene(int side) {
  inscom::SyntheticSpec spec;
  spec.width = side;
  spec.height = side;
  spec.min_side = side / 8;
  spec.max_side = side / 4;
  spec.instance_texture = 48;
  spec.seed = 11;
  return inscom::GenerateSynthetic(spec);
}

// Mask covering the central quarter of the image.
inscom::Mask CenterMask(int side) {
  inscom::Mask mask(side, side);
  for (int row = side / 4; row < 3 * side / 4; ++row) {
    for (int col = side / 4; col < 3 * side / 4; ++col) mask.set(row, col, true);
  }
  return mask;
}

void BM_Analysis(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto scene = MakeScene(side);
  const auto mask = CenterMask(side);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inscom::Analysis(scene.image, mask));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Analysis)->Arg(64)->Arg(256)->Arg(512);

void BM_AllocateEncode(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto lat = inscom::Analysis(MakeScene(side).image, CenterMask(side));
  const inscom::RateConfig cfg{.eta = 0.5};
  for (auto _ : state) {
    const auto alloc = inscom::Allocate(lat, cfg);
    benchmark::DoNotOptimize(inscom::Encode(lat, alloc));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_AllocateEncode)->Arg(64)->Arg(256)->Arg(512);

void BM_Transmit(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto lat = inscom::Analysis(MakeScene(side).image);
  const auto frame = inscom::Encode(lat, inscom::Allocate(lat, {.eta = 1.0}));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        inscom::Transmit(frame, {.snr_db = 3.0, .seed = seed++}));
  }
  state.SetItemsProcessed(state.iterations() * frame.symbols.size());
}
BENCHMARK(BM_Transmit)->Arg(64)->Arg(256)->Arg(512);

void BM_Decode(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const bool estimate = state.range(1) != 0;
  const auto image = MakeScene(side).image;
  const auto lat = inscom::Analysis(image);
  const auto frame = inscom::Transmit(
      inscom::Encode(lat, inscom::Allocate(lat, {.eta = 1.0})),
      {.snr_db = 3.0, .seed = 1});
  inscom::DecoderOptions options;
  if (estimate) options.snr_db = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inscom::Decode(frame, lat.geometry, options));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Decode)->ArgsProduct({{64, 256, 512}, {0, 1}});

void BM_Pipeline(benchmark::State& state) {
  const auto synthetic = MakeScene(128);
  const inscom::LoadedScene scene{synthetic.record, synthetic.image,
                                  synthetic.segmentation};
  inscom::TaskCriteria criteria;
  criteria.critical_classes = {"man", "woman", "car"};
  for (const char* rel : {"walking on", "on"}) {
    for (const char* obj : {"street", "sidewalk"}) {
      criteria.critical_relations.insert({rel, obj});
    }
  }
  inscom::TrialParams params;
  params.scheme = static_cast<inscom::Scheme>(state.range(0));
  params.eta = 0.5;
  params.snr_db = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inscom::RunPipeline(scene, criteria, params));
    ++params.seed;
  }
}
BENCHMARK(BM_Pipeline)->DenseRange(0, 2);

}  // namespace

BENCHMARK_MAIN();
