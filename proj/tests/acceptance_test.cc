// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "inscom/channel.h"
#include "inscom/error.h"
#include "inscom/formats.h"
#include "inscom/harness.h"
#include "inscom/metrics.h"
#include "inscom/ref_codec.h"
#include "inscom/synthetic.h"
#include "inscom/toif.h"
#include "test_util.h"

namespace inscom {
namespace {

using inscom_test::Rng;
using inscom_test::UniformInt;
using inscom_test::UniformReal;

const std::filesystem::path kData = INSCOM_TEST_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

std::vector<double> EtaGrid() {
  std::vector<double> grid;
  for (int i = 1; i <= 15; ++i) grid.push_back(i / 10.0);
  return grid;
}

// Unaligned textured scenes with pedestrians on two background bands.
LoadedScene PedestrianFixture(std::uint64_t seed, int size) {
  SyntheticSpec spec;
  spec.id = "fixture" + std::to_string(seed);
  spec.width = size;
  spec.height = size;
  spec.seed = seed;
  spec.min_instances = 2;
  spec.max_instances = 4;
  spec.min_side = 16;
  spec.max_side = 32;
  spec.classes = {"man", "woman"};
  spec.relations = {"walking on"};
  spec.background_classes = {"sidewalk", "street"};
  spec.instance_texture = 48;
  SyntheticScene s = GenerateSynthetic(spec);
  return {s.record, s.image, s.segmentation};
}

TaskCriteria PedestrianCriteria() {
  return {"pedestrian_warning",
          {"man", "woman"},
          {{"walking on", "street"}, {"walking on", "sidewalk"}}};
}

double MeanTcPsnr(const LoadedScene& scene, const TaskCriteria& crit,
                  Scheme scheme, double eta, double snr, int seeds) {
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) {
    TrialParams p;
    p.scheme = scheme;
    p.eta = eta;
    p.snr_db = snr;
    p.seed = s;
    sum += RunPipeline(scene, crit, p).tc_psnr_db;
  }
  return sum / seeds;
}

// 1. Two-stage filter against a brute-force scan.
Outcome FilteringOracle() {
  Rng rng(101);
  int mismatches = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    const SceneGraph sg = inscom_test::RandomSceneGraph(rng, 50, 200);
    const TaskCriteria c = inscom_test::RandomCriteria(rng);
    const SceneGraph out = FilterInstance(FilterSemantic(sg, c), c);
    const std::set<Triplet> got(out.triplets.begin(), out.triplets.end());
    mismatches += got != inscom_test::OracleFilter(sg, c) ||
                  got.size() != out.triplets.size();
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
  return {mismatches == 0 && secs < 10.0,
          Fmt("1000 graphs, %d mismatches, %.2f s", mismatches, secs)};
}

// 2. The pedestrian worked example from a committed annotation.
Outcome WorkedExample() {
  const LoadedScene scene =
      LoadSceneFile(kData / "pedestrian" / "street_scene.json");
  const TaskCriteria crit = ParseCriteria(
      ReadFileBytes(kData / "pedestrian" / "pedestrian_warning.json"));
  const SceneGraph& sg = scene.record.graph;
  const SceneGraph sg1 = FilterSemantic(sg, crit);
  const SceneGraph sg2 = FilterInstance(sg1, crit);

  auto render = [&sg](const Triplet& t) {
    return "<" + LookupInstance(sg, t.subject_id).class_label + ", " +
           t.relation + ", " + LookupInstance(sg, t.object_id).class_label +
           ">";
  };
  bool person_only = true;
  for (const Triplet& t : sg1.triplets) {
    person_only &= crit.critical_classes.contains(
        LookupInstance(sg, t.subject_id).class_label);
  }
  const bool sidewalk_seen =
      std::any_of(sg1.triplets.begin(), sg1.triplets.end(),
                  [&](const Triplet& t) {
                    return render(t) == "<woman, walking on, sidewalk>";
                  });
  const bool ok = person_only && sidewalk_seen && sg1.triplets.size() == 2 &&
                  sg2.triplets.size() == 1 &&
                  render(sg2.triplets[0]) == "<woman, walking on, street>" &&
                  CriticalInstances(sg2).size() == 1;
  return {ok, "kept " + (sg2.triplets.empty() ? std::string("nothing")
                                               : render(sg2.triplets[0])) +
                  Fmt("; semantic stage kept %zu of %zu triplets",
                      sg1.triplets.size(), sg.triplets.size())};
}

// 3. Mask algebra and the masked image on random tuples.
Outcome MaskAlgebra() {
  Rng rng(103);
  int mask_bad = 0, image_bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int w = UniformInt(rng, 8, 48);
    const int h = UniformInt(rng, 8, 48);
    const SceneGraph sg = inscom_test::RandomSceneGraph(rng, 15, 40);
    const SegmentationMap seg = inscom_test::RandomSegmentation(rng, w, h);
    const TaskCriteria c = inscom_test::RandomCriteria(rng);
    const Image img = inscom_test::RandomImage(rng, w, h, 3);
    const TaskMaskResult r = BuildTaskMask(sg, seg, img, c);
    const Mask oracle = inscom_test::OracleTaskMask(sg, seg, c);
    mask_bad += !(r.masked.mask == oracle);
    bool image_ok = true;
    for (int row = 0; row < h; ++row) {
      for (int col = 0; col < w; ++col) {
        for (int ch = 0; ch < 3; ++ch) {
          image_ok &= r.masked.image.at(row, col, ch) ==
                      img.at(row, col, ch) * r.semantic.at(row, col) *
                          r.instance.at(row, col);
        }
      }
    }
    image_bad += !image_ok;
  }
  return {mask_bad == 0 && image_bad == 0,
          Fmt("500 tuples, %d mask mismatches, %d image mismatches", mask_bad,
              image_bad)};
}

// 4. Full-mask reduction and the masked MSE oracle.
Outcome MetricReduction() {
  Rng rng(104);
  double worst_db = 0.0, worst_mse = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int w = UniformInt(rng, 1, 40), h = UniformInt(rng, 1, 40);
    const int c = trial % 2 ? 3 : 1;
    const Image a = inscom_test::RandomImage(rng, w, h, c);
    Image b = a;
    for (auto& p : b.pixels()) {
      p = static_cast<std::uint8_t>(std::clamp(p + UniformInt(rng, -20, 20), 0, 255));
    }
    const double tc = TcPsnr(a, b, Mask::Full(w, h));
    const double plain = Psnr(a, b);
    worst_db = std::max(worst_db, tc == plain ? 0.0 : std::abs(tc - plain));
    Mask m(w, h);
    m.set(UniformInt(rng, 0, h - 1), UniformInt(rng, 0, w - 1), true);
    for (int i = 0; i < w * h / 3; ++i) {
      m.set(UniformInt(rng, 0, h - 1), UniformInt(rng, 0, w - 1), true);
    }
    worst_mse = std::max(worst_mse,
                         std::abs(MseTc(a, b, m) - inscom_test::OracleMse(a, b, &m)));
  }
  return {worst_db <= 1e-9 && worst_mse <= 1e-9,
          Fmt("100 pairs, max |tc_psnr - psnr| %.1e dB, max mse_tc error %.1e",
              worst_db, worst_mse)};
}

// 5. Unit mean power for every nonempty frame.
Outcome PowerNormalization() {
  Rng rng(105);
  double worst = 0.0;
  int frames = 0;
  while (frames < 10000) {
    const int w = UniformInt(rng, 8, 32), h = UniformInt(rng, 8, 32);
    const Image img = frames % 3 == 0
                          ? inscom_test::RandomImage(rng, w, h, 3)
                          : inscom_test::RandomNaturalImage(rng, w, h, frames % 2 ? 3 : 1);
    Mask m(w, h);
    for (int i = 0; i < UniformInt(rng, 1, 6); ++i) {
      m.set(UniformInt(rng, 0, h - 1), UniformInt(rng, 0, w - 1), true);
    }
    const BlockLatents lat = frames % 2 ? Analysis(img, m) : Analysis(img);
    const RateConfig cfg{UniformReal(rng, 0.01, 2.0), UniformInt(rng, 1, 8),
                         frames % 5 == 0 ? RateScheme::kUniform
                                         : RateScheme::kVariable};
    const SymbolFrame f = Encode(lat, Allocate(lat, cfg));
    if (f.empty()) continue;
    double power = 0.0;
    for (double s : f.symbols) power += s * s;
    power /= static_cast<double>(f.symbols.size());
    worst = std::max(worst, std::abs(power - 1.0));
    ++frames;
  }
  return {worst <= 1e-9, Fmt("10000 frames, max |mean power - 1| %.1e", worst)};
}

// 6. AWGN variance and whiteness.
Outcome ChannelStatistics() {
  constexpr std::size_t kN = 1000000;
  SymbolFrame zero;
  zero.symbols.assign(kN, 0.0);
  bool ok = true;
  std::string detail;
  for (double snr : {-3.0, 0.0, 3.0, 5.0}) {
    const SymbolFrame rx = Transmit(zero, {snr, 6000 + static_cast<std::uint64_t>(snr + 10)});
    double mean = 0.0;
    for (double v : rx.symbols) mean += v;
    mean /= kN;
    double var = 0.0, lag = 0.0;
    for (std::size_t i = 0; i < kN; ++i) {
      const double d = rx.symbols[i] - mean;
      var += d * d;
      if (i + 1 < kN) lag += d * (rx.symbols[i + 1] - mean);
    }
    const double rho = lag / var;
    var /= kN;
    const double target = std::pow(10.0, -snr / 10.0);
    const double rel = std::abs(var / target - 1.0);
    ok &= rel < 0.02 && std::abs(rho) < 0.01;
    detail += Fmt("%s%g dB: var err %.2f%%, rho %.4f", detail.empty() ? "" : "; ",
                  snr, 100.0 * rel, rho);
  }
  return {ok, detail};
}

// 7. Payload never shrinks as eta grows.
Outcome RateMonotonicity() {
  const TaskCriteria crit = PedestrianCriteria();
  int violations = 0, curves = 0;
  for (int f = 0; f < 20; ++f) {
    const LoadedScene scene = PedestrianFixture(700 + f, 96 + 8 * (f % 4));
    for (Scheme scheme : {Scheme::kInscom, Scheme::kNtsccLike, Scheme::kUniform}) {
      std::int64_t prev = -1;
      for (double eta : EtaGrid()) {
        TrialParams p;
        p.scheme = scheme;
        p.eta = eta;
        const std::int64_t n = RunPipeline(scene, crit, p).payload_symbols;
        violations += n < prev;
        prev = n;
      }
      ++curves;
    }
  }
  return {violations == 0,
          Fmt("20 fixtures x 3 schemes x 15 eta, %d violations over %d curves",
              violations, curves)};
}

// 8. Noiseless distortion equals the energy of the dropped coefficients.
Outcome ParsevalAccounting() {
  Rng rng(108);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int w = 8 * UniformInt(rng, 1, 6), h = 8 * UniformInt(rng, 1, 6);
    const int c = trial % 2 ? 3 : 1;
    const Image img = trial % 4 == 0 ? inscom_test::RandomImage(rng, w, h, c)
                                     : inscom_test::RandomNaturalImage(rng, w, h, c);
    const BlockLatents lat = Analysis(img);
    const RateAllocation alloc = Allocate(lat, {UniformReal(rng, 0.05, 0.9), 1});
    const std::vector<double> rec =
        SynthesizeSamples(ReconstructLatents(Encode(lat, alloc), lat.geometry));
    const FrameGeometry& g = lat.geometry;
    for (int b = 0; b < g.block_count(); ++b) {
      const int bx = b % g.blocks_x, by = b / g.blocks_x;
      double dropped = 0.0, sse = 0.0;
      for (int ch = 0; ch < c; ++ch) {
        for (int z = alloc.k[b]; z < kBlockArea; ++z) {
          dropped += std::pow(lat.Block(b, ch)[kZigZag[z]], 2);
        }
        for (int y = 0; y < 8; ++y) {
          for (int x = 0; x < 8; ++x) {
            const int row = by * 8 + y, col = bx * 8 + x;
            sse += std::pow(rec[(static_cast<std::size_t>(row) * w + col) * c + ch] -
                                img.at(row, col, ch), 2);
          }
        }
      }
      const double rel = dropped > 0.0 ? std::abs(sse - dropped) / dropped
                                       : std::abs(sse) / (64.0 * 255 * 255);
      worst = std::max(worst, rel);
    }
  }
  return {worst <= 1e-6,
          Fmt("100 images, max per-block relative error %.1e", worst)};
}

// 9. Mean TC-PSNR rises with eta and with SNR.
Outcome QualityMonotonicity() {
  const TaskCriteria crit = PedestrianCriteria();
  const std::vector<double> etas = EtaGrid();
  const std::vector<double> snrs = {-3.0, 0.0, 3.0};
  int bad_eta_curves = 0, snr_violations = 0, total_adjacent = 0;
  double worst_drop = 0.0, gain_lo = 1e9, gain_hi = -1e9;
  for (int f = 0; f < 10; ++f) {
    const LoadedScene scene = PedestrianFixture(200 + f, 96);
    std::vector<std::vector<double>> mean(snrs.size());
    for (std::size_t s = 0; s < snrs.size(); ++s) {
      for (double eta : etas) {
        mean[s].push_back(MeanTcPsnr(scene, crit, Scheme::kInscom, eta, snrs[s], 50));
      }
      int violations = 0;
      double drop = 0.0;
      for (std::size_t i = 1; i < etas.size(); ++i) {
        if (mean[s][i] < mean[s][i - 1]) {
          ++violations;
          drop = std::max(drop, mean[s][i - 1] - mean[s][i]);
        }
      }
      total_adjacent += violations;
      worst_drop = std::max(worst_drop, drop);
      bad_eta_curves += violations > 1 || drop > 0.05;
      gain_lo = std::min(gain_lo, mean[s].back() - mean[s].front());
      gain_hi = std::max(gain_hi, mean[s].back() - mean[s].front());
    }
    for (std::size_t i = 0; i < etas.size(); ++i) {
      for (std::size_t s = 1; s < snrs.size(); ++s) {
        snr_violations += mean[s][i] < mean[s - 1][i];
      }
    }
  }
  return {bad_eta_curves == 0 && snr_violations == 0,
          Fmt("30 curves: %d failing, %d adjacent drops (worst %.3f dB), "
              "eta 0.1->1.5 gain %.2f..%.2f dB; %d SNR-order violations",
              bad_eta_curves, total_adjacent, worst_drop, gain_lo, gain_hi,
              snr_violations)};
}

// 80x80 textured scene whose single pedestrian covers 10 of 100 blocks.
void WriteTenPercentFixture(const std::filesystem::path& dir) {
  constexpr int kSize = 80;
  Rng rng(110);
  Image img(kSize, kSize, 3);
  SegmentationMap seg{kSize, kSize,
                      std::vector<std::uint8_t>(kSize * kSize, 0),
                      {{0, "street"}, {1, "woman"}}};
  const PixelRect person{24, 16, 40, 56};  // 2 x 5 blocks
  for (int row = 0; row < kSize; ++row) {
    for (int col = 0; col < kSize; ++col) {
      const bool in = person.Contains(row, col);
      seg.labels[row * kSize + col] = in;
      const int base[3] = {in ? 190 : 90, in ? 110 : 95, in ? 80 : 100};
      for (int ch = 0; ch < 3; ++ch) {
        img.at(row, col, ch) =
            static_cast<std::uint8_t>(base[ch] + UniformInt(rng, -24, 24));
      }
    }
  }
  AnnotationRecord rec;
  rec.id = "ten_percent";
  rec.image_path = "ten_percent.ppm";
  rec.seg_path = "ten_percent_seg.pgm";
  rec.width = rec.height = kSize;
  rec.class_table = seg.class_table;
  rec.graph.instances = {{1, "woman", 0.9, ExactBox(person, kSize, kSize), {}},
                         {2, "street", 0.9, {0, 0, 1, 1}, {}}};
  rec.graph.triplets = {{1, "walking on", 2}};
  WriteImage(img, dir / rec.image_path);
  WriteSegmentation(seg, dir / rec.seg_path);
  WriteFileBytes(dir / "ten_percent.json", SerializeAnnotation(rec));
  WriteFileBytes(dir / "manifest.json", R"(["ten_percent.json"])");
  WriteFileBytes(dir / "criteria.json",
                 SerializeCriteria({"t", {"woman"}, {{"walking on", "street"}}}));
}

// 10. Volume reduction when the task mask touches 10% of blocks.
Outcome VolumeReduction() {
  inscom_test::TempDir dir("volume");
  WriteTenPercentFixture(dir.path());
  const SweepConfig cfg = ParseSweepConfig(R"({
    "manifest": "manifest.json", "criteria": "criteria.json",
    "output": "volume.csv",
    "eta_grid": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0,
                 1.1, 1.2, 1.3, 1.4, 1.5],
    "snr_grid_db": [-3, 0, 3], "schemes": ["inscom", "ntscc_like"],
    "seeds": [0, 1, 2, 3, 4]
  })", dir.path());
  const auto start = std::chrono::steady_clock::now();
  const std::vector<TrialResult> rows = Sweep(cfg);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();

  const LoadedScene scene = LoadSceneFile(dir.path() / "ten_percent.json");
  const TaskMaskResult task = BuildTaskMask(
      scene.record.graph, scene.segmentation, scene.image,
      ParseCriteria(ReadFileBytes(dir.path() / "criteria.json")));
  const int coverage = Analysis(task.masked.image, task.masked.mask).CodedCount();

  // Rows are ordered scheme -> eta -> snr -> seed; one row per eta suffices.
  const std::size_t per_scheme = rows.size() / 2;
  const std::size_t stride = per_scheme / 15;
  double worst = 0.0, worst_total = 0.0;
  for (std::size_t e = 0; e < 15; ++e) {
    const TrialResult& ins = rows[e * stride];
    const TrialResult& ref = rows[per_scheme + e * stride];
    worst = std::max(worst, double(ins.payload_symbols) / ref.payload_symbols);
    worst_total = std::max(
        worst_total, double(ins.payload_symbols + ins.side_symbol_equiv) /
                         (ref.payload_symbols + ref.side_symbol_equiv));
  }
  return {coverage == 10 && worst <= 0.15 && secs < 60.0,
          Fmt("coverage %d/100 blocks, worst payload ratio %.3f (%.3f with side "
              "info) over 15 eta, sweep of %zu trials %.1f s",
              coverage, worst, worst_total, rows.size(), secs)};
}

double BlockCoverage(const LoadedScene& scene, const TaskCriteria& crit) {
  const TaskMaskResult task =
      BuildTaskMask(scene.record.graph, scene.segmentation, scene.image, crit);
  const BlockLatents lat = Analysis(task.masked.image, task.masked.mask);
  return double(lat.CodedCount()) / lat.geometry.block_count();
}

// ntscc_like eta whose payload lands closest to `target`.
double MatchEta(const LoadedScene& scene, std::int64_t target,
                std::int64_t* matched) {
  const BlockLatents lat = Analysis(scene.image);
  auto payload = [&](double eta) {
    return Allocate(lat, {eta, 1}).TotalCoefficients() * lat.geometry.channels;
  };
  double lo = 1e-4, hi = 4.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (payload(mid) < target ? lo : hi) = mid;
  }
  const bool pick_hi = std::abs(payload(hi) - target) <= std::abs(payload(lo) - target);
  *matched = payload(pick_hi ? hi : lo);
  return pick_hi ? hi : lo;
}

// 11. Inscom beats ntscc_like on task regions at a matched budget.
Outcome QualityOrdering() {
  const TaskCriteria crit = PedestrianCriteria();
  int cases = 0, wins = 0, unmatched = 0;
  double min_gain = 1e9, max_gain = -1e9, max_cov = 0.0, worst_match = 0.0;
  for (int f = 0; f < 10; ++f) {
    const LoadedScene scene = PedestrianFixture(300 + f, 128);
    const double cov = BlockCoverage(scene, crit);
    if (cov > 0.25) continue;
    max_cov = std::max(max_cov, cov);
    for (double eta : {0.5, 1.0}) {
      TrialParams p;
      p.eta = eta;
      const std::int64_t budget = RunPipeline(scene, crit, p).payload_symbols;
      std::int64_t matched = 0;
      const double ref_eta = MatchEta(scene, budget, &matched);
      const double mismatch = std::abs(double(matched) / budget - 1.0);
      worst_match = std::max(worst_match, mismatch);
      for (double snr : {-3.0, 0.0, 3.0}) {
        ++cases;
        if (mismatch > 0.05) {
          ++unmatched;
          continue;
        }
        const double gain =
            MeanTcPsnr(scene, crit, Scheme::kInscom, eta, snr, 50) -
            MeanTcPsnr(scene, crit, Scheme::kNtsccLike, ref_eta, snr, 50);
        wins += gain > 0.0;
        min_gain = std::min(min_gain, gain);
        max_gain = std::max(max_gain, gain);
      }
    }
  }
  return {cases > 0 && wins == cases,
          Fmt("%d/%d cases positive (gain %.2f..%.2f dB), %d unmatched, worst "
              "budget mismatch %.1f%%, max coverage %.0f%%",
              wins, cases, min_gain, max_gain, unmatched, 100.0 * worst_match,
              100.0 * max_cov)};
}

// 12. Byte-identical CSV across reruns and thread counts.
Outcome Determinism() {
  inscom_test::TempDir dir("determinism");
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    WriteSyntheticScene(
        GenerateSynthetic(SyntheticSpec{.id = "d" + std::to_string(seed),
                                        .seed = seed}),
        dir.path());
  }
  WriteFileBytes(dir.path() / "manifest.json",
                 R"(["d1.json", "d2.json", "d3.json"])");
  WriteFileBytes(dir.path() / "criteria.json",
                 SerializeCriteria({"t", {"man", "woman", "car"},
                                    {{"walking on", "street"}, {"on", "street"},
                                     {"walking on", "sidewalk"}, {"on", "sidewalk"}}}));
  auto run = [&](const std::string& out, int threads) {
    SweepConfig cfg = ParseSweepConfig(
        R"({"manifest": "manifest.json", "criteria": "criteria.json",
            "output": ")" + out + R"(", "eta_grid": [0.2, 0.6, 1.0],
            "snr_grid_db": [-3, 0, 3], "schemes": ["inscom", "ntscc_like", "uniform"],
            "seeds": [0, 1, 2], "master_seed": 77})",
        dir.path());
    cfg.threads = threads;
    Sweep(cfg);
    return ReadFileBytes(cfg.output);
  };
  const std::string a = run("a.csv", 1);
  const std::string b = run("b.csv", 1);
  const std::string c = run("c.csv", 4);
  return {a == b && a == c && a.size() > 100,
          Fmt("3 runs of 243 rows, %zu bytes each, identical: %s", a.size(),
              a == b && a == c ? "yes" : "no")};
}

}  // namespace
}  // namespace inscom

int main() {
  using inscom::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"filtering oracle equivalence", inscom::FilteringOracle},
      {"worked pedestrian example", inscom::WorkedExample},
      {"mask algebra", inscom::MaskAlgebra},
      {"metric reduction identity", inscom::MetricReduction},
      {"power normalization", inscom::PowerNormalization},
      {"channel statistics", inscom::ChannelStatistics},
      {"rate monotonicity", inscom::RateMonotonicity},
      {"Parseval distortion accounting", inscom::ParsevalAccounting},
      {"quality monotonicity", inscom::QualityMonotonicity},
      {"volume reduction", inscom::VolumeReduction},
      {"quality ordering at matched budget", inscom::QualityOrdering},
      {"sweep determinism", inscom::Determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s  %2zu. %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
