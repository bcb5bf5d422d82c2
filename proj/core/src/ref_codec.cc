#include "inscom/ref_codec.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "inscom/channel.h"
#include "inscom/error.h"

namespace inscom {

const std::array<int, kBlockArea> kZigZag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63,
};

namespace {

using Basis = std::array<double, kBlockArea>;

// basis[u * 8 + x] = alpha(u) * cos((2x + 1) u pi / 16)
const Basis& DctBasis() {
  static const Basis basis = [] {
    Basis b{};
    for (int u = 0; u < kBlockSize; ++u) {
      const double alpha = u == 0 ? std::sqrt(1.0 / kBlockSize)
                                  : std::sqrt(2.0 / kBlockSize);
      for (int x = 0; x < kBlockSize; ++x) {
        b[u * kBlockSize + x] =
            alpha * std::cos((2 * x + 1) * u * std::numbers::pi /
                             (2.0 * kBlockSize));
      }
    }
    return b;
  }();
  return basis;
}

// Applies the 1-D transform along rows, then columns. The forward pass uses
// the basis, the inverse its transpose.
void Separable(std::span<const double, kBlockArea> in,
               std::span<double, kBlockArea> out, bool forward) {
  const Basis& c = DctBasis();
  std::array<double, kBlockArea> tmp{};
  // Rows: tmp[y][v] = sum_x in[y][x] * K(v, x)
  for (int y = 0; y < kBlockSize; ++y) {
    for (int v = 0; v < kBlockSize; ++v) {
      double acc = 0.0;
      for (int x = 0; x < kBlockSize; ++x) {
        const double k = forward ? c[v * kBlockSize + x] : c[x * kBlockSize + v];
        acc += in[y * kBlockSize + x] * k;
      }
      tmp[y * kBlockSize + v] = acc;
    }
  }
  // Columns: out[u][v] = sum_y K(u, y) * tmp[y][v]
  for (int u = 0; u < kBlockSize; ++u) {
    for (int v = 0; v < kBlockSize; ++v) {
      double acc = 0.0;
      for (int y = 0; y < kBlockSize; ++y) {
        const double k = forward ? c[u * kBlockSize + y] : c[y * kBlockSize + u];
        acc += k * tmp[y * kBlockSize + v];
      }
      out[u * kBlockSize + v] = acc;
    }
  }
}

constexpr int kDiagonals = 2 * kBlockSize - 1;
constexpr std::size_t kMinGroupSize = 8;

// Noise power plus two standard errors of its sample estimate; a group only
// counts as signal when its measured power clears this floor.
double NoiseFloor(double noise_var, std::size_t n) {
  return noise_var * (1.0 + 2.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

int CeilDiv(int a, int b) { return (a + b - 1) / b; }

// Latent offset of every transmitted symbol, in stream order. The stream is
// frequency-major: zig-zag position z of every block with k_b > z, then
// z + 1. Low-frequency symbols therefore keep their stream positions when
// the rate grows, so a fixed noise seed perturbs them identically.
std::vector<std::size_t> StreamTargets(const std::vector<int>& k_per_block,
                                       int channels) {
  std::vector<std::size_t> targets;
  for (int z = 0; z < kBlockArea; ++z) {
    for (std::size_t b = 0; b < k_per_block.size(); ++b) {
      if (k_per_block[b] <= z) continue;
      for (int ch = 0; ch < channels; ++ch) {
        targets.push_back((b * channels + ch) * kBlockArea + kZigZag[z]);
      }
    }
  }
  return targets;
}

BlockLatents AnalyzeImpl(const Image& img, const Mask* mask) {
  BlockLatents lat;
  lat.geometry = FrameGeometry::ForImage(img.width(), img.height(),
                                         img.channels());
  const FrameGeometry& g = lat.geometry;
  lat.coefficients.assign(
      static_cast<std::size_t>(g.block_count()) * g.channels * kBlockArea, 0.0);
  lat.coded.assign(static_cast<std::size_t>(g.block_count()), 0);

  std::array<double, kBlockArea> samples{};
  for (int by = 0; by < g.blocks_y; ++by) {
    for (int bx = 0; bx < g.blocks_x; ++bx) {
      const int block = by * g.blocks_x + bx;
      bool coded = mask == nullptr;
      for (int y = 0; y < kBlockSize && !coded; ++y) {
        const int row = by * kBlockSize + y;
        if (row >= img.height()) break;
        for (int x = 0; x < kBlockSize; ++x) {
          const int col = bx * kBlockSize + x;
          if (col < img.width() && mask->at(row, col)) {
            coded = true;
            break;
          }
        }
      }
      lat.coded[block] = coded ? 1 : 0;

      // Boundary blocks of a masked image: samples outside the mask are
      // replaced by the mean of the samples inside it, so the transform does
      // not spend energy on the artificial edge to black.
      std::array<bool, kBlockArea> inside{};
      int inside_count = 0;
      for (int i = 0; i < kBlockArea; ++i) {
        const int row = std::min(by * kBlockSize + i / kBlockSize, img.height() - 1);
        const int col = std::min(bx * kBlockSize + i % kBlockSize, img.width() - 1);
        inside[i] = mask == nullptr || mask->at(row, col);
        inside_count += inside[i];
      }
      const bool fill = coded && inside_count < kBlockArea;

      for (int ch = 0; ch < g.channels; ++ch) {
        double inside_sum = 0.0;
        for (int y = 0; y < kBlockSize; ++y) {
          // Edge replication past the original borders.
          const int row = std::min(by * kBlockSize + y, img.height() - 1);
          for (int x = 0; x < kBlockSize; ++x) {
            const int col = std::min(bx * kBlockSize + x, img.width() - 1);
            const double v = static_cast<double>(img.at(row, col, ch)) - 128.0;
            samples[y * kBlockSize + x] = v;
            if (inside[y * kBlockSize + x]) inside_sum += v;
          }
        }
        if (fill) {
          const double mean = inside_sum / inside_count;
          for (int i = 0; i < kBlockArea; ++i) {
            if (!inside[i]) samples[i] = mean;
          }
        }
        ForwardDct8x8(samples, lat.Block(block, ch));
      }
    }
  }
  return lat;
}

int ClampK(double raw, int k_min) {
  const long rounded = std::lround(raw);
  return static_cast<int>(std::clamp<long>(rounded, k_min, kBlockArea));
}

std::int64_t SideBits(int blocks, int coded) {
  return static_cast<std::int64_t>(blocks) * kCodedFlagBits +
         static_cast<std::int64_t>(coded) * kRateFieldBits + kGainBits;
}

}  // namespace

void ForwardDct8x8(std::span<const double, kBlockArea> in,
                   std::span<double, kBlockArea> out) {
  Separable(in, out, /*forward=*/true);
}

void InverseDct8x8(std::span<const double, kBlockArea> in,
                   std::span<double, kBlockArea> out) {
  Separable(in, out, /*forward=*/false);
}

void RateConfig::Validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::kInvalidArgument,
                "eta must be a positive finite number, got " +
                    std::to_string(eta));
  }
  if (k_min < 1 || k_min > kBlockArea) {
    throw Error(ErrorCode::kInvalidArgument,
                "k_min must lie in [1, 64], got " + std::to_string(k_min));
  }
}

FrameGeometry FrameGeometry::ForImage(int width, int height, int channels) {
  FrameGeometry g;
  g.width = width;
  g.height = height;
  g.channels = channels;
  g.blocks_x = CeilDiv(width, kBlockSize);
  g.blocks_y = CeilDiv(height, kBlockSize);
  return g;
}

int BlockLatents::CodedCount() const {
  return static_cast<int>(std::count(coded.begin(), coded.end(), 1));
}

int RateAllocation::CodedCount() const {
  return static_cast<int>(
      std::count_if(k.begin(), k.end(), [](int v) { return v > 0; }));
}

std::int64_t RateAllocation::TotalCoefficients() const {
  return std::accumulate(k.begin(), k.end(), std::int64_t{0});
}

BlockLatents Analysis(const Image& img) { return AnalyzeImpl(img, nullptr); }

BlockLatents Analysis(const Image& img, const Mask& mask) {
  if (!mask.Matches(img)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask " + std::to_string(mask.width()) + "x" +
                    std::to_string(mask.height()) + " does not match image " +
                    std::to_string(img.width()) + "x" +
                    std::to_string(img.height()));
  }
  return AnalyzeImpl(img, &mask);
}

RateAllocation Allocate(const BlockLatents& lat, const RateConfig& cfg) {
  cfg.Validate();
  const int blocks = lat.geometry.block_count();
  RateAllocation alloc;
  alloc.k.assign(static_cast<std::size_t>(blocks), 0);
  alloc.entropy.assign(static_cast<std::size_t>(blocks), 0.0);

  const bool uniform = cfg.scheme == RateScheme::kUniform;
  double h_max = 0.0;
  bool any_coded = false;
  for (int b = 0; b < blocks; ++b) {
    if (!uniform && !lat.coded[b]) continue;
    any_coded = true;
    double energy = 0.0;
    for (int ch = 0; ch < lat.geometry.channels; ++ch) {
      const auto block = lat.Block(b, ch);
      for (int i = 1; i < kBlockArea; ++i) energy += block[i] * block[i];
    }
    alloc.entropy[b] = std::log2(1.0 + energy);
    h_max = std::max(h_max, alloc.entropy[b]);
  }
  if (!any_coded) {
    throw Error(ErrorCode::kNoCodedBlocks,
                "variable-rate allocation needs at least one coded block");
  }

  for (int b = 0; b < blocks; ++b) {
    if (uniform) {
      alloc.k[b] = ClampK(cfg.eta * kBlockArea, cfg.k_min);
    } else if (lat.coded[b]) {
      alloc.k[b] = h_max > 0.0
                       ? ClampK(cfg.eta * kBlockArea * alloc.entropy[b] / h_max,
                                cfg.k_min)
                       : cfg.k_min;
    }
  }
  return alloc;
}

SymbolFrame Encode(const BlockLatents& lat, const RateAllocation& alloc) {
  const FrameGeometry& g = lat.geometry;
  if (alloc.k.size() != static_cast<std::size_t>(g.block_count())) {
    throw Error(ErrorCode::kInvalidArgument,
                "allocation covers " + std::to_string(alloc.k.size()) +
                    " blocks, latents have " + std::to_string(g.block_count()));
  }
  SymbolFrame frame;
  frame.side_info.coded.assign(static_cast<std::size_t>(g.block_count()), 0);
  frame.symbols.reserve(static_cast<std::size_t>(alloc.TotalCoefficients()) *
                        g.channels);
  for (int b = 0; b < g.block_count(); ++b) {
    if (alloc.k[b] <= 0) continue;
    frame.side_info.coded[b] = 1;
    frame.side_info.k.push_back(alloc.k[b]);
  }
  for (std::size_t t : StreamTargets(alloc.k, g.channels)) {
    frame.symbols.push_back(lat.coefficients[t]);
  }

  // Sequential sum keeps the gain bit-reproducible.
  double power = 0.0;
  for (double s : frame.symbols) power += s * s;
  frame.gain = power > 0.0
                   ? std::sqrt(static_cast<double>(frame.symbols.size()) / power)
                   : 1.0;
  for (double& s : frame.symbols) s *= frame.gain;
  frame.side_bits = SideBits(g.block_count(),
                             static_cast<int>(frame.side_info.k.size()));
  return frame;
}

SymbolFrame EmptyFrame(const FrameGeometry& geometry) {
  SymbolFrame frame;
  frame.side_info.coded.assign(static_cast<std::size_t>(geometry.block_count()),
                               0);
  frame.side_bits = SideBits(geometry.block_count(), 0);
  return frame;
}

BlockLatents ReconstructLatents(const SymbolFrame& frame,
                                const FrameGeometry& geometry,
                                const DecoderOptions& options) {
  const SideInfo& side = frame.side_info;
  const int blocks = geometry.block_count();
  if (side.coded.size() != static_cast<std::size_t>(blocks)) {
    throw Error(ErrorCode::kMalformedSideInfo,
                "side info flags " + std::to_string(side.coded.size()) +
                    " blocks, geometry has " + std::to_string(blocks));
  }
  const auto coded_count = static_cast<std::size_t>(
      std::count_if(side.coded.begin(), side.coded.end(),
                    [](std::uint8_t f) { return f != 0; }));
  if (side.k.size() != coded_count) {
    throw Error(ErrorCode::kMalformedSideInfo,
                std::to_string(side.k.size()) + " rate fields for " +
                    std::to_string(coded_count) + " coded blocks");
  }
  std::int64_t expected = 0;
  for (int k : side.k) {
    if (k < 1 || k > kBlockArea) {
      throw Error(ErrorCode::kMalformedSideInfo,
                  "rate field " + std::to_string(k) + " outside [1, 64]");
    }
    expected += k;
  }
  expected *= geometry.channels;
  if (static_cast<std::int64_t>(frame.symbols.size()) != expected) {
    throw Error(ErrorCode::kMalformedSideInfo,
                "frame carries " + std::to_string(frame.symbols.size()) +
                    " symbols, side info implies " + std::to_string(expected));
  }
  if (!(frame.gain > 0.0) || !std::isfinite(frame.gain)) {
    throw Error(ErrorCode::kMalformedSideInfo,
                "gain must be positive and finite");
  }

  BlockLatents lat;
  lat.geometry = geometry;
  lat.coefficients.assign(
      static_cast<std::size_t>(blocks) * geometry.channels * kBlockArea, 0.0);
  lat.coded.assign(side.coded.begin(), side.coded.end());

  // Symbols are grouped by (channel, frequency diagonal u + v). The DC group
  // is shrunk toward its own mean, AC groups toward zero.
  const int channels = geometry.channels;
  std::vector<int> k_per_block(static_cast<std::size_t>(blocks), 0);
  std::size_t rate_index = 0;
  for (int b = 0; b < blocks; ++b) {
    if (side.coded[b]) k_per_block[b] = side.k[rate_index++];
  }
  const std::vector<std::size_t> target = StreamTargets(k_per_block, channels);
  std::vector<int> group_of(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const int ch = static_cast<int>(target[i] / kBlockArea % channels);
    const int natural = static_cast<int>(target[i] % kBlockArea);
    group_of[i] = ch * kDiagonals + natural / kBlockSize + natural % kBlockSize;
  }

  std::vector<double> estimate(frame.symbols.begin(), frame.symbols.end());
  if (options.snr_db) {
    const double sigma = NoiseSigma(*options.snr_db);
    const double noise_var = sigma * sigma;
    const std::size_t group_count =
        static_cast<std::size_t>(channels) * kDiagonals;
    std::vector<double> sum(group_count, 0.0), sum_sq(group_count, 0.0);
    std::vector<std::size_t> count(group_count, 0);
    for (std::size_t i = 0; i < estimate.size(); ++i) {
      const auto g = static_cast<std::size_t>(group_of[i]);
      sum[g] += frame.symbols[i];
      sum_sq[g] += frame.symbols[i] * frame.symbols[i];
      ++count[g];
    }

    std::vector<double> shift(group_count, 0.0), wiener(group_count, 1.0);
    for (int ch = 0; ch < channels; ++ch) {
      const std::size_t dc = static_cast<std::size_t>(ch) * kDiagonals;
      if (count[dc] >= 2) {
        const double n = static_cast<double>(count[dc]);
        const double mean = sum[dc] / n;
        const double var = std::max(sum_sq[dc] / n - mean * mean, 0.0);
        const double signal =
            std::max(var - NoiseFloor(noise_var, count[dc]), 0.0);
        shift[dc] = mean;
        wiener[dc] = signal / (signal + noise_var);
      }
      for (int d = 1; d < kDiagonals; ++d) {
        // Sparse high-frequency groups borrow statistics from lower
        // diagonals, which only overstates their variance.
        double pooled_sq = 0.0;
        std::size_t pooled_n = 0;
        for (int e = d; e >= 1 && pooled_n < kMinGroupSize; --e) {
          pooled_sq += sum_sq[dc + e];
          pooled_n += count[dc + e];
        }
        if (pooled_n == 0) continue;
        const double signal =
            std::max(pooled_sq / static_cast<double>(pooled_n) -
                         NoiseFloor(noise_var, pooled_n),
                     0.0);
        wiener[dc + d] = signal / (signal + noise_var);
      }
    }
    for (std::size_t i = 0; i < estimate.size(); ++i) {
      const auto g = static_cast<std::size_t>(group_of[i]);
      estimate[i] = shift[g] + wiener[g] * (frame.symbols[i] - shift[g]);
    }
  }

  const double inverse_gain = 1.0 / frame.gain;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    lat.coefficients[target[i]] = estimate[i] * inverse_gain;
  }
  return lat;
}

std::vector<double> SynthesizeSamples(const BlockLatents& lat) {
  const FrameGeometry& g = lat.geometry;
  const int pw = g.padded_width();
  std::vector<double> out(
      static_cast<std::size_t>(pw) * g.padded_height() * g.channels, 0.0);
  std::array<double, kBlockArea> samples{};
  for (int by = 0; by < g.blocks_y; ++by) {
    for (int bx = 0; bx < g.blocks_x; ++bx) {
      const int block = by * g.blocks_x + bx;
      for (int ch = 0; ch < g.channels; ++ch) {
        InverseDct8x8(lat.Block(block, ch), samples);
        for (int y = 0; y < kBlockSize; ++y) {
          const std::size_t row = static_cast<std::size_t>(by) * kBlockSize + y;
          for (int x = 0; x < kBlockSize; ++x) {
            const std::size_t col =
                static_cast<std::size_t>(bx) * kBlockSize + x;
            out[(row * pw + col) * g.channels + ch] =
                samples[y * kBlockSize + x] + 128.0;
          }
        }
      }
    }
  }
  return out;
}

Image Decode(const SymbolFrame& frame, const FrameGeometry& geometry,
             const DecoderOptions& options) {
  const BlockLatents lat = ReconstructLatents(frame, geometry, options);
  const std::vector<double> samples = SynthesizeSamples(lat);
  const int pw = geometry.padded_width();
  Image out(geometry.width, geometry.height, geometry.channels);
  for (int row = 0; row < geometry.height; ++row) {
    const int by = row / kBlockSize;
    for (int col = 0; col < geometry.width; ++col) {
      const int block = by * geometry.blocks_x + col / kBlockSize;
      if (!lat.coded[block]) continue;
      for (int ch = 0; ch < geometry.channels; ++ch) {
        const double v =
            samples[(static_cast<std::size_t>(row) * pw + col) *
                        geometry.channels + ch];
        out.at(row, col, ch) =
            static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return out;
}

}  // namespace inscom
