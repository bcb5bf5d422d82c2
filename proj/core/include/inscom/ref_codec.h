#ifndef INSCOM_REF_CODEC_H_
#define INSCOM_REF_CODEC_H_

// Reference analog block-transform codec.
//
// Encoding: edge-pad to a multiple of 8, center by -128, orthonormal 8x8
// DCT-II per block and channel, allocate a per-block coefficient budget k_b
// from an activity proxy H_b = log2(1 + E_b) scaled by eta, emit the first
// k_b zig-zag coefficients as raw real symbols, and scale the whole frame
// to unit mean power. Symbols are ordered frequency-major: zig-zag position
// 0 of every coded block (channels interleaved), then position 1 of every
// block with k_b > 1, and so on. Side information (coded flags, k_b, gain) travels on
// an error-free side channel.
//
// Decoding inverts the power scaling, zero-fills missing coefficients,
// applies the inverse DCT and re-centers. Uncoded blocks decode to 0.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "inscom/image.h"

namespace inscom {

inline constexpr int kBlockSize = 8;
inline constexpr int kBlockArea = kBlockSize * kBlockSize;

// kZigZag[i] is the natural (row-major) index of the i-th coefficient in
// zig-zag scan order.
extern const std::array<int, kBlockArea> kZigZag;

void ForwardDct8x8(std::span<const double, kBlockArea> in,
                   std::span<double, kBlockArea> out);
void InverseDct8x8(std::span<const double, kBlockArea> in,
                   std::span<double, kBlockArea> out);

enum class RateScheme { kVariable, kUniform };

struct RateConfig {
  double eta = 1.0;
  int k_min = 1;
  RateScheme scheme = RateScheme::kVariable;

  // Throws Error(kInvalidArgument) unless eta > 0 and 1 <= k_min <= 64.
  void Validate() const;
};

struct FrameGeometry {
  int width = 0;   // original, before padding
  int height = 0;
  int channels = 0;
  int blocks_x = 0;
  int blocks_y = 0;

  int block_count() const { return blocks_x * blocks_y; }
  int padded_width() const { return blocks_x * kBlockSize; }
  int padded_height() const { return blocks_y * kBlockSize; }

  static FrameGeometry ForImage(int width, int height, int channels);
  friend bool operator==(const FrameGeometry&, const FrameGeometry&) = default;
};

struct BlockLatents {
  FrameGeometry geometry;
  // Layout [block][channel][coefficient], natural coefficient order, blocks
  // in row-major grid order.
  std::vector<double> coefficients;
  // One flag per block, shared by all channels.
  std::vector<std::uint8_t> coded;

  std::span<const double, kBlockArea> Block(int block, int channel) const {
    return std::span<const double, kBlockArea>(
        coefficients.data() + Offset(block, channel), kBlockArea);
  }
  std::span<double, kBlockArea> Block(int block, int channel) {
    return std::span<double, kBlockArea>(
        coefficients.data() + Offset(block, channel), kBlockArea);
  }
  int CodedCount() const;

 private:
  std::size_t Offset(int block, int channel) const {
    return (static_cast<std::size_t>(block) * geometry.channels + channel) *
           kBlockArea;
  }
};

struct RateAllocation {
  // Coefficients per block and channel; 0 marks an uncoded block.
  std::vector<int> k;
  // Activity proxy H_b in bits; 0 for blocks that were not coded.
  std::vector<double> entropy;

  int CodedCount() const;
  std::int64_t TotalCoefficients() const;
};

struct SideInfo {
  std::vector<std::uint8_t> coded;  // per block
  std::vector<int> k;               // per coded block, in block order

  friend bool operator==(const SideInfo&, const SideInfo&) = default;
};

// Side-channel layout: 1 bit per block, 6 bits per coded block, 32 bits gain.
inline constexpr int kCodedFlagBits = 1;
inline constexpr int kRateFieldBits = 6;
inline constexpr int kGainBits = 32;

struct SymbolFrame {
  std::vector<double> symbols;
  double gain = 1.0;
  SideInfo side_info;
  std::int64_t side_bits = 0;

  bool empty() const { return symbols.empty(); }
  friend bool operator==(const SymbolFrame&, const SymbolFrame&) = default;
};

// Blocks are coded when `mask` is absent or the block holds a set mask bit.
// In a coded block that the mask only partly covers, samples outside the
// mask are replaced by the per-channel mean of the samples inside it before
// the transform.
BlockLatents Analysis(const Image& img);
BlockLatents Analysis(const Image& img, const Mask& mask);

// Throws Error(kNoCodedBlocks) for the variable scheme when no block is
// coded. The uniform scheme codes every block regardless of the mask.
RateAllocation Allocate(const BlockLatents& lat, const RateConfig& cfg);

SymbolFrame Encode(const BlockLatents& lat, const RateAllocation& alloc);

// Frame for a fully masked image: no symbols, all coded flags clear.
SymbolFrame EmptyFrame(const FrameGeometry& geometry);

struct DecoderOptions {
  // Channel SNR known to the receiver. When set, received symbols are
  // grouped by (channel, frequency diagonal u + v). The DC group is shrunk
  // toward its mean and AC groups toward zero by the Wiener factor
  // v / (v + sigma^2), with the signal variance v estimated from the group
  // (sparse high diagonals pool with lower ones). Unset means a noiseless
  // channel and plain inversion of the gain.
  std::optional<double> snr_db;
};

// Receiver-side coefficient estimate. Throws Error(kMalformedSideInfo) when
// the side information disagrees with the geometry or the symbol count.
BlockLatents ReconstructLatents(const SymbolFrame& frame,
                                const FrameGeometry& geometry,
                                const DecoderOptions& options = {});

// Real-valued synthesis over the padded raster, re-centered by +128 but
// neither rounded nor clamped. Layout matches Image (interleaved channels).
std::vector<double> SynthesizeSamples(const BlockLatents& lat);

Image Decode(const SymbolFrame& frame, const FrameGeometry& geometry,
             const DecoderOptions& options = {});

}  // namespace inscom

#endif  // INSCOM_REF_CODEC_H_
