#include "inscom/channel.h"

#include <cmath>
#include <numbers>
#include <string>

#include "inscom/error.h"
#include "inscom/random.h"

namespace inscom {
namespace {

// Box-Muller pair for one Philox block.
void NormalPair(const Philox4x32& gen, std::uint64_t pair_index, double& z0,
                double& z1) {
  const auto r = gen({static_cast<std::uint32_t>(pair_index),
                      static_cast<std::uint32_t>(pair_index >> 32), 0u, 0u});
  const std::uint64_t a = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
  const std::uint64_t b = (static_cast<std::uint64_t>(r[2]) << 32) | r[3];
  const double radius = std::sqrt(-2.0 * std::log(ToUnitOpenClosed(a)));
  const double theta = 2.0 * std::numbers::pi * ToUnitOpenClosed(b);
  z0 = radius * std::cos(theta);
  z1 = radius * std::sin(theta);
}

}  // namespace

double NoiseSigma(double snr_db) {
  return std::sqrt(std::pow(10.0, -snr_db / 10.0));
}

void FillStandardNormal(std::uint64_t seed, std::uint64_t offset,
                        std::span<double> out) {
  const Philox4x32 gen(seed);
  std::uint64_t pos = offset;
  std::size_t i = 0;
  while (i < out.size()) {
    double z[2];
    NormalPair(gen, pos / 2, z[0], z[1]);
    for (std::uint64_t lane = pos % 2; lane < 2 && i < out.size(); ++lane) {
      out[i++] = z[lane];
      ++pos;
    }
  }
}

SymbolFrame Transmit(const SymbolFrame& frame, const ChannelConfig& cfg) {
  if (!std::isfinite(cfg.snr_db)) {
    throw Error(ErrorCode::kInvalidArgument,
                "snr_db must be finite, got " + std::to_string(cfg.snr_db));
  }
  SymbolFrame out = frame;
  if (out.symbols.empty()) return out;
  const double sigma = NoiseSigma(cfg.snr_db);
  std::vector<double> noise(out.symbols.size());
  FillStandardNormal(cfg.seed, 0, noise);
  for (std::size_t i = 0; i < noise.size(); ++i) {
    out.symbols[i] += sigma * noise[i];
  }
  return out;
}

}  // namespace inscom
