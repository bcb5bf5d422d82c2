#ifndef INSCOM_CHANNEL_H_
#define INSCOM_CHANNEL_H_

#include <cstdint>
#include <span>

#include "inscom/ref_codec.h"

namespace inscom {

// Real-valued AWGN. SNR is per real symbol at unit average signal power.
struct ChannelConfig {
  double snr_db = 0.0;
  std::uint64_t seed = 0;
};

// sigma = sqrt(10^(-snr_db / 10)).
double NoiseSigma(double snr_db);

// Writes unit-variance Gaussian samples for stream positions
// [offset, offset + out.size()). Position i depends only on (seed, i).
void FillStandardNormal(std::uint64_t seed, std::uint64_t offset,
                        std::span<double> out);

// Adds N(0, sigma^2) noise to every symbol. Gain and side info pass through
// untouched. Throws Error(kInvalidArgument) for a non-finite SNR.
SymbolFrame Transmit(const SymbolFrame& frame, const ChannelConfig& cfg);

}  // namespace inscom

#endif  // INSCOM_CHANNEL_H_
