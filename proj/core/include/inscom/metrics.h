#ifndef INSCOM_METRICS_H_
#define INSCOM_METRICS_H_

#include <cstdint>
#include <string>

#include "inscom/image.h"
#include "inscom/ref_codec.h"

namespace inscom {

inline constexpr double kPeakValue = 255.0;
// Side information is charged at this many bits per channel symbol.
inline constexpr int kSideBitsPerSymbol = 4;

double Mse(const Image& a, const Image& b);

// 10 log10(255^2 / MSE); +infinity when the images are identical.
// Throws Error(kDimensionMismatch).
double Psnr(const Image& a, const Image& b);

// Squared error averaged over every channel sample of the masked pixels.
// Throws Error(kEmptyMask) when the mask has no set bit.
double MseTc(const Image& a, const Image& b, const Mask& mask);

double TcPsnr(const Image& a, const Image& b, const Mask& mask);

struct RateAccount {
  std::int64_t payload_symbols = 0;
  std::int64_t side_symbol_equiv = 0;
  double cbr = 0.0;

  friend bool operator==(const RateAccount&, const RateAccount&) = default;
};

RateAccount Account(const SymbolFrame& frame, int width, int height,
                    int channels);

struct TrialResult {
  std::string image_id;
  std::string scheme;
  double eta = 0.0;
  double snr_db = 0.0;
  std::int64_t seed = 0;
  std::int64_t payload_symbols = 0;
  std::int64_t side_symbol_equiv = 0;
  double cbr = 0.0;
  double psnr_db = 0.0;
  double tc_psnr_db = 0.0;
  std::int64_t tc_pixel_count = 0;
  // Empty for a clean trial; otherwise a warning or the error that stopped it.
  std::string note;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

}  // namespace inscom

#endif  // INSCOM_METRICS_H_
