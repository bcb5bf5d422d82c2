#include "inscom/metrics.h"

#include <cmath>
#include <limits>
#include <string>

#include "inscom/error.h"

namespace inscom {
namespace {

void CheckShapes(const Image& a, const Image& b) {
  if (!a.SameShape(b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                    "x" + std::to_string(a.channels()) + " vs " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()) + "x" +
                    std::to_string(b.channels()));
  }
}

double ToDecibels(double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPeakValue * kPeakValue / mse);
}

}  // namespace

double Mse(const Image& a, const Image& b) {
  CheckShapes(a, b);
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = static_cast<double>(pa[i]) - pb[i];
    sum += d * d;
  }
  return sum / static_cast<double>(pa.size());
}

double Psnr(const Image& a, const Image& b) { return ToDecibels(Mse(a, b)); }

double MseTc(const Image& a, const Image& b, const Mask& mask) {
  CheckShapes(a, b);
  if (!mask.Matches(a)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask does not match image dimensions");
  }
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  const auto bits = mask.bits();
  const int c = a.channels();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t p = 0; p < bits.size(); ++p) {
    if (!bits[p]) continue;
    ++count;
    for (int ch = 0; ch < c; ++ch) {
      const double d = static_cast<double>(pa[p * c + ch]) - pb[p * c + ch];
      sum += d * d;
    }
  }
  if (count == 0) {
    throw Error(ErrorCode::kEmptyMask,
                "task-critical MSE is undefined for an empty mask");
  }
  return sum / (static_cast<double>(count) * c);
}

double TcPsnr(const Image& a, const Image& b, const Mask& mask) {
  return ToDecibels(MseTc(a, b, mask));
}

RateAccount Account(const SymbolFrame& frame, int width, int height,
                    int channels) {
  RateAccount acc;
  acc.payload_symbols = static_cast<std::int64_t>(frame.symbols.size());
  acc.side_symbol_equiv =
      (frame.side_bits + kSideBitsPerSymbol - 1) / kSideBitsPerSymbol;
  acc.cbr = static_cast<double>(acc.payload_symbols + acc.side_symbol_equiv) /
            (static_cast<double>(width) * height * channels);
  return acc;
}

}  // namespace inscom
