#include "inscom/image.h"

#include <algorithm>
#include <string>
#include <utility>

#include "inscom/error.h"

namespace inscom {
namespace {

void CheckDims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

Image::Image(int width, int height, int channels)
    : Image(width, height, channels,
            std::vector<std::uint8_t>(static_cast<std::size_t>(width > 0 ? width : 0) *
                                      (height > 0 ? height : 0) *
                                      (channels > 0 ? channels : 0))) {}

Image::Image(int width, int height, int channels,
             std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), channels_(channels),
      pixels_(std::move(pixels)) {
  CheckDims(width, height);
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "channels must be 1 or 3, got " + std::to_string(channels));
  }
  const std::size_t expected =
      static_cast<std::size_t>(width) * height * channels;
  if (pixels_.size() != expected) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pixel buffer holds " + std::to_string(pixels_.size()) +
                    " samples, expected " + std::to_string(expected));
  }
}

Mask::Mask(int width, int height, bool value)
    : width_(width), height_(height) {
  CheckDims(width, height);
  bits_.assign(static_cast<std::size_t>(width) * height, value ? 1 : 0);
}

Mask::Mask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  CheckDims(width, height);
  if (bits_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask holds " + std::to_string(bits_.size()) +
                    " entries, expected " +
                    std::to_string(static_cast<std::size_t>(width) * height));
  }
  if (std::any_of(bits_.begin(), bits_.end(),
                  [](std::uint8_t b) { return b > 1; })) {
    throw Error(ErrorCode::kInvalidMaskValue, "mask entries must be 0 or 1");
  }
}

std::size_t Mask::Popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

}  // namespace inscom
