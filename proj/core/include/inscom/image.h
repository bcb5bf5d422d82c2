#ifndef INSCOM_IMAGE_H_
#define INSCOM_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace inscom {

// 8-bit raster, row-major, channels interleaved (RGBRGB... for color).
class Image {
 public:
  Image() = default;
  // Zero-filled image. channels must be 1 or 3.
  Image(int width, int height, int channels);
  Image(int width, int height, int channels, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t sample_count() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t at(int row, int col, int channel = 0) const {
    return pixels_[Index(row, col, channel)];
  }
  std::uint8_t& at(int row, int col, int channel = 0) {
    return pixels_[Index(row, col, channel)];
  }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  bool SameShape(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t Index(int row, int col, int channel) const {
    return (static_cast<std::size_t>(row) * width_ + col) * channels_ + channel;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Binary per-pixel mask; each entry is 0 or 1.
class Mask {
 public:
  Mask() = default;
  Mask(int width, int height, bool value = false);
  Mask(int width, int height, std::vector<std::uint8_t> bits);

  static Mask Full(int width, int height) { return Mask(width, height, true); }

  int width() const { return width_; }
  int height() const { return height_; }

  bool at(int row, int col) const {
    return bits_[static_cast<std::size_t>(row) * width_ + col] != 0;
  }
  void set(int row, int col, bool value) {
    bits_[static_cast<std::size_t>(row) * width_ + col] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::size_t Popcount() const;
  bool Any() const { return Popcount() > 0; }

  bool SameSize(const Mask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  bool Matches(const Image& image) const {
    return width_ == image.width() && height_ == image.height();
  }

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace inscom

#endif  // INSCOM_IMAGE_H_
