#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "advbench/errors.hpp"

namespace advbench {

/// Integer-pixel image, values in [0, 255]. Layout is row-major and
/// channel-interleaved: index (x, y, c) lives at (y * width + x) * channels + c,
/// which matches the netpbm payload order.
class ImageTensor {
 public:
  ImageTensor(int width, int height, int channels, std::vector<std::uint8_t> pixels);

  static ImageTensor filled(int width, int height, int channels, std::uint8_t value);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::uint8_t at(int x, int y, int c) const;
  std::uint8_t operator[](std::size_t i) const noexcept { return pixels_[i]; }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

  bool same_shape(const ImageTensor& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  friend bool operator==(const ImageTensor&, const ImageTensor&) = default;

 private:
  int width_;
  int height_;
  int channels_;
  std::vector<std::uint8_t> pixels_;
};

/// Class index into [0, num_classes) of the active dataset/model.
struct Label {
  int value = 0;
  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;
};

/// Real-valued tensor with the same shape as the image it was computed from.
/// Entries are finite by construction.
class GradientImage {
 public:
  GradientImage(int width, int height, int channels, std::vector<double> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  bool matches_shape(const ImageTensor& image) const noexcept {
    return width_ == image.width() && height_ == image.height() && channels_ == image.channels();
  }

 private:
  int width_;
  int height_;
  int channels_;
  std::vector<double> values_;
};

/// Maximum absolute per-pixel difference. Throws ShapeError on mismatch.
int linf_distance(const ImageTensor& a, const ImageTensor& b);

}  // namespace advbench
