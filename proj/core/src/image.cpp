#include "advbench/image.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace advbench {

namespace {

void check_shape_fields(int width, int height, int channels) {
  if (width <= 0 || height <= 0) {
    throw ValueError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw ValueError("channels must be 1 or 3, got " + std::to_string(channels));
  }
}

}  // namespace

ImageTensor::ImageTensor(int width, int height, int channels, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
  check_shape_fields(width, height, channels);
  const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
  if (pixels_.size() != expected) {
    throw ValueError("pixel array length " + std::to_string(pixels_.size()) +
                     " does not match shape (expected " + std::to_string(expected) + ")");
  }
}

ImageTensor ImageTensor::filled(int width, int height, int channels, std::uint8_t value) {
  check_shape_fields(width, height, channels);
  return ImageTensor(width, height, channels,
                     std::vector<std::uint8_t>(
                         static_cast<std::size_t>(width) * height * channels, value));
}

std::uint8_t ImageTensor::at(int x, int y, int c) const {
  if (x < 0 || x >= width_ || y < 0 || y >= height_ || c < 0 || c >= channels_) {
    throw ValueError("pixel index out of bounds");
  }
  return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
}

GradientImage::GradientImage(int width, int height, int channels, std::vector<double> values)
    : width_(width), height_(height), channels_(channels), values_(std::move(values)) {
  check_shape_fields(width, height, channels);
  const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
  if (values_.size() != expected) {
    throw ValueError("gradient array length does not match shape");
  }
  for (const double v : values_) {
    if (!std::isfinite(v)) {
      throw ValueError("gradient contains a non-finite entry");
    }
  }
}

int linf_distance(const ImageTensor& a, const ImageTensor& b) {
  if (!a.same_shape(b)) {
    throw ShapeError("linf_distance requires identical shapes");
  }
  int best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i]));
    if (d > best) best = d;
  }
  return best;
}

}  // namespace advbench
