#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "advbench/image.hpp"

namespace advbench {

// Parameter blocks per transform kind. Range validation happens in the
// TransformSpec factories and again in the per-op entry points.
struct BrightnessParams {
  int delta = 0;  // [-255, 255]
};
struct ContrastParams {
  double factor = 1.0;  // [0, 4]
};
struct GaussianBlurParams {
  double sigma = 0.0;  // [0, 8]
};
struct GaussianNoiseParams {
  double sigma = 0.0;  // [0, 64]
  std::uint64_t seed = 0;
};
struct JpegParams {
  int quality = 100;  // [1, 100]
};
struct PhotoSimParams {
  double warp_strength = 0.0;  // [0, 0.1], corner shift as fraction of side
  double jitter = 0.0;         // [0, 1]
  std::uint64_t seed = 0;
};

struct TransformSpec;

struct ComposeParams {
  std::vector<TransformSpec> children;  // applied left to right, never empty
};

/// One deterministic (seeded where stochastic) image transformation.
struct TransformSpec {
  std::variant<BrightnessParams, ContrastParams, GaussianBlurParams, GaussianNoiseParams,
               JpegParams, PhotoSimParams, ComposeParams>
      op;

  static TransformSpec brightness(int delta);
  static TransformSpec contrast(double factor);
  static TransformSpec gaussian_blur(double sigma);
  static TransformSpec gaussian_noise(double sigma, std::uint64_t seed);
  static TransformSpec jpeg(int quality);
  static TransformSpec photo_sim(double warp_strength, double jitter, std::uint64_t seed);
  static TransformSpec compose(std::vector<TransformSpec> children);

  /// Kind tag: brightness|contrast|gaussian_blur|gaussian_noise|jpeg|photo_sim|compose.
  std::string kind() const;
  /// Copy of this spec with the given seed installed on every stochastic node.
  TransformSpec with_seed(std::uint64_t seed) const;
};

/// Per pixel clamp(v + delta, 0, 255).
ImageTensor brightness(const ImageTensor& image, int delta);

/// Per pixel clamp(round(128 + factor * (v - 128)), 0, 255), with
/// round-half-away-from-zero.
ImageTensor contrast(const ImageTensor& image, double factor);

/// Separable Gaussian convolution, kernel radius ceil(3*sigma), weights
/// exp(-i^2 / (2 sigma^2)) normalized to sum 1, clamp-to-edge borders, one
/// final rounding. sigma below 0.01 is the identity.
ImageTensor gaussian_blur(const ImageTensor& image, double sigma);

/// Normalized kernel used by gaussian_blur (center at index radius).
std::vector<double> gaussian_kernel(double sigma);

/// Adds i.i.d. Normal(0, sigma^2) noise. Draws come from the counter RNG
/// keyed by pixel index, so the result is independent of traversal order.
ImageTensor gaussian_noise(const ImageTensor& image, double sigma, std::uint64_t seed);

/// Baseline-JPEG-style lossy round trip: -128 level shift, per-channel 8x8
/// DCT-II, quantization with the standard luminance table scaled by the
/// conventional quality factor, dequantize, inverse DCT, +128, clamp/round.
/// Edge blocks are padded by edge replication. No entropy coding or chroma
/// subsampling; all channels use the luminance table.
ImageTensor jpeg_roundtrip(const ImageTensor& image, int quality);

/// Quantization table for the given quality (row-major 8x8). Scale factor is
/// 5000/q below 50 and 200 - 2q otherwise; entries clamp to [1, 255].
std::array<int, 64> jpeg_quant_table(int quality);

/// 3x3 homography H (H[2][2] = 1) mapping src[i] -> dst[i], solved from the
/// standard 8x8 linear system. Throws ValueError if the system is singular.
using Point2 = std::array<double, 2>;
using Mat3 = std::array<std::array<double, 3>, 3>;
Mat3 solve_homography(const std::array<Point2, 4>& src, const std::array<Point2, 4>& dst);

/// Synthetic stand-in for a print/photograph/crop pipeline: seeded corner
/// displacements up to warp_strength * side, homography resampling with
/// bilinear interpolation and clamp-to-edge, then brightness/contrast jitter
/// and Gaussian noise (sigma = 4 * jitter), with one clamp/round at the end.
ImageTensor photo_sim(const ImageTensor& image, double warp_strength, double jitter,
                      std::uint64_t seed);

/// Dispatch on the spec kind; compose applies children left to right.
ImageTensor apply(const TransformSpec& spec, const ImageTensor& image);

}  // namespace advbench
