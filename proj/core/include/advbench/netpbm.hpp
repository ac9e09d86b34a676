#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "advbench/image.hpp"

namespace advbench {

/// Decode a binary PGM (P5, 1 channel) or PPM (P6, 3 channels) with maxval 255.
/// Header tokens may be separated by any whitespace and '#' comments; exactly
/// one whitespace byte separates the maxval from the payload. Trailing bytes
/// after the payload are rejected.
ImageTensor netpbm_read(std::span<const std::uint8_t> bytes);

/// Encode to the canonical byte layout "P5\n<w> <h>\n255\n" (or "P6") followed
/// by the raw payload, so equal tensors always serialize to equal bytes.
std::vector<std::uint8_t> netpbm_write(const ImageTensor& image);

ImageTensor read_image_file(const std::string& path);
void write_image_file(const ImageTensor& image, const std::string& path);

}  // namespace advbench
