#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "advbench/image.hpp"

namespace advbench {

enum class Split { train, test };

std::string to_string(Split split);
Split split_from_string(const std::string& name);

/// Labeled images of one uniform shape. Immutable after construction.
struct Dataset {
  std::vector<ImageTensor> images;
  std::vector<Label> labels;
  int num_classes = 0;
  Split split = Split::train;

  std::size_t size() const noexcept { return images.size(); }
};

/// Validates the Dataset invariants; throws ValueError on violation.
void validate(const Dataset& dataset);

/// Decode an IDX3 image file (magic 0x00000803) plus an IDX1 label file
/// (magic 0x00000801), both big-endian. Images come out as 1-channel tensors;
/// num_classes is 1 + max label.
Dataset load_idx(std::span<const std::uint8_t> image_bytes,
                 std::span<const std::uint8_t> label_bytes, Split split = Split::train);

Dataset load_idx_files(const std::string& image_path, const std::string& label_path,
                       Split split = Split::train);

inline constexpr int kSynthNumClasses = 10;

/// Names of the ten rendered shape classes, index == class label.
std::span<const char* const> synth_class_names();

/// Fully procedural 10-class grayscale dataset: antialiased shapes with
/// seeded position / scale / foreground-level jitter. A pure function of
/// (seed, count_per_class, side); labels cycle 0..9 so every class appears
/// exactly count_per_class times. Requires side >= 16 and count_per_class >= 1.
Dataset synth_shapes(std::uint64_t seed, int count_per_class, int side,
                     Split split = Split::train);

}  // namespace advbench
