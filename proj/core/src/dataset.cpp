#include "advbench/dataset.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>

#include "advbench/rng.hpp"

namespace advbench {

std::string to_string(Split split) { return split == Split::train ? "train" : "test"; }

Split split_from_string(const std::string& name) {
  if (name == "train") return Split::train;
  if (name == "test") return Split::test;
  throw ValueError("unknown split: " + name);
}

void validate(const Dataset& dataset) {
  if (dataset.images.size() != dataset.labels.size()) {
    throw ValueError("dataset image/label counts differ");
  }
  for (const Label& label : dataset.labels) {
    if (label.value < 0 || label.value >= dataset.num_classes) {
      throw ValueError("dataset label out of range");
    }
  }
  for (const ImageTensor& image : dataset.images) {
    if (!image.same_shape(dataset.images.front())) {
      throw ValueError("dataset images must share one shape");
    }
  }
}

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
         (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<std::uint32_t>(bytes[offset + 3]);
}

}  // namespace

Dataset load_idx(std::span<const std::uint8_t> image_bytes,
                 std::span<const std::uint8_t> label_bytes, Split split) {
  if (image_bytes.size() < 16) throw ParseError("IDX image file truncated (header)");
  if (label_bytes.size() < 8) throw ParseError("IDX label file truncated (header)");

  const std::uint32_t image_magic = read_be32(image_bytes, 0);
  if (image_magic != 0x00000803u) {
    throw ParseError("unexpected IDX magic in image file (want 0x00000803)");
  }
  const std::uint32_t label_magic = read_be32(label_bytes, 0);
  if (label_magic != 0x00000801u) {
    throw ParseError("unexpected IDX magic in label file (want 0x00000801)");
  }

  const std::uint32_t count = read_be32(image_bytes, 4);
  const std::uint32_t rows = read_be32(image_bytes, 8);
  const std::uint32_t cols = read_be32(image_bytes, 12);
  const std::uint32_t label_count = read_be32(label_bytes, 4);
  if (count != label_count) {
    throw ParseError("IDX count mismatch: " + std::to_string(count) + " images vs " +
                     std::to_string(label_count) + " labels");
  }
  if (rows == 0 || cols == 0) throw ParseError("IDX image dimensions must be positive");

  const std::size_t pixel_total = static_cast<std::size_t>(count) * rows * cols;
  if (image_bytes.size() != 16 + pixel_total) {
    throw ParseError("IDX image payload truncated or oversized");
  }
  if (label_bytes.size() != 8 + static_cast<std::size_t>(count)) {
    throw ParseError("IDX label payload truncated or oversized");
  }

  Dataset dataset;
  dataset.split = split;
  dataset.images.reserve(count);
  dataset.labels.reserve(count);
  int max_label = -1;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::size_t offset = 16 + static_cast<std::size_t>(i) * rows * cols;
    std::vector<std::uint8_t> pixels(image_bytes.begin() + offset,
                                     image_bytes.begin() + offset + rows * cols);
    dataset.images.emplace_back(static_cast<int>(cols), static_cast<int>(rows), 1,
                                std::move(pixels));
    const int label = label_bytes[8 + i];
    dataset.labels.push_back(Label{label});
    max_label = std::max(max_label, label);
  }
  dataset.num_classes = max_label + 1;
  validate(dataset);
  return dataset;
}

Dataset load_idx_files(const std::string& image_path, const std::string& label_path, Split split) {
  const auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open IDX file: " + path);
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
  };
  const std::vector<std::uint8_t> images = slurp(image_path);
  const std::vector<std::uint8_t> labels = slurp(label_path);
  return load_idx(images, labels, split);
}

// ---------------------------------------------------------------------------
// Synthetic shape renderer.
//
// Geometry runs in Q8 fixed point (1 pixel = 256 units) and every membership
// test is integer-only, so renders are bit-identical everywhere. Antialiasing
// is 4x4 coverage sampling: subsample k of a pixel sits at offset 32*(2k+1)
// units, and the written value is floor((fg * inside_count + 8) / 16) on a
// black background.
// ---------------------------------------------------------------------------

namespace {

constexpr int kSubgrid = 4;
constexpr std::int64_t kFixOne = 256;

struct ShapeParams {
  std::int64_t cx, cy;  // center, Q8
  std::int64_t h;       // half-extent, Q8
  int fg;               // foreground level
};

std::int64_t cross(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by) {
  return ax * by - ay * bx;
}

bool in_triangle(std::int64_t dx, std::int64_t dy, std::int64_t h) {
  // Vertices: apex (0,-h), base corners (-h,h) and (h,h); consistent-side test.
  const std::int64_t c1 = cross(-h - 0, h - (-h), dx - 0, dy - (-h));
  const std::int64_t c2 = cross(h - (-h), h - h, dx - (-h), dy - h);
  const std::int64_t c3 = cross(0 - h, -h - h, dx - h, dy - h);
  return (c1 >= 0 && c2 >= 0 && c3 >= 0) || (c1 <= 0 && c2 <= 0 && c3 <= 0);
}

bool inside_shape(int cls, std::int64_t dx, std::int64_t dy, std::int64_t h) {
  const std::int64_t w = h * 5 / 16;  // bar/arm half-thickness
  switch (cls) {
    case 0:  // disk
      return dx * dx + dy * dy <= h * h;
    case 1:  // square
      return std::max(std::abs(dx), std::abs(dy)) <= h;
    case 2:  // triangle
      return in_triangle(dx, dy, h);
    case 3:  // cross
      return (std::abs(dx) <= w && std::abs(dy) <= h) ||
             (std::abs(dy) <= w && std::abs(dx) <= h);
    case 4: {  // ring
      const std::int64_t r2 = dx * dx + dy * dy;
      const std::int64_t inner = h * 9 / 16;
      return r2 <= h * h && r2 >= inner * inner;
    }
    case 5:  // horizontal bar
      return std::abs(dy) <= w && std::abs(dx) <= h;
    case 6:  // vertical bar
      return std::abs(dx) <= w && std::abs(dy) <= h;
    case 7:  // diagonal stripe
      return std::abs(dx - dy) <= w * 181 / 128 && std::abs(dx) <= h && std::abs(dy) <= h;
    case 8: {  // 3x3 checker
      if (std::abs(dx) > h || std::abs(dy) > h) return false;
      const std::int64_t i = std::min<std::int64_t>((dx + h) * 3 / (2 * h), 2);
      const std::int64_t j = std::min<std::int64_t>((dy + h) * 3 / (2 * h), 2);
      return (i + j) % 2 == 0;
    }
    case 9: {  // 3x3 dot grid
      const std::int64_t d = h * 11 / 16;
      const std::int64_t r = h / 4;
      for (int gy = -1; gy <= 1; ++gy) {
        for (int gx = -1; gx <= 1; ++gx) {
          const std::int64_t ex = dx - gx * d;
          const std::int64_t ey = dy - gy * d;
          if (ex * ex + ey * ey <= r * r) return true;
        }
      }
      return false;
    }
    default:
      throw ValueError("unknown shape class");
  }
}

ImageTensor render_shape(int cls, int side, const ShapeParams& p) {
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(side) * side, 0);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      int count = 0;
      for (int sy = 0; sy < kSubgrid; ++sy) {
        for (int sx = 0; sx < kSubgrid; ++sx) {
          const std::int64_t px = kFixOne * x + 32 * (2 * sx + 1);
          const std::int64_t py = kFixOne * y + 32 * (2 * sy + 1);
          if (inside_shape(cls, px - p.cx, py - p.cy, p.h)) ++count;
        }
      }
      pixels[static_cast<std::size_t>(y) * side + x] =
          static_cast<std::uint8_t>((p.fg * count + 8) / 16);
    }
  }
  return ImageTensor(side, side, 1, std::move(pixels));
}

}  // namespace

std::span<const char* const> synth_class_names() {
  static constexpr const char* kNames[kSynthNumClasses] = {
      "disk",   "square",         "triangle",     "cross",    "ring",
      "h_bar",  "v_bar",          "diagonal",     "checker",  "dot_grid"};
  return {kNames, kSynthNumClasses};
}

Dataset synth_shapes(std::uint64_t seed, int count_per_class, int side, Split split) {
  if (side < 16) throw ValueError("synth_shapes: side must be >= 16");
  if (count_per_class < 1) throw ValueError("synth_shapes: count_per_class must be >= 1");

  const std::uint64_t base = derive_key(seed, "synth-shapes");
  const std::int64_t side_fp = kFixOne * side;

  Dataset dataset;
  dataset.split = split;
  dataset.num_classes = kSynthNumClasses;
  dataset.images.reserve(static_cast<std::size_t>(count_per_class) * kSynthNumClasses);
  dataset.labels.reserve(dataset.images.capacity());

  for (int rep = 0; rep < count_per_class; ++rep) {
    for (int cls = 0; cls < kSynthNumClasses; ++cls) {
      const std::uint64_t sample_index =
          static_cast<std::uint64_t>(rep) * kSynthNumClasses + cls;
      SeqRng rng(counter_hash(base, sample_index));
      ShapeParams p;
      p.cx = side_fp / 2 + rng.range_int(-side_fp / 10, side_fp / 10);
      p.cy = side_fp / 2 + rng.range_int(-side_fp / 10, side_fp / 10);
      p.h = rng.range_int(26 * side_fp / 100, 38 * side_fp / 100);
      p.fg = static_cast<int>(rng.range_int(140, 255));
      dataset.images.push_back(render_shape(cls, side, p));
      dataset.labels.push_back(Label{cls});
    }
  }
  validate(dataset);
  return dataset;
}

}  // namespace advbench
