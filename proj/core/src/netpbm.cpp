#include "advbench/netpbm.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace advbench {

namespace {

class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments (comment runs to end of line).
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      const std::uint8_t c = bytes_[pos_];
      if (std::isspace(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  int next_int(const char* what) {
    skip_separators();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw ParseError(std::string("netpbm: malformed header, expected ") + what);
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (1L << 30)) throw ParseError(std::string("netpbm: ") + what + " out of range");
      ++pos_;
    }
    return static_cast<int>(value);
  }

  // The single whitespace byte that terminates the header.
  void consume_header_terminator() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw ParseError("netpbm: malformed header, expected whitespace before payload");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

ImageTensor netpbm_read(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) {
    throw ParseError("netpbm: input too short for magic");
  }
  int channels = 0;
  if (bytes[0] == 'P' && bytes[1] == '5') {
    channels = 1;
  } else if (bytes[0] == 'P' && bytes[1] == '6') {
    channels = 3;
  } else {
    throw ParseError("netpbm: unsupported magic (want P5 or P6)");
  }

  HeaderScanner scan(bytes.subspan(2));
  const int width = scan.next_int("width");
  const int height = scan.next_int("height");
  if (width <= 0 || height <= 0) {
    throw ParseError("netpbm: dimensions must be positive");
  }
  const int maxval = scan.next_int("maxval");
  if (maxval != 255) {
    throw ParseError("netpbm: unsupported maxval " + std::to_string(maxval) + " (want 255)");
  }
  scan.consume_header_terminator();

  const std::size_t payload_offset = 2 + scan.pos();
  const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() < payload_offset + expected) {
    throw ParseError("netpbm: truncated payload");
  }
  if (bytes.size() > payload_offset + expected) {
    throw ParseError("netpbm: trailing data after payload");
  }

  std::vector<std::uint8_t> pixels(bytes.begin() + payload_offset, bytes.end());
  return ImageTensor(width, height, channels, std::move(pixels));
}

std::vector<std::uint8_t> netpbm_write(const ImageTensor& image) {
  const std::string header = std::string(image.channels() == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

ImageTensor read_image_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open image file: " + path);
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return netpbm_read(bytes);
}

void write_image_file(const ImageTensor& image, const std::string& path) {
  const std::vector<std::uint8_t> bytes = netpbm_write(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open image file for writing: " + path);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("short write to image file: " + path);
  }
}

}  // namespace advbench
