#include "core/mnist_io.hpp"

#include <sstream>

namespace aadmm {

namespace {

constexpr std::uint32_t kImageMagic = 2051;
constexpr std::uint32_t kLabelMagic = 2049;

std::uint32_t read_be32(const std::vector<unsigned char>& bytes,
                        std::size_t offset) {
  if (offset + 4 > bytes.size())
    throw IdxError(IdxError::Kind::truncated,
                   "idx stream ends inside the header");
  return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
         (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<std::uint32_t>(bytes[offset + 3]);
}

void check_length(const std::vector<unsigned char>& bytes,
                  std::size_t expected) {
  if (bytes.size() < expected) {
    std::ostringstream msg;
    msg << "idx stream truncated: expected " << expected << " bytes, found "
        << bytes.size();
    throw IdxError(IdxError::Kind::truncated, msg.str());
  }
}

}  // namespace

std::vector<DigitImage> parse_idx_images(
    const std::vector<unsigned char>& bytes) {
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != kImageMagic) {
    std::ostringstream msg;
    msg << "bad idx image magic " << magic << " (expected " << kImageMagic << ")";
    throw IdxError(IdxError::Kind::bad_magic, msg.str());
  }
  const std::uint32_t count = read_be32(bytes, 4);
  const std::uint32_t rows = read_be32(bytes, 8);
  const std::uint32_t cols = read_be32(bytes, 12);
  if (rows != DigitImage::kRows || cols != DigitImage::kCols) {
    std::ostringstream msg;
    msg << "idx image dimensions " << rows << "x" << cols << " (expected "
        << DigitImage::kRows << "x" << DigitImage::kCols << ")";
    throw IdxError(IdxError::Kind::dimension_mismatch, msg.str());
  }
  check_length(bytes, 16 + static_cast<std::size_t>(count) * DigitImage::kPixels);

  std::vector<DigitImage> images(count);
  std::size_t offset = 16;
  for (std::uint32_t i = 0; i < count; ++i) {
    images[i].pixels.resize(DigitImage::kPixels);
    for (int p = 0; p < DigitImage::kPixels; ++p)
      images[i].pixels[p] = static_cast<double>(bytes[offset++]) / 255.0;
  }
  return images;
}

std::vector<int> parse_idx_labels(const std::vector<unsigned char>& bytes) {
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != kLabelMagic) {
    std::ostringstream msg;
    msg << "bad idx label magic " << magic << " (expected " << kLabelMagic << ")";
    throw IdxError(IdxError::Kind::bad_magic, msg.str());
  }
  const std::uint32_t count = read_be32(bytes, 4);
  check_length(bytes, 8 + count);
  std::vector<int> labels(count);
  for (std::uint32_t i = 0; i < count; ++i) labels[i] = bytes[8 + i];
  return labels;
}

Eigen::VectorXd image_to_signal(const DigitImage& img) {
  if (img.pixels.size() != DigitImage::kPixels)
    throw IdxError(IdxError::Kind::dimension_mismatch,
                   "digit image does not hold 784 pixels");
  Eigen::VectorXd x(DigitImage::kPixels);
  for (int p = 0; p < DigitImage::kPixels; ++p) x[p] = img.pixels[p];
  return x;
}

DigitImage signal_to_image(const Eigen::VectorXd& signal, int label) {
  if (signal.size() != DigitImage::kPixels)
    throw IdxError(IdxError::Kind::dimension_mismatch,
                   "signal length is not 784");
  DigitImage img;
  img.label = label;
  img.pixels.resize(DigitImage::kPixels);
  for (int p = 0; p < DigitImage::kPixels; ++p) img.pixels[p] = signal[p];
  return img;
}

void attach_labels(std::vector<DigitImage>& images,
                   const std::vector<int>& labels) {
  if (images.size() != labels.size()) {
    std::ostringstream msg;
    msg << "label count " << labels.size() << " does not match image count "
        << images.size();
    throw IdxError(IdxError::Kind::dimension_mismatch, msg.str());
  }
  for (std::size_t i = 0; i < images.size(); ++i) images[i].label = labels[i];
}

std::vector<DigitImage> pick_digit_exemplars(
    const std::vector<DigitImage>& images) {
  std::vector<DigitImage> exemplars(10);
  std::vector<bool> found(10, false);
  for (const DigitImage& img : images) {
    if (img.label < 0 || img.label > 9) continue;
    if (!found[img.label]) {
      exemplars[img.label] = img;
      found[img.label] = true;
    }
  }
  for (int d = 0; d < 10; ++d)
    if (!found[d]) {
      std::ostringstream msg;
      msg << "no image labeled " << d << " in the data set";
      throw IdxError(IdxError::Kind::dimension_mismatch, msg.str());
    }
  return exemplars;
}

}  // namespace aadmm
