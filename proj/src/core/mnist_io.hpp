#ifndef AADMM_CORE_MNIST_IO_HPP
#define AADMM_CORE_MNIST_IO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aadmm {

// 28x28 grayscale digit, pixel values scaled to [0, 1].
struct DigitImage {
  static constexpr int kRows = 28;
  static constexpr int kCols = 28;
  static constexpr int kPixels = kRows * kCols;

  std::vector<double> pixels;  // row-major, length 784
  int label = -1;              // 0-9 when joined with a label file
};

struct IdxError : std::runtime_error {
  enum class Kind { bad_magic, truncated, dimension_mismatch };
  IdxError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind(kind) {}
  Kind kind;
};

// IDX image container (big-endian magic 2051): count x 28 x 28 bytes,
// each divided by 255.
std::vector<DigitImage> parse_idx_images(const std::vector<unsigned char>& bytes);

// IDX label container (big-endian magic 2049).
std::vector<int> parse_idx_labels(const std::vector<unsigned char>& bytes);

// Row-major flattening to a length-784 nonnegative vector.
Eigen::VectorXd image_to_signal(const DigitImage& img);

DigitImage signal_to_image(const Eigen::VectorXd& signal, int label = -1);

// Attaches labels[i] to images[i]; sizes must match.
void attach_labels(std::vector<DigitImage>& images,
                   const std::vector<int>& labels);

// First occurrence of each label 0-9, in label order. Throws if a digit is
// missing.
std::vector<DigitImage> pick_digit_exemplars(
    const std::vector<DigitImage>& images);

}  // namespace aadmm

#endif
