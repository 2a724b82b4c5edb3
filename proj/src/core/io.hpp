#ifndef AADMM_CORE_IO_HPP
#define AADMM_CORE_IO_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace aadmm {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Plain-text CSV, one matrix row per line, no header; vectors are a single
// column. Values are written with format_double.
void write_matrix_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& a);
void write_vector_csv(const std::filesystem::path& path,
                      const Eigen::VectorXd& v);
void write_indices_csv(const std::filesystem::path& path, const IndexSet& s);
void write_text_file(const std::filesystem::path& path,
                     const std::string& contents);

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);
Eigen::VectorXd read_vector_csv(const std::filesystem::path& path);

// Binary PGM (P5, 8-bit). Values are clamped to [0,1] then scaled to 255.
void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<double>& pixels);

// Whole file as bytes; with gunzip set, gzip-decompresses the contents.
std::vector<unsigned char> read_binary_file(const std::filesystem::path& path,
                                            bool gunzip = false);

}  // namespace aadmm

#endif
