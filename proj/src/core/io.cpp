#include "core/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace aadmm {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

double parse_double(const std::string& token, const std::filesystem::path& path,
                    std::size_t line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end != begin && (*(end - 1) == ' ' || *(end - 1) == '\t' ||
                          *(end - 1) == '\r'))
    --end;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": cannot parse '" << token
        << "' as a number";
    throw IoError(msg.str());
  }
  return value;
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string token = line.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      row.push_back(parse_double(token, path, line_no));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": expected "
          << rows.front().size() << " columns, found " << row.size();
      throw IoError(msg.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(path.string() + " contains no data");
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_matrix_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& a) {
  auto out = open_for_write(path);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(a(r, c));
    }
    out << '\n';
  }
}

void write_vector_csv(const std::filesystem::path& path,
                      const Eigen::VectorXd& v) {
  auto out = open_for_write(path);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out << format_double(v[i]) << '\n';
}

void write_indices_csv(const std::filesystem::path& path, const IndexSet& s) {
  auto out = open_for_write(path);
  for (Eigen::Index i : s) out << i << '\n';
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents) {
  auto out = open_for_write(path);
  out << contents;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return a;
}

Eigen::VectorXd read_vector_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  if (rows.front().size() != 1)
    throw IoError(path.string() + ": expected a single-column vector file");
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    v[static_cast<Eigen::Index>(r)] = rows[r][0];
  return v;
}

void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<double>& pixels) {
  if (static_cast<std::size_t>(width) * height != pixels.size())
    throw IoError("pgm dimensions do not match pixel count");
  auto out = open_for_write(path);
  out << "P5\n" << width << " " << height << "\n255\n";
  for (double p : pixels) {
    const double clamped = std::clamp(p, 0.0, 1.0);
    out.put(static_cast<char>(
        static_cast<unsigned char>(std::lround(clamped * 255.0))));
  }
}

std::vector<unsigned char> read_binary_file(const std::filesystem::path& path,
                                            bool gunzip) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (!gunzip) return raw;

  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK)
    throw IoError("zlib initialization failed");
  std::vector<unsigned char> out;
  std::vector<unsigned char> chunk(1 << 16);
  zs.next_in = raw.data();
  zs.avail_in = static_cast<uInt>(raw.size());
  int rc = Z_OK;
  do {
    zs.next_out = chunk.data();
    zs.avail_out = static_cast<uInt>(chunk.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw IoError(path.string() + ": gzip decompression failed");
    }
    out.insert(out.end(), chunk.data(),
               chunk.data() + (chunk.size() - zs.avail_out));
  } while (rc != Z_STREAM_END);
  inflateEnd(&zs);
  return out;
}

}  // namespace aadmm
