#include "l1adm/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace l1adm {

namespace {

constexpr char kMagic[8] = {'A', 'D', 'L', '1', 'V', 'E', 'C', '1'};

void put_u32(std::ostream& out, std::uint32_t v)
{
  std::array<char, 4> bytes{};
  for (int i = 0; i < 4; ++i) { bytes[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xffu); }
  out.write(bytes.data(), 4);
}

std::uint32_t get_u32(const unsigned char* p)
{
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_f64(std::ostream& out, double v)
{
  auto const bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) { bytes[static_cast<std::size_t>(i)] = static_cast<char>((bits >> (8 * i)) & 0xffu); }
  out.write(bytes.data(), 8);
}

double get_f64(const unsigned char* p)
{
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) { bits = (bits << 8) | p[i]; }
  return std::bit_cast<double>(bits);
}

std::vector<unsigned char> slurp(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw IoError("cannot open " + path.string()); }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode)
{
  std::ofstream out(path, mode);
  if (!out) { throw IoError("cannot write " + path.string()); }
  return out;
}

std::vector<double> parse_fields(const std::string& line, const std::filesystem::path& path, std::size_t line_no)
{
  std::vector<double> fields;
  std::stringstream ss(line);
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::size_t used = 0;
    try {
      fields.push_back(std::stod(token, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || token.find_first_not_of(" \t\r", used) != std::string::npos) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": not a number: '" + token + "'");
    }
  }
  return fields;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

std::string format_double(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_vector_binary(const std::filesystem::path& path, const CVector& v)
{
  if (v.size() > static_cast<Index>(UINT32_MAX)) { throw IoError("vector too long for the binary format"); }
  std::ofstream out = open_out(path, std::ios::binary);
  out.write(kMagic, sizeof kMagic);
  put_u32(out, static_cast<std::uint32_t>(v.size()));
  put_u32(out, 0);
  for (Index i = 0; i < v.size(); ++i) {
    put_f64(out, v[i].real());
    put_f64(out, v[i].imag());
  }
  if (!out) { throw IoError("write failed: " + path.string()); }
}

CVector read_vector_binary(const std::filesystem::path& path)
{
  std::vector<unsigned char> const data = slurp(path);
  if (data.size() < 16 || std::memcmp(data.data(), kMagic, sizeof kMagic) != 0) {
    throw IoError(path.string() + ": not an ADL1VEC1 vector file");
  }
  std::uint32_t const n = get_u32(data.data() + 8);
  if (data.size() != 16 + 16 * static_cast<std::size_t>(n)) {
    throw IoError(path.string() + ": length field " + std::to_string(n) + " does not match file size");
  }
  CVector v(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const unsigned char* p = data.data() + 16 + 16 * static_cast<std::size_t>(i);
    v[i] = Complex(get_f64(p), get_f64(p + 8));
  }
  require_finite(v, path.string());
  return v;
}

void write_vector_csv(const std::filesystem::path& path, const CVector& v)
{
  std::ofstream out = open_out(path, std::ios::out);
  for (Index i = 0; i < v.size(); ++i) {
    out << format_double(v[i].real()) << ',' << format_double(v[i].imag()) << '\n';
  }
  if (!out) { throw IoError("write failed: " + path.string()); }
}

CVector read_vector_csv(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) { throw IoError("cannot open " + path.string()); }
  std::vector<Complex> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) { continue; }
    std::vector<double> const f = parse_fields(line, path, line_no);
    if (f.size() == 1) {
      entries.emplace_back(f[0], 0.0);
    } else if (f.size() == 2) {
      entries.emplace_back(f[0], f[1]);
    } else {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected 're' or 're,im'");
    }
  }
  if (entries.empty()) { throw IoError(path.string() + ": empty vector file"); }
  CVector v = Eigen::Map<CVector>(entries.data(), static_cast<Index>(entries.size()));
  require_finite(v, path.string());
  return v;
}

CVector read_vector(const std::filesystem::path& path)
{
  return path.extension() == ".csv" ? read_vector_csv(path) : read_vector_binary(path);
}

void write_vector(const std::filesystem::path& path, const CVector& v)
{
  if (path.extension() == ".csv") {
    write_vector_csv(path, v);
  } else {
    write_vector_binary(path, v);
  }
}

CMatrix read_dense_matrix(const std::filesystem::path& path, Index rows, Index cols)
{
  if (rows < 1 || cols < 1) { throw InvalidParameter("dense matrix needs positive rows and cols"); }
  CMatrix a(rows, cols);
  if (path.extension() == ".csv") {
    std::ifstream in(path);
    if (!in) { throw IoError("cannot open " + path.string()); }
    std::string line;
    std::size_t line_no = 0;
    Index r = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (blank(line)) { continue; }
      if (r == rows) { throw IoError(path.string() + ": more than " + std::to_string(rows) + " rows"); }
      std::vector<double> const f = parse_fields(line, path, line_no);
      auto const c = static_cast<std::size_t>(cols);
      if (f.size() == 2 * c) {
        for (Index j = 0; j < cols; ++j) { a(r, j) = Complex(f[2 * j], f[2 * j + 1]); }
      } else if (f.size() == c) {
        for (Index j = 0; j < cols; ++j) { a(r, j) = f[static_cast<std::size_t>(j)]; }
      } else {
        throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                      " reals or " + std::to_string(2 * cols) + " interleaved re,im fields");
      }
      ++r;
    }
    if (r != rows) {
      throw IoError(path.string() + ": expected " + std::to_string(rows) + " rows, found " + std::to_string(r));
    }
  } else {
    std::vector<unsigned char> const data = slurp(path);
    auto const expected = 16 * static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (data.size() != expected) {
      throw IoError(path.string() + ": expected " + std::to_string(expected) + " bytes for a " +
                    std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
    std::size_t off = 0;
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i, off += 16) {
        a(i, j) = Complex(get_f64(data.data() + off), get_f64(data.data() + off + 8));
      }
    }
  }
  return a;
}

}  // namespace l1adm
