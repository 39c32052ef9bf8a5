#pragma once

#include "l1adm/linalg.hpp"

#include <filesystem>

namespace l1adm {

// Binary vector file: "ADL1VEC1", u32 length, u32 zero, then length
// little-endian (re, im) f64 pairs.
void write_vector_binary(const std::filesystem::path& path, const CVector& v);
CVector read_vector_binary(const std::filesystem::path& path);

// CSV vector file: one entry per line, "re,im" or just "re".
void write_vector_csv(const std::filesystem::path& path, const CVector& v);
CVector read_vector_csv(const std::filesystem::path& path);

// Dispatch on the extension: ".csv" is text, anything else binary.
CVector read_vector(const std::filesystem::path& path);
void write_vector(const std::filesystem::path& path, const CVector& v);

// Dense rows x cols matrix. CSV: one matrix row per line with interleaved
// re,im pairs (2 cols fields) or plain reals (cols fields). Binary:
// column-major little-endian (re, im) f64 pairs without header.
CMatrix read_dense_matrix(const std::filesystem::path& path, Index rows, Index cols);

}  // namespace l1adm
