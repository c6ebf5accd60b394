#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Binary snapshot layout, all little-endian:
///
///   offset  size  field
///        0     4  magic "BO2D"
///        4     4  u32 version word: bits 0-15 format version (1),
///                 bits 16-31 flags (bit 16 = real field)
///        8     4  u32 nx
///       12     4  u32 ny
///       16     8  f64 Lx
///       24     8  f64 Ly
///       32     8  f64 t
///       40     8  f64 s
///       48  16nxny coefficients as (re, im) f64 pairs in grid storage order
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 48;

struct Snapshot {
  SpectralField field;
  double s = 0.0;
};

std::vector<unsigned char> encode_snapshot(const SpectralField& u, double s);
/// Throws IoError: "bad magic", "unsupported version", "truncated snapshot",
/// or an invalid grid in the header.
Snapshot decode_snapshot(const std::vector<unsigned char>& bytes);

/// File wrappers; IoError on any failure.
void write_snapshot(const std::string& path, const SpectralField& u, double s);
Snapshot read_snapshot(const std::string& path);

/// %.17g; "nan" and "inf" spelled out.
std::string csv_number(double x);

/// Minimal CSV writer: a header line, then rows of numbers or text.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  CsvWriter& cell(double x);
  CsvWriter& cell(const std::string& text);
  void end_row();

 private:
  std::ostream& out_;
  bool first_ = true;
};

/// Writes `text` to `path` (IoError on failure).
void write_text_file(const std::string& path, const std::string& text);

}  // namespace bo2d
