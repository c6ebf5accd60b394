#include "bo2d/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>

#include "bo2d/errors.hpp"

namespace bo2d {

namespace {

constexpr std::uint32_t kRealFlag = 1u << 16;

template <class T>
void put(std::vector<unsigned char>& out, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  out.insert(out.end(), b, b + sizeof(T));
}

template <class T>
T get(const std::vector<unsigned char>& in, std::size_t offset) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, in.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

std::vector<unsigned char> encode_snapshot(const SpectralField& u, double s) {
  const auto& g = u.grid;
  std::vector<unsigned char> out;
  out.reserve(kSnapshotHeaderBytes + 16 * g.size());
  for (char ch : {'B', 'O', '2', 'D'}) out.push_back(static_cast<unsigned char>(ch));
  put<std::uint32_t>(out, kSnapshotVersion | (u.real ? kRealFlag : 0u));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.nx()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.ny()));
  put<double>(out, g.lx());
  put<double>(out, g.ly());
  put<double>(out, u.time);
  put<double>(out, s);
  for (const auto& c : u.coeffs) {
    put<double>(out, c.real());
    put<double>(out, c.imag());
  }
  return out;
}

Snapshot decode_snapshot(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < kSnapshotHeaderBytes) throw IoError("truncated snapshot: header is incomplete");
  if (std::memcmp(bytes.data(), "BO2D", 4) != 0) throw IoError("bad magic: not a BO2D snapshot");
  const auto word = get<std::uint32_t>(bytes, 4);
  if ((word & 0xffffu) != kSnapshotVersion)
    throw IoError("unsupported version " + std::to_string(word & 0xffffu) + " (expected " +
                  std::to_string(kSnapshotVersion) + ")");
  const auto nx = get<std::uint32_t>(bytes, 8), ny = get<std::uint32_t>(bytes, 12);
  const double lx = get<double>(bytes, 16), ly = get<double>(bytes, 24);
  const double t = get<double>(bytes, 32), s = get<double>(bytes, 40);
  std::optional<Grid2D> g;
  try {
    g.emplace(nx, ny, lx, ly);
  } catch (const Error& e) {
    throw IoError(std::string("invalid grid in snapshot header: ") + e.what());
  }
  const std::size_t payload = 16 * g->size();
  if (bytes.size() < kSnapshotHeaderBytes + payload) throw IoError("truncated snapshot: payload is incomplete");
  if (bytes.size() > kSnapshotHeaderBytes + payload) throw IoError("snapshot has trailing bytes");
  Snapshot snap{SpectralField(*g, t, (word & kRealFlag) != 0), s};
  for (std::size_t k = 0; k < g->size(); ++k) {
    const std::size_t o = kSnapshotHeaderBytes + 16 * k;
    snap.field.coeffs[k] = cplx{get<double>(bytes, o), get<double>(bytes, o + 8)};
  }
  return snap;
}

void write_snapshot(const std::string& path, const SpectralField& u, double s) {
  const auto bytes = encode_snapshot(u, s);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out) {
  for (std::size_t j = 0; j < header.size(); ++j) out_ << (j ? "," : "") << header[j];
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(double x) { return cell(csv_number(x)); }

CsvWriter& CsvWriter::cell(const std::string& text) {
  out_ << (first_ ? "" : ",") << text;
  first_ = false;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  first_ = true;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace bo2d
