#include "skdv/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace skdv {

namespace {

constexpr char magic[4] = {'D', 'S', 'P', '1'};
constexpr std::size_t header_bytes = 4 + 8 + 8 + 8;

template <class T>
void put(std::vector<unsigned char>& buf, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>(bits >> (8 * i)));
}

template <class T>
T get(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | p[i];
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void save_field(const Field& f, const std::string& path, double time) {
  const Field p = as_physical(f);
  std::vector<unsigned char> buf(magic, magic + 4);
  buf.reserve(header_bytes + 16 * p.size());
  put<std::uint64_t>(buf, p.size());
  put<double>(buf, p.grid.box_length());
  put<double>(buf, time);
  for (const auto& c : p.values) {
    put<double>(buf, c.real());
    put<double>(buf, c.imag());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("save_field: cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw SnapshotError("save_field: write to '" + path + "' failed");
}

Field load_field(const std::string& path, double* time) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("load_field: cannot open '" + path + "'");
  const std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < header_bytes) throw SnapshotError("load_field: '" + path + "' is truncated (no header)");
  if (std::memcmp(buf.data(), magic, 4) != 0) throw SnapshotError("load_field: '" + path + "' has bad magic bytes");
  const auto n = get<std::uint64_t>(buf.data() + 4);
  const auto length = get<double>(buf.data() + 12);
  const auto t = get<double>(buf.data() + 20);
  if (n > (buf.size() - header_bytes) / 16 || buf.size() != header_bytes + 16 * n)
    throw SnapshotError("load_field: '" + path + "' length does not match its header");

  Grid1D g = [&] {
    try {
      return Grid1D(static_cast<std::size_t>(n), length);
    } catch (const std::invalid_argument& e) {
      throw SnapshotError(std::string("load_field: invalid grid in header: ") + e.what());
    }
  }();
  Field f(g, Rep::physical);
  const unsigned char* p = buf.data() + header_bytes;
  for (std::size_t j = 0; j < n; ++j, p += 16) f.values[j] = {get<double>(p), get<double>(p + 8)};
  if (time) *time = t;
  return f;
}

}  // namespace skdv
