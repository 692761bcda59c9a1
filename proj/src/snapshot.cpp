#include "dkg/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace dkg {

namespace {

constexpr char kMagic[4] = {'D', 'K', 'G', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Field& psi, const ScalarState& scalar) {
  if (psi.ncomp != 4) throw std::invalid_argument("write_snapshot: spinor field expected");
  if (psi.space != Space::physical)
    throw std::invalid_argument("write_snapshot: physical representation expected");
  if (!(psi.grid == scalar.grid))
    throw std::invalid_argument("write_snapshot: spinor and scalar grids differ");

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_snapshot: cannot open " + path);
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(psi.grid.n));
  put_f64(os, psi.grid.L);
  const long sz = psi.grid.size();
  for (long i = 0; i < sz; ++i)
    for (int c = 0; c < 4; ++c) {
      put_f64(os, psi.at(c, i).real());
      put_f64(os, psi.at(c, i).imag());
    }
  for (long i = 0; i < sz; ++i) put_f64(os, scalar.phi[i]);
  for (long i = 0; i < sz; ++i) put_f64(os, scalar.phi_t[i]);
  if (!os) throw std::runtime_error("write_snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_snapshot: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("read_snapshot: bad magic in " + path);
  const std::uint32_t version = get_u32(is);
  if (version != kVersion)
    throw std::runtime_error("read_snapshot: unsupported version in " + path);
  const std::uint32_t n = get_u32(is);
  const double L = get_f64(is);
  if (!is || n < 4 || n % 2 != 0 || !(L > 0.0))
    throw std::runtime_error("read_snapshot: corrupt header in " + path);

  const Grid3 grid(static_cast<int>(n), L);
  Snapshot snap{Field::spinor(grid, Space::physical), ScalarState(grid)};
  const long sz = grid.size();
  for (long i = 0; i < sz; ++i)
    for (int c = 0; c < 4; ++c) {
      const double re = get_f64(is);
      const double im = get_f64(is);
      snap.psi.at(c, i) = cdouble(re, im);
    }
  for (long i = 0; i < sz; ++i) snap.scalar.phi[i] = get_f64(is);
  for (long i = 0; i < sz; ++i) snap.scalar.phi_t[i] = get_f64(is);
  if (!is) throw std::runtime_error("read_snapshot: truncated payload in " + path);
  return snap;
}

}  // namespace dkg
