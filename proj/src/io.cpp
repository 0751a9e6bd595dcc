#include "dirac1d/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include "json.hpp"
#include <ostream>

namespace dirac1d {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv_row(std::ostream& os, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << format_double(values[i]);
  }
  os << '\n';
}

namespace {

void put_le(std::ostream& os, double x) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xffu);
  os.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_le(std::istream& is) {
  unsigned char bytes[8];
  if (!is.read(reinterpret_cast<char*>(bytes), 8)) throw Error(ErrorKind::Io, "snapshot payload truncated");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_snapshot(std::ostream& os, const Snapshot& snap) {
  if (static_cast<int>(snap.data.size()) != snap.channels)
    throw Error(ErrorKind::InvalidArgument, "snapshot channel count mismatch");
  nlohmann::ordered_json header;
  header["N"] = snap.N;
  header["L"] = snap.L;
  header["t"] = snap.t;
  header["channels"] = snap.channels;
  if (snap.has_profile_grid) {
    header["xi_min"] = snap.xi_min;
    header["h"] = snap.h;
  }
  os << header.dump() << '\n';
  for (long j = 0; j < snap.N; ++j)
    for (const auto& ch : snap.data) {
      put_le(os, ch[j].real());
      put_le(os, ch[j].imag());
    }
}

Snapshot read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::Io, "snapshot header missing");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, std::string("bad snapshot header: ") + e.what());
  }
  Snapshot snap;
  try {
    snap.N = header.at("N").get<long>();
    snap.L = header.at("L").get<double>();
    snap.t = header.at("t").get<double>();
    snap.channels = header.at("channels").get<int>();
    if (header.contains("xi_min")) {
      snap.has_profile_grid = true;
      snap.xi_min = header.at("xi_min").get<double>();
      snap.h = header.at("h").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, std::string("bad snapshot header: ") + e.what());
  }
  if (snap.N <= 0 || snap.channels <= 0) throw Error(ErrorKind::Io, "bad snapshot dimensions");
  snap.data.assign(snap.channels, ComplexVector<double>(snap.N));
  for (long j = 0; j < snap.N; ++j)
    for (auto& ch : snap.data) {
      const double re = get_le(is);
      ch[j] = {re, get_le(is)};
    }
  return snap;
}

void save_field(const std::filesystem::path& path, const SpinorField<double>& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  write_snapshot(os, Snapshot{f.grid.N, f.grid.L, f.t, 2, false, 0, 0, {f.u, f.v}});
}

SpinorField<double> load_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path.string());
  Snapshot snap = read_snapshot(is);
  if (snap.channels != 2) throw Error(ErrorKind::Io, "spinor snapshot must have two channels");
  return SpinorField<double>(PeriodicGrid<double>(snap.L, snap.N), std::move(snap.data[0]), std::move(snap.data[1]),
                             snap.t);
}

}  // namespace dirac1d
