#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dirac1d/field.hpp"

namespace dirac1d {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

/// Writes one CSV line; floats via format_double.
void write_csv_row(std::ostream& os, const std::vector<double>& values);

/// Snapshot layout: one JSON header line {"N", "L", "t", "channels", ...}
/// terminated by '\n', then N * channels * 2 little-endian IEEE-754 doubles,
/// interleaved per grid point (Re c0, Im c0, Re c1, Im c1, ...).
struct Snapshot {
  long N = 0;
  double L = 0;
  double t = 0;
  int channels = 0;
  // Present for single-channel profiles on a truncated line.
  bool has_profile_grid = false;
  double xi_min = 0;
  double h = 0;
  std::vector<ComplexVector<double>> data;  // one vector per channel
};

void write_snapshot(std::ostream& os, const Snapshot& snap);
Snapshot read_snapshot(std::istream& is);

void save_field(const std::filesystem::path& path, const SpinorField<double>& f);
SpinorField<double> load_field(const std::filesystem::path& path);

}  // namespace dirac1d
