#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "gkdv/spacetime/time_trace.hpp"

namespace gkdv {

/// Binary trace container, little-endian:
///   L: float64, N: uint32, M: uint32, times: float64[M],
///   then M records of N complex float64 (re, im) in ascending-mode order.
/// Files are written to a temporary name and renamed into place.
void write_trace(const std::filesystem::path& path, const TimeTrace& trace);

/// Reads a container. Samples whose coefficients are Hermitian symmetric are
/// flagged real.
TimeTrace read_trace(const std::filesystem::path& path);

/// Streaming writer for traces too large to hold in memory.
class TraceWriter {
 public:
  TraceWriter(std::filesystem::path path, const Grid1D& grid);
  ~TraceWriter();
  TraceWriter(const TraceWriter&) = delete;
  TraceWriter& operator=(const TraceWriter&) = delete;

  void add(double t, const SpectralField& u);
  /// Assembles header and records and renames into place.
  void finish();

 private:
  std::filesystem::path path_;
  std::filesystem::path body_path_;
  Grid1D grid_;
  std::vector<double> times_;
  std::ofstream body_;
  bool finished_ = false;
};

/// Writes `contents` to `path` via a temporary file and rename.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

}  // namespace gkdv
