#include "gkdv/solver/trace_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <stdexcept>

namespace gkdv {
namespace {

static_assert(std::endian::native == std::endian::little, "trace container assumes a little-endian host");

template <class T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("truncated trace container");
  return value;
}

void put_record(std::ostream& out, const SpectralField& u) {
  for (const auto& c : u.coeffs()) {
    put(out, c.real());
    put(out, c.imag());
  }
}

void write_header(std::ostream& out, const Grid1D& grid, const std::vector<double>& times) {
  put(out, grid.half_length());
  put(out, static_cast<std::uint32_t>(grid.size()));
  put(out, static_cast<std::uint32_t>(times.size()));
  for (double t : times) put(out, t);
}

std::filesystem::path temp_name(const std::filesystem::path& path) {
  return path.string() + ".tmp";
}

}  // namespace

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  const auto tmp = temp_name(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_trace(const std::filesystem::path& path, const TimeTrace& trace) {
  const auto tmp = temp_name(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    write_header(out, trace.grid(), std::vector<double>(trace.times().begin(), trace.times().end()));
    for (const auto& f : trace.fields()) put_record(out, f);
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

TimeTrace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace " + path.string());
  const double L = get<double>(in);
  const auto n = get<std::uint32_t>(in);
  const auto m = get<std::uint32_t>(in);
  const Grid1D grid(L, n);
  std::vector<double> times(m);
  for (auto& t : times) t = get<double>(in);
  std::vector<SpectralField> fields;
  fields.reserve(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    std::vector<Complex> c(n);
    for (auto& z : c) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      z = Complex(re, im);
    }
    try {
      fields.emplace_back(grid, c, true);
    } catch (const std::invalid_argument&) {
      fields.emplace_back(grid, std::move(c), false);
    }
  }
  return TimeTrace(std::move(times), std::move(fields));
}

TraceWriter::TraceWriter(std::filesystem::path path, const Grid1D& grid)
    : path_(std::move(path)), body_path_(path_.string() + ".body"), grid_(grid) {
  body_.open(body_path_, std::ios::binary | std::ios::trunc);
  if (!body_) throw std::runtime_error("cannot open " + body_path_.string() + " for writing");
}

TraceWriter::~TraceWriter() {
  if (!finished_) {
    body_.close();
    std::error_code ec;
    std::filesystem::remove(body_path_, ec);
  }
}

void TraceWriter::add(double t, const SpectralField& u) {
  if (!(u.grid() == grid_)) throw std::invalid_argument("trace writer sample on a different grid");
  if (!times_.empty() && !(t > times_.back())) throw std::invalid_argument("trace times must increase");
  times_.push_back(t);
  put_record(body_, u);
}

void TraceWriter::finish() {
  if (finished_) return;
  body_.close();
  const auto tmp = temp_name(path_);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    write_header(out, grid_, times_);
    if (!times_.empty()) {
      std::ifstream body(body_path_, std::ios::binary);
      out << body.rdbuf();
    }
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::remove(body_path_);
  std::filesystem::rename(tmp, path_);
  finished_ = true;
}

}  // namespace gkdv
