#include "caustic/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <memory>
#include <system_error>

#include "caustic/errors.hpp"

namespace caustic {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  File f(std::fopen(path.c_str(), "w"));
  if (!f) {
    throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  }
  return f;
}

void put(std::FILE* f, double v, bool last) {
  std::fprintf(f, last ? "%.17g\n" : "%.17g,", v);
}

}  // namespace

void write_wave_csv(const std::filesystem::path& path, const WaveField& field) {
  File f = open_for_write(path);
  std::fputs("x,re,im,density\n", f.get());
  for (std::size_t j = 0; j < field.size(); ++j) {
    put(f.get(), field.grid().node(j), false);
    put(f.get(), field[j].real(), false);
    put(f.get(), field[j].imag(), false);
    put(f.get(), std::norm(field[j]), true);
  }
}

void write_spectrum_csv(const std::filesystem::path& path, const SpectrumField& spectrum) {
  File f = open_for_write(path);
  std::fputs("k,re,im,magnitude\n", f.get());
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const Complex c = spectrum.coeffs()[i];
    std::fprintf(f.get(), "%ld,", spectrum.index_to_k(i));
    put(f.get(), c.real(), false);
    put(f.get(), c.imag(), false);
    put(f.get(), std::abs(c), true);
  }
}

void write_series_csv(const std::filesystem::path& path,
                      const std::vector<ObservableRecord>& records) {
  File f = open_for_write(path);
  std::fputs("t,mass,energy,sup_norm,sigma_norm\n", f.get());
  for (const ObservableRecord& r : records) {
    put(f.get(), r.t, false);
    put(f.get(), r.mass, false);
    put(f.get(), r.energy, false);
    put(f.get(), r.sup_norm, false);
    put(f.get(), r.sigma_norm, true);
  }
}

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw ValidationError("csv row width mismatch");
  }
  File f = open_for_write(path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::fputs(header[i].c_str(), f.get());
    std::fputc(i + 1 == header.size() ? '\n' : ',', f.get());
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) put(f.get(), row[i], i + 1 == row.size());
  }
}

}  // namespace caustic
