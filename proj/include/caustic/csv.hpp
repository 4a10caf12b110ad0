#pragma once

// CSV artifacts. Numbers are written with %.17g so files round-trip exactly
// and repeated runs are byte-identical.

#include <filesystem>
#include <string>
#include <vector>

#include "caustic/observables.hpp"
#include "caustic/spectral.hpp"

namespace caustic {

/// x, re, im, density
void write_wave_csv(const std::filesystem::path& path, const WaveField& field);
/// k, re, im, magnitude
void write_spectrum_csv(const std::filesystem::path& path, const SpectrumField& spectrum);
/// t, mass, energy, sup_norm, sigma_norm
void write_series_csv(const std::filesystem::path& path,
                      const std::vector<ObservableRecord>& records);
/// Generic numeric table. Throws ValidationError on a row of the wrong width.
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

}  // namespace caustic
