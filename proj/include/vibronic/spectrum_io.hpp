// Copyright 2026 The vibronic-qpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "vibronic/encoding.hpp"
#include "vibronic/pauli.hpp"
#include "vibronic/qpe.hpp"
#include "vibronic/spectrum.hpp"

namespace vibronic {

void write_stick_csv(std::ostream &out, const StickSpectrum &sticks);
/// Rows at bin centers, same columns as sticks.
void write_binned_csv(std::ostream &out, const BinnedSpectrum &binned);
void write_broadened_csv(std::ostream &out, const BroadenedSpectrum &broadened);
/// One row per distinct energy with its shot count.
void write_sampled_csv(std::ostream &out, const SampledSpectrum &sampled);
/// Raw per-shot outcomes in shot order.
void write_shots_csv(std::ostream &out, const SampledSpectrum &sampled);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Comma-separated numbers under one header line; '#' lines are skipped.
CsvTable read_csv(std::istream &in, const std::string &source = "<stream>");
CsvTable load_csv(const std::filesystem::path &path);

/// A spectrum CSV holds sticks (energy_cm1,intensity[,shots]) or a density
/// (energy_cm1,density) on a uniform grid.
struct LoadedSpectrum {
    bool is_density = false;
    StickSpectrum sticks;
    BroadenedSpectrum density;
};

LoadedSpectrum spectrum_from_csv(const CsvTable &table, const std::string &source = "<table>");
LoadedSpectrum load_spectrum(const std::filesystem::path &path);
/// Densities pass through; sticks go through the bin + broaden pipeline.
BroadenedSpectrum as_density(const LoadedSpectrum &s, double sigma = kDefaultSigma,
                             BroadeningConvention convention = BroadeningConvention::StdDev);

/// '#'-prefixed header (encoding, cutoffs, qubit ranges), then a
/// `re,im,string` column line and one row per term in sorted order.
void write_pauli_text(std::ostream &out, const PauliSum &ps, const QubitLayout &layout);
PauliSum read_pauli_text(std::istream &in);

nlohmann::json to_json(const SpectrumMetadata &m);
nlohmann::json to_json(const PhaseMap &pm);
/// PhaseMap, encoding, backend, seed, shot and discard counts, registers.
nlohmann::json sampled_metadata(const SampledSpectrum &s);

/// Writes text to path, creating parent directories.
void write_file(const std::filesystem::path &path, const std::string &text);

} // namespace vibronic
