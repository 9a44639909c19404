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

#include "vibronic/spectrum_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "vibronic/error.hpp"

namespace vibronic {

namespace {

std::string num(double x) { return fmt::format("{}", x + 0.0); }

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep))
        out.push_back(trim(cell));
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

double parse_double(const std::string &s, const std::string &source, std::size_t line) {
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw ParseError(fmt::format("{}: '{}' is not a number", source, s), line, "");
    return v;
}

std::string join_levels(const std::vector<std::size_t> &v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? std::string(1, sep) : std::string()) + std::to_string(v[i]);
    return out;
}

} // namespace

void write_stick_csv(std::ostream &out, const StickSpectrum &sticks) {
    out << "energy_cm1,intensity\n";
    for (const auto &s : sticks.sticks)
        out << num(s.energy) << ',' << num(s.intensity) << '\n';
}

void write_binned_csv(std::ostream &out, const BinnedSpectrum &binned) {
    out << "energy_cm1,intensity\n";
    for (std::size_t i = 0; i < binned.values.size(); ++i)
        out << num(binned.center(i)) << ',' << num(binned.values[i]) << '\n';
}

void write_broadened_csv(std::ostream &out, const BroadenedSpectrum &broadened) {
    out << "energy_cm1,density\n";
    for (std::size_t i = 0; i < broadened.values.size(); ++i)
        out << num(broadened.energy(i)) << ',' << num(broadened.values[i]) << '\n';
}

void write_sampled_csv(std::ostream &out, const SampledSpectrum &sampled) {
    std::map<double, std::size_t> counts;
    for (double e : sampled.record_energies)
        ++counts[e];
    const double n = static_cast<double>(sampled.record_energies.size());
    out << "energy_cm1,intensity,shots\n";
    for (const auto &[e, c] : counts)
        out << num(e) << ',' << num(static_cast<double>(c) / n) << ',' << c << '\n';
}

void write_shots_csv(std::ostream &out, const SampledSpectrum &sampled) {
    const bool thermal = sampled.registers.i_qubits > 0;
    out << (thermal ? "j,energy_cm1,initial_levels\n" : "j,energy_cm1\n");
    for (std::size_t i = 0; i < sampled.records.size(); ++i) {
        out << sampled.records[i].j << ',' << num(sampled.record_energies[i]);
        if (thermal)
            out << ',' << join_levels(sampled.records[i].initial_levels, ' ');
        out << '\n';
    }
}

CsvTable read_csv(std::istream &in, const std::string &source) {
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        auto cells = split(line, ',');
        if (table.columns.empty()) {
            table.columns = std::move(cells);
            continue;
        }
        if (cells.size() != table.columns.size())
            throw ParseError(fmt::format("{}: line {} has {} fields, header has {}", source, lineno, cells.size(),
                                         table.columns.size()),
                             lineno, "");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto &c : cells)
            row.push_back(parse_double(c, source, lineno));
        table.rows.push_back(std::move(row));
    }
    if (table.columns.empty())
        throw ParseError(fmt::format("{}: no header line", source), lineno, "");
    return table;
}

CsvTable load_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument(fmt::format("cannot open spectrum file '{}'", path.string()));
    return read_csv(in, path.string());
}

LoadedSpectrum spectrum_from_csv(const CsvTable &table, const std::string &source) {
    if (table.columns.size() < 2 || table.columns[0] != "energy_cm1")
        throw ParseError(fmt::format("{}: expected columns energy_cm1,intensity or energy_cm1,density", source), 1, "");
    LoadedSpectrum out;
    if (table.columns[1] == "intensity") {
        for (const auto &r : table.rows)
            out.sticks.sticks.push_back({r[0], r[1]});
        return out;
    }
    if (table.columns[1] != "density")
        throw ParseError(fmt::format("{}: unknown column '{}'", source, table.columns[1]), 1, table.columns[1]);
    out.is_density = true;
    const auto &rows = table.rows;
    if (rows.empty())
        return out;
    out.density.start = rows[0][0];
    out.density.step = rows.size() > 1 ? rows[1][0] - rows[0][0] : 1.0;
    if (!(out.density.step > 0.0))
        throw ParseError(fmt::format("{}: density grid must increase", source), 2, "energy_cm1");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double expected = out.density.start + out.density.step * static_cast<double>(i);
        if (std::abs(rows[i][0] - expected) > 1e-6 * std::max(1.0, std::abs(expected)))
            throw ParseError(fmt::format("{}: density grid is not uniform at row {}", source, i + 1), i + 2,
                             "energy_cm1");
        out.density.values.push_back(rows[i][1]);
    }
    return out;
}

LoadedSpectrum load_spectrum(const std::filesystem::path &path) {
    return spectrum_from_csv(load_csv(path), path.string());
}

BroadenedSpectrum as_density(const LoadedSpectrum &s, double sigma, BroadeningConvention convention) {
    if (s.is_density)
        return s.density;
    return broadened_fcp(s.sticks, sigma, convention);
}

void write_pauli_text(std::ostream &out, const PauliSum &ps, const QubitLayout &layout) {
    out << "# encoding=" << to_string(layout.encoding()) << '\n';
    out << "# cutoffs=" << join_levels(layout.cutoffs().max_levels, ',') << '\n';
    out << "# qubits=" << ps.num_qubits() << '\n';
    out << "# layout=";
    for (std::size_t k = 0; k < layout.num_modes(); ++k) {
        const auto &r = layout.mode_range(k);
        out << (k ? ";" : "") << "mode" << k + 1 << ':' << r.offset << '-' << r.offset + r.count - 1;
    }
    out << "\n# terms=" << ps.size() << '\n';
    out << "re,im,string\n";
    for (const auto &[p, c] : ps.terms())
        out << num(c.real()) << ',' << num(c.imag()) << ',' << p.to_string() << '\n';
}

PauliSum read_pauli_text(std::istream &in) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::optional<PauliSum> out;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            if (line != "re,im,string")
                throw ParseError("expected 're,im,string' header", lineno, "");
            header = true;
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != 3)
            throw ParseError(fmt::format("line {}: expected re,im,string", lineno), lineno, "");
        const auto p = PauliString::from_string(cells[2]);
        if (!out)
            out.emplace(p.num_qubits());
        out->add(p, Complex(parse_double(cells[0], "pauli text", lineno), parse_double(cells[1], "pauli text", lineno)));
    }
    return out ? *out : PauliSum();
}

nlohmann::json to_json(const SpectrumMetadata &m) {
    return {{"label", m.label}, {"cutoffs", m.cutoffs}, {"route", m.route}};
}

nlohmann::json to_json(const PhaseMap &pm) {
    return {{"tau_cm", pm.tau}, {"energy_shift_cm1", pm.energy_shift}, {"t", pm.t}, {"resolution_cm1", pm.resolution()}};
}

nlohmann::json sampled_metadata(const SampledSpectrum &s) {
    return {{"phase_map", to_json(s.phase_map)},
            {"energy_of_j", "2*pi*j/(tau_cm*2^t) - energy_shift_cm1"},
            {"encoding", std::string(to_string(s.encoding))},
            {"backend", s.backend.to_string()},
            {"seed", s.seed},
            {"shots", s.shots},
            {"accepted", s.records.size()},
            {"discarded", s.discarded},
            {"registers",
             {{"system_qubits", s.registers.s_qubits},
              {"initial_qubits", s.registers.i_qubits},
              {"phase_qubits", s.registers.e_qubits}}}};
}

void write_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InvalidArgument(fmt::format("cannot write '{}'", path.string()));
    out << text;
    if (!out)
        throw InvalidArgument(fmt::format("failed writing '{}'", path.string()));
}

} // namespace vibronic
