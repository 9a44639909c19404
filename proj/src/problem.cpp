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

#include "vibronic/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "vibronic/error.hpp"

namespace vibronic {

using nlohmann::json;

ThermalConfig ThermalConfig::from_beta(double beta_inv_cm) {
    if (!(beta_inv_cm > 0.0))
        throw InvalidArgument(fmt::format("beta must be positive, got {}", beta_inv_cm));
    ThermalConfig config;
    config.zero_ = std::isinf(beta_inv_cm);
    config.beta_ = beta_inv_cm;
    return config;
}

ThermalConfig ThermalConfig::from_temperature(double kelvin) {
    if (!(kelvin >= 0.0))
        throw InvalidArgument(fmt::format("temperature must be non-negative, got {}", kelvin));
    if (kelvin == 0.0)
        return zero_temperature();
    return from_beta(1.0 / (kBoltzmannInvCmPerKelvin * kelvin));
}

std::vector<std::size_t> ModeCutoffs::local_dims() const {
    std::vector<std::size_t> dims(max_levels.size());
    for (std::size_t k = 0; k < dims.size(); ++k)
        dims[k] = max_levels[k] + 1;
    return dims;
}

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto &v : violations) {
        if (!out.empty())
            out += "; ";
        out += v;
    }
    return out;
}

ValidationReport validate(const VibronicProblem &problem, double orthogonality_tolerance) {
    ValidationReport report;
    auto fail = [&](std::string msg) {
        report.ok = false;
        report.violations.push_back(std::move(msg));
    };

    const auto m = static_cast<Eigen::Index>(problem.num_modes());
    if (m == 0)
        fail("problem has no modes");
    if (problem.omega_b.size() != m)
        fail(fmt::format("omega_B has length {}, expected {}", problem.omega_b.size(), m));
    if (problem.delta.size() != m)
        fail(fmt::format("delta has length {}, expected {}", problem.delta.size(), m));
    if (problem.duschinsky.rows() != m || problem.duschinsky.cols() != m)
        fail(fmt::format("S is {}x{}, expected {}x{}", problem.duschinsky.rows(),
                         problem.duschinsky.cols(), m, m));

    for (Eigen::Index k = 0; k < problem.omega_a.size(); ++k)
        if (!(problem.omega_a[k] > 0.0) || !std::isfinite(problem.omega_a[k]))
            fail(fmt::format("omega_A[{}] = {} is not a positive frequency", k, problem.omega_a[k]));
    for (Eigen::Index k = 0; k < problem.omega_b.size(); ++k)
        if (!(problem.omega_b[k] > 0.0) || !std::isfinite(problem.omega_b[k]))
            fail(fmt::format("omega_B[{}] = {} is not a positive frequency", k, problem.omega_b[k]));
    for (Eigen::Index k = 0; k < problem.delta.size(); ++k)
        if (!std::isfinite(problem.delta[k]))
            fail(fmt::format("delta[{}] is not finite", k));

    if (problem.duschinsky.rows() == problem.duschinsky.cols() && problem.duschinsky.size() > 0) {
        const RealMatrix gram = problem.duschinsky.transpose() * problem.duschinsky;
        const RealMatrix dev = gram - RealMatrix::Identity(gram.rows(), gram.cols());
        report.orthogonality_deviation = dev.cwiseAbs().maxCoeff();
        if (!std::isfinite(report.orthogonality_deviation) ||
            report.orthogonality_deviation > orthogonality_tolerance)
            fail(fmt::format("S is not orthogonal: max|S^T S - I| = {:.3e} exceeds {:.1e}",
                             report.orthogonality_deviation, orthogonality_tolerance));
        else if (report.orthogonality_deviation > kOrthogonalityWarning)
            report.warnings.push_back(fmt::format("S deviates from orthogonality by {:.3e}",
                                                  report.orthogonality_deviation));
    }

    for (std::size_t t = 0; t < problem.anharmonic.size(); ++t) {
        const auto &term = problem.anharmonic[t];
        if (term.modes.size() != 3 && term.modes.size() != 4)
            fail(fmt::format("anharmonic term {} has order {}, expected 3 or 4", t, term.modes.size()));
        for (auto idx : term.modes)
            if (idx >= static_cast<std::size_t>(m))
                fail(fmt::format("anharmonic term {} references mode {} (1-based) of {}", t, idx + 1, m));
        if (!std::isfinite(term.coefficient))
            fail(fmt::format("anharmonic term {} has a non-finite coefficient", t));
    }
    return report;
}

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset; ++i)
        if (text[i] == '\n')
            ++line;
    return line;
}

/// Line of the first occurrence of "key", or 0.
std::size_t line_of_key(std::string_view text, std::string_view key) {
    const std::string quoted = "\"" + std::string(key) + "\"";
    const auto pos = text.find(quoted);
    return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

[[noreturn]] void field_error(std::string_view text, const std::string &field, const std::string &what) {
    const auto line = line_of_key(text, field);
    throw ParseError(fmt::format("line {}: field '{}': {}", line, field, what), line, field);
}

double number_at(std::string_view text, const std::string &field, const json &value) {
    if (!value.is_number())
        field_error(text, field, "expected a number");
    return value.get<double>();
}

RealVector vector_field(std::string_view text, const json &root, const std::string &field) {
    if (!root.contains(field))
        field_error(text, field, "missing required field");
    const auto &arr = root.at(field);
    if (!arr.is_array())
        field_error(text, field, "expected an array of numbers");
    RealVector out(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = number_at(text, field, arr[i]);
    return out;
}

RealMatrix matrix_field(std::string_view text, const json &root, const std::string &field) {
    if (!root.contains(field))
        field_error(text, field, "missing required field");
    const auto &rows = root.at(field);
    if (!rows.is_array() || rows.empty())
        field_error(text, field, "expected a non-empty array of rows");
    std::size_t cols = 0;
    for (const auto &row : rows) {
        if (!row.is_array())
            field_error(text, field, "each row must be an array of numbers");
        cols = std::max(cols, row.size());
    }
    RealMatrix out = RealMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw ValidationError(fmt::format("field 'S': row {} has {} entries, expected {}", r + 1,
                                              rows[r].size(), cols));
        for (std::size_t c = 0; c < cols; ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number_at(text, field, rows[r][c]);
    }
    return out;
}

} // namespace

VibronicProblem parse_problem(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        const auto line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(fmt::format("line {}: malformed JSON: {}", line, e.what()), line, "");
    }
    if (!root.is_object())
        throw ParseError("problem file must contain a JSON object", 1, "");

    VibronicProblem problem;
    if (root.contains("label")) {
        if (!root["label"].is_string())
            field_error(text, "label", "expected a string");
        problem.label = root["label"].get<std::string>();
    }
    problem.omega_a = vector_field(text, root, "omega_A");
    problem.omega_b = vector_field(text, root, "omega_B");
    problem.duschinsky = matrix_field(text, root, "S");
    problem.delta = vector_field(text, root, "delta");

    if (root.contains("anharmonic")) {
        const auto &terms = root["anharmonic"];
        if (!terms.is_array())
            field_error(text, "anharmonic", "expected an array of {indices, coeff} objects");
        for (const auto &entry : terms) {
            if (!entry.is_object() || !entry.contains("indices") || !entry.contains("coeff"))
                field_error(text, "anharmonic", "each term needs 'indices' and 'coeff'");
            if (!entry["indices"].is_array())
                field_error(text, "indices", "expected an array of 1-based mode indices");
            AnharmonicTerm term;
            for (const auto &idx : entry["indices"]) {
                if (!idx.is_number_integer() || idx.get<long long>() < 1)
                    field_error(text, "indices", "mode indices are 1-based positive integers");
                term.modes.push_back(static_cast<std::size_t>(idx.get<long long>() - 1));
            }
            term.coefficient = number_at(text, "coeff", entry["coeff"]);
            problem.anharmonic.push_back(std::move(term));
        }
    }

    if (root.contains("temperature_K") && root.contains("beta_invcm"))
        field_error(text, "beta_invcm", "give either temperature_K or beta_invcm, not both");
    try {
        if (root.contains("temperature_K"))
            problem.thermal = ThermalConfig::from_temperature(number_at(text, "temperature_K", root["temperature_K"]));
        if (root.contains("beta_invcm"))
            problem.thermal = ThermalConfig::from_beta(number_at(text, "beta_invcm", root["beta_invcm"]));
    } catch (const InvalidArgument &e) {
        throw ValidationError(e.what());
    }

    const auto report = validate(problem);
    if (!report.ok)
        throw ValidationError(report.summary());
    return problem;
}

VibronicProblem load_problem(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument(fmt::format("cannot open problem file '{}'", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str());
}

std::string serialize_problem(const VibronicProblem &problem) {
    json root;
    root["label"] = problem.label;
    auto vec = [](const RealVector &v) {
        std::vector<double> out(v.data(), v.data() + v.size());
        return out;
    };
    root["omega_A"] = vec(problem.omega_a);
    root["omega_B"] = vec(problem.omega_b);
    json rows = json::array();
    for (Eigen::Index r = 0; r < problem.duschinsky.rows(); ++r) {
        std::vector<double> row(static_cast<std::size_t>(problem.duschinsky.cols()));
        for (Eigen::Index c = 0; c < problem.duschinsky.cols(); ++c)
            row[static_cast<std::size_t>(c)] = problem.duschinsky(r, c);
        rows.push_back(row);
    }
    root["S"] = rows;
    root["delta"] = vec(problem.delta);
    if (!problem.anharmonic.empty()) {
        json terms = json::array();
        for (const auto &term : problem.anharmonic) {
            std::vector<std::size_t> one_based;
            for (auto idx : term.modes)
                one_based.push_back(idx + 1);
            terms.push_back({{"indices", one_based}, {"coeff", term.coefficient}});
        }
        root["anharmonic"] = terms;
    }
    if (problem.thermal && !problem.thermal->is_zero_temperature())
        root["beta_invcm"] = problem.thermal->beta();
    else if (problem.thermal)
        root["temperature_K"] = 0.0;
    return root.dump(2) + "\n";
}

RealMatrix duschinsky_j(const VibronicProblem &problem) {
    const RealVector sqrt_b = problem.omega_b.cwiseSqrt();
    const RealVector inv_sqrt_a = problem.omega_a.cwiseSqrt().cwiseInverse();
    return sqrt_b.asDiagonal() * problem.duschinsky * inv_sqrt_a.asDiagonal();
}

RealMatrix duschinsky_j_inverse_transpose(const VibronicProblem &problem) {
    return duschinsky_j(problem).inverse().transpose();
}

double initial_state_energy(const VibronicProblem &problem, const std::vector<std::size_t> &levels) {
    double energy = 0.0;
    for (std::size_t k = 0; k < levels.size(); ++k)
        energy += problem.omega_a[static_cast<Eigen::Index>(k)] * (static_cast<double>(levels[k]) + 0.5);
    return energy;
}

} // namespace vibronic
