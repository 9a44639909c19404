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

#include <cmath>
#include <string>

#include "doctest.h"
#include "test_support.hpp"
#include "vibronic/error.hpp"
#include "vibronic/problem.hpp"

using namespace vibronic;

namespace {

const char *kSo2 = R"({
  "label": "SO2",
  "omega_A": [943.3, 464.7],
  "omega_B": [1178.1, 518.8],
  "S": [[0.9979, 0.0646], [-0.0646, 0.9979]],
  "delta": [-1.8830, 0.4551]
})";

} // namespace

TEST_CASE("SO2 file parses to the tabulated parameters") {
    const auto p = parse_problem(kSo2);
    CHECK(p.label == "SO2");
    CHECK(p.num_modes() == 2);
    CHECK(p.duschinsky(0, 0) == doctest::Approx(0.9979));
    CHECK(p.duschinsky(1, 0) == doctest::Approx(-0.0646));
    CHECK(p.delta[0] == doctest::Approx(-1.8830));
    CHECK(p.delta[1] == doctest::Approx(0.4551));
    CHECK(p.omega_a[0] == doctest::Approx(943.3));
    CHECK(p.omega_b[1] == doctest::Approx(518.8));
    CHECK_FALSE(p.thermal.has_value());
}

TEST_CASE("bundled files agree with the inline SO2 text") {
    const auto a = parse_problem(kSo2);
    const auto b = test::load("so2.json");
    CHECK((a.duschinsky - b.duschinsky).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.delta - b.delta).cwiseAbs().maxCoeff() == 0.0);
    for (const char *name : {"h2o.json", "d2o.json", "no2.json", "so2_anharmonic.json", "toy_single_mode.json",
                             "identity.json"})
        CHECK_NOTHROW(test::load(name));
}

TEST_CASE("identity problem is valid with zero deviation") {
    const auto p = test::load("identity.json");
    const auto r = validate(p);
    CHECK(r.ok);
    CHECK(r.orthogonality_deviation == 0.0);
    CHECK(r.warnings.empty());
}

TEST_CASE("truncated delta is a dimension error") {
    const std::string text = R"({"omega_A": [943.3, 464.7], "omega_B": [1178.1, 518.8],
      "S": [[0.9979, 0.0646], [-0.0646, 0.9979]], "delta": [-1.8830]})";
    CHECK_THROWS_AS(parse_problem(text), ValidationError);
}

TEST_CASE("malformed JSON reports a line") {
    const std::string text = "{\n  \"omega_A\": [1000],\n  \"omega_B\": [1000,\n}";
    try {
        parse_problem(text);
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line() >= 3);
    }
}

TEST_CASE("wrongly typed field names the field") {
    const std::string text = R"({"omega_A": [1000], "omega_B": "fast", "S": [[1]], "delta": [0]})";
    try {
        parse_problem(text);
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.field() == "omega_B");
        CHECK(e.line() == 1);
    }
}

TEST_CASE("non-positive frequencies are rejected") {
    auto p = test::single_mode(1000, 1000, 0);
    p.omega_b[0] = 0.0;
    const auto r = validate(p);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.summary().empty());
}

TEST_CASE("SO2 orthogonality deviation is measured and tolerated") {
    const auto p = test::load("so2.json");
    const auto r = validate(p);
    CHECK(r.ok);
    const RealMatrix s = p.duschinsky;
    const double measured = (s.transpose() * s - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
    CHECK(r.orthogonality_deviation == doctest::Approx(measured).epsilon(1e-12));
    CHECK(r.orthogonality_deviation > 1e-6);
    CHECK(r.orthogonality_deviation < 1e-4);
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("non-orthogonal S fails validation") {
    auto p = test::load("so2.json");
    p.duschinsky << 1, 1, 0, 1;
    const auto r = validate(p);
    CHECK_FALSE(r.ok);
    CHECK(r.orthogonality_deviation == doctest::Approx(1.0));
}

TEST_CASE("NO2 deviation sits near the data rounding scale") {
    const auto r = validate(test::load("no2.json"));
    CHECK(r.ok);
    CHECK(r.orthogonality_deviation < kOrthogonalityTolerance);
}

TEST_CASE("J matrix examples") {
    SUBCASE("identity") {
        auto p = test::single_mode(700, 700, 0.3);
        CHECK(duschinsky_j(p)(0, 0) == doctest::Approx(1.0));
    }
    SUBCASE("frequency ratio") {
        auto p = test::single_mode(400, 900, 0.0);
        CHECK(duschinsky_j(p)(0, 0) == doctest::Approx(1.5).epsilon(1e-14));
    }
    SUBCASE("SO2 leading entry") {
        const auto j = duschinsky_j(test::load("so2.json"));
        CHECK(j(0, 0) == doctest::Approx(std::sqrt(1178.1 / 943.3) * 0.9979).epsilon(1e-12));
        CHECK(j(0, 0) == doctest::Approx(1.1152).epsilon(1e-4));
    }
}

TEST_CASE("J inverse matches the orthogonal-S closed form") {
    for (const char *name : {"so2.json", "h2o.json", "d2o.json", "no2.json"}) {
        const auto p = test::load(name);
        const RealMatrix j = duschinsky_j(p);
        const RealMatrix closed = p.omega_a.cwiseSqrt().asDiagonal() * p.duschinsky.transpose() *
                                  p.omega_b.cwiseSqrt().cwiseInverse().asDiagonal();
        const RealMatrix inv = j.inverse();
        const double scale = inv.cwiseAbs().maxCoeff();
        // Closed form assumes exact orthogonality; the data is orthogonal to its rounding.
        CHECK((inv - closed).cwiseAbs().maxCoeff() / scale < 10 * validate(p).orthogonality_deviation + 1e-12);
        const RealMatrix kt = duschinsky_j_inverse_transpose(p);
        CHECK((kt - inv.transpose()).cwiseAbs().maxCoeff() < 1e-12 * scale);
    }
}

TEST_CASE("serialize then parse is the identity") {
    for (const char *name : {"so2.json", "so2_anharmonic.json", "toy_single_mode.json", "no2.json"}) {
        const auto a = test::load(name);
        const auto b = parse_problem(serialize_problem(a));
        CHECK(a.label == b.label);
        CHECK(a.omega_a == b.omega_a);
        CHECK(a.omega_b == b.omega_b);
        CHECK(a.duschinsky == b.duschinsky);
        CHECK(a.delta == b.delta);
        REQUIRE(a.anharmonic.size() == b.anharmonic.size());
        for (std::size_t i = 0; i < a.anharmonic.size(); ++i) {
            CHECK(a.anharmonic[i].modes == b.anharmonic[i].modes);
            CHECK(a.anharmonic[i].coefficient == b.anharmonic[i].coefficient);
        }
        REQUIRE(a.thermal.has_value() == b.thermal.has_value());
        if (a.thermal)
            CHECK(a.thermal->beta() == doctest::Approx(b.thermal->beta()).epsilon(1e-15));
    }
}

TEST_CASE("anharmonic indices are stored 0-based") {
    const auto p = test::load("so2_anharmonic.json");
    REQUIRE_FALSE(p.anharmonic.empty());
    CHECK(p.anharmonic.front().modes == std::vector<std::size_t>{0, 0, 0});
    CHECK(p.anharmonic.front().coefficient == doctest::Approx(44.0));
    CHECK(p.num_modes() == 3);
    CHECK(p.duschinsky(2, 2) == 1.0);
}

TEST_CASE("zero index in an anharmonic term is a parse error") {
    const std::string text = R"({"omega_A": [1000], "omega_B": [1000], "S": [[1]], "delta": [0],
      "anharmonic": [{"indices": [0, 1], "coeff": 3}]})";
    CHECK_THROWS_AS(parse_problem(text), ParseError);
}

TEST_CASE("thermal configuration") {
    CHECK(ThermalConfig().is_zero_temperature());
    CHECK(std::isinf(ThermalConfig::zero_temperature().beta()));
    const auto t = ThermalConfig::from_temperature(300.0);
    CHECK(t.beta() == doctest::Approx(1.0 / (kBoltzmannInvCmPerKelvin * 300.0)));
    CHECK(t.temperature() == doctest::Approx(300.0));
    CHECK_THROWS_AS(ThermalConfig::from_beta(0.0), InvalidArgument);
    CHECK_THROWS_AS(ThermalConfig::from_beta(-1.0), InvalidArgument);
    const auto p = test::load("toy_single_mode.json");
    REQUIRE(p.thermal.has_value());
    CHECK(p.thermal->temperature() == doctest::Approx(300.0));
}

TEST_CASE("initial-state energy") {
    const auto p = test::load("so2.json");
    CHECK(initial_state_energy(p, {0, 0}) == doctest::Approx(0.5 * (943.3 + 464.7)));
    CHECK(initial_state_energy(p, {2, 1}) == doctest::Approx(943.3 * 2.5 + 464.7 * 1.5));
}

TEST_CASE("missing file names the path") {
    try {
        load_problem("/nonexistent/problem.json");
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(std::string(e.what()).find("/nonexistent/problem.json") != std::string::npos);
    }
}
