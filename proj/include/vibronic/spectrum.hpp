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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vibronic/problem.hpp"

namespace vibronic {

struct Stick {
    double energy = 0.0;    // cm^-1
    double intensity = 0.0; // dimensionless
};

struct SpectrumMetadata {
    std::string label;
    std::vector<std::size_t> cutoffs;
    std::string route;
};

struct StickSpectrum {
    std::vector<Stick> sticks;
    SpectrumMetadata metadata;

    double total_intensity() const;
    /// 1 - sum of intensities, the weight lost outside the truncated space.
    double leakage() const { return 1.0 - total_intensity(); }
    void sort_by_energy();
};

/// Bin i holds the intensity of sticks with floor((E - origin) / width) == first_bin + i.
struct BinnedSpectrum {
    double width = 1.0;
    double origin = 0.0;
    long long first_bin = 0;
    std::vector<double> values;

    double left_edge(std::size_t i) const { return origin + width * static_cast<double>(first_bin + static_cast<long long>(i)); }
    double center(std::size_t i) const { return left_edge(i) + 0.5 * width; }
    double total() const;
};

enum class BroadeningConvention { StdDev, FWHM };

std::string_view to_string(BroadeningConvention c);
BroadeningConvention parse_broadening_convention(std::string_view text);
/// Standard deviation implied by a width parameter under the convention.
double gaussian_stddev(double width, BroadeningConvention c);

/// Density per cm^-1 on the uniform grid start + i * step.
struct BroadenedSpectrum {
    double start = 0.0;
    double step = 1.0;
    std::vector<double> values;
    double sigma = 100.0;
    BroadeningConvention convention = BroadeningConvention::StdDev;

    double energy(std::size_t i) const { return start + step * static_cast<double>(i); }
    /// Rectangle-rule integral, sum(values) * step.
    double area() const;
};

inline constexpr double kDefaultBinWidth = 1.0;
inline constexpr double kDefaultSigma = 100.0;
/// Bin edges sit off the integer and half-integer grid, where sticks of
/// integer-frequency problems fall exactly.
inline constexpr double kDefaultBinOrigin = 0.3;

BinnedSpectrum bin(const StickSpectrum &sticks, double width = kDefaultBinWidth, double origin = kDefaultBinOrigin);

/// Convolution with a unit-area Gaussian sampled at bin centers. The grid is
/// padded by 8 standard deviations on both sides.
BroadenedSpectrum broaden(const BinnedSpectrum &binned, double sigma = kDefaultSigma,
                          BroadeningConvention convention = BroadeningConvention::StdDev);

/// Integral of |a - b| over the union of both grids, zero outside each. Grids
/// with different steps or offsets are linearly resampled onto the finer step.
double l1_distance(const BroadenedSpectrum &a, const BroadenedSpectrum &b);

/// Half the L1 distance between the two histograms after normalizing each to
/// unit total. Both must share width and origin.
double total_variation(const BinnedSpectrum &a, const BinnedSpectrum &b);

/// The common stick -> bin(1) -> broaden pipeline.
BroadenedSpectrum broadened_fcp(const StickSpectrum &sticks, double sigma = kDefaultSigma,
                                BroadeningConvention convention = BroadeningConvention::StdDev,
                                double bin_width = kDefaultBinWidth);

} // namespace vibronic
