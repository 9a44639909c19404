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

#include "vibronic/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "vibronic/error.hpp"

namespace vibronic {

double StickSpectrum::total_intensity() const {
    double s = 0.0;
    for (const auto &st : sticks)
        s += st.intensity;
    return s;
}

void StickSpectrum::sort_by_energy() {
    std::stable_sort(sticks.begin(), sticks.end(), [](const Stick &a, const Stick &b) { return a.energy < b.energy; });
}

double BinnedSpectrum::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

double BroadenedSpectrum::area() const { return std::accumulate(values.begin(), values.end(), 0.0) * step; }

std::string_view to_string(BroadeningConvention c) { return c == BroadeningConvention::StdDev ? "stddev" : "fwhm"; }

BroadeningConvention parse_broadening_convention(std::string_view text) {
    if (text == "stddev" || text == "sigma")
        return BroadeningConvention::StdDev;
    if (text == "fwhm")
        return BroadeningConvention::FWHM;
    throw InvalidArgument(fmt::format("unknown broadening convention '{}', expected stddev or fwhm", text));
}

double gaussian_stddev(double width, BroadeningConvention c) {
    if (c == BroadeningConvention::StdDev)
        return width;
    return width / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

BinnedSpectrum bin(const StickSpectrum &sticks, double width, double origin) {
    if (!(width > 0.0))
        throw InvalidArgument(fmt::format("bin width must be positive, got {}", width));
    BinnedSpectrum out;
    out.width = width;
    out.origin = origin;
    if (sticks.sticks.empty())
        return out;
    std::vector<long long> index(sticks.sticks.size());
    long long lo = std::numeric_limits<long long>::max(), hi = std::numeric_limits<long long>::min();
    for (std::size_t i = 0; i < sticks.sticks.size(); ++i) {
        const double e = sticks.sticks[i].energy;
        if (!std::isfinite(e))
            throw InvalidArgument("stick energy is not finite");
        index[i] = static_cast<long long>(std::floor((e - origin) / width));
        lo = std::min(lo, index[i]);
        hi = std::max(hi, index[i]);
    }
    out.first_bin = lo;
    out.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (std::size_t i = 0; i < index.size(); ++i)
        out.values[static_cast<std::size_t>(index[i] - lo)] += sticks.sticks[i].intensity;
    return out;
}

BroadenedSpectrum broaden(const BinnedSpectrum &binned, double sigma, BroadeningConvention convention) {
    if (!(sigma > 0.0))
        throw InvalidArgument(fmt::format("broadening width must be positive, got {}", sigma));
    const double s = gaussian_stddev(sigma, convention);
    const double w = binned.width;
    const auto pad = static_cast<std::ptrdiff_t>(std::ceil(8.0 * s / w));

    std::vector<double> kernel(static_cast<std::size_t>(2 * pad + 1));
    for (std::ptrdiff_t m = -pad; m <= pad; ++m) {
        const double x = static_cast<double>(m) * w / s;
        kernel[static_cast<std::size_t>(m + pad)] = std::exp(-0.5 * x * x);
    }
    const double norm = std::accumulate(kernel.begin(), kernel.end(), 0.0);
    for (auto &k : kernel)
        k /= norm * w;

    BroadenedSpectrum out;
    out.step = w;
    out.sigma = sigma;
    out.convention = convention;
    if (binned.values.empty()) {
        out.start = binned.origin;
        return out;
    }
    out.start = binned.center(0) - static_cast<double>(pad) * w;
    out.values.assign(binned.values.size() + static_cast<std::size_t>(2 * pad), 0.0);
    for (std::size_t i = 0; i < binned.values.size(); ++i) {
        const double v = binned.values[i];
        if (v == 0.0)
            continue;
        double *dst = out.values.data() + i;
        for (std::size_t m = 0; m < kernel.size(); ++m)
            dst[m] += v * kernel[m];
    }
    return out;
}

namespace {

double sample_linear(const BroadenedSpectrum &s, double x) {
    if (s.values.empty())
        return 0.0;
    const double u = (x - s.start) / s.step;
    const double last = static_cast<double>(s.values.size() - 1);
    if (u < -1e-9 || u > last + 1e-9)
        return 0.0;
    const double uc = std::clamp(u, 0.0, last);
    const auto i = static_cast<std::size_t>(std::floor(uc));
    if (i + 1 >= s.values.size())
        return s.values.back();
    const double f = uc - static_cast<double>(i);
    return (1.0 - f) * s.values[i] + f * s.values[i + 1];
}

} // namespace

double l1_distance(const BroadenedSpectrum &a, const BroadenedSpectrum &b) {
    if (!(a.step > 0.0) || !(b.step > 0.0))
        throw InvalidArgument("spectrum grid step must be positive");
    if (a.values.empty() && b.values.empty())
        return 0.0;
    if (a.values.empty())
        return b.area();
    if (b.values.empty())
        return a.area();

    const bool same_step = std::abs(a.step - b.step) <= 1e-12 * a.step;
    const double offset = (b.start - a.start) / a.step;
    const bool aligned = same_step && std::abs(offset - std::round(offset)) <= 1e-9;
    if (aligned) {
        const auto shift = static_cast<long long>(std::llround(offset));
        const long long lo = std::min<long long>(0, shift);
        const long long hi = std::max<long long>(static_cast<long long>(a.values.size()),
                                                 shift + static_cast<long long>(b.values.size()));
        double sum = 0.0;
        for (long long i = lo; i < hi; ++i) {
            const double va = (i >= 0 && i < static_cast<long long>(a.values.size())) ? a.values[static_cast<std::size_t>(i)] : 0.0;
            const long long j = i - shift;
            const double vb = (j >= 0 && j < static_cast<long long>(b.values.size())) ? b.values[static_cast<std::size_t>(j)] : 0.0;
            sum += std::abs(va - vb);
        }
        return sum * a.step;
    }

    const double step = std::min(a.step, b.step);
    const double lo = std::min(a.start, b.start);
    const double hi = std::max(a.energy(a.values.size() - 1), b.energy(b.values.size() - 1));
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (n > 100'000'000)
        throw DimensionError("resampled spectrum grid is too large");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + step * static_cast<double>(i);
        sum += std::abs(sample_linear(a, x) - sample_linear(b, x));
    }
    return sum * step;
}

double total_variation(const BinnedSpectrum &a, const BinnedSpectrum &b) {
    if (std::abs(a.width - b.width) > 1e-12 * a.width || std::abs(a.origin - b.origin) > 1e-12 * std::max(1.0, std::abs(a.origin)))
        throw DimensionError("histograms must share bin width and origin");
    const double ta = a.total(), tb = b.total();
    if (!(ta > 0.0) || !(tb > 0.0))
        throw InvalidArgument("histogram has no weight");
    const long long lo = std::min(a.first_bin, b.first_bin);
    const long long hi = std::max(a.first_bin + static_cast<long long>(a.values.size()),
                                  b.first_bin + static_cast<long long>(b.values.size()));
    auto at = [](const BinnedSpectrum &s, long long k) {
        const long long i = k - s.first_bin;
        return (i >= 0 && i < static_cast<long long>(s.values.size())) ? s.values[static_cast<std::size_t>(i)] : 0.0;
    };
    double sum = 0.0;
    for (long long k = lo; k < hi; ++k)
        sum += std::abs(at(a, k) / ta - at(b, k) / tb);
    return 0.5 * sum;
}

BroadenedSpectrum broadened_fcp(const StickSpectrum &sticks, double sigma, BroadeningConvention convention,
                                double bin_width) {
    return broaden(bin(sticks, bin_width), sigma, convention);
}

} // namespace vibronic
