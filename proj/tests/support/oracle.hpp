// Copyright 2026 The gridprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Reference computations for tests. Nothing here calls into the library's
// loading, sorting or phase-estimation code; states are built by direct
// sampling and brute-force sums over permutations.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

namespace oracle {

using complex = std::complex<double>;
using Vec = std::vector<complex>;

inline double norm(const Vec &v) {
    double s = 0.0;
    for (const auto &a : v) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

inline Vec normalized(Vec v) {
    const double n = norm(v);
    for (auto &a : v) {
        a /= n;
    }
    return v;
}

inline complex dot(const Vec &a, const Vec &b) {
    complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

inline double infidelity(const Vec &a, const Vec &b) {
    return 1.0 - std::abs(dot(normalized(a), normalized(b)));
}

/// phi(j L / N) for j < N, normalized.
inline Vec sample(const std::function<complex(double)> &phi, unsigned grid_bits, double length = 1.0) {
    const std::size_t n = std::size_t{1} << grid_bits;
    Vec v(n);
    for (std::size_t j = 0; j < n; ++j) {
        v[j] = phi(static_cast<double>(j) * length / static_cast<double>(n));
    }
    return normalized(v);
}

inline Vec box_sine(int n, unsigned grid_bits) {
    return sample([n](double x) { return complex(std::sin(std::numbers::pi * n * x)); }, grid_bits);
}

inline Vec plane_wave(int k, unsigned grid_bits) {
    return sample([k](double x) { return std::polar(1.0, 2.0 * std::numbers::pi * k * x); }, grid_bits);
}

/// Index layout: factor 0 occupies the lowest bits.
inline Vec kron(const std::vector<Vec> &factors) {
    Vec out{1.0};
    for (std::size_t f = 0; f < factors.size(); ++f) {
        Vec next(out.size() * factors[f].size());
        for (std::size_t hi = 0; hi < factors[f].size(); ++hi) {
            for (std::size_t lo = 0; lo < out.size(); ++lo) {
                next[hi * out.size() + lo] = factors[f][hi] * out[lo];
            }
        }
        out = std::move(next);
    }
    return out;
}

inline int permutation_sign(const std::vector<std::size_t> &p) {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            inversions += p[i] > p[j] ? 1 : 0;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

/// Normalized sum over permutations of orbitals[p(0)] (x) orbitals[p(1)] ...,
/// signed for fermions. Particle 0 sits in the lowest bits.
inline Vec symmetrized(const std::vector<Vec> &orbitals, bool fermionic) {
    std::vector<std::size_t> p(orbitals.size());
    std::iota(p.begin(), p.end(), 0);
    Vec out;
    do {
        std::vector<Vec> factors;
        for (std::size_t a : p) {
            factors.push_back(orbitals[a]);
        }
        const Vec term = kron(factors);
        if (out.empty()) {
            out.assign(term.size(), 0.0);
        }
        const double s = fermionic ? permutation_sign(p) : 1.0;
        for (std::size_t i = 0; i < term.size(); ++i) {
            out[i] += s * term[i];
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return normalized(out);
}

inline Vec add(const Vec &a, complex ca, const Vec &b, complex cb) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = ca * a[i] + cb * b[i];
    }
    return out;
}

/// Readout distribution of textbook phase estimation with q qubits on an
/// eigenphase theta (U|v> = e^{2 pi i theta}|v>).
inline std::vector<double> phase_estimation_distribution(double theta, unsigned q) {
    const std::size_t size = std::size_t{1} << q;
    std::vector<double> out(size);
    for (std::size_t y = 0; y < size; ++y) {
        complex s{};
        for (std::size_t k = 0; k < size; ++k) {
            s += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) *
                                     (theta - static_cast<double>(y) / static_cast<double>(size)));
        }
        out[y] = std::norm(s) / static_cast<double>(size * size);
    }
    return out;
}

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

} // namespace oracle
