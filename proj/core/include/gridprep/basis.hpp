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

/**
 * @file
 * Single-particle orbitals on [0, L], the finite-grid orbital basis with its
 * Fock operator, and the split-ratio integration backends.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gridprep/statevec.hpp"

namespace gridprep {

struct UniformFamily {};
/// sqrt(2/L) sin(n pi x / L)
struct BoxSineFamily {
    int n = 1;
};
/// e^{2 pi i k x / L} / sqrt(L)
struct PlaneWaveFamily {
    int k = 0;
};
/// H_n((x - center)/width) e^{-((x - center)/width)^2 / 2}, normalized on [0, L].
struct HermiteFamily {
    int n = 0;
    double center = 0.5;
    double width = 0.1;
};
/// Indicator of grid cell `site` on a 2^grid_bits grid.
struct DeltaFamily {
    std::uint64_t site = 0;
    unsigned grid_bits = 1;
};
/// Piecewise-constant orbital: amplitude table[j] / sqrt(h) on cell j.
struct TabulatedFamily {
    std::vector<complex> table;
};

using OrbitalFamily =
    std::variant<UniformFamily, BoxSineFamily, PlaneWaveFamily, HermiteFamily, DeltaFamily, TabulatedFamily>;

class Orbital {
  public:
    Orbital(OrbitalFamily family, double length = 1.0, double energy = 0.0);

    static Orbital uniform(double length = 1.0, double energy = 0.0);
    static Orbital box_sine(int n, double length = 1.0, double energy = 0.0);
    static Orbital plane_wave(int k, double length = 1.0, double energy = 0.0);
    static Orbital hermite(int n, double center, double width, double length = 1.0, double energy = 0.0);
    static Orbital delta(std::uint64_t site, unsigned grid_bits, double length = 1.0, double energy = 0.0);
    /// Normalizes `table`; its size must be a power of two.
    static Orbital tabulated(std::vector<complex> table, double length = 1.0, double energy = 0.0);

    const OrbitalFamily &family() const { return family_; }
    std::string describe() const;
    double length() const { return length_; }
    double energy() const { return energy_; }
    Orbital with_energy(double energy) const;

    complex amplitude(double x) const;
    double density(double x) const;
    double phase(double x) const;

    bool has_cdf() const;
    /// Integral of the density over [0, x]. Throws a configuration error for
    /// families without a closed form.
    double cdf(double x) const;

    /// Points strictly inside (a, b) where the density is not smooth.
    std::vector<double> breakpoints(double a, double b) const;
    /// An upper bound for the density on [a, b].
    double density_bound(double a, double b) const;

    /// Normalized samples phi(j L / 2^l), j = 0 .. 2^l - 1.
    std::vector<complex> grid_amplitudes(unsigned grid_bits) const;
    /// Tabulated orbital built from grid_amplitudes(grid_bits).
    Orbital discretized(unsigned grid_bits) const;

  private:
    OrbitalFamily family_;
    double length_;
    double energy_;
    double scale_ = 1.0;             // hermite normalization
    std::vector<double> prefix_;     // tabulated cumulative mass, size 2^b + 1
};

enum class Backend { analytic_cdf, adaptive_quadrature, monte_carlo };

std::string_view to_string(Backend backend);
Backend parse_backend(std::string_view name);

struct IntegrationSpec {
    Backend backend = Backend::analytic_cdf;
    double epsilon = 1e-3;
    double delta = 0.05;
    std::optional<double> variance;
    std::optional<std::pair<double, double>> bounds;
    std::uint64_t seed = 0;
    /// Test hook: move every ratio by exactly epsilon in the direction that
    /// lowers the local overlap, then clamp to [0, 1].
    bool adversarial = false;

    void validate() const;
};

struct SplitRatio {
    double value = 0.5;
    bool empty = false;
    std::uint64_t oracle_calls = 0;
    std::uint64_t samples = 0;
};

inline constexpr double kEmptyBlockMass = 1e-14;

/// Mass fraction of block [k L/2^i, (k+2) L/2^i] lying in its left half
/// [k L/2^i, (k+1) L/2^i]. `block_mass`, when known, short-circuits the
/// empty-block test.
SplitRatio split_ratio(const Orbital &orbital, unsigned level, std::uint64_t block, const IntegrationSpec &spec,
                       std::optional<double> block_mass = std::nullopt);

/// Integral of the density over [a, b] by adaptive Gauss-Kronrod, split at
/// the orbital's breakpoints.
double integrate_density(const Orbital &orbital, double a, double b, std::uint64_t *evaluations = nullptr);

/// Inverse of the standard normal CDF.
double normal_quantile(double p);

/// Samples for an (epsilon, delta) absolute-error mean estimate. `bounded`
/// selects the range path (needs spec.bounds), else the variance path.
std::uint64_t mc_sample_count(const IntegrationSpec &spec, bool bounded);

/// Orbitals discretized on a 2^l grid, re-orthonormalized, with the Fock
/// operator F = sum_i E_i |phi_i><phi_i| built from them.
class BasisSet {
  public:
    BasisSet(std::vector<Orbital> orbitals, unsigned grid_bits);

    std::size_t size() const { return orbitals_.size(); }
    unsigned grid_bits() const { return grid_bits_; }
    const Orbital &orbital(std::size_t i) const { return orbitals_.at(i); }
    /// Re-orthonormalized grid orbital as a tabulated Orbital.
    const Orbital &grid_orbital(std::size_t i) const { return grid_orbitals_.at(i); }
    const std::vector<complex> &grid_vector(std::size_t i) const { return vectors_.at(i); }
    const std::vector<double> &energies() const { return energies_; }
    double energy(std::size_t i) const { return energies_.at(i); }
    /// Half the smallest nonzero spacing of the energies; 0 when all tie.
    double gap() const { return gap_; }
    /// Largest |<phi_i|phi_j> - delta_ij| of the raw normalized samples.
    double raw_overlap_defect() const { return raw_defect_; }

    CMatrix fock_matrix() const;
    /// e^{-i F t}, exact from the spectral form.
    CMatrix fock_evolution(double time) const;

    /// E_i += strength; eigenvectors unchanged.
    BasisSet perturb_fock(std::size_t index, double strength) const;

  private:
    std::vector<Orbital> orbitals_;
    std::vector<Orbital> grid_orbitals_;
    std::vector<std::vector<complex>> vectors_;
    std::vector<double> energies_;
    unsigned grid_bits_;
    double gap_ = 0.0;
    double raw_defect_ = 0.0;

    void refresh_gap();
};

/// Half the minimum spacing between distinct values (ties within 1e-9).
double half_min_gap(const std::vector<double> &energies);

} // namespace gridprep
