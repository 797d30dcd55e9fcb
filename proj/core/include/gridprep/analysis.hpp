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
 * Fidelity metrics, error-bound checks and cost accounting.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridprep/statevec.hpp"

namespace gridprep {

/// 1 - |<a|b>|. Inputs must be unit vectors within 1e-6.
double pure_infidelity(std::span<const complex> a, std::span<const complex> b);

/// 1 - Tr sqrt(sqrt(a) b sqrt(a)), computed as one minus the nuclear norm of
/// sqrt(a) sqrt(b).
double mixed_infidelity(const DensityMatrix &a, const DensityMatrix &b);
/// Same, for raw matrices; eigenvalues below -1e-8 are a validation error.
double mixed_infidelity(const CMatrix &a, const CMatrix &b);
/// Same quantity from factors with a = Fa Fa^dagger and b = Fb Fb^dagger;
/// cost grows with the ranks, not with the dimension cubed.
double mixed_infidelity_from_factors(const CMatrix &fa, const CMatrix &fb);

struct ProductBound {
    double exact = 0.0;  ///< 1 - prod (1 - eps_j)
    double linear = 0.0; ///< count * max eps_j
};

ProductBound product_error_bound(std::span<const double> per_orbital);

struct PhaseEstimationStats {
    unsigned readout_qubits = 0;
    unsigned extra_qubits = 0;
    double evolution_time = 0.0;
    /// Probability that every readout was found in its window and cleared.
    double success_probability = 1.0;
    double ambiguous_probability = 0.0;
    std::uint64_t attempts = 0;
    std::uint64_t retries = 0;
    std::uint64_t lookup_comparisons = 0;
    std::vector<std::string> window_table;
};

struct PreparationReport {
    std::string command;
    std::string statistics;
    unsigned particles = 0;
    unsigned grid_bits = 0;
    unsigned orbitals = 0;
    double epsilon = 0.0;
    std::string backend;

    std::optional<double> eps_orbital;       ///< max single-orbital infidelity
    std::optional<double> eps_determinant;   ///< max determinant infidelity
    std::optional<double> eps_superposition; ///< pure-state output infidelity
    std::optional<double> eps_mixed;         ///< density-matrix infidelity
    std::vector<double> eps_orbital_each;
    std::optional<double> product_exact;
    std::optional<double> product_linear;

    /// Largest |<phi_i~|phi_j~>| between distinct loaded orbitals, and
    /// between distinct prepared configurations.
    double orbital_overlap = 0.0;
    double configuration_overlap = 0.0;
    bool orthogonality_flag = false;
    /// Squared norm left by the sort before renormalization.
    double sort_norm_squared = 1.0;

    std::optional<PhaseEstimationStats> phase_estimation;

    std::uint64_t integral_evaluations = 0;
    std::uint64_t integral_evaluations_memoized = 0;
    std::uint64_t rotation_stages = 0;
    std::uint64_t rotation_applications = 0;
    std::uint64_t mc_samples = 0;
    std::uint64_t comparators = 0;
    std::uint64_t qubit_swaps = 0;
    std::uint64_t lookup_comparisons = 0;
    unsigned peak_qubits = 0;
    double wall_seconds = 0.0;

    std::optional<double> purity;
    std::vector<std::string> notes;
};

struct BoundCheck {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    double margin = 0.0; ///< bound - measured
};

inline constexpr double kBoundSlack = 1e-12;

/// Checks every stage the report carries:
///   eps_orbital <= l eps / 2, eps_determinant <= m l eps / 2,
///   eps_superposition <= eps_determinant, eps_mixed <= eps_superposition.
/// A failed row does not stop the others.
std::vector<BoundCheck> verify_bounds(const PreparationReport &report, unsigned m, unsigned l, double epsilon);

struct PowerFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
};

/// Least squares fit of log y = log c + k log x.
PowerFit fit_power_law(std::span<const double> x, std::span<const double> y);

inline constexpr double kExponentTolerance = 0.15;
bool exponent_matches(const PowerFit &fit, double expected, double tolerance = kExponentTolerance);

struct CostRow {
    unsigned m = 0;
    unsigned l = 0;
    double epsilon = 0.0;
    std::uint64_t rotation_stages = 0;
    std::uint64_t integral_evaluations = 0;
    std::uint64_t integral_bound = 0; ///< m (2^l - 1)
    std::uint64_t mc_samples_per_integral = 0;
    std::uint64_t quantum_queries_per_integral = 0;
    std::uint64_t comparators = 0;
    std::uint64_t qubit_swaps = 0;
    std::uint64_t lookup_comparisons = 0;
};

/// Runs the determinant pipeline for m box-sine fermions (basis of m + 1
/// orbitals) at every (m, l, epsilon) and records the counters. MC sample
/// counts use bounds [0, 1] and failure probability `delta`.
std::vector<CostRow> cost_table(std::span<const unsigned> ms, std::span<const unsigned> ls,
                                std::span<const double> epsilons, double delta = 0.05);

struct CostFits {
    PowerFit mc_samples_vs_epsilon;      ///< expect -2
    PowerFit quantum_queries_vs_epsilon; ///< expect -1
    PowerFit stages_vs_l;                ///< expect 1 at fixed m
    PowerFit stages_vs_m;                ///< expect 1 at fixed l
};

CostFits fit_costs(std::span<const CostRow> rows);

/// Number of comparisons to look an energy up in a sorted table of M
/// entries, once per particle: m ceil(log2 M).
std::uint64_t lookup_comparisons(unsigned m, unsigned orbitals);

} // namespace gridprep
