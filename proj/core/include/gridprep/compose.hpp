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
 * Superpositions of configurations, two-species states and mixed states
 * through purification.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridprep/analysis.hpp"
#include "gridprep/assemble.hpp"
#include "gridprep/basis.hpp"
#include "gridprep/discriminate.hpp"
#include "gridprep/statevec.hpp"

namespace gridprep {

struct FockTerm {
    OccupationVector occupation;
    complex amplitude;
};

/// sum_i alpha_i |n_i>. Terms share length, particle number and statistics,
/// are pairwise distinct, and have sum |alpha_i|^2 = 1 within 1e-10.
class FockSuperposition {
  public:
    explicit FockSuperposition(std::vector<FockTerm> terms);

    const std::vector<FockTerm> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    unsigned particles() const { return terms_.front().occupation.particles(); }
    std::size_t orbitals() const { return terms_.front().occupation.orbitals(); }
    Statistics statistics() const { return terms_.front().occupation.statistics(); }

  private:
    std::vector<FockTerm> terms_;
};

struct MixedEntry {
    double probability = 0.0;
    FockSuperposition state;
};

struct ThermalWeights {
    std::vector<double> weights;
    double partition_function = 0.0;
};

/// p_i = e^{-beta E_i} / Z, evaluated with a shifted exponent.
ThermalWeights thermal_weights(double beta, const std::vector<double> &energies);

/// sum_i p_i |Psi_i><Psi_i|; probabilities >= 0 summing to 1 within 1e-10.
class MixedSpec {
  public:
    explicit MixedSpec(std::vector<MixedEntry> entries);
    static MixedSpec thermal(double beta, const std::vector<double> &energies, std::vector<FockSuperposition> states);

    const std::vector<MixedEntry> &entries() const { return entries_; }

  private:
    std::vector<MixedEntry> entries_;
};

struct ComposeOptions {
    IntegrationSpec integration;
    PhaseEstimationOptions phase_estimation;
    std::uint64_t seed = 0;
    unsigned max_attempts = 64;
    unsigned qubit_cap = qubit_cap_from_environment();
    unsigned density_cap = kDefaultDensityCap;
};

struct PureResult {
    QuantumState state;
    /// Particle segments in oracle order (first name lowest).
    std::vector<std::string> particles;
    PreparationReport report;

    std::vector<complex> amplitudes() const { return register_amplitudes(state, particles); }
};

struct MixedResult {
    DensityMatrix rho;
    /// rho = factor factor^dagger
    CMatrix factor;
    PreparationReport report;
};

/// Loads the alphas onto an index register, encodes the configurations,
/// loads orbitals conditionally, clears the occupation register and
/// antisymmetrizes.
PureResult prepare_superposition(const FockSuperposition &superposition, const BasisSet &basis,
                                 const ComposeOptions &options);

struct Species {
    const BasisSet *basis = nullptr;
    std::vector<OccupationVector> configurations;
    PhaseEstimationOptions phase_estimation;
};

struct JointTerm {
    std::size_t a = 0;
    std::size_t b = 0;
    complex amplitude;
};

/// sum alpha_ij |Phi_A,i>|Phi_B,j>. Species A occupies the low bits.
PureResult prepare_two_species(const Species &a, const Species &b, const std::vector<JointTerm> &theta,
                               const ComposeOptions &options);

/// Builds sum_i sqrt(p_i) |i>|Psi_i> and traces out the label register.
MixedResult prepare_mixed(const MixedSpec &mixed, const BasisSet &basis, const ComposeOptions &options);

/// Skips uncomputation and traces out the occupation register instead,
/// giving sum_i |alpha_i|^2 |Phi_i><Phi_i|.
MixedResult prepare_diagonal_mixed(const FockSuperposition &superposition, const BasisSet &basis,
                                   const ComposeOptions &options);

/// sum_i alpha_i slater_oracle(n_i).
std::vector<complex> superposition_oracle(const FockSuperposition &superposition, const BasisSet &basis);
/// sum_ij alpha_ij Phi_A,i (x) Phi_B,j with A in the low bits.
std::vector<complex> two_species_oracle(const Species &a, const Species &b, const std::vector<JointTerm> &theta);
/// sum_i p_i |Psi_i><Psi_i|.
CMatrix mixed_oracle(const MixedSpec &mixed, const BasisSet &basis);
/// Columns sqrt(p_i) Psi_i; the oracle density matrix is F F^dagger.
CMatrix mixed_oracle_factor(const MixedSpec &mixed, const BasisSet &basis);

} // namespace gridprep
