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
 * Phase estimation on the Fock evolution and on grid symmetries, the
 * energy lookup table, and uncomputation of the occupation register.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridprep/analysis.hpp"
#include "gridprep/assemble.hpp"
#include "gridprep/basis.hpp"
#include "gridprep/statevec.hpp"

namespace gridprep {

/// Writes a q-bit estimate of theta, U|psi> = e^{2 pi i theta}|psi>, into
/// `readout` (which must be blank): Hadamards, controlled U^{2^j} on readout
/// bit j, inverse QFT.
void phase_estimate(QuantumState &state, std::string_view target, const CMatrix &unitary,
                    std::string_view readout);
/// Adjoint of phase_estimate.
void inverse_phase_estimate(QuantumState &state, std::string_view target, const CMatrix &unitary,
                            std::string_view readout);

/// ceil(log2(2 + 1/(2 eps))).
unsigned extra_qubits_for(double epsilon);
/// 1 / (2 (2^p - 2)), the misidentification bound with p extra qubits.
double misidentification_bound(unsigned extra_qubits);

enum class SymmetryKind { reflection, cyclic_shift };

std::string_view to_string(SymmetryKind kind);
SymmetryKind parse_symmetry(std::string_view name);

struct SymmetryOperator {
    SymmetryKind kind = SymmetryKind::reflection;
    CMatrix matrix;
    unsigned readout_qubits = 1;

    /// |j> -> |(N - j) mod N|; eigenvalues +1 and -1, read with one qubit.
    static SymmetryOperator reflection(unsigned grid_bits);
    /// (S psi)(x) = psi(x + 1); plane wave k has eigenphase k / N, read with
    /// grid_bits qubits.
    static SymmetryOperator cyclic_shift(unsigned grid_bits);

    /// ||[F, S]||_max <= tolerance.
    bool commutes_with(const CMatrix &fock, double tolerance = 1e-8) const;
};

struct PhaseEstimationOptions {
    double epsilon = 0.05;
    std::optional<double> time;
    std::optional<unsigned> readout_qubits;
    std::optional<SymmetryOperator> symmetry;
};

struct PhaseWindow {
    std::size_t orbital = 0;
    double energy = 0.0;
    /// frac(-E t / 2 pi)
    double phase = 0.0;
    std::vector<std::uint64_t> readouts;
    std::optional<std::uint64_t> symmetry_readout;
};

/// Energy lookup table: readout windows per orbital, pairwise disjoint
/// (jointly with the symmetry readout when one is configured).
class PhaseTable {
  public:
    PhaseTable(const BasisSet &basis, std::span<const std::size_t> orbitals, const PhaseEstimationOptions &options);

    unsigned readout_qubits() const { return q_; }
    unsigned extra_qubits() const { return p_; }
    unsigned separation_qubits() const { return n_; }
    double time() const { return time_; }
    double epsilon() const { return epsilon_; }
    const std::vector<PhaseWindow> &windows() const { return windows_; }
    const std::optional<SymmetryOperator> &symmetry() const { return symmetry_; }
    const CMatrix &evolution() const { return evolution_; }

    /// Orbital index for a readout pair, or nullopt when it hits no window.
    std::optional<std::size_t> lookup(std::uint64_t readout, std::uint64_t symmetry_readout = 0) const;
    /// Comparisons a sorted-table binary search spends per lookup.
    std::uint64_t comparisons_per_lookup() const;

    std::vector<std::string> describe() const;

  private:
    unsigned q_ = 0;
    unsigned p_ = 0;
    unsigned n_ = 0;
    double time_ = 0.0;
    double epsilon_ = 0.0;
    std::vector<PhaseWindow> windows_;
    std::optional<SymmetryOperator> symmetry_;
    CMatrix evolution_;
    std::vector<int> lookup_;
};

/// Layout of the occupation register: slot j at bits [j b, (j + 1) b).
struct FockRegister {
    std::string name;
    Statistics statistics = Statistics::fermionic;
    unsigned slot_bits = 1;
};

struct IdentificationStats {
    double postselection_weight = 1.0;
    double ambiguous_probability = 0.0;
    std::uint64_t lookup_comparisons = 0;
};

/// For each particle register in order: estimate its phase (and symmetry
/// readout), subtract one from the identified occupation slot, undo the
/// estimation and project the readouts back onto |0>.
IdentificationStats identify_and_decrement(QuantumState &state, std::span<const std::string> particles,
                                           const FockRegister &fock, const PhaseTable &table);

/// Phase-estimates `op` on `particle` into `readout` after checking that it
/// commutes with `fock` when given.
void symmetry_discriminate(QuantumState &state, std::string_view particle, const SymmetryOperator &op,
                           std::string_view readout, const CMatrix *fock = nullptr);

struct Verification {
    bool success = false;
    /// Probability that this attempt succeeds: readout postselection weight
    /// times the probability of the all-zero occupation outcome.
    double success_probability = 0.0;
    std::uint64_t outcome = 0;
};

/// Samples the readout postselection and measures the occupation register;
/// success iff both came out zero. On success `state` is collapsed.
Verification verify_uncomputation(QuantumState &state, std::string_view fock, std::uint64_t seed);
/// Same over several occupation registers; success iff all read zero.
Verification verify_uncomputation(QuantumState &state, std::span<const std::string> focks, std::uint64_t seed);

} // namespace gridprep
