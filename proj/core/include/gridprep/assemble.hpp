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
 * Occupation vectors, Hartree products and their (anti)symmetrization by
 * sorting a register of permutations together with the particle registers.
 */
#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridprep/basis.hpp"
#include "gridprep/loader.hpp"
#include "gridprep/statevec.hpp"

namespace gridprep {

enum class Statistics { fermionic, bosonic };

std::string_view to_string(Statistics s);
Statistics parse_statistics(std::string_view name);

class OccupationVector {
  public:
    OccupationVector(std::vector<unsigned> counts, Statistics statistics);

    /// "1100" (one digit per orbital) or "2,0,1".
    static OccupationVector parse(std::string_view text, Statistics statistics);

    std::size_t orbitals() const { return counts_.size(); }
    unsigned particles() const { return particles_; }
    Statistics statistics() const { return statistics_; }
    const std::vector<unsigned> &counts() const { return counts_; }
    unsigned count(std::size_t orbital) const { return counts_.at(orbital); }

    /// Orbital index of every particle, nondecreasing (0-based).
    std::vector<std::size_t> occupied() const;
    /// Product of n_i!.
    double multiplicity() const;

    /// Bits per occupation slot in the Fock register.
    unsigned slot_bits() const;
    unsigned fock_width() const { return slot_bits() * static_cast<unsigned>(counts_.size()); }
    /// Fock register value: slot j holds n_j at bits [j b, (j + 1) b).
    std::uint64_t encode() const;

    std::string to_string() const;

    auto operator<=>(const OccupationVector &) const = default;

  private:
    std::vector<unsigned> counts_;
    Statistics statistics_;
    unsigned particles_ = 0;
};

/// Slot width for bosonic counters holding up to m: ceil(log2(m + 1)).
unsigned bosonic_slot_bits(unsigned particles);

/// Segment names prefix + "p0", prefix + "p1", ...
std::vector<std::string> particle_names(std::string_view prefix, unsigned count);

/// Loads the occupied orbitals, one per particle register, in index order.
void prepare_hartree_product(QuantumState &state, std::span<const std::string> particles,
                             const OccupationVector &occupation, const BasisSet &basis, Loader &loader);

/// Bits per quword of the permutation register: ceil(log2 m).
unsigned permutation_word_bits(unsigned m);

/// Uniform superposition over mixed-radix tuples: quword i (0-based) takes
/// values 0 .. m - i - 1. Segment width must be m * permutation_word_bits(m).
void generate_permutation_superposition(QuantumState &state, std::string_view segment, unsigned m);

/// Selection rule on 1-based digits: out[i] is the tuple[i]-th smallest
/// value of 1..m not already used.
std::vector<unsigned> rank_to_permutation(std::span<const unsigned> tuple);

/// In-place version on a register of quwords (0-based values); a bijection
/// of the whole register that sends valid tuples to permutations.
void apply_rank_to_permutation(QuantumState &state, std::string_view segment, unsigned m);

struct Comparator {
    unsigned round = 0;
    unsigned low = 0;
};

/// Odd-even transposition network on m wires: m rounds, round r compares
/// (a, a + 1) for a = r mod 2, r mod 2 + 2, ...
std::vector<Comparator> odd_even_network(unsigned m);

struct SortCounters {
    std::uint64_t comparators = 0;
    std::uint64_t rounds = 0;
    /// Conditional qubit swaps: comparators * (l + quword bits).
    std::uint64_t qubit_swaps = 0;
    /// Squared norm after sorting over the expected value. 1 when the loaded
    /// orbitals are orthonormal; the state is renormalized either way.
    double norm_squared = 1.0;
};

/// Sorts the permutation register, applying the same swaps to the particle
/// registers. Fermions pick up (-1) per exchange through a phase-kickback
/// qubit. Afterwards the permutation register holds 0, 1, .., m - 1 on every
/// branch and is cleared and released. `expected_norm_squared` is the
/// squared norm the sort must produce (1 for fermions, prod n_i! for
/// bosons); the result is renormalized by it.
SortCounters sort_and_entangle(QuantumState &state, std::string_view permutation,
                               std::span<const std::string> particles, Statistics statistics,
                               double expected_norm_squared = 1.0);

/// Full (anti)symmetrization of m loaded particle registers that may sit in
/// superposition over configurations sharing m. Adds and removes its own
/// permutation and parity registers.
SortCounters antisymmetrize(QuantumState &state, std::span<const std::string> particles, Statistics statistics,
                            double expected_norm_squared, std::string_view prefix = "");

struct SlaterPreparation {
    QuantumState state;
    std::vector<std::string> particles;
    SortCounters sort;
    std::uint64_t raw_evaluations = 0;
    std::uint64_t memoized_evaluations = 0;
    std::uint64_t rotation_stages = 0;
    std::uint64_t rotation_applications = 0;
    std::uint64_t mc_samples = 0;
};

/// Hartree product, then (anti)symmetrization, on fresh registers.
SlaterPreparation prepare_slater(const OccupationVector &occupation, const BasisSet &basis,
                                 const IntegrationSpec &spec, unsigned qubit_cap = qubit_cap_from_environment());

/// Reference wavefunction over m grid registers, index x_1 + 2^l x_2 + ...:
/// det[phi_{j_a}(x_b)] / sqrt(m!) for fermions, the permanent over
/// sqrt(m! prod n_i!) for bosons.
std::vector<complex> slater_oracle(const OccupationVector &occupation, const BasisSet &basis);

} // namespace gridprep
