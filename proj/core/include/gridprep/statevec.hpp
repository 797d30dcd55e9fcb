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
 * Dense statevector emulation over named qubit registers.
 *
 * Bit order is little-endian everywhere: bit 0 of a segment is its least
 * significant bit, and the segment occupies global bits
 * [offset, offset + width). Segments added later sit above earlier ones.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gridprep {

using complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr unsigned kDefaultQubitCap = 26;
inline constexpr unsigned kDefaultDensityCap = 12;

/// Qubit cap taken from GRIDPREP_QUBIT_CAP when set, else kDefaultQubitCap.
unsigned qubit_cap_from_environment();

enum class Role { fock, particle, readout, label, scratch };

std::string_view to_string(Role role);

struct Segment {
    std::string name;
    Role role = Role::scratch;
    unsigned offset = 0;
    unsigned width = 0;

    std::uint64_t dimension() const { return std::uint64_t{1} << width; }
    std::uint64_t mask() const { return (dimension() - 1) << offset; }
    std::uint64_t value(std::uint64_t index) const { return (index >> offset) & (dimension() - 1); }
    std::uint64_t with_value(std::uint64_t index, std::uint64_t v) const {
        return (index & ~mask()) | (v << offset);
    }
    unsigned qubit(unsigned bit) const { return offset + bit; }
};

class RegisterLayout {
  public:
    explicit RegisterLayout(unsigned cap = qubit_cap_from_environment());

    /// Appends a segment above the current top. Throws a resource error
    /// when the total would exceed the cap.
    const Segment &add(std::string name, Role role, unsigned width);
    /// Removes a segment; segments above it move down.
    void remove(std::string_view name);

    const Segment &at(std::string_view name) const;
    bool contains(std::string_view name) const;
    const std::vector<Segment> &segments() const { return segments_; }
    unsigned total_width() const { return total_; }
    unsigned cap() const { return cap_; }

  private:
    std::vector<Segment> segments_;
    unsigned cap_;
    unsigned total_ = 0;
};

class QuantumState {
  public:
    /// All qubits in |0>.
    explicit QuantumState(RegisterLayout layout = RegisterLayout{});

    static QuantumState from_amplitudes(RegisterLayout layout, std::vector<complex> amplitudes);

    const RegisterLayout &layout() const { return layout_; }
    const Segment &segment(std::string_view name) const { return layout_.at(name); }
    unsigned width() const { return layout_.total_width(); }
    std::size_t dimension() const { return amplitudes_.size(); }

    std::span<const complex> amplitudes() const { return amplitudes_; }
    std::span<complex> amplitudes() { return amplitudes_; }
    complex amplitude(std::uint64_t index) const;

    double norm_squared() const;
    void normalize();
    void set_basis_state(std::uint64_t index);

    /// New qubits start in |0>.
    const Segment &add_segment(std::string name, Role role, unsigned width);
    /// Drops a segment that is in |0...0>. Weight outside that subspace
    /// above `tolerance` is a precondition error.
    void release_segment(std::string_view name, double tolerance = 1e-10);
    /// Projects a segment onto |0...0>, drops it and renormalizes. Returns
    /// the probability of the retained branch and folds it into
    /// postselection_weight().
    double project_out_segment(std::string_view name);

    /// Product of the retained probabilities of every projective release so
    /// far; 1 for a state that has only seen unitary operations.
    double postselection_weight() const { return postselection_weight_; }
    void scale_postselection_weight(double factor) { postselection_weight_ *= factor; }

    /// Widest layout this state has had.
    unsigned peak_width() const { return peak_width_; }

  private:
    void drop_segment(const Segment &seg);

    RegisterLayout layout_;
    std::vector<complex> amplitudes_;
    double postselection_weight_ = 1.0;
    unsigned peak_width_ = 0;
};

class DensityMatrix {
  public:
    /// Validates trace 1, hermiticity and eigenvalues >= -tolerance.
    explicit DensityMatrix(CMatrix rho, double tolerance = 1e-10);

    static DensityMatrix pure(std::span<const complex> psi);
    /// sum_i weights[i] |states[i]><states[i]|
    static DensityMatrix mixture(std::span<const double> weights,
                                 std::span<const std::vector<complex>> states);

    const CMatrix &matrix() const { return rho_; }
    std::size_t dimension() const { return static_cast<std::size_t>(rho_.rows()); }
    complex operator()(std::size_t row, std::size_t col) const { return rho_(row, col); }
    double trace() const;
    double purity() const;
    Eigen::VectorXd eigenvalues() const;

  private:
    struct Trusted {};
    DensityMatrix(CMatrix rho, Trusted);
    friend DensityMatrix partial_trace(const QuantumState &, std::span<const std::string>, unsigned);

    CMatrix rho_;
};

struct Control {
    unsigned qubit;
    bool value = true;
};

/// Real rotation |0> -> cos|0> + sin|1>, |1> -> -sin|0> + cos|1> on `target`,
/// applied where every control qubit holds its required value.
void apply_rotation(QuantumState &state, unsigned target, double angle,
                    std::span<const Control> controls = {});

void apply_x(QuantumState &state, unsigned qubit);
void apply_hadamard(QuantumState &state, unsigned qubit);
/// diag(1, e^{i angle}) on `target` when `control` is 1.
void apply_controlled_phase(QuantumState &state, unsigned control, unsigned target, double angle);

/// Multiplies each amplitude by e^{i phase(x)}, x = the segment's value.
void apply_diagonal_phase(QuantumState &state, std::string_view segment,
                          const std::function<double(std::uint64_t)> &phase);

/// Applies a 2^w x 2^w unitary to a segment (tensor identity elsewhere),
/// optionally controlled. Rejects matrices with ||U^dag U - I|| > 1e-8.
void apply_unitary_on_segment(QuantumState &state, std::string_view segment, const CMatrix &unitary,
                              std::span<const Control> controls = {});

/// Exact DFT on the segment. Forward convention:
/// |j> -> 2^{-w/2} sum_k e^{+2 pi i jk / 2^w} |k>; inverse applies the adjoint.
void qft(QuantumState &state, std::string_view segment, bool inverse = false);

void swap_segments(QuantumState &state, std::string_view a, std::string_view b);

/// Applies the basis-state relabeling |i> -> |map(i)>. `map` must be a
/// bijection of [0, dimension); anything else is a validation error.
void apply_basis_permutation(QuantumState &state, const std::function<std::uint64_t(std::uint64_t)> &map);

struct Measurement {
    std::uint64_t outcome = 0;
    double probability = 0.0;
};

/// Born-rule sample of a segment; collapses and renormalizes `state`.
/// Deterministic for a fixed seed.
Measurement measure_segment(QuantumState &state, std::string_view segment, std::uint64_t seed);

/// Probability that `segment` reads `value`.
double outcome_probability(const QuantumState &state, std::string_view segment, std::uint64_t value);

/// Reduced density matrix over `keep` (keep[0] in the low bits).
/// F with F F^dagger equal to the reduced state on `keep`: one column per
/// traced-out basis value that carries weight. Not subject to the
/// density-matrix cap.
CMatrix purification_factor(const QuantumState &state, std::span<const std::string> keep);

DensityMatrix partial_trace(const QuantumState &state, std::span<const std::string> keep,
                            unsigned cap = kDefaultDensityCap);

/// Amplitudes over the concatenation of `segments` (segments[0] lowest),
/// assuming every other segment is |0>; weight elsewhere above 1e-10 is a
/// precondition error.
std::vector<complex> register_amplitudes(const QuantumState &state, std::span<const std::string> segments);

complex inner_product(std::span<const complex> bra, std::span<const complex> ket);
double norm_squared(std::span<const complex> v);

/// True when ||U^dag U - I||_max <= tolerance.
bool is_unitary(const CMatrix &m, double tolerance = 1e-8);

} // namespace gridprep
