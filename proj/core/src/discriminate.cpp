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

#include "gridprep/discriminate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "gridprep/error.hpp"

namespace gridprep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac(double x) {
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

double circular_distance(double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void require_blank(const QuantumState &state, std::string_view segment) {
    require(std::abs(outcome_probability(state, segment, 0) - state.norm_squared()) <= 1e-10,
            ErrorKind::precondition, "readout '" + std::string(segment) + "' is not blank");
}

} // namespace

void phase_estimate(QuantumState &state, std::string_view target, const CMatrix &unitary,
                    std::string_view readout) {
    require(is_unitary(unitary), ErrorKind::validation, "phase estimation needs a unitary operator");
    require_blank(state, readout);
    const Segment r = state.segment(readout);
    for (unsigned j = 0; j < r.width; ++j) {
        apply_hadamard(state, r.qubit(j));
    }
    CMatrix power = unitary;
    for (unsigned j = 0; j < r.width; ++j) {
        const Control c{r.qubit(j), true};
        apply_unitary_on_segment(state, target, power, std::span<const Control>(&c, 1));
        if (j + 1 < r.width) {
            power = power * power;
        }
    }
    qft(state, readout, true);
}

void inverse_phase_estimate(QuantumState &state, std::string_view target, const CMatrix &unitary,
                            std::string_view readout) {
    require(is_unitary(unitary), ErrorKind::validation, "phase estimation needs a unitary operator");
    const Segment r = state.segment(readout);
    qft(state, readout, false);
    std::vector<CMatrix> powers{unitary.adjoint()};
    for (unsigned j = 1; j < r.width; ++j) {
        powers.push_back(powers.back() * powers.back());
    }
    for (unsigned j = r.width; j-- > 0;) {
        const Control c{r.qubit(j), true};
        apply_unitary_on_segment(state, target, powers[j], std::span<const Control>(&c, 1));
    }
    for (unsigned j = 0; j < r.width; ++j) {
        apply_hadamard(state, r.qubit(j));
    }
}

unsigned extra_qubits_for(double epsilon) {
    require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::domain, "phase-estimation epsilon must lie in (0, 1)");
    return static_cast<unsigned>(std::ceil(std::log2(2.0 + 1.0 / (2.0 * epsilon)) - 1e-12));
}

double misidentification_bound(unsigned extra_qubits) {
    require(extra_qubits >= 2, ErrorKind::domain, "misidentification bound needs p >= 2");
    return 1.0 / (2.0 * (std::ldexp(1.0, static_cast<int>(extra_qubits)) - 2.0));
}

// ---------------------------------------------------------------------------
// Symmetries

std::string_view to_string(SymmetryKind kind) {
    return kind == SymmetryKind::reflection ? "reflection" : "cyclic_shift";
}

SymmetryKind parse_symmetry(std::string_view name) {
    if (name == "reflection") {
        return SymmetryKind::reflection;
    }
    if (name == "cyclic_shift" || name == "shift") {
        return SymmetryKind::cyclic_shift;
    }
    fail(ErrorKind::configuration, "unknown symmetry kind '" + std::string(name) + "'");
}

SymmetryOperator SymmetryOperator::reflection(unsigned grid_bits) {
    const auto n = static_cast<Eigen::Index>(std::uint64_t{1} << grid_bits);
    SymmetryOperator op;
    op.kind = SymmetryKind::reflection;
    op.matrix = CMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        op.matrix((n - j) % n, j) = 1.0;
    }
    op.readout_qubits = 1;
    return op;
}

SymmetryOperator SymmetryOperator::cyclic_shift(unsigned grid_bits) {
    const auto n = static_cast<Eigen::Index>(std::uint64_t{1} << grid_bits);
    SymmetryOperator op;
    op.kind = SymmetryKind::cyclic_shift;
    op.matrix = CMatrix::Zero(n, n);
    for (Eigen::Index y = 0; y < n; ++y) {
        op.matrix((y + n - 1) % n, y) = 1.0;
    }
    op.readout_qubits = grid_bits;
    return op;
}

bool SymmetryOperator::commutes_with(const CMatrix &fock, double tolerance) const {
    if (fock.rows() != matrix.rows()) {
        return false;
    }
    return (fock * matrix - matrix * fock).cwiseAbs().maxCoeff() <= tolerance;
}

void symmetry_discriminate(QuantumState &state, std::string_view particle, const SymmetryOperator &op,
                           std::string_view readout, const CMatrix *fock) {
    if (fock != nullptr) {
        require(op.commutes_with(*fock), ErrorKind::configuration,
                std::string(to_string(op.kind)) + " does not commute with the Fock operator");
    }
    require(state.segment(readout).width == op.readout_qubits, ErrorKind::structural,
            "symmetry readout must be " + std::to_string(op.readout_qubits) + " qubits wide");
    phase_estimate(state, particle, op.matrix, readout);
}

// ---------------------------------------------------------------------------
// PhaseTable

PhaseTable::PhaseTable(const BasisSet &basis, std::span<const std::size_t> orbitals,
                       const PhaseEstimationOptions &options)
    : epsilon_(options.epsilon), symmetry_(options.symmetry) {
    require(!orbitals.empty(), ErrorKind::validation, "phase table needs at least one orbital");
    p_ = extra_qubits_for(options.epsilon);
    std::vector<std::size_t> ids(orbitals.begin(), orbitals.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    double e_max = 0.0;
    for (std::size_t id : ids) {
        require(id < basis.size(), ErrorKind::structural, "phase table orbital out of range");
        e_max = std::max(e_max, std::abs(basis.energy(id)));
    }
    time_ = options.time.value_or(kTwoPi * 0.9 / (e_max + 1.0));
    require(std::isfinite(time_) && time_ > 0.0, ErrorKind::configuration,
            "phase_estimation.time must be positive");
    evolution_ = basis.fock_evolution(time_);

    unsigned qs = 0;
    if (symmetry_) {
        require(symmetry_->matrix.rows() == static_cast<Eigen::Index>(std::uint64_t{1} << basis.grid_bits()),
                ErrorKind::configuration, "symmetry operator dimension does not match the grid");
        require(symmetry_->commutes_with(basis.fock_matrix()), ErrorKind::configuration,
                std::string(to_string(symmetry_->kind)) + " symmetry does not commute with the Fock operator");
        qs = symmetry_->readout_qubits;
    }

    for (std::size_t id : ids) {
        PhaseWindow w;
        w.orbital = id;
        w.energy = basis.energy(id);
        w.phase = frac(-w.energy * time_ / kTwoPi);
        if (symmetry_) {
            const auto &v = basis.grid_vector(id);
            Eigen::Map<const Eigen::VectorXcd> vec(v.data(), static_cast<Eigen::Index>(v.size()));
            const complex lambda = vec.dot(symmetry_->matrix * vec);
            require(std::abs(std::abs(lambda) - 1.0) <= 1e-8, ErrorKind::configuration,
                    "orbital " + std::to_string(id) + " is not an eigenstate of the " +
                        std::string(to_string(symmetry_->kind)) + " symmetry");
            const double scaled = frac(std::arg(lambda) / kTwoPi) * std::ldexp(1.0, static_cast<int>(qs));
            require(std::abs(scaled - std::round(scaled)) <= 1e-6, ErrorKind::configuration,
                    "symmetry eigenphase of orbital " + std::to_string(id) + " is not exact in " +
                        std::to_string(qs) + " readout qubits");
            w.symmetry_readout = static_cast<std::uint64_t>(std::llround(scaled)) % (std::uint64_t{1} << qs);
        }
        windows_.push_back(std::move(w));
    }

    // Smallest phase separation among orbitals the symmetry readout cannot tell apart.
    double separation = 1.0;
    bool any_pair = false;
    for (std::size_t a = 0; a < windows_.size(); ++a) {
        for (std::size_t b = a + 1; b < windows_.size(); ++b) {
            if (windows_[a].symmetry_readout != windows_[b].symmetry_readout) {
                continue;
            }
            const double d = circular_distance(windows_[a].phase, windows_[b].phase);
            require(d > 1e-12, ErrorKind::degeneracy,
                    "orbitals " + std::to_string(windows_[a].orbital) + " and " +
                        std::to_string(windows_[b].orbital) + " share energy " +
                        std::to_string(windows_[a].energy) +
                        " so their phase windows collide; add a symmetry readout or perturb the Fock operator");
            separation = std::min(separation, d);
            any_pair = true;
        }
    }
    n_ = any_pair ? std::max(1U, static_cast<unsigned>(std::ceil(std::log2(2.0 / separation) - 1e-12))) : 0U;
    q_ = options.readout_qubits.value_or(std::max(1U, n_ + p_));
    require(q_ >= 1 && q_ + qs <= 20, ErrorKind::resource, "phase-estimation readout wider than 20 qubits");

    const std::uint64_t size = std::uint64_t{1} << q_;
    const std::int64_t reach = (std::int64_t{1} << p_) - 1;
    for (auto &w : windows_) {
        const double scaled = w.phase * static_cast<double>(size);
        if (std::abs(scaled - std::round(scaled)) <= 1e-9) {
            w.readouts.push_back(static_cast<std::uint64_t>(std::llround(scaled)) % size);
            continue;
        }
        const auto b = static_cast<std::int64_t>(std::floor(scaled));
        const auto span = std::min<std::int64_t>(2 * reach + 1, static_cast<std::int64_t>(size));
        for (std::int64_t k = 0; k < span; ++k) {
            const std::int64_t r = b - reach + k;
            const auto s = static_cast<std::int64_t>(size);
            w.readouts.push_back(static_cast<std::uint64_t>(((r % s) + s) % s));
        }
    }

    lookup_.assign(static_cast<std::size_t>(size << qs), -1);
    for (std::size_t i = 0; i < windows_.size(); ++i) {
        const std::uint64_t key = windows_[i].symmetry_readout.value_or(0);
        for (std::uint64_t r : windows_[i].readouts) {
            int &slot = lookup_[static_cast<std::size_t>((key << q_) | r)];
            if (slot >= 0 && slot != static_cast<int>(i)) {
                const auto &other = windows_[static_cast<std::size_t>(slot)];
                fail(ErrorKind::degeneracy, "phase windows of orbitals " + std::to_string(other.orbital) +
                                                " (energy " + std::to_string(other.energy) + ") and " +
                                                std::to_string(windows_[i].orbital) + " (energy " +
                                                std::to_string(windows_[i].energy) + ") collide at " +
                                                std::to_string(q_) + " readout qubits");
            }
            slot = static_cast<int>(i);
        }
    }
}

std::optional<std::size_t> PhaseTable::lookup(std::uint64_t readout, std::uint64_t symmetry_readout) const {
    const std::size_t index = static_cast<std::size_t>((symmetry_readout << q_) | readout);
    if (index >= lookup_.size() || lookup_[index] < 0) {
        return std::nullopt;
    }
    return windows_[static_cast<std::size_t>(lookup_[index])].orbital;
}

std::uint64_t PhaseTable::comparisons_per_lookup() const {
    return windows_.size() <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(windows_.size() - 1));
}

std::vector<std::string> PhaseTable::describe() const {
    std::vector<std::string> out;
    for (const auto &w : windows_) {
        std::ostringstream line;
        line.precision(12);
        line << "orbital " << w.orbital << " energy " << w.energy << " phase " << w.phase << " readouts ";
        if (w.readouts.size() == 1) {
            line << w.readouts.front();
        } else {
            line << w.readouts.front() << ".." << w.readouts.back();
        }
        if (w.symmetry_readout) {
            line << " symmetry " << *w.symmetry_readout;
        }
        out.push_back(line.str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Uncomputation

IdentificationStats identify_and_decrement(QuantumState &state, std::span<const std::string> particles,
                                           const FockRegister &fock, const PhaseTable &table) {
    IdentificationStats stats;
    const std::string readout = fock.name + ".readout";
    const std::string symmetry = fock.name + ".symmetry";
    const auto &sym = table.symmetry();
    for (const auto &particle : particles) {
        state.add_segment(readout, Role::readout, table.readout_qubits());
        phase_estimate(state, particle, table.evolution(), readout);
        if (sym) {
            state.add_segment(symmetry, Role::readout, sym->readout_qubits);
            phase_estimate(state, particle, sym->matrix, symmetry);
        }
        const Segment r = state.segment(readout);
        const Segment f = state.segment(fock.name);
        const std::optional<Segment> s = sym ? std::optional<Segment>(state.segment(symmetry)) : std::nullopt;
        auto identify = [&](std::uint64_t i) { return table.lookup(r.value(i), s ? s->value(i) : 0); };

        auto amps = state.amplitudes();
        double ambiguous = 0.0;
        for (std::uint64_t i = 0; i < amps.size(); ++i) {
            if (amps[i] != complex{} && !identify(i)) {
                ambiguous += std::norm(amps[i]);
            }
        }
        stats.ambiguous_probability += ambiguous;

        const std::uint64_t slot_mask = (std::uint64_t{1} << fock.slot_bits) - 1;
        apply_basis_permutation(state, [&](std::uint64_t i) {
            const auto j = identify(i);
            if (!j) {
                return i;
            }
            const unsigned shift = static_cast<unsigned>(*j) * fock.slot_bits;
            std::uint64_t value = f.value(i);
            const std::uint64_t count = (value >> shift) & slot_mask;
            value = (value & ~(slot_mask << shift)) | (((count + slot_mask) & slot_mask) << shift);
            return f.with_value(i, value);
        });

        if (sym) {
            inverse_phase_estimate(state, particle, sym->matrix, symmetry);
        }
        inverse_phase_estimate(state, particle, table.evolution(), readout);
        if (sym) {
            stats.postselection_weight *= state.project_out_segment(symmetry);
        }
        stats.postselection_weight *= state.project_out_segment(readout);
        stats.lookup_comparisons += table.comparisons_per_lookup();
    }
    stats.ambiguous_probability = std::min(1.0, stats.ambiguous_probability);
    return stats;
}

Verification verify_uncomputation(QuantumState &state, std::string_view fock, std::uint64_t seed) {
    const std::string name(fock);
    return verify_uncomputation(state, std::span<const std::string>(&name, 1), seed);
}

Verification verify_uncomputation(QuantumState &state, std::span<const std::string> focks, std::uint64_t seed) {
    Verification out;
    const double weight = std::clamp(state.postselection_weight(), 0.0, 1.0);
    std::uint64_t mask = 0;
    for (const auto &name : focks) {
        mask |= state.segment(name).mask();
    }
    double blank = 0.0;
    const auto amps = std::as_const(state).amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == 0) {
            blank += std::norm(amps[i]);
        }
    }
    out.success_probability = weight * blank / state.norm_squared();
    std::mt19937_64 rng(seed);
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u >= weight) {
        out.outcome = ~std::uint64_t{0};
        return out;
    }
    std::uint64_t derived = mix_seed(seed);
    out.success = true;
    for (const auto &name : focks) {
        const Measurement m = measure_segment(state, name, derived);
        derived = mix_seed(derived);
        if (m.outcome != 0) {
            out.outcome = m.outcome;
            out.success = false;
            break;
        }
    }
    return out;
}

} // namespace gridprep
