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

#include "gridprep/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "gridprep/error.hpp"

namespace gridprep {

namespace {

bool controls_match(std::uint64_t index, std::span<const Control> controls) {
    for (const auto &c : controls) {
        if ((((index >> c.qubit) & 1U) != 0) != c.value) {
            return false;
        }
    }
    return true;
}

void check_qubit(const QuantumState &state, unsigned qubit) {
    require(qubit < state.width(), ErrorKind::structural,
            "qubit " + std::to_string(qubit) + " outside a " + std::to_string(state.width()) + "-qubit layout");
}

void check_controls(const QuantumState &state, unsigned target, std::span<const Control> controls) {
    check_qubit(state, target);
    for (const auto &c : controls) {
        check_qubit(state, c.qubit);
        require(c.qubit != target, ErrorKind::structural, "target qubit listed among its controls");
    }
}

} // namespace

unsigned qubit_cap_from_environment() {
    if (const char *env = std::getenv("GRIDPREP_QUBIT_CAP"); env != nullptr && *env != '\0') {
        char *end = nullptr;
        const long value = std::strtol(env, &end, 10);
        require(end != env && *end == '\0' && value > 0 && value <= 40, ErrorKind::configuration,
                "GRIDPREP_QUBIT_CAP must be an integer in [1, 40]");
        return static_cast<unsigned>(value);
    }
    return kDefaultQubitCap;
}

std::string_view to_string(Role role) {
    switch (role) {
    case Role::fock: return "fock";
    case Role::particle: return "particle";
    case Role::readout: return "readout";
    case Role::label: return "label";
    case Role::scratch: return "scratch";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(unsigned cap) : cap_(cap) {}

const Segment &RegisterLayout::add(std::string name, Role role, unsigned width) {
    require(width > 0, ErrorKind::structural, "segment '" + name + "' has zero width");
    require(!contains(name), ErrorKind::structural, "duplicate segment '" + name + "'");
    require(total_ + width <= cap_, ErrorKind::resource,
            "adding segment '" + name + "' needs " + std::to_string(total_ + width) +
                " qubits, above the qubit cap of " + std::to_string(cap_));
    segments_.push_back(Segment{std::move(name), role, total_, width});
    total_ += width;
    return segments_.back();
}

void RegisterLayout::remove(std::string_view name) {
    auto it = std::find_if(segments_.begin(), segments_.end(), [&](const Segment &s) { return s.name == name; });
    require(it != segments_.end(), ErrorKind::structural, "no segment named '" + std::string(name) + "'");
    const unsigned width = it->width;
    const unsigned offset = it->offset;
    segments_.erase(it);
    for (auto &s : segments_) {
        if (s.offset > offset) {
            s.offset -= width;
        }
    }
    total_ -= width;
}

const Segment &RegisterLayout::at(std::string_view name) const {
    for (const auto &s : segments_) {
        if (s.name == name) {
            return s;
        }
    }
    fail(ErrorKind::structural, "no segment named '" + std::string(name) + "'");
}

bool RegisterLayout::contains(std::string_view name) const {
    return std::any_of(segments_.begin(), segments_.end(), [&](const Segment &s) { return s.name == name; });
}

// ---------------------------------------------------------------------------
// QuantumState

QuantumState::QuantumState(RegisterLayout layout)
    : layout_(std::move(layout)), amplitudes_(std::size_t{1} << layout_.total_width()),
      peak_width_(layout_.total_width()) {
    amplitudes_[0] = 1.0;
}

QuantumState QuantumState::from_amplitudes(RegisterLayout layout, std::vector<complex> amplitudes) {
    require(amplitudes.size() == (std::size_t{1} << layout.total_width()), ErrorKind::structural,
            "amplitude vector length does not match 2^" + std::to_string(layout.total_width()));
    require(std::abs(gridprep::norm_squared(amplitudes) - 1.0) <= 1e-10, ErrorKind::validation,
            "amplitude vector is not normalized");
    QuantumState state(std::move(layout));
    state.amplitudes_ = std::move(amplitudes);
    return state;
}

complex QuantumState::amplitude(std::uint64_t index) const {
    require(index < amplitudes_.size(), ErrorKind::structural, "basis index out of range");
    return amplitudes_[index];
}

double QuantumState::norm_squared() const { return gridprep::norm_squared(amplitudes_); }

void QuantumState::normalize() {
    const double n2 = norm_squared();
    require(n2 > 0.0, ErrorKind::precondition, "cannot normalize the zero vector");
    const double scale = 1.0 / std::sqrt(n2);
    for (auto &a : amplitudes_) {
        a *= scale;
    }
}

void QuantumState::set_basis_state(std::uint64_t index) {
    require(index < amplitudes_.size(), ErrorKind::structural, "basis index out of range");
    std::fill(amplitudes_.begin(), amplitudes_.end(), complex{});
    amplitudes_[index] = 1.0;
}

const Segment &QuantumState::add_segment(std::string name, Role role, unsigned width) {
    const auto &seg = layout_.add(std::move(name), role, width);
    // The new segment is the top one, so existing indices keep their meaning.
    amplitudes_.resize(std::size_t{1} << layout_.total_width());
    peak_width_ = std::max(peak_width_, layout_.total_width());
    return seg;
}

void QuantumState::drop_segment(const Segment &seg) {
    const Segment copy = seg;
    const std::uint64_t low_mask = (std::uint64_t{1} << copy.offset) - 1;
    std::vector<complex> reduced(amplitudes_.size() >> copy.width);
    for (std::uint64_t j = 0; j < reduced.size(); ++j) {
        const std::uint64_t full = (j & low_mask) | ((j & ~low_mask) << copy.width);
        reduced[j] = amplitudes_[full];
    }
    amplitudes_ = std::move(reduced);
    layout_.remove(copy.name);
}

void QuantumState::release_segment(std::string_view name, double tolerance) {
    const Segment &seg = layout_.at(name);
    double outside = 0.0;
    for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & seg.mask()) != 0) {
            outside += std::norm(amplitudes_[i]);
        }
    }
    require(outside <= tolerance, ErrorKind::precondition,
            "segment '" + std::string(name) + "' is not blank (weight " + std::to_string(outside) +
                " outside |0>)");
    drop_segment(seg);
}

double QuantumState::project_out_segment(std::string_view name) {
    const Segment &seg = layout_.at(name);
    const double before = norm_squared();
    drop_segment(seg);
    const double after = norm_squared();
    require(after > 0.0, ErrorKind::identification,
            "projection of segment '" + std::string(name) + "' onto |0> has zero probability");
    normalize();
    const double retained = after / before;
    postselection_weight_ *= retained;
    return retained;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix rho, Trusted) : rho_(std::move(rho)) {}

DensityMatrix::DensityMatrix(CMatrix rho, double tolerance) : rho_(std::move(rho)) {
    require(rho_.rows() == rho_.cols() && rho_.rows() > 0, ErrorKind::validation,
            "density matrix must be square and non-empty");
    require(std::abs(rho_.trace().real() - 1.0) <= tolerance && std::abs(rho_.trace().imag()) <= tolerance,
            ErrorKind::validation, "density matrix trace differs from 1");
    require((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() <= tolerance, ErrorKind::validation,
            "density matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_, Eigen::EigenvaluesOnly);
    require(solver.eigenvalues().minCoeff() >= -tolerance, ErrorKind::validation,
            "density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(std::span<const complex> psi) {
    Eigen::Map<const Eigen::VectorXcd> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::mixture(std::span<const double> weights, std::span<const std::vector<complex>> states) {
    require(weights.size() == states.size() && !states.empty(), ErrorKind::validation,
            "mixture needs one weight per state");
    const auto dim = static_cast<Eigen::Index>(states.front().size());
    CMatrix rho = CMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < states.size(); ++i) {
        require(static_cast<Eigen::Index>(states[i].size()) == dim, ErrorKind::validation,
                "mixture states differ in dimension");
        Eigen::Map<const Eigen::VectorXcd> v(states[i].data(), dim);
        rho.noalias() += weights[i] * (v * v.adjoint());
    }
    return DensityMatrix(std::move(rho));
}

double DensityMatrix::trace() const { return rho_.trace().real(); }

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

// ---------------------------------------------------------------------------
// Gates

void apply_rotation(QuantumState &state, unsigned target, double angle, std::span<const Control> controls) {
    check_controls(state, target, controls);
    require(std::isfinite(angle), ErrorKind::validation, "rotation angle is not finite");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const std::uint64_t bit = std::uint64_t{1} << target;
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) != 0 || !controls_match(i, controls)) {
            continue;
        }
        const complex a0 = amps[i];
        const complex a1 = amps[i | bit];
        amps[i] = c * a0 - s * a1;
        amps[i | bit] = s * a0 + c * a1;
    }
}

void apply_x(QuantumState &state, unsigned qubit) {
    check_qubit(state, qubit);
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) == 0) {
            std::swap(amps[i], amps[i | bit]);
        }
    }
}

void apply_hadamard(QuantumState &state, unsigned qubit) {
    check_qubit(state, qubit);
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const double h = std::numbers::sqrt2 / 2.0;
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) == 0) {
            const complex a0 = amps[i];
            const complex a1 = amps[i | bit];
            amps[i] = h * (a0 + a1);
            amps[i | bit] = h * (a0 - a1);
        }
    }
}

void apply_controlled_phase(QuantumState &state, unsigned control, unsigned target, double angle) {
    check_qubit(state, control);
    check_qubit(state, target);
    const std::uint64_t both = (std::uint64_t{1} << control) | (std::uint64_t{1} << target);
    const complex factor = std::polar(1.0, angle);
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & both) == both) {
            amps[i] *= factor;
        }
    }
}

void apply_diagonal_phase(QuantumState &state, std::string_view segment,
                          const std::function<double(std::uint64_t)> &phase) {
    const Segment &seg = state.segment(segment);
    std::vector<complex> table(seg.dimension());
    for (std::uint64_t x = 0; x < table.size(); ++x) {
        table[x] = std::polar(1.0, phase(x));
    }
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        amps[i] *= table[seg.value(i)];
    }
}

bool is_unitary(const CMatrix &m, double tolerance) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const CMatrix defect = m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols());
    return defect.cwiseAbs().maxCoeff() <= tolerance;
}

void apply_unitary_on_segment(QuantumState &state, std::string_view segment, const CMatrix &unitary,
                              std::span<const Control> controls) {
    const Segment seg = state.segment(segment);
    require(static_cast<std::uint64_t>(unitary.rows()) == seg.dimension() && unitary.cols() == unitary.rows(),
            ErrorKind::structural,
            "matrix dimension does not match segment '" + seg.name + "' (2^" + std::to_string(seg.width) + ")");
    require(is_unitary(unitary), ErrorKind::validation, "matrix applied to '" + seg.name + "' is not unitary");
    for (const auto &c : controls) {
        check_qubit(state, c.qubit);
        require(((seg.mask() >> c.qubit) & 1U) == 0, ErrorKind::structural,
                "control qubit lies inside the target segment");
    }
    const std::uint64_t d = seg.dimension();
    auto amps = state.amplitudes();
    std::vector<complex> in(d);
    for (std::uint64_t base = 0; base < amps.size(); ++base) {
        if ((base & seg.mask()) != 0 || !controls_match(base, controls)) {
            continue;
        }
        bool any = false;
        for (std::uint64_t v = 0; v < d; ++v) {
            in[v] = amps[base | (v << seg.offset)];
            any = any || in[v] != complex{};
        }
        if (!any) {
            continue;
        }
        for (std::uint64_t r = 0; r < d; ++r) {
            complex acc{};
            for (std::uint64_t c = 0; c < d; ++c) {
                acc += unitary(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            }
            amps[base | (r << seg.offset)] = acc;
        }
    }
}

void qft(QuantumState &state, std::string_view segment, bool inverse) {
    const Segment seg = state.segment(segment);
    const unsigned w = seg.width;
    auto reverse_bits = [&] {
        for (unsigned i = 0; i < w / 2; ++i) {
            const unsigned a = seg.qubit(i);
            const unsigned b = seg.qubit(w - 1 - i);
            const std::uint64_t ba = std::uint64_t{1} << a;
            const std::uint64_t bb = std::uint64_t{1} << b;
            auto amps = state.amplitudes();
            for (std::uint64_t k = 0; k < amps.size(); ++k) {
                if ((k & ba) != 0 && (k & bb) == 0) {
                    std::swap(amps[k], amps[(k & ~ba) | bb]);
                }
            }
        }
    };
    if (!inverse) {
        for (unsigned a = w; a-- > 0;) {
            apply_hadamard(state, seg.qubit(a));
            for (unsigned b = a; b-- > 0;) {
                apply_controlled_phase(state, seg.qubit(b), seg.qubit(a),
                                       std::numbers::pi / static_cast<double>(std::uint64_t{1} << (a - b)));
            }
        }
        reverse_bits();
    } else {
        reverse_bits();
        for (unsigned a = 0; a < w; ++a) {
            for (unsigned b = 0; b < a; ++b) {
                apply_controlled_phase(state, seg.qubit(b), seg.qubit(a),
                                       -std::numbers::pi / static_cast<double>(std::uint64_t{1} << (a - b)));
            }
            apply_hadamard(state, seg.qubit(a));
        }
    }
}

void swap_segments(QuantumState &state, std::string_view a, std::string_view b) {
    const Segment sa = state.segment(a);
    const Segment sb = state.segment(b);
    require(sa.width == sb.width, ErrorKind::structural,
            "cannot swap '" + sa.name + "' and '" + sb.name + "': widths differ");
    if (sa.name == sb.name) {
        return;
    }
    apply_basis_permutation(state, [&](std::uint64_t i) {
        const std::uint64_t va = sa.value(i);
        const std::uint64_t vb = sb.value(i);
        return sb.with_value(sa.with_value(i, vb), va);
    });
}

void apply_basis_permutation(QuantumState &state, const std::function<std::uint64_t(std::uint64_t)> &map) {
    auto amps = state.amplitudes();
    std::vector<complex> out(amps.size());
    std::vector<bool> hit(amps.size(), false);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const std::uint64_t j = map(i);
        require(j < amps.size() && !hit[j], ErrorKind::validation, "basis map is not a bijection");
        hit[j] = true;
        out[j] = amps[i];
    }
    std::copy(out.begin(), out.end(), amps.begin());
}

double outcome_probability(const QuantumState &state, std::string_view segment, std::uint64_t value) {
    const Segment &seg = state.segment(segment);
    double p = 0.0;
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (seg.value(i) == value) {
            p += std::norm(amps[i]);
        }
    }
    return p;
}

Measurement measure_segment(QuantumState &state, std::string_view segment, std::uint64_t seed) {
    const Segment seg = state.segment(segment);
    std::vector<double> probabilities(seg.dimension(), 0.0);
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        probabilities[seg.value(i)] += std::norm(amps[i]);
    }
    double total = 0.0;
    for (double p : probabilities) {
        total += p;
    }
    require(total > 0.0, ErrorKind::precondition, "cannot measure a zero state");

    std::mt19937_64 rng(seed);
    // 53 random bits, platform independent.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    std::uint64_t outcome = 0;
    double cumulative = 0.0;
    for (std::uint64_t v = 0; v < probabilities.size(); ++v) {
        if (probabilities[v] <= 0.0) {
            continue;
        }
        outcome = v;
        cumulative += probabilities[v];
        if (u < cumulative) {
            break;
        }
    }
    require(probabilities[outcome] > 0.0, ErrorKind::precondition, "sampled an impossible outcome");

    const double scale = 1.0 / std::sqrt(probabilities[outcome]);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        amps[i] = seg.value(i) == outcome ? amps[i] * scale : complex{};
    }
    return Measurement{outcome, probabilities[outcome] / total};
}

CMatrix purification_factor(const QuantumState &state, std::span<const std::string> keep) {
    std::vector<Segment> kept;
    unsigned width = 0;
    std::uint64_t kept_mask = 0;
    for (const auto &name : keep) {
        kept.push_back(state.segment(name));
        width += kept.back().width;
        kept_mask |= kept.back().mask();
    }
    require(width <= 30, ErrorKind::resource, "purification factor wider than 30 qubits");
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << width);
    auto kept_index = [&](std::uint64_t i) {
        std::uint64_t k = 0;
        unsigned shift = 0;
        for (const auto &s : kept) {
            k |= s.value(i) << shift;
            shift += s.width;
        }
        return k;
    };

    // One column per traced-out basis value that carries weight.
    auto amps = state.amplitudes();
    const std::uint64_t rest_mask = (amps.size() - 1) & ~kept_mask;
    std::vector<std::uint64_t> full_of(static_cast<std::size_t>(dim));
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & rest_mask) == 0) {
            full_of[kept_index(i)] = i;
        }
    }
    std::vector<std::uint64_t> columns;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & kept_mask) != 0) {
            continue;
        }
        for (Eigen::Index k = 0; k < dim; ++k) {
            if (amps[full_of[static_cast<std::size_t>(k)] | i] != complex{}) {
                columns.push_back(i);
                break;
            }
        }
    }
    CMatrix f(dim, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            f(k, static_cast<Eigen::Index>(c)) = amps[full_of[static_cast<std::size_t>(k)] | columns[c]];
        }
    }
    const double total = f.squaredNorm();
    require(total > 0.0, ErrorKind::precondition, "partial trace of a zero state");
    f /= std::sqrt(total);
    return f;
}

DensityMatrix partial_trace(const QuantumState &state, std::span<const std::string> keep, unsigned cap) {
    unsigned width = 0;
    for (const auto &name : keep) {
        width += state.segment(name).width;
    }
    require(width <= cap, ErrorKind::resource,
            "reduced state needs " + std::to_string(width) + " qubits, above the density-matrix cap of " +
                std::to_string(cap));
    const CMatrix f = purification_factor(state, keep);
    CMatrix rho = f * f.adjoint();
    return DensityMatrix(std::move(rho), DensityMatrix::Trusted{});
}

std::vector<complex> register_amplitudes(const QuantumState &state, std::span<const std::string> segments) {
    std::vector<Segment> kept;
    unsigned width = 0;
    std::uint64_t kept_mask = 0;
    for (const auto &name : segments) {
        kept.push_back(state.segment(name));
        width += kept.back().width;
        kept_mask |= kept.back().mask();
    }
    std::vector<complex> out(std::size_t{1} << width);
    double outside = 0.0;
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & ~kept_mask) != 0) {
            outside += std::norm(amps[i]);
            continue;
        }
        std::uint64_t k = 0;
        unsigned shift = 0;
        for (const auto &s : kept) {
            k |= s.value(i) << shift;
            shift += s.width;
        }
        out[k] = amps[i];
    }
    require(outside <= 1e-10, ErrorKind::precondition,
            "registers outside the requested segments are not blank (weight " + std::to_string(outside) + ")");
    return out;
}

complex inner_product(std::span<const complex> bra, std::span<const complex> ket) {
    require(bra.size() == ket.size(), ErrorKind::structural, "inner product of vectors of different length");
    complex acc{};
    for (std::size_t i = 0; i < bra.size(); ++i) {
        acc += std::conj(bra[i]) * ket[i];
    }
    return acc;
}

double norm_squared(std::span<const complex> v) {
    double acc = 0.0;
    for (const auto &a : v) {
        acc += std::norm(a);
    }
    return acc;
}

} // namespace gridprep
