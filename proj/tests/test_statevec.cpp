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


#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "gridprep/analysis.hpp"
#include "gridprep/error.hpp"
#include "gridprep/statevec.hpp"
#include "oracle.hpp"

using namespace gridprep;

namespace {

constexpr double kPi = std::numbers::pi;

QuantumState blank(std::initializer_list<std::pair<const char *, unsigned>> segments) {
    RegisterLayout layout;
    for (const auto &[name, width] : segments) {
        layout.add(name, Role::scratch, width);
    }
    return QuantumState(std::move(layout));
}

std::vector<complex> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<complex> v(n);
    for (auto &a : v) {
        a = {g(rng), g(rng)};
    }
    return oracle::normalized(v);
}

QuantumState random_state(unsigned width, std::uint64_t seed) {
    RegisterLayout layout;
    layout.add("r", Role::scratch, width);
    return QuantumState::from_amplitudes(std::move(layout), random_vector(std::size_t{1} << width, seed));
}

std::vector<complex> amps(const QuantumState &s) {
    const auto a = s.amplitudes();
    return {a.begin(), a.end()};
}

} // namespace

TEST(Rotation, SymmetricSplit) {
    auto s = blank({{"q", 1}});
    apply_rotation(s, 0, std::acos(std::sqrt(0.5)));
    EXPECT_NEAR(s.amplitude(0).real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(s.amplitude(1).real(), 1 / std::sqrt(2.0), 1e-12);
}

TEST(Rotation, ZeroAngleIsIdentity) {
    auto s = blank({{"q", 1}});
    apply_rotation(s, 0, std::acos(1.0));
    EXPECT_EQ(s.amplitude(0), complex(1.0));
    EXPECT_EQ(s.amplitude(1), complex(0.0));
}

TEST(Rotation, ControlledQuarterTurn) {
    // qubit 0 set, qubit 1 clear; rotating qubit 1 under qubit 0 lands on index 3
    auto s = blank({{"q", 2}});
    s.set_basis_state(1);
    const Control c{0, true};
    apply_rotation(s, 1, kPi / 2, std::span<const Control>(&c, 1));
    EXPECT_NEAR(std::abs(s.amplitude(3)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitude(1)), 0.0, 1e-12);
}

TEST(Rotation, UnsatisfiedControlLeavesState) {
    auto s = blank({{"q", 2}});
    const Control c{0, true};
    apply_rotation(s, 1, kPi / 2, std::span<const Control>(&c, 1));
    EXPECT_EQ(s.amplitude(0), complex(1.0));
}

TEST(Rotation, InverseAngleRestoresRandomStates) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto s = random_state(4, seed);
        const auto before = amps(s);
        const double theta = 0.1 + 0.3 * static_cast<double>(seed);
        const unsigned target = seed % 4;
        apply_rotation(s, target, theta);
        apply_rotation(s, target, -theta);
        for (std::size_t i = 0; i < before.size(); ++i) {
            EXPECT_NEAR(std::abs(before[i] - s.amplitude(i)), 0.0, 1e-12);
        }
    }
}

TEST(DiagonalPhase, ZeroPhaseUnchanged) {
    auto s = blank({{"x", 1}});
    apply_hadamard(s, 0);
    const auto before = amps(s);
    apply_diagonal_phase(s, "x", [](std::uint64_t) { return 0.0; });
    EXPECT_EQ(before, amps(s));
}

TEST(DiagonalPhase, ForcedSign) {
    auto s = blank({{"x", 1}});
    apply_hadamard(s, 0);
    apply_diagonal_phase(s, "x", [](std::uint64_t x) { return kPi * static_cast<double>(x); });
    EXPECT_NEAR(s.amplitude(0).real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(s.amplitude(1).real(), -1 / std::sqrt(2.0), 1e-12);
}

TEST(DiagonalPhase, FourSiteQuarterTurns) {
    auto s = blank({{"x", 2}});
    apply_hadamard(s, 0);
    apply_hadamard(s, 1);
    apply_diagonal_phase(s, "x", [](std::uint64_t x) { return 2 * kPi * static_cast<double>(x) / 4; });
    const complex expected[] = {{0.5, 0}, {0, 0.5}, {-0.5, 0}, {0, -0.5}};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(s.amplitude(i) - expected[i]), 0.0, 1e-12);
    }
}

TEST(SegmentUnitary, IdentityAndHadamard) {
    auto s = random_state(3, 7);
    const auto before = amps(s);
    apply_unitary_on_segment(s, "r", CMatrix::Identity(8, 8));
    for (std::size_t i = 0; i < before.size(); ++i) {
        EXPECT_NEAR(std::abs(before[i] - s.amplitude(i)), 0.0, 1e-14);
    }

    auto h = blank({{"x", 1}});
    CMatrix had(2, 2);
    had << 1, 1, 1, -1;
    had /= std::sqrt(2.0);
    apply_unitary_on_segment(h, "x", had);
    EXPECT_NEAR(h.amplitude(0).real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(h.amplitude(1).real(), 1 / std::sqrt(2.0), 1e-12);
}

TEST(SegmentUnitary, CyclicShiftPermutation) {
    auto s = blank({{"lo", 1}, {"x", 2}});
    CMatrix shift = CMatrix::Zero(4, 4);
    for (int j = 0; j < 4; ++j) {
        shift((j + 1) % 4, j) = 1.0;
    }
    const Segment x = s.segment("x");
    s.set_basis_state(x.with_value(0, 1));
    apply_unitary_on_segment(s, "x", shift);
    EXPECT_NEAR(std::abs(s.amplitude(x.with_value(0, 2))), 1.0, 1e-14);
}

TEST(SegmentUnitary, RejectsNonUnitary) {
    auto s = blank({{"x", 1}});
    CMatrix bad = CMatrix::Identity(2, 2) * 2.0;
    try {
        apply_unitary_on_segment(s, "x", bad);
        FAIL() << "expected a validation error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::validation);
    }
}

TEST(Qft, SingleQubitIsHadamard) {
    auto s = blank({{"x", 1}});
    qft(s, "x");
    EXPECT_NEAR(s.amplitude(0).real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(s.amplitude(1).real(), 1 / std::sqrt(2.0), 1e-12);
}

TEST(Qft, PositiveSignConvention) {
    auto s = blank({{"x", 2}});
    s.set_basis_state(1);
    qft(s, "x");
    const complex expected[] = {{0.5, 0}, {0, 0.5}, {-0.5, 0}, {0, -0.5}};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(s.amplitude(i) - expected[i]), 0.0, 1e-12);
    }
}

TEST(Qft, MatchesDirectTransform) {
    for (unsigned w = 1; w <= 5; ++w) {
        auto s = random_state(w, 100 + w);
        const auto in = amps(s);
        qft(s, "r");
        const std::size_t n = in.size();
        for (std::size_t k = 0; k < n; ++k) {
            complex sum{};
            for (std::size_t j = 0; j < n; ++j) {
                sum += std::polar(1.0, 2 * kPi * static_cast<double>(j * k) / static_cast<double>(n)) * in[j];
            }
            EXPECT_NEAR(std::abs(sum / std::sqrt(static_cast<double>(n)) - s.amplitude(k)), 0.0, 1e-12);
        }
    }
}

TEST(Qft, InverseRestoresRandomStates) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto s = random_state(6, seed);
        const auto before = amps(s);
        qft(s, "r");
        qft(s, "r", true);
        for (std::size_t i = 0; i < before.size(); ++i) {
            EXPECT_NEAR(std::abs(before[i] - s.amplitude(i)), 0.0, 1e-12);
        }
    }
}

TEST(SwapSegments, Examples) {
    auto s = blank({{"a", 2}, {"b", 2}});
    const Segment a = s.segment("a");
    const Segment b = s.segment("b");
    s.set_basis_state(b.with_value(a.with_value(0, 3), 3));
    swap_segments(s, "a", "b");
    EXPECT_EQ(s.amplitude(b.with_value(a.with_value(0, 3), 3)), complex(1.0));

    s.set_basis_state(b.with_value(a.with_value(0, 1), 2));
    swap_segments(s, "a", "b");
    EXPECT_EQ(s.amplitude(b.with_value(a.with_value(0, 2), 1)), complex(1.0));
}

TEST(SwapSegments, TwiceIsIdentity) {
    RegisterLayout layout;
    layout.add("a", Role::particle, 2);
    layout.add("b", Role::particle, 2);
    auto s = QuantumState::from_amplitudes(std::move(layout), random_vector(16, 3));
    const auto before = amps(s);
    swap_segments(s, "a", "b");
    swap_segments(s, "a", "b");
    EXPECT_EQ(before, amps(s));
}

TEST(Measure, DeterministicOutcome) {
    auto s = blank({{"x", 3}});
    s.set_basis_state(5);
    const auto m = measure_segment(s, "x", 42);
    EXPECT_EQ(m.outcome, 5U);
    EXPECT_NEAR(m.probability, 1.0, 1e-15);
    EXPECT_EQ(s.amplitude(5), complex(1.0));
}

TEST(Measure, BornRuleFrequency) {
    int zeros = 0;
    const int trials = 10000;
    for (int seed = 0; seed < trials; ++seed) {
        auto s = blank({{"x", 1}});
        apply_hadamard(s, 0);
        zeros += measure_segment(s, "x", static_cast<std::uint64_t>(seed)).outcome == 0 ? 1 : 0;
    }
    EXPECT_NEAR(static_cast<double>(zeros) / trials, 0.5, 0.02);
}

TEST(Measure, UnentangledRestUnchanged) {
    RegisterLayout layout;
    layout.add("a", Role::scratch, 2);
    layout.add("b", Role::scratch, 2);
    const auto va = random_vector(4, 1);
    const auto vb = random_vector(4, 2);
    auto s = QuantumState::from_amplitudes(std::move(layout), oracle::kron({va, vb}));
    const auto outcome = measure_segment(s, "a", 9).outcome;
    const auto a = std::as_const(s).amplitudes();
    std::vector<complex> rest;
    for (std::uint64_t j = 0; j < 4; ++j) {
        rest.push_back(a[outcome + 4 * j]);
    }
    EXPECT_NEAR(pure_infidelity(rest, vb), 0.0, 1e-12);
}

TEST(PartialTrace, ProductStateKeepsProjector) {
    RegisterLayout layout;
    layout.add("a", Role::scratch, 2);
    layout.add("b", Role::scratch, 2);
    const auto va = random_vector(4, 11);
    const auto vb = random_vector(4, 12);
    auto s = QuantumState::from_amplitudes(std::move(layout), oracle::kron({va, vb}));
    const std::vector<std::string> keep{"a"};
    const DensityMatrix rho = partial_trace(s, keep);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-10);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            EXPECT_NEAR(std::abs(rho(r, c) - va[r] * std::conj(va[c])), 0.0, 1e-12);
        }
    }
}

TEST(PartialTrace, BellPairIsMaximallyMixed) {
    auto s = blank({{"a", 1}, {"b", 1}});
    apply_hadamard(s, 0);
    s.amplitudes()[3] = s.amplitude(1);
    s.amplitudes()[1] = 0.0;
    const std::vector<std::string> keep{"b"};
    const DensityMatrix rho = partial_trace(s, keep);
    EXPECT_NEAR(std::abs(rho(0, 0) - 0.5), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(rho(1, 1) - 0.5), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(rho(0, 1)), 0.0, 1e-12);
}

TEST(PartialTrace, FlaggedMixtureOfOrthogonalStates) {
    const double p0 = 0.3;
    const double p1 = 0.7;
    const std::vector<complex> psi0{{0.6, 0}, {0, 0.8}, 0, 0};
    const std::vector<complex> psi1{0, 0, {0, 1 / std::sqrt(2.0)}, {1 / std::sqrt(2.0), 0}};
    std::vector<complex> joint(8);
    for (int j = 0; j < 4; ++j) {
        joint[2 * j] = std::sqrt(p0) * psi0[j];
        joint[2 * j + 1] = std::sqrt(p1) * psi1[j];
    }
    RegisterLayout layout;
    layout.add("flag", Role::label, 1);
    layout.add("sys", Role::particle, 2);
    auto s = QuantumState::from_amplitudes(std::move(layout), joint);
    const std::vector<std::string> keep{"sys"};
    const DensityMatrix rho = partial_trace(s, keep);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const complex want = p0 * psi0[r] * std::conj(psi0[c]) + p1 * psi1[r] * std::conj(psi1[c]);
            EXPECT_NEAR(std::abs(rho(r, c) - want), 0.0, 1e-12);
        }
    }
}

TEST(PartialTrace, DensityCapIsAResourceError) {
    auto s = blank({{"a", 5}, {"b", 1}});
    const std::vector<std::string> keep{"a"};
    try {
        partial_trace(s, keep, 4);
        FAIL() << "expected a resource error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::resource);
    }
}

TEST(Layout, QubitCapIsAResourceError) {
    RegisterLayout layout(6);
    layout.add("a", Role::scratch, 4);
    try {
        layout.add("b", Role::scratch, 3);
        FAIL() << "expected a resource error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::resource);
        EXPECT_NE(std::string(e.what()).find("6"), std::string::npos);
    }
}

TEST(Layout, SegmentsAboveMoveDownOnRemove) {
    RegisterLayout layout;
    layout.add("a", Role::scratch, 2);
    layout.add("b", Role::scratch, 3);
    layout.add("c", Role::scratch, 1);
    layout.remove("b");
    EXPECT_EQ(layout.at("c").offset, 2U);
    EXPECT_EQ(layout.total_width(), 3U);
}

TEST(Segments, ReleaseRequiresBlank) {
    auto s = blank({{"a", 1}, {"b", 1}});
    apply_hadamard(s, s.segment("b").qubit(0));
    try {
        s.release_segment("b");
        FAIL() << "expected a precondition error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::precondition);
    }
    s.release_segment("a");
    EXPECT_EQ(s.width(), 1U);
}

TEST(Segments, ProjectOutTracksWeight) {
    auto s = blank({{"a", 1}, {"b", 1}});
    apply_rotation(s, s.segment("b").qubit(0), std::acos(std::sqrt(0.25)));
    const double kept = s.project_out_segment("b");
    EXPECT_NEAR(kept, 0.25, 1e-12);
    EXPECT_NEAR(s.postselection_weight(), 0.25, 1e-12);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(Invariants, EveryUnitaryCallPreservesNorm) {
    auto s = random_state(5, 77);
    auto check = [&] { EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10); };
    apply_rotation(s, 2, 0.7);
    check();
    apply_x(s, 1);
    check();
    apply_hadamard(s, 4);
    check();
    apply_controlled_phase(s, 0, 3, 1.1);
    check();
    apply_diagonal_phase(s, "r", [](std::uint64_t x) { return 0.3 * static_cast<double>(x); });
    check();
    qft(s, "r");
    check();
    apply_basis_permutation(s, [](std::uint64_t i) { return i ^ 5U; });
    check();
}
