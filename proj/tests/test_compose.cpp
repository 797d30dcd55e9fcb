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


#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "derived_values.hpp"
#include "gridprep/compose.hpp"
#include "gridprep/error.hpp"
#include "oracle.hpp"

using namespace gridprep;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

BasisSet box_basis(unsigned count, unsigned l) {
    std::vector<Orbital> orbitals;
    for (unsigned n = 1; n <= count; ++n) {
        orbitals.push_back(Orbital::box_sine(static_cast<int>(n), 1.0, n));
    }
    return BasisSet(std::move(orbitals), l);
}

// Energies 1..M with t = 2 pi / 2^q: every phase sits on the readout grid.
ComposeOptions exact_options(unsigned q = 3) {
    ComposeOptions o;
    o.phase_estimation.time = kTwoPi / std::ldexp(1.0, static_cast<int>(q));
    o.phase_estimation.readout_qubits = q;
    return o;
}

OccupationVector fermions(const char *text) { return OccupationVector::parse(text, Statistics::fermionic); }

FockSuperposition pair(const char *a, complex ca, const char *b, complex cb) {
    return FockSuperposition({{fermions(a), ca}, {fermions(b), cb}});
}

CMatrix projector(const std::vector<complex> &v) {
    Eigen::Map<const Eigen::VectorXcd> m(v.data(), static_cast<Eigen::Index>(v.size()));
    return m * m.adjoint();
}

complex element(const CMatrix &rho, const std::vector<complex> &a, const std::vector<complex> &b) {
    Eigen::Map<const Eigen::VectorXcd> va(a.data(), static_cast<Eigen::Index>(a.size()));
    Eigen::Map<const Eigen::VectorXcd> vb(b.data(), static_cast<Eigen::Index>(b.size()));
    return va.dot(rho * vb);
}

} // namespace

TEST(FockSuperposition, RejectsBadInput) {
    EXPECT_THROW(pair("1100", 1.0, "1100", 0.0), Error);
    EXPECT_THROW(pair("1100", 1.0, "0011", 1.0), Error);
    EXPECT_THROW(pair("1100", 0.6, "0010", 0.8), Error);
    EXPECT_NO_THROW(pair("1100", 0.6, "0011", complex(0, 0.8)));
}

TEST(ThermalWeights, TwoLevelGibbs) {
    const auto w = thermal_weights(1.0, {0.0, 1.0});
    EXPECT_NEAR(w.weights[0], derived::kGibbsGround, 1e-12);
    EXPECT_NEAR(w.weights[1], derived::kGibbsExcited, 1e-12);
    EXPECT_NEAR(w.partition_function, 1 + std::exp(-1.0), 1e-12);
}

TEST(ThermalWeights, LargeEnergiesStayFinite) {
    const auto w = thermal_weights(10.0, {1000.0, 1001.0});
    EXPECT_NEAR(w.weights[0], 1 / (1 + std::exp(-10.0)), 1e-12);
}

TEST(Superposition, SingleTermReducesToSlater) {
    const BasisSet basis = box_basis(3, 4);
    const FockSuperposition sup({{fermions("101"), 1.0}});
    const auto run = prepare_superposition(sup, basis, exact_options());
    EXPECT_LE(pure_infidelity(run.amplitudes(), slater_oracle(fermions("101"), basis)), 1e-9);
}

TEST(Superposition, EqualPairOfDeterminants) {
    const BasisSet basis = box_basis(4, 3);
    const auto sup = pair("1100", 1 / std::sqrt(2.0), "0011", 1 / std::sqrt(2.0));
    const auto run = prepare_superposition(sup, basis, exact_options());
    const auto want = oracle::add(slater_oracle(fermions("1100"), basis), 1 / std::sqrt(2.0),
                                  slater_oracle(fermions("0011"), basis), 1 / std::sqrt(2.0));
    EXPECT_LE(pure_infidelity(run.amplitudes(), want), 1e-9);
    EXPECT_LE(pure_infidelity(run.amplitudes(), superposition_oracle(sup, basis)), 1e-9);
    ASSERT_TRUE(run.report.phase_estimation.has_value());
    EXPECT_NEAR(run.report.phase_estimation->success_probability, 1.0, 1e-10);
}

TEST(Superposition, WeightsLandOnTheRightDeterminants) {
    const BasisSet basis = box_basis(4, 3);
    const auto sup = pair("1100", std::sqrt(0.36), "0011", complex(0, std::sqrt(0.64)));
    const auto run = prepare_superposition(sup, basis, exact_options());
    const auto out = run.amplitudes();
    EXPECT_NEAR(std::norm(oracle::dot(slater_oracle(fermions("1100"), basis), out)), 0.36, 1e-8);
    EXPECT_NEAR(std::norm(oracle::dot(slater_oracle(fermions("0011"), basis), out)), 0.64, 1e-8);
}

TEST(Superposition, RelativePhaseIsKept) {
    const BasisSet basis = box_basis(4, 3);
    const auto sup = pair("1100", std::sqrt(0.5), "0011", complex(0, std::sqrt(0.5)));
    const auto run = prepare_superposition(sup, basis, exact_options());
    const auto out = run.amplitudes();
    const complex a = oracle::dot(slater_oracle(fermions("1100"), basis), out);
    const complex b = oracle::dot(slater_oracle(fermions("0011"), basis), out);
    EXPECT_NEAR(std::arg(b / a), std::numbers::pi / 2, 1e-8);
}

TEST(Superposition, ExactPhasesNeverRetry) {
    const BasisSet basis = box_basis(4, 3);
    const auto sup = pair("1010", 0.6, "0101", 0.8);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        ComposeOptions o = exact_options();
        o.seed = seed;
        const auto run = prepare_superposition(sup, basis, o);
        EXPECT_EQ(run.report.phase_estimation->retries, 0U);
        EXPECT_NEAR(run.report.phase_estimation->success_probability, 1.0, 1e-10);
    }
}

TEST(Superposition, FockRegistersAreReleased) {
    const BasisSet basis = box_basis(4, 3);
    const auto run = prepare_superposition(pair("1100", 0.6, "0011", 0.8), basis, exact_options());
    EXPECT_EQ(run.state.width(), 6U);
    EXPECT_GT(run.report.peak_qubits, 6U);
}

TEST(Superposition, OverlappingConfigurationsUseTheIdentificationPath) {
    const BasisSet basis = box_basis(3, 3);
    const FockSuperposition sup({{fermions("110"), 0.6}, {fermions("101"), 0.48}, {fermions("011"), 0.64}});
    const auto run = prepare_superposition(sup, basis, exact_options());
    EXPECT_LE(pure_infidelity(run.amplitudes(), superposition_oracle(sup, basis)), 1e-9);
}

TEST(Superposition, BosonsWithUniformMultiplicity) {
    const BasisSet basis = box_basis(3, 3);
    const FockSuperposition sup({{OccupationVector::parse("2,0,0", Statistics::bosonic), 0.6},
                                 {OccupationVector::parse("0,0,2", Statistics::bosonic), 0.8}});
    const auto run = prepare_superposition(sup, basis, exact_options());
    EXPECT_LE(pure_infidelity(run.amplitudes(), superposition_oracle(sup, basis)), 1e-9);
}

TEST(Superposition, DegenerateEnergiesWithoutSymmetryFail) {
    const BasisSet basis({Orbital::plane_wave(0, 1.0, 0.0), Orbital::plane_wave(1, 1.0, 1.0),
                          Orbital::plane_wave(-1, 1.0, 1.0)},
                         3);
    const auto sup = pair("110", 0.6, "101", 0.8);
    try {
        prepare_superposition(sup, basis, {});
        FAIL() << "expected a degeneracy error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::degeneracy);
    }
    ComposeOptions with_shift;
    with_shift.phase_estimation.symmetry = SymmetryOperator::cyclic_shift(3);
    const auto run = prepare_superposition(sup, basis, with_shift);
    EXPECT_LE(pure_infidelity(run.amplitudes(), superposition_oracle(sup, basis)), 1e-9);
}

TEST(TwoSpecies, RankOneIsAProduct) {
    const BasisSet a = box_basis(3, 3);
    const BasisSet b = box_basis(2, 3);
    Species sa{&a, {fermions("110"), fermions("011")}, {}};
    Species sb{&b, {fermions("10"), fermions("01")}, {}};
    const std::vector<JointTerm> theta{{1, 0, 1.0}};
    const auto run = prepare_two_species(sa, sb, theta, {});
    EXPECT_LE(pure_infidelity(run.amplitudes(), two_species_oracle(sa, sb, theta)), 1e-9);
    const std::vector<std::string> keep{"A.p0", "A.p1"};
    EXPECT_NEAR(partial_trace(run.state, keep).purity(), 1.0, 1e-8);
}

TEST(TwoSpecies, EntangledPairHasHalfPurity) {
    const BasisSet a = box_basis(3, 3);
    const BasisSet b = box_basis(2, 3);
    const auto pe = exact_options(2).phase_estimation;
    Species sa{&a, {fermions("110"), fermions("011")}, pe};
    Species sb{&b, {fermions("10"), fermions("01")}, pe};
    const std::vector<JointTerm> theta{{0, 0, 1 / std::sqrt(2.0)}, {1, 1, 1 / std::sqrt(2.0)}};
    const auto run = prepare_two_species(sa, sb, theta, {});
    EXPECT_LE(pure_infidelity(run.amplitudes(), two_species_oracle(sa, sb, theta)), 1e-9);
    const std::vector<std::string> keep{"A.p0", "A.p1"};
    EXPECT_NEAR(partial_trace(run.state, keep).purity(), 0.5, 1e-8);
}

TEST(TwoSpecies, AntisymmetryOnlyWithinASpecies) {
    const BasisSet a = box_basis(3, 3);
    const BasisSet b = box_basis(2, 3);
    Species sa{&a, {fermions("110")}, {}};
    Species sb{&b, {fermions("10")}, {}};
    const std::vector<JointTerm> theta{{0, 0, 1.0}};
    const auto run = prepare_two_species(sa, sb, theta, {});
    QuantumState swapped = run.state;
    swap_segments(swapped, "A.p0", "A.p1");
    EXPECT_NEAR(inner_product(run.state.amplitudes(), std::as_const(swapped).amplitudes()).real(), -1.0, 1e-10);
    EXPECT_EQ(run.particles.size(), 3U);
}

TEST(Mixed, SingleEntryIsPure) {
    const BasisSet basis = box_basis(3, 3);
    const MixedSpec spec({{1.0, pair("110", 0.6, "011", 0.8)}});
    const auto run = prepare_mixed(spec, basis, exact_options());
    EXPECT_NEAR(run.rho.purity(), 1.0, 1e-10);
}

TEST(Mixed, InfiniteTemperatureIsUniform) {
    const BasisSet basis = box_basis(3, 3);
    std::vector<FockSuperposition> states;
    for (const char *occ : {"100", "010", "001"}) {
        states.push_back(FockSuperposition({{fermions(occ), 1.0}}));
    }
    const auto spec = MixedSpec::thermal(0.0, basis.energies(), states);
    const auto run = prepare_mixed(spec, basis, exact_options());
    const Eigen::VectorXd ev = run.rho.eigenvalues();
    std::vector<double> sorted(ev.data(), ev.data() + ev.size());
    std::sort(sorted.rbegin(), sorted.rend());
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(sorted[i], 1.0 / 3.0, 1e-8);
    }
    EXPECT_NEAR(sorted[3], 0.0, 1e-8);
}

TEST(Mixed, TwoLevelThermalWeights) {
    const BasisSet basis({Orbital::box_sine(1, 1.0, 0.0), Orbital::box_sine(2, 1.0, 1.0)}, 4);
    std::vector<FockSuperposition> states{FockSuperposition({{fermions("10"), 1.0}}),
                                          FockSuperposition({{fermions("01"), 1.0}})};
    const auto spec = MixedSpec::thermal(1.0, {0.0, 1.0}, states);
    const auto run = prepare_mixed(spec, basis, {});
    EXPECT_NEAR(element(run.rho.matrix(), basis.grid_vector(0), basis.grid_vector(0)).real(), derived::kGibbsGround,
                1e-6);
    EXPECT_NEAR(element(run.rho.matrix(), basis.grid_vector(1), basis.grid_vector(1)).real(), derived::kGibbsExcited,
                1e-6);
}

TEST(Mixed, PurificationMatchesDirectMixture) {
    const BasisSet basis = box_basis(4, 3);
    const MixedSpec spec({{0.3, pair("1100", 0.6, "0011", 0.8)}, {0.7, pair("1010", 0.8, "0101", complex(0, 0.6))}});
    const auto run = prepare_mixed(spec, basis, exact_options());
    const CMatrix want = mixed_oracle(spec, basis);
    EXPECT_LE((run.rho.matrix() - want).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LE((run.factor * run.factor.adjoint() - want).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Mixed, DensityCapIsAResourceError) {
    const BasisSet basis = box_basis(3, 5);
    const MixedSpec spec({{1.0, FockSuperposition({{fermions("111"), 1.0}})}});
    ComposeOptions o;
    o.density_cap = 12;
    try {
        prepare_mixed(spec, basis, o);
        FAIL() << "expected a resource error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::resource);
    }
}

TEST(DiagonalMixed, EqualPairIsHalfHalfInTheDeterminantBasis) {
    const BasisSet basis = box_basis(4, 3);
    const auto sup = pair("1100", 1 / std::sqrt(2.0), "0011", 1 / std::sqrt(2.0));
    const auto run = prepare_diagonal_mixed(sup, basis, exact_options());
    const auto a = slater_oracle(fermions("1100"), basis);
    const auto b = slater_oracle(fermions("0011"), basis);
    EXPECT_NEAR(element(run.rho.matrix(), a, a).real(), 0.5, 1e-8);
    EXPECT_NEAR(element(run.rho.matrix(), b, b).real(), 0.5, 1e-8);
    EXPECT_LE(std::abs(element(run.rho.matrix(), a, b)), 1e-8);
}

TEST(DiagonalMixed, SingleTermIsThePureProjector) {
    const BasisSet basis = box_basis(3, 3);
    const FockSuperposition sup({{fermions("011"), 1.0}});
    const auto run = prepare_diagonal_mixed(sup, basis, {});
    const CMatrix want = projector(slater_oracle(fermions("011"), basis));
    EXPECT_LE((run.rho.matrix() - want).cwiseAbs().maxCoeff(), 1e-10);
}
