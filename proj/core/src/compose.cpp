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

#include "gridprep/compose.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "gridprep/error.hpp"
#include "gridprep/loader.hpp"

namespace gridprep {

// ---------------------------------------------------------------------------
// Input types

FockSuperposition::FockSuperposition(std::vector<FockTerm> terms) : terms_(std::move(terms)) {
    require(!terms_.empty(), ErrorKind::validation, "superposition has no terms");
    const auto &first = terms_.front().occupation;
    double total = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto &occ = terms_[i].occupation;
        require(occ.orbitals() == first.orbitals(), ErrorKind::validation,
                "superposition terms differ in the number of orbitals");
        require(occ.particles() == first.particles(), ErrorKind::validation,
                "superposition terms differ in particle number");
        require(occ.statistics() == first.statistics(), ErrorKind::validation,
                "superposition terms differ in statistics");
        for (std::size_t j = 0; j < i; ++j) {
            require(!(terms_[j].occupation == occ), ErrorKind::validation,
                    "occupation " + occ.to_string() + " appears twice in the superposition");
        }
        total += std::norm(terms_[i].amplitude);
    }
    require(std::abs(total - 1.0) <= 1e-10, ErrorKind::validation,
            "superposition amplitudes have squared norm " + std::to_string(total) + ", not 1");
}

ThermalWeights thermal_weights(double beta, const std::vector<double> &energies) {
    require(!energies.empty(), ErrorKind::validation, "thermal state needs at least one energy");
    require(std::isfinite(beta), ErrorKind::validation, "thermal beta must be finite");
    double shift = beta * energies.front();
    for (double e : energies) {
        require(std::isfinite(e), ErrorKind::validation, "thermal energies must be finite");
        shift = std::min(shift, beta * e);
    }
    ThermalWeights out;
    double sum = 0.0;
    for (double e : energies) {
        out.weights.push_back(std::exp(-(beta * e - shift)));
        sum += out.weights.back();
    }
    for (double &w : out.weights) {
        w /= sum;
    }
    out.partition_function = std::exp(-shift) * sum;
    return out;
}

MixedSpec::MixedSpec(std::vector<MixedEntry> entries) : entries_(std::move(entries)) {
    require(!entries_.empty(), ErrorKind::validation, "mixed state has no entries");
    double total = 0.0;
    const auto &first = entries_.front().state;
    for (const auto &e : entries_) {
        require(e.probability >= 0.0 && std::isfinite(e.probability), ErrorKind::validation,
                "mixed-state probabilities must be >= 0");
        require(e.state.orbitals() == first.orbitals() && e.state.particles() == first.particles() &&
                    e.state.statistics() == first.statistics(),
                ErrorKind::validation, "mixed-state entries must share orbitals, particle number and statistics");
        total += e.probability;
    }
    require(std::abs(total - 1.0) <= 1e-10, ErrorKind::validation,
            "mixed-state probabilities sum to " + std::to_string(total) + ", not 1");
}

MixedSpec MixedSpec::thermal(double beta, const std::vector<double> &energies, std::vector<FockSuperposition> states) {
    require(energies.size() == states.size(), ErrorKind::validation, "thermal state needs one energy per entry");
    const ThermalWeights w = thermal_weights(beta, energies);
    std::vector<MixedEntry> entries;
    for (std::size_t i = 0; i < states.size(); ++i) {
        entries.push_back(MixedEntry{w.weights[i], std::move(states[i])});
    }
    return MixedSpec(std::move(entries));
}

// ---------------------------------------------------------------------------
// Engine

namespace {

struct SpeciesRun {
    std::string prefix;
    const BasisSet *basis = nullptr;
    Statistics statistics = Statistics::fermionic;
    unsigned m = 0;
    unsigned slot_bits = 1;
    unsigned fock_width = 0;
    std::vector<OccupationVector> configs;
    PhaseEstimationOptions pe;
    std::vector<std::string> particles;
    std::map<std::uint64_t, std::size_t> by_code;

    std::string fock() const { return prefix + "fock"; }
};

struct EngineTerm {
    std::vector<std::size_t> config;
    complex amplitude;
    std::size_t label = 0;
};

struct EngineOutput {
    QuantumState state;
    std::vector<std::string> particles;
    PreparationReport report;
};

SpeciesRun make_species(std::string prefix, const BasisSet &basis, std::vector<OccupationVector> configs,
                        PhaseEstimationOptions pe) {
    require(!configs.empty(), ErrorKind::validation, "species has no configurations");
    SpeciesRun s;
    s.prefix = std::move(prefix);
    s.basis = &basis;
    s.statistics = configs.front().statistics();
    s.m = configs.front().particles();
    s.slot_bits = configs.front().slot_bits();
    s.fock_width = configs.front().fock_width();
    require(s.m >= 1, ErrorKind::validation, "configurations must hold at least one particle");
    for (const auto &c : configs) {
        require(c.orbitals() == basis.size(), ErrorKind::validation,
                "occupation " + c.to_string() + " has " + std::to_string(c.orbitals()) +
                    " slots but the basis has " + std::to_string(basis.size()) + " orbitals");
        require(c.particles() == s.m && c.statistics() == s.statistics, ErrorKind::validation,
                "configurations of one species must share particle number and statistics");
    }
    s.configs = std::move(configs);
    for (std::size_t i = 0; i < s.configs.size(); ++i) {
        s.by_code.emplace(s.configs[i].encode(), i);
    }
    s.pe = std::move(pe);
    s.particles = particle_names(s.prefix, s.m);
    return s;
}

double max_cross_overlap(const std::vector<std::vector<complex>> &vectors) {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            worst = std::max(worst, std::abs(inner_product(vectors[i], vectors[j])));
        }
    }
    return worst;
}

EngineOutput run_engine(std::vector<SpeciesRun> &species, std::vector<EngineTerm> terms, std::size_t labels,
                        bool disentangle, const ComposeOptions &options) {
    const auto started = std::chrono::steady_clock::now();
    require(!terms.empty(), ErrorKind::validation, "nothing to prepare");
    for (auto &s : species) {
        if (s.statistics == Statistics::bosonic) {
            std::set<double> multiplicities;
            for (const auto &c : s.configs) {
                multiplicities.insert(c.multiplicity());
            }
            require(multiplicities.size() == 1, ErrorKind::validation,
                    "bosonic configurations in one superposition must share prod n_i!");
        }
    }
    // Lexicographic order on the occupation codes, then the label.
    auto key = [&](const EngineTerm &t) {
        std::vector<std::uint64_t> k;
        for (std::size_t s = 0; s < species.size(); ++s) {
            k.push_back(species[s].configs[t.config[s]].encode());
        }
        k.push_back(t.label);
        return k;
    };
    std::sort(terms.begin(), terms.end(), [&](const EngineTerm &x, const EngineTerm &y) { return key(x) < key(y); });
    std::map<std::vector<std::uint64_t>, std::uint64_t> term_of;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        require(term_of.emplace(key(terms[t]), t).second, ErrorKind::validation, "duplicate term in the input");
    }

    PreparationReport report;
    report.epsilon = options.integration.epsilon;
    report.backend = std::string(to_string(options.integration.backend));
    Loader loader(options.integration);
    QuantumState state{RegisterLayout(options.qubit_cap)};

    // 1. Amplitudes on an index register.
    const std::size_t T = terms.size();
    const unsigned iw = T > 1 ? static_cast<unsigned>(std::bit_width(T - 1)) : 0U;
    if (iw > 0) {
        state.add_segment("index", Role::scratch, iw);
        std::vector<complex> magnitudes(std::size_t{1} << iw);
        for (std::size_t t = 0; t < T; ++t) {
            magnitudes[t] = std::abs(terms[t].amplitude);
        }
        load_orbital(state, "index", Orbital::tabulated(std::move(magnitudes)), IntegrationSpec{});
        apply_diagonal_phase(state, "index", [&](std::uint64_t t) {
            return t < T ? std::arg(terms[t].amplitude) : 0.0;
        });
    } else {
        const complex phase = terms.front().amplitude / std::abs(terms.front().amplitude);
        for (auto &a : state.amplitudes()) {
            a *= phase;
        }
    }

    // 2. Occupation (and label) registers from the index, then clear the index.
    for (const auto &s : species) {
        state.add_segment(s.fock(), Role::fock, s.fock_width);
    }
    const unsigned lw = labels > 1 ? static_cast<unsigned>(std::bit_width(labels - 1)) : 0U;
    if (lw > 0) {
        state.add_segment("label", Role::label, lw);
    }
    {
        std::vector<Segment> focks;
        for (const auto &s : species) {
            focks.push_back(state.segment(s.fock()));
        }
        const std::optional<Segment> label_seg = lw > 0 ? std::optional<Segment>(state.segment("label")) : std::nullopt;
        const std::optional<Segment> index =
            iw > 0 ? std::optional<Segment>(state.segment("index")) : std::nullopt;
        apply_basis_permutation(state, [&](std::uint64_t i) {
            const std::uint64_t t = index ? index->value(i) : 0;
            if (t >= T) {
                return i;
            }
            for (std::size_t s = 0; s < species.size(); ++s) {
                const std::uint64_t code = species[s].configs[terms[t].config[s]].encode();
                i = focks[s].with_value(i, focks[s].value(i) ^ code);
            }
            if (label_seg) {
                i = label_seg->with_value(i, label_seg->value(i) ^ terms[t].label);
            }
            return i;
        });
        if (index) {
            std::vector<std::uint64_t> k(species.size() + 1);
            apply_basis_permutation(state, [&](std::uint64_t i) {
                for (std::size_t s = 0; s < species.size(); ++s) {
                    k[s] = focks[s].value(i);
                }
                k.back() = label_seg ? label_seg->value(i) : 0;
                const auto it = term_of.find(k);
                return it == term_of.end() ? i : index->with_value(i, index->value(i) ^ it->second);
            });
            state.release_segment("index");
        }
    }

    // 3. Conditional orbital loads.
    std::vector<std::vector<complex>> loaded;
    for (auto &s : species) {
        for (unsigned a = 0; a < s.m; ++a) {
            state.add_segment(s.particles[a], Role::particle, s.basis->grid_bits());
        }
        std::set<std::size_t> used_orbitals;
        for (unsigned a = 0; a < s.m; ++a) {
            const std::string ctl = s.fock();
            loader.load_selected(state, s.particles[a], std::span<const std::string>(&ctl, 1),
                                 [&](std::uint64_t code) -> const Orbital * {
                                     const auto it = s.by_code.find(code);
                                     if (it == s.by_code.end()) {
                                         return nullptr;
                                     }
                                     const std::size_t orb = s.configs[it->second].occupied()[a];
                                     used_orbitals.insert(orb);
                                     return &s.basis->grid_orbital(orb);
                                 });
        }
        std::vector<std::vector<complex>> species_loaded;
        for (std::size_t orb : used_orbitals) {
            species_loaded.push_back(plan_amplitudes(loader.plan(s.basis->grid_orbital(orb), s.basis->grid_bits())));
        }
        report.orbital_overlap = std::max(report.orbital_overlap, max_cross_overlap(species_loaded));
    }
    report.orthogonality_flag = report.orbital_overlap > 1e-8;

    // 4. Clear the occupation registers.
    std::vector<std::string> verify;
    if (disentangle) {
        PhaseEstimationStats pe_stats;
        pe_stats.success_probability = 1.0;
        bool any_pe = false;
        for (std::size_t si = 0; si < species.size(); ++si) {
            auto &s = species[si];
            std::set<std::size_t> distinct;
            std::map<std::size_t, std::set<std::size_t>> per_label;
            for (const auto &t : terms) {
                distinct.insert(t.config[si]);
                per_label[t.label].insert(t.config[si]);
            }
            const bool label_determines =
                lw > 0 && std::all_of(per_label.begin(), per_label.end(), [](auto &kv) { return kv.second.size() == 1; });
            const Segment f = state.segment(s.fock());
            if (distinct.size() == 1) {
                const std::uint64_t code = s.configs[*distinct.begin()].encode();
                apply_basis_permutation(state, [&](std::uint64_t i) { return f.with_value(i, f.value(i) ^ code); });
                state.release_segment(s.fock(), 1e-8);
            } else if (label_determines) {
                const Segment label_seg = state.segment("label");
                std::map<std::uint64_t, std::uint64_t> code_of;
                for (const auto &[label, configs] : per_label) {
                    code_of[label] = s.configs[*configs.begin()].encode();
                }
                apply_basis_permutation(state, [&](std::uint64_t i) {
                    const auto it = code_of.find(label_seg.value(i));
                    return it == code_of.end() ? i : f.with_value(i, f.value(i) ^ it->second);
                });
                state.release_segment(s.fock(), 1e-8);
            } else {
                std::vector<std::size_t> orbitals;
                for (std::size_t c : distinct) {
                    const auto occ = s.configs[c].occupied();
                    orbitals.insert(orbitals.end(), occ.begin(), occ.end());
                }
                const PhaseTable table(*s.basis, orbitals, s.pe);
                const IdentificationStats id =
                    identify_and_decrement(state, s.particles, FockRegister{s.fock(), s.statistics, s.slot_bits}, table);
                any_pe = true;
                pe_stats.readout_qubits = std::max(pe_stats.readout_qubits, table.readout_qubits());
                pe_stats.extra_qubits = std::max(pe_stats.extra_qubits, table.extra_qubits());
                pe_stats.evolution_time = table.time();
                pe_stats.ambiguous_probability += id.ambiguous_probability;
                pe_stats.lookup_comparisons += id.lookup_comparisons;
                for (auto &line : table.describe()) {
                    pe_stats.window_table.push_back(s.prefix + line);
                }
                verify.push_back(s.fock());
            }
        }
        if (any_pe) {
            const QuantumState before = state;
            bool ok = false;
            for (unsigned attempt = 0; attempt < options.max_attempts && !ok; ++attempt) {
                QuantumState trial = before;
                const Verification v = verify_uncomputation(trial, verify, options.seed + attempt);
                pe_stats.success_probability = v.success_probability;
                ++pe_stats.attempts;
                if (v.success) {
                    state = std::move(trial);
                    ok = true;
                }
            }
            require(ok, ErrorKind::identification,
                    "occupation register not cleared after " + std::to_string(options.max_attempts) +
                        " attempts (success probability " + std::to_string(pe_stats.success_probability) + ")");
            pe_stats.retries = pe_stats.attempts - 1;
            if (pe_stats.success_probability < 1.0 - 1e-10) {
                report.notes.push_back(
                    "readout postselection kept weight " + std::to_string(pe_stats.success_probability) +
                    "; branches whose readouts missed their windows were discarded, which also filters part of "
                    "the loading error out of the returned state; the remaining identification error is not "
                    "covered by eps_superposition <= eps_determinant");
            }
            for (const auto &name : verify) {
                state.release_segment(name, 1e-8);
            }
            report.lookup_comparisons = pe_stats.lookup_comparisons;
            report.phase_estimation = std::move(pe_stats);
        }
    }

    // 5. (Anti)symmetrize each species.
    std::vector<std::string> particles;
    for (auto &s : species) {
        const double expected =
            s.statistics == Statistics::bosonic ? s.configs[terms.front().config[&s - species.data()]].multiplicity()
                                                : 1.0;
        const SortCounters sort = antisymmetrize(state, s.particles, s.statistics, expected, s.prefix);
        report.comparators += sort.comparators;
        report.qubit_swaps += sort.qubit_swaps;
        report.sort_norm_squared *= sort.norm_squared;
        particles.insert(particles.end(), s.particles.begin(), s.particles.end());
        report.particles += s.m;
        report.grid_bits = s.basis->grid_bits();
        report.orbitals = std::max<unsigned>(report.orbitals, static_cast<unsigned>(s.basis->size()));
        report.statistics = std::string(to_string(s.statistics));
    }
    report.integral_evaluations = loader.raw_evaluations();
    report.integral_evaluations_memoized = loader.memoized_evaluations();
    report.rotation_stages = loader.rotation_stages();
    report.rotation_applications = loader.rotation_applications();
    report.mc_samples = loader.mc_samples();
    report.peak_qubits = state.peak_width();
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return EngineOutput{std::move(state), std::move(particles), std::move(report)};
}

std::vector<SpeciesRun> single_species(const FockSuperposition &sup, const BasisSet &basis,
                                       const PhaseEstimationOptions &pe, std::vector<EngineTerm> &terms) {
    std::vector<OccupationVector> configs;
    for (std::size_t i = 0; i < sup.size(); ++i) {
        configs.push_back(sup.terms()[i].occupation);
        terms.push_back(EngineTerm{{i}, sup.terms()[i].amplitude, 0});
    }
    std::vector<SpeciesRun> species;
    species.push_back(make_species("", basis, std::move(configs), pe));
    return species;
}

} // namespace

// ---------------------------------------------------------------------------
// Public pipelines

PureResult prepare_superposition(const FockSuperposition &superposition, const BasisSet &basis,
                                 const ComposeOptions &options) {
    std::vector<EngineTerm> terms;
    auto species = single_species(superposition, basis, options.phase_estimation, terms);
    EngineOutput out = run_engine(species, std::move(terms), 0, true, options);
    out.report.command = "prepare-superposition";
    return PureResult{std::move(out.state), std::move(out.particles), std::move(out.report)};
}

PureResult prepare_two_species(const Species &a, const Species &b, const std::vector<JointTerm> &theta,
                               const ComposeOptions &options) {
    require(a.basis != nullptr && b.basis != nullptr, ErrorKind::validation, "species basis missing");
    require(!theta.empty(), ErrorKind::validation, "two-species state has no terms");
    double total = 0.0;
    std::vector<EngineTerm> terms;
    for (const auto &t : theta) {
        require(t.a < a.configurations.size() && t.b < b.configurations.size(), ErrorKind::validation,
                "two-species term refers to a missing configuration");
        total += std::norm(t.amplitude);
        terms.push_back(EngineTerm{{t.a, t.b}, t.amplitude, 0});
    }
    require(std::abs(total - 1.0) <= 1e-10, ErrorKind::validation,
            "two-species amplitudes have squared norm " + std::to_string(total) + ", not 1");
    std::vector<SpeciesRun> species;
    species.push_back(make_species("A.", *a.basis, a.configurations, a.phase_estimation));
    species.push_back(make_species("B.", *b.basis, b.configurations, b.phase_estimation));
    EngineOutput out = run_engine(species, std::move(terms), 0, true, options);
    out.report.command = "prepare-two-species";
    return PureResult{std::move(out.state), std::move(out.particles), std::move(out.report)};
}

MixedResult prepare_mixed(const MixedSpec &mixed, const BasisSet &basis, const ComposeOptions &options) {
    std::vector<OccupationVector> configs;
    std::vector<EngineTerm> terms;
    auto config_index = [&](const OccupationVector &occ) {
        for (std::size_t i = 0; i < configs.size(); ++i) {
            if (configs[i] == occ) {
                return i;
            }
        }
        configs.push_back(occ);
        return configs.size() - 1;
    };
    const auto &entries = mixed.entries();
    for (std::size_t e = 0; e < entries.size(); ++e) {
        if (entries[e].probability == 0.0) {
            continue;
        }
        for (const auto &term : entries[e].state.terms()) {
            terms.push_back(EngineTerm{{config_index(term.occupation)},
                                       std::sqrt(entries[e].probability) * term.amplitude, e});
        }
    }
    std::vector<SpeciesRun> species;
    species.push_back(make_species("", basis, std::move(configs), options.phase_estimation));
    EngineOutput out = run_engine(species, std::move(terms), entries.size(), true, options);
    out.report.command = "prepare-mixed";
    DensityMatrix rho = partial_trace(out.state, out.particles, options.density_cap);
    out.report.purity = rho.purity();
    CMatrix factor = purification_factor(out.state, out.particles);
    return MixedResult{std::move(rho), std::move(factor), std::move(out.report)};
}

MixedResult prepare_diagonal_mixed(const FockSuperposition &superposition, const BasisSet &basis,
                                   const ComposeOptions &options) {
    std::vector<EngineTerm> terms;
    auto species = single_species(superposition, basis, options.phase_estimation, terms);
    EngineOutput out = run_engine(species, std::move(terms), 0, false, options);
    out.report.command = "prepare-diagonal-mixed";
    DensityMatrix rho = partial_trace(out.state, out.particles, options.density_cap);
    out.report.purity = rho.purity();
    CMatrix factor = purification_factor(out.state, out.particles);
    return MixedResult{std::move(rho), std::move(factor), std::move(out.report)};
}

// ---------------------------------------------------------------------------
// Oracles

std::vector<complex> superposition_oracle(const FockSuperposition &superposition, const BasisSet &basis) {
    std::vector<complex> out;
    for (const auto &term : superposition.terms()) {
        const auto phi = slater_oracle(term.occupation, basis);
        if (out.empty()) {
            out.assign(phi.size(), complex{});
        }
        for (std::size_t i = 0; i < phi.size(); ++i) {
            out[i] += term.amplitude * phi[i];
        }
    }
    return out;
}

std::vector<complex> two_species_oracle(const Species &a, const Species &b, const std::vector<JointTerm> &theta) {
    require(a.basis != nullptr && b.basis != nullptr, ErrorKind::validation, "species basis missing");
    std::vector<complex> out;
    std::map<std::size_t, std::vector<complex>> cache_a;
    std::map<std::size_t, std::vector<complex>> cache_b;
    for (const auto &t : theta) {
        if (!cache_a.count(t.a)) {
            cache_a[t.a] = slater_oracle(a.configurations.at(t.a), *a.basis);
        }
        if (!cache_b.count(t.b)) {
            cache_b[t.b] = slater_oracle(b.configurations.at(t.b), *b.basis);
        }
        const auto &pa = cache_a[t.a];
        const auto &pb = cache_b[t.b];
        require(pa.size() * pb.size() <= (std::size_t{1} << 26), ErrorKind::resource,
                "two-species oracle wider than 26 qubits");
        if (out.empty()) {
            out.assign(pa.size() * pb.size(), complex{});
        }
        for (std::size_t y = 0; y < pb.size(); ++y) {
            if (pb[y] == complex{}) {
                continue;
            }
            for (std::size_t x = 0; x < pa.size(); ++x) {
                out[x + y * pa.size()] += t.amplitude * pa[x] * pb[y];
            }
        }
    }
    return out;
}

CMatrix mixed_oracle_factor(const MixedSpec &mixed, const BasisSet &basis) {
    CMatrix f;
    const auto &entries = mixed.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto psi = superposition_oracle(entries[i].state, basis);
        if (f.size() == 0) {
            f = CMatrix::Zero(static_cast<Eigen::Index>(psi.size()), static_cast<Eigen::Index>(entries.size()));
        }
        f.col(static_cast<Eigen::Index>(i)) =
            std::sqrt(entries[i].probability) *
            Eigen::Map<const Eigen::VectorXcd>(psi.data(), static_cast<Eigen::Index>(psi.size()));
    }
    return f;
}

CMatrix mixed_oracle(const MixedSpec &mixed, const BasisSet &basis) {
    const CMatrix f = mixed_oracle_factor(mixed, basis);
    require(f.rows() <= (Eigen::Index{1} << kDefaultDensityCap), ErrorKind::resource,
            "mixed oracle wider than the density-matrix cap");
    return f * f.adjoint();
}

} // namespace gridprep
