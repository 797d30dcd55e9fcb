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
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <thread>

#include "gridprep/cli.hpp"
#include "gridprep/loader.hpp"

namespace gridprep::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double loaded_orbital_infidelity(const BasisSet &basis, std::size_t i, const IntegrationSpec &spec) {
    const LoadPlan plan = build_load_plan(basis.grid_orbital(i), basis.grid_bits(), spec);
    return pure_infidelity(plan_amplitudes(plan), basis.grid_vector(i));
}

void fill_orbital_errors(PreparationReport &report, const BasisSet &basis, const OccupationVector &occ,
                         const IntegrationSpec &spec) {
    std::map<std::size_t, double> cache;
    report.eps_orbital_each.clear();
    for (std::size_t j : occ.occupied()) {
        if (!cache.count(j)) {
            cache[j] = loaded_orbital_infidelity(basis, j, spec);
        }
        report.eps_orbital_each.push_back(cache[j]);
    }
    double worst = 0.0;
    for (double e : report.eps_orbital_each) {
        worst = std::max(worst, e);
    }
    report.eps_orbital = std::max(report.eps_orbital.value_or(0.0), worst);
    const ProductBound bound = product_error_bound(report.eps_orbital_each);
    report.product_exact = std::max(report.product_exact.value_or(0.0), bound.exact);
    report.product_linear = std::max(report.product_linear.value_or(0.0), bound.linear);
}

struct DeterminantErrors {
    double worst = 0.0;
    double overlap = 0.0;
};

/// Prepares each configuration on its own and compares with the oracle.
DeterminantErrors determinant_errors(const std::vector<OccupationVector> &configs, const BasisSet &basis,
                                     const IntegrationSpec &spec, PreparationReport &report) {
    DeterminantErrors out;
    std::vector<std::vector<complex>> prepared;
    for (const auto &occ : configs) {
        const SlaterPreparation run = prepare_slater(occ, basis, spec);
        prepared.push_back(register_amplitudes(run.state, run.particles));
        out.worst = std::max(out.worst, pure_infidelity(prepared.back(), slater_oracle(occ, basis)));
        fill_orbital_errors(report, basis, occ, spec);
    }
    for (std::size_t a = 0; a < prepared.size(); ++a) {
        for (std::size_t b = a + 1; b < prepared.size(); ++b) {
            out.overlap = std::max(out.overlap, std::abs(inner_product(prepared[a], prepared[b])));
        }
    }
    return out;
}

void copy_counters(PreparationReport &to, const PreparationReport &from) {
    to.integral_evaluations = from.integral_evaluations;
    to.integral_evaluations_memoized = from.integral_evaluations_memoized;
    to.rotation_stages = from.rotation_stages;
    to.rotation_applications = from.rotation_applications;
    to.mc_samples = from.mc_samples;
    to.comparators = from.comparators;
    to.qubit_swaps = from.qubit_swaps;
    to.lookup_comparisons = from.lookup_comparisons;
    to.peak_qubits = std::max(to.peak_qubits, from.peak_qubits);
    to.phase_estimation = from.phase_estimation;
    to.orbital_overlap = std::max(to.orbital_overlap, from.orbital_overlap);
    to.sort_norm_squared = from.sort_norm_squared;
}

std::vector<OccupationVector> distinct_configurations(const FockSuperposition &sup) {
    std::vector<OccupationVector> out;
    for (const auto &t : sup.terms()) {
        out.push_back(t.occupation);
    }
    return out;
}

RunOutput run_orbital(const ExperimentConfig &config) {
    const auto start = Clock::now();
    const BasisSet basis = make_basis(config);
    require(config.orbital < basis.size(), ErrorKind::validation, "basis.target is out of range");
    const IntegrationSpec spec = make_integration(config);
    const Orbital &orbital = basis.orbital(config.orbital);
    const unsigned l = basis.grid_bits();

    RegisterLayout layout;
    layout.add("p0", Role::particle, l);
    QuantumState state(std::move(layout));
    Loader loader(spec);
    const LoadPlan &plan = loader.load(state, "p0", orbital);
    std::vector<complex> direct = orbital.grid_amplitudes(l);

    RunOutput run;
    PreparationReport &r = run.report;
    r.command = config.command;
    r.particles = 1;
    r.grid_bits = l;
    r.orbitals = static_cast<unsigned>(basis.size());
    r.epsilon = spec.epsilon;
    r.backend = std::string(to_string(spec.backend));
    r.eps_orbital = pure_infidelity(std::vector<complex>(state.amplitudes().begin(), state.amplitudes().end()), direct);
    r.eps_orbital_each = {*r.eps_orbital};
    r.integral_evaluations = loader.raw_evaluations();
    r.integral_evaluations_memoized = loader.memoized_evaluations();
    r.rotation_stages = plan.rotation_stages();
    r.rotation_applications = plan.rotation_applications();
    r.mc_samples = loader.mc_samples();
    r.peak_qubits = state.peak_width();
    r.notes.push_back("orbital " + orbital.describe());
    r.notes.push_back("grid sampling is treated as exact; all loading error is attributed to integration");
    r.wall_seconds = seconds_since(start);
    run.checks = verify_bounds(r, 1, l, spec.epsilon);
    run.state = std::vector<complex>(state.amplitudes().begin(), state.amplitudes().end());
    return run;
}

RunOutput run_slater(const ExperimentConfig &config) {
    const auto start = Clock::now();
    const BasisSet basis = make_basis(config);
    const IntegrationSpec spec = make_integration(config);
    const OccupationVector occ = OccupationVector::parse(config.occupation, parse_statistics(config.statistics));
    require(occ.orbitals() == basis.size(), ErrorKind::validation, "occupation does not match the basis size");
    const SlaterPreparation prep = prepare_slater(occ, basis, spec);
    const auto amplitudes = register_amplitudes(prep.state, prep.particles);

    RunOutput run;
    PreparationReport &r = run.report;
    r.command = config.command;
    r.statistics = std::string(to_string(occ.statistics()));
    r.particles = occ.particles();
    r.grid_bits = basis.grid_bits();
    r.orbitals = static_cast<unsigned>(basis.size());
    r.epsilon = spec.epsilon;
    r.backend = std::string(to_string(spec.backend));
    r.eps_determinant = pure_infidelity(amplitudes, slater_oracle(occ, basis));
    fill_orbital_errors(r, basis, occ, spec);
    r.integral_evaluations = prep.raw_evaluations;
    r.integral_evaluations_memoized = prep.memoized_evaluations;
    r.rotation_stages = prep.rotation_stages;
    r.rotation_applications = prep.rotation_applications;
    r.mc_samples = prep.mc_samples;
    r.comparators = prep.sort.comparators;
    r.qubit_swaps = prep.sort.qubit_swaps;
    r.sort_norm_squared = prep.sort.norm_squared;
    r.peak_qubits = prep.state.peak_width();
    r.wall_seconds = seconds_since(start);
    run.checks = verify_bounds(r, occ.particles(), basis.grid_bits(), spec.epsilon);
    run.state = amplitudes;
    return run;
}

ComposeOptions compose_options(const ExperimentConfig &config, const BasisSet &basis) {
    ComposeOptions opts;
    opts.integration = make_integration(config);
    opts.phase_estimation = make_phase_estimation(config, basis.grid_bits());
    opts.seed = config.seed.value_or(0);
    return opts;
}

RunOutput run_superposition(const ExperimentConfig &config) {
    const auto start = Clock::now();
    const BasisSet basis = make_basis(config);
    const FockSuperposition sup =
        make_superposition(config.superposition, parse_statistics(config.statistics), "superposition");
    const ComposeOptions opts = compose_options(config, basis);
    const PureResult result = prepare_superposition(sup, basis, opts);
    const auto amplitudes = result.amplitudes();

    RunOutput run;
    run.report = result.report;
    PreparationReport &r = run.report;
    r.command = config.command;
    r.eps_superposition = pure_infidelity(amplitudes, superposition_oracle(sup, basis));
    const DeterminantErrors det = determinant_errors(distinct_configurations(sup), basis, opts.integration, r);
    r.eps_determinant = det.worst;
    r.configuration_overlap = det.overlap;
    r.orthogonality_flag = r.orthogonality_flag || det.overlap > 1e-8;
    for (const auto &term : sup.terms()) {
        const auto phi = slater_oracle(term.occupation, basis);
        const double weight = std::norm(inner_product(phi, amplitudes));
        run.summary.push_back("weight " + term.occupation.to_string() + " = " + format_number(weight) +
                              " (target " + format_number(std::norm(term.amplitude)) + ")");
    }
    if (r.orthogonality_flag) {
        r.notes.push_back("prepared configurations are not orthogonal; eps_superposition may exceed the "
                          "intermediate steps of the bound");
    }
    r.wall_seconds = seconds_since(start);
    run.checks = verify_bounds(r, sup.particles(), basis.grid_bits(), opts.integration.epsilon);
    run.state = amplitudes;
    return run;
}

RunOutput run_two_species(const ExperimentConfig &config) {
    const auto start = Clock::now();
    require(config.species.size() == 2, ErrorKind::validation, "species: exactly two species are required");
    std::vector<BasisSet> bases;
    std::vector<Species> species(2);
    for (std::size_t s = 0; s < 2; ++s) {
        const auto &sc = config.species[s];
        const std::string key = "species[" + std::to_string(s) + "]";
        bases.push_back(make_basis(config, sc.orbitals.empty() ? config.orbitals : sc.orbitals, key + ".orbitals"));
    }
    for (std::size_t s = 0; s < 2; ++s) {
        const auto &sc = config.species[s];
        species[s].basis = &bases[s];
        const Statistics stats = parse_statistics(sc.statistics);
        for (const auto &text : sc.configurations) {
            species[s].configurations.push_back(OccupationVector::parse(text, stats));
        }
        species[s].phase_estimation = make_phase_estimation(config, bases[s].grid_bits());
    }
    std::vector<JointTerm> theta;
    for (const auto &t : config.theta) {
        theta.push_back(JointTerm{t.a, t.b, t.amplitude});
    }
    ComposeOptions opts;
    opts.integration = make_integration(config);
    opts.seed = config.seed.value_or(0);
    const PureResult result = prepare_two_species(species[0], species[1], theta, opts);
    const auto amplitudes = result.amplitudes();

    RunOutput run;
    run.report = result.report;
    PreparationReport &r = run.report;
    r.command = config.command;
    r.statistics = config.species[0].statistics + "+" + config.species[1].statistics;
    r.eps_superposition = pure_infidelity(amplitudes, two_species_oracle(species[0], species[1], theta));
    const unsigned ma = species[0].configurations.front().particles();
    const std::vector<std::string> a_particles(result.particles.begin(), result.particles.begin() + ma);
    if (ma * bases[0].grid_bits() <= kDefaultDensityCap) {
        r.purity = partial_trace(result.state, a_particles).purity();
        run.summary.push_back("species A reduced purity = " + format_number(*r.purity));
    } else {
        r.notes.push_back("species A register exceeds the density-matrix cap; reduced purity not computed");
    }
    r.notes.push_back("no exchange symmetry is imposed between the two species");
    r.wall_seconds = seconds_since(start);
    run.checks = verify_bounds(r, r.particles, r.grid_bits, opts.integration.epsilon);
    run.state = amplitudes;
    return run;
}

RunOutput run_mixed(const ExperimentConfig &config) {
    const auto start = Clock::now();
    const BasisSet basis = make_basis(config);
    const MixedSpec mixed = make_mixed(config, basis);
    const ComposeOptions opts = compose_options(config, basis);
    const MixedResult result = prepare_mixed(mixed, basis, opts);

    RunOutput run;
    run.report = result.report;
    PreparationReport &r = run.report;
    r.command = config.command;
    r.eps_mixed = mixed_infidelity_from_factors(result.factor, mixed_oracle_factor(mixed, basis));
    double eps_psi = 0.0;
    std::vector<OccupationVector> configs;
    for (const auto &e : mixed.entries()) {
        run.summary.push_back("p = " + format_number(e.probability));
        for (const auto &t : e.state.terms()) {
            if (std::find(configs.begin(), configs.end(), t.occupation) == configs.end()) {
                configs.push_back(t.occupation);
            }
        }
        if (e.probability > 0.0) {
            const PureResult pure = prepare_superposition(e.state, basis, opts);
            eps_psi = std::max(eps_psi, pure_infidelity(pure.amplitudes(), superposition_oracle(e.state, basis)));
        }
    }
    r.eps_superposition = eps_psi;
    const DeterminantErrors det = determinant_errors(configs, basis, opts.integration, r);
    r.eps_determinant = det.worst;
    r.configuration_overlap = det.overlap;
    if (config.beta) {
        run.summary.push_back("thermal beta = " + format_number(*config.beta));
    }
    r.wall_seconds = seconds_since(start);
    run.checks = verify_bounds(r, r.particles, r.grid_bits, opts.integration.epsilon);
    run.rho = result.rho.matrix();
    return run;
}

std::string bound_row(const BoundCell &c) {
    auto opt = [](const std::optional<double> &v) { return v ? format_number(*v) : std::string(); };
    auto pass = [&](std::string_view name) -> std::string {
        for (const auto &check : c.checks) {
            if (check.name == name) {
                return check.pass ? "1" : "0";
            }
        }
        return "";
    };
    const PreparationReport &r = c.report;
    std::string row = std::to_string(c.m) + "," + std::to_string(c.l) + "," + format_number(c.epsilon) + "," +
                      opt(r.eps_orbital) + "," + opt(r.eps_determinant) + "," + opt(r.eps_superposition) + "," +
                      opt(r.eps_mixed) + "," + format_number(load_error_bound(c.l, c.epsilon)) + "," +
                      format_number(c.m * c.l * c.epsilon / 2.0) + "," + pass("eps_orbital <= l*eps/2") + "," +
                      pass("eps_determinant <= m*l*eps/2") + "," + pass("eps_superposition <= m*l*eps/2") + "," +
                      pass("eps_superposition <= eps_determinant") + "," + pass("eps_mixed <= m*l*eps/2") + "," +
                      pass("eps_mixed <= eps_superposition") + "," + (c.all_pass ? "1" : "0") + "," +
                      std::to_string(r.peak_qubits) + "," + std::to_string(r.rotation_stages) + "," +
                      std::to_string(r.integral_evaluations) + "," + std::to_string(r.comparators) + "," +
                      std::to_string(r.qubit_swaps);
    return row;
}

constexpr const char *kSweepHeader =
    "m,l,epsilon,eps_orbital,eps_determinant,eps_superposition,eps_mixed,bound_orbital,bound_determinant,"
    "pass_orbital,pass_determinant,pass_superposition,pass_superposition_vs_determinant,pass_mixed,"
    "pass_mixed_vs_superposition,all_pass,peak_qubits,rotation_stages,integral_evaluations,comparators,"
    "qubit_swaps";

constexpr const char *kCostHeader =
    "m,l,epsilon,rotation_stages,integral_evaluations,integral_bound,mc_samples_per_integral,"
    "quantum_queries_per_integral,comparators,qubit_swaps,lookup_comparisons";

RunOutput run_verify_bounds(const ExperimentConfig &config) {
    const auto start = Clock::now();
    BoundCell cell = run_bound_cell(config.cell_m, config.cell_l, config.cell_epsilon, config.seed.value_or(0));
    RunOutput run;
    run.report = cell.report;
    run.report.command = config.command;
    run.report.wall_seconds = seconds_since(start);
    run.checks = cell.checks;
    run.table_header = kSweepHeader;
    run.table_rows.push_back(bound_row(cell));
    run.summary.push_back(std::string("all bounds ") + (cell.all_pass ? "pass" : "FAIL"));
    return run;
}

RunOutput run_sweep_command(const ExperimentConfig &config) {
    const auto start = Clock::now();
    const auto cells =
        run_sweep(config.sweep_m, config.sweep_l, config.sweep_epsilon, config.seed.value_or(0), config.threads);
    RunOutput run;
    PreparationReport &r = run.report;
    r.command = config.command;
    r.backend = "analytic_cdf (adversarial)";
    run.table_header = kSweepHeader;
    std::size_t passed = 0;
    for (const auto &c : cells) {
        run.table_rows.push_back(bound_row(c));
        passed += c.all_pass ? 1 : 0;
        r.peak_qubits = std::max(r.peak_qubits, c.report.peak_qubits);
    }
    run.summary.push_back(std::to_string(passed) + " of " + std::to_string(cells.size()) + " cells pass every bound");
    r.wall_seconds = seconds_since(start);
    return run;
}

RunOutput run_cost_table(const ExperimentConfig &config) {
    const auto start = Clock::now();
    const auto rows = cost_table(config.sweep_m, config.sweep_l, config.sweep_epsilon, config.delta);
    RunOutput run;
    run.report.command = config.command;
    run.report.backend = "monte_carlo (bounds [0, 1])";
    run.report.epsilon = config.sweep_epsilon.empty() ? 0.0 : config.sweep_epsilon.front();
    run.table_header = kCostHeader;
    for (const auto &c : rows) {
        run.table_rows.push_back(std::to_string(c.m) + "," + std::to_string(c.l) + "," + format_number(c.epsilon) +
                                 "," + std::to_string(c.rotation_stages) + "," +
                                 std::to_string(c.integral_evaluations) + "," + std::to_string(c.integral_bound) +
                                 "," + std::to_string(c.mc_samples_per_integral) + "," +
                                 std::to_string(c.quantum_queries_per_integral) + "," + std::to_string(c.comparators) +
                                 "," + std::to_string(c.qubit_swaps) + "," + std::to_string(c.lookup_comparisons));
    }
    const CostFits fits = fit_costs(rows);
    auto line = [&](const char *name, const PowerFit &f, double expected) {
        run.summary.push_back(std::string(name) + " exponent " + format_number(f.exponent) + " (expected " +
                              format_number(expected) + ", r^2 " + format_number(f.r_squared) + ")");
    };
    line("mc_samples vs epsilon", fits.mc_samples_vs_epsilon, -2.0);
    line("quantum_queries vs epsilon", fits.quantum_queries_vs_epsilon, -1.0);
    line("rotation_stages vs l", fits.stages_vs_l, 1.0);
    line("rotation_stages vs m", fits.stages_vs_m, 1.0);
    run.report.wall_seconds = seconds_since(start);
    return run;
}

} // namespace

RunOutput run_pipeline(const ExperimentConfig &config) {
    const std::string &c = config.command;
    if (c == "prepare-orbital") {
        return run_orbital(config);
    }
    if (c == "prepare-slater") {
        return run_slater(config);
    }
    if (c == "prepare-superposition") {
        return run_superposition(config);
    }
    if (c == "prepare-two-species") {
        return run_two_species(config);
    }
    if (c == "prepare-mixed") {
        return run_mixed(config);
    }
    if (c == "verify-bounds") {
        return run_verify_bounds(config);
    }
    if (c == "sweep") {
        return run_sweep_command(config);
    }
    if (c == "cost-table") {
        return run_cost_table(config);
    }
    fail(ErrorKind::validation, "command: unknown command '" + c + "'");
}

BoundCell run_bound_cell(unsigned m, unsigned l, double epsilon, std::uint64_t seed, unsigned density_cap) {
    require(m >= 1 && l >= 1, ErrorKind::validation, "bound cell needs m >= 1 and l >= 1");
    const unsigned M = m + 1;
    std::vector<Orbital> orbitals;
    for (unsigned n = 1; n <= M; ++n) {
        orbitals.push_back(Orbital::box_sine(static_cast<int>(n), 1.0, static_cast<double>(n)));
    }
    const BasisSet basis(std::move(orbitals), l);

    ComposeOptions opts;
    opts.integration.backend = Backend::analytic_cdf;
    opts.integration.epsilon = epsilon;
    opts.integration.adversarial = true;
    opts.seed = seed;
    // Energies 1..M read exactly with q = bit_width(M) qubits at t = 2 pi / 2^q.
    const unsigned q = static_cast<unsigned>(std::bit_width(M));
    opts.phase_estimation.time = 2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(q));
    opts.phase_estimation.readout_qubits = q;

    std::vector<unsigned> a(M, 0);
    std::fill(a.begin(), a.begin() + m, 1U);
    std::vector<unsigned> b = a;
    b[m - 1] = 0;
    b[M - 1] = 1;
    const OccupationVector occ_a(a, Statistics::fermionic);
    const OccupationVector occ_b(b, Statistics::fermionic);

    BoundCell cell;
    cell.m = m;
    cell.l = l;
    cell.epsilon = epsilon;
    PreparationReport &r = cell.report;
    r.command = "verify-bounds";
    r.statistics = "fermionic";
    r.particles = m;
    r.grid_bits = l;
    r.orbitals = M;
    r.epsilon = epsilon;
    r.backend = "analytic_cdf (adversarial)";

    double eps_orbital = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        eps_orbital = std::max(eps_orbital, loaded_orbital_infidelity(basis, i, opts.integration));
    }
    const DeterminantErrors det = determinant_errors({occ_a, occ_b}, basis, opts.integration, r);
    r.eps_orbital = eps_orbital;
    r.eps_determinant = det.worst;
    r.configuration_overlap = det.overlap;

    const double h = std::sqrt(0.5);
    const FockSuperposition plus({{occ_a, {h, 0.0}}, {occ_b, {h, 0.0}}});
    const FockSuperposition minus({{occ_a, {h, 0.0}}, {occ_b, {-h, 0.0}}});
    double eps_psi = 0.0;
    for (const auto *sup : {&plus, &minus}) {
        const PureResult result = prepare_superposition(*sup, basis, opts);
        eps_psi = std::max(eps_psi, pure_infidelity(result.amplitudes(), superposition_oracle(*sup, basis)));
        copy_counters(r, result.report);
    }
    r.eps_superposition = eps_psi;
    r.orthogonality_flag = r.orbital_overlap > 1e-8 || det.overlap > 1e-8;

    if (m * l <= density_cap) {
        const MixedSpec mixed({MixedEntry{0.6, plus}, MixedEntry{0.4, minus}});
        opts.density_cap = density_cap;
        const MixedResult result = prepare_mixed(mixed, basis, opts);
        r.eps_mixed = mixed_infidelity_from_factors(result.factor, mixed_oracle_factor(mixed, basis));
        r.purity = result.report.purity;
        r.peak_qubits = std::max(r.peak_qubits, result.report.peak_qubits);
    } else {
        r.notes.push_back("eps_mixed skipped: m*l exceeds the density-matrix cap");
    }
    cell.checks = verify_bounds(r, m, l, epsilon);
    cell.all_pass = std::all_of(cell.checks.begin(), cell.checks.end(), [](const BoundCheck &c) { return c.pass; });
    return cell;
}

std::vector<BoundCell> run_sweep(const std::vector<unsigned> &ms, const std::vector<unsigned> &ls,
                                 const std::vector<double> &epsilons, std::uint64_t seed, unsigned threads) {
    struct Job {
        unsigned m, l;
        double epsilon;
    };
    std::vector<Job> jobs;
    for (unsigned m : ms) {
        for (unsigned l : ls) {
            for (double e : epsilons) {
                jobs.push_back(Job{m, l, e});
            }
        }
    }
    std::vector<BoundCell> cells(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                cells[i] = run_bound_cell(jobs[i].m, jobs[i].l, jobs[i].epsilon, splitmix(seed ^ splitmix(i)));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1U, std::min<unsigned>(threads == 0 ? std::thread::hardware_concurrency() : threads,
                                                        static_cast<unsigned>(jobs.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return cells;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace gridprep::cli
