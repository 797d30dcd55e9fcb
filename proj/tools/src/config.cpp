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
#include <bit>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "gridprep/cli.hpp"
#include "gridprep/loader.hpp"

namespace gridprep::cli {

namespace {

std::string normalized_name(std::string name) {
    std::replace(name.begin(), name.end(), '-', '_');
    return name;
}

class Reader {
  public:
    explicit Reader(std::vector<Diagnostic> &diagnostics) : diagnostics_(diagnostics) {}

    void error(const std::string &key, const std::string &message, ErrorKind kind = ErrorKind::validation) {
        diagnostics_.push_back(Diagnostic{key, kind, message});
    }

    template <typename T>
    bool read(const YAML::Node &node, const std::string &key, T &out) {
        if (!node) {
            return false;
        }
        try {
            out = node.as<T>();
            return true;
        } catch (const YAML::Exception &) {
            error(key, "cannot read value '" + YAML::Dump(node) + "'");
            return false;
        }
    }

    template <typename T>
    bool read_optional(const YAML::Node &node, const std::string &key, std::optional<T> &out) {
        T value{};
        if (read(node, key, value)) {
            out = value;
            return true;
        }
        return false;
    }

    bool read_complex(const YAML::Node &node, const std::string &key, std::complex<double> &out) {
        if (!node) {
            return false;
        }
        if (node.IsSequence() && node.size() == 2) {
            double re = 0.0;
            double im = 0.0;
            if (read(node[0], key + "[0]", re) && read(node[1], key + "[1]", im)) {
                out = {re, im};
                return true;
            }
            return false;
        }
        double re = 0.0;
        if (node.IsScalar() && read(node, key, re)) {
            out = {re, 0.0};
            return true;
        }
        error(key, "amplitude must be a number or [re, im]");
        return false;
    }

    void known_keys(const YAML::Node &node, const std::string &prefix, std::initializer_list<const char *> keys) {
        if (!node || !node.IsMap()) {
            return;
        }
        for (const auto &kv : node) {
            const auto name = kv.first.as<std::string>();
            if (std::none_of(keys.begin(), keys.end(), [&](const char *k) { return name == k; })) {
                error(prefix.empty() ? name : prefix + "." + name, "unknown key", ErrorKind::configuration);
            }
        }
    }

  private:
    std::vector<Diagnostic> &diagnostics_;
};

std::vector<OrbitalConfig> read_orbitals(Reader &r, const YAML::Node &node, const std::string &key) {
    std::vector<OrbitalConfig> out;
    if (!node) {
        return out;
    }
    if (!node.IsSequence()) {
        r.error(key, "expected a list of orbitals");
        return out;
    }
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string k = key + "[" + std::to_string(i) + "]";
        const YAML::Node o = node[i];
        r.known_keys(o, k, {"family", "n", "k", "site", "center", "width", "energy", "csv"});
        OrbitalConfig c;
        r.read(o["family"], k + ".family", c.family);
        c.family = normalized_name(c.family);
        r.read(o["n"], k + ".n", c.n);
        r.read(o["k"], k + ".k", c.k);
        r.read(o["site"], k + ".site", c.site);
        r.read(o["center"], k + ".center", c.center);
        r.read(o["width"], k + ".width", c.width);
        r.read(o["energy"], k + ".energy", c.energy);
        r.read(o["csv"], k + ".csv", c.csv);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<TermConfig> read_terms(Reader &r, const YAML::Node &node, const std::string &key) {
    std::vector<TermConfig> out;
    if (!node) {
        return out;
    }
    if (!node.IsSequence()) {
        r.error(key, "expected a list of {occupation, amplitude}");
        return out;
    }
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string k = key + "[" + std::to_string(i) + "]";
        r.known_keys(node[i], k, {"occupation", "amplitude"});
        TermConfig t;
        if (!r.read(node[i]["occupation"], k + ".occupation", t.occupation)) {
            r.error(k + ".occupation", "missing occupation");
        }
        r.read_complex(node[i]["amplitude"], k + ".amplitude", t.amplitude);
        out.push_back(std::move(t));
    }
    return out;
}

template <typename T>
void read_list(Reader &r, const YAML::Node &node, const std::string &key, std::vector<T> &out) {
    if (!node) {
        return;
    }
    if (node.IsScalar()) {
        T v{};
        if (r.read(node, key, v)) {
            out = {v};
        }
        return;
    }
    std::vector<T> values;
    if (r.read(node, key, values)) {
        out = std::move(values);
    }
}

std::vector<complex> read_table_csv(const std::filesystem::path &path, const std::string &key) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::configuration, key + ": cannot open '" + path.string() + "'");
    std::vector<std::pair<long long, complex>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        long long index = 0;
        double re = 0.0;
        double im = 0.0;
        if (!(fields >> index >> re)) {
            if (rows.empty()) {
                continue; // header
            }
            fail(ErrorKind::validation, key + ": malformed row '" + line + "'");
        }
        fields >> im;
        rows.emplace_back(index, complex{re, im});
    }
    require(!rows.empty(), ErrorKind::validation, key + ": no rows in '" + path.string() + "'");
    std::vector<complex> table(rows.size());
    std::vector<bool> seen(rows.size(), false);
    for (const auto &[index, value] : rows) {
        require(index >= 0 && static_cast<std::size_t>(index) < rows.size() && !seen[static_cast<std::size_t>(index)],
                ErrorKind::validation, key + ": indices must be 0..N-1, each once");
        seen[static_cast<std::size_t>(index)] = true;
        table[static_cast<std::size_t>(index)] = value;
    }
    return table;
}

Orbital make_orbital(const OrbitalConfig &c, const ExperimentConfig &config, const std::string &key) {
    const double L = config.length;
    if (c.family == "uniform") {
        return Orbital::uniform(L, c.energy);
    }
    if (c.family == "box_sine") {
        return Orbital::box_sine(c.n, L, c.energy);
    }
    if (c.family == "plane_wave") {
        return Orbital::plane_wave(c.k, L, c.energy);
    }
    if (c.family == "hermite") {
        return Orbital::hermite(c.n, c.center, c.width, L, c.energy);
    }
    if (c.family == "delta") {
        return Orbital::delta(c.site, config.grid_bits, L, c.energy);
    }
    if (c.family == "tabulated") {
        require(!c.csv.empty(), ErrorKind::validation, key + ".csv: tabulated orbital needs a csv path");
        std::filesystem::path p(c.csv);
        if (p.is_relative()) {
            p = config.base_dir / p;
        }
        return Orbital::tabulated(read_table_csv(p, key + ".csv"), L, c.energy);
    }
    fail(ErrorKind::validation, key + ".family: unknown family '" + c.family + "'");
}

template <typename F>
void capture(std::vector<Diagnostic> &out, const std::string &key, F &&f) {
    try {
        f();
    } catch (const Error &e) {
        out.push_back(Diagnostic{key, e.kind(), e.what()});
    }
}

unsigned width_of(std::uint64_t values) {
    return values > 1 ? static_cast<unsigned>(std::bit_width(values - 1)) : 0U;
}

} // namespace

bool is_command(std::string_view name) {
    return std::any_of(std::begin(kCommands), std::end(kCommands), [&](const char *c) { return name == c; });
}

std::string to_string(const Diagnostic &d) {
    return std::string(gridprep::to_string(d.kind)) + " error at '" + d.key + "': " + d.message;
}

ExperimentConfig parse_config(const YAML::Node &root, const std::filesystem::path &base_dir,
                              std::vector<Diagnostic> &diagnostics) {
    Reader r(diagnostics);
    ExperimentConfig c;
    c.base_dir = base_dir;
    if (!root || !root.IsMap()) {
        r.error("<root>", "config must be a mapping");
        return c;
    }
    r.known_keys(root, "",
                 {"command", "seed", "grid", "basis", "occupation", "superposition", "mixed", "species", "theta",
                  "integration", "phase_estimation", "symmetry", "perturbation", "cell", "sweep", "output"});
    r.read(root["command"], "command", c.command);
    r.read_optional(root["seed"], "seed", c.seed);

    const YAML::Node grid = root["grid"];
    r.known_keys(grid, "grid", {"qubits", "length"});
    if (grid) {
        r.read(grid["qubits"], "grid.qubits", c.grid_bits);
        r.read(grid["length"], "grid.length", c.length);
    }

    const YAML::Node basis = root["basis"];
    r.known_keys(basis, "basis", {"statistics", "orbitals", "target"});
    if (basis) {
        r.read(basis["statistics"], "basis.statistics", c.statistics);
        c.orbitals = read_orbitals(r, basis["orbitals"], "basis.orbitals");
        r.read(basis["target"], "basis.target", c.orbital);
    }

    r.read(root["occupation"], "occupation", c.occupation);
    c.superposition = read_terms(r, root["superposition"], "superposition");

    if (const YAML::Node mixed = root["mixed"]) {
        r.known_keys(mixed, "mixed", {"thermal", "entries"});
        if (const YAML::Node thermal = mixed["thermal"]) {
            r.known_keys(thermal, "mixed.thermal", {"beta"});
            double beta = 0.0;
            if (r.read(thermal["beta"], "mixed.thermal.beta", beta)) {
                c.beta = beta;
            } else {
                r.error("mixed.thermal.beta", "thermal mode needs beta");
            }
        }
        const YAML::Node entries = mixed["entries"];
        if (entries && entries.IsSequence()) {
            for (std::size_t i = 0; i < entries.size(); ++i) {
                const std::string k = "mixed.entries[" + std::to_string(i) + "]";
                r.known_keys(entries[i], k, {"probability", "energy", "occupation", "superposition"});
                MixedEntryConfig e;
                r.read_optional(entries[i]["probability"], k + ".probability", e.probability);
                r.read_optional(entries[i]["energy"], k + ".energy", e.energy);
                std::string occ;
                if (r.read(entries[i]["occupation"], k + ".occupation", occ)) {
                    e.terms.push_back(TermConfig{occ, {1.0, 0.0}});
                }
                auto more = read_terms(r, entries[i]["superposition"], k + ".superposition");
                e.terms.insert(e.terms.end(), more.begin(), more.end());
                c.mixed.push_back(std::move(e));
            }
        } else if (entries) {
            r.error("mixed.entries", "expected a list");
        }
    }

    if (const YAML::Node species = root["species"]) {
        if (!species.IsSequence()) {
            r.error("species", "expected a list of two species");
        } else {
            for (std::size_t i = 0; i < species.size(); ++i) {
                const std::string k = "species[" + std::to_string(i) + "]";
                r.known_keys(species[i], k, {"statistics", "orbitals", "configurations"});
                SpeciesConfig s;
                r.read(species[i]["statistics"], k + ".statistics", s.statistics);
                s.orbitals = read_orbitals(r, species[i]["orbitals"], k + ".orbitals");
                read_list(r, species[i]["configurations"], k + ".configurations", s.configurations);
                c.species.push_back(std::move(s));
            }
        }
    }
    if (const YAML::Node theta = root["theta"]) {
        if (!theta.IsSequence()) {
            r.error("theta", "expected a list of {a, b, amplitude}");
        } else {
            for (std::size_t i = 0; i < theta.size(); ++i) {
                const std::string k = "theta[" + std::to_string(i) + "]";
                r.known_keys(theta[i], k, {"a", "b", "amplitude"});
                JointTermConfig t;
                r.read(theta[i]["a"], k + ".a", t.a);
                r.read(theta[i]["b"], k + ".b", t.b);
                r.read_complex(theta[i]["amplitude"], k + ".amplitude", t.amplitude);
                c.theta.push_back(t);
            }
        }
    }

    if (const YAML::Node in = root["integration"]) {
        r.known_keys(in, "integration", {"backend", "epsilon", "delta", "variance", "bounds", "adversarial"});
        r.read(in["backend"], "integration.backend", c.backend);
        c.backend = normalized_name(c.backend);
        r.read(in["epsilon"], "integration.epsilon", c.epsilon);
        r.read(in["delta"], "integration.delta", c.delta);
        r.read_optional(in["variance"], "integration.variance", c.variance);
        std::vector<double> bounds;
        if (r.read(in["bounds"], "integration.bounds", bounds)) {
            if (bounds.size() == 2) {
                c.bounds = std::make_pair(bounds[0], bounds[1]);
            } else {
                r.error("integration.bounds", "expected [lower, upper]");
            }
        }
        r.read(in["adversarial"], "integration.adversarial", c.adversarial);
    }
    if (const YAML::Node pe = root["phase_estimation"]) {
        r.known_keys(pe, "phase_estimation", {"epsilon", "time", "readout_qubits"});
        r.read(pe["epsilon"], "phase_estimation.epsilon", c.pe_epsilon);
        r.read_optional(pe["time"], "phase_estimation.time", c.pe_time);
        r.read_optional(pe["readout_qubits"], "phase_estimation.readout_qubits", c.pe_readout);
    }
    if (const YAML::Node sym = root["symmetry"]) {
        if (sym.IsScalar()) {
            r.read(sym, "symmetry", c.symmetry);
        } else {
            r.known_keys(sym, "symmetry", {"kind"});
            r.read(sym["kind"], "symmetry.kind", c.symmetry);
        }
        c.symmetry = normalized_name(c.symmetry);
    }
    if (const YAML::Node pert = root["perturbation"]) {
        r.known_keys(pert, "perturbation", {"orbital", "strength"});
        r.read_optional(pert["orbital"], "perturbation.orbital", c.perturb_orbital);
        r.read(pert["strength"], "perturbation.strength", c.perturb_strength);
        if (!c.perturb_orbital) {
            r.error("perturbation.orbital", "perturbation needs an orbital index");
        }
    }
    if (const YAML::Node cell = root["cell"]) {
        r.known_keys(cell, "cell", {"m", "l", "epsilon"});
        r.read(cell["m"], "cell.m", c.cell_m);
        r.read(cell["l"], "cell.l", c.cell_l);
        r.read(cell["epsilon"], "cell.epsilon", c.cell_epsilon);
    }
    if (const YAML::Node sweep = root["sweep"]) {
        r.known_keys(sweep, "sweep", {"m", "l", "epsilon", "threads"});
        read_list(r, sweep["m"], "sweep.m", c.sweep_m);
        read_list(r, sweep["l"], "sweep.l", c.sweep_l);
        read_list(r, sweep["epsilon"], "sweep.epsilon", c.sweep_epsilon);
        r.read(sweep["threads"], "sweep.threads", c.threads);
    }
    if (const YAML::Node out = root["output"]) {
        r.known_keys(out, "output", {"state", "rho"});
        r.read(out["state"], "output.state", c.write_state);
        r.read(out["rho"], "output.rho", c.write_rho);
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path, std::vector<Diagnostic> &diagnostics) {
    YAML::Node root;
    try {
        root = YAML::LoadFile(path.string());
    } catch (const YAML::BadFile &) {
        diagnostics.push_back(Diagnostic{"--config", ErrorKind::configuration, "cannot open '" + path.string() + "'"});
        return {};
    } catch (const YAML::Exception &e) {
        diagnostics.push_back(Diagnostic{"--config", ErrorKind::validation, std::string("parse error: ") + e.what()});
        return {};
    }
    return parse_config(root, path.parent_path(), diagnostics);
}

BasisSet make_basis(const ExperimentConfig &config, const std::vector<OrbitalConfig> &orbitals, std::string_view key) {
    require(!orbitals.empty(), ErrorKind::validation, std::string(key) + ": at least one orbital is required");
    require(config.grid_bits >= 1 && config.grid_bits <= 20, ErrorKind::validation,
            "grid.qubits must be in [1, 20]");
    require(config.length > 0.0 && std::isfinite(config.length), ErrorKind::validation, "grid.length must be positive");
    std::vector<Orbital> built;
    for (std::size_t i = 0; i < orbitals.size(); ++i) {
        built.push_back(make_orbital(orbitals[i], config, std::string(key) + "[" + std::to_string(i) + "]"));
    }
    return BasisSet(std::move(built), config.grid_bits);
}

BasisSet make_basis(const ExperimentConfig &config) {
    BasisSet basis = make_basis(config, config.orbitals, "basis.orbitals");
    if (config.perturb_orbital) {
        require(*config.perturb_orbital < basis.size(), ErrorKind::validation,
                "perturbation.orbital is out of range");
        basis = basis.perturb_fock(*config.perturb_orbital, config.perturb_strength);
    }
    return basis;
}

IntegrationSpec make_integration(const ExperimentConfig &config) {
    IntegrationSpec spec;
    spec.backend = parse_backend(config.backend);
    spec.epsilon = config.epsilon;
    spec.delta = config.delta;
    spec.variance = config.variance;
    spec.bounds = config.bounds;
    spec.seed = config.seed.value_or(0);
    spec.adversarial = config.adversarial;
    spec.validate();
    return spec;
}

PhaseEstimationOptions make_phase_estimation(const ExperimentConfig &config, unsigned grid_bits) {
    PhaseEstimationOptions pe;
    require(config.pe_epsilon > 0.0 && config.pe_epsilon < 1.0, ErrorKind::validation,
            "phase_estimation.epsilon must be in (0, 1)");
    pe.epsilon = config.pe_epsilon;
    pe.time = config.pe_time;
    pe.readout_qubits = config.pe_readout;
    if (!config.symmetry.empty()) {
        switch (parse_symmetry(config.symmetry)) {
        case SymmetryKind::reflection: pe.symmetry = SymmetryOperator::reflection(grid_bits); break;
        case SymmetryKind::cyclic_shift: pe.symmetry = SymmetryOperator::cyclic_shift(grid_bits); break;
        }
    }
    return pe;
}

FockSuperposition make_superposition(const std::vector<TermConfig> &terms, Statistics statistics,
                                     std::string_view key) {
    require(!terms.empty(), ErrorKind::validation, std::string(key) + ": no terms");
    std::vector<FockTerm> out;
    for (const auto &t : terms) {
        out.push_back(FockTerm{OccupationVector::parse(t.occupation, statistics), t.amplitude});
    }
    return FockSuperposition(std::move(out));
}

MixedSpec make_mixed(const ExperimentConfig &config, const BasisSet &basis) {
    require(!config.mixed.empty(), ErrorKind::validation, "mixed.entries: no entries");
    const Statistics stats = parse_statistics(config.statistics);
    std::vector<FockSuperposition> states;
    for (std::size_t i = 0; i < config.mixed.size(); ++i) {
        states.push_back(
            make_superposition(config.mixed[i].terms, stats, "mixed.entries[" + std::to_string(i) + "]"));
    }
    if (config.beta) {
        std::vector<double> energies;
        for (std::size_t i = 0; i < config.mixed.size(); ++i) {
            if (config.mixed[i].energy) {
                energies.push_back(*config.mixed[i].energy);
                continue;
            }
            require(states[i].size() == 1, ErrorKind::validation,
                    "mixed.entries[" + std::to_string(i) + "].energy is required for a superposition entry");
            const auto &occ = states[i].terms().front().occupation;
            double e = 0.0;
            for (std::size_t j = 0; j < occ.orbitals(); ++j) {
                e += occ.count(j) * basis.energy(j);
            }
            energies.push_back(e);
        }
        return MixedSpec::thermal(*config.beta, energies, std::move(states));
    }
    std::vector<MixedEntry> entries;
    for (std::size_t i = 0; i < config.mixed.size(); ++i) {
        require(config.mixed[i].probability.has_value(), ErrorKind::validation,
                "mixed.entries[" + std::to_string(i) + "].probability is required without mixed.thermal");
        entries.push_back(MixedEntry{*config.mixed[i].probability, std::move(states[i])});
    }
    return MixedSpec(std::move(entries));
}

std::vector<Diagnostic> validate(const ExperimentConfig &config) {
    std::vector<Diagnostic> out;
    if (config.command.empty()) {
        out.push_back(Diagnostic{"command", ErrorKind::validation, "missing command"});
        return out;
    }
    if (!is_command(config.command) || config.command == "validate") {
        out.push_back(Diagnostic{"command", ErrorKind::validation, "unknown command '" + config.command + "'"});
        return out;
    }
    const unsigned cap = [&] {
        unsigned c = kDefaultQubitCap;
        capture(out, "GRIDPREP_QUBIT_CAP", [&] { c = qubit_cap_from_environment(); });
        return c;
    }();
    const std::string cap_text = "the qubit cap of " + std::to_string(cap) + " (GRIDPREP_QUBIT_CAP)";
    auto check_width = [&](const std::string &key, unsigned needed) {
        if (needed > cap) {
            out.push_back(Diagnostic{key, ErrorKind::resource,
                                     "needs " + std::to_string(needed) + " qubits, above " + cap_text});
        }
    };

    capture(out, "integration", [&] {
        const IntegrationSpec spec = make_integration(config);
        if (spec.backend == Backend::monte_carlo && !config.seed) {
            fail(ErrorKind::configuration, "the monte_carlo backend needs an explicit seed");
        }
    });
    capture(out, "phase_estimation", [&] { (void)make_phase_estimation(config, std::max(1U, config.grid_bits)); });

    const std::string &cmd = config.command;
    if (cmd == "verify-bounds" || cmd == "sweep" || cmd == "cost-table") {
        auto positive = [&](const std::string &key, bool ok) {
            if (!ok) {
                out.push_back(Diagnostic{key, ErrorKind::validation, "values must be positive"});
            }
        };
        const auto &ms = cmd == "verify-bounds" ? std::vector<unsigned>{config.cell_m} : config.sweep_m;
        const auto &ls = cmd == "verify-bounds" ? std::vector<unsigned>{config.cell_l} : config.sweep_l;
        const auto &es = cmd == "verify-bounds" ? std::vector<double>{config.cell_epsilon} : config.sweep_epsilon;
        const std::string prefix = cmd == "verify-bounds" ? "cell" : "sweep";
        positive(prefix + ".m", !ms.empty() && std::all_of(ms.begin(), ms.end(), [](unsigned v) { return v >= 1; }));
        positive(prefix + ".l", !ls.empty() && std::all_of(ls.begin(), ls.end(), [](unsigned v) { return v >= 1; }));
        if (es.empty() || !std::all_of(es.begin(), es.end(), [](double e) { return e > 0.0 && e < 1.0; })) {
            out.push_back(Diagnostic{prefix + ".epsilon", ErrorKind::validation, "values must be in (0, 1)"});
        }
        if (cmd == "cost-table" &&
            !std::all_of(ms.begin(), ms.end(), [](unsigned v) { return v >= 1 && v <= 4; })) {
            out.push_back(Diagnostic{"sweep.m", ErrorKind::validation, "cost-table supports 1 <= m <= 4"});
        }
        for (unsigned m : ms) {
            for (unsigned l : ls) {
                // Superposition cell: particles, occupation register and readout.
                const unsigned fock = m + 1;
                const unsigned readout = static_cast<unsigned>(std::bit_width(m + 1));
                const unsigned perm = m * permutation_word_bits(m) + 1;
                check_width(prefix + ".m", m * l + std::max(fock + readout, perm));
            }
        }
        return out;
    }

    if (cmd == "prepare-two-species") {
        if (config.species.size() != 2) {
            out.push_back(Diagnostic{"species", ErrorKind::validation, "exactly two species are required"});
            return out;
        }
        unsigned total = 0;
        std::size_t sizes[2] = {0, 0};
        for (std::size_t s = 0; s < 2; ++s) {
            const std::string key = "species[" + std::to_string(s) + "]";
            const auto &sp = config.species[s];
            sizes[s] = sp.configurations.size();
            capture(out, key, [&] {
                const BasisSet basis = make_basis(config, sp.orbitals.empty() ? config.orbitals : sp.orbitals,
                                                  key + ".orbitals");
                const Statistics stats = parse_statistics(sp.statistics);
                require(!sp.configurations.empty(), ErrorKind::validation, key + ".configurations: none given");
                unsigned m = 0;
                unsigned fock = 0;
                for (const auto &text : sp.configurations) {
                    const auto occ = OccupationVector::parse(text, stats);
                    require(occ.orbitals() == basis.size(), ErrorKind::validation,
                            key + ".configurations: '" + text + "' does not match " +
                                std::to_string(basis.size()) + " orbitals");
                    m = occ.particles();
                    fock = occ.fock_width();
                }
                total += m * config.grid_bits + fock;
            });
        }
        for (std::size_t i = 0; i < config.theta.size(); ++i) {
            if (config.theta[i].a >= sizes[0] || config.theta[i].b >= sizes[1]) {
                out.push_back(Diagnostic{"theta[" + std::to_string(i) + "]", ErrorKind::validation,
                                         "configuration index out of range"});
            }
        }
        if (config.theta.empty()) {
            out.push_back(Diagnostic{"theta", ErrorKind::validation, "no terms"});
        }
        check_width("species", total);
        return out;
    }

    if (config.orbitals.empty()) {
        out.push_back(Diagnostic{"basis.orbitals", ErrorKind::validation, "at least one orbital is required"});
        return out;
    }
    std::optional<BasisSet> basis;
    capture(out, config.perturb_orbital ? "perturbation" : "basis.orbitals", [&] { basis = make_basis(config); });
    Statistics stats = Statistics::fermionic;
    capture(out, "basis.statistics", [&] { stats = parse_statistics(config.statistics); });
    if (!basis) {
        return out;
    }
    const unsigned l = basis->grid_bits();

    if (cmd == "prepare-orbital") {
        if (config.orbital >= basis->size()) {
            out.push_back(Diagnostic{"basis.target", ErrorKind::validation, "orbital index out of range"});
        }
        check_width("grid.qubits", l);
        return out;
    }

    std::vector<OccupationVector> configs;
    auto parse_into = [&](const std::string &key, const std::string &text) {
        capture(out, key, [&] {
            const auto occ = OccupationVector::parse(text, stats);
            require(occ.orbitals() == basis->size(), ErrorKind::validation,
                    "'" + text + "' has " + std::to_string(occ.orbitals()) + " slots but the basis has " +
                        std::to_string(basis->size()) + " orbitals");
            require(occ.particles() >= 1, ErrorKind::validation, "occupation holds no particles");
            configs.push_back(occ);
        });
    };
    if (cmd == "prepare-slater") {
        if (config.occupation.empty()) {
            out.push_back(Diagnostic{"occupation", ErrorKind::validation, "missing occupation"});
        } else {
            parse_into("occupation", config.occupation);
        }
    } else if (cmd == "prepare-superposition") {
        if (config.superposition.empty()) {
            out.push_back(Diagnostic{"superposition", ErrorKind::validation, "no terms"});
        }
        for (std::size_t i = 0; i < config.superposition.size(); ++i) {
            parse_into("superposition[" + std::to_string(i) + "].occupation", config.superposition[i].occupation);
        }
        if (configs.size() == config.superposition.size()) {
            capture(out, "superposition", [&] { (void)make_superposition(config.superposition, stats, "superposition"); });
        }
    } else if (cmd == "prepare-mixed") {
        for (std::size_t i = 0; i < config.mixed.size(); ++i) {
            for (std::size_t j = 0; j < config.mixed[i].terms.size(); ++j) {
                parse_into("mixed.entries[" + std::to_string(i) + "].superposition[" + std::to_string(j) + "]",
                           config.mixed[i].terms[j].occupation);
            }
        }
        capture(out, "mixed", [&] { (void)make_mixed(config, *basis); });
    }
    if (configs.empty()) {
        return out;
    }

    const unsigned m = configs.front().particles();
    const unsigned fock = configs.front().fock_width();
    const unsigned perm = m * permutation_word_bits(m) + (stats == Statistics::fermionic ? 1U : 0U);
    std::set<std::size_t> orbitals;
    std::set<std::uint64_t> distinct;
    for (const auto &occ : configs) {
        if (occ.particles() != m) {
            out.push_back(Diagnostic{cmd == "prepare-mixed" ? "mixed" : "superposition", ErrorKind::validation,
                                     "configurations differ in particle number"});
            return out;
        }
        for (std::size_t j : occ.occupied()) {
            orbitals.insert(j);
        }
        distinct.insert(occ.encode());
    }
    unsigned readout = 0;
    if (cmd != "prepare-slater" && distinct.size() > 1) {
        capture(out, "phase_estimation", [&] {
            const std::vector<std::size_t> ids(orbitals.begin(), orbitals.end());
            const PhaseTable table(*basis, ids, make_phase_estimation(config, l));
            readout = table.readout_qubits() + (table.symmetry() ? table.symmetry()->readout_qubits : 0U);
        });
    }
    const unsigned labels = cmd == "prepare-mixed" ? width_of(config.mixed.size()) : 0U;
    const unsigned index = cmd == "prepare-slater" ? 0U : width_of(distinct.size() * std::max<std::size_t>(1, config.mixed.size()));
    const unsigned early = fock + labels + index;
    check_width(cmd == "prepare-slater" ? "occupation" : "grid.qubits",
                std::max({early, m * l + fock + labels + readout, m * l + perm + labels}));
    if (cmd == "prepare-mixed" && m * l > kDefaultDensityCap) {
        out.push_back(Diagnostic{"grid.qubits", ErrorKind::resource,
                                 "density matrix over " + std::to_string(m * l) +
                                     " qubits exceeds the density-matrix cap of " +
                                     std::to_string(kDefaultDensityCap)});
    }
    return out;
}

} // namespace gridprep::cli
