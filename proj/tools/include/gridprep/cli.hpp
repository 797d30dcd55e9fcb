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
 * Experiment configuration, the command pipelines and report writers behind
 * the gridprep executable.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gridprep/analysis.hpp"
#include "gridprep/assemble.hpp"
#include "gridprep/basis.hpp"
#include "gridprep/compose.hpp"
#include "gridprep/discriminate.hpp"
#include "gridprep/error.hpp"

namespace YAML {
class Node;
}

namespace gridprep::cli {

inline constexpr const char *kCommands[] = {
    "prepare-orbital", "prepare-slater", "prepare-superposition", "prepare-two-species", "prepare-mixed",
    "verify-bounds",   "sweep",          "cost-table",            "validate",
};

bool is_command(std::string_view name);

struct Diagnostic {
    std::string key;
    ErrorKind kind = ErrorKind::validation;
    std::string message;
};

std::string to_string(const Diagnostic &d);

struct OrbitalConfig {
    std::string family = "box_sine";
    int n = 1;
    int k = 0;
    std::uint64_t site = 0;
    double center = 0.5;
    double width = 0.1;
    double energy = 0.0;
    std::string csv;
};

struct TermConfig {
    std::string occupation;
    std::complex<double> amplitude{1.0, 0.0};
};

struct MixedEntryConfig {
    std::optional<double> probability;
    std::optional<double> energy;
    std::vector<TermConfig> terms;
};

struct SpeciesConfig {
    std::string statistics = "fermionic";
    std::vector<OrbitalConfig> orbitals; ///< empty: share the top-level basis
    std::vector<std::string> configurations;
};

struct JointTermConfig {
    std::size_t a = 0;
    std::size_t b = 0;
    std::complex<double> amplitude{1.0, 0.0};
};

struct ExperimentConfig {
    std::string command;
    std::filesystem::path base_dir;
    std::optional<std::uint64_t> seed;

    unsigned grid_bits = 4;
    double length = 1.0;
    std::string statistics = "fermionic";
    std::vector<OrbitalConfig> orbitals;
    std::size_t orbital = 0; ///< prepare-orbital target

    std::string occupation;
    std::vector<TermConfig> superposition;

    std::optional<double> beta;
    std::vector<MixedEntryConfig> mixed;

    std::vector<SpeciesConfig> species;
    std::vector<JointTermConfig> theta;

    std::string backend = "analytic_cdf";
    double epsilon = 1e-3;
    double delta = 0.05;
    std::optional<double> variance;
    std::optional<std::pair<double, double>> bounds;
    bool adversarial = false;

    double pe_epsilon = 0.05;
    std::optional<double> pe_time;
    std::optional<unsigned> pe_readout;
    std::string symmetry; ///< "", "reflection" or "cyclic_shift"
    std::optional<std::size_t> perturb_orbital;
    double perturb_strength = 0.0;

    /// verify-bounds runs this single cell.
    unsigned cell_m = 2;
    unsigned cell_l = 6;
    double cell_epsilon = 1e-2;

    std::vector<unsigned> sweep_m{1, 2, 3};
    std::vector<unsigned> sweep_l{4, 6};
    std::vector<double> sweep_epsilon{1e-2, 1e-3};
    unsigned threads = 0; ///< 0: hardware concurrency

    bool write_state = false;
    bool write_rho = false;
};

/// Reads a config; problems are appended to `diagnostics` and parsing
/// continues with defaults so that every issue is reported at once.
ExperimentConfig parse_config(const YAML::Node &root, const std::filesystem::path &base_dir,
                              std::vector<Diagnostic> &diagnostics);
ExperimentConfig load_config(const std::filesystem::path &path, std::vector<Diagnostic> &diagnostics);

/// Static checks that need no state vector.
std::vector<Diagnostic> validate(const ExperimentConfig &config);

// Typed views of a config; each throws gridprep::Error naming the key.
BasisSet make_basis(const ExperimentConfig &config);
BasisSet make_basis(const ExperimentConfig &config, const std::vector<OrbitalConfig> &orbitals, std::string_view key);
IntegrationSpec make_integration(const ExperimentConfig &config);
PhaseEstimationOptions make_phase_estimation(const ExperimentConfig &config, unsigned grid_bits);
FockSuperposition make_superposition(const std::vector<TermConfig> &terms, Statistics statistics,
                                     std::string_view key);
MixedSpec make_mixed(const ExperimentConfig &config, const BasisSet &basis);

struct RunOutput {
    PreparationReport report;
    std::optional<std::vector<complex>> state;
    std::optional<CMatrix> rho;
    std::vector<BoundCheck> checks;
    /// Extra CSV table (sweep or cost-table) with its header.
    std::string table_header;
    std::vector<std::string> table_rows;
    std::vector<std::string> summary;
};

RunOutput run_pipeline(const ExperimentConfig &config);

/// One adversarial-noise cell of the error-bound sweep: M = m + 1 box-sine
/// orbitals with energies 1..M and an evolution time that makes every phase
/// exact. eps_mixed is left empty when m l exceeds the density cap.
struct BoundCell {
    unsigned m = 0;
    unsigned l = 0;
    double epsilon = 0.0;
    PreparationReport report;
    std::vector<BoundCheck> checks;
    bool all_pass = true;
};

BoundCell run_bound_cell(unsigned m, unsigned l, double epsilon, std::uint64_t seed,
                         unsigned density_cap = kDefaultDensityCap);

std::vector<BoundCell> run_sweep(const std::vector<unsigned> &ms, const std::vector<unsigned> &ls,
                                 const std::vector<double> &epsilons, std::uint64_t seed, unsigned threads);

std::string format_number(double v);
void write_report_text(std::ostream &out, const RunOutput &run);
void write_report_csv(std::ostream &out, const RunOutput &run);
void write_state_csv(std::ostream &out, const std::vector<complex> &state);
void write_rho_csv(std::ostream &out, const CMatrix &rho);

struct Invocation {
    std::string command;
    std::filesystem::path config;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out_dir = ".";
};

/// Runs a command end to end and returns the process exit status.
int execute(const Invocation &invocation, std::ostream &out, std::ostream &err);

} // namespace gridprep::cli
