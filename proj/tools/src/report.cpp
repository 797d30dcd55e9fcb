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

#include <fstream>
#include <new>

#include "gridprep/cli.hpp"

namespace gridprep::cli {

namespace {

void field(std::ostream &out, std::string_view name, const std::string &value) {
    out << "  " << name << ": " << value << "\n";
}

std::string optional_number(const std::optional<double> &v) {
    return v ? format_number(*v) : std::string("n/a");
}

std::vector<std::pair<std::string, std::string>> report_fields(const RunOutput &run) {
    const PreparationReport &r = run.report;
    std::vector<std::pair<std::string, std::string>> f = {
        {"command", r.command},
        {"statistics", r.statistics},
        {"particles", std::to_string(r.particles)},
        {"grid_bits", std::to_string(r.grid_bits)},
        {"orbitals", std::to_string(r.orbitals)},
        {"epsilon", format_number(r.epsilon)},
        {"backend", r.backend},
        {"eps_orbital", r.eps_orbital ? format_number(*r.eps_orbital) : ""},
        {"eps_determinant", r.eps_determinant ? format_number(*r.eps_determinant) : ""},
        {"eps_superposition", r.eps_superposition ? format_number(*r.eps_superposition) : ""},
        {"eps_mixed", r.eps_mixed ? format_number(*r.eps_mixed) : ""},
        {"product_exact", r.product_exact ? format_number(*r.product_exact) : ""},
        {"product_linear", r.product_linear ? format_number(*r.product_linear) : ""},
        {"bound_orbital", r.grid_bits ? format_number(r.grid_bits * r.epsilon / 2.0) : ""},
        {"bound_determinant",
         r.grid_bits ? format_number(r.particles * r.grid_bits * r.epsilon / 2.0) : ""},
        {"orbital_overlap", format_number(r.orbital_overlap)},
        {"configuration_overlap", format_number(r.configuration_overlap)},
        {"orthogonality_flag", r.orthogonality_flag ? "1" : "0"},
        {"sort_norm_squared", format_number(r.sort_norm_squared)},
        {"purity", r.purity ? format_number(*r.purity) : ""},
    };
    const auto &pe = r.phase_estimation;
    f.emplace_back("pe_readout_qubits", pe ? std::to_string(pe->readout_qubits) : "");
    f.emplace_back("pe_extra_qubits", pe ? std::to_string(pe->extra_qubits) : "");
    f.emplace_back("pe_time", pe ? format_number(pe->evolution_time) : "");
    f.emplace_back("pe_success_probability", pe ? format_number(pe->success_probability) : "");
    f.emplace_back("pe_ambiguous_probability", pe ? format_number(pe->ambiguous_probability) : "");
    f.emplace_back("pe_attempts", pe ? std::to_string(pe->attempts) : "");
    f.emplace_back("pe_retries", pe ? std::to_string(pe->retries) : "");
    f.emplace_back("integral_evaluations", std::to_string(r.integral_evaluations));
    f.emplace_back("integral_evaluations_memoized", std::to_string(r.integral_evaluations_memoized));
    f.emplace_back("rotation_stages", std::to_string(r.rotation_stages));
    f.emplace_back("rotation_applications", std::to_string(r.rotation_applications));
    f.emplace_back("mc_samples", std::to_string(r.mc_samples));
    f.emplace_back("comparators", std::to_string(r.comparators));
    f.emplace_back("qubit_swaps", std::to_string(r.qubit_swaps));
    f.emplace_back("lookup_comparisons", std::to_string(r.lookup_comparisons));
    f.emplace_back("peak_qubits", std::to_string(r.peak_qubits));
    bool all = true;
    for (const auto &c : run.checks) {
        all = all && c.pass;
    }
    f.emplace_back("bounds_pass", run.checks.empty() ? "" : (all ? "1" : "0"));
    return f;
}

} // namespace

void write_report_text(std::ostream &out, const RunOutput &run) {
    const PreparationReport &r = run.report;
    out << "gridprep report\n";
    out << "[run]\n";
    field(out, "command", r.command);
    if (!r.statistics.empty()) {
        field(out, "statistics", r.statistics);
    }
    if (r.grid_bits > 0) {
        field(out, "particles", std::to_string(r.particles));
        field(out, "grid_bits", std::to_string(r.grid_bits));
        field(out, "orbitals", std::to_string(r.orbitals));
    }
    field(out, "backend", r.backend);
    field(out, "epsilon", format_number(r.epsilon));
    field(out, "wall_seconds", format_number(r.wall_seconds));

    if (r.grid_bits > 0) {
        out << "[errors]\n";
        field(out, "eps_orbital", optional_number(r.eps_orbital));
        if (!r.eps_orbital_each.empty()) {
            std::string each;
            for (double e : r.eps_orbital_each) {
                each += (each.empty() ? "" : " ") + format_number(e);
            }
            field(out, "eps_orbital_each", each);
        }
        field(out, "product_exact", optional_number(r.product_exact));
        field(out, "product_linear", optional_number(r.product_linear));
        field(out, "eps_determinant", optional_number(r.eps_determinant));
        field(out, "eps_superposition", optional_number(r.eps_superposition));
        field(out, "eps_mixed", optional_number(r.eps_mixed));
        field(out, "l*eps/2", format_number(r.grid_bits * r.epsilon / 2.0));
        field(out, "m*l*eps/2", format_number(r.particles * r.grid_bits * r.epsilon / 2.0));
        field(out, "orbital_overlap", format_number(r.orbital_overlap));
        field(out, "configuration_overlap", format_number(r.configuration_overlap));
        field(out, "orthogonality_flag", r.orthogonality_flag ? "yes" : "no");
        field(out, "sort_norm_squared", format_number(r.sort_norm_squared));
        if (r.purity) {
            field(out, "purity", format_number(*r.purity));
        }
    }
    if (!run.checks.empty()) {
        out << "[bounds]\n";
        for (const auto &c : run.checks) {
            out << "  " << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured " << format_number(c.measured)
                << "  bound " << format_number(c.bound) << "  margin " << format_number(c.margin) << "\n";
        }
    }
    if (r.phase_estimation) {
        const auto &pe = *r.phase_estimation;
        out << "[phase_estimation]\n";
        field(out, "readout_qubits", std::to_string(pe.readout_qubits));
        field(out, "extra_qubits", std::to_string(pe.extra_qubits));
        field(out, "evolution_time", format_number(pe.evolution_time));
        field(out, "success_probability", format_number(pe.success_probability));
        field(out, "ambiguous_probability", format_number(pe.ambiguous_probability));
        field(out, "attempts", std::to_string(pe.attempts));
        field(out, "retries", std::to_string(pe.retries));
        for (const auto &line : pe.window_table) {
            out << "  window " << line << "\n";
        }
    }
    if (r.grid_bits > 0) {
        out << "[counters]\n";
        field(out, "integral_evaluations", std::to_string(r.integral_evaluations));
        field(out, "integral_evaluations_memoized", std::to_string(r.integral_evaluations_memoized));
        field(out, "rotation_stages", std::to_string(r.rotation_stages));
        field(out, "rotation_applications", std::to_string(r.rotation_applications));
        field(out, "mc_samples", std::to_string(r.mc_samples));
        field(out, "comparators", std::to_string(r.comparators));
        field(out, "qubit_swaps", std::to_string(r.qubit_swaps));
        field(out, "lookup_comparisons", std::to_string(r.lookup_comparisons));
    }
    field(out, "peak_qubits", std::to_string(r.peak_qubits));
    if (!run.summary.empty()) {
        out << "[summary]\n";
        for (const auto &line : run.summary) {
            out << "  " << line << "\n";
        }
    }
    if (!r.notes.empty()) {
        out << "[notes]\n";
        for (const auto &line : r.notes) {
            out << "  " << line << "\n";
        }
    }
}

void write_report_csv(std::ostream &out, const RunOutput &run) {
    if (!run.table_header.empty()) {
        out << run.table_header << "\n";
        for (const auto &row : run.table_rows) {
            out << row << "\n";
        }
        return;
    }
    out << "field,value\n";
    for (const auto &[name, value] : report_fields(run)) {
        out << name << "," << value << "\n";
    }
}

void write_state_csv(std::ostream &out, const std::vector<complex> &state) {
    out << "index,re,im\n";
    for (std::size_t i = 0; i < state.size(); ++i) {
        out << i << "," << format_number(state[i].real()) << "," << format_number(state[i].imag()) << "\n";
    }
}

void write_rho_csv(std::ostream &out, const CMatrix &rho) {
    out << "row,col,re,im\n";
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            out << i << "," << j << "," << format_number(rho(i, j).real()) << "," << format_number(rho(i, j).imag())
                << "\n";
        }
    }
}

int execute(const Invocation &invocation, std::ostream &out, std::ostream &err) {
    std::vector<Diagnostic> diagnostics;
    if (!is_command(invocation.command)) {
        err << "unknown command '" << invocation.command << "'\n";
        return exit_status(ErrorKind::validation);
    }
    ExperimentConfig config = load_config(invocation.config, diagnostics);
    if (invocation.seed) {
        config.seed = invocation.seed;
    }
    if (invocation.command != "validate") {
        if (config.command.empty()) {
            config.command = invocation.command;
        } else if (config.command != invocation.command) {
            diagnostics.push_back(Diagnostic{"command", ErrorKind::validation,
                                             "config is for '" + config.command + "' but '" + invocation.command +
                                                 "' was requested"});
        }
    }
    if (diagnostics.empty() || diagnostics.front().key != "--config") {
        const auto more = validate(config);
        diagnostics.insert(diagnostics.end(), more.begin(), more.end());
    }
    if (invocation.command == "validate") {
        for (const auto &d : diagnostics) {
            out << to_string(d) << "\n";
        }
        if (diagnostics.empty()) {
            out << "config is valid\n";
            return 0;
        }
        return exit_status(diagnostics.front().kind);
    }
    if (!diagnostics.empty()) {
        for (const auto &d : diagnostics) {
            err << to_string(d) << "\n";
        }
        return exit_status(diagnostics.front().kind);
    }

    RunOutput run;
    try {
        run = run_pipeline(config);
    } catch (const Error &e) {
        err << gridprep::to_string(e.kind()) << " error: " << e.what() << "\n";
        return exit_status(e.kind());
    } catch (const std::bad_alloc &) {
        err << "resource error: out of memory\n";
        return exit_status(ErrorKind::resource);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }

    std::error_code ec;
    std::filesystem::create_directories(invocation.out_dir, ec);
    auto open = [&](const char *name) {
        std::ofstream f(invocation.out_dir / name);
        if (!f) {
            fail(ErrorKind::configuration, "--out: cannot write '" + (invocation.out_dir / name).string() + "'");
        }
        return f;
    };
    try {
        {
            auto f = open("report.txt");
            write_report_text(f, run);
        }
        {
            auto f = open("report.csv");
            write_report_csv(f, run);
        }
        if (config.write_state && run.state) {
            auto f = open("state.csv");
            write_state_csv(f, *run.state);
        }
        if (config.write_rho && run.rho) {
            auto f = open("rho.csv");
            write_rho_csv(f, *run.rho);
        }
    } catch (const Error &e) {
        err << e.what() << "\n";
        return exit_status(e.kind());
    }
    write_report_text(out, run);
    return 0;
}

} // namespace gridprep::cli
