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

#include <iostream>

#include <CLI11.hpp>

#include "gridprep/cli.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Grid-based many-particle state preparation on a statevector emulator"};
    app.require_subcommand(1);
    gridprep::cli::Invocation inv;
    std::uint64_t seed = 0;
    for (const char *name : gridprep::cli::kCommands) {
        auto *sub = app.add_subcommand(name);
        sub->add_option("--config", inv.config, "experiment file (YAML)")->required();
        sub->add_option("--seed", seed, "overrides the config seed");
        sub->add_option("--out", inv.out_dir, "output directory");
        sub->callback([&, name, sub] {
            inv.command = name;
            if (sub->count("--seed") > 0) {
                inv.seed = seed;
            }
        });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return gridprep::cli::execute(inv, std::cout, std::cerr);
}
