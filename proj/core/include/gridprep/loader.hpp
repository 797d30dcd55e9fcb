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
 * Single-particle loading on a grid register: l levels of multiplexed
 * rotations driven by split ratios, then a diagonal phase pass.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridprep/basis.hpp"
#include "gridprep/statevec.hpp"

namespace gridprep {

struct LevelEntry {
    std::uint64_t prefix = 0;
    double ratio = 0.5;
    double angle = 0.0;
    bool empty = false;
};

struct LoadPlan {
    unsigned grid_bits = 0;
    std::string orbital;
    /// levels[i - 1] holds the 2^{i-1} prefixes of level i.
    std::vector<std::vector<LevelEntry>> levels;
    /// Site phases arg phi(x_j).
    std::vector<double> phases;
    /// Split ratios actually evaluated (nonempty blocks).
    std::uint64_t integral_evaluations = 0;
    std::uint64_t oracle_calls = 0;
    std::uint64_t mc_samples = 0;

    unsigned rotation_stages() const { return static_cast<unsigned>(levels.size()); }
    /// Controlled rotations applied, one per nonempty block.
    std::uint64_t rotation_applications() const;
};

/// Builds LoadPlans and applies them, memoizing plans per (orbital, grid).
/// Orbitals passed in must outlive the Loader.
class Loader {
  public:
    explicit Loader(IntegrationSpec spec = {});

    const IntegrationSpec &spec() const { return spec_; }

    const LoadPlan &plan(const Orbital &orbital, unsigned grid_bits);

    /// Loads `orbital` into a blank segment.
    const LoadPlan &load(QuantumState &state, std::string_view segment, const Orbital &orbital);

    /// Loads selector(c) into `segment` on every branch, where c is the
    /// concatenated value of `controls` (controls[0] lowest). A null
    /// selection leaves that branch untouched. The target must be blank on
    /// every branch that gets loaded.
    void load_selected(QuantumState &state, std::string_view segment, std::span<const std::string> controls,
                       const std::function<const Orbital *(std::uint64_t)> &selector);

    /// Evaluations counted every time a plan is used, as an unmemoized
    /// circuit would pay them.
    std::uint64_t raw_evaluations() const { return raw_evaluations_; }
    /// Evaluations actually performed.
    std::uint64_t memoized_evaluations() const { return memoized_evaluations_; }
    std::uint64_t rotation_stages() const { return rotation_stages_; }
    std::uint64_t rotation_applications() const { return rotation_applications_; }
    std::uint64_t mc_samples() const { return mc_samples_; }

  private:
    IntegrationSpec spec_;
    std::map<std::pair<const Orbital *, unsigned>, std::unique_ptr<LoadPlan>> plans_;
    std::map<std::pair<const Orbital *, unsigned>, std::unique_ptr<Orbital>> discretized_;
    std::uint64_t raw_evaluations_ = 0;
    std::uint64_t memoized_evaluations_ = 0;
    std::uint64_t rotation_stages_ = 0;
    std::uint64_t rotation_applications_ = 0;
    std::uint64_t mc_samples_ = 0;

    void account(const LoadPlan &plan);
};

/// Builds the plan for `orbital` on a 2^grid_bits grid. The ratios are taken
/// from the grid-sampled orbital, so an exact backend reproduces the sampled
/// amplitudes exactly.
LoadPlan build_load_plan(const Orbital &orbital, unsigned grid_bits, const IntegrationSpec &spec);

/// Applies rotation levels and phases selected per basis index; `select`
/// returning null leaves a branch alone.
void apply_load_plans(QuantumState &state, std::string_view segment,
                      const std::function<const LoadPlan *(std::uint64_t)> &select);

/// Amplitudes the plan produces on a fresh register.
std::vector<complex> plan_amplitudes(const LoadPlan &plan);

/// One-shot load of an orbital into a blank segment.
LoadPlan load_orbital(QuantumState &state, std::string_view segment, const Orbital &orbital,
                      const IntegrationSpec &spec);

/// |x> -> e^{i arg phi(x_j)} |x> with x_j = j L / 2^w.
void apply_phases(QuantumState &state, std::string_view segment, const Orbital &orbital);

/// Infidelity bound l * epsilon / 2 for l noisy levels.
double load_error_bound(unsigned grid_bits, double epsilon);

} // namespace gridprep
