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

#include "gridprep/loader.hpp"

#include <cmath>
#include <utility>

#include "gridprep/error.hpp"

namespace gridprep {

std::uint64_t LoadPlan::rotation_applications() const {
    std::uint64_t n = 0;
    for (const auto &level : levels) {
        for (const auto &e : level) {
            n += e.empty ? 0 : 1;
        }
    }
    return n;
}

LoadPlan build_load_plan(const Orbital &orbital, unsigned grid_bits, const IntegrationSpec &spec) {
    spec.validate();
    require(grid_bits >= 1 && grid_bits <= 30, ErrorKind::validation, "grid qubits must be in [1, 30]");
    const std::uint64_t sites = std::uint64_t{1} << grid_bits;
    const auto *table = std::get_if<TabulatedFamily>(&orbital.family());
    const Orbital target = (table != nullptr && table->table.size() == sites) ? orbital : orbital.discretized(grid_bits);

    LoadPlan plan;
    plan.grid_bits = grid_bits;
    plan.orbital = orbital.describe();
    std::vector<double> mass{1.0};
    for (unsigned level = 1; level <= grid_bits; ++level) {
        std::vector<LevelEntry> entries(mass.size());
        std::vector<double> next(mass.size() * 2, 0.0);
        for (std::uint64_t p = 0; p < mass.size(); ++p) {
            LevelEntry &e = entries[p];
            e.prefix = p;
            const SplitRatio r = split_ratio(target, level, 2 * p, spec, mass[p]);
            if (r.empty) {
                e.empty = true;
                e.ratio = 1.0;
                next[2 * p] = mass[p];
                continue;
            }
            ++plan.integral_evaluations;
            plan.oracle_calls += r.oracle_calls;
            plan.mc_samples += r.samples;
            e.ratio = r.value;
            e.angle = std::acos(std::sqrt(r.value));
            next[2 * p] = mass[p] * r.value;
            next[2 * p + 1] = mass[p] * (1.0 - r.value);
        }
        plan.levels.push_back(std::move(entries));
        mass = std::move(next);
    }
    plan.phases.resize(sites);
    for (std::uint64_t j = 0; j < sites; ++j) {
        plan.phases[j] = target.phase(static_cast<double>(j) * target.length() / static_cast<double>(sites));
    }
    return plan;
}

void apply_load_plans(QuantumState &state, std::string_view segment,
                      const std::function<const LoadPlan *(std::uint64_t)> &select) {
    const Segment seg = state.segment(segment);
    const unsigned l = seg.width;
    auto amps = state.amplitudes();

    double occupied = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (seg.value(i) != 0 && amps[i] != complex{} && select(i) != nullptr) {
            occupied += std::norm(amps[i]);
        }
    }
    require(occupied <= 1e-10, ErrorKind::precondition,
            "segment '" + seg.name + "' is not blank where a load was requested");

    for (unsigned level = 1; level <= l; ++level) {
        const unsigned bit = l - level;
        const std::uint64_t target = std::uint64_t{1} << seg.qubit(bit);
        for (std::uint64_t i = 0; i < amps.size(); ++i) {
            if ((i & target) != 0) {
                continue;
            }
            const complex a0 = amps[i];
            const complex a1 = amps[i | target];
            if (a0 == complex{} && a1 == complex{}) {
                continue;
            }
            const LoadPlan *plan = select(i);
            if (plan == nullptr) {
                continue;
            }
            require(plan->grid_bits == l, ErrorKind::structural,
                    "load plan for a 2^" + std::to_string(plan->grid_bits) + " grid applied to a " +
                        std::to_string(l) + "-qubit segment");
            const LevelEntry &e = plan->levels[level - 1][seg.value(i) >> (bit + 1)];
            if (e.empty) {
                continue;
            }
            const double c = std::cos(e.angle);
            const double s = std::sin(e.angle);
            amps[i] = c * a0 - s * a1;
            amps[i | target] = s * a0 + c * a1;
        }
    }
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (amps[i] == complex{}) {
            continue;
        }
        if (const LoadPlan *plan = select(i)) {
            const double phi = plan->phases[seg.value(i)];
            if (phi != 0.0) {
                amps[i] *= std::polar(1.0, phi);
            }
        }
    }
}

std::vector<complex> plan_amplitudes(const LoadPlan &plan) {
    RegisterLayout layout(plan.grid_bits);
    layout.add("x", Role::particle, plan.grid_bits);
    QuantumState state(std::move(layout));
    apply_load_plans(state, "x", [&](std::uint64_t) { return &plan; });
    const auto amps = std::as_const(state).amplitudes();
    return {amps.begin(), amps.end()};
}

LoadPlan load_orbital(QuantumState &state, std::string_view segment, const Orbital &orbital,
                      const IntegrationSpec &spec) {
    LoadPlan plan = build_load_plan(orbital, state.segment(segment).width, spec);
    apply_load_plans(state, segment, [&](std::uint64_t) { return &plan; });
    return plan;
}

void apply_phases(QuantumState &state, std::string_view segment, const Orbital &orbital) {
    const Segment &seg = state.segment(segment);
    const double n = static_cast<double>(seg.dimension());
    apply_diagonal_phase(state, segment, [&](std::uint64_t x) {
        return orbital.phase(static_cast<double>(x) * orbital.length() / n);
    });
}

double load_error_bound(unsigned grid_bits, double epsilon) {
    require(grid_bits >= 1, ErrorKind::domain, "load_error_bound needs l >= 1");
    require(epsilon >= 0.0 && epsilon < 1.0, ErrorKind::domain, "load_error_bound needs epsilon in [0, 1)");
    return grid_bits * epsilon / 2.0;
}

// ---------------------------------------------------------------------------
// Loader

Loader::Loader(IntegrationSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

const LoadPlan &Loader::plan(const Orbital &orbital, unsigned grid_bits) {
    const auto key = std::make_pair(&orbital, grid_bits);
    auto it = plans_.find(key);
    if (it == plans_.end()) {
        auto built = std::make_unique<LoadPlan>(build_load_plan(orbital, grid_bits, spec_));
        memoized_evaluations_ += built->integral_evaluations;
        mc_samples_ += built->mc_samples;
        it = plans_.emplace(key, std::move(built)).first;
    }
    return *it->second;
}

void Loader::account(const LoadPlan &plan) {
    raw_evaluations_ += plan.integral_evaluations;
    rotation_stages_ += plan.rotation_stages();
    rotation_applications_ += plan.rotation_applications();
}

const LoadPlan &Loader::load(QuantumState &state, std::string_view segment, const Orbital &orbital) {
    const LoadPlan &p = plan(orbital, state.segment(segment).width);
    apply_load_plans(state, segment, [&](std::uint64_t) { return &p; });
    account(p);
    return p;
}

void Loader::load_selected(QuantumState &state, std::string_view segment, std::span<const std::string> controls,
                           const std::function<const Orbital *(std::uint64_t)> &selector) {
    const unsigned l = state.segment(segment).width;
    std::vector<Segment> ctl;
    unsigned width = 0;
    for (const auto &name : controls) {
        ctl.push_back(state.segment(name));
        width += ctl.back().width;
    }
    require(width <= 20, ErrorKind::resource, "load control registers wider than 20 qubits");
    std::vector<const LoadPlan *> table(std::size_t{1} << width, nullptr);
    std::map<const LoadPlan *, bool> used;
    for (std::uint64_t c = 0; c < table.size(); ++c) {
        if (const Orbital *orb = selector(c)) {
            table[c] = &plan(*orb, l);
            used[table[c]] = true;
        }
    }
    apply_load_plans(state, segment, [&](std::uint64_t index) {
        std::uint64_t c = 0;
        unsigned shift = 0;
        for (const auto &s : ctl) {
            c |= s.value(index) << shift;
            shift += s.width;
        }
        return table[c];
    });
    for (const auto &[p, _] : used) {
        account(*p);
    }
}

} // namespace gridprep
