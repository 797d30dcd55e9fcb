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

#include "gridprep/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "gridprep/assemble.hpp"
#include "gridprep/basis.hpp"
#include "gridprep/error.hpp"

namespace gridprep {

double pure_infidelity(std::span<const complex> a, std::span<const complex> b) {
    require(a.size() == b.size(), ErrorKind::structural, "infidelity of vectors with different lengths");
    const double na = norm_squared(a);
    const double nb = norm_squared(b);
    require(std::abs(std::sqrt(na) - 1.0) <= 1e-6 && std::abs(std::sqrt(nb) - 1.0) <= 1e-6, ErrorKind::validation,
            "infidelity inputs must be normalized (norms " + std::to_string(std::sqrt(na)) + ", " +
                std::to_string(std::sqrt(nb)) + ")");
    return std::clamp(1.0 - std::abs(inner_product(a, b)), 0.0, 1.0);
}

namespace {

// Columns U_k sqrt(lambda_k) over eigenvalues above the cutoff: A = F F^dag.
CMatrix psd_factor(const CMatrix &m) {
    require(m.rows() == m.cols(), ErrorKind::validation, "density matrix must be square");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    const Eigen::VectorXd lambda = solver.eigenvalues();
    require(lambda.minCoeff() >= -1e-8, ErrorKind::validation,
            "density matrix has eigenvalue " + std::to_string(lambda.minCoeff()) + " below -1e-8");
    constexpr double kCutoff = 1e-13;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) > kCutoff) {
            kept.push_back(i);
        }
    }
    CMatrix f(m.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) {
        f.col(static_cast<Eigen::Index>(c)) = solver.eigenvectors().col(kept[c]) * std::sqrt(lambda(kept[c]));
    }
    return f;
}

} // namespace

double mixed_infidelity(const CMatrix &a, const CMatrix &b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::structural,
            "density matrices differ in dimension");
    return mixed_infidelity_from_factors(psd_factor(a), psd_factor(b));
}

double mixed_infidelity_from_factors(const CMatrix &fa, const CMatrix &fb) {
    require(fa.rows() == fb.rows(), ErrorKind::structural, "density factors differ in dimension");
    if (fa.cols() == 0 || fb.cols() == 0) {
        return 1.0;
    }
    // Singular values of Fa^dag Fb equal those of sqrt(a) sqrt(b).
    const CMatrix core = fa.adjoint() * fb;
    Eigen::JacobiSVD<CMatrix> svd(core);
    const double root_fidelity = svd.singularValues().sum();
    return std::clamp(1.0 - root_fidelity, 0.0, 1.0);
}

double mixed_infidelity(const DensityMatrix &a, const DensityMatrix &b) {
    return mixed_infidelity(a.matrix(), b.matrix());
}

ProductBound product_error_bound(std::span<const double> per_orbital) {
    ProductBound out;
    double keep = 1.0;
    double worst = 0.0;
    for (double e : per_orbital) {
        require(e >= 0.0 && e <= 1.0, ErrorKind::domain, "per-orbital infidelity outside [0, 1]");
        keep *= 1.0 - e;
        worst = std::max(worst, e);
    }
    out.exact = 1.0 - keep;
    out.linear = static_cast<double>(per_orbital.size()) * worst;
    require(out.exact <= out.linear + 1e-15, ErrorKind::precondition, "product form exceeded its linear bound");
    return out;
}

std::vector<BoundCheck> verify_bounds(const PreparationReport &report, unsigned m, unsigned l, double epsilon) {
    std::vector<BoundCheck> rows;
    auto add = [&](std::string name, double measured, double bound) {
        rows.push_back(BoundCheck{std::move(name), measured, bound, measured <= bound + kBoundSlack, bound - measured});
    };
    const double orbital_bound = l * epsilon / 2.0;
    const double determinant_bound = m * l * epsilon / 2.0;
    if (report.eps_orbital) {
        add("eps_orbital <= l*eps/2", *report.eps_orbital, orbital_bound);
    }
    if (report.eps_determinant) {
        add("eps_determinant <= m*l*eps/2", *report.eps_determinant, determinant_bound);
    }
    if (report.eps_superposition) {
        add("eps_superposition <= m*l*eps/2", *report.eps_superposition, determinant_bound);
        if (report.eps_determinant) {
            add("eps_superposition <= eps_determinant", *report.eps_superposition, *report.eps_determinant);
        }
    }
    if (report.eps_mixed) {
        add("eps_mixed <= m*l*eps/2", *report.eps_mixed, determinant_bound);
        if (report.eps_superposition) {
            add("eps_mixed <= eps_superposition", *report.eps_mixed, *report.eps_superposition);
        }
    }
    return rows;
}

PowerFit fit_power_law(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), ErrorKind::structural, "fit inputs differ in length");
    PowerFit fit;
    if (x.size() < 2) {
        return fit;
    }
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i] > 0.0 && y[i] > 0.0, ErrorKind::domain, "power-law fit needs positive data");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) {
        return fit;
    }
    fit.exponent = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.exponent * sx) / n;
    fit.prefactor = std::exp(intercept);
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ly = std::log(y[i]);
        const double pred = intercept + fit.exponent * std::log(x[i]);
        ss_res += (ly - pred) * (ly - pred);
        ss_tot += (ly - mean) * (ly - mean);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

bool exponent_matches(const PowerFit &fit, double expected, double tolerance) {
    return std::abs(fit.exponent - expected) <= tolerance;
}

std::uint64_t lookup_comparisons(unsigned m, unsigned orbitals) {
    const unsigned depth = orbitals <= 1 ? 0U : static_cast<unsigned>(std::bit_width(orbitals - 1));
    return static_cast<std::uint64_t>(m) * depth;
}

std::vector<CostRow> cost_table(std::span<const unsigned> ms, std::span<const unsigned> ls,
                                std::span<const double> epsilons, double delta) {
    std::vector<CostRow> rows;
    for (unsigned m : ms) {
        require(m >= 1 && m <= 4, ErrorKind::validation, "cost table supports 1 <= m <= 4");
        for (unsigned l : ls) {
            std::vector<Orbital> orbitals;
            for (unsigned n = 1; n <= m + 1; ++n) {
                orbitals.push_back(Orbital::box_sine(static_cast<int>(n), 1.0, static_cast<double>(n * n)));
            }
            BasisSet basis(std::move(orbitals), l);
            std::vector<unsigned> counts(m + 1, 0);
            std::fill(counts.begin(), counts.begin() + m, 1U);
            const OccupationVector occ(counts, Statistics::fermionic);
            const SlaterPreparation run = prepare_slater(occ, basis, IntegrationSpec{});
            for (double eps : epsilons) {
                IntegrationSpec mc;
                mc.backend = Backend::monte_carlo;
                mc.epsilon = eps;
                mc.delta = delta;
                mc.bounds = std::make_pair(0.0, 1.0);
                CostRow row;
                row.m = m;
                row.l = l;
                row.epsilon = eps;
                row.rotation_stages = run.rotation_stages;
                row.integral_evaluations = run.raw_evaluations;
                row.integral_bound = static_cast<std::uint64_t>(m) * ((std::uint64_t{1} << l) - 1);
                row.mc_samples_per_integral = mc_sample_count(mc, true);
                row.quantum_queries_per_integral = static_cast<std::uint64_t>(
                    std::ceil(normal_quantile(1.0 - delta / 2.0) * (mc.bounds->second - mc.bounds->first) /
                              (2.0 * eps)));
                row.comparators = run.sort.comparators;
                row.qubit_swaps = run.sort.qubit_swaps;
                row.lookup_comparisons = lookup_comparisons(m, m + 1);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

CostFits fit_costs(std::span<const CostRow> rows) {
    CostFits fits;
    if (rows.empty()) {
        return fits;
    }
    const unsigned m0 = std::min_element(rows.begin(), rows.end(), [](auto &a, auto &b) { return a.m < b.m; })->m;
    const unsigned l0 = std::min_element(rows.begin(), rows.end(), [](auto &a, auto &b) { return a.l < b.l; })->l;
    const double e0 =
        std::min_element(rows.begin(), rows.end(), [](auto &a, auto &b) { return a.epsilon < b.epsilon; })->epsilon;

    std::map<double, std::pair<double, double>> by_eps;
    std::map<unsigned, double> by_l;
    std::map<unsigned, double> by_m;
    for (const auto &r : rows) {
        if (r.m == m0 && r.l == l0) {
            by_eps[r.epsilon] = {static_cast<double>(r.mc_samples_per_integral),
                                 static_cast<double>(r.quantum_queries_per_integral)};
        }
        if (r.m == m0 && r.epsilon == e0) {
            by_l[r.l] = static_cast<double>(r.rotation_stages);
        }
        if (r.l == l0 && r.epsilon == e0) {
            by_m[r.m] = static_cast<double>(r.rotation_stages);
        }
    }
    std::vector<double> xe, ymc, yq, xl, yl, xm, ym;
    for (const auto &[e, v] : by_eps) {
        xe.push_back(e);
        ymc.push_back(v.first);
        yq.push_back(v.second);
    }
    for (const auto &[l, v] : by_l) {
        xl.push_back(l);
        yl.push_back(v);
    }
    for (const auto &[m, v] : by_m) {
        xm.push_back(m);
        ym.push_back(v);
    }
    fits.mc_samples_vs_epsilon = fit_power_law(xe, ymc);
    fits.quantum_queries_vs_epsilon = fit_power_law(xe, yq);
    fits.stages_vs_l = fit_power_law(xl, yl);
    fits.stages_vs_m = fit_power_law(xm, ym);
    return fits;
}

} // namespace gridprep
