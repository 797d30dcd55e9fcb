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

#include "gridprep/basis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gridprep/error.hpp"

namespace gridprep {

namespace {

constexpr double kPi = std::numbers::pi;
// Gauss-Kronrod floors its error estimate at 50 machine epsilons, so tighter
// relative tolerances never terminate before the depth limit.
constexpr double kQuadratureTolerance = 1e-12;
constexpr double kTieTolerance = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Cell index of x on a grid of `cells` cells over [0, length).
std::uint64_t cell_of(double x, double length, std::uint64_t cells) {
    const double scaled = x / length * static_cast<double>(cells);
    if (scaled <= 0.0) {
        return 0;
    }
    return std::min<std::uint64_t>(static_cast<std::uint64_t>(scaled), cells - 1);
}

double local_overlap(double exact, double noisy) {
    return std::sqrt(exact * noisy) + std::sqrt((1.0 - exact) * (1.0 - noisy));
}

} // namespace

// ---------------------------------------------------------------------------
// Orbital

Orbital::Orbital(OrbitalFamily family, double length, double energy)
    : family_(std::move(family)), length_(length), energy_(energy) {
    require(std::isfinite(length) && length > 0.0, ErrorKind::validation, "orbital domain length must be positive");
    require(std::isfinite(energy), ErrorKind::validation, "orbital energy must be finite");
    std::visit(overloaded{
                   [](const UniformFamily &) {},
                   [](const BoxSineFamily &f) {
                       require(f.n >= 1, ErrorKind::validation, "box-sine quantum number n must be >= 1");
                   },
                   [](const PlaneWaveFamily &) {},
                   [&](const HermiteFamily &f) {
                       require(f.n >= 0 && f.n <= 64, ErrorKind::validation, "hermite order must be in [0, 64]");
                       require(std::isfinite(f.width) && f.width > 0.0, ErrorKind::validation,
                               "hermite width must be positive");
                       require(std::isfinite(f.center), ErrorKind::validation, "hermite center must be finite");
                   },
                   [](const DeltaFamily &f) {
                       require(f.grid_bits >= 1 && f.grid_bits <= 40, ErrorKind::validation,
                               "delta grid_bits must be in [1, 40]");
                       require(f.site < (std::uint64_t{1} << f.grid_bits), ErrorKind::validation,
                               "delta site outside its grid");
                   },
                   [&](TabulatedFamily &f) {
                       require(!f.table.empty() && std::has_single_bit(f.table.size()), ErrorKind::validation,
                               "tabulated orbital size must be a power of two");
                       const double n2 = gridprep::norm_squared(f.table);
                       require(n2 > 0.0 && std::isfinite(n2), ErrorKind::validation,
                               "tabulated orbital has zero norm");
                       const double s = 1.0 / std::sqrt(n2);
                       for (auto &a : f.table) {
                           a *= s;
                       }
                       prefix_.assign(f.table.size() + 1, 0.0);
                       for (std::size_t j = 0; j < f.table.size(); ++j) {
                           prefix_[j + 1] = prefix_[j] + std::norm(f.table[j]);
                       }
                       prefix_.back() = 1.0;
                   },
               },
               family_);
    if (std::holds_alternative<HermiteFamily>(family_)) {
        const double mass = integrate_density(*this, 0.0, length_);
        require(mass > 1e-300, ErrorKind::validation, "hermite orbital has no mass on [0, L]");
        scale_ = 1.0 / std::sqrt(mass);
    }
}

Orbital Orbital::uniform(double length, double energy) { return Orbital(UniformFamily{}, length, energy); }

Orbital Orbital::box_sine(int n, double length, double energy) {
    return Orbital(BoxSineFamily{n}, length, energy);
}

Orbital Orbital::plane_wave(int k, double length, double energy) {
    return Orbital(PlaneWaveFamily{k}, length, energy);
}

Orbital Orbital::hermite(int n, double center, double width, double length, double energy) {
    return Orbital(HermiteFamily{n, center, width}, length, energy);
}

Orbital Orbital::delta(std::uint64_t site, unsigned grid_bits, double length, double energy) {
    return Orbital(DeltaFamily{site, grid_bits}, length, energy);
}

Orbital Orbital::tabulated(std::vector<complex> table, double length, double energy) {
    return Orbital(TabulatedFamily{std::move(table)}, length, energy);
}

Orbital Orbital::with_energy(double energy) const {
    require(std::isfinite(energy), ErrorKind::validation, "orbital energy must be finite");
    Orbital copy = *this;
    copy.energy_ = energy;
    return copy;
}

std::string Orbital::describe() const {
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const UniformFamily &) { out << "uniform"; },
                   [&](const BoxSineFamily &f) { out << "box-sine(n=" << f.n << ")"; },
                   [&](const PlaneWaveFamily &f) { out << "plane-wave(k=" << f.k << ")"; },
                   [&](const HermiteFamily &f) {
                       out << "hermite(n=" << f.n << ", center=" << f.center << ", width=" << f.width << ")";
                   },
                   [&](const DeltaFamily &f) { out << "delta(site=" << f.site << ", bits=" << f.grid_bits << ")"; },
                   [&](const TabulatedFamily &f) { out << "tabulated(" << f.table.size() << ")"; },
               },
               family_);
    return out.str();
}

complex Orbital::amplitude(double x) const {
    if (!(x >= 0.0 && x <= length_)) {
        return {};
    }
    const double L = length_;
    return std::visit(overloaded{
                          [&](const UniformFamily &) { return complex(1.0 / std::sqrt(L)); },
                          [&](const BoxSineFamily &f) {
                              return complex(std::sqrt(2.0 / L) * std::sin(f.n * kPi * x / L));
                          },
                          [&](const PlaneWaveFamily &f) { return std::polar(1.0 / std::sqrt(L), 2.0 * kPi * f.k * x / L); },
                          [&](const HermiteFamily &f) {
                              const double u = (x - f.center) / f.width;
                              return complex(scale_ * std::hermite(static_cast<unsigned>(f.n), u) * std::exp(-0.5 * u * u));
                          },
                          [&](const DeltaFamily &f) {
                              const std::uint64_t cells = std::uint64_t{1} << f.grid_bits;
                              return cell_of(x, L, cells) == f.site
                                         ? complex(std::sqrt(static_cast<double>(cells) / L))
                                         : complex{};
                          },
                          [&](const TabulatedFamily &f) {
                              const std::uint64_t cells = f.table.size();
                              return f.table[cell_of(x, L, cells)] * std::sqrt(static_cast<double>(cells) / L);
                          },
                      },
                      family_);
}

double Orbital::density(double x) const { return std::norm(amplitude(x)); }

double Orbital::phase(double x) const {
    const complex a = amplitude(x);
    return a == complex{} ? 0.0 : std::arg(a);
}

bool Orbital::has_cdf() const { return !std::holds_alternative<HermiteFamily>(family_); }

double Orbital::cdf(double x) const {
    const double L = length_;
    const double xc = std::clamp(x, 0.0, L);
    return std::visit(overloaded{
                          [&](const UniformFamily &) { return xc / L; },
                          [&](const BoxSineFamily &f) {
                              const double w = 2.0 * f.n * kPi;
                              return clamp01(xc / L - std::sin(w * xc / L) / w);
                          },
                          [&](const PlaneWaveFamily &) { return xc / L; },
                          [&](const HermiteFamily &) -> double {
                              fail(ErrorKind::configuration,
                                   "hermite orbitals have no closed-form CDF; use adaptive_quadrature");
                          },
                          [&](const DeltaFamily &f) {
                              const double h = L / static_cast<double>(std::uint64_t{1} << f.grid_bits);
                              return clamp01((xc - static_cast<double>(f.site) * h) / h);
                          },
                          [&](const TabulatedFamily &f) {
                              const std::uint64_t cells = f.table.size();
                              const double h = L / static_cast<double>(cells);
                              if (xc >= L) {
                                  return 1.0;
                              }
                              const std::uint64_t j = cell_of(xc, L, cells);
                              const double frac = std::clamp((xc - static_cast<double>(j) * h) / h, 0.0, 1.0);
                              return clamp01(prefix_[j] + std::norm(f.table[j]) * frac);
                          },
                      },
                      family_);
}

std::vector<double> Orbital::breakpoints(double a, double b) const {
    std::vector<double> points;
    auto grid_edges = [&](std::uint64_t cells) {
        const double h = length_ / static_cast<double>(cells);
        const auto first = static_cast<std::uint64_t>(std::floor(a / h)) + 1;
        for (std::uint64_t j = first; static_cast<double>(j) * h < b; ++j) {
            points.push_back(static_cast<double>(j) * h);
        }
    };
    if (const auto *d = std::get_if<DeltaFamily>(&family_)) {
        const double h = length_ / static_cast<double>(std::uint64_t{1} << d->grid_bits);
        for (double p : {static_cast<double>(d->site) * h, static_cast<double>(d->site + 1) * h}) {
            if (p > a && p < b) {
                points.push_back(p);
            }
        }
    } else if (const auto *t = std::get_if<TabulatedFamily>(&family_)) {
        grid_edges(t->table.size());
    }
    return points;
}

double Orbital::density_bound(double a, double b) const {
    const double L = length_;
    return std::visit(overloaded{
                          [&](const UniformFamily &) { return 1.0 / L; },
                          [&](const BoxSineFamily &f) {
                              // Peaks of sin^2 sit at x = L (2j + 1) / (2n); between them it is monotone.
                              const double first = std::ceil(a * 2.0 * f.n / L - 0.5 - 1e-12);
                              if (L * (2.0 * first + 1.0) / (2.0 * f.n) <= b) {
                                  return 2.0 / L;
                              }
                              return std::max(density(a), density(b));
                          },
                          [&](const PlaneWaveFamily &) { return 1.0 / L; },
                          [&](const HermiteFamily &) {
                              double peak = 0.0;
                              constexpr int kProbes = 256;
                              for (int s = 0; s <= kProbes; ++s) {
                                  peak = std::max(peak, density(a + (b - a) * s / kProbes));
                              }
                              return 1.25 * peak;
                          },
                          [&](const DeltaFamily &f) {
                              const std::uint64_t cells = std::uint64_t{1} << f.grid_bits;
                              const double h = L / static_cast<double>(cells);
                              const double lo = static_cast<double>(f.site) * h;
                              return (lo < b && lo + h > a) ? static_cast<double>(cells) / L : 0.0;
                          },
                          [&](const TabulatedFamily &f) {
                              const std::uint64_t cells = f.table.size();
                              const std::uint64_t j0 = cell_of(a, L, cells);
                              const std::uint64_t j1 = cell_of(std::nextafter(b, a), L, cells);
                              double peak = 0.0;
                              for (std::uint64_t j = j0; j <= j1; ++j) {
                                  peak = std::max(peak, std::norm(f.table[j]));
                              }
                              return peak * static_cast<double>(cells) / L;
                          },
                      },
                      family_);
}

std::vector<complex> Orbital::grid_amplitudes(unsigned grid_bits) const {
    require(grid_bits >= 1 && grid_bits <= 30, ErrorKind::validation, "grid bits must be in [1, 30]");
    const std::uint64_t n = std::uint64_t{1} << grid_bits;
    std::vector<complex> out(n);
    for (std::uint64_t j = 0; j < n; ++j) {
        out[j] = amplitude(static_cast<double>(j) * length_ / static_cast<double>(n));
    }
    const double n2 = gridprep::norm_squared(out);
    require(n2 > 0.0, ErrorKind::basis, describe() + " vanishes on every point of a 2^" +
                                            std::to_string(grid_bits) + " grid");
    const double s = 1.0 / std::sqrt(n2);
    for (auto &a : out) {
        a *= s;
    }
    return out;
}

Orbital Orbital::discretized(unsigned grid_bits) const {
    return tabulated(grid_amplitudes(grid_bits), length_, energy_);
}

// ---------------------------------------------------------------------------
// Integration

std::string_view to_string(Backend backend) {
    switch (backend) {
    case Backend::analytic_cdf: return "analytic_cdf";
    case Backend::adaptive_quadrature: return "adaptive_quadrature";
    case Backend::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

Backend parse_backend(std::string_view name) {
    if (name == "analytic_cdf" || name == "analytic") {
        return Backend::analytic_cdf;
    }
    if (name == "adaptive_quadrature" || name == "quadrature") {
        return Backend::adaptive_quadrature;
    }
    if (name == "monte_carlo" || name == "mc") {
        return Backend::monte_carlo;
    }
    fail(ErrorKind::configuration, "unknown integration backend '" + std::string(name) + "'");
}

void IntegrationSpec::validate() const {
    require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::configuration, "integration.epsilon must lie in (0, 1)");
    require(delta > 0.0 && delta < 1.0, ErrorKind::configuration, "integration.delta must lie in (0, 1)");
    if (variance) {
        require(*variance >= 0.0 && std::isfinite(*variance), ErrorKind::configuration,
                "integration.variance must be finite and >= 0");
    }
    if (bounds) {
        require(bounds->first <= bounds->second, ErrorKind::configuration,
                "integration.bounds must satisfy lower <= upper");
    }
    if (backend == Backend::monte_carlo) {
        require(bounds.has_value() || variance.has_value(), ErrorKind::configuration,
                "monte_carlo backend needs integration.bounds or integration.variance");
    }
}

double integrate_density(const Orbital &orbital, double a, double b, std::uint64_t *evaluations) {
    if (b <= a) {
        return 0.0;
    }
    std::uint64_t calls = 0;
    auto f = [&](double x) {
        ++calls;
        return orbital.density(x);
    };
    std::vector<double> cuts{a};
    const auto inner = orbital.breakpoints(a, b);
    cuts.insert(cuts.end(), inner.begin(), inner.end());
    cuts.push_back(b);
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        // Boost compares its unscaled error estimate with a tolerance taken from the
        // scaled integral, so short pieces are mapped onto [0, 1] first.
        const double lo = cuts[s];
        const double width = cuts[s + 1] - lo;
        auto g = [&](double t) { return f(lo + width * t); };
        total += width * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 15,
                                                                                         kQuadratureTolerance);
    }
    if (evaluations != nullptr) {
        *evaluations += calls;
    }
    return total;
}

double normal_quantile(double p) {
    require(p > 0.0 && p < 1.0, ErrorKind::domain, "normal_quantile needs p in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

std::uint64_t mc_sample_count(const IntegrationSpec &spec, bool bounded) {
    require(spec.epsilon > 0.0 && spec.epsilon < 1.0, ErrorKind::configuration,
            "integration.epsilon must lie in (0, 1)");
    const double z = normal_quantile(1.0 - spec.delta / 2.0);
    double count = 0.0;
    if (bounded) {
        require(spec.bounds.has_value(), ErrorKind::configuration, "bounded sample count needs integration.bounds");
        const double range = spec.bounds->second - spec.bounds->first;
        const double root = z * range / (2.0 * spec.epsilon);
        count = root * root;
    } else {
        require(spec.variance.has_value(), ErrorKind::configuration,
                "variance sample count needs integration.variance");
        count = z * z * *spec.variance / (spec.epsilon * spec.epsilon);
    }
    return static_cast<std::uint64_t>(std::ceil(count));
}

namespace {

double adversarial_shift(double exact, double epsilon) {
    const double up = clamp01(exact + epsilon);
    const double down = clamp01(exact - epsilon);
    return local_overlap(exact, up) <= local_overlap(exact, down) ? up : down;
}

SplitRatio monte_carlo_ratio(const Orbital &orbital, double a, double mid, double b, unsigned level,
                             std::uint64_t block, const IntegrationSpec &spec) {
    SplitRatio out;
    const std::uint64_t wanted = std::max<std::uint64_t>(1, mc_sample_count(spec, spec.bounds.has_value()));
    const double bound = orbital.density_bound(a, b);
    if (!(bound > 0.0)) {
        out.empty = true;
        return out;
    }
    std::mt19937_64 rng(splitmix64(splitmix64(splitmix64(spec.seed) ^ level) ^ block));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr std::uint64_t kMaxAttempts = 200'000'000;
    std::uint64_t accepted = 0;
    std::uint64_t left = 0;
    std::uint64_t attempts = 0;
    while (accepted < wanted && attempts < kMaxAttempts) {
        ++attempts;
        const double x = a + (b - a) * unit(rng);
        if (unit(rng) * bound < orbital.density(x)) {
            ++accepted;
            left += x < mid ? 1 : 0;
        }
    }
    out.oracle_calls = attempts;
    out.samples = accepted;
    if (accepted == 0) {
        out.empty = true;
        return out;
    }
    out.value = static_cast<double>(left) / static_cast<double>(accepted);
    return out;
}

} // namespace

SplitRatio split_ratio(const Orbital &orbital, unsigned level, std::uint64_t block, const IntegrationSpec &spec,
                       std::optional<double> block_mass) {
    spec.validate();
    require(level >= 1 && level <= 40, ErrorKind::domain, "split level must be in [1, 40]");
    const std::uint64_t blocks = std::uint64_t{1} << level;
    require(block + 2 <= blocks, ErrorKind::domain,
            "block " + std::to_string(block) + " out of range at level " + std::to_string(level));
    SplitRatio out;
    if (block_mass && *block_mass < kEmptyBlockMass) {
        out.empty = true;
        return out;
    }
    const double h = orbital.length() / static_cast<double>(blocks);
    const double a = static_cast<double>(block) * h;
    const double mid = a + h;
    const double b = a + 2.0 * h;

    switch (spec.backend) {
    case Backend::analytic_cdf: {
        require(orbital.has_cdf(), ErrorKind::configuration,
                orbital.describe() + " has no closed-form CDF; use adaptive_quadrature");
        const double ca = orbital.cdf(a);
        const double cm = orbital.cdf(mid);
        const double cb = orbital.cdf(b);
        out.oracle_calls = 3;
        const double mass = cb - ca;
        if (mass < kEmptyBlockMass) {
            out.empty = true;
            return out;
        }
        out.value = (cm - ca) / mass;
        break;
    }
    case Backend::adaptive_quadrature: {
        const double left = integrate_density(orbital, a, mid, &out.oracle_calls);
        const double right = integrate_density(orbital, mid, b, &out.oracle_calls);
        if (left + right < kEmptyBlockMass) {
            out.empty = true;
            return out;
        }
        out.value = left / (left + right);
        break;
    }
    case Backend::monte_carlo:
        out = monte_carlo_ratio(orbital, a, mid, b, level, block, spec);
        if (out.empty) {
            return out;
        }
        break;
    }
    out.value = clamp01(out.value);
    if (spec.adversarial) {
        out.value = adversarial_shift(out.value, spec.epsilon);
    }
    return out;
}

// ---------------------------------------------------------------------------
// BasisSet

double half_min_gap(const std::vector<double> &energies) {
    std::vector<double> sorted = energies;
    std::sort(sorted.begin(), sorted.end());
    double best = 0.0;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double spacing = sorted[i] - sorted[i - 1];
        if (spacing > kTieTolerance && (best == 0.0 || spacing < best)) {
            best = spacing;
        }
    }
    return best / 2.0;
}

BasisSet::BasisSet(std::vector<Orbital> orbitals, unsigned grid_bits)
    : orbitals_(std::move(orbitals)), grid_bits_(grid_bits) {
    require(!orbitals_.empty(), ErrorKind::basis, "basis has no orbitals");
    require(grid_bits >= 1 && grid_bits <= 20, ErrorKind::validation, "grid qubits must be in [1, 20]");
    const auto n = static_cast<Eigen::Index>(std::uint64_t{1} << grid_bits);
    const auto m = static_cast<Eigen::Index>(orbitals_.size());
    require(m <= n, ErrorKind::basis,
            std::to_string(m) + " orbitals do not fit a " + std::to_string(n) + "-point grid");
    const double length = orbitals_.front().length();
    CMatrix samples(n, m);
    for (Eigen::Index c = 0; c < m; ++c) {
        const auto &orb = orbitals_[static_cast<std::size_t>(c)];
        require(std::abs(orb.length() - length) <= 1e-12 * length, ErrorKind::basis,
                "orbitals in one basis must share the domain length");
        const auto column = orb.grid_amplitudes(grid_bits);
        samples.col(c) = Eigen::Map<const Eigen::VectorXcd>(column.data(), n);
        energies_.push_back(orb.energy());
    }
    const CMatrix gram = samples.adjoint() * samples;
    raw_defect_ = (gram - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram);
    const Eigen::VectorXd lambda = solver.eigenvalues();
    require(lambda.minCoeff() > 1e-10, ErrorKind::basis,
            "grid-discretized orbitals are linearly dependent (smallest Gram eigenvalue " +
                std::to_string(lambda.minCoeff()) + ")");
    const CMatrix inv_sqrt =
        solver.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * solver.eigenvectors().adjoint();
    const CMatrix ortho = samples * inv_sqrt;
    for (Eigen::Index c = 0; c < m; ++c) {
        std::vector<complex> column(ortho.col(c).data(), ortho.col(c).data() + n);
        grid_orbitals_.push_back(Orbital::tabulated(column, length, energies_[static_cast<std::size_t>(c)]));
        vectors_.push_back(std::get<TabulatedFamily>(grid_orbitals_.back().family()).table);
    }
    refresh_gap();
}

void BasisSet::refresh_gap() { gap_ = half_min_gap(energies_); }

CMatrix BasisSet::fock_matrix() const {
    const auto n = static_cast<Eigen::Index>(std::uint64_t{1} << grid_bits_);
    CMatrix f = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        Eigen::Map<const Eigen::VectorXcd> v(vectors_[i].data(), n);
        f.noalias() += energies_[i] * (v * v.adjoint());
    }
    return f;
}

CMatrix BasisSet::fock_evolution(double time) const {
    const auto n = static_cast<Eigen::Index>(std::uint64_t{1} << grid_bits_);
    CMatrix u = CMatrix::Identity(n, n);
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        Eigen::Map<const Eigen::VectorXcd> v(vectors_[i].data(), n);
        u.noalias() += (std::polar(1.0, -energies_[i] * time) - 1.0) * (v * v.adjoint());
    }
    return u;
}

BasisSet BasisSet::perturb_fock(std::size_t index, double strength) const {
    require(index < size(), ErrorKind::structural, "perturbation targets orbital " + std::to_string(index) +
                                                       " of a " + std::to_string(size()) + "-orbital basis");
    require(std::isfinite(strength), ErrorKind::validation, "perturbation strength must be finite");
    BasisSet out = *this;
    if (strength == 0.0) {
        return out;
    }
    require(gap_ == 0.0 || std::abs(strength) < gap_ / 2.0, ErrorKind::validation,
            "perturbation strength " + std::to_string(strength) + " is not below half the gap (" +
                std::to_string(gap_ / 2.0) + ")");
    const double shifted = energies_[index] + strength;
    for (std::size_t j = 0; j < size(); ++j) {
        if (j == index) {
            continue;
        }
        const bool distinct_before = std::abs(energies_[j] - energies_[index]) > kTieTolerance;
        const bool tied_after = std::abs(energies_[j] - shifted) <= kTieTolerance;
        require(!(distinct_before && tied_after), ErrorKind::degeneracy,
                "perturbation makes orbital " + std::to_string(index) + " degenerate with orbital " +
                    std::to_string(j) + " at energy " + std::to_string(shifted));
    }
    out.energies_[index] = shifted;
    out.orbitals_[index] = orbitals_[index].with_energy(shifted);
    out.grid_orbitals_[index] = grid_orbitals_[index].with_energy(shifted);
    out.refresh_gap();
    return out;
}

} // namespace gridprep
