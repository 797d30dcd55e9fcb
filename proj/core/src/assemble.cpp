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

#include "gridprep/assemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gridprep/error.hpp"

namespace gridprep {

std::string_view to_string(Statistics s) { return s == Statistics::fermionic ? "fermionic" : "bosonic"; }

Statistics parse_statistics(std::string_view name) {
    if (name == "fermionic" || name == "fermion" || name == "fermions") {
        return Statistics::fermionic;
    }
    if (name == "bosonic" || name == "boson" || name == "bosons") {
        return Statistics::bosonic;
    }
    fail(ErrorKind::configuration, "unknown statistics '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// OccupationVector

OccupationVector::OccupationVector(std::vector<unsigned> counts, Statistics statistics)
    : counts_(std::move(counts)), statistics_(statistics) {
    require(!counts_.empty(), ErrorKind::validation, "occupation vector is empty");
    require(counts_.size() <= 32, ErrorKind::validation, "occupation vector longer than 32 orbitals");
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        require(statistics_ == Statistics::bosonic || counts_[j] <= 1, ErrorKind::validation,
                "Pauli exclusion: fermionic orbital " + std::to_string(j) + " occupied " +
                    std::to_string(counts_[j]) + " times");
        require(counts_[j] <= 64, ErrorKind::validation, "occupation number above 64");
        particles_ += counts_[j];
    }
}

OccupationVector OccupationVector::parse(std::string_view text, Statistics statistics) {
    std::vector<unsigned> counts;
    auto digits_only = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (text.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t end = std::min(text.find(',', start), text.size());
            std::string_view item = text.substr(start, end - start);
            while (!item.empty() && item.front() == ' ') {
                item.remove_prefix(1);
            }
            while (!item.empty() && item.back() == ' ') {
                item.remove_suffix(1);
            }
            require(digits_only(item) && item.size() <= 3, ErrorKind::validation,
                    "occupation '" + std::string(text) + "' has a non-integer entry");
            counts.push_back(static_cast<unsigned>(std::stoul(std::string(item))));
            start = end + 1;
        }
    } else {
        require(digits_only(text), ErrorKind::validation,
                "occupation '" + std::string(text) + "' must be digits or comma-separated integers");
        for (char c : text) {
            counts.push_back(static_cast<unsigned>(c - '0'));
        }
    }
    return OccupationVector(std::move(counts), statistics);
}

std::vector<std::size_t> OccupationVector::occupied() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        out.insert(out.end(), counts_[j], j);
    }
    return out;
}

double OccupationVector::multiplicity() const {
    double f = 1.0;
    for (unsigned n : counts_) {
        f *= std::tgamma(static_cast<double>(n) + 1.0);
    }
    return f;
}

unsigned bosonic_slot_bits(unsigned particles) {
    return std::max(1U, static_cast<unsigned>(std::bit_width(particles)));
}

unsigned OccupationVector::slot_bits() const {
    return statistics_ == Statistics::fermionic ? 1U : bosonic_slot_bits(particles_);
}

std::uint64_t OccupationVector::encode() const {
    const unsigned b = slot_bits();
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        v |= static_cast<std::uint64_t>(counts_[j]) << (j * b);
    }
    return v;
}

std::string OccupationVector::to_string() const {
    std::ostringstream out;
    const bool compact = std::all_of(counts_.begin(), counts_.end(), [](unsigned n) { return n <= 1; }) &&
                         statistics_ == Statistics::fermionic;
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        if (!compact && j > 0) {
            out << ',';
        }
        out << counts_[j];
    }
    return out.str();
}

std::vector<std::string> particle_names(std::string_view prefix, unsigned count) {
    std::vector<std::string> names;
    for (unsigned a = 0; a < count; ++a) {
        names.push_back(std::string(prefix) + "p" + std::to_string(a));
    }
    return names;
}

void prepare_hartree_product(QuantumState &state, std::span<const std::string> particles,
                             const OccupationVector &occupation, const BasisSet &basis, Loader &loader) {
    require(occupation.orbitals() == basis.size(), ErrorKind::validation,
            "occupation has " + std::to_string(occupation.orbitals()) + " slots but the basis has " +
                std::to_string(basis.size()) + " orbitals");
    require(occupation.particles() >= 1, ErrorKind::validation, "occupation has no particles");
    require(occupation.particles() <= particles.size(), ErrorKind::structural,
            std::to_string(occupation.particles()) + " particles need more than the " +
                std::to_string(particles.size()) + " allocated registers");
    const auto occ = occupation.occupied();
    for (std::size_t a = 0; a < occ.size(); ++a) {
        loader.load(state, particles[a], basis.grid_orbital(occ[a]));
    }
}

// ---------------------------------------------------------------------------
// Permutation register

unsigned permutation_word_bits(unsigned m) { return m <= 1 ? 0U : static_cast<unsigned>(std::bit_width(m - 1)); }

namespace {

std::uint64_t encode_words(std::span<const unsigned> words, unsigned w) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        code |= static_cast<std::uint64_t>(words[i]) << (i * w);
    }
    return code;
}

unsigned word_at(std::uint64_t code, unsigned index, unsigned w) {
    return static_cast<unsigned>((code >> (index * w)) & ((std::uint64_t{1} << w) - 1));
}

// All mixed-radix tuples (0-based digits, digit i < m - i) in lexicographic order.
std::vector<std::vector<unsigned>> mixed_radix_tuples(unsigned m) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> digits(m, 0);
    while (true) {
        out.push_back(digits);
        int i = static_cast<int>(m) - 1;
        while (i >= 0) {
            if (digits[static_cast<std::size_t>(i)] + 1 < m - static_cast<unsigned>(i)) {
                ++digits[static_cast<std::size_t>(i)];
                break;
            }
            digits[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) {
            return out;
        }
    }
}

void check_permutation_segment(const QuantumState &state, std::string_view segment, unsigned m) {
    require(m >= 2 && m <= 8, ErrorKind::validation, "permutation register needs 2 <= m <= 8");
    const Segment &seg = state.segment(segment);
    require(seg.width == m * permutation_word_bits(m), ErrorKind::structural,
            "permutation register '" + seg.name + "' must be " + std::to_string(m * permutation_word_bits(m)) +
                " qubits wide");
}

// |i> -> |map(i)>, summing amplitudes that land on the same index.
void apply_basis_map(QuantumState &state, const std::function<std::uint64_t(std::uint64_t)> &map) {
    auto amps = state.amplitudes();
    std::vector<complex> out(amps.size());
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (amps[i] != complex{}) {
            out[map(i)] += amps[i];
        }
    }
    std::copy(out.begin(), out.end(), amps.begin());
}

} // namespace

void generate_permutation_superposition(QuantumState &state, std::string_view segment, unsigned m) {
    if (m <= 1) {
        return;
    }
    check_permutation_segment(state, segment, m);
    const unsigned w = permutation_word_bits(m);
    std::vector<complex> table(std::size_t{1} << (m * w));
    for (const auto &tuple : mixed_radix_tuples(m)) {
        table[encode_words(tuple, w)] = 1.0;
    }
    load_orbital(state, segment, Orbital::tabulated(std::move(table)), IntegrationSpec{});
}

std::vector<unsigned> rank_to_permutation(std::span<const unsigned> tuple) {
    const auto m = static_cast<unsigned>(tuple.size());
    std::vector<unsigned> unused(m);
    std::iota(unused.begin(), unused.end(), 1U);
    std::vector<unsigned> out;
    for (unsigned i = 0; i < m; ++i) {
        require(tuple[i] >= 1 && tuple[i] <= m - i, ErrorKind::validation,
                "tuple digit " + std::to_string(i + 1) + " = " + std::to_string(tuple[i]) + " outside 1.." +
                    std::to_string(m - i));
        out.push_back(unused[tuple[i] - 1]);
        unused.erase(unused.begin() + (tuple[i] - 1));
    }
    return out;
}

void apply_rank_to_permutation(QuantumState &state, std::string_view segment, unsigned m) {
    if (m <= 1) {
        return;
    }
    check_permutation_segment(state, segment, m);
    const unsigned w = permutation_word_bits(m);
    const std::uint64_t size = std::uint64_t{1} << (m * w);
    std::vector<std::uint64_t> map(size, size);
    std::vector<bool> is_tuple(size, false);
    std::vector<bool> is_perm(size, false);
    for (const auto &tuple : mixed_radix_tuples(m)) {
        std::vector<unsigned> one_based(tuple);
        for (auto &d : one_based) {
            ++d;
        }
        std::vector<unsigned> perm = rank_to_permutation(one_based);
        for (auto &v : perm) {
            --v;
        }
        const std::uint64_t from = encode_words(tuple, w);
        const std::uint64_t to = encode_words(perm, w);
        map[from] = to;
        is_tuple[from] = true;
        is_perm[to] = true;
    }
    // Remaining codes pair up in increasing order so the whole map is a bijection.
    std::uint64_t next_free = 0;
    for (std::uint64_t c = 0; c < size; ++c) {
        if (is_tuple[c]) {
            continue;
        }
        while (is_perm[next_free]) {
            ++next_free;
        }
        map[c] = next_free++;
    }
    const Segment seg = state.segment(segment);
    apply_basis_permutation(state, [&](std::uint64_t i) { return seg.with_value(i, map[seg.value(i)]); });
}

std::vector<Comparator> odd_even_network(unsigned m) {
    std::vector<Comparator> out;
    for (unsigned r = 0; r < m; ++r) {
        for (unsigned a = r % 2; a + 1 < m; a += 2) {
            out.push_back(Comparator{r, a});
        }
    }
    return out;
}

SortCounters sort_and_entangle(QuantumState &state, std::string_view permutation,
                               std::span<const std::string> particles, Statistics statistics,
                               double expected_norm_squared) {
    const auto m = static_cast<unsigned>(particles.size());
    check_permutation_segment(state, permutation, m);
    require(expected_norm_squared > 0.0, ErrorKind::validation, "expected squared norm must be positive");
    const unsigned w = permutation_word_bits(m);
    std::vector<Segment> regs;
    for (const auto &name : particles) {
        regs.push_back(state.segment(name));
        require(regs.back().width == regs.front().width, ErrorKind::structural,
                "particle registers differ in width");
    }
    const std::string perm_name(permutation);
    const std::string parity_name = perm_name + ".parity";
    const bool fermionic = statistics == Statistics::fermionic;
    if (fermionic) {
        // |-> so that each exchange kicks back a factor of -1.
        state.add_segment(parity_name, Role::scratch, 1);
        const unsigned q = state.segment(parity_name).qubit(0);
        apply_x(state, q);
        apply_hadamard(state, q);
    }
    const Segment bseg = state.segment(perm_name);
    const std::uint64_t parity_bit = fermionic ? std::uint64_t{1} << state.segment(parity_name).qubit(0) : 0;
    // The parity register sits on top, so particle offsets are unchanged.
    SortCounters counters;
    const auto network = odd_even_network(m);
    for (const auto &cmp : network) {
        const Segment &ra = regs[cmp.low];
        const Segment &rb = regs[cmp.low + 1];
        apply_basis_map(state, [&](std::uint64_t i) {
            const std::uint64_t code = bseg.value(i);
            const unsigned wa = word_at(code, cmp.low, w);
            const unsigned wb = word_at(code, cmp.low + 1, w);
            if (wa <= wb) {
                return i;
            }
            const std::uint64_t mask_a = ((std::uint64_t{1} << w) - 1) << (cmp.low * w);
            const std::uint64_t mask_b = mask_a << w;
            std::uint64_t swapped = (code & ~(mask_a | mask_b)) | (static_cast<std::uint64_t>(wb) << (cmp.low * w)) |
                                    (static_cast<std::uint64_t>(wa) << ((cmp.low + 1) * w));
            std::uint64_t j = bseg.with_value(i, swapped);
            const std::uint64_t xa = ra.value(j);
            const std::uint64_t xb = rb.value(j);
            j = rb.with_value(ra.with_value(j, xb), xa);
            return j ^ parity_bit;
        });
    }
    counters.comparators = network.size();
    counters.rounds = m;
    counters.qubit_swaps = counters.comparators * (regs.front().width + w);

    if (fermionic) {
        const unsigned q = state.segment(parity_name).qubit(0);
        apply_hadamard(state, q);
        apply_x(state, q);
        state.release_segment(parity_name, 1e-8);
    }
    std::vector<unsigned> sorted(m);
    std::iota(sorted.begin(), sorted.end(), 0U);
    const std::uint64_t sorted_code = encode_words(sorted, w);
    const Segment b_now = state.segment(perm_name);
    apply_basis_permutation(state, [&](std::uint64_t i) { return b_now.with_value(i, b_now.value(i) ^ sorted_code); });

    counters.norm_squared = state.norm_squared() / expected_norm_squared;
    require(counters.norm_squared > 1e-12, ErrorKind::precondition, "sorting annihilated the state");
    state.normalize();
    state.release_segment(perm_name, 1e-8);
    return counters;
}

SortCounters antisymmetrize(QuantumState &state, std::span<const std::string> particles, Statistics statistics,
                            double expected_norm_squared, std::string_view prefix) {
    const auto m = static_cast<unsigned>(particles.size());
    if (m <= 1) {
        return {};
    }
    const std::string name = std::string(prefix) + "perm";
    state.add_segment(name, Role::scratch, m * permutation_word_bits(m));
    generate_permutation_superposition(state, name, m);
    apply_rank_to_permutation(state, name, m);
    return sort_and_entangle(state, name, particles, statistics, expected_norm_squared);
}

SlaterPreparation prepare_slater(const OccupationVector &occupation, const BasisSet &basis,
                                 const IntegrationSpec &spec, unsigned qubit_cap) {
    const unsigned m = occupation.particles();
    require(m >= 1, ErrorKind::validation, "occupation has no particles");
    RegisterLayout layout(qubit_cap);
    auto names = particle_names("", m);
    for (const auto &n : names) {
        layout.add(n, Role::particle, basis.grid_bits());
    }
    QuantumState state(std::move(layout));
    Loader loader(spec);
    prepare_hartree_product(state, names, occupation, basis, loader);
    const double expected = occupation.statistics() == Statistics::bosonic ? occupation.multiplicity() : 1.0;
    SortCounters sort = antisymmetrize(state, names, occupation.statistics(), expected);
    return SlaterPreparation{std::move(state),
                             std::move(names),
                             sort,
                             loader.raw_evaluations(),
                             loader.memoized_evaluations(),
                             loader.rotation_stages(),
                             loader.rotation_applications(),
                             loader.mc_samples()};
}

std::vector<complex> slater_oracle(const OccupationVector &occupation, const BasisSet &basis) {
    const unsigned m = occupation.particles();
    const unsigned l = basis.grid_bits();
    require(m >= 1, ErrorKind::validation, "occupation has no particles");
    require(occupation.orbitals() == basis.size(), ErrorKind::validation,
            "occupation length does not match the basis size");
    require(m * l <= 26, ErrorKind::resource, "oracle wavefunction wider than 26 qubits");
    const auto occ = occupation.occupied();
    const bool fermionic = occupation.statistics() == Statistics::fermionic;
    std::vector<unsigned> base(m);
    std::iota(base.begin(), base.end(), 0U);
    std::vector<std::pair<std::vector<unsigned>, double>> perms;
    do {
        unsigned inversions = 0;
        for (unsigned a = 0; a < m; ++a) {
            for (unsigned b = a + 1; b < m; ++b) {
                inversions += base[a] > base[b] ? 1 : 0;
            }
        }
        perms.emplace_back(base, (fermionic && inversions % 2 == 1) ? -1.0 : 1.0);
    } while (std::next_permutation(base.begin(), base.end()));

    double norm = std::tgamma(static_cast<double>(m) + 1.0);
    if (!fermionic) {
        norm *= occupation.multiplicity();
    }
    const double scale = 1.0 / std::sqrt(norm);
    const std::uint64_t mask = (std::uint64_t{1} << l) - 1;
    std::vector<complex> out(std::size_t{1} << (m * l));
    for (std::uint64_t X = 0; X < out.size(); ++X) {
        complex acc{};
        for (const auto &[perm, sign] : perms) {
            complex term = sign;
            for (unsigned a = 0; a < m && term != complex{}; ++a) {
                const std::uint64_t x = (X >> (perm[a] * l)) & mask;
                term *= basis.grid_vector(occ[a])[x];
            }
            acc += term;
        }
        out[X] = acc * scale;
    }
    return out;
}

} // namespace gridprep
