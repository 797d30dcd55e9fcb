#!/usr/bin/env python3
# Copyright 2026 The gridprep Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent reference values for the C++ tests.

Shares no code with the library: grid sampling, worst-sign split noise,
the rotation tree, determinants and the phase-estimation distribution are
all written out directly with numpy. Prints C++ constants that are frozen
into tests/derived_values.hpp.
"""

import itertools
import math

import numpy as np
from scipy.stats import norm


def box_sine(n, N):
    x = np.arange(N) / N
    return np.sqrt(2.0) * np.sin(np.pi * n * x)


def normalized(v):
    return v / np.linalg.norm(v)


def overlap(e, r):
    return math.sqrt(e * r) + math.sqrt((1 - e) * (1 - r))


def worst(e, eps):
    up = min(1.0, max(0.0, e + eps))
    down = min(1.0, max(0.0, e - eps))
    return up if overlap(e, up) <= overlap(e, down) else down


def noisy_load(samples, eps):
    """Rotation tree over the grid density with every ratio pushed by eps."""
    p = np.abs(samples) ** 2
    p = p / p.sum()
    N = len(p)
    l = int(math.log2(N))
    amp = np.ones(N)
    for level in range(1, l + 1):
        width = N >> (level - 1)
        for start in range(0, N, width):
            block = p[start:start + width]
            mass = block.sum()
            if mass < 1e-14:
                continue
            r = block[: width // 2].sum() / mass
            if eps > 0:
                r = worst(r, eps)
            amp[start:start + width // 2] *= math.sqrt(r)
            amp[start + width // 2:start + width] *= math.sqrt(1 - r)
    return amp * np.exp(1j * np.angle(samples))


def infidelity(a, b):
    return 1.0 - abs(np.vdot(normalized(a), normalized(b)))


def slater(orbitals, sign=True):
    m = len(orbitals)
    N = len(orbitals[0])
    out = np.zeros(N ** m, dtype=complex)
    for perm in itertools.permutations(range(m)):
        s = np.linalg.det(np.eye(m)[list(perm)]) if sign else 1.0
        term = np.array([1.0 + 0j])
        # first particle is the lowest index
        for a in reversed(range(m)):
            term = np.kron(term, orbitals[perm[a]])
        out += s * term
    return normalized(out)


def pe_distribution(theta, q):
    Q = 2 ** q
    k = np.arange(Q)
    amps = [np.sum(np.exp(2j * np.pi * k * (theta - y / Q))) / Q for y in range(Q)]
    return np.abs(np.array(amps)) ** 2


def main():
    print("// box-sine n, l, eps -> single-orbital infidelity under worst-sign noise")
    for n in (1, 2, 3):
        for l in (4, 6, 8):
            for eps in (1e-2, 1e-3):
                g = box_sine(n, 2 ** l)
                e = infidelity(noisy_load(g, eps), g)
                print(f"    {{{n}, {l}, {eps!r}, {e:.15g}}},")

    print("// m=2, l=6, eps=1e-2 determinant infidelity, configs {1,2} and {1,3}")
    N = 64
    for cfg in ((1, 2), (1, 3)):
        exact = [normalized(box_sine(n, N)) for n in cfg]
        noisy = [normalized(noisy_load(box_sine(n, N), 1e-2)) for n in cfg]
        print(cfg, f"{infidelity(slater(noisy), slater(exact)):.15g}")

    d = pe_distribution(1.0 / 3.0, 4)
    print("// PE theta=1/3 q=4: argmax", int(np.argmax(d)), f"prob {d.max():.15g}")
    print("// PE theta=1/3 q=4 full:", ", ".join(f"{v:.15g}" for v in d))

    z = norm.ppf(0.975)
    print(f"// z975 {z:.15g} samples {math.ceil((z / 0.02) ** 2)}")
    print(f"// box-sine n=1 left-quarter ratio {0.5 - 1 / math.pi:.15g}")
    w0 = 1 / (1 + math.exp(-1))
    print(f"// gibbs beta=1 {w0:.15g} {1 - w0:.15g}")
    print(f"// pure vs maximally mixed {1 - 1 / math.sqrt(2):.15g}")

    # Cost: uniform m=1 l=3 nonempty blocks
    print("// uniform l=3 nonempty blocks", 1 + 2 + 4)
    # delta at site 5, l=3: blocks with mass
    p = np.zeros(8)
    p[5] = 1
    count = 0
    for level in range(1, 4):
        width = 8 >> (level - 1)
        for start in range(0, 8, width):
            count += p[start:start + width].sum() > 0
    print("// delta site 5 l=3 nonempty blocks", count)


if __name__ == "__main__":
    main()
