"""Shared draw helpers for the randomized suites.

Pole draws enforce a minimum separation so partial-fraction conditioning
stays benign; exact repeats and conjugate pairs are still exercised.
"""

import numpy as np

from ltivp import LinearODE, Signal


def min_separation(points) -> float:
    worst = np.inf
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            worst = min(worst, abs(points[i] - points[j]))
    return worst


def random_poles(rng, count, box=3.0, sep=0.2, allow_repeats=False):
    """`count` conjugate-closed poles with pairwise separation >= sep."""
    while True:
        poles = []
        while len(poles) < count:
            room = count - len(poles)
            kind = rng.random()
            if kind < 0.3 and room >= 2:
                re, im = rng.uniform(-box, box), rng.uniform(0.3, box)
                cand = [complex(re, im), complex(re, -im)]
            elif allow_repeats and kind < 0.45 and room >= 2:
                p = complex(rng.uniform(-box, box), 0.0)
                cand = [p, p]
            else:
                cand = [complex(rng.uniform(-box, box), 0.0)]
            poles.extend(cand)
        if len(poles) == count:
            distinct = sorted(set(poles), key=lambda z: (z.real, z.imag))
            if len(distinct) < 2 or min_separation(distinct) > sep:
                return poles


def random_ode(rng, nmax=5, box=3.0) -> LinearODE:
    """Random ODE with well-separated characteristic roots and random
    relative degree 0..n."""
    n = int(rng.integers(1, nmax + 1))
    a = np.real(np.poly(random_poles(rng, n, box=box)))[1:]
    b = rng.uniform(-5.0, 5.0, n + 1)
    r = int(rng.integers(0, n + 1))
    b[:r] = 0.0
    if not np.any(b):
        b[-1] = 1.0
    return LinearODE(a, b)


def random_signal(rng) -> Signal:
    """A small exponential-polynomial signal: constant, affine, decaying
    exponential, or a sinusoid."""
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return Signal.constant(rng.uniform(-2.0, 2.0))
    if kind == 1:
        return Signal.ramp(rng.uniform(-2.0, 2.0)) + Signal.constant(rng.uniform(-2.0, 2.0))
    if kind == 2:
        return Signal.exponential(rng.uniform(-2.0, 1.0), rng.uniform(-2.0, 2.0))
    w = rng.uniform(0.5, 3.0)
    return Signal.cosine(w, rng.uniform(-2.0, 2.0)) + Signal.sine(w, rng.uniform(-2.0, 2.0))
