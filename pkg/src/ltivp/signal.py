"""Exponential-polynomial signals: finite sums of amp * t**power * exp(rate*t).

The class is closed under differentiation and has rational Laplace
transforms, which is exactly what the closed-form solution pipeline needs.
Modes come in conjugate pairs so every signal is real-valued on the reals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotStrictlyProper
from .poly import (
    PartialFractionExpansion,
    Polynomial,
    RationalFunction,
    as_real_coeffs,
)

#: Rates closer than this (absolute) are treated as the same mode frequency.
RATE_MERGE_TOL = 1e-9


class Mode(NamedTuple):
    amp: complex
    power: int
    rate: complex


class Signal:
    """Finite sum of modes amp * t**power * exp(rate*t), conjugate-closed.

    Modes are canonicalized on construction: rates within RATE_MERGE_TOL are
    unified, amplitudes of coinciding (power, rate) pairs are merged, and
    conjugate pairs are made exact.  Construction raises ValueError when the
    mode set cannot represent a real-valued signal.
    """

    __slots__ = ("modes",)

    def __init__(self, modes=()):
        entries = [
            (complex(amp), int(power), complex(rate)) for amp, power, rate in modes
        ]
        if any(power < 0 for _, power, _ in entries):
            raise ValueError("mode powers must be nonnegative")
        rates = _canonical_rates([rate for _, _, rate in entries])
        merged: dict[tuple[int, complex], complex] = {}
        for amp, power, rate in entries:
            key = (power, _lookup_rate(rates, rate))
            merged[key] = merged.get(key, 0.0 + 0.0j) + amp
        self.modes = _enforce_real(merged)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "Signal":
        return cls(())

    @classmethod
    def constant(cls, value: float) -> "Signal":
        return cls([(value, 0, 0.0)])

    @classmethod
    def ramp(cls, slope: float = 1.0) -> "Signal":
        return cls([(slope, 1, 0.0)])

    @classmethod
    def exponential(cls, rate: float, amp: float = 1.0) -> "Signal":
        return cls([(amp, 0, rate)])

    @classmethod
    def cosine(cls, freq: float, amp: float = 1.0) -> "Signal":
        return cls([(0.5 * amp, 0, 1j * freq), (0.5 * amp, 0, -1j * freq)])

    @classmethod
    def sine(cls, freq: float, amp: float = 1.0) -> "Signal":
        return cls([(-0.5j * amp, 0, 1j * freq), (0.5j * amp, 0, -1j * freq)])

    # -- evaluation and calculus -------------------------------------------

    def __call__(self, t):
        """Value at time t; accepts a scalar or an ndarray."""
        t_arr = np.asarray(t, dtype=float)
        acc = np.zeros(t_arr.shape, dtype=complex)
        for amp, power, rate in self.modes:
            acc += amp * t_arr**power * np.exp(rate * t_arr)
        out = acc.real
        return float(out) if np.isscalar(t) or out.ndim == 0 else out

    def derivative(self) -> "Signal":
        """Term-wise derivative: d/dt[t^k e^(rt)] = k t^(k-1) e^(rt) + r t^k e^(rt)."""
        out = []
        for amp, power, rate in self.modes:
            if power > 0:
                out.append((amp * power, power - 1, rate))
            out.append((amp * rate, power, rate))
        return Signal(out)

    @property
    def is_zero(self) -> bool:
        return not self.modes

    def trimmed(self, tol: float = 1e-12) -> "Signal":
        """Drop modes with negligible amplitude and snap near-zero components."""
        out = []
        for amp, power, rate in self.modes:
            if abs(amp) <= tol:
                continue
            out.append((_snap(amp, tol), power, _snap(rate, tol)))
        return Signal(out)

    # -- structural ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Signal) and self.modes == other.modes

    def __hash__(self) -> int:
        return hash(self.modes)

    def __neg__(self) -> "Signal":
        return Signal([(-amp, power, rate) for amp, power, rate in self.modes])

    def __add__(self, other: "Signal") -> "Signal":
        if not isinstance(other, Signal):
            return NotImplemented
        return Signal(list(self.modes) + list(other.modes))

    def __sub__(self, other: "Signal") -> "Signal":
        return self + (-other)

    def __mul__(self, scalar) -> "Signal":
        if not isinstance(scalar, (int, float)):
            return NotImplemented
        return Signal([(amp * scalar, power, rate) for amp, power, rate in self.modes])

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_signal(self)

    def __repr__(self) -> str:
        return f"Signal({[tuple(m) for m in self.modes]!r})"


def _canonical_rates(rates: list[complex]) -> list[complex]:
    registry: list[complex] = []
    for r in rates:
        if not any(abs(r - e) <= RATE_MERGE_TOL for e in registry):
            registry.append(r)
    # snap near-real rates, then make conjugate pairs exact
    registry = [complex(r.real, 0.0) if abs(r.imag) <= RATE_MERGE_TOL else r for r in registry]
    out: list[complex] = []
    used = [False] * len(registry)
    for i, r in enumerate(registry):
        if used[i]:
            continue
        used[i] = True
        if r.imag == 0.0:
            out.append(r)
            continue
        for j in range(i + 1, len(registry)):
            if not used[j] and abs(registry[j] - r.conjugate()) <= 2 * RATE_MERGE_TOL:
                used[j] = True
                avg = 0.5 * (r + registry[j].conjugate())
                out.extend([avg, avg.conjugate()])
                break
        else:
            out.append(r)
    return out


def _lookup_rate(registry: list[complex], rate: complex) -> complex:
    best = min(registry, key=lambda e: abs(e - rate))
    if abs(best - rate) > 3 * RATE_MERGE_TOL:
        raise AssertionError("rate registry lookup failed")
    return best


def _enforce_real(merged: dict[tuple[int, complex], complex]) -> tuple[Mode, ...]:
    scale = 1.0 + max((abs(a) for a in merged.values()), default=0.0)
    out: dict[tuple[int, complex], complex] = {}
    for (power, rate), amp in merged.items():
        if amp == 0.0:
            continue
        if rate.imag == 0.0:
            if abs(amp.imag) > RATE_MERGE_TOL * scale:
                raise ValueError(
                    f"mode t^{power}*exp({rate}t) has non-real amplitude {amp}"
                )
            out[(power, rate)] = complex(amp.real, 0.0)
        elif rate.imag > 0.0:
            partner = merged.get((power, rate.conjugate()), 0.0 + 0.0j)
            avg = 0.5 * (amp + partner.conjugate())
            if abs(amp - partner.conjugate()) > 2 * RATE_MERGE_TOL * scale:
                raise ValueError(
                    f"modes at rate {rate} are not conjugate-closed "
                    f"({amp} vs {partner})"
                )
            if avg != 0.0:
                out[(power, rate)] = avg
                out[(power, rate.conjugate())] = avg.conjugate()
    ordered = sorted(
        out.items(),
        key=lambda kv: (-abs(kv[0][1].real), kv[0][1].real, kv[0][1].imag, kv[0][0]),
    )
    return tuple(Mode(amp, power, rate) for (power, rate), amp in ordered)


def _snap(z: complex, tol: float) -> complex:
    re = 0.0 if abs(z.real) <= tol else z.real
    im = 0.0 if abs(z.imag) <= tol else z.imag
    return complex(re, im)


@dataclass(frozen=True)
class PiecewiseInput:
    """Input with one analytic expression for t < 0 and another for t > 0.

    The only allowed switching instant is t = 0; the Heaviside step is
    past = 0, future = 1.
    """

    past: Signal
    future: Signal

    @classmethod
    def step(cls) -> "PiecewiseInput":
        return cls(Signal.zero(), Signal.constant(1.0))

    @classmethod
    def smooth(cls, signal: Signal) -> "PiecewiseInput":
        """An input with no switch: the same expression on both sides."""
        return cls(signal, signal)

    def __call__(self, t):
        return self.past(t) if t < 0 else self.future(t)


def condition_stack(x: Signal, n: int) -> np.ndarray:
    """Derivative stack [x^(n-1)(0), ..., x'(0), x(0)], highest first.

    Values are taken on the analytic extension at t = 0, which is how the
    one-sided limits of a piecewise input's segments are computed.
    """
    if n < 1:
        raise ValueError("stack length must be at least 1")
    derivs = [x]
    for _ in range(n - 1):
        derivs.append(derivs[-1].derivative())
    return np.array([derivs[k](0.0) for k in range(n - 1, -1, -1)])


def laplace_transform(x: Signal) -> RationalFunction:
    """Transform of the signal: sum of amp * power! / (s - rate)^(power+1).

    Terms sharing a rate are combined over (s - rate)^(max power + 1), so
    the resulting denominator has one factor per distinct rate.
    """
    if x.is_zero:
        return RationalFunction(Polynomial.zero(), Polynomial.one())
    groups: dict[complex, dict[int, complex]] = {}
    for amp, power, rate in x.modes:
        groups.setdefault(rate, {})[power] = amp
    dens = {}
    for rate, powers in groups.items():
        kmax = max(powers)
        factor = np.array([1.0 + 0.0j])
        for _ in range(kmax + 1):
            factor = np.convolve(factor, [-rate, 1.0])
        dens[rate] = factor
    den = np.array([1.0 + 0.0j])
    for factor in dens.values():
        den = np.convolve(den, factor)
    num = np.zeros(1, dtype=complex)
    for rate, powers in groups.items():
        kmax = max(powers)
        local = np.zeros(1, dtype=complex)
        for power, amp in powers.items():
            # amp * power! * (s - rate)^(kmax - power)
            term = np.array([amp * math.factorial(power)], dtype=complex)
            for _ in range(kmax - power):
                term = np.convolve(term, [-rate, 1.0])
            local = _add_coeffs(local, term)
        for other_rate, factor in dens.items():
            if other_rate != rate:
                local = np.convolve(local, factor)
        num = _add_coeffs(num, local)
    return RationalFunction(
        Polynomial(as_real_coeffs(num, what="transform numerator")),
        Polynomial(as_real_coeffs(den, what="transform denominator")),
    )


def _add_coeffs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.astype(complex).copy()
    out[: len(b)] += b
    return out


def from_partial_fractions(pfe: PartialFractionExpansion) -> Signal:
    """Invert an expansion term-wise: c/(s-p)^k becomes c/(k-1)! * t^(k-1) e^(pt).

    A nonempty polynomial part would correspond to impulsive content, which
    the signal class cannot represent; that raises NotStrictlyProper.
    """
    if not pfe.polynomial_part.is_zero:
        raise NotStrictlyProper(
            "expansion has a polynomial part; the time-domain counterpart "
            "is impulsive and outside the exponential-polynomial class"
        )
    return Signal(
        [(t.coeff / math.factorial(t.order - 1), t.order - 1, t.pole) for t in pfe.terms]
    )


# ---------------------------------------------------------------------------
# printing


def format_signal(x: Signal, digits: int = 12) -> str:
    """Canonical human-readable form, complex pairs folded into cos/sin."""
    if x.is_zero:
        return "0"
    atoms: list[tuple[float, str]] = []
    for amp, power, rate in x.modes:
        if rate.imag < 0.0:
            continue  # folded into the conjugate partner
        if rate.imag == 0.0:
            atoms.append((amp.real, _atom(power, rate.real, None, digits)))
        else:
            c, s = 2.0 * amp.real, -2.0 * amp.imag
            if c != 0.0:
                atoms.append((c, _atom(power, rate.real, ("cos", rate.imag), digits)))
            if s != 0.0:
                atoms.append((s, _atom(power, rate.real, ("sin", rate.imag), digits)))
    parts = []
    for coeff, body in atoms:
        mag = f"{abs(coeff):.{digits}g}"
        text = body if body and abs(coeff) == 1.0 else "*".join(p for p in (mag, body) if p)
        if not parts:
            parts.append(text if coeff > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if coeff > 0 else f"- {text}")
    return " ".join(parts)


def _atom(power: int, decay: float, trig, digits: int) -> str:
    pieces = []
    if power == 1:
        pieces.append("t")
    elif power > 1:
        pieces.append(f"t^{power}")
    if decay != 0.0:
        pieces.append(f"exp({decay:.{digits}g}*t)")
    if trig is not None:
        name, freq = trig
        pieces.append(f"{name}({freq:.{digits}g}*t)")
    return "*".join(pieces)
