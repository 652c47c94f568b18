"""Polynomial and rational-function arithmetic over the transform variable s.

Coefficients are stored lowest degree first.  Rational functions keep their
denominator monic so that coefficient comparisons are meaningful.  Root
finding goes through the companion matrix; clustered eigenvalues are merged
into multiple roots and polished before partial fraction expansion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_EPS = float(np.finfo(float).eps)


def as_real_coeffs(values, tol: float = 1e-6, what: str = "coefficients") -> np.ndarray:
    """Cast a complex coefficient array to real, checking the imaginary residue.

    Conjugate-closed constructions leave only rounding noise in the imaginary
    parts; anything larger indicates a non-real input and raises ValueError.
    """
    arr = np.asarray(values, dtype=complex)
    scale = 1.0 + (np.max(np.abs(arr.real)) if arr.size else 0.0)
    resid = np.max(np.abs(arr.imag)) if arr.size else 0.0
    if resid > tol * scale:
        raise ValueError(f"{what} are not real: imaginary residue {resid:g}")
    return arr.real.copy()


class Polynomial:
    """Real-coefficient polynomial, coefficients lowest degree first.

    Immutable; arithmetic returns new instances.  The zero polynomial is
    stored as a single zero coefficient and reports degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [float(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        if not c:
            c = [0.0]
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls([0.0])

    @classmethod
    def one(cls) -> "Polynomial":
        return cls([1.0])

    @classmethod
    def variable(cls) -> "Polynomial":
        """The polynomial s itself."""
        return cls([0.0, 1.0])

    @classmethod
    def from_roots(cls, roots, leading: float = 1.0) -> "Polynomial":
        """Expand leading * prod (s - r) over a conjugate-closed root list."""
        acc = np.array([complex(leading)])
        for r in roots:
            acc = np.convolve(acc, np.array([-complex(r), 1.0]))
        return cls(as_real_coeffs(acc, what="expanded root product"))

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0.0,)

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else len(self.coeffs) - 1

    def __call__(self, z):
        """Horner evaluation; accepts real or complex scalars."""
        acc = 0.0 if not isinstance(z, complex) else 0.0 + 0.0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "Polynomial":
        if self.degree < 1:
            return Polynomial.zero()
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        lead = self.coeffs[-1]
        if lead == 0.0:
            raise ValueError("zero polynomial has no monic form")
        return Polynomial([c / lead for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0.0] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, float)):
            return Polynomial([other * c for c in self.coeffs])
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __divmod__(self, other: "Polynomial"):
        """Long division; returns (quotient, remainder)."""
        other = _as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Polynomial.zero(), self
        rem = list(self.coeffs)
        dn = list(other.coeffs)
        lead = dn[-1]
        q = [0.0] * (len(rem) - len(dn) + 1)
        for k in range(len(q) - 1, -1, -1):
            q[k] = rem[k + len(dn) - 1] / lead
            for i, d in enumerate(dn):
                rem[k + i] -= q[k] * d
        return Polynomial(q), Polynomial(rem[: len(dn) - 1] or [0.0])

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0.0:
                continue
            mag = _fmt(abs(c))
            if k == 0:
                body = mag
            else:
                var = "s" if k == 1 else f"s^{k}"
                body = var if abs(c) == 1.0 else f"{mag} {var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, float)):
        return Polynomial([float(x)])
    raise TypeError(f"cannot treat {type(x).__name__} as a polynomial")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


class RationalFunction:
    """Ratio of two polynomials in s, stored with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        lead = den.coeffs[-1]
        self.num = num * (1.0 / lead)
        self.den = den * (1.0 / lead)

    @property
    def is_strictly_proper(self) -> bool:
        return self.num.degree < self.den.degree

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __add__(self, other) -> "RationalFunction":
        other = _as_rational(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_as_rational(other))

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, float)):
            return RationalFunction(self.num * other, self.den)
        other = _as_rational(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def max_cross_error(self, other: "RationalFunction") -> float:
        """Largest coefficient of num1*den2 - num2*den1, relative to the
        largest coefficient of either product (floored at 1).

        Both denominators are monic by construction, so this measures
        coefficient-level disagreement without requiring common factors to
        have been cancelled on either side; the scaling keeps the figure
        meaningful when the coefficients themselves are large.
        """
        left = self.num * other.den
        right = other.num * self.den
        scale = max(
            1.0,
            max((abs(c) for c in left.coeffs), default=0.0),
            max((abs(c) for c in right.coeffs), default=0.0),
        )
        diff = left - right
        return max(abs(c) for c in diff.coeffs) / scale

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"


def _as_rational(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (Polynomial, int, float)):
        return RationalFunction(_as_poly(x), Polynomial.one())
    raise TypeError(f"cannot treat {type(x).__name__} as a rational function")


# ---------------------------------------------------------------------------
# root finding

#: Clustered eigenvalues closer than this relative distance are merged.
CLUSTER_TOL = 1e-7


def _merge_radius(m: int, tol: float) -> float:
    # Companion-matrix eigenvalues of a multiplicity-m root scatter like
    # eps**(1/m), so the merge radius must grow with the candidate size.
    return max(tol, (1e3 * _EPS) ** (1.0 / m))


def _cluster(roots: np.ndarray, tol: float) -> list[list[complex]]:
    """Group companion-matrix eigenvalues into candidate multiple roots.

    The eigenvalues of an exact multiplicity-m root scatter like eps**(1/m),
    so each candidate multiplicity gets its own radius: working from the
    largest plausible multiplicity downward, connected components (single
    linkage among group centroids) holding at least m eigenvalues merge into
    one group.  Genuinely distinct roots merge only within the m = 2 radius
    of each other; roots packed more tightly than the radius for their count
    are indistinguishable from a true multiple root in double precision and
    are treated as one.
    """
    groups: list[list[complex]] = [[complex(r)] for r in roots]
    groups.sort(key=lambda g: (g[0].real, g[0].imag))
    for m in range(len(groups), 1, -1):
        radius = _merge_radius(m, tol)
        while True:
            merged = False
            for comp in _link_components(groups, radius):
                if len(comp) > 1 and sum(len(groups[i]) for i in comp) >= m:
                    merged = True
                    break
            if not merged:
                break
            new_groups: list[list[complex]] = []
            for comp in _link_components(groups, radius):
                if len(comp) > 1 and sum(len(groups[i]) for i in comp) >= m:
                    block: list[complex] = []
                    for i in comp:
                        block.extend(groups[i])
                    new_groups.append(block)
                else:
                    new_groups.extend(groups[i] for i in comp)
            groups = new_groups
    return groups


def _link_components(groups: list[list[complex]], radius: float) -> list[list[int]]:
    """Connected components of groups whose centroids sit within radius."""
    centers = [_centroid(g) for g in groups]
    seen = [False] * len(groups)
    comps: list[list[int]] = []
    for start in range(len(groups)):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            i = frontier.pop()
            for j in range(len(groups)):
                if seen[j]:
                    continue
                scale = 1.0 + max(abs(centers[i]), abs(centers[j]))
                if abs(centers[i] - centers[j]) <= radius * scale:
                    seen[j] = True
                    comp.append(j)
                    frontier.append(j)
        comps.append(sorted(comp))
    return comps


def _centroid(group: list[complex]) -> complex:
    return sum(group) / len(group)


def _polish_root(p: Polynomial, center: complex, mult: int, tol: float) -> complex:
    # A multiplicity-m root of p is a simple root of the (m-1)-th derivative,
    # where plain Newton iteration is well conditioned.
    q = p
    for _ in range(mult - 1):
        q = q.derivative()
    dq = q.derivative()
    x = center
    for _ in range(30):
        df = dq(x)
        if df == 0:
            break
        step = q(x) / df
        x_new = x - step
        if not np.isfinite(x_new.real) or not np.isfinite(x_new.imag):
            break
        if abs(x_new - x) <= 1e-15 * (1.0 + abs(x_new)):
            x = x_new
            break
        x = x_new
    # Reject a polish that wandered off to a different root of q.
    scale = 1.0 + max(abs(center), abs(x))
    if abs(x - center) > 2.0 * _merge_radius(mult, tol) * scale:
        return center
    return x


def _symmetrize_conjugates(pairs: list[tuple[complex, int]]) -> list[tuple[complex, int]]:
    out: list[tuple[complex, int]] = []
    used = [False] * len(pairs)
    for i, (r, m) in enumerate(pairs):
        if used[i]:
            continue
        used[i] = True
        if abs(r.imag) <= 1e-9 * (1.0 + abs(r)):
            out.append((complex(r.real, 0.0), m))
            continue
        partner = None
        for j in range(len(pairs)):
            if used[j] or pairs[j][1] != m:
                continue
            if abs(pairs[j][0] - r.conjugate()) <= 1e-6 * (1.0 + abs(r)):
                partner = j
                break
        if partner is None:
            out.append((r, m))
            continue
        used[partner] = True
        avg = 0.5 * (r + pairs[partner][0].conjugate())
        out.append((avg, m))
        out.append((avg.conjugate(), m))
    out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return out


def poly_roots(p: Polynomial, cluster_tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    """All roots of p with multiplicities, as (root, multiplicity) pairs.

    Roots come from the eigenvalues of the companion matrix.  Eigenvalues
    that agree to within the (multiplicity-aware) cluster radius are merged
    into a single root whose multiplicity is the cluster size, then refined
    by Newton iteration on the appropriate derivative.  Multiplicities sum
    to the degree, and the returned set is closed under conjugation.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no well-defined root set")
    if p.degree == 0:
        return []
    raw = np.roots(np.asarray(p.coeffs[::-1], dtype=float))
    groups = _cluster(raw, cluster_tol)
    pairs = [
        (_polish_root(p, _centroid(g), len(g), cluster_tol), len(g)) for g in groups
    ]
    return _symmetrize_conjugates(pairs)


# ---------------------------------------------------------------------------
# partial fractions


@dataclass(frozen=True)
class PartialFractionTerm:
    """One expansion term coeff / (s - pole)**order."""

    pole: complex
    order: int
    coeff: complex


@dataclass(frozen=True)
class PartialFractionExpansion:
    """Polynomial part plus a sum of coeff/(s - pole)**order terms."""

    polynomial_part: Polynomial
    terms: tuple[PartialFractionTerm, ...]

    def recombine(self) -> RationalFunction:
        """Rebuild the rational function this expansion represents."""
        by_pole: dict[complex, int] = {}
        for t in self.terms:
            by_pole[t.pole] = max(by_pole.get(t.pole, 0), t.order)
        den = np.array([1.0 + 0.0j])
        for pole, kmax in by_pole.items():
            for _ in range(kmax):
                den = np.convolve(den, [-pole, 1.0])
        num = np.zeros(max(len(den) - 1, 1), dtype=complex)
        if not self.polynomial_part.is_zero:
            num = _cadd(num, np.convolve(self.polynomial_part.coeffs, den))
        for t in self.terms:
            factor = np.array([t.coeff])
            for pole, kmax in by_pole.items():
                power = kmax - t.order if pole == t.pole else kmax
                for _ in range(power):
                    factor = np.convolve(factor, [-pole, 1.0])
            num = _cadd(num, factor)
        return RationalFunction(
            Polynomial(as_real_coeffs(num, what="recombined numerator")),
            Polynomial(as_real_coeffs(den, what="recombined denominator")),
        )


def _cadd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.astype(complex).copy()
    out[: len(b)] += b
    return out


def _taylor(coeffs: np.ndarray, x0: complex, count: int) -> np.ndarray:
    """First `count` Taylor coefficients of the polynomial about x0."""
    work = list(np.asarray(coeffs, dtype=complex))
    out = np.zeros(count, dtype=complex)
    for k in range(count):
        # synthetic division by (s - x0); the remainder is the next coefficient
        acc = 0.0 + 0.0j
        for i in range(len(work) - 1, -1, -1):
            acc = acc * x0 + work[i]
            work[i] = acc
        out[k] = work[0]
        work = work[1:]
        if not work:
            break
    return out


def partial_fractions(
    rf: RationalFunction, cluster_tol: float = CLUSTER_TOL
) -> PartialFractionExpansion:
    """Expand a rational function into polynomial part plus pole terms.

    Each pole of multiplicity m contributes terms of order 1..m whose
    coefficients come from the Taylor expansion of the deflated remainder at
    the pole, so repeated poles need no symbolic differentiation.
    """
    num, den = rf.num, rf.den
    if num.degree >= den.degree:
        poly_part, num = divmod(num, den)
    else:
        poly_part = Polynomial.zero()
    if num.is_zero:
        return PartialFractionExpansion(poly_part, ())
    roots = poly_roots(den, cluster_tol)
    terms: list[PartialFractionTerm] = []
    for pole, mult in roots:
        deflated = np.asarray(den.coeffs, dtype=complex)
        for _ in range(mult):
            deflated = _deflate(deflated, pole)
        num_t = _taylor(np.asarray(num.coeffs, dtype=complex), pole, mult)
        den_t = _taylor(deflated, pole, mult)
        ratio = np.zeros(mult, dtype=complex)
        for j in range(mult):
            acc = num_t[j]
            for i in range(1, j + 1):
                acc -= den_t[i] * ratio[j - i]
            ratio[j] = acc / den_t[0]
        for j in range(mult):
            coeff = ratio[j]
            if pole.imag == 0.0:
                coeff = complex(coeff.real, 0.0)
            terms.append(PartialFractionTerm(pole, mult - j, coeff))
    terms = _pair_conjugate_coeffs(terms)
    return PartialFractionExpansion(poly_part, tuple(terms))


def _deflate(coeffs: np.ndarray, root: complex) -> np.ndarray:
    """Divide by (s - root), dropping the (near-zero) remainder."""
    out = np.zeros(len(coeffs) - 1, dtype=complex)
    acc = 0.0 + 0.0j
    for i in range(len(coeffs) - 1, 0, -1):
        acc = acc * root + coeffs[i]
        out[i - 1] = acc
    return out


def _pair_conjugate_coeffs(
    terms: list[PartialFractionTerm],
) -> list[PartialFractionTerm]:
    # Force coefficients at conjugate poles to be exact conjugates.
    index = {(t.pole, t.order): i for i, t in enumerate(terms)}
    out = list(terms)
    for i, t in enumerate(terms):
        if t.pole.imag <= 0.0:
            continue
        j = index.get((t.pole.conjugate(), t.order))
        if j is not None:
            avg = 0.5 * (t.coeff + out[j].coeff.conjugate())
            out[i] = PartialFractionTerm(t.pole, t.order, avg)
            out[j] = PartialFractionTerm(t.pole.conjugate(), t.order, avg.conjugate())
    return out
