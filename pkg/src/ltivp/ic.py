"""Condition bookkeeping across the switching instant t = 0.

Stacks are length-n vectors of derivative values ordered highest first:
Y = [y^(n-1), ..., y', y] and likewise for the input.  The one relation
doing all the work is Y = O x + M U; differencing it across t = 0 (the
state x is continuous) gives the jump mapping, and solving it at a single
instant recovers the state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotObservable
from .ode import LinearODE, relative_degree
from .realization import (
    OBSERVABILITY_RTOL,
    StateSpace,
    markov_matrix,
    observability_matrix,
    ss_markov_matrix,
)


def _stack(x, n: int, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if len(x) != n:
        raise ValueError(f"{name} must have length {n}, got {len(x)}")
    return x


@dataclass(frozen=True, eq=False)
class ConditionPair:
    """Condition data for a problem: previous-form (0-) or first-form (0+).

    Exactly one of y_prev / y_first is set; the matching input stack may be
    left None when it is derivable from the input's analytic segments.
    """

    y_prev: np.ndarray | None = None
    u_prev: np.ndarray | None = None
    u_first: np.ndarray | None = None
    y_first: np.ndarray | None = None

    def __post_init__(self):
        if (self.y_prev is None) == (self.y_first is None):
            raise ValueError("exactly one of y_prev / y_first must be given")

    @property
    def kind(self) -> str:
        return "previous" if self.y_prev is not None else "first"

    @classmethod
    def previous(cls, y, u=None) -> "ConditionPair":
        y = np.asarray(y, dtype=float).reshape(-1)
        u = None if u is None else np.asarray(u, dtype=float).reshape(-1)
        return cls(y_prev=y, u_prev=u)

    @classmethod
    def first(cls, y, u=None) -> "ConditionPair":
        y = np.asarray(y, dtype=float).reshape(-1)
        u = None if u is None else np.asarray(u, dtype=float).reshape(-1)
        return cls(y_first=y, u_first=u)


def map_previous_to_first(ode: LinearODE, y_prev, u_prev, u_first) -> np.ndarray:
    """Y(0+) = Y(0-) + M (U(0+) - U(0-)).

    Follows from state continuity: subtract Y = O x + M U written at 0- and
    at 0+; the O x terms cancel and only the input jump remains.
    """
    n = ode.n
    y_prev = _stack(y_prev, n, "y_prev")
    u_prev = _stack(u_prev, n, "u_prev")
    u_first = _stack(u_first, n, "u_first")
    return y_prev + markov_matrix(ode) @ (u_first - u_prev)


def recover_state(
    ss: StateSpace,
    y_stack,
    u_stack,
    obs_rtol: float = OBSERVABILITY_RTOL,
) -> np.ndarray:
    """Solve O x = Y - M U for the state at the instant of the stacks."""
    n = ss.n
    y_stack = _stack(y_stack, n, "y_stack")
    u_stack = _stack(u_stack, n, "u_stack")
    O = observability_matrix(ss)
    sigmas = np.linalg.svd(O, compute_uv=False)
    if sigmas[0] == 0.0 or sigmas[-1] <= obs_rtol * sigmas[0]:
        raise NotObservable(
            "observability matrix is singular to working precision "
            f"(sigma_min/sigma_max = {0.0 if sigmas[0] == 0.0 else sigmas[-1] / sigmas[0]:.3e}); "
            "no unique state matches the output stack"
        )
    return np.linalg.solve(O, y_stack - ss_markov_matrix(ss) @ u_stack)


@dataclass(frozen=True)
class ContinuityEntry:
    """Jump verdict for one output derivative order."""

    order: int
    jump: float
    continuous: bool


@dataclass(frozen=True, eq=False)
class ContinuityReport:
    """Per-derivative jumps Delta Y = M Delta U plus the structural verdict.

    `predicted_continuous` is decided from the input jump alone: the full
    output stack stays continuous exactly when the bottom m entries of the
    input jump (u, u', ..., u^(m-1)) vanish, where m = n - r.
    """

    r: int
    m: int
    delta_y: np.ndarray
    entries: tuple[ContinuityEntry, ...]
    fully_continuous: bool
    predicted_continuous: bool


def classify_continuity(ode: LinearODE, u_jump, tol: float = 1e-9) -> ContinuityReport:
    n = ode.n
    u_jump = _stack(u_jump, n, "u_jump")
    delta_y = markov_matrix(ode) @ u_jump
    entries = tuple(
        ContinuityEntry(
            order=j,
            jump=float(delta_y[n - 1 - j]),
            continuous=bool(abs(delta_y[n - 1 - j]) <= tol),
        )
        for j in range(n)
    )
    r, m = relative_degree(ode)
    predicted = bool(np.all(np.abs(u_jump[n - m :]) <= tol)) if m > 0 else True
    return ContinuityReport(
        r=r,
        m=m,
        delta_y=delta_y,
        entries=entries,
        fully_continuous=bool(all(e.continuous for e in entries)),
        predicted_continuous=predicted,
    )
