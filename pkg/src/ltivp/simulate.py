"""Exact state-space trajectories by matrix-exponential stepping.

The input is not integrated numerically: every exponential-polynomial input
satisfies a small homogeneous LTI system of its own (one Jordan chain per
distinct rate), so the plant state is augmented with that generator and the
whole block advances by expm of the augmented matrix.  Accuracy is then
grid-independent, which is what an oracle for the symbolic path needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .ic import recover_state
from .laplace import IVProblem, first_conditions
from .realization import StateSpace, observable_canonical
from .signal import Signal


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled solution: times, per-sample states (rows), and outputs."""

    times: np.ndarray
    states: np.ndarray
    outputs: np.ndarray

    def csv_text(self) -> str:
        """CSV with header t,y,x1..xn; 17 significant digits round-trip doubles."""
        n = self.states.shape[1]
        lines = ["t,y," + ",".join(f"x{i + 1}" for i in range(n))]
        for t, y, x in zip(self.times, self.outputs, self.states):
            lines.append(",".join(f"{v:.17g}" for v in (t, y, *x)))
        return "\n".join(lines) + "\n"


def _input_generator(u: Signal) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(J, c, z0) with z' = J z, z(0) = z0, u(t) = Re(c . z(t)).

    One Jordan chain per distinct rate: the chain for rate L carries the
    functions t^k e^(Lt) / k!, so c picks mode amplitudes scaled by k!.
    """
    groups: dict[complex, dict[int, complex]] = {}
    for amp, power, rate in u.modes:
        groups.setdefault(rate, {})[power] = amp
    size = sum(max(powers) + 1 for powers in groups.values())
    J = np.zeros((size, size), dtype=complex)
    c = np.zeros(size, dtype=complex)
    z0 = np.zeros(size, dtype=complex)
    at = 0
    for rate, powers in groups.items():
        kmax = max(powers)
        for k in range(kmax + 1):
            J[at + k, at + k] = rate
            if k > 0:
                J[at + k, at + k - 1] = 1.0
            amp = powers.get(k)
            if amp is not None:
                c[at + k] = amp * math.factorial(k)
        z0[at] = 1.0
        at += kmax + 1
    return J, c, z0


def simulate(ss: StateSpace, x0, input: Signal, grid) -> Trajectory:
    """Advance x' = A x + B u from t = 0 across the given time grid."""
    grid = np.asarray(grid, dtype=float).reshape(-1)
    if len(grid) == 0:
        raise ValueError("grid is empty")
    if grid[0] < 0.0 or np.any(np.diff(grid) <= 0.0):
        raise ValueError("grid must be strictly increasing and start at t >= 0")
    x0 = np.asarray(x0, dtype=float).reshape(-1)
    n = ss.n
    if len(x0) != n:
        raise ValueError(f"x0 must have length {n}")

    J, c, z0 = _input_generator(input)
    k = len(z0)
    aug = np.zeros((n + k, n + k), dtype=complex)
    aug[:n, :n] = ss.A
    aug[:n, n:] = np.outer(ss.B, c)
    aug[n:, n:] = J

    w = np.concatenate([x0.astype(complex), z0])
    states = np.empty((len(grid), n))
    outputs = np.empty(len(grid))
    steps: dict[float, np.ndarray] = {}
    t_prev = 0.0
    for i, t in enumerate(grid):
        dt = t - t_prev
        if dt > 0.0:
            step = steps.get(dt)
            if step is None:
                step = steps[dt] = expm(aug * dt)
            w = step @ w
        x = w[:n].real
        states[i] = x
        outputs[i] = ss.C @ x + ss.D * input(t)
        t_prev = t
    return Trajectory(times=grid, states=states, outputs=outputs)


def default_grid(t_f: float, points: int = 200) -> np.ndarray:
    """`points` uniform samples over (0, t_f], excluding the switch instant."""
    if not t_f > 0.0:
        raise ValueError("horizon must be positive")
    if points < 1:
        raise ValueError("need at least one grid point")
    return np.linspace(t_f / points, t_f, points)


def simulate_ivp(problem: IVProblem, grid=None) -> Trajectory:
    """Solve the IVP on the state-space side: realize, recover x(0+), step.

    This path shares no code with the Laplace pipeline beyond the problem
    types, so agreement between the two is a meaningful check.
    """
    if grid is None:
        if problem.horizon is None:
            raise ValueError("either a grid or a problem horizon is required")
        grid = default_grid(problem.horizon)
    ss = observable_canonical(problem.ode)
    y_first, u_first = first_conditions(problem)
    x0 = recover_state(ss, y_first, u_first)
    return simulate(ss, x0, problem.input.future, grid)
