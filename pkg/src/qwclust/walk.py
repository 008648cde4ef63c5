"""Exact state-vector simulation of one-dimensional coined quantum walks.

The walker carries a two-level coin. One evolution step first rotates the
coin with an orthogonal 2x2 operator and then shifts the walker right or
left depending on the coin component. Every coin used here is real
orthogonal, so amplitudes are signed reals and interference shows up as
sign cancellation; no complex arithmetic is needed.

Two evolution engines are provided:

- ``single_coin_walk`` repeats one coin with fixed step lengths. The
  state is tracked on an exact integer lattice indexed by the number of
  right moves taken, so amplitudes of equal positions combine exactly
  and no floating-point position comparison is involved.
- ``multi_coin_walk`` applies a different coin (and step-length pair) at
  every step. Positions are then irregular reals; after each step,
  entries whose positions differ by less than a small tolerance are
  merged by amplitude addition, which keeps interference exact for
  positions that coincide mathematically but were reached through
  different floating-point summation orders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CoinOperator",
    "StepSpec",
    "WalkState",
    "PositionDistribution",
    "biased_coin",
    "hadamard_coin",
    "single_coin_walk",
    "multi_coin_walk",
    "scms_walk",
    "mcms_walk",
    "unit_biased_walk",
    "unit_multi_coin_walk",
    "hadamard_walk",
    "distribution",
    "sample_position",
    "measure",
    "distribution_csv",
]

# Relative scale of the position-merging tolerance; see multi_coin_walk.
_MERGE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class CoinOperator:
    """Orthogonal 2x2 coin with bias ``rho`` in [0.5, 1].

    The matrix is [[sqrt(rho), sqrt(1-rho)], [sqrt(1-rho), -sqrt(rho)]],
    so a coin-up walker keeps moving toward its target with probability
    ``rho``. The balanced case rho = 0.5 is the Hadamard gate.
    """

    rho: float
    matrix: np.ndarray


@dataclass(frozen=True)
class StepSpec:
    """Per-step displacements: +right_len on coin-up, -left_len on coin-down.

    Lengths are the full rightward/leftward travel already divided by
    ``divisor`` (the number of steps the walk takes). Both lengths carry
    the sign of the underlying displacement, so a negative pair walks
    toward a target lying in the negative direction.
    """

    right_len: float
    left_len: float
    divisor: int

    def __post_init__(self) -> None:
        if self.divisor < 1:
            raise ValueError(f"step divisor must be >= 1, got {self.divisor}")
        if not (math.isfinite(self.right_len) and math.isfinite(self.left_len)):
            raise ValueError("step lengths must be finite")
        if self.right_len * self.left_len < 0:
            raise ValueError("right_len and left_len must share a sign or be zero")

    @property
    def scale(self) -> float:
        """Magnitude of the full displacement the walk is a fraction of."""
        return (abs(self.right_len) + abs(self.left_len)) * self.divisor


@dataclass(frozen=True, eq=False)
class WalkState:
    """Superposition over walker positions with signed coin amplitudes.

    ``positions`` is strictly increasing; the probability of collapsing
    onto positions[i] is amp_up[i]**2 + amp_down[i]**2.
    """

    positions: np.ndarray
    amp_up: np.ndarray
    amp_down: np.ndarray

    def probabilities(self) -> np.ndarray:
        return self.amp_up**2 + self.amp_down**2

    def total_probability(self) -> float:
        return float(np.sum(self.probabilities()))


@dataclass(frozen=True, eq=False)
class PositionDistribution:
    """Measurement distribution of a walk: positions ascending, probabilities summing to 1."""

    positions: np.ndarray
    probabilities: np.ndarray


def biased_coin(rho: float) -> CoinOperator:
    """Build the orthogonal coin for bias ``rho`` in [0.5, 1]."""
    rho = float(rho)
    if not (0.5 <= rho <= 1.0):  # comparison also rejects NaN
        raise ValueError(f"coin bias must lie in [0.5, 1], got {rho}")
    a = math.sqrt(rho)
    b = math.sqrt(1.0 - rho)
    return CoinOperator(rho=rho, matrix=np.array([[a, b], [b, -a]]))


def hadamard_coin() -> CoinOperator:
    """The balanced coin, entries of magnitude 1/sqrt(2)."""
    return biased_coin(0.5)


def _merge_entries(
    positions: np.ndarray,
    amp_up: np.ndarray,
    amp_down: np.ndarray,
    tol: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sort by position and add amplitudes of entries closer than ``tol``.

    Entries whose merged amplitudes are both exactly zero are dropped.
    """
    order = np.argsort(positions, kind="stable")
    pos = positions[order]
    up = amp_up[order]
    down = amp_down[order]

    out_pos: list[float] = []
    out_up: list[float] = []
    out_down: list[float] = []
    last = math.inf
    for p, u, d in zip(pos, up, down):
        if out_pos and p - last < tol:
            out_up[-1] += u
            out_down[-1] += d
        else:
            out_pos.append(p)
            out_up.append(u)
            out_down.append(d)
        last = p

    rpos = np.array(out_pos)
    rup = np.array(out_up)
    rdown = np.array(out_down)
    keep = (rup != 0.0) | (rdown != 0.0)
    return rpos[keep], rup[keep], rdown[keep]


def single_coin_walk(coin: CoinOperator, spec: StepSpec, steps: int) -> WalkState:
    """Apply ``steps`` identical coin+shift evolutions to an up walker at 0.

    Amplitudes are evolved on the lattice of right-move counts and turned
    into positions only at the end, so equal positions merge exactly.
    Positions are clipped to the reachable interval
    [-steps*left_len, steps*right_len] (order swapped for negative steps)
    to keep the support bound exact against end-of-range rounding.
    """
    if steps < 1:
        raise ValueError(f"step count must be >= 1, got {steps}")
    c = coin.matrix
    c00, c01, c10, c11 = c[0, 0], c[0, 1], c[1, 0], c[1, 1]

    u = np.zeros(steps + 1)
    d = np.zeros(steps + 1)
    u[0] = 1.0
    for s in range(steps):
        head_u = u[: s + 1]
        head_d = d[: s + 1]
        coined_up = c00 * head_u + c01 * head_d
        coined_down = c10 * head_u + c11 * head_d
        u[1 : s + 2] = coined_up  # a right move raises the lattice index
        u[0] = 0.0
        d[: s + 1] = coined_down

    n_right = np.arange(steps + 1)
    positions = n_right * spec.right_len - (steps - n_right) * spec.left_len
    bounds = sorted((-steps * spec.left_len, steps * spec.right_len))
    positions = np.clip(positions, bounds[0], bounds[1])

    tol = _MERGE_TOL * max(1.0, spec.scale)
    pos, up, down = _merge_entries(positions, u, d, tol)
    return WalkState(pos, up, down)


def multi_coin_walk(
    coins: Sequence[CoinOperator], specs: Sequence[StepSpec]
) -> WalkState:
    """Apply one coin+shift evolution per (coin, spec) pair, in order.

    Starts from an up walker at 0. After every step, positions closer
    than 1e-9 times the largest displacement scale are merged.
    """
    if len(coins) == 0:
        raise ValueError("at least one coin is required")
    if len(coins) != len(specs):
        raise ValueError(f"{len(coins)} coins but {len(specs)} step specs")

    tol = _MERGE_TOL * max(1.0, max(s.scale for s in specs))
    pos = np.array([0.0])
    up = np.array([1.0])
    down = np.array([0.0])
    for coin, spec in zip(coins, specs):
        c = coin.matrix
        coined_up = c[0, 0] * up + c[0, 1] * down
        coined_down = c[1, 0] * up + c[1, 1] * down
        pos = np.concatenate([pos + spec.right_len, pos - spec.left_len])
        up = np.concatenate([coined_up, np.zeros_like(coined_down)])
        down = np.concatenate([np.zeros_like(coined_up), coined_down])
        pos, up, down = _merge_entries(pos, up, down, tol)
    return WalkState(pos, up, down)


def scms_walk(rho: float, delta: float, r: int) -> WalkState:
    """Single-coin multi-step walk toward a target displaced by ``delta``.

    One coin of bias ``rho`` is applied ``r`` times; each step moves
    +rho*delta/r on coin-up and -(1-rho)*delta/r on coin-down. Every
    reachable position lies between -(1-rho)*delta and rho*delta,
    endpoints inclusive: the walker never overshoots its target.
    """
    if r < 1:
        raise ValueError(f"step count must be >= 1, got {r}")
    delta = float(delta)
    if not math.isfinite(delta):
        raise ValueError(f"displacement must be finite, got {delta}")
    coin = biased_coin(rho)
    spec = StepSpec(rho * delta / r, (1.0 - rho) * delta / r, r)
    state = single_coin_walk(coin, spec, r)
    # Re-clip against the exactly-formed endpoints; r*(x/r) can round past x.
    lo, hi = sorted((-(1.0 - rho) * delta, rho * delta))
    return WalkState(
        np.clip(state.positions, lo, hi), state.amp_up, state.amp_down
    )


def mcms_walk(
    etas: Iterable[float], delta: float, k: int | None = None
) -> WalkState:
    """Multi-coin multi-step walk: one coin of bias etas[j] per step.

    Step j moves +etas[j]*delta/k on coin-up and -(1-etas[j])*delta/k on
    coin-down, where k is the number of coins. With a single coin this
    coincides with ``scms_walk(etas[0], delta, 1)``.
    """
    etas = [float(e) for e in etas]
    if not etas:
        raise ValueError("at least one coin bias is required")
    if k is None:
        k = len(etas)
    if k != len(etas):
        raise ValueError(f"k={k} does not match {len(etas)} coin biases")
    delta = float(delta)
    if not math.isfinite(delta):
        raise ValueError(f"displacement must be finite, got {delta}")
    coins = [biased_coin(e) for e in etas]
    specs = [StepSpec(e * delta / k, (1.0 - e) * delta / k, k) for e in etas]
    return multi_coin_walk(coins, specs)


def unit_biased_walk(rho: float, steps: int) -> WalkState:
    """Walk with coin bias ``rho`` and fixed unit steps (+1 up, -1 down)."""
    return single_coin_walk(biased_coin(rho), StepSpec(1.0, 1.0, 1), steps)


def unit_multi_coin_walk(etas: Iterable[float]) -> WalkState:
    """One unit-step evolution per coin bias in ``etas``."""
    etas = [float(e) for e in etas]
    if not etas:
        raise ValueError("at least one coin bias is required")
    coins = [biased_coin(e) for e in etas]
    specs = [StepSpec(1.0, 1.0, 1)] * len(etas)
    return multi_coin_walk(coins, specs)


def hadamard_walk(steps: int) -> PositionDistribution:
    """Exact distribution of the ``steps``-step unit Hadamard walk.

    Positions are integers sharing the parity of ``steps``; the
    distribution is asymmetric because the walker starts coin-up.
    """
    return distribution(unit_biased_walk(0.5, steps))


def distribution(state: WalkState) -> PositionDistribution:
    """Collapse probabilities per position, positions ascending."""
    return PositionDistribution(state.positions.copy(), state.probabilities())


def sample_position(state: WalkState, u: float) -> float:
    """Map one uniform draw ``u`` in [0, 1) to a collapsed position.

    The cumulative probabilities are scanned in position-ascending order.
    """
    probs = state.probabilities()
    cum = np.cumsum(probs)
    idx = int(np.searchsorted(cum, u * cum[-1], side="right"))
    idx = min(idx, len(cum) - 1)
    return float(state.positions[idx])


def measure(state: WalkState, rng: np.random.Generator) -> float:
    """Collapse the state onto one position, consuming one uniform draw."""
    total = state.total_probability()
    if abs(total - 1.0) > 1e-6:
        raise RuntimeError(
            f"walk state lost normalization: total probability {total!r}"
        )
    return sample_position(state, rng.random())


def distribution_csv(dist: PositionDistribution) -> str:
    """Render a distribution as two-column CSV at 17 significant digits."""
    lines = ["position,probability"]
    for p, q in zip(dist.positions, dist.probabilities):
        lines.append(f"{p:.17g},{q:.17g}")
    return "\n".join(lines) + "\n"
