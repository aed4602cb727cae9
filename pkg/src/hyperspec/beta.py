"""The scalar map x -> beta/(1-x) and the root finders built on it."""

from __future__ import annotations

import math
from dataclasses import dataclass

BETA = math.sqrt(5) - 2
ROOT_TOL = 1e-13


class BetaDomainError(ValueError):
    """An iterate reached 1 (or beyond), where the map is undefined."""


@dataclass(frozen=True)
class BetaParams:
    beta: float = BETA

    def __post_init__(self):
        if not 0 < self.beta < 0.25:
            raise ValueError(f"beta must lie in (0, 1/4), got {self.beta}")

    @property
    def disc(self) -> float:
        return math.sqrt(1 - 4 * self.beta)

    @property
    def fixed_lo(self) -> float:
        return (1 - self.disc) / 2

    @property
    def fixed_hi(self) -> float:
        return (1 + self.disc) / 2

    def f(self, x: float) -> float:
        return f_iter(self.beta, x, 1)


def f_iter(beta: float, x: float, n: int) -> float:
    """Apply ``x -> beta / (1 - x)`` ``n`` times.

    ``n`` may be ``math.inf``, in which case the limit is returned for starting
    points below the upper fixed point.
    """
    if n == math.inf:
        p = BetaParams(beta)
        if x >= p.fixed_hi:
            if math.isclose(x, p.fixed_hi, rel_tol=0, abs_tol=1e-15):
                return p.fixed_hi
            raise BetaDomainError(f"orbit of {x} escapes past the upper fixed point")
        return p.fixed_lo
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    for _ in range(int(n)):
        if x >= 1:
            raise BetaDomainError(f"iterate {x} is >= 1")
        x = beta / (1 - x)
    if x >= 1 or x < 0:
        raise BetaDomainError(f"iterate {x} left [0, 1)")
    return x


def _bisect(fn, lo: float, hi: float, tol: float = ROOT_TOL) -> float:
    """Root of an increasing function with fn(lo) < 0 < fn(hi)."""
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if fn(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def solve_symmetric(beta: float, n: int) -> float:
    """The x between the fixed points with ``f^n(x) = 1 - x``.

    Labels built from this x along a path of n edges read the same from both ends.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p = BetaParams(beta)
    return _bisect(lambda x: f_iter(beta, x, n) + x - 1, p.fixed_lo, p.fixed_hi)


def pendant_corner(beta: float, length: float) -> float:
    """Corner label at the attachment end of a hanging path with ``length`` edges."""
    return 1 - f_iter(beta, beta, length - 1)


def solve_beta_F3(m: int, n: int, k: int) -> tuple[float, float]:
    """Alpha of the central 3-edge with hanging paths of lengths m, n, k, and the spectral radius.

    Solves ``z_m z_n z_k = beta`` where ``z_t = 1 - f^{t-1}(beta)``. The search runs
    over (0, 1) since short paths give beta above 1/4; a parameter for which an
    orbit leaves [0, 1) counts as too large.
    """
    if min(m, n, k) < 1:
        raise ValueError("path lengths must be >= 1")

    def excess(b: float) -> float:
        try:
            prod = math.prod(1 - f_iter(b, b, t - 1) for t in (m, n, k))
        except BetaDomainError:
            return 1.0
        if prod <= 0:
            return 1.0
        return b - prod

    beta = _bisect(excess, 1e-12, 1 - 1e-12)
    return beta, 2 * beta ** (-1 / 3)


def dagger_g(i: float, j: float, k: float, l: float, beta: float = BETA) -> float:
    """Product of the four corner labels on the 4-edge with hanging paths i, j, k, l.

    Infinite lengths are allowed and use the limiting corner ``1 - fixed_lo``.
    """
    ts = (i, j, k, l)
    if any(t < 1 for t in ts):
        raise ValueError("path lengths must be >= 1")
    return math.prod(pendant_corner(beta, t) for t in ts)
