"""Closed-form machinery for the theta number of a Mycielskian.

Given t = theta_bar(G) >= 2, the value theta_bar(M(G)) is the largest root of

    x^3 + (t-3) x^2 + (3 - 2t - t^2) x + (-t^3 + 5 t^2 - 3t - 1) = 0,

obtained in trigonometric form as

    m(t) = (4/3) t cos( (1/3) arccos(1 - 27/(4t) + 27/(4t^2)) ) - t/3 + 1.

The other two branches of the cubic never exceed 1 and are discarded;
`verify_root_selection` checks that numerically.  `lpu_formula` is the
analogous (exact, rational) map for the fractional chromatic number,
x -> x + 1/x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError

_CLAMP = 1e-12


@dataclass(frozen=True)
class CubicRoots:
    """Roots of a cubic with three real roots, indexed by the branch k."""

    roots: tuple[float, float, float]
    p: float
    q: float


def solve_cubic_trig(a: float, b: float, c: float, d: float) -> CubicRoots:
    """Real roots of a x^3 + b x^2 + c x + d = 0 by the trigonometric method.

    Only the three-real-root regime is supported: requires a != 0 and a
    negative depressed-cubic p; the arccos argument may poke at most 1e-12
    outside [-1, 1] (it is clamped), anything further is a domain error.

    Branch order: k=0 is the largest root, k=1 the middle, k=2 the smallest.
    """
    if a == 0:
        raise DomainError("leading coefficient must be nonzero")
    p = (3.0 * a * c - b * b) / (3.0 * a * a)
    q = (2.0 * b ** 3 - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a ** 3)
    if p >= 0:
        raise DomainError(
            f"trigonometric method needs p < 0 (three real roots); p = {p}"
        )
    arg = (3.0 * q / (2.0 * p)) * math.sqrt(-3.0 / p)
    if abs(arg) > 1.0 + _CLAMP:
        raise DomainError(
            f"arccos argument {arg} outside [-1, 1]: complex-root regime"
        )
    arg = min(1.0, max(-1.0, arg))
    amp = 2.0 * math.sqrt(-p / 3.0)
    shift = b / (3.0 * a)
    phi = math.acos(arg) / 3.0
    roots = tuple(
        amp * math.cos(phi - 2.0 * math.pi * k / 3.0) - shift for k in range(3)
    )
    return CubicRoots(roots, p, q)


def evaluate_cubic(a: float, b: float, c: float, d: float, x: float) -> float:
    return ((a * x + b) * x + c) * x + d


# ---------------------------------------------------------------------------
# the Mycielskian formula
# ---------------------------------------------------------------------------

def mycielski_cubic_coefficients(t: float) -> tuple[float, float, float, float]:
    return 1.0, t - 3.0, 3.0 - 2.0 * t - t * t, -t ** 3 + 5.0 * t * t - 3.0 * t - 1.0


def cubic_residual(t: float, m: float) -> float:
    """Left side of the Mycielskian cubic evaluated at x = m."""
    a, b, c, d = mycielski_cubic_coefficients(t)
    return evaluate_cubic(a, b, c, d, m)


def star_branch(t: float, k: int) -> float:
    """Branch k of the trigonometric solution of the Mycielskian cubic."""
    arg = 1.0 - 27.0 / (4.0 * t) + 27.0 / (4.0 * t * t)
    arg = min(1.0, max(-1.0, arg))
    return (
        (4.0 / 3.0) * t * math.cos(math.acos(arg) / 3.0 - 2.0 * math.pi * k / 3.0)
        - t / 3.0
        + 1.0
    )


@dataclass(frozen=True)
class FormulaResult:
    t: float
    m: float
    cubic_residual: float
    discarded: tuple[float, float]  # branches k = 1 and k = 2


def mycielski_theta_formula(t: float) -> FormulaResult:
    """theta_bar of the Mycielskian as a function of t = theta_bar(G) >= 2.

    Returns the k = 0 branch; t < m <= t + 1 always holds.  Values t < 2 are
    rejected: t = 1 (edgeless G) is the caller's special case with value 2,
    and no graph attains values strictly between 1 and 2.  Solver noise just
    below the boundary (within 1e-6) is snapped to t = 2 rather than refused.
    """
    if 2.0 - 1e-6 <= t < 2.0:
        t = 2.0
    if not t >= 2.0:
        raise DomainError(f"formula needs t >= 2, got {t}")
    m = star_branch(t, 0)
    residual = cubic_residual(t, m)
    return FormulaResult(t, m, residual, (star_branch(t, 1), star_branch(t, 2)))


def verify_root_selection(t: float, tol: float = 1e-12) -> bool:
    """Both discarded branches of the cubic stay <= 1 (hence below t)."""
    if not t >= 2.0:
        raise DomainError(f"root selection check needs t >= 2, got {t}")
    return star_branch(t, 1) <= 1.0 + tol and star_branch(t, 2) <= 1.0 + tol


Number = Union[Fraction, float, int]


def lpu_formula(x: Number) -> Number:
    """x + 1/x; exact when given a Fraction (or int), float otherwise."""
    if x <= 0:
        raise DomainError("lpu formula needs a positive argument")
    if isinstance(x, Fraction):
        return x + Fraction(1) / x
    if isinstance(x, int):
        return Fraction(x) + Fraction(1, x)
    return x + 1.0 / x
