"""The analytic functionals the criterion inequalities are stated in.

Every function here maps a normalized candidate ``f`` (class shape
``z + a_{n+1} z^{n+1} + ...``) to a truncated series.  The common factor
``z`` is cancelled before any division, so all quotients are series with
unit denominators; in particular ``zf'/f = (u + z u')/u`` for ``u = f/z``.
Constant terms that are forced analytically (1 for the quotients, beta
for the first combination) are set exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .series import (
    Series,
    SchlichtCandidate,
    add,
    derivative,
    div,
    max_coeff_diff,
    mul,
    scale,
    shift,
)


class FunctionalKind(Enum):
    STARLIKE_Q = "starlike_q"    # z f'/f
    CONVEX_Q = "convex_q"        # 1 + z f''/f'
    W_FUNC = "w_func"            # f/(z f') - 1
    CENTERED_Q = "centered_q"    # f/(z f') - 1/(2 alpha)
    LHS_A = "lhs_a"              # (beta-gamma) zf'/f + gamma (1 + zf''/f')
    LHS_B = "lhs_b"              # beta (zf'/f - 1) + gamma zf''/f'
    MOCANU_Q = "mocanu_q"        # (1-alpha) zf'/f + alpha (1 + zf''/f')


class ParameterError(ValueError):
    """Scalar parameter outside its admissible range."""


def unit_part(f: SchlichtCandidate) -> Series:
    """``u = f/z``, a series with constant term exactly 1."""
    return shift(f.series, -1)


def starlike_quotient(f: SchlichtCandidate) -> Series:
    """``z f'(z) / f(z)``; constant term exactly 1."""
    u = unit_part(f)
    return div(add(u, shift(derivative(u), 1)), u)


def convex_quotient(f: SchlichtCandidate) -> Series:
    """``1 + z f''(z) / f'(z)``; constant term exactly 1."""
    fp = derivative(f.series)
    return div(shift(derivative(fp), 1), fp) + 1.0


def w_func(f: SchlichtCandidate) -> Series:
    """``w = f/(z f') - 1``; vanishes to order >= n for class index n."""
    u = unit_part(f)
    return div(u, add(u, shift(derivative(u), 1))) - 1.0


def lhs_a(f: SchlichtCandidate, beta: complex, gamma: complex) -> Series:
    """``(beta - gamma) zf'/f + gamma (1 + zf''/f')``; constant term is
    exactly ``beta``."""
    out = scale(starlike_quotient(f), beta - gamma) + scale(convex_quotient(f), gamma)
    c = out.coeffs.copy()
    c[0] = complex(beta)
    return Series(c)


def lhs_b(f: SchlichtCandidate, beta: complex, gamma: complex) -> Series:
    """``beta (zf'/f - 1) + gamma zf''/f'``; constant term exactly 0."""
    return scale(starlike_quotient(f) - 1.0, beta) + scale(
        convex_quotient(f) - 1.0, gamma
    )


def mocanu_functional(f: SchlichtCandidate, alpha: float) -> Series:
    """The alpha-convex combination ``(1-alpha) zf'/f + alpha (1+zf''/f')``;
    constant term exactly 1.  Any real alpha is allowed."""
    out = scale(starlike_quotient(f), 1.0 - alpha) + scale(convex_quotient(f), alpha)
    c = out.coeffs.copy()
    c[0] = 1.0
    return Series(c)


def centered_quotient(f: SchlichtCandidate, alpha: float) -> Series:
    """``f/(z f') - 1/(2 alpha)`` for ``0 < alpha < 1``."""
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    return w_func(f) + (1.0 - 1.0 / (2.0 * alpha))


def w_log_derivative(f: SchlichtCandidate) -> Series:
    """``z w'(z) / w(z)`` computed after cancelling the common factor
    ``z^n``, so the quotient is a genuine series despite ``w(0) = 0``."""
    w = w_func(f)
    cap = shift(w, -f.n)
    num = scale(cap, f.n) + shift(derivative(cap), 1)
    return div(num, cap)


def identity_a_residual(f: SchlichtCandidate, beta: complex, gamma: complex) -> float:
    """Max coefficient residual of ``lhs_a * (1 + w) - (beta - gamma z w')``."""
    w = w_func(f)
    left = mul(lhs_a(f, beta, gamma), w + 1.0)
    right = scale(shift(derivative(w), 1), -gamma) + beta
    return max_coeff_diff(left, right)


def identity_b_residual(f: SchlichtCandidate, beta: complex, gamma: complex) -> float:
    """Max coefficient residual of ``lhs_b * (1 + w) + (beta w + gamma (z w' + w))``."""
    w = w_func(f)
    left = mul(lhs_b(f, beta, gamma), w + 1.0)
    zwp = shift(derivative(w), 1)
    right = scale(w, beta) + scale(add(zwp, w), gamma)
    return max_coeff_diff(left, scale(right, -1.0))


def random_candidate(n: int, trunc_order: int, rng: np.random.Generator,
                     amp: float = 0.15, decay: float = 0.15) -> SchlichtCandidate:
    """Random class member with geometrically decaying tail coefficients.

    The decay keeps f', f/z, f/z + (f/z)' z and the capped w/z^n zero-free
    on the closed disk, so every quotient the identity sweeps take has a
    convergent series there and residuals stay at rounding level instead
    of being amplified through a pole.
    """
    arr = np.zeros(trunc_order + 1, dtype=np.complex128)
    arr[1] = 1.0
    count = trunc_order - n
    radii = amp * decay ** np.arange(count) * rng.uniform(0.5, 1.0, count)
    phases = rng.uniform(0.0, 2.0 * np.pi, count)
    arr[n + 1 :] = radii * np.exp(1j * phases)
    return SchlichtCandidate(n=n, series=Series(arr))


@dataclass(frozen=True)
class IdentitySweepResult:
    max_residual_a: float
    max_residual_b: float
    functions: int
    pairs: int
    trunc_order: int
    seed: int


def identity_sweep(ns=(1, 2, 3), per_n: int = 100, pairs: int = 5,
                   trunc_order: int = 48, seed: int = 20240801) -> IdentitySweepResult:
    """Randomized conformance sweep for both rewrite identities.

    Draws ``per_n`` random candidates for each class index and ``pairs``
    random (beta, gamma) pairs, returning the largest residual seen for
    each identity.
    """
    rng = np.random.default_rng(seed)
    bg = [
        (complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
         complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
        for _ in range(pairs)
    ]
    worst_a = 0.0
    worst_b = 0.0
    total = 0
    for n in ns:
        for _ in range(per_n):
            f = random_candidate(n, trunc_order, rng)
            total += 1
            for beta, gamma in bg:
                worst_a = max(worst_a, identity_a_residual(f, beta, gamma))
                worst_b = max(worst_b, identity_b_residual(f, beta, gamma))
    return IdentitySweepResult(
        max_residual_a=worst_a,
        max_residual_b=worst_b,
        functions=total,
        pairs=pairs,
        trunc_order=trunc_order,
        seed=seed,
    )
