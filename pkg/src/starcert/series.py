"""Truncated power series over complex coefficients.

A :class:`Series` holds the coefficients ``c0..cN`` of a polynomial
surrogate for a function analytic on the unit disk; ``N`` is the
truncation order.  Every operation reports only an order whose
coefficients are fully determined by its inputs: multiplication
truncates to the shorter factor, differentiation drops one order,
multiplying by ``z`` gains one.  Fractional powers of ``z`` never
materialize; :func:`integrate_offset` factors the ``z^c`` part out
symbolically, and :func:`pow_unit`, :func:`exp_unit`, :func:`log_unit`
stay on the principal branch anchored at the unit constant term.

Series values are immutable; all functions here are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_TRUNC_ORDER = 128

# Relative floor for "unit" constant terms (division, logarithms, powers).
UNIT_TOL = 1e-12
# Minimum |c + k| accepted by the shifted integral before a retained
# coefficient would be amplified past double-precision meaningfulness.
RESONANCE_TOL = 1e-8
# Coefficients below this relative level count as zero in the tail
# heuristic; they are rounding dust, not information about growth.
TAIL_DUST = 1e-14


class SeriesError(ValueError):
    """Base class for series construction and arithmetic failures."""


class NonFiniteCoefficientError(SeriesError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"non-finite coefficient at index {index}")


class NonUnitDivisorError(SeriesError):
    """Divisor constant term is (numerically) zero."""


class ResonantExponentError(SeriesError):
    def __init__(self, k: int, offset: complex):
        self.k = k
        self.offset = offset
        super().__init__(
            f"resonant exponent at k={k}: |c + k| = {abs(offset + k):.3e} "
            f"for c = {offset}"
        )


class EvaluationDomainError(SeriesError):
    """Evaluation point outside the closed unit disk."""


@dataclass(frozen=True, eq=False)
class Series:
    """Coefficients ``c0..cN`` of a power series truncated at order N."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise SeriesError("coefficients must form a non-empty 1-d sequence")
        finite = np.isfinite(arr)
        if not finite.all():
            raise NonFiniteCoefficientError(int(np.argmin(finite)))
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def trunc_order(self) -> int:
        return self.coeffs.size - 1

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:4])
        tail = ", ..." if self.coeffs.size > 4 else ""
        return f"Series(order={self.trunc_order}, [{head}{tail}])"

    def __add__(self, other):
        if isinstance(other, Series):
            return add(self, other)
        return _add_scalar(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Series):
            return add(self, neg(other))
        return _add_scalar(self, -other)

    def __rsub__(self, other):
        return _add_scalar(neg(self), other)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return div(self, other)
        return scale(self, 1.0 / complex(other))


def make_series(coeffs, trunc_order: int | None = None) -> Series:
    """Build a Series from ``c0..cN``, verifying length and finiteness."""
    arr = np.asarray(coeffs, dtype=np.complex128)
    if trunc_order is not None and arr.size != trunc_order + 1:
        raise SeriesError(
            f"expected {trunc_order + 1} coefficients for truncation order "
            f"{trunc_order}, got {arr.size}"
        )
    return Series(arr)


def zero_series(trunc_order: int) -> Series:
    return Series(np.zeros(trunc_order + 1, dtype=np.complex128))


def constant(value: complex, trunc_order: int) -> Series:
    arr = np.zeros(trunc_order + 1, dtype=np.complex128)
    arr[0] = value
    return Series(arr)


def monomial(coeff: complex, power: int, trunc_order: int) -> Series:
    if not 0 <= power <= trunc_order:
        raise SeriesError(f"power {power} outside retained orders 0..{trunc_order}")
    arr = np.zeros(trunc_order + 1, dtype=np.complex128)
    arr[power] = coeff
    return Series(arr)


def add(a: Series, b: Series) -> Series:
    m = min(a.trunc_order, b.trunc_order)
    return Series(a.coeffs[: m + 1] + b.coeffs[: m + 1])


def _add_scalar(a: Series, s) -> Series:
    arr = a.coeffs.copy()
    arr[0] += complex(s)
    return Series(arr)


def neg(a: Series) -> Series:
    return Series(-a.coeffs)


def scale(a: Series, s) -> Series:
    return Series(a.coeffs * complex(s))


def mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at the smaller input order."""
    m = min(a.trunc_order, b.trunc_order)
    prod = np.convolve(a.coeffs[: m + 1], b.coeffs[: m + 1])[: m + 1]
    return Series(prod)


def shift(a: Series, k: int) -> Series:
    """Multiply by ``z^k``.  Negative ``k`` divides, requiring the dropped
    leading coefficients to vanish."""
    if k == 0:
        return a
    if k > 0:
        arr = np.concatenate([np.zeros(k, dtype=np.complex128), a.coeffs])
        return Series(arr)
    k = -k
    if k > a.trunc_order:
        raise SeriesError(f"cannot divide by z^{k}: order {a.trunc_order} too small")
    scale_ref = max(1.0, float(np.max(np.abs(a.coeffs))))
    head = np.abs(a.coeffs[:k])
    if head.size and head.max() > UNIT_TOL * scale_ref:
        raise SeriesError(
            f"cannot divide by z^{k}: leading coefficient "
            f"{a.coeffs[int(np.argmax(head))]} is not zero"
        )
    return Series(a.coeffs[k:])


def div(a: Series, b: Series) -> Series:
    """Series quotient ``q`` with ``mul(q, b) == a`` to truncation.

    Requires a unit divisor: ``|b0|`` must clear ``UNIT_TOL`` relative to
    the largest retained coefficient of ``b``.
    """
    m = min(a.trunc_order, b.trunc_order)
    bc = b.coeffs[: m + 1]
    b0 = bc[0]
    if abs(b0) < UNIT_TOL * max(1.0, float(np.max(np.abs(bc)))):
        raise NonUnitDivisorError(
            f"non-unit divisor: |b0| = {abs(b0):.3e} below tolerance"
        )
    q = np.zeros(m + 1, dtype=np.complex128)
    ac = a.coeffs
    q[0] = ac[0] / b0
    for k in range(1, m + 1):
        q[k] = (ac[k] - np.dot(bc[1 : k + 1], q[k - 1 :: -1])) / b0
    return Series(q)


def derivative(a: Series) -> Series:
    """Term-wise derivative; truncation order drops by one."""
    if a.trunc_order == 0:
        return zero_series(0)
    k = np.arange(1, a.trunc_order + 1)
    return Series(a.coeffs[1:] * k)


def exp_unit(a: Series) -> Series:
    """Exponential of a series with zero constant term.

    Solves E' = a'E with E(0) = 1, so the constant term of the result is
    exactly 1.
    """
    scale_ref = max(1.0, float(np.max(np.abs(a.coeffs))))
    if abs(a.coeffs[0]) > UNIT_TOL * scale_ref:
        raise SeriesError(
            f"exp_unit requires zero constant term, got {a.coeffs[0]}; "
            "factor the scalar exponential first"
        )
    n = a.trunc_order
    ka = a.coeffs * np.arange(n + 1)  # j * a_j
    e = np.zeros(n + 1, dtype=np.complex128)
    e[0] = 1.0
    for k in range(1, n + 1):
        e[k] = np.dot(ka[1 : k + 1], e[k - 1 :: -1]) / k
    return Series(e)


def log_unit(a: Series) -> Series:
    """Logarithm of a series with unit constant term (principal branch,
    zero constant term in the result)."""
    scale_ref = max(1.0, float(np.max(np.abs(a.coeffs))))
    if abs(a.coeffs[0] - 1.0) > UNIT_TOL * scale_ref:
        raise SeriesError(
            f"log_unit requires constant term 1, got {a.coeffs[0]}"
        )
    n = a.trunc_order
    ac = a.coeffs
    lg = np.zeros(n + 1, dtype=np.complex128)
    jl = np.zeros(n + 1, dtype=np.complex128)  # j * l_j, built alongside
    for k in range(1, n + 1):
        lg[k] = ac[k] - np.dot(jl[1:k], ac[k - 1 : 0 : -1]) / k
        jl[k] = k * lg[k]
    return Series(lg)


def pow_unit(a: Series, e: complex) -> Series:
    """Principal power ``a**e`` of a series with constant term 1, computed
    as exp(e * log(a))."""
    return exp_unit(scale(log_unit(a), e))


def integrate_offset(g: Series, c: complex, n: int) -> Series:
    """The shifted antiderivative: with ``F(z) = integral of t^(c-1) g(t)
    from 0 to z`` factored as ``F = z^c h(z)``, returns ``h``.

    ``h_k = g_k / (c + k)``; the symbolic ``z^c`` factor is the caller's to
    reattach (in the extremal constructions an outer power cancels it
    exactly).  ``n`` is the step of the sparsity pattern the caller built
    ``g`` with; it is validated but does not enter the formula.
    """
    if n < 1:
        raise SeriesError(f"structure step n must be >= 1, got {n}")
    gc = g.coeffs
    scale_ref = max(1.0, float(np.max(np.abs(gc))))
    if abs(gc[0]) < UNIT_TOL * scale_ref:
        raise SeriesError("integrate_offset requires a nonzero constant term")
    denom = complex(c) + np.arange(g.trunc_order + 1)
    near = np.abs(denom) < RESONANCE_TOL
    if near.any():
        for k in np.nonzero(near)[0]:
            if gc[k] != 0:
                raise ResonantExponentError(int(k), complex(c))
    h = np.zeros_like(gc)
    ok = ~near
    h[ok] = gc[ok] / denom[ok]
    return Series(h)


def evaluate(a: Series, z: complex) -> complex:
    """Horner evaluation of the truncated polynomial at ``|z| <= 1``."""
    z = complex(z)
    if abs(z) > 1.0 + 1e-12:
        raise EvaluationDomainError(f"|z| = {abs(z):.6f} exceeds the unit disk")
    acc = 0j
    for c in a.coeffs[::-1]:
        acc = acc * z + c
    return acc


def evaluate_grid(a: Series, z: np.ndarray) -> np.ndarray:
    """Vectorized Horner evaluation; no domain check (internal sampling)."""
    acc = np.full(z.shape, a.coeffs[-1])
    for c in a.coeffs[-2::-1]:
        acc *= z
        acc += c
    return acc


def tail_estimate(a: Series, r: float) -> float:
    """Heuristic bound for the discarded tail on ``|z| = r``.

    Extrapolates the top-quartile coefficient growth ratio ``q`` into a
    geometric tail ``|c_N| q r^(N+1) / (1 - q r)``.  Returns ``inf`` when
    ``q r >= 1`` (sampling at that radius should be refused).  Non-rigorous
    by construction; reports must flag it as such.
    """
    if not 0.0 <= r < 1.0:
        raise SeriesError(f"tail estimate requires 0 <= r < 1, got {r}")
    mags = np.abs(a.coeffs)
    top = float(mags.max())
    if top == 0.0:
        return 0.0
    floor = TAIL_DUST * top
    mags = np.where(mags <= floor, 0.0, mags)
    n = a.trunc_order
    if mags[n] == 0.0:
        return 0.0
    qstart = max(1, (3 * (n + 1)) // 4)
    prev = mags[qstart - 1 : n]
    curr = mags[qstart : n + 1]
    valid = prev > 0.0
    if not valid.any():
        return 0.0
    q = float(np.max(curr[valid] / prev[valid]))
    if q * r >= 1.0:
        return math.inf
    return float(mags[n] * q * r ** (n + 1) / (1.0 - q * r))


def max_coeff_diff(a: Series, b: Series) -> float:
    """Largest coefficient deviation over the common retained orders."""
    m = min(a.trunc_order, b.trunc_order)
    return float(np.max(np.abs(a.coeffs[: m + 1] - b.coeffs[: m + 1])))


@dataclass(frozen=True, eq=False)
class SchlichtCandidate:
    """A series certified to have the normalized class shape: ``c0 = 0``,
    ``c1 = 1`` and ``c2..cn = 0`` exactly, with enough retained orders for
    every downstream functional."""

    n: int
    series: Series
    snap_delta: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise SeriesError(f"class index n must be >= 1, got {self.n}")
        s = self.series
        if s.trunc_order < self.n + 2:
            raise SeriesError(
                f"truncation order {s.trunc_order} too small for n={self.n}; "
                f"need at least {self.n + 2}"
            )
        c = s.coeffs
        if c[0] != 0 or c[1] != 1:
            raise SeriesError(
                f"candidate must start z + ...: c0={c[0]}, c1={c[1]}"
            )
        if self.n >= 2 and np.any(c[2 : self.n + 1] != 0):
            raise SeriesError(
                f"coefficients a_2..a_{self.n} must vanish exactly for class "
                f"index n={self.n}"
            )

    @property
    def trunc_order(self) -> int:
        return self.series.trunc_order


def as_schlicht(n: int, s: Series, snap_tol: float = 1e-13) -> SchlichtCandidate:
    """Snap the analytically forced values ``c0 = 0, c1 = 1`` to exact
    floats (recording the pre-snap deviation) and certify the class shape."""
    c = s.coeffs.copy()
    delta = max(abs(c[0]), abs(c[1] - 1.0))
    if delta > snap_tol:
        raise SeriesError(
            f"normalization drift {delta:.3e} exceeds {snap_tol:.0e}; "
            "refusing to snap"
        )
    c[0] = 0.0
    c[1] = 1.0
    return SchlichtCandidate(n=n, series=Series(c), snap_delta=float(delta))


def schlicht_from_tail(n: int, tail, trunc_order: int) -> SchlichtCandidate:
    """Candidate from the coefficients ``a_2, a_3, ...`` (``a_1`` implied 1)."""
    tail = np.asarray(tail, dtype=np.complex128)
    if tail.size > trunc_order - 1:
        raise SeriesError(
            f"{tail.size} tail coefficients exceed truncation order "
            f"{trunc_order} (at most {trunc_order - 1} fit)"
        )
    arr = np.zeros(trunc_order + 1, dtype=np.complex128)
    arr[1] = 1.0
    arr[2 : 2 + tail.size] = tail
    return SchlichtCandidate(n=n, series=Series(arr))


def builtin_candidate(name: str, trunc_order: int = DEFAULT_TRUNC_ORDER,
                      n: int = 1) -> SchlichtCandidate:
    """Named reference functions: ``identity`` (z), ``koebe`` (z/(1-z)^2),
    ``halfplane`` (z/(1-z))."""
    arr = np.zeros(trunc_order + 1, dtype=np.complex128)
    arr[1] = 1.0
    if name == "identity":
        pass
    elif name == "koebe":
        if n != 1:
            raise SeriesError("koebe lies in the n=1 class only")
        arr[1:] = np.arange(1, trunc_order + 1)
    elif name == "halfplane":
        if n != 1:
            raise SeriesError("halfplane lies in the n=1 class only")
        arr[1:] = 1.0
    else:
        raise SeriesError(f"unknown builtin '{name}'")
    return SchlichtCandidate(n=n, series=Series(arr))
