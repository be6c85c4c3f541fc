"""Hypothesis bounds, admissibility checks and conclusion geometry.

Each criterion kind pairs a strict sup bound for one of the functionals
with a parameter constraint and a concluded disk for ``Q = f/(z f')``:

* ``LEMMA_A``:  |lhs_a| < |n rho gamma - beta| / (1 + rho)   needs Re(beta/gamma) < n rho,
  concludes |Q - 1| < rho.
* ``THM_A``:    |lhs_a| < |n gamma - beta| / 2               (alpha <= 1/2, Re(beta/gamma) < n)
  or |lhs_a| < |n gamma (1-alpha) - alpha beta|              (alpha >= 1/2, Re(beta/gamma) < n (1/alpha - 1)),
  concludes |Q - 1/(2 alpha)| < 1/(2 alpha).
* ``COR_A``:    THM_A after the substitution (beta, gamma) -> (1, -gamma) for real gamma.
* ``LEMMA_B``:  |lhs_b| < rho |beta + gamma (n+1)| / (1 + rho)  needs Re(beta/gamma) > -(n+1),
  concludes |Q - 1| < rho.
* ``THM_B``:    |lhs_b| < |beta + gamma (n+1)| / 2            (alpha <= 1/2)
  or |lhs_b| < (1-alpha) |beta + gamma (n+1)|                 (alpha >= 1/2), same constraint,
  same concluded disk as THM_A.
* ``MOCANU``:   hypothesis shape Re(mocanu functional) > 0; no modulus bound.

All admissibility inequalities are strict; a zero margin is inadmissible.
At alpha = 1/2 both branch formulas are evaluated and must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .functionals import FunctionalKind, ParameterError


class CriterionKind(Enum):
    LEMMA_A = "LEMMA_A"
    THM_A = "THM_A"
    COR_A = "COR_A"
    LEMMA_B = "LEMMA_B"
    THM_B = "THM_B"
    MOCANU = "MOCANU"


_ALPHA_KINDS = {CriterionKind.THM_A, CriterionKind.COR_A, CriterionKind.THM_B,
                CriterionKind.MOCANU}
_RHO_KINDS = {CriterionKind.LEMMA_A, CriterionKind.LEMMA_B}


@dataclass(frozen=True)
class CriterionParams:
    kind: CriterionKind
    n: int
    beta: complex = 1.0 + 0.0j
    gamma: complex = 1.0 + 0.0j
    alpha: float | None = None
    rho: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "gamma", complex(self.gamma))
        if self.n < 1:
            raise ParameterError(f"class index n must be >= 1, got {self.n}")
        if self.gamma == 0:
            raise ParameterError("gamma must be nonzero")
        if self.kind in _RHO_KINDS:
            if self.rho is None or not self.rho > 0:
                raise ParameterError(f"{self.kind.value} requires rho > 0")
        if self.kind in _ALPHA_KINDS:
            if self.alpha is None:
                raise ParameterError(f"{self.kind.value} requires alpha")
            if self.kind is not CriterionKind.MOCANU and not 0 < self.alpha < 1:
                raise ParameterError(
                    f"alpha must lie in (0, 1) for {self.kind.value}, got {self.alpha}"
                )
        if self.kind is CriterionKind.COR_A:
            if self.gamma.imag != 0:
                raise ParameterError("COR_A takes a real gamma")
            if self.beta != 1:
                raise ParameterError("COR_A fixes beta = 1; leave beta unset")

    @property
    def wide_alpha(self) -> bool:
        """True when a MOCANU check runs outside the (0,1) alpha range."""
        return (self.kind is CriterionKind.MOCANU and self.alpha is not None
                and not 0 < self.alpha < 1)


@dataclass(frozen=True)
class CriterionSpec:
    kind: CriterionKind
    lhs: FunctionalKind
    hypothesis_shape: str              # "modulus" or "positive_real"
    rhs_bound: float
    admissible: bool
    admissibility_margin: float | None
    conclusion_center: float
    conclusion_radius: float
    eff_beta: complex
    eff_gamma: complex
    alpha: float | None
    rho: float | None


def implied_rho(p: CriterionParams) -> float:
    """The disk radius the two-branch criteria run their lemma at:
    1 for alpha <= 1/2, ``1/alpha - 1`` for alpha >= 1/2."""
    if p.kind not in (CriterionKind.THM_A, CriterionKind.THM_B, CriterionKind.COR_A):
        raise ParameterError(f"implied_rho undefined for {p.kind.value}")
    if p.alpha <= 0.5:
        return 1.0
    return 1.0 / p.alpha - 1.0


def corollary_mapping(gamma_real: float) -> tuple[complex, complex]:
    """Parameters the corollary's statement substitutes into the theorem:
    beta = 1 and gamma negated."""
    if gamma_real == 0:
        raise ParameterError("corollary gamma must be nonzero")
    return 1.0 + 0.0j, complex(-gamma_real)


def _thm_a_branches(n: int, alpha: float, beta: complex,
                    gamma: complex) -> tuple[float | None, float | None]:
    low = 0.5 * abs(n * gamma - beta) if alpha <= 0.5 else None
    high = abs(n * gamma * (1.0 - alpha) - alpha * beta) if alpha >= 0.5 else None
    return low, high


def _thm_b_branches(n: int, alpha: float, beta: complex,
                    gamma: complex) -> tuple[float | None, float | None]:
    base = abs(beta + gamma * (n + 1))
    low = 0.5 * base if alpha <= 0.5 else None
    high = (1.0 - alpha) * base if alpha >= 0.5 else None
    return low, high


def branch_bounds(p: CriterionParams) -> tuple[float | None, float | None]:
    """The (alpha <= 1/2, alpha >= 1/2) branch bounds; both are populated
    only at alpha = 1/2 exactly."""
    if p.kind in (CriterionKind.THM_A, CriterionKind.COR_A):
        beta, gamma = (p.beta, p.gamma)
        if p.kind is CriterionKind.COR_A:
            beta, gamma = corollary_mapping(p.gamma.real)
        return _thm_a_branches(p.n, p.alpha, beta, gamma)
    if p.kind is CriterionKind.THM_B:
        return _thm_b_branches(p.n, p.alpha, p.beta, p.gamma)
    raise ParameterError(f"branch bounds undefined for {p.kind.value}")


def _merge_branches(low: float | None, high: float | None) -> float:
    if low is not None and high is not None:
        if not math.isclose(low, high, rel_tol=0.0, abs_tol=1e-12 * max(1.0, low)):
            raise RuntimeError(
                f"branch formulas disagree at alpha = 1/2: {low!r} vs {high!r}"
            )
        return low
    return low if low is not None else high


def build_spec(p: CriterionParams) -> CriterionSpec:
    """Bound, admissibility and conclusion geometry for one criterion."""
    ratio = p.beta / p.gamma
    if p.kind is CriterionKind.LEMMA_A:
        margin = p.n * p.rho - ratio.real
        return CriterionSpec(
            kind=p.kind,
            lhs=FunctionalKind.LHS_A,
            hypothesis_shape="modulus",
            rhs_bound=abs(p.n * p.rho * p.gamma - p.beta) / (1.0 + p.rho),
            admissible=margin > 0,
            admissibility_margin=margin,
            conclusion_center=1.0,
            conclusion_radius=p.rho,
            eff_beta=p.beta,
            eff_gamma=p.gamma,
            alpha=None,
            rho=p.rho,
        )

    if p.kind is CriterionKind.LEMMA_B:
        margin = ratio.real + (p.n + 1)
        return CriterionSpec(
            kind=p.kind,
            lhs=FunctionalKind.LHS_B,
            hypothesis_shape="modulus",
            rhs_bound=p.rho / (1.0 + p.rho) * abs(p.beta + p.gamma * (p.n + 1)),
            admissible=margin > 0,
            admissibility_margin=margin,
            conclusion_center=1.0,
            conclusion_radius=p.rho,
            eff_beta=p.beta,
            eff_gamma=p.gamma,
            alpha=None,
            rho=p.rho,
        )

    if p.kind in (CriterionKind.THM_A, CriterionKind.COR_A):
        eff_beta, eff_gamma = p.beta, p.gamma
        if p.kind is CriterionKind.COR_A:
            eff_beta, eff_gamma = corollary_mapping(p.gamma.real)
            ratio = eff_beta / eff_gamma
        bound = _merge_branches(*_thm_a_branches(p.n, p.alpha, eff_beta, eff_gamma))
        limit = float(p.n) if p.alpha <= 0.5 else p.n * (1.0 / p.alpha - 1.0)
        margin = limit - ratio.real
        radius = 1.0 / (2.0 * p.alpha)
        return CriterionSpec(
            kind=p.kind,
            lhs=FunctionalKind.LHS_A,
            hypothesis_shape="modulus",
            rhs_bound=bound,
            admissible=margin > 0,
            admissibility_margin=margin,
            conclusion_center=radius,
            conclusion_radius=radius,
            eff_beta=eff_beta,
            eff_gamma=eff_gamma,
            alpha=p.alpha,
            rho=implied_rho(p),
        )

    if p.kind is CriterionKind.THM_B:
        bound = _merge_branches(*_thm_b_branches(p.n, p.alpha, p.beta, p.gamma))
        margin = ratio.real + (p.n + 1)
        radius = 1.0 / (2.0 * p.alpha)
        return CriterionSpec(
            kind=p.kind,
            lhs=FunctionalKind.LHS_B,
            hypothesis_shape="modulus",
            rhs_bound=bound,
            admissible=margin > 0,
            admissibility_margin=margin,
            conclusion_center=radius,
            conclusion_radius=radius,
            eff_beta=p.beta,
            eff_gamma=p.gamma,
            alpha=p.alpha,
            rho=implied_rho(p),
        )

    # MOCANU: class-membership shape only, no modulus bound to certify.
    return CriterionSpec(
        kind=p.kind,
        lhs=FunctionalKind.MOCANU_Q,
        hypothesis_shape="positive_real",
        rhs_bound=0.0,
        admissible=True,
        admissibility_margin=None,
        conclusion_center=0.0,
        conclusion_radius=0.0,
        eff_beta=p.beta,
        eff_gamma=p.gamma,
        alpha=p.alpha,
        rho=None,
    )
