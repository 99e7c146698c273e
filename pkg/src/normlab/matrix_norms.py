"""Declarative matrix norms on M_n with closed-form evaluation.

The catalog covers the entrywise sum and max, the maximum column and row
sums, the spectral norm, and generalized induced norms built from two vector
norms.  ``Scaled`` and ``MaxOf`` from :mod:`normlab.vector_norms` compose
matrix norms the same way they compose vector norms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .budget import OptBudget
from .core import RandomStream, as_matrix, hermitian_top_eig
from .errors import SpecValidationError
from .vector_norms import MaxOf, Scaled, VectorNormSpec, dominance_check


@dataclass(frozen=True)
class EntrywiseSum:
    """sum_ij |a_ij| (an algebra norm)."""


@dataclass(frozen=True)
class EntrywiseMax:
    """max_ij |a_ij| (not an algebra norm)."""


@dataclass(frozen=True)
class MaxColSum:
    """max_j sum_i |a_ij|, the l1-induced operator norm."""


@dataclass(frozen=True)
class MaxRowSum:
    """max_i sum_j |a_ij|, the linf-induced operator norm."""


@dataclass(frozen=True)
class Spectral:
    """sqrt of the largest eigenvalue of A*A, the l2-induced operator norm."""


@dataclass(frozen=True)
class GInd:
    """Generalized induced norm max{ ||Ax||_norm2 : ||x||_norm1 = 1 }."""

    norm1: VectorNormSpec
    norm2: VectorNormSpec


MatrixNormSpec = Union[
    EntrywiseSum, EntrywiseMax, MaxColSum, MaxRowSum, Spectral, GInd, Scaled, MaxOf
]

# fixed stream so spectral values do not depend on the caller's budget seed
_SPECTRAL_RNG = RandomStream(0x5EED0E16)


def mnorm_eval(
    spec: MatrixNormSpec,
    a,
    budget: OptBudget | None = None,
    *,
    eig_max_iter: int = 10000,
) -> float:
    """Evaluate a matrix norm descriptor at A.

    Closed forms throughout the catalog; Spectral runs power iteration on
    A*A to residual 1e-10; GInd delegates to the g-ind engine and reports
    that engine's (possibly lower-bound) value at ``budget``.
    """
    m = as_matrix(a)
    if isinstance(spec, EntrywiseSum):
        return float(np.abs(m).sum())
    if isinstance(spec, EntrywiseMax):
        return float(np.abs(m).max())
    if isinstance(spec, MaxColSum):
        return float(np.abs(m).sum(axis=0).max())
    if isinstance(spec, MaxRowSum):
        return float(np.abs(m).sum(axis=1).max())
    if isinstance(spec, Spectral):
        h = m.conj().T @ m
        res = hermitian_top_eig(h, tol=1e-10, max_iter=eig_max_iter, rng=_SPECTRAL_RNG)
        return float(np.sqrt(max(res.eigenvalue, 0.0)))
    if isinstance(spec, Scaled):
        return spec.gamma * mnorm_eval(spec.inner, m, budget, eig_max_iter=eig_max_iter)
    if isinstance(spec, MaxOf):
        return max(
            mnorm_eval(part, m, budget, eig_max_iter=eig_max_iter)
            for part in spec.parts
        )
    if isinstance(spec, GInd):
        from .gind import GIndPair, gind_eval

        return gind_eval(GIndPair(spec.norm1, spec.norm2), m, budget).value
    raise SpecValidationError(f"not a matrix norm descriptor: {spec!r}")


KNOWN_YES = "known_yes"
KNOWN_NO = "known_no"
UNKNOWN = "unknown"


def mnorm_is_algebra_candidate(spec: MatrixNormSpec) -> str:
    """Classify whether the norm is submultiplicative.

    Catalog norms carry a known verdict.  A GInd norm is classified through
    the dominance criterion (submultiplicative iff norm1 <= norm2 pointwise)
    checked by sampling at n = 2 and 3, so its "yes" is high-confidence
    rather than proven; inconclusive sampling yields ``unknown``.
    """
    if isinstance(spec, (EntrywiseSum, MaxColSum, MaxRowSum, Spectral)):
        return KNOWN_YES
    if isinstance(spec, EntrywiseMax):
        return KNOWN_NO
    if isinstance(spec, MaxOf):
        verdicts = {mnorm_is_algebra_candidate(p) for p in spec.parts}
        # a pointwise max of algebra norms is again an algebra norm
        return KNOWN_YES if verdicts == {KNOWN_YES} else UNKNOWN
    if isinstance(spec, Scaled):
        if spec.gamma >= 1.0 and mnorm_is_algebra_candidate(spec.inner) == KNOWN_YES:
            return KNOWN_YES
        return UNKNOWN
    if isinstance(spec, GInd):
        verdict = UNKNOWN
        for n in (2, 3):
            report = dominance_check(
                spec.norm1, spec.norm2, n, samples=192, rng=RandomStream(0xD011, (n,))
            )
            if not report.dominated:
                return KNOWN_NO
            if report.max_ratio > 1.0 + 1e-12:
                return UNKNOWN  # inside the tolerance band: cannot call it
            verdict = KNOWN_YES
        return verdict
    return UNKNOWN
