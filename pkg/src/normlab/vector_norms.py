"""Declarative vector norms on C^n.

A norm is described by a small immutable tree (:class:`Lp`, :class:`Scaled`,
:class:`MaxOf`, :class:`WeightedLp`, :class:`Extracted`) and evaluated by
:func:`vnorm_eval`.  Keeping the descriptors a closed datatype lets the
optimizers dispatch on structure and lets documents round-trip exactly.

:class:`Scaled` and :class:`MaxOf` are structural combinators: the family
(vector or matrix) is decided by the leaves they wrap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

import numpy as np

from .budget import OptBudget
from .core import RandomStream, as_vector, sample_vector
from .errors import DimensionMismatchError, SpecValidationError

if TYPE_CHECKING:  # matrix_norms imports this module; annotation only
    from .matrix_norms import MatrixNormSpec


@dataclass(frozen=True)
class Lp:
    """The l_p norm, 1 <= p <= inf."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p < 1.0:
            raise SpecValidationError(f"lp exponent must satisfy p >= 1, got {self.p}")
        object.__setattr__(self, "p", p)


@dataclass(frozen=True)
class WeightedLp:
    """l_p norm of the entrywise-weighted vector (w_i x_i)."""

    weights: tuple[float, ...]
    p: float

    def __post_init__(self):
        w = tuple(float(v) for v in self.weights)
        if not w or any(v <= 0 or not math.isfinite(v) for v in w):
            raise SpecValidationError("weights must be a nonempty tuple of positive reals")
        p = float(self.p)
        if math.isnan(p) or p < 1.0:
            raise SpecValidationError(f"lp exponent must satisfy p >= 1, got {self.p}")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "p", p)


@dataclass(frozen=True)
class Scaled:
    """gamma times an inner norm, gamma > 0."""

    gamma: float
    inner: "NormSpec"

    def __post_init__(self):
        g = float(self.gamma)
        if not math.isfinite(g) or g <= 0:
            raise SpecValidationError(f"scale gamma must be positive, got {self.gamma}")
        object.__setattr__(self, "gamma", g)


@dataclass(frozen=True)
class MaxOf:
    """Pointwise maximum of a nonempty list of norms."""

    parts: tuple["NormSpec", ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise SpecValidationError("maxof needs at least one inner norm")
        object.__setattr__(self, "parts", parts)


@dataclass(frozen=True)
class Extracted:
    """Vector norm recovered from a matrix norm N.

    role 2 evaluates N on the matrix whose every column is x (exact);
    role 1 evaluates sup{ N(C_{Ax}) : N(A) = 1 } by sphere maximization and
    is therefore a certified lower bound at the stored budget.
    """

    role: int
    source: "MatrixNormSpec"
    budget: OptBudget

    def __post_init__(self):
        if self.role not in (1, 2):
            raise SpecValidationError(f"extracted role must be 1 or 2, got {self.role}")


VectorNormSpec = Union[Lp, WeightedLp, Scaled, MaxOf, Extracted]

NormSpec = Union[VectorNormSpec, "MatrixNormSpec"]


def split_scale(spec):
    """Peel nested Scaled layers: returns (total gamma, core spec)."""
    gamma = 1.0
    while isinstance(spec, Scaled):
        gamma *= spec.gamma
        spec = spec.inner
    return gamma, spec


def _lp_of_moduli(m: np.ndarray, p: float) -> float:
    if m.size == 0:
        return 0.0
    if p == math.inf:
        return float(m.max())
    if p == 1.0:
        return float(m.sum())
    if p == 2.0:
        return float(np.sqrt(np.sum(m * m)))
    peak = float(m.max())
    if peak == 0.0:
        return 0.0
    # scale out the peak so m**p cannot overflow for large p
    return peak * float(np.sum((m / peak) ** p) ** (1.0 / p))


def vnorm_eval(spec: VectorNormSpec, x) -> float:
    """Evaluate a vector norm descriptor at x.

    Exact for every kind except Extracted role 1, which reports the lower
    bound produced by its stored optimization budget.
    """
    v = as_vector(x)
    if isinstance(spec, Lp):
        if spec.p == 2.0:
            return float(np.sqrt(np.vdot(v, v).real))
        return _lp_of_moduli(np.abs(v), spec.p)
    if isinstance(spec, WeightedLp):
        if len(spec.weights) != v.size:
            raise DimensionMismatchError(
                f"weighted norm has {len(spec.weights)} weights, vector has {v.size}"
            )
        return _lp_of_moduli(np.abs(v) * np.asarray(spec.weights), spec.p)
    if isinstance(spec, Scaled):
        return spec.gamma * vnorm_eval(spec.inner, v)
    if isinstance(spec, MaxOf):
        return max(vnorm_eval(part, v) for part in spec.parts)
    if isinstance(spec, Extracted):
        from . import extraction  # deferred: extraction sits above this module

        if spec.role == 2:
            return extraction.eval_role2(spec.source, spec.budget, v)
        return extraction.eval_role1(spec.source, spec.budget, v)
    raise SpecValidationError(f"not a vector norm descriptor: {spec!r}")


def _conjugate_exponent(p: float) -> float:
    if p == 1.0:
        return math.inf
    if p == math.inf:
        return 1.0
    return p / (p - 1.0)


def vnorm_dual_eval(spec: VectorNormSpec, v, budget: OptBudget | None = None) -> float:
    """max{ |<v, x>| : ||x||_spec = 1 } with <v, x> = sum conj(v_i) x_i.

    Closed form (the conjugate-exponent identity) for Lp and WeightedLp
    cores, sphere maximization otherwise; in the latter case the result is a
    lower bound at the given budget.
    """
    w = as_vector(v)
    gamma, core = split_scale(spec)
    if isinstance(core, Lp):
        return _lp_of_moduli(np.abs(w), _conjugate_exponent(core.p)) / gamma
    if isinstance(core, WeightedLp):
        if len(core.weights) != w.size:
            raise DimensionMismatchError(
                f"weighted norm has {len(core.weights)} weights, vector has {w.size}"
            )
        q = _conjugate_exponent(core.p)
        return _lp_of_moduli(np.abs(w) / np.asarray(core.weights), q) / gamma

    from . import sphere_opt  # deferred: sphere_opt imports this module

    n = w.size
    if budget is None:
        budget = OptBudget(multistarts=4, max_iters=200, samples=16 * n, seed=0)
    phases = np.where(np.abs(w) > 0, w / np.where(np.abs(w) > 0, np.abs(w), 1.0), 1.0)
    result = sphere_opt.maximize_on_sphere(
        lambda x: abs(np.vdot(w, x)),
        spec,
        n,
        budget,
        extra_seeds=[phases],
    )
    return result.value


def sum_functional_alpha(
    spec: VectorNormSpec, n: int, budget: OptBudget | None = None
) -> float:
    """max{ |sum_j y_j| : ||y||_spec = 1 }, the dual norm of the all-ones vector."""
    return vnorm_dual_eval(spec, np.ones(n, dtype=np.complex128), budget)


@dataclass
class DominanceReport:
    """Outcome of a pointwise norm-comparison search.

    ``dominated`` means no sampled or ascent-refined point had
    ||x||_a > ||x||_b (1 + 1e-9); it is high-confidence evidence, never a
    proof.  A counterexample, when present, is a hard certificate.
    """

    dominated: bool
    counterexample: np.ndarray | None
    samples_used: int
    max_ratio: float


_DOMINANCE_SLACK = 1e-9


def dominance_check(
    spec_a: VectorNormSpec,
    spec_b: VectorNormSpec,
    n: int,
    samples: int = 256,
    rng: RandomStream = RandomStream(0),
) -> DominanceReport:
    """Search for a point where ||x||_a exceeds ||x||_b.

    Probes the standard basis and phased all-ones vectors, samples complex
    Gaussian directions on the b-unit sphere, then refines the best ratio by
    sphere ascent.  Axis-aligned probes catch l_p dominance failures exactly.
    """
    g = rng.child(0).generator()
    points: list[np.ndarray] = []
    eye = np.eye(n, dtype=np.complex128)
    points.extend(eye[j] for j in range(n))
    points.append(np.ones(n, dtype=np.complex128))
    for _ in range(n):
        points.append(np.exp(2j * np.pi * g.random(n)))
    for _ in range(samples):
        points.append(sample_vector(g, n))

    best_ratio = 0.0
    best_point: np.ndarray | None = None
    used = 0
    for x in points:
        nb = vnorm_eval(spec_b, x)
        if nb < 1e-300:
            continue
        used += 1
        ratio = vnorm_eval(spec_a, x) / nb
        if ratio > best_ratio:
            best_ratio = ratio
            best_point = x / nb

    from . import sphere_opt  # deferred: sphere_opt imports this module

    budget = OptBudget(
        multistarts=3,
        max_iters=150,
        samples=max(8, min(32, samples)),
        step_init=0.5,
        tol=1e-9,
        seed=rng.child(1).derive_seed(),
    )
    refined = sphere_opt.maximize_on_sphere(
        lambda x: vnorm_eval(spec_a, x),
        spec_b,
        n,
        budget,
        extra_seeds=[] if best_point is None else [best_point],
    )
    used += refined.evaluations
    if refined.value > best_ratio:
        best_ratio = refined.value
        best_point = refined.witness

    dominated = best_ratio <= 1.0 + _DOMINANCE_SLACK
    counterexample = None
    if not dominated and best_point is not None:
        counterexample = best_point
    return DominanceReport(
        dominated=dominated,
        counterexample=counterexample,
        samples_used=used,
        max_ratio=best_ratio,
    )
