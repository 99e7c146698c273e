"""Maximize absolutely homogeneous objectives over norm unit spheres.

Exact dispatch where the sphere has usable extreme-point structure (l1
vertices, l2 with a euclidean-of-linear objective, single-entry matrices for
the entrywise-sum ball, phase matrices for the entrywise-max ball), and a
derivative-free multi-start hill climb everywhere else.  Ascent results are
honest lower bounds and are labeled as such.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

import numpy as np

from .budget import (
    EXACT_CLOSED_FORM,
    EXACT_VERTEX,
    LOWER_BOUND,
    ComputationResult,
    OptBudget,
    default_budget,
)
from .core import RandomStream, as_matrix, hermitian_top_eig, sample_vector
from .errors import HomogeneityError
from .vector_norms import Lp, WeightedLp, split_scale, vnorm_eval

_TINY = 1e-300
_GROWTH = 1.3
_DECAY = 0.7


def _check_homogeneity(objective, draw_point, g: np.random.Generator) -> int:
    """Probe objective(a x) = |a| objective(x) at 10 random (x, a) pairs."""
    for _ in range(10):
        x = draw_point(g)
        a = complex((0.3 + 2.7 * g.random()) * np.exp(2j * np.pi * g.random()))
        lhs = objective(a * x)
        rhs = abs(a) * objective(x)
        if abs(lhs - rhs) > 1e-8 * max(1.0, abs(rhs)):
            raise HomogeneityError(
                f"objective is not absolutely homogeneous: f(ax)={lhs!r} vs |a|f(x)={rhs!r}"
            )
    return 20


def _rank_starts(values: Sequence[float], k: int) -> list[int]:
    order = sorted(range(len(values)), key=lambda i: (-values[i], i))
    return order[:k]


def _climb(
    objective: Callable[[np.ndarray], float],
    domain_eval: Callable[[np.ndarray], float],
    pool: list[np.ndarray],
    budget: OptBudget,
    rng: RandomStream,
    draw_direction,
) -> tuple[float, np.ndarray, int]:
    """Multi-start hill climb over the sphere {domain_eval = 1}.

    Each sweep tries, per entry, small phase rotations and modulus scalings
    (lossless moves along the renormalized sphere, which additive steps are
    not near polydisc corners) plus two coordinate-free random directions.
    The step grows 1.3x after an improving sweep and decays 0.7x after a
    fully failed one; ``budget.max_iters`` caps candidate evaluations per
    start.  Ties across starts resolve to the lowest start index, keeping
    results schedule-independent.
    """
    evals = 0
    seeds: list[tuple[float, np.ndarray]] = []
    for raw in pool:
        dn = domain_eval(raw)
        if not math.isfinite(dn) or dn < _TINY:
            continue
        point = raw / dn
        seeds.append((objective(point), point))
        evals += 1
    if not seeds:
        raise HomogeneityError("no seed lies on the domain sphere")

    values = [v for v, _ in seeds]
    best_val, best_x = -math.inf, None
    for idx in _rank_starts(values, budget.multistarts):
        val, x = seeds[idx]
        g = rng.child(100 + idx).generator()
        step = budget.step_init
        used = 0

        def consider(cand) -> bool:
            nonlocal x, val, evals, used
            dn = domain_eval(cand)
            if not math.isfinite(dn) or dn < _TINY:
                return False
            cand = cand / dn
            cval = objective(cand)
            evals += 1
            used += 1
            if cval > val * (1.0 + 1e-15):
                x, val = cand, cval
                return True
            return False

        while step >= budget.tol and used < budget.max_iters:
            improved = False
            scale = float(np.sqrt(np.vdot(x, x).real))
            inject = step * scale / math.sqrt(x.size)
            phase = complex(math.cos(step), math.sin(step))
            for k in range(x.size):
                if used >= budget.max_iters:
                    break
                entry = x.flat[k]
                if entry == 0:
                    moves = (inject, -inject, 1j * inject, -1j * inject)
                else:
                    moves = (
                        entry * phase,
                        entry * phase.conjugate(),
                        entry * (1.0 + step),
                        entry / (1.0 + step),
                    )
                for new_entry in moves:
                    if used >= budget.max_iters:
                        break
                    cand = x.copy()
                    cand.flat[k] = new_entry
                    improved |= consider(cand)
            for _ in range(2):
                if used >= budget.max_iters:
                    break
                d = draw_direction(g, x.shape)
                d = d / np.sqrt(np.vdot(d, d).real)
                offset = step * scale * d
                improved |= consider(x + offset)
                if used < budget.max_iters:
                    improved |= consider(x - offset)
            if improved:
                step *= _GROWTH
            else:
                step *= _DECAY
        if val > best_val:
            best_val, best_x = val, x

    # include seeds that were not ascended from
    for val, x in seeds:
        if val > best_val:
            best_val, best_x = val, x
    return best_val, best_x, evals


def _complex_direction(g: np.random.Generator, shape) -> np.ndarray:
    return g.standard_normal(shape) + 1j * g.standard_normal(shape)


def _finish(objective, domain_eval, witness, exactness, evals) -> ComputationResult:
    dn = domain_eval(witness)
    w = witness / dn
    return ComputationResult(
        value=float(objective(w)), witness=w, exactness=exactness, evaluations=evals
    )


def maximize_on_sphere(
    objective: Callable[[np.ndarray], float],
    domain_norm,
    n: int,
    budget: OptBudget | None = None,
    *,
    linear_l2: np.ndarray | None = None,
    objective_convex: bool = True,
    extra_seeds: Iterable[np.ndarray] = (),
    use_dispatch: bool = True,
) -> ComputationResult:
    """max{ objective(x) : ||x||_domain = 1 } over x in C^n.

    ``linear_l2``, when given, declares objective(x) = l2(linear_l2 @ x) and
    unlocks the closed form on l2-type domains.  ``objective_convex`` is a
    caller assertion enabling vertex dispatch on l1-type domains.  Absolute
    homogeneity of the objective is probed and violations raise.
    """
    if budget is None:
        budget = default_budget(n)
    rng = RandomStream(budget.seed)
    evals = _check_homogeneity(
        objective, lambda g: sample_vector(g, n), rng.child(777).generator()
    )

    _, core = split_scale(domain_norm)
    eye = np.eye(n, dtype=np.complex128)

    if use_dispatch and objective_convex and isinstance(core, Lp) and core.p == 1.0:
        # extreme points of the complex l1 ball are phase multiples of e_j
        vals = [objective(eye[j]) for j in range(n)]
        evals += n
        j = max(range(n), key=lambda i: (vals[i], -i))
        return _finish(
            objective, lambda x: vnorm_eval(domain_norm, x), eye[j], EXACT_VERTEX, evals
        )
    if (
        use_dispatch
        and objective_convex
        and isinstance(core, WeightedLp)
        and core.p == 1.0
        and len(core.weights) == n
    ):
        verts = [eye[j] / core.weights[j] for j in range(n)]
        vals = [objective(v) for v in verts]
        evals += n
        j = max(range(n), key=lambda i: (vals[i], -i))
        return _finish(
            objective, lambda x: vnorm_eval(domain_norm, x), verts[j], EXACT_VERTEX, evals
        )
    if use_dispatch and linear_l2 is not None and isinstance(core, Lp) and core.p == 2.0:
        m = as_matrix(linear_l2)
        res = hermitian_top_eig(m.conj().T @ m, tol=1e-10, max_iter=10000, rng=rng.child(1))
        return _finish(
            objective,
            lambda x: vnorm_eval(domain_norm, x),
            res.eigenvector,
            EXACT_CLOSED_FORM,
            evals + 1,
        )

    g = rng.child(0).generator()
    pool: list[np.ndarray] = [eye[j] for j in range(n)]
    pool.append(np.ones(n, dtype=np.complex128))
    for _ in range(n):
        pool.append(np.exp(2j * np.pi * g.random(n)))
    for seed in extra_seeds:
        s = np.asarray(seed, dtype=np.complex128)
        if s.shape == (n,) and np.any(s != 0):
            pool.append(s)
    for _ in range(budget.samples):
        pool.append(sample_vector(g, n))

    val, x, climbed = _climb(
        objective,
        lambda v: vnorm_eval(domain_norm, v),
        pool,
        budget,
        rng,
        _complex_direction,
    )
    return _finish(
        objective, lambda v: vnorm_eval(domain_norm, v), x, LOWER_BOUND, evals + climbed
    )


def _single_entry_matrices(n: int) -> list[np.ndarray]:
    out = []
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=np.complex128)
            e[i, j] = 1.0
            out.append(e)
    return out


def _phase_climb(objective, gamma, n, budget, rng, torus_starts) -> tuple[float, np.ndarray, int]:
    """Hill climb over phase matrices exp(i theta)/gamma.

    Valid search space for convex objectives: the extreme points of the
    entrywise-max ball are exactly the unimodular matrices.  Sweeps move one
    phase at a time plus two random joint rotations, shrinking the step only
    after a fully failed sweep.
    """
    evals = 0
    g = rng.child(0).generator()
    thetas: list[np.ndarray] = [np.zeros((n, n))]
    thetas.extend(torus_starts)
    for _ in range(max(2, budget.samples // 2)):
        thetas.append(2.0 * np.pi * g.random((n, n)))

    seeds = []
    for th in thetas:
        point = np.exp(1j * th) / gamma
        seeds.append((objective(point), th))
        evals += 1
    values = [v for v, _ in seeds]

    best_val, best_th = -math.inf, None
    for idx in _rank_starts(values, budget.multistarts):
        val, th = seeds[idx]
        gen = rng.child(200 + idx).generator()
        step = budget.step_init
        used = 0

        def consider(cand_th) -> bool:
            nonlocal th, val, evals, used
            cval = objective(np.exp(1j * cand_th) / gamma)
            evals += 1
            used += 1
            if cval > val * (1.0 + 1e-15):
                th, val = cand_th, cval
                return True
            return False

        while step >= budget.tol and used < budget.max_iters:
            improved = False
            for k in range(n * n):
                if used >= budget.max_iters:
                    break
                for delta in (step, -step):
                    cand = th.copy()
                    cand.flat[k] += delta
                    improved |= consider(cand)
                    if used >= budget.max_iters:
                        break
            for _ in range(2):
                if used >= budget.max_iters:
                    break
                d = gen.standard_normal((n, n))
                d = d / np.linalg.norm(d.ravel())
                improved |= consider(th + step * np.pi * d)
                if used < budget.max_iters:
                    improved |= consider(th - step * np.pi * d)
            if improved:
                step *= _GROWTH
            else:
                step *= _DECAY
        if val > best_val:
            best_val, best_th = val, th
    for val, th in seeds:
        if val > best_val:
            best_val, best_th = val, th
    return best_val, np.exp(1j * best_th) / gamma, evals


def maximize_on_matrix_sphere(
    objective: Callable[[np.ndarray], float],
    domain_norm,
    n: int,
    budget: OptBudget | None = None,
    *,
    objective_convex: bool = True,
    extra_seeds: Iterable[np.ndarray] = (),
    use_dispatch: bool = True,
) -> ComputationResult:
    """max{ objective(A) : ||A||_domain = 1 } over A in M_n.

    Seeds include the identity, all single-entry matrices, the all-ones
    matrix and any caller-supplied points.  Entrywise-sum domains dispatch
    exactly to single-entry vertices for convex objectives; entrywise-max
    domains climb over phase matrices; everything else uses the generic
    renormalized ascent and is a lower bound.
    """
    from .matrix_norms import EntrywiseMax, EntrywiseSum, mnorm_eval

    if budget is None:
        budget = default_budget(n)
    rng = RandomStream(budget.seed)

    def draw_matrix(g):
        return (g.standard_normal((n, n)) + 1j * g.standard_normal((n, n))) / np.sqrt(2.0)

    evals = _check_homogeneity(objective, draw_matrix, rng.child(777).generator())

    gamma, core = split_scale(domain_norm)
    domain_eval = lambda a: mnorm_eval(domain_norm, a)

    if use_dispatch and objective_convex and isinstance(core, EntrywiseSum):
        verts = _single_entry_matrices(n)
        vals = [objective(v / gamma) for v in verts]
        evals += len(verts)
        j = max(range(len(verts)), key=lambda i: (vals[i], -i))
        return _finish(objective, domain_eval, verts[j], EXACT_VERTEX, evals)

    pool: list[np.ndarray] = [np.eye(n, dtype=np.complex128)]
    pool.extend(_single_entry_matrices(n))
    pool.append(np.ones((n, n), dtype=np.complex128))
    extras: list[np.ndarray] = []
    for seed in extra_seeds:
        s = np.asarray(seed, dtype=np.complex128)
        if s.shape == (n, n) and np.any(s != 0):
            extras.append(s)
    pool.extend(extras)

    if use_dispatch and objective_convex and isinstance(core, EntrywiseMax):
        torus_starts = [
            np.angle(s) for s in extras if np.all(np.abs(s) > 1e-12)
        ]
        val, point, climbed = _phase_climb(
            objective, gamma, n, budget, rng, torus_starts
        )
        evals += climbed
        # plain seeds cannot beat the torus for convex objectives, but keep
        # the monotone-improvement contract explicit
        for raw in pool:
            dn = domain_eval(raw)
            if dn < _TINY:
                continue
            cand = raw / dn
            cval = objective(cand)
            evals += 1
            if cval > val:
                val, point = cval, cand
        return _finish(objective, domain_eval, point, LOWER_BOUND, evals)

    g = rng.child(0).generator()
    for _ in range(budget.samples):
        pool.append(draw_matrix(g))

    val, x, climbed = _climb(objective, domain_eval, pool, budget, rng, _complex_direction)
    return _finish(objective, domain_eval, x, LOWER_BOUND, evals + climbed)
