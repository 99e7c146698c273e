"""Complex vectors and matrices, top eigenpairs, and seeded randomness.

Vectors and matrices are plain ``numpy`` arrays with dtype ``complex128``;
the helpers here validate shapes and keep every random draw reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NonConvergenceError


def as_vector(x) -> np.ndarray:
    """Coerce to a 1-d complex vector of dimension >= 1."""
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.size < 1:
        raise DimensionMismatchError(f"expected a 1-d vector, got shape {v.shape}")
    return v


def as_matrix(a) -> np.ndarray:
    """Coerce to a square 2-d complex matrix of dimension >= 1."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return m


def mat_apply(a, x) -> np.ndarray:
    """Matrix-vector product with dimension checking."""
    m = as_matrix(a)
    v = as_vector(x)
    if m.shape[1] != v.shape[0]:
        raise DimensionMismatchError(
            f"cannot apply {m.shape} matrix to length-{v.shape[0]} vector"
        )
    return m @ v


@dataclass(frozen=True)
class RandomStream:
    """Deterministic random source addressed by (seed, path).

    Identical (seed, path) pairs produce identical draws on every platform.
    Concurrent tasks must never share one stream; derive a child per task
    with :meth:`child` instead.
    """

    seed: int
    path: tuple[int, ...] = ()

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        seq = np.random.SeedSequence(self.seed, spawn_key=self.path)
        return np.random.Generator(np.random.PCG64(seq))

    def child(self, index: int) -> "RandomStream":
        """Independent substream number ``index``."""
        return RandomStream(self.seed, self.path + (int(index),))

    def derive_seed(self) -> int:
        """64-bit integer usable as the seed of a nested budget."""
        seq = np.random.SeedSequence(self.seed, spawn_key=self.path)
        return int(seq.generate_state(1, np.uint64)[0])


def sample_vector(g: np.random.Generator, n: int) -> np.ndarray:
    """Standard complex Gaussian vector."""
    return (g.standard_normal(n) + 1j * g.standard_normal(n)) / np.sqrt(2.0)


def sample_matrix(g: np.random.Generator, n: int) -> np.ndarray:
    """Matrix with independent standard complex Gaussian entries."""
    return (g.standard_normal((n, n)) + 1j * g.standard_normal((n, n))) / np.sqrt(2.0)


@dataclass
class EigResult:
    """Largest eigenpair of a Hermitian PSD matrix.

    ``residual`` is ||H v - lambda v||_2 at the returned pair and is at most
    the configured tolerance whenever the solver reports success.
    """

    eigenvalue: float
    eigenvector: np.ndarray
    iterations: int
    residual: float


_HERMITIAN_TOL = 1e-12

_START_CACHE: dict = {}


def _start_vector(rng: RandomStream, n: int) -> np.ndarray:
    """Deterministic unit start vector for (stream, n); cached, never mutated."""
    key = (rng.seed, rng.path, n)
    v = _START_CACHE.get(key)
    if v is None:
        g = rng.generator()
        v = sample_vector(g, n)
        v = v / np.sqrt(np.vdot(v, v).real)
        _START_CACHE[key] = v
    return v


def _squared_power_boost(m: np.ndarray, v: np.ndarray, tol: float, max_squarings: int):
    """Project v onto the top eigenspace by repeated squaring of m.

    Squaring doubles the contraction exponent per matrix product, so
    clustered top eigenvalues (where the plain vector iteration contracts at
    a rate near one) resolve in O(log) products.  Exits as soon as the
    boosted vector meets the tolerance.
    """
    norm_m = np.sqrt(np.vdot(m, m).real)
    if norm_m == 0.0:
        return v, 0.0, np.inf, 0
    s = m / norm_m
    best_v, best_lam, best_res = v, 0.0, np.inf
    steps = 0
    checkpoints = {2, 3, 4, 6, 8, 11, 16, 23, 32, 45, 64}
    for k in range(1, max_squarings + 1):
        s = s @ s
        norm_s = np.sqrt(np.vdot(s, s).real)
        if norm_s == 0.0:
            break
        s = s / norm_s
        steps = k
        if k in checkpoints or k == max_squarings:
            u = s @ v
            norm_u = np.sqrt(np.vdot(u, u).real)
            if norm_u < 1e-200:
                # v is orthogonal to the top eigenspace: use the heaviest column
                j = int(np.argmax(np.abs(s).sum(axis=0)))
                u = s[:, j]
                norm_u = np.sqrt(np.vdot(u, u).real)
                if norm_u == 0.0:
                    break
            u = u / norm_u
            w = m @ u
            lam = float(np.vdot(u, w).real)
            r = w - lam * u
            res = float(np.sqrt(np.vdot(r, r).real))
            if res < best_res:
                best_v, best_lam, best_res = u, lam, res
            if res <= tol * max(1.0, abs(lam)):
                break
    return best_v, best_lam, best_res, steps


_PLAIN_PHASE = 4


def hermitian_top_eig(
    h,
    tol: float = 1e-10,
    max_iter: int = 10000,
    rng: RandomStream = RandomStream(0),
) -> EigResult:
    """Largest eigenvalue of a Hermitian PSD matrix by power iteration.

    The caller supplies H = A*A (or any Hermitian PSD matrix).  Convergence
    is declared when the residual drops below ``tol * max(1, lambda)``; the
    run is deterministic for a fixed ``rng``.  A short plain phase catches
    the easy spectra; after it the iteration continues on repeatedly squared
    matrices, whose contraction is insensitive to the spectral gap.

    Raises :class:`NonConvergenceError` once ``max_iter`` total steps are
    spent, and rejects matrices whose Hermitian deviation exceeds 1e-12
    relative.
    """
    m = as_matrix(h)
    n = m.shape[0]
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    deviation = float(np.max(np.abs(m - m.conj().T)))
    if deviation > _HERMITIAN_TOL * max(1.0, scale):
        raise DimensionMismatchError(
            f"matrix is not Hermitian: deviation {deviation:.3e}"
        )
    if scale == 0.0:
        return EigResult(0.0, _start_vector(rng, n), 1, 0.0)
    m = (m + m.conj().T) / 2.0

    v = _start_vector(rng, n)
    lam = 0.0
    residual = np.inf
    it = 0
    restarts = 0
    while it < min(_PLAIN_PHASE, max_iter):
        it += 1
        w = m @ v
        lam = float(np.vdot(v, w).real)
        r = w - lam * v
        residual = float(np.sqrt(np.vdot(r, r).real))
        if residual <= tol * max(1.0, abs(lam)):
            return EigResult(max(lam, 0.0), v, it, residual)
        norm_w = float(np.sqrt(np.vdot(w, w).real))
        if norm_w == 0.0:
            # v landed in the kernel; restart from a fresh direction
            if restarts >= 3:
                break
            restarts += 1
            v = sample_vector(rng.child(restarts).generator(), n)
            v = v / np.sqrt(np.vdot(v, v).real)
            continue
        v = w / norm_w

    bv, blam, bres, steps = _squared_power_boost(
        m, v, tol, max_squarings=min(64, max_iter - it)
    )
    it += steps
    if bres <= tol * max(1.0, abs(blam)):
        return EigResult(max(blam, 0.0), bv, it, bres)
    if bres < residual:
        v, lam, residual = bv, blam, bres

    while it < max_iter:
        it += 1
        w = m @ v
        lam = float(np.vdot(v, w).real)
        r = w - lam * v
        residual = float(np.sqrt(np.vdot(r, r).real))
        if residual <= tol * max(1.0, abs(lam)):
            return EigResult(max(lam, 0.0), v, it, residual)
        norm_w = float(np.sqrt(np.vdot(w, w).real))
        if norm_w == 0.0:
            break
        v = w / norm_w
    raise NonConvergenceError(
        f"power iteration did not converge in {max_iter} iterations "
        f"(residual {residual:.3e})",
        residual=residual,
        iterations=it,
    )
