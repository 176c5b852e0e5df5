"""Closed forms, fidelity-based lower bounds, continuity bounds, and a
stochastic convex-roof upper estimate for GqC.

The fidelity bounds share one shape.  With a witness ``phi`` whose largest
squared Schmidt coefficient is ``s1`` and whose Schmidt dimension is ``m``,

    Lambda = max(<phi|rho|phi> / (s1 m), 1/m)      (clipped to <= 1)
    value  = (m**(q-1) - 1) / (m**(q-2) (m-1)) * (Lambda - 1/m)

``value`` is the straight chord joining the end points of
``R(lam) = L(t(lam))``.  ``R`` leaves ``lam = 1/m`` with zero slope, so its
lower convex envelope sits strictly below that chord and ``value`` is not
a certified bound for every witness.  ``envelope_value`` evaluates the
envelope and is the certified quantity.  Both are reported.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from functools import lru_cache
from math import comb
from typing import Optional

import numpy as np
from scipy.linalg import expm

from .errors import DegenerateWitnessError, DomainError, ShapeError
from .measures import _check_q, gqc_pure
from .partitions import Bipartition, cardinality, enumerate_bipartitions
from .tensor import (
    SCHMIDT_RANK_THRESHOLD,
    DensityMatrix,
    StateVector,
    fidelity_with_pure,
    schmidt,
)


# --- closed forms for W_n and GHZ_n -------------------------------------------------


def closed_form_w(n: int, k: int, q: float) -> float:
    """``C_q`` of ``|W_n>`` across a cut with ``k`` parties on one side."""
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    return 1.0 - (k / n) ** q - ((n - k) / n) ** q


def closed_form_ghz(q: float) -> float:
    """``C_q`` of ``|GHZ_n>`` across any cut: ``1 - 2**(1-q)``."""
    return float(-np.expm1((1.0 - q) * np.log(2.0)))


def gqc_w_closed(n: int, q: float) -> float:
    """GqC of ``|W_n>`` from the per-cut closed form, accumulated in log space."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    log_sum = 0.0
    for k in range(1, (n - 1) // 2 + 1):
        log_sum += comb(n, k) * np.log(closed_form_w(n, k, q))
    if n % 2 == 0:
        log_sum += comb(n, n // 2) / 2 * np.log(closed_form_w(n, n // 2, q))
    return float(np.exp(log_sum / cardinality(n)))


def gqc_ghz_closed(n: int, q: float) -> float:
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    return closed_form_ghz(q)


# --- the R(lambda) curve and its convex envelope ------------------------------------


def chord_coefficient(m: int, q: float) -> float:
    """Slope ``(m**(q-1) - 1) / (m**(q-2) (m-1))`` of the end-point chord."""
    return (m ** (q - 1) - 1) / (m ** (q - 2) * (m - 1))


def _check_m(m: int) -> int:
    if int(m) != m or m < 2:
        raise DomainError(f"m must be an integer >= 2, got {m}")
    return int(m)


def r_curve(lam, m: int, q: float):
    """Minimal ``C_q`` among pure states with maximally-entangled fidelity ``lam``.

    ``R(lam) = 1 - t**q - (1-t)**q / (m-1)**(q-1)`` with
    ``t = (sqrt(lam) + sqrt((m-1)(1-lam)))**2 / m``.  Accepts scalars or arrays.
    """
    m = _check_m(m)
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    lam_arr = np.asarray(lam, dtype=float)
    if np.any(lam_arr < 1.0 / m - 1e-12) or np.any(lam_arr > 1.0 + 1e-12):
        raise DomainError(f"lambda must lie in [1/{m}, 1]")
    lam_arr = np.clip(lam_arr, 1.0 / m, 1.0)
    t = (np.sqrt(lam_arr) + np.sqrt((m - 1) * (1.0 - lam_arr))) ** 2 / m
    t = np.clip(t, 1.0 / m, 1.0)
    out = 1.0 - t**q - (1.0 - t) ** q / (m - 1) ** (q - 1)
    out = np.maximum(out, 0.0)
    return float(out) if np.ndim(out) == 0 else out


def _lower_hull(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Indices of the lower convex hull of points sorted by ``x``."""
    hull: list[int] = []
    for i in range(len(x)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return np.array(hull)


@dataclass
class HullDescription:
    """Lower convex envelope of ``R`` sampled on ``[1/m, 1]``."""

    m: int
    q: float
    grid_size: int
    vertex_lambdas: np.ndarray
    vertex_values: np.ndarray
    endpoint_slope: float
    first_segment_slope: float
    chord_slope: float
    max_gap_to_chord: float

    def matches_chord(self, tol: float = 1e-6) -> bool:
        """True when the envelope coincides with the end-point chord."""
        return abs(self.endpoint_slope - self.chord_slope) <= tol and self.max_gap_to_chord <= tol


def convex_hull_oracle(m: int, q: float, grid_size: int = 4097) -> HullDescription:
    """Sample ``R`` and build its lower convex envelope independently of any formula."""
    m = _check_m(m)
    if grid_size < 64:
        raise DomainError(f"grid_size must be >= 64, got {grid_size}")
    lam = np.linspace(1.0 / m, 1.0, grid_size)
    r = r_curve(lam, m, q)
    idx = _lower_hull(lam, r)
    envelope = np.interp(lam, lam[idx], r[idx])
    slope = chord_coefficient(m, q)
    chord = slope * (lam - 1.0 / m)
    return HullDescription(
        m=m,
        q=float(q),
        grid_size=grid_size,
        vertex_lambdas=lam[idx],
        vertex_values=r[idx],
        endpoint_slope=float((r[-1] - r[0]) / (lam[-1] - lam[0])),
        first_segment_slope=float((r[idx[1]] - r[idx[0]]) / (lam[idx[1]] - lam[idx[0]])),
        chord_slope=slope,
        max_gap_to_chord=float(np.max(np.abs(chord - envelope))),
    )


@lru_cache(maxsize=256)
def _cached_hull(m: int, q: float, grid_size: int) -> HullDescription:
    return convex_hull_oracle(m, q, grid_size)


def convex_envelope(lam: float, m: int, q: float, grid_size: int = 4097) -> float:
    """Value of the lower convex envelope of ``R`` at ``lam``.

    Between hull vertices the envelope is interpolated linearly and then
    capped by ``R`` itself, which keeps it exact where ``R`` is convex.
    """
    hull = _cached_hull(_check_m(m), float(q), int(grid_size))
    return float(min(np.interp(lam, hull.vertex_lambdas, hull.vertex_values), r_curve(lam, m, q)))


# --- fidelity-based lower bounds ---------------------------------------------------


@dataclass
class BoundCertificate:
    value: float
    witness_fidelity: float
    s1: float
    m: int
    lambda_: float
    q: float
    envelope_value: float
    kind: str
    cut: Optional[str] = None
    witness_rank: Optional[int] = None

    def to_json(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lambda_")
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def certificate_from_fidelity(fidelity: float, s1: float, m: int, q: float, kind: str, **extra) -> BoundCertificate:
    lam = max(fidelity / (s1 * m), 1.0 / m)
    lam = min(lam, 1.0)
    value = max(chord_coefficient(m, q) * (lam - 1.0 / m), 0.0)
    return BoundCertificate(
        value=float(value),
        witness_fidelity=float(fidelity),
        s1=float(s1),
        m=int(m),
        lambda_=float(lam),
        q=float(q),
        envelope_value=convex_envelope(lam, m, q),
        kind=kind,
        **extra,
    )


def _check_pair(rho: DensityMatrix, witness: StateVector) -> None:
    if rho.local_dims != witness.local_dims:
        raise ShapeError(f"rho dims {rho.local_dims} differ from witness dims {witness.local_dims}")


def lower_bound_bipartite(rho: DensityMatrix, witness: StateVector, cut: Bipartition, q: float) -> BoundCertificate:
    """Fidelity bound on ``C_q(rho)`` across ``cut``.

    ``m`` is the smaller block dimension; ``s1`` is the witness's largest
    squared Schmidt coefficient across the same cut.
    """
    q = _check_q(q)
    _check_pair(rho, witness)
    sd = schmidt(witness, cut)
    s1 = sd.largest
    if s1 < SCHMIDT_RANK_THRESHOLD:
        raise DegenerateWitnessError("witness has no nonzero Schmidt coefficient")
    m = min(cut.block_dims(rho.local_dims))
    return certificate_from_fidelity(
        fidelity_with_pure(rho, witness), s1, m, q, "bipartite", cut=cut.label(), witness_rank=sd.rank
    )


def witness_schmidt_data(witness: StateVector) -> tuple[float, int]:
    """``(max_cut s1, max_cut rank)`` over all bipartitions of the witness."""
    s1, m = 0.0, 0
    for cut in enumerate_bipartitions(witness.n):
        sd = schmidt(witness, cut)
        s1 = max(s1, sd.largest)
        m = max(m, sd.rank)
    return s1, m


def lower_bound_multipartite(rho: DensityMatrix, witness: StateVector, q: float) -> BoundCertificate:
    """Fidelity bound on the mixed-state GqC with ``s1``, ``m`` maximized over cuts."""
    q = _check_q(q)
    _check_pair(rho, witness)
    s1, m = witness_schmidt_data(witness)
    if s1 < SCHMIDT_RANK_THRESHOLD:
        raise DegenerateWitnessError("witness has no nonzero Schmidt coefficient")
    if m < 2:
        raise DegenerateWitnessError("witness is product across some cut; every Schmidt rank is 1")
    return certificate_from_fidelity(fidelity_with_pure(rho, witness), s1, m, q, "multipartite", witness_rank=m)


# --- continuity ---------------------------------------------------------------------


def continuity_bound_bipartite(d: int, epsilon: float, q: float) -> float:
    """``d ((1 + eps/d)**q - 1)``."""
    if d < 1 or epsilon < 0:
        raise DomainError(f"need d >= 1 and epsilon >= 0, got d={d}, epsilon={epsilon}")
    return float(d * np.expm1(q * np.log1p(epsilon / d)))


def continuity_bound_multipartite(n: int, d: int, epsilon: float, q: float) -> float:
    """``[sum_i C(n,i) d**i ((1 + eps/d**i)**q - 1)]**(1/c)`` for odd ``n``."""
    if n < 3 or n % 2 == 0:
        raise DomainError(f"the multipartite continuity bound is stated for odd n >= 3, got n={n}")
    total = sum(comb(n, i) * continuity_bound_bipartite(d**i, epsilon, q) for i in range(1, (n - 1) // 2 + 1))
    return float(total ** (1.0 / cardinality(n)))


# --- convex-roof upper estimate -----------------------------------------------------


@dataclass
class RoofEstimate:
    upper: float
    ensemble_size: int
    iterations: int
    seed: int
    rank: int

    def to_json(self) -> dict:
        return asdict(self)


def _ensemble_value(vecs: np.ndarray, u: np.ndarray, dims, q: float) -> float:
    w = vecs @ u.T
    p = np.sum(np.abs(w) ** 2, axis=0)
    total = 0.0
    for j in np.flatnonzero(p > 1e-14):
        psi = StateVector.normalized(w[:, j], dims)
        total += p[j] * gqc_pure(psi, q).aggregate
    return total


def mixed_gqc_upper_estimate(
    rho: DensityMatrix,
    q: float,
    ensemble_size: int,
    iterations: int = 200,
    seed: int = 0,
    initial_step: float = 0.5,
    final_step: float = 1e-3,
) -> RoofEstimate:
    """Heuristic upper estimate of the convex-roof GqC.

    Any decomposition ``rho = sum_j p_j |psi_j><psi_j|`` gives an upper
    bound.  Decompositions are parametrized by ``k x r`` isometries ``U``
    acting on the scaled eigenvectors; ``U`` is refined by random unitary
    kicks whose size decays geometrically, keeping only strict decreases.
    Never a certificate of the exact roof.
    """
    q = _check_q(q)
    evals, evecs = np.linalg.eigh(rho.entries)
    keep = evals > SCHMIDT_RANK_THRESHOLD
    r = int(np.count_nonzero(keep))
    if ensemble_size < r:
        raise DomainError(f"ensemble_size={ensemble_size} is below rank(rho)={r}")
    vecs = evecs[:, keep] * np.sqrt(evals[keep])
    dims = rho.local_dims
    k = int(ensemble_size)
    rng = np.random.default_rng(seed)

    # the spectral decomposition itself is the first candidate
    best_u = np.eye(k, r, dtype=complex)
    best = _ensemble_value(vecs, best_u, dims, q)
    if r > 1:
        z = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        qmat, rmat = np.linalg.qr(z)
        u0 = (qmat * (np.diag(rmat) / np.abs(np.diag(rmat))))[:, :r]
        v0 = _ensemble_value(vecs, u0, dims, q)
        if v0 < best:
            best, best_u = v0, u0
        decay = (final_step / initial_step) ** (1.0 / max(iterations - 1, 1))
        step = initial_step
        for _ in range(iterations):
            h = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            h = (h + h.conj().T) / (2.0 * np.sqrt(k))
            cand = expm(1j * step * h) @ best_u
            val = _ensemble_value(vecs, cand, dims, q)
            if val < best:
                best, best_u = val, cand
            step *= decay
    return RoofEstimate(upper=float(best), ensemble_size=k, iterations=int(iterations), seed=int(seed), rank=r)
