"""Pure-state entanglement measures built on ``F_q(rho) = 1 - Tr rho**q``.

Bipartite q-concurrence ``C_q`` is ``F_q`` of a reduced state; the
multipartite GqC is the geometric mean of ``C_q`` over every bipartition.
GMC (minimum concurrence) and GGM (one minus the largest Schmidt weight)
are provided for comparison.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError
from .partitions import DEFAULT_MAX_PARTIES, Bipartition, enumerate_bipartitions
from .tensor import StateVector, hermitian_eigenvalues, schmidt

MEASURE_NAMES = ("GqC", "GMC", "GGM", "Cq")


def _check_q(q: float) -> float:
    q = float(q)
    if not q >= 2.0:
        raise DomainError(f"q must be >= 2, got {q}")
    return q


def one_minus_power_sum(lam, q: float) -> float:
    """``1 - sum(lam**q)`` for a decreasing probability vector ``lam``.

    The leading term uses ``1 - lam[0] = sum(lam[1:])`` so values near zero
    keep their relative precision.
    """
    lam = np.clip(np.asarray(lam, dtype=float), 0.0, None)
    rest = lam[1:]
    delta = float(np.sum(rest))
    head = lam[0] * -np.expm1((q - 1.0) * np.log1p(-min(delta, 1.0))) if delta < 1.0 else lam[0]
    tail = float(np.sum(rest * (1.0 - rest ** (q - 1.0))))
    return float(max(head + tail, 0.0))


def f_q(rho, q: float) -> float:
    """``1 - Tr rho**q`` for ``q >= 2``."""
    q = _check_q(q)
    lam = hermitian_eigenvalues(rho)
    total = float(np.sum(lam))
    return one_minus_power_sum(lam / total, q) if abs(total - 1.0) < 1e-9 else 1.0 - float(np.sum(lam**q))


def max_fq(d: int, q: float) -> float:
    """Largest ``C_q`` on ``C^d x C^d'`` (``d`` the smaller side): ``1 - d**(1-q)``."""
    if d < 2:
        raise DomainError(f"d must be >= 2, got {d}")
    q = _check_q(q)
    return float(-np.expm1((1.0 - q) * np.log(d)))


def _cut_qconcurrence(psi: StateVector, cut: Bipartition, q: float) -> float:
    sd = schmidt(psi, cut)
    if sd.rank == 1:
        return 0.0
    return one_minus_power_sum(sd.squared_coefficients, q)


def q_concurrence_pure(psi: StateVector, cut: Bipartition, q: float) -> float:
    """``C_q`` of ``psi`` across ``cut``.

    Cuts whose Schmidt rank is 1 (at the 1e-10 threshold) are product and
    return exactly 0.
    """
    return _cut_qconcurrence(psi, cut, _check_q(q))


def concurrence_pure(psi: StateVector, cut: Bipartition) -> float:
    """Standard concurrence ``sqrt(2 (1 - Tr rho_S**2))``."""
    return float(np.sqrt(2.0 * _cut_qconcurrence(psi, cut, 2.0)))


def geometric_mean(values) -> float:
    """Geometric mean evaluated in log space; any exact zero gives 0."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise DomainError("geometric mean of an empty sequence")
    if np.any(v <= 0.0):
        return 0.0
    return float(np.exp(np.mean(np.log(v))))


@dataclass
class MeasureReport:
    """Per-bipartition values plus the aggregate of one measure."""

    measure_name: str
    q: Optional[float]
    per_cut: dict[Bipartition, float]
    aggregate: float
    argmin: Optional[Bipartition] = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "measure": self.measure_name,
            "q": self.q,
            "aggregate": self.aggregate,
            "per_cut": {c.label(): v for c, v in self.per_cut.items()},
        }
        if self.argmin is not None:
            out["argmin"] = self.argmin.label()
        return out

    def csv_rows(self) -> list[list]:
        q = "" if self.q is None else self.q
        return [[self.measure_name, q, c.label(), v, self.aggregate] for c, v in self.per_cut.items()]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["measure", "q", "cut", "value", "aggregate"])
        for row in self.csv_rows():
            w.writerow([f"{x:.12g}" if isinstance(x, float) else x for x in row])
        return buf.getvalue()

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _cuts(psi: StateVector, max_parties: int) -> list[Bipartition]:
    return enumerate_bipartitions(psi.n, max_parties=max_parties)


def gqc_pure(psi: StateVector, q: float, max_parties: int = DEFAULT_MAX_PARTIES) -> MeasureReport:
    """Geometric mean of ``C_q`` over all bipartitions.

    Examples
    --------
    >>> from gqc.states import ghz_state
    >>> round(gqc_pure(ghz_state(3), 2).aggregate, 12)
    0.5
    """
    q = _check_q(q)
    per_cut = {cut: _cut_qconcurrence(psi, cut, q) for cut in _cuts(psi, max_parties)}
    return MeasureReport("GqC", q, per_cut, geometric_mean(list(per_cut.values())))


def qconcurrence_report(psi: StateVector, q: float, max_parties: int = DEFAULT_MAX_PARTIES) -> MeasureReport:
    """All per-cut ``C_q`` values with the smallest as aggregate."""
    q = _check_q(q)
    per_cut = {cut: _cut_qconcurrence(psi, cut, q) for cut in _cuts(psi, max_parties)}
    argmin = min(per_cut, key=per_cut.get)
    return MeasureReport("Cq", q, per_cut, per_cut[argmin], argmin=argmin)


def gmc_pure(psi: StateVector, max_parties: int = DEFAULT_MAX_PARTIES) -> MeasureReport:
    """Minimum bipartite concurrence; ``argmin`` names the minimizing cut."""
    per_cut = {cut: concurrence_pure(psi, cut) for cut in _cuts(psi, max_parties)}
    argmin = min(per_cut, key=per_cut.get)
    return MeasureReport("GMC", None, per_cut, per_cut[argmin], argmin=argmin)


def ggm_pure(psi: StateVector, max_parties: int = DEFAULT_MAX_PARTIES) -> MeasureReport:
    """``1 - max_cut s_1(cut)`` with ``s_1`` the largest squared Schmidt coefficient."""
    per_cut = {}
    for cut in _cuts(psi, max_parties):
        sd = schmidt(psi, cut)
        per_cut[cut] = 0.0 if sd.rank == 1 else sd.minor_weight
    argmin = min(per_cut, key=per_cut.get)
    return MeasureReport("GGM", None, per_cut, per_cut[argmin], argmin=argmin)


def all_measures(psi: StateVector, q: float, max_parties: int = DEFAULT_MAX_PARTIES) -> dict[str, float]:
    """Aggregates of GqC, GMC and GGM in one pass over the cuts."""
    q = _check_q(q)
    cq, conc, ggm = [], [], []
    for cut in _cuts(psi, max_parties):
        sd = schmidt(psi, cut)
        if sd.rank == 1:
            cq.append(0.0)
            conc.append(0.0)
            ggm.append(0.0)
            continue
        lam = sd.squared_coefficients
        cq.append(one_minus_power_sum(lam, q))
        conc.append(float(np.sqrt(2.0 * one_minus_power_sum(lam, 2.0))))
        ggm.append(sd.minor_weight)
    return {"GqC": geometric_mean(cq), "GMC": min(conc), "GGM": min(ggm)}
