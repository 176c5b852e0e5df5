"""Tabular data behind the figures, parameter sweeps, and ordering scans.

All tables are lists of rows with a header; :func:`write_csv` formats
floats with 12 significant digits so repeated runs are byte-identical.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import pi
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from . import bounds, measures, states
from .errors import DomainError

FAMILIES = ("w_noise", "ghz_noise", "class1", "class2", "four_qubit", "w_vs_ghz")
PURE_FAMILIES = {"class1": states.class1, "class2": states.class2, "four_qubit": states.four_qubit_family}
SMOOTHNESS_THRESHOLD = 1e-3

SWEEP_HEADER = ["family", "param", "q", "fidelity", "s1", "m", "lambda", "bound", "exact_if_pure", "roof_upper"]


@dataclass
class Table:
    header: list[str]
    rows: list[list] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        j = self.header.index(name)
        return np.array([r[j] for r in self.rows])


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return "" if x is None else str(x)


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.header)
    for row in table.rows:
        w.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def write_csv(table: Table, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(to_csv(table))


def open_grid(steps: int, lo: float = 0.0, hi: float = pi / 2) -> np.ndarray:
    """``steps`` interior points of the open interval ``(lo, hi)``."""
    if steps < 2:
        raise DomainError(f"need at least 2 grid steps, got {steps}")
    return lo + (hi - lo) * np.arange(1, steps + 1) / (steps + 1)


# --- figures -------------------------------------------------------------------------


def figure1(steps: int = 101) -> Table:
    """Noisy W_3 bound for G2C with ``p`` on ``[0, 1]``."""
    base = states.w_state(3)
    t = Table(["p", "fidelity", "lambda", "bound", "envelope_bound"])
    for p in np.linspace(0.0, 1.0, steps):
        rho = states.noisy_state(states.NoisyStateSpec(base, float(p)))
        c = bounds.lower_bound_multipartite(rho, base, 2.0)
        t.rows.append([float(p), c.witness_fidelity, c.lambda_, c.value, c.envelope_value])
    return t


def figure2(c_steps: int = 51, q_steps: int = 41) -> Table:
    """Noisy GHZ_3 bound over visibility ``c`` in [0, 1] and ``q`` in [2, 12]."""
    base = states.ghz_state(3)
    t = Table(["c", "q", "fidelity", "lambda", "bound", "envelope_bound"])
    for c in np.linspace(0.0, 1.0, c_steps):
        rho = states.noisy_state(states.NoisyStateSpec(base, float(c)))
        for q in np.linspace(2.0, 12.0, q_steps):
            cert = bounds.lower_bound_multipartite(rho, base, float(q))
            t.rows.append([float(c), float(q), cert.witness_fidelity, cert.lambda_, cert.value, cert.envelope_value])
    return t


def figure3(n_min: int = 5, n_max: int = 21, q: float = 3.0) -> Table:
    """G3C of W_n and its ratio to GHZ_n, from the closed forms."""
    t = Table(["n", "gqc_w", "gqc_ghz", "ratio"])
    for n in range(n_min, n_max + 1):
        w = bounds.gqc_w_closed(n, q)
        g = bounds.gqc_ghz_closed(n, q)
        t.rows.append([n, w, g, w / g])
    return t


def class_scan(steps: int = 200, q: float = 4.0) -> Table:
    t = Table(["theta", "class1_gqc", "class1_gmc", "class1_ggm", "class2_gqc", "class2_gmc", "class2_ggm"])
    for th in open_grid(steps):
        a = measures.all_measures(states.class1(th), q)
        b = measures.all_measures(states.class2(th), q)
        t.rows.append([float(th), a["GqC"], a["GMC"], a["GGM"], b["GqC"], b["GMC"], b["GGM"]])
    return t


def figure45(other: str, steps: int = 200, q: float = 4.0) -> Table:
    """G4C against GMC (figure 4) or GGM (figure 5) for both classes."""
    full = class_scan(steps, q)
    keep = ["theta", "class1_gqc", f"class1_{other}", "class2_gqc", f"class2_{other}"]
    idx = [full.header.index(k) for k in keep]
    return Table(keep, [[r[i] for i in idx] for r in full.rows])


def figure7(steps: int = 400, q: float = 3.0) -> Table:
    """G3C, GMC, GGM of the four-qubit family with the minimizing cuts."""
    t = Table(["theta", "gqc", "gmc", "ggm", "gmc_argmin", "ggm_argmin"])
    for th in open_grid(steps):
        psi = states.four_qubit_family(th)
        gmc = measures.gmc_pure(psi)
        ggm = measures.ggm_pure(psi)
        t.rows.append(
            [float(th), measures.gqc_pure(psi, q).aggregate, gmc.aggregate, ggm.aggregate,
             gmc.argmin.label(), ggm.argmin.label()]
        )
    return t


FIGURES = {
    1: figure1,
    2: figure2,
    3: figure3,
    4: lambda: figure45("gmc"),
    5: lambda: figure45("ggm"),
    7: figure7,
}


def figure(fig_id: int) -> Table:
    try:
        return FIGURES[int(fig_id)]()
    except KeyError:
        raise DomainError(f"unknown figure id {fig_id}; choose from {sorted(FIGURES)}") from None


# --- sweeps --------------------------------------------------------------------------


@dataclass
class SweepSpec:
    family: str
    start: float
    stop: float
    steps: int
    q_list: Sequence[float]
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.steps < 2:
            raise DomainError(f"need steps >= 2, got {self.steps}")
        if any(q < 2 for q in self.q_list):
            raise DomainError("every q must be >= 2")
        lo, hi = sorted((self.start, self.stop))
        if self.family in ("w_noise", "ghz_noise") and (lo < 0 or hi > 1):
            raise DomainError("visibility grid must lie in [0, 1]")
        if self.family in PURE_FAMILIES and (lo < 0 or hi > pi / 2):
            raise DomainError("theta grid must lie in [0, pi/2]")
        if self.family == "w_vs_ghz" and lo < 3:
            raise DomainError("w_vs_ghz needs n >= 3")

    def grid(self) -> np.ndarray:
        if self.family == "w_vs_ghz":
            return np.unique(np.round(np.linspace(self.start, self.stop, self.steps)).astype(int))
        return np.linspace(self.start, self.stop, self.steps)


def sweep(spec: SweepSpec, roof: bool = False, roof_iterations: int = 100, seed: int = 0) -> Table:
    """One row per (grid point, q) with the multipartite bound and, for pure states, the exact GqC."""
    t = Table(list(SWEEP_HEADER))
    for x in spec.grid():
        for q in spec.q_list:
            q = float(q)
            if spec.family == "w_vs_ghz":
                n = int(x)
                # W_n: largest Schmidt weight (n-1)/n, rank 2; GHZ_n: 1/2, rank 2
                for label, s1, exact in (
                    ("w_vs_ghz:W", (n - 1) / n, bounds.gqc_w_closed(n, q)),
                    ("w_vs_ghz:GHZ", 0.5, bounds.gqc_ghz_closed(n, q)),
                ):
                    c = bounds.certificate_from_fidelity(1.0, s1, 2, q, "multipartite")
                    t.rows.append([label, n, q, 1.0, s1, 2, c.lambda_, c.value, exact, exact])
                continue
            if spec.family in PURE_FAMILIES:
                psi = PURE_FAMILIES[spec.family](float(x))
                rho, witness = psi.projector(), psi
                exact = measures.gqc_pure(psi, q).aggregate
                upper = exact
            else:
                witness = states.w_state(3) if spec.family == "w_noise" else states.ghz_state(3)
                rho = states.noisy_state(states.NoisyStateSpec(witness, float(x)))
                exact = None
                upper = None
                if roof:
                    upper = bounds.mixed_gqc_upper_estimate(
                        rho, q, ensemble_size=2 * rho.dim, iterations=roof_iterations, seed=seed
                    ).upper
            c = bounds.lower_bound_multipartite(rho, witness, q)
            t.rows.append([spec.family, float(x), q, c.witness_fidelity, c.s1, c.m, c.lambda_, c.value, exact, upper])
    return t


# --- ordering scans ------------------------------------------------------------------


@dataclass(frozen=True)
class ReversalPair:
    measure: str
    theta_a: float
    theta_b: float
    gqc_a: float
    gqc_b: float
    other_a: float
    other_b: float


def _family_values(family: str, thetas: np.ndarray, q: float) -> dict[str, np.ndarray]:
    fn = PURE_FAMILIES[family]
    vals = [measures.all_measures(fn(th), q) for th in thetas]
    return {k: np.array([v[k] for v in vals]) for k in ("GqC", "GMC", "GGM")}


def ordering_scan(
    family_a: str,
    family_b: str,
    q: float = 4.0,
    steps_a: int = 200,
    steps_b: int = 200,
    compare: Sequence[str] = ("GMC", "GGM"),
    tol: float = 1e-12,
) -> list[ReversalPair]:
    """Pairs ``(theta_a, theta_b)`` whose GqC order disagrees with another measure's order."""
    for fam in (family_a, family_b):
        if fam not in PURE_FAMILIES:
            raise DomainError(f"ordering scans need a pure family, got {fam!r}")
    ta, tb = open_grid(steps_a), open_grid(steps_b)
    va = _family_values(family_a, ta, q)
    vb = _family_values(family_b, tb, q)
    dg = va["GqC"][:, None] - vb["GqC"][None, :]
    out: list[ReversalPair] = []
    for name in compare:
        dm = va[name][:, None] - vb[name][None, :]
        mask = (dg * dm < 0) & (np.abs(dg) > tol) & (np.abs(dm) > tol)
        for i, j in zip(*np.nonzero(mask)):
            out.append(
                ReversalPair(name, float(ta[i]), float(tb[j]), float(va["GqC"][i]), float(vb["GqC"][j]),
                             float(va[name][i]), float(vb[name][j]))
            )
    return out


def reversal_table(pairs: list[ReversalPair]) -> Table:
    t = Table(["measure", "theta_a", "theta_b", "gqc_a", "gqc_b", "other_a", "other_b"])
    for p in pairs:
        t.rows.append([p.measure, p.theta_a, p.theta_b, p.gqc_a, p.gqc_b, p.other_a, p.other_b])
    return t


# --- four-qubit family analysis ------------------------------------------------------


@dataclass
class FourQubitScan:
    thetas: np.ndarray
    gqc: np.ndarray
    gmc: np.ndarray
    ggm: np.ndarray
    gmc_argmin: list[str]
    gmc_argmin_switches: list[float]
    kinks: dict[str, list[int]]
    ggm_collision: Optional[tuple[float, float, float, float]]

    @property
    def gqc_smooth(self) -> bool:
        return not self.kinks["gqc"]


def kink_indices(values: np.ndarray, threshold: float = SMOOTHNESS_THRESHOLD) -> list[int]:
    """Grid indices whose second difference exceeds ``threshold`` in magnitude."""
    d2 = np.diff(values, 2)
    return [int(i) + 1 for i in np.flatnonzero(np.abs(d2) > threshold)]


def _ggm(theta: float) -> float:
    return measures.ggm_pure(states.four_qubit_family(theta)).aggregate


def find_ggm_collision(thetas, ggm, gqc, q: float = 3.0, ggm_tol: float = 1e-6, gqc_gap: float = 1e-3):
    """First pair with equal GGM (to ``ggm_tol``) but G_qC differing by more than ``gqc_gap``.

    For each grid point the matching GGM level is located on a later grid
    interval by bracketing and root refinement.
    """
    for a in range(len(thetas)):
        level = ggm[a]
        diff = ggm[a + 2:] - level
        crossings = np.flatnonzero(np.sign(diff[:-1]) * np.sign(diff[1:]) < 0)
        for c in crossings:
            lo, hi = thetas[a + 2 + c], thetas[a + 3 + c]
            tb = brentq(lambda th: _ggm(th) - level, lo, hi, xtol=1e-14)
            g_b = measures.gqc_pure(states.four_qubit_family(tb), q).aggregate
            if abs(_ggm(tb) - level) < ggm_tol and abs(g_b - gqc[a]) > gqc_gap:
                return float(thetas[a]), float(tb), float(abs(_ggm(tb) - level)), float(abs(g_b - gqc[a]))
    return None


def four_qubit_scan(steps: int = 400, q: float = 3.0, threshold: float = SMOOTHNESS_THRESHOLD) -> FourQubitScan:
    fig = figure7(steps, q)
    thetas = fig.column("theta").astype(float)
    gqc = fig.column("gqc").astype(float)
    gmc = fig.column("gmc").astype(float)
    ggm = fig.column("ggm").astype(float)
    argmin = [str(a) for a in fig.column("gmc_argmin")]
    switches = [float(thetas[i]) for i in range(1, len(argmin)) if argmin[i] != argmin[i - 1]]
    kinks = {name: kink_indices(v, threshold) for name, v in (("gqc", gqc), ("gmc", gmc), ("ggm", ggm))}
    return FourQubitScan(thetas, gqc, gmc, ggm, argmin, switches, kinks, find_ggm_collision(thetas, ggm, gqc, q))
