"""Seeded property suites over random and constructed states.

Every suite is a deterministic function of ``(samples, seed, tol)`` and
returns a :class:`SuiteReport`.  A check ``lhs <= rhs`` records the slack
``rhs - lhs``; a sample violates the check when its slack is below ``-tol``.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from math import pi

import numpy as np

from . import bounds, measures, states
from .partitions import enumerate_bipartitions
from .tensor import DensityMatrix, StateVector, partial_trace, state_distance, trace_distance

MAX_COUNTEREXAMPLES = 5
Q_CYCLE = (2.0, 2.5, 3.0, 4.5, 7.0)


@dataclass
class CheckResult:
    name: str
    samples: int = 0
    violations: int = 0
    worst_slack: float = float("inf")
    counterexamples: list = field(default_factory=list)

    def record(self, slack: float, tol: float, witness=None) -> None:
        self.samples += 1
        self.worst_slack = min(self.worst_slack, float(slack))
        if slack < -tol:
            self.violations += 1
            if witness is not None and len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                self.counterexamples.append(witness() if callable(witness) else witness)

    @property
    def passed(self) -> bool:
        return self.violations == 0


@dataclass
class SuiteReport:
    suite: str
    seed: int
    samples: int
    tol: float
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        lines = [f"suite {self.suite} seed={self.seed} samples={self.samples} tol={self.tol:g}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(
                f"  {status} {c.name}: {c.samples} checked, {c.violations} violations, worst slack {c.worst_slack:.6g}"
            )
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"

    def counterexamples_json(self) -> str:
        data = {c.name: c.counterexamples for c in self.checks if c.counterexamples}
        return json.dumps(data, indent=1, sort_keys=True)


def _dm_json(*rhos):
    return lambda: [r.to_json() for r in rhos]


def _random_dm(rng, dims) -> DensityMatrix:
    d = int(np.prod(dims))
    return states.random_density_matrix(dims, rng, rank=int(rng.integers(1, d + 1)))


def _perturbed_pair(rng, dims, eps: float) -> tuple[StateVector, StateVector]:
    """Two states whose projector trace distance equals ``eps`` exactly."""
    psi = states.haar_random_pure(dims, rng)
    chi = states.haar_random_pure(dims, rng).amplitudes
    chi = chi - np.vdot(psi.amplitudes, chi) * psi.amplitudes
    chi = chi / np.linalg.norm(chi)
    a = np.arcsin(eps / 2.0)
    return psi, StateVector.normalized(np.cos(a) * psi.amplitudes + np.sin(a) * chi, dims)


def suite_fq_properties(samples: int, seed: int, tol: float) -> SuiteReport:
    """Non-negativity, subadditivity, concavity and quasiconvexity of ``F_q``."""
    rng = np.random.default_rng(seed)
    nonneg = CheckResult("non_negativity")
    sub_lo = CheckResult("subadditivity_lower")
    sub_hi = CheckResult("subadditivity_upper")
    concave = CheckResult("concavity")
    quasi = CheckResult("quasiconvexity")
    quasi_eq = CheckResult("quasiconvexity_orthogonal_equality")
    for i in range(samples):
        q = Q_CYCLE[i % len(Q_CYCLE)]

        rho = _random_dm(rng, (int(rng.choice([2, 3, 4, 6])),))
        nonneg.record(measures.f_q(rho, q), tol, _dm_json(rho))

        da, db = (int(x) for x in rng.choice([2, 3], size=2))
        rab = _random_dm(rng, (da, db))
        fa = measures.f_q(partial_trace(rab, [0]), q)
        fb = measures.f_q(partial_trace(rab, [1]), q)
        fab = measures.f_q(rab, q)
        sub_lo.record(fab - abs(fa - fb), tol, _dm_json(rab))
        sub_hi.record(fa + fb - fab, tol, _dm_json(rab))

        d = int(rng.choice([2, 3, 4]))
        k = int(rng.integers(2, 5))
        p = rng.dirichlet(np.ones(k))
        rhos = [_random_dm(rng, (d,)) for _ in range(k)]
        mix = DensityMatrix(sum(pi_ * r.entries for pi_, r in zip(p, rhos)), (d,))
        fs = np.array([measures.f_q(r, q) for r in rhos])
        fmix = measures.f_q(mix, q)
        concave.record(fmix - float(p @ fs), tol, _dm_json(*rhos))
        quasi.record(float(np.sum(p**q * fs)) + 1.0 - float(np.sum(p**q)) - fmix, tol, _dm_json(*rhos))

        u = states.haar_random_unitary(d + 1, rng)
        k_orth = int(rng.integers(2, d + 2))
        p = rng.dirichlet(np.ones(k_orth))
        mix = (u[:, :k_orth] * p) @ u[:, :k_orth].conj().T
        rho_orth = DensityMatrix(mix, (d + 1,))
        gap = abs(measures.f_q(rho_orth, q) - (1.0 - float(np.sum(p**q))))
        quasi_eq.record(-gap, tol, _dm_json(rho_orth))
    return SuiteReport("lemma1", seed, samples, tol, [nonneg, sub_lo, sub_hi, concave, quasi, quasi_eq])


def suite_subadditivity(samples: int, seed: int, tol: float) -> SuiteReport:
    """``C_q`` and GqC under tensoring of pure states (random pairs)."""
    rng = np.random.default_rng(seed)
    cut_check = CheckResult("cq_tensor_subadditivity")
    ident = CheckResult("cq_tensor_identity")
    gqc_check = CheckResult("gqc_paired_tensor_subadditivity")
    for i in range(samples):
        q = Q_CYCLE[i % len(Q_CYCLE)]
        dims = tuple(int(x) for x in rng.choice([2, 3], size=2))
        p1 = states.haar_random_pure(dims, rng)
        p2 = states.haar_random_pure(dims, rng)
        both = states.paired_tensor(p1, p2)
        cut = enumerate_bipartitions(2)[0]
        c1 = measures.q_concurrence_pure(p1, cut, q)
        c2 = measures.q_concurrence_pure(p2, cut, q)
        c12 = measures.q_concurrence_pure(both, cut, q)
        wit = lambda: [p1.to_json(), p2.to_json()]  # noqa: E731
        cut_check.record(c1 + c2 - c12, tol, wit)
        ident.record(-abs(c12 - (c1 + c2 - c1 * c2)), tol, wit)

        s1 = states.haar_random_pure((2, 2, 2), rng)
        s2 = states.haar_random_pure((2, 2, 2), rng)
        g1 = measures.gqc_pure(s1, q).aggregate
        g2 = measures.gqc_pure(s2, q).aggregate
        g12 = measures.gqc_pure(states.paired_tensor(s1, s2), q).aggregate
        gqc_check.record(g1 + g2 - g12, tol, lambda: [s1.to_json(), s2.to_json()])
    return SuiteReport("subadditivity", seed, samples, tol, [cut_check, ident, gqc_check])


SOUNDNESS_Q = (2.0, 3.0, 4.5)


def suite_soundness(samples: int, seed: int, tol: float) -> SuiteReport:
    """Multipartite fidelity bound with the state as its own witness never exceeds GqC."""
    rng = np.random.default_rng(seed)
    checks = {q: CheckResult(f"bound_le_gqc_q={q:g}") for q in SOUNDNESS_Q}
    for _ in range(samples):
        psi = states.haar_random_pure((2, 2, 2), rng)
        rho = psi.projector()
        for q in SOUNDNESS_Q:
            b = bounds.lower_bound_multipartite(rho, psi, q).value
            g = measures.gqc_pure(psi, q).aggregate
            checks[q].record(g - b, tol, psi.to_json)
    return SuiteReport("soundness", seed, samples, tol, list(checks.values()))


CONTINUITY_EPS = (0.01, 0.05, 0.1)


def suite_continuity(samples: int, seed: int, tol: float) -> SuiteReport:
    """Per-cut and GqC differences of nearby 3-qubit states against the continuity bounds."""
    rng = np.random.default_rng(seed)
    checks = []
    for eps in CONTINUITY_EPS:
        cut_check = CheckResult(f"cq_continuity_eps={eps:g}")
        g_check = CheckResult(f"gqc_continuity_eps={eps:g}")
        for i in range(samples):
            q = Q_CYCLE[i % len(Q_CYCLE)]
            p1, p2 = _perturbed_pair(rng, (2, 2, 2), eps)
            wit = lambda: [p1.to_json(), p2.to_json()]  # noqa: E731
            for cut in enumerate_bipartitions(3):
                d = min(cut.block_dims(p1.local_dims))
                diff = abs(measures.q_concurrence_pure(p1, cut, q) - measures.q_concurrence_pure(p2, cut, q))
                cut_check.record(bounds.continuity_bound_bipartite(d, eps, q) - diff, tol, wit)
            dg = abs(measures.gqc_pure(p1, q).aggregate - measures.gqc_pure(p2, q).aggregate)
            g_check.record(bounds.continuity_bound_multipartite(3, 2, eps, q) - dg, tol, wit)
        checks += [cut_check, g_check]
    return SuiteReport("continuity", seed, samples, tol, checks)


def biseparable_examples(rng, samples: int) -> list[StateVector]:
    """Factory states that factorize across at least one cut."""
    bell = states.ghz_state(2)
    zero = states.basis_state("0")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        out = [
            states.basis_state("000"),
            states.basis_state("0110"),
            states.product_state([zero, bell]),
            states.product_state([bell, zero]),
            states.class1(pi / 2),
            states.four_qubit_family(0.0),
            states.four_qubit_family(pi / 2),
        ]
    for _ in range(samples):
        a = states.haar_random_pure((2,), rng)
        b = states.haar_random_pure((2, 2), rng)
        c = states.haar_random_pure((2,), rng)
        out.append(states.product_state([a, b]))
        out.append(states.product_state([b, a]))
        out.append(states.product_state([a, c, b]))
    return out


def suite_gme_detection(samples: int, seed: int, tol: float) -> SuiteReport:
    """GqC vanishes on biseparable states, is positive on GME states, maximal on GHZ_3."""
    rng = np.random.default_rng(seed)
    zero = CheckResult("biseparable_gqc_zero")
    pos = CheckResult("gme_gqc_positive")
    ames = CheckResult("ghz3_attains_max")
    for i, psi in enumerate(biseparable_examples(rng, max(samples // 3, 1))):
        q = Q_CYCLE[i % len(Q_CYCLE)]
        zero.record(1e-12 - measures.gqc_pure(psi, q).aggregate, 0.0, psi.to_json)
    gme = [states.ghz_state(n) for n in range(3, 7)] + [states.w_state(n) for n in range(3, 7)]
    gme += [states.haar_random_pure((2,) * int(rng.choice([3, 4])), rng) for _ in range(samples)]
    for i, psi in enumerate(gme):
        q = Q_CYCLE[i % len(Q_CYCLE)]
        pos.record(measures.gqc_pure(psi, q).aggregate - 1e-6, 0.0, psi.to_json)
    for q in (2.0, 3.0, 5.0):
        g = measures.gqc_pure(states.ghz_state(3), q).aggregate
        ames.record(-abs(g - measures.max_fq(2, q)), 1e-10)
    return SuiteReport("theorem1", seed, samples, tol, [zero, pos, ames])


def suite_invariance(samples: int, seed: int, tol: float) -> SuiteReport:
    """Local-unitary invariance, cut symmetry, and reduction contractivity."""
    rng = np.random.default_rng(seed)
    lu = CheckResult("local_unitary_invariance")
    sym = CheckResult("cut_symmetry")
    contract = CheckResult("reduction_contractivity")
    for i in range(samples):
        q = Q_CYCLE[i % len(Q_CYCLE)]
        dims = (2, 2, 2) if i % 2 == 0 else (2, 3, 2)
        psi = states.haar_random_pure(dims, rng)
        us = [states.haar_random_unitary(d, rng) for d in dims]
        phi = states.apply_local_unitaries(psi, us)
        a = measures.gqc_pure(psi, q).per_cut
        b = measures.gqc_pure(phi, q).per_cut
        lu.record(-max(abs(a[c] - b[c]) for c in a), 1e-9, psi.to_json)
        for cut in a:
            fs = measures.f_q(partial_trace(psi, cut.block_s), q)
            fc = measures.f_q(partial_trace(psi, cut.complement), q)
            sym.record(-abs(fs - fc), 1e-10, psi.to_json)
        other = states.haar_random_pure(dims, rng)
        dist = state_distance(psi, other)
        for cut in a:
            red = trace_distance(partial_trace(psi, cut.block_s), partial_trace(other, cut.block_s))
            contract.record(dist - red, 1e-8, psi.to_json)
    return SuiteReport("invariance", seed, samples, tol, [lu, sym, contract])


CHORD_M = (2, 3, 4)
CHORD_Q = (2.0, 2.5, 3.0, 5.0, 12.0)


def suite_chord(samples: int, seed: int, tol: float) -> SuiteReport:
    """Lower convex envelope of ``R`` against the end-point chord, at 1e-6."""
    check = CheckResult("envelope_equals_chord")
    for m in CHORD_M:
        for q in CHORD_Q:
            hull = bounds.convex_hull_oracle(m, q)
            check.record(-hull.max_gap_to_chord, 1e-6, {"m": m, "q": q, "gap": hull.max_gap_to_chord})
    return SuiteReport("chord", seed, samples, 1e-6, [check])


def suite_roof(samples: int, seed: int, tol: float) -> SuiteReport:
    """Roof upper estimate stays above the fidelity lower bound on noisy W/GHZ."""
    check = CheckResult("roof_upper_ge_lower_bound")
    env = CheckResult("roof_upper_ge_envelope_bound")
    vis = np.linspace(0.3, 1.0, max(samples, 2))
    for family, base in (("w", states.w_state(3)), ("ghz", states.ghz_state(3))):
        for j, v in enumerate(vis):
            q = (2.0, 4.0)[j % 2]
            rho = states.noisy_state(states.NoisyStateSpec(base, float(v)))
            lb = bounds.lower_bound_multipartite(rho, base, q)
            ub = bounds.mixed_gqc_upper_estimate(rho, q, ensemble_size=8, iterations=60, seed=seed + j)
            wit = {"family": family, "visibility": float(v), "q": q, "lower": lb.value, "upper": ub.upper}
            check.record(ub.upper - lb.value, tol, wit)
            env.record(ub.upper - lb.envelope_value, tol, wit)
    return SuiteReport("roof", seed, samples, tol, [check, env])


def suite_closed_forms(samples: int, seed: int, tol: float) -> SuiteReport:
    """Numerical GqC of W_n/GHZ_n against the closed forms."""
    w = CheckResult("w_closed_form")
    g = CheckResult("ghz_closed_form")
    for n in range(3, 11):
        for q in (2.0, 3.0, 4.5):
            w.record(-abs(measures.gqc_pure(states.w_state(n), q).aggregate - bounds.gqc_w_closed(n, q)), 1e-9)
            g.record(-abs(measures.gqc_pure(states.ghz_state(n), q).aggregate - bounds.closed_form_ghz(q)), 1e-10)
    return SuiteReport("closed-forms", seed, samples, tol, [w, g])


SUITES = {
    "lemma1": suite_fq_properties,
    "subadditivity": suite_subadditivity,
    "soundness": suite_soundness,
    "continuity": suite_continuity,
    "theorem1": suite_gme_detection,
    "invariance": suite_invariance,
    "chord": suite_chord,
    "roof": suite_roof,
    "closed-forms": suite_closed_forms,
}


def run_suite(name: str, samples: int = 200, seed: int = 0, tol: float = 1e-9) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(samples, seed, tol)
