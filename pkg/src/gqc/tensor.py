"""Dense linear algebra over multi-party Hilbert spaces.

Amplitudes are stored row-major over parties with party 0 the most
significant index, i.e. basis state ``|i_0 i_1 ... i_{n-1}>`` sits at
``np.ravel_multi_index((i_0, ..., i_{n-1}), local_dims)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .errors import (
    DomainError,
    NormalizationError,
    PartitionError,
    ShapeError,
    SymmetryError,
)
from .partitions import Bipartition

NORM_TOL = 1e-9
HERMITIAN_TOL = 1e-9
PSD_TOL = 1e-8
SCHMIDT_RANK_THRESHOLD = 1e-10


def _as_dims(local_dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in local_dims)
    if not dims:
        raise ShapeError("need at least one party")
    if any(d < 1 for d in dims):
        raise ShapeError(f"local dimensions must be positive, got {dims}")
    return dims


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state of ``len(local_dims)`` parties."""

    amplitudes: np.ndarray
    local_dims: tuple[int, ...]

    def __post_init__(self):
        dims = _as_dims(self.local_dims)
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != int(np.prod(dims)):
            raise ShapeError(f"{amps.size} amplitudes do not match local_dims {dims}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NormalizationError(f"state has squared norm {norm2!r}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "local_dims", dims)

    @classmethod
    def normalized(cls, amplitudes, local_dims) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise NormalizationError("cannot normalize the zero vector")
        return cls(amps / norm, local_dims)

    @property
    def n(self) -> int:
        return len(self.local_dims)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.local_dims)

    def projector(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.local_dims)

    def to_json(self) -> dict:
        return {
            "local_dims": list(self.local_dims),
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StateVector":
        try:
            dims = data["local_dims"]
            amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ShapeError(f"malformed state JSON: {exc}") from exc
        return cls(amps, dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator."""

    entries: np.ndarray
    local_dims: tuple[int, ...]
    _spectrum: np.ndarray = field(default=None, init=False, repr=False)

    def __post_init__(self):
        dims = _as_dims(self.local_dims)
        rho = np.asarray(self.entries, dtype=complex)
        d = int(np.prod(dims))
        if rho.shape != (d, d):
            raise ShapeError(f"matrix of shape {rho.shape} does not match local_dims {dims}")
        asym = np.max(np.abs(rho - rho.conj().T)) if d else 0.0
        if asym > HERMITIAN_TOL:
            raise SymmetryError(f"matrix is not Hermitian (max deviation {asym:.3g})")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > NORM_TOL:
            raise NormalizationError(f"trace is {tr!r}, expected 1")
        rho = 0.5 * (rho + rho.conj().T)
        evals = np.linalg.eigvalsh(rho)[::-1]
        if evals[-1] < -PSD_TOL:
            raise SymmetryError(f"matrix is not PSD (min eigenvalue {evals[-1]:.3g})")
        rho.setflags(write=False)
        evals = np.where(evals < 0, 0.0, evals)
        evals.setflags(write=False)
        object.__setattr__(self, "entries", rho)
        object.__setattr__(self, "local_dims", dims)
        object.__setattr__(self, "_spectrum", evals)

    @property
    def n(self) -> int:
        return len(self.local_dims)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def spectrum(self) -> np.ndarray:
        """Clamped eigenvalues in decreasing order (computed once at construction)."""
        return self._spectrum

    def to_json(self) -> dict:
        return {
            "local_dims": list(self.local_dims),
            "rows": [[[float(z.real), float(z.imag)] for z in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DensityMatrix":
        try:
            dims = data["local_dims"]
            rows = np.array([[complex(re, im) for re, im in row] for row in data["rows"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ShapeError(f"malformed density-matrix JSON: {exc}") from exc
        return cls(rows, dims)


State = Union[StateVector, DensityMatrix]


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    squared_coefficients: np.ndarray
    rank: int

    @property
    def largest(self) -> float:
        return float(self.squared_coefficients[0])

    @property
    def minor_weight(self) -> float:
        """``1 - largest``, summed from the small coefficients to avoid cancellation."""
        return float(np.sum(self.squared_coefficients[1:]))


def load_state(source) -> State:
    """Read a state or density matrix from a JSON file path, string or dict."""
    if isinstance(source, dict):
        data = source
    else:
        path = Path(source)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ShapeError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ShapeError("state JSON must be an object")
    if "amplitudes" in data:
        return StateVector.from_json(data)
    if "rows" in data:
        return DensityMatrix.from_json(data)
    raise ShapeError("state JSON needs either 'amplitudes' or 'rows'")


def dump_state(state: State, path) -> None:
    Path(path).write_text(json.dumps(state.to_json()))


def _check_keep(keep, n: int) -> tuple[int, ...]:
    keep = tuple(sorted(set(int(i) for i in keep)))
    if not keep or len(keep) >= n:
        raise PartitionError(f"keep={keep} must be a nonempty proper subset of 0..{n - 1}")
    if keep[0] < 0 or keep[-1] >= n:
        raise PartitionError(f"keep={keep} has indices outside 0..{n - 1}")
    return keep


def _matricize(psi: StateVector, block) -> np.ndarray:
    """Reshape amplitudes into a (dim block) x (dim rest) matrix."""
    rest = [i for i in range(psi.n) if i not in block]
    d_block = int(np.prod([psi.local_dims[i] for i in block]))
    return psi.tensor().transpose(list(block) + rest).reshape(d_block, -1)


def partial_trace(state: State, keep) -> DensityMatrix:
    """Reduced density operator on the parties in ``keep``.

    Examples
    --------
    >>> bell = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2))
    >>> partial_trace(bell, {0}).entries.real
    array([[0.5, 0. ],
           [0. , 0.5]])
    """
    keep = _check_keep(keep, state.n)
    dims = state.local_dims
    kept_dims = tuple(dims[i] for i in keep)
    if isinstance(state, StateVector):
        m = _matricize(state, keep)
        reduced = m @ m.conj().T
    elif isinstance(state, DensityMatrix):
        n = state.n
        rest = [i for i in range(n) if i not in keep]
        d_k = int(np.prod(kept_dims))
        d_r = state.dim // d_k
        t = state.entries.reshape(dims + dims)
        order = list(keep) + rest
        t = t.transpose(order + [n + i for i in order]).reshape(d_k, d_r, d_k, d_r)
        reduced = np.einsum("ijkj->ik", t)
    else:
        raise TypeError(f"expected StateVector or DensityMatrix, got {type(state).__name__}")
    tr = np.trace(reduced).real
    return DensityMatrix(reduced / tr, kept_dims)


def schmidt(state: StateVector, cut: Bipartition) -> SchmidtDecomposition:
    """Squared Schmidt coefficients of ``state`` across ``cut``, decreasing."""
    if not isinstance(state, StateVector):
        raise TypeError("schmidt() needs a pure StateVector")
    if cut.n != state.n:
        raise PartitionError(f"cut is for {cut.n} parties, state has {state.n}")
    sv = np.linalg.svd(_matricize(state, cut.block_s), compute_uv=False)
    lam = sv**2
    rank = int(np.count_nonzero(lam > SCHMIDT_RANK_THRESHOLD))
    return SchmidtDecomposition(lam, max(rank, 1))


def hermitian_eigenvalues(matrix) -> np.ndarray:
    """Real spectrum in decreasing order; tiny negatives are clamped to zero.

    Accepts a :class:`DensityMatrix` or any square array.
    """
    if isinstance(matrix, DensityMatrix):
        return matrix.spectrum.copy()
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    asym = np.max(np.abs(a - a.conj().T))
    if asym > HERMITIAN_TOL:
        raise SymmetryError(f"matrix is not Hermitian (max deviation {asym:.3g})")
    evals = np.linalg.eigvalsh(0.5 * (a + a.conj().T))[::-1]
    return np.where((evals < 0) & (evals >= -PSD_TOL), 0.0, evals)


def trace_power(rho, q: float) -> float:
    """``Tr rho**q`` computed from the clamped spectrum."""
    if q < 1:
        raise DomainError(f"trace_power needs q >= 1, got {q}")
    lam = hermitian_eigenvalues(rho)
    if lam[-1] < -PSD_TOL:
        raise SymmetryError(f"matrix is not PSD (min eigenvalue {lam[-1]:.3g})")
    return float(np.sum(lam**q))


def fidelity_with_pure(rho: DensityMatrix, phi: StateVector) -> float:
    """``<phi|rho|phi>``."""
    if rho.dim != phi.dim:
        raise ShapeError(f"dimension mismatch: rho is {rho.dim}, phi is {phi.dim}")
    v = phi.amplitudes
    return float(np.vdot(v, rho.entries @ v).real)


def state_distance(psi1: StateVector, psi2: StateVector) -> float:
    """Trace norm of ``|psi1><psi1| - |psi2><psi2|``, i.e. ``2 sqrt(1 - |<psi1|psi2>|^2)``."""
    if psi1.dim != psi2.dim:
        raise ShapeError(f"dimension mismatch: {psi1.dim} vs {psi2.dim}")
    overlap = abs(np.vdot(psi1.amplitudes, psi2.amplitudes)) ** 2
    return 2.0 * float(np.sqrt(max(0.0, 1.0 - overlap)))


def trace_distance(a, b) -> float:
    """Trace norm of ``a - b`` for two Hermitian operators of equal size."""
    a = a.entries if isinstance(a, DensityMatrix) else np.asarray(a)
    b = b.entries if isinstance(b, DensityMatrix) else np.asarray(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.sum(np.abs(np.linalg.eigvalsh(a - b))))
