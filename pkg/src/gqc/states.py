"""Constructors for the state families used throughout the package."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import pi

import numpy as np

from .errors import DomainError, ShapeError
from .tensor import DensityMatrix, StateVector, load_state


@dataclass(frozen=True, eq=False)
class NoisyStateSpec:
    """A pure ``base`` state mixed with white noise at the given visibility."""

    base: StateVector
    visibility: float

    def __post_init__(self):
        if not 0.0 <= self.visibility <= 1.0:
            raise DomainError(f"visibility must lie in [0, 1], got {self.visibility}")


def _qubits(n: int, name: str) -> None:
    if n < 2:
        raise DomainError(f"{name} needs n >= 2 qubits, got {n}")


def basis_state(bits: str, local_dims=None) -> StateVector:
    """Computational basis state, e.g. ``basis_state("010")``."""
    digits = [int(c) for c in bits]
    dims = tuple(local_dims) if local_dims is not None else (2,) * len(digits)
    if len(dims) != len(digits) or any(x >= d for x, d in zip(digits, dims)):
        raise ShapeError(f"basis label {bits!r} does not fit local_dims {dims}")
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    amps[np.ravel_multi_index(digits, dims)] = 1.0
    return StateVector(amps, dims)


def w_state(n: int) -> StateVector:
    """``(|10..0> + |01..0> + ... + |00..1>) / sqrt(n)``."""
    _qubits(n, "w_state")
    amps = np.zeros(2**n, dtype=complex)
    amps[[1 << k for k in range(n)]] = 1.0 / np.sqrt(n)
    return StateVector(amps, (2,) * n)


def ghz_state(n: int) -> StateVector:
    """``(|00..0> + |11..1>) / sqrt(2)``."""
    _qubits(n, "ghz_state")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2)
    return StateVector(amps, (2,) * n)


def noisy_state(spec: NoisyStateSpec) -> DensityMatrix:
    """``v |base><base| + (1 - v) I / D`` with ``D`` the total dimension."""
    base = spec.base
    v = float(spec.visibility)
    d = base.dim
    rho = v * np.outer(base.amplitudes, base.amplitudes.conj()) + (1.0 - v) / d * np.eye(d)
    return DensityMatrix(rho, base.local_dims)


def _check_theta(theta: float, name: str) -> None:
    if theta < 0.0 or theta > pi / 2:
        raise DomainError(f"{name}: theta={theta} is outside [0, pi/2]")
    if theta == 0.0 or theta == pi / 2:
        warnings.warn(f"{name}: theta={theta} is an endpoint of the open family range", stacklevel=3)


def class1(theta: float) -> StateVector:
    """``(cos t |000> + sin t |001>) / sqrt(2) + |111> / sqrt(2)``."""
    _check_theta(theta, "class1")
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = np.cos(theta) / np.sqrt(2)
    amps[0b001] = np.sin(theta) / np.sqrt(2)
    amps[0b111] = 1.0 / np.sqrt(2)
    return StateVector(amps, (2, 2, 2))


def class2(theta: float) -> StateVector:
    """``cos t |000> + sin t |111>``."""
    _check_theta(theta, "class2")
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = np.cos(theta)
    amps[0b111] = np.sin(theta)
    return StateVector(amps, (2, 2, 2))


def four_qubit_family(theta: float) -> StateVector:
    """``cos t (cos(2pi/3)|0100> + sin(2pi/3)|1000>) + sin t |0111>``."""
    _check_theta(theta, "four_qubit_family")
    amps = np.zeros(16, dtype=complex)
    amps[0b0100] = np.cos(theta) * np.cos(2 * pi / 3)
    amps[0b1000] = np.cos(theta) * np.sin(2 * pi / 3)
    amps[0b0111] = np.sin(theta)
    return StateVector(amps, (2, 2, 2, 2))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_random_pure(local_dims, seed) -> StateVector:
    """Unitarily invariant random pure state from normalized complex Gaussians.

    ``seed`` is an integer or an existing ``numpy.random.Generator``; passing a
    generator advances it, which is how the property suites draw many states.
    """
    dims = tuple(int(d) for d in local_dims)
    if any(d < 2 for d in dims):
        raise DomainError(f"local dimensions must be >= 2, got {dims}")
    rng = _rng(seed)
    d = int(np.prod(dims))
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return StateVector(z / np.linalg.norm(z), dims)


def haar_random_unitary(d: int, seed) -> np.ndarray:
    """Haar unitary via QR of a Ginibre matrix with the phase fix."""
    rng = _rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_density_matrix(local_dims, seed, rank: int | None = None) -> DensityMatrix:
    """Random mixed state ``G G^dag / Tr`` with a ``d x rank`` Ginibre ``G``."""
    dims = tuple(int(d) for d in local_dims)
    rng = _rng(seed)
    d = int(np.prod(dims))
    k = d if rank is None else int(rank)
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return DensityMatrix(0.5 * (rho + rho.conj().T), dims)


def product_state(factors) -> StateVector:
    """Tensor product of single-party states, party 0 first."""
    factors = list(factors)
    if not factors:
        raise ShapeError("product_state needs at least one factor")
    amps = np.ones(1, dtype=complex)
    dims: tuple[int, ...] = ()
    for f in factors:
        amps = np.kron(amps, f.amplitudes)
        dims = dims + f.local_dims
    return StateVector.normalized(amps, dims)


def apply_local_unitaries(psi: StateVector, unitaries) -> StateVector:
    """Apply one unitary per party."""
    t = psi.tensor()
    for k, u in enumerate(unitaries):
        t = np.moveaxis(np.tensordot(u, t, axes=([1], [k])), 0, k)
    return StateVector.normalized(t.reshape(-1), psi.local_dims)


def parse_state(path):
    """Load a :class:`StateVector` or :class:`DensityMatrix` from a JSON file."""
    return load_state(path)


def paired_tensor(psi1: StateVector, psi2: StateVector) -> StateVector:
    """``psi1 (x) psi2`` regrouped so party ``i`` holds both copies of party ``i``.

    The result stays ``n``-partite with local dimensions ``d_i * e_i``.
    """
    if psi1.n != psi2.n:
        raise ShapeError(f"party counts differ: {psi1.n} vs {psi2.n}")
    n = psi1.n
    t = np.multiply.outer(psi1.tensor(), psi2.tensor())
    order = [ax for i in range(n) for ax in (i, n + i)]
    dims = tuple(a * b for a, b in zip(psi1.local_dims, psi2.local_dims))
    return StateVector.normalized(t.transpose(order).reshape(-1), dims)
