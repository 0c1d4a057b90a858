"""Pure bipartite states and their entanglement measures."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NotDensity, NotNormalized, WrongShape

NORM_TOL = 1e-10
ENTROPY_ZERO_TOL = 1e-9
TRACE_TOL = 1e-10
PSD_FLOOR = -1e-12

LOG3_2 = math.log(2) / math.log(3)


@dataclass(frozen=True)
class PureState:
    party_dims: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.party_dims)
        if not dims or any(d < 1 for d in dims):
            raise WrongShape(f"invalid party dimensions {self.party_dims}")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != math.prod(dims):
            raise WrongShape(f"{amps.size} amplitudes for party dimensions {dims}")
        if not np.all(np.isfinite(amps)):
            raise WrongShape("non-finite amplitude")
        amps.setflags(write=False)
        object.__setattr__(self, "party_dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm - 1.0) <= tol

    def require_normalized(self) -> None:
        if not self.is_normalized():
            raise NotNormalized(f"state norm is {self.norm:.12g}, expected 1")

    def renormalized(self) -> "PureState":
        return PureState(self.party_dims, self.amplitudes / self.norm)

    def apply(self, op: np.ndarray) -> "PureState":
        op = np.asarray(op)
        if op.shape != (self.amplitudes.size, self.amplitudes.size):
            raise WrongShape(f"operator of shape {op.shape} cannot act on {self.amplitudes.size} amplitudes")
        return PureState(self.party_dims, op @ self.amplitudes)


def _require_dims(s: PureState, dims: tuple) -> None:
    if s.party_dims != dims:
        raise WrongShape(f"expected party dimensions {dims}, got {s.party_dims}")


def concurrence(s: PureState) -> float:
    _require_dims(s, (2, 2))
    s.require_normalized()
    a00, a01, a10, a11 = s.amplitudes
    return float(2 * abs(a00 * a11 - a01 * a10))


def reduced_density(s: PureState, party: int) -> np.ndarray:
    if len(s.party_dims) != 2:
        raise WrongShape("reduced_density handles bipartite states only")
    if party not in (1, 2):
        raise WrongShape(f"party must be 1 or 2, got {party}")
    s.require_normalized()
    psi = s.amplitudes.reshape(s.party_dims)
    if party == 1:
        return psi @ psi.conj().T
    return psi.T @ psi.conj()


def entropy_base3(rho) -> float:
    """-sum p log3 p over the spectrum of a density matrix, with 0 log 0 = 0."""
    rho = linalg.as_matrix(rho)
    if not linalg.is_hermitian(rho):
        raise NotDensity("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > TRACE_TOL:
        raise NotDensity(f"density matrix has trace {np.trace(rho).real:.12g}")
    weights = linalg.hermitian_eigenvalues(rho)
    if weights[0] < PSD_FLOOR:
        raise NotDensity(f"density matrix has eigenvalue {weights[0]:.3e}")
    return float(-sum(w * math.log(w, 3) for w in weights if w > 0))


def partial_entropies(s: PureState) -> tuple[float, float]:
    return entropy_base3(reduced_density(s, 1)), entropy_base3(reduced_density(s, 2))


def mean_entropy(s: PureState) -> float:
    """Average base-3 partial entropy, or exactly 0 when either party is pure."""
    _require_dims(s, (3, 3))
    s1, s2 = partial_entropies(s)
    if s1 <= ENTROPY_ZERO_TOL or s2 <= ENTROPY_ZERO_TOL:
        return 0.0
    return (s1 + s2) / 2


def c_ini_closed_form(alpha1: float, alpha2: float) -> float:
    """Entanglement of alpha1 |eta0'> + alpha2 |eta0> from its diagonal weights."""
    if abs(alpha1**2 + alpha2**2 - 1) > NORM_TOL:
        raise NotNormalized(f"alpha1^2 + alpha2^2 = {alpha1**2 + alpha2**2:.12g}, expected 1")
    p = (alpha1 / math.sqrt(3) - alpha2 / math.sqrt(6)) ** 2
    q = (alpha1 / math.sqrt(3) + 2 * alpha2 / math.sqrt(6)) ** 2

    def h(x):
        return -x * math.log(x, 3) if x > 0 else 0.0

    return 2 * h(p) + h(q)


def binary_entropy_base3(p: float) -> float:
    return -sum(x * math.log(x, 3) for x in (p, 1 - p) if x > 0)
