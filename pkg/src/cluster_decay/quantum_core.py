"""Dense complex linear algebra shared by all physics modules.

States and operators are plain numpy arrays (complex128).  Tensor-product
ordering is fixed package-wide: qubit 1 occupies the most significant slot,
and when a boson mode is present it is always the least significant slot.
Validation helpers enforce the state/operator contracts; the heavy routines
assume already-validated input and raise ValueError on dimension mismatches.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
NORM_TOL = 1e-10
PSD_TOL = -1e-9  # eigenvalues of propagated states dip slightly below 0

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli(letter: str) -> np.ndarray:
    """Single-qubit Pauli matrix for letter in 'IXYZ'."""
    return _PAULI[letter].copy()


@dataclass(frozen=True)
class PauliString:
    """A signed multi-qubit Pauli operator, e.g. +1 * Z X Z.

    phase must be one of +1, -1, +1j, -1j; letters is a string over 'IXYZ',
    one letter per qubit (qubit 1 first / most significant).
    """

    phase: complex
    letters: str

    def __post_init__(self):
        if self.phase not in (1, -1, 1j, -1j):
            raise ValueError(f"phase must be a fourth root of unity, got {self.phase}")
        if not self.letters or any(c not in "IXYZ" for c in self.letters):
            raise ValueError(f"letters must be a nonempty string over IXYZ, got {self.letters!r}")

    @property
    def n(self) -> int:
        return len(self.letters)

    def matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix representation."""
        return self.phase * tensor(*(_PAULI[c] for c in self.letters))

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise ValueError("PauliString lengths differ")
        table = {
            ("X", "Y"): (1j, "Z"), ("Y", "X"): (-1j, "Z"),
            ("Y", "Z"): (1j, "X"), ("Z", "Y"): (-1j, "X"),
            ("Z", "X"): (1j, "Y"), ("X", "Z"): (-1j, "Y"),
        }
        phase = self.phase * other.phase
        letters = []
        for a, b in zip(self.letters, other.letters):
            if a == "I":
                letters.append(b)
            elif b == "I" or a == b:
                letters.append("I" if a == b else a)
            else:
                ph, c = table[(a, b)]
                phase *= ph
                letters.append(c)
        return PauliString(phase, "".join(letters))


def tensor(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor as the most significant slot.

    Accepts vectors and/or matrices; dimensions always compose.
    """
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))


def basis_state(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def is_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    return a.ndim == 2 and a.shape[0] == a.shape[1] and \
        np.max(np.abs(a - a.conj().T)) <= tol


def assert_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> None:
    if not is_hermitian(a, tol):
        raise ValueError("operator is not Hermitian within tolerance")


def assert_pure_state(psi: np.ndarray, tol: float = NORM_TOL) -> None:
    psi = np.asarray(psi)
    if psi.ndim != 1:
        raise ValueError("pure state must be a vector")
    if abs(np.linalg.norm(psi) - 1.0) > tol:
        raise ValueError("pure state is not normalized")


def assert_density_matrix(rho: np.ndarray, psd: bool = False) -> None:
    """Check Hermiticity and unit trace; optionally positive semidefiniteness.

    The PSD check costs a full eigensolve, so it is opt-in (tests and small
    systems); eigenvalues may dip to PSD_TOL from accumulated rounding.
    """
    assert_hermitian(rho)
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL or abs(np.trace(rho).imag) > TRACE_TOL:
        raise ValueError("density matrix trace is not 1")
    if psd:
        if np.linalg.eigvalsh(rho).min() < PSD_TOL:
            raise ValueError("density matrix has a negative eigenvalue beyond tolerance")


def partial_trace(rho: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out all subsystems except those in `keep` (1-based indices).

    dims lists the subsystem dimensions in tensor order; their product must
    equal the matrix dimension.  The kept subsystems retain their original
    relative order.
    """
    rho = np.asarray(rho, dtype=complex)
    dims = list(dims)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(f"dims {dims} do not match matrix dimension {rho.shape}")
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep must be nonempty")
    if keep[0] < 1 or keep[-1] > len(dims):
        raise ValueError(f"keep indices out of range for {len(dims)} subsystems")
    k = len(dims)
    t = rho.reshape(dims + dims)
    # contract bra/ket axes of every traced subsystem
    for subsys in reversed(range(1, k + 1)):
        if subsys in keep:
            continue
        ax = subsys - 1
        nax = t.ndim // 2
        t = np.trace(t, axis1=ax, axis2=ax + nax)
    d_keep = int(np.prod([dims[i - 1] for i in keep]))
    return t.reshape(d_keep, d_keep)


def hermitian_eig(h: np.ndarray):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, unitary eigenvector matrix V) with
    h = V diag(w) V^dagger.
    """
    h = np.asarray(h, dtype=complex)
    assert_hermitian(h)
    w, v = np.linalg.eigh(h)
    return w, v


def evolve_unitary(h: np.ndarray, rho0: np.ndarray, t: float) -> np.ndarray:
    """Conjugate rho0 by exp(-i h t), via eigendecomposition of h."""
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != h.shape:
        raise ValueError("state and Hamiltonian dimensions differ")
    w, v = hermitian_eig(h)
    phases = np.exp(-1j * w * t)
    u = (v * phases) @ v.conj().T
    return u @ rho0 @ u.conj().T


def thermal_state(h: np.ndarray, beta: float) -> np.ndarray:
    """Gibbs state exp(-beta h)/Z, overflow-safe via ground-energy subtraction.

    beta = +inf returns the normalized projector onto the ground eigenspace.
    """
    if beta < 0 or np.isnan(beta):
        raise ValueError("inverse temperature must be >= 0 (or +inf)")
    w, v = hermitian_eig(h)
    if np.isinf(beta):
        scale = max(1.0, abs(w[0]))
        ground = w <= w[0] + 1e-9 * scale
        p = ground.astype(float)
    else:
        p = np.exp(-beta * (w - w[0]))
    p /= p.sum()
    return (v * p) @ v.conj().T


def fidelity_pure(rho: np.ndarray, psi: np.ndarray) -> float:
    """Overlap <psi|rho|psi>, clamped into [0, 1] for small numerical spill."""
    rho = np.asarray(rho, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if rho.shape != (psi.size, psi.size):
        raise ValueError("state dimensions differ")
    f = float(np.real(psi.conj() @ rho @ psi))
    if f < -1e-9 or f > 1 + 1e-9:
        raise ValueError(f"fidelity {f} outside [0,1] beyond tolerance")
    return min(1.0, max(0.0, f))


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Half the trace norm of a - b."""
    d = np.asarray(a) - np.asarray(b)
    return 0.5 * float(np.abs(np.linalg.eigvalsh(d)).sum())
