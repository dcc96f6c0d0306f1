"""Complex linear-algebra substrate for the two-photon simulator.

A single photon lives on path (3: s, m, l) x polarization (2: H, V) x a
truncated OAM window.  Basis ordering is row-major with path slowest and
OAM fastest, so serialized amplitude arrays are portable.  All values are
immutable after construction and every operation is a pure function; zero
vectors (total post-selection failure) are representable and flagged, never
silently renormalized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BasisMismatchError, ZeroStateError

# Algebraic identities are held to TOL_ALGEBRA, operator classification
# (unitarity, idempotence) to the looser TOL_OPERATOR.  Stated once here,
# reused everywhere.
TOL_ALGEBRA = 1e-12
TOL_OPERATOR = 1e-10

PATHS = ("s", "m", "l")
POLS = ("H", "V")

SIGNAL = "signal"
IDLER = "idler"


def _as_path_index(path: int | str) -> int:
    if isinstance(path, str):
        return PATHS.index(path)
    if path not in (0, 1, 2):
        raise ValueError(f"path index out of range: {path}")
    return path


def _as_pol_index(pol: int | str) -> int:
    if isinstance(pol, str):
        return POLS.index(pol)
    if pol not in (0, 1):
        raise ValueError(f"polarization index out of range: {pol}")
    return pol


@dataclass(frozen=True)
class ModeBasis:
    """Truncated single-photon mode basis with its index arithmetic.

    The OAM window must contain l = 0 (the mono-mode-fiber projector targets
    it).  Index map: index = (path * 2 + pol) * oam_count + (l - oam_min).
    """

    oam_min: int = -2
    oam_max: int = 2

    path_dim: int = field(default=3, init=False)
    pol_dim: int = field(default=2, init=False)

    def __post_init__(self):
        if not (self.oam_min <= 0 <= self.oam_max):
            raise ValueError(
                f"OAM window [{self.oam_min}, {self.oam_max}] must contain l = 0"
            )

    @property
    def oam_count(self) -> int:
        return self.oam_max - self.oam_min + 1

    @property
    def dim(self) -> int:
        return self.path_dim * self.pol_dim * self.oam_count

    def contains_oam(self, l: int) -> bool:
        return self.oam_min <= l <= self.oam_max

    def index(self, path: int | str, pol: int | str, oam: int) -> int:
        """Flat index of |path, pol, l>."""
        p = _as_path_index(path)
        q = _as_pol_index(pol)
        if not self.contains_oam(oam):
            raise ValueError(f"OAM {oam} outside window [{self.oam_min}, {self.oam_max}]")
        return (p * self.pol_dim + q) * self.oam_count + (oam - self.oam_min)

    def decode(self, index: int) -> tuple[int, int, int]:
        """Inverse of index(); returns (path_idx, pol_idx, oam value l)."""
        if not 0 <= index < self.dim:
            raise ValueError(f"basis index out of range: {index}")
        rest, off = divmod(index, self.oam_count)
        p, q = divmod(rest, self.pol_dim)
        return p, q, off + self.oam_min

    def label(self, index: int) -> str:
        p, q, l = self.decode(index)
        return f"|{PATHS[p]},{POLS[q]},{l:+d}>"

    def ket(self, path: int | str, pol: int | str, oam: int) -> "StateVector":
        amps = np.zeros(self.dim, dtype=complex)
        amps[self.index(path, pol, oam)] = 1.0
        return StateVector(self, amps, arity=1)


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class StateVector:
    """One- or two-photon amplitude vector over a ModeBasis.

    Two-photon amplitudes are stored flat with the signal index slowest:
    amplitudes[i * dim + j] multiplies |i>_signal |j>_idler.
    """

    basis: ModeBasis
    amplitudes: np.ndarray
    arity: int = 1

    def __post_init__(self):
        if self.arity not in (1, 2):
            raise ValueError(f"arity must be 1 or 2, got {self.arity}")
        amps = _freeze(self.amplitudes)
        expected = self.basis.dim ** self.arity
        if amps.shape != (expected,):
            raise ValueError(
                f"amplitude array has shape {amps.shape}, expected ({expected},)"
            )
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def is_zero(self) -> bool:
        return self.norm < TOL_ALGEBRA

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm - 1.0) < TOL_ALGEBRA

    def normalized(self) -> "StateVector":
        n = self.norm
        if n < TOL_ALGEBRA:
            raise ZeroStateError("cannot normalize a zero state vector")
        return StateVector(self.basis, self.amplitudes / n, self.arity)

    def matrix(self) -> np.ndarray:
        """Two-photon amplitudes as a (dim, dim) matrix, signal index first."""
        if self.arity != 2:
            raise ValueError("matrix() requires a two-photon state")
        return self.amplitudes.reshape(self.basis.dim, self.basis.dim)


def _check_same_basis(a: StateVector | "PhotonOperator", b: StateVector | "PhotonOperator"):
    if a.basis != b.basis:
        raise BasisMismatchError("values built on different mode bases")


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Two-photon product state a (signal) x b (idler); norms multiply."""
    _check_same_basis(a, b)
    if a.arity != 1 or b.arity != 1:
        raise BasisMismatchError("tensor() takes two one-photon states")
    return StateVector(a.basis, np.kron(a.amplitudes, b.amplitudes), arity=2)


def inner(a: StateVector, b: StateVector) -> complex:
    """<a|b> with conjugation on a."""
    _check_same_basis(a, b)
    if a.arity != b.arity:
        raise BasisMismatchError("inner() requires equal arity")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def apply_to_photon(op: "PhotonOperator", which: str, state: StateVector) -> StateVector:
    """Apply (op x I) or (I x op) to a two-photon state.

    Norm may shrink when op is a projector or lossy element; the result is
    never renormalized here.
    """
    _check_same_basis(op, state)
    if state.arity != 2:
        raise BasisMismatchError("apply_to_photon() requires a two-photon state")
    A = state.matrix()
    if which == SIGNAL:
        out = op.matrix @ A
    elif which == IDLER:
        out = A @ op.matrix.T
    else:
        raise ValueError(f"which must be 'signal' or 'idler', got {which!r}")
    return StateVector(state.basis, out.reshape(-1), arity=2)


def partial_trace(state: StateVector, keep: str) -> np.ndarray:
    """Reduced density matrix of one photon of a normalized two-photon state."""
    if state.arity != 2:
        raise BasisMismatchError("partial_trace() requires a two-photon state")
    if abs(state.norm - 1.0) > 1e-9:
        raise ValueError(f"partial_trace() requires a normalized state, norm {state.norm}")
    A = state.matrix()
    if keep == SIGNAL:
        return A @ A.conj().T
    if keep == IDLER:
        return A.T @ A.conj()
    raise ValueError(f"keep must be 'signal' or 'idler', got {keep!r}")


def classify_kind(matrix: np.ndarray) -> str:
    """Tag a one-photon matrix as unitary, projector, or general."""
    eye = np.eye(matrix.shape[0])
    if np.abs(matrix.conj().T @ matrix - eye).max() < TOL_OPERATOR:
        return "unitary"
    if (
        np.abs(matrix @ matrix - matrix).max() < TOL_OPERATOR
        and np.abs(matrix - matrix.conj().T).max() < TOL_OPERATOR
    ):
        return "projector"
    return "general"


@dataclass(frozen=True)
class PhotonOperator:
    """Complex square matrix acting on one photon's mode space.

    kind is validated on construction: unitary requires ||U+U - I||_max below
    TOL_OPERATOR, projector requires idempotence and Hermiticity.
    """

    basis: ModeBasis
    matrix: np.ndarray
    kind: str = "general"

    def __post_init__(self):
        mat = _freeze(self.matrix)
        d = self.basis.dim
        if mat.shape != (d, d):
            raise ValueError(f"operator matrix has shape {mat.shape}, expected ({d}, {d})")
        if self.kind not in ("unitary", "projector", "general"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.kind != "general" and classify_kind(mat) != self.kind:
            raise ValueError(f"matrix does not satisfy the {self.kind} contract")
        object.__setattr__(self, "matrix", mat)

    def apply(self, state: StateVector) -> StateVector:
        """Apply to a one-photon state (no renormalization)."""
        _check_same_basis(self, state)
        if state.arity != 1:
            raise BasisMismatchError("apply() takes a one-photon state")
        return StateVector(self.basis, self.matrix @ state.amplitudes, arity=1)

    def then(self, later: "PhotonOperator") -> "PhotonOperator":
        """Composite 'self first, later second' with re-derived kind."""
        _check_same_basis(self, later)
        mat = later.matrix @ self.matrix
        return PhotonOperator(self.basis, mat, classify_kind(mat))


def identity_operator(basis: ModeBasis) -> PhotonOperator:
    return PhotonOperator(basis, np.eye(basis.dim), "unitary")
