"""Optical-element catalog as one-photon operators.

Polarization controls (PBS/HWP/QWP Jones transforms), OAM controls (CGH
shift/superposition and the mono-mode-fiber projector), and the symmetric
three-port combiner phase structure.  Every element acts as the identity on
the path factor; paths are changed only by the interferometer itself.

Conventions (fixed; all fidelity comparisons downstream are global-phase
invariant so they cannot leak into results):
  HWP(t) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
  QWP(t) = R(-t) diag(1, i) R(t), so QWP(0) = diag(1, i) and
           QWP(pi/4)|H> ~ (|H> + i|V>)/sqrt2
  tritter: arm n -> port j picks up exp(i 2pi n j / 3) / sqrt3
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ZeroStateError
from .hilbert import ModeBasis, PhotonOperator, classify_kind

_PATH_INDEX = {"s": 0, "m": 1, "l": 2}


@dataclass(frozen=True)
class PcSetting:
    """Per-arm polarization control: optional PBS, then HWP, then QWP."""

    use_pbs: bool = False
    pbs_port: str = "H"
    hwp_angle: float = 0.0
    qwp_angle: float = 0.0

    def __post_init__(self):
        if self.pbs_port not in ("H", "V"):
            raise ValueError(f"pbs_port must be 'H' or 'V', got {self.pbs_port!r}")
        if not (np.isfinite(self.hwp_angle) and np.isfinite(self.qwp_angle)):
            raise ValueError("waveplate angles must be finite")


@dataclass(frozen=True)
class OamcSetting:
    """Per-arm OAM control: optional mono-mode fiber, then CGH shifts.

    hologram is a list of (shift, complex weight) terms; efficiency is a
    uniform amplitude scale sqrt(efficiency) with probability bookkeeping.
    """

    use_mmf: bool = True
    hologram: tuple[tuple[int, complex], ...] = ((0, 1.0 + 0.0j),)
    efficiency: float = 1.0

    def __post_init__(self):
        holo = tuple((int(s), complex(w)) for s, w in self.hologram)
        if not holo or all(abs(w) == 0.0 for _, w in holo):
            raise ValueError("hologram weights must not all be zero")
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError(f"efficiency must lie in (0, 1], got {self.efficiency}")
        object.__setattr__(self, "hologram", holo)


def jones_hwp(theta: float) -> np.ndarray:
    c, s = np.cos(2 * theta), np.sin(2 * theta)
    return np.array([[c, s], [s, -c]], dtype=complex)


def jones_qwp(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    rot = np.array([[c, -s], [s, c]], dtype=complex)
    return rot.T @ np.diag([1.0, 1.0j]) @ rot


def _lift_pol(jones: np.ndarray, basis: ModeBasis) -> np.ndarray:
    return np.kron(np.eye(basis.path_dim), np.kron(jones, np.eye(basis.oam_count)))


def _lift_oam(block: np.ndarray, basis: ModeBasis) -> np.ndarray:
    return np.kron(np.eye(basis.path_dim * basis.pol_dim), block)


def hwp(theta: float, basis: ModeBasis | None = None) -> PhotonOperator:
    """Half-wave plate at angle theta on the polarization factor."""
    basis = basis or ModeBasis()
    return PhotonOperator(basis, _lift_pol(jones_hwp(theta), basis), "unitary")


def qwp(theta: float, basis: ModeBasis | None = None) -> PhotonOperator:
    """Quarter-wave plate at angle theta on the polarization factor."""
    basis = basis or ModeBasis()
    return PhotonOperator(basis, _lift_pol(jones_qwp(theta), basis), "unitary")


def pbs_project(port: str, basis: ModeBasis | None = None) -> PhotonOperator:
    """Projector onto the chosen polarization, identity on path/OAM."""
    basis = basis or ModeBasis()
    jones = np.diag([1.0, 0.0]) if port == "H" else np.diag([0.0, 1.0])
    return PhotonOperator(basis, _lift_pol(jones, basis), "projector")


def mmf_project(basis: ModeBasis | None = None) -> PhotonOperator:
    """Mono-mode-fiber projector onto l = 0 on the OAM factor."""
    basis = basis or ModeBasis()
    block = np.zeros((basis.oam_count, basis.oam_count))
    block[-basis.oam_min, -basis.oam_min] = 1.0
    return PhotonOperator(basis, _lift_oam(block, basis), "projector")


@dataclass(frozen=True)
class CghResult:
    """CGH operator plus truncation bookkeeping.

    leakage[i] is the squared weight that input OAM slot i would send outside
    the truncation window; retained + leaked weight equals the total hologram
    weight for every input.  scale is the divisor applied to cap the largest
    singular value at 1 (1.0 when no rescale was needed).
    """

    operator: PhotonOperator
    leakage: np.ndarray
    scale: float


def cgh(hologram, basis: ModeBasis | None = None) -> CghResult:
    """Weighted sum of OAM shifts: sum_k w_k Shift(dl_k) on the OAM factor.

    Shifted components that exit the truncation window are dropped and
    reported as leakage.  Raises ZeroStateError if every shifted component
    leaves the window.
    """
    basis = basis or ModeBasis()
    n = basis.oam_count
    block = np.zeros((n, n), dtype=complex)
    leakage = np.zeros(n)
    terms = [(int(s), complex(w)) for s, w in hologram]
    for offset in range(n):
        for shift, weight in terms:
            target = offset + shift
            if 0 <= target < n:
                block[target, offset] += weight
            else:
                leakage[offset] += abs(weight) ** 2
    if np.abs(block).max() == 0.0:
        raise ZeroStateError("every hologram component leaves the truncation window")
    smax = float(np.linalg.svd(block, compute_uv=False)[0])
    scale = max(1.0, smax)
    block = block / scale
    lifted = _lift_oam(block, basis)
    op = PhotonOperator(basis, lifted, classify_kind(lifted))
    leak = np.array(leakage)
    leak.setflags(write=False)
    return CghResult(op, leak, scale)


@dataclass(frozen=True)
class OamcResult:
    """Composite OAM control: (MMF filter, then CGH), scaled by sqrt(efficiency).

    success_factor is the squared amplitude scale applied uniformly (the
    efficiency); per-mode projection losses show up in output norms instead.
    """

    operator: PhotonOperator
    success_factor: float
    cgh: CghResult | None


def oamc_operator(setting: OamcSetting, basis: ModeBasis | None = None) -> OamcResult:
    """OAM control operator: filter to l = 0 (if use_mmf), imprint the hologram."""
    basis = basis or ModeBasis()
    cgh_result = cgh(setting.hologram, basis)
    mat = cgh_result.operator.matrix
    if setting.use_mmf:
        mat = mat @ mmf_project(basis).matrix
    mat = np.sqrt(setting.efficiency) * mat
    return OamcResult(
        PhotonOperator(basis, mat, classify_kind(mat)),
        setting.efficiency,
        cgh_result,
    )


def pc_operator(setting: PcSetting, basis: ModeBasis | None = None) -> PhotonOperator:
    """Polarization control operator: PBS (if used), then HWP, then QWP."""
    basis = basis or ModeBasis()
    jones = jones_qwp(setting.qwp_angle) @ jones_hwp(setting.hwp_angle)
    if setting.use_pbs:
        port = np.diag([1.0, 0.0]) if setting.pbs_port == "H" else np.diag([0.0, 1.0])
        jones = jones @ port
    lifted = _lift_pol(jones, basis)
    return PhotonOperator(basis, lifted, classify_kind(lifted))


def tritter_phase(arm: str | int, out_port: int) -> float:
    """Phase picked up by arm {s,m,l} exiting the symmetric 3-port at out_port.

    Returns 2pi/3 * arm_index * out_port, the discrete-Fourier multiport
    convention (the unique balanced lossless 3-port up to relabeling).
    """
    n = _PATH_INDEX[arm] if isinstance(arm, str) else int(arm)
    if n not in (0, 1, 2) or out_port not in (0, 1, 2):
        raise ValueError(f"arm/out_port out of range: {arm!r}, {out_port!r}")
    return 2.0 * np.pi / 3.0 * n * out_port


def tritter_matrix() -> np.ndarray:
    """The 3x3 combiner unitary assembled from tritter_phase entries."""
    return np.array(
        [
            [np.exp(1j * tritter_phase(n, j)) / np.sqrt(3.0) for n in range(3)]
            for j in range(3)
        ]
    )
