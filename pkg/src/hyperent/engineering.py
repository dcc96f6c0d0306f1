"""State engineering on top of the three-arm source.

Covers the polarization-pair qudit encodings, the three-group recipe for
arbitrary two-partite OAM qutrits, combined polarization+OAM targets,
multi-degree GHZ assembly, and the degree-collapsing remap onto a single
per-photon qudit index.

Design functions return a SetupConfig whose build -> encode pipeline
reproduces the target.  They choose the discrete structure (arm assignment,
waveplate angles, hologram weights) from the target and then calibrate the
complex arm amplitudes against a forward simulation of each branch, so
waveplate phase conventions, hologram rescaling and efficiency factors can
never skew the round trip.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import EncodingError, InfeasibleTargetError
from .hilbert import ModeBasis, StateVector, tensor
from .optics import OamcSetting, PcSetting
from .source import ArmControls, SetupConfig, prepare_arm_photon

PAIR_TABLE_QUTRIT = {"HH": 0, "HV": 1, "VV": 2}
PAIR_TABLE_QUQUART = {"HH": 0, "HV": 1, "VV": 2, "VH": 3}

# digit -> (signal pol, idler pol) under the standard pair encoding
_DIGIT_CLASS = ("HH", "HV", "VV", "VH")

# Out-of-domain amplitude below this magnitude is treated as numerical noise.
_DOMAIN_ATOL = 1e-9


class RenormalizationNotice(UserWarning):
    """Issued when a user target is renormalized instead of rejected."""


@dataclass(frozen=True)
class DegreeEncoding:
    """Ordered list of logical degrees plus the polarization-pair digit table."""

    degrees: tuple[tuple[str, int], ...]
    pair_encoding_table: dict | None = None

    def __post_init__(self):
        for label, dim in self.degrees:
            if label not in ("path", "polarization", "oam"):
                raise ValueError(f"unknown degree label {label!r}")
            if dim < 2:
                raise ValueError(f"degree {label!r} needs dimension >= 2")
        table = self.pair_encoding_table
        if table is not None:
            if any(key not in _DIGIT_CLASS for key in table):
                raise ValueError("pair table keys must be two-photon polarization pairs")
            if len(set(table.values())) != len(table):
                raise ValueError("pair table must be injective")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.degrees)


@dataclass(frozen=True)
class TargetSpec:
    """User-supplied target coefficients, normalized on entry with a notice."""

    kind: str
    coefficients: np.ndarray

    _SHAPES = {
        "qutrit": (3,),
        "ququart": (4,),
        "oam-matrix": (3, 3),
        "three-degree": (3, 3, 3),
    }

    def __post_init__(self):
        if self.kind not in self._SHAPES:
            raise ValueError(f"unknown target kind {self.kind!r}")
        coeffs = np.asarray(self.coefficients, dtype=complex)
        if coeffs.shape != self._SHAPES[self.kind]:
            raise ValueError(
                f"{self.kind} target needs shape {self._SHAPES[self.kind]}, got {coeffs.shape}"
            )
        norm = np.linalg.norm(coeffs)
        if norm == 0.0:
            raise InfeasibleTargetError("target coefficients are all zero")
        if abs(norm - 1.0) > 1e-12:
            warnings.warn(
                f"target renormalized (norm was {norm:.6g})", RenormalizationNotice
            )
            coeffs = coeffs / norm
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)


def _normalized_target(target, kind: str) -> np.ndarray:
    if isinstance(target, TargetSpec):
        if target.kind != kind and not (kind == "qutrit" and target.kind == "ququart"):
            raise ValueError(f"expected a {kind} target, got {target.kind}")
        return target.coefficients
    return TargetSpec(kind, np.asarray(target, dtype=complex)).coefficients


# ---------------------------------------------------------------------------
# logical encodings (coherent read-outs of the built physical state)
# ---------------------------------------------------------------------------

def _same_arm_block(state: StateVector) -> np.ndarray:
    """Amplitudes as [arm, pol_s, oam_s, pol_i, oam_i]; rejects cross-arm weight."""
    basis = state.basis
    c = basis.oam_count
    six = state.matrix().reshape(3, 2, c, 3, 2, c)
    cross = 0.0
    for a in range(3):
        for b in range(3):
            if a != b:
                cross += float(np.sum(np.abs(six[a, :, :, b, :, :]) ** 2))
    if np.sqrt(cross) > _DOMAIN_ATOL:
        raise EncodingError("state is not restricted to the same-arm sector")
    return np.stack([six[a, :, :, a, :, :] for a in range(3)])


def _oam_slice(basis: ModeBasis, dim: int) -> slice:
    lo = -basis.oam_min
    if basis.oam_max < dim - 1:
        raise EncodingError(f"basis window too small for OAM digits 0..{dim - 1}")
    return slice(lo, lo + dim)


def _check_oam_domain(block: np.ndarray, basis: ModeBasis, dim: int):
    c = basis.oam_count
    sl = _oam_slice(basis, dim)
    keep = np.zeros(c, dtype=bool)
    keep[sl] = True
    out = float(np.sum(np.abs(block[:, :, ~keep, :, :]) ** 2))
    out += float(np.sum(np.abs(block[:, :, :, :, ~keep]) ** 2))
    if np.sqrt(out) > _DOMAIN_ATOL:
        raise EncodingError(f"state carries OAM amplitude outside digits 0..{dim - 1}")


def encode_polarization_pairs(state, table: dict | None = None) -> np.ndarray:
    """Logical qudit amplitudes grouped by two-photon polarization pair.

    Path and OAM labels are folded coherently; the result is normalized.
    Raises EncodingError when the state holds amplitude on a pair outside the
    table's domain.
    """
    table = dict(table) if table is not None else dict(PAIR_TABLE_QUTRIT)
    sv = state.state if hasattr(state, "state") else state
    block = _same_arm_block(sv)
    dim = max(table.values()) + 1
    out = np.zeros(dim, dtype=complex)
    for ps in range(2):
        for pi in range(2):
            cls = "HV"[ps] + "HV"[pi]
            weight = block[:, ps, :, pi, :].sum()
            if cls in table:
                out[table[cls]] += weight
            elif np.sqrt(float(np.sum(np.abs(block[:, ps, :, pi, :]) ** 2))) > _DOMAIN_ATOL:
                raise EncodingError(f"amplitude on pair {cls} outside the encoding table")
    norm = np.linalg.norm(out)
    if norm == 0.0:
        raise EncodingError("no amplitude inside the encoding table domain")
    return out / norm


def encode_oam_pairs(state, dim: int = 3) -> np.ndarray:
    """Logical two-partite OAM amplitudes (path and polarization folded)."""
    sv = state.state if hasattr(state, "state") else state
    block = _same_arm_block(sv)
    _check_oam_domain(block, sv.basis, dim)
    sl = _oam_slice(sv.basis, dim)
    window = block[:, :, sl, :, sl]  # [arm, pol_s, oam_s, pol_i, oam_i]
    out = window.sum(axis=(0, 1, 3))
    norm = np.linalg.norm(out)
    if norm == 0.0:
        raise EncodingError("no amplitude inside the OAM digit window")
    return out / norm


def encode_three_degree(state, table: dict | None = None, oam_dim: int = 3) -> np.ndarray:
    """Logical amplitudes over (signal OAM, idler OAM, polarization pair)."""
    table = dict(table) if table is not None else dict(PAIR_TABLE_QUTRIT)
    sv = state.state if hasattr(state, "state") else state
    block = _same_arm_block(sv)
    _check_oam_domain(block, sv.basis, oam_dim)
    sl = _oam_slice(sv.basis, oam_dim)
    pdim = max(table.values()) + 1
    out = np.zeros((oam_dim, oam_dim, pdim), dtype=complex)
    for ps in range(2):
        for pi in range(2):
            cls = "HV"[ps] + "HV"[pi]
            sub = block[:, ps, sl, pi, sl]
            if cls in table:
                out[:, :, table[cls]] += sub.sum(axis=0)
            elif np.sqrt(float(np.sum(np.abs(sub) ** 2))) > _DOMAIN_ATOL:
                raise EncodingError(f"amplitude on pair {cls} outside the encoding table")
    norm = np.linalg.norm(out)
    if norm == 0.0:
        raise EncodingError("no amplitude inside the encoding domain")
    return out / norm


def collapse_degrees(state, per_photon_digits: tuple[int, int] = (3, 2)) -> np.ndarray:
    """Remap each photon's (OAM, polarization) onto one qudit digit.

    Per-photon index = oam_digit * pol_dim + pol_digit, so with (3, 2) the
    enumeration runs |0_H>, |0_V>, |1_H>, |1_V>, |2_H>, |2_V>.  The path label
    is folded coherently; on states whose path factor is fixed the map is an
    isometry (all inner products preserved), and no renormalization is done.
    """
    oam_dim, pol_dim = per_photon_digits
    if pol_dim not in (1, 2) or oam_dim < 1:
        raise ValueError(f"unsupported per-photon digit split {per_photon_digits}")
    sv = state.state if hasattr(state, "state") else state
    block = _same_arm_block(sv)
    _check_oam_domain(block, sv.basis, oam_dim)
    sl = _oam_slice(sv.basis, oam_dim)
    d = oam_dim * pol_dim
    out = np.zeros((d, d), dtype=complex)
    for ps in range(pol_dim):
        for pi in range(pol_dim):
            sub = block[:, ps, sl, pi, sl].sum(axis=0)  # [oam_s, oam_i]
            for m in range(oam_dim):
                for n in range(oam_dim):
                    out[m * pol_dim + ps, n * pol_dim + pi] = sub[m, n]
    return out


# ---------------------------------------------------------------------------
# canonical states and setups
# ---------------------------------------------------------------------------

def path_ghz_state(basis: ModeBasis | None = None) -> StateVector:
    """The canonical energy-time qutrit pair: equal same-arm branches, H, l=0."""
    basis = basis or ModeBasis()
    amps = np.zeros(basis.dim ** 2, dtype=complex)
    for arm in "sml":
        i = basis.index(arm, "H", 0)
        amps[i * basis.dim + i] = 1.0 / np.sqrt(3.0)
    return StateVector(basis, amps, arity=2)


TABLE_SIGNAL_POLS = ("H", "H", "V")
TABLE_IDLER_POLS = ("H", "V", "V")


def polarization_dressed_state(basis: ModeBasis | None = None) -> StateVector:
    """Path GHZ dressed with per-arm polarizations H/H/V (signal), H/V/V (idler)."""
    basis = basis or ModeBasis()
    amps = np.zeros(basis.dim ** 2, dtype=complex)
    for n, arm in enumerate("sml"):
        i = basis.index(arm, TABLE_SIGNAL_POLS[n], 0)
        j = basis.index(arm, TABLE_IDLER_POLS[n], 0)
        amps[i * basis.dim + j] = 1.0 / np.sqrt(3.0)
    return StateVector(basis, amps, arity=2)


def _exact_pol_pc(pol: str) -> PcSetting | None:
    # H input passes a default PC unchanged; the (pi/4, pi/2) pair maps H to V
    # with amplitude exactly +1 in the chosen conventions.
    if pol == "H":
        return None
    return PcSetting(hwp_angle=np.pi / 4, qwp_angle=np.pi / 2)


def polarization_dressed_setup(basis: ModeBasis | None = None) -> SetupConfig:
    """Setup whose build yields polarization_dressed_state exactly."""
    basis = basis or ModeBasis()
    sig = tuple(ArmControls(pc=_exact_pol_pc(p)) for p in TABLE_SIGNAL_POLS)
    idl = tuple(ArmControls(pc=_exact_pol_pc(p)) for p in TABLE_IDLER_POLS)
    return SetupConfig(signal_controls=sig, idler_controls=idl, basis=basis)


# ---------------------------------------------------------------------------
# waveplate solver
# ---------------------------------------------------------------------------

def solve_pc_angles(target) -> PcSetting:
    """HWP/QWP angles mapping |H> onto the target polarization state.

    Exact for |H> and |V| targets; otherwise solved on the Poincare sphere
    (the residual global phase is absorbed by amplitude calibration).
    """
    a, b = complex(target[0]), complex(target[1])
    n = np.hypot(abs(a), abs(b))
    if n == 0.0:
        raise ValueError("polarization target must be nonzero")
    a, b = a / n, b / n
    if abs(b) < 1e-15:
        return PcSetting()
    if abs(a) < 1e-15:
        return PcSetting(hwp_angle=np.pi / 4, qwp_angle=np.pi / 2)
    t1 = abs(a) ** 2 - abs(b) ** 2
    t2 = 2.0 * np.real(np.conj(a) * b)
    t3 = 2.0 * np.imag(np.conj(a) * b)
    r = np.hypot(t1, t2)
    theta_q = 0.5 * (np.arctan2(-t2, t1) if r > 1e-15 else 0.0)
    theta_h = 0.5 * (0.5 * np.arctan2(t3, r) - theta_q)
    return PcSetting(hwp_angle=theta_h, qwp_angle=theta_q)


# ---------------------------------------------------------------------------
# designers
# ---------------------------------------------------------------------------

def _hologram_for(vec: np.ndarray) -> OamcSetting:
    terms = tuple((n, complex(w)) for n, w in enumerate(vec) if abs(w) > 0.0)
    return OamcSetting(use_mmf=True, hologram=terms, efficiency=1.0)


def _calibrated_setup(
    arm_specs: list[tuple[ArmControls, ArmControls, np.ndarray] | None],
    basis: ModeBasis,
) -> SetupConfig:
    """Fill in complex arm amplitudes so each branch reproduces its desired vector."""
    amps = []
    sig_controls = []
    idl_controls = []
    for n, arm in enumerate("sml"):
        spec = arm_specs[n]
        if spec is None:
            amps.append(0.0j)
            sig_controls.append(ArmControls())
            idl_controls.append(ArmControls())
            continue
        sc, ic, desired = spec
        sig, sk = prepare_arm_photon(sc, arm, basis)
        idl, ik = prepare_arm_photon(ic, arm, basis)
        if sk or ik:
            raise InfeasibleTargetError(f"arm {arm} preparation was fully projected out")
        t = tensor(sig, idl).amplitudes
        tt = np.vdot(t, t)
        c = np.vdot(t, desired) / tt
        if np.linalg.norm(c * t - desired) > 1e-9:
            raise InfeasibleTargetError(
                f"arm {arm} cannot realize its branch (non-product structure)"
            )
        amps.append(complex(c))
        sig_controls.append(sc)
        idl_controls.append(ic)
    return SetupConfig(
        amplitudes=tuple(amps),
        signal_controls=tuple(sig_controls),
        idler_controls=tuple(idl_controls),
        basis=basis,
    )


def _pair_branch(arm: str, cls: str, coeff: complex, basis: ModeBasis) -> np.ndarray:
    ket_s = basis.ket(arm, cls[0], 0)
    ket_i = basis.ket(arm, cls[1], 0)
    return coeff * tensor(ket_s, ket_i).amplitudes


# the four digit pairs a single arm can cover coherently, with the shared photon
_SPLITTABLE = {
    (0, 1): ("signal", "H"),
    (0, 3): ("idler", "H"),
    (1, 2): ("idler", "V"),
    (2, 3): ("signal", "V"),
}


def design_qudit_controls(target, dim: int | None = None, basis: ModeBasis | None = None) -> SetupConfig:
    """Arm assignment and polarization controls for a pair-encoded qudit target.

    dim 3 uses one arm per digit.  dim 4 with full support additionally splits
    one arm's preparation between the two photons: the arm covers two digit
    classes that share one photon's polarization, the other photon carrying
    the superposition.  Raises InfeasibleTargetError when no three-arm
    assignment of the digit classes exists for the target's support.
    """
    basis = basis or ModeBasis()
    coeffs = np.asarray(target.coefficients if isinstance(target, TargetSpec) else target, dtype=complex)
    if dim is None:
        dim = coeffs.shape[0] if coeffs.ndim == 1 else 0
    if dim not in (3, 4):
        raise InfeasibleTargetError(
            f"polarization-pair encoding reaches dimension 3 or 4, not {dim}"
        )
    kind = "qutrit" if dim == 3 else "ququart"
    coeffs = _normalized_target(coeffs, kind)

    support = [d for d in range(dim) if abs(coeffs[d]) > 1e-12]
    if not support:
        raise InfeasibleTargetError("target coefficients are all zero")
    if len(support) <= 3:
        groups = [(d,) for d in support]
    else:
        pair = next(
            (p for p in sorted(_SPLITTABLE) if set(p) <= set(support)), None
        )
        if pair is None:
            raise InfeasibleTargetError(
                "no three-arm assignment of the four digit classes exists"
            )
        groups = [pair] + [(d,) for d in sorted(set(support) - set(pair))]
    if len(groups) > 3:
        raise InfeasibleTargetError("target needs more than three arms")

    arm_specs: list = [None, None, None]
    for n, group in enumerate(groups):
        if len(group) == 1:
            cls = _DIGIT_CLASS[group[0]]
            sc = ArmControls(pc=_exact_pol_pc(cls[0]))
            ic = ArmControls(pc=_exact_pol_pc(cls[1]))
        else:
            side, shared_pol = _SPLITTABLE[group]
            vec = np.zeros(2, dtype=complex)
            for d in group:
                cls = _DIGIT_CLASS[d]
                free = cls[1] if side == "signal" else cls[0]
                vec["HV".index(free)] = coeffs[d]
            free_pc = solve_pc_angles(vec / np.linalg.norm(vec))
            if side == "signal":
                sc = ArmControls(pc=_exact_pol_pc(shared_pol))
                ic = ArmControls(pc=free_pc)
            else:
                sc = ArmControls(pc=free_pc)
                ic = ArmControls(pc=_exact_pol_pc(shared_pol))
        arm = "sml"[n]
        desired = sum(_pair_branch(arm, _DIGIT_CLASS[d], coeffs[d], basis) for d in group)
        arm_specs[n] = (sc, ic, desired)
    return _calibrated_setup(arm_specs, basis)


def _oam_branch(arm: str, sig_oam: int, row: np.ndarray, basis: ModeBasis) -> np.ndarray:
    ket_s = basis.ket(arm, "H", sig_oam)
    vec = np.zeros(basis.dim ** 2, dtype=complex)
    for n, w in enumerate(row):
        if abs(w) > 0.0:
            vec += w * tensor(ket_s, basis.ket(arm, "H", n)).amplitudes
    return vec


def design_oam_controls(target, basis: ModeBasis | None = None) -> SetupConfig:
    """Three-group recipe for an arbitrary two-partite OAM qutrit target.

    The target matrix rows are classified by support: with one nonzero row all
    arms share it, with two the first two arms carry the first row and the
    third arm the second, with three each arm carries its own row.  Signal
    photons are prepared in the row's OAM value, idler holograms imprint the
    row superposition, and arm amplitudes carry the row weights.
    """
    basis = basis or ModeBasis()
    mat = _normalized_target(target, "oam-matrix")
    rows = [m for m in range(3) if np.linalg.norm(mat[m]) > 1e-12]
    if not rows:
        raise InfeasibleTargetError("target coefficients are all zero")

    if len(rows) == 1:
        assignment = [rows[0]] * 3  # all arms share the single row
    elif len(rows) == 2:
        assignment = [rows[0], rows[0], rows[1]]
    else:
        assignment = rows

    arm_specs: list = [None, None, None]
    share = {m: assignment.count(m) for m in set(assignment)}
    for n, m in enumerate(assignment):
        row = mat[m]
        sc = ArmControls(oamc=OamcSetting(use_mmf=True, hologram=((m, 1.0),)))
        ic = ArmControls(oamc=_hologram_for(row / np.linalg.norm(row)))
        desired = _oam_branch("sml"[n], m, row / share[m], basis)
        arm_specs[n] = (sc, ic, desired)
    return _calibrated_setup(arm_specs, basis)


def design_three_degree_controls(target, basis: ModeBasis | None = None) -> SetupConfig:
    """Combined polarization+OAM design for a (sig OAM, idl OAM, pair digit) tensor.

    Each arm prepares one polarization pair class together with one product
    OAM term, so a reachable target decomposes into at most three rank-one
    OAM blocks across the pair-digit classes.  Targets whose blocks need more
    than three rank-one terms in total are reported as infeasible: per-arm
    controls act on each photon independently and cannot entangle a photon's
    polarization with its own OAM.
    """
    basis = basis or ModeBasis()
    tens = _normalized_target(target, "three-degree")

    terms = []  # (pair digit, weight, signal OAM vec, idler OAM vec)
    ranks = {}
    for p in range(3):
        block = tens[:, :, p]
        if np.linalg.norm(block) <= 1e-12:
            continue
        u, s, vh = np.linalg.svd(block)
        keep = [r for r in range(len(s)) if s[r] > 1e-10]
        ranks[p] = len(keep)
        for r in keep:
            terms.append((p, s[r], u[:, r], vh[r, :]))
    if not terms:
        raise InfeasibleTargetError("target coefficients are all zero")
    if len(terms) > 3:
        detail = ", ".join(f"class {p}: rank {r}" for p, r in sorted(ranks.items()))
        raise InfeasibleTargetError(
            f"target needs {len(terms)} rank-one blocks but only three arms exist ({detail})"
        )

    arm_specs: list = [None, None, None]
    for n, (p, weight, u, v) in enumerate(terms):
        cls = _DIGIT_CLASS[p]
        arm = "sml"[n]
        sc = ArmControls(pc=_exact_pol_pc(cls[0]), oamc=_hologram_for(u))
        ic = ArmControls(pc=_exact_pol_pc(cls[1]), oamc=_hologram_for(v))
        desired = np.zeros(basis.dim ** 2, dtype=complex)
        for mm in range(3):
            for nn in range(3):
                w = weight * u[mm] * v[nn]
                if abs(w) > 0.0:
                    desired += w * tensor(
                        basis.ket(arm, cls[0], mm), basis.ket(arm, cls[1], nn)
                    ).amplitudes
        arm_specs[n] = (sc, ic, desired)
    return _calibrated_setup(arm_specs, basis)


# ---------------------------------------------------------------------------
# GHZ assembly over degrees
# ---------------------------------------------------------------------------

_GHZ_DEGREE_SETS = {
    ("path", "path", "polarization"): 3,
    ("path", "path", "oam", "oam"): 4,
    ("path", "path", "polarization", "oam", "oam"): 5,
}


def ghz_degrees(count: int) -> DegreeEncoding:
    """Canonical degree list for the 3-, 4- or 5-degree GHZ assembly."""
    for labels, k in _GHZ_DEGREE_SETS.items():
        if k == count:
            dims = tuple((lab, 3) for lab in labels)
            return DegreeEncoding(dims, dict(PAIR_TABLE_QUTRIT))
    raise ValueError(f"no canonical {count}-degree GHZ assembly")


def assemble_ghz(
    degrees: DegreeEncoding | int, dim: int = 3, basis: ModeBasis | None = None
) -> tuple[SetupConfig, StateVector]:
    """Setup and target for a maximally entangled GHZ state over the degrees.

    Both photons take the same arm, so the two path digits come from one
    physical arm label; the polarization digit is the pair class and the OAM
    digits are each photon's l value.
    """
    if dim != 3:
        raise ValueError("GHZ assembly is three-dimensional")
    if isinstance(degrees, int):
        degrees = ghz_degrees(degrees)
    labels = degrees.labels
    if tuple(labels) not in _GHZ_DEGREE_SETS:
        raise ValueError(f"unsupported degree list {labels!r}")

    basis = basis or ModeBasis()
    use_pol = "polarization" in labels
    use_oam = "oam" in labels

    sig_controls = []
    idl_controls = []
    target = np.zeros(basis.dim ** 2, dtype=complex)
    for n, arm in enumerate("sml"):
        spol = TABLE_SIGNAL_POLS[n] if use_pol else "H"
        ipol = TABLE_IDLER_POLS[n] if use_pol else "H"
        oam = n if use_oam else 0
        oamc = OamcSetting(use_mmf=True, hologram=((oam, 1.0),)) if use_oam else None
        sig_controls.append(ArmControls(pc=_exact_pol_pc(spol), oamc=oamc))
        idl_controls.append(ArmControls(pc=_exact_pol_pc(ipol), oamc=oamc))
        i = basis.index(arm, spol, oam)
        j = basis.index(arm, ipol, oam)
        target[i * basis.dim + j] = 1.0 / np.sqrt(3.0)

    cfg = SetupConfig(
        signal_controls=tuple(sig_controls),
        idler_controls=tuple(idl_controls),
        basis=basis,
    )
    return cfg, StateVector(basis, target, arity=2)


def ghz_digit_amplitudes(state, degrees: DegreeEncoding | int) -> dict[tuple[int, ...], complex]:
    """Digit-resolved amplitudes of a state under a GHZ degree list.

    Degrees not in the list must be frozen (polarization all HH, OAM all 0);
    the returned map then associates each nonzero amplitude with its digit
    tuple so diagonal support can be checked exhaustively.
    """
    if isinstance(degrees, int):
        degrees = ghz_degrees(degrees)
    labels = degrees.labels
    table = dict(degrees.pair_encoding_table or PAIR_TABLE_QUTRIT)
    use_pol = "polarization" in labels
    use_oam = "oam" in labels

    sv = state.state if hasattr(state, "state") else state
    basis = sv.basis
    block = _same_arm_block(sv)
    c = basis.oam_count
    out: dict[tuple[int, ...], complex] = {}
    for a in range(3):
        for ps in range(2):
            for pi in range(2):
                for mo in range(c):
                    for no in range(c):
                        amp = block[a, ps, mo, pi, no]
                        if amp == 0.0:
                            continue
                        cls = "HV"[ps] + "HV"[pi]
                        ls, li = mo + basis.oam_min, no + basis.oam_min
                        if not use_pol and cls != "HH" and abs(amp) > _DOMAIN_ATOL:
                            raise EncodingError("polarization is not frozen to HH")
                        if not use_oam and (ls, li) != (0, 0) and abs(amp) > _DOMAIN_ATOL:
                            raise EncodingError("OAM is not frozen to 0")
                        digits = [a, a]
                        if use_pol:
                            if cls not in table:
                                raise EncodingError(f"pair {cls} has no digit")
                            digits.append(table[cls])
                        if use_oam:
                            digits.extend((ls, li))
                        key = tuple(digits)
                        out[key] = out.get(key, 0.0j) + complex(amp)
    return out
