"""Post-selected two-photon state construction.

Builds the coincidence state of the dressed three-arm interferometer pair:
each arm a in {s, m, l} contributes

    c_a * exp(i(alpha_a + beta_a + Phi_jk^a)) * (controls_sig |a, pol, l>)
                                              x (controls_idl |a, pol, l>)

with alpha_s = beta_s = 0 and Phi_jk^a the combined tritter phases of the
chosen output ports.  Only same-arm terms are materialized; cross-arm
coincidences are removed by the post-selection this construction mirrors.
The success probability carries the raw (pre-normalization) squared norm
times a configurable port-selection factor for the ideal combiner: same-arm
coincidences emerge only at port pairs with j+k = 0 (mod 3), 1/3 of the
same-arm flux each, so the default factor is 1/3 and 2/3 of the same-port
coincidences are counted as discarded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AssumptionError, ZeroPostSelectionError
from .hilbert import PATHS, ModeBasis, StateVector, tensor
from .optics import OamcSetting, PcSetting, oamc_operator, pc_operator, tritter_phase

DEFAULT_TRITTER_FACTOR = 1.0 / 3.0


@dataclass(frozen=True)
class ArmControls:
    """Per-arm photon preparation: input mode, controls, extra phase."""

    pc: PcSetting | None = None
    oamc: OamcSetting | None = None
    extra_phase: float = 0.0
    input_pol: str = "H"
    input_oam: int = 0
    order: str = "pc_oamc"

    def __post_init__(self):
        if self.input_pol not in ("H", "V"):
            raise ValueError(f"input_pol must be 'H' or 'V', got {self.input_pol!r}")
        if self.order not in ("pc_oamc", "oamc_pc"):
            raise ValueError(f"order must be 'pc_oamc' or 'oamc_pc', got {self.order!r}")
        if not np.isfinite(self.extra_phase):
            raise ValueError("extra_phase must be finite")


@dataclass(frozen=True)
class CoherenceAssumptions:
    """Validity conditions for the post-selected state form.

    photon_coherence_short: single-photon coherence length much smaller than
    the arm-length differences (no single-photon interference).
    pump_coherence_long: pump coherence length much larger than the arm-length
    differences (no timing information about the pair creation).
    """

    photon_coherence_short: bool = True
    pump_coherence_long: bool = True


@dataclass(frozen=True)
class SetupConfig:
    """Full experiment description for one build."""

    amplitudes: tuple[complex, complex, complex] = (
        1 / np.sqrt(3),
        1 / np.sqrt(3),
        1 / np.sqrt(3),
    )
    signal_phases: tuple[float, float] = (0.0, 0.0)  # (alpha_m, alpha_l)
    idler_phases: tuple[float, float] = (0.0, 0.0)  # (beta_m, beta_l)
    ports: tuple[int, int] = (0, 0)
    signal_controls: tuple[ArmControls, ArmControls, ArmControls] = (
        ArmControls(),
        ArmControls(),
        ArmControls(),
    )
    idler_controls: tuple[ArmControls, ArmControls, ArmControls] = (
        ArmControls(),
        ArmControls(),
        ArmControls(),
    )
    basis: ModeBasis = field(default_factory=ModeBasis)
    assumptions: CoherenceAssumptions = field(default_factory=CoherenceAssumptions)
    tritter_factor: float = DEFAULT_TRITTER_FACTOR

    def __post_init__(self):
        c = tuple(complex(x) for x in self.amplitudes)
        if len(c) != 3 or sum(abs(x) ** 2 for x in c) == 0.0:
            raise ValueError("need three arm amplitudes with nonzero total weight")
        object.__setattr__(self, "amplitudes", c)
        if self.ports[0] not in (0, 1, 2) or self.ports[1] not in (0, 1, 2):
            raise ValueError(f"output ports must lie in {{0,1,2}}, got {self.ports}")
        if len(self.signal_controls) != 3 or len(self.idler_controls) != 3:
            raise ValueError("need one ArmControls per arm and photon")
        for ctl in (*self.signal_controls, *self.idler_controls):
            if not self.basis.contains_oam(ctl.input_oam):
                raise ValueError(
                    f"input_oam {ctl.input_oam} outside basis window "
                    f"[{self.basis.oam_min}, {self.basis.oam_max}]"
                )
        if not 0.0 < self.tritter_factor <= 1.0:
            raise ValueError(f"tritter_factor must lie in (0, 1], got {self.tritter_factor}")


@dataclass(frozen=True)
class PairState:
    """Normalized post-selected two-photon state plus its success probability."""

    state: StateVector
    success_probability: float


@dataclass(frozen=True)
class AssumptionReport:
    """Advisory check of the two coherence conditions."""

    entries: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.entries)

    def failures(self) -> list[str]:
        return [f"{name}: {risk}" for name, passed, risk in self.entries if not passed]


def validate_assumptions(cfg: SetupConfig) -> AssumptionReport:
    """Report which coherence conditions are asserted; building requires both."""
    a = cfg.assumptions
    return AssumptionReport(
        (
            (
                "photon_coherence_short",
                a.photon_coherence_short,
                "single photon interference would occur in the interferometer arms",
            ),
            (
                "pump_coherence_long",
                a.pump_coherence_long,
                "timing information would reveal the pair creation time and the arm taken",
            ),
        )
    )


def prepare_arm_photon(
    controls: ArmControls, arm: str, basis: ModeBasis
) -> tuple[StateVector, str | None]:
    """One photon's prepared arm state; returns (ket, name of killing element).

    The ket carries all control losses and phases (no renormalization); the
    second element names the projector that zeroed the state, if any.
    """
    ket = basis.ket(arm, controls.input_pol, controls.input_oam)
    elements: list[tuple[str, object]] = []
    if controls.pc is not None:
        elements.append(("polarization control (PBS)", pc_operator(controls.pc, basis)))
    if controls.oamc is not None:
        built = oamc_operator(controls.oamc, basis)
        name = "OAM control (MMF)" if controls.oamc.use_mmf else "OAM control (CGH)"
        elements.append((name, built.operator))
    if controls.order == "oamc_pc":
        elements.reverse()
    for name, op in elements:
        ket = op.apply(ket)
        if ket.is_zero:
            return ket, name
    amps = ket.amplitudes * np.exp(1j * controls.extra_phase)
    return StateVector(basis, amps, arity=1), None


def build_pair_state(cfg: SetupConfig) -> PairState:
    """Construct the normalized post-selected pair state for a setup.

    Raises AssumptionError when the coherence conditions are not asserted and
    ZeroPostSelectionError when every branch is killed by a projector or the
    truncation window; the error names the killing element per arm.
    """
    report = validate_assumptions(cfg)
    if not report.ok:
        raise AssumptionError(
            "post-selected form requires both coherence conditions; missing: "
            + "; ".join(report.failures())
        )

    basis = cfg.basis
    c = np.array(cfg.amplitudes, dtype=complex)
    c = c / np.linalg.norm(c)
    alpha = (0.0, *cfg.signal_phases)
    beta = (0.0, *cfg.idler_phases)
    j, k = cfg.ports

    total = np.zeros(basis.dim ** 2, dtype=complex)
    killed: dict[str, str] = {}
    for n, arm in enumerate(PATHS):
        if abs(c[n]) == 0.0:
            continue
        sig, sig_killer = prepare_arm_photon(cfg.signal_controls[n], arm, basis)
        idl, idl_killer = prepare_arm_photon(cfg.idler_controls[n], arm, basis)
        if sig_killer or idl_killer:
            side = "signal" if sig_killer else "idler"
            killed[arm] = f"{side} {sig_killer or idl_killer}"
            continue
        phase = alpha[n] + beta[n] + tritter_phase(arm, j) + tritter_phase(arm, k)
        total += c[n] * np.exp(1j * phase) * tensor(sig, idl).amplitudes

    raw_norm_sq = float(np.vdot(total, total).real)
    if raw_norm_sq < 1e-24:
        detail = "; ".join(f"arm {a}: {why}" for a, why in killed.items()) or "all branch weight lost"
        raise ZeroPostSelectionError(
            f"post-selected state is empty ({detail})", killed
        )
    state = StateVector(basis, total / np.sqrt(raw_norm_sq), arity=2)
    return PairState(state, cfg.tritter_factor * raw_norm_sq)


def balanced_setup(basis: ModeBasis | None = None) -> SetupConfig:
    """Balanced amplitudes, zero phases, ports (0,0), no controls."""
    return SetupConfig(basis=basis or ModeBasis())
