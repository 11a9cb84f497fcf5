"""Energy-efficiency-maximizing transmit power, closed form and oracle.

For a single device the EE curve over its own transmit power p is

    EE(p) = kappa * b * log2(1 + p * g2 / D) / (p + C)

with g2 the own-link power gain, D the total denominator power (noise plus
every interfering received power for that device and state), and
C = circuit + sensing overhead.  The stationary point is prefactor-free and
has the closed form

    p* = (C * g2 - D) / (W0(((C * g2 - D) / D) * e^-1) * g2) - D / g2

where W0 is the principal Lambert W branch.  All four device/state cases
share this shape and differ only in D.  ``numerical_argmax`` provides an
independent golden-section check of the same maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from .lambertw import lambert_w0
from .metrics import (
    EFFECTUAL,
    HRC,
    INTERFERENCE,
    MRC,
    PowerOverheads,
    RadioEnvironment,
    SensingProfile,
    duty_factor,
)

__all__ = [
    "OptProblem",
    "OptResult",
    "ScenarioOptima",
    "optimal_power",
    "ee_of_power",
    "numerical_argmax",
    "optimize_scenario",
]

_ORACLE_REL_WIDTH = 1e-9
_ORACLE_P_CAP_W = 1e12
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptProblem:
    """Single-device EE maximization instance.

    denom_power_w bundles noise plus all interference received powers for
    the given device and state; p_max_w is only the oracle's initial search
    ceiling and is grown automatically when needed.
    """

    gain: float
    denom_power_w: float
    overheads: PowerOverheads
    p_max_w: float = 1e6
    state: str = EFFECTUAL
    device: str = HRC

    def __post_init__(self) -> None:
        if not math.isfinite(self.gain) or self.gain <= 0.0:
            raise ValueError(f"gain must be > 0, got {self.gain!r}")
        if not math.isfinite(self.denom_power_w) or self.denom_power_w <= 0.0:
            raise ValueError(f"denom_power_w must be > 0, got {self.denom_power_w!r}")
        if not math.isfinite(self.p_max_w) or self.p_max_w <= 0.0:
            raise ValueError(f"p_max_w must be > 0, got {self.p_max_w!r}")


@dataclass(frozen=True)
class OptResult:
    """Outcome of a closed-form power optimization.

    Infeasibility (the formula's numerator C*g2 - D not positive, a Lambert
    argument outside the principal branch, or a non-positive power) is a
    typed result rather than an exception; power_w is NaN in that case.
    ee_bps_per_watt is evaluated at power_w, with the probability prefactor
    and bandwidth set to one when no sensing/environment context is given.
    """

    power_w: float
    ee_bps_per_watt: float
    feasible: bool
    lambert_arg: float
    reason: str = ""


def ee_of_power(
    power_w: float,
    problem: OptProblem,
    sensing: Optional[SensingProfile] = None,
    env: Optional[RadioEnvironment] = None,
) -> float:
    """Single-device energy efficiency at a candidate transmit power.

    With sensing and environment given, the full prefactor
    duty * p_x(state) * (1 - p_false_alarm or 1 - p_detection) and the
    bandwidth are applied; otherwise the curve is normalized to
    kappa * b = 1.  The maximizing power is the same either way.
    """
    if not math.isfinite(power_w) or power_w < 0.0:
        raise ValueError(f"power_w must be >= 0, got {power_w!r}")
    kappa_b = 1.0
    if sensing is not None and env is not None:
        if problem.state == EFFECTUAL:
            kappa = sensing.p_inactive * (1.0 - sensing.p_false_alarm)
        else:
            kappa = sensing.p_active * (1.0 - sensing.p_detection)
        kappa_b = duty_factor(sensing) * kappa * env.bandwidth_hz
    rate = math.log2(1.0 + power_w * problem.gain / problem.denom_power_w)
    return kappa_b * rate / (power_w + problem.overheads.total_w)


def optimal_power(
    problem: OptProblem,
    sensing: Optional[SensingProfile] = None,
    env: Optional[RadioEnvironment] = None,
    lambert_fn: Callable[[float], float] = lambert_w0,
) -> OptResult:
    """Closed-form EE-stationary transmit power for one device.

    lambert_fn exists as a validation hook so a deliberately corrupted
    solver can be injected to prove the stationarity checks have teeth.
    """
    g2 = problem.gain
    d = problem.denom_power_w
    c = problem.overheads.total_w
    numerator = c * g2 - d
    arg = (numerator / d) * math.exp(-1.0)
    if numerator <= 0.0:
        return OptResult(
            power_w=math.nan,
            ee_bps_per_watt=math.nan,
            feasible=False,
            lambert_arg=arg,
            reason="overhead-driven term C*g2 does not exceed the denominator power",
        )
    if arg < -math.exp(-1.0):
        return OptResult(
            power_w=math.nan,
            ee_bps_per_watt=math.nan,
            feasible=False,
            lambert_arg=arg,
            reason="Lambert argument below the principal-branch domain",
        )
    w = lambert_fn(arg)
    power = numerator / (w * g2) - d / g2
    if not math.isfinite(power) or power <= 0.0:
        return OptResult(
            power_w=math.nan,
            ee_bps_per_watt=math.nan,
            feasible=False,
            lambert_arg=arg,
            reason=f"closed form yielded non-positive power {power!r}",
        )
    ee = ee_of_power(power, problem, sensing, env)
    return OptResult(power_w=power, ee_bps_per_watt=ee, feasible=True, lambert_arg=arg)


def numerical_argmax(
    problem: OptProblem,
    sensing: Optional[SensingProfile] = None,
    env: Optional[RadioEnvironment] = None,
) -> float:
    """Golden-section argmax of the single-device EE curve.

    EE is unimodal in the transmit power (log over affine), so golden
    section applies.  The upper bracket starts at problem.p_max_w and
    doubles until EE is decreasing there, capped at 1e12 W.
    """

    def ee(p: float) -> float:
        return ee_of_power(p, problem, sensing, env)

    hi = problem.p_max_w
    while ee(hi) >= ee(hi * 0.5):
        hi *= 2.0
        if hi > _ORACLE_P_CAP_W:
            raise ValueError(
                "could not bracket a decreasing EE tail below "
                f"{_ORACLE_P_CAP_W:.0e} W; problem appears unbounded"
            )

    lo = 0.0
    a, b = lo, hi
    c = b - (b - a) * _INVPHI
    d = a + (b - a) * _INVPHI
    fc, fd = ee(c), ee(d)
    while (b - a) > _ORACLE_REL_WIDTH * max(abs(a), abs(b)):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _INVPHI
            fc = ee(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _INVPHI
            fd = ee(d)
    return 0.5 * (a + b)


@dataclass(frozen=True)
class ScenarioOptima:
    """Per-pair closed-form optima for both device classes in one state."""

    state: str
    coupling: str
    hrc: Tuple[OptResult, ...]
    mrc: Tuple[OptResult, ...]


def optimize_scenario(scenario, state: str, coupling: str = "nominal") -> ScenarioOptima:
    """Closed-form optimal powers for every pair of a scenario.

    In coupling="nominal" the MRC denominators use the nominal HRC power;
    in coupling="cascaded" they use the HRC optimum where it is feasible
    (falling back to nominal otherwise).
    """
    if state not in (EFFECTUAL, INTERFERENCE):
        raise ValueError(f"state must be 'effectual' or 'interference', got {state!r}")
    if coupling not in ("nominal", "cascaded"):
        raise ValueError(f"coupling must be 'nominal' or 'cascaded', got {coupling!r}")

    base = scenario.env.noise_w()
    if state == INTERFERENCE:
        base += scenario.primary.received_w()

    hrc_results = []
    mrc_results = []
    for pair in scenario.pairs:
        hrc_problem = OptProblem(
            gain=pair.hrc_gain,
            denom_power_w=base,
            overheads=scenario.overheads,
            state=state,
            device=HRC,
        )
        hrc_result = optimal_power(hrc_problem, scenario.sensing, scenario.env)
        hrc_results.append(hrc_result)

        hrc_power = pair.hrc_power_w
        if coupling == "cascaded" and hrc_result.feasible:
            hrc_power = hrc_result.power_w
        mrc_problem = OptProblem(
            gain=pair.mrc_gain,
            denom_power_w=base + hrc_power * pair.hrc_gain,
            overheads=scenario.overheads,
            state=state,
            device=MRC,
        )
        mrc_results.append(optimal_power(mrc_problem, scenario.sensing, scenario.env))

    return ScenarioOptima(
        state=state,
        coupling=coupling,
        hrc=tuple(hrc_results),
        mrc=tuple(mrc_results),
    )
