"""Scenario configuration, device-pair assembly, and p_x sweeps.

Scenarios are YAML documents with sections for the radio environment,
sensing profile, device pairs, primary link, and power overheads.  Device
gains are either given explicitly or derived from distances through the
pathloss model.  ``run_sweep`` regenerates the original/optimized data
series over a probability grid.
"""

from __future__ import annotations

import hashlib
import math
import warnings
from dataclasses import dataclass, replace
from importlib import resources
from typing import Mapping, Optional, Tuple

import yaml

from .metrics import (
    DEVICES,
    EFFECTUAL,
    HRC,
    INTERFERENCE,
    MRC,
    STATES,
    DevicePair,
    MetricPoint,
    PowerOverheads,
    PrimaryLink,
    RadioEnvironment,
    SensingProfile,
    SicOrderingWarning,
    duty_factor,
    energy_efficiency,
    throughput_hrc_effectual,
    throughput_hrc_interference,
    throughput_mrc_effectual,
    throughput_mrc_interference,
)
from .optimizer import optimize_scenario
from .pathloss import DEFAULT_LOS_PROBABILITY, ModelRangeWarning, pathloss_average_db, power_gain
from .units import dbm_to_watt

__all__ = [
    "ConfigError",
    "Scenario",
    "SweepSeries",
    "load_scenario",
    "load_scenario_file",
    "load_default_scenario",
    "default_scenario_text",
    "run_sweep",
    "solve_gain_for_target",
]

UNIT_MODES = ("watt", "dbm")

# Grid values are rounded to this many decimals so step accumulation noise
# (e.g. 100 * 0.01 slightly exceeding 1.0) cannot break probability bounds.
_GRID_DECIMALS = 12


class ConfigError(ValueError):
    """Scenario configuration problem, carrying the offending field name."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


@dataclass(frozen=True)
class Scenario:
    """Validated, immutable scenario ready for evaluation."""

    env: RadioEnvironment
    sensing: SensingProfile
    pairs: Tuple[DevicePair, ...]
    primary: PrimaryLink
    overheads: PowerOverheads
    los_probability: float
    sweep_grid: Tuple[float, ...]
    unit_mode: str = "watt"
    pathloss_combine: str = "db"
    label: str = "unnamed"
    notes: Tuple[str, ...] = ()

    def content_hash(self) -> str:
        """Stable hash of the physical content (notes excluded)."""
        parts = [
            repr(self.env),
            repr(self.sensing),
            repr(self.pairs),
            repr(self.primary),
            repr(self.overheads),
            repr(self.los_probability),
            repr(self.sweep_grid),
            self.unit_mode,
            self.pathloss_combine,
            self.label,
        ]
        return hashlib.sha256("\n".join(parts).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class SweepSeries:
    """One (state, device, optimized) data series over the p_x grid."""

    state: str
    device: str
    optimized: bool
    coupling: str
    points: Tuple[MetricPoint, ...]
    infeasible_pairs: Tuple[int, ...] = ()
    sic_violations: int = 0


def _section(doc: Mapping, name: str) -> Mapping:
    value = doc.get(name)
    if not isinstance(value, Mapping):
        raise ConfigError(name, "missing or not a table")
    return value


def _coerce_number(field: str, value) -> float:
    if isinstance(value, bool):
        raise ConfigError(field, f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    # YAML 1.1 floats need a signed exponent; "1.0e6" arrives as a string.
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            pass
    raise ConfigError(field, f"expected a number, got {value!r}")


def _number(table: Mapping, section: str, key: str, default=None) -> float:
    if key not in table:
        if default is not None:
            return default
        raise ConfigError(f"{section}.{key}", "missing required value")
    return _coerce_number(f"{section}.{key}", table[key])


def _number_list(table: Mapping, section: str, key: str) -> Optional[Tuple[float, ...]]:
    if key not in table:
        return None
    value = table[key]
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{section}.{key}", "expected a non-empty list of numbers")
    return tuple(
        _coerce_number(f"{section}.{key}[{i}]", item) for i, item in enumerate(value)
    )


def _power_w(raw: float, unit_mode: str) -> float:
    return raw if unit_mode == "watt" else dbm_to_watt(raw)


def _build_grid(start: float, stop: float, step: float) -> Tuple[float, ...]:
    if step <= 0.0:
        raise ConfigError("sweep.step", f"must be > 0, got {step!r}")
    if stop < start:
        raise ConfigError("sweep.stop", "must be >= sweep.start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(round(start + i * step, _GRID_DECIMALS) for i in range(count))


def _resolve_gains(
    section: str,
    gains: Optional[Tuple[float, ...]],
    distances: Optional[Tuple[float, ...]],
    carrier_ghz: float,
    los_probability: float,
    combine: str,
    notes: list,
) -> Tuple[Tuple[float, ...], Optional[Tuple[float, ...]]]:
    """Return (gains, distances-or-None) from exactly one of the two inputs."""
    if gains is not None and distances is not None:
        raise ConfigError(
            section, "give either explicit gains or distances, not both (ambiguous)"
        )
    if gains is None and distances is None:
        raise ConfigError(section, "either explicit gains or distances are required")
    if gains is not None:
        for i, g in enumerate(gains):
            if g <= 0.0 or not math.isfinite(g):
                raise ConfigError(f"{section}[{i}]", f"gain must be > 0, got {g!r}")
        return gains, None
    resolved = []
    with warnings.catch_warnings(record=True) as captured:
        warnings.simplefilter("always", ModelRangeWarning)
        for d in distances:
            resolved.append(
                power_gain(pathloss_average_db(d, carrier_ghz, los_probability, combine))
            )
        for w in captured:
            notes.append(f"{section}: {w.message}")
    return tuple(resolved), distances


def load_scenario(text: str, label: Optional[str] = None) -> Scenario:
    """Parse and validate a YAML scenario document."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError("<document>", f"YAML parse failure: {exc}") from None
    if not isinstance(doc, Mapping):
        raise ConfigError("<document>", "top level must be a mapping of sections")

    notes: list = []
    unit_mode = doc.get("unit_mode", "watt")
    if unit_mode not in UNIT_MODES:
        raise ConfigError("unit_mode", f"must be one of {UNIT_MODES}, got {unit_mode!r}")

    env_t = _section(doc, "env")
    env = RadioEnvironment(
        bandwidth_hz=_number(env_t, "env", "bandwidth_hz"),
        noise_psd_dbm_hz=_number(env_t, "env", "noise_psd_dbm_hz"),
        carrier_ghz=_number(env_t, "env", "carrier_ghz"),
    )
    if "speed_of_light_m_s" in env_t:
        # Recorded for config fidelity only; no implemented formula uses it.
        notes.append(
            f"env.speed_of_light_m_s = {env_t['speed_of_light_m_s']!r} recorded, unused"
        )

    sens_t = _section(doc, "sensing")
    try:
        sensing = SensingProfile(
            t_transmit_s=_number(sens_t, "sensing", "transmit_time_s"),
            t_sense_s=_number(sens_t, "sensing", "sense_time_s"),
            p_inactive=_number(sens_t, "sensing", "p_inactive", 0.5),
            p_active=_number(sens_t, "sensing", "p_active", 0.5),
            p_false_alarm=_number(sens_t, "sensing", "p_false_alarm"),
            p_detection=_number(sens_t, "sensing", "p_detection"),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("sensing", str(exc)) from None
    if not sensing.meets_regulatory_sensing():
        notes.append(
            "sensing: p_detection/p_false_alarm outside the regulatory "
            "envelope (p_d >= 0.9, p_f <= 0.1)"
        )

    pl_t = doc.get("pathloss", {})
    if "los_probability" in pl_t:
        los_probability = _number(pl_t, "pathloss", "los_probability")
    else:
        los_probability = DEFAULT_LOS_PROBABILITY
        notes.append(f"pathloss.los_probability defaulted to {DEFAULT_LOS_PROBABILITY}")
    if not 0.0 <= los_probability <= 1.0:
        raise ConfigError(
            "pathloss.los_probability", f"must lie in [0, 1], got {los_probability!r}"
        )
    combine = pl_t.get("combine", "db")
    if combine not in ("db", "linear"):
        raise ConfigError("pathloss.combine", f"must be 'db' or 'linear', got {combine!r}")

    dev_t = _section(doc, "devices")
    hrc_power = _power_w(_number(dev_t, "devices", "hrc_power"), unit_mode)
    mrc_power = _power_w(_number(dev_t, "devices", "mrc_power"), unit_mode)
    hrc_gains, hrc_distances = _resolve_gains(
        "devices.hrc",
        _number_list(dev_t, "devices", "hrc_gains"),
        _number_list(dev_t, "devices", "hrc_distances_m"),
        env.carrier_ghz,
        los_probability,
        combine,
        notes,
    )
    mrc_gains, mrc_distances = _resolve_gains(
        "devices.mrc",
        _number_list(dev_t, "devices", "mrc_gains"),
        _number_list(dev_t, "devices", "mrc_distances_m"),
        env.carrier_ghz,
        los_probability,
        combine,
        notes,
    )
    if len(hrc_gains) != len(mrc_gains):
        raise ConfigError(
            "devices",
            f"HRC and MRC device counts must match (paired NOMA model), "
            f"got {len(hrc_gains)} vs {len(mrc_gains)}",
        )

    pairs = []
    with warnings.catch_warnings(record=True) as captured:
        warnings.simplefilter("always", SicOrderingWarning)
        for i in range(len(hrc_gains)):
            try:
                pairs.append(
                    DevicePair(
                        hrc_power_w=hrc_power,
                        mrc_power_w=mrc_power,
                        hrc_gain=hrc_gains[i],
                        mrc_gain=mrc_gains[i],
                        hrc_distance_m=hrc_distances[i] if hrc_distances else None,
                        mrc_distance_m=mrc_distances[i] if mrc_distances else None,
                    )
                )
            except ValueError as exc:
                raise ConfigError(f"devices[{i}]", str(exc)) from None
        for w in captured:
            notes.append(f"devices[pair]: {w.message}")

    prim_t = _section(doc, "primary")
    prim_gain = None
    if "gain" in prim_t:
        prim_gain = (_number(prim_t, "primary", "gain"),)
    dist = None
    if "distance_m" in prim_t:
        dist = (_number(prim_t, "primary", "distance_m"),)
    gains, _ = _resolve_gains(
        "primary", prim_gain, dist, env.carrier_ghz, los_probability, combine, notes
    )
    try:
        primary = PrimaryLink(
            power_w=_power_w(_number(prim_t, "primary", "power"), unit_mode),
            gain=gains[0],
            snr_db=_number(prim_t, "primary", "snr_db", -25.0),
            snr_threshold_db=_number(prim_t, "primary", "snr_threshold_db", -20.0),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("primary", str(exc)) from None

    over_t = _section(doc, "overheads")
    try:
        overheads = PowerOverheads(
            circuit_w=_power_w(_number(over_t, "overheads", "circuit_power"), unit_mode),
            sensing_w=_power_w(_number(over_t, "overheads", "sensing_power"), unit_mode),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("overheads", str(exc)) from None

    sweep_t = doc.get("sweep", {})
    grid = _build_grid(
        _number(sweep_t, "sweep", "start", 0.0),
        _number(sweep_t, "sweep", "stop", 1.0),
        _number(sweep_t, "sweep", "step", 0.01),
    )
    for p in grid:
        if not 0.0 <= p <= 1.0:
            raise ConfigError("sweep", f"grid value {p!r} is not a probability")

    return Scenario(
        env=env,
        sensing=sensing,
        pairs=tuple(pairs),
        primary=primary,
        overheads=overheads,
        los_probability=los_probability,
        sweep_grid=grid,
        unit_mode=unit_mode,
        pathloss_combine=combine,
        label=label or doc.get("label", "unnamed"),
        notes=tuple(notes),
    )


def load_scenario_file(path: str) -> Scenario:
    """Load a scenario from a YAML file path."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read scenario {path!r}: {exc}") from None
    return load_scenario(text)


def default_scenario_text() -> str:
    """Raw YAML of the bundled default scenario."""
    return resources.files("crnoma").joinpath("data/default.yaml").read_text("utf-8")


def load_default_scenario() -> Scenario:
    """The bundled default scenario (watt-mode nominal parameter set)."""
    return load_scenario(default_scenario_text())


def _pair_throughput(
    scenario: Scenario, state: str, device: str, pair: DevicePair, p_x: float
) -> float:
    sensing = replace(
        scenario.sensing,
        p_inactive=p_x if state == EFFECTUAL else scenario.sensing.p_inactive,
        p_active=p_x if state == INTERFERENCE else scenario.sensing.p_active,
    )
    if state == EFFECTUAL and device == HRC:
        return throughput_hrc_effectual(sensing, scenario.env, [pair])
    if state == EFFECTUAL and device == MRC:
        return throughput_mrc_effectual(sensing, scenario.env, [pair])
    if device == HRC:
        return throughput_hrc_interference(sensing, scenario.env, [pair], scenario.primary)
    return throughput_mrc_interference(sensing, scenario.env, [pair], scenario.primary)


def run_sweep(
    scenario: Scenario,
    state: str,
    device: str,
    optimized: bool,
    coupling: str = "nominal",
) -> SweepSeries:
    """Evaluate one data series over the scenario's p_x grid.

    For the optimized series, each pair's transmit power is replaced by its
    closed-form optimum; pairs whose optimization is infeasible keep their
    nominal power and are listed in ``infeasible_pairs``.  Headline values
    are per-pair means; the plain sum is carried alongside in each point.
    """
    if state not in STATES:
        raise ValueError(f"state must be one of {STATES}, got {state!r}")
    if device not in DEVICES:
        raise ValueError(f"device must be one of {DEVICES}, got {device!r}")

    infeasible = []
    sic_violations = 0
    if optimized:
        optima = optimize_scenario(scenario, state, coupling)
        results = optima.hrc if device == HRC else optima.mrc
        pairs = []
        # Optimized powers routinely break the nominal SIC ordering; record
        # the count instead of spraying warnings from internal rebuilds.
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SicOrderingWarning)
            for index, (pair, result) in enumerate(zip(scenario.pairs, results)):
                if not result.feasible:
                    infeasible.append(index)
                    pairs.append(pair)
                    continue
                if device == HRC:
                    new_pair = replace(pair, hrc_power_w=result.power_w)
                else:
                    hrc_power = pair.hrc_power_w
                    if coupling == "cascaded" and optima.hrc[index].feasible:
                        hrc_power = optima.hrc[index].power_w
                    new_pair = replace(
                        pair, mrc_power_w=result.power_w, hrc_power_w=hrc_power
                    )
                if not new_pair.sic_ordering_ok():
                    sic_violations += 1
                pairs.append(new_pair)
        pairs = tuple(pairs)
    else:
        pairs = scenario.pairs

    n = len(pairs)
    tx_powers = [p.hrc_power_w if device == HRC else p.mrc_power_w for p in pairs]
    mean_tx = sum(tx_powers) / n

    points = []
    for p_x in scenario.sweep_grid:
        try:
            per_pair = [
                _pair_throughput(scenario, state, device, pair, p_x) for pair in pairs
            ]
        except ValueError as exc:
            raise ValueError(f"at grid point p_x={p_x}: {exc}") from exc
        total = sum(per_pair)
        mean = total / n
        points.append(
            MetricPoint(
                p_x=p_x,
                state=state,
                device=device,
                throughput_bps=mean,
                ee_bps_per_watt=energy_efficiency(mean, mean_tx, scenario.overheads),
                tx_power_w=mean_tx,
                optimized=optimized,
                throughput_sum_bps=total,
            )
        )

    return SweepSeries(
        state=state,
        device=device,
        optimized=optimized,
        coupling=coupling,
        points=tuple(points),
        infeasible_pairs=tuple(infeasible),
        sic_violations=sic_violations,
    )


def solve_gain_for_target(
    target_bps: float,
    sensing: SensingProfile,
    env: RadioEnvironment,
    tx_power_w: float,
    interference_w: float = 0.0,
    state: str = EFFECTUAL,
) -> float:
    """Power gain |g|^2 at which a single pair hits a target throughput.

    Closed-form inversion of the single-pair rate:
    g2 = (2**(target / (kappa * b)) - 1) * D / P with D the noise power plus
    the given interference received power.
    """
    if target_bps < 0.0:
        raise ValueError(f"target_bps must be >= 0, got {target_bps!r}")
    if tx_power_w <= 0.0:
        raise ValueError(f"tx_power_w must be > 0, got {tx_power_w!r}")
    if interference_w < 0.0:
        raise ValueError(f"interference_w must be >= 0, got {interference_w!r}")
    if state == EFFECTUAL:
        kappa = sensing.p_inactive * (1.0 - sensing.p_false_alarm)
    elif state == INTERFERENCE:
        kappa = sensing.p_active * (1.0 - sensing.p_detection)
    else:
        raise ValueError(f"state must be one of {STATES}, got {state!r}")
    kappa_b = duty_factor(sensing) * kappa * env.bandwidth_hz
    if kappa_b <= 0.0:
        raise ValueError("probability prefactor times bandwidth is zero; target unreachable")
    denom = env.noise_w() + interference_w
    return (2.0 ** (target_bps / kappa_b) - 1.0) * denom / tx_power_w
