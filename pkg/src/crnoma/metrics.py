"""Link-level metrics for the cognitive NOMA uplink.

Covers the sensing-state classifier, the per-state Shannon throughputs of
the paired HRC/MRC devices, the energy-efficiency ratio, and the
improvement percentage used for original-vs-optimized comparisons.

Conventions: all powers in watts, gains are linear power ratios |g|^2,
throughput in bits/second, energy efficiency in bits/second/watt.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

from .units import noise_power_w

__all__ = [
    "EFFECTUAL",
    "INTERFERENCE",
    "HRC",
    "MRC",
    "STATES",
    "DEVICES",
    "SicOrderingWarning",
    "SensingProfile",
    "RadioEnvironment",
    "DevicePair",
    "PrimaryLink",
    "PowerOverheads",
    "MetricPoint",
    "classify_state",
    "duty_factor",
    "throughput_hrc_effectual",
    "throughput_mrc_effectual",
    "throughput_hrc_interference",
    "throughput_mrc_interference",
    "energy_efficiency",
    "improvement_percent",
]

# Primary-transmitter activity states and device classes.
EFFECTUAL = "effectual"
INTERFERENCE = "interference"
HRC = "hrc"
MRC = "mrc"
STATES = (EFFECTUAL, INTERFERENCE)
DEVICES = (HRC, MRC)


class SicOrderingWarning(UserWarning):
    """Received HRC power does not dominate its paired MRC signal.

    Successive interference cancellation assumes the stronger HRC signal is
    decoded first; when p_hrc * g_hrc <= p_mrc * g_mrc that premise is
    strained, though every formula remains well defined.
    """


def _check_probability(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0) or not math.isfinite(value):
        raise ValueError(f"{name} must be a probability in [0, 1], got {value!r}")


@dataclass(frozen=True)
class SensingProfile:
    """Spectrum-sensing timing and probabilities shared by all devices.

    p_inactive / p_active weight the effectual and interference terms; they
    are swept independently and are not constrained to sum to one.
    """

    t_transmit_s: float
    t_sense_s: float
    p_inactive: float = 0.5
    p_active: float = 0.5
    p_false_alarm: float = 0.1
    p_detection: float = 0.9

    def __post_init__(self) -> None:
        if not math.isfinite(self.t_transmit_s) or self.t_transmit_s <= 0.0:
            raise ValueError(f"t_transmit_s must be > 0, got {self.t_transmit_s!r}")
        if not math.isfinite(self.t_sense_s) or self.t_sense_s < 0.0:
            raise ValueError(f"t_sense_s must be >= 0, got {self.t_sense_s!r}")
        _check_probability("p_inactive", self.p_inactive)
        _check_probability("p_active", self.p_active)
        _check_probability("p_false_alarm", self.p_false_alarm)
        _check_probability("p_detection", self.p_detection)

    def meets_regulatory_sensing(self) -> bool:
        """IEEE 802.22-style requirement: detection >= 0.9, false alarm <= 0.1."""
        return self.p_detection >= 0.9 and self.p_false_alarm <= 0.1


@dataclass(frozen=True)
class RadioEnvironment:
    """Shared physical context: bandwidth, noise PSD, carrier frequency."""

    bandwidth_hz: float
    noise_psd_dbm_hz: float
    carrier_ghz: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.bandwidth_hz) or self.bandwidth_hz <= 0.0:
            raise ValueError(f"bandwidth_hz must be > 0, got {self.bandwidth_hz!r}")
        if not math.isfinite(self.noise_psd_dbm_hz):
            raise ValueError("noise_psd_dbm_hz must be finite")
        if not math.isfinite(self.carrier_ghz) or self.carrier_ghz <= 0.0:
            raise ValueError(f"carrier_ghz must be > 0, got {self.carrier_ghz!r}")

    def noise_w(self) -> float:
        """Noise power n_p * b in watts over the full bandwidth."""
        return noise_power_w(self.noise_psd_dbm_hz, self.bandwidth_hz)


@dataclass(frozen=True)
class DevicePair:
    """One HRC + one MRC device sharing a subcarrier.

    Gains are linear power ratios; the optional distances record where a
    gain came from when it was derived through the pathloss model.
    """

    hrc_power_w: float
    mrc_power_w: float
    hrc_gain: float
    mrc_gain: float
    hrc_distance_m: Optional[float] = None
    mrc_distance_m: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("hrc_power_w", "mrc_power_w"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"{name} must be >= 0, got {value!r}")
        for name in ("hrc_gain", "mrc_gain"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be > 0, got {value!r}")
        if not self.sic_ordering_ok():
            warnings.warn(
                "received HRC power does not exceed the paired MRC power "
                f"({self.hrc_power_w * self.hrc_gain:.3e} W <= "
                f"{self.mrc_power_w * self.mrc_gain:.3e} W); SIC ordering strained",
                SicOrderingWarning,
                stacklevel=3,
            )

    def sic_ordering_ok(self) -> bool:
        return self.hrc_power_w * self.hrc_gain > self.mrc_power_w * self.mrc_gain


@dataclass(frozen=True)
class PrimaryLink:
    """Primary transmitter as seen by the base station."""

    power_w: float
    gain: float
    snr_db: float = -25.0
    snr_threshold_db: float = -20.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.power_w) or self.power_w < 0.0:
            raise ValueError(f"power_w must be >= 0, got {self.power_w!r}")
        if not math.isfinite(self.gain) or self.gain <= 0.0:
            raise ValueError(f"gain must be > 0, got {self.gain!r}")

    def received_w(self) -> float:
        """Interference power P_P * |g_P|^2 landing in SINR denominators."""
        return self.power_w * self.gain


@dataclass(frozen=True)
class PowerOverheads:
    """Fixed power draw added to every energy-efficiency denominator."""

    circuit_w: float
    sensing_w: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.circuit_w) or self.circuit_w < 0.0:
            raise ValueError(f"circuit_w must be >= 0, got {self.circuit_w!r}")
        if not math.isfinite(self.sensing_w) or self.sensing_w < 0.0:
            raise ValueError(f"sensing_w must be >= 0, got {self.sensing_w!r}")
        if self.circuit_w + self.sensing_w <= 0.0:
            raise ValueError("circuit_w + sensing_w must be > 0")

    @property
    def total_w(self) -> float:
        return self.circuit_w + self.sensing_w


@dataclass(frozen=True)
class MetricPoint:
    """One evaluated (throughput, EE, power) record at a given p_x and state.

    throughput_bps is the per-pair mean (the headline "average" series);
    throughput_sum_bps carries the plain sum over pairs.
    """

    p_x: float
    state: str
    device: str
    throughput_bps: float
    ee_bps_per_watt: float
    tx_power_w: float
    optimized: bool
    throughput_sum_bps: float = 0.0

    def __post_init__(self) -> None:
        if self.state not in STATES:
            raise ValueError(f"state must be one of {STATES}, got {self.state!r}")
        if self.device not in DEVICES:
            raise ValueError(f"device must be one of {DEVICES}, got {self.device!r}")
        _check_probability("p_x", self.p_x)
        if self.throughput_bps < 0.0:
            raise ValueError("throughput_bps must be >= 0")


def classify_state(snr_db: float, snr_threshold_db: float) -> int:
    """Primary-transmitter activity indicator from the received SNR.

    Returns 0 (effectual: no primary interference) when the received SNR is
    below the threshold, 1 (interference: primary transmitting) otherwise.
    """
    if not math.isfinite(snr_db) or not math.isfinite(snr_threshold_db):
        raise ValueError("snr_db and snr_threshold_db must be finite")
    return 0 if snr_db < snr_threshold_db else 1


def duty_factor(sensing: SensingProfile) -> float:
    """Fraction of each frame spent transmitting: t_t / (t_t + t_se)."""
    total = sensing.t_transmit_s + sensing.t_sense_s
    if total <= 0.0:
        raise ValueError("t_transmit_s + t_sense_s must be > 0")
    return sensing.t_transmit_s / total


def _sum_rate_bps(
    prefactor: float,
    bandwidth_hz: float,
    numerators_w: Sequence[float],
    denominators_w: Sequence[float],
) -> float:
    total = 0.0
    for num, den in zip(numerators_w, denominators_w):
        total += math.log2(1.0 + num / den)
    return prefactor * bandwidth_hz * total


def throughput_hrc_effectual(
    sensing: SensingProfile,
    env: RadioEnvironment,
    pairs: Sequence[DevicePair],
) -> float:
    """Summed HRC throughput with the primary transmitter sensed idle.

    duty * p_inactive * (1 - p_false_alarm) * b * sum_n log2(1 + P_H g_h^2 / n_p b);
    the probability prefactor is the perfect-detection weight.
    """
    npb = env.noise_w()
    pref = duty_factor(sensing) * sensing.p_inactive * (1.0 - sensing.p_false_alarm)
    return _sum_rate_bps(
        pref,
        env.bandwidth_hz,
        [p.hrc_power_w * p.hrc_gain for p in pairs],
        [npb] * len(pairs),
    )


def throughput_mrc_effectual(
    sensing: SensingProfile,
    env: RadioEnvironment,
    pairs: Sequence[DevicePair],
) -> float:
    """Summed MRC throughput with the primary idle.

    Each MRC signal sees its paired HRC's received power as in-cell NOMA
    interference on top of the noise floor.
    """
    npb = env.noise_w()
    pref = duty_factor(sensing) * sensing.p_inactive * (1.0 - sensing.p_false_alarm)
    return _sum_rate_bps(
        pref,
        env.bandwidth_hz,
        [p.mrc_power_w * p.mrc_gain for p in pairs],
        [npb + p.hrc_power_w * p.hrc_gain for p in pairs],
    )


def throughput_hrc_interference(
    sensing: SensingProfile,
    env: RadioEnvironment,
    pairs: Sequence[DevicePair],
    primary: PrimaryLink,
) -> float:
    """Summed HRC throughput with the primary transmitting.

    The probability prefactor p_active * (1 - p_detection) is the
    imperfect-detection weight; the primary's received power joins the
    noise in every denominator.
    """
    base = env.noise_w() + primary.received_w()
    pref = duty_factor(sensing) * sensing.p_active * (1.0 - sensing.p_detection)
    return _sum_rate_bps(
        pref,
        env.bandwidth_hz,
        [p.hrc_power_w * p.hrc_gain for p in pairs],
        [base] * len(pairs),
    )


def throughput_mrc_interference(
    sensing: SensingProfile,
    env: RadioEnvironment,
    pairs: Sequence[DevicePair],
    primary: PrimaryLink,
) -> float:
    """Summed MRC throughput with the primary transmitting.

    MRC suffers both the paired HRC signal and the primary interference.
    """
    base = env.noise_w() + primary.received_w()
    pref = duty_factor(sensing) * sensing.p_active * (1.0 - sensing.p_detection)
    return _sum_rate_bps(
        pref,
        env.bandwidth_hz,
        [p.mrc_power_w * p.mrc_gain for p in pairs],
        [base + p.hrc_power_w * p.hrc_gain for p in pairs],
    )


def energy_efficiency(
    throughput_bps: float,
    tx_power_w: float,
    overheads: PowerOverheads,
) -> float:
    """Throughput over total consumed power (transmit + circuit + sensing)."""
    if throughput_bps < 0.0:
        raise ValueError(f"throughput_bps must be >= 0, got {throughput_bps!r}")
    if not math.isfinite(tx_power_w) or tx_power_w < 0.0:
        raise ValueError(f"tx_power_w must be >= 0, got {tx_power_w!r}")
    total = tx_power_w + overheads.total_w
    if total <= 0.0:
        raise ValueError("total consumed power must be > 0")
    return throughput_bps / total


def improvement_percent(original: float, optimized: float) -> float:
    """Relative gain of an optimized value, in percent of the optimized value.

    100 * (optimized - original) / optimized; this is the convention that
    reproduces the reference improvement figures.
    """
    if not math.isfinite(optimized) or optimized <= 0.0:
        raise ValueError(f"optimized must be > 0, got {optimized!r}")
    if not math.isfinite(original) or original < 0.0:
        raise ValueError(f"original must be >= 0, got {original!r}")
    return 100.0 * (optimized - original) / optimized
