"""
Closed-form results for a laser-driven trapped two-level ion.

Units: hbar = 1 and omega_L = 1, so every frequency is stored as a ratio to
the laser frequency, times are in units of 1/omega_L and energies in units of
hbar*omega_L.  Interaction energies are additionally reported in units of
hbar*Omega.

Two treatments are carried side by side: the full Hamiltonian (counter-rotating
terms kept) and its rotating-wave approximation.  All functions are scalar and
use :mod:`math` so that repeated evaluations are bit-identical.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError

HBAR = 1.054571817e-34  # J s


class HamiltonianKind(enum.Enum):
    FULL = "full"
    RWA = "rwa"

    @classmethod
    def parse(cls, value: "str | HamiltonianKind") -> "HamiltonianKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise DomainError(f"unknown Hamiltonian kind {value!r} (full|rwa)") from None


FULL = HamiltonianKind.FULL
RWA = HamiltonianKind.RWA


def minimal_cutoff(alpha: float) -> int:
    """Smallest Fock cutoff accepted for a coherent amplitude ``alpha``."""
    a = abs(alpha)
    return math.ceil(a * a + 10.0 * a + 20.0)


@dataclass(frozen=True)
class SystemParams:
    """Dimensionless configuration of the ion, laser and trap.

    ``fock_dim`` is the oscillator cutoff N (highest retained occupation);
    only the numerical oracle reads it.
    """

    nu_ratio: float = 0.01
    omega_a_ratio: float = 1.0
    rabi_ratio: float = 1e-3
    eta: float = 0.1
    alpha: float = 1.0
    fock_dim: int = 96

    def __post_init__(self):
        for name in ("nu_ratio", "omega_a_ratio", "rabi_ratio", "eta", "alpha"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        if self.nu_ratio < 0:
            raise DomainError(f"nu_ratio must be >= 0, got {self.nu_ratio}")
        if self.eta < 0:
            raise DomainError(f"eta must be >= 0, got {self.eta}")
        if self.alpha < 0:
            raise DomainError(f"alpha must be >= 0, got {self.alpha}")
        if self.omega_a_ratio < 0:
            raise DomainError(f"omega_a_ratio must be >= 0, got {self.omega_a_ratio}")
        if self.rabi_ratio < 0:
            raise DomainError(f"rabi_ratio must be >= 0, got {self.rabi_ratio}")
        if int(self.fock_dim) != self.fock_dim or self.fock_dim < 1:
            raise DomainError(f"fock_dim must be an integer >= 1, got {self.fock_dim}")

    def replace(self, **changes) -> "SystemParams":
        fields = {
            "nu_ratio": self.nu_ratio,
            "omega_a_ratio": self.omega_a_ratio,
            "rabi_ratio": self.rabi_ratio,
            "eta": self.eta,
            "alpha": self.alpha,
            "fock_dim": self.fock_dim,
        }
        fields.update(changes)
        return SystemParams(**fields)

    def require_cutoff(self) -> None:
        """Raise :class:`CutoffError` if ``fock_dim`` cannot hold ``alpha``."""
        from .errors import CutoffError

        need = minimal_cutoff(self.alpha)
        if self.fock_dim < need:
            raise CutoffError(self.alpha, self.fock_dim, need)


@dataclass(frozen=True)
class EnergyPair:
    h11: float
    h22: float
    k: int


@dataclass(frozen=True)
class Angles:
    delta: float
    theta: float
    k: int


@dataclass(frozen=True)
class StateAmplitudes:
    """Amplitudes on |g, alpha> and |e, -alpha>, global phase included."""

    amp_g_alpha: complex
    amp_e_minus_alpha: complex
    phase: complex

    @property
    def norm(self) -> float:
        return math.sqrt(abs(self.amp_g_alpha) ** 2 + abs(self.amp_e_minus_alpha) ** 2)


def _check_k(k) -> int:
    if int(k) != k or k < 0:
        raise DomainError(f"step index k must be a non-negative integer, got {k!r}")
    return int(k)


def _parity(k: int) -> float:
    return -1.0 if k % 2 else 1.0


def lamb_dicke_parameter(wave_number: float, mass: float, trap_freq: float) -> float:
    """eta = k_L * sqrt(hbar / (2 m nu)), SI inputs (rad/m, kg, rad/s)."""
    for name, value in (("wave_number", wave_number), ("mass", mass), ("trap_freq", trap_freq)):
        if not math.isfinite(value) or value <= 0:
            raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    return wave_number * math.sqrt(HBAR / (2.0 * mass * trap_freq))


def diag_time(kind: HamiltonianKind, k: int) -> float:
    """Discrete time (units 1/omega_L) at which the projected Hamiltonian is diagonal."""
    kind = HamiltonianKind.parse(kind)
    k = _check_k(k)
    if kind is FULL:
        return k * math.pi + math.pi / 2.0
    return k * math.pi


def interaction_energy(kind: HamiltonianKind, params: SystemParams) -> float:
    """Interaction energy in units of hbar*Omega."""
    kind = HamiltonianKind.parse(kind)
    eta, alpha = params.eta, params.alpha
    if kind is FULL:
        return 2.0 * math.exp(-eta * eta / 2.0) * math.sin(2.0 * eta * alpha)
    return 0.5 * math.exp(-eta * eta / 2.0 - 2.0 * alpha * alpha)


def cooling_advantage(params: SystemParams) -> float:
    """Signed difference E_int(full) - E_int(rwa) in units of hbar*Omega.

    Positive values mark the region where the full treatment predicts the
    lower minimum energy.
    """
    return interaction_energy(FULL, params) - interaction_energy(RWA, params)


def energies(kind: HamiltonianKind, params: SystemParams, k: int) -> EnergyPair:
    """Diagonal elements of the rotated Hamiltonian at the k-th diagonalization time."""
    kind = HamiltonianKind.parse(kind)
    k = _check_k(k)
    nu, wa, om = params.nu_ratio, params.omega_a_ratio, params.rabi_ratio
    eta, alpha = params.eta, params.alpha
    sign = _parity(k)
    vib = nu * alpha * alpha
    internal = wa * math.exp(-2.0 * alpha * alpha)
    if kind is FULL:
        inter = 2.0 * sign * om * math.exp(-eta * eta / 2.0) * math.sin(2.0 * eta * alpha)
        return EnergyPair(vib - internal + inter, vib + internal + inter, k)
    inter = sign * (om / 2.0) * math.exp(-eta * eta / 2.0 - 2.0 * alpha * alpha)
    return EnergyPair(vib - internal + inter, vib + internal - inter, k)


def rwa_exponent_factor(params: SystemParams, k: int) -> float:
    """exp(-eta^2/2 - 2 alpha^2 (-1)^k), with the parity inside the exponent."""
    eta, alpha = params.eta, params.alpha
    return math.exp(-eta * eta / 2.0 - 2.0 * alpha * alpha * _parity(k))


def angles(kind: HamiltonianKind, params: SystemParams, t: float, k: int) -> Angles:
    """Global-phase rate and mixing angle of the evolved state."""
    kind = HamiltonianKind.parse(kind)
    k = _check_k(k)
    if not t >= 0:
        raise DomainError(f"time must be >= 0, got {t!r}")
    nu, wa, om = params.nu_ratio, params.omega_a_ratio, params.rabi_ratio
    eta, alpha = params.eta, params.alpha
    if kind is FULL:
        delta = nu * alpha * alpha + 2.0 * _parity(k) * om * math.exp(-eta * eta / 2.0) * math.sin(
            2.0 * eta * alpha
        )
        theta = wa * t * math.exp(-2.0 * alpha * alpha)
        return Angles(delta, theta, k)
    delta = -nu * alpha * alpha
    theta = wa * t * math.exp(-2.0 * alpha * alpha) - om * t * rwa_exponent_factor(params, k)
    return Angles(delta, theta, k)


def state_at(kind: HamiltonianKind, params: SystemParams, t: float, k: int) -> StateAmplitudes:
    """Lab-frame amplitudes cos(theta)|g,alpha> - i sin(theta)|e,-alpha>, times exp(-i delta t)."""
    ang = angles(kind, params, t, k)
    phase = complex(math.cos(ang.delta * t), -math.sin(ang.delta * t))
    return StateAmplitudes(
        amp_g_alpha=phase * math.cos(ang.theta),
        amp_e_minus_alpha=-1j * phase * math.sin(ang.theta),
        phase=phase,
    )


def ground_probability(kind: HamiltonianKind, params: SystemParams, t: float, k: int) -> float:
    """cos^2(theta): ground-state probability of the lab-frame state."""
    theta = angles(kind, params, t, k).theta
    return math.cos(theta) ** 2


def _cospi(x: float) -> float:
    """cos(pi x) with argument reduction, exact zeros at half-integers."""
    r = math.fmod(abs(x), 2.0)
    if r > 1.0:
        r = 2.0 - r
    return math.sin(math.pi * (0.5 - r))


def ground_probability_at_step(kind: HamiltonianKind, params: SystemParams, k: int) -> float:
    """cos^2(theta) at the k-th diagonalization time, argument taken in units of pi."""
    kind = HamiltonianKind.parse(kind)
    k = _check_k(k)
    wa, om, alpha = params.omega_a_ratio, params.rabi_ratio, params.alpha
    if kind is FULL:
        turns = wa * (k + 0.5) * math.exp(-2.0 * alpha * alpha)
    else:
        turns = k * (wa * math.exp(-2.0 * alpha * alpha) - om * rwa_exponent_factor(params, k))
    return _cospi(turns) ** 2


def concurrence_of_angle(theta: float, alpha: float) -> float:
    """(1/2)(1 - exp(-4 alpha^2))(1 - cos 4 theta).

    Note this has the shape of a squared pure-state concurrence; see
    :func:`ionrwa.entanglement.wootters` for the Wootters value of the same state.
    """
    return 0.5 * (1.0 - math.exp(-4.0 * alpha * alpha)) * (1.0 - math.cos(4.0 * theta))


def concurrence_closed_form(kind: HamiltonianKind, params: SystemParams, t: float, k: int) -> float:
    # 4*theta is bit-identical to the expanded argument: scaling by 4 is exact
    theta = angles(kind, params, t, k).theta
    return concurrence_of_angle(theta, params.alpha)
