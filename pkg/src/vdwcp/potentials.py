"""Dispersion potentials: single atom at a perfect mirror, two atoms in free space.

Every value is an imaginary-frequency integral. Internally the integration
variable is made dimensionless (x = 2 z xi / c at a mirror, x = l xi / c for a
pair) and the static response magnitudes are factored out of the integrand,
so the quadrature always sees O(1) ratios times the universal kernels of the
green module; the physical scale returns through an analytic prefactor. A
channel whose static response vanishes is exactly zero and skips quadrature.

Sign conventions that the whole module hangs on: the mirror magnetic trace is
positive for a conducting plate and the electric trace is its negative; in
free space the like-response kernel enters with a minus sign and the crossed
electric-magnetic kernel with a plus sign. Everything else follows from the
signs of the static responses themselves (alpha, beta_p >= 0, beta_d <= 0).
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .green import PlateKind, mirror_kernel, pair_kernel_cross, pair_kernel_same
from .quad import QuadratureSpec, integrate_semiinf
from .response import (
    AtomModel,
    alpha_iso,
    beta_para_iso,
    beta_total,
    diamagnetisability,
)
from .units import Constants, UnitSystem, constants_for

ELECTRIC_LETTER = "e"
PARA_LETTER = "p"
DIA_LETTER = "d"


class Channel(Enum):
    """Interaction channels: three single-atom ones, nine two-atom pairs.

    Letters: e = electric, p = paramagnetic, d = diamagnetic. For pairs the
    first letter is atom A's response, the second atom B's.
    """

    E = "e"
    P = "p"
    D = "d"
    EE = "ee"
    EP = "ep"
    ED = "ed"
    PE = "pe"
    PP = "pp"
    PD = "pd"
    DE = "de"
    DP = "dp"
    DD = "dd"

    @property
    def is_pair(self) -> bool:
        return len(self.value) == 2


MIRROR_CHANNELS = (Channel.E, Channel.P, Channel.D)
PAIR_CHANNELS = (
    Channel.EE,
    Channel.EP,
    Channel.ED,
    Channel.PE,
    Channel.PP,
    Channel.PD,
    Channel.DE,
    Channel.DP,
    Channel.DD,
)


class Regime(Enum):
    NONRETARDED = "nonretarded"
    RETARDED = "retarded"


class UnsupportedAsymptoteError(ValueError):
    """No closed asymptotic coefficient is implemented for this channel/regime."""


def _static_response(atom: AtomModel, letter: str, hbar: float) -> float:
    if letter == ELECTRIC_LETTER:
        return alpha_iso(atom, 0.0, hbar)
    if letter == PARA_LETTER:
        return beta_para_iso(atom, 0.0, hbar)
    return diamagnetisability(atom.diamagnetic)


def _response_ratio(atom: AtomModel, letter: str, hbar: float):
    """Callable xi -> response(i xi)/response(0); constant 1 for diamagnetic."""
    if letter == DIA_LETTER:
        return lambda xi: np.ones_like(np.asarray(xi, dtype=float))
    if letter == ELECTRIC_LETTER:
        static = alpha_iso(atom, 0.0, hbar)
        return lambda xi: alpha_iso(atom, xi, hbar) / static
    static = beta_para_iso(atom, 0.0, hbar)
    return lambda xi: beta_para_iso(atom, xi, hbar) / static


@dataclass(frozen=True)
class MirrorPotential:
    """Per-channel single-atom potential at one distance, in J."""

    electric: float
    paramagnetic: float
    diamagnetic: float

    @property
    def magnetic(self) -> float:
        return self.paramagnetic + self.diamagnetic

    @property
    def total(self) -> float:
        return self.electric + self.magnetic


@dataclass(frozen=True)
class PairPotential:
    """Nine-channel two-atom potential at one separation, in J."""

    channels: dict[Channel, float]

    @property
    def total(self) -> float:
        return math.fsum(self.channels[ch] for ch in PAIR_CHANNELS)


def _mirror_channel(
    atom: AtomModel,
    letter: str,
    z: float,
    plate: PlateKind,
    consts: Constants,
    spec: QuadratureSpec,
) -> float:
    static = _static_response(atom, letter, consts.hbar)
    if static == 0.0:
        return 0.0
    ratio = _response_ratio(atom, letter, consts.hbar)
    scale = consts.c / (2.0 * z)  # xi = scale * x

    def integrand(x):
        return ratio(scale * x) * mirror_kernel(x)

    integral = integrate_semiinf(integrand, dataclasses.replace(spec, decay_scale=1.0)).value
    base = consts.hbar * consts.c / (32.0 * np.pi**2 * z**4)
    if letter == ELECTRIC_LETTER:
        # electric trace = -(magnetic trace), hence the opposite sign
        return -plate.sign * base / consts.eps0 * static * integral
    return plate.sign * base * consts.mu0 * static * integral


def cp_mirror(
    atom: AtomModel,
    z: float,
    plate: PlateKind,
    consts: Constants,
    spec: QuadratureSpec = QuadratureSpec(),
) -> MirrorPotential:
    """Ground-state potential of an atom at distance z from a perfect mirror.

    Electric channel: (hbar/2 pi eps0) int dxi alpha(i xi) Tr Gee1(z, z, i xi);
    paramagnetic and diamagnetic channels carry (hbar mu0 / 2 pi) and the
    magnetic trace instead. After x = 2 z xi / c each channel becomes an
    analytic prefactor ~1/z^4 times int response_ratio * mirror_kernel dx.
    In front of a conductor the electric channel is attractive and both
    magnetic ones repulsive for paramagnetic / attractive for diamagnetic
    response; a permeable mirror flips every sign.
    """
    if not z > 0.0:
        raise ValueError(f"mirror distance z must be positive, got {z!r}")
    return MirrorPotential(
        electric=_mirror_channel(atom, ELECTRIC_LETTER, z, plate, consts, spec),
        paramagnetic=_mirror_channel(atom, PARA_LETTER, z, plate, consts, spec),
        diamagnetic=_mirror_channel(atom, DIA_LETTER, z, plate, consts, spec),
    )


def cp_mirror_diamagnetic_closed(
    beta_d: float, z: float, plate: PlateKind, consts: Constants
) -> float:
    """Closed form of the diamagnetic mirror channel: sign * 3 hbar mu0 c beta_d / (32 pi^2 z^4).

    A single quartic law at every distance; attractive in front of a
    conductor (beta_d <= 0), repulsive at a permeable mirror.
    """
    if not z > 0.0:
        raise ValueError(f"mirror distance z must be positive, got {z!r}")
    if beta_d > 0.0:
        raise ValueError(f"diamagnetisability must be <= 0, got {beta_d!r}")
    return plate.sign * 3.0 * consts.hbar * consts.mu0 * consts.c * beta_d / (
        32.0 * np.pi**2 * z**4
    )


def _pair_channel(
    channel: Channel,
    atom_a: AtomModel,
    atom_b: AtomModel,
    l: float,
    consts: Constants,
    spec: QuadratureSpec,
) -> float:
    letter_a, letter_b = channel.value
    static_a = _static_response(atom_a, letter_a, consts.hbar)
    static_b = _static_response(atom_b, letter_b, consts.hbar)
    if static_a == 0.0 or static_b == 0.0:
        return 0.0

    scale = consts.c / l  # xi = scale * x
    base = consts.hbar * consts.mu0**2 * consts.c / (16.0 * np.pi**3 * l**7)
    pair_spec = dataclasses.replace(spec, decay_scale=0.5)

    electric_sides = (letter_a == ELECTRIC_LETTER) + (letter_b == ELECTRIC_LETTER)
    if electric_sides != 1:
        # like-response coupling: two electric or two magnetic sides
        ratio_a = _response_ratio(atom_a, letter_a, consts.hbar)
        ratio_b = _response_ratio(atom_b, letter_b, consts.hbar)

        def integrand(x):
            return ratio_a(scale * x) * ratio_b(scale * x) * pair_kernel_same(x)

        weight = consts.c**4 if electric_sides == 2 else 1.0
        prefactor = -base * weight * (static_a * static_b)
    else:
        # crossed electric-magnetic coupling; keep the electric ratio first
        # so that swapping the atoms reproduces bit-identical products
        if letter_a == ELECTRIC_LETTER:
            ratio_e = _response_ratio(atom_a, letter_a, consts.hbar)
            ratio_m = _response_ratio(atom_b, letter_b, consts.hbar)
        else:
            ratio_e = _response_ratio(atom_b, letter_b, consts.hbar)
            ratio_m = _response_ratio(atom_a, letter_a, consts.hbar)

        def integrand(x):
            x = np.asarray(x, dtype=float)
            return x**2 * (ratio_e(scale * x) * ratio_m(scale * x)) * pair_kernel_cross(x)

        prefactor = base * consts.c**2 * (static_a * static_b)

    integral = integrate_semiinf(integrand, pair_spec).value
    return prefactor * integral


def vdw_pair(
    atom_a: AtomModel,
    atom_b: AtomModel,
    l: float,
    consts: Constants,
    spec: QuadratureSpec = QuadratureSpec(),
) -> PairPotential:
    """Two-atom dispersion potential at separation l, split into nine channels.

    With x = l xi / c, like-response channels (ee, pp, pd, dp, dd) are

        -hbar mu0^2 c W / (16 pi^3 l^7) * int R_A R_B pair_kernel_same dx

    with W = c^4 for ee and 1 otherwise, while the crossed channels
    (ep, ed, pe, de) are

        +hbar mu0^2 c^3 / (16 pi^3 l^7) * int x^2 R_e R_m pair_kernel_cross dx,

    R denoting the response evaluated at xi = c x / l (the static magnitudes
    are inside the prefactor). Like channels inherit their sign from the
    product of static responses, crossed ones the opposite.
    """
    if not l > 0.0:
        raise ValueError(f"separation l must be positive, got {l!r}")
    channels = {
        ch: _pair_channel(ch, atom_a, atom_b, l, consts, spec) for ch in PAIR_CHANNELS
    }
    return PairPotential(channels=channels)


def vdw_pair_total_direct(
    atom_a: AtomModel,
    atom_b: AtomModel,
    l: float,
    consts: Constants,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Total two-atom potential evaluated without the channel split.

    Independent path used to check channel additivity: the full responses
    (alpha and total beta = beta_p + beta_d) enter the integrand directly,
    unfactored, so agreement with the summed vdw_pair channels is a real
    cross-check rather than an identity.
    """
    if not l > 0.0:
        raise ValueError(f"separation l must be positive, got {l!r}")
    hbar, c = consts.hbar, consts.c
    scale = c / l
    pair_spec = dataclasses.replace(spec, decay_scale=0.5)

    def like_integrand(x):
        xi = scale * np.asarray(x, dtype=float)
        return (
            c**4 * alpha_iso(atom_a, xi, hbar) * alpha_iso(atom_b, xi, hbar)
            + beta_total(atom_a, xi, hbar) * beta_total(atom_b, xi, hbar)
        ) * pair_kernel_same(x)

    def cross_integrand(x):
        x = np.asarray(x, dtype=float)
        xi = scale * x
        return (
            x**2
            * (
                alpha_iso(atom_a, xi, hbar) * beta_total(atom_b, xi, hbar)
                + beta_total(atom_a, xi, hbar) * alpha_iso(atom_b, xi, hbar)
            )
            * pair_kernel_cross(x)
        )

    base = hbar * consts.mu0**2 * c / (16.0 * np.pi**3 * l**7)
    like = integrate_semiinf(like_integrand, pair_spec).value
    cross = integrate_semiinf(cross_integrand, pair_spec).value
    return -base * like + base * c**2 * cross


def vdw_asymptote(
    channel: Channel,
    atom_a: AtomModel,
    atom_b: AtomModel,
    l: float,
    regime: Regime,
    consts: Constants,
) -> float:
    """Closed-form asymptotic value of a pair channel at separation l.

    Coefficients exist for every channel with a diamagnetic side (dd holds at
    all separations; de/ed and dp/pd in their nonretarded and retarded
    limits) and for the retarded limit of ee, pp and ep/pe, where the static
    responses come out of the integral. Other combinations raise
    UnsupportedAsymptoteError rather than guessing.
    """
    if not channel.is_pair:
        raise ValueError(f"asymptotes are defined for pair channels, got {channel}")
    if not l > 0.0:
        raise ValueError(f"separation l must be positive, got {l!r}")
    hbar, c, mu0 = consts.hbar, consts.c, consts.mu0
    letter_a, letter_b = channel.value
    pi = np.pi

    if channel is Channel.DD:
        beta_a = diamagnetisability(atom_a.diamagnetic)
        beta_b = diamagnetisability(atom_b.diamagnetic)
        return -23.0 * hbar * mu0**2 * c * (beta_a * beta_b) / (64.0 * pi**3 * l**7)

    if {letter_a, letter_b} == {DIA_LETTER, ELECTRIC_LETTER}:
        dia_atom, elec_atom = (atom_a, atom_b) if letter_a == DIA_LETTER else (atom_b, atom_a)
        beta_d = diamagnetisability(dia_atom.diamagnetic)
        if regime is Regime.NONRETARDED:
            weighted = sum(t.omega * t.dipole_sq for t in elec_atom.electric_transitions)
            return 5.0 * mu0**2 * c * (beta_d * weighted) / (96.0 * pi**3 * l**5)
        alpha0 = alpha_iso(elec_atom, 0.0, hbar)
        return 7.0 * hbar * mu0**2 * c**3 * (beta_d * alpha0) / (64.0 * pi**3 * l**7)

    if {letter_a, letter_b} == {DIA_LETTER, PARA_LETTER}:
        dia_atom, para_atom = (atom_a, atom_b) if letter_a == DIA_LETTER else (atom_b, atom_a)
        beta_d = diamagnetisability(dia_atom.diamagnetic)
        if regime is Regime.NONRETARDED:
            m_sq = sum(t.dipole_sq for t in para_atom.magnetic_transitions)
            return -(mu0**2) * (beta_d * m_sq) / (16.0 * pi**2 * l**6)
        beta_p0 = beta_para_iso(para_atom, 0.0, hbar)
        return -23.0 * hbar * mu0**2 * c * (beta_d * beta_p0) / (64.0 * pi**3 * l**7)

    if regime is not Regime.RETARDED:
        raise UnsupportedAsymptoteError(
            f"no closed nonretarded coefficient for channel {channel.value!r}"
        )
    if channel is Channel.EE:
        product = alpha_iso(atom_a, 0.0, hbar) * alpha_iso(atom_b, 0.0, hbar)
        return -23.0 * hbar * mu0**2 * c**5 * product / (64.0 * pi**3 * l**7)
    if channel is Channel.PP:
        product = beta_para_iso(atom_a, 0.0, hbar) * beta_para_iso(atom_b, 0.0, hbar)
        return -23.0 * hbar * mu0**2 * c * product / (64.0 * pi**3 * l**7)
    # ep or pe
    if channel is Channel.EP:
        product = alpha_iso(atom_a, 0.0, hbar) * beta_para_iso(atom_b, 0.0, hbar)
    else:
        product = beta_para_iso(atom_a, 0.0, hbar) * alpha_iso(atom_b, 0.0, hbar)
    return 7.0 * hbar * mu0**2 * c**3 * product / (64.0 * pi**3 * l**7)


@dataclass(frozen=True)
class PotentialCurve:
    """Per-channel potential values over a distance grid, plus provenance."""

    geometry: str  # "mirror" or "free_pair"
    plate: PlateKind | None
    distances: np.ndarray
    values: dict[Channel, np.ndarray]
    total: np.ndarray
    method: str  # "quadrature" or "closed_form"
    units: UnitSystem
    tolerances: QuadratureSpec

    def __post_init__(self):
        if self.geometry not in ("mirror", "free_pair"):
            raise ValueError(f"unknown geometry {self.geometry!r}")
        if (self.geometry == "mirror") != (self.plate is not None):
            raise ValueError("plate must be set exactly for mirror geometry")
        if self.method not in ("quadrature", "closed_form"):
            raise ValueError(f"unknown method {self.method!r}")
        expected = MIRROR_CHANNELS if self.geometry == "mirror" else PAIR_CHANNELS
        if set(self.values.keys()) != set(expected):
            raise ValueError(f"curve must carry channels {[c.value for c in expected]}")
        d = np.asarray(self.distances, dtype=float)
        if d.ndim != 1 or d.size == 0:
            raise ValueError("distances must be a non-empty 1d array")
        if not np.all(d > 0.0):
            raise ValueError("distances must be positive")
        if not np.all(np.diff(d) > 0.0):
            raise ValueError("distances must be strictly increasing")
        object.__setattr__(self, "distances", d)
        values = {ch: np.asarray(self.values[ch], dtype=float) for ch in expected}
        for ch, vals in values.items():
            if vals.shape != d.shape:
                raise ValueError(f"channel {ch.value} length does not match distances")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "total", np.asarray(self.total, dtype=float))
        summed = np.sum([values[ch] for ch in expected], axis=0)
        if not np.allclose(self.total, summed, rtol=1e-12, atol=1e-300):
            raise ValueError("total does not match the sum of the channels")


def mirror_curve(
    atom: AtomModel,
    distances,
    plate: PlateKind,
    units: UnitSystem,
    spec: QuadratureSpec = QuadratureSpec(),
) -> PotentialCurve:
    """Sweep cp_mirror over a distance grid."""
    consts = constants_for(units)
    d = np.asarray(distances, dtype=float)
    points = [cp_mirror(atom, float(z), plate, consts, spec) for z in d]
    values = {
        Channel.E: np.array([p.electric for p in points]),
        Channel.P: np.array([p.paramagnetic for p in points]),
        Channel.D: np.array([p.diamagnetic for p in points]),
    }
    total = np.array([p.total for p in points])
    return PotentialCurve(
        geometry="mirror",
        plate=plate,
        distances=d,
        values=values,
        total=total,
        method="quadrature",
        units=units,
        tolerances=spec,
    )


def pair_curve(
    atom_a: AtomModel,
    atom_b: AtomModel,
    distances,
    units: UnitSystem,
    spec: QuadratureSpec = QuadratureSpec(),
) -> PotentialCurve:
    """Sweep vdw_pair over a separation grid."""
    consts = constants_for(units)
    d = np.asarray(distances, dtype=float)
    points = [vdw_pair(atom_a, atom_b, float(l), consts, spec) for l in d]
    values = {ch: np.array([p.channels[ch] for p in points]) for ch in PAIR_CHANNELS}
    total = np.array([p.total for p in points])
    return PotentialCurve(
        geometry="free_pair",
        plate=None,
        distances=d,
        values=values,
        total=total,
        method="quadrature",
        units=units,
        tolerances=spec,
    )


def force_from_curve(curve: PotentialCurve) -> np.ndarray:
    """Force -dU/dr on the curve's grid: central differences inside, one-sided edges."""
    if curve.distances.size < 3:
        raise ValueError("force needs at least 3 grid points")
    return -np.gradient(curve.total, curve.distances, edge_order=2)
