"""Power-law exponents and signs of computed potential curves.

The asymptotic behaviour of every channel is an integer power law with a
definite sign in each regime (nonretarded = separation small against c over
every transition frequency, retarded = large). local_log_slope measures
d ln|U| / d ln r by central differences on a geometric grid; verify_tables
sweeps single-transition fixture atoms through both regimes and checks each
channel's sign exactly and its slope to +-0.05.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .potentials import (
    Channel,
    PotentialCurve,
    mirror_curve,
    pair_curve,
)
from .green import PlateKind
from .quad import QuadratureSpec
from .response import ELECTRIC, MAGNETIC, AtomModel, DiamagneticSpec, Transition
from .units import UnitSystem

SLOPE_TOL = 0.05
# Regime depth: l * omega / c at which a limit is considered deep. The
# subleading corrections are suppressed by at least one power of this, so
# measured slopes sit well inside SLOPE_TOL.
REGIME_DEPTH = {"nonretarded": 1e-3, "retarded": 1e3, "all": 1.0}


@dataclass(frozen=True)
class SlopeProfile:
    """Local log-log slope of |U| and the sign of U, on the interior grid points."""

    distances: np.ndarray
    exponent: np.ndarray
    sign: np.ndarray  # +1 or -1 per point


def _curve_values(curve: PotentialCurve, channel) -> np.ndarray:
    if channel == "total":
        return curve.total
    return curve.values[channel]


def local_log_slope(curve: PotentialCurve, channel) -> SlopeProfile:
    """Central-difference d ln|U| / d ln r on a geometric grid.

    channel is a Channel of the curve or the string "total". The grid must be
    geometric (constant ratio) with at least 5 points; the two endpoints have
    no central stencil and are dropped, as is any interior point whose
    stencil contains a zero or a sign change.
    """
    d = curve.distances
    if d.size < 5:
        raise ValueError("slope extraction needs at least 5 grid points")
    ratios = d[1:] / d[:-1]
    if np.max(np.abs(ratios / ratios[0] - 1.0)) > 1e-9:
        raise ValueError("slope extraction needs a geometric distance grid")
    u = _curve_values(curve, channel)

    kept, slopes, signs = [], [], []
    log_d = np.log(d)
    for i in range(1, d.size - 1):
        window = u[i - 1 : i + 2]
        if np.any(window == 0.0):
            continue
        s = np.sign(window)
        if not (s == s[0]).all():
            continue
        slope = (np.log(abs(u[i + 1])) - np.log(abs(u[i - 1]))) / (log_d[i + 1] - log_d[i - 1])
        kept.append(i)
        slopes.append(slope)
        signs.append(int(s[0]))
    return SlopeProfile(
        distances=d[kept],
        exponent=np.array(slopes),
        sign=np.array(signs, dtype=int),
    )


@dataclass(frozen=True)
class TableEntry:
    """One expected sign/power cell: a channel in a geometry and regime."""

    channel: Channel
    geometry: str  # "mirror" or "pair"
    regime: str  # "nonretarded", "retarded", or "all"
    expected_sign: int
    expected_power: int


# Signs for the conducting mirror; a permeable plate flips all of them.
MIRROR_TABLE = (
    TableEntry(Channel.E, "mirror", "nonretarded", -1, -3),
    TableEntry(Channel.E, "mirror", "retarded", -1, -4),
    TableEntry(Channel.P, "mirror", "nonretarded", +1, -3),
    TableEntry(Channel.P, "mirror", "retarded", +1, -4),
    TableEntry(Channel.D, "mirror", "nonretarded", -1, -4),
    TableEntry(Channel.D, "mirror", "retarded", -1, -4),
)

PAIR_TABLE = (
    TableEntry(Channel.EE, "pair", "nonretarded", -1, -6),
    TableEntry(Channel.EE, "pair", "retarded", -1, -7),
    TableEntry(Channel.EP, "pair", "nonretarded", +1, -4),
    TableEntry(Channel.EP, "pair", "retarded", +1, -7),
    TableEntry(Channel.ED, "pair", "nonretarded", -1, -5),
    TableEntry(Channel.ED, "pair", "retarded", -1, -7),
    TableEntry(Channel.PE, "pair", "nonretarded", +1, -4),
    TableEntry(Channel.PE, "pair", "retarded", +1, -7),
    TableEntry(Channel.PP, "pair", "nonretarded", -1, -6),
    TableEntry(Channel.PP, "pair", "retarded", -1, -7),
    TableEntry(Channel.PD, "pair", "nonretarded", +1, -6),
    TableEntry(Channel.PD, "pair", "retarded", +1, -7),
    TableEntry(Channel.DE, "pair", "nonretarded", -1, -5),
    TableEntry(Channel.DE, "pair", "retarded", -1, -7),
    TableEntry(Channel.DP, "pair", "nonretarded", +1, -6),
    TableEntry(Channel.DP, "pair", "retarded", +1, -7),
    # the dd power law is the same at every separation, one merged cell
    TableEntry(Channel.DD, "pair", "all", -1, -7),
)

ALL_TABLE_ENTRIES = MIRROR_TABLE + PAIR_TABLE


def default_fixtures(beta_d: float = -1.0) -> dict[str, AtomModel]:
    """Single-transition fixture atoms in natural units, unit weights."""
    return {
        "e": AtomModel(
            label="electric-fixture",
            electric_transitions=(Transition(omega=1.0, dipole_sq=1.0, kind=ELECTRIC),),
        ),
        "p": AtomModel(
            label="paramagnetic-fixture",
            magnetic_transitions=(Transition(omega=1.0, dipole_sq=1.0, kind=MAGNETIC),),
        ),
        "d": AtomModel(
            label="diamagnetic-fixture",
            diamagnetic=DiamagneticSpec(direct_beta_d=beta_d),
        ),
    }


@dataclass(frozen=True)
class TableCellResult:
    entry: TableEntry
    measured_slope: float
    measured_sign: int
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {
            "channel": self.entry.channel.value,
            "geometry": self.entry.geometry,
            "regime": self.entry.regime,
            "expected_sign": self.entry.expected_sign,
            "expected_power": self.entry.expected_power,
            "measured_slope": self.measured_slope,
            "measured_sign": self.measured_sign,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class TableReport:
    cells: tuple[TableCellResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(cell.passed for cell in self.cells)


def _grid_around(center: float, points: int = 5, ratio: float = 1.02) -> np.ndarray:
    half = (points - 1) // 2
    return center * ratio ** np.arange(-half, points - half)


def _check_entry(
    entry: TableEntry, fixtures: dict[str, AtomModel], spec: QuadratureSpec
) -> TableCellResult:
    grid = _grid_around(REGIME_DEPTH[entry.regime])
    if entry.geometry == "mirror":
        atom = fixtures[entry.channel.value]
        curve = mirror_curve(atom, grid, PlateKind.CONDUCTING, UnitSystem.NATURAL, spec)
    else:
        letter_a, letter_b = entry.channel.value
        curve = pair_curve(fixtures[letter_a], fixtures[letter_b], grid, UnitSystem.NATURAL, spec)
    values = _curve_values(curve, entry.channel)

    signs = np.sign(values)
    if not (signs == signs[0]).all() or signs[0] == 0.0:
        return TableCellResult(entry, float("nan"), 0, False, "sign not uniform on the grid")
    measured_sign = int(signs[0])

    profile = local_log_slope(curve, entry.channel)
    mid = profile.exponent.size // 2
    measured_slope = float(profile.exponent[mid])

    problems = []
    if measured_sign != entry.expected_sign:
        problems.append(f"sign {measured_sign:+d} != expected {entry.expected_sign:+d}")
    if abs(measured_slope - entry.expected_power) > SLOPE_TOL:
        problems.append(
            f"slope {measured_slope:.4f} off expected {entry.expected_power} by more than {SLOPE_TOL}"
        )
    return TableCellResult(
        entry=entry,
        measured_slope=measured_slope,
        measured_sign=measured_sign,
        passed=not problems,
        detail="; ".join(problems) if problems else "ok",
    )


def verify_tables(
    fixtures: dict[str, AtomModel] | None = None,
    rel_tol: float = 1e-10,
) -> TableReport:
    """Check every sign/power cell against curves computed in the deep regimes.

    Deterministic: fixture atoms, grids and quadrature are all fixed; runs in
    natural units where the fixture magnitudes are O(1).
    """
    if fixtures is None:
        fixtures = default_fixtures()
    spec = QuadratureSpec(rel_tol=rel_tol)
    cells = tuple(_check_entry(entry, fixtures, spec) for entry in ALL_TABLE_ENTRIES)
    return TableReport(cells=cells)
