"""Isotropic atomic response functions on the positive imaginary frequency axis.

An atom is modelled by its electric dipole transitions (polarisability
alpha(i xi)), magnetic dipole transitions (paramagnetisability beta_p(i xi),
both Lorentzian sums that are positive and monotonically decreasing in xi)
and a static diamagnetisability beta_d <= 0. On the imaginary axis the
Lorentzian denominators omega_k^2 + xi^2 never vanish, so no pole
regularization is needed anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

ELECTRIC = "electric"
MAGNETIC = "magnetic"


class AtomFileError(ValueError):
    """Atom definition file is malformed; message carries file and line."""


@dataclass(frozen=True)
class Transition:
    """One ground-to-excited transition.

    omega: angular frequency in rad/s, > 0.
    dipole_sq: squared dipole matrix element magnitude; C^2 m^2 for electric
        transitions, J^2/T^2 for magnetic ones. >= 0.
    kind: "electric" or "magnetic".
    """

    omega: float
    dipole_sq: float
    kind: str

    def __post_init__(self):
        if not self.omega > 0.0:
            raise ValueError(f"transition frequency must be positive, got {self.omega!r}")
        if self.dipole_sq < 0.0:
            raise ValueError(f"squared dipole element must be >= 0, got {self.dipole_sq!r}")
        if self.kind not in (ELECTRIC, MAGNETIC):
            raise ValueError(f"transition kind must be electric or magnetic, got {self.kind!r}")


@dataclass(frozen=True)
class ChargedParticle:
    """Constituent particle entering the diamagnetisability sum."""

    charge: float  # C
    mass: float  # kg
    mean_sq_radius: float  # m^2, relative to the centre of mass

    def __post_init__(self):
        if not self.mass > 0.0:
            raise ValueError(f"particle mass must be positive, got {self.mass!r}")
        if self.mean_sq_radius < 0.0:
            raise ValueError(f"mean square radius must be >= 0, got {self.mean_sq_radius!r}")


@dataclass(frozen=True)
class DiamagneticSpec:
    """Static diamagnetisability, given directly or via a particle decomposition.

    Specifying both is rejected as ambiguous. A direct value must respect the
    Lenz rule (beta_d <= 0); the particle form -sum q^2 <r^2>/(6 m) is
    non-positive by construction.
    """

    direct_beta_d: float | None = None
    particles: tuple[ChargedParticle, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "particles", tuple(self.particles))
        if self.direct_beta_d is not None and self.particles:
            raise ValueError("give either a direct beta_d or a particle list, not both")
        if self.direct_beta_d is not None and self.direct_beta_d > 0.0:
            raise ValueError(
                f"diamagnetisability must be <= 0 (Lenz rule), got {self.direct_beta_d!r}"
            )


def diamagnetisability(spec: DiamagneticSpec) -> float:
    """Static diamagnetisability in J/T^2; always <= 0."""
    if spec.direct_beta_d is not None:
        return spec.direct_beta_d
    return -sum(p.charge**2 * p.mean_sq_radius / (6.0 * p.mass) for p in spec.particles)


@dataclass(frozen=True)
class AtomModel:
    """Isotropic atom: transition lists plus a static diamagnetisability."""

    label: str
    electric_transitions: tuple[Transition, ...] = ()
    magnetic_transitions: tuple[Transition, ...] = ()
    diamagnetic: DiamagneticSpec = field(default_factory=DiamagneticSpec)

    def __post_init__(self):
        object.__setattr__(self, "electric_transitions", tuple(self.electric_transitions))
        object.__setattr__(self, "magnetic_transitions", tuple(self.magnetic_transitions))
        for t in self.electric_transitions:
            if t.kind != ELECTRIC:
                raise ValueError(f"electric_transitions holds a {t.kind} transition")
        for t in self.magnetic_transitions:
            if t.kind != MAGNETIC:
                raise ValueError(f"magnetic_transitions holds a {t.kind} transition")
        if (
            not self.electric_transitions
            and not self.magnetic_transitions
            and diamagnetisability(self.diamagnetic) == 0.0
        ):
            raise ValueError(f"atom {self.label!r} has no response at all")


def _lorentz_sum(transitions: tuple[Transition, ...], xi, hbar: float):
    """(2/3 hbar) sum_k omega_k |d_k|^2 / (omega_k^2 + xi^2), vectorized in xi."""
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(xi_arr < 0.0):
        raise ValueError("imaginary-axis frequency xi must be >= 0")
    total = np.zeros_like(xi_arr)
    for t in transitions:
        total = total + t.omega * t.dipole_sq / (t.omega**2 + xi_arr**2)
    total = total * (2.0 / (3.0 * hbar))
    return float(total) if np.isscalar(xi) else total


def alpha_iso(atom: AtomModel, xi, hbar: float):
    """Electric polarisability alpha(i xi); scalar or ndarray xi, xi >= 0."""
    return _lorentz_sum(atom.electric_transitions, xi, hbar)


def beta_para_iso(atom: AtomModel, xi, hbar: float):
    """Paramagnetisability beta_p(i xi); same Lorentzian form with magnetic elements."""
    return _lorentz_sum(atom.magnetic_transitions, xi, hbar)


def beta_total(atom: AtomModel, xi, hbar: float):
    """Total magnetisability beta(i xi) = beta_p(i xi) + beta_d."""
    return beta_para_iso(atom, xi, hbar) + diamagnetisability(atom.diamagnetic)


# --- atom definition files ------------------------------------------------
#
# YAML schema (all frequencies rad/s, SI units unless the file is meant for
# natural-unit runs):
#
#   label: hydrogen-like
#   electric_transitions:
#     - {omega: 1.55e16, mu_sq: 1.8e-58}
#   magnetic_transitions:
#     - {omega: 4.4e9, m_sq: 8.6e-47}
#   beta_d: -3.9e-29          # or instead:
#   particles:
#     - {q: -1.602176634e-19, m: 9.1093837015e-31, r_sq: 8.4e-21}

_TOP_KEYS = {"label", "electric_transitions", "magnetic_transitions", "beta_d", "particles"}


def _mark(path, node) -> str:
    return f"{path}:{node.start_mark.line + 1}"


def _fail(path, node, message: str):
    raise AtomFileError(f"{_mark(path, node)}: {message}")


def _as_float(path, node) -> float:
    if not isinstance(node, yaml.ScalarNode):
        _fail(path, node, "expected a number")
    try:
        return float(node.value)
    except ValueError:
        _fail(path, node, f"expected a number, got {node.value!r}")


def _as_entries(path, node, what: str) -> list:
    if not isinstance(node, yaml.SequenceNode):
        _fail(path, node, f"{what} must be a list")
    return node.value


def _entry_map(path, node, allowed: set[str]) -> dict:
    if not isinstance(node, yaml.MappingNode):
        _fail(path, node, f"expected a mapping with keys {sorted(allowed)}")
    out = {}
    for key_node, value_node in node.value:
        key = key_node.value
        if key not in allowed:
            _fail(path, key_node, f"unknown key {key!r}, expected one of {sorted(allowed)}")
        if key in out:
            _fail(path, key_node, f"duplicate key {key!r}")
        out[key] = value_node
    for key in allowed:
        if key not in out:
            _fail(path, node, f"missing key {key!r}")
    return out


def _parse_transition(path, node, kind: str, dipole_key: str) -> Transition:
    entries = _entry_map(path, node, {"omega", dipole_key})
    omega = _as_float(path, entries["omega"])
    dipole_sq = _as_float(path, entries[dipole_key])
    if not omega > 0.0:
        _fail(path, entries["omega"], f"omega must be positive, got {omega!r}")
    if dipole_sq < 0.0:
        _fail(path, entries[dipole_key], f"{dipole_key} must be >= 0, got {dipole_sq!r}")
    return Transition(omega=omega, dipole_sq=dipole_sq, kind=kind)


def _parse_particle(path, node) -> ChargedParticle:
    entries = _entry_map(path, node, {"q", "m", "r_sq"})
    q = _as_float(path, entries["q"])
    m = _as_float(path, entries["m"])
    r_sq = _as_float(path, entries["r_sq"])
    if not m > 0.0:
        _fail(path, entries["m"], f"particle mass must be positive, got {m!r}")
    if r_sq < 0.0:
        _fail(path, entries["r_sq"], f"r_sq must be >= 0, got {r_sq!r}")
    return ChargedParticle(charge=q, mass=m, mean_sq_radius=r_sq)


def load_atom_file(path) -> AtomModel:
    """Parse an atom definition file, reporting errors with file:line prefixes."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise AtomFileError(f"cannot read atom file {path}: {exc}") from exc
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        raise AtomFileError(f"{path}: not valid YAML: {exc}") from exc
    if root is None:
        raise AtomFileError(f"{path}: file is empty")
    if not isinstance(root, yaml.MappingNode):
        raise AtomFileError(f"{path}: top level must be a mapping")

    nodes = {}
    for key_node, value_node in root.value:
        key = key_node.value
        if key not in _TOP_KEYS:
            _fail(path, key_node, f"unknown key {key!r}, expected one of {sorted(_TOP_KEYS)}")
        if key in nodes:
            _fail(path, key_node, f"duplicate key {key!r}")
        nodes[key] = value_node

    if "label" not in nodes:
        raise AtomFileError(f"{path}: missing required key 'label'")
    if not isinstance(nodes["label"], yaml.ScalarNode) or not nodes["label"].value:
        _fail(path, nodes["label"], "label must be a non-empty string")
    label = nodes["label"].value

    electric = tuple(
        _parse_transition(path, n, ELECTRIC, "mu_sq")
        for n in _as_entries(path, nodes["electric_transitions"], "electric_transitions")
    ) if "electric_transitions" in nodes else ()
    magnetic = tuple(
        _parse_transition(path, n, MAGNETIC, "m_sq")
        for n in _as_entries(path, nodes["magnetic_transitions"], "magnetic_transitions")
    ) if "magnetic_transitions" in nodes else ()

    if "beta_d" in nodes and "particles" in nodes:
        _fail(path, nodes["beta_d"], "give either beta_d or particles, not both")
    if "beta_d" in nodes:
        beta_d = _as_float(path, nodes["beta_d"])
        if beta_d > 0.0:
            _fail(path, nodes["beta_d"], f"beta_d must be <= 0 (Lenz rule), got {beta_d!r}")
        dia = DiamagneticSpec(direct_beta_d=beta_d)
    elif "particles" in nodes:
        dia = DiamagneticSpec(
            particles=tuple(
                _parse_particle(path, n)
                for n in _as_entries(path, nodes["particles"], "particles")
            )
        )
    else:
        dia = DiamagneticSpec()

    try:
        return AtomModel(
            label=label,
            electric_transitions=electric,
            magnetic_transitions=magnetic,
            diamagnetic=dia,
        )
    except ValueError as exc:
        raise AtomFileError(f"{path}: {exc}") from exc
