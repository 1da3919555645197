"""Material constants, Stark Hamiltonians and experimental feasibility.

The linear and quadratic Stark Hamiltonians of an acceptor-bound hole are
encoded as six real coefficients (d0, d1..d5) in meV:

    H = d0 * I + sum_a d_a * gamma_a

so the Kramers doublets sit at eps_pm = d0 +/- |d| and the gap is 2|d|.
Fields are in V/m, lengths in Angstrom; see units.py.

The two regimes are kept strictly separate (explicit ``regime`` argument,
no automatic crossover): the linear effect applies at small fields, the
quadratic one at large fields.
"""

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .algebra import gamma_basis
from .errors import InvalidInput, UnknownMaterial
from .units import MEV_PER_ANGSTROM_V_PER_M, PLANCK_MEV_S

REGIMES = ("linear", "quadratic")

# quadratic (alpha, beta, delta) and linear (chi) coefficients plus mean
# ground-state radius; chi for Ge is a literature lower limit (estimates up
# to 0.26 exist) -- override with dataclasses.replace if needed.
_COEFFICIENTS = {
    "Ge": dict(alpha=1.0, beta=-0.3, delta=-0.36, chi=0.7e-3, rbar_angstrom=91.0),
    "Si": dict(alpha=1.0, beta=-0.2, delta=-0.42, chi=1.0e-2, rbar_angstrom=34.4),
}

_IONIZATION_MEV = {
    ("Ge", "B"): 10.4,
    ("Ge", "Al"): 10.2,
    ("Ge", "Ga"): 10.8,
    ("Si", "B"): 45.0,
    ("Si", "Al"): 57.0,
    ("Si", "Ga"): 65.0,
}


@dataclass(frozen=True)
class MaterialParams:
    """Per-(material, dopant) constants with unit conventions.

    alpha, beta, delta are the dimensionless quadratic coefficients, chi the
    dimensionless linear one, rbar_angstrom the mean ground-state radius and
    ionization_meV the acceptor ionization energy.
    """

    name: str
    dopant: str
    alpha: float
    beta: float
    delta: float
    chi: float
    rbar_angstrom: float
    ionization_meV: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.rbar_angstrom > 0 and self.ionization_meV > 0):
            raise InvalidInput(
                f"material {self.name}:{self.dopant} needs alpha, rbar, ionization > 0"
            )

    @property
    def dipole_mev_per_field(self):
        """e * rbar as meV per (V/m); doubles as the linear-regime p = e*a_B
        with the effective radius standing in for the Bohr radius."""
        return self.rbar_angstrom * MEV_PER_ANGSTROM_V_PER_M

    def spherical(self):
        """Isotropic idealization: impose beta = delta / sqrt(3)."""
        return replace(self, beta=self.delta / math.sqrt(3.0))


def builtin_materials():
    """All built-in (material, dopant) entries."""
    out = []
    for (name, dopant), ion in sorted(_IONIZATION_MEV.items()):
        out.append(MaterialParams(name=name, dopant=dopant, ionization_meV=ion,
                                  **_COEFFICIENTS[name]))
    return tuple(out)


def material_lookup(material, dopant, table=None):
    """Constants for a (material, dopant) pair.

    ``table`` maps (material, dopant) to MaterialParams and takes precedence
    over the built-in entries.  Raises UnknownMaterial when the pair is in
    neither; callers must then supply constants themselves.
    """
    if table and (material, dopant) in table:
        return table[(material, dopant)]
    key = (material, dopant)
    if key not in _IONIZATION_MEV:
        raise UnknownMaterial(
            f"no constants for {material}:{dopant}; supply a user material table"
        )
    return MaterialParams(name=material, dopant=dopant,
                          ionization_meV=_IONIZATION_MEV[key], **_COEFFICIENTS[material])


def load_material_table(path):
    """Read a user material table (JSON list of records) into a lookup dict.

    Each record carries material, dopant, alpha, beta, delta, chi,
    rbar_angstrom, ionization_meV.
    """
    with open(path, "r", encoding="utf-8") as fh:
        records = json.load(fh)
    if not isinstance(records, list):
        raise InvalidInput(f"{path}: expected a JSON list of material records")
    table = {}
    for rec in records:
        try:
            m = MaterialParams(
                name=rec["material"], dopant=rec["dopant"], alpha=rec["alpha"],
                beta=rec["beta"], delta=rec["delta"], chi=rec["chi"],
                rbar_angstrom=rec["rbar_angstrom"], ionization_meV=rec["ionization_meV"],
            )
        except KeyError as exc:
            raise InvalidInput(f"{path}: material record missing key {exc}") from exc
        table[(m.name, m.dopant)] = m
    return table


@dataclass(frozen=True)
class DVector:
    """Six coefficients of a Stark Hamiltonian, in meV."""

    d0: float
    d: np.ndarray  # (5,)
    regime: str

    def __post_init__(self):
        _check_regime(self.regime)
        d = np.ascontiguousarray(self.d, dtype=float)
        d.setflags(write=False)
        object.__setattr__(self, "d", d)
        if self.regime == "linear":
            if self.d0 != 0.0 or d[3] != 0.0 or d[4] != 0.0:
                raise InvalidInput("linear regime requires d0 = d4 = d5 = 0")

    @property
    def norm(self):
        return float(np.linalg.norm(self.d))


def _check_regime(regime):
    if regime not in REGIMES:
        raise InvalidInput(f"regime must be one of {REGIMES}, got {regime!r}")


def d_components(e, m, regime):
    """Vectorized d-vector components: e of shape (..., 3) -> (..., 6).

    Used by the transport integrators; d_linear / d_quadratic wrap single
    points into DVector values.
    """
    _check_regime(regime)
    e = np.asarray(e, dtype=float)
    out = np.zeros(e.shape[:-1] + (6,))
    if regime == "linear":
        out[..., 1:4] = m.dipole_mev_per_field * m.chi * e
        return out
    p0 = m.dipole_mev_per_field
    kappa = -(p0 * p0) / m.ionization_meV  # meV per (V/m)^2
    ex, ey, ez = e[..., 0], e[..., 1], e[..., 2]
    e2 = ex * ex + ey * ey + ez * ez
    out[..., 0] = kappa * m.alpha * e2
    out[..., 1] = kappa * m.delta * ez * ey
    out[..., 2] = kappa * m.delta * ez * ex
    out[..., 3] = kappa * m.delta * ex * ey
    out[..., 4] = kappa * (math.sqrt(3.0) / 2.0) * m.beta * (ex * ex - ey * ey)
    out[..., 5] = kappa * 0.5 * m.beta * (2 * ez * ez - ex * ex - ey * ey)
    return out


def d_jacobian(e, m, regime):
    """Analytic Jacobian d(d_a)/d(E_i), a = 1..5: shape (..., 5, 3).

    Constant diagonal in the linear regime; linear in the field components in
    the quadratic one.  Production transport always uses this analytic form
    (numeric Jacobians appear only in tests).
    """
    _check_regime(regime)
    e = np.asarray(e, dtype=float)
    jac = np.zeros(e.shape[:-1] + (5, 3))
    if regime == "linear":
        p_chi = m.dipole_mev_per_field * m.chi
        jac[..., 0, 0] = p_chi
        jac[..., 1, 1] = p_chi
        jac[..., 2, 2] = p_chi
        return jac
    p0 = m.dipole_mev_per_field
    kappa = -(p0 * p0) / m.ionization_meV
    ex, ey, ez = e[..., 0], e[..., 1], e[..., 2]
    kd = kappa * m.delta
    kb = kappa * m.beta
    jac[..., 0, 1] = kd * ez
    jac[..., 0, 2] = kd * ey
    jac[..., 1, 0] = kd * ez
    jac[..., 1, 2] = kd * ex
    jac[..., 2, 0] = kd * ey
    jac[..., 2, 1] = kd * ex
    jac[..., 3, 0] = math.sqrt(3.0) * kb * ex
    jac[..., 3, 1] = -math.sqrt(3.0) * kb * ey
    jac[..., 4, 0] = -kb * ex
    jac[..., 4, 1] = -kb * ey
    jac[..., 4, 2] = 2 * kb * ez
    return jac


def d_linear(e, m):
    """Linear-regime d-vector: d_{1..3} = p * chi * E, d0 = d4 = d5 = 0."""
    c = d_components(e, m, "linear")
    return DVector(d0=0.0, d=c[1:], regime="linear")


def d_quadratic(e, m):
    """Quadratic-regime d-vector with prefactor -(e rbar)^2 E^2 / ionization."""
    c = d_components(e, m, "quadratic")
    return DVector(d0=float(c[0]), d=c[1:], regime="quadratic")


def hamiltonian(d, basis):
    """4x4 Hermitian Stark Hamiltonian d0*I + d_a gamma_a, in meV."""
    h = d.d0 * np.eye(4, dtype=complex)
    h = h + np.einsum("a,aij->ij", d.d, basis.gamma)
    return h


def eigen_split(d):
    """(eps_minus, eps_plus, gap) of the Kramers doublets: d0 -/+ |d|, 2|d|."""
    n = d.norm
    return (d.d0 - n, d.d0 + n, 2 * n)


def isotropic_check(e, m_iso, spin):
    """Residual of the spherical-limit identity, per unit field squared.

    For beta = delta/sqrt(3) the traceless part of the quadratic Hamiltonian
    collapses to beta * [(Ehat.S)^2 - (5/4) I] in units of the quadratic
    prefactor.  Returns the max-abs deviation between the two constructions
    evaluated at the unit field direction; anisotropic constants give a
    strictly positive residual.
    """
    e = np.asarray(e, dtype=float)
    mag = np.linalg.norm(e)
    if not mag > 0:
        raise InvalidInput("isotropic_check needs a nonzero field direction")
    ehat = e / mag
    basis = gamma_basis(spin)
    comps = d_components(ehat, m_iso, "quadratic")
    p0 = m_iso.dipole_mev_per_field
    kappa = -(p0 * p0) / m_iso.ionization_meV
    lhs = np.einsum("a,aij->ij", comps[1:] / kappa, basis.gamma)
    es = ehat[0] * spin.sx + ehat[1] * spin.sy + ehat[2] * spin.sz
    rhs = m_iso.beta * (es @ es - 1.25 * np.eye(4))
    return float(np.abs(lhs - rhs).max())


def direction_grid(n=200):
    """Deterministic unit directions: symmetry axes plus a Fibonacci sphere.

    The axes, face diagonals and body diagonals are included explicitly since
    the quadratic gap takes its extremes at these symmetry points.
    """
    special = [
        (1, 0, 0), (0, 1, 0), (0, 0, 1),
        (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1),
        (1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1),
    ]
    dirs = [np.array(s, dtype=float) / np.linalg.norm(s) for s in special]
    golden = math.pi * (3.0 - math.sqrt(5.0))
    for k in range(n):
        z = 1.0 - 2.0 * (k + 0.5) / n
        r = math.sqrt(max(0.0, 1.0 - z * z))
        dirs.append(np.array([r * math.cos(golden * k), r * math.sin(golden * k), z]))
    return np.array(dirs)


@dataclass(frozen=True)
class FeasibilityReport:
    """Static experimental budget at one field magnitude and rotation rate."""

    material: str
    dopant: str
    regime: str
    e_mag: float
    rotation_freq_hz: float
    gap_min_meV: float
    gap_max_meV: float
    drive_quantum_meV: float
    adiabaticity_ratio: float
    ionization_margin_meV: float
    adiabaticity_flag: bool
    ionization_flag: bool

    @property
    def flags(self):
        out = []
        if self.adiabaticity_flag:
            out.append("adiabaticity")
        if self.ionization_flag:
            out.append("ionization")
        return out


def feasibility_report(e_mag, m, rotation_freq, regime="quadratic"):
    """Gap extremes over field directions, ionization margin and adiabaticity.

    The drive quantum is h*f for rotation frequency f; the adiabaticity ratio
    is (min gap)/(h*f) and is flagged below 100.  The ionization margin is the
    worst-direction distance of either level shift |eps_pm| from the
    ionization energy, flagged when negative.
    """
    if not (np.isfinite(e_mag) and e_mag > 0):
        raise InvalidInput("field magnitude must be positive")
    if not (np.isfinite(rotation_freq) and rotation_freq > 0):
        raise InvalidInput("rotation frequency must be positive")
    _check_regime(regime)
    comps = d_components(direction_grid() * e_mag, m, regime)
    norms = np.linalg.norm(comps[:, 1:], axis=1)
    gaps = 2.0 * norms
    eps_minus = comps[:, 0] - norms
    eps_plus = comps[:, 0] + norms
    worst_shift = max(np.abs(eps_minus).max(), np.abs(eps_plus).max())
    drive_quantum = PLANCK_MEV_S * rotation_freq
    gap_min = float(gaps.min())
    ratio = gap_min / drive_quantum
    margin = float(m.ionization_meV - worst_shift)
    return FeasibilityReport(
        material=m.name, dopant=m.dopant, regime=regime, e_mag=float(e_mag),
        rotation_freq_hz=float(rotation_freq), gap_min_meV=gap_min,
        gap_max_meV=float(gaps.max()), drive_quantum_meV=float(drive_quantum),
        adiabaticity_ratio=float(ratio), ionization_margin_meV=margin,
        adiabaticity_flag=bool(ratio < 100.0), ionization_flag=bool(margin < 0.0),
    )
