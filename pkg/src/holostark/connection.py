"""Band projectors and the adiabatic transport gauge field.

For H = d0*I + d_a gamma_a the band projectors are

    P_pm = (1 pm dhat_a gamma_a) / 2

and the generator of adiabatic transport along a change of d is the
commutator of the projector with its differential,

    A_a = [dP/d(d_a), P] = +(i / 2 d^2) d_b gamma_ab ,

identical for either projector.  A_a is anti-Hermitian, so its path-ordered
exponential is unitary; it is purely off-band (P_pm A_a P_pm = 0), is
homogeneous of degree -1 in d, and annihilates radial moves (dhat_a A_a = 0).

A frequently quoted Hermitian variant i[dP, P] differs by a factor of i and
cannot be exponentiated to a unitary; this package transports with [dP, P]
itself, the convention singled out by the time-dependent Schrodinger oracle
(see dynamics) and by the Berry-phase limit.

Pulled back to electric-field space via the analytic Jacobian:

    A^i = (d d_a / d E_i) A_a .
"""

from dataclasses import dataclass

import numpy as np

from .algebra import default_basis
from .errors import DegeneratePoint
from .stark import DVector, MaterialParams, d_components, d_jacobian

# points with |d| below this fraction of the largest |d| seen on a path are
# treated as gap closures: 1/d^2 amplifies noise near degeneracy
DEGENERACY_RTOL = 1e-9


def projectors(d, basis=None):
    """Band projectors (P_plus, P_minus) for a DVector.

    Each is Hermitian, idempotent, rank 2, and they resolve the identity.
    Raises DegeneratePoint when |d| = 0 (gap closed, no band decomposition).
    """
    basis = basis or default_basis()
    n = d.norm
    if not n > 0:
        raise DegeneratePoint("zero d-vector: Kramers bands are degenerate")
    nd = np.einsum("a,aij->ij", d.d / n, basis.gamma)
    eye = np.eye(4)
    return (eye + nd) / 2, (eye - nd) / 2


def connection_d(d, basis=None):
    """The five transport generators A_a = +(i/2d^2) d_b gamma_ab, (5, 4, 4).

    Anti-Hermitian, in 1/meV.  Matches the finite-difference commutator
    [dP/d(d_a), P] built from either projector.
    """
    basis = basis or default_basis()
    n = d.norm
    if not n > 0:
        raise DegeneratePoint("zero d-vector: transport generator undefined")
    return (0.5j / (n * n)) * np.einsum("b,abij->aij", d.d, basis.gammab)


@dataclass(frozen=True)
class GaugeField:
    """Field-space transport generators at one field point, units 1/(V/m)."""

    components: np.ndarray  # (3, 4, 4) anti-Hermitian, one per E_x, E_y, E_z
    basepoint: np.ndarray  # (3,)
    regime: str
    material: MaterialParams

    def __post_init__(self):
        c = np.ascontiguousarray(self.components)
        c.setflags(write=False)
        object.__setattr__(self, "components", c)
        b = np.ascontiguousarray(self.basepoint, dtype=float)
        b.setflags(write=False)
        object.__setattr__(self, "basepoint", b)


def connection_field(e, regime, m, basis=None):
    """Pull the d-space generators back to field space: A^i = J_ai A_a.

    The Jacobian is the analytic one from the d-vector definitions.  In the
    linear regime the material scale p*chi cancels between the Jacobian and
    the 1/d^2 of A_a, so the components depend on the field direction history
    only.
    """
    basis = basis or default_basis()
    e = np.asarray(e, dtype=float)
    comps = d_components(e, m, regime)
    d = DVector(d0=float(comps[0]) if regime == "quadratic" else 0.0,
                d=comps[1:], regime=regime)
    aa = connection_d(d, basis)
    jac = d_jacobian(e, m, regime)
    components = np.einsum("ai,ajk->ijk", jac, aa)
    return GaugeField(components=components, basepoint=e, regime=regime, material=m)


def transport_exponents(points, regime, m, basis=None):
    """Per-step anti-Hermitian exponents A^i(E_mid) dE_i along a polyline.

    Midpoint evaluation makes the ordered product of their exponentials a
    second-order integrator.  Raises DegeneratePoint if the gap closes along
    the way (|d| below DEGENERACY_RTOL times the path maximum, or zero).
    """
    basis = basis or default_basis()
    points = np.asarray(points, dtype=float)
    mids = 0.5 * (points[1:] + points[:-1])
    diffs = points[1:] - points[:-1]
    comps = d_components(mids, m, regime)
    dvecs = comps[:, 1:]
    norms = np.linalg.norm(dvecs, axis=1)
    if not norms.min() > DEGENERACY_RTOL * norms.max():
        raise DegeneratePoint("gap closes along the path")
    jac = d_jacobian(mids, m, regime)
    jde = np.einsum("kai,ki->ka", jac, diffs)
    expo = np.einsum("ka,kb,abij->kij", jde, dvecs, basis.gammab)
    return (0.5j / (norms * norms))[:, None, None] * expo
