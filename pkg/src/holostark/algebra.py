"""Spin-3/2 operators and the five mutually anticommuting 4x4 matrices.

Conventions
-----------
* The Sz eigenbasis is ordered (3/2, 1/2, -1/2, -3/2), with hbar = 1.
* Anticommutators are HALVED throughout this package:

      {A, B} = (AB + BA) / 2

  Most texts use the unhalved convention; factors of two in the matrix
  constructions below differ from those references accordingly.

Two constructions of the anticommuting quintet are provided.  ``gamma_basis``
builds them from the spin matrices and is the authoritative one used by all
downstream physics; in the Sz-ordered basis its fifth matrix is
diag(1, -1, -1, 1).  ``canonical_gamma`` returns the familiar block forms
(off-diagonal i*sigma blocks, diag(I, -I) for the fifth), which live in a
permuted basis; ``basis_intertwiner`` produces the unitary relating any two
equivalent constructions.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._linalg import PAULI, unitarize
from .errors import NoIntertwiner


def acomm(a, b):
    """Halved anticommutator (AB + BA)/2."""
    return 0.5 * (a @ b + b @ a)


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SpinOperators:
    """The three 4x4 spin-3/2 angular momentum matrices (dimensionless)."""

    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    def __post_init__(self):
        for name in ("sx", "sy", "sz"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    def as_stack(self):
        return np.stack([self.sx, self.sy, self.sz])


@dataclass(frozen=True)
class CliffordBasis:
    """Five mutually anticommuting Hermitian 4x4 matrices and their rotation
    generators.

    gamma[a] squares to the identity; gammab[a, b] = (1/2i)[gamma_a, gamma_b]
    is Hermitian, traceless and antisymmetric in (a, b).
    """

    gamma: np.ndarray  # (5, 4, 4)
    gammab: np.ndarray  # (5, 5, 4, 4)
    basis_label: str

    def __post_init__(self):
        object.__setattr__(self, "gamma", _frozen(self.gamma))
        object.__setattr__(self, "gammab", _frozen(self.gammab))


def spin_matrices():
    """Spin-3/2 matrices in the Sz eigenbasis ordered (3/2, 1/2, -1/2, -3/2).

    Standard ladder construction: Sz is diagonal, S+ has matrix elements
    sqrt(s(s+1) - m(m+1)) on the first superdiagonal.
    """
    m = np.array([1.5, 0.5, -0.5, -1.5])
    sz = np.diag(m).astype(complex)
    splus = np.zeros((4, 4), dtype=complex)
    for i in range(1, 4):
        splus[i - 1, i] = np.sqrt(3.75 - m[i] * (m[i] + 1))
    sx = 0.5 * (splus + splus.conj().T)
    sy = (splus - splus.conj().T) / 2j
    return SpinOperators(sx=sx, sy=sy, sz=sz)


def _generators(gamma):
    gammab = np.einsum("aij,bjk->abik", gamma, gamma)
    gammab = (gammab - np.swapaxes(gammab, 0, 1)) / 2j
    return gammab


def gamma_basis(spin):
    """Build the anticommuting quintet from spin matrices.

    gamma_1 = (2/sqrt3){Sy,Sz}, gamma_2 = (2/sqrt3){Sz,Sx},
    gamma_3 = (2/sqrt3){Sy,Sx}, gamma_4 = (1/sqrt3)(Sx^2 - Sy^2),
    gamma_5 = Sz^2 - (5/4) I, with the halved anticommutator.
    """
    sx, sy, sz = spin.sx, spin.sy, spin.sz
    s3 = np.sqrt(3.0)
    gamma = np.stack([
        (2 / s3) * acomm(sy, sz),
        (2 / s3) * acomm(sz, sx),
        (2 / s3) * acomm(sy, sx),
        (1 / s3) * (sx @ sx - sy @ sy),
        sz @ sz - 1.25 * np.eye(4),
    ])
    return CliffordBasis(gamma=gamma, gammab=_generators(gamma), basis_label="sz-ordered")


def canonical_gamma():
    """The explicit block forms of the quintet.

    gamma_i (i=1..3) has i*sigma_i / -i*sigma_i off-diagonal blocks, gamma_4
    is the antidiagonal block identity and gamma_5 = diag(I, -I).  These live
    in a basis permuted relative to the Sz ordering; see basis_intertwiner.
    """
    z = np.zeros((2, 2))
    i2 = np.eye(2)
    gamma = np.zeros((5, 4, 4), dtype=complex)
    for i in range(3):
        gamma[i] = np.block([[z, 1j * PAULI[i]], [-1j * PAULI[i], z]])
    gamma[3] = np.block([[z, i2], [i2, z]])
    gamma[4] = np.block([[i2, z], [z, -i2]])
    return CliffordBasis(gamma=gamma, gammab=_generators(gamma), basis_label="canonical-blocks")


def basis_intertwiner(a, b, tol=1e-10):
    """Unitary Q with Q a.gamma[k] Q^dag = b.gamma[k] for all k.

    Solves the stacked linear intertwining system by SVD, unitarizes the
    null vector, and verifies the residual.  Raises NoIntertwiner when the
    two quintets are not unitarily equivalent (e.g. a single generator with
    flipped sign, which changes the product gamma_1...gamma_5).
    """
    eye = np.eye(4)
    rows = [np.kron(eye, ak.T) - np.kron(bk, eye) for ak, bk in zip(a.gamma, b.gamma)]
    system = np.vstack(rows)
    _, _, vh = np.linalg.svd(system)
    q = unitarize(vh[-1].reshape(4, 4))
    residual = max(
        np.abs(q @ ak @ q.conj().T - bk).max() for ak, bk in zip(a.gamma, b.gamma)
    )
    if not residual <= tol:
        raise NoIntertwiner(
            f"no unitary relates the two bases (best residual {residual:.3e})"
        )
    return q


@lru_cache(maxsize=1)
def default_basis():
    """The shared Sz-ordered CliffordBasis used by downstream modules."""
    return gamma_basis(spin_matrices())
