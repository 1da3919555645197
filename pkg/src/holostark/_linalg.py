"""Small dense linear-algebra helpers (4x4 and 2x2 scale)."""

import numpy as np

from .errors import NotUnitary

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


def dagger(a):
    return np.conj(np.swapaxes(a, -1, -2))


def expm_antiherm(a):
    """exp(A) for anti-Hermitian A (stacked ok), via eigendecomposition of iA.

    The result is unitary to roundoff for any step size, which is what the
    path-ordered integrators rely on.
    """
    h = 1j * np.asarray(a)
    h = 0.5 * (h + dagger(h))
    w, v = np.linalg.eigh(h)
    return np.einsum("...ik,...k,...jk->...ij", v, np.exp(-1j * w), np.conj(v))


def su2_exp(v):
    """exp(i v . sigma) for real 3-vector(s) v, in closed form."""
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v, axis=-1)
    safe = np.where(n == 0, 1.0, n)
    unit = v / safe[..., None]
    out = np.cos(n)[..., None, None] * np.eye(2)
    out = out + 1j * np.sin(n)[..., None, None] * np.einsum("...k,kij->...ij", unit, PAULI)
    return out


def unitarity_defect(u):
    u = np.asarray(u)
    n = u.shape[-1]
    return float(np.abs(dagger(u) @ u - np.eye(n)).max())


def require_unitary(u, tol=1e-8, what="matrix"):
    defect = unitarity_defect(u)
    if not defect <= tol:
        raise NotUnitary(f"{what} is not unitary: defect {defect:.3e} > {tol:.1e}")


def unitarize(m):
    """Nearest unitary to m in Frobenius norm (polar factor via SVD)."""
    w, _, vh = np.linalg.svd(m)
    return w @ vh


def projector_frame(p, rank=2):
    """Deterministic orthonormal basis (columns) of range(P) for a projector P.

    Gram-Schmidt over the projector columns in index order; each accepted
    vector is rotated so its largest-magnitude component is real positive.
    """
    vs = []
    for j in range(p.shape[0]):
        v = p[:, j].copy()
        for u in vs:
            v = v - (np.conj(u) @ v) * u
        nv = np.linalg.norm(v)
        if nv > 1e-6:
            v = v / nv
            k = int(np.argmax(np.abs(v)))
            v = v * np.exp(-1j * np.angle(v[k]))
            vs.append(v)
        if len(vs) == rank:
            break
    if len(vs) != rank:
        raise np.linalg.LinAlgError(f"projector does not have rank {rank}")
    return np.stack(vs, axis=1)
