"""Subspaces of finite-dimensional complex spaces.

A :class:`Subspace` stores an orthonormal basis (columns) together with the
relative tolerance used for every rank decision that produced it.  All rank
decisions go through singular-value thresholding relative to the largest
singular value; intersections go through the null space of a sum of
complement projectors.
"""
import numpy as np

from .errors import InvalidArgument
from .hilbert import SystemShape, embed_permutation
from . import kernels

DEFAULT_TOL = 1e-10
# inclusion/equality are looser than rank decisions so chained operations
# do not produce spurious strict inequalities
INCLUSION_TOL = 1e-8
EQUALITY_TOL = 1e-8


class Subspace:
    """Column span of an orthonormal ``(ambient_dim, rank)`` basis."""

    __slots__ = ("basis", "tol")

    def __init__(self, basis, tol=DEFAULT_TOL):
        basis = np.asarray(basis, dtype=np.complex128)
        if basis.ndim != 2:
            raise InvalidArgument("basis must be a 2-d array of column vectors")
        basis.setflags(write=False)
        self.basis = basis
        self.tol = float(tol)

    # construction -----------------------------------------------------

    @classmethod
    def from_spanning_vectors(cls, vectors, tol=DEFAULT_TOL):
        """Span of a list of ambient vectors (rows of ``vectors``)."""
        vecs = [np.asarray(v, dtype=np.complex128).ravel() for v in vectors]
        if not vecs:
            raise InvalidArgument("cannot build a subspace from an empty vector list")
        dim = vecs[0].size
        if dim < 1 or any(v.size != dim for v in vecs):
            raise InvalidArgument("spanning vectors must share a nonzero length")
        return cls.from_columns(np.stack(vecs, axis=1), tol)

    @classmethod
    def from_columns(cls, mat, tol=DEFAULT_TOL):
        """Span of the columns of ``mat`` with relative rank threshold ``tol``."""
        mat = np.asarray(mat, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] < 1:
            raise InvalidArgument("expected a 2-d matrix with at least one row")
        return cls(orth(mat, tol), tol)

    @classmethod
    def zero(cls, dim, tol=DEFAULT_TOL):
        return cls(np.zeros((dim, 0), dtype=np.complex128), tol)

    @classmethod
    def full(cls, dim, tol=DEFAULT_TOL):
        return cls(np.eye(dim, dtype=np.complex128), tol)

    @classmethod
    def from_projector(cls, proj, tol=DEFAULT_TOL):
        w, v = np.linalg.eigh(np.asarray(proj, dtype=np.complex128))
        return cls(v[:, w > 0.5], tol)

    # properties -------------------------------------------------------

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    @property
    def rank(self):
        return self.basis.shape[1]

    @property
    def is_zero(self):
        return self.rank == 0

    def projector(self):
        return self.basis @ self.basis.conj().T

    def complement_projector(self):
        return np.eye(self.ambient_dim) - self.projector()

    def residual(self, vectors):
        """Spectral norm of the part of ``vectors`` (columns) outside this space."""
        vectors = np.asarray(vectors, dtype=np.complex128)
        if vectors.ndim == 1:
            vectors = vectors[:, None]
        if vectors.shape[1] == 0:
            return 0.0
        rest = vectors - self.basis @ (self.basis.conj().T @ vectors)
        return float(np.linalg.norm(rest, 2))

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, rank={self.rank})"


def orth(mat, tol=DEFAULT_TOL):
    """Orthonormal basis for the column span, relative SVD threshold ``tol``."""
    mat = np.asarray(mat, dtype=np.complex128)
    if mat.shape[1] == 0:
        return np.zeros((mat.shape[0], 0), dtype=np.complex128)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((mat.shape[0], 0), dtype=np.complex128)
    r = int(np.count_nonzero(s > tol * s[0]))
    return np.ascontiguousarray(u[:, :r])


def _check_pair(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise InvalidArgument(
            f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    return max(a.tol, b.tol)


def sum_(a, b):
    """Subspace sum ``a + b``."""
    tol = _check_pair(a, b)
    if a.rank == 0:
        return Subspace(b.basis, tol)
    if b.rank == 0:
        return Subspace(a.basis, tol)
    return Subspace.from_columns(np.hstack([a.basis, b.basis]), tol)


def span_sum(spaces):
    spaces = list(spaces)
    if not spaces:
        raise InvalidArgument("empty sum")
    out = spaces[0]
    for s in spaces[1:]:
        out = sum_(out, s)
    return out


def intersect_all(spaces, tol=None):
    """Common intersection of several subspaces of one ambient space.

    Null space of ``sum_i (I - P_i)``: a vector lies in every space iff it
    is annihilated by every complement projector.
    """
    spaces = list(spaces)
    if not spaces:
        raise InvalidArgument("empty intersection")
    dim = spaces[0].ambient_dim
    for s in spaces[1:]:
        _check_pair(spaces[0], s)
    if tol is None:
        tol = max(s.tol for s in spaces)
    acc = np.zeros((dim, dim), dtype=np.complex128)
    for s in spaces:
        acc += s.complement_projector()
    return Subspace(null_space_psd(acc, tol), tol)


def null_space_psd(mat, tol):
    """Eigenvectors of a Hermitian PSD matrix with eigenvalue below ``tol``."""
    w, v = np.linalg.eigh(mat)
    return np.ascontiguousarray(v[:, w < tol])


def intersect(a, b):
    """Subspace intersection ``a ∩ b``."""
    tol = _check_pair(a, b)
    return intersect_all([a, b], tol)


def contains(a, b):
    """True iff ``b`` is a subspace of ``a``."""
    _check_pair(a, b)
    return a.residual(b.basis) < INCLUSION_TOL


def equals(a, b):
    _check_pair(a, b)
    if a.rank != b.rank:
        # projector distance is at least 1 when ranks differ
        return False
    return float(np.linalg.norm(a.projector() - b.projector())) < EQUALITY_TOL


def complement(a):
    """Orthogonal complement within the ambient space."""
    if a.rank == 0:
        return Subspace.full(a.ambient_dim, a.tol)
    u, _, _ = np.linalg.svd(a.basis, full_matrices=True)
    return Subspace(np.ascontiguousarray(u[:, a.rank:]), a.tol)


def tensor_extend(s, shape, subset):
    """``s (x) (full space of the complement particles)`` on the full system."""
    index_map = embed_permutation(shape, subset)
    d_s, d_c = index_map.shape
    if s.ambient_dim != d_s:
        raise InvalidArgument(
            f"subspace ambient_dim {s.ambient_dim} does not match subset dimension {d_s}")
    out = np.zeros((shape.total_dim, s.rank * d_c), dtype=np.complex128)
    for c in range(d_c):
        out[index_map[:, c], c * s.rank:(c + 1) * s.rank] = s.basis
    return Subspace(out, s.tol)


def tensor_product(shape, subset, s_sub, s_comp):
    """``s_sub (x) s_comp`` with ``s_sub`` on ``subset`` and ``s_comp`` on the rest."""
    index_map = embed_permutation(shape, subset)
    d_s, d_c = index_map.shape
    if s_sub.ambient_dim != d_s or s_comp.ambient_dim != d_c:
        raise InvalidArgument("factor dimensions do not match the subset split")
    r1, r2 = s_sub.rank, s_comp.rank
    kron = np.einsum("ai,cj->acij", s_sub.basis, s_comp.basis).reshape(d_s * d_c, r1 * r2)
    out = np.zeros((shape.total_dim, r1 * r2), dtype=np.complex128)
    out[index_map.reshape(-1)] = kron
    return Subspace(out, max(s_sub.tol, s_comp.tol))


def extended_complement_sum(shape, parts, tol):
    """Intersection of ``eta_j (x) iota`` over ``parts = [(subset, eta_j), ...]``.

    Accumulates the extended complement projectors through the index-map
    kernel instead of materialising each extended basis.
    """
    d = shape.total_dim
    acc = np.zeros((d, d), dtype=np.complex128)
    for subset, eta in parts:
        index_map = embed_permutation(shape, subset)
        if eta.ambient_dim != index_map.shape[0]:
            raise InvalidArgument("component dimension does not match its subset")
        kernels.accumulate_extended(acc, eta.complement_projector(), index_map)
    return Subspace(null_space_psd(acc, tol), tol)


def random_subspace(dim, rank, rng, tol=DEFAULT_TOL):
    """Haar-random subspace of the given rank."""
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    return Subspace.from_columns(g, tol)


def random_state_in(s, rng):
    """Haar-random unit vector inside ``s``."""
    c = rng.standard_normal(s.rank) + 1j * rng.standard_normal(s.rank)
    v = s.basis @ c
    return v / np.linalg.norm(v)


__all__ = [
    "DEFAULT_TOL",
    "INCLUSION_TOL",
    "EQUALITY_TOL",
    "Subspace",
    "SystemShape",
    "orth",
    "sum_",
    "span_sum",
    "intersect",
    "intersect_all",
    "contains",
    "equals",
    "complement",
    "tensor_extend",
    "tensor_product",
    "extended_complement_sum",
    "random_subspace",
    "random_state_in",
]
