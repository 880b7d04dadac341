"""Reduced-space vectors: the map S -> (range of each k-particle marginal).

A :class:`ReducedSpaceVector` holds one subspace per k-subset, in
lexicographic subset order.  The set of all such vectors arising from
nonzero subspaces is closed under componentwise sum (the join) and ordered
by componentwise inclusion.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidArgument
from .hilbert import SystemShape, enumerate_subsets, embed_permutation
from .subspace import (
    Subspace,
    contains,
    equals,
    extended_complement_sum,
    sum_,
)


@dataclass(frozen=True, eq=False)
class ReducedSpaceVector:
    shape: SystemShape
    k: int
    components: tuple

    def __post_init__(self):
        subsets = enumerate_subsets(self.shape.n, self.k)
        comps = tuple(self.components)
        if len(comps) != len(subsets):
            raise InvalidArgument(
                f"expected {len(subsets)} components for n={self.shape.n}, k={self.k}, "
                f"got {len(comps)}")
        for sub, comp in zip(subsets, comps):
            want = self.shape.subset_dim(sub.particles)
            if comp.ambient_dim != want:
                raise InvalidArgument(
                    f"component on {sub.particles} has ambient_dim {comp.ambient_dim}, "
                    f"expected {want}")
        object.__setattr__(self, "components", comps)

    @property
    def subsets(self):
        return enumerate_subsets(self.shape.n, self.k)

    @property
    def ranks(self):
        return tuple(c.rank for c in self.components)

    @property
    def tol(self):
        return max(c.tol for c in self.components)

    def is_nonzero(self):
        return all(c.rank >= 1 for c in self.components)

    def __iter__(self):
        return iter(zip(self.subsets, self.components))

    def __repr__(self):
        return f"ReducedSpaceVector(dims={self.shape.dims}, k={self.k}, ranks={self.ranks})"


def _require_nonzero(v, what="vector"):
    if not v.is_nonzero():
        raise InvalidArgument(f"{what} has a zero component; reduced-space vectors "
                              "must have rank >= 1 in every component")


def _check_compatible(a, b):
    if a.shape != b.shape or a.k != b.k:
        raise InvalidArgument(
            f"incompatible vectors: dims {a.shape.dims}/k={a.k} vs {b.shape.dims}/k={b.k}")


def reduced_component(s, shape, subset):
    """Range of the marginal of ``s``'s maximally mixed state on ``subset``.

    The marginal of ``P_s / r`` is ``X X^dagger / r`` where ``X`` collects the
    partial overlaps of every basis vector with every complement ket, so its
    range is the column span of ``X``.
    """
    index_map = embed_permutation(shape, subset)
    return Subspace.from_columns(kernels.gather_reduced(s.basis, index_map), s.tol)


def reduce(s, shape, k):
    """k-particle reduced spaces of a nonzero subspace ``s`` of the full system."""
    if isinstance(shape, (tuple, list)):
        shape = SystemShape(shape)
    if s.ambient_dim != shape.total_dim:
        raise InvalidArgument(
            f"subspace ambient_dim {s.ambient_dim} does not match total_dim {shape.total_dim}")
    if s.rank < 1:
        raise InvalidArgument("cannot reduce the zero subspace")
    comps = tuple(reduced_component(s, shape, sub) for sub in enumerate_subsets(shape.n, k))
    return ReducedSpaceVector(shape, k, comps)


def reduce_state(psi, shape, k, tol=None):
    """Reduced spaces of the one-dimensional span of ``psi``."""
    kw = {} if tol is None else {"tol": tol}
    return reduce(Subspace.from_spanning_vectors([psi], **kw), shape, k)


def mpi(v):
    """Maximal pre-image: intersection over j of ``eta_j (x) iota_jbar``.

    May be the zero subspace, in which case ``v`` is not a reduced-space
    vector of anything.
    """
    _require_nonzero(v)
    return extended_complement_sum(v.shape, list(v), v.tol)


def join(a, b):
    """Componentwise subspace sum."""
    _check_compatible(a, b)
    return ReducedSpaceVector(a.shape, a.k,
                              tuple(sum_(x, y) for x, y in zip(a.components, b.components)))


def join_all(vectors):
    vectors = list(vectors)
    if not vectors:
        raise InvalidArgument("empty join")
    out = vectors[0]
    for v in vectors[1:]:
        out = join(out, v)
    return out


def leq(a, b):
    """Componentwise inclusion ``a <= b``."""
    _check_compatible(a, b)
    return all(contains(y, x) for x, y in zip(a.components, b.components))


def eq(a, b):
    _check_compatible(a, b)
    return all(equals(x, y) for x, y in zip(a.components, b.components))


def lt(a, b):
    """Strict order: ``a <= b`` and some component strictly smaller."""
    # under inclusion, equality of a component reduces to equal rank
    return leq(a, b) and any(x.rank < y.rank for x, y in zip(a.components, b.components))


def member_theta(v):
    """Whether ``v`` is the reduced-space vector of some nonzero subspace.

    The maximal pre-image is the only candidate that needs checking.
    """
    _require_nonzero(v)
    s = mpi(v)
    if s.rank < 1:
        return False
    return eq(reduce(s, v.shape, v.k), v)


def from_components(shape, k, vectors_by_subset, tol=None):
    """Build a vector from ``{subset_tuple: [spanning vectors]}``."""
    if isinstance(shape, (tuple, list)):
        shape = SystemShape(shape)
    kw = {} if tol is None else {"tol": tol}
    comps = []
    for sub in enumerate_subsets(shape.n, k):
        if sub.particles not in vectors_by_subset:
            raise InvalidArgument(f"missing component for subset {sub.particles}")
        comps.append(Subspace.from_spanning_vectors(vectors_by_subset[sub.particles], **kw))
    return ReducedSpaceVector(shape, k, tuple(comps))


def projector_distance(a, b):
    """Largest per-component projector Frobenius distance."""
    _check_compatible(a, b)
    return max(float(np.linalg.norm(x.projector() - y.projector()))
               for x, y in zip(a.components, b.components))
