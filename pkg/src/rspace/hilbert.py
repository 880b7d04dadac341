"""Tensor-product index arithmetic for heterogeneous local dimensions.

Basis convention is big-endian: the ket ``|b_0 b_1 ... b_{n-1}>`` has index
``sum_i b_i * prod_{j>i} dims[j]``, so particle 0 is the most significant
digit.  k-subsets are enumerated in lexicographic order of their sorted
particle lists.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, prod

import numpy as np

from . import kernels
from .errors import InvalidArgument

HERMITIAN_TOL = 1e-9


@dataclass(frozen=True)
class SystemShape:
    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise InvalidArgument("a system needs at least one particle")
        if any(d < 2 for d in dims):
            raise InvalidArgument(f"local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n(self):
        return len(self.dims)

    @property
    def total_dim(self):
        return prod(self.dims)

    def subset_dim(self, particles):
        return prod(self.dims[p] for p in particles)

    def complement(self, particles):
        return tuple(p for p in range(self.n) if p not in particles)

    def ket_index(self, digits):
        """Basis index of the product ket with the given local digits."""
        if len(digits) != self.n:
            raise InvalidArgument(f"expected {self.n} digits, got {len(digits)}")
        idx = 0
        for b, d in zip(digits, self.dims):
            if not 0 <= b < d:
                raise InvalidArgument(f"digit {b} out of range for local dim {d}")
            idx = idx * d + b
        return idx

    def ket_digits(self, index):
        digits = []
        for d in reversed(self.dims):
            index, b = divmod(index, d)
            digits.append(b)
        return tuple(reversed(digits))


@dataclass(frozen=True)
class SubsetIndex:
    particles: tuple
    rank: int

    def __len__(self):
        return len(self.particles)

    def __iter__(self):
        return iter(self.particles)


def enumerate_subsets(n, k):
    """All k-subsets of ``range(n)`` in lexicographic order.

    >>> [s.particles for s in enumerate_subsets(3, 2)]
    [(0, 1), (0, 2), (1, 2)]
    """
    return list(_subsets(int(n), int(k)))


@lru_cache(maxsize=None)
def _subsets(n, k):
    if not 1 <= k <= n:
        raise InvalidArgument(f"locality k={k} out of range for n={n}")
    return tuple(SubsetIndex(c, r) for r, c in enumerate(combinations(range(n), k)))


def subset_rank(n, particles):
    """Lexicographic rank of a sorted k-subset (inverse of enumeration)."""
    particles = tuple(particles)
    k = len(particles)
    if list(particles) != sorted(set(particles)) or not particles:
        raise InvalidArgument(f"subset must be strictly increasing, got {particles}")
    if particles[0] < 0 or particles[-1] >= n:
        raise InvalidArgument(f"subset {particles} out of range for n={n}")
    rank = 0
    prev = -1
    for i, p in enumerate(particles):
        for q in range(prev + 1, p):
            rank += comb(n - q - 1, k - i - 1)
        prev = p
    return rank


def make_subset(n, particles):
    particles = tuple(int(p) for p in particles)
    return SubsetIndex(particles, subset_rank(n, particles))


def _as_particles(subset):
    return tuple(subset.particles) if isinstance(subset, SubsetIndex) else tuple(subset)


def embed_permutation(shape, subset):
    """Index map ``M`` with ``M[i_sub, i_comp]`` = full-space basis index.

    ``i_sub`` and ``i_comp`` are big-endian indices over the subset and the
    complement particles (each in increasing particle order).  The returned
    array is read-only and shared between calls.
    """
    particles = _as_particles(subset)
    if (not particles or list(particles) != sorted(set(particles))
            or particles[0] < 0 or particles[-1] >= shape.n):
        raise InvalidArgument(f"invalid subset {particles} for {shape.n} particles")
    return _index_map(shape.dims, particles)


@lru_cache(maxsize=4096)
def _index_map(dims, particles):
    m = kernels.embed_index_map(dims, particles)
    m.setflags(write=False)
    return m


def split_index(shape, subset, full_index):
    """Inverse of :func:`embed_permutation` for a single index."""
    particles = _as_particles(subset)
    digits = shape.ket_digits(full_index)
    comp = shape.complement(particles)
    i_sub = 0
    for p in particles:
        i_sub = i_sub * shape.dims[p] + digits[p]
    i_comp = 0
    for p in comp:
        i_comp = i_comp * shape.dims[p] + digits[p]
    return i_sub, i_comp


def partial_trace(op, shape, keep, check_hermitian=True):
    """Reduced operator on the ``keep`` particles.

    Parameters
    ----------
    op : (D, D) array_like
        Operator on the full space, ``D = shape.total_dim``.
    shape : SystemShape
    keep : SubsetIndex or sequence of int
        Particles kept; all others are traced out.
    """
    op = np.asarray(op, dtype=np.complex128)
    d = shape.total_dim
    if op.shape != (d, d):
        raise InvalidArgument(f"operator shape {op.shape} does not match total_dim {d}")
    if check_hermitian:
        scale = max(1.0, float(np.abs(op).max(initial=0.0)))
        if np.abs(op - op.conj().T).max(initial=0.0) > HERMITIAN_TOL * scale:
            raise InvalidArgument("operator is not Hermitian")
    index_map = embed_permutation(shape, keep)
    return kernels.partial_trace(op, index_map)
