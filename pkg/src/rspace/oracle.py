"""Brute-force reference implementations.

Nothing here goes through the index-map kernels or the projector-sum
intersection used by the main path; the point is to cross-check them.
Speed is not a goal.
"""
from math import prod

import numpy as np

from .errors import InvalidArgument, Unsupported
from .hilbert import SystemShape, enumerate_subsets
from .reduced import ReducedSpaceVector
from .subspace import DEFAULT_TOL, Subspace

BRUTE_MAX_DIM = 4096


def rdm_by_reshape(rho, dims, keep):
    """Partial trace via tensor reshaping and ``einsum``."""
    n = len(dims)
    keep = tuple(keep)
    t = np.asarray(rho, dtype=np.complex128).reshape(tuple(dims) * 2)
    letters = "abcdefghijklmnopqrstuvwxyz"
    ket = list(letters[:n])
    bra = list(letters[n:2 * n].upper())
    for p in range(n):
        if p not in keep:
            bra[p] = ket[p]
    out = "".join(ket[p] for p in keep) + "".join(bra[p] for p in keep)
    r = np.einsum("".join(ket) + "".join(bra) + "->" + out, t)
    d = prod(dims[p] for p in keep)
    return r.reshape(d, d)


def range_by_eigh(mat, rel_tol=1e-9):
    w, v = np.linalg.eigh(0.5 * (mat + mat.conj().T))
    top = max(float(w.max()), 0.0)
    if top == 0.0:
        return v[:, :0]
    return v[:, w > rel_tol * top]


def sample_density(s, rng, mixed):
    """A density matrix with range inside ``s``.

    Pure: a Haar-random state of ``s``.  Mixed: a random rank in
    ``1..rank(s)`` with Dirichlet-distributed weights on Haar-random
    orthonormal states of ``s``.
    """
    r = s.rank
    if not mixed:
        c = rng.standard_normal(r) + 1j * rng.standard_normal(r)
        psi = s.basis @ (c / np.linalg.norm(c))
        return np.outer(psi, psi.conj())
    m = int(rng.integers(1, r + 1))
    g = rng.standard_normal((r, m)) + 1j * rng.standard_normal((r, m))
    q, _ = np.linalg.qr(g)
    states = s.basis @ q
    p = rng.dirichlet(np.ones(m))
    return (states * p) @ states.conj().T


def sample_rs(s, shape, k, n_samples, seed):
    """Reduced spaces of ``s`` by summing marginal ranges of sampled states.

    Samples alternate pure/mixed, each drawn from its own child seed.
    """
    if isinstance(shape, (tuple, list)):
        shape = SystemShape(shape)
    if s.rank < 1:
        raise InvalidArgument("cannot sample from the zero subspace")
    if n_samples < 1:
        raise InvalidArgument("need at least one sample")
    subsets = enumerate_subsets(shape.n, k)
    acc = [np.zeros((shape.subset_dim(sub.particles), 0), dtype=np.complex128)
           for sub in subsets]
    children = np.random.SeedSequence(seed).spawn(n_samples)
    for i, child in enumerate(children):
        rho = sample_density(s, np.random.default_rng(child), mixed=bool(i % 2))
        for j, sub in enumerate(subsets):
            gamma = rdm_by_reshape(rho, shape.dims, sub.particles)
            acc[j] = _orth_svd(np.hstack([acc[j], range_by_eigh(gamma)]))
    return ReducedSpaceVector(shape, k, tuple(Subspace(a, s.tol) for a in acc))


def _orth_svd(mat, rel_tol=1e-9):
    if mat.shape[1] == 0:
        return mat
    u, sv, _ = np.linalg.svd(mat, full_matrices=False)
    return u[:, sv > rel_tol * sv[0]]


def embed_operator(op, dims, particles):
    """``op (x) I`` on the full space by an explicit basis permutation."""
    n = len(dims)
    particles = tuple(particles)
    rest = tuple(p for p in range(n) if p not in particles)
    big = np.kron(np.asarray(op, dtype=np.complex128),
                  np.eye(prod(dims[p] for p in rest), dtype=np.complex128))
    # row r of `big` is the ket with digits (particles..., rest...)
    order = particles + rest
    total = prod(dims)
    perm = np.empty(total, dtype=np.int64)
    for r in range(total):
        digits = np.unravel_index(r, [dims[p] for p in order])
        full = [0] * n
        for p, dgt in zip(order, digits):
            full[p] = int(dgt)
        perm[r] = np.ravel_multi_index(full, dims)
    out = np.zeros((total, total), dtype=np.complex128)
    out[np.ix_(perm, perm)] = big
    return out


def brute_ground(shape, terms, degeneracy=1e-9, tol=DEFAULT_TOL):
    """Exact ground energy and ground eigenspace of ``sum_j H_j (x) I``."""
    if isinstance(shape, (tuple, list)):
        shape = SystemShape(shape)
    d = shape.total_dim
    if d > BRUTE_MAX_DIM:
        raise Unsupported(f"brute force capped at dimension {BRUTE_MAX_DIM}, got {d}")
    total = np.zeros((d, d), dtype=np.complex128)
    for particles, op in terms:
        total += embed_operator(op, shape.dims, particles)
    w, v = np.linalg.eigh(total)
    return float(w[0]), Subspace(np.ascontiguousarray(v[:, w - w[0] < degeneracy]), tol)


def term_minima(terms):
    return sum(float(np.linalg.eigvalsh(np.asarray(op, dtype=np.complex128))[0])
               for _, op in terms)


def brute_frustration_free(shape, terms, tol=1e-8):
    """Energy criterion: ground energy equals the sum of the term minima."""
    e0, _ = brute_ground(shape, terms)
    return abs(e0 - term_minima(terms)) < tol


def naive_intersect(a, b, sv_tol=1e-7):
    """Intersection via the null space of ``[A, -B]``."""
    if a.ambient_dim != b.ambient_dim:
        raise InvalidArgument("ambient dimension mismatch")
    tol = max(a.tol, b.tol)
    if a.rank == 0 or b.rank == 0:
        return Subspace.zero(a.ambient_dim, tol)
    stacked = np.hstack([a.basis, -b.basis])
    _, sv, vh = np.linalg.svd(stacked, full_matrices=True)
    sv_full = np.zeros(stacked.shape[1])
    sv_full[:sv.size] = sv
    null = vh.conj().T[:, sv_full < sv_tol]
    vecs = a.basis @ null[:a.rank, :]
    return Subspace(_orth_svd(vecs, 1e-6) if vecs.shape[1] else vecs, tol)
