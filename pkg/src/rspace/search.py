"""Candidate generation for witness searches.

Everything here is deterministic for a fixed seed: candidates are produced
in a fixed family order (computational basis, MPI basis, product states,
random states) and random draws come from a single ``numpy`` Generator.
"""
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .hilbert import SystemShape, embed_permutation
from .subspace import INCLUSION_TOL, Subspace, random_state_in

FAMILIES = ("basis", "mpi_basis", "product")


@dataclass(frozen=True)
class SearchBudget:
    """How hard a witness search tries.

    ``structured`` lists the enabled deterministic-ish candidate families:
    ``"basis"`` (computational-basis kets inside the space), ``"mpi_basis"``
    (the stored orthonormal basis and pairwise spans of it) and
    ``"product"`` (product states found by alternating local search).
    """

    random_samples: int = 200
    structured: tuple = FAMILIES
    seed: int = 0
    product_starts: int = 6

    def __post_init__(self):
        if self.random_samples < 0 or self.product_starts < 0:
            raise ValueError("budget counts must be >= 0")
        unknown = set(self.structured) - set(FAMILIES)
        if unknown:
            raise ValueError(f"unknown candidate families: {sorted(unknown)}")
        object.__setattr__(self, "structured", tuple(self.structured))

    def rng(self):
        return np.random.default_rng(self.seed)


@dataclass
class Candidate:
    family: str
    space: Subspace
    meta: dict = field(default_factory=dict)


# -- product states -----------------------------------------------------

def product_vector(shape, blocks, vecs, particles=None):
    """Full vector of a product of block states.

    ``blocks`` are tuples of particle indices; ``vecs[i]`` is a big-endian
    vector on ``blocks[i]``.  The result is expressed on ``particles``
    (default: all particles) in increasing particle order.
    """
    if particles is None:
        particles = tuple(range(shape.n))
    t = np.ones((), dtype=np.complex128)
    axes = []
    for b, v in zip(blocks, vecs):
        t = np.multiply.outer(t, np.asarray(v).reshape([shape.dims[p] for p in b]))
        axes.extend(b)
    perm = np.argsort(axes)
    assert sorted(axes) == sorted(particles)
    return t.transpose(perm).reshape(-1) if axes else t.reshape(1)


def _rest_vector(shape, blocks, vecs, skip):
    others = [(b, v) for i, (b, v) in enumerate(zip(blocks, vecs)) if i != skip]
    comp = shape.complement(blocks[skip])
    if not others:
        return np.ones(1, dtype=np.complex128)
    return product_vector(shape, [b for b, _ in others], [v for _, v in others], comp)


def alternating_minimize(shape, blocks, effective, rng, starts=4, sweeps=200, target=None):
    """Minimise a block-product energy by exact single-block updates.

    ``effective(block_index, index_map, rest)`` returns the Hermitian
    effective operator on that block given the complement product vector.
    Returns ``(energy, vecs)`` of the best start.
    """
    best = (np.inf, None)
    for _ in range(max(1, starts)):
        vecs = []
        for b in blocks:
            d = shape.subset_dim(b)
            v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            vecs.append(v / np.linalg.norm(v))
        energy = np.inf
        for _ in range(sweeps):
            prev = energy
            for i, b in enumerate(blocks):
                rest = _rest_vector(shape, blocks, vecs, i)
                h = effective(i, embed_permutation(shape, b), rest)
                w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
                vecs[i] = v[:, 0]
                energy = float(w[0])
            if abs(prev - energy) < 1e-15 or (target is not None and energy < target):
                break
        if energy < best[0]:
            best = (energy, [v.copy() for v in vecs])
        if target is not None and best[0] < target:
            break
    return best


def max_product_overlap(space, shape, rng, starts=4):
    """Product state maximising ``<phi|P|phi>`` for the projector onto ``space``.

    Returns ``(overlap, vector)``.
    """
    basis = space.basis
    blocks = [(p,) for p in range(shape.n)]

    def effective(i, index_map, rest):
        a = basis[index_map, :]                      # (d_b, d_rest, r)
        amp = np.einsum("acr,c->ar", a, rest.conj())
        return -(amp @ amp.conj().T)

    energy, vecs = alternating_minimize(shape, blocks, effective, rng, starts=starts,
                                        target=-1 + 1e-14)
    return -energy, product_vector(shape, blocks, vecs)


# -- candidate families --------------------------------------------------

def basis_kets_in(space):
    """Computational-basis kets contained in ``space`` (index order)."""
    proj_diag = np.einsum("ir,ir->i", space.basis, space.basis.conj()).real
    # residual^2 = 1 - <e_i|P|e_i>; loose prefilter, exact check below
    hits = np.nonzero(1.0 - proj_diag < 1e-12)[0]
    out = []
    for i in hits:
        e = np.zeros(space.ambient_dim, dtype=np.complex128)
        e[i] = 1.0
        if space.residual(e) < INCLUSION_TOL:
            out.append((int(i), e))
    return out


def product_states_in(space, shape, rng, starts):
    """Product states lying in ``space`` found by local search (deduplicated)."""
    found = []
    for _ in range(starts):
        overlap, phi = max_product_overlap(space, shape, rng, starts=1)
        if 1.0 - overlap > 1e-10:
            continue
        phi = space.basis @ (space.basis.conj().T @ phi)
        phi /= np.linalg.norm(phi)
        if all(abs(abs(np.vdot(f, phi)) - 1) > 1e-8 for f in found):
            found.append(phi)
    return found


def structured_states(space, shape, budget, rng):
    """Deterministic states inside ``space`` from the enabled families."""
    out = []
    if "basis" in budget.structured:
        out += [("basis", e, {"ket": int(i)}) for i, e in basis_kets_in(space)]
    if "mpi_basis" in budget.structured:
        out += [("mpi_basis", space.basis[:, j].copy(), {"column": j})
                for j in range(space.rank)]
    if "product" in budget.structured and budget.product_starts > 0:
        out += [("product", phi, {}) for phi in
                product_states_in(space, shape, rng, budget.product_starts)]
    return out


def state_candidates(space, shape, budget, rng):
    """Rank-1 candidate subspaces of ``space``: structured then random."""
    tol = space.tol
    for family, vec, meta in structured_states(space, shape, budget, rng):
        yield Candidate(family, Subspace.from_spanning_vectors([vec], tol), meta)
    for i in range(budget.random_samples):
        vec = random_state_in(space, rng)
        yield Candidate("random", Subspace.from_spanning_vectors([vec], tol), {"sample": i})


def subspace_candidates(space, shape, budget, rng):
    """Proper nonzero subspaces of ``space`` (rank < rank(space)).

    Structured single states, pairwise spans of structured states, then
    random subspaces whose rank is drawn uniformly from ``1..rank-1``.
    """
    r = space.rank
    tol = space.tol
    if r < 2:
        return
    structured = structured_states(space, shape, budget, rng)
    for family, vec, meta in structured:
        yield Candidate(family, Subspace.from_spanning_vectors([vec], tol), meta)
    if r > 2:
        for (f1, v1, _), (f2, v2, _) in combinations(structured, 2):
            s = Subspace.from_spanning_vectors([v1, v2], tol)
            if 1 <= s.rank < r:
                yield Candidate(f"{f1}+{f2}", s, {})
    for i in range(budget.random_samples):
        rank = int(rng.integers(1, r))
        vecs = [random_state_in(space, rng) for _ in range(rank)]
        yield Candidate("random", Subspace.from_spanning_vectors(vecs, tol), {"sample": i})


__all__ = [
    "SearchBudget",
    "Candidate",
    "SystemShape",
    "product_vector",
    "alternating_minimize",
    "max_product_overlap",
    "basis_kets_in",
    "product_states_in",
    "structured_states",
    "state_candidates",
    "subspace_candidates",
]
