"""k-local frustration-free Hamiltonians in projector form.

A :class:`LocalHamiltonian` is stored by the kernels of its projector
terms, one per k-subset.  Its ground space is the intersection of the
tensor-extended kernels, so it is the dual picture of a reduced-space
vector: ``from_rsv(v)`` has ground space ``mpi(v)``.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidArgument, MeetUndefined, Unsupported
from .hilbert import SystemShape, embed_permutation, enumerate_subsets, HERMITIAN_TOL
from .reduced import ReducedSpaceVector, mpi, reduce
from .search import (
    SearchBudget,
    alternating_minimize,
    product_vector,
    state_candidates,
    subspace_candidates,
)
from .semilattice import (
    CERTIFIED_YES,
    NO,
    RULE_RANK_ONE,
    UNKNOWN,
    AnalysisVerdict,
)
from .subspace import (
    DEFAULT_TOL,
    Subspace,
    equals,
    extended_complement_sum,
    intersect,
    sum_,
    tensor_extend,
)

GROUND_TOL = 1e-9
ZERO_ENERGY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class LocalHamiltonian:
    """Projector-form k-local Hamiltonian ``sum_j (I - P(kernel_j)) (x) I``."""

    shape: SystemShape
    k: int
    kernels: tuple

    def __post_init__(self):
        subsets = enumerate_subsets(self.shape.n, self.k)
        kers = tuple(self.kernels)
        if len(kers) != len(subsets):
            raise InvalidArgument(f"expected {len(subsets)} kernels, got {len(kers)}")
        for sub, ker in zip(subsets, kers):
            if ker.ambient_dim != self.shape.subset_dim(sub.particles):
                raise InvalidArgument(f"kernel on {sub.particles} has wrong ambient_dim")
            if ker.rank < 1:
                raise InvalidArgument(
                    f"kernel on {sub.particles} is zero: the term has no ground states")
        object.__setattr__(self, "kernels", kers)

    @property
    def subsets(self):
        return enumerate_subsets(self.shape.n, self.k)

    @property
    def tol(self):
        return max(ker.tol for ker in self.kernels)

    def projectors(self):
        return [ker.complement_projector() for ker in self.kernels]

    def terms(self):
        """``[(subset, projector)]`` for every nontrivial term."""
        return [(sub.particles, ker.complement_projector())
                for sub, ker in zip(self.subsets, self.kernels)
                if ker.rank < ker.ambient_dim]

    def matrix(self):
        """Dense ``sum_j Pi_j (x) I`` on the full space."""
        d = self.shape.total_dim
        acc = np.zeros((d, d), dtype=np.complex128)
        for sub, proj in self.terms():
            kernels.accumulate_extended(acc, proj, embed_permutation(self.shape, sub))
        return acc

    def energy(self, psi):
        psi = np.asarray(psi, dtype=np.complex128)
        total = sum(_term_energy(psi, ker, embed_permutation(self.shape, sub))
                    for sub, ker in zip(self.subsets, self.kernels))
        return float(total) / float(np.vdot(psi, psi).real)

    def __repr__(self):
        ranks = tuple(ker.rank for ker in self.kernels)
        return f"LocalHamiltonian(dims={self.shape.dims}, k={self.k}, kernel_ranks={ranks})"


def _term_energy(psi, ker, index_map):
    # <psi| (I - P) (x) I |psi> = ||X||_F^2 - ||P X||_F^2 with X the partial overlaps
    x = kernels.gather_reduced(psi[:, None], index_map)
    px = ker.basis.conj().T @ x
    return float(np.vdot(x, x).real - np.vdot(px, px).real)


def from_rsv(v):
    """The dual Hamiltonian ``v^perp``: kernels are the components of ``v``."""
    if not isinstance(v, ReducedSpaceVector):
        raise InvalidArgument("expected a ReducedSpaceVector")
    return LocalHamiltonian(v.shape, v.k, v.components)


def to_rsv(h):
    """Kernel vector of ``h`` viewed as a reduced-space vector (may lie outside the set)."""
    return ReducedSpaceVector(h.shape, h.k, h.kernels)


def ground_space(h):
    """Intersection of the tensor-extended kernels (possibly zero)."""
    return extended_complement_sum(h.shape, list(zip(h.subsets, h.kernels)), h.tol)


def ground_eigenspace(matrix, tol=DEFAULT_TOL, degeneracy=GROUND_TOL):
    """Eigenspace of eigenvalues within ``degeneracy`` of the minimum."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgument("term matrix must be square")
    if np.abs(m - m.conj().T).max(initial=0.0) > HERMITIAN_TOL:
        raise InvalidArgument("term matrix is not Hermitian")
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return float(w[0]), Subspace(np.ascontiguousarray(v[:, w - w[0] < degeneracy]), tol)


def canonical_superset(n, particles, k):
    """Lexicographically first k-subset containing ``particles``."""
    particles = tuple(particles)
    fill = [p for p in range(n) if p not in particles][:k - len(particles)]
    return tuple(sorted(particles + tuple(fill)))


def _check_term_subset(shape, particles, k):
    if (not particles or list(particles) != sorted(set(particles))
            or particles[0] < 0 or particles[-1] >= shape.n):
        raise InvalidArgument(f"invalid term subset {particles}")
    if len(particles) > k:
        raise InvalidArgument(f"term on {particles} exceeds locality k={k}")


@dataclass
class FFResult:
    frustration_free: bool
    hamiltonian: LocalHamiltonian
    ground_space: Subspace


def assemble_kernels(shape, k, parts, tol=DEFAULT_TOL):
    """Per-subset kernels from ``[(particles, kernel Subspace)]``.

    A kernel on fewer than k particles is lifted to its canonical k-superset;
    several kernels on one subset are intersected; subsets without any part
    get the full space.  Entries may come out as the zero space.
    """
    subsets = enumerate_subsets(shape.n, k)
    pos = {s.particles: s.rank for s in subsets}
    kers = [Subspace.full(shape.subset_dim(s.particles), tol) for s in subsets]
    for particles, ker in parts:
        particles = tuple(int(p) for p in particles)
        _check_term_subset(shape, particles, k)
        if ker.ambient_dim != shape.subset_dim(particles):
            raise InvalidArgument(f"kernel on {particles} has wrong dimension")
        sup = canonical_superset(shape.n, particles, k)
        if sup != particles:
            local = SystemShape(tuple(shape.dims[p] for p in sup))
            ker = tensor_extend(ker, local, tuple(sup.index(p) for p in particles))
        j = pos[sup]
        kers[j] = intersect(kers[j], ker)
    return kers


def kernels_from_terms(shape, terms, k, tol=DEFAULT_TOL):
    """Per-subset kernels of ``[(particles, Hermitian matrix)]`` terms."""
    parts = []
    for particles, mat in terms:
        particles = tuple(int(p) for p in particles)
        _check_term_subset(shape, particles, k)
        d = shape.subset_dim(particles)
        mat = np.asarray(mat, dtype=np.complex128)
        if mat.shape != (d, d):
            raise InvalidArgument(f"term on {particles} must be {d}x{d}, got {mat.shape}")
        parts.append((particles, ground_eigenspace(mat, tol)[1]))
    return assemble_kernels(shape, k, parts, tol)


def is_frustration_free(shape, terms, k=None, tol=DEFAULT_TOL):
    """Whether the terms share a common ground state.

    Each term is replaced by the projector onto the complement of its
    ground eigenspace; the Hamiltonian is frustration-free iff the common
    kernel is nonzero.
    """
    if isinstance(shape, (tuple, list)):
        shape = SystemShape(shape)
    terms = list(terms)
    if k is None:
        k = max((len(t[0]) for t in terms), default=1)
    kers = kernels_from_terms(shape, terms, k, tol)
    if any(ker.rank == 0 for ker in kers):
        return FFResult(False, None, Subspace.zero(shape.total_dim, tol))
    h = LocalHamiltonian(shape, k, tuple(kers))
    gs = ground_space(h)
    return FFResult(gs.rank >= 1, h, gs)


def meet(h1, h2):
    """Componentwise kernel intersection; undefined if any part is zero."""
    if h1.shape != h2.shape or h1.k != h2.k:
        raise InvalidArgument("meet needs Hamiltonians on the same system and locality")
    kers = []
    for sub, a, b in zip(h1.subsets, h1.kernels, h2.kernels):
        c = intersect(a, b)
        if c.rank == 0:
            raise MeetUndefined(f"kernels on {sub.particles} intersect trivially")
        kers.append(c)
    return LocalHamiltonian(h1.shape, h1.k, tuple(kers))


def is_ground_space(s, shape, k):
    """Fixpoint test: ``s`` equals the maximal pre-image of its own image."""
    if s.rank < 1:
        return False
    return equals(mpi(reduce(s, shape, k)), s)


def ground_closure(s, shape, k):
    """Smallest ground space of a k-local FF Hamiltonian containing ``s``."""
    return mpi(reduce(s, shape, k))


def _require_ground_space(s, shape, k):
    if s.ambient_dim != shape.total_dim:
        raise InvalidArgument("subspace does not live on this system")
    if not is_ground_space(s, shape, k):
        raise InvalidArgument("subspace is not the ground space of a k-local FF Hamiltonian")


def is_minimal_ground_space(s, shape, k, budget=SearchBudget()):
    """Minimality of a ground space among k-local FF ground spaces.

    Any proper ground space inside ``s`` is the closure of each of its
    states, so the search takes closures of candidate states.
    """
    _require_ground_space(s, shape, k)
    if s.rank == 1:
        return AnalysisVerdict(CERTIFIED_YES, RULE_RANK_ONE, seed=budget.seed)
    rng = budget.rng()
    used = 0
    for cand in state_candidates(s, shape, budget, rng):
        used += 1
        sub = ground_closure(cand.space, shape, k)
        if sub.rank < s.rank and is_ground_space(sub, shape, k):
            return AnalysisVerdict(NO, "proper-ground-subspace", sub, used, budget.seed,
                                   {"family": cand.family})
    return AnalysisVerdict(UNKNOWN, None, None, used, budget.seed)


def is_irreducible_ground_space(s, shape, k, budget=SearchBudget()):
    """Whether ``s`` is a sum of two proper ground subspaces (``No``) or not found."""
    _require_ground_space(s, shape, k)
    if s.rank == 1:
        return AnalysisVerdict(CERTIFIED_YES, RULE_RANK_ONE, seed=budget.seed)
    rng = budget.rng()
    pool = []
    used = 0
    for cand in subspace_candidates(s, shape, budget, rng):
        used += 1
        sub = ground_closure(cand.space, shape, k)
        if sub.rank >= s.rank or any(equals(sub, p) for p in pool):
            continue
        for p in pool:
            if p.rank + sub.rank >= s.rank and equals(sum_(p, sub), s):
                return AnalysisVerdict(NO, "proper-ground-sum", (p, sub), used,
                                       budget.seed, {"pool": len(pool) + 1})
        pool.append(sub)
    return AnalysisVerdict(UNKNOWN, None, None, used, budget.seed,
                           {"proper_ground_subspaces": len(pool)})


def block_partitions(n, max_block=2):
    """Set partitions of ``range(n)`` into blocks of size <= 2.

    Ordered so the all-singleton partition comes first.
    """
    if max_block != 2:
        raise Unsupported("only blocks of size <= 2 are enumerated")

    def rec(rest):
        if not rest:
            yield []
            return
        p, tail = rest[0], rest[1:]
        for sub in rec(tail):
            yield [(p,)] + sub
        for i, q in enumerate(tail):
            for sub in rec(tail[:i] + tail[i + 1:]):
                yield [(p, q)] + sub

    parts = list(rec(tuple(range(n))))
    parts.sort(key=lambda bl: -len(bl))
    return parts


@dataclass
class ProductGroundState:
    blocks: list
    states: list
    energy: float
    vector: np.ndarray


def _polish_product(shape, blocks, vecs, outside, iters=80):
    """Gauss-Newton on ``outside @ phi(vecs)`` over the block vectors.

    ``phi`` is multilinear in the block vectors, so its complex Jacobian is
    exact.  Near a zero-energy product state the energy is often quartic in
    the distance, where alternating updates crawl; Gauss-Newton still
    converges linearly there.
    """
    vecs = [v / np.linalg.norm(v) for v in vecs]
    best = None
    for _ in range(iters):
        phi = product_vector(shape, blocks, vecs)
        r = outside @ phi
        res = float(np.vdot(r, r).real)
        if best is None or res < best[0]:
            best = (res, [v.copy() for v in vecs])
        if res < 1e-28:
            break
        # tangent directions orthogonal to each block vector, so the step
        # cannot shrink phi towards zero
        tangents = [np.linalg.svd(v[:, None], full_matrices=True)[0][:, 1:] for v in vecs]
        cols = [product_vector(shape, blocks, vecs[:i] + [t[:, a]] + vecs[i + 1:])
                for i, t in enumerate(tangents) for a in range(t.shape[1])]
        jac = outside @ np.stack(cols, axis=1)
        step = np.linalg.lstsq(jac, -r, rcond=1e-12)[0]
        pos = 0
        for i, t in enumerate(tangents):
            v = vecs[i] + t @ step[pos:pos + t.shape[1]]
            pos += t.shape[1]
            vecs[i] = v / np.linalg.norm(v)
    return best[1]


def qubit2_product_ground_search(h, budget=SearchBudget()):
    """Zero-energy product of single- and two-qubit block states, if found.

    Every partition of the qubits into blocks of size <= 2 is tried; each
    block is updated to the lowest eigenvector of its effective operator,
    from ``max(1, budget.product_starts)`` random starts per partition, and
    the best start is polished by Gauss-Newton on the component outside
    the ground space.
    """
    if any(d != 2 for d in h.shape.dims) or h.k != 2:
        raise Unsupported("product ground search is defined for qubits with k=2")
    gs = ground_space(h)
    if gs.rank < 1:
        raise InvalidArgument("Hamiltonian is not frustration-free")
    shape = h.shape
    full = h.matrix()
    outside = gs.complement_projector()
    rng = budget.rng()
    cache = {}

    def blocked(particles):
        if particles not in cache:
            m = embed_permutation(shape, particles)
            ds, dc = m.shape
            idx = m.reshape(-1)
            cache[particles] = full[np.ix_(idx, idx)].reshape(ds, dc, ds, dc)
        return cache[particles]

    for blocks in block_partitions(shape.n):
        def effective(i, index_map, rest, blocks=blocks):
            return np.einsum("acbd,c,d->ab", blocked(blocks[i]), rest.conj(), rest)

        for _ in range(max(1, budget.product_starts)):
            energy, vecs = alternating_minimize(shape, blocks, effective, rng, starts=1,
                                                target=ZERO_ENERGY_TOL / 10)
            vecs = _polish_product(shape, blocks, vecs, outside)
            psi = product_vector(shape, blocks, vecs)
            psi = psi / np.linalg.norm(psi)
            e = float(np.vdot(psi, full @ psi).real)
            if e < ZERO_ENERGY_TOL:
                return ProductGroundState(blocks, vecs, e, psi)
    return None
