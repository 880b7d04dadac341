"""Structural analysis of reduced-space vectors.

There is no decision procedure for atomhood or join-irreducibility over
the continuum of subspaces, so the checks here return three-valued
verdicts: ``CertifiedYes`` only through a proved rule, ``No`` only with a
witness that re-validates through ``leq``/``join``, and ``Unknown``
otherwise.
"""
from dataclasses import dataclass, field
import numpy as np

from .errors import InvalidArgument, SearchExhausted, Unsupported
from .reduced import eq, join, leq, lt, member_theta, mpi, reduce, reduced_component
from .search import SearchBudget, product_vector, state_candidates, subspace_candidates
from .subspace import Subspace, tensor_product

CERTIFIED_YES = "CertifiedYes"
NO = "No"
UNKNOWN = "Unknown"

RULE_PURE_MPI = "pure-mpi"        # rank-1 maximal pre-image => atom
RULE_ATOM = "atom"                # atoms are join irreducible
RULE_RANK_ONE = "rank-one"        # rank-1 ground space has no proper nonzero subspace


@dataclass
class AnalysisVerdict:
    status: str
    rule: str = None
    witness: object = None
    samples_used: int = 0
    seed: int = None
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (CERTIFIED_YES, NO, UNKNOWN):
            raise ValueError(f"unknown verdict status {self.status!r}")
        if self.status == NO and self.witness is None:
            raise ValueError("a No verdict needs a witness")
        if self.status == CERTIFIED_YES and not self.rule:
            raise ValueError("a CertifiedYes verdict needs a rule")

    @property
    def certified(self):
        return self.status == CERTIFIED_YES


def _require_member(v):
    if not v.is_nonzero() or not member_theta(v):
        raise InvalidArgument("vector is not the reduced-space vector of any subspace")


def is_atom(v, budget=SearchBudget()):
    """Atom check for ``v``.

    Certifies when the maximal pre-image is a single state.  Otherwise looks
    for a state ``phi`` in the pre-image with ``reduce(phi) < v``; any strict
    lower bound in the set dominates such a state, so single states suffice.
    """
    _require_member(v)
    g = mpi(v)
    if g.rank == 1:
        return AnalysisVerdict(CERTIFIED_YES, RULE_PURE_MPI, seed=budget.seed)
    rng = budget.rng()
    used = 0
    for cand in state_candidates(g, v.shape, budget, rng):
        used += 1
        w = reduce(cand.space, v.shape, v.k)
        if lt(w, v):
            return AnalysisVerdict(NO, "strict-lower-bound", w, used, budget.seed,
                                   {"family": cand.family})
    return AnalysisVerdict(UNKNOWN, None, None, used, budget.seed)


def is_join_irreducible(v, budget=SearchBudget()):
    """Join-irreducibility check for ``v``.

    A ``No`` witness is a pair ``(a, b)`` of reduced vectors of proper
    subspaces of the pre-image with ``a < v``, ``b < v`` and ``a v b == v``.
    ``evidence["pairs_examined"]`` counts every candidate pair considered,
    including pairs rejected because one side is not strictly below ``v``.
    """
    atom = is_atom(v, budget)
    if atom.certified:
        return AnalysisVerdict(CERTIFIED_YES, RULE_ATOM, seed=budget.seed)
    g = mpi(v)
    rng = budget.rng()
    pool = []
    used = 0
    pairs = 0
    for cand in subspace_candidates(g, v.shape, budget, rng):
        used += 1
        w = reduce(cand.space, v.shape, v.k)
        # pairs with this candidate and every earlier one
        pairs += used - 1
        if not lt(w, v):
            continue
        if any(eq(w, p) for p, _ in pool):
            continue
        for p, fam in pool:
            if eq(join(p, w), v):
                return AnalysisVerdict(NO, "strict-join-split", (p, w), used, budget.seed,
                                       {"pairs_examined": pairs,
                                        "families": (fam, cand.family)})
        pool.append((w, cand.family))
    return AnalysisVerdict(UNKNOWN, None, None, used, budget.seed,
                           {"pairs_examined": pairs, "strict_lower_bounds": len(pool)})


def validate_join_prime_witness(target, w1, w2):
    """The three order conditions refuting join-primality of ``target``."""
    return leq(target, join(w1, w2)) and not leq(target, w1) and not leq(target, w2)


@dataclass
class JoinPrimeWitness:
    w1: object
    w2: object
    construction: str
    particle: int = None
    split: tuple = None


def _local_complement_vector(u):
    """A unit vector orthogonal to ``u``."""
    full, _, _ = np.linalg.svd(u.reshape(-1, 1), full_matrices=True)
    return full[:, 1]


def join_prime_witness(s, shape, k):
    """Pair ``(W1, W2)`` with ``L(s) <= W1 v W2`` but ``L(s)`` below neither.

    ``s`` must be spanned by a single state.  Product states use the
    two-GHZ construction (a Bell pair for ``k = 2``) in the state's own local
    basis; entangled states split the spectrum of an entangled particle's
    marginal and pair each part with the range of the remaining particles.
    """
    if s.rank != 1:
        raise InvalidArgument("join-prime witness needs a one-dimensional subspace")
    if s.ambient_dim != shape.total_dim:
        raise InvalidArgument("subspace does not live on this system")
    target = reduce(s, shape, k)
    # left singular vectors of the partial-overlap matrix are the marginal's
    # eigenvectors in descending weight
    singles = [reduced_component(s, shape, (p,)) for p in range(shape.n)]
    if all(x.rank == 1 for x in singles):
        return _product_witness(shape, k, target, [x.basis[:, 0] for x in singles], s.tol)
    return _entangled_witness(s, shape, k, target, singles)


def _product_witness(shape, k, target, local, tol):
    n = shape.n
    if n < 3:
        raise Unsupported("product-state construction needs at least 3 particles")
    if k >= n:
        raise Unsupported("product-state construction needs k < n")
    other = [_local_complement_vector(u) for u in local]

    def ghz_on(block):
        zeros = [local[p] for p in block]
        ones = [other[p] for p in block]
        a = zeros[0]
        b = ones[0]
        for z, o in zip(zeros[1:], ones[1:]):
            a = np.kron(a, z)
            b = np.kron(b, o)
        return (a + b) / np.sqrt(2)

    def state(block):
        rest = [(p,) for p in range(n) if p not in block]
        return product_vector(shape, [tuple(block)] + rest,
                              [ghz_on(block)] + [local[p] for p, in rest])

    first = tuple(range(k))
    last = tuple(range(n - k, n))
    w1 = reduce(Subspace.from_spanning_vectors([state(first)], tol), shape, k)
    w2 = reduce(Subspace.from_spanning_vectors([state(last)], tol), shape, k)
    if not validate_join_prime_witness(target, w1, w2):
        raise SearchExhausted("product-state construction failed to validate")
    return JoinPrimeWitness(w1, w2, "product-ghz", None, (first, last))


def _entangled_witness(s, shape, k, target, singles):
    for alpha, single in enumerate(singles):
        r = single.rank
        if r < 2:
            continue
        evecs = single.basis
        rest = shape.complement((alpha,))
        rest_range = reduced_component(s, shape, rest)
        for mask in range(1, 2 ** r - 1):
            part_a = [i for i in range(r) if mask >> i & 1]
            part_b = [i for i in range(r) if not mask >> i & 1]
            w_pair = []
            for part in (part_a, part_b):
                local = Subspace.from_columns(evecs[:, part], s.tol)
                w_pair.append(reduce(tensor_product(shape, (alpha,), local, rest_range),
                                     shape, k))
            if validate_join_prime_witness(target, *w_pair):
                return JoinPrimeWitness(w_pair[0], w_pair[1], "spectral-split", alpha,
                                        (tuple(part_a), tuple(part_b)))
    raise SearchExhausted("no particle/spectral split validated the join-prime conditions")


@dataclass
class DecompositionPart:
    vector: object
    verdict: AnalysisVerdict


def decompose_irreducibles(v, budget=SearchBudget()):
    """Split ``v`` into a finite join of (best-effort) join irreducibles.

    The parts always join back to ``v``; each carries its own
    irreducibility verdict (``CertifiedYes`` or ``Unknown``).
    """
    _require_member(v)
    out = []
    stack = [v]
    while stack:
        cur = stack.pop()
        verdict = is_join_irreducible(cur, budget)
        if verdict.status == NO:
            a, b = verdict.witness
            # push b first so a is processed first
            stack.extend([b, a])
            continue
        if not any(eq(cur, p.vector) for p in out):
            out.append(DecompositionPart(cur, verdict))
    return out


__all__ = [
    "CERTIFIED_YES",
    "NO",
    "UNKNOWN",
    "AnalysisVerdict",
    "SearchBudget",
    "JoinPrimeWitness",
    "DecompositionPart",
    "is_atom",
    "is_join_irreducible",
    "join_prime_witness",
    "validate_join_prime_witness",
    "decompose_irreducibles",
]
