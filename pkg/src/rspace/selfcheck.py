"""Random-instance generators and oracle cross-checks.

The generators are shared by the ``selfcheck`` command and the test suite.
Each check compares a main-path result with an independently computed
one from :mod:`rspace.oracle`.
"""
import time

import numpy as np

from .fixtures import FixtureResult
from .ffham import from_rsv, ground_space, is_frustration_free
from .hilbert import SystemShape
from .oracle import brute_frustration_free, naive_intersect, sample_rs
from .reduced import eq, mpi, reduce
from .search import product_vector
from .subspace import Subspace, equals, intersect, random_subspace


def random_shape(rng, n_choices=(3, 4), dims=(2, 3), max_total=81):
    """Random local dimensions within a total-dimension cap."""
    while True:
        n = int(rng.choice(n_choices))
        shape = SystemShape(tuple(int(d) for d in rng.choice(dims, size=n)))
        if shape.total_dim <= max_total:
            return shape


def random_subspace_on(shape, rng, max_rank=3):
    rank = int(rng.integers(1, max_rank + 1))
    return random_subspace(shape.total_dim, rank, rng)


def random_rsv(rng, shape=None, k=None, max_rank=3):
    """``reduce`` of a random subspace; returns ``(shape, k, subspace, vector)``."""
    if shape is None:
        shape = random_shape(rng)
    if k is None:
        k = int(rng.integers(1, shape.n))
    s = random_subspace_on(shape, rng, max_rank)
    return shape, k, s, reduce(s, shape, k)


def random_hermitian(d, rng):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (a + a.conj().T)


def random_term_set(rng, max_total=256):
    """Random 2-local terms; about half are built to be frustration-free.

    FF sets are weighted, shifted copies of the projectors of
    ``from_rsv(reduce(S))``; the rest are random low-rank projectors, so
    either outcome occurs.
    """
    shape = random_shape(rng, n_choices=(3, 4), dims=(2, 3), max_total=max_total)
    k = 2
    terms = []
    if rng.random() < 0.5:
        s = random_subspace_on(shape, rng, max_rank=2)
        h = from_rsv(reduce(s, shape, k))
        for sub, proj in h.terms():
            terms.append((sub, float(rng.uniform(0.5, 2.0)) * proj
                          + float(rng.uniform(-1, 1)) * np.eye(proj.shape[0])))
    else:
        for sub in [(0, 1), (1, 2), (0, 2)] + ([(2, 3)] if shape.n > 3 else []):
            d = shape.subset_dim(sub)
            r = int(rng.integers(1, d))
            q = random_subspace(d, r, rng).projector()
            terms.append((sub, q))
    return shape, terms


def _check(name, trials, seed, body):
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    failures = 0
    for _ in range(trials):
        if not body(rng):
            failures += 1
    detail = f"{trials - failures}/{trials} agree"
    return FixtureResult(name, failures == 0, detail, time.perf_counter() - start)


def _reduce_vs_sampling(rng):
    shape = random_shape(rng, n_choices=(3, 4), dims=(2, 3), max_total=81)
    k = int(rng.integers(1, shape.n))
    s = random_subspace_on(shape, rng)
    return eq(reduce(s, shape, k), sample_rs(s, shape, k, 50, int(rng.integers(2**31))))


def _intersect_vs_naive(rng):
    d = int(rng.integers(2, 28))
    ra, rb = (int(rng.integers(1, d + 1)) for _ in range(2))
    a = random_subspace(d, ra, rng)
    b = random_subspace(d, rb, rng)
    if rng.random() < 0.5 and min(ra, rb) > 1:
        # force a nontrivial intersection
        shared = random_subspace(d, 1, rng).basis
        a = Subspace.from_columns(np.hstack([a.basis[:, 1:], shared]))
        b = Subspace.from_columns(np.hstack([b.basis[:, 1:], shared]))
    return equals(intersect(a, b), naive_intersect(a, b))


def _ff_vs_brute(rng):
    shape, terms = random_term_set(rng)
    return is_frustration_free(shape, terms, 2).frustration_free == \
        brute_frustration_free(shape, terms)


def _duality(rng):
    _, _, _, v = random_rsv(rng)
    return equals(ground_space(from_rsv(v)), mpi(v))


def run_selfcheck(trials=10, seed=0):
    seeds = np.random.SeedSequence(seed).generate_state(4)
    return [
        _check("reduce-vs-sampled-marginals", trials, int(seeds[0]), _reduce_vs_sampling),
        _check("intersect-vs-null-space", trials, int(seeds[1]), _intersect_vs_naive),
        _check("ff-vs-brute-energy", trials, int(seeds[2]), _ff_vs_brute),
        _check("ground-space-vs-preimage", trials, int(seeds[3]), _duality),
    ]


__all__ = [
    "random_shape",
    "random_subspace_on",
    "random_rsv",
    "random_hermitian",
    "random_term_set",
    "random_structured_state",
    "random_structured_subspace",
    "run_selfcheck",
]


def random_structured_state(shape, rng):
    """Random state with low marginal ranks.

    Either a product of random single- and two-particle block states, or a
    random superposition of two or three basis kets.
    """
    if rng.random() < 0.5:
        order = list(rng.permutation(shape.n))
        blocks = []
        while order:
            size = 2 if len(order) > 1 and rng.random() < 0.5 else 1
            blocks.append(tuple(sorted(int(p) for p in order[:size])))
            order = order[size:]
        vecs = []
        for b in blocks:
            d = shape.subset_dim(b)
            vecs.append(rng.standard_normal(d) + 1j * rng.standard_normal(d))
        psi = product_vector(shape, blocks, vecs)
    else:
        support = rng.choice(shape.total_dim, size=int(rng.integers(2, 4)), replace=False)
        psi = np.zeros(shape.total_dim, dtype=np.complex128)
        psi[support] = rng.standard_normal(support.size) + 1j * rng.standard_normal(support.size)
    return psi / np.linalg.norm(psi)


def random_structured_subspace(shape, rng, max_rank=2):
    """Span of one or two :func:`random_structured_state` draws."""
    rank = int(rng.integers(1, max_rank + 1))
    return Subspace.from_spanning_vectors([random_structured_state(shape, rng)
                                           for _ in range(rank)])
