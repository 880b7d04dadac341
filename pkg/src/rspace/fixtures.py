"""Worked-example fixtures and the toric-code builder.

Each fixture carries its tolerance and a provenance string: ``reference``
for published worked examples (described by content), ``derived`` for
values obtained from an independent recipe.  Components of three-particle
examples are written pair by pair in the (01, 12, 02) order,
with explicit subset labels, and are re-sorted to lexicographic order on
load.
"""
from dataclasses import dataclass
from functools import reduce as fold
import time
from typing import Callable

import numpy as np

from .ffham import (
    LocalHamiltonian,
    assemble_kernels,
    from_rsv,
    ground_eigenspace,
    ground_space,
)
from .hilbert import SystemShape
from .reduced import (
    eq,
    from_components,
    join,
    leq,
    lt,
    member_theta,
    mpi,
    projector_distance,
    reduce,
)
from .search import SearchBudget
from .semilattice import CERTIFIED_YES, NO, UNKNOWN, is_atom, is_join_irreducible
from .subspace import Subspace, contains, equals, random_state_in, sum_

EXAMPLE_TOL = 1e-8


def ket(label, dims):
    """Basis ket from a digit string, big-endian."""
    shape = SystemShape(tuple(dims))
    v = np.zeros(shape.total_dim, dtype=np.complex128)
    v[shape.ket_index([int(c) for c in label])] = 1.0
    return v


def superpose(terms, dims):
    """``sum amp * |label>`` from ``{label: amp}``, normalised."""
    v = sum(amp * ket(label, dims) for label, amp in terms.items())
    return v / np.linalg.norm(v)


def span(vectors):
    return Subspace.from_spanning_vectors(list(vectors))


def labelled_rsv(dims, k, labelled):
    """Vector from ``[(subset, [vectors]), ...]`` in any subset order."""
    by_subset = {tuple(sub): vecs for sub, vecs in labelled}
    if len(by_subset) != len(labelled):
        raise ValueError("repeated subset label")
    return from_components(tuple(dims), k, by_subset)


@dataclass
class Fixture:
    name: str
    provenance: str
    tolerance: float
    check: Callable

    def run(self, seed=0):
        start = time.perf_counter()
        try:
            passed, detail = self.check(seed)
        except Exception as exc:  # reported, not raised: a fixture run is a report
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        return FixtureResult(self.name, bool(passed), detail, time.perf_counter() - start)


@dataclass
class FixtureResult:
    name: str
    passed: bool
    detail: str
    seconds: float


# -- shared three-qubit objects --------------------------------------------

Q3 = (2, 2, 2)
Q2 = (2, 2)
K00 = ket("00", Q2)
K11 = ket("11", Q2)
SYM01 = superpose({"01": 1, "10": 1}, Q2)


def w_state():
    return superpose({"001": 1, "010": 1, "100": 1}, Q3)


def symmetric_subspace():
    return span([ket("000", Q3), w_state(), superpose({"011": 1, "101": 1, "110": 1}, Q3),
                 ket("111", Q3)])


def _within(v, expected, tol):
    d = projector_distance(v, expected)
    return d < tol, d


# -- reference fixtures ----------------------------------------------------

def _marginals_check(seed):
    cases = [
        ("|001>", span([ket("001", Q3)]),
         [((0, 1), [K00]), ((1, 2), [ket("01", Q2)]), ((0, 2), [ket("01", Q2)])]),
        ("|000>,|111>", span([ket("000", Q3), ket("111", Q3)]),
         [((0, 1), [K00, K11]), ((1, 2), [K00, K11]), ((0, 2), [K00, K11])]),
        ("W", span([w_state()]),
         [((0, 1), [K00, SYM01]), ((1, 2), [K00, SYM01]), ((0, 2), [K00, SYM01])]),
    ]
    worst = 0.0
    for label, s, comps in cases:
        ok, d = _within(reduce(s, Q3, 2), labelled_rsv(Q3, 2, comps), EXAMPLE_TOL)
        worst = max(worst, d)
        if not ok:
            return False, f"{label}: projector distance {d:.2e}"
    return True, f"3 inputs, max projector distance {worst:.1e}"


def _join_check(seed):
    lw = reduce(span([w_state()]), Q3, 2)
    l111 = reduce(span([ket("111", Q3)]), Q3, 2)
    joined = join(lw, l111)
    comp = [K00, SYM01, K11]
    ok, d = _within(joined, labelled_rsv(Q3, 2, [((0, 1), comp), ((1, 2), comp),
                                                  ((0, 2), comp)]), EXAMPLE_TOL)
    if not ok:
        return False, f"join components off by {d:.2e}"
    big = mpi(joined)
    small = sum_(mpi(lw), mpi(l111))
    if not equals(big, symmetric_subspace()):
        return False, f"pre-image of join has rank {big.rank}, not the symmetric subspace"
    if not (contains(big, small) and small.rank < big.rank):
        return False, f"sum of pre-images (rank {small.rank}) not strictly inside"
    return True, f"pre-image rank {big.rank} strictly contains sum of rank {small.rank}"


def qutrit_vector():
    t2 = (3, 3)
    c = np.sqrt(2 / 3)
    r = 1 / np.sqrt(2)
    return labelled_rsv((3, 3, 3), 2, [
        ((0, 1), [c * (ket("00", t2) - r * ket("12", t2)), c * (ket("11", t2) - r * ket("02", t2))]),
        ((1, 2), [c * (ket("00", t2) - r * ket("21", t2)), c * (ket("11", t2) - r * ket("20", t2))]),
        ((0, 2), [ket("00", t2), r * (ket("01", t2) + ket("10", t2)), ket("11", t2)]),
    ])


def qutrit_state():
    t3 = (3, 3, 3)
    r = 1 / np.sqrt(2)
    return superpose({"000": 1, "021": -r, "120": -r, "111": 1}, t3)


def _qutrit_check(seed):
    v = qutrit_vector()
    g = mpi(v)
    if g.rank != 1:
        return False, f"pre-image rank {g.rank}, expected 1"
    overlap = abs(np.vdot(qutrit_state(), g.basis[:, 0]))
    if overlap <= 1 - EXAMPLE_TOL:
        return False, f"overlap {overlap:.10f}"
    verdict = is_atom(v, SearchBudget(seed=seed))
    if verdict.status != CERTIFIED_YES:
        return False, f"is_atom returned {verdict.status}"
    return True, f"rank-1 pre-image, overlap {overlap:.12f}, atom certified"


def _w_irreducible_check(seed):
    v = reduce(span([w_state()]), Q3, 2)
    budget = SearchBudget(random_samples=100, seed=seed)
    atom = is_atom(v, budget)
    target = reduce(span([ket("000", Q3)]), Q3, 2)
    if atom.status != NO or not eq(atom.witness, target):
        return False, f"is_atom: {atom.status}, witness does not match |000> image"
    irr = is_join_irreducible(v, budget)
    if irr.status != UNKNOWN:
        return False, f"is_join_irreducible returned {irr.status}"
    return True, (f"not an atom (|000> below); no join split among "
                  f"{irr.evidence['pairs_examined']} pairs")


def frustrated_kernel_vector():
    return labelled_rsv(Q3, 2, [((0, 1), [K00, SYM01]), ((1, 2), [K00]), ((0, 2), [K00])])


def _kernel_vector_check(seed):
    v = frustrated_kernel_vector()
    if member_theta(v):
        return False, "vector reported as a reduced-space vector"
    gs = ground_space(from_rsv(v))
    if not equals(gs, span([ket("000", Q3)])):
        return False, f"ground space rank {gs.rank}, not span{{|000>}}"
    ok, d = _within(reduce(gs, Q3, 2), labelled_rsv(Q3, 2, [((0, 1), [K00]), ((1, 2), [K00]),
                                                            ((0, 2), [K00])]), EXAMPLE_TOL)
    if not ok:
        return False, f"image of ground space off by {d:.2e}"
    return True, "not realisable; ground space span{|000>} with all-|00> image"


def _subsemilattice_check(seed):
    comp = [K00, SYM01]
    top = labelled_rsv(Q3, 2, [((0, 1), comp), ((1, 2), comp), ((0, 2), comp)])
    bottom = labelled_rsv(Q3, 2, [((0, 1), [K00]), ((1, 2), [K00]), ((0, 2), [K00])])
    s = span([w_state(), ket("000", Q3)])
    s_low = span([ket("000", Q3)])
    if not (leq(bottom, top) and eq(join(top, bottom), top)):
        return False, "two-element set is not closed with the stated top"
    if not equals(mpi(top), s):
        return False, f"pre-image of top has rank {mpi(top).rank}"
    if not (equals(mpi(bottom), s_low) and contains(s, s_low)):
        return False, "pre-image of bottom not span{|000>} inside the top pre-image"
    if not equals(ground_space(from_rsv(top)), s):
        return False, "dual Hamiltonian ground space differs from the pre-image"
    return True, "pre-images span{W,|000>} > span{|000>}; dual ground space matches"


WORKED_FIXTURES = [
    Fixture("three-qubit-marginals", "reference: 2-particle ranges of |001>, "
            "span{|000>,|111>} and W", EXAMPLE_TOL, _marginals_check),
    Fixture("join-strictly-enlarges-preimage", "reference: join of W and |111> images, "
            "pre-image is the symmetric subspace", EXAMPLE_TOL, _join_check),
    Fixture("qutrit-pure-preimage", "reference: three-qutrit vector with a single-state "
            "pre-image", EXAMPLE_TOL, _qutrit_check),
    Fixture("w-irreducible-not-atom", "reference: W image is join irreducible but not an "
            "atom", EXAMPLE_TOL, _w_irreducible_check),
    Fixture("unrealisable-kernel-vector", "reference: FF kernel vector outside the set, "
            "ground space |000>", EXAMPLE_TOL, _kernel_vector_check),
    Fixture("two-element-subsemilattice", "reference: {image of W, image of |000>} and "
            "its nested pre-images", EXAMPLE_TOL, _subsemilattice_check),
]


# -- toric code ------------------------------------------------------------

def toric_edges(L):
    """Stars and plaquettes of the L x L periodic lattice as edge-index tuples.

    Horizontal edge ``(x, y)`` is qubit ``y*L + x``; vertical edge
    ``(x, y)`` is qubit ``L*L + y*L + x``.
    """
    if L < 2:
        raise ValueError("toric lattice needs L >= 2")
    h = lambda x, y: (y % L) * L + (x % L)
    v = lambda x, y: L * L + (y % L) * L + (x % L)
    stars = [tuple(sorted({h(x, y), h(x - 1, y), v(x, y), v(x, y - 1)}))
             for y in range(L) for x in range(L)]
    plaquettes = [tuple(sorted({h(x, y), h(x, y + 1), v(x, y), v(x + 1, y)}))
                  for y in range(L) for x in range(L)]
    return stars, plaquettes


_PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_PAULI_Z = np.diag([1.0, -1.0]).astype(np.complex128)


def toric_code(L=2, tol=1e-10):
    """4-local projector Hamiltonian of the toric code on ``2 L^2`` qubits.

    Each star (plaquette) term projects onto the -1 eigenspace of its X
    (Z) string, so its kernel is the +1 eigenspace.
    """
    stars, plaquettes = toric_edges(L)
    shape = SystemShape((2,) * (2 * L * L))
    x4 = fold(np.kron, [_PAULI_X] * 4)
    z4 = fold(np.kron, [_PAULI_Z] * 4)
    ker_x = ground_eigenspace(-x4, tol)[1]
    ker_z = ground_eigenspace(-z4, tol)[1]
    parts = [(s, ker_x) for s in stars] + [(p, ker_z) for p in plaquettes]
    return LocalHamiltonian(shape, 4, tuple(assemble_kernels(shape, 4, parts, tol)))


def _toric_degeneracy_check(seed):
    gs = ground_space(toric_code(2))
    return gs.rank == 4, f"ground space rank {gs.rank}"


def _toric_image_check(seed, samples=20):
    h = toric_code(2)
    gs = ground_space(h)
    v = reduce(gs, h.shape, 4)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(samples):
        w = reduce(span([random_state_in(gs, rng)]), h.shape, 4)
        d = projector_distance(w, v)
        worst = max(worst, d)
        if d >= EXAMPLE_TOL:
            return False, f"sample {i}: projector distance {d:.2e}"
    return True, f"{samples} random states share the image (max distance {worst:.1e})"


def _toric_random_atom_check(seed, samples=1000):
    h = toric_code(2)
    gs = ground_space(h)
    v = reduce(gs, h.shape, 4)
    verdict = is_atom(v, SearchBudget(random_samples=samples, structured=(), seed=seed))
    return verdict.status != NO, f"{verdict.status} after {verdict.samples_used} random states"


def _toric_logical_check(seed):
    # a stabiliser state with a definite logical value has weight-2 logical
    # operators acting trivially on some 4-sets at L = 2, so its image is smaller
    h = toric_code(2)
    gs = ground_space(h)
    v = reduce(gs, h.shape, 4)
    phi = gs.basis @ (gs.basis.conj().T @ ket("0" * 8, h.shape.dims))
    w = reduce(span([phi]), h.shape, 4)
    if not (lt(w, v) and member_theta(w)):
        return False, "logical basis state does not give a strictly smaller image"
    verdict = is_atom(v, SearchBudget(random_samples=0, seed=seed))
    if verdict.status != NO or not lt(verdict.witness, v):
        return False, f"structured search returned {verdict.status}"
    return True, (f"logical state image strictly below (rank deficit "
                  f"{sum(v.ranks) - sum(w.ranks)}); structured search agrees")


TORIC_FIXTURES = [
    Fixture("toric-l2-degeneracy", "reference: four-fold degenerate toric-code ground space",
            0.0, _toric_degeneracy_check),
    Fixture("toric-l2-state-images", "reference: every state of the ground space has the "
            "same 4-particle image (20 random states)", EXAMPLE_TOL, _toric_image_check),
    Fixture("toric-l2-random-atom-search", "reference: atom claim; derived: no strict "
            "lower bound among 1000 Haar-random ground states", EXAMPLE_TOL,
            _toric_random_atom_check),
    Fixture("toric-l2-logical-state-image", "derived: projected |0...0> has a strictly "
            "smaller image at L=2", EXAMPLE_TOL, _toric_logical_check),
]


def suite(name):
    if name == "paper":
        return list(WORKED_FIXTURES)
    if name == "toric":
        return list(TORIC_FIXTURES)
    if name == "all":
        return list(WORKED_FIXTURES) + list(TORIC_FIXTURES)
    raise ValueError(f"unknown suite {name!r}")


def run_suite(name, seed=0):
    return [fx.run(seed) for fx in suite(name)]
