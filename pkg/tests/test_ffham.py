import numpy as np
import pytest

from conftest import image
from rspace.errors import InvalidArgument, MeetUndefined, Unsupported
from rspace.ffham import (
    LocalHamiltonian,
    assemble_kernels,
    block_partitions,
    canonical_superset,
    from_rsv,
    ground_closure,
    ground_eigenspace,
    ground_space,
    is_frustration_free,
    is_ground_space,
    is_irreducible_ground_space,
    is_minimal_ground_space,
    kernels_from_terms,
    meet,
    qubit2_product_ground_search,
    to_rsv,
)
from rspace.fixtures import (
    K00,
    Q3,
    SYM01,
    frustrated_kernel_vector,
    ket,
    span,
    toric_code,
    toric_edges,
    w_state,
)
from rspace.hilbert import SystemShape
from rspace.oracle import brute_ground, embed_operator
from rspace.reduced import eq, reduce
from rspace.search import SearchBudget
from rspace.semilattice import CERTIFIED_YES, NO, UNKNOWN
from rspace.subspace import Subspace, equals, intersect

SMALL = SearchBudget(random_samples=30)
W000 = span([w_state(), ket("000", Q3)])


def test_from_rsv_kernels_are_components():
    h = from_rsv(image(["000"]))
    assert all(equals(k, span([K00])) for k in h.kernels)
    assert eq(to_rsv(h), image(["000"]))


def test_ground_space_of_w_dual():
    assert equals(ground_space(from_rsv(image([w_state()]))), W000)


def test_ground_space_of_unrealisable_kernels():
    gs = ground_space(from_rsv(frustrated_kernel_vector()))
    assert equals(gs, span([ket("000", Q3)]))


def test_local_hamiltonian_validation():
    shape = SystemShape(Q3)
    with pytest.raises(InvalidArgument):
        LocalHamiltonian(shape, 2, (Subspace.full(4),) * 2)
    with pytest.raises(InvalidArgument):
        LocalHamiltonian(shape, 2, (Subspace.zero(4),) + (Subspace.full(4),) * 2)


def test_matrix_and_energy():
    h = from_rsv(image([w_state()]))
    m = h.matrix()
    np.testing.assert_allclose(m, m.conj().T, atol=1e-12)
    e0, gs = brute_ground(h.shape, h.terms())
    assert abs(e0) < 1e-10 and equals(gs, W000)
    assert abs(h.energy(w_state())) < 1e-12
    psi = ket("111", Q3)
    assert h.energy(psi) == pytest.approx(np.vdot(psi, m @ psi).real)


def test_ground_eigenspace_checks_hermitian():
    with pytest.raises(InvalidArgument):
        ground_eigenspace(np.array([[0, 1], [0, 0]]))
    e, s = ground_eigenspace(np.diag([2.0, -1.0, -1.0]))
    assert e == -1.0 and s.rank == 2


def test_canonical_superset():
    assert canonical_superset(4, (2,), 2) == (0, 2)
    assert canonical_superset(4, (0,), 3) == (0, 1, 2)
    assert canonical_superset(4, (1, 3), 2) == (1, 3)


def test_assemble_kernels_lifts_and_intersects():
    shape = SystemShape(Q3)
    z = np.array([1.0, 0])
    kers = assemble_kernels(shape, 2, [((2,), span([z])), ((0, 2), span([K00, SYM01]))])
    # (2,) lifts to (0, 2): span{|x0>}; intersected with span{00, sym} gives |00>
    assert equals(kers[1], span([K00]))
    assert kers[0].rank == 4 and kers[2].rank == 4


def test_kernels_from_terms_validation():
    shape = SystemShape(Q3)
    with pytest.raises(InvalidArgument):
        kernels_from_terms(shape, [((0, 1, 2), np.eye(8))], 2)
    with pytest.raises(InvalidArgument):
        kernels_from_terms(shape, [((1, 0), np.eye(4))], 2)
    with pytest.raises(InvalidArgument):
        kernels_from_terms(shape, [((0, 1), np.eye(3))], 2)


def test_is_frustration_free_projector_terms():
    h = from_rsv(image([w_state()]))
    res = is_frustration_free(h.shape, h.terms(), 2)
    assert res.frustration_free and equals(res.ground_space, W000)


def test_is_frustration_free_frustrated_pair():
    z = np.diag([1.0, -1.0])
    res = is_frustration_free((2, 2), [((0,), z), ((0,), -z)])
    assert not res.frustration_free and res.hamiltonian is None


def test_is_frustration_free_frustrated_two_qubit():
    # ZZ wants anti-aligned spins, X (x) I wants |->, and no state does both
    x = np.array([[0, 1], [1, 0]])
    z = np.diag([1.0, -1.0])
    terms = [((0, 1), np.kron(z, z)), ((0,), x)]
    res = is_frustration_free((2, 2), terms)
    e0, _ = brute_ground((2, 2), terms)
    assert not res.frustration_free and e0 > -2 + 1e-6


def test_is_frustration_free_singlet():
    # XX, YY and ZZ share the singlet as common ground state
    x = np.array([[0, 1], [1, 0]])
    y = np.array([[0, -1j], [1j, 0]])
    z = np.diag([1.0, -1.0])
    res = is_frustration_free((2, 2), [((0, 1), np.kron(a, a)) for a in (x, y, z)])
    singlet = (ket("01", (2, 2)) - ket("10", (2, 2))) / np.sqrt(2)
    assert res.frustration_free and equals(res.ground_space, span([singlet]))


def test_meet():
    h1 = from_rsv(image([w_state()]))
    h2 = from_rsv(image(["000"]))
    m = meet(h1, h2)
    assert all(equals(k, span([K00])) for k in m.kernels)
    assert all(equals(a, b) for a, b in zip(meet(h1, h1).kernels, h1.kernels))
    assert equals(ground_space(m), intersect(ground_space(h1), ground_space(h2)))


def test_meet_undefined():
    with pytest.raises(MeetUndefined):
        meet(from_rsv(image(["000"])), from_rsv(image(["111"])))


def test_meet_rejects_mismatch():
    with pytest.raises(InvalidArgument):
        meet(from_rsv(image(["000"])), from_rsv(image(["000"], k=1)))


def test_ground_space_fixpoint():
    shape = SystemShape(Q3)
    assert is_ground_space(W000, shape, 2)
    assert not is_ground_space(span([w_state()]), shape, 2)
    assert equals(ground_closure(span([w_state()]), shape, 2), W000)


def test_minimal_ground_space():
    shape = SystemShape(Q3)
    assert is_minimal_ground_space(span([ket("000", Q3)]), shape, 2, SMALL).status == CERTIFIED_YES
    v = is_minimal_ground_space(W000, shape, 2, SMALL)
    assert v.status == NO and equals(v.witness, span([ket("000", Q3)]))
    with pytest.raises(InvalidArgument):
        is_minimal_ground_space(span([w_state()]), shape, 2, SMALL)


def test_irreducible_ground_space():
    shape = SystemShape(Q3)
    ghz = span([ket("000", Q3), ket("111", Q3)])
    v = is_irreducible_ground_space(ghz, shape, 2, SMALL)
    assert v.status == NO
    a, b = v.witness
    assert {a.rank, b.rank} == {1}
    assert equals(ground_space(from_rsv(reduce(a, shape, 2))), a)
    assert is_irreducible_ground_space(W000, shape, 2, SMALL).status == UNKNOWN
    assert is_irreducible_ground_space(span([ket("000", Q3)]), shape, 2,
                                       SMALL).status == CERTIFIED_YES


def test_block_partitions():
    parts = block_partitions(4)
    assert parts[0] == [(0,), (1,), (2,), (3,)]
    # involutions on 4 points: 1 + 6 + 3
    assert len(parts) == 10
    with pytest.raises(Unsupported):
        block_partitions(3, max_block=3)


def test_product_search_w_dual():
    found = qubit2_product_ground_search(from_rsv(image([w_state()])), SearchBudget())
    assert found is not None and found.energy < 1e-8
    assert found.blocks == [(0,), (1,), (2,)]
    assert abs(abs(np.vdot(found.vector, ket("000", Q3))) - 1) < 1e-6


def test_product_search_bell_times_zero():
    psi = (ket("000", Q3) + ket("110", Q3)) / np.sqrt(2)
    h = from_rsv(reduce(span([psi]), Q3, 2))
    assert ground_space(h).rank == 1
    found = qubit2_product_ground_search(h, SearchBudget())
    assert found is not None and abs(abs(np.vdot(found.vector, psi)) - 1) < 1e-6
    assert sorted(map(len, found.blocks)) == [1, 2]


def test_product_search_rejects():
    h = from_rsv(reduce(span([ket("000", (3, 2, 2))]), (3, 2, 2), 2))
    with pytest.raises(Unsupported):
        qubit2_product_ground_search(h)


def test_toric_edges_l2():
    stars, plaquettes = toric_edges(2)
    assert stars[0] == (0, 1, 4, 6) and plaquettes[0] == (0, 2, 4, 5)
    # every edge touches two stars and two plaquettes
    for group in (stars, plaquettes):
        counts = np.bincount(np.concatenate(group), minlength=8)
        assert (counts == 2).all()


def test_toric_ground_space_rank_matches_brute_force():
    h = toric_code(2)
    gs = ground_space(h)
    assert gs.rank == 4
    e0, brute = brute_ground(h.shape, h.terms())
    assert abs(e0) < 1e-9 and equals(gs, brute)


def test_embed_operator_consistent_with_matrix():
    h = from_rsv(image([w_state()]))
    total = sum(embed_operator(p, Q3, sub) for sub, p in h.terms())
    np.testing.assert_allclose(total, h.matrix(), atol=1e-12)
