import numpy as np
import pytest

from rspace.errors import InvalidArgument, Unsupported
from rspace.fixtures import Q3, ket, span, w_state
from rspace.hilbert import SystemShape
from rspace.oracle import (
    brute_frustration_free,
    brute_ground,
    embed_operator,
    naive_intersect,
    range_by_eigh,
    rdm_by_reshape,
    sample_density,
    sample_rs,
    term_minima,
)
from rspace.reduced import eq, reduce
from rspace.subspace import Subspace, equals, intersect, random_subspace


def test_rdm_of_ghz():
    psi = (ket("000", Q3) + ket("111", Q3)) / np.sqrt(2)
    rho = np.outer(psi, psi.conj())
    np.testing.assert_allclose(rdm_by_reshape(rho, Q3, (0, 1)),
                               0.5 * np.diag([1, 0, 0, 1]), atol=1e-14)


def test_range_by_eigh():
    assert range_by_eigh(np.diag([1.0, 0.0, 1e-12])).shape == (3, 1)
    assert range_by_eigh(np.zeros((2, 2))).shape == (2, 0)


def test_sample_density_support(rng):
    s = random_subspace(6, 3, rng)
    for mixed in (False, True):
        rho = sample_density(s, rng, mixed)
        assert abs(np.trace(rho) - 1) < 1e-12
        assert s.residual(range_by_eigh(rho)) < 1e-8


def test_sample_rs_w():
    assert eq(sample_rs(span([w_state()]), Q3, 2, 10, 0), reduce(span([w_state()]), Q3, 2))


def test_sample_rs_seeded(rng):
    s = random_subspace(8, 2, rng)
    a = sample_rs(s, Q3, 1, 4, 3)
    b = sample_rs(s, Q3, 1, 4, 3)
    assert all(np.array_equal(x.basis, y.basis) for x, y in zip(a.components, b.components))


def test_sample_rs_errors():
    with pytest.raises(InvalidArgument):
        sample_rs(Subspace.zero(8), Q3, 2, 5, 0)
    with pytest.raises(InvalidArgument):
        sample_rs(Subspace.full(8), Q3, 2, 0, 0)


def test_embed_operator_matches_kron_for_leading_particles():
    op = np.arange(4.0).reshape(2, 2)
    np.testing.assert_allclose(embed_operator(op, (2, 3), (0,)), np.kron(op, np.eye(3)))
    np.testing.assert_allclose(embed_operator(op, (3, 2), (1,)), np.kron(np.eye(3), op))


def test_brute_ground_and_cap():
    z = np.diag([1.0, -1.0])
    e0, gs = brute_ground((2, 2), [((0,), z), ((1,), z)])
    assert e0 == pytest.approx(-2) and equals(gs, span([ket("11", (2, 2))]))
    assert term_minima([((0,), z), ((1,), z)]) == pytest.approx(-2)
    with pytest.raises(Unsupported):
        brute_ground((2,) * 13, [])


def test_brute_frustration_free():
    z = np.diag([1.0, -1.0])
    assert brute_frustration_free((2, 2), [((0,), z), ((1,), z)])
    assert not brute_frustration_free((2, 2), [((0,), z), ((0,), -z)])


def test_naive_intersect(rng):
    a = random_subspace(5, 3, rng)
    b = random_subspace(5, 3, rng)
    assert naive_intersect(a, b).rank == 1
    assert equals(naive_intersect(a, b), intersect(a, b))
    assert naive_intersect(a, Subspace.zero(5)).rank == 0
    with pytest.raises(InvalidArgument):
        naive_intersect(a, Subspace.full(4))
