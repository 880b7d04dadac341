import json

import numpy as np
import pytest

from conftest import image
from rspace import io
from rspace.ffham import from_rsv
from rspace.fixtures import Q3, frustrated_kernel_vector, ket, qutrit_vector, span, w_state
from rspace.hilbert import SystemShape
from rspace.reduced import eq
from rspace.search import SearchBudget
from rspace.semilattice import is_atom, is_join_irreducible
from rspace.subspace import equals


def roundtrip(obj):
    return json.loads(json.dumps(obj))


def test_vector_formats():
    dims = (2, 2)
    np.testing.assert_allclose(io.parse_vector([1, [0, 1], 0, 0.5], dims), [1, 1j, 0, 0.5])
    np.testing.assert_allclose(io.parse_vector({"ket": "10"}, dims), ket("10", dims))
    np.testing.assert_allclose(io.parse_vector({"ket": [1, 0]}, dims), ket("10", dims))
    v = io.parse_vector({"ket": {"01": 1, "10": [0, 2]}}, dims)
    np.testing.assert_allclose(v, ket("01", dims) + 2j * ket("10", dims))


@pytest.mark.parametrize("obj,where", [
    ([1, 2, 3], "v: expected 4"),
    ([1, 2, "a", 3], "v[2]"),
    ([1, 2, True, 3], "v[2]"),
    ({"ket": "012"}, "v.ket"),
    ({"ket": "2"}, "v.ket"),
    ({"ket": "02"}, "v.ket"),
    ({"nope": 1}, "missing field 'ket'"),
    ("x", "v: vector must be"),
])
def test_vector_errors(obj, where):
    with pytest.raises(io.FormatError, match=None) as exc:
        io.parse_vector(obj, (2, 2), "v")
    assert where in str(exc.value)


def test_json_decode_error_has_position():
    with pytest.raises(io.FormatError) as exc:
        io.loads('{"dims": [2,\n 2', "f.json")
    assert str(exc.value).startswith("f.json:2:")


def test_subspace_roundtrip(rng):
    shape = SystemShape((2, 3))
    s = span([rng.standard_normal(6) + 1j * rng.standard_normal(6) for _ in range(2)])
    shape2, s2 = io.parse_subspace(roundtrip(io.subspace_to_json(shape, s)))
    assert shape2 == shape and equals(s, s2)


def test_subspace_errors():
    with pytest.raises(io.FormatError, match="dims"):
        io.parse_subspace({"dims": [2, 1], "vectors": [[1, 0]]})
    with pytest.raises(io.FormatError, match="vectors"):
        io.parse_subspace({"dims": [2], "vectors": []})
    with pytest.raises(io.FormatError, match="tol"):
        io.parse_subspace({"dims": [2], "vectors": [[1, 0]], "tol": -1})


@pytest.mark.parametrize("make", [lambda: image([w_state()]), qutrit_vector,
                                  frustrated_kernel_vector])
def test_rsv_roundtrip(make):
    v = make()
    assert eq(io.parse_rsv(roundtrip(io.rsv_to_json(v))), v)


def test_rsv_requires_lex_order_and_all_components():
    doc = io.rsv_to_json(image([w_state()]))
    doc["components"][1], doc["components"][2] = doc["components"][2], doc["components"][1]
    with pytest.raises(io.FormatError, match=r"components\[1\].subset"):
        io.parse_rsv(doc)
    doc["components"] = doc["components"][:2]
    with pytest.raises(io.FormatError, match="expected 3 components"):
        io.parse_rsv(doc)


def test_rsv_bad_k():
    with pytest.raises(io.FormatError, match="k"):
        io.parse_rsv({"dims": [2, 2], "k": 3, "components": []})


def test_hamiltonian_roundtrip():
    h = from_rsv(image([w_state()]))
    h2 = io.parse_hamiltonian(roundtrip(io.hamiltonian_to_json(h)))
    assert all(equals(a, b) for a, b in zip(h.kernels, h2.kernels))


def test_hamiltonian_matrix_terms_and_defaults():
    z = [[1, 0], [0, -1]]
    doc = {"dims": [2, 2, 2], "k": 2, "terms": [
        {"subset": [1], "matrix": z},
        {"subset": [0, 1], "kernel_vectors": [{"ket": "00"}, {"ket": "01"}, {"ket": "11"}]},
    ]}
    h = io.parse_hamiltonian(doc)
    # (1,) lifts to (0, 1) and intersects: kernel span{|01>, |11>}
    assert equals(h.kernels[0], span([ket("01", (2, 2)), ket("11", (2, 2))]))
    assert h.kernels[1].rank == 4 and h.kernels[2].rank == 4


def test_hamiltonian_errors():
    base = {"dims": [2, 2], "k": 1}
    with pytest.raises(io.FormatError, match=r"terms\[0\]"):
        io.parse_hamiltonian(dict(base, terms=[{"subset": [0]}]))
    with pytest.raises(io.FormatError, match="Hermitian"):
        io.parse_hamiltonian(dict(base, terms=[{"subset": [0], "matrix": [[0, 1], [0, 0]]}]))
    with pytest.raises(io.FormatError, match="locality"):
        io.parse_hamiltonian(dict(base, terms=[{"subset": [0, 1], "matrix": [[1]]}]))
    with pytest.raises(io.FormatError, match=r"matrix\[1\]"):
        io.parse_hamiltonian(dict(base, terms=[{"subset": [0], "matrix": [[1, 0], [0]]}]))


def test_verdict_roundtrip():
    budget = SearchBudget(random_samples=20, seed=3)
    for v, shape in [(image([w_state()]), SystemShape(Q3)), (image(["000", "111"]), SystemShape(Q3))]:
        for verdict in (is_atom(v, budget), is_join_irreducible(v, budget)):
            doc = roundtrip(io.verdict_to_json(verdict, shape, tol=1e-10))
            back = io.parse_verdict(doc)
            assert (back.status, back.rule, back.samples_used, back.seed) == \
                (verdict.status, verdict.rule, verdict.samples_used, verdict.seed)
            if verdict.witness is not None:
                ws = verdict.witness if isinstance(verdict.witness, tuple) else (verdict.witness,)
                bs = back.witness if isinstance(back.witness, tuple) else (back.witness,)
                assert all(eq(a, b) for a, b in zip(ws, bs))
