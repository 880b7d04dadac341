"""JSON formats for subspaces, reduced-space vectors, Hamiltonians and verdicts.

Vectors are lists of amplitudes, each either a real number or ``[re, im]``,
or a ket shorthand object: ``{"ket": "001"}`` for a basis ket, or
``{"ket": {"001": 1, "010": 1, "100": [0, 1]}}`` for a superposition.
Spanning vectors need not be orthonormal; they are canonicalised on load.
"""
import json

import numpy as np

from .errors import InvalidArgument
from .ffham import LocalHamiltonian, assemble_kernels, ground_eigenspace
from .hilbert import SystemShape, enumerate_subsets
from .reduced import ReducedSpaceVector
from .semilattice import AnalysisVerdict
from .subspace import DEFAULT_TOL, Subspace


class FormatError(InvalidArgument):
    """Malformed JSON document; ``path`` locates the offending field."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def loads(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None


def load_file(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), str(path))


# -- parsing -------------------------------------------------------------

def _field(obj, key, path):
    if not isinstance(obj, dict):
        raise FormatError(path, "expected an object")
    if key not in obj:
        raise FormatError(path, f"missing field {key!r}")
    return obj[key]


def _amplitude(x, path):
    if isinstance(x, bool):
        raise FormatError(path, "amplitude must be a number or [re, im]")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
            isinstance(y, (int, float)) and not isinstance(y, bool) for y in x):
        return complex(x[0], x[1])
    raise FormatError(path, "amplitude must be a number or [re, im]")


def _ket_index(label, dims, path):
    if isinstance(label, str):
        if len(label) != len(dims) or not label.isdigit():
            raise FormatError(path, f"ket label {label!r} needs {len(dims)} digits")
        digits = [int(c) for c in label]
    elif isinstance(label, list) and all(isinstance(c, int) for c in label):
        digits = label
    else:
        raise FormatError(path, "ket label must be a digit string or a list of ints")
    try:
        return SystemShape(dims).ket_index(digits)
    except InvalidArgument as exc:
        raise FormatError(path, str(exc)) from None


def parse_vector(obj, dims, path="vector"):
    dims = tuple(dims)
    dim = int(np.prod(dims))
    if isinstance(obj, dict):
        ket = _field(obj, "ket", path)
        v = np.zeros(dim, dtype=np.complex128)
        if isinstance(ket, dict):
            for label, amp in ket.items():
                v[_ket_index(label, dims, f"{path}.ket[{label!r}]")] += \
                    _amplitude(amp, f"{path}.ket[{label!r}]")
        else:
            v[_ket_index(ket, dims, f"{path}.ket")] = 1.0
        return v
    if not isinstance(obj, list):
        raise FormatError(path, "vector must be an amplitude list or a ket object")
    if len(obj) != dim:
        raise FormatError(path, f"expected {dim} amplitudes, got {len(obj)}")
    return np.array([_amplitude(x, f"{path}[{i}]") for i, x in enumerate(obj)],
                    dtype=np.complex128)


def _parse_dims(doc, path=""):
    dims = _field(doc, "dims", path)
    where = f"{path}.dims" if path else "dims"
    if not isinstance(dims, list) or not dims or not all(
            isinstance(d, int) and not isinstance(d, bool) for d in dims):
        raise FormatError(where, "dims must be a nonempty list of integers")
    try:
        return SystemShape(tuple(dims))
    except InvalidArgument as exc:
        raise FormatError(where, str(exc)) from None


def _parse_tol(doc, tol):
    if tol is not None:
        return float(tol)
    t = doc.get("tol", DEFAULT_TOL) if isinstance(doc, dict) else DEFAULT_TOL
    if not isinstance(t, (int, float)) or isinstance(t, bool) or t <= 0:
        raise FormatError("tol", "tolerance must be a positive number")
    return float(t)


def _parse_span(vectors, dims, path, tol):
    if not isinstance(vectors, list) or not vectors:
        raise FormatError(path, "expected a nonempty list of vectors")
    vecs = [parse_vector(v, dims, f"{path}[{i}]") for i, v in enumerate(vectors)]
    return Subspace.from_spanning_vectors(vecs, tol)


def _parse_subset(obj, n, path):
    if not isinstance(obj, list) or not obj or not all(
            isinstance(p, int) and not isinstance(p, bool) for p in obj):
        raise FormatError(path, "subset must be a nonempty list of particle indices")
    if obj != sorted(set(obj)) or obj[0] < 0 or obj[-1] >= n:
        raise FormatError(path, f"subset {obj} must be strictly increasing within 0..{n - 1}")
    return tuple(obj)


def parse_subspace(doc, tol=None):
    """``{"dims": [...], "vectors": [...]}`` -> ``(SystemShape, Subspace)``."""
    shape = _parse_dims(doc)
    tol = _parse_tol(doc, tol)
    return shape, _parse_span(_field(doc, "vectors", ""), shape.dims, "vectors", tol)


def _parse_k(doc, n):
    k = _field(doc, "k", "")
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= n:
        raise FormatError("k", f"k must be an integer in 1..{n}")
    return k


def parse_rsv(doc, tol=None, path=""):
    """Reduced-space vector; components must be in lexicographic subset order."""
    shape = _parse_dims(doc, path)
    tol = _parse_tol(doc, tol)
    k = _parse_k(doc, shape.n)
    comps = _field(doc, "components", path)
    subsets = enumerate_subsets(shape.n, k)
    pre = f"{path}." if path else ""
    if not isinstance(comps, list) or len(comps) != len(subsets):
        raise FormatError(f"{pre}components", f"expected {len(subsets)} components")
    out = []
    for i, (sub, comp) in enumerate(zip(subsets, comps)):
        where = f"{pre}components[{i}]"
        particles = _parse_subset(_field(comp, "subset", where), shape.n, f"{where}.subset")
        if particles != sub.particles:
            raise FormatError(f"{where}.subset",
                              f"expected subset {list(sub.particles)} (lexicographic order), "
                              f"got {list(particles)}")
        sub_dims = tuple(shape.dims[p] for p in particles)
        out.append(_parse_span(_field(comp, "vectors", where), sub_dims,
                               f"{where}.vectors", tol))
    return ReducedSpaceVector(shape, k, tuple(out))


def parse_hamiltonian_parts(doc, tol=None):
    """``(shape, k, kernels)``; kernels may contain zero spaces (frustrated terms)."""
    shape = _parse_dims(doc)
    tol = _parse_tol(doc, tol)
    k = _parse_k(doc, shape.n)
    terms = _field(doc, "terms", "")
    if not isinstance(terms, list):
        raise FormatError("terms", "expected a list")
    parts = []
    for i, term in enumerate(terms):
        where = f"terms[{i}]"
        particles = _parse_subset(_field(term, "subset", where), shape.n, f"{where}.subset")
        if len(particles) > k:
            raise FormatError(f"{where}.subset", f"term exceeds locality k={k}")
        sub_dims = tuple(shape.dims[p] for p in particles)
        d = int(np.prod(sub_dims))
        if isinstance(term, dict) and "kernel_vectors" in term:
            ker = _parse_span(term["kernel_vectors"], sub_dims, f"{where}.kernel_vectors", tol)
        elif isinstance(term, dict) and "matrix" in term:
            mat = term["matrix"]
            if not isinstance(mat, list) or len(mat) != d:
                raise FormatError(f"{where}.matrix", f"expected {d} rows")
            rows = []
            for r, row in enumerate(mat):
                if not isinstance(row, list) or len(row) != d:
                    raise FormatError(f"{where}.matrix[{r}]", f"expected {d} entries")
                rows.append([_amplitude(x, f"{where}.matrix[{r}][{c}]")
                             for c, x in enumerate(row)])
            try:
                ker = ground_eigenspace(np.array(rows), tol)[1]
            except InvalidArgument as exc:
                raise FormatError(f"{where}.matrix", str(exc)) from None
        else:
            raise FormatError(where, "term needs 'kernel_vectors' or 'matrix'")
        parts.append((particles, ker))
    return shape, k, assemble_kernels(shape, k, parts, tol)


def parse_hamiltonian(doc, tol=None):
    shape, k, kers = parse_hamiltonian_parts(doc, tol)
    return LocalHamiltonian(shape, k, tuple(kers))


def parse_matrix_terms(doc):
    """``(shape, k, [(particles, matrix)])`` for documents with matrix terms only."""
    shape = _parse_dims(doc)
    k = _parse_k(doc, shape.n)
    out = []
    for i, term in enumerate(_field(doc, "terms", "")):
        where = f"terms[{i}]"
        particles = _parse_subset(_field(term, "subset", where), shape.n, f"{where}.subset")
        mat = _field(term, "matrix", where)
        out.append((particles, np.array([[_amplitude(x, f"{where}.matrix") for x in row]
                                         for row in mat])))
    return shape, k, out


# -- emitting ------------------------------------------------------------

def vector_to_json(v):
    return [[float(z.real), float(z.imag)] for z in np.asarray(v).ravel()]


def basis_to_json(s):
    return [vector_to_json(s.basis[:, j]) for j in range(s.rank)]


def subspace_to_json(shape, s):
    return {"dims": list(shape.dims), "rank": s.rank, "tol": s.tol,
            "vectors": basis_to_json(s)}


def rsv_to_json(v):
    return {
        "dims": list(v.shape.dims),
        "k": v.k,
        "tol": v.tol,
        "components": [{"subset": list(sub.particles), "rank": comp.rank,
                        "vectors": basis_to_json(comp)} for sub, comp in v],
    }


def hamiltonian_to_json(h):
    return {
        "dims": list(h.shape.dims),
        "k": h.k,
        "tol": h.tol,
        "terms": [{"subset": list(sub.particles), "kernel_vectors": basis_to_json(ker)}
                  for sub, ker in zip(h.subsets, h.kernels)],
    }


def _witness_to_json(w, shape=None):
    if w is None:
        return None
    if isinstance(w, ReducedSpaceVector):
        return rsv_to_json(w)
    if isinstance(w, Subspace):
        return subspace_to_json(shape, w)
    if isinstance(w, tuple):
        return [_witness_to_json(x, shape) for x in w]
    raise TypeError(f"cannot serialise witness of type {type(w).__name__}")


def verdict_to_json(verdict, shape=None, tol=None):
    out = {
        "status": verdict.status,
        "rule": verdict.rule,
        "witness": _witness_to_json(verdict.witness, shape),
        "samples_used": verdict.samples_used,
        "seed": verdict.seed,
    }
    if verdict.evidence:
        out["evidence"] = {k: list(v) if isinstance(v, tuple) else v
                           for k, v in verdict.evidence.items()}
    if tol is not None:
        out["tol"] = tol
    return out


def _parse_witness(obj, tol):
    if obj is None:
        return None
    if isinstance(obj, list):
        return tuple(_parse_witness(x, tol) for x in obj)
    if "components" in obj:
        return parse_rsv(obj, tol)
    return parse_subspace(obj, tol)[1]


def parse_verdict(doc, tol=None):
    w = _parse_witness(doc.get("witness"), tol)
    return AnalysisVerdict(doc["status"], doc.get("rule"), w, doc.get("samples_used", 0),
                           doc.get("seed"), dict(doc.get("evidence", {})))


def dumps(obj, indent=None):
    return json.dumps(obj, indent=indent)
