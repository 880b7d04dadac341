"""Pure numpy implementations of the index-arithmetic kernels.

These are the fallback used when the compiled ``_ckernels`` extension is
not available.  Both backends must agree bit-for-bit on integer outputs and
to rounding on complex outputs.
"""
import numpy as np


def embed_index_map(dims, subset):
    """Full-space index of every (subset ket, complement ket) pair.

    Returns an int64 array of shape ``(d_subset, d_complement)``.
    """
    dims = tuple(int(d) for d in dims)
    subset = tuple(int(p) for p in subset)
    comp = tuple(p for p in range(len(dims)) if p not in subset)
    d_s = int(np.prod([dims[p] for p in subset], dtype=np.int64))
    d_c = int(np.prod([dims[p] for p in comp], dtype=np.int64))
    full = np.arange(int(np.prod(dims, dtype=np.int64)), dtype=np.int64)
    return full.reshape(dims).transpose(subset + comp).reshape(d_s, d_c).copy()


def partial_trace(op, index_map):
    op = np.asarray(op, dtype=np.complex128)
    rows = index_map[:, None, :]
    cols = index_map[None, :, :]
    return op[rows, cols].sum(axis=2)


def gather_reduced(basis, index_map):
    """Matrix whose column span is the range of the reduced operator.

    For orthonormal columns ``B`` of a subspace, column ``(c, i)`` of the
    result is the partial inner product of complement ket ``c`` with
    basis vector ``i``.
    """
    basis = np.asarray(basis, dtype=np.complex128)
    d_s, d_c = index_map.shape
    return basis[index_map, :].reshape(d_s, d_c * basis.shape[1])


def accumulate_extended(acc, proj, index_map):
    """In place: ``acc += proj (x) identity`` with particles interleaved."""
    d_s, d_c = index_map.shape
    for c in range(d_c):
        idx = index_map[:, c]
        acc[np.ix_(idx, idx)] += proj
    return acc
