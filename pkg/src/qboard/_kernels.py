"""Compiled inner loop for orbit-representative rank censuses."""

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(nogil=True, cache=True)
def rank_census(m, n, q, add, mul, neg, inv, pos, nforest, nfree, out):
    """Rank histogram of every representative of every support.

    Row s of ``pos`` lists flat cell indices: ``nforest[s]`` forest cells
    (fixed to 1) followed by ``nfree[s]`` free cells in decreasing index
    order, each ranging over the nonzero field elements.  ``out[s, r]`` is
    incremented once per representative of rank r.

    Rows are inserted into an echelon basis one at a time; when the
    odometer only touches later rows, the basis of earlier rows is kept.
    """
    mat = np.zeros((m, n), np.int32)
    basis = np.zeros((m, n), np.int32)
    piv = np.zeros(m, np.int32)
    rank_after = np.zeros(m + 1, np.int32)
    vec = np.zeros(n, np.int32)
    digits = np.zeros(pos.shape[1] + 1, np.int32)
    for s in range(pos.shape[0]):
        nf = nforest[s]
        nz = nfree[s]
        mat[:, :] = 0
        for j in range(nf):
            k = pos[s, j]
            mat[k // n, k % n] = 1
        for j in range(nz):
            k = pos[s, nf + j]
            digits[j] = 1
            mat[k // n, k % n] = 1
        start = 0
        while True:
            r = rank_after[start]
            for i in range(start, m):
                for c in range(n):
                    vec[c] = mat[i, c]
                for b in range(r):
                    a = vec[piv[b]]
                    if a != 0:
                        f = neg[a]
                        for c in range(piv[b], n):
                            vec[c] = add[vec[c], mul[f, basis[b, c]]]
                p = -1
                for c in range(n):
                    if vec[c] != 0:
                        p = c
                        break
                if p >= 0:
                    iv = inv[vec[p]]
                    for c in range(n):
                        basis[r, c] = mul[iv, vec[c]]
                    piv[r] = p
                    r += 1
                rank_after[i + 1] = r
            out[s, r] += 1
            j = 0
            while j < nz:
                k = pos[s, nf + j]
                if digits[j] < q - 1:
                    digits[j] += 1
                    mat[k // n, k % n] = digits[j]
                    break
                digits[j] = 1
                mat[k // n, k % n] = 1
                j += 1
            if j == nz:
                break
            start = pos[s, nf + j] // n
    return out


@njit(cache=True)
def support_layout(m, n, cells, masks):
    """Spanning-forest layout of every support in ``masks``.

    ``cells`` holds the flat indices (row-major, increasing) of the cells the
    subset masks refer to; bit j of a mask selects ``cells[j]``.  Forest
    edges are chosen greedily in that order (Kruskal with unit weights).
    Returns (pos, nforest, nfree, components) in the layout expected by
    ``rank_census``; ``components`` counts isolated vertices too.
    """
    S = masks.shape[0]
    c = cells.shape[0]
    pos = np.zeros((S, max(c, 1)), np.int32)
    nforest = np.zeros(S, np.int32)
    nfree = np.zeros(S, np.int32)
    comps = np.zeros(S, np.int32)
    parent = np.zeros(m + n, np.int32)
    free = np.zeros(max(c, 1), np.int32)
    for s in range(S):
        for v in range(m + n):
            parent[v] = v
        mask = masks[s]
        nf = 0
        nz = 0
        k = m + n
        for j in range(c):
            if (mask >> j) & 1:
                cell = cells[j]
                a = cell // n
                b = m + cell % n
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a != b:
                    parent[a] = b
                    pos[s, nf] = cell
                    nf += 1
                    k -= 1
                else:
                    free[nz] = cell
                    nz += 1
        for j in range(nz):
            pos[s, nf + j] = free[nz - 1 - j]
        nforest[s] = nf
        nfree[s] = nz
        comps[s] = k
    return pos, nforest, nfree, comps
