# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled binomial elimination kernel. Same contract as ``_kernel_py``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t, uint8_t

cnp.import_array()


def path_base(n_vertices, n_arrows, length):
    if length == 0:
        return 0
    return n_vertices + n_arrows * ((1 << (length - 1)) - 1)


def total_paths(n_vertices, n_arrows, max_len):
    return n_vertices + n_arrows * ((1 << max_len) - 1)


cdef inline int64_t _find(int64_t x, int64_t[::1] parent, int32_t[:, ::1] exps,
                          int64_t[::1] chain, int ns) noexcept nogil:
    cdef int64_t depth = 0
    cdef int64_t r, y, z
    cdef int k, i
    while parent[x] != x:
        chain[depth] = x
        depth += 1
        x = parent[x]
    r = x
    k = <int>depth - 2
    while k >= 0:
        y = chain[k]
        z = chain[k + 1]
        for i in range(ns):
            exps[y, i] += exps[z, i]
        parent[y] = r
        k -= 1
    return r


cdef inline int64_t _encode(int64_t* buf, int L, int64_t* g, int64_t nv, int64_t m) noexcept nogil:
    cdef int64_t bits = 0
    cdef int j
    for j in range(1, L):
        bits = (bits << 1) | (1 if buf[j] == g[buf[j - 1]] else 0)
    return nv + m * ((<int64_t>1 << (L - 1)) - 1) + (buf[0] << (L - 1)) + bits


def binomial_classes(f, g, n_of, orbit_of, n_vertices, max_len, n_scalars):
    cdef int64_t[::1] F = np.ascontiguousarray(f, dtype=np.int64)
    cdef int64_t[::1] G = np.ascontiguousarray(g, dtype=np.int64)
    cdef int64_t[::1] NOF = np.ascontiguousarray(n_of, dtype=np.int64)
    cdef int64_t[::1] ORB = np.ascontiguousarray(orbit_of, dtype=np.int64)
    cdef int64_t m = F.shape[0]
    cdef int N = max_len
    cdef int ns = n_scalars
    cdef int64_t nv = n_vertices
    cdef int64_t total = total_paths(nv, m, N)

    parent_arr = np.arange(total, dtype=np.int64)
    exps_arr = np.zeros((total, max(ns, 1)), dtype=np.int32)
    size_arr = np.ones(total, dtype=np.int64)
    dead_arr = np.zeros(total, dtype=np.uint8)
    chain_arr = np.empty(total + 1, dtype=np.int64)
    cdef int64_t[::1] parent = parent_arr
    cdef int32_t[:, ::1] exps = exps_arr
    cdef int64_t[::1] size = size_arr
    cdef uint8_t[::1] dead = dead_arr
    cdef int64_t[::1] chain = chain_arr

    buf_arr = np.empty(2 * N + 8, dtype=np.int64)
    buf2_arr = np.empty(2 * N + 8, dtype=np.int64)
    diff_arr = np.zeros(max(ns, 1), dtype=np.int32)
    cdef int64_t[::1] buf = buf_arr
    cdef int64_t[::1] buf2 = buf2_arr
    cdef int32_t[::1] diff = diff_arr

    conflicts = []
    cdef int L, j, t, i, n, k, L2, pos, nonzero
    cdef int64_t base, span, a0, bits, idx, idx2, alpha, y, rx, ry, x

    for L in range(2, N + 1):
        base = nv + m * ((<int64_t>1 << (L - 1)) - 1)
        span = <int64_t>1 << (L - 1)
        for a0 in range(m):
            for bits in range(span):
                idx = base + a0 * span + bits
                buf[0] = a0
                for j in range(1, L):
                    if (bits >> (L - 1 - j)) & 1:
                        buf[j] = G[buf[j - 1]]
                    else:
                        buf[j] = F[buf[j - 1]]
                for j in range(1, L):
                    if (bits >> (L - 1 - j)) & 1:
                        continue
                    alpha = F[F[buf[j - 1]]]
                    n = <int>NOF[alpha]
                    L2 = L + n - 3
                    if L2 > N:
                        dead[_find(idx, parent, exps, chain, ns)] = 1
                        continue
                    pos = 0
                    for t in range(j - 1):
                        buf2[pos] = buf[t]
                        pos += 1
                    y = G[alpha]
                    for t in range(n - 1):
                        buf2[pos] = y
                        pos += 1
                        y = G[y]
                    for t in range(j + 1, L):
                        buf2[pos] = buf[t]
                        pos += 1
                    idx2 = _encode(&buf2[0], L2, &G[0], nv, m)
                    k = <int>ORB[alpha]
                    # idx = c_k * idx2
                    rx = _find(idx, parent, exps, chain, ns)
                    ry = _find(idx2, parent, exps, chain, ns)
                    if rx == ry:
                        nonzero = 0
                        for i in range(ns):
                            diff[i] = (exps[idx, i] if idx != rx else 0) - (exps[idx2, i] if idx2 != ry else 0)
                        diff[k] -= 1
                        for i in range(ns):
                            if diff[i] != 0:
                                nonzero = 1
                        if nonzero:
                            conflicts.append((rx, tuple(diff_arr[:ns].tolist())))
                        continue
                    for i in range(ns):
                        diff[i] = (exps[idx, i] if idx != rx else 0) - (exps[idx2, i] if idx2 != ry else 0)
                    diff[k] -= 1
                    # rx = c^(-diff) ry  and  ry = c^(diff) rx
                    if size[rx] < size[ry]:
                        for i in range(ns):
                            exps[rx, i] = -diff[i]
                        parent[rx] = ry
                        size[ry] += size[rx]
                        dead[ry] |= dead[rx]
                    else:
                        for i in range(ns):
                            exps[ry, i] = diff[i]
                        parent[ry] = rx
                        size[rx] += size[ry]
                        dead[rx] |= dead[ry]

    root_arr = np.empty(total, dtype=np.int64)
    cdef int64_t[::1] root = root_arr
    for x in range(total):
        rx = _find(x, parent, exps, chain, ns)
        root[x] = rx
        if x == rx:
            for i in range(ns):
                exps[x, i] = 0
    return root_arr, exps_arr[:, :ns].astype(np.int64), dead_arr, conflicts
