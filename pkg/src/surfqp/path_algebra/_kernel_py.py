"""Pure-Python binomial elimination kernel (fallback for the compiled ``_kernel``).

Every path of length <= N gets a dense index:

* ``0 .. n_vertices-1`` are the trivial paths;
* a path of length ``L >= 1`` with first arrow ``a0`` and step bits ``s``
  (bit set when the next arrow is ``g`` of the previous one, clear when it
  is ``f``; first step is the most significant bit) has index
  ``base(L) + a0 * 2**(L-1) + s`` with ``base(L) = n_vertices + m * (2**(L-1) - 1)``.

Each row ``u . f(a) f2(a) . v - c_a u . g(a) ... g^(n-1)(a) . v`` of the
truncated Jacobian ideal is a binomial, so row reduction of their span is a
weighted union-find: ``x = c^e * parent(x)`` where ``e`` is an exponent
vector over the per-puncture scalars.  A class dies when it meets a path
longer than N, or when two routes give different weights (recorded as a
conflict exponent vector and decided exactly by the caller).
"""

import numpy as np


def path_base(n_vertices, n_arrows, length):
    if length == 0:
        return 0
    return n_vertices + n_arrows * ((1 << (length - 1)) - 1)


def total_paths(n_vertices, n_arrows, max_len):
    return n_vertices + n_arrows * ((1 << max_len) - 1)


def binomial_classes(f, g, n_of, orbit_of, n_vertices, max_len, n_scalars):
    """Union every binomial row of the truncated ideal.

    Returns ``(root, exps, dead, conflicts)``: ``root[i]`` is the class
    representative of path ``i``; ``exps[i]`` the exponent vector with
    ``path_i = c^exps[i] * root`` ; ``dead[r]`` flags classes containing a
    path beyond ``max_len``; ``conflicts`` lists ``(node, exponent tuple)``
    pairs meaning ``(c^d - 1) * class(node) = 0``.
    """
    f = [int(x) for x in f]
    g = [int(x) for x in g]
    n_of = [int(x) for x in n_of]
    orbit_of = [int(x) for x in orbit_of]
    m = len(f)
    N = int(max_len)
    total = total_paths(n_vertices, m, N)
    zero = (0,) * n_scalars
    parent = list(range(total))
    exps = [zero] * total
    size = [1] * total
    dead = bytearray(total)
    conflicts = []
    units = [tuple(1 if i == k else 0 for i in range(n_scalars)) for k in range(n_scalars)]

    def add(u, v):
        return tuple(a + b for a, b in zip(u, v))

    def sub(u, v):
        return tuple(a - b for a, b in zip(u, v))

    def find(x):
        chain = []
        while parent[x] != x:
            chain.append(x)
            x = parent[x]
        r = x
        for k in range(len(chain) - 2, -1, -1):
            y = chain[k]
            exps[y] = add(exps[y], exps[chain[k + 1]])
            parent[y] = r
        return r

    def union(x, y, k):
        # x = c_k * y
        rx = find(x)
        ex = exps[x] if x != rx else zero
        ry = find(y)
        ey = exps[y] if y != ry else zero
        if rx == ry:
            d = sub(sub(ex, ey), units[k])
            if any(d):
                conflicts.append((rx, d))
            return
        if size[rx] < size[ry]:
            exps[rx] = sub(add(units[k], ey), ex)
            parent[rx] = ry
            size[ry] += size[rx]
            dead[ry] |= dead[rx]
        else:
            exps[ry] = sub(sub(ex, ey), units[k])
            parent[ry] = rx
            size[rx] += size[ry]
            dead[rx] |= dead[ry]

    def encode(buf):
        L = len(buf)
        bits = 0
        for j in range(1, L):
            bits = (bits << 1) | (1 if buf[j] == g[buf[j - 1]] else 0)
        return path_base(n_vertices, m, L) + (buf[0] << (L - 1)) + bits

    for L in range(2, N + 1):
        base = path_base(n_vertices, m, L)
        span = 1 << (L - 1)
        for a0 in range(m):
            for bits in range(span):
                idx = base + a0 * span + bits
                buf = [a0]
                for j in range(1, L):
                    prev = buf[-1]
                    buf.append(g[prev] if (bits >> (L - 1 - j)) & 1 else f[prev])
                for j in range(1, L):
                    if (bits >> (L - 1 - j)) & 1:
                        continue
                    alpha = f[f[buf[j - 1]]]
                    n = n_of[alpha]
                    if L + n - 3 > N:
                        dead[find(idx)] = 1
                        continue
                    mid = []
                    y = g[alpha]
                    for _ in range(n - 1):
                        mid.append(y)
                        y = g[y]
                    union(idx, encode(buf[: j - 1] + mid + buf[j + 1:]), orbit_of[alpha])

    root = np.empty(total, dtype=np.int64)
    out_exps = np.zeros((total, max(n_scalars, 1)), dtype=np.int64)
    for x in range(total):
        r = find(x)
        root[x] = r
        if x != r and n_scalars:
            out_exps[x, :n_scalars] = exps[x]
    return root, out_exps[:, :n_scalars], np.frombuffer(bytes(dead), dtype=np.uint8).copy(), conflicts
