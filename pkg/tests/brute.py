"""Literal Macaulay-style elimination used only as a test oracle.

Builds every product p . r . s of a Jacobian relation r with paths p, s
(len p + 2 + len s <= N), drops terms beyond N, and row-reduces over Q.
"""

from fractions import Fraction

from surfqp.linalg import rref
from surfqp.path_algebra import jacobian_relations


def all_paths(q, N):
    out = [(v, ()) for v in q.vertices]
    level = [(a,) for a in q.arrows]
    for _ in range(N):
        out += [(q.src[p[0]], p) for p in level]
        level = [p + (b,) for p in level for b in q.out_arrows[q.tgt[p[-1]]]]
    return out


def brute_quotient(q, c, N):
    """Return (index of paths, reduced pivot rows, dimension per degree of the quotient)."""
    paths = all_paths(q, N)
    index = {p: i for i, p in enumerate(paths)}
    by_end = {}
    for src, arr in paths:
        if arr:
            by_end.setdefault(q.tgt[arr[-1]], []).append(arr)
    by_start = {}
    for src, arr in paths:
        if arr:
            by_start.setdefault(src, []).append(arr)
    rows = []
    for rel in jacobian_relations(q, c):
        terms = list(rel.items())
        src = terms[0][0].source
        tgt = q.tgt[terms[0][0].arrows[-1]]
        lefts = [()] + by_end.get(src, [])
        rights = [()] + by_start.get(tgt, [])
        for u in lefts:
            for v in rights:
                if len(u) + 2 + len(v) > N:
                    continue
                row = {}
                for p, coef in terms:
                    arr = u + p.arrows + v
                    if len(arr) <= N:
                        row[index[(q.src[arr[0]], arr)]] = Fraction(coef)
                rows.append(row)
    piv = rref(rows)
    return index, piv


def in_row_space(piv, vec):
    row = dict(vec)
    for col in sorted(set(row) & set(piv)):
        if col in row:
            s = row[col]
            for k, v in piv[col].items():
                nv = row.get(k, 0) - s * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return not row
