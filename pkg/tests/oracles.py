"""Independent reference implementations used to check the production paths.

Everything here is deliberately naive: double loops, exhaustive enumeration,
struct-based parsing. None of it shares code with the package.
"""

import itertools
import math
import struct


def cosine_bruteforce(src_rows, tgt_rows):
    """q x p nested-loop cosine; src_rows/tgt_rows are lists of lists."""
    out = []
    for y in tgt_rows:
        row = []
        for x in src_rows:
            dot = sum(a * b for a, b in zip(x, y))
            nx = math.sqrt(sum(a * a for a in x))
            ny = math.sqrt(sum(b * b for b in y))
            row.append(dot / (nx * ny))
        out.append(row)
    return out


def dot_bruteforce(src_rows, tgt_rows):
    return [[sum(a * b for a, b in zip(x, y)) for x in src_rows] for y in tgt_rows]


def topk_reference(values, column_kinds, target_pos, k, predicate_pos="VERB"):
    """Exhaustive re-derivation of the filtered top-k one-winner extraction.

    values: q x p list of lists; column_kinds[i] is "predicate", "argument",
    or None; target_pos[j] is the POS of the token owning target word-piece j.
    """
    q = len(values)
    winners = {}
    for i, kind in enumerate(column_kinds):
        if kind is None:
            continue
        scored = sorted(((values[j][i], -j, j) for j in range(q)), reverse=True)
        shortlist = [j for _, _, j in scored[:k]]
        survivors = [j for j in shortlist
                     if kind != "predicate" or target_pos[j] == predicate_pos]
        if not survivors:
            continue
        best = max(survivors, key=lambda j: (values[j][i], -j))
        winners[i] = best
    return winners


def transport_oracle_uniform(cost):
    """Exact OT cost for an n x n cost matrix with uniform marginals.

    The feasible polytope is the scaled Birkhoff polytope, so the optimum is
    attained at a permutation matrix; enumerate all of them.
    """
    n = len(cost)
    best = math.inf
    for perm in itertools.permutations(range(n)):
        total = sum(cost[perm[i]][i] for i in range(n)) / n
        best = min(best, total)
    return best


def transport_oracle_lp(cost, mu, nu):
    """LP solution via scipy for general marginals (cross-check only)."""
    import numpy as np
    from scipy.optimize import linprog

    cost = np.asarray(cost, dtype=float)
    q, p = cost.shape
    a_eq = []
    for j in range(q):
        row = np.zeros(q * p)
        row[j * p:(j + 1) * p] = 1
        a_eq.append(row)
    for i in range(p):
        row = np.zeros(q * p)
        row[i::p] = 1
        a_eq.append(row)
    b_eq = np.concatenate([nu, mu])
    res = linprog(cost.reshape(-1), A_eq=np.array(a_eq), b_eq=b_eq,
                  bounds=(0, None), method="highs")
    assert res.success
    return float(res.fun)


def read_cpeb_reference(data: bytes):
    """struct-only CPEB reader; returns {id: ((map, rows), (map, rows))}.

    Vectors come back as nested float tuples so comparisons are bit-exact
    after round-tripping through float32.
    """
    offset = 0

    def take(fmt):
        nonlocal offset
        size = struct.calcsize(fmt)
        vals = struct.unpack_from(fmt, data, offset)
        offset += size
        return vals

    magic = data[offset:offset + 4]
    offset += 4
    assert magic == b"CPEB", magic
    version, dim, count = take("<III")
    assert version == 1

    def matrix():
        (n,) = take("<I")
        idx = take(f"<{n}I")
        rows = tuple(take(f"<{dim}f") for _ in range(n))
        return idx, rows

    out = {}
    for _ in range(count):
        (id_len,) = take("<H")
        sid = data[offset:offset + id_len].decode("utf-8")
        offset += id_len
        out[sid] = (matrix(), matrix())
    assert offset == len(data)
    return out
