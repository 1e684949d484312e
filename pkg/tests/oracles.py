"""Brute-force reference implementations used to freeze expected values.

Nothing here imports the search code it checks; only plain data types.
"""

import itertools



def std_forward(i):
    return i % 2 == 0


def shrinking_values(M, target_orient):
    """Every value list of a shrinking map J_M -> (line with target_orient)."""
    m = len(target_orient)
    out = []

    def rec(vals, i):
        if i == M:
            if vals[-1] == m:
                out.append(tuple(vals))
            return
        y = vals[-1]
        if m - y > M - i:
            return
        rec(vals + [y], i + 1)
        if y < m and target_orient[y] == std_forward(i):
            rec(vals + [y + 1], i + 1)

    rec([0], 0)
    return out


def subdivisions(values, orient, M):
    return {tuple(values[k] for k in h) for h in shrinking_values(M, orient)}


def one_step_brute(fv, fo, gv, go, related, direction, extra=4):
    """Is there a pair of subdivisions onto a common J_M, M <= m + n + extra,
    with f_bar(x) -> g_bar(x) or equal (reversed for direction -1)?"""
    m, n = len(fo), len(go)
    for M in range(max(m, n), m + n + extra + 1):
        F = subdivisions(fv, fo, M)
        if not F:
            continue
        Gs = subdivisions(gv, go, M)
        for a in F:
            for b in Gs:
                if direction == 1:
                    ok = all(related(x, y) for x, y in zip(a, b))
                else:
                    ok = all(related(y, x) for x, y in zip(a, b))
                if ok:
                    return M
    return None


def weak_components(vertices, arrows):
    """Components by repeated flooding, returned as a set of frozensets."""
    adj = {v: set() for v in vertices}
    for u, w in arrows:
        adj[u].add(w)
        adj[w].add(u)
    left = set(vertices)
    comps = set()
    while left:
        v = left.pop()
        block = {v}
        todo = [v]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w not in block:
                    block.add(w)
                    todo.append(w)
        left -= block
        comps.add(frozenset(block))
    return comps


def all_vertex_maps(src_vertices, src_arrows, tgt_vertices, tgt_related):
    """Every digraph map by exhaustive product (tiny inputs only)."""
    src = list(src_vertices)
    for vals in itertools.product(list(tgt_vertices), repeat=len(src)):
        a = dict(zip(src, vals))
        if all(tgt_related(a[u], a[w]) for u, w in src_arrows):
            yield a
