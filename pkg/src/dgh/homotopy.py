"""Deciding and certifying F-homotopy.

The one-step question for paths has an exact answer: a pair of
subdivisions onto a common J_M is a walk in a finite automaton whose
states are (position in f, position in g, parity of the position in J_M),
so reachability of the final state settles it for every M at once.

For grids of dimension two and more no such bound is known, so the
one-step search and the multi-step certificate search stay budgeted and
report :class:`Exhausted` rather than ever claiming non-homotopy.
"""

from __future__ import annotations

import heapq
import functools
import itertools
import os
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .core import Digraph, DigraphMap, LineDigraph, vertex_key
from .errors import DimensionMismatch, DomainMismatch, MapViolation
from .grids import (
    GridMap,
    GridShrinkingMap,
    constant_grid,
    grid_from_loop,
    loop_from_grid,
    reduce_codes,
    runs_to_keep,
    reduce_grid,
    subdivide_grid,
)
from .lines import (
    PathClass,
    PathMap,
    ShrinkingMap,
    enumerate_shrinking_maps,
    subdivide,
)

FORWARD = 1   # f_bar(x) -> g_bar(x) or equal
BACKWARD = -1  # g_bar(x) -> f_bar(x) or equal


# ---------------------------------------------------------------------------
# budgets and outcomes


@dataclass(frozen=True)
class SearchBudget:
    max_states: int = 2_000_000
    max_axis_length: int = 12
    max_subdivision_factor: int = 3
    max_depth: int = 64

    def __post_init__(self):
        for name in ("max_states", "max_axis_length", "max_subdivision_factor", "max_depth"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


def default_budget(**overrides) -> SearchBudget:
    """Default budget; ``DGH_BUDGET_STATES`` overrides the state cap."""
    env = os.environ.get("DGH_BUDGET_STATES")
    kw = {}
    if env:
        kw["max_states"] = int(env)
    kw.update({k: v for k, v in overrides.items() if v is not None})
    return SearchBudget(**kw)


@dataclass
class Exhausted:
    """The search ran out of budget. Says nothing about non-homotopy."""

    reason: str
    stats: Dict = field(default_factory=dict)

    def __bool__(self):
        return False

    def __repr__(self):
        return f"EXHAUSTED({self.reason}, {self.stats})"


def is_exhausted(x) -> bool:
    return isinstance(x, Exhausted)


# ---------------------------------------------------------------------------
# witnesses


Mapish = Union[PathMap, GridMap]


def _as_grid_or_path(x):
    if isinstance(x, (PathMap, GridMap)):
        return x
    raise TypeError(f"expected a PathMap or GridMap, got {type(x).__name__}")


def _subdivide_any(f: Mapish, hs: Sequence[ShrinkingMap]) -> Mapish:
    if isinstance(f, PathMap):
        if len(hs) != 1:
            raise DimensionMismatch("a path takes one shrinking map")
        return subdivide(f, hs[0])
    return subdivide_grid(f, GridShrinkingMap(hs))


def _pointwise_values(f: Mapish):
    if isinstance(f, PathMap):
        return [f.target.index(v) for v in f.values]
    return f.codes


class OneStepWitness:
    """Subdivisions of both sides onto a common domain, related pointwise."""

    __slots__ = ("left", "right", "direction")

    def __init__(self, left: Sequence[ShrinkingMap], right: Sequence[ShrinkingMap], direction: int):
        self.left = tuple(left)
        self.right = tuple(right)
        if direction not in (FORWARD, BACKWARD):
            raise ValueError("direction is +1 or -1")
        self.direction = direction

    @property
    def common_lengths(self) -> Tuple[int, ...]:
        return tuple(h.source.length for h in self.left)

    def verify(self, f: Mapish, g: Mapish) -> bool:
        """Re-check everything from scratch; raise on any failure."""
        if tuple(h.source.length for h in self.right) != self.common_lengths:
            raise DomainMismatch("the two subdivisions have different domains")
        for h in self.left + self.right:
            if not h.source.is_standard():
                raise DomainMismatch("subdivisions must start from standard lines")
        fb = _subdivide_any(f, self.left)
        gb = _subdivide_any(g, self.right)
        ok, bad = direct_homotopy(fb, gb, self.direction)
        if not ok:
            raise MapViolation(bad, "pointwise condition fails")
        return True

    def __repr__(self):
        arrow = "=>" if self.direction == FORWARD else "<="
        return (f"OneStepWitness({arrow}, M={self.common_lengths}, "
                f"left={[list(h.values) for h in self.left]}, right={[list(h.values) for h in self.right]})")


def direct_homotopy(f: Mapish, g: Mapish, direction: int = FORWARD):
    """Pointwise test on identical domains.

    Returns ``(True, None)`` or ``(False, first_bad_index)``.
    """
    if type(f) is not type(g):
        raise DomainMismatch("compare two paths or two grids")
    if f.target != g.target:
        raise DomainMismatch("maps land in different digraphs")
    if isinstance(f, PathMap):
        if f.domain != g.domain:
            raise DomainMismatch("paths have different domains")
        T = f.target
        for i, (a, b) in enumerate(zip(f.values, g.values)):
            if not (T.related(a, b) if direction == FORWARD else T.related(b, a)):
                return False, i
        return True, None
    if f.codes.shape != g.codes.shape:
        raise DomainMismatch(f"grid shapes {f.lengths} and {g.lengths} differ")
    rel = f.target.relation()
    ok = rel[f.codes, g.codes] if direction == FORWARD else rel[g.codes, f.codes]
    if ok.all():
        return True, None
    return False, tuple(int(i) for i in np.argwhere(~ok)[0])


# ---------------------------------------------------------------------------
# the exact one-step decider for paths


def _line_dp(fv, fo, gv, go, rel: Callable, direction: int):
    """Shortest pair of shrinking maps J_M -> (f line), J_M -> (g line).

    ``fv``/``gv`` are value sequences, ``fo``/``go`` the orientations of the
    two lines. Returns the two value lists or None. Moves are tried in the
    order: advance both, advance f, advance g, stay.
    """
    m, n = len(fo), len(go)
    if direction == FORWARD:
        ok = lambda a, b: rel(fv[a], gv[b])  # noqa: E731
    else:
        ok = lambda a, b: rel(gv[b], fv[a])  # noqa: E731
    if not ok(0, 0):
        return None
    start = (0, 0, 0)
    parent = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        a, b, p = s
        if a == m and b == n:
            path = []
            while s is not None:
                path.append(s)
                s = parent[s]
            path.reverse()
            return [x[0] for x in path], [x[1] for x in path]
        fwd = p == 0
        can_a = a < m and fo[a] == fwd
        can_b = b < n and go[b] == fwd
        for da, db in ((1, 1), (1, 0), (0, 1), (0, 0)):
            if (da and not can_a) or (db and not can_b):
                continue
            na, nb = a + da, b + db
            t = (na, nb, 1 - p)
            if t in parent or not ok(na, nb):
                continue
            parent[t] = s
            queue.append(t)
    return None


def one_step_path_homotopy(f: PathMap, g: PathMap, direction: int = FORWARD) -> Optional[OneStepWitness]:
    """Exact decision of f ~_1 g (direction +1) or f ~_-1 g (direction -1).

    Searches every pair of subdivisions of f and g onto a common standard
    line. ``None`` is a proof that no such pair exists at any length.
    """
    if f.target != g.target:
        raise DomainMismatch("paths land in different digraphs")
    res = _line_dp(f.values, f.domain.orientation, g.values, g.domain.orientation,
                   f.target.related, direction)
    if res is None:
        return None
    a, b = res
    J = LineDigraph.standard(len(a) - 1)
    return OneStepWitness([ShrinkingMap(J, f.domain, a)], [ShrinkingMap(J, g.domain, b)], direction)


def class_arrow(c: PathClass, d: PathClass, G: Digraph, direction: int = FORWARD) -> bool:
    """Arrow <c> -> <d> in the reduced path digraph (for direction +1)."""
    return _line_dp(c.values, c.orientation, d.values, d.orientation, G.related, direction) is not None


def class_neighbours(c: PathClass, G: Digraph, direction: int = FORWARD, max_length: int = 12,
                     loop: bool = True) -> List[PathClass]:
    """Every class d with <c> -> <d> (direction +1) or <d> -> <c> (direction -1).

    Walks subdivisions of c's minimal path together with an arbitrary
    standard path g, recording g's minimal form as it grows. Only classes of
    minimal length at most ``max_length`` are produced; for ``loop`` they
    must end at the basepoint.
    """
    vals, orient = c.values, c.orientation
    ell = len(orient)
    base = G.basepoint
    pairs = {(v, v) for v in G.vertices} | set(G.arrows)
    if direction == FORWARD:
        ok = lambda x, y: (x, y) in pairs  # noqa: E731
    else:
        ok = lambda x, y: (y, x) in pairs  # noqa: E731
    g0 = vals[0] if base is None else base
    if not ok(vals[0], g0):
        return []
    start = (0, 0, (g0,), ())
    seen = {start}
    stack = [start]
    found = set()
    while stack:
        a, p, gv, go = stack.pop()
        cur = gv[-1]
        if a == ell and (not loop or cur == base):
            found.add(PathClass(gv, go))
        fwd = p == 0
        a_opts = [a]
        if a < ell and orient[a] == fwd:
            a_opts.append(a + 1)
        nbrs = G.out(cur) if fwd else G.into(cur)
        for na in a_opts:
            fa = vals[na]
            nexts = [(cur, gv, go)]
            if len(go) < max_length:
                for w in nbrs:
                    nexts.append((w, gv + (w,), go + (fwd,)))
            for w, ngv, ngo in nexts:
                if not ok(fa, w):
                    continue
                s = (na, 1 - p, ngv, ngo)
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
    return sorted(found)


# ---------------------------------------------------------------------------
# bounded one-step search for grids


def _axis_pairs(m: int, n: int, max_len: int):
    out = []
    for M in range(max(m, n), max_len + 1):
        J = LineDigraph.standard(M)
        hs = enumerate_shrinking_maps(J, LineDigraph.standard(m))
        ks = enumerate_shrinking_maps(J, LineDigraph.standard(n))
        out.extend((h, k) for h in hs for k in ks)
    return out


def one_step_grid_homotopy(f: GridMap, g: GridMap, budget: Optional[SearchBudget] = None,
                           direction: int = FORWARD):
    """Search subdivision pairs for f_bar => g_bar; witness or Exhausted."""
    budget = budget or default_budget()
    if f.dimension != g.dimension:
        raise DimensionMismatch("grids of different dimension")
    if f.target != g.target:
        raise DomainMismatch("grids land in different digraphs")
    rel = f.target.relation()
    per_axis = []
    for m, n in zip(f.lengths, g.lengths):
        cap = min(budget.max_axis_length, budget.max_subdivision_factor * max(m, n))
        per_axis.append(_axis_pairs(m, n, max(cap, m, n)))
    tried = 0
    for combo in itertools.product(*per_axis):
        tried += 1
        if tried > budget.max_states:
            return Exhausted("state budget", {"pairs_tried": tried - 1})
        fi = np.ix_(*[np.array(h.values) for h, _ in combo])
        gi = np.ix_(*[np.array(k.values) for _, k in combo])
        fb, gb = f.codes[fi], g.codes[gi]
        ok = rel[fb, gb] if direction == FORWARD else rel[gb, fb]
        if ok.all():
            return OneStepWitness([h for h, _ in combo], [k for _, k in combo], direction)
    return Exhausted("subdivision window", {"pairs_tried": tried})


# ---------------------------------------------------------------------------
# certificates


class HomotopyCertificate:
    """A chain f = f_0, f_1, ..., f_l = g of verified one-step moves."""

    __slots__ = ("source", "target_map", "steps", "stats")

    def __init__(self, source: Mapish, target_map: Mapish, steps: Sequence[Tuple[Mapish, OneStepWitness]],
                 stats: Optional[Dict] = None):
        self.source = source
        self.target_map = target_map
        self.steps = list(steps)
        self.stats = dict(stats or {})

    @property
    def maps(self) -> List[Mapish]:
        return [self.source] + [m for m, _ in self.steps]

    def verify(self) -> bool:
        cur = self.source
        for nxt, w in self.steps:
            w.verify(cur, nxt)
            cur = nxt
        if not _same(cur, self.target_map):
            raise MapViolation(None, "chain does not end at the claimed map")
        return True

    def __bool__(self):
        return True

    def __len__(self):
        return len(self.steps)

    def __repr__(self):
        return f"HomotopyCertificate({len(self.steps)} steps)"


def _same(a, b) -> bool:
    return type(a) is type(b) and a == b


def _loop_key(f: Mapish) -> PathClass:
    if isinstance(f, GridMap):
        f = loop_from_grid(f)
    return f.key()


def _connect_paths(a: PathMap, b: PathMap) -> Optional[OneStepWitness]:
    for d in (FORWARD, BACKWARD):
        w = one_step_path_homotopy(a, b, d)
        if w is not None:
            return w
    return None


def _bidirectional(start_key, goal_key, neighbours, priority, budget: SearchBudget):
    """Best-first search from both ends over hashable state keys.

    ``neighbours(key)`` yields successor keys and ``priority(key)`` orders
    each frontier (smaller first). Returns ``(keys, stats)`` with the chain
    of keys from start to goal, or :class:`Exhausted`.
    """
    t0 = time.perf_counter()
    if start_key == goal_key:
        return [start_key], {"states": 1, "expanded": 0, "seconds": 0.0}
    parents = [{start_key: (None, 0)}, {goal_key: (None, 0)}]
    heaps = [[(priority(start_key), 0, start_key)], [(priority(goal_key), 0, goal_key)]]
    counter = itertools.count(1)
    total = 2
    expanded = 0
    meet = None
    turn = 0

    def stats():
        return {"states": total, "expanded": expanded, "seconds": round(time.perf_counter() - t0, 3)}

    while meet is None:
        if not heaps[0] and not heaps[1]:
            return Exhausted("search space exhausted", stats())
        if not heaps[turn]:
            turn = 1 - turn
            continue
        mine, other, heap = parents[turn], parents[1 - turn], heaps[turn]
        _, _, key = heapq.heappop(heap)
        expanded += 1
        depth = mine[key][1]
        if depth < budget.max_depth:
            for nkey in neighbours(key):
                if nkey in mine:
                    continue
                mine[nkey] = (key, depth + 1)
                total += 1
                if nkey in other:
                    meet = nkey
                    break
                if total >= budget.max_states:
                    return Exhausted("state budget", stats())
                heapq.heappush(heap, (priority(nkey), next(counter), nkey))
        turn = 1 - turn

    def chain(par, key):
        keys = []
        while key is not None:
            keys.append(key)
            key = par[key][0]
        return keys

    keys = chain(parents[0], meet)[::-1] + chain(parents[1], meet)[1:]
    return keys, stats()


def explore(start_key, neighbours, budget: SearchBudget, stop=None):
    """Plain breadth-first search from one state.

    Stops when ``stop(key)`` is true, the frontier empties, or the state
    budget is spent. Returns a dict with ``reached`` (the stopping key or
    None), ``exhausted_space`` and counters.
    """
    t0 = time.perf_counter()
    seen = {start_key: 0}
    queue = deque([start_key])
    expanded = 0
    reached = start_key if stop is not None and stop(start_key) else None
    while queue and reached is None and len(seen) < budget.max_states:
        key = queue.popleft()
        expanded += 1
        if seen[key] >= budget.max_depth:
            continue
        for nkey in neighbours(key):
            if nkey in seen:
                continue
            seen[nkey] = seen[key] + 1
            if stop is not None and stop(nkey):
                reached = nkey
                break
            if len(seen) >= budget.max_states:
                break
            queue.append(nkey)
    return {
        "reached": reached,
        "exhausted_space": not queue and reached is None and len(seen) < budget.max_states,
        "states": len(seen),
        "expanded": expanded,
        "max_depth_seen": max(seen.values()),
        "seconds": round(time.perf_counter() - t0, 3),
    }


def _loop_certificate(f: Mapish, g: Mapish, budget: SearchBudget):
    as_grid = isinstance(f, GridMap)
    fp = loop_from_grid(f) if as_grid else f
    gp = loop_from_grid(g) if as_grid else g
    if fp.target != gp.target:
        raise DomainMismatch("loops land in different digraphs")
    if fp == gp:
        return HomotopyCertificate(f, g, [], {"states": 1})
    G = fp.target
    kf, kg = fp.key(), gp.key()

    adj, rel = G.adjacency(), G.relation()
    dtype = _code_dtype(G)
    verts = G.vertices

    def neighbours(k):
        # single-cell moves on the standard representative; each one is a
        # genuine class arrow, and enumerating every neighbour exactly grows
        # exponentially with the length cap on dense digraphs
        rep = k.representative(G, "loop")
        codes = np.array([G.index(v) for v in rep.values], dtype=dtype)
        if len(codes) < 3:
            codes = np.full(3, codes[0], dtype=dtype)
        seen = {k}
        for _, red, _ in _move_codes(codes, adj, rel, budget.max_axis_length, witnesses=True):
            c = PathMap(LineDigraph.standard(len(red) - 1), G, [verts[i] for i in red.tolist()], "loop").key()
            if c not in seen:
                seen.add(c)
                yield c

    res = _bidirectional(kf, kg, neighbours, lambda k: (k.length,), budget)
    if is_exhausted(res):
        return res
    classes, stats = res
    reps: List[PathMap] = [fp] + [k.representative(G, "loop") for k in classes[1:-1]] + [gp]
    steps = []
    for a, b in zip(reps, reps[1:]):
        w = _connect_paths(a, b)
        if w is None:
            raise RuntimeError("class arrow without a witness between representatives")
        steps.append((b, w))
    if as_grid:
        steps = [(grid_from_loop(m), w) for m, w in steps]
        steps[-1] = (g, steps[-1][1])
    cert = HomotopyCertificate(f, g, steps, stats)
    cert.verify()
    return cert


# -- grid moves ---------------------------------------------------------------


def _interior(shape):
    return itertools.product(*[range(1, s - 1) for s in shape])


def _cell_ok(codes, idx, w, rel):
    for k in range(codes.ndim):
        i = idx[k]
        lo = idx[:k] + (i - 1,) + idx[k + 1:]
        hi = idx[:k] + (i + 1,) + idx[k + 1:]
        a, b = codes[lo], codes[hi]
        # arrow at position i-1 points forward when i-1 is even
        if (i - 1) % 2 == 0:
            if not rel[a, w]:
                return False
        elif not rel[w, a]:
            return False
        if i % 2 == 0:
            if not rel[w, b]:
                return False
        elif not rel[b, w]:
            return False
    return True


def _elementary_subdivisions(lengths, max_len):
    """(axis, shrinking map, slab of new cells) for each one-slab tripling
    and for padding an axis by two basepoint slabs."""
    for k, m in enumerate(lengths):
        if m + 2 > max_len:
            continue
        src = LineDigraph.standard(m + 2)
        tgt = LineDigraph.standard(m)
        for i in range(m):
            hv = list(range(i + 1)) + [i, i] + list(range(i + 1, m + 1))
            yield k, ShrinkingMap(src, tgt, hv), i + 1
        hv = list(range(m + 1)) + [m, m]
        yield k, ShrinkingMap(src, tgt, hv), m + 1


def _code_dtype(T: Digraph):
    return np.uint8 if len(T) < 256 else np.int32


@functools.lru_cache(maxsize=65536)
def _keep_cached(same: Tuple[bool, ...]):
    keep, hv = runs_to_keep(same)
    return np.asarray(keep, dtype=np.intp), hv


@functools.lru_cache(maxsize=65536)
def _open_index(same: Tuple[bool, ...], axis: int, ndim: int):
    keep = _keep_cached(same)[0]
    return keep.reshape((-1,) + (1,) * (ndim - 1 - axis))


def _candidates(base: np.ndarray, adj: np.ndarray, rel: np.ndarray, axis=None, rows=None):
    """All (cell, new value, direction) single-cell changes that keep the
    grid a valid map, found at once with array operations. ``axis`` and
    ``rows`` (a contiguous range) restrict the changed cell along one axis."""
    ndim = base.ndim
    bounds = [(1, s - 1) for s in base.shape]
    if axis is not None:
        bounds[axis] = (rows[0], rows[-1] + 1)
    inner = tuple(slice(lo, hi) for lo, hi in bounds)
    u = base[inner]
    ok = np.ones(u.shape + (rel.shape[0],), dtype=bool)
    relT = rel.T
    for k in range(ndim):
        lo, hi = bounds[k]
        for off in (-1, 1):
            sl = list(inner)
            sl[k] = slice(lo + off, hi + off)
            nb = base[tuple(sl)]
            # the arrow between positions p and p+1 points forward when p is even
            pos = np.arange(lo, hi)
            fwd = (pos - 1) % 2 == 0 if off == -1 else pos % 2 != 0
            shape = [1] * ndim
            shape[k] = hi - lo
            fwd = fwd.reshape(shape + [1])
            ok &= np.where(fwd, rel[nb], relT[nb])
    offset = np.array([lo for lo, _ in bounds])
    out = []
    for d, m in ((FORWARD, ok & adj[u]), (BACKWARD, ok & adj.T[u])):
        hits = np.argwhere(m)
        hits[:, :-1] += offset
        for hit in hits.tolist():
            w = hit.pop()
            out.append((tuple(hit), w, d))
    return out


def _move_codes(codes: np.ndarray, adj: np.ndarray, rel: np.ndarray, max_len: int, witnesses: bool = False):
    """Single-cell moves on a reduced code array, directly or after one
    elementary subdivision. Yields ``(key, reduced, move)``; the move is a
    ``(left_axis, left_map, direction, right_maps)`` tuple when asked for,
    and ``reduced`` is only filled in then.
    """
    lengths = tuple(x - 1 for x in codes.shape)
    ndim = codes.ndim
    options = [(None, None, None)]
    options.extend(_elementary_subdivisions(lengths, max_len))
    for k, h, slab in options:
        if k is None:
            base = codes
        else:
            base = np.take(codes, h.values, axis=k)
        if k is None:
            cands = _candidates(base, adj, rel)
        else:
            rows = [slab - 1, slab] if slab == base.shape[k] - 2 else [slab]
            cands = _candidates(base, adj, rel, k, rows)
        if not cands:
            continue
        diffs = []
        for a in range(ndim):
            others = tuple(x for x in range(ndim) if x != a)
            diffs.append(np.sum(np.diff(base, axis=a) != 0, axis=others).tolist())
        same = [tuple(c == 0 for c in dc) for dc in diffs]
        base_keep = [_keep_cached(sm) for sm in same]
        red_base = base[np.ix_(*[kp for kp, _ in base_keep])]
        posmap = []
        for a, (kp, _) in enumerate(base_keep):
            pm = [-1] * base.shape[a]
            for j, i in enumerate(kp.tolist()):
                pm[i] = j
            posmap.append(pm)
        shape = red_base.shape
        flat = base.ravel().tolist()
        strides = [st // base.itemsize for st in base.strides]
        for idx, w, d in cands:
            lin = sum(i * st for i, st in zip(idx, strides))
            u = flat[lin]
            kept = []
            fast = True
            for a in range(ndim):
                i = idx[a]
                lo_n = flat[lin - strides[a]]
                hi_n = flat[lin + strides[a]]
                # differing-cell counts against both neighbouring slabs
                nl = diffs[a][i - 1] - (u != lo_n) + (w != lo_n) == 0
                nr = diffs[a][i] - (u != hi_n) + (w != hi_n) == 0
                flags = same[a]
                if nl != flags[i - 1] or nr != flags[i]:
                    fl = list(flags)
                    fl[i - 1], fl[i] = nl, nr
                    kept.append(tuple(fl))
                    fast = False
                else:
                    kept.append(flags)
                    if posmap[a][i] < 0:
                        fast = False
            if fast:
                pos = tuple(posmap[a][idx[a]] for a in range(ndim))
                red_base[pos] = w
                key = (shape, red_base.tobytes())
                red = red_base.copy() if witnesses else None
                red_base[pos] = u
            else:
                base_w = base.copy()
                base_w[idx] = w
                red = base_w[tuple(_open_index(fl, a, ndim) for a, fl in enumerate(kept))]
                key = (red.shape, red.tobytes())
            move = (k, h, d, [_keep_cached(fl)[1] for fl in kept]) if witnesses else None
            yield key, red, move


def grid_moves(s: GridMap, max_len: int = 12):
    """One-step moves out of the reduced form of s.

    Each move changes a single cell, either of s itself or of s after
    tripling one slab (or padding one axis by two basepoint slabs), then
    reduces. Yields ``(reduced GridMap, OneStepWitness)`` pairs where the
    witness relates s to the reduced result.
    """
    sr, sh = reduce_grid(s)
    if sr != s:
        raise DomainMismatch("grid_moves expects a reduced grid")
    T = s.target
    for _, red, move in _move_codes(s.codes, T.adjacency(), T.relation(), max_len, witnesses=True):
        yield GridMap(T, red.astype(np.int64), check=False), _move_witness(s.lengths, move)


def _move_witness(lengths, move) -> OneStepWitness:
    k, h, d, hvs = move
    left = list(GridShrinkingMap.identity(lengths).per_axis)
    if k is not None:
        left[k] = h
    right = [ShrinkingMap(LineDigraph.standard(len(hv) - 1), LineDigraph.standard(hv[-1]), hv) for hv in hvs]
    return OneStepWitness(left, right, d)


class _GridSpace:
    """State space of reduced grids into a fixed digraph, keyed by bytes."""

    def __init__(self, T: Digraph, budget: SearchBudget):
        self.T = T
        self.dtype = _code_dtype(T)
        self.adj = T.adjacency()
        self.rel = T.relation()
        self.base = T.index(T.basepoint)
        self.max_len = budget.max_axis_length

    def key(self, codes: np.ndarray):
        c = np.ascontiguousarray(codes, dtype=self.dtype)
        return (c.shape, c.tobytes())

    def decode(self, key) -> np.ndarray:
        shape, raw = key
        return np.frombuffer(raw, dtype=self.dtype).reshape(shape)

    def grid(self, key) -> GridMap:
        return GridMap(self.T, self.decode(key).astype(np.int64), check=False)

    def neighbours(self, key):
        for nkey, _, _ in _move_codes(self.decode(key), self.adj, self.rel, self.max_len):
            yield nkey

    def priority(self, key):
        c = self.decode(key)
        return (int(np.count_nonzero(c != self.base)), c.size)

    def witness(self, a, b) -> OneStepWitness:
        """Recover the move between two adjacent states of a found chain."""
        ca, cb = self.decode(a), self.decode(b)
        for nkey, _, move in _move_codes(ca, self.adj, self.rel, self.max_len, witnesses=True):
            if nkey == b:
                return _move_witness(tuple(x - 1 for x in ca.shape), move)
        for nkey, _, move in _move_codes(cb, self.adj, self.rel, self.max_len, witnesses=True):
            if nkey == a:
                w = _move_witness(tuple(x - 1 for x in cb.shape), move)
                # found from the other end: swap the sides and flip the direction
                return OneStepWitness(w.right, w.left, -w.direction)
        raise RuntimeError("lost a move while rebuilding the certificate")


def _grid_certificate(f: GridMap, g: GridMap, budget: SearchBudget):
    if f.dimension != g.dimension:
        raise DimensionMismatch("grids of different dimension")
    if f.target != g.target:
        raise DomainMismatch("grids land in different digraphs")
    if f == g:
        return HomotopyCertificate(f, g, [], {"states": 1})
    space = _GridSpace(f.target, budget)
    fr, fh = reduce_grid(f)
    gr, gh = reduce_grid(g)
    res = _bidirectional(space.key(fr.codes), space.key(gr.codes), space.neighbours, space.priority, budget)
    if is_exhausted(res):
        return res
    keys, stats = res
    steps: List[Tuple[Mapish, OneStepWitness]] = []
    if not _same(f, fr):
        steps.append((fr, OneStepWitness(GridShrinkingMap.identity(f.lengths).per_axis, fh.per_axis, FORWARD)))
    for a, b in zip(keys, keys[1:]):
        steps.append((space.grid(b), space.witness(a, b)))
    if not _same(g, gr):
        # g = g_r . gh, so subdividing the reduced form recovers g exactly
        steps.append((g, OneStepWitness(gh.per_axis, GridShrinkingMap.identity(g.lengths).per_axis, FORWARD)))
    cert = HomotopyCertificate(f, g, steps, stats)
    cert.verify()
    return cert


def explore_grid(f: GridMap, budget: Optional[SearchBudget] = None, stop=None):
    """Breadth-first exploration of the one-step moves out of f.

    ``stop`` receives each reduced GridMap; the default stops at constant maps.
    """
    budget = budget or default_budget()
    space = _GridSpace(f.target, budget)
    if stop is None:
        const = reduce_grid(constant_grid(f.target, f.lengths))[0]
        goal = space.key(const.codes)
        test = goal.__eq__
    else:
        test = lambda key: stop(space.grid(key))  # noqa: E731
    fr, _ = reduce_grid(f)
    out = explore(space.key(fr.codes), space.neighbours, budget, test)
    if out["reached"] is not None:
        out["reached"] = space.grid(out["reached"])
    return out


def f_homotopic(f: Mapish, g: Mapish, budget: Optional[SearchBudget] = None):
    """Certificate that f and g are F-homotopic, or :class:`Exhausted`.

    Loops (paths or 1-dimensional grids) search over subdivision classes and
    each step of the chain is re-derived by the exact one-step decider. Moves
    in every dimension change a single cell, possibly after an elementary
    subdivision; higher grids search over reduced grids directly.
    """
    budget = budget or default_budget()
    if isinstance(f, PathMap) or (isinstance(f, GridMap) and f.dimension == 1):
        return _loop_certificate(f, g, budget)
    return _grid_certificate(f, g, budget)


# ---------------------------------------------------------------------------
# components


class UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the least vertex as the root
            if vertex_key(rb) < vertex_key(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra


class Components:
    """Weak components with the least vertex as representative."""

    def __init__(self, G: Digraph):
        uf = UnionFind(G.vertices)
        for u, w in G.arrows:
            uf.union(u, w)
        self._rep = {v: uf.find(v) for v in G.vertices}
        blocks: Dict = {}
        for v in G.vertices:
            blocks.setdefault(self._rep[v], []).append(v)
        self.blocks = [tuple(blocks[r]) for r in sorted(blocks, key=vertex_key)]

    def representative(self, v):
        return self._rep[v]

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __repr__(self):
        return f"Components({len(self.blocks)})"


def pi0(G: Digraph) -> Components:
    return Components(G)


# ---------------------------------------------------------------------------
# induced maps on class inventories


def compose_grid(f: DigraphMap, g: Mapish) -> Mapish:
    """Post-compose a path or grid with a based digraph map."""
    if isinstance(g, PathMap):
        return PathMap(g.domain, f.target, [f(v) for v in g.values], g.kind)
    table = np.array([f.target.index(f(v)) for v in g.target.vertices], dtype=np.int64)
    return GridMap(f.target, table[g.codes])


def induced_on_classes(f: DigraphMap, source_reps: Sequence[Mapish], target_reps: Sequence[Mapish],
                       budget: Optional[SearchBudget] = None):
    """Send each source representative to the index of an F-homotopic target one.

    Entries are an int, or an :class:`Exhausted` when no identification was
    certified within budget (never silently merged).
    """
    if not f.based:
        raise MapViolation(None, "induced maps need a based digraph map")
    budget = budget or default_budget()
    out = []
    for r in source_reps:
        img = compose_grid(f, r)
        hit = None
        last = None
        for j, t in enumerate(target_reps):
            c = f_homotopic(img, t, budget)
            if not is_exhausted(c):
                hit = j
                break
            last = c
        out.append(hit if hit is not None else (last or Exhausted("no target classes")))
    return out
