"""Grid maps on products of standard lines and the loop-digraph duality.

A grid map stores its values as an integer array of vertex codes (indices
into ``target.vertices``), so validation, subdivision and the group
operations are plain numpy indexing.
"""

from __future__ import annotations

import warnings
from collections import deque
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core import Digraph, LineDigraph
from .errors import (
    BoundaryViolation,
    DimensionMismatch,
    DomainMismatch,
    IrreconcilableRepresentatives,
    MapViolation,
    ParityViolation,
    TruncationTooSmall,
)
from .lines import PathClass, PathMap, ShrinkingMap, constant_class


def _forward_mask(m: int) -> np.ndarray:
    """Standard orientation of J_m: arrow p points forward when p is even."""
    return (np.arange(m) % 2) == 0


def _to_codes(values, target: Digraph) -> np.ndarray:
    """Nested lists (lists are axes, anything else is a vertex) to codes."""
    def shape_of(x):
        if isinstance(x, list):
            inner = {shape_of(y) for y in x}
            if len(inner) != 1:
                raise DomainMismatch("ragged grid values")
            return (len(x),) + inner.pop()
        return ()

    shape = shape_of(values)
    codes = np.empty(shape, dtype=np.int64)
    for idx in np.ndindex(*shape):
        x = values
        for i in idx:
            x = x[i]
        if x not in target:
            raise MapViolation(idx, f"value {x!r} is not a target vertex")
        codes[idx] = target.index(x)
    return codes


def check_codes(codes: np.ndarray, target: Digraph, boundary: bool = True):
    """First problem with a code array as ``(kind, index, axis)`` or None."""
    rel = target.relation()
    if boundary:
        b = target.index(target.basepoint)
        for k in range(codes.ndim):
            for end in (0, codes.shape[k] - 1):
                face = np.take(codes, end, axis=k)
                bad = np.argwhere(face != b)
                if len(bad):
                    idx = list(bad[0])
                    idx.insert(k, end)
                    return ("boundary", tuple(int(i) for i in idx), k)
    for k in range(codes.ndim):
        m = codes.shape[k] - 1
        if m == 0:
            continue
        lo = np.take(codes, np.arange(m), axis=k)
        hi = np.take(codes, np.arange(1, m + 1), axis=k)
        fwd = _forward_mask(m).reshape([-1 if a == k else 1 for a in range(codes.ndim)])
        ok = np.where(fwd, rel[lo, hi], rel[hi, lo])
        bad = np.argwhere(~ok)
        if len(bad):
            return ("arrow", tuple(int(i) for i in bad[0]), k)
    return None


class GridMap:
    """A relative map (J_m1, dJ_m1) box ... box (J_mn, dJ_mn) -> (G, *).

    >>> from dgh.core import Digraph
    >>> G = Digraph("*a", [("*", "a")], basepoint="*")
    >>> f = validate_grid([["*", "*", "*"], ["*", "a", "*"], ["*", "*", "*"]], G)
    >>> f.lengths, f.value((1, 1))
    ((2, 2), 'a')
    """

    __slots__ = ("target", "codes", "_key")

    def __init__(self, target: Digraph, codes: np.ndarray, check: bool = True):
        codes = np.array(codes, dtype=np.int64)
        if codes.ndim == 0:
            raise DimensionMismatch("a grid map has dimension at least 1")
        if any(s < 2 for s in codes.shape):
            raise DomainMismatch("every axis needs length at least 1")
        if target.basepoint is None:
            raise MapViolation(None, "grid maps land in a based digraph")
        if check:
            problem = check_codes(codes, target)
            if problem is not None:
                kind, idx, axis = problem
                if kind == "boundary":
                    raise BoundaryViolation(idx)
                raise MapViolation(idx, "step is not an arrow or a point", axis=axis)
        codes.setflags(write=False)
        self.target = target
        self.codes = codes
        self._key = None

    @property
    def dimension(self) -> int:
        return self.codes.ndim

    @property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(s - 1 for s in self.codes.shape)

    def value(self, index):
        return self.target.vertices[int(self.codes[tuple(index)])]

    def to_lists(self):
        verts = self.target.vertices

        def rec(a):
            if a.ndim == 1:
                return [verts[int(c)] for c in a]
            return [rec(s) for s in a]
        return rec(self.codes)

    def key(self):
        if self._key is None:
            self._key = (self.codes.shape, self.codes.tobytes())
        return self._key

    def __eq__(self, other):
        return (isinstance(other, GridMap) and self.target == other.target
                and self.codes.shape == other.codes.shape and bool(np.array_equal(self.codes, other.codes)))

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"GridMap(lengths={self.lengths})"

    def is_constant(self) -> bool:
        return bool(np.all(self.codes == self.target.index(self.target.basepoint)))


def validate_grid(values, target: Digraph) -> GridMap:
    """Validate nested lists of vertices as a standard grid map."""
    return GridMap(target, _to_codes(values, target))


def grid_from_function(lengths: Sequence[int], fn: Callable, target: Digraph) -> GridMap:
    codes = np.empty(tuple(m + 1 for m in lengths), dtype=np.int64)
    for idx in np.ndindex(*codes.shape):
        codes[idx] = target.index(fn(idx))
    return GridMap(target, codes)


def constant_grid(target: Digraph, lengths: Sequence[int]) -> GridMap:
    b = target.index(target.basepoint)
    return GridMap(target, np.full(tuple(m + 1 for m in lengths), b, dtype=np.int64), check=False)


def unit(target: Digraph, n: int) -> GridMap:
    """The constant grid on J_2 box ... box J_2."""
    return constant_grid(target, (2,) * n)


def grid_from_loop(f: PathMap) -> GridMap:
    if not f.is_standard():
        raise DomainMismatch("grid maps use standard lines")
    return GridMap(f.target, np.array([f.target.index(v) for v in f.values]))


def loop_from_grid(f: GridMap) -> PathMap:
    if f.dimension != 1:
        raise DimensionMismatch("only 1-dimensional grids are loops")
    verts = f.target.vertices
    return PathMap(LineDigraph.standard(f.lengths[0]), f.target, [verts[int(c)] for c in f.codes], "loop")


# ---------------------------------------------------------------------------
# subdivision


class GridShrinkingMap:
    """Box product of shrinking maps between standard lines, one per axis."""

    __slots__ = ("per_axis",)

    def __init__(self, per_axis: Sequence[ShrinkingMap]):
        per_axis = tuple(per_axis)
        for h in per_axis:
            if not (h.source.is_standard() and h.target.is_standard()):
                raise DomainMismatch("grid subdivisions use standard lines on both sides")
        self.per_axis = per_axis

    @classmethod
    def identity(cls, lengths: Sequence[int]) -> "GridShrinkingMap":
        return cls([ShrinkingMap.identity(LineDigraph.standard(m)) for m in lengths])

    @property
    def source_lengths(self):
        return tuple(h.source.length for h in self.per_axis)

    @property
    def target_lengths(self):
        return tuple(h.target.length for h in self.per_axis)

    def then(self, other: "GridShrinkingMap") -> "GridShrinkingMap":
        return GridShrinkingMap([a.then(b) for a, b in zip(self.per_axis, other.per_axis)])

    def __eq__(self, other):
        return isinstance(other, GridShrinkingMap) and self.per_axis == other.per_axis

    def __hash__(self):
        return hash(self.per_axis)

    def __repr__(self):
        return f"GridShrinkingMap({[list(h.values) for h in self.per_axis]})"


def subdivide_grid(f: GridMap, h: GridShrinkingMap) -> GridMap:
    """The subdivision f . h."""
    if h.target_lengths != f.lengths:
        raise DomainMismatch(f"subdivision lands on {h.target_lengths}, grid has {f.lengths}")
    idx = np.ix_(*[np.array(hk.values) for hk in h.per_axis])
    return GridMap(f.target, f.codes[idx], check=False)


def subdivide_axis(f: GridMap, axis: int, h: ShrinkingMap) -> GridMap:
    per = [ShrinkingMap.identity(LineDigraph.standard(m)) for m in f.lengths]
    per[axis] = h
    return subdivide_grid(f, GridShrinkingMap(per))


def runs_to_keep(same: Sequence[bool]):
    """Slabs to keep and the collapsing map, given which neighbours are equal.

    ``same[i]`` says slab i equals slab i+1.
    """
    n = len(same) + 1
    keep = []
    hv = []
    level = 0
    start = 0
    bounds = [i + 1 for i, eq in enumerate(same) if not eq] + [n]
    nruns = len(bounds)
    for r, end in enumerate(bounds):
        size = end - start
        last = r == nruns - 1
        if (last and nruns > 1) or (size % 2 == 1 and not last):
            parts = (size,)
        else:
            parts = (1, size - 1)
        for p in parts:
            keep.append(start)
            hv.extend([level] * p)
            level += 1
        start = end
    return keep, hv


def slab_equalities(codes: np.ndarray, k: int) -> np.ndarray:
    others = tuple(a for a in range(codes.ndim) if a != k)
    d = np.diff(codes, axis=k) == 0
    return np.all(d, axis=others) if others else d


def reduce_codes(codes: np.ndarray):
    """Reduced code array and, per axis, the values of the collapsing map."""
    maps = []
    for k in range(codes.ndim):
        keep, hv = runs_to_keep(slab_equalities(codes, k).tolist())
        if len(keep) < codes.shape[k]:
            codes = np.take(codes, keep, axis=k)
        maps.append(hv)
    return codes, maps


def reduce_grid(f: GridMap) -> Tuple[GridMap, GridShrinkingMap]:
    """Canonical form c with f = c . h.

    Along each axis, runs of equal consecutive slabs shrink to one slab when
    the run has odd length or sits at the far end, and to two slabs
    otherwise, so every fiber but the last stays odd.
    """
    codes, hvs = reduce_codes(f.codes)
    maps = [ShrinkingMap(LineDigraph.standard(len(hv) - 1), LineDigraph.standard(hv[-1]), hv) for hv in hvs]
    return GridMap(f.target, codes, check=False), GridShrinkingMap(maps)


# ---------------------------------------------------------------------------
# group operations


def pad_axis(f: GridMap, axis: int, n: int) -> GridMap:
    """Extend along ``axis`` to length n with basepoint slabs."""
    m = f.lengths[axis]
    if n < m:
        raise DomainMismatch(f"cannot pad length {m} down to {n}")
    if n == m:
        return f
    b = f.target.index(f.target.basepoint)
    shape = list(f.codes.shape)
    shape[axis] = n - m
    extra = np.full(shape, b, dtype=np.int64)
    return GridMap(f.target, np.concatenate([f.codes, extra], axis=axis), check=False)


def pad_grid(f: GridMap, lengths: Sequence[int]) -> GridMap:
    for k, n in enumerate(lengths):
        f = pad_axis(f, k, n)
    return f


def _even(f: GridMap, strict: bool, what: str) -> GridMap:
    odd = [k for k, m in enumerate(f.lengths) if m % 2]
    if not odd:
        return f
    if strict:
        raise ParityViolation(f"{what} needs even axis lengths, got {f.lengths}")
    warnings.warn(f"{what}: padding odd axes {odd} by one basepoint slab", stacklevel=3)
    for k in odd:
        f = pad_axis(f, k, f.lengths[k] + 1)
    return f


def multiply(f: GridMap, g: GridMap, axis: int = 0, strict: bool = True) -> GridMap:
    """Concatenate f and g along ``axis`` after widening the other axes."""
    if f.dimension != g.dimension:
        raise DimensionMismatch(f"dimensions {f.dimension} and {g.dimension}")
    if f.target != g.target:
        raise DomainMismatch("grids land in different digraphs")
    if not 0 <= axis < f.dimension:
        raise DimensionMismatch(f"axis {axis} out of range")
    f = _even(f, strict, "multiply")
    g = _even(g, strict, "multiply")
    width = [max(a, b) for a, b in zip(f.lengths, g.lengths)]
    fw = list(width)
    gw = list(width)
    fw[axis] = f.lengths[axis]
    gw[axis] = g.lengths[axis]
    F = pad_grid(f, fw)
    Gm = pad_grid(g, gw)
    rest = np.take(Gm.codes, np.arange(1, Gm.codes.shape[axis]), axis=axis)
    return GridMap(f.target, np.concatenate([F.codes, rest], axis=axis), check=False)


def invert_axis(f: GridMap, axis: int = 0, strict: bool = True) -> GridMap:
    """Reflect i_axis to l - i_axis."""
    if f.lengths[axis] % 2:
        if strict:
            raise ParityViolation("inversion needs an even length along the axis")
        f = pad_axis(f, axis, f.lengths[axis] + 1)
    return GridMap(f.target, np.flip(f.codes, axis=axis).copy(), check=False)


# ---------------------------------------------------------------------------
# duality with the reduced loop digraph


class LoopClassGridMap:
    """An n-grid of loop classes, boundary at the constant class."""

    __slots__ = ("classes", "lengths")

    def __init__(self, classes: Dict[Tuple[int, ...], PathClass], lengths: Sequence[int]):
        self.classes = dict(classes)
        self.lengths = tuple(lengths)

    @property
    def dimension(self) -> int:
        return len(self.lengths)

    def __getitem__(self, idx):
        return self.classes[tuple(idx)]

    def indices(self):
        return list(np.ndindex(*[m + 1 for m in self.lengths]))

    def __eq__(self, other):
        return (isinstance(other, LoopClassGridMap) and self.lengths == other.lengths
                and self.classes == other.classes)

    def __hash__(self):
        return hash((self.lengths, tuple(sorted(self.classes.items()))))

    def __repr__(self):
        return f"LoopClassGridMap(lengths={self.lengths})"


def _neighbour_pairs(lengths):
    """(a, b, axis) for each grid arrow, oriented by the standard lines."""
    out = []
    for idx in np.ndindex(*[m + 1 for m in lengths]):
        for k, m in enumerate(lengths):
            if idx[k] < m:
                nxt = idx[:k] + (idx[k] + 1,) + idx[k + 1:]
                if idx[k] % 2 == 0:
                    out.append((idx, nxt, k))
                else:
                    out.append((nxt, idx, k))
    return out


def validate_loop_class_grid(w: LoopClassGridMap, related: Callable[[PathClass, PathClass], bool],
                             base) -> LoopClassGridMap:
    star = constant_class(base)
    for idx in w.indices():
        if any(i in (0, m) for i, m in zip(idx, w.lengths)) and w[idx] != star:
            raise BoundaryViolation(idx)
    for a, b, k in _neighbour_pairs(w.lengths):
        if not related(w[a], w[b]):
            raise MapViolation((a, b), "classes are not related by an arrow", axis=k)
    return w


def curry(f: GridMap, loops=None) -> LoopClassGridMap:
    """Read the last axis as loops: a -> <f(a, .)>.

    ``loops`` is an optional truncated reduced loop digraph; when given,
    every class must be one of its vertices and the result is validated
    against its arrows.
    """
    if f.dimension < 2:
        raise DimensionMismatch("curry needs dimension at least 2")
    verts = f.target.vertices
    m = f.lengths[-1]
    line = LineDigraph.standard(m)
    classes = {}
    for idx in np.ndindex(*f.codes.shape[:-1]):
        row = PathMap(line, f.target, [verts[int(c)] for c in f.codes[idx]], "loop")
        cls = row.key()
        if loops is not None and cls not in loops.digraph:
            raise TruncationTooSmall(cls)
        classes[idx] = cls
    w = LoopClassGridMap(classes, f.lengths[:-1])
    if loops is not None:
        validate_loop_class_grid(w, loops.digraph.related, f.target.basepoint)
    return w


def curry_loop(f: PathMap) -> PathClass:
    """Degree-zero case: a loop is sent to its class."""
    return f.key()


def uncurry(w: LoopClassGridMap, target: Digraph, max_length: int = 64,
            max_states: int = 2_000_000) -> GridMap:
    """Choose representatives of a common even length and stack them.

    Joint breadth-first search over the positions of every cell's minimal
    loop. At each step of the common standard line each cell either repeats
    its value or moves to the next value of its minimal loop (only across a
    minimal arrow of the matching direction). Cells joined by a grid arrow
    must stay related pointwise. The first time all cells reach their ends
    the run of positions is the list of representatives.
    """
    cells = w.indices()
    pos_of = {c: i for i, c in enumerate(cells)}
    vals = [w[c].values for c in cells]
    ors = [w[c].orientation for c in cells]
    ends = tuple(len(v) - 1 for v in vals)
    pairs = [(pos_of[a], pos_of[b]) for a, b, _ in _neighbour_pairs(w.lengths)]
    touching: List[List[Tuple[int, int]]] = [[] for _ in cells]
    for a, b in pairs:
        touching[a].append((a, b))
        touching[b].append((a, b))
    rel = target.related

    start = tuple(0 for _ in cells)
    for a, b in pairs:
        if not rel(vals[a][0], vals[b][0]):
            raise IrreconcilableRepresentatives("cells disagree at the start")
    parent = {(start, 0): None}
    depth = {(start, 0): 0}
    queue = deque([(start, 0)])
    goal = None
    while queue:
        node = queue.popleft()
        state, p = node
        if state == ends:
            goal = node
            break
        if depth[node] >= max_length:
            continue
        fwd = p == 0
        movable = [i for i in range(len(cells)) if state[i] < ends[i] and ors[i][state[i]] == fwd]
        for nxt in _successors(state, movable, touching, vals, rel):
            key = (nxt, 1 - p)
            if key not in parent:
                parent[key] = node
                depth[key] = depth[node] + 1
                if len(parent) > max_states:
                    raise IrreconcilableRepresentatives("state budget exceeded")
                queue.append(key)
    if goal is None:
        raise IrreconcilableRepresentatives(f"no common representatives within length {max_length}")
    trail = list(_trace(parent, goal))[::-1]
    # even and at least 2, so every row is a loop on a nontrivial J_M
    while (len(trail) - 1) % 2 or len(trail) < 3:
        trail.append(trail[-1])
    M = len(trail) - 1
    codes = np.empty(tuple(m + 1 for m in w.lengths) + (M + 1,), dtype=np.int64)
    for t, (state, _) in enumerate(trail):
        for i, c in enumerate(cells):
            codes[c + (t,)] = target.index(vals[i][state[i]])
    return GridMap(target, codes)


def _trace(parent, node):
    while node is not None:
        yield node
        node = parent[node]


def _successors(state, movable, touching, vals, rel):
    """Position tuples reachable in one step with every touched pair related.

    Cells are decided in order, moving before staying, so tuples that move
    more cells come first.
    """
    out = []
    cur = list(state)

    def rec(k):
        if k == len(movable):
            out.append(tuple(cur))
            return
        i = movable[k]
        for v in (state[i] + 1, state[i]):
            cur[i] = v
            if _partial_ok(i, cur, movable, k, touching, vals, rel):
                rec(k + 1)
        cur[i] = state[i]

    rec(0)
    return out


def _partial_ok(i, cur, order, k, touching, vals, rel):
    pending = set(order[k + 1:])
    for a, b in touching[i]:
        if a in pending or b in pending:
            continue
        if not rel(vals[a][cur[a]], vals[b][cur[b]]):
            return False
    return True
