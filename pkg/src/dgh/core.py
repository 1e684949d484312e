"""Finite digraphs, digraph maps, pairs and products.

Every structure here is immutable once built. Vertices may be any hashable
value that :func:`vertex_key` can order (ints, strings, tuples of those, or
objects exposing ``sort_key()``), so product vertices are plain tuples and
two digraphs compare equal exactly when their vertex and arrow sets agree.
"""

from __future__ import annotations

from itertools import product as _iproduct
from typing import Callable, Dict, Hashable, Iterable, Iterator, Mapping, Optional, Tuple

import numpy as np

from .errors import (
    DomainMismatch,
    MapViolation,
    MissingVertex,
    SelfLoop,
    UnknownVertex,
    BasepointDropped,
)

Vertex = Hashable
Arrow = Tuple[Vertex, Vertex]


def vertex_key(v):
    """Total order on heterogeneous vertex identifiers."""
    if isinstance(v, bool):
        return (0, int(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, len(v), tuple(vertex_key(x) for x in v))
    sk = getattr(v, "sort_key", None)
    if sk is not None:
        return (3, sk())
    return (4, repr(v))


class Digraph:
    """A finite digraph without self-loops, optionally based.

    >>> G = Digraph(["a", "b"], [("a", "b")], basepoint="a")
    >>> G.has_arrow("a", "b"), G.has_arrow("b", "a")
    (True, False)
    """

    __slots__ = ("vertices", "arrows", "basepoint", "_index", "_out", "_in", "_hash", "_adj")

    def __init__(self, vertices: Iterable[Vertex], arrows: Iterable[Arrow] = (),
                 basepoint: Optional[Vertex] = None):
        verts = sorted(set(vertices), key=vertex_key)
        index = {v: i for i, v in enumerate(verts)}
        arrs = set()
        for u, w in arrows:
            if u == w:
                raise SelfLoop(u)
            if u not in index or w not in index:
                raise UnknownVertex(f"arrow {u!r} -> {w!r} uses an undeclared vertex")
            arrs.add((u, w))
        if basepoint is not None and basepoint not in index:
            raise UnknownVertex(f"basepoint {basepoint!r} is not a vertex")
        out: Dict[Vertex, set] = {v: set() for v in verts}
        inn: Dict[Vertex, set] = {v: set() for v in verts}
        for u, w in arrs:
            out[u].add(w)
            inn[w].add(u)
        self.vertices: Tuple[Vertex, ...] = tuple(verts)
        self.arrows = frozenset(arrs)
        self.basepoint = basepoint
        self._index = index
        self._out = {v: frozenset(s) for v, s in out.items()}
        self._in = {v: frozenset(s) for v, s in inn.items()}
        self._hash = None
        self._adj = None

    # -- queries ---------------------------------------------------------
    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def index(self, v) -> int:
        return self._index[v]

    def out(self, v) -> frozenset:
        return self._out[v]

    def into(self, v) -> frozenset:
        return self._in[v]

    def has_arrow(self, u, w) -> bool:
        return w in self._out.get(u, ())

    def related(self, u, w) -> bool:
        """True when u = w or u -> w (the arrow-or-equal rule)."""
        return u == w or w in self._out.get(u, ())

    def adjacent(self, u, w) -> bool:
        return w in self._out.get(u, ()) or u in self._out.get(w, ())

    def sorted_arrows(self):
        return sorted(self.arrows, key=lambda a: (vertex_key(a[0]), vertex_key(a[1])))

    def adjacency(self) -> np.ndarray:
        """Boolean matrix ``A[i, j]`` set when vertex i -> vertex j."""
        if self._adj is None:
            n = len(self.vertices)
            a = np.zeros((n, n), dtype=bool)
            for u, w in self.arrows:
                a[self._index[u], self._index[w]] = True
            a.setflags(write=False)
            self._adj = a
        return self._adj

    def relation(self) -> np.ndarray:
        """Adjacency with the diagonal switched on."""
        r = self.adjacency() | np.eye(len(self.vertices), dtype=bool)
        return r

    # -- derived values ----------------------------------------------------
    def with_basepoint(self, b) -> "Digraph":
        return Digraph(self.vertices, self.arrows, basepoint=b)

    def unbased(self) -> "Digraph":
        return Digraph(self.vertices, self.arrows)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self.vertices == other.vertices and self.arrows == other.arrows
                and self.basepoint == other.basepoint)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vertices, self.arrows, self.basepoint))
        return self._hash

    def __repr__(self) -> str:
        base = f", base={self.basepoint!r}" if self.basepoint is not None else ""
        return f"Digraph({len(self.vertices)} vertices, {len(self.arrows)} arrows{base})"


def point(v: Vertex = "*") -> Digraph:
    """The one-point digraph, based at its only vertex."""
    return Digraph([v], [], basepoint=v)


# ---------------------------------------------------------------------------
# maps


class DigraphMap:
    """A validated digraph map. Build through :func:`validate_map`."""

    __slots__ = ("source", "target", "assignment", "based")

    def __init__(self, source: Digraph, target: Digraph, assignment: Mapping, based: bool):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        self.based = based

    def __call__(self, v):
        return self.assignment[v]

    def __eq__(self, other):
        if not isinstance(other, DigraphMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.assignment == other.assignment)

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.assignment[v] for v in self.source.vertices)))

    def __repr__(self):
        return f"DigraphMap({self.source!r} -> {self.target!r})"

    def then(self, g: "DigraphMap") -> "DigraphMap":
        """Composite ``g . self``."""
        if g.source != self.target:
            raise DomainMismatch("composition needs matching target and source")
        return validate_map({v: g(self(v)) for v in self.source.vertices},
                            self.source, g.target, based=self.based and g.based)


def first_violation(assignment: Mapping, source: Digraph, target: Digraph):
    """The least arrow whose image breaks the rule, or None."""
    rel = target.related
    if all(rel(assignment[u], assignment[w]) for u, w in source.arrows):
        return None
    for u, w in source.sorted_arrows():
        if not target.related(assignment[u], assignment[w]):
            return (u, w)
    return None


def validate_map(assignment: Mapping, source: Digraph, target: Digraph,
                 based: bool = False) -> DigraphMap:
    """Check the arrow-or-equal rule and return a :class:`DigraphMap`.

    Raises :class:`MissingVertex` when the assignment is partial and
    :class:`MapViolation` naming the first offending arrow otherwise.
    """
    for v in source.vertices:
        if v not in assignment:
            raise MissingVertex(v)
        if assignment[v] not in target:
            raise UnknownVertex(f"image {assignment[v]!r} of {v!r} is not a target vertex")
    bad = first_violation(assignment, source, target)
    if bad is not None:
        raise MapViolation(bad)
    if based:
        if source.basepoint is None or target.basepoint is None:
            raise MapViolation(None, "a based map needs based source and target")
        if assignment[source.basepoint] != target.basepoint:
            raise MapViolation(source.basepoint, "basepoint is not preserved")
    return DigraphMap(source, target, {v: assignment[v] for v in source.vertices}, based)


def identity_map(G: Digraph) -> DigraphMap:
    return validate_map({v: v for v in G.vertices}, G, G, based=G.basepoint is not None)


def constant_map(source: Digraph, target: Digraph, value=None) -> DigraphMap:
    value = target.basepoint if value is None else value
    return validate_map({v: value for v in source.vertices}, source, target,
                        based=source.basepoint is not None and value == target.basepoint)


def iter_maps(source: Digraph, target: Digraph, based: bool = False,
              fixed: Optional[Mapping] = None) -> Iterator[Dict]:
    """Enumerate every digraph map ``source -> target`` as a dict.

    Plain backtracking in source vertex order; ``fixed`` pins some values.
    """
    order = list(source.vertices)
    pins = dict(fixed or {})
    if based:
        pins[source.basepoint] = target.basepoint
    candidates = list(target.vertices)
    assignment: Dict = {}

    def ok(v, x):
        for w in source.out(v):
            if w in assignment and not target.related(x, assignment[w]):
                return False
        for w in source.into(v):
            if w in assignment and not target.related(assignment[w], x):
                return False
        return True

    def rec(k):
        if k == len(order):
            yield dict(assignment)
            return
        v = order[k]
        choices = [pins[v]] if v in pins else candidates
        for x in choices:
            if ok(v, x):
                assignment[v] = x
                yield from rec(k + 1)
                del assignment[v]

    yield from rec(0)


# ---------------------------------------------------------------------------
# line digraphs


class LineDigraph:
    """Vertices 0..m with one arrow between i and i+1.

    ``orientation[i]`` is True when the arrow points i -> i+1.

    >>> LineDigraph.standard(3).orientation
    (True, False, True)
    """

    __slots__ = ("orientation",)

    def __init__(self, orientation: Iterable[bool]):
        self.orientation = tuple(bool(b) for b in orientation)

    @classmethod
    def standard(cls, m: int) -> "LineDigraph":
        return cls(i % 2 == 0 for i in range(m))

    @property
    def length(self) -> int:
        return len(self.orientation)

    def forward(self, i: int) -> bool:
        return self.orientation[i]

    def is_standard(self) -> bool:
        return all(o == (i % 2 == 0) for i, o in enumerate(self.orientation))

    def reversed(self) -> "LineDigraph":
        """The line read from the far end (vertex i becomes m - i)."""
        return LineDigraph(not o for o in reversed(self.orientation))

    def arrows(self):
        for i, o in enumerate(self.orientation):
            yield (i, i + 1) if o else (i + 1, i)

    def digraph(self, basepoint: Optional[int] = None) -> Digraph:
        return Digraph(range(self.length + 1), self.arrows(), basepoint=basepoint)

    def boundary_pair(self) -> "DigraphPair":
        """(I, dI) where dI is the discrete pair of endpoints."""
        G = self.digraph()
        return DigraphPair(G, Digraph({0, self.length}, []))

    def __eq__(self, other):
        return isinstance(other, LineDigraph) and self.orientation == other.orientation

    def __hash__(self):
        return hash(self.orientation)

    def __repr__(self):
        s = "0"
        for i, o in enumerate(self.orientation):
            s += ("->" if o else "<-") + str(i + 1)
        return f"LineDigraph({s})"


def standard_line(m: int) -> LineDigraph:
    return LineDigraph.standard(m)


# ---------------------------------------------------------------------------
# pairs and products


class DigraphPair:
    __slots__ = ("ambient", "sub")

    def __init__(self, ambient: Digraph, sub: Digraph):
        if not set(sub.vertices) <= set(ambient.vertices):
            raise DomainMismatch("sub-digraph has vertices outside the ambient digraph")
        if not sub.arrows <= ambient.arrows:
            raise DomainMismatch("sub-digraph has arrows outside the ambient digraph")
        self.ambient = ambient
        self.sub = sub

    def __eq__(self, other):
        return isinstance(other, DigraphPair) and (self.ambient, self.sub) == (other.ambient, other.sub)

    def __hash__(self):
        return hash((self.ambient, self.sub))

    def __repr__(self):
        return f"DigraphPair({self.ambient!r}, sub={self.sub!r})"


def _product_base(G: Digraph, H: Digraph):
    if G.basepoint is not None and H.basepoint is not None:
        return (G.basepoint, H.basepoint)
    return None


def _box_arrows(G: Digraph, H: Digraph):
    for (u, w) in G.arrows:
        for y in H.vertices:
            yield ((u, y), (w, y))
    for x in G.vertices:
        for (u, w) in H.arrows:
            yield ((x, u), (x, w))


def box_product(G: Digraph, H: Digraph) -> Digraph:
    """Arrows move in exactly one coordinate."""
    verts = list(_iproduct(G.vertices, H.vertices))
    return Digraph(verts, _box_arrows(G, H), basepoint=_product_base(G, H))


def cartesian_product(G: Digraph, H: Digraph) -> Digraph:
    """Box product plus the diagonal arrows (v->v', w->w')."""
    verts = list(_iproduct(G.vertices, H.vertices))
    arrows = list(_box_arrows(G, H))
    for (u, w) in G.arrows:
        for (x, y) in H.arrows:
            arrows.append(((u, x), (w, y)))
    return Digraph(verts, arrows, basepoint=_product_base(G, H))


def relative_box_product(p: DigraphPair, q: DigraphPair) -> DigraphPair:
    """(G, A) box (H, B) = (G box H, A box H  union  G box B)."""
    amb = box_product(p.ambient, q.ambient)
    left = box_product(p.sub, q.ambient)
    right = box_product(p.ambient, q.sub)
    sub = Digraph(set(left.vertices) | set(right.vertices), left.arrows | right.arrows)
    return DigraphPair(amb, sub)


def induced_subdigraph(G: Digraph, keep) -> Digraph:
    """Restrict G to the vertices accepted by ``keep`` (a predicate or a set)."""
    pred: Callable = keep if callable(keep) else (lambda v, s=set(keep): v in s)
    verts = [v for v in G.vertices if pred(v)]
    vs = set(verts)
    if G.basepoint is not None and G.basepoint not in vs:
        raise BasepointDropped(f"basepoint {G.basepoint!r} is not kept")
    arrows = [(u, w) for (u, w) in G.arrows if u in vs and w in vs]
    return Digraph(verts, arrows, basepoint=G.basepoint)


def relabel(G: Digraph, mapping: Mapping) -> Digraph:
    """Apply an injective vertex renaming."""
    base = mapping[G.basepoint] if G.basepoint is not None else None
    return Digraph((mapping[v] for v in G.vertices),
                   ((mapping[u], mapping[w]) for u, w in G.arrows), basepoint=base)


def is_isomorphism(f: Mapping, G: Digraph, H: Digraph) -> bool:
    """True when the vertex map f is a bijection carrying arrows onto arrows."""
    if len(G) != len(H) or len(G.arrows) != len(H.arrows):
        return False
    image = {f[v] for v in G.vertices}
    if image != set(H.vertices):
        return False
    return {(f[u], f[w]) for u, w in G.arrows} == set(H.arrows)
