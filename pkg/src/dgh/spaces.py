"""Truncated path and loop digraphs, pullbacks and the Puppe maps.

Every structure here is cut off at a maximal minimal length ``L``. Inside
that window the arrow relation is exact; anything that would need a longer
class raises :class:`TruncationTooSmall` rather than being dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .core import Digraph, DigraphMap, LineDigraph, iter_maps, validate_map, vertex_key
from .errors import DomainMismatch, MapViolation, SizeOverflow, TruncationMismatch, TruncationTooSmall
from .grids import GridMap, LoopClassGridMap, curry, curry_loop, grid_from_function
from .homotopy import (
    FORWARD,
    SearchBudget,
    class_arrow,
    class_neighbours,
    default_budget,
    explore_grid,
    pi0,
)
from .lines import PathClass, PathMap, constant_class, concatenate, invert

DEFAULT_MAX_VERTICES = 200_000


# ---------------------------------------------------------------------------
# reduced path and loop digraphs


def minimal_paths(G: Digraph, L: int, loops: bool = False,
                  max_vertices: int = DEFAULT_MAX_VERTICES) -> List[PathClass]:
    """All minimal paths from the basepoint of length at most L, sorted."""
    if G.basepoint is None:
        raise MapViolation(None, "paths start at a basepoint")
    if L < 0:
        raise ValueError("L must be non-negative")
    base = G.basepoint
    out = []
    stack = [((base,), ())]
    count = 0
    while stack:
        vals, orient = stack.pop()
        count += 1
        if count > max_vertices:
            raise SizeOverflow(f"more than {max_vertices} minimal paths of length <= {L}")
        if not loops or vals[-1] == base:
            out.append(PathClass(vals, orient))
        if len(orient) == L:
            continue
        u = vals[-1]
        for w in G.out(u):
            stack.append((vals + (w,), orient + (True,)))
        for w in G.into(u):
            stack.append((vals + (w,), orient + (False,)))
    out.sort()
    return out


@dataclass(frozen=True)
class TruncatedReducedPathDigraph:
    """Subdivision classes of paths from the basepoint, minimal length <= L."""

    base: Digraph
    max_min_length: int
    digraph: Digraph
    loops: bool = False

    @property
    def vertices(self) -> Tuple[PathClass, ...]:
        return self.digraph.vertices

    @property
    def basepoint(self) -> PathClass:
        return self.digraph.basepoint

    def __contains__(self, c) -> bool:
        return c in self.digraph

    def __len__(self) -> int:
        return len(self.digraph)

    def evaluation_map(self) -> DigraphMap:
        """e: <lambda> -> lambda(end), validated as a based digraph map."""
        assignment = {c: evaluation(c) for c in self.vertices}
        return validate_map(assignment, self.digraph, self.base, based=True)


class TruncatedReducedLoopDigraph(TruncatedReducedPathDigraph):
    """Loop classes only; a full sub-digraph of the path version."""


MATRIX_LIMIT = 8000


def _all_pairs_arrows(G: Digraph, classes: List[PathClass]) -> np.ndarray:
    """Arrow matrix for a prefix-closed list of classes.

    Runs the alignment search for every pair at once: ``S[p][u, v]`` says
    that prefixes u and v can be walked together up to a position of parity
    p. A step may extend either prefix by one value (when the arrow has the
    orientation the standard line has there), both, or neither.
    """
    n = len(classes)
    pos = {c: i for i, c in enumerate(classes)}
    parent = np.full(n, -1)
    last = np.zeros(n, dtype=bool)
    for i, c in enumerate(classes):
        if c.length:
            parent[i] = pos[PathClass(c.values[:-1], c.orientation[:-1])]
            last[i] = c.orientation[-1]
    rel = G.relation()
    codes = np.array([G.index(c.end()) for c in classes])
    ok = rel[np.ix_(codes, codes)]
    grow = [np.flatnonzero((parent >= 0) & (last == fwd)) for fwd in (True, False)]
    S = [np.zeros((n, n), dtype=bool), np.zeros((n, n), dtype=bool)]
    root = pos[constant_class(G.basepoint)]
    S[0][root, root] = ok[root, root]
    changed = True
    while changed:
        changed = False
        for p in (0, 1):
            cols = grow[p]
            T = S[p].copy()
            T[:, cols] |= S[p][:, parent[cols]]
            T[cols, :] |= T[parent[cols], :]
            T &= ok
            if (T & ~S[1 - p]).any():
                S[1 - p] |= T
                changed = True
    A = S[0] | S[1]
    np.fill_diagonal(A, False)
    return A


def _class_digraph(G: Digraph, classes: List[PathClass], L: int, loop: bool, method: str) -> Digraph:
    vs = set(classes)
    arrows = []
    full = classes
    if method in ("auto", "matrix") and loop:
        # loop classes are not prefix closed, so run on all paths and restrict
        full = minimal_paths(G, L)
    if method == "auto":
        method = "matrix" if len(full) <= MATRIX_LIMIT else "neighbours"
    if method == "matrix":
        A = _all_pairs_arrows(G, full)
        idx = [i for i, c in enumerate(full) if c in vs]
        for i, j in zip(*np.nonzero(A[np.ix_(idx, idx)])):
            arrows.append((full[idx[i]], full[idx[j]]))
    elif method == "neighbours":
        for c in classes:
            for d in class_neighbours(c, G, FORWARD, L, loop=loop):
                if d != c and d in vs:
                    arrows.append((c, d))
    elif method == "pairwise":
        for c in classes:
            for d in classes:
                if c != d and class_arrow(c, d, G, FORWARD):
                    arrows.append((c, d))
    else:
        raise ValueError(f"unknown arrow method {method!r}")
    return Digraph(classes, arrows, basepoint=constant_class(G.basepoint))


def build_reduced_path_digraph(G: Digraph, L: int, max_vertices: int = DEFAULT_MAX_VERTICES,
                               method: str = "auto") -> TruncatedReducedPathDigraph:
    """P-bar G cut off at minimal length L.

    ``method`` picks how arrows are found: ``"matrix"`` aligns all pairs at
    once, ``"neighbours"`` walks out of each class and ``"pairwise"`` runs the
    alignment DP on every ordered pair. All three give the same digraph;
    ``"auto"`` uses the matrix form unless there are too many classes.
    """
    classes = minimal_paths(G, L, loops=False, max_vertices=max_vertices)
    return TruncatedReducedPathDigraph(G, L, _class_digraph(G, classes, L, False, method), False)


def build_reduced_loop_digraph(G: Digraph, L: int, max_vertices: int = DEFAULT_MAX_VERTICES,
                               method: str = "auto") -> TruncatedReducedLoopDigraph:
    """L-bar G cut off at minimal length L.

    >>> from dgh.core import point
    >>> len(build_reduced_loop_digraph(point(), 3))
    1
    """
    classes = minimal_paths(G, L, loops=True, max_vertices=max_vertices)
    return TruncatedReducedLoopDigraph(G, L, _class_digraph(G, classes, L, True, method), True)


def class_subdigraph(G: Digraph, classes: Iterable[PathClass]) -> Digraph:
    """The reduced path digraph induced on a given set of classes."""
    cs = set(classes) | {constant_class(G.basepoint)}
    closure = set()
    for c in cs:
        for k in range(c.length + 1):
            closure.add(PathClass(c.values[:k + 1], c.orientation[:k]))
    full = sorted(closure)
    A = _all_pairs_arrows(G, full)
    idx = [i for i, c in enumerate(full) if c in cs]
    arrows = [(full[idx[i]], full[idx[j]]) for i, j in zip(*np.nonzero(A[np.ix_(idx, idx)]))]
    return Digraph(cs, arrows, basepoint=constant_class(G.basepoint))


def evaluation(c) -> object:
    """Endpoint of a path class (or of any path representing it)."""
    if isinstance(c, PathMap):
        return c.values[-1]
    return c.end()


# ---------------------------------------------------------------------------
# the unreduced loop digraph


def all_loops(G: Digraph, max_length: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> List[PathMap]:
    """Every loop on every line digraph of length at most max_length."""
    base = G.basepoint
    if base is None:
        raise MapViolation(None, "loops need a basepoint")
    found = []
    stack = [((base,), ())]
    while stack:
        vals, orient = stack.pop()
        if vals[-1] == base:
            found.append(PathMap(LineDigraph(orient), G, vals, "loop"))
            if len(found) > max_vertices:
                raise SizeOverflow(f"more than {max_vertices} loops of length <= {max_length}")
        if len(orient) == max_length:
            continue
        u = vals[-1]
        for w in (u,) + tuple(G.out(u)):
            stack.append((vals + (w,), orient + (True,)))
        for w in (u,) + tuple(G.into(u)):
            stack.append((vals + (w,), orient + (False,)))
    found.sort(key=lambda f: f.sort_key())
    return found


def _shrinks_onto(long: PathMap, short: PathMap, direct: bool) -> bool:
    """Is there a shrinking map h: long -> short with long(x) ~ short(h(x))?

    ``direct`` asks for long(x) -> short(h(x)) or equal, otherwise the
    reverse. This is the cylinder condition, decided by a monotone scan.
    """
    n, m = long.length, short.length
    if m > n:
        return False
    rel = long.target.related
    lv, sv = long.values, short.values
    lo, so = long.domain.orientation, short.domain.orientation

    def ok(x, y):
        return rel(lv[x], sv[y]) if direct else rel(sv[y], lv[x])

    # reach[y]: h(x) = y is attainable for the current x
    reach = {0} if ok(0, 0) else set()
    for x in range(n):
        nxt = set()
        for y in reach:
            if ok(x + 1, y):
                nxt.add(y)
            if y < m and so[y] == lo[x] and ok(x + 1, y + 1):
                nxt.add(y + 1)
        reach = nxt
        if not reach:
            return False
    return m in reach


def lg_arrow(f: PathMap, g: PathMap) -> bool:
    """f -> g in LG: f is one-step direct C-homotopic to g, or g one-step inverse to f."""
    return _shrinks_onto(f, g, True) or _shrinks_onto(g, f, False)


def build_unreduced_loop_digraph(G: Digraph, max_length: int,
                                 max_vertices: int = DEFAULT_MAX_VERTICES) -> Digraph:
    """LG restricted to loops of length at most max_length."""
    loops = all_loops(G, max_length, max_vertices)
    arrows = [(f, g) for f in loops for g in loops if f != g and lg_arrow(f, g)]
    base = PathMap(LineDigraph(()), G, (G.basepoint,), "loop")
    return Digraph(loops, arrows, basepoint=base)


def projection_to_reduced(LG: Digraph, LbarG: TruncatedReducedLoopDigraph) -> DigraphMap:
    """p: f -> <f>, validated as a based digraph map."""
    assignment = {}
    for f in LG.vertices:
        c = f.key()
        if c not in LbarG:
            raise TruncationTooSmall(c)
        assignment[f] = c
    return validate_map(assignment, LG, LbarG.digraph, based=True)


def component_bijection(p: DigraphMap) -> Tuple[bool, Dict]:
    """Does p induce a bijection on weak components? Returns (ok, induced map)."""
    cs, ct = pi0(p.source), pi0(p.target)
    induced: Dict = {}
    ok = True
    for v in p.source.vertices:
        a, b = cs.representative(v), ct.representative(p(v))
        if induced.setdefault(a, b) != b:
            ok = False
    hit = set(induced.values())
    if len(hit) != len(induced) or len(hit) != len(ct):
        ok = False
    return ok, induced


# ---------------------------------------------------------------------------
# pullbacks


def pullback(f: DigraphMap, g: DigraphMap) -> Tuple[Digraph, DigraphMap, DigraphMap]:
    """X x_Z Y as the induced sub-digraph of the Cartesian product.

    >>> from dgh.core import identity_map, point
    >>> P, p1, p2 = pullback(identity_map(point()), identity_map(point()))
    >>> P.vertices
    (('*', '*'),)
    """
    if f.target != g.target:
        raise DomainMismatch("pullback needs a common codomain")
    X, Y = f.source, g.source
    by_value: Dict = {}
    for y in Y.vertices:
        by_value.setdefault(g(y), []).append(y)
    verts = [(x, y) for x in X.vertices for y in by_value.get(f(x), ())]
    vs = set(verts)
    arrows = []
    for x, y in verts:
        for x2 in (x,) + tuple(X.out(x)):
            for y2 in (y,) + tuple(Y.out(y)):
                if (x2, y2) != (x, y) and (x2, y2) in vs:
                    arrows.append(((x, y), (x2, y2)))
    base = None
    if X.basepoint is not None and Y.basepoint is not None and (X.basepoint, Y.basepoint) in vs:
        base = (X.basepoint, Y.basepoint)
    P = Digraph(verts, arrows, basepoint=base)
    based = base is not None
    p1 = validate_map({v: v[0] for v in verts}, P, X, based=based)
    p2 = validate_map({v: v[1] for v in verts}, P, Y, based=based)
    return P, p1, p2


def mediating_map(P: Digraph, l1: DigraphMap, l2: DigraphMap) -> DigraphMap:
    """The map W -> P through which a commuting pair (l1, l2) factors."""
    W = l1.source
    assignment = {w: (l1(w), l2(w)) for w in W.vertices}
    return validate_map(assignment, W, P)


def all_mediating_maps(P: Digraph, p1: DigraphMap, p2: DigraphMap,
                       l1: DigraphMap, l2: DigraphMap) -> List[DigraphMap]:
    """Every digraph map m: W -> P with p1 m = l1 and p2 m = l2, by enumeration."""
    W = l1.source
    found = []
    for m in iter_maps(W, P):
        if all(p1(m[w]) == l1(w) and p2(m[w]) == l2(w) for w in W.vertices):
            found.append(DigraphMap(W, P, m, based=False))
    return found


# ---------------------------------------------------------------------------
# mapping path digraph and H_f


@dataclass(frozen=True)
class MappingPathDigraph:
    """P_f: pairs (x, <lambda>) with lambda(end) = f(x)."""

    f: DigraphMap
    max_min_length: int
    digraph: Digraph
    paths: TruncatedReducedPathDigraph
    f_prime: DigraphMap
    q: DigraphMap

    def __len__(self) -> int:
        return len(self.digraph)


def _check_based(f: DigraphMap):
    X, G = f.source, f.target
    if X.basepoint is None or G.basepoint is None or f(X.basepoint) != G.basepoint:
        raise MapViolation(None, "f must be a based map")


def build_mapping_path_digraph(f: DigraphMap, L: int, paths: Optional[TruncatedReducedPathDigraph] = None,
                               max_vertices: int = DEFAULT_MAX_VERTICES) -> MappingPathDigraph:
    """Pullback of f against evaluation on the truncated P-bar G."""
    _check_based(f)
    if paths is None:
        paths = build_reduced_path_digraph(f.target, L, max_vertices)
    P, fp, q = pullback(f, paths.evaluation_map())
    if len(P) > max_vertices:
        raise SizeOverflow(f"P_f has {len(P)} vertices")
    return MappingPathDigraph(f, L, P, paths, fp, q)


@dataclass(frozen=True)
class HfDigraph:
    """Pairs (<gamma>, <eta>) with f(eta(end)) = gamma(end)."""

    f: DigraphMap
    max_min_length: int
    digraph: Digraph
    target_paths: TruncatedReducedPathDigraph
    source_paths: TruncatedReducedPathDigraph

    def __len__(self) -> int:
        return len(self.digraph)


def build_hf(f: DigraphMap, L: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> HfDigraph:
    """The smaller model of the double mapping path digraph."""
    _check_based(f)
    PG = build_reduced_path_digraph(f.target, L, max_vertices)
    PX = build_reduced_path_digraph(f.source, L, max_vertices)
    by_end: Dict = {}
    for eta in PX.vertices:
        by_end.setdefault(f(eta.end()), []).append(eta)
    verts = [(g, e) for g in PG.vertices for e in by_end.get(g.end(), ())]
    if len(verts) > max_vertices:
        raise SizeOverflow(f"H_f has {len(verts)} vertices")
    vs = set(verts)
    arrows = []
    for g, e in verts:
        for g2 in (g,) + tuple(PG.digraph.out(g)):
            for e2 in (e,) + tuple(PX.digraph.out(e)):
                if (g2, e2) != (g, e) and (g2, e2) in vs:
                    arrows.append(((g, e), (g2, e2)))
    D = Digraph(verts, arrows, basepoint=(PG.basepoint, PX.basepoint))
    return HfDigraph(f, L, D, PG, PX)


def iterated_mapping_path(f: DigraphMap, L: int) -> MappingPathDigraph:
    """P_{f'} for the projection f': P_f -> X, built by two pullbacks."""
    Pf = build_mapping_path_digraph(f, L)
    fprime = Pf.f_prime
    return build_mapping_path_digraph(fprime, L)


def iota(Pf2: MappingPathDigraph, H: HfDigraph) -> DigraphMap:
    """((x, <gamma>), <eta>) -> (<gamma>, <eta>), checked to be an isomorphism."""
    if Pf2.max_min_length != H.max_min_length:
        raise TruncationMismatch("the two constructions use different truncations")
    assignment = {v: (v[0][1], v[1]) for v in Pf2.digraph.vertices}
    image = set(assignment.values())
    if image != set(H.digraph.vertices) or len(image) != len(assignment):
        raise TruncationMismatch("iota is not a bijection on the included vertices")
    m = validate_map(assignment, Pf2.digraph, H.digraph, based=True)
    if {(assignment[u], assignment[w]) for u, w in Pf2.digraph.arrows} != set(H.digraph.arrows):
        raise TruncationMismatch("iota does not carry arrows onto arrows")
    return m


# ---------------------------------------------------------------------------
# Puppe maps


@dataclass
class PuppeMaps:
    """j: L-bar G -> H_f and q: H_f -> L-bar G (on a wider window)."""

    f: DigraphMap
    max_min_length: int
    loops: TruncatedReducedLoopDigraph
    hf: HfDigraph
    j: DigraphMap
    q: DigraphMap
    q_window: int

    def q_after_j_is_identity(self) -> bool:
        return all(self.q(self.j(c)) == c for c in self.loops.vertices)


def q_value(f: DigraphMap, gamma: PathClass, eta: PathClass) -> PathClass:
    """<gamma v (f . eta^-1)> for a vertex (<gamma>, <eta>) of H_f."""
    G, X = f.target, f.source
    g = gamma.minimal(G, "path")
    image = PathMap(LineDigraph(eta.orientation), G, [f(v) for v in eta.values], "path")
    back = invert(image)
    return concatenate(g.with_kind("free"), back, kind="free").key()


def puppe_maps(f: DigraphMap, L: int, q_window: Optional[int] = None,
               max_vertices: int = DEFAULT_MAX_VERTICES) -> PuppeMaps:
    """Build j and q on the truncated structures and validate both."""
    _check_based(f)
    G, X = f.target, f.source
    loops = build_reduced_loop_digraph(G, L, max_vertices)
    hf = build_hf(f, L, max_vertices)
    x0 = constant_class(X.basepoint)
    j = validate_map({c: (c, x0) for c in loops.vertices}, loops.digraph, hf.digraph, based=True)
    window = 2 * L if q_window is None else q_window
    values = {}
    for v in hf.digraph.vertices:
        c = q_value(f, *v)
        if c.length > window:
            raise TruncationTooSmall(c, f"q needs loops of minimal length {c.length} > {window}")
        values[v] = c
    target = class_subdigraph(G, set(values.values()) | set(loops.vertices))
    q = validate_map(values, hf.digraph, target, based=True)
    return PuppeMaps(f, L, loops, hf, j, q, window)


def q_after_j(f: DigraphMap, L: int) -> Dict[PathClass, PathClass]:
    """q(j(<gamma>)) for every vertex of the truncated loop digraph.

    Only the images of j are touched, so this runs at windows where building
    all of H_f would be wasteful.
    """
    _check_based(f)
    G, X = f.target, f.source
    x0 = constant_class(X.basepoint)
    out = {}
    for c in minimal_paths(G, L, loops=True):
        # j(<gamma>) = (<gamma>, <l_x0>) satisfies the H_f membership rule
        if f(x0.end()) != c.end():
            raise MapViolation(c, "j leaves H_f")
        out[c] = q_value(f, c, x0)
    return out


def boundary(f: DigraphMap, L: int, x, mapping_path: Optional[MappingPathDigraph] = None):
    """The connecting map on representatives.

    A loop on G goes to the vertex (x0, <gamma>) of P_f. An n-grid (n >= 2)
    is curried to a grid of loop classes and sent cell by cell, giving an
    (n-1)-grid into P_f.
    """
    _check_based(f)
    Pf = mapping_path or build_mapping_path_digraph(f, L)
    x0 = f.source.basepoint
    if isinstance(x, PathMap):
        c = curry_loop(x)
        v = (x0, c)
        if v not in Pf.digraph:
            raise TruncationTooSmall(c)
        return v
    if isinstance(x, GridMap):
        w = curry(x)
        for c in w.classes.values():
            if (x0, c) not in Pf.digraph:
                raise TruncationTooSmall(c)
        return grid_from_function(w.lengths, lambda idx: (x0, w[tuple(idx)]), Pf.digraph)
    raise TypeError("boundary takes a loop or a grid map")


# ---------------------------------------------------------------------------
# exactness at the bottom of the sequence


@dataclass
class ExactnessReport:
    passed: bool
    image: frozenset
    kernel: frozenset
    counterexample: Optional[object]
    stable: bool
    components: Dict[int, int] = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def _label_components(n: int, us: np.ndarray, ws: np.ndarray) -> np.ndarray:
    """Least-index component labels from an edge list, by min-propagation."""
    labels = np.arange(n)
    if len(us) == 0:
        return labels
    while True:
        m = np.minimum(labels[us], labels[ws])
        new = labels.copy()
        np.minimum.at(new, us, m)
        np.minimum.at(new, ws, m)
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def mapping_path_components(f: DigraphMap, L: int):
    """Weak components of P_f without materialising its arrow set.

    Returns the vertex list ``[(x, <lambda>), ...]`` and a label per vertex;
    two vertices share a label exactly when they are weakly connected.
    """
    _check_based(f)
    X, G = f.source, f.target
    classes = minimal_paths(G, L)
    A = _all_pairs_arrows(G, classes) if len(classes) <= MATRIX_LIMIT else None
    if A is None:
        Pf = build_mapping_path_digraph(f, L)
        comps = pi0(Pf.digraph)
        verts = list(Pf.digraph.vertices)
        lab = {c: i for i, c in enumerate(sorted({comps.representative(v) for v in verts}, key=vertex_key))}
        return verts, np.array([lab[comps.representative(v)] for v in verts])
    ends = [c.end() for c in classes]
    fiber: Dict = {}
    for i, e in enumerate(ends):
        fiber.setdefault(e, []).append(i)
    verts = []
    offset = {}
    for x in X.vertices:
        offset[x] = len(verts)
        verts.extend((x, classes[i]) for i in fiber.get(f(x), ()))
    us, ws = [], []
    for x in X.vertices:
        fx = np.array(fiber.get(f(x), ()), dtype=int)
        if not len(fx):
            continue
        for x2 in (x,) + tuple(X.out(x)):
            fx2 = np.array(fiber.get(f(x2), ()), dtype=int)
            if not len(fx2):
                continue
            sub = A[np.ix_(fx, fx2)]
            if x2 != x:
                sub = sub | (fx[:, None] == fx2[None, :])
            a, b = np.nonzero(sub)
            us.append(a + offset[x])
            ws.append(b + offset[x2])
    us = np.concatenate(us) if us else np.zeros(0, dtype=int)
    ws = np.concatenate(ws) if ws else np.zeros(0, dtype=int)
    return verts, _label_components(len(verts), us, ws)


def _pi0_image(f: DigraphMap, L: int):
    verts, labels = mapping_path_components(f, L)
    cx = pi0(f.source)
    # push each component of P_f to the component of X holding its x values
    pushed: Dict = {}
    for (x, _), lab in zip(verts, labels.tolist()):
        pushed.setdefault(lab, set()).add(cx.representative(x))
    if any(len(s) != 1 for s in pushed.values()):
        raise RuntimeError("a component of P_f meets two components of X")
    image = frozenset(next(iter(s)) for s in pushed.values())
    return image, len(pushed)


def check_pi0_exactness(f: DigraphMap, L: int) -> ExactnessReport:
    """Compare im f'_0 with ker f_0 as sets of components of X.

    Components are named by their least vertex. The image is taken at L and
    again at L + 2; ``stable`` says the two images agree. The component
    counts of P_f at both windows are reported as well; they may keep
    growing with L even when the image has settled.
    """
    _check_based(f)
    X, G = f.source, f.target
    cx, cg = pi0(X), pi0(G)
    star = cg.representative(G.basepoint)
    kernel = frozenset(cx.representative(x) for x in X.vertices if cg.representative(f(x)) == star)
    image, n_l = _pi0_image(f, L)
    image2, n_l2 = _pi0_image(f, L + 2)
    diff = sorted(image.symmetric_difference(kernel), key=vertex_key)
    return ExactnessReport(
        passed=not diff,
        image=image,
        kernel=kernel,
        counterexample=diff[0] if diff else None,
        stable=image == image2,
        components={L: n_l, L + 2: n_l2},
    )


# ---------------------------------------------------------------------------
# the 3x3 grid example


def _cell(i, j) -> str:
    return f"(v{i},v{j})"


def example_417_digraph() -> Digraph:
    """Nine grid vertices (v_i, v_j) plus a basepoint joined to all but the centre."""
    c = _cell
    arrows = [
        (c(1, 2), c(1, 1)), (c(1, 2), c(1, 3)),
        (c(2, 1), c(1, 1)), (c(2, 1), c(3, 1)),
        (c(2, 2), c(3, 2)), (c(2, 2), c(2, 1)), (c(2, 2), c(1, 2)), (c(2, 2), c(2, 3)),
        (c(2, 3), c(1, 3)), (c(2, 3), c(3, 3)),
        (c(3, 2), c(3, 3)), (c(3, 2), c(3, 1)),
    ]
    grid = [c(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
    arrows += [("*", v) for v in grid if v != c(2, 2)]
    return Digraph(grid + ["*"], arrows, basepoint="*")


def example_417_map(G: Optional[Digraph] = None) -> GridMap:
    """f(i, j) = (v_i, v_j) on J_4 box J_4, the basepoint on the frame."""
    G = G or example_417_digraph()
    return grid_from_function((4, 4), lambda ij: _cell(*ij) if 1 <= min(ij) and max(ij) <= 3 else "*", G)


@dataclass
class Example417Report:
    valid: bool
    centre_neighbours_are_bold: bool
    bold_pairwise_nonadjacent: bool
    base_not_adjacent_to_centre: bool
    constant_reached: bool
    search: Dict

    @property
    def passed(self) -> bool:
        return (self.valid and self.centre_neighbours_are_bold and self.bold_pairwise_nonadjacent
                and self.base_not_adjacent_to_centre and not self.constant_reached)


def verify_example_417(budget: Optional[SearchBudget] = None) -> Example417Report:
    """Check the structural facts and run a bounded search from f."""
    budget = budget or default_budget()
    G = example_417_digraph()
    try:
        f = example_417_map(G)
        valid = True
    except MapViolation:
        return Example417Report(False, False, False, False, False, {})
    centre = _cell(2, 2)
    bold = {_cell(1, 2), _cell(2, 1), _cell(2, 3), _cell(3, 2)}
    nbrs = {v for v in G.vertices if G.adjacent(centre, v)}
    fact1 = nbrs == bold
    fact2 = not any(G.adjacent(a, b) for a in bold for b in bold if a != b)
    fact3 = not G.adjacent("*", centre)
    search = explore_grid(f, budget)
    reached = search.pop("reached") is not None
    return Example417Report(valid, fact1, fact2, fact3, reached, search)
