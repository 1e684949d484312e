"""Path calculus on line digraphs.

Paths are digraph maps out of a line digraph. The operations here move
between line digraphs of different lengths: shrinking maps and the
subdivisions they induce, the standardization scan onto J_M, minimal
reduction, common subdivision of two shrinking maps, concatenation,
inversion and constant padding.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .core import Digraph, LineDigraph, validate_map, vertex_key
from .errors import (
    DomainMismatch,
    EndpointMismatch,
    MapViolation,
    ParityViolation,
)

KINDS = ("path", "loop", "free")


class PathMap:
    """A digraph map from a line digraph into ``target``.

    ``kind`` is ``"path"`` (value 0 at the basepoint), ``"loop"`` (both
    ends at the basepoint) or ``"free"`` (no basepoint condition).
    """

    __slots__ = ("domain", "target", "values", "kind")

    def __init__(self, domain: LineDigraph, target: Digraph, values: Sequence, kind: str = "path"):
        values = tuple(values)
        if kind not in KINDS:
            raise ValueError(f"unknown path kind {kind!r}")
        if len(values) != domain.length + 1:
            raise DomainMismatch(f"{len(values)} values for a line of length {domain.length}")
        for v in values:
            if v not in target:
                raise MapViolation(v, "value is not a target vertex")
        for i, fwd in enumerate(domain.orientation):
            a, b = values[i], values[i + 1]
            if not (target.related(a, b) if fwd else target.related(b, a)):
                arrow = (i, i + 1) if fwd else (i + 1, i)
                raise MapViolation(arrow)
        if kind != "free":
            if target.basepoint is None:
                raise MapViolation(0, f"a {kind} needs a based target")
            if values[0] != target.basepoint:
                raise MapViolation(0, "path does not start at the basepoint")
            if kind == "loop" and values[-1] != target.basepoint:
                raise MapViolation(domain.length, "loop does not end at the basepoint")
        self.domain = domain
        self.target = target
        self.values = values
        self.kind = kind

    @property
    def length(self) -> int:
        return self.domain.length

    def is_standard(self) -> bool:
        return self.domain.is_standard()

    def __call__(self, i):
        return self.values[i]

    def __eq__(self, other):
        if not isinstance(other, PathMap):
            return NotImplemented
        return (self.domain == other.domain and self.values == other.values
                and self.target == other.target)

    def __hash__(self):
        return hash((self.domain, self.values))

    def sort_key(self):
        return (len(self.values), self.domain.orientation, tuple(vertex_key(v) for v in self.values))

    def __repr__(self):
        return f"PathMap({self.domain!r}, values={list(self.values)!r}, kind={self.kind})"

    def as_map(self):
        return validate_map(dict(enumerate(self.values)), self.domain.digraph(), self.target)

    def with_kind(self, kind: str) -> "PathMap":
        return PathMap(self.domain, self.target, self.values, kind)

    def key(self) -> "PathClass":
        """Subdivision class of this path (keyed by its minimal path)."""
        m = minimal_reduction(self)
        return PathClass(m.values, m.domain.orientation)


def path_map(values: Sequence, target: Digraph, orientation: Optional[Sequence[bool]] = None,
             kind: str = "path") -> PathMap:
    """Convenience constructor; the domain defaults to the standard line."""
    dom = LineDigraph.standard(len(values) - 1) if orientation is None else LineDigraph(orientation)
    return PathMap(dom, target, values, kind)


def constant_path(target: Digraph, m: int, value=None, kind: str = "loop") -> PathMap:
    value = target.basepoint if value is None else value
    return PathMap(LineDigraph.standard(m), target, (value,) * (m + 1), kind)


def unit_loop(target: Digraph) -> PathMap:
    """The constant loop on J_2."""
    return constant_path(target, 2)


# ---------------------------------------------------------------------------
# subdivision classes


class PathClass:
    """Subdivision class of a path, keyed by its minimal path.

    The key stores both the values (no two consecutive ones equal) and the
    orientation of the minimal line. The orientation is redundant unless the
    target has a pair of opposite arrows between consecutive values.
    """

    __slots__ = ("values", "orientation", "_hash", "_sk")

    def __init__(self, values: Sequence, orientation: Sequence[bool]):
        self.values = tuple(values)
        self.orientation = tuple(bool(o) for o in orientation)
        if len(self.orientation) != len(self.values) - 1:
            raise DomainMismatch("orientation length must be one less than the value count")
        self._hash = hash((self.values, self.orientation))
        self._sk = None

    @property
    def length(self) -> int:
        return len(self.orientation)

    def end(self):
        return self.values[-1]

    def minimal(self, target: Digraph, kind: str = "path") -> PathMap:
        return PathMap(LineDigraph(self.orientation), target, self.values, kind)

    def representative(self, target: Digraph, kind: str = "path") -> PathMap:
        """The standardization of the minimal path."""
        return standardize(self.minimal(target, kind))[0]

    def sort_key(self):
        if self._sk is None:
            self._sk = (len(self.values), tuple(vertex_key(v) for v in self.values), self.orientation)
        return self._sk

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        return (isinstance(other, PathClass) and self.values == other.values
                and self.orientation == other.orientation)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        s = str(self.values[0])
        for o, v in zip(self.orientation, self.values[1:]):
            s += (" -> " if o else " <- ") + str(v)
        return f"<{s}>"


def constant_class(v) -> PathClass:
    return PathClass((v,), ())


# ---------------------------------------------------------------------------
# shrinking maps


class ShrinkingMap:
    """Monotone surjective digraph map between line digraphs fixing the ends.

    >>> h = ShrinkingMap(LineDigraph([True, False, True]), LineDigraph([True, False]), (0, 1, 2, 2))
    >>> h.fibers()
    (1, 1, 2)
    """

    __slots__ = ("source", "target", "values")

    def __init__(self, source: LineDigraph, target: LineDigraph, values: Sequence[int]):
        values = tuple(int(x) for x in values)
        M, m = source.length, target.length
        if len(values) != M + 1:
            raise DomainMismatch(f"{len(values)} values for a source line of length {M}")
        if values[0] != 0 or values[-1] != m:
            raise MapViolation(None, "a shrinking map must send 0 to 0 and the last vertex to the last")
        for i in range(M):
            step = values[i + 1] - values[i]
            if step not in (0, 1):
                raise MapViolation((i, i + 1), "not monotone and surjective")
            if step == 1 and source.orientation[i] != target.orientation[values[i]]:
                raise MapViolation((i, i + 1), "arrow direction is not preserved")
        self.source = source
        self.target = target
        self.values = values

    @classmethod
    def identity(cls, line: LineDigraph) -> "ShrinkingMap":
        return cls(line, line, range(line.length + 1))

    def __call__(self, i: int) -> int:
        return self.values[i]

    def then(self, other: "ShrinkingMap") -> "ShrinkingMap":
        """Composite ``other . self``."""
        if other.source != self.target:
            raise DomainMismatch("composition needs matching lines")
        return ShrinkingMap(self.source, other.target, [other.values[x] for x in self.values])

    def fibers(self) -> Tuple[int, ...]:
        sizes = [0] * (self.target.length + 1)
        for x in self.values:
            sizes[x] += 1
        return tuple(sizes)

    def is_identity(self) -> bool:
        return self.source == self.target

    def __eq__(self, other):
        return (isinstance(other, ShrinkingMap) and self.source == other.source
                and self.target == other.target and self.values == other.values)

    def __hash__(self):
        return hash((self.source, self.target, self.values))

    def __repr__(self):
        return f"ShrinkingMap({self.source.length}->{self.target.length}, {list(self.values)})"


def is_shrinking(source: LineDigraph, target: LineDigraph, values: Sequence[int]) -> bool:
    try:
        ShrinkingMap(source, target, values)
    except (MapViolation, DomainMismatch):
        return False
    return True


def enumerate_shrinking_maps(source: LineDigraph, target: LineDigraph) -> List[ShrinkingMap]:
    """All shrinking maps ``source -> target`` in lexicographic order."""
    M, m = source.length, target.length
    if M < m:
        return []
    out: List[ShrinkingMap] = []
    vals = [0] * (M + 1)

    def rec(i, level):
        if i == M:
            if level == m:
                out.append(ShrinkingMap(source, target, vals))
            return
        # stay first so the output is lexicographic
        if m - level <= M - i - 1:
            vals[i + 1] = level
            rec(i + 1, level)
        if level < m and source.orientation[i] == target.orientation[level]:
            vals[i + 1] = level + 1
            rec(i + 1, level + 1)

    rec(0, 0)
    return out


def enumerate_subdivisions(target: LineDigraph, max_length: int,
                           min_length: Optional[int] = None) -> List[ShrinkingMap]:
    """Shrinking maps J_M -> target for every M in [min_length, max_length]."""
    lo = target.length if min_length is None else max(min_length, target.length)
    out: List[ShrinkingMap] = []
    for M in range(lo, max_length + 1):
        out.extend(enumerate_shrinking_maps(LineDigraph.standard(M), target))
    return out


def subdivide(f: PathMap, h: ShrinkingMap) -> PathMap:
    """The subdivision f . h on the source line of h."""
    if h.target != f.domain:
        raise DomainMismatch("shrinking map does not land on the path's domain")
    return PathMap(h.source, f.target, [f.values[x] for x in h.values], f.kind)


# ---------------------------------------------------------------------------
# cylinders


def cylinder(h: ShrinkingMap, inverse: bool = False) -> Digraph:
    """The cylinder of h: two lines joined by (0,x) -> (1,h(x)) (reversed if inverse)."""
    verts = [(0, x) for x in range(h.source.length + 1)] + [(1, y) for y in range(h.target.length + 1)]
    arrows = [((0, a), (0, b)) for a, b in h.source.arrows()]
    arrows += [((1, a), (1, b)) for a, b in h.target.arrows()]
    for x, y in enumerate(h.values):
        arrows.append(((1, y), (0, x)) if inverse else ((0, x), (1, y)))
    return Digraph(verts, arrows)


class CylinderCertificate:
    """Witness of a one-step C-homotopy ``top ~ bottom`` over h: top.domain -> bottom.domain."""

    __slots__ = ("base", "top", "bottom", "direction", "witness")

    def __init__(self, base: ShrinkingMap, top: PathMap, bottom: PathMap, direction: str = "direct"):
        if direction not in ("direct", "inverse"):
            raise ValueError("direction must be 'direct' or 'inverse'")
        self.base = base
        self.top = top
        self.bottom = bottom
        self.direction = direction
        w: Dict = {(0, x): top.values[x] for x in range(top.length + 1)}
        w.update({(1, y): bottom.values[y] for y in range(bottom.length + 1)})
        self.witness = w

    def verify(self) -> bool:
        if self.base.source != self.top.domain or self.base.target != self.bottom.domain:
            raise DomainMismatch("cylinder base does not match the two paths")
        C = cylinder(self.base, inverse=self.direction == "inverse")
        validate_map(self.witness, C, self.top.target)
        return True

    def __repr__(self):
        return f"CylinderCertificate({self.direction}, h={list(self.base.values)})"


def cylinder_certificate(top: PathMap, bottom: PathMap, h: ShrinkingMap,
                         direction: str = "direct") -> Optional[CylinderCertificate]:
    """Certificate if the cylinder over h validates, else None."""
    T = top.target
    for x, y in enumerate(h.values):
        a, b = top.values[x], bottom.values[y]
        if not (T.related(a, b) if direction == "direct" else T.related(b, a)):
            return None
    return CylinderCertificate(h, top, bottom, direction)


def find_cylinder(top: PathMap, bottom: PathMap, direction: str = "direct") -> Optional[CylinderCertificate]:
    """Search every shrinking map top.domain -> bottom.domain for a cylinder witness."""
    for h in enumerate_shrinking_maps(top.domain, bottom.domain):
        cert = cylinder_certificate(top, bottom, h, direction)
        if cert is not None:
            return cert
    return None


def subdivision_is_one_step(f: PathMap, h: ShrinkingMap) -> CylinderCertificate:
    """The subdivision f . h is one-step direct C-homotopic to f."""
    fbar = subdivide(f, h)
    cert = CylinderCertificate(h, fbar, f, "direct")
    cert.verify()
    return cert


# ---------------------------------------------------------------------------
# standardization and reduction


def standardize(f: PathMap) -> Tuple[PathMap, ShrinkingMap, CylinderCertificate]:
    """Subdivide f onto a standard line by the arrow-comparison scan.

    Walk the arrows of f's domain; when the next arrow agrees with the next
    arrow of J the value is copied, otherwise the previous value is repeated
    once so the following J arrow has the right direction.

    >>> from dgh.core import Digraph
    >>> G = Digraph("xyz", [("x", "y"), ("y", "z")], basepoint="x")
    >>> standardize(path_map("xyz", G, [True, True]))[0].values
    ('x', 'y', 'y', 'z')
    """
    o = f.domain.orientation
    hv = [0]
    j = 0  # index of the last assigned vertex of J
    for i, fwd in enumerate(o):
        if fwd == (j % 2 == 0):
            hv.append(i + 1)
            j += 1
        else:
            hv.extend((i, i + 1))
            j += 2
    J = LineDigraph.standard(j)
    h = ShrinkingMap(J, f.domain, hv)
    fhat = subdivide(f, h)
    return fhat, h, subdivision_is_one_step(f, h)


def collapse_map(f: PathMap) -> ShrinkingMap:
    """Shrinking map from f's domain onto its minimal line."""
    hv = [0]
    orient = []
    for i, fwd in enumerate(f.domain.orientation):
        if f.values[i] == f.values[i + 1]:
            hv.append(hv[-1])
        else:
            hv.append(hv[-1] + 1)
            orient.append(fwd)
    return ShrinkingMap(f.domain, LineDigraph(orient), hv)


def minimal_reduction(f: PathMap) -> PathMap:
    """Collapse consecutive repeated values; f is a subdivision of the result."""
    h = collapse_map(f)
    vals = [f.values[0]]
    for v in f.values[1:]:
        if v != vals[-1]:
            vals.append(v)
    return PathMap(h.target, f.target, vals, f.kind)


def minimal_certificate(f: PathMap) -> CylinderCertificate:
    """One-step direct C-homotopy f ~ f_min."""
    return subdivision_is_one_step(minimal_reduction(f), collapse_map(f))


def common_subdivision(h1: ShrinkingMap, h2: ShrinkingMap) -> Tuple[ShrinkingMap, ShrinkingMap]:
    """Return q1, q2 with h1 . q1 = h2 . q2.

    Level i of the common line gets a block of max(|h1^-1(i)|, |h2^-1(i)|)
    vertices. Below the last level both fibers have odd size (they come from
    standard lines), so the shorter fiber is walked first and its last vertex
    repeated; block starts then agree in parity on all three lines.
    """
    if h1.target != h2.target:
        raise DomainMismatch("both maps must subdivide the same line")
    f1, f2 = h1.fibers(), h2.fibers()
    q1v: List[int] = []
    q2v: List[int] = []
    s1 = s2 = 0  # start of the current fiber in each source
    for a, b in zip(f1, f2):
        size = max(a, b)
        for k in range(size):
            q1v.append(s1 + min(k, a - 1))
            q2v.append(s2 + min(k, b - 1))
        s1 += a
        s2 += b
    J = LineDigraph.standard(len(q1v) - 1)
    return ShrinkingMap(J, h1.source, q1v), ShrinkingMap(J, h2.source, q2v)


# ---------------------------------------------------------------------------
# concatenation, inverse, padding


def _result_kind(first: PathMap, second: PathMap) -> str:
    if first.kind == "free":
        return "free"
    return "loop" if first.kind == second.kind == "loop" else "path"


def concatenate(f: PathMap, g: PathMap, standard_loop: bool = False, kind: Optional[str] = None) -> PathMap:
    """f followed by g on the line of length len(f) + len(g)."""
    if f.target != g.target:
        raise DomainMismatch("paths live in different digraphs")
    if f.values[-1] != g.values[0]:
        raise EndpointMismatch(f"{f.values[-1]!r} != {g.values[0]!r}")
    if standard_loop:
        if f.length % 2 or g.length % 2:
            raise ParityViolation("standard loops are concatenated with even lengths")
        if not (f.is_standard() and g.is_standard()):
            raise DomainMismatch("standard-loop concatenation needs standard domains")
    dom = LineDigraph(f.domain.orientation + g.domain.orientation)
    k = kind or ("loop" if standard_loop else _result_kind(f, g))
    return PathMap(dom, f.target, f.values + g.values[1:], k)


def invert(f: PathMap, kind: Optional[str] = None) -> PathMap:
    """gamma^-1(i) = gamma(l - i) on the reversed line."""
    if kind is None:
        kind = "loop" if f.kind == "loop" else "free"
    return PathMap(f.domain.reversed(), f.target, f.values[::-1], kind)


def pad_to_length(f: PathMap, n: int) -> PathMap:
    """Extend a standard path to J_n by repeating its last value."""
    if not f.is_standard():
        raise DomainMismatch("padding is defined for paths on standard lines")
    if n < f.length:
        raise DomainMismatch(f"cannot pad length {f.length} down to {n}")
    if f.kind == "loop" and (n - f.length) % 2:
        raise ParityViolation("loops are padded by an even number of steps")
    return PathMap(LineDigraph.standard(n), f.target, f.values + (f.values[-1],) * (n - f.length), f.kind)
