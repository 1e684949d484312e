"""Command-line front end and the text formats behind it.

Digraph documents look like::

    digraph square
    vertices: 0 1 2 3
    base: 0
    arrows:
    0 -> 1
    1 -> 2

``#`` starts a comment. Loop and grid files append an optional
``orientation:`` line (``+``/``-`` per arrow, paths only) and a ``values:``
header carrying the axis lengths, followed by the values in row-major order.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .core import (
    Digraph,
    DigraphPair,
    LineDigraph,
    box_product,
    cartesian_product,
    induced_subdigraph,
    relative_box_product,
    validate_map,
    vertex_key,
)
from .errors import DigraphError, ParseError, SelfLoop
from .grids import GridMap, validate_grid
from .homotopy import (
    HomotopyCertificate,
    OneStepWitness,
    SearchBudget,
    default_budget,
    f_homotopic,
    is_exhausted,
    pi0,
)
from .lines import PathClass, PathMap, ShrinkingMap, minimal_certificate, standardize

# ---------------------------------------------------------------------------
# identifiers


def vertex_name(v) -> str:
    """Text form of a vertex: strings verbatim, tuples as (a,b), classes as [a>b<c]."""
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return "(" + ",".join(vertex_name(x) for x in v) + ")"
    if isinstance(v, PathClass):
        return "[" + _arrowed(v.values, v.orientation) + "]"
    if isinstance(v, PathMap):
        return "{" + _arrowed(v.values, v.domain.orientation) + "}"
    return str(v)


def _arrowed(values, orientation) -> str:
    s = vertex_name(values[0])
    for o, x in zip(orientation, values[1:]):
        s += (">" if o else "<") + vertex_name(x)
    return s


def _orient_text(orientation) -> str:
    return " ".join("+" if o else "-" for o in orientation) if orientation else "."


def _parse_orient(tokens: Sequence[str], line: int) -> Tuple[bool, ...]:
    if list(tokens) == ["."]:
        return ()
    out = []
    for t in tokens:
        if t not in ("+", "-"):
            raise ParseError(line, f"orientation entries are + or -, got {t!r}")
        out.append(t == "+")
    return tuple(out)


# ---------------------------------------------------------------------------
# documents


@dataclass
class DigraphDocument:
    name: str
    digraph: Digraph
    orientation: Optional[Tuple[bool, ...]] = None
    lengths: Optional[Tuple[int, ...]] = None
    values: Optional[List[str]] = None
    kind: Optional[str] = None
    extra: Dict = field(default_factory=dict)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


_CERT_WORDS = ("map", "step", "end", "left", "right", "certificate", "digraph")


def _parse_lines(lines: List[Tuple[int, str]], stops: bool = False) -> Tuple[DigraphDocument, int]:
    """Parse one document from numbered lines; returns it and the lines used.

    With ``stops`` the document ends at the first line whose first word is a
    certificate keyword.
    """
    name = None
    verts: List[str] = []
    base = None
    arrows = []
    orientation = None
    lengths = None
    values: Optional[List[str]] = None
    kind = None
    section = None
    i = 0
    while i < len(lines):
        no, raw = lines[i]
        text = _strip(raw)
        if not text:
            i += 1
            continue
        rest = text.partition(":")[2]
        if name is None:
            parts = text.split()
            if parts[0] != "digraph":
                raise ParseError(no, "a document starts with 'digraph <name>'")
            name = parts[1] if len(parts) > 1 else "G"
            i += 1
            continue
        if stops and text.split()[0] in _CERT_WORDS:
            break
        if text.startswith("vertices:"):
            verts.extend(rest.split())
            section = None
        elif text.startswith("base:"):
            if base is not None:
                raise ParseError(no, "basepoint declared twice")
            toks = rest.split()
            if len(toks) != 1:
                raise ParseError(no, "base takes exactly one vertex")
            base = toks[0]
            section = None
        elif text.startswith("arrows:"):
            section = "arrows"
            if rest.strip():
                raise ParseError(no, "arrows go one per line after 'arrows:'")
        elif text.startswith("orientation:"):
            orientation = _parse_orient(rest.split(), no)
            section = None
        elif text.startswith("kind:"):
            kind = rest.strip()
            section = None
        elif text.startswith("values:"):
            try:
                lengths = tuple(int(t) for t in rest.split())
            except ValueError:
                raise ParseError(no, "values header lists integer axis lengths") from None
            if not lengths:
                raise ParseError(no, "values header needs at least one axis length")
            values = []
            section = "values"
        elif section == "arrows":
            parts = text.split()
            if len(parts) != 3 or parts[1] != "->":
                raise ParseError(no, "arrow lines look like 'u -> v'")
            u, w = parts[0], parts[2]
            if u == w:
                raise SelfLoop(u, no)
            for x in (u, w):
                if x not in verts:
                    raise ParseError(no, f"undeclared vertex {x!r}")
            arrows.append((u, w))
        elif section == "values":
            values.extend(text.split())
        else:
            raise ParseError(no, f"unexpected line {text!r}")
        i += 1
    if name is None:
        raise ParseError(lines[0][0] if lines else 1, "empty document")
    if len(set(verts)) != len(verts):
        raise ParseError(lines[0][0], "a vertex is declared twice")
    if base is not None and base not in verts:
        raise ParseError(lines[0][0], f"basepoint {base!r} is not declared")
    G = Digraph(verts, arrows, basepoint=base)
    doc = DigraphDocument(name, G, orientation, lengths, values, kind)
    if values is not None:
        expected = int(np.prod([m + 1 for m in lengths]))
        if len(values) != expected:
            raise ParseError(lines[-1][0], f"expected {expected} values, found {len(values)}")
        for v in values:
            if v not in G:
                raise ParseError(lines[-1][0], f"value {v!r} is not a vertex")
    return doc, i


def parse_document(text: str) -> DigraphDocument:
    lines = list(enumerate(text.splitlines(), start=1))
    doc, used = _parse_lines(lines)
    for no, raw in lines[used:]:
        if _strip(raw):
            raise ParseError(no, "trailing content after the document")
    return doc


def parse_digraph(text: str) -> Digraph:
    """Read a digraph document.

    >>> G = parse_digraph("digraph t\\nvertices: a b\\nbase: a\\narrows:\\na -> b\\n")
    >>> len(G), len(G.arrows), G.basepoint
    (2, 1, 'a')
    """
    return parse_document(text).digraph


def emit_digraph(G: Digraph, name: str = "G") -> str:
    """Canonical text: sorted vertices, sorted arrows, one per line."""
    out = [f"digraph {name}", "vertices: " + " ".join(vertex_name(v) for v in G.vertices)]
    if G.basepoint is not None:
        out.append(f"base: {vertex_name(G.basepoint)}")
    out.append("arrows:")
    for u, w in G.sorted_arrows():
        out.append(f"{vertex_name(u)} -> {vertex_name(w)}")
    return "\n".join(out) + "\n"


def emit_map_block(f) -> str:
    """The orientation/values part of a loop or grid file."""
    if isinstance(f, PathMap):
        out = [f"kind: {f.kind}"]
        if not f.is_standard():
            out.append("orientation: " + _orient_text(f.domain.orientation))
        out.append(f"values: {f.length}")
        out.append(" ".join(vertex_name(v) for v in f.values))
        return "\n".join(out) + "\n"
    rows = np.asarray(f.to_lists(), dtype=object)
    out = ["values: " + " ".join(str(m) for m in f.lengths)]
    flat = rows.reshape(-1, rows.shape[-1])
    for row in flat:
        out.append(" ".join(vertex_name(v) for v in row))
    return "\n".join(out) + "\n"


def emit_map(f, name: str = "G") -> str:
    return emit_digraph(f.target, name) + emit_map_block(f)


def _doc_map(doc: DigraphDocument, dim: Optional[int] = None):
    if doc.values is None:
        raise ParseError(1, "this file carries no values block")
    G = doc.digraph
    lengths = doc.lengths
    if len(lengths) == 1 and (dim in (None, 1)):
        orient = doc.orientation
        if orient is None:
            line = LineDigraph.standard(lengths[0])
        else:
            if len(orient) != lengths[0]:
                raise ParseError(1, "orientation length does not match the values header")
            line = LineDigraph(orient)
        kind = doc.kind or ("loop" if G.basepoint is not None and doc.values[0] == doc.values[-1] == G.basepoint
                            else "free")
        return PathMap(line, G, doc.values, kind)
    if dim is not None and dim != len(lengths):
        raise ParseError(1, f"expected a {dim}-grid, found {len(lengths)} axes")
    arr = np.asarray(doc.values, dtype=object).reshape([m + 1 for m in lengths])
    return validate_grid(arr.tolist(), G)


def parse_map(text: str, dim: Optional[int] = None):
    return _doc_map(parse_document(text), dim)


def parse_vertex_map(text: str, source: Digraph, target: Digraph, based: bool = True):
    """Lines ``x = y``; returns a validated DigraphMap."""
    assignment = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        t = _strip(raw)
        if not t or t == "map":
            continue
        parts = [p.strip() for p in t.split("=")]
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise ParseError(no, "map lines look like 'x = y'")
        assignment[parts[0]] = parts[1]
    return validate_map(assignment, source, target, based=based)


# ---------------------------------------------------------------------------
# certificates


def _emit_shrinking(tag: str, axis: int, h: ShrinkingMap) -> str:
    return (f"{tag} {axis}: {_orient_text(h.source.orientation)} | {_orient_text(h.target.orientation)}"
            f" | {' '.join(str(x) for x in h.values)}")


def emit_certificate(cert: HomotopyCertificate, budget: Optional[SearchBudget] = None, name: str = "G") -> str:
    """Structured text with every subdivision table written out."""
    b = budget or default_budget()
    out = ["certificate 1",
           f"engine: states={b.max_states} len={b.max_axis_length} subdiv={b.max_subdivision_factor} "
           f"depth={b.max_depth} mode=single-threaded",
           emit_digraph(cert.source.target, name).rstrip("\n"),
           "map source", emit_map_block(cert.source).rstrip("\n"),
           "map target", emit_map_block(cert.target_map).rstrip("\n")]
    for k, (m, w) in enumerate(cert.steps, start=1):
        out.append(f"step {k} {w.direction:+d}")
        for a, h in enumerate(w.left):
            out.append(_emit_shrinking("left", a, h))
        for a, h in enumerate(w.right):
            out.append(_emit_shrinking("right", a, h))
        out.append("map")
        out.append(emit_map_block(m).rstrip("\n"))
    out.append("end")
    return "\n".join(out) + "\n"


def _parse_shrinking(no: int, text: str) -> Tuple[str, ShrinkingMap]:
    tag, _, rest = text.partition(" ")
    _, _, body = rest.partition(":")
    parts = body.split("|")
    if len(parts) != 3:
        raise ParseError(no, "shrinking maps are 'source | target | values'")
    src = LineDigraph(_parse_orient(parts[0].split(), no))
    tgt = LineDigraph(_parse_orient(parts[1].split(), no))
    try:
        vals = [int(x) for x in parts[2].split()]
    except ValueError:
        raise ParseError(no, "shrinking map values are integers") from None
    return tag, ShrinkingMap(src, tgt, vals)


def parse_certificate(text: str) -> HomotopyCertificate:
    """Inverse of :func:`emit_certificate`; the result is re-verified."""
    lines = list(enumerate(text.splitlines(), start=1))
    lines = [(n, t) for n, t in lines if _strip(t)]
    if not lines or not _strip(lines[0][1]).startswith("certificate"):
        raise ParseError(1, "not a certificate")
    pos = 1
    if pos < len(lines) and _strip(lines[pos][1]).startswith("engine:"):
        pos += 1
    doc, used = _parse_lines(lines[pos:], stops=True)
    G = doc.digraph
    pos += used

    def read_map(pos):
        head_doc = [(0, "digraph M")] + [(0, "vertices: " + " ".join(vertex_name(v) for v in G.vertices))]
        block = []
        while pos < len(lines):
            t = _strip(lines[pos][1])
            if t.split()[0] in _CERT_WORDS:
                break
            block.append(lines[pos])
            pos += 1
        d, _ = _parse_lines(head_doc + block, stops=True)
        d.digraph = G
        return _doc_map(d), pos

    def expect(prefix):
        nonlocal pos
        if pos >= len(lines) or not _strip(lines[pos][1]).startswith(prefix):
            no = lines[pos][0] if pos < len(lines) else lines[-1][0]
            raise ParseError(no, f"expected '{prefix}'")
        t = _strip(lines[pos][1])
        pos += 1
        return t

    expect("map source")
    source, pos = read_map(pos)
    expect("map target")
    target, pos = read_map(pos)
    steps = []
    while pos < len(lines) and _strip(lines[pos][1]).startswith("step"):
        no, t = lines[pos]
        parts = _strip(t).split()
        if len(parts) != 3 or parts[2] not in ("+1", "-1"):
            raise ParseError(no, "step lines look like 'step k +1'")
        pos += 1
        left, right = [], []
        while pos < len(lines) and _strip(lines[pos][1]).startswith(("left", "right")):
            tag, h = _parse_shrinking(lines[pos][0], _strip(lines[pos][1]))
            (left if tag == "left" else right).append(h)
            pos += 1
        expect("map")
        m, pos = read_map(pos)
        steps.append((m, OneStepWitness(left, right, int(parts[2]))))
    expect("end")
    cert = HomotopyCertificate(source, target, steps)
    cert.verify()
    return cert


# ---------------------------------------------------------------------------
# DOT


def _dot_id(v) -> str:
    return '"' + vertex_name(v).replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(G: Digraph, name: str = "G") -> str:
    out = [f"digraph {_dot_id(name)} {{"]
    for v in G.vertices:
        extra = " [shape=doublecircle]" if v == G.basepoint else ""
        out.append(f"  {_dot_id(v)}{extra};")
    for u, w in G.sorted_arrows():
        out.append(f"  {_dot_id(u)} -> {_dot_id(w)};")
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# commands


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, path: Optional[str]):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _budget(args) -> SearchBudget:
    return default_budget(max_states=args.budget_states, max_axis_length=args.budget_len,
                          max_subdivision_factor=args.budget_subdiv)


def _load_digraph(path: str) -> Digraph:
    return parse_digraph(_read(path))


def cmd_pi0(args) -> int:
    G = _load_digraph(args.digraph)
    comps = pi0(G)
    print(f"components: {len(comps)}")
    for block in comps:
        print("  " + " ".join(vertex_name(v) for v in block))
    return 0


def cmd_product(args) -> int:
    A, B = _load_digraph(args.left), _load_digraph(args.right)
    if args.kind == "box":
        P = box_product(A, B)
    elif args.kind == "cart":
        P = cartesian_product(A, B)
    else:
        def sub(G, spec):
            keep = set(spec.split(",")) if spec else {G.basepoint}
            return induced_subdigraph(G.unbased(), keep)
        pair = relative_box_product(DigraphPair(A, sub(A, args.sub1)), DigraphPair(B, sub(B, args.sub2)))
        P = pair.ambient
        text = emit_digraph(P, args.name)
        text += "# sub: " + " ".join(vertex_name(v) for v in pair.sub.vertices) + "\n"
        _write(text, args.output)
        return 0
    _write(emit_digraph(P, args.name), args.output)
    return 0


def cmd_standardize(args) -> int:
    f = parse_map(_read(args.path), 1)
    fhat, h, cert = standardize(f)
    cert.verify()
    _write(emit_map(fhat), args.output)
    print("# shrinking map: " + " ".join(str(x) for x in h.values), file=sys.stderr)
    return 0


def cmd_minimal(args) -> int:
    f = parse_map(_read(args.path), 1)
    cert = minimal_certificate(f)
    cert.verify()
    print(f"class: {vertex_name(f.key())}")
    print(f"length: {cert.bottom.length}")
    return 0


def cmd_homotopic(args) -> int:
    f = parse_map(_read(args.first), args.dim)
    g = parse_map(_read(args.second), args.dim)
    budget = _budget(args)
    res = f_homotopic(f, g, budget)
    if is_exhausted(res):
        print(f"EXHAUSTED: {res.reason}")
        for k, v in sorted(res.stats.items()):
            print(f"  {k}: {v}")
        return 1
    res.verify()
    print(f"homotopic: {len(res.steps)} steps")
    for k, v in sorted(res.stats.items()):
        print(f"  {k}: {v}")
    if args.cert:
        _write(emit_certificate(res, budget), args.cert)
    return 0


def cmd_check_cert(args) -> int:
    try:
        cert = parse_certificate(_read(args.path))
    except (DigraphError, ValueError) as exc:
        print(f"FAIL: {exc}")
        return 1
    print(f"ok: {len(cert.steps)} steps verified")
    return 0


def cmd_loop_digraph(args) -> int:
    from .spaces import build_reduced_loop_digraph, build_unreduced_loop_digraph
    G = _load_digraph(args.digraph)
    if args.reduced:
        D = build_reduced_loop_digraph(G, args.max_len).digraph
    else:
        D = build_unreduced_loop_digraph(G, args.max_len)
    _write(emit_digraph(D, args.name), args.output)
    return 0


def cmd_path_digraph(args) -> int:
    from .spaces import build_reduced_path_digraph
    G = _load_digraph(args.digraph)
    _write(emit_digraph(build_reduced_path_digraph(G, args.max_len).digraph, args.name), args.output)
    return 0


def _load_based_map(args):
    X, G = _load_digraph(args.source), _load_digraph(args.target)
    return parse_vertex_map(_read(args.map), X, G, based=True)


def cmd_mapping_path(args) -> int:
    from .spaces import build_mapping_path_digraph
    f = _load_based_map(args)
    P = build_mapping_path_digraph(f, args.max_len)
    _write(emit_digraph(P.digraph, args.name), args.output)
    return 0


def cmd_pullback(args) -> int:
    from .spaces import pullback
    X, Y, Z = _load_digraph(args.x), _load_digraph(args.y), _load_digraph(args.z)
    based = X.basepoint is not None and Y.basepoint is not None and Z.basepoint is not None
    f = parse_vertex_map(_read(args.f), X, Z, based=based)
    g = parse_vertex_map(_read(args.g), Y, Z, based=based)
    P, _, _ = pullback(f, g)
    _write(emit_digraph(P, args.name), args.output)
    return 0


def cmd_puppe_pi0(args) -> int:
    from .spaces import check_pi0_exactness
    f = _load_based_map(args)
    rep = check_pi0_exactness(f, args.max_len)
    names = lambda s: " ".join(sorted((vertex_name(v) for v in s)))  # noqa: E731
    print(f"image:  {names(rep.image)}")
    print(f"kernel: {names(rep.kernel)}")
    print(f"stable between L={args.max_len} and L={args.max_len + 2}: {rep.stable}")
    print("PASS" if rep.passed else f"FAIL at {vertex_name(rep.counterexample)}")
    return 0 if rep.passed else 1


def cmd_example417(args) -> int:
    from .spaces import verify_example_417
    rep = verify_example_417(_budget(args))
    print(f"f validates: {rep.valid}")
    print(f"(v2,v2) is adjacent exactly to the four bold vertices: {rep.centre_neighbours_are_bold}")
    print(f"bold vertices pairwise non-adjacent: {rep.bold_pairwise_nonadjacent}")
    print(f"* not adjacent to (v2,v2): {rep.base_not_adjacent_to_centre}")
    print(f"constant map reached: {rep.constant_reached}")
    for k, v in sorted(rep.search.items()):
        print(f"  {k}: {v}")
    return 0 if rep.passed else 1


def cmd_export_dot(args) -> int:
    doc = parse_document(_read(args.digraph))
    _write(emit_dot(doc.digraph, doc.name), args.output)
    return 0


def _search_flags(p: argparse.ArgumentParser):
    p.add_argument("--budget-states", type=int, default=None, help="state cap (default 2000000 or $DGH_BUDGET_STATES)")
    p.add_argument("--budget-subdiv", type=int, default=None, help="subdivision factor cap")
    p.add_argument("--budget-len", type=int, default=None, help="axis length cap")
    p.add_argument("--threads", type=int, default=1, help="accepted; the engine runs single-threaded")
    p.add_argument("--seed", type=int, default=0, help="accepted; the searches are deterministic")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dgh", description="Homotopy computations on finite digraphs.")
    ap.add_argument("--version", action="version", version=f"dgh {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi0", help="weak components")
    p.add_argument("digraph")
    p.set_defaults(func=cmd_pi0)

    p = sub.add_parser("product", help="box, Cartesian or relative box product")
    p.add_argument("kind", choices=["box", "cart", "relbox"])
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--sub1", help="comma-separated vertices of the first sub-digraph (default: basepoint)")
    p.add_argument("--sub2", help="same for the second factor")
    p.add_argument("--name", default="P")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("standardize", help="standard subdivision of a path")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_standardize)

    p = sub.add_parser("minimal", help="minimal path and class of a path")
    p.add_argument("path")
    p.set_defaults(func=cmd_minimal)

    p = sub.add_parser("homotopic", help="search for an F-homotopy certificate")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--cert", help="write the certificate here")
    _search_flags(p)
    p.set_defaults(func=cmd_homotopic)

    p = sub.add_parser("check-cert", help="re-verify a certificate file")
    p.add_argument("path")
    p.set_defaults(func=cmd_check_cert)

    p = sub.add_parser("loop-digraph", help="truncated loop digraph")
    p.add_argument("digraph")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--name", default="L")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_loop_digraph)

    p = sub.add_parser("path-digraph", help="truncated reduced path digraph")
    p.add_argument("digraph")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--name", default="P")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_path_digraph)

    for cmd, func, helptext in (("mapping-path", cmd_mapping_path, "mapping path digraph P_f"),
                                ("puppe-pi0", cmd_puppe_pi0, "exactness check at pi0")):
        p = sub.add_parser(cmd, help=helptext)
        p.add_argument("source")
        p.add_argument("target")
        p.add_argument("--map", required=True, help="file with lines 'x = y'")
        p.add_argument("--max-len", type=int, required=True)
        if cmd == "mapping-path":
            p.add_argument("--name", default="Pf")
            p.add_argument("-o", "--output")
        p.set_defaults(func=func)

    p = sub.add_parser("pullback", help="pullback of X -> Z <- Y")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("z")
    p.add_argument("--f", required=True, help="map X -> Z")
    p.add_argument("--g", required=True, help="map Y -> Z")
    p.add_argument("--name", default="P")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("verify-example417", help="structural facts and bounded search for the 3x3 example")
    _search_flags(p)
    p.set_defaults(func=cmd_example417)

    p = sub.add_parser("export-dot", help="Graphviz DOT for a digraph file")
    p.add_argument("digraph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (DigraphError, OSError) as exc:
        print(f"dgh: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
