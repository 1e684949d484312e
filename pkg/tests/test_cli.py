import subprocess
import sys

import pytest
from hypothesis import given

from dgh.cli import (
    emit_certificate,
    emit_digraph,
    emit_dot,
    emit_map,
    main,
    parse_certificate,
    parse_digraph,
    parse_map,
    parse_vertex_map,
)
from dgh.core import Digraph, LineDigraph, point
from dgh.errors import ParseError, SelfLoop
from dgh.grids import unit
from dgh.homotopy import f_homotopic
from dgh.lines import PathMap, concatenate, invert
from dgh.spaces import example_417_digraph, example_417_map

from samplers import digraphs

SQUARE = """\
digraph square
vertices: 0 1 2 3
base: 0
arrows:
0 -> 1
1 -> 2
2 -> 3
3 -> 0
"""


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_small_document():
    G = parse_digraph("digraph t\nvertices: a b\nbase: a\narrows:\na -> b\n")
    assert (len(G), len(G.arrows), G.basepoint) == (2, 1, "a")


def test_self_loop_reports_its_line():
    with pytest.raises(SelfLoop) as exc:
        parse_digraph("digraph t\nvertices: a\narrows:\na -> a\n")
    assert exc.value.line == 4


@pytest.mark.parametrize("text", [
    "vertices: a\n",
    "digraph t\nvertices: a\narrows:\na -> b\n",
    "digraph t\nvertices: a b\narrows:\na => b\n",
    "digraph t\nvertices: a a\n",
    "digraph t\nvertices: a\nbase: b\n",
    "digraph t\nvertices: a\nfoo\n",
])
def test_malformed_documents(text):
    with pytest.raises(ParseError):
        parse_digraph(text)


def test_example_document():
    G = example_417_digraph()
    H = parse_digraph(emit_digraph(G, "ex417"))
    assert (len(H), len(H.arrows)) == (10, 20)
    assert len([u for u, _ in H.arrows if u == "*"]) == 8
    assert H == G


@given(digraphs(6))
def test_round_trip(G):
    named = Digraph([str(v) for v in G.vertices], [(str(u), str(w)) for u, w in G.arrows], basepoint="0")
    text = emit_digraph(named)
    assert parse_digraph(text) == named
    assert emit_digraph(parse_digraph(text)) == text


def test_vertex_names_with_keywords():
    G = Digraph(["map1", "step", "end"], [("map1", "step")], basepoint="map1")
    assert parse_digraph(emit_digraph(G)) == G


def test_maps_round_trip():
    G = Digraph("*ab", [("*", "a"), ("b", "a"), ("b", "*")], basepoint="*")
    f = PathMap(LineDigraph([True, False, True]), G, "*ab*", "loop")
    assert parse_map(emit_map(f)) == f
    grid = example_417_map()
    assert parse_map(emit_map(grid), 2) == grid


def test_vertex_map_file():
    X = parse_digraph("digraph x\nvertices: p q\nbase: p\narrows:\np -> q\n")
    f = parse_vertex_map("p = 0\nq = 1\n", X, parse_digraph(SQUARE))
    assert f.assignment == {"p": "0", "q": "1"}
    with pytest.raises(ParseError):
        parse_vertex_map("p 0\n", X, parse_digraph(SQUARE))


def test_certificate_round_trip():
    G = Digraph("*a", [("*", "a")], basepoint="*")
    f = PathMap(LineDigraph.standard(2), G, "*a*", "loop")
    ff = concatenate(f, invert(f), standard_loop=True)
    e = PathMap(LineDigraph.standard(2), G, "***", "loop")
    cert = f_homotopic(ff, e)
    back = parse_certificate(emit_certificate(cert))
    assert len(back) == len(cert) and back.verify()
    assert back.source == ff and back.target_map == e


def test_tampered_certificate_is_rejected():
    G = Digraph("*a", [("*", "a")], basepoint="*")
    f = PathMap(LineDigraph.standard(4), G, "*a*a*", "loop")
    e = PathMap(LineDigraph.standard(2), G, "***", "loop")
    text = emit_certificate(f_homotopic(f, e))
    # the step into *** runs backwards; forwards it would need a -> *
    assert "step 2 -1" in text
    bad = text.replace("step 2 -1", "step 2 +1")
    assert bad != text
    with pytest.raises(Exception):
        parse_certificate(bad)


def test_dot_counts():
    G = example_417_digraph()
    dot = emit_dot(G, "ex")
    assert dot.count("->") == len(G.arrows)
    assert dot.startswith("digraph")


# -- commands

def test_pi0_command(tmp_path, capsys):
    path = write(tmp_path, "g.dg", "digraph g\nvertices: a b c\narrows:\na -> b\n")
    assert main(["pi0", path]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "components: 2"


def test_homotopic_command(tmp_path, capsys):
    G = Digraph("*a", [("*", "a")], basepoint="*")
    a = write(tmp_path, "a.loop", emit_map(PathMap(LineDigraph.standard(4), G, "*a*a*", "loop")))
    b = write(tmp_path, "b.loop", emit_map(PathMap(LineDigraph.standard(2), G, "***", "loop")))
    cert = str(tmp_path / "c.cert")
    assert main(["homotopic", "--dim", "1", a, b, "--cert", cert]) == 0
    assert "homotopic:" in capsys.readouterr().out
    assert main(["check-cert", cert]) == 0


def test_exhausted_exit_code(tmp_path, capsys):
    G = example_417_digraph()
    a = write(tmp_path, "f.grid", emit_map(example_417_map(G)))
    b = write(tmp_path, "e.grid", emit_map(unit(G, 2)))
    assert main(["homotopic", "--dim", "2", a, b, "--budget-states", "500"]) == 1
    assert "EXHAUSTED" in capsys.readouterr().out


def test_usage_errors(tmp_path, capsys):
    assert main(["pi0", str(tmp_path / "missing.dg")]) == 2
    bad = write(tmp_path, "bad.dg", "digraph t\nvertices: a\narrows:\na -> a\n")
    assert main(["pi0", bad]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_products(tmp_path, capsys):
    j = write(tmp_path, "j.dg", "digraph j\nvertices: 0 1\nbase: 0\narrows:\n0 -> 1\n")
    out = str(tmp_path / "p.dg")
    assert main(["product", "box", j, j, "-o", out]) == 0
    assert len(parse_digraph(open(out).read()).arrows) == 4
    assert main(["product", "cart", j, j, "-o", out]) == 0
    assert len(parse_digraph(open(out).read()).arrows) == 5
    assert main(["product", "relbox", j, j, "--sub1", "0,1", "--sub2", "0,1", "-o", out]) == 0
    assert "# sub:" in open(out).read()


def test_structure_commands(tmp_path, capsys):
    sq = write(tmp_path, "sq.dg", SQUARE)
    out = str(tmp_path / "l.dg")
    assert main(["loop-digraph", sq, "--reduced", "--max-len", "4", "-o", out]) == 0
    assert len(parse_digraph(open(out).read())) == 11
    assert main(["path-digraph", sq, "--max-len", "2", "-o", out]) == 0
    x = write(tmp_path, "x.dg", "digraph x\nvertices: p q\nbase: p\narrows:\np -> q\n")
    m = write(tmp_path, "f.map", "p = 0\nq = 1\n")
    assert main(["mapping-path", x, sq, "--map", m, "--max-len", "2", "-o", out]) == 0
    assert main(["puppe-pi0", x, sq, "--map", m, "--max-len", "2"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(["pullback", x, x, sq, "--f", m, "--g", m, "-o", out]) == 0
    assert len(parse_digraph(open(out).read())) == 2
    assert main(["export-dot", sq, "-o", str(tmp_path / "sq.dot")]) == 0


def test_paths_commands(tmp_path, capsys):
    G = Digraph("xyz", [("x", "y"), ("y", "z")], basepoint="x")
    p = write(tmp_path, "p.path", emit_map(PathMap(LineDigraph([True, True]), G, "xyz", "path")))
    out = str(tmp_path / "s.path")
    assert main(["standardize", p, "-o", out]) == 0
    assert parse_map(open(out).read()).values == tuple("xyyz")
    assert main(["minimal", p]) == 0
    assert "length: 2" in capsys.readouterr().out


def test_example_command_small_budget(capsys):
    assert main(["verify-example417", "--budget-states", "2000"]) == 0
    out = capsys.readouterr().out
    assert "constant map reached: False" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "dgh", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("dgh")


def test_point_round_trip():
    assert parse_digraph(emit_digraph(point())) == point()
