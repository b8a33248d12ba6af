"""Line-oriented UTF-8 text formats for every certificate type, with byte
exact round-tripping of canonical files and located parse diagnostics.

Formats (vertex indices are 0-based, lists sorted ascending):

  graph <n>                 one ``e <u> <v>`` line per edge, u < v
  cuts <n> <m>              m lines, each the sorted A-side (possibly empty)
  hgraph <n> <m>            m lines of sorted hyperedge members
  packing <n> <k>           per biclique: ``A: ...`` then ``B: ...``
  covering <n> <k> t <t>    same body as packing
  fooling <n> <m>           per pair: ``K: ...`` then ``S: ...``
  ccp <n>                   n(n-1)/2 lines ``<u> <v> <A|B|C>``
  lists <n>                 per vertex one line of sorted color tokens
  stubborn <n>              edge lines, then a ``lists <n>`` section
  coverings                 ``lists`` blocks joined by ``--`` lines
"""

from __future__ import annotations

from fractions import Fraction

from .csp import COLOR_NAMES, CcpInstance, StubbornInstance
from .graphs import Graph, from_edges
from .packing import (BicliqueCovering, FoolingSet, OrientedBiclique,
                      PackingCertificate)
from .separator import Cut, CutFamily


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


def _tokens(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        yield i, raw


def _ints(parts, n, lineno, what="vertex"):
    out = []
    for p in parts:
        try:
            v = int(p)
        except ValueError:
            raise FormatError(f"bad {what} token {p!r}", lineno)
        if not 0 <= v < n:
            raise FormatError(f"{what} {v} out of range [0, {n})", lineno)
        out.append(v)
    return out


def _header(line: str, lineno: int, keyword: str, argc: int) -> list[int]:
    parts = line.split()
    if not parts or parts[0] != keyword:
        raise FormatError(f"expected {keyword!r} header", lineno)
    if len(parts) != argc + 1:
        raise FormatError(f"{keyword} header takes {argc} integers", lineno)
    try:
        return [int(p) for p in parts[1:]]
    except ValueError:
        raise FormatError(f"non-integer in {keyword} header", lineno)


# -- graphs -------------------------------------------------------------------


def emit_graph(g: Graph) -> str:
    lines = [f"graph {g.n}"]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    it = _tokens(text)
    try:
        lineno, line = next(it)
    except StopIteration:
        raise FormatError("empty graph file")
    (n,) = _header(line, lineno, "graph", 1)
    edges = []
    seen = set()
    for lineno, line in it:
        if not line.strip():
            continue
        parts = line.split()
        if parts[0] != "e" or len(parts) != 3:
            raise FormatError("edge lines look like 'e <u> <v>'", lineno)
        u, v = _ints(parts[1:], n, lineno)
        if u == v:
            raise FormatError(f"self-loop at {u}", lineno)
        if u > v:
            raise FormatError("edges must be written with u < v", lineno)
        if (u, v) in seen:
            raise FormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add((u, v))
        edges.append((u, v))
    return from_edges(n, edges)


# -- cut families ---------------------------------------------------------------


def emit_cut_family(f: CutFamily) -> str:
    lines = [f"cuts {f.host_n} {len(f.cuts)}"]
    for c in f.cuts:
        lines.append(" ".join(str(v) for v in sorted(c.side_a)))
    return "\n".join(lines) + "\n"


def parse_cut_family(text: str) -> CutFamily:
    rows = text.splitlines()
    if not rows:
        raise FormatError("empty cut file")
    n, m = _header(rows[0], 1, "cuts", 2)
    if len(rows) < m + 1:
        raise FormatError(f"expected {m} cut lines", len(rows))
    cuts = []
    seen = set()
    for i in range(m):
        lineno = i + 2
        members = _ints(rows[i + 1].split(), n, lineno)
        mask = 0
        for v in members:
            mask |= 1 << v
        if mask in seen:
            raise FormatError("duplicate cut", lineno)
        seen.add(mask)
        cuts.append(Cut(n, mask))
    return CutFamily(n, cuts)


# -- hypergraphs -----------------------------------------------------------------


def emit_hypergraph(h) -> str:
    lines = [f"hgraph {h.n} {len(h.edges)}"]
    for e in h.edges:
        lines.append(" ".join(str(v) for v in sorted(e)))
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str):
    from .transversal import Hypergraph
    rows = text.splitlines()
    if not rows:
        raise FormatError("empty hypergraph file")
    n, m = _header(rows[0], 1, "hgraph", 2)
    if len(rows) < m + 1:
        raise FormatError(f"expected {m} hyperedge lines", len(rows))
    edges = []
    for i in range(m):
        edges.append(frozenset(_ints(rows[i + 1].split(), n, i + 2)))
    return Hypergraph(n, edges)


# -- packings and coverings --------------------------------------------------------


def _emit_side(tag: str, members) -> str:
    body = " ".join(str(v) for v in sorted(members))
    return f"{tag}: {body}".rstrip()


def _parse_side(row: str, tag: str, n: int, lineno: int) -> frozenset:
    if not row.startswith(f"{tag}:"):
        raise FormatError(f"expected a '{tag}:' line", lineno)
    return frozenset(_ints(row[len(tag) + 1:].split(), n, lineno))


def emit_packing(cert: PackingCertificate) -> str:
    lines = [f"packing {cert.host.n} {len(cert.bicliques)}"]
    for bc in cert.bicliques:
        lines.append(_emit_side("A", bc.a_side))
        lines.append(_emit_side("B", bc.b_side))
    return "\n".join(lines) + "\n"


def parse_packing(text: str, host: Graph) -> PackingCertificate:
    rows = text.splitlines()
    if not rows:
        raise FormatError("empty packing file")
    n, k = _header(rows[0], 1, "packing", 2)
    if n != host.n:
        raise FormatError(f"certificate is for {n} vertices, host has {host.n}", 1)
    if len(rows) < 1 + 2 * k:
        raise FormatError(f"expected {2 * k} side lines", len(rows))
    bicliques = []
    for i in range(k):
        a = _parse_side(rows[1 + 2 * i], "A", n, 2 + 2 * i)
        b = _parse_side(rows[2 + 2 * i], "B", n, 3 + 2 * i)
        bicliques.append(OrientedBiclique(a, b))
    return PackingCertificate(host, tuple(bicliques))


def emit_covering(cov: BicliqueCovering) -> str:
    lines = [f"covering {cov.host.n} {len(cov.bicliques)} t {cov.t}"]
    for left, right in cov.bicliques:
        lines.append(_emit_side("A", left))
        lines.append(_emit_side("B", right))
    return "\n".join(lines) + "\n"


def parse_covering(text: str, host: Graph) -> BicliqueCovering:
    rows = text.splitlines()
    if not rows:
        raise FormatError("empty covering file")
    parts = rows[0].split()
    if len(parts) != 5 or parts[0] != "covering" or parts[3] != "t":
        raise FormatError("covering header looks like 'covering <n> <k> t <t>'", 1)
    try:
        n, k, t = int(parts[1]), int(parts[2]), int(parts[4])
    except ValueError:
        raise FormatError("non-integer in covering header", 1)
    if n != host.n:
        raise FormatError(f"covering is for {n} vertices, host has {host.n}", 1)
    if len(rows) < 1 + 2 * k:
        raise FormatError(f"expected {2 * k} side lines", len(rows))
    bicliques = []
    for i in range(k):
        left = _parse_side(rows[1 + 2 * i], "A", n, 2 + 2 * i)
        right = _parse_side(rows[2 + 2 * i], "B", n, 3 + 2 * i)
        bicliques.append((left, right))
    return BicliqueCovering(host, tuple(bicliques), t)


def emit_fooling(fs: FoolingSet) -> str:
    lines = [f"fooling {fs.host.n} {len(fs.pairs)}"]
    for k, s in fs.pairs:
        lines.append(_emit_side("K", k))
        lines.append(_emit_side("S", s))
    return "\n".join(lines) + "\n"


def parse_fooling(text: str, host: Graph) -> FoolingSet:
    rows = text.splitlines()
    if not rows:
        raise FormatError("empty fooling-set file")
    n, m = _header(rows[0], 1, "fooling", 2)
    if n != host.n:
        raise FormatError(f"fooling set is for {n} vertices, host has {host.n}", 1)
    if len(rows) < 1 + 2 * m:
        raise FormatError(f"expected {2 * m} pair lines", len(rows))
    pairs = []
    for i in range(m):
        k = _parse_side(rows[1 + 2 * i], "K", n, 2 + 2 * i)
        s = _parse_side(rows[2 + 2 * i], "S", n, 3 + 2 * i)
        pairs.append((k, s))
    return FoolingSet(host, tuple(pairs))


# -- edge colorings and list assignments ---------------------------------------------


def emit_ccp(inst: CcpInstance) -> str:
    lines = [f"ccp {inst.n}"]
    for u in range(inst.n):
        for v in range(u + 1, inst.n):
            lines.append(f"{u} {v} {COLOR_NAMES[inst.color(u, v)]}")
    return "\n".join(lines) + "\n"


def parse_ccp(text: str) -> CcpInstance:
    rows = text.splitlines()
    if not rows:
        raise FormatError("empty edge-coloring file")
    (n,) = _header(rows[0], 1, "ccp", 1)
    want = n * (n - 1) // 2
    colors = {}
    for i, row in enumerate(rows[1:], start=2):
        if not row.strip():
            continue
        parts = row.split()
        if len(parts) != 3:
            raise FormatError("edge color lines look like '<u> <v> <A|B|C>'", i)
        u, v = _ints(parts[:2], n, i)
        if u >= v:
            raise FormatError("edges must be written with u < v", i)
        if parts[2] not in COLOR_NAMES:
            raise FormatError(f"unknown color {parts[2]!r}", i)
        if (u, v) in colors:
            raise FormatError(f"duplicate pair ({u}, {v})", i)
        colors[(u, v)] = COLOR_NAMES.index(parts[2])
    if len(colors) != want:
        raise FormatError(f"expected {want} colored pairs, found {len(colors)}")
    flat = []
    for u in range(n):
        for v in range(u + 1, n):
            flat.append(colors[(u, v)])
    return CcpInstance(n, flat)


_CCP_TOKENS = {name: i for i, name in enumerate(COLOR_NAMES)}
_STUBBORN_TOKENS = {f"A{i}": i for i in (1, 2, 3, 4)}


def _emit_lists(lists, tokens_by_value) -> list[str]:
    lines = [f"lists {len(lists)}"]
    for lst in lists:
        lines.append(" ".join(tokens_by_value[v] for v in sorted(lst)))
    return lines


def _parse_lists(rows, start: int, token_map) -> tuple[tuple, int]:
    (n,) = _header(rows[start], start + 1, "lists", 1)
    if len(rows) < start + 1 + n:
        raise FormatError(f"expected {n} list lines", len(rows))
    lists = []
    for i in range(n):
        lineno = start + 2 + i
        vals = []
        for tok in rows[start + 1 + i].split():
            if tok not in token_map:
                raise FormatError(f"unknown color token {tok!r}", lineno)
            vals.append(token_map[tok])
        if not vals:
            raise FormatError("empty color list", lineno)
        lists.append(frozenset(vals))
    return tuple(lists), start + 1 + n


def emit_ccp_assignment(lists) -> str:
    names = {i: COLOR_NAMES[i] for i in range(3)}
    return "\n".join(_emit_lists(lists, names)) + "\n"


def emit_ccp_covering(covering) -> str:
    names = {i: COLOR_NAMES[i] for i in range(3)}
    blocks = ["\n".join(_emit_lists(la, names)) for la in covering]
    return "\n--\n".join(blocks) + "\n"


def parse_ccp_covering(text: str) -> list[tuple]:
    return _parse_covering_blocks(text, _CCP_TOKENS)


def emit_stubborn_covering(covering) -> str:
    names = {i: f"A{i}" for i in (1, 2, 3, 4)}
    blocks = ["\n".join(_emit_lists(la, names)) for la in covering]
    return "\n--\n".join(blocks) + "\n"


def parse_stubborn_covering(text: str) -> list[tuple]:
    return _parse_covering_blocks(text, _STUBBORN_TOKENS)


def _parse_covering_blocks(text: str, token_map) -> list[tuple]:
    rows = text.splitlines()
    out = []
    pos = 0
    while pos < len(rows):
        if not rows[pos].strip() or rows[pos].strip() == "--":
            pos += 1
            continue
        la, pos = _parse_lists(rows, pos, token_map)
        out.append(la)
    if not out:
        raise FormatError("no list assignments found")
    return out


def emit_stubborn(inst: StubbornInstance) -> str:
    g = inst.graph
    lines = [f"stubborn {g.n}"]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    names = {i: f"A{i}" for i in (1, 2, 3, 4)}
    lines += _emit_lists(inst.lists, names)
    return "\n".join(lines) + "\n"


def parse_stubborn(text: str) -> StubbornInstance:
    rows = text.splitlines()
    if not rows:
        raise FormatError("empty instance file")
    (n,) = _header(rows[0], 1, "stubborn", 1)
    edges = []
    seen = set()
    pos = 1
    while pos < len(rows) and rows[pos].startswith("e "):
        parts = rows[pos].split()
        if len(parts) != 3:
            raise FormatError("edge lines look like 'e <u> <v>'", pos + 1)
        u, v = _ints(parts[1:], n, pos + 1)
        if u >= v or (u, v) in seen:
            raise FormatError(f"bad or duplicate edge ({u}, {v})", pos + 1)
        seen.add((u, v))
        edges.append((u, v))
        pos += 1
    lists, _ = _parse_lists(rows, pos, _STUBBORN_TOKENS)
    if len(lists) != n:
        raise FormatError("list section size disagrees with the header")
    return StubbornInstance(from_edges(n, edges), lists)


# -- misc ---------------------------------------------------------------------------


def emit_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad fraction {text!r}")
