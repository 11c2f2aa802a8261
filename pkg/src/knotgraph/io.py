"""Text formats for graphs and chains, and Graphviz export.

Graph documents::

    backbone=circle parity=odd v_e=3 v_i=1
    order 1 2 3                 # optional: external labels along the backbone
    edge 1 4                    # odd: oriented edge src -> dst
    edge 2 2 halforder 1 2      # odd: external loop with its half-edge order
    edge 1 1 4                  # even: edge <label> <u> <v>

Chain documents hold named graph blocks followed by coefficient lines::

    graph phi
    backbone=circle parity=even v_e=4 v_i=0
    edge 1 1 3
    edge 2 2 4
    end
    1/4 phi
    -1/3 tripod

A coefficient line with two names describes a tensor term.  ``#`` starts a
comment.  Coefficients refer to the decorated graph as written; reading a
chain canonicalizes every block and folds its sign into the coefficient.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import TensorChain
from .complex import Chain
from .errors import GraphSyntaxError
from .graph import BACKBONES, EVEN, ODD, PARITIES, RawGraph, canonicalize, validate

_HEADER = re.compile(r"(\w+)=(\S+)")
_NAME = re.compile(r"[A-Za-z_][\w.-]*$")


def _strip(line):
    return line.split("#", 1)[0].rstrip()


def _int(tok, lineno, col):
    try:
        return int(tok)
    except ValueError:
        raise GraphSyntaxError(lineno, col, f"expected an integer, found {tok!r}") from None


def _tokens(line):
    """``(column, token)`` pairs, columns 1-based."""
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def _parse_lines(lines, first_lineno=1, check=True):
    header = None
    order = None
    edges = {}
    plain = []
    halves = []
    for offset, raw in enumerate(lines):
        lineno = first_lineno + offset
        line = _strip(raw)
        toks = _tokens(line)
        if not toks:
            continue
        if header is None:
            fields = {}
            for col, tok in toks:
                m = _HEADER.fullmatch(tok)
                if not m:
                    raise GraphSyntaxError(lineno, col, f"expected key=value, found {tok!r}")
                fields[m.group(1)] = (col, m.group(2))
            for key in ("backbone", "parity", "v_e", "v_i"):
                if key not in fields:
                    raise GraphSyntaxError(lineno, 1, f"header is missing {key}=")
            extra = set(fields) - {"backbone", "parity", "v_e", "v_i"}
            if extra:
                key = sorted(extra)[0]
                raise GraphSyntaxError(lineno, fields[key][0], f"unknown header field {key!r}")
            bb = fields["backbone"][1]
            if bb not in BACKBONES:
                raise GraphSyntaxError(lineno, fields["backbone"][0], f"unknown backbone {bb!r}")
            par = fields["parity"][1]
            if par not in PARITIES:
                raise GraphSyntaxError(lineno, fields["parity"][0], f"unknown parity {par!r}")
            header = (
                bb,
                par,
                _int(fields["v_e"][1], lineno, fields["v_e"][0] + 4),
                _int(fields["v_i"][1], lineno, fields["v_i"][0] + 4),
            )
            continue
        col, word = toks[0]
        if word == "order":
            if order is not None:
                raise GraphSyntaxError(lineno, col, "duplicate order line")
            order = tuple(_int(t, lineno, c) for c, t in toks[1:])
        elif word == "edge":
            args = toks[1:]
            if header[1] == ODD:
                if len(args) not in (2, 5):
                    raise GraphSyntaxError(lineno, col, "odd edges read 'edge <src> <dst> [halforder a b]'")
                u, v = (_int(t, lineno, c) for c, t in args[:2])
                h = None
                if len(args) == 5:
                    if args[2][1] != "halforder":
                        raise GraphSyntaxError(lineno, args[2][0], f"expected 'halforder', found {args[2][1]!r}")
                    h = tuple(_int(t, lineno, c) for c, t in args[3:])
                plain.append((u, v))
                halves.append(h)
            else:
                if len(args) != 3:
                    raise GraphSyntaxError(lineno, col, "even edges read 'edge <label> <u> <v>'")
                label, u, v = (_int(t, lineno, c) for c, t in args)
                if label in edges:
                    raise GraphSyntaxError(lineno, args[0][0], f"edge label {label} used twice")
                edges[label] = (u, v, lineno, args[0][0])
        else:
            raise GraphSyntaxError(lineno, col, f"unknown directive {word!r}")
    if header is None:
        raise GraphSyntaxError(first_lineno, 1, "empty graph document")
    bb, par, n_ext, n_int = header
    if par == EVEN:
        labels = sorted(edges)
        if labels != list(range(1, len(labels) + 1)):
            bad = next(l for i, l in enumerate(labels) if l != i + 1)
            _, _, lineno, col = edges[bad]
            raise GraphSyntaxError(lineno, col, f"edge labels must be 1..{len(labels)}")
        g = RawGraph(bb, par, n_ext, n_int, tuple(edges[l][:2] for l in labels), ext_order=order)
    else:
        has_half = any(h is not None for h in halves)
        g = RawGraph(
            bb, par, n_ext, n_int, tuple(plain), ext_order=order,
            half_orders=tuple(halves) if has_half else None,
        )
    if check:
        validate(g)
    return g


def parse_graph(text, check=True):
    """Read one graph document into a :class:`RawGraph` (validated by default)."""
    return _parse_lines(text.splitlines(), check=check)


def serialize(g):
    """Text form of a canonical (or raw) graph."""
    lines = [f"backbone={g.backbone} parity={g.parity} v_e={g.n_ext} v_i={g.n_int}"]
    raw = g if isinstance(g, RawGraph) else g.to_raw()
    if raw.ext_order is not None:
        lines.append("order " + " ".join(map(str, raw.ext_order)))
    for a, (u, v) in enumerate(raw.edges):
        if raw.parity == ODD:
            h = raw.half_orders[a] if raw.half_orders else None
            suffix = f" halforder {h[0]} {h[1]}" if h else ""
            lines.append(f"edge {u} {v}{suffix}")
        else:
            lines.append(f"edge {a + 1} {u} {v}")
    return "\n".join(lines) + "\n"


# -- chains -------------------------------------------------------------------


def parse_chain(text):
    """Read a chain document; returns a :class:`Chain` or a :class:`TensorChain`."""
    lines = text.splitlines()
    graphs = {}
    terms = []
    i = 0
    while i < len(lines):
        line = _strip(lines[i])
        toks = _tokens(line)
        if not toks:
            i += 1
            continue
        if toks[0][1] == "graph":
            if len(toks) != 2 or not _NAME.match(toks[1][1]):
                raise GraphSyntaxError(i + 1, toks[0][0], "expected 'graph <name>'")
            name = toks[1][1]
            if name in graphs:
                raise GraphSyntaxError(i + 1, toks[1][0], f"graph {name!r} defined twice")
            start = i + 1
            j = start
            while j < len(lines) and _strip(lines[j]).strip() != "end":
                j += 1
            if j == len(lines):
                raise GraphSyntaxError(i + 1, 1, f"graph {name!r} has no 'end'")
            graphs[name] = canonicalize(_parse_lines(lines[start:j], start + 1))
            i = j + 1
            continue
        col, tok = toks[0]
        try:
            coef = Fraction(tok)
        except (ValueError, ZeroDivisionError):
            raise GraphSyntaxError(i + 1, col, f"expected a rational coefficient, found {tok!r}") from None
        names = toks[1:]
        if len(names) not in (1, 2):
            raise GraphSyntaxError(i + 1, col, "expected '<coefficient> <graph> [<graph>]'")
        terms.append((i + 1, coef, names))
        i += 1
    arities = {len(n) for _, _, n in terms}
    if len(arities) > 1:
        raise GraphSyntaxError(terms[-1][0], 1, "mixing single and tensor terms")
    tensor = arities == {2}
    out = TensorChain() if tensor else Chain()
    for lineno, coef, names in terms:
        parts = []
        for col, name in names:
            if name not in graphs:
                raise GraphSyntaxError(lineno, col, f"unknown graph {name!r}")
            parts.append(graphs[name])
        sign = 1
        for sg in parts:
            sign *= sg.sign
        if sign == 0:
            continue
        if tensor:
            out.add(tuple(sg.graph for sg in parts), coef * sign)
        else:
            out = out + Chain.of(parts[0], coef)
    return out


def serialize_chain(c):
    """Chain (or tensor chain) document; graphs are named ``g1, g2, ...``."""
    names = {}
    blocks = []

    def name(g):
        if g not in names:
            names[g] = f"g{len(names) + 1}"
            blocks.append(f"graph {names[g]}\n{serialize(g)}end\n")
        return names[g]

    rows = []
    for key, coef in c:
        keys = key if isinstance(key, tuple) else (key,)
        rows.append(f"{coef} " + " ".join(name(g) for g in keys))
    return "".join(blocks) + "\n".join(rows) + ("\n" if rows else "")


# -- Graphviz -----------------------------------------------------------------


def to_dot(g, name="G"):
    """DOT text: externals on a cycle (circle) or path (line), internals free."""
    lines = [f"graph {name} {{", "  node [shape=circle, fontsize=10];"]
    for x in range(g.n_ext):
        lines.append(f'  v{x + 1} [label="{x + 1}", style=filled, fillcolor=lightgray];')
    for x in range(g.n_ext, g.n_vertices):
        lines.append(f'  v{x + 1} [label="", shape=point, width=0.12];')
    for x in range(g.n_ext - 1):
        lines.append(f"  v{x + 1} -- v{x + 2} [style=bold, color=gray];")
    if g.backbone == "circle" and g.n_ext > 1:
        lines.append(f"  v{g.n_ext} -- v1 [style=bold, color=gray];")
    for a, (u, v) in enumerate(g.edges):
        if g.parity == ODD:
            lines.append(f"  v{u + 1} -- v{v + 1} [dir=forward];")
        else:
            lines.append(f'  v{u + 1} -- v{v + 1} [label="{a + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
