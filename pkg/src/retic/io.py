"""Plain-text serialization for table algebras and inductive systems.

Algebra files::

    # free-form comments
    version 1
    kind residuated-lattice        (or: bounded-lattice)
    name kowalski6                 (optional)
    elements 0 a b c d 1
    bot 0
    top 1
    table join
    0 b b c d a
    ...                            (one row per left argument, entries are
                                    element names; residuated kind adds
                                    mul and imp tables)

System files (``kind system``) declare indexed algebra files, order pairs
and connecting maps::

    version 1
    kind system
    index p chain2.rl
    index q chain2.rl
    order p q
    map p q 0 1                    (images of p's elements, in order)

Identity maps are implicit and closure maps are composed when forced.
Parse failures raise ParseError with 1-based line and column; semantic
failures surface as the usual validation errors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .core import KIND_BDL, KIND_RL, morphism, validate_bdl, validate_rl
from .errors import InvalidSystem, ParseError
from .reticulation import reticulate

_TABLES = {KIND_RL: ("join", "meet", "mul", "imp"), KIND_BDL: ("join", "meet")}


@dataclass(eq=False)
class AlgebraDocument:
    name: str | None
    algebra: object


def _significant(text):
    '''(line_no, tokens) for each non-blank, non-comment line.'''
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            out.append((i, body))
    return out


def _tokens(body):
    '''(col, token) pairs, 1-based columns.'''
    toks = []
    col = 0
    for tok in body.split():
        col = body.index(tok, col)
        toks.append((col + 1, tok))
        col += len(tok)
    return toks


def loads(text):
    """Parse one algebra document."""
    lines = _significant(text)
    if not lines:
        raise ParseError("empty document", 1, 1)
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 1
            raise ParseError("unexpected end of document", last, 1)
        item = lines[pos]
        pos += 1
        return item

    ln, body = take()
    if [t for _, t in _tokens(body)] != ["version", "1"]:
        raise ParseError("expected 'version 1'", ln, 1)

    kind = None
    name = None
    elements = None
    bot = top = None
    tables = {}

    def index_of(tok, ln, col):
        try:
            return elements.index(tok)
        except ValueError:
            raise ParseError(f"unknown element {tok!r}", ln, col) from None

    seen = set()
    while pos < len(lines):
        ln, body = take()
        toks = _tokens(body)
        col0, head = toks[0]
        rest = toks[1:]
        if head in {"kind", "name", "elements", "bot", "top"}:
            if head in seen:
                raise ParseError(f"duplicate {head}", ln, col0)
            seen.add(head)
        if head == "kind":
            if len(rest) != 1 or rest[0][1] not in _TABLES:
                raise ParseError("kind must be residuated-lattice or bounded-lattice",
                                 ln, col0)
            kind = rest[0][1]
        elif head == "name":
            if len(rest) != 1:
                raise ParseError("name takes one token", ln, col0)
            name = rest[0][1]
        elif head == "elements":
            if not rest:
                raise ParseError("elements list is empty", ln, col0)
            elements = [t for _, t in rest]
            if len(set(elements)) != len(elements):
                raise ParseError("element names must be distinct", ln, col0)
        elif head in {"bot", "top"}:
            if elements is None:
                raise ParseError(f"{head} before elements", ln, col0)
            if len(rest) != 1:
                raise ParseError(f"{head} takes one element", ln, col0)
            v = index_of(rest[0][1], ln, rest[0][0])
            if head == "bot":
                bot = v
            else:
                top = v
        elif head == "table":
            if kind is None:
                raise ParseError("table before kind", ln, col0)
            if elements is None:
                raise ParseError("table before elements", ln, col0)
            if len(rest) != 1:
                raise ParseError("table takes one operation name", ln, col0)
            opname = rest[0][1]
            if opname not in _TABLES[kind]:
                raise ParseError(f"unexpected table {opname!r} for kind {kind}",
                                 ln, rest[0][0])
            if opname in tables:
                raise ParseError(f"duplicate table {opname!r}", ln, rest[0][0])
            n = len(elements)
            rows = []
            for _ in range(n):
                rln, rbody = take()
                rtoks = _tokens(rbody)
                if len(rtoks) != n:
                    raise ParseError(f"expected {n} entries in table row", rln, 1)
                rows.append([index_of(t, rln, c) for c, t in rtoks])
            tables[opname] = rows
        else:
            raise ParseError(f"unknown directive {head!r}", ln, col0)

    last = lines[-1][0]
    if kind is None:
        raise ParseError("missing kind", last, 1)
    if elements is None:
        raise ParseError("missing elements", last, 1)
    if bot is None or top is None:
        raise ParseError("missing bot/top", last, 1)
    missing = [t for t in _TABLES[kind] if t not in tables]
    if missing:
        raise ParseError(f"missing table {missing[0]!r}", last, 1)

    build = validate_rl if kind == KIND_RL else validate_bdl
    algebra = build(bot=bot, top=top, names=elements,
                    **{k: tables[k] for k in _TABLES[kind]})
    return AlgebraDocument(name, algebra)


def dumps(algebra, name=None, header=None):
    """Canonical text form; ``header`` lines are emitted as comments."""
    out = []
    for line in header or []:
        out.append(f"# {line}")
    out.append("version 1")
    out.append(f"kind {algebra.kind}")
    if name:
        out.append(f"name {name}")
    out.append("elements " + " ".join(algebra.names))
    out.append(f"bot {algebra.names[algebra.bot]}")
    out.append(f"top {algebra.names[algebra.top]}")
    width = max(len(s) for s in algebra.names)
    for opname in _TABLES[algebra.kind]:
        out.append(f"table {opname}")
        t = algebra.op_tables()[opname]
        for row in t:
            out.append(" ".join(algebra.names[int(v)].ljust(width) for v in row).rstrip())
    return "\n".join(out) + "\n"


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(algebra, path, name=None, header=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(algebra, name=name, header=header))


# -- inductive system files -----------------------------------------------


def load_system(path):
    """Read a ``kind system`` file into a validated InductiveSystem."""
    from .constructions import InductiveSystem, poset_from_pairs, validate_system

    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    base = os.path.dirname(os.path.abspath(path))
    lines = _significant(text)
    if not lines:
        raise ParseError("empty document", 1, 1)
    ln, body = lines[0]
    if [t for _, t in _tokens(body)] != ["version", "1"]:
        raise ParseError("expected 'version 1'", ln, 1)
    labels = []
    algebras = []
    order_pairs = []
    raw_maps = {}
    kind_seen = False
    for ln, body in lines[1:]:
        toks = _tokens(body)
        col0, head = toks[0]
        rest = toks[1:]
        if head == "kind":
            if len(rest) != 1 or rest[0][1] != "system":
                raise ParseError("expected 'kind system'", ln, col0)
            kind_seen = True
        elif head == "index":
            if len(rest) != 2:
                raise ParseError("index takes a label and a file", ln, col0)
            label = rest[0][1]
            if label in labels:
                raise ParseError(f"duplicate index {label!r}", ln, rest[0][0])
            labels.append(label)
            algebras.append(load(os.path.join(base, rest[1][1])).algebra)
        elif head == "order":
            if len(rest) != 2:
                raise ParseError("order takes two labels", ln, col0)
            order_pairs.append((ln, col0, rest[0][1], rest[1][1]))
        elif head == "map":
            if len(rest) < 2:
                raise ParseError("map takes two labels and image names", ln, col0)
            raw_maps[(rest[0][1], rest[1][1])] = (ln, rest[2:])
        else:
            raise ParseError(f"unknown directive {head!r}", ln, col0)
    if not kind_seen:
        raise ParseError("missing 'kind system'", lines[-1][0], 1)
    if not labels:
        raise ParseError("system declares no indices", lines[-1][0], 1)
    poslab = {lab: i for i, lab in enumerate(labels)}

    def lab_index(lab, ln, col):
        if lab not in poslab:
            raise ParseError(f"unknown index {lab!r}", ln, col)
        return poslab[lab]

    pairs = [(lab_index(a, ln, col), lab_index(b, ln, col))
             for ln, col, a, b in order_pairs]
    poset = poset_from_pairs(len(labels), pairs, names=labels)

    maps = {}
    for i in range(len(labels)):
        maps[(i, i)] = morphism(algebras[i], algebras[i],
                                np.arange(algebras[i].n), algebras[i].kind)
    for (la, lb), (ln, image_toks) in raw_maps.items():
        i = lab_index(la, ln, 1)
        j = lab_index(lb, ln, 1)
        src, tgt = algebras[i], algebras[j]
        if len(image_toks) != src.n:
            raise ParseError(f"map needs {src.n} images", ln, 1)
        imgs = []
        for col, tok in image_toks:
            try:
                imgs.append(tgt.index_of(tok))
            except KeyError:
                raise ParseError(f"unknown element {tok!r}", ln, col) from None
        maps[(i, j)] = morphism(src, tgt, imgs, src.kind)

    changed = True
    while changed:
        changed = False
        for (i, j) in list(maps):
            for (j2, k) in list(maps):
                if j2 == j and (i, k) not in maps:
                    maps[(i, k)] = morphism(
                        algebras[i], algebras[k], maps[(j, k)].map[maps[(i, j)].map],
                        algebras[i].kind)
                    changed = True
    for i in range(len(labels)):
        for j in range(len(labels)):
            if poset.leq[i, j] and (i, j) not in maps:
                raise InvalidSystem(
                    f"no map derivable for {labels[i]} <= {labels[j]}")
    system = InductiveSystem(poset, tuple(algebras), maps)
    return validate_system(system)


# -- DOT export -----------------------------------------------------------


def _quote(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(host, reticulation=False):
    """Cover graph of a host (or of its reticulation) as DOT text.

    Edges point upward (rankdir BT); output is deterministic.
    """
    g = reticulate(host).lattice if reticulation else host
    out = ["digraph G {", "  rankdir=BT;"]
    for i in range(g.n):
        out.append(f"  n{i} [label={_quote(g.names[i])}];")
    for a in range(g.n):
        for b in range(g.n):
            if bool(g.covers[a, b]):
                out.append(f"  n{a} -> n{b};")
    out.append("}")
    return "\n".join(out) + "\n"
