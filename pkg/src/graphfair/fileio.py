"""Line-based text formats for instances, allocations and MCIS inputs.

Instance::

    graphical 1
    agents <n>
    edge <a> <b> <value_a> <value_b>      # one per item, in item order

Allocation::

    allocation 1
    assign <item> <agent>                 # every item exactly once

MCIS::

    mcis 1
    classes <k>
    class <i> <v1> <v2> ...               # i = 0..k-1, each once
    edge <u> <v>

``#`` starts a comment; blank lines are ignored.  Emitters write the
canonical form (no comments), which parses back to the same object.
"""

from __future__ import annotations

from pathlib import Path

from .core import Allocation, GraphicalInstance, InputError
from .reductions import MCISInstance


class FormatError(InputError):
    pass


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(lineno, fields, count=None):
    if count is not None and len(fields) != count:
        raise FormatError(f"line {lineno}: expected {count} integers, got {len(fields)}")
    try:
        out = [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got {' '.join(fields)!r}") from None
    if any(x < 0 for x in out):
        raise FormatError(f"line {lineno}: negative number")
    return out


def _header(lines, magic):
    try:
        lineno, fields = next(lines)
    except StopIteration:
        raise FormatError(f"empty input, expected '{magic} 1' header") from None
    if fields != [magic, "1"]:
        raise FormatError(f"line {lineno}: expected header '{magic} 1', got {' '.join(fields)!r}")


def parse_instance(text: str) -> GraphicalInstance:
    lines = _lines(text)
    _header(lines, "graphical")
    n = None
    edges = []
    for lineno, fields in lines:
        kind, rest = fields[0], fields[1:]
        if kind == "agents":
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate 'agents' line")
            if edges:
                raise FormatError(f"line {lineno}: 'agents' must precede edges")
            (n,) = _ints(lineno, rest, 1)
        elif kind == "edge":
            if n is None:
                raise FormatError(f"line {lineno}: 'edge' before 'agents'")
            edges.append((lineno, _ints(lineno, rest, 4)))
        else:
            raise FormatError(f"line {lineno}: unknown record {kind!r}")
    if n is None:
        raise FormatError("missing 'agents' line")
    # validate edge by edge so errors carry the offending line
    seen = set()
    for lineno, (a, b, va, vb) in edges:
        if a >= n or b >= n:
            raise FormatError(f"line {lineno}: agent index out of range 0..{n - 1}")
        if a == b:
            raise FormatError(f"line {lineno}: self-loop on agent {a}")
        key = frozenset((a, b))
        if key in seen:
            raise FormatError(f"line {lineno}: duplicate edge between {a} and {b}")
        seen.add(key)
    return GraphicalInstance.from_edges(n, [e for _, e in edges])


def emit_instance(instance: GraphicalInstance) -> str:
    out = ["graphical 1", f"agents {instance.n_agents}"]
    out += [f"edge {e.a} {e.b} {e.value_a} {e.value_b}" for e in instance.edges]
    return "\n".join(out) + "\n"


def parse_allocation(text: str) -> Allocation:
    lines = _lines(text)
    _header(lines, "allocation")
    owner = {}
    for lineno, fields in lines:
        if fields[0] != "assign":
            raise FormatError(f"line {lineno}: unknown record {fields[0]!r}")
        item, agent = _ints(lineno, fields[1:], 2)
        if item in owner:
            raise FormatError(f"line {lineno}: item {item} assigned twice")
        owner[item] = agent
    missing = sorted(set(range(len(owner))) - set(owner))
    if missing:
        raise FormatError(f"items must be numbered 0..{len(owner) - 1}; missing {missing[:5]}")
    return Allocation(tuple(owner[g] for g in range(len(owner))))


def emit_allocation(allocation: Allocation) -> str:
    out = ["allocation 1"] + [f"assign {g} {k}" for g, k in enumerate(allocation.owner)]
    return "\n".join(out) + "\n"


def parse_mcis(text: str) -> MCISInstance:
    lines = _lines(text)
    _header(lines, "mcis")
    k = None
    classes = {}
    edges = []
    for lineno, fields in lines:
        kind, rest = fields[0], fields[1:]
        if kind == "classes":
            if k is not None:
                raise FormatError(f"line {lineno}: duplicate 'classes' line")
            (k,) = _ints(lineno, rest, 1)
        elif kind == "class":
            if k is None:
                raise FormatError(f"line {lineno}: 'class' before 'classes'")
            if not rest:
                raise FormatError(f"line {lineno}: class index missing")
            idx, *verts = _ints(lineno, rest)
            if idx >= k or idx in classes:
                raise FormatError(f"line {lineno}: bad or repeated class index {idx}")
            classes[idx] = tuple(verts)
        elif kind == "edge":
            edges.append(tuple(_ints(lineno, rest, 2)))
        else:
            raise FormatError(f"line {lineno}: unknown record {kind!r}")
    if k is None:
        raise FormatError("missing 'classes' line")
    if sorted(classes) != list(range(k)):
        raise FormatError(f"expected classes 0..{k - 1}, got {sorted(classes)}")
    try:
        return MCISInstance(tuple(classes[i] for i in range(k)), tuple(edges))
    except InputError as exc:
        raise FormatError(f"invalid MCIS instance: {exc}") from None


def emit_mcis(mcis: MCISInstance) -> str:
    out = ["mcis 1", f"classes {mcis.k}"]
    out += [f"class {i} " + " ".join(map(str, c)) for i, c in enumerate(mcis.classes)]
    out += [f"edge {u} {v}" for u, v in mcis.edges]
    return "\n".join(out) + "\n"


def read_instance(path) -> GraphicalInstance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def read_allocation(path) -> Allocation:
    return parse_allocation(Path(path).read_text(encoding="utf-8"))


def read_mcis(path) -> MCISInstance:
    return parse_mcis(Path(path).read_text(encoding="utf-8"))


def write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
