"""File formats: hypergraph JSON and line text, element instances, op logs, DOT.

Vertex names in files are strings; ids are assigned by sorted name order, so
identical files always produce identical instances. Writers are fully
deterministic and every written file re-parses to an equal value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .errors import ParseError, UnknownVertexError
from .hypergraph import Hypergraph, Merge, SplitOffOp, Trim
from .multigraph import ElementConnInstance, Multigraph
from .reduction import MinorTrace

VERTICES_HEADER = "#vertices:"


@dataclass(frozen=True)
class NameTable:
    """Bidirectional map between file-level vertex names and dense integer ids."""

    names: tuple[str, ...]

    def __post_init__(self):
        for name in self.names:
            _check_name(name)
        if len(set(self.names)) != len(self.names):
            raise ParseError("duplicate vertex name")
        object.__setattr__(self, "_ids", {n: i for i, n in enumerate(self.names)})

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "NameTable":
        return cls(tuple(sorted(set(names))))

    def id_of(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {name!r}") from None

    def name_of(self, vid: int) -> str:
        try:
            return self.names[vid]
        except IndexError:
            raise UnknownVertexError(f"unknown vertex id {vid}") from None

    def __len__(self) -> int:
        return len(self.names)


def _check_name(name: str) -> None:
    if not isinstance(name, str) or not name:
        raise ParseError(f"vertex name must be a non-empty string, got {name!r}")
    if any(c.isspace() for c in name):
        raise ParseError(f"vertex name {name!r} contains whitespace")


def _as_name_list(value, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise ParseError(f"{what} must be an array of strings")
    return value


def _hyperedge_ids(members: Sequence[str], table: NameTable, where: str) -> frozenset[int]:
    if len(set(members)) != len(members):
        raise ParseError(f"duplicate vertex inside {where}")
    if len(members) < 2:
        raise ParseError(f"{where} has fewer than 2 vertices")
    return frozenset(table.id_of(m) for m in members)


def parse_hypergraph_json(text: str) -> tuple[Hypergraph, NameTable]:
    """Parse ``{"vertices": [...], "hyperedges": [[...], ...]}``.

    Hyperedge entries are order-insensitive; repeated entries are distinct
    parallel hyperedges; a repeated name inside one entry is rejected.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "vertices" not in obj or "hyperedges" not in obj:
        raise ParseError("expected an object with 'vertices' and 'hyperedges'")
    table = NameTable.from_names(_as_name_list(obj["vertices"], "'vertices'"))
    if len(table) != len(obj["vertices"]):
        raise ParseError("duplicate name in 'vertices'")
    raw_edges = obj["hyperedges"]
    if not isinstance(raw_edges, list):
        raise ParseError("'hyperedges' must be an array")
    edges = {}
    for i, entry in enumerate(raw_edges):
        members = _as_name_list(entry, f"hyperedge {i}")
        try:
            edges[i] = _hyperedge_ids(members, table, f"hyperedge {i}")
        except UnknownVertexError as exc:
            raise ParseError(f"hyperedge {i}: {exc}") from exc
    return Hypergraph(frozenset(range(len(table))), edges), table


def parse_hypergraph_text(text: str) -> tuple[Hypergraph, NameTable]:
    """Parse the line format: one hyperedge per line, names separated by blanks.

    The vertex set is the union of all members plus any ``#vertices:`` header
    lines; other ``#`` lines are comments.
    """
    extra: set[str] = set()
    edge_lines: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith(VERTICES_HEADER):
                extra.update(line[len(VERTICES_HEADER) :].split())
            continue
        members = line.split()
        if len(set(members)) != len(members):
            raise ParseError(f"line {lineno}: duplicate vertex inside hyperedge")
        if len(members) < 2:
            raise ParseError(f"line {lineno}: hyperedge has fewer than 2 vertices")
        edge_lines.append(members)
    names = set(extra)
    for members in edge_lines:
        names.update(members)
    table = NameTable.from_names(names)
    edges = {i: frozenset(table.id_of(m) for m in members) for i, members in enumerate(edge_lines)}
    return Hypergraph(frozenset(range(len(table))), edges), table


def _sorted_names(vertices: Iterable[int], table: NameTable) -> list[str]:
    return sorted(table.name_of(v) for v in vertices)


def write_hypergraph_json(h: Hypergraph, table: NameTable) -> str:
    obj = {
        "vertices": _sorted_names(h.vertices, table),
        "hyperedges": [_sorted_names(h.hyperedges[e], table) for e in h.edge_ids()],
    }
    return json.dumps(obj, indent=2) + "\n"


def write_hypergraph_text(h: Hypergraph, table: NameTable) -> str:
    lines = [f"{VERTICES_HEADER} " + " ".join(_sorted_names(h.vertices, table))]
    lines += [" ".join(_sorted_names(h.hyperedges[e], table)) for e in h.edge_ids()]
    return "\n".join(lines) + "\n"


def parse_element_json(text: str) -> tuple[ElementConnInstance, NameTable]:
    """Parse ``{"vertices": [...], "edges": [["a","b"], ...], "terminals": [...]}``.

    Repeated pairs are parallel edges; self-loops are rejected.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or not {"vertices", "edges", "terminals"} <= set(obj):
        raise ParseError("expected an object with 'vertices', 'edges' and 'terminals'")
    table = NameTable.from_names(_as_name_list(obj["vertices"], "'vertices'"))
    if len(table) != len(obj["vertices"]):
        raise ParseError("duplicate name in 'vertices'")
    if not isinstance(obj["edges"], list):
        raise ParseError("'edges' must be an array")
    edges = {}
    for i, entry in enumerate(obj["edges"]):
        pair = _as_name_list(entry, f"edge {i}")
        if len(pair) != 2:
            raise ParseError(f"edge {i} must have exactly 2 endpoints")
        if pair[0] == pair[1]:
            raise ParseError(f"edge {i} is a self-loop")
        try:
            edges[i] = (table.id_of(pair[0]), table.id_of(pair[1]))
        except UnknownVertexError as exc:
            raise ParseError(f"edge {i}: {exc}") from exc
    try:
        terminals = frozenset(table.id_of(t) for t in _as_name_list(obj["terminals"], "'terminals'"))
    except UnknownVertexError as exc:
        raise ParseError(f"terminals: {exc}") from exc
    graph = Multigraph(frozenset(range(len(table))), edges)
    return ElementConnInstance(graph, terminals), table


def write_element_json(inst: ElementConnInstance, table: NameTable) -> str:
    obj = {
        "vertices": _sorted_names(inst.graph.vertices, table),
        "edges": [
            _sorted_names(inst.graph.endpoints(e), table) for e in inst.graph.edge_ids()
        ],
        "terminals": _sorted_names(inst.terminals, table),
    }
    return json.dumps(obj, indent=2) + "\n"


def write_oplog(h: Hypergraph, table: NameTable, s: int, ops: Sequence[SplitOffOp]) -> str:
    """Serialize an operation log against ``h``.

    The header repeats the hyperedges in id order, binding every id used by
    the operations to the input file's hyperedge order.
    """
    entries = []
    for op in ops:
        if isinstance(op, Trim):
            entries.append({"op": "trim", "edge": op.edge})
        elif isinstance(op, Merge):
            entries.append({"op": "merge", "keep": op.keep, "absorb": op.absorb})
        else:
            raise TypeError(f"not a split-off operation: {op!r}")
    obj = {
        "s": table.name_of(s),
        "hyperedges": [_sorted_names(h.hyperedges[e], table) for e in h.edge_ids()],
        "ops": entries,
    }
    return json.dumps(obj, indent=2) + "\n"


@dataclass(frozen=True)
class OpLog:
    """Parsed operation log: split vertex name, id-order hyperedges, operations."""

    s_name: str
    hyperedges: tuple[tuple[str, ...], ...]
    ops: tuple[SplitOffOp, ...]


def parse_oplog(text: str) -> OpLog:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or not {"s", "hyperedges", "ops"} <= set(obj):
        raise ParseError("expected an object with 's', 'hyperedges' and 'ops'")
    if not isinstance(obj["s"], str):
        raise ParseError("'s' must be a string")
    if not isinstance(obj["hyperedges"], list) or not isinstance(obj["ops"], list):
        raise ParseError("'hyperedges' and 'ops' must be arrays")
    header = tuple(
        tuple(_as_name_list(entry, f"hyperedge {i}")) for i, entry in enumerate(obj["hyperedges"])
    )
    ops: list[SplitOffOp] = []
    for i, entry in enumerate(obj["ops"]):
        if not isinstance(entry, dict) or "op" not in entry:
            raise ParseError(f"op {i} is not an operation object")
        kind = entry["op"]
        try:
            if kind == "trim":
                ops.append(Trim(int(entry["edge"])))
            elif kind == "merge":
                ops.append(Merge(int(entry["keep"]), int(entry["absorb"])))
            else:
                raise ParseError(f"op {i} has unknown kind {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"op {i} is malformed: {exc}") from exc
    return OpLog(s_name=obj["s"], hyperedges=header, ops=tuple(ops))


def check_oplog_header(log: OpLog, h: Hypergraph, table: NameTable) -> None:
    """Reject a log whose header does not match the hypergraph it is replayed on."""
    ids = h.edge_ids()
    if len(log.hyperedges) != len(ids):
        raise ParseError(
            f"log header lists {len(log.hyperedges)} hyperedges, file has {len(ids)}"
        )
    for eid, header_members in zip(ids, log.hyperedges):
        actual = tuple(_sorted_names(h.hyperedges[eid], table))
        if actual != tuple(sorted(header_members)):
            raise ParseError(f"log header disagrees with hyperedge {eid} of the input")


def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def incidence_dot(h: Hypergraph, table: NameTable) -> str:
    """DOT rendering of the incidence graph: terminals boxes, hyperedges circles."""
    lines = ["graph incidence {", "  node [shape=box];"]
    lines += [f"  {_dot_quote(name)};" for name in _sorted_names(h.vertices, table)]
    lines.append("  node [shape=circle];")
    lines += [f"  {_dot_quote(f'e{e}')};" for e in h.edge_ids()]
    for e in h.edge_ids():
        for name in _sorted_names(h.hyperedges[e], table):
            lines.append(f"  {_dot_quote(name)} -- {_dot_quote(f'e{e}')};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def trace_to_json(trace: MinorTrace, table: NameTable) -> str:
    steps = []
    for step in trace.steps:
        entry = {
            "edge": _sorted_names(step.edge, table),
            "edge_id": step.edge_id,
            "action": step.action,
        }
        if step.merged_into is not None:
            entry["merged_into"] = table.name_of(step.merged_into)
        steps.append(entry)
    vertex_map = {}
    for v, originals in trace.vertex_map.items():
        vertex_map[table.name_of(v)] = _sorted_names(originals, table)
    obj = {"steps": steps, "vertex_map": dict(sorted(vertex_map.items()))}
    return json.dumps(obj, indent=2) + "\n"


HYPERGRAPH_FORMATS = ("json", "he")


def detect_format(path: Union[str, Path], override: Optional[str] = None) -> str:
    """Pick 'json' or 'he' from an explicit override or the file extension."""
    if override and override != "auto":
        if override not in HYPERGRAPH_FORMATS:
            raise ParseError(f"unknown format {override!r}")
        return override
    return "json" if Path(path).suffix.lower() == ".json" else "he"


def load_hypergraph(path: Union[str, Path], fmt: Optional[str] = None) -> tuple[Hypergraph, NameTable, str]:
    """Read a hypergraph file; returns the graph, its names, and the format used."""
    kind = detect_format(path, fmt)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if kind == "json":
        h, table = parse_hypergraph_json(text)
    else:
        h, table = parse_hypergraph_text(text)
    return h, table, kind


def dump_hypergraph(h: Hypergraph, table: NameTable, fmt: str) -> str:
    if fmt == "json":
        return write_hypergraph_json(h, table)
    if fmt == "he":
        return write_hypergraph_text(h, table)
    raise ParseError(f"unknown format {fmt!r}")


def load_element_instance(path: Union[str, Path]) -> tuple[ElementConnInstance, NameTable]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_element_json(text)


def is_element_file(path: Union[str, Path]) -> bool:
    """True when the file is JSON carrying a 'terminals' key."""
    if Path(path).suffix.lower() != ".json":
        return False
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return False
    return isinstance(obj, dict) and "terminals" in obj
