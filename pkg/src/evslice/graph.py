"""Relational event graphs: an interned vertex set plus a timestamp-ordered edge sequence.

Input files are delimited text, one event per line::

    timestamp <sep> source <sep> target

Lines starting with ``#`` are comments.  Events are stably sorted by
timestamp (ties keep input order) and indexed 0..m-1; all window queries
downstream are over these edge indices.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO, Union


class ParseError(ValueError):
    """Malformed event input; carries the offending 1-based line number."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class GraphError(ValueError):
    """Invalid graph construction or query arguments."""


Number = Union[int, float]


@dataclass(frozen=True)
class RawEvent:
    """One parsed input line, in file order."""

    timestamp: Number
    source: str
    target: str
    line_no: int = 0


def _parse_timestamp(text: str) -> Number:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"bad timestamp {text!r}")


def parse_events(
    stream: Union[TextIO, Iterable[str], str],
    delimiter: Optional[str] = None,
    skip_header: bool = False,
    comment: str = "#",
) -> list[RawEvent]:
    """Parse delimited event lines into RawEvents, preserving file order.

    ``delimiter=None`` splits on any whitespace run.  Raises ParseError with
    the line number on the first malformed line (missing fields, bad
    timestamp) and on entirely empty input.
    """
    if isinstance(stream, str):
        lines: Iterable[str] = stream.splitlines()
    else:
        lines = stream
    events: list[RawEvent] = []
    for line_no, line in enumerate(lines, start=1):
        if skip_header and line_no == 1:
            continue
        text = line.strip()
        if not text or (comment and text.startswith(comment)):
            continue
        fields = text.split(delimiter)
        if len(fields) < 3:
            raise ParseError(f"expected 3 fields, got {len(fields)}", line_no)
        try:
            ts = _parse_timestamp(fields[0])
        except ValueError as exc:
            raise ParseError(str(exc), line_no) from None
        events.append(RawEvent(ts, fields[1], fields[2], line_no))
    if not events:
        raise ParseError("no events in input")
    return events


@dataclass(frozen=True)
class Slice:
    """Inclusive edge-index window [i, j]."""

    i: int
    j: int

    def __post_init__(self):
        if not 0 <= self.i <= self.j:
            raise GraphError(f"invalid slice [{self.i}, {self.j}]")

    @property
    def width(self) -> int:
        return self.j - self.i + 1


class RelationalEventGraph:
    """Fixed vertex set 0..n-1 plus edges e_0..e_{m-1} in non-decreasing timestamp order.

    Endpoint pairs need not be distinct; self loops are allowed.  The graph
    is immutable after construction and safe for concurrent readers.
    """

    __slots__ = ("names", "_ids", "us", "vs", "ts", "line_nos", "directed", "influential")

    def __init__(
        self,
        names: Sequence[str],
        edges: Sequence[tuple[int, int, Number, int]],
        directed: bool,
        influential: Iterable[int] = (),
    ):
        self.names = list(names)
        self._ids = {name: i for i, name in enumerate(self.names)}
        if len(self._ids) != len(self.names):
            raise GraphError("duplicate vertex names")
        n = len(self.names)
        self.us = [e[0] for e in edges]
        self.vs = [e[1] for e in edges]
        self.ts = [e[2] for e in edges]
        self.line_nos = [e[3] for e in edges]
        for u, v in zip(self.us, self.vs):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"endpoint id out of range: ({u}, {v})")
        for k in range(1, len(self.ts)):
            if self.ts[k] < self.ts[k - 1]:
                raise GraphError(f"timestamps out of order at edge {k}")
        self.directed = directed
        self.influential = frozenset(influential)
        for x in self.influential:
            if not 0 <= x < n:
                raise GraphError(f"influential id out of range: {x}")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.us)

    def vertex_id(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def vertex_name(self, vid: int) -> str:
        return self.names[vid]

    def edge(self, k: int) -> tuple[int, int]:
        return self.us[k], self.vs[k]

    def check_slice(self, i: int, j: int) -> None:
        if not (0 <= i <= j < self.m):
            raise GraphError(f"slice [{i}, {j}] out of range for m={self.m}")

    def time_window(self, t0: Number, t1: Number) -> Optional[tuple[int, int]]:
        """Maximal index window whose timestamps all lie in [t0, t1], or None."""
        i = bisect.bisect_left(self.ts, t0)
        j = bisect.bisect_right(self.ts, t1) - 1
        if i > j:
            return None
        return i, j


def build_graph(
    events: Sequence[RawEvent],
    directed: bool = False,
    influential: Iterable[str] = (),
    vertices: Optional[Sequence[str]] = None,
) -> RelationalEventGraph:
    """Intern endpoints to dense ids and stably sort events by timestamp.

    ``vertices`` optionally declares the full vertex set up front (extra
    names beyond the endpoints are kept as isolated vertices); otherwise the
    vertex set is exactly the endpoint names in order of first appearance.
    Influential names must resolve against the final vertex set.
    """
    if not events:
        raise GraphError("cannot build a graph from zero events")
    names: list[str] = []
    ids: dict[str, int] = {}
    if vertices is not None:
        for name in vertices:
            if name in ids:
                raise GraphError(f"duplicate vertex name {name!r}")
            ids[name] = len(names)
            names.append(name)

    def intern(name: str) -> int:
        vid = ids.get(name)
        if vid is None:
            if vertices is not None:
                raise GraphError(f"endpoint {name!r} not in declared vertex list")
            vid = len(names)
            ids[name] = vid
            names.append(name)
        return vid

    ordered = sorted(events, key=lambda ev: ev.timestamp)  # stable: ties keep input order
    edges = [(intern(ev.source), intern(ev.target), ev.timestamp, ev.line_no) for ev in ordered]
    infl_ids = []
    for name in influential:
        if name not in ids:
            raise GraphError(f"influential vertex {name!r} does not occur in the input")
        infl_ids.append(ids[name])
    return RelationalEventGraph(names, edges, directed, infl_ids)
