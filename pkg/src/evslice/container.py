"""Single-file index container: magic, version, section table, checksum.

The engine's full state (graph, config echo, every index) serializes into a
little-endian binary file: a JSON metadata section describes the object
tree, with large integer vectors and node arenas stored as raw int64/float64
blob sections referenced by name.  A sha256 trailer guards the whole file;
load refuses wrong magic, version, or digest, and reproduces query-identical
state without rebuilding.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import struct
import sys
from array import array
from pathlib import Path
from typing import Union

from .engine import EngineConfig, SliceEngine
from .graph import GraphError, RelationalEventGraph
from .influence import InfluenceCounts
from .matroids import RankIndex
from .neighbors import NeighborCounts
from .triads import TriadIndex

MAGIC = b"EVSLICE1"
VERSION = 1
_BLOB_THRESHOLD = 64  # int lists at least this long become raw sections


class ContainerError(ValueError):
    """Unreadable, corrupt, or incompatible container file."""


def _to_le(arr: array) -> bytes:
    if sys.byteorder != "little":
        arr = array(arr.typecode, arr)
        arr.byteswap()
    return arr.tobytes()


def _from_le(typecode: str, raw: bytes) -> array:
    arr = array(typecode)
    arr.frombytes(raw)
    if sys.byteorder != "little":
        arr.byteswap()
    return arr


class _Encoder:
    def __init__(self):
        self.sections: dict[str, bytes] = {}

    def encode(self, path: str, value):
        if isinstance(value, dict):
            return {str(k): self.encode(f"{path}/{k}", v) for k, v in value.items()}
        if isinstance(value, array):
            name = path
            self.sections[name] = _to_le(value)
            return {"__blob__": name, "dtype": value.typecode}
        if isinstance(value, (list, tuple)):
            seq = list(value)
            if len(seq) >= _BLOB_THRESHOLD and all(isinstance(x, int) for x in seq):
                name = path
                self.sections[name] = _to_le(array("q", seq))
                return {"__blob__": name, "dtype": "q", "aslist": True}
            return [self.encode(f"{path}/{idx}", v) for idx, v in enumerate(seq)]
        if value is None or isinstance(value, (bool, int, float, str)):
            return value
        raise ContainerError(f"cannot serialize {type(value)!r} at {path}")


class _Decoder:
    def __init__(self, sections: dict[str, bytes]):
        self.sections = sections

    def decode(self, value):
        if isinstance(value, dict):
            if "__blob__" in value:
                raw = self.sections.get(value["__blob__"])
                if raw is None:
                    raise ContainerError(f"missing blob section {value['__blob__']!r}")
                arr = _from_le(value["dtype"], raw)
                return list(arr) if value.get("aslist") else arr
            return {k: self.decode(v) for k, v in value.items()}
        if isinstance(value, list):
            return [self.decode(v) for v in value]
        return value


def _write_sections(path: Path, sections: dict[str, bytes]) -> None:
    table = []
    payload = bytearray()
    for name, blob in sections.items():
        table.append((name.encode(), len(payload), len(blob)))
        payload.extend(blob)
    out = bytearray()
    out += MAGIC
    out += struct.pack("<II", VERSION, len(table))
    for name, offset, length in table:
        out += struct.pack("<H", len(name))
        out += name
        out += struct.pack("<QQ", offset, length)
    out += payload
    out += hashlib.sha256(bytes(out)).digest()
    path.write_bytes(bytes(out))


def _read_sections(path: Path) -> dict[str, bytes]:
    raw = path.read_bytes()
    if len(raw) < len(MAGIC) + 8 + 32:
        raise ContainerError(f"{path}: too short to be an index container")
    body, digest = raw[:-32], raw[-32:]
    if hashlib.sha256(body).digest() != digest:
        raise ContainerError(f"{path}: checksum mismatch")
    if body[: len(MAGIC)] != MAGIC:
        raise ContainerError(f"{path}: bad magic (not an index container)")
    pos = len(MAGIC)
    version, count = struct.unpack_from("<II", body, pos)
    pos += 8
    if version != VERSION:
        raise ContainerError(f"{path}: unsupported container version {version}")
    table = []
    for _ in range(count):
        (name_len,) = struct.unpack_from("<H", body, pos)
        pos += 2
        name = body[pos : pos + name_len].decode()
        pos += name_len
        offset, length = struct.unpack_from("<QQ", body, pos)
        pos += 16
        table.append((name, offset, length))
    payload_start = pos
    sections = {}
    for name, offset, length in table:
        start = payload_start + offset
        sections[name] = bytes(body[start : start + length])
    return sections


def _graph_state(graph: RelationalEventGraph) -> dict:
    return {
        "names": list(graph.names),
        "us": list(graph.us),
        "vs": list(graph.vs),
        "ts": list(graph.ts),
        "line_nos": list(graph.line_nos),
        "directed": graph.directed,
        "influential": sorted(graph.influential),
    }


def _graph_from_state(state: dict) -> RelationalEventGraph:
    edges = list(zip(state["us"], state["vs"], state["ts"], state["line_nos"]))
    return RelationalEventGraph(state["names"], edges, state["directed"], state["influential"])


def engine_state(engine: SliceEngine) -> dict:
    return {
        "config": dataclasses.asdict(engine.config),
        "graph": _graph_state(engine.graph),
        "degree_ranks": {str(k): idx.state() for k, idx in engine.degree_ranks.items()},
        "pair_ranks": {str(k): idx.state() for k, idx in engine.pair_ranks.items()},
        "upair_rank": engine.upair_rank.state() if engine.upair_rank else None,
        "graphic_rank": engine.graphic_rank.state() if engine.graphic_rank else None,
        "bicycle_rank": engine.bicycle_rank.state() if engine.bicycle_rank else None,
        "neighbors": engine.neighbors.state() if engine.neighbors else None,
        "influence": engine.influence.state() if engine.influence else None,
        "triads": engine.triads.state() if engine.triads else None,
        "node_counts": dict(engine.report.node_counts),
    }


def engine_from_state(state: dict) -> SliceEngine:
    cfg_dict = dict(state["config"])
    cfg_dict["degrees"] = tuple(cfg_dict["degrees"])
    cfg_dict["multiplicities"] = tuple(cfg_dict["multiplicities"])
    cfg_dict["neighbor_pairs"] = tuple(tuple(p) for p in cfg_dict["neighbor_pairs"])
    cfg_dict["influential"] = tuple(cfg_dict["influential"])
    if cfg_dict.get("pair_rank_ks") is not None:
        cfg_dict["pair_rank_ks"] = tuple(cfg_dict["pair_rank_ks"])
    config = EngineConfig(**cfg_dict)

    engine = SliceEngine.__new__(SliceEngine)
    engine.config = config
    engine.graph = _graph_from_state(state["graph"])
    engine.degree_ranks = {
        int(k): RankIndex.from_state(sub) for k, sub in state["degree_ranks"].items()
    }
    engine.pair_ranks = {
        int(k): RankIndex.from_state(sub) for k, sub in state["pair_ranks"].items()
    }
    engine.upair_rank = (
        RankIndex.from_state(state["upair_rank"]) if state["upair_rank"] else None
    )
    engine.graphic_rank = (
        RankIndex.from_state(state["graphic_rank"]) if state["graphic_rank"] else None
    )
    engine.bicycle_rank = (
        RankIndex.from_state(state["bicycle_rank"]) if state["bicycle_rank"] else None
    )
    engine.neighbors = (
        NeighborCounts.from_state(state["neighbors"]) if state["neighbors"] else None
    )
    engine.influence = (
        InfluenceCounts.from_state(state["influence"]) if state["influence"] else None
    )
    engine.triads = TriadIndex.from_state(state["triads"]) if state["triads"] else None

    from .engine import BuildReport

    report = BuildReport(n=engine.graph.n, m=engine.graph.m)
    report.node_counts = dict(state.get("node_counts", {}))
    engine.report = report
    return engine


def save_engine(engine: SliceEngine, path: Union[str, Path]) -> None:
    encoder = _Encoder()
    meta = encoder.encode("state", engine_state(engine))
    sections = {"META": json.dumps(meta, sort_keys=True).encode()}
    sections.update(encoder.sections)
    _write_sections(Path(path), sections)


def load_engine(path: Union[str, Path]) -> SliceEngine:
    path = Path(path)
    if not path.exists():
        raise ContainerError(f"{path}: no such index file")
    sections = _read_sections(path)
    try:
        meta = json.loads(sections.pop("META").decode())
    except (KeyError, ValueError) as exc:
        raise ContainerError(f"{path}: bad metadata section: {exc}") from None
    state = _Decoder(sections).decode(meta)
    try:
        return engine_from_state(state)
    except (KeyError, TypeError, GraphError) as exc:
        raise ContainerError(f"{path}: malformed container state: {exc}") from None
