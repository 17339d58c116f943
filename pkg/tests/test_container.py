import random

import pytest

from evslice.container import ContainerError, load_engine, save_engine
from evslice.engine import EngineConfig, SliceEngine
from evslice.oracle import gen_random_graph

from test_engine import full_config


def _roundtrip(tmp_path, engine, name="idx.evs"):
    path = tmp_path / name
    save_engine(engine, path)
    return load_engine(path)


def test_roundtrip_ex1_identical_queries(tmp_path, ex1):
    engine = SliceEngine(ex1, full_config(False))
    loaded = _roundtrip(tmp_path, engine)
    keys = engine.available_keys()
    assert loaded.available_keys() == keys
    for i in range(ex1.m):
        for j in range(i, ex1.m):
            assert loaded.stats(keys, i, j) == engine.stats(keys, i, j)


def test_roundtrip_many_random_graphs(tmp_path):
    rng = random.Random(0x5A5A)
    for trial in range(25):
        directed = rng.random() < 0.5
        g = gen_random_graph(
            rng, rng.randint(2, 8), rng.randint(1, 25), directed=directed,
            influential_count=rng.randint(0, 2),
        )
        infl = tuple(g.vertex_name(v) for v in sorted(g.influential))
        engine = SliceEngine(g, full_config(directed, influential=infl))
        loaded = _roundtrip(tmp_path, engine, f"idx{trial}.evs")
        keys = engine.available_keys()
        for _ in range(12):
            i = rng.randrange(g.m)
            j = rng.randrange(i, g.m)
            assert loaded.stats(keys, i, j) == engine.stats(keys, i, j), (trial, i, j)


def test_roundtrip_preserves_graph_metadata(tmp_path, ex2):
    engine = SliceEngine(
        ex2,
        EngineConfig(directed=True, hops=2, influential=("s",), multiplicities=(1,)),
    )
    loaded = _roundtrip(tmp_path, engine)
    assert loaded.graph.names == ex2.names
    assert loaded.graph.ts == ex2.ts
    assert loaded.graph.influential == ex2.influential
    assert loaded.config == engine.config


def test_missing_file(tmp_path):
    with pytest.raises(ContainerError):
        load_engine(tmp_path / "nope.evs")


def test_checksum_rejects_corruption(tmp_path, ex1):
    engine = SliceEngine(ex1, full_config(False))
    path = tmp_path / "idx.evs"
    save_engine(engine, path)
    raw = bytearray(path.read_bytes())
    raw[len(raw) // 2] ^= 0xFF
    path.write_bytes(bytes(raw))
    with pytest.raises(ContainerError) as err:
        load_engine(path)
    assert "checksum" in str(err.value)


def test_bad_magic_rejected(tmp_path):
    path = tmp_path / "junk.evs"
    path.write_bytes(b"NOTANIDX" + b"\0" * 64)
    with pytest.raises(ContainerError):
        load_engine(path)


def test_version_mismatch_rejected(tmp_path, ex1):
    import hashlib
    import struct

    engine = SliceEngine(ex1, full_config(False))
    path = tmp_path / "idx.evs"
    save_engine(engine, path)
    raw = bytearray(path.read_bytes())[:-32]
    struct.pack_into("<I", raw, 8, 99)  # bump the version field
    raw += hashlib.sha256(bytes(raw)).digest()
    path.write_bytes(bytes(raw))
    with pytest.raises(ContainerError) as err:
        load_engine(path)
    assert "version" in str(err.value)
