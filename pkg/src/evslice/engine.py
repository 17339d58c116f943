"""The query engine: builds every registered index once, then answers any
slice statistic in time logarithmic in the window length.

Statistic keys are flat strings; parameters are baked in at build time and
become part of the key namespace, e.g.::

    components            tree_components         avg_size
    degree_gt:d=1         degree_eq:d=0           degree_le:d=2
    distinct              repeated                pairs_ge:t=2
    mult_eq:mu=1          mult_le:mu=1            reciprocity
    neighbors_le:r=1,s=0  neighbors_exact:r=1,s=1 isolated_edges
    influenced            influenced:h=2          influenced_incl
    triad_closures

Everything is immutable after build; concurrent readers need no locks.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .connectivity import compute_tau_bicycle, compute_tau_graphic
from .graph import GraphError, RelationalEventGraph
from .influence import InfluenceCounts
from .matroids import (
    PAIR_DIRECTED,
    PAIR_UNDIRECTED,
    VERTEX_DEGREE,
    RankIndex,
    compute_tau_partition,
)
from .neighbors import NeighborCounts
from .triads import TriadIndex


@dataclass(frozen=True)
class EngineConfig:
    """Build-time registration of statistics and their parameters."""

    directed: bool = False
    degrees: tuple[int, ...] = (0, 1, 2)
    multiplicities: tuple[int, ...] = (1, 2)
    neighbor_pairs: tuple[tuple[int, int], ...] = ((0, 0), (1, 1))
    hops: int = 0
    influential: tuple[str, ...] = ()
    with_connectivity: bool = True
    with_triads: bool = True
    with_influence: bool = True
    with_reciprocity: Optional[bool] = None  # None: directed graphs only
    pair_rank_ks: Optional[tuple[int, ...]] = None  # override the derived closure

    def validate(self) -> None:
        for d in self.degrees:
            if d < 0:
                raise GraphError(f"degree parameter must be >= 0, got {d}")
        for mu in self.multiplicities:
            if mu < 1:
                raise GraphError(f"multiplicity parameter must be >= 1, got {mu}")
        for r, s in self.neighbor_pairs:
            if r < 0 or s < 0:
                raise GraphError(f"neighbor pair must be non-negative, got ({r}, {s})")
        if self.hops < 0:
            raise GraphError(f"hop bound must be >= 0, got {self.hops}")

    def degree_rank_ks(self) -> tuple[int, ...]:
        ks = set()
        for d in self.degrees:
            ks.update({d - 1, d, d + 1})
        if self.with_connectivity or self.degrees:
            ks.add(1)  # isolated vertices / nontrivial components
        return tuple(sorted(k for k in ks if k >= 1))

    def pair_ks(self) -> tuple[int, ...]:
        if self.pair_rank_ks is not None:
            return tuple(sorted(set(self.pair_rank_ks)))
        ks = set()
        for mu in self.multiplicities:
            ks.update({mu - 1, mu, mu + 1, mu + 2})
        if self.multiplicities or self.reciprocity_enabled():
            ks.add(1)
        return tuple(sorted(k for k in ks if k >= 1))

    def reciprocity_enabled(self) -> bool:
        if self.with_reciprocity is None:
            return self.directed
        return self.with_reciprocity


@dataclass
class BuildReport:
    n: int = 0
    m: int = 0
    seconds: float = 0.0
    node_counts: dict = field(default_factory=dict)

    @property
    def total_nodes(self) -> int:
        return sum(self.node_counts.values())


_KEY_RE = re.compile(r"^(?P<name>[a-z_]+)(?::(?P<args>[a-z0-9_=,-]+))?$")


def _parse_key(key: str) -> tuple[str, dict[str, int]]:
    match = _KEY_RE.match(key)
    if not match:
        raise GraphError(f"malformed statistic key {key!r}")
    args: dict[str, int] = {}
    if match.group("args"):
        for part in match.group("args").split(","):
            if "=" not in part:
                raise GraphError(f"malformed statistic key {key!r}")
            name, value = part.split("=", 1)
            try:
                args[name] = int(value)
            except ValueError:
                raise GraphError(f"non-integer parameter in key {key!r}") from None
    return match.group("name"), args


class SliceEngine:
    """Immutable bundle of per-statistic indexes over one relational event graph."""

    def __init__(self, graph: RelationalEventGraph, config: EngineConfig):
        config.validate()
        if graph.directed != config.directed:
            raise GraphError("config directedness does not match the graph")
        started = time.perf_counter()
        self.graph = graph
        self.config = config
        report = BuildReport(n=graph.n, m=graph.m)

        self.degree_ranks: dict[int, RankIndex] = {}
        for k in config.degree_rank_ks():
            idx = RankIndex(compute_tau_partition(graph, VERTEX_DEGREE, k))
            self.degree_ranks[k] = idx
            report.node_counts[f"degree_rank:k={k}"] = idx.dom.node_count

        pair_mode = PAIR_DIRECTED if graph.directed else PAIR_UNDIRECTED
        self.pair_ranks: dict[int, RankIndex] = {}
        for k in config.pair_ks():
            idx = RankIndex(compute_tau_partition(graph, pair_mode, k))
            self.pair_ranks[k] = idx
            report.node_counts[f"pair_rank:k={k}"] = idx.dom.node_count

        self.upair_rank: Optional[RankIndex] = None
        if config.reciprocity_enabled() and 1 in self.pair_ranks:
            if not graph.directed:
                raise GraphError("reciprocity requires a directed graph")
            self.upair_rank = RankIndex(compute_tau_partition(graph, PAIR_UNDIRECTED, 1))
            report.node_counts["upair_rank:k=1"] = self.upair_rank.dom.node_count

        self.graphic_rank: Optional[RankIndex] = None
        self.bicycle_rank: Optional[RankIndex] = None
        if config.with_connectivity:
            self.graphic_rank = RankIndex(compute_tau_graphic(graph))
            self.bicycle_rank = RankIndex(compute_tau_bicycle(graph))
            report.node_counts["graphic_rank"] = self.graphic_rank.dom.node_count
            report.node_counts["bicycle_rank"] = self.bicycle_rank.dom.node_count

        self.neighbors: Optional[NeighborCounts] = None
        if config.neighbor_pairs:
            self.neighbors = NeighborCounts(graph, set(config.neighbor_pairs))
            report.node_counts["neighbors"] = sum(
                idx.node_count for idx in self.neighbors.at_most_indexes.values()
            )

        self.influence: Optional[InfluenceCounts] = None
        if config.with_influence:
            self.influence = InfluenceCounts(graph, config.hops)
            report.node_counts["influence"] = sum(
                idx.node_count for idx in self.influence.indexes.values() if idx is not None
            )

        self.triads: Optional[TriadIndex] = None
        if config.with_triads:
            self.triads = TriadIndex(graph)
            report.node_counts["triads"] = self.triads.rank.dom.node_count

        report.seconds = time.perf_counter() - started
        self.report = report

    # -- rank helpers --------------------------------------------------------

    def _degree_rank(self, k: int, i: int, j: int) -> int:
        if k == 0:
            return 0
        idx = self.degree_ranks.get(k)
        if idx is None:
            raise GraphError(
                f"degree structure k={k} not built; registered: {sorted(self.degree_ranks)}"
            )
        return idx.rank_slice(i, j)

    def _pair_rank(self, k: int, i: int, j: int) -> int:
        if k == 0:
            return 0
        idx = self.pair_ranks.get(k)
        if idx is None:
            raise GraphError(
                f"multiplicity structure k={k} not built; registered: {sorted(self.pair_ranks)}"
            )
        return idx.rank_slice(i, j)

    # -- statistics ----------------------------------------------------------

    def degree_stat(self, mode: str, d: int, i: int, j: int) -> int:
        if d not in self.config.degrees and mode != "isolated":
            raise GraphError(
                f"degree d={d} not registered; registered: {sorted(self.config.degrees)}"
            )
        n = self.graph.n
        if mode == "greater":
            return self._degree_rank(d + 1, i, j) - self._degree_rank(d, i, j)
        if mode == "exact":
            if d == 0:
                return n - self.degree_stat("greater", 0, i, j)
            return self.degree_stat("greater", d - 1, i, j) - self.degree_stat("greater", d, i, j)
        if mode == "at_most":
            return n - self.degree_stat("greater", d, i, j)
        if mode == "isolated":
            return n - self._degree_rank(1, i, j)
        raise GraphError(f"unknown degree mode {mode!r}")

    def isolated_vertices(self, i: int, j: int) -> int:
        return self.degree_stat("isolated", 0, i, j)

    def multiplicity_stat(self, mode: str, mu: int, i: int, j: int) -> int:
        w = j - i + 1
        if mode == "distinct":
            return self._pair_rank(1, i, j)
        if mode == "repeated":
            return w - self._pair_rank(1, i, j)
        if mu not in self.config.multiplicities and mode != "pairs_ge":
            raise GraphError(
                f"multiplicity mu={mu} not registered; registered: "
                f"{sorted(self.config.multiplicities)}"
            )
        if mode == "pairs_ge":
            return self._pair_rank(mu, i, j) - self._pair_rank(mu - 1, i, j)
        if mode == "exact":
            # edges in pairs of size mu+1
            ge1 = self._pair_rank(mu + 1, i, j) - self._pair_rank(mu, i, j)
            ge2 = self._pair_rank(mu + 2, i, j) - self._pair_rank(mu + 1, i, j)
            return (mu + 1) * (ge1 - ge2)
        if mode == "at_most":
            # w minus edges in pairs of size >= mu+2
            pairs_over = self._pair_rank(mu + 2, i, j) - self._pair_rank(mu + 1, i, j)
            return self._pair_rank(mu + 1, i, j) - (mu + 1) * pairs_over
        raise GraphError(f"unknown multiplicity mode {mode!r}")

    def reciprocity_stats(self, i: int, j: int) -> tuple[int, int, int, float]:
        if self.upair_rank is None:
            raise GraphError("reciprocity not built (undirected graph or disabled)")
        directed = self._pair_rank(1, i, j)
        undirected = self.upair_rank.rank_slice(i, j)
        dyads = directed - undirected
        ratio = dyads / undirected if undirected else 0.0
        return dyads, directed, undirected, ratio

    def component_stat(self, kind: str, i: int, j: int):
        if self.graphic_rank is None:
            raise GraphError("connectivity statistics not built")
        n = self.graph.n
        w = j - i + 1
        if kind in ("components", "nontrivial_components", "avg_size", "avg_nontrivial_size",
                    "loopy_components", "tree_components", "nontrivial_trees"):
            components = n - self.graphic_rank.rank_slice(i, j)
        if kind == "components":
            return components
        if kind == "loopy_edges":
            return w - self.graphic_rank.rank_slice(i, j)
        if kind in ("tree_components", "loopy_components", "nontrivial_trees"):
            if self.bicycle_rank is None:
                raise GraphError("bicycle structure not built")
            trees = n - self.bicycle_rank.rank_slice(i, j)
            if kind == "tree_components":
                return trees
            if kind == "loopy_components":
                return components - trees
            return trees - self.isolated_vertices(i, j)
        if kind == "nontrivial_components":
            return components - self.isolated_vertices(i, j)
        if kind == "avg_size":
            return n / components if components else 0.0
        if kind == "avg_nontrivial_size":
            isolated = self.isolated_vertices(i, j)
            nontrivial = components - isolated
            return (n - isolated) / nontrivial if nontrivial else 0.0
        raise GraphError(f"unknown component statistic {kind!r}")

    def neighbor_stat(self, mode: str, i: int, j: int, r: int = 0, s: int = 0, k: int = 0) -> int:
        if self.neighbors is None:
            raise GraphError("neighbor statistics not built")
        if mode == "at_most":
            if (r, s) not in self.neighbors.at_most_indexes:
                raise GraphError(
                    f"neighbor bound ({r}, {s}) not registered; available: "
                    f"{sorted(self.neighbors.at_most_indexes)}"
                )
            return self.neighbors.at_most(r, s, i, j)
        if mode == "exact":
            return self.neighbors.exact(r, s, i, j)
        if mode == "isolated_edges":
            return self.neighbors.isolated_edges(i, j)
        if mode == "exact_total":
            return self.neighbors.exact_total(k, i, j)
        raise GraphError(f"unknown neighbor mode {mode!r}")

    def influenced(self, i: int, j: int, hops: Optional[int] = None,
                   include_influential: bool = False) -> int:
        if self.influence is None:
            raise GraphError("influence statistics not built")
        return self.influence.count(i, j, hops, include_influential)

    def triad_closures(self, i: int, j: int) -> int:
        if self.triads is None:
            raise GraphError("triad statistics not built")
        return self.triads.count(i, j)

    # -- key dispatch ----------------------------------------------------------

    def available_keys(self) -> list[str]:
        keys = []
        if self.graphic_rank is not None:
            keys += ["components", "loopy_edges", "avg_size"]
            if self.bicycle_rank is not None:
                keys += ["tree_components", "loopy_components"]
            if 1 in self.degree_ranks:
                keys += ["nontrivial_components", "avg_nontrivial_size", "nontrivial_trees"]
        if 1 in self.degree_ranks:
            keys.append("isolated_vertices")
        for d in sorted(self.config.degrees):
            keys += [f"degree_gt:d={d}", f"degree_eq:d={d}", f"degree_le:d={d}"]
        if 1 in self.pair_ranks:
            keys += ["distinct", "repeated"]
        for mu in sorted(self.config.multiplicities):
            keys += [f"pairs_ge:t={mu}", f"mult_eq:mu={mu}", f"mult_le:mu={mu}"]
        if self.upair_rank is not None:
            keys += ["reciprocity", "reciprocated_dyads", "distinct_directed",
                     "distinct_undirected"]
        if self.neighbors is not None:
            for r, s in sorted(self.neighbors.at_most_indexes):
                keys.append(f"neighbors_le:r={r},s={s}")
            for r, s in sorted(self.neighbors.pairs):
                keys.append(f"neighbors_exact:r={r},s={s}")
            if (0, 0) in self.neighbors.at_most_indexes:
                keys.append("isolated_edges")
            total = 0
            while all((r, total - r) in self.neighbors.pairs for r in range(total + 1)):
                keys.append(f"neighbors_total:k={total}")
                total += 1
        if self.influence is not None:
            keys += ["influenced", "influenced_incl"]
            for c in range(1, self.config.hops + 1):
                keys += [f"influenced:h={c}", f"influenced_incl:h={c}"]
        if self.triads is not None:
            keys.append("triad_closures")
        return keys

    def stat(self, key: str, i: int, j: int):
        """One statistic for slice [i, j]; raises GraphError for unknown keys."""
        self.graph.check_slice(i, j)
        name, args = _parse_key(key)
        if name in ("components", "nontrivial_components", "avg_size", "avg_nontrivial_size",
                    "loopy_edges", "loopy_components", "tree_components", "nontrivial_trees"):
            return self.component_stat(name, i, j)
        if name == "isolated_vertices":
            return self.isolated_vertices(i, j)
        if name == "degree_gt":
            return self.degree_stat("greater", args["d"], i, j)
        if name == "degree_eq":
            return self.degree_stat("exact", args["d"], i, j)
        if name == "degree_le":
            return self.degree_stat("at_most", args["d"], i, j)
        if name == "distinct":
            return self.multiplicity_stat("distinct", 1, i, j)
        if name == "repeated":
            return self.multiplicity_stat("repeated", 1, i, j)
        if name == "pairs_ge":
            return self.multiplicity_stat("pairs_ge", args["t"], i, j)
        if name == "mult_eq":
            return self.multiplicity_stat("exact", args["mu"], i, j)
        if name == "mult_le":
            return self.multiplicity_stat("at_most", args["mu"], i, j)
        if name == "reciprocity":
            return self.reciprocity_stats(i, j)[3]
        if name == "reciprocated_dyads":
            return self.reciprocity_stats(i, j)[0]
        if name == "distinct_directed":
            return self.reciprocity_stats(i, j)[1]
        if name == "distinct_undirected":
            return self.reciprocity_stats(i, j)[2]
        if name == "neighbors_le":
            return self.neighbor_stat("at_most", i, j, r=args["r"], s=args["s"])
        if name == "neighbors_exact":
            return self.neighbor_stat("exact", i, j, r=args["r"], s=args["s"])
        if name == "neighbors_total":
            return self.neighbor_stat("exact_total", i, j, k=args["k"])
        if name == "isolated_edges":
            return self.neighbor_stat("isolated_edges", i, j)
        if name == "influenced":
            return self.influenced(i, j, args.get("h"))
        if name == "influenced_incl":
            return self.influenced(i, j, args.get("h"), include_influential=True)
        if name == "triad_closures":
            return self.triad_closures(i, j)
        raise GraphError(f"unknown statistic key {key!r}; available: {self.available_keys()}")

    def stats(self, keys: Sequence[str], i: int, j: int) -> dict:
        return {key: self.stat(key, i, j) for key in keys}

    def sweep(self, width: int, step: int, keys: Sequence[str]) -> list[dict]:
        """Stats for every window of the given width, sliding by step."""
        if width < 1 or width > self.graph.m:
            raise GraphError(f"width must be in [1, {self.graph.m}], got {width}")
        if step < 1:
            raise GraphError(f"step must be >= 1, got {step}")
        out = []
        for i in range(0, self.graph.m - width + 1, step):
            j = i + width - 1
            out.append({"i": i, "j": j, "stats": self.stats(keys, i, j)})
        return out


def build_engine(graph: RelationalEventGraph, config: EngineConfig) -> SliceEngine:
    return SliceEngine(graph, config)
