"""Labeled directed multigraphs with named source vertices.

The core value type is the ms-graph: a finite multigraph together with a
finite set of source labels, each label naming exactly one vertex.  Several
labels may share a vertex.  When the source assignment is injective (at most
one label per vertex) the graph is an s-graph, the classic special case.

Everything here is an immutable value; operations return new graphs.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple

ROOT_LABEL = "rt"

# Default ceiling for the isomorphism search; raised via parameter if needed.
ISO_VERTEX_LIMIT = 64

# Default ceiling on how many graphs enumerate_graphs may produce.
ENUMERATION_BUDGET = 500_000


class GraphError(Exception):
    """Base class for data-level errors raised by this package."""


class UnknownVertexError(GraphError):
    pass


class MissingSourceError(GraphError):
    pass


class RenameCollisionError(GraphError):
    """A source rename would make two labels name the same vertex slot."""


class CapacityError(GraphError):
    """An operation was asked to exceed its configured size budget."""


class Vertex(NamedTuple):
    id: str
    label: str | None = None


class Edge(NamedTuple):
    src: str
    dst: str
    label: str


@dataclass(frozen=True)
class BaseGraph:
    """A finite directed multigraph: ordered vertices, a multiset of edges.

    Vertex order and edge order are part of the value (they make
    serialization deterministic); semantic comparisons go through
    isomorphism instead.
    """

    vertices: tuple[Vertex, ...] = ()
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        # Accept plain tuples for convenience; normalize to the named types.
        vs = self.vertices
        if type(vs) is not tuple or any(type(v) is not Vertex for v in vs):
            object.__setattr__(
                self,
                "vertices",
                tuple(v if isinstance(v, Vertex) else Vertex(*v) for v in vs),
            )
        es = self.edges
        if type(es) is not tuple or any(type(e) is not Edge for e in es):
            object.__setattr__(
                self, "edges", tuple(e if isinstance(e, Edge) else Edge(*e) for e in es)
            )

    @cached_property
    def _label_map(self) -> dict[str, str | None]:
        return {v.id: v.label for v in self.vertices}

    @cached_property
    def _ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def _id_set(self) -> frozenset[str]:
        return frozenset(self._ids)

    def vertex_ids(self) -> tuple[str, ...]:
        return self._ids

    def has_vertex(self, vertex_id: str) -> bool:
        return vertex_id in self._label_map

    def label_of(self, vertex_id: str) -> str | None:
        if vertex_id not in self._label_map:
            raise UnknownVertexError(f"unknown vertex {vertex_id!r}")
        return self._label_map[vertex_id]


@dataclass(frozen=True)
class MsGraph:
    """A multigraph plus a total map from source labels to vertices.

    ``sources[label] = vertex_id``.  The label set (``tau``) may be empty;
    distinct labels may name the same vertex.
    """

    base: BaseGraph = BaseGraph()
    sources: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sources", dict(self.sources))

    @cached_property
    def tau(self) -> frozenset[str]:
        """The set of source labels in use."""
        return frozenset(self.sources)

    @cached_property
    def _slab_map(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {}
        for label, vertex_id in self.sources.items():
            acc.setdefault(vertex_id, set()).add(label)
        return {v: frozenset(ls) for v, ls in acc.items()}

    def src(self, label: str) -> str:
        if label not in self.sources:
            raise MissingSourceError(f"no source labeled {label!r}")
        return self.sources[label]

    def slab(self, vertex_id: str) -> frozenset[str]:
        """All source labels naming the given vertex."""
        if not self.base.has_vertex(vertex_id):
            raise UnknownVertexError(f"unknown vertex {vertex_id!r}")
        return self._slab_map.get(vertex_id, frozenset())

    def slab_set(self, vertex_ids: Iterable[str]) -> frozenset[str]:
        """Union of slab over a vertex set; ids without labels contribute nothing."""
        out: set[str] = set()
        for v in vertex_ids:
            out |= self._slab_map.get(v, frozenset())
        return frozenset(out)

    def is_sgraph(self) -> bool:
        """True when no vertex carries more than one source label."""
        values = self.sources.values()
        return len(set(values)) == len(values)

    def rename(self, mapping: Mapping[str, str]) -> MsGraph:
        """Simultaneously substitute source labels.

        ``mapping`` must be injective on its domain, and no renamed label may
        land on a label of this graph that is itself left unrenamed; either
        situation raises RenameCollisionError.  Domain labels the graph does
        not use are ignored.
        """
        values = list(mapping.values())
        if len(set(values)) != len(values):
            raise RenameCollisionError("rename map is not injective")
        relevant = {a: b for a, b in mapping.items() if a in self.sources}
        untouched = self.tau - relevant.keys()
        for a, b in relevant.items():
            if b in untouched:
                raise RenameCollisionError(
                    f"renaming {a!r} to {b!r} collides with existing label {b!r}"
                )
        new_sources = {mapping.get(a, a): v for a, v in self.sources.items()}
        return MsGraph(self.base, new_sources)

    def forget(self, label: str) -> MsGraph:
        """Drop one source label; the vertex stays."""
        if label not in self.sources:
            raise MissingSourceError(f"cannot forget absent source {label!r}")
        new_sources = {a: v for a, v in self.sources.items() if a != label}
        return MsGraph(self.base, new_sources)

    def rlab(self) -> frozenset[str]:
        """Source labels sharing the root vertex, other than the root label."""
        if ROOT_LABEL not in self.sources:
            raise MissingSourceError("graph has no root source")
        return self.slab(self.sources[ROOT_LABEL]) - {ROOT_LABEL}


def build_graph(
    vertices: Iterable[str | tuple[str, str | None]],
    edges: Iterable[tuple[str, str, str]] = (),
    sources: Mapping[str, str] | None = None,
) -> MsGraph:
    """Concise constructor: vertices as ids or (id, label) pairs."""
    vs = tuple(
        Vertex(v) if isinstance(v, str) else Vertex(v[0], v[1]) for v in vertices
    )
    es = tuple(Edge(*e) for e in edges)
    return MsGraph(BaseGraph(vs, es), dict(sources or {}))


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class Violation:
    invariant: str
    subject: str
    detail: str


def validate(g: MsGraph) -> list[Violation]:
    """Check structural invariants; an empty list means the graph is well formed."""
    out: list[Violation] = []
    seen: set[str] = set()
    for v in g.base.vertices:
        if v.id in seen:
            out.append(
                Violation("duplicate vertex id", v.id, f"vertex id {v.id!r} appears twice")
            )
        seen.add(v.id)
        if v.label == "":
            out.append(Violation("empty node label", v.id, f"vertex {v.id!r} has an empty label"))
    for e in g.base.edges:
        for endpoint in (e.src, e.dst):
            if endpoint not in seen:
                out.append(
                    Violation(
                        "dangling edge endpoint",
                        endpoint,
                        f"edge {e.src!r}->{e.dst!r} uses missing vertex {endpoint!r}",
                    )
                )
        if e.label == "":
            out.append(
                Violation("empty edge label", f"{e.src}->{e.dst}", "edges must carry a label")
            )
    for label, vertex_id in g.sources.items():
        if label == "":
            out.append(Violation("empty source label", vertex_id, "source labels must be non-empty"))
        if vertex_id not in seen:
            out.append(
                Violation(
                    "dangling source",
                    label,
                    f"source {label!r} names missing vertex {vertex_id!r}",
                )
            )
    return out


def is_valid(g: MsGraph) -> bool:
    return not validate(g)


# ---------------------------------------------------------------------------
# isomorphism

def _pair_labels(base: BaseGraph) -> dict[tuple[str, str], tuple[str, ...]]:
    acc: dict[tuple[str, str], list[str]] = {}
    for e in base.edges:
        acc.setdefault((e.src, e.dst), []).append(e.label)
    return {k: tuple(sorted(v)) for k, v in acc.items()}


_NO_SOURCES: frozenset[str] = frozenset()


def _signatures(g: MsGraph) -> dict[str, tuple]:
    outs: dict[str, dict[str, int]] = {}
    ins: dict[str, dict[str, int]] = {}
    for e in g.base.edges:
        d = outs.setdefault(e.src, {})
        d[e.label] = d.get(e.label, 0) + 1
        d = ins.setdefault(e.dst, {})
        d[e.label] = d.get(e.label, 0) + 1
    slab = g._slab_map
    sig = {}
    for v in g.base.vertices:
        o = outs.get(v.id)
        i = ins.get(v.id)
        sig[v.id] = (
            v.label,
            slab.get(v.id, _NO_SOURCES),
            tuple(sorted(o.items())) if o else (),
            tuple(sorted(i.items())) if i else (),
        )
    return sig


def find_isomorphism(
    g: MsGraph, h: MsGraph, *, max_vertices: int = ISO_VERTEX_LIMIT
) -> dict[str, str] | None:
    """A vertex bijection carrying g onto h exactly, or None.

    The bijection must preserve node labels, the edge multiset, and every
    source label.  Backtracking with pruning on (node label, source labels,
    degree profile); graphs above ``max_vertices`` are rejected outright.
    """
    n_g, n_h = len(g.base.vertices), len(h.base.vertices)
    if n_g > max_vertices or n_h > max_vertices:
        raise CapacityError(
            f"isomorphism search capped at {max_vertices} vertices; got {max(n_g, n_h)}"
        )
    if n_g != n_h or len(g.base.edges) != len(h.base.edges):
        return None
    if g.tau != h.tau:
        return None
    if g == h:
        return {v.id: v.id for v in g.base.vertices}

    # Source labels are preserved verbatim, so they force part of the mapping.
    mapping: dict[str, str] = {}
    used: dict[str, str] = {}
    for label in g.tau:
        x, y = g.sources[label], h.sources[label]
        if mapping.get(x, y) != y or used.get(y, x) != x:
            return None
        mapping[x] = y
        used[y] = x

    if len(mapping) == n_g:
        # Fully forced: just verify labels and the remapped edge multiset.
        label_of = h.base._label_map
        for x, y in mapping.items():
            if g.base.label_of(x) != label_of[y]:
                return None
        g_edges = Counter((mapping[e.src], mapping[e.dst], e.label) for e in g.base.edges)
        h_edges = Counter((e.src, e.dst, e.label) for e in h.base.edges)
        return dict(mapping) if g_edges == h_edges else None

    sig_g, sig_h = _signatures(g), _signatures(h)
    if Counter(sig_g.values()) != Counter(sig_h.values()):
        return None

    buckets: dict[tuple, list[str]] = {}
    for v, s in sig_h.items():
        buckets.setdefault(s, []).append(v)

    pl_g, pl_h = _pair_labels(g.base), _pair_labels(h.base)

    def compatible(x: str, y: str) -> bool:
        if sig_g[x] != sig_h[y]:
            return False
        if pl_g.get((x, x)) != pl_h.get((y, y)):
            return False
        for a, b in mapping.items():
            if a == x:
                continue
            if pl_g.get((x, a)) != pl_h.get((y, b)):
                return False
            if pl_g.get((a, x)) != pl_h.get((b, y)):
                return False
        return True

    for x, y in list(mapping.items()):
        if not compatible(x, y):
            return None

    free = [v.id for v in g.base.vertices if v.id not in mapping]
    # Most constrained first: small candidate pools early.
    free.sort(key=lambda v: (len(buckets.get(sig_g[v], ())), v))

    def extend(i: int) -> bool:
        if i == len(free):
            return True
        x = free[i]
        for y in buckets.get(sig_g[x], ()):
            if y in used:
                continue
            if not compatible(x, y):
                continue
            mapping[x] = y
            used[y] = x
            if extend(i + 1):
                return True
            del mapping[x]
            del used[y]
        return False

    return dict(mapping) if extend(0) else None


def isomorphic(g: MsGraph, h: MsGraph, *, max_vertices: int = ISO_VERTEX_LIMIT) -> bool:
    return find_isomorphism(g, h, max_vertices=max_vertices) is not None


# ---------------------------------------------------------------------------
# exhaustive enumeration

@dataclass(frozen=True)
class EnumerationBounds:
    """Finite search space for graph enumeration.

    Node labels are optional per vertex (a vertex may stay unlabeled), each
    source label is optionally assigned to a vertex, and edges form a
    multiset of at most ``max_edges`` labeled arcs.
    """

    max_vertices: int = 3
    source_labels: tuple[str, ...] = ("a", "b", ROOT_LABEL)
    node_labels: tuple[str, ...] = ()
    edge_labels: tuple[str, ...] = ("e",)
    max_edges: int = 2
    sgraphs_only: bool = False
    allow_loops: bool = False


def _multiset_count(options: int, size: int) -> int:
    if size == 0:
        return 1
    if options == 0:
        return 0
    return math.comb(options + size - 1, size)


def count_graphs(bounds: EnumerationBounds) -> int:
    """Closed-form size of the enumeration space; mirrors enumerate_graphs."""
    total = 0
    k = len(bounds.source_labels)
    for n in range(bounds.max_vertices + 1):
        labelings = (len(bounds.node_labels) + 1) ** n
        if bounds.sgraphs_only:
            assignments = sum(
                math.comb(k, j) * math.perm(n, j) for j in range(min(k, n) + 1)
            )
        else:
            assignments = (n + 1) ** k
        arcs = n * n if bounds.allow_loops else n * (n - 1)
        arcs *= len(bounds.edge_labels)
        edge_sets = sum(_multiset_count(arcs, m) for m in range(bounds.max_edges + 1))
        total += labelings * assignments * edge_sets
    return total


def enumerate_graphs(
    bounds: EnumerationBounds, *, budget: int = ENUMERATION_BUDGET
) -> Iterator[MsGraph]:
    """Every graph within the bounds, exactly once, in a fixed order.

    Order is lexicographic over (vertex count, node labeling, source
    assignment, edge multiset), so runs are reproducible.  Raises
    CapacityError when the space is larger than ``budget``.
    """
    total = count_graphs(bounds)
    if total > budget:
        raise CapacityError(
            f"enumeration space has {total} graphs, over the budget of {budget}"
        )
    label_options: tuple[str | None, ...] = (None,) + tuple(bounds.node_labels)
    for n in range(bounds.max_vertices + 1):
        ids = tuple(f"v{i}" for i in range(n))
        arcs = [
            (u, v, lab)
            for u in range(n)
            for v in range(n)
            if bounds.allow_loops or u != v
            for lab in bounds.edge_labels
        ]
        slot_options: tuple[int | None, ...] = (None,) + tuple(range(n))
        for labeling in itertools.product(label_options, repeat=n):
            vertices = tuple(Vertex(ids[i], labeling[i]) for i in range(n))
            for slots in itertools.product(slot_options, repeat=len(bounds.source_labels)):
                taken = [s for s in slots if s is not None]
                if bounds.sgraphs_only and len(set(taken)) != len(taken):
                    continue
                sources = {
                    lab: ids[s]
                    for lab, s in zip(bounds.source_labels, slots)
                    if s is not None
                }
                for m in range(bounds.max_edges + 1):
                    for combo in itertools.combinations_with_replacement(arcs, m):
                        edges = tuple(Edge(ids[u], ids[v], lab) for u, v, lab in combo)
                        yield MsGraph(BaseGraph(vertices, edges), sources)
