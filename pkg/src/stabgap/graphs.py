"""Graphs, coset graphs, connection sets, and local action analysis.

A transitive case bundles a graph with a permutation group acting on it
by automorphisms with a single vertex orbit, the base vertex, the point
stabilizer, and the extracted connection set (the elements sending the
base vertex into its neighborhood, always an inverse-closed union of
stabilizer double cosets).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .errors import SizeLimitError, StructureError
from .groups import (
    ConnectionSet,
    DEFAULT_ELEMENT_CAP,
    PermutationGroup,
    double_coset,
    is_inverse_closed,
)
from .perms import Permutation


class SimpleGraph:
    """Undirected simple graph on {0, ..., n-1} with sorted adjacency lists."""

    __slots__ = ("n", "_adj", "_edge_set")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        adj: list[set[int]] = [set() for _ in range(n)]
        for edge in edges:
            u, v = edge
            for x in (u, v):
                if not 0 <= x < n:
                    raise ValueError(f"vertex {x} out of range for {n} vertices")
            if u == v:
                raise StructureError(f"loop at vertex {u} not allowed")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj = tuple(tuple(sorted(s)) for s in adj)
        self._edge_set = frozenset(
            (u, v) for u in range(n) for v in adj[u] if u < v
        )

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._edge_set)

    @property
    def edge_count(self) -> int:
        return len(self._edge_set)

    def is_regular(self) -> bool:
        return len({len(a) for a in self._adj}) <= 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SimpleGraph)
            and self.n == other.n
            and self._edge_set == other._edge_set
        )

    def __hash__(self) -> int:
        return hash((self.n, self._edge_set))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.edge_count})"

    def to_edge_text(self) -> str:
        """Edge-list text: one 'u v' pair per line, 0-based, u < v."""
        return "\n".join(f"{u} {v}" for u, v in self.edges())

    @classmethod
    def from_edge_text(cls, text: str, n: int | None = None) -> SimpleGraph:
        edges = []
        seen = set()
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer vertex in {line!r}") from None
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"line {lineno}: duplicate edge {u} {v}")
            seen.add(key)
            edges.append((u, v))
        if n is None:
            n = max((max(e) for e in edges), default=-1) + 1
            if n == 0:
                raise ValueError("empty edge list and no vertex count given")
        return cls(n, edges)


def preserves_edges(group: PermutationGroup, graph: SimpleGraph) -> bool:
    """True iff every generator maps edges to edges (hence acts by
    automorphisms).  Transitivity is reported separately via orbits."""
    if group.degree != graph.n:
        raise ValueError(
            f"group degree {group.degree} does not match vertex count {graph.n}"
        )
    for g in group.generators:
        for u, v in graph.edges():
            if not graph.has_edge(g(u), g(v)):
                return False
    return True


@dataclass(frozen=True)
class TransitiveCase:
    """A vertex-transitive action with its extracted connection data."""

    group: PermutationGroup
    graph: SimpleGraph
    base_vertex: int
    connection: ConnectionSet
    stabilizer: PermutationGroup
    valency: int

    def with_connection(self, connection: ConnectionSet) -> TransitiveCase:
        return replace(self, connection=connection)


def extract_connection_set(
    group: PermutationGroup,
    graph: SimpleGraph,
    vertex: int,
    cap: int = DEFAULT_ELEMENT_CAP,
) -> ConnectionSet:
    """The set {g in G : g(vertex) is a neighbor of vertex}.

    Inverse-closed and bi-invariant under the vertex stabilizer; these
    invariants are validated on construction rather than trusted.
    """
    neighborhood = set(graph.neighbors(vertex))
    chosen = [g for g in group.elements(cap) if g(vertex) in neighborhood]
    return ConnectionSet(chosen, group.stabilizer(vertex))


def make_transitive_case(
    group: PermutationGroup,
    graph: SimpleGraph,
    base_vertex: int = 0,
    cap: int = DEFAULT_ELEMENT_CAP,
) -> TransitiveCase:
    """Validate an action and extract its connection set.

    Checks: action by automorphisms, vertex-transitivity, regularity,
    positive valency, |S| = k * |G_v|, and S({v}) = neighborhood of v.
    """
    if group.degree != graph.n:
        raise ValueError(
            f"group degree {group.degree} does not match vertex count {graph.n}"
        )
    if not 0 <= base_vertex < graph.n:
        raise ValueError(f"base vertex {base_vertex} out of range")
    if not preserves_edges(group, graph):
        raise StructureError("action is not by graph automorphisms")
    if not group.is_transitive():
        raise StructureError("action is not vertex-transitive")
    if not graph.is_regular():
        raise StructureError("graph is not regular")
    valency = graph.degree(base_vertex)
    if valency == 0:
        raise StructureError("valency 0 is not supported (empty connection set)")
    connection = extract_connection_set(group, graph, base_vertex, cap)
    stab = connection.subgroup
    if len(connection) != valency * stab.order():
        raise StructureError(
            f"|S| = {len(connection)} differs from k*|G_v| = "
            f"{valency * stab.order()}"
        )
    image = {s(base_vertex) for s in connection}
    if image != set(graph.neighbors(base_vertex)):
        raise StructureError("S({v}) differs from the neighborhood of v")
    return TransitiveCase(group, graph, base_vertex, connection, stab, valency)


# -- coset graphs ------------------------------------------------------------


@dataclass(frozen=True)
class CosetGraphSpec:
    """Data for a coset graph: an ambient group, a subgroup, and
    double-coset representatives of the connection set."""

    group: PermutationGroup
    subgroup: PermutationGroup
    representatives: tuple[Permutation, ...]


class _CosetTable:
    """Left cosets of H in G, discovered breadth-first from the identity.

    Cosets are keyed by the (H-invariant) images of H's point orbits, so
    locating the coset of a product is a bucket scan plus membership tests.
    """

    def __init__(self, group: PermutationGroup, subgroup: PermutationGroup, cap: int):
        self.group = group
        self.subgroup = subgroup
        self.cap = cap
        self._orbits = self._point_orbits(subgroup)
        self.reps: list[Permutation] = []
        self._buckets: dict[tuple, list[int]] = {}
        self._add(Permutation.identity(group.degree))
        queue = [0]
        while queue:
            i = queue.pop(0)
            for g in group.generators:
                candidate = g * self.reps[i]
                if self.locate(candidate) is None:
                    queue.append(self._add(candidate))

    @staticmethod
    def _point_orbits(subgroup: PermutationGroup) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        orbits = []
        for p in range(subgroup.degree):
            if p in seen:
                continue
            orbit = sorted(subgroup.orbit(p))
            seen.update(orbit)
            orbits.append(tuple(orbit))
        return tuple(orbits)

    def _key(self, x: Permutation) -> tuple:
        return tuple(frozenset(x(p) for p in orbit) for orbit in self._orbits)

    def _add(self, x: Permutation) -> int:
        if len(self.reps) >= self.cap:
            raise SizeLimitError(f"coset enumeration exceeds cap {self.cap}")
        index = len(self.reps)
        self.reps.append(x)
        self._buckets.setdefault(self._key(x), []).append(index)
        return index

    def locate(self, x: Permutation) -> int | None:
        for j in self._buckets.get(self._key(x), ()):
            if (self.reps[j].inverse() * x) in self.subgroup:
                return j
        return None


def build_coset_graph(
    spec: CosetGraphSpec,
    max_cosets: int = 4000,
    element_cap: int = DEFAULT_ELEMENT_CAP,
) -> tuple[SimpleGraph, TransitiveCase]:
    """Construct the coset graph: vertices are left cosets xH of the
    subgroup, with an edge {xH, yH} exactly when the inverse-product
    x^-1 y lies in the connection set.

    The left-multiplication action of the group is attached (as the
    induced permutation group on the cosets) and is vertex-transitive.
    """
    group, subgroup = spec.group, spec.subgroup
    if subgroup.degree != group.degree:
        raise ValueError("subgroup degree does not match group degree")
    for h in subgroup.generators:
        if h not in group:
            raise StructureError("subgroup is not contained in the group")
    connection: set[Permutation] = set()
    for rep in spec.representatives:
        if rep in subgroup:
            raise StructureError(
                "connection set would contain the identity's double coset"
            )
        connection |= double_coset(subgroup, rep, cap=element_cap)
    if not connection:
        raise StructureError("empty connection set")
    if not is_inverse_closed(connection):
        raise StructureError("connection set is not inverse-closed")

    table = _CosetTable(group, subgroup, cap=max_cosets)
    n = len(table.reps)
    if n * subgroup.order() != group.order():
        raise StructureError("coset count disagrees with the subgroup index")

    edges = []
    for i in range(n):
        inv = table.reps[i].inverse()
        for j in range(i + 1, n):
            if (inv * table.reps[j]) in connection:
                edges.append((i, j))
    graph = SimpleGraph(n, edges)

    induced_gens = []
    for g in group.generators:
        images = []
        for rep in table.reps:
            j = table.locate(g * rep)
            assert j is not None
            images.append(j)
        induced_gens.append(Permutation(images))
    induced = PermutationGroup(n, induced_gens)
    case = make_transitive_case(induced, graph, base_vertex=0, cap=element_cap)
    return graph, case


# -- canonical isomorphism check ---------------------------------------------


@dataclass(frozen=True)
class SabidussiResult:
    """Outcome of checking the canonical coset-graph isomorphism.

    The map sends the coset x*Stab to the vertex x(v); a False result
    carries the first vertex pair where edges disagree."""

    ok: bool
    violation: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def sabidussi_isomorphism(case: TransitiveCase) -> SabidussiResult:
    """Check that xG_v -> x(v) is an isomorphism between the coset graph
    on (group, stabilizer, connection set) and the case's graph."""
    transversal = case.group.transversal(case.base_vertex)
    if len(transversal) != case.graph.n:
        return SabidussiResult(False, (case.base_vertex, case.base_vertex))
    vertices = sorted(transversal)
    inverses = {w: transversal[w].inverse() for w in vertices}
    for a, w1 in enumerate(vertices):
        inv = inverses[w1]
        for w2 in vertices[a + 1 :]:
            coset_edge = (inv * transversal[w2]) in case.connection
            if coset_edge != case.graph.has_edge(w1, w2):
                return SabidussiResult(False, (w1, w2))
    return SabidussiResult(True)


# -- local action -------------------------------------------------------------


@dataclass(frozen=True)
class LocalActionReport:
    """How the vertex stabilizer acts on the base vertex's neighborhood."""

    orbit_count: int
    locally_transitive: bool
    block_system: tuple[tuple[int, ...], ...] | None
    locally_primitive: bool


def _finest_congruence(
    gens: Sequence[Permutation], k: int, a: int, b: int
) -> list[list[int]]:
    """Finest G-congruence on {0..k-1} merging a and b (union-find closure
    over merged pairs: x ~ y forces g(x) ~ g(y) for every generator)."""
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> bool:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    union(a, b)
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        for g in gens:
            gx, gy = g(x), g(y)
            if union(gx, gy):
                stack.append((gx, gy))

    blocks: dict[int, list[int]] = {}
    for x in range(k):
        blocks.setdefault(find(x), []).append(x)
    return sorted(blocks.values())


def local_action(case: TransitiveCase) -> LocalActionReport:
    """Restrict the stabilizer to the base neighborhood and classify it.

    Locally transitive means one orbit; when transitive, the classical
    minimal-block closure over each point pair decides primitivity, and
    the first nontrivial block system found is reported (on the actual
    neighbor vertices).
    """
    neighborhood = case.graph.neighbors(case.base_vertex)
    k = len(neighborhood)
    position = {w: i for i, w in enumerate(neighborhood)}
    induced = PermutationGroup(
        k,
        [
            Permutation([position[g(w)] for w in neighborhood])
            for g in case.stabilizer.generators
        ],
    ) if k else PermutationGroup.trivial(1)

    seen: set[int] = set()
    orbit_count = 0
    for i in range(k):
        if i not in seen:
            orbit_count += 1
            seen.update(induced.orbit(i))
    locally_transitive = orbit_count == 1

    block_system = None
    locally_primitive = False
    if locally_transitive:
        locally_primitive = True
        gens = induced.generators
        for b in range(1, k):
            blocks = _finest_congruence(gens, k, 0, b)
            size = len(blocks[0])
            if 1 < size < k:
                block_system = tuple(
                    tuple(neighborhood[i] for i in block) for block in blocks
                )
                locally_primitive = False
                break
    return LocalActionReport(
        orbit_count, locally_transitive, block_system, locally_primitive
    )
