"""Oriented combinatorial maps (rotation systems) and marked subgraphs.

A map is a dart set with two permutations: ``sigma`` (counterclockwise
successor around the incident vertex) and ``alpha`` (fixed-point-free
involution pairing the two darts of each edge).  Orbits of ``sigma`` are
vertices, orbits of ``alpha`` are edges, and orbits of ``phi = sigma∘alpha``
are faces; capping each face with a disk realizes the map as a cellulation
of a closed oriented surface.

Conventions used throughout the package:

* phi(d) = sigma[alpha[d]]; a face walk traverses dart d from the vertex of
  d toward the vertex of alpha(d), keeping the face on its left.
* vertex id = smallest dart of the sigma-orbit, edge id = smallest dart of
  the alpha-orbit, face id = smallest dart of the phi-orbit.
* an edge is oriented from the vertex of its smaller dart to the other.
* isolated vertices carry no darts and are tracked by count; each one is a
  sphere component of the surface and is always part of the marked graph.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    AlphaNotInvolution,
    DanglingDart,
    EdgeNotInGraph,
    InternalEulerParity,
    LoopContraction,
    MalformedPermutation,
    MapFormatError,
    NotSpanning,
)

Perm = dict[int, int]


def _cycles(perm: Perm) -> tuple[tuple[int, ...], ...]:
    """Disjoint cycles of a permutation, each rotated to start at its
    minimum, sorted by that minimum."""
    seen: set[int] = set()
    out: list[tuple[int, ...]] = []
    for start in sorted(perm):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        d = perm[start]
        while d != start:
            cyc.append(d)
            seen.add(d)
            d = perm[d]
        out.append(tuple(cyc))
    return tuple(out)


class UnionFind:
    """Plain union-find over arbitrary hashable elements."""

    def __init__(self, elements: Iterable = ()):
        self.parent = {x: x for x in elements}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def n_classes(self) -> int:
        return sum(1 for x in self.parent if self.parent[x] == x)


@dataclass(frozen=True)
class CombinatorialMap:
    """An oriented surface cellulation, immutable after construction."""

    sigma: Perm
    alpha: Perm
    isolated_vertices: int = 0

    def __post_init__(self):
        sig, alp = self.sigma, self.alpha
        if set(sig) != set(alp):
            raise DanglingDart("sigma and alpha must act on the same dart set")
        if sorted(sig.values()) != sorted(sig):
            raise MalformedPermutation("sigma is not a bijection on the darts")
        for d, d2 in alp.items():
            if d2 == d or alp.get(d2) != d:
                raise AlphaNotInvolution(
                    f"alpha is not a fixed-point-free involution at dart {d}"
                )
        if self.isolated_vertices < 0:
            raise MapFormatError("isolated vertex count must be nonnegative")
        if any(d < 1 for d in sig):
            raise MapFormatError("dart ids must be positive integers")

    # -- basic structure ---------------------------------------------------

    @cached_property
    def darts(self) -> tuple[int, ...]:
        return tuple(sorted(self.sigma))

    @cached_property
    def sigma_inv(self) -> Perm:
        return {v: k for k, v in self.sigma.items()}

    def phi(self, d: int) -> int:
        return self.sigma[self.alpha[d]]

    @cached_property
    def vertex_cycles(self) -> tuple[tuple[int, ...], ...]:
        return _cycles(self.sigma)

    @cached_property
    def face_cycles(self) -> tuple[tuple[int, ...], ...]:
        return _cycles({d: self.phi(d) for d in self.sigma})

    @cached_property
    def vertex_of(self) -> dict[int, int]:
        return {d: cyc[0] for cyc in self.vertex_cycles for d in cyc}

    @cached_property
    def face_of(self) -> dict[int, int]:
        return {d: cyc[0] for cyc in self.face_cycles for d in cyc}

    def edge_of(self, d: int) -> int:
        return min(d, self.alpha[d])

    @cached_property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(cyc[0] for cyc in self.vertex_cycles)

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(d for d in self.sigma if d < self.alpha[d]))

    @cached_property
    def face_ids(self) -> tuple[int, ...]:
        return tuple(cyc[0] for cyc in self.face_cycles)

    def edge_darts(self, e: int) -> tuple[int, int]:
        return (e, self.alpha[e])

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        """(tail, head) vertex ids; tail is the vertex of the smaller dart."""
        return (self.vertex_of[e], self.vertex_of[self.alpha[e]])

    @cached_property
    def n_vertices(self) -> int:
        return len(self.vertex_cycles) + self.isolated_vertices

    @cached_property
    def n_edges(self) -> int:
        return len(self.edge_ids)

    @cached_property
    def n_faces(self) -> int:
        # each isolated vertex is a sphere component with one (empty) face
        return len(self.face_cycles) + self.isolated_vertices

    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Partition of the darts into phi-orbits."""
        return self.face_cycles

    # -- components / genus ------------------------------------------------

    @cached_property
    def dart_components(self) -> tuple[frozenset[int], ...]:
        uf = UnionFind(self.sigma)
        for d in self.sigma:
            uf.union(d, self.sigma[d])
            uf.union(d, self.alpha[d])
        groups: dict[int, set[int]] = {}
        for d in self.sigma:
            groups.setdefault(uf.find(d), set()).add(d)
        return tuple(
            frozenset(g) for _, g in sorted(groups.items(), key=lambda kv: min(kv[1]))
        )

    @cached_property
    def n_components(self) -> int:
        return len(self.dart_components) + self.isolated_vertices

    def genus(self) -> tuple[list[int], int]:
        """Per-component genus list (dart components in min-dart order, then
        one 0 per isolated vertex) and the total genus."""
        genera: list[int] = []
        for comp in self.dart_components:
            v = len({self.vertex_of[d] for d in comp})
            e = sum(1 for d in comp if d < self.alpha[d])
            f = len({self.face_of[d] for d in comp})
            two_g = 2 - (v - e + f)
            if two_g % 2 or two_g < 0:
                raise InternalEulerParity(
                    f"component has Euler defect {two_g}; map is corrupted"
                )
            genera.append(two_g // 2)
        genera.extend([0] * self.isolated_vertices)
        return genera, sum(genera)

    @cached_property
    def total_genus(self) -> int:
        return self.genus()[1]

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    # -- derived maps --------------------------------------------------------

    def dual(self) -> "CombinatorialMap":
        """Dual map: vertices are the faces of self, alpha is shared, so
        edges correspond one to one and dual(dual(m)) == m exactly."""
        phi = {d: self.phi(d) for d in self.sigma}
        return CombinatorialMap(phi, dict(self.alpha), self.isolated_vertices)

    def contract_edge(self, e: int) -> "CombinatorialMap":
        """Contract a non-loop edge, splicing the two vertex rotations.

        The surface is unchanged (v and e both drop by one, faces are
        preserved).  If both endpoints had degree one the merged vertex
        becomes isolated.
        """
        if e not in set(self.edge_ids):
            raise EdgeNotInGraph(f"edge {e} not in map")
        d1, d2 = e, self.alpha[e]
        if self.vertex_of[d1] == self.vertex_of[d2]:
            raise LoopContraction(f"edge {e} is a loop")
        cyc_u = self._cycle_from(d1)
        cyc_w = self._cycle_from(d2)
        merged = cyc_u[1:] + cyc_w[1:]
        sigma = dict(self.sigma)
        alpha = dict(self.alpha)
        for d in (d1, d2):
            del alpha[d]
        for cyc in (cyc_u, cyc_w):
            for d in cyc:
                del sigma[d]
        iso = self.isolated_vertices
        if merged:
            for i, d in enumerate(merged):
                sigma[d] = merged[(i + 1) % len(merged)]
        else:
            iso += 1
        return CombinatorialMap(sigma, alpha, iso)

    def _cycle_from(self, d: int) -> list[int]:
        cyc = [d]
        x = self.sigma[d]
        while x != d:
            cyc.append(x)
            x = self.sigma[x]
        return cyc

    def relabeled(self, mapping: Mapping[int, int]) -> "CombinatorialMap":
        sigma = {mapping[d]: mapping[v] for d, v in self.sigma.items()}
        alpha = {mapping[d]: mapping[v] for d, v in self.alpha.items()}
        return CombinatorialMap(sigma, alpha, self.isolated_vertices)

    def disjoint_union(self, other: "CombinatorialMap") -> "CombinatorialMap":
        offset = max(self.darts, default=0)
        other = other.relabeled({d: d + offset for d in other.darts})
        sigma = dict(self.sigma)
        sigma.update(other.sigma)
        alpha = dict(self.alpha)
        alpha.update(other.alpha)
        return CombinatorialMap(
            sigma, alpha, self.isolated_vertices + other.isolated_vertices
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CombinatorialMap)
            and self.sigma == other.sigma
            and self.alpha == other.alpha
            and self.isolated_vertices == other.isolated_vertices
        )

    def __hash__(self) -> int:
        return hash(
            (tuple(sorted(self.sigma.items())), self.isolated_vertices)
        )

    def __repr__(self) -> str:
        return (
            f"CombinatorialMap(v={self.n_vertices}, e={self.n_edges}, "
            f"f={self.n_faces}, genus={self.total_genus})"
        )


@dataclass(frozen=True)
class EmbeddedSubgraph:
    """A marked graph G inside a host cellulation of the surface.

    ``g_vertices``/``g_edges`` are subsets of the host's vertex and edge ids;
    endpoints of marked edges must be marked.  Isolated host vertices are
    implicitly marked.  With everything marked the subgraph *is* the
    cellulation (ribbon-graph mode).
    """

    host: CombinatorialMap
    g_vertices: frozenset[int]
    g_edges: frozenset[int]

    def __post_init__(self):
        vids = set(self.host.vertex_ids)
        eids = set(self.host.edge_ids)
        if not self.g_vertices <= vids:
            raise MapFormatError("graph_vertices contains unknown vertex ids")
        if not self.g_edges <= eids:
            raise MapFormatError("graph_edges contains unknown edge ids")
        for e in self.g_edges:
            u, w = self.host.edge_endpoints(e)
            if u not in self.g_vertices or w not in self.g_vertices:
                raise NotSpanning(f"edge {e} has an endpoint outside graph_vertices")

    @classmethod
    def full(cls, host: CombinatorialMap) -> "EmbeddedSubgraph":
        return cls(host, frozenset(host.vertex_ids), frozenset(host.edge_ids))

    @property
    def is_cellulation(self) -> bool:
        return len(self.g_vertices) == len(self.host.vertex_ids) and len(
            self.g_edges
        ) == len(self.host.edge_ids)

    @cached_property
    def sorted_edges(self) -> tuple[int, ...]:
        return tuple(sorted(self.g_edges))

    @cached_property
    def n_marked_vertices(self) -> int:
        return len(self.g_vertices) + self.host.isolated_vertices

    def is_loop(self, e: int) -> bool:
        u, w = self.host.edge_endpoints(e)
        return u == w

    @cached_property
    def bridges(self) -> frozenset[int]:
        """Edges of the marked graph whose removal raises its component count."""
        out = set()
        for e in self.g_edges:
            if self.is_loop(e):
                continue
            uf = UnionFind(self.g_vertices)
            for e2 in self.g_edges:
                if e2 != e:
                    u, w = self.host.edge_endpoints(e2)
                    uf.union(u, w)
            u, w = self.host.edge_endpoints(e)
            if uf.find(u) != uf.find(w):
                out.add(e)
        return frozenset(out)

    def components_count(self, edges: Iterable[int] | None = None) -> int:
        """Components of the spanning subgraph on the given edges (all marked
        edges by default), isolated host vertices included."""
        uf = UnionFind(self.g_vertices)
        for e in self.g_edges if edges is None else edges:
            u, w = self.host.edge_endpoints(e)
            uf.union(u, w)
        return uf.n_classes() + self.host.isolated_vertices

    def delete_edge(self, e: int) -> "EmbeddedSubgraph":
        """Remove e from the marked graph; the host surface stays fixed."""
        if e not in self.g_edges:
            raise EdgeNotInGraph(f"edge {e} not in marked graph")
        return EmbeddedSubgraph(self.host, self.g_vertices, self.g_edges - {e})

    def contract_edge(self, e: int) -> "EmbeddedSubgraph":
        """Contract a non-loop marked edge in both the graph and the host."""
        if e not in self.g_edges:
            raise EdgeNotInGraph(f"edge {e} not in marked graph")
        if self.is_loop(e):
            raise LoopContraction(f"edge {e} is a loop")
        u, w = self.host.edge_endpoints(e)
        d1, d2 = self.host.edge_darts(e)
        merged = self.host._cycle_from(d1)[1:] + self.host._cycle_from(d2)[1:]
        host = self.host.contract_edge(e)
        vids = set(self.g_vertices) - {u, w}
        if merged:
            vids.add(min(merged))  # id of the spliced vertex
        return EmbeddedSubgraph(host, frozenset(vids), self.g_edges - {e})

    # -- canonical codes ---------------------------------------------------

    def canonical_code(self) -> bytes:
        """Isomorphism-invariant code of (host, marks).

        Two subgraphs get equal codes iff a host isomorphism matches the
        marked vertex and edge sets: the code is the lexicographic minimum
        over root darts of a breadth-first relabeling trace recording sigma,
        alpha and the marks.
        """
        code, _ = self._canonical_code_and_labels()
        return repr(code).encode()

    def _canonical_code_and_labels(self):
        host = self.host
        vmark = {d: host.vertex_of[d] in self.g_vertices for d in host.sigma}
        emark = {d: host.edge_of(d) in self.g_edges for d in host.sigma}
        comp_codes = []
        for comp in host.dart_components:
            best = None
            best_order = None
            for root in sorted(comp):
                order = self._bfs_order(root)
                label = {d: i + 1 for i, d in enumerate(order)}
                trace = tuple(
                    (label[host.sigma[d]], label[host.alpha[d]], vmark[d], emark[d])
                    for d in order
                )
                if best is None or trace < best:
                    best, best_order = trace, order
            comp_codes.append((best, best_order))
        comp_codes.sort(key=lambda t: t[0])
        code = (tuple(c for c, _ in comp_codes), self.host.isolated_vertices)
        relabel: dict[int, int] = {}
        next_id = 1
        for _, order in comp_codes:
            for d in order:
                relabel[d] = next_id
                next_id += 1
        return code, relabel

    def _bfs_order(self, root: int) -> list[int]:
        host = self.host
        order = [root]
        seen = {root}
        i = 0
        while i < len(order):
            d = order[i]
            i += 1
            for nb in (host.sigma[d], host.alpha[d]):
                if nb not in seen:
                    seen.add(nb)
                    order.append(nb)
        return order

    def canonical_form(self) -> "EmbeddedSubgraph":
        """Relabel darts to 1..2m in canonical (code-minimizing) order."""
        _, relabel = self._canonical_code_and_labels()
        host = self.host.relabeled(relabel)
        vmap = {}
        for cyc in self.host.vertex_cycles:
            vmap[cyc[0]] = min(relabel[d] for d in cyc)
        emap = {e: min(relabel[e], relabel[self.host.alpha[e]]) for e in self.host.edge_ids}
        return EmbeddedSubgraph(
            host,
            frozenset(vmap[v] for v in self.g_vertices),
            frozenset(emap[e] for e in self.g_edges),
        )

    def __repr__(self) -> str:
        return (
            f"EmbeddedSubgraph({self.host!r}, vertices={sorted(self.g_vertices)}, "
            f"edges={sorted(self.g_edges)})"
        )


def canonical_code(obj: CombinatorialMap | EmbeddedSubgraph) -> bytes:
    if isinstance(obj, CombinatorialMap):
        obj = EmbeddedSubgraph.full(obj)
    return obj.canonical_code()


# -- text format -----------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_perm_text(text: str, what: str) -> list[list[int]]:
    stripped = _CYCLE_RE.sub("", text)
    if stripped.strip():
        raise MapFormatError(f"stray tokens in {what} permutation: {stripped.strip()!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        if not body.strip():
            continue
        try:
            cyc = [int(tok) for tok in body.split()]
        except ValueError as exc:
            raise MapFormatError(f"non-integer dart in {what}: {body!r}") from exc
        cycles.append(cyc)
    return cycles


def _perm_from_cycles(cycles: list[list[int]], what: str) -> Perm:
    perm: Perm = {}
    for cyc in cycles:
        for i, d in enumerate(cyc):
            if d in perm:
                raise MalformedPermutation(f"dart {d} repeated in {what}")
            perm[d] = cyc[(i + 1) % len(cyc)]
    return perm


def parse_map_file(text: str) -> EmbeddedSubgraph:
    """Parse the .map format into a host map with marked subgraph.

    Grammar (one key per line, '#' starts a comment, whitespace-insensitive):

        sigma: (1 3 2 4)
        alpha: (1 2)(3 4)
        isolated: 0
        graph_vertices: *   | space-separated vertex ids
        graph_edges: *      | space-separated edge ids

    Dart ids must be exactly 1..2m.  ``graph_vertices`` cannot address
    isolated vertices; those are always part of the marked graph.
    """
    fields: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise MapFormatError(f"expected 'key: value', got {line!r}")
        key, value = line.split(":", 1)
        key = key.strip().lower()
        if key in fields:
            raise MapFormatError(f"duplicate key {key!r}")
        fields[key] = value.strip()
    for required in ("sigma", "alpha"):
        if required not in fields:
            raise MapFormatError(f"missing {required!r} line")
    unknown = set(fields) - {"sigma", "alpha", "isolated", "graph_vertices", "graph_edges"}
    if unknown:
        raise MapFormatError(f"unknown keys: {sorted(unknown)}")

    sigma_cycles = _parse_perm_text(fields["sigma"], "sigma")
    alpha_cycles = _parse_perm_text(fields["alpha"], "alpha")
    sigma = _perm_from_cycles(sigma_cycles, "sigma")
    for cyc in alpha_cycles:
        if len(cyc) != 2:
            raise AlphaNotInvolution(
                f"alpha must be a product of 2-cycles, got cycle {tuple(cyc)}"
            )
    alpha = _perm_from_cycles(alpha_cycles, "alpha")
    if set(sigma) != set(alpha):
        raise DanglingDart("sigma and alpha mention different dart sets")
    darts = sorted(sigma)
    if darts != list(range(1, len(darts) + 1)):
        raise MapFormatError("dart ids must be exactly 1..2m with no gaps")
    try:
        isolated = int(fields.get("isolated", "0"))
    except ValueError as exc:
        raise MapFormatError("isolated: expects an integer") from exc
    host = CombinatorialMap(sigma, alpha, isolated)

    def id_list(key: str, universe: tuple[int, ...], what: str) -> frozenset[int]:
        value = fields.get(key, "*")
        if value == "*":
            return frozenset(universe)
        try:
            ids = frozenset(int(tok) for tok in value.split())
        except ValueError as exc:
            raise MapFormatError(f"{key}: expects '*' or integer ids") from exc
        if not ids <= set(universe):
            raise MapFormatError(f"{key}: unknown {what} ids {sorted(ids - set(universe))}")
        return ids

    g_vertices = id_list("graph_vertices", host.vertex_ids, "vertex")
    g_edges = id_list("graph_edges", host.edge_ids, "edge")
    return EmbeddedSubgraph(host, g_vertices, g_edges)


def parse_map(text: str) -> CombinatorialMap:
    """Parse a .map file and return just the host map."""
    return parse_map_file(text).host


def _cycles_to_text(cycles: Iterable[tuple[int, ...]]) -> str:
    parts = ["(" + " ".join(map(str, cyc)) + ")" for cyc in cycles]
    return "".join(parts) if parts else "()"


def serialize_map(
    obj: CombinatorialMap | EmbeddedSubgraph,
    canonical: bool = False,
    comment: str | None = None,
) -> str:
    """Serialize to the .map format (deterministic; round-trips exactly on
    canonical forms)."""
    sub = EmbeddedSubgraph.full(obj) if isinstance(obj, CombinatorialMap) else obj
    if canonical:
        sub = sub.canonical_form()
    host = sub.host
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"sigma: {_cycles_to_text(host.vertex_cycles)}")
    lines.append(f"alpha: {_cycles_to_text(_cycles(host.alpha))}")
    lines.append(f"isolated: {host.isolated_vertices}")
    if set(sub.g_vertices) == set(host.vertex_ids):
        lines.append("graph_vertices: *")
    else:
        lines.append("graph_vertices: " + " ".join(map(str, sorted(sub.g_vertices))))
    if set(sub.g_edges) == set(host.edge_ids):
        lines.append("graph_edges: *")
    else:
        lines.append("graph_edges: " + " ".join(map(str, sorted(sub.g_edges))))
    return "\n".join(lines) + "\n"


# -- random maps -----------------------------------------------------------

def standard_alpha(n_edges: int) -> Perm:
    """alpha = (1 2)(3 4)...(2m-1 2m)."""
    alpha: Perm = {}
    for i in range(n_edges):
        a, b = 2 * i + 1, 2 * i + 2
        alpha[a] = b
        alpha[b] = a
    return alpha


def random_map(n_edges: int, rng: random.Random) -> CombinatorialMap:
    """Uniform random rotation system on 2*n_edges darts with the standard
    alpha; every such pair is a cellulation of some oriented surface."""
    darts = list(range(1, 2 * n_edges + 1))
    images = darts[:]
    rng.shuffle(images)
    sigma = dict(zip(darts, images))
    return CombinatorialMap(sigma, standard_alpha(n_edges))
