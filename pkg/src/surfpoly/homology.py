"""Exact first homology of surface cellulations and its symplectic structure.

This is the linear-algebra oracle for the combinatorial invariants: it
computes H1 of the host surface from the chain complex of the map, the image
V(H) of a subgraph's cycle space, the intersection form via chord-diagram
interleaving on a one-vertex reduction, symplectic orthogonal complements,
the subgroup-coefficient polynomial, and the subgroup-level duality check
through the radial map.

All arithmetic is exact over `fractions.Fraction`.

Coordinates: a spanning forest of the host is contracted, leaving one vertex
per component so that every 1-chain is a cycle; H1 coordinates are the free
columns of the reduced face-boundary space in row echelon form.  Chains over
host edges map into these coordinates by dropping the forest coordinates
(the contraction chain map) and reducing modulo face boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    InternalInvariantError,
    RadicalNotBoundaries,
    TooManyEdges,
)
from .invariants import invariants, dual_subgraph, scanner_for
from .laurent import LaurentPolynomial
from .maps import CombinatorialMap, EmbeddedSubgraph, UnionFind
from .report import PolynomialReport, Verdict

Vector = tuple[Fraction, ...]
Chain = dict[int, Fraction]  # edge id -> coefficient


# -- exact linear algebra ----------------------------------------------------

def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][col]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel {x : M x = 0}."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            vec[pc] = -row[fc]
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class Subspace:
    """A subspace of H1 in canonical reduced-row-echelon form; equality of
    subspaces is equality of the frozen basis matrices."""

    ambient: int
    basis: tuple[Vector, ...]

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[Fraction]], ambient: int) -> "Subspace":
        rows = [list(v) for v in vectors]
        for v in rows:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector length {len(v)} != ambient {ambient}")
        red, _ = rref(rows)
        return cls(ambient, tuple(tuple(r) for r in red))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")
        k, m = self.dim, other.dim
        if k == 0 or m == 0:
            return Subspace.from_vectors([], self.ambient)
        # lambda*A = mu*B  <=>  (lambda, mu) in ker [A^T | -B^T]
        rows = []
        for i in range(self.ambient):
            rows.append(
                [self.basis[j][i] for j in range(k)]
                + [-other.basis[j][i] for j in range(m)]
            )
        vectors = []
        for sol in nullspace(rows, k + m):
            vec = [Fraction(0)] * self.ambient
            for j in range(k):
                if sol[j]:
                    vec = [a + sol[j] * b for a, b in zip(vec, self.basis[j])]
            vectors.append(vec)
        return Subspace.from_vectors(vectors, self.ambient)

    def __str__(self) -> str:
        rows = ["[" + " ".join(str(x) for x in row) + "]" for row in self.basis]
        return f"dim={self.dim} basis=[{', '.join(rows)}]"


@dataclass(frozen=True)
class SymplecticSpace:
    """H1 of the surface with the Gram matrix of the intersection form."""

    dimension: int
    gram: tuple[tuple[int, ...], ...]

    def pair(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.gram[i]
            for j, vj in enumerate(v):
                if vj and row[j]:
                    total += ui * vj * row[j]
        return total


def orthogonal_complement(v: Subspace, sp: SymplecticSpace) -> Subspace:
    """Symplectic orthogonal complement within H1."""
    if v.ambient != sp.dimension:
        raise DimensionMismatch(
            f"subspace ambient {v.ambient} != symplectic dimension {sp.dimension}"
        )
    rows = []
    for b in v.basis:
        rows.append(
            [sum(b[i] * sp.gram[i][j] for i in range(sp.dimension)) for j in range(sp.dimension)]
        )
    return Subspace.from_vectors(nullspace(rows, sp.dimension), sp.dimension)


def symplectic_invariants(v: Subspace, sp: SymplecticSpace) -> tuple[int, int, int]:
    """(s, s_perp, l) of a subgroup V: dimensions of V/(V∩V⊥), V⊥/(V∩V⊥),
    and V∩V⊥."""
    perp = orthogonal_complement(v, sp)
    l = v.intersection(perp).dim
    return v.dim - l, perp.dim - l, l


# -- homology of a map ---------------------------------------------------------

class SurfaceHomology:
    """H1 coordinates, projection of cycles, and the intersection form for
    one host map."""

    def __init__(self, m: CombinatorialMap):
        self.map = m
        self.dim = 2 * m.total_genus
        self._build()

    def _build(self) -> None:
        m = self.map
        # spanning forest over the map's vertices
        uf = UnionFind(m.vertex_ids)
        forest: list[int] = []
        for e in m.edge_ids:
            u, w = m.edge_endpoints(e)
            if uf.find(u) != uf.find(w):
                uf.union(u, w)
                forest.append(e)
        self.forest = frozenset(forest)
        reduced = m
        for e in forest:
            reduced = reduced.contract_edge(e)
        self.reduced = reduced
        if reduced.vertex_cycles and any(
            len({reduced.vertex_of[d] for d in comp}) != 1
            for comp in reduced.dart_components
        ):
            raise InternalInvariantError("forest contraction left several vertices")
        self.loops = tuple(reduced.edge_ids)  # edge ids survive contraction
        self.loop_index = {e: i for i, e in enumerate(self.loops)}

        boundary_rows = [self._face_boundary(cyc) for cyc in reduced.face_cycles]
        self.boundary_rref, self.boundary_pivots = rref(boundary_rows)
        free = [c for c in range(len(self.loops)) if c not in self.boundary_pivots]
        self.free_cols = free
        if len(free) != self.dim:
            raise InternalInvariantError(
                f"H1 dimension {len(free)} does not match 2*genus {self.dim}"
            )

        omega = self._chord_pairing()
        self._omega_loops = omega
        for row in self.boundary_rref:
            for j in range(len(self.loops)):
                val = sum(row[i] * omega[i][j] for i in range(len(self.loops)) if row[i])
                if val != 0:
                    raise RadicalNotBoundaries(
                        "face boundary pairs nonzero with a cycle"
                    )
        gram = tuple(
            tuple(omega[i][j] for j in free) for i in free
        )
        self.form = SymplecticSpace(self.dim, gram)
        rank = len(rref([[Fraction(x) for x in row] for row in gram])[0])
        if rank != self.dim:
            raise InternalInvariantError("intersection form is degenerate")

    def _face_boundary(self, face_cycle: tuple[int, ...]) -> list[Fraction]:
        """Boundary of a reduced-map face as a vector over loop edges; a face
        walk traverses dart d away from its vertex, so d contributes +e when
        it is the edge's orientation dart (the smaller one)."""
        red = self.reduced
        vec = [Fraction(0)] * len(self.loops)
        for d in face_cycle:
            e = red.edge_of(d)
            vec[self.loop_index[e]] += 1 if d == e else -1
        return vec

    def _chord_pairing(self) -> list[list[int]]:
        """Signed interleaving counts of loop dart pairs in the one-vertex
        rotations: cyclic pattern a b a b -> +1, a b' a b' -> -1."""
        red = self.reduced
        n = len(self.loops)
        omega = [[0] * n for _ in range(n)]
        for cyc in red.vertex_cycles:
            pos = {d: i for i, d in enumerate(cyc)}
            length = len(cyc)
            local = [e for e in self.loops if e in pos]
            for a in local:
                pa1, pa2 = pos[a], pos[red.alpha[a]]
                arc = (pa2 - pa1) % length
                for b in local:
                    if b <= a or b not in pos:
                        continue
                    b1_in = (pos[b] - pa1) % length < arc
                    b2_in = (pos[red.alpha[b]] - pa1) % length < arc
                    if b1_in == b2_in:
                        continue
                    sign = 1 if b1_in else -1
                    i, j = self.loop_index[a], self.loop_index[b]
                    omega[i][j] = sign
                    omega[j][i] = -sign
        return omega

    # -- projection to H1 coordinates ----------------------------------------

    def project_chain(self, chain: Mapping[int, Fraction | int]) -> Vector:
        """Class of a cycle given as a chain over host edges."""
        vec = [Fraction(0)] * len(self.loops)
        for e, coeff in chain.items():
            if e in self.loop_index:
                vec[self.loop_index[e]] += Fraction(coeff)
            elif e not in self.forest:
                raise InternalInvariantError(f"unknown edge {e} in chain")
        for row, pc in zip(self.boundary_rref, self.boundary_pivots):
            f = vec[pc]
            if f:
                for i in range(len(self.loops)):
                    if row[i]:
                        vec[i] -= f * row[i]
        return tuple(vec[c] for c in self.free_cols)

    def is_trivial(self, chain: Mapping[int, Fraction | int]) -> bool:
        return not any(self.project_chain(chain))

    def basis_cycles(self) -> list[Chain]:
        """Host-edge cycles representing the chosen H1 basis: the
        fundamental cycle (through the spanning forest) of each free loop
        edge, in coordinate order."""
        g = EmbeddedSubgraph.full(self.map)
        cycles = fundamental_cycles(g, self.map.edge_ids)
        rest = [e for e in self.map.edge_ids if e not in self.forest]
        by_edge = dict(zip(rest, cycles))
        return [by_edge[self.loops[c]] for c in self.free_cols]


def h1(m: CombinatorialMap) -> SurfaceHomology:
    """Homology data of the host surface; dim equals twice the total genus."""
    return SurfaceHomology(m)


def intersection_form(m: CombinatorialMap) -> SymplecticSpace:
    return SurfaceHomology(m).form


# -- subgraph cycle spaces ------------------------------------------------------

def fundamental_cycles(
    graph: EmbeddedSubgraph, h_edges: Iterable[int]
) -> list[Chain]:
    """One cycle per non-forest edge of the spanning subgraph H, as chains
    over host edges (edge oriented from the vertex of its smaller dart)."""
    host = graph.host
    h = sorted(set(h_edges))
    parent: dict[int, tuple[int, int, int] | None] = {v: None for v in graph.g_vertices}
    uf = UnionFind(graph.g_vertices)
    tree: list[int] = []
    rest: list[int] = []
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in graph.g_vertices}
    for e in h:
        u, w = host.edge_endpoints(e)
        if uf.find(u) != uf.find(w):
            uf.union(u, w)
            tree.append(e)
            adj[u].append((w, e))
            adj[w].append((u, e))
        else:
            rest.append(e)
    # root the forest
    depth: dict[int, int] = {}
    for root in sorted(graph.g_vertices):
        if root in depth:
            continue
        depth[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w, e in adj[v]:
                if w not in depth:
                    depth[w] = depth[v] + 1
                    parent[w] = (v, e, +1 if host.edge_endpoints(e)[0] == v else -1)
                    stack.append(w)

    def path_to_root(v: int) -> Chain:
        chain: Chain = {}
        while parent[v] is not None:
            up, e, sign_down = parent[v]
            # edge oriented tail->head; walking v -> up is against sign_down
            chain[e] = chain.get(e, Fraction(0)) - sign_down
            v = up
        return chain

    cycles = []
    for e in rest:
        u, w = host.edge_endpoints(e)
        chain: Chain = {e: Fraction(1)}
        for ee, c in path_to_root(w).items():
            chain[ee] = chain.get(ee, Fraction(0)) + c
        for ee, c in path_to_root(u).items():
            chain[ee] = chain.get(ee, Fraction(0)) - c
        cycles.append({ee: c for ee, c in chain.items() if c})
    return cycles


def image_subspace(
    graph: EmbeddedSubgraph,
    h_edges: Iterable[int],
    hom: SurfaceHomology | None = None,
) -> tuple[Subspace, int]:
    """V(H) = image of H's cycle space in H1(Σ), and k(H) = n(H) - dim V."""
    hom = hom or SurfaceHomology(graph.host)
    h = list(h_edges)
    cycles = fundamental_cycles(graph, h)
    v = Subspace.from_vectors([hom.project_chain(c) for c in cycles], hom.dim)
    return v, len(cycles) - v.dim


# -- subgroup-coefficient polynomial ---------------------------------------------

def tilde_p(
    graph: EmbeddedSubgraph, cap: int = 20
) -> list[tuple[Subspace, LaurentPolynomial]]:
    """The subgroup-coefficient refinement: sum over spanning H of
    [V(H)] * X^{c(H)-c(G)} * Y^{k(H)}, merged by equal subspace.

    Specializing each [V] to A^{s/2} B^{s_perp/2} recovers the four-variable
    surface polynomial.
    """
    edges = graph.sorted_edges
    if len(edges) > cap:
        raise TooManyEdges(f"{len(edges)} edges exceeds cap {cap}")
    hom = SurfaceHomology(graph.host)
    sc = scanner_for(graph)
    c_g = graph.components_count()
    grouped: dict[Subspace, dict[tuple[int, ...], int]] = {}
    for mask in range(1 << len(edges)):
        h = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        inv = sc.invariants_of_mask(mask)
        v, k = image_subspace(graph, h, hom)
        if k != inv.k:
            raise InternalInvariantError(
                f"kernel mismatch: algebra {k} vs combinatorial {inv.k}"
            )
        exps = (inv.c - c_g, k)
        bucket = grouped.setdefault(v, {})
        bucket[exps] = bucket.get(exps, 0) + 1
    out = []
    for v in sorted(grouped, key=lambda s: (s.dim, s.basis)):
        out.append((v, LaurentPolynomial(("X", "Y"), grouped[v])))
    return out


def tilde_p_specialized(parts: list[tuple[Subspace, LaurentPolynomial]], sp: SymplecticSpace) -> LaurentPolynomial:
    """Collapse subgroup coefficients to A^{s/2} B^{s_perp/2}."""
    total = LaurentPolynomial.zero()
    for v, poly in parts:
        s, s_perp, _ = symplectic_invariants(v, sp)
        total = total + poly * LaurentPolynomial.monomial(
            1, {"A": s // 2, "B": s_perp // 2}
        )
    return total


# -- radial map and the subgroup duality check -----------------------------------

def radial_map(
    m: CombinatorialMap,
) -> tuple[CombinatorialMap, dict[int, Chain], dict[int, Chain]]:
    """The radial map R(m) (one vertex per vertex-or-face of m, one
    quadrilateral face per edge) together with the chain maps taking primal
    and dual edges to 2-paths across their quadrilateral.

    Primal edge e runs tail -> left face -> head; dual edge e* runs across
    the head-side corner of the same quadrilateral.  The alternative corner
    choices differ by quadrilateral boundaries, so the induced maps on H1
    are independent of them.
    """
    darts = m.darts
    idx = {d: i for i, d in enumerate(darts)}
    rv = {d: 2 * idx[d] + 1 for d in darts}
    rf = {d: 2 * idx[d] + 2 for d in darts}
    # the radial edge r_d is the corner between d and sigma(d): it joins the
    # vertex of d to the center of the face whose phi-orbit contains d; the
    # face-side rotation must follow phi^-1 so that sigma_R∘alpha_R squares
    # to the identity on quadrilaterals ((sigma alpha sigma^-1)^2 = id)
    sig_inv = m.sigma_inv
    sigma: dict[int, int] = {}
    alpha: dict[int, int] = {}
    for d in darts:
        sigma[rv[d]] = rv[m.sigma[d]]
        sigma[rf[d]] = rf[m.alpha[sig_inv[d]]]
        alpha[rv[d]] = rf[d]
        alpha[rf[d]] = rv[d]
    radial = CombinatorialMap(sigma, alpha, m.isolated_vertices)
    if radial.n_faces - radial.isolated_vertices != m.n_edges:
        raise InternalInvariantError("radial map faces do not match edges")
    if radial.total_genus != m.total_genus:
        raise InternalInvariantError("radial map genus mismatch")

    def redge(d: int) -> int:
        return rv[d]  # rv < rf, so rv(d) is the radial edge id

    primal: dict[int, Chain] = {}
    dualc: dict[int, Chain] = {}
    one = Fraction(1)
    for e in m.edge_ids:
        d = e
        turn = m.sigma[m.alpha[d]]  # phi(d): corner dart at the head, same face
        chain: Chain = {redge(d): one}
        chain[redge(turn)] = chain.get(redge(turn), 0) - one
        primal[e] = {k: v for k, v in chain.items() if v}
        chain = {redge(m.alpha[d]): one}
        chain[redge(turn)] = chain.get(redge(turn), 0) - one
        dualc[e] = {k: v for k, v in chain.items() if v}
    return radial, primal, dualc


def push_chain(chain: Chain, edge_map: dict[int, Chain]) -> Chain:
    out: Chain = {}
    for e, coeff in chain.items():
        for re_, c in edge_map[e].items():
            out[re_] = out.get(re_, Fraction(0)) + coeff * c
    return {e: c for e, c in out.items() if c}


def verify_subgroup_duality(m: CombinatorialMap, cap: int = 20) -> PolynomialReport:
    """Check V(H*) = V(H)^perp (as canonical RREF matrices in the radial
    map's H1 coordinates) and the component/kernel exponent swaps, for every
    spanning subgraph of the cellulation m."""
    edges = tuple(m.edge_ids)
    if len(edges) > cap:
        raise TooManyEdges(f"{len(edges)} edges exceeds cap {cap}")
    dual_m = m.dual()
    radial, primal_chain, dual_chain = radial_map(m)
    hom = SurfaceHomology(radial)
    g_full = EmbeddedSubgraph.full(m)
    g_dual = EmbeddedSubgraph.full(dual_m)
    c_g = g_full.components_count()
    c_gs = g_dual.components_count()
    verdicts = []
    ok = True
    witness = None
    for mask in range(1 << len(edges)):
        h = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        hs = sorted(dual_subgraph(m, h))
        v_h = Subspace.from_vectors(
            [hom.project_chain(push_chain(c, primal_chain)) for c in fundamental_cycles(g_full, h)],
            hom.dim,
        )
        v_hs = Subspace.from_vectors(
            [hom.project_chain(push_chain(c, dual_chain)) for c in fundamental_cycles(g_dual, hs)],
            hom.dim,
        )
        inv_h = invariants(g_full, h)
        inv_hs = invariants(g_dual, hs)
        if (
            v_hs != orthogonal_complement(v_h, hom.form)
            or v_h.dim + v_hs.dim != hom.dim
            or inv_hs.c - c_gs != inv_h.k
            or inv_h.c - c_g != inv_hs.k
        ):
            ok = False
            witness = f"map={m!r} mask={mask}"
            break
    verdicts.append(Verdict("subgroup duality V(H*) = V(H)^perp", ok, witness))
    return PolynomialReport(
        description=f"subgroup duality on {m!r}", verdicts=tuple(verdicts)
    )
