"""Deterministic corpora of maps and alternating diagrams for verification."""

from __future__ import annotations

import random
from itertools import permutations

from .links import LinkDiagram, medial_diagram
from .maps import CombinatorialMap, EmbeddedSubgraph, random_map, standard_alpha


def all_maps(max_edges: int) -> list[CombinatorialMap]:
    """Every map with at most ``max_edges`` edges (and no isolated
    vertices), one representative per isomorphism class, plus the empty map.

    Enumerates all rotation systems over the standard pairing and dedupes by
    canonical code.
    """
    out: list[CombinatorialMap] = [CombinatorialMap({}, {})]
    for m in range(1, max_edges + 1):
        darts = list(range(1, 2 * m + 1))
        alpha = standard_alpha(m)
        seen: set[bytes] = set()
        for images in permutations(darts):
            sigma = dict(zip(darts, images))
            cm = CombinatorialMap(sigma, alpha)
            code = EmbeddedSubgraph.full(cm).canonical_code()
            if code not in seen:
                seen.add(code)
                out.append(cm)
    return out


def random_maps(
    count: int, max_edges: int, seed: int, min_edges: int = 1
) -> list[CombinatorialMap]:
    """Seeded random maps with edge counts uniform in [min_edges, max_edges]."""
    rng = random.Random(seed)
    return [random_map(rng.randint(min_edges, max_edges), rng) for _ in range(count)]


def random_maps_of_genus(
    count: int,
    genus: int,
    max_edges: int,
    seed: int,
    min_edges: int = 1,
) -> list[CombinatorialMap]:
    """Seeded random maps of a prescribed total genus (rejection sampling)."""
    rng = random.Random(seed)
    out: list[CombinatorialMap] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100000 * count:
            raise RuntimeError(f"cannot sample genus {genus} with <= {max_edges} edges")
        m = random_map(rng.randint(max(min_edges, 2 * genus), max_edges), rng)
        if m.total_genus == genus:
            out.append(m)
    return out


def alternating_diagrams(
    count: int, genus: int, max_crossings: int, seed: int, min_crossings: int = 2
) -> list[LinkDiagram]:
    """Alternating diagrams on a genus-``genus`` surface, generated as the
    medial diagrams of random maps of that genus (so every diagram comes
    with a known Tait graph)."""
    maps = random_maps_of_genus(
        count, genus, max_crossings, seed, min_edges=min_crossings
    )
    return [medial_diagram(m) for m in maps]
