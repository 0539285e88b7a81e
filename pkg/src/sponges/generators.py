"""Builders for the example sponges and generated families.

Contents:

* the local model of each dimension (subsets of [n] of size at most n-2,
  flagged non-compact since its faces are cones),
* skeleta of simplices as simplicial complexes,
* skeleta of simple polytopes as sponges (signs from the solver, with the
  b = #facets - 1 sanity check),
* the builtin corpus (octahedron-with-equatorial-squares, the complete
  bipartite graph K_{3,3}, the quaternionic-plane f-vector, the cube
  skeleton, and small local models),
* connected cubic graphs by orderly generation: graphs are built edge by
  edge in a fixed code order and only canonically-labelled (maximal-code)
  graphs are extended, so each isomorphism class appears exactly once and
  reruns are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .enumerative import ExtendedFVector
from .poset import GradedPoset, SimplicialComplex
from .sponge import NotDiamond, SpongeComplex, check_acyclic, ensure_valid, sign_solver


class BadParameter(ValueError):
    """Generator parameters out of range."""


class UnknownBuiltin(KeyError):
    """No builtin object with that name."""


class NotSimple(ValueError):
    """A rank-2 interval of the polytope lattice is not a diamond."""


# ---------------------------------------------------------------------------
# local models


def _subset_id(subset: Sequence[int]) -> str:
    return "-".join(str(x) for x in sorted(subset)) if subset else "o"


def gen_model_sponge(n: int) -> SpongeComplex:
    """The local model: subsets I of [n] with |I| <= n-2, dim I = |I|.

    The origin (empty set) is the unique vertex; incidence numbers follow
    the simplicial sign convention.  Faces are cones, so the result carries
    the non_compact flag and skips the enumerative machinery.
    """
    if n < 3:
        raise BadParameter("model sponges need n >= 3")
    elements: list[tuple[str, int]] = [("o", 0)]
    covers: list[tuple[str, str]] = []
    incidence: dict[tuple[str, str], int] = {}
    for size in range(1, n - 1):
        for subset in combinations(range(1, n + 1), size):
            ident = _subset_id(subset)
            elements.append((ident, size))
            if size == 1:
                covers.append((ident, "o"))
                incidence[(ident, "o")] = 1
            else:
                for k, x in enumerate(subset):
                    below = _subset_id([y for y in subset if y != x])
                    covers.append((ident, below))
                    incidence[(ident, below)] = (-1) ** k
    z = SpongeComplex(
        n=n,
        faces=GradedPoset(elements, covers),
        incidence=incidence,
        non_compact=True,
        name=f"model-n{n}",
    )
    ensure_valid(z)
    return z


def gen_simplex_skeleton(m: int, k: int) -> SimplicialComplex:
    """The k-skeleton of an m-simplex (m+1 vertices)."""
    if not 0 <= k <= m:
        raise BadParameter(f"need 0 <= k <= m, got k={k}, m={m}")
    verts = list(range(m + 1))
    return SimplicialComplex(verts, combinations(verts, k + 1))


# ---------------------------------------------------------------------------
# polytope lattices and their skeleta


@dataclass(frozen=True)
class PolytopeFaceLattice:
    """Face lattice of a polytope: faces of dims 0..n, the top face included."""

    dimension: int
    faces: tuple[tuple[str, int], ...]
    covers: tuple[tuple[str, str], ...]

    def __post_init__(self):
        tops = [f for f, d in self.faces if d == self.dimension]
        if len(tops) != 1:
            raise ValueError("lattice must have exactly one top face")
        if any(d < 0 or d > self.dimension for _, d in self.faces):
            raise ValueError("face dimensions out of range")

    def poset(self) -> GradedPoset:
        return GradedPoset(self.faces, self.covers)

    def face_count(self, dim: int) -> int:
        return sum(1 for _, d in self.faces if d == dim)


def hypercube_lattice(d: int) -> PolytopeFaceLattice:
    """Faces of the d-cube as sign vectors over {0, 1, *}."""
    if d < 1:
        raise BadParameter("cube dimension must be positive")
    faces = []
    covers = []
    for word in _words("01*", d):
        faces.append((word, word.count("*")))
        for pos, ch in enumerate(word):
            if ch == "*":
                for fixed in "01":
                    covers.append((word, word[:pos] + fixed + word[pos + 1:]))
    return PolytopeFaceLattice(dimension=d, faces=tuple(faces), covers=tuple(covers))


def _words(alphabet: str, length: int) -> list[str]:
    words = [""]
    for _ in range(length):
        words = [w + ch for w in words for ch in alphabet]
    return words


def simplex_lattice(d: int) -> PolytopeFaceLattice:
    """Faces of the d-simplex: nonempty subsets of its d+1 vertices."""
    if d < 1:
        raise BadParameter("simplex dimension must be positive")
    faces = []
    covers = []
    for size in range(1, d + 2):
        for subset in combinations(range(d + 1), size):
            ident = _subset_id(subset)
            faces.append((ident, size - 1))
            if size > 1:
                for x in subset:
                    covers.append((ident, _subset_id([y for y in subset if y != x])))
    return PolytopeFaceLattice(dimension=d, faces=tuple(faces), covers=tuple(covers))


def gen_polytope_skeleton(p: PolytopeFaceLattice) -> SpongeComplex:
    """The (n-2)-skeleton of a simple n-polytope, with solver signs.

    Checks the b-number of the result against #facets - 1.
    """
    n = p.dimension
    keep = [(f, d) for f, d in p.faces if d <= n - 2]
    keep_ids = {f for f, _ in keep}
    covers = [(u, l) for u, l in p.covers if u in keep_ids and l in keep_ids]
    poset = GradedPoset(keep, covers)
    try:
        signs = sign_solver(poset)
    except NotDiamond as err:
        raise NotSimple(str(err)) from err
    z = SpongeComplex(n=n, faces=poset, incidence=signs, name=f"polytope-skeleton-{n}d")
    ensure_valid(z)
    expected_b = p.face_count(n - 1) - 1
    report = check_acyclic(z)
    if report.b_number != expected_b:
        raise ValueError(
            f"skeleton b-number {report.b_number} != facets-1 = {expected_b}; "
            "input lattice is not a valid simple polytope"
        )
    return z


# ---------------------------------------------------------------------------
# builtin corpus


def k33_sponge() -> SpongeComplex:
    """K_{3,3} with alternating edge signs (-1 left endpoint, +1 right)."""
    lefts = ["l1", "l2", "l3"]
    rights = ["r1", "r2", "r3"]
    elements = [(v, 0) for v in lefts + rights]
    covers = []
    incidence = {}
    for a in lefts:
        for b in rights:
            e = f"{a}:{b}"
            elements.append((e, 1))
            covers.append((e, a))
            covers.append((e, b))
            incidence[(e, a)] = -1
            incidence[(e, b)] = 1
    z = SpongeComplex(
        n=3,
        faces=GradedPoset(elements, covers),
        incidence=incidence,
        name="f3-k33",
    )
    ensure_valid(z)
    return z


def octahedron_sponge() -> SpongeComplex:
    """Octahedron vertices/edges/triangles plus the 3 equatorial squares."""
    axes = "xyz"
    verts = [a + s for a in axes for s in "+-"]
    antipodal = {frozenset({a + "+", a + "-"}) for a in axes}

    def edge_id(u, v):
        return ":".join(sorted([u, v]))

    elements = [(v, 0) for v in verts]
    covers = []
    edges = []
    for u, v in combinations(verts, 2):
        if frozenset({u, v}) in antipodal:
            continue
        e = edge_id(u, v)
        edges.append((e, u, v))
        elements.append((e, 1))
        covers.append((e, u))
        covers.append((e, v))
    for sx in "+-":
        for sy in "+-":
            for sz in "+-":
                tri = ["x" + sx, "y" + sy, "z" + sz]
                t = "tri:" + ":".join(sorted(tri))
                elements.append((t, 2))
                for u, v in combinations(tri, 2):
                    covers.append((t, edge_id(u, v)))
    for a, b in combinations(axes, 2):
        sq = f"sq:{a}{b}"
        elements.append((sq, 2))
        for sa in "+-":
            for sb in "+-":
                covers.append((sq, edge_id(a + sa, b + sb)))
    poset = GradedPoset(elements, covers)
    signs = sign_solver(poset)
    z = SpongeComplex(n=4, faces=poset, incidence=signs, name="g42-octahedron")
    ensure_valid(z)
    return z


def graph_sponge(
    n_vertices: int, edges: Sequence[tuple[int, int]], name: str = ""
) -> SpongeComplex:
    """Wrap a (multi)graph as an n=3 sponge with alternating edge signs."""
    elements = [(f"v{i}", 0) for i in range(n_vertices)]
    covers = []
    incidence = {}
    seen: dict[tuple[int, int], int] = {}
    for a, b in edges:
        a, b = (a, b) if a < b else (b, a)
        copy = seen.get((a, b), 0)
        seen[(a, b)] = copy + 1
        e = f"e{a}-{b}" + (f".{copy}" if copy else "")
        elements.append((e, 1))
        covers.append((e, f"v{a}"))
        covers.append((e, f"v{b}"))
        incidence[(e, f"v{a}")] = -1
        incidence[(e, f"v{b}")] = 1
    z = SpongeComplex(
        n=3,
        faces=GradedPoset(elements, covers),
        incidence=incidence,
        name=name or f"graph-{n_vertices}v",
    )
    ensure_valid(z)
    return z


BUILTIN_NAMES = (
    "g42_octahedron",
    "f3_k33",
    "hp2_fvector",
    "cube_skeleton",
    "model_n3",
    "model_n4",
)


def builtin(name: str) -> SpongeComplex | ExtendedFVector:
    """The builtin corpus.  hp2_fvector is f-vector data only: the full
    incidence structure of that sponge is not shipped, and the Hilbert and
    Betti checks need only the extended f-vector."""
    if name == "g42_octahedron":
        return octahedron_sponge()
    if name == "f3_k33":
        return k33_sponge()
    if name == "hp2_fvector":
        return ExtendedFVector(n=4, f=(3, 6, 7), b=3)
    if name == "cube_skeleton":
        return gen_polytope_skeleton(hypercube_lattice(3))
    if name == "model_n3":
        return gen_model_sponge(3)
    if name == "model_n4":
        return gen_model_sponge(4)
    raise UnknownBuiltin(name)


# ---------------------------------------------------------------------------
# connected cubic graphs by orderly generation
#
# Vertices are 0..n-1.  Edge positions (i, j), i < j, are read in the order
# (j, i) ascending -- all back-edges of vertex 1, then of vertex 2, and so
# on -- and a labelled graph's code is the corresponding bit string, most
# significant bit first.  A graph is canonical when no relabelling yields a
# lexicographically larger code.  Removing the last edge (in reading order)
# of a canonical graph leaves a canonical graph, so growing canonical graphs
# by appending edges past the current last position enumerates every
# isomorphism class exactly once.


def _position(i: int, j: int) -> int:
    return j * (j - 1) // 2 + i


def _position_pair(p: int) -> tuple[int, int]:
    j = 1
    while _position(0, j + 1) <= p:
        j += 1
    return p - _position(0, j), j


class _CubicSearch:
    def __init__(self, n: int):
        self.n = n
        self.target_edges = 3 * n // 2
        self.adj = [0] * n
        self.deg = [0] * n
        self.edges: list[tuple[int, int]] = []
        self.found: list[tuple[int, list[tuple[int, int]]]] = []

    # -- canonicity -------------------------------------------------------

    def _group_patterns(self) -> list[int]:
        """Pattern of back-edge bits per vertex slot, packed msb-first."""
        pats = [0] * self.n
        for j in range(1, self.n):
            pat = 0
            for i in range(j):
                if (self.adj[j] >> i) & 1:
                    pat |= 1 << (j - 1 - i)
            pats[j] = pat
        return pats

    def _is_canonical(self) -> bool:
        pats = self._group_patterns()
        adj = self.adj
        n = self.n

        def larger_exists(used: list[int], used_mask: int) -> bool:
            j = len(used)
            if j == n:
                return False
            target = pats[j]
            ties = []
            seen_rows = set()
            for v in range(n):
                if (used_mask >> v) & 1:
                    continue
                pat = 0
                av = adj[v]
                for idx, u in enumerate(used):
                    if (av >> u) & 1:
                        pat |= 1 << (j - 1 - idx)
                if pat > target:
                    return True
                if pat == target:
                    row = av & ~used_mask & ~(1 << v)
                    if row not in seen_rows:  # unused twins are interchangeable
                        seen_rows.add(row)
                        ties.append(v)
            for v in ties:
                used.append(v)
                if larger_exists(used, used_mask | (1 << v)):
                    used.pop()
                    return True
                used.pop()
            return False

        return not larger_exists([], 0)

    # -- feasibility ------------------------------------------------------

    def _available(self, v: int, last: int) -> int:
        """Future positions past ``last`` that touch vertex v."""
        i0, j0 = _position_pair(last)
        count = 0
        if v == j0:
            count += j0 - 1 - i0
        elif i0 < v < j0:
            count += 1
        count += self.n - 1 - max(v, j0)
        if v > j0:
            count += v
        return count

    def _feasible(self, last: int) -> bool:
        remaining = self.target_edges - len(self.edges)
        total_positions = self.n * (self.n - 1) // 2 - 1 - last
        if total_positions < remaining:
            return False
        for v in range(self.n):
            need = 3 - self.deg[v]
            if need and self._available(v, last) < need:
                return False
        return True

    # -- search -----------------------------------------------------------

    def run(self) -> None:
        self._extend(-1)

    def _extend(self, last: int) -> None:
        if len(self.edges) == self.target_edges:
            if all(d == 3 for d in self.deg) and self._connected():
                code = 0
                top = self.n * (self.n - 1) // 2
                for a, b in self.edges:
                    code |= 1 << (top - 1 - _position(a, b))
                self.found.append((code, list(self.edges)))
            return
        for p in range(last + 1, self.n * (self.n - 1) // 2):
            i, j = _position_pair(p)
            if self.deg[i] >= 3 or self.deg[j] >= 3:
                continue
            self.adj[i] |= 1 << j
            self.adj[j] |= 1 << i
            self.deg[i] += 1
            self.deg[j] += 1
            self.edges.append((i, j))
            if self._feasible(p) and self._is_canonical():
                self._extend(p)
            self.edges.pop()
            self.adj[i] &= ~(1 << j)
            self.adj[j] &= ~(1 << i)
            self.deg[i] -= 1
            self.deg[j] -= 1

    def _connected(self) -> bool:
        seen = 1
        stack = [0]
        while stack:
            v = stack.pop()
            rest = self.adj[v] & ~seen
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                seen |= low
                stack.append(u)
                rest &= ~low
        return seen == (1 << self.n) - 1


def enumerate_connected_cubic(n_vertices: int) -> list[tuple[int, list[tuple[int, int]]]]:
    """All connected 3-regular graphs on exactly n_vertices, one per class.

    Returns (code, edge list) pairs sorted by code; the labelling of each
    graph is its canonical (maximal-code) one.
    """
    if n_vertices < 4 or n_vertices % 2:
        raise BadParameter("cubic graphs need an even vertex count >= 4")
    search = _CubicSearch(n_vertices)
    search.run()
    return sorted(search.found)


def gen_trivalent_sponges(max_vertices: int) -> Iterator[SpongeComplex]:
    """All connected cubic sponges on 4..max_vertices vertices (n = 3).

    Simple graphs only; multigraph sponges are accepted from file input but
    not enumerated here.
    """
    if max_vertices < 4 or max_vertices % 2:
        raise BadParameter("max_vertices must be even and >= 4")
    for nv in range(4, max_vertices + 1, 2):
        for code, edges in enumerate_connected_cubic(nv):
            name = f"cubic-{nv}v-{code:0{(nv * (nv - 1) // 2 + 3) // 4}x}"
            yield graph_sponge(nv, edges, name=name)
