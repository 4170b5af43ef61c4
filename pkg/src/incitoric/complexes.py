"""Simplicial complexes: pseudomanifold certificates, balanced colorings,
orientations, and the binomials they induce.

A complex is stored by its facets.  The verifier computes each predicate
independently: strong connectivity from the facet-ridge graph, normality
from link connectivity, balancedness by exact backtracking coloring of
the 1-skeleton, orientability from the integer kernel of the top boundary
map restricted to interior ridges, and bipartiteness of the facet-ridge
graph by 2-coloring.  For a balanced orientable normal pseudomanifold
without boundary the +-1 orientation turns the facet list into a
squarefree binomial of the matching incidence toric ideal; the octahedral
quartics arise this way from the facet-ridge bipartition of the
crosspolytope boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, Optional, Tuple

from . import exactmath
from .combinat import colex_rank
from .errors import BadParameters, NotBalanced, PreconditionFailed
from .exactmath import IntMatrix
from .incidence import build_matrix
from .toric import Binomial, is_primitive


@dataclass(frozen=True)
class SimplicialComplex:
    """Facet list over the vertex set [1..n]; no facet contains another."""

    n: int
    facets: tuple  # of frozensets

    def __post_init__(self):
        for f in self.facets:
            if not f or not all(1 <= v <= self.n for v in f):
                raise BadParameters("facet vertices must lie in [1..n]")
        for f in self.facets:
            for g in self.facets:
                if f != g and f <= g:
                    raise BadParameters("facet contained in another facet")
        if len(set(self.facets)) != len(self.facets):
            raise BadParameters("duplicate facet")

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        return cls(n, tuple(frozenset(f) for f in facets))

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def faces_of_dim(self, d: int) -> set:
        out = set()
        for f in self.facets:
            if len(f) >= d + 1:
                for c in combinations(sorted(f), d + 1):
                    out.add(frozenset(c))
        return out

    def all_faces(self) -> set:
        out = {frozenset()}
        for f in self.facets:
            for size in range(1, len(f) + 1):
                for c in combinations(sorted(f), size):
                    out.add(frozenset(c))
        return out

    def link(self, sigma: frozenset) -> tuple:
        """Facets of the link of sigma."""
        out = []
        for f in self.facets:
            if sigma <= f:
                out.append(f - sigma)
        return tuple(out)

    def vertices_used(self) -> set:
        out = set()
        for f in self.facets:
            out |= f
        return out


def facet_ridge_graph(delta: SimplicialComplex) -> Dict[int, set]:
    """Adjacency between facet indices sharing a ridge."""
    d = delta.dimension
    adj: Dict[int, set] = {i: set() for i in range(len(delta.facets))}
    ridge_map: Dict[frozenset, list] = {}
    for i, f in enumerate(delta.facets):
        for c in combinations(sorted(f), d):
            ridge_map.setdefault(frozenset(c), []).append(i)
    for members in ridge_map.values():
        for i in members:
            for j in members:
                if i != j:
                    adj[i].add(j)
    return adj


def _connected(adj: Dict, nodes: Iterable) -> bool:
    nodes = list(nodes)
    if not nodes:
        return True
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(nodes)


def _bipartition(adj: Dict) -> Optional[Dict]:
    color: Dict = {}
    for start in adj:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def _complex_connected(facets: Tuple[frozenset, ...]) -> bool:
    """1-skeleton connectivity of the complex spanned by ``facets``."""
    verts = set()
    for f in facets:
        verts |= f
    if not verts:
        return True
    adj: Dict[int, set] = {v: set() for v in verts}
    for f in facets:
        for a in f:
            for b in f:
                if a != b:
                    adj[a].add(b)
    return _connected(adj, verts)


@dataclass(frozen=True)
class Coloring:
    classes: tuple  # classes[v-1] = color of vertex v, colors in [1..d]

    def color(self, v: int) -> int:
        return self.classes[v - 1]


def balanced_coloring(delta: SimplicialComplex) -> Optional[Coloring]:
    """Proper (dim+1)-coloring of the 1-skeleton, or None.

    Exact backtracking, vertices in decreasing-degree order; facets are
    cliques of size dim+1, so any proper coloring makes them rainbow.
    """
    ncolors = delta.dimension + 1
    verts = sorted(delta.vertices_used())
    adj: Dict[int, set] = {v: set() for v in verts}
    for f in delta.facets:
        for a in f:
            for b in f:
                if a != b:
                    adj[a].add(b)
    order = sorted(verts, key=lambda v: (-len(adj[v]), v))
    assign: Dict[int, int] = {}

    def backtrack(idx: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        for c in range(1, ncolors + 1):
            if all(assign.get(w) != c for w in adj[v]):
                assign[v] = c
                if backtrack(idx + 1):
                    return True
                del assign[v]
        return False

    if not backtrack(0):
        return None
    classes = tuple(assign.get(v, 1) for v in range(1, delta.n + 1))
    return Coloring(classes)


def boundary_matrix(delta: SimplicialComplex, vertex_key=None) -> tuple:
    """Top signed boundary matrix with rows labeled by ridges.

    Facet columns follow the stored facet order; within a facet the
    vertices are sorted by ``vertex_key`` (default: numeric) and removing
    the j-th gives sign (-1)^j.  Ridge rows are sorted by colex rank.
    Returns (matrix, ridge_labels).
    """
    if not delta.is_pure():
        raise BadParameters("boundary matrix needs a pure complex")
    if vertex_key is None:
        vertex_key = lambda v: v
    d = delta.dimension
    ridges = sorted(delta.faces_of_dim(d - 1), key=lambda r: colex_rank(tuple(sorted(r))))
    row_of = {r: i for i, r in enumerate(ridges)}
    rows = [[0] * len(delta.facets) for _ in ridges]
    for col, f in enumerate(delta.facets):
        ordered = sorted(f, key=vertex_key)
        for j, v in enumerate(ordered):
            r = frozenset(ordered) - {v}
            rows[row_of[r]][col] = (-1) ** j
    return IntMatrix.from_rows(rows), tuple(tuple(sorted(r)) for r in ridges)


@dataclass(frozen=True)
class Orientation:
    epsilon: tuple  # +-1 per facet, in stored facet order


@dataclass(frozen=True)
class VerifyReport:
    pure: bool
    dimension: int
    strongly_connected: bool
    pseudomanifold: bool
    boundaryless: bool
    normal: Optional[bool]
    balanced: bool
    coloring: Optional[Coloring]
    orientable: Optional[bool]
    orientation: Optional[Orientation]
    facet_ridge_bipartite: bool

    def as_dict(self) -> dict:
        return {
            "pure": self.pure,
            "dimension": self.dimension,
            "strongly_connected": self.strongly_connected,
            "pseudomanifold": self.pseudomanifold,
            "boundaryless": self.boundaryless,
            "normal": self.normal,
            "balanced": self.balanced,
            "coloring": list(self.coloring.classes) if self.coloring else None,
            "orientable": self.orientable,
            "orientation": list(self.orientation.epsilon) if self.orientation else None,
            "facet_ridge_bipartite": self.facet_ridge_bipartite,
        }


def verify(delta: SimplicialComplex) -> VerifyReport:
    """Compute every predicate of the report independently."""
    pure = delta.is_pure()
    dim = delta.dimension
    adj = facet_ridge_graph(delta)
    strongly_connected = pure and _connected(adj, range(len(delta.facets)))

    ridge_count: Dict[frozenset, int] = {}
    if pure:
        for f in delta.facets:
            for c in combinations(sorted(f), dim):
                r = frozenset(c)
                ridge_count[r] = ridge_count.get(r, 0) + 1
    ridges_ok = pure and all(c <= 2 for c in ridge_count.values())
    pseudomanifold = pure and strongly_connected and ridges_ok
    boundaryless = pure and bool(ridge_count) and all(c == 2 for c in ridge_count.values())

    normal: Optional[bool] = None
    if pseudomanifold:
        normal = True
        for sigma in sorted(delta.all_faces(), key=lambda s: (len(s), tuple(sorted(s)))):
            if len(sigma) - 1 > dim - 2:
                continue
            if not _complex_connected(delta.link(sigma)):
                normal = False
                break

    coloring = balanced_coloring(delta) if pure else None
    balanced = coloring is not None

    orientable: Optional[bool] = None
    orientation: Optional[Orientation] = None
    if pseudomanifold:
        orientable, orientation = _orientation(delta, ridge_count, coloring)

    bipartite = _bipartition(adj) is not None
    return VerifyReport(
        pure,
        dim,
        strongly_connected,
        pseudomanifold,
        boundaryless,
        normal,
        balanced,
        coloring,
        orientable,
        orientation,
        bipartite,
    )


def _orientation(delta: SimplicialComplex, ridge_count: Dict, coloring: Optional[Coloring]) -> tuple:
    """Integer kernel of the boundary map restricted to interior ridges.

    Orientable iff that kernel has rank 1; the saturated generator then
    has all entries +-1 and is normalized to +1 on the first facet.  For
    balanced complexes the boundary map is taken in the color-sorted
    vertex order, so the returned signs are also the facet-ridge
    bipartition, which is what the orientation binomial needs.
    """
    key = None
    if coloring is not None:
        key = lambda v: (coloring.color(v), v)
    mat, ridge_labels = boundary_matrix(delta, vertex_key=key)
    interior = [
        i for i, r in enumerate(ridge_labels) if ridge_count[frozenset(r)] == 2
    ]
    rows = [mat.entries[i] for i in interior]
    if not rows:
        rows = [(0,) * len(delta.facets)]
    sub = IntMatrix.from_rows(rows)
    kernel = exactmath.kernel_basis(sub)
    if kernel.rank != 1:
        return False, None
    gen = kernel.vectors[0]
    if not all(abs(x) == 1 for x in gen):
        return False, None
    if gen[0] < 0:
        gen = tuple(-x for x in gen)
    return True, Orientation(gen)


def signed_boundary_matrix(delta: SimplicialComplex, coloring: Coloring) -> tuple:
    """Top boundary matrix under the color-sorted vertex order.

    With vertices ordered color class by color class every ridge row is
    sign-uniform, and flipping the negative rows leaves a 0/1 submatrix
    of the (n, k, k-1) incidence pattern.  Returns (matrix, ridge_labels).
    """
    if not delta.is_pure():
        raise NotBalanced("signed boundary matrix needs a pure complex")
    d = delta.dimension
    for f in delta.facets:
        colors = [coloring.color(v) for v in f]
        if len(set(colors)) != len(colors):
            raise NotBalanced(f"facet {tuple(sorted(f))} is not rainbow under the coloring")
    key = lambda v: (coloring.color(v), v)
    mat, ridge_labels = boundary_matrix(delta, vertex_key=key)
    for row, label in zip(mat.entries, ridge_labels):
        signs = {x for x in row if x}
        if len(signs) > 1:
            raise NotBalanced(f"ridge {label} row is not sign-uniform")
    return mat, ridge_labels


def orientation_binomial(delta: SimplicialComplex, orientation: Orientation) -> Binomial:
    """Binomial of the (n, k, k-1) lattice ideal induced by an orientation.

    Requires a balanced orientable normal pseudomanifold without boundary
    of dimension k-1 >= 2; kernel membership and primitivity are asserted
    on the result.
    """
    report = verify(delta)
    failures = []
    if not report.pseudomanifold:
        failures.append("pseudomanifold")
    if not report.boundaryless:
        failures.append("without boundary")
    if report.normal is not True:
        failures.append("normal")
    if not report.balanced:
        failures.append("balanced")
    if report.orientable is not True:
        failures.append("orientable")
    k = report.dimension + 1
    if k < 3:
        failures.append("dimension >= 2")
    if failures:
        raise PreconditionFailed("hypotheses not satisfied: " + ", ".join(failures))
    if len(orientation.epsilon) != len(delta.facets) or any(
        abs(e) != 1 for e in orientation.epsilon
    ):
        raise PreconditionFailed("orientation must assign +-1 to every facet")
    # cycle condition in the color-sorted convention: opposite signs across
    # every interior ridge
    d = report.dimension
    ridge_map: Dict[frozenset, list] = {}
    for i, f in enumerate(delta.facets):
        for c in combinations(sorted(f), d):
            ridge_map.setdefault(frozenset(c), []).append(i)
    for members in ridge_map.values():
        if len(members) == 2:
            i, j = members
            if orientation.epsilon[i] + orientation.epsilon[j] != 0:
                raise PreconditionFailed("epsilon is not a cycle of the top boundary map")

    inc = build_matrix(delta.n, k, k - 1)
    nvars = inc.matrix.cols
    plus = [0] * nvars
    minus = [0] * nvars
    for f, eps in zip(delta.facets, orientation.epsilon):
        r = colex_rank(tuple(sorted(f)))
        if eps == 1:
            plus[r] += 1
        else:
            minus[r] += 1
    b = Binomial(nvars, tuple(plus), tuple(minus))
    if any(inc.matrix.mat_vec(b.vector)):
        raise PreconditionFailed("orientation binomial left the kernel")
    if not b.is_squarefree():
        raise PreconditionFailed("orientation binomial is not squarefree")
    if not is_primitive(b, inc):
        raise PreconditionFailed("orientation binomial is not primitive")
    return b


# ---------------------------------------------------------------------------
# bundled complexes


def crosspolytope(d: int) -> SimplicialComplex:
    """Boundary of the d-dimensional crosspolytope: vertices 2i-1, 2i are
    the antipodal pair of color i, facets pick one vertex per pair."""
    if d < 1:
        raise BadParameters("crosspolytope needs d >= 1")
    facets = []
    for mask in range(1 << d):
        facets.append([2 * i + 1 + ((mask >> i) & 1) for i in range(d)])
    facets.sort()
    return SimplicialComplex.from_facets(2 * d, facets)


def octahedron() -> SimplicialComplex:
    return crosspolytope(3)


def pinched_torus() -> SimplicialComplex:
    """Sphere pinched at a point: a 16-facet spindle sphere (two square
    pyramid caps on an antiprism band) with the two apexes identified.

    The apexes have disjoint links, so the identification is simplicial;
    the merged vertex 1 has a link made of two disjoint 4-cycles, which
    kills normality while the top homology stays Z.
    """
    a = [2, 3, 4, 5]
    b = [6, 7, 8, 9]
    facets = []
    for i in range(4):
        facets.append({1, a[i], a[(i + 1) % 4]})
        facets.append({1, b[i], b[(i + 1) % 4]})
        facets.append({a[i], a[(i + 1) % 4], b[i]})
        facets.append({a[(i + 1) % 4], b[i], b[(i + 1) % 4]})
    return SimplicialComplex.from_facets(9, facets)


def crossflip_example() -> SimplicialComplex:
    """Balanced 14-facet 2-sphere on 9 vertices obtained by replacing one
    octahedron facet with a 7-triangle patch; its orientation binomial is
    a primitive degree-7 element of the (9, 3, 2) lattice ideal.

    The facets are stored positively-oriented first, so the orientation
    found by the verifier reproduces the two monomials exactly.
    """
    plus = [(1, 4, 6), (2, 3, 6), (1, 3, 5), (2, 4, 5), (6, 7, 8), (1, 7, 9), (3, 8, 9)]
    minus = [(7, 8, 9), (1, 6, 7), (3, 6, 8), (1, 3, 9), (2, 4, 6), (1, 4, 5), (2, 3, 5)]
    return SimplicialComplex.from_facets(9, plus + minus)


def parse_complex_file(text: str) -> SimplicialComplex:
    """One facet per line, whitespace-separated vertex labels."""
    facets = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        facets.append([int(tok) for tok in line.split()])
    if not facets:
        raise BadParameters("no facets in complex file")
    n = max(max(f) for f in facets)
    return SimplicialComplex.from_facets(n, facets)


def format_complex_file(delta: SimplicialComplex) -> str:
    return "\n".join(" ".join(str(v) for v in sorted(f)) for f in delta.facets) + "\n"
