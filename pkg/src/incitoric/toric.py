"""Binomial ideal engine for lattice ideals of incidence matrices.

Everything here works on pure-difference binomials x^a - x^b, closed under
S-pairs and reduction, so no coefficient arithmetic beyond signs is ever
needed.  The saturated lattice ideal is computed by the standard loop:
start from the binomials of an integer kernel basis and saturate one
variable at a time, each round re-running Buchberger in a degree-reverse-
lexicographic order that makes the active variable cheapest and then
stripping its common power from every basis element.

Monomials are exponent tuples indexed by colex subset rank.  In the
default order the colex-first variable is the most expensive and ties are
broken reverse-lexicographically from the cheapest end.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import exactmath
from .config import DEFAULT_CONFIG, RunConfig
from .errors import BadParameters, BudgetExceeded
from .exactmath import IntMatrix
from .incidence import IncidenceMatrix


# ---------------------------------------------------------------------------
# monomial orders


class DegrevlexOrder:
    """Degree-reverse-lexicographic order with a configurable cheapest end.

    ``scan`` lists variable indices from cheapest to most expensive; on a
    degree tie the first scanned variable where two monomials differ
    decides, the monomial with the smaller exponent there being larger.
    """

    def __init__(self, nvars: int, cheapest: Optional[int] = None):
        self.nvars = nvars
        self.cheapest = cheapest
        if cheapest is None:
            self.scan = tuple(range(nvars - 1, -1, -1))
        else:
            if not 0 <= cheapest < nvars:
                raise BadParameters("cheapest variable out of range")
            self.scan = (cheapest,) + tuple(
                v for v in range(nvars - 1, -1, -1) if v != cheapest
            )

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        da, db = sum(a), sum(b)
        if da != db:
            return 1 if da > db else -1
        for v in self.scan:
            if a[v] != b[v]:
                return 1 if a[v] < b[v] else -1
        return 0

    def sort_key(self, m: Sequence[int]) -> tuple:
        # larger monomial sorts later
        return (sum(m), tuple(-m[v] for v in self.scan))

    @property
    def name(self) -> str:
        if self.cheapest is None:
            return "degrevlex"
        return f"degrevlex(cheapest=x{self.cheapest})"


# ---------------------------------------------------------------------------
# public binomial containers


@dataclass(frozen=True)
class Binomial:
    """x^plus - x^minus with disjoint non-negative supports."""

    var_count: int
    plus: tuple
    minus: tuple

    def __post_init__(self):
        if len(self.plus) != self.var_count or len(self.minus) != self.var_count:
            raise BadParameters("exponent vector length mismatch")
        if any(x < 0 for x in self.plus) or any(x < 0 for x in self.minus):
            raise BadParameters("negative exponent")
        if all(x == 0 for x in self.plus) and all(x == 0 for x in self.minus):
            raise BadParameters("zero binomial")
        if any(p and m for p, m in zip(self.plus, self.minus)):
            raise BadParameters("plus and minus supports overlap")

    @property
    def vector(self) -> tuple:
        return tuple(p - m for p, m in zip(self.plus, self.minus))

    @property
    def degree(self) -> int:
        return max(sum(self.plus), sum(self.minus))

    def is_homogeneous(self) -> bool:
        return sum(self.plus) == sum(self.minus)

    def is_squarefree(self) -> bool:
        return all(x <= 1 for x in self.plus) and all(x <= 1 for x in self.minus)

    @classmethod
    def from_vector(cls, u: Sequence[int]) -> "Binomial":
        plus = tuple(x if x > 0 else 0 for x in u)
        minus = tuple(-x if x < 0 else 0 for x in u)
        return cls(len(u), plus, minus)


@dataclass(frozen=True)
class BinomialBasis:
    kind: str  # markov | graver | groebner | octahedral
    elements: tuple
    matrix: IncidenceMatrix
    order_name: str = "degrevlex"

    def __post_init__(self):
        a = self.matrix.matrix
        for b in self.elements:
            if any(a.mat_vec(b.vector)):
                raise BadParameters("basis element outside the kernel")

    def degree_multiset(self) -> dict:
        out: dict = {}
        for b in self.elements:
            out[b.degree] = out.get(b.degree, 0) + 1
        return out

    def to_json_list(self, labels: Sequence[str]) -> list:
        out = []
        for b in self.elements:
            out.append(
                {
                    "plus": {labels[i]: e for i, e in enumerate(b.plus) if e},
                    "minus": {labels[i]: e for i, e in enumerate(b.minus) if e},
                }
            )
        return out


# ---------------------------------------------------------------------------
# raw engine on monomial pairs


def _orient(a: tuple, b: tuple, order: DegrevlexOrder):
    c = order.compare(a, b)
    if c == 0:
        return None
    return (a, b) if c > 0 else (b, a)


def _divides(d: tuple, m: tuple) -> bool:
    return all(x <= y for x, y in zip(d, m))


def _sub_add(m: tuple, sub: tuple, add: tuple) -> tuple:
    return tuple(x - y + z for x, y, z in zip(m, sub, add))


def _normal_form(a: tuple, b: tuple, basis: list, order: DegrevlexOrder):
    """Full normal form of x^a - x^b against leads of ``basis``; None if 0."""
    pair = _orient(a, b, order)
    if pair is None:
        return None
    lead, tail = pair
    changed = True
    while changed:
        changed = False
        for glead, gtail in basis:
            if _divides(glead, lead):
                lead = _sub_add(lead, glead, gtail)
                pair = _orient(lead, tail, order)
                if pair is None:
                    return None
                lead, tail = pair
                changed = True
                break
    # tail reduction for canonical output
    changed = True
    while changed:
        changed = False
        for glead, gtail in basis:
            if _divides(glead, tail):
                tail = _sub_add(tail, glead, gtail)
                if tail == lead:
                    return None
                changed = True
                break
    return lead, tail


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def buchberger(
    generators: Iterable[tuple],
    order: DegrevlexOrder,
    pair_budget: int = DEFAULT_CONFIG.pair_queue_budget,
) -> list:
    """Reduced Groebner basis of the binomial ideal the generators span.

    Generators and result are (lead, tail) monomial pairs; zero input
    binomials are dropped.  Pairs are processed by increasing lcm degree
    (deterministic tie-break), with the coprime-lead and chain criteria.
    Raises BudgetExceeded when more than ``pair_budget`` pairs are popped.
    """
    basis: list = []
    for a, b in generators:
        pair = _orient(tuple(a), tuple(b), order)
        if pair is not None and pair not in basis:
            basis.append(pair)

    heap: list = []
    counter = 0
    processed = set()

    def push_pair(i, j):
        nonlocal counter
        li, lj = basis[i][0], basis[j][0]
        l = _lcm(li, lj)
        if l == tuple(x + y for x, y in zip(li, lj)):
            processed.add((i, j))  # coprime leads: S-pair reduces to zero
            return
        heapq.heappush(heap, (sum(l), order.sort_key(l), counter, i, j))
        counter += 1

    for i in range(len(basis)):
        for j in range(i):
            push_pair(j, i)

    popped = 0
    while heap:
        _, _, _, i, j = heapq.heappop(heap)
        if (i, j) in processed:
            continue
        processed.add((i, j))
        popped += 1
        if popped > pair_budget:
            raise BudgetExceeded("pair queue budget exhausted")
        li, lj = basis[i][0], basis[j][0]
        l = _lcm(li, lj)
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k][0], l):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik in processed and pjk in processed:
                    skip = True
                    break
        if skip:
            continue
        (ai, bi), (aj, bj) = basis[i], basis[j]
        s1 = _sub_add(l, ai, bi)
        s2 = _sub_add(l, aj, bj)
        nf = _normal_form(s1, s2, basis, order)
        if nf is None:
            continue
        basis.append(nf)
        t = len(basis) - 1
        for idx in range(t):
            push_pair(idx, t)

    return _interreduce(basis, order)


def _interreduce(basis: list, order: DegrevlexOrder) -> list:
    by_lead = sorted(basis, key=lambda g: order.sort_key(g[0]))
    kept: list = []
    for g in by_lead:
        if not any(_divides(h[0], g[0]) for h in kept):
            kept.append(g)
    reduced = []
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1 :]
        nf = _normal_form(g[0], g[1], others, order)
        if nf is not None:
            reduced.append(nf)
    reduced.sort(key=lambda g: (order.sort_key(g[0]), order.sort_key(g[1])))
    return reduced


def strip_variable(pair: tuple, v: int) -> tuple:
    a, b = pair
    m = min(a[v], b[v])
    if m == 0:
        return pair
    a = a[:v] + (a[v] - m,) + a[v + 1 :]
    b = b[:v] + (b[v] - m,) + b[v + 1 :]
    return a, b


def saturate_binomials(
    generators: Iterable[tuple],
    nvars: int,
    pair_budget: int = DEFAULT_CONFIG.pair_queue_budget,
    variables: Optional[Sequence[int]] = None,
) -> list:
    """Saturate the binomial ideal w.r.t. the product of all variables.

    One round per variable in ascending colex order: Groebner basis in the
    order making that variable cheapest, then strip its common power from
    every element.  Sound for homogeneous binomial ideals.
    """
    gens = [(tuple(a), tuple(b)) for a, b in generators]
    if variables is None:
        variables = range(nvars)
    for v in variables:
        order = DegrevlexOrder(nvars, cheapest=v)
        gb = buchberger(gens, order, pair_budget)
        gens = [strip_variable(g, v) for g in gb]
    return gens


# ---------------------------------------------------------------------------
# lattice ideals for incidence matrices

_GB_CACHE: dict = {}


def _kernel_pairs(a: IntMatrix) -> list:
    kb = exactmath.kernel_basis(a)
    pairs = []
    for u in kb.vectors:
        plus = tuple(x if x > 0 else 0 for x in u)
        minus = tuple(-x if x < 0 else 0 for x in u)
        pairs.append((plus, minus))
    return pairs


def lattice_ideal_groebner(
    inc: IncidenceMatrix, config: RunConfig = DEFAULT_CONFIG
) -> BinomialBasis:
    """Reduced degrevlex Groebner basis of the saturated lattice ideal."""
    key = (inc.n, inc.k, inc.t, "groebner")
    if key in _GB_CACHE:
        return _GB_CACHE[key]
    a = inc.matrix
    order = DegrevlexOrder(a.cols)
    pairs = _kernel_pairs(a)
    if not pairs:
        result = BinomialBasis("groebner", (), inc, order.name)
        _GB_CACHE[key] = result
        return result
    sat = saturate_binomials(pairs, a.cols, config.pair_queue_budget)
    gb = buchberger(sat, order, config.pair_queue_budget)
    elements = tuple(Binomial(a.cols, lead, tail) for lead, tail in gb)
    for b in elements:
        if not b.is_homogeneous():
            raise BadParameters("inhomogeneous element in a lattice ideal basis")
    result = BinomialBasis("groebner", elements, inc, order.name)
    _GB_CACHE[key] = result
    return result


def reduce_to_zero(b: Binomial, basis: BinomialBasis) -> bool:
    """Ideal membership by normal-form reduction against a Groebner basis."""
    order = DegrevlexOrder(b.var_count)
    pairs = [(g.plus, g.minus) for g in basis.elements]
    return _normal_form(b.plus, b.minus, pairs, order) is None


# ---------------------------------------------------------------------------
# fibers and Markov bases


@dataclass(frozen=True)
class Fiber:
    matrix: IncidenceMatrix
    target: tuple
    points: tuple

    def __contains__(self, u) -> bool:
        return tuple(u) in set(self.points)


def fiber_enumerate(
    inc: IncidenceMatrix, target: Sequence[int], config: RunConfig = DEFAULT_CONFIG
) -> Fiber:
    """All non-negative integer points u with A u = target (A is 0/1)."""
    a = inc.matrix
    b = tuple(int(x) for x in target)
    if len(b) != a.rows:
        raise BadParameters("target length does not match row count")
    cols = [a.column(j) for j in range(a.cols)]
    last_touch = [-1] * a.rows
    for j, col in enumerate(cols):
        for i, x in enumerate(col):
            if x:
                last_touch[i] = j
    points = []
    visited = 0

    def dfs(j, residual, acc):
        nonlocal visited
        visited += 1
        if visited > config.fiber_budget:
            raise BudgetExceeded("fiber enumeration budget exhausted")
        if all(x == 0 for x in residual):
            points.append(tuple(acc + [0] * (a.cols - j)))
            return
        if j == a.cols:
            return
        for i, r in enumerate(residual):
            if r > 0 and last_touch[i] < j:
                return
        col = cols[j]
        cap = min((r for r, x in zip(residual, col) if x), default=None)
        if cap is None:
            dfs(j + 1, residual, acc + [0])
            return
        for mult in range(0, cap + 1):
            new_res = [r - mult * x for r, x in zip(residual, col)]
            dfs(j + 1, new_res, acc + [mult])

    dfs(0, list(b), [])
    return Fiber(inc, b, tuple(sorted(set(points))))


def is_markov_on_fiber(basis: BinomialBasis, fiber: Fiber) -> bool:
    """Connectivity of the fiber graph under the basis moves."""
    points = list(fiber.points)
    if len(points) <= 1:
        return True
    index = {p: i for i, p in enumerate(points)}
    moves = [b.vector for b in basis.elements]
    seen = {points[0]}
    stack = [points[0]]
    while stack:
        u = stack.pop()
        for mv in moves:
            for sgn in (1, -1):
                w = tuple(x + sgn * d for x, d in zip(u, mv))
                if all(x >= 0 for x in w) and w in index and w not in seen:
                    seen.add(w)
                    stack.append(w)
    return len(seen) == len(points)


def _component(start: tuple, moves: list, budget: int) -> set:
    """Monomials reachable from ``start`` by applying moves non-negatively."""
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for plus, minus in moves:
            if _divides(plus, u):
                w = _sub_add(u, plus, minus)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
            if _divides(minus, u):
                w = _sub_add(u, minus, plus)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) > budget:
            raise BudgetExceeded("fiber component budget exhausted")
    return seen


def minimal_markov(inc: IncidenceMatrix, config: RunConfig = DEFAULT_CONFIG) -> BinomialBasis:
    """Inclusion-minimal Markov basis extracted from the Groebner basis.

    Candidates are processed by increasing degree; one is kept exactly
    when its two monomials are not yet connected in their fiber by the
    moves accepted so far, which is ideal membership in the graded piece.
    """
    key = (inc.n, inc.k, inc.t, "markov")
    if key in _GB_CACHE:
        return _GB_CACHE[key]
    gb = lattice_ideal_groebner(inc, config)
    order = DegrevlexOrder(inc.matrix.cols)
    cands = sorted(
        gb.elements, key=lambda b: (b.degree, order.sort_key(b.plus), order.sort_key(b.minus))
    )
    accepted: list = []
    moves: list = []
    for cand in cands:
        comp = _component(cand.plus, moves, config.fiber_budget)
        if cand.minus not in comp:
            accepted.append(cand)
            moves.append((cand.plus, cand.minus))
    result = BinomialBasis("markov", tuple(accepted), inc, gb.order_name)
    _GB_CACHE[key] = result
    return result


# ---------------------------------------------------------------------------
# Graver bases via the Lawrence lifting


def graver_basis(inc: IncidenceMatrix, config: RunConfig = DEFAULT_CONFIG) -> BinomialBasis:
    """Graver basis of the lattice ideal.

    The kernel of the Lawrence lifting [[A, 0], [I, I]] is {(u, -u)}; any
    reduced Groebner basis of its lattice ideal consists exactly of the
    binomials x^{u+} y^{u-} - x^{u-} y^{u+} with u primitive, so the
    Graver elements are read off the x-parts.
    """
    key = (inc.n, inc.k, inc.t, "graver")
    if key in _GB_CACHE:
        return _GB_CACHE[key]
    a = inc.matrix
    n = a.cols
    kb = exactmath.kernel_basis(a)
    pairs = []
    for u in kb.vectors:
        plus = tuple(x if x > 0 else 0 for x in u)
        minus = tuple(-x if x < 0 else 0 for x in u)
        pairs.append((plus + minus, minus + plus))
    if not pairs:
        result = BinomialBasis("graver", (), inc, "degrevlex")
        _GB_CACHE[key] = result
        return result
    sat = saturate_binomials(pairs, 2 * n, config.pair_queue_budget)
    order = DegrevlexOrder(2 * n)
    gb = buchberger(sat, order, config.pair_queue_budget)
    base_order = DegrevlexOrder(n)
    seen = set()
    elements = []
    for lead, tail in gb:
        u = tuple(lead[i] - tail[i] for i in range(n))
        if all(x == 0 for x in u):
            raise BadParameters("Lawrence basis produced a zero x-part")
        if tuple(-x for x in u) in seen:
            continue
        seen.add(u)
        pair = _orient(
            tuple(x if x > 0 else 0 for x in u),
            tuple(-x if x < 0 else 0 for x in u),
            base_order,
        )
        elements.append(Binomial(n, pair[0], pair[1]))
    elements.sort(key=lambda b: (b.degree, base_order.sort_key(b.plus)))
    result = BinomialBasis("graver", tuple(elements), inc, base_order.name)
    _GB_CACHE[key] = result
    return result


def is_primitive(b: Binomial, inc: IncidenceMatrix, config: RunConfig = DEFAULT_CONFIG) -> bool:
    """No other kernel vector fits componentwise inside (plus, minus).

    Decided by exhaustive enumeration of the box 0 <= v+ <= plus,
    0 <= v- <= minus intersected with the kernel.
    """
    a = inc.matrix
    u = b.vector
    if any(a.mat_vec(u)):
        raise BadParameters("binomial vector is not in the kernel")
    support = [i for i in range(len(u)) if u[i] != 0]
    size = 1
    for i in support:
        size *= abs(u[i]) + 1
        if size > config.box_budget:
            raise BudgetExceeded("primitivity box budget exhausted")
    zero = (0,) * a.rows
    for idx_vals in _box_vectors(u, support):
        s = zero
        for i, val in zip(support, idx_vals):
            if val:
                col = a.column(i)
                s = tuple(x + val * c for x, c in zip(s, col))
        if s == zero:
            v = [0] * len(u)
            for i, val in zip(support, idx_vals):
                v[i] = val
            if any(v) and tuple(v) != u:
                return False
    return True


def _box_vectors(u: tuple, support: list):
    from itertools import product

    ranges = []
    for i in support:
        if u[i] > 0:
            ranges.append(range(0, u[i] + 1))
        else:
            ranges.append(range(u[i], 1))
    return product(*ranges)


# ---------------------------------------------------------------------------
# octahedral generators and saturation identity


def octahedral_generators(n: int, k: int, t: int) -> BinomialBasis:
    """One squarefree binomial per pod, plus part the positive support."""
    from . import designs
    from .incidence import build_matrix

    inc = build_matrix(n, k, t)
    order = DegrevlexOrder(inc.matrix.cols)
    elements = []
    for pod in designs.pods(n, k, t):
        design = designs.pod_expand(pod, n)
        u = designs.design_kernel_iso(design)
        pair = _orient(
            tuple(x if x > 0 else 0 for x in u),
            tuple(-x if x < 0 else 0 for x in u),
            order,
        )
        elements.append(Binomial(inc.matrix.cols, pair[0], pair[1]))
    return BinomialBasis("octahedral", tuple(elements), inc, order.name)


def saturation_equals(
    basis: BinomialBasis, inc: IncidenceMatrix, config: RunConfig = DEFAULT_CONFIG
) -> bool:
    """Does saturating the span of ``basis`` by all variables give the
    full lattice ideal?  Mutual containment is checked by reduction to
    zero in both directions.
    """
    a = inc.matrix
    for b in basis.elements:
        if any(a.mat_vec(b.vector)):
            raise BadParameters("generator outside the kernel")
    gens = [(b.plus, b.minus) for b in basis.elements]
    sat = saturate_binomials(gens, a.cols, config.pair_queue_budget)
    order = DegrevlexOrder(a.cols)
    gb_j = buchberger(sat, order, config.pair_queue_budget)
    gb_i = lattice_ideal_groebner(inc, config)
    pairs_i = [(g.plus, g.minus) for g in gb_i.elements]
    for lead, tail in gb_j:
        if _normal_form(lead, tail, pairs_i, order) is not None:
            return False
    for g in gb_i.elements:
        if _normal_form(g.plus, g.minus, gb_j, order) is not None:
            return False
    return True
