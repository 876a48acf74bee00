"""Labeled boundary graphs on lattice translations.

A translation alpha carries the edge alpha ->(d|d') alpha' exactly when
M alpha + d' - d = alpha'.  The contact iteration closes a seed set under
predecessors; the neighbor iteration alternates Minkowski sums with removal
of walk-dead vertices until the set stabilizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import IntMatrix, Vec, char_poly, vec_add, vec_neg, vec_sub

MAX_ROUNDS = 64


@dataclass(frozen=True, order=True)
class LabeledEdge:
    src: Vec
    dst: Vec
    d: Vec
    d_prime: Vec

    def mirrored(self) -> "LabeledEdge":
        return LabeledEdge(vec_neg(self.src), vec_neg(self.dst), self.d_prime, self.d)


@dataclass(frozen=True)
class BoundaryGraph:
    """Immutable labeled digraph over a finite translation set."""

    vertices: tuple[Vec, ...]
    edges: tuple[LabeledEdge, ...]
    matrix: IntMatrix
    digits: tuple[Vec, ...]
    _out: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        vset = set(self.vertices)
        out: dict[Vec, list[LabeledEdge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.src not in vset or e.dst not in vset:
                raise ValueError("edge endpoints must be vertices")
            out[e.src].append(e)
        object.__setattr__(self, "_out", out)

    def out_edges(self, v: Vec) -> tuple[LabeledEdge, ...]:
        return tuple(self._out.get(v, ()))

    def successors(self, v: Vec) -> tuple[Vec, ...]:
        return tuple(sorted({e.dst for e in self._out.get(v, ())}))

    @property
    def is_sink_free(self) -> bool:
        return all(self._out[v] for v in self.vertices)

    def symmetry_defects(self) -> tuple[LabeledEdge, ...]:
        """Edges whose mirror image -src ->(d'|d) -dst is absent."""
        have = set(self.edges)
        return tuple(e for e in self.edges if e.mirrored() not in have)


def _digit_diff_pairs(digits):
    pairs: dict[Vec, list[tuple[Vec, Vec]]] = {}
    for d in digits:
        for dp in digits:
            pairs.setdefault(vec_sub(dp, d), []).append((d, dp))
    return pairs


def build_graph(gamma, matrix: IntMatrix, digits) -> BoundaryGraph:
    """Graph on gamma with every edge alpha ->(d|d') alpha' = M alpha + d' - d."""
    pts = sorted({tuple(int(x) for x in v) for v in gamma})
    digits = tuple(tuple(int(x) for x in d) for d in digits)
    pset = set(pts)
    diff_pairs = _digit_diff_pairs(digits)
    edges: list[LabeledEdge] = []
    for a in pts:
        ma = matrix.mul_vec(a)
        for diff, pairs in diff_pairs.items():
            b = vec_add(ma, diff)
            if b in pset:
                for d, dp in pairs:
                    edges.append(LabeledEdge(a, b, d, dp))
    return BoundaryGraph(tuple(pts), tuple(sorted(edges)), matrix, digits)


def reduce(graph: BoundaryGraph) -> BoundaryGraph:
    """Largest subgraph in which every vertex keeps an outgoing edge."""
    succ: dict[Vec, set[Vec]] = {v: set() for v in graph.vertices}
    preds: dict[Vec, set[Vec]] = {v: set() for v in graph.vertices}
    for e in graph.edges:
        succ[e.src].add(e.dst)
        preds[e.dst].add(e.src)
    dead: set[Vec] = set()
    queue = [v for v in graph.vertices if not succ[v]]
    while queue:
        v = queue.pop()
        if v in dead:
            continue
        dead.add(v)
        for p in preds[v]:
            if p in dead:
                continue
            succ[p].discard(v)
            if not succ[p]:
                queue.append(p)
    if not dead:
        return graph
    alive = tuple(v for v in graph.vertices if v not in dead)
    kept = tuple(e for e in graph.edges if e.src not in dead and e.dst not in dead)
    return BoundaryGraph(alive, kept, graph.matrix, graph.digits)


def minkowski_sum(left, right) -> set[Vec]:
    return {vec_add(a, b) for a in left for b in right}


def default_contact_basis(matrix: IntMatrix) -> tuple[Vec, ...]:
    """Basis (1,0,0), (A,1,0), (B,A,1) read off the characteristic polynomial."""
    if matrix.size != 3:
        raise ValueError("default contact basis requires a 3x3 matrix")
    _, a, b, _ = char_poly(matrix)
    return ((1, 0, 0), (a, 1, 0), (b, a, 1))


@dataclass(frozen=True)
class ContactSet:
    """Predecessor-closed, walk-reduced translation set around the origin."""

    points: tuple[Vec, ...]
    basis_used: tuple[Vec, ...]
    rounds: int

    def __post_init__(self):
        if (0,) * len(self.points[0]) not in self.points:
            raise ValueError("contact set must contain the origin")


def contact_set(matrix: IntMatrix, digits, basis=None) -> ContactSet:
    """Close {0, +-basis} under predecessors, then trim walk-dead points."""
    digits = tuple(tuple(int(x) for x in d) for d in digits)
    if basis is None:
        basis = default_contact_basis(matrix)
    basis = tuple(tuple(int(x) for x in b) for b in basis)
    zero = (0,) * matrix.size
    pts: set[Vec] = {zero}
    for b in basis:
        pts.add(b)
        pts.add(vec_neg(b))
    diffs = sorted({vec_sub(dp, d) for d in digits for dp in digits})
    rounds = 0
    for _ in range(MAX_ROUNDS):
        grown = set(pts)
        for l in pts:
            for delta in diffs:
                k = matrix.solve_int(vec_add(l, delta))
                if k is not None:
                    grown.add(k)
        if grown == pts:
            break
        pts = grown
        rounds += 1
    else:
        raise RuntimeError("contact iteration exceeded 64 rounds")
    reduced = reduce(build_graph(pts, matrix, digits))
    return ContactSet(tuple(sorted(reduced.vertices)), basis, rounds)


@dataclass(frozen=True)
class NeighborSet:
    """Stabilized neighbor translations; origin excluded, negation-closed."""

    points: tuple[Vec, ...]
    rounds: int

    def __post_init__(self):
        have = set(self.points)
        for p in self.points:
            if vec_neg(p) not in have:
                raise ValueError("neighbor set must be negation-closed")


def neighbor_set(contact, matrix: IntMatrix, digits) -> NeighborSet:
    """Iterate S <- trim(S + S0) from S0 = contact set until stable."""
    base = tuple(contact.points) if isinstance(contact, ContactSet) else tuple(contact)
    digits = tuple(tuple(int(x) for x in d) for d in digits)
    zero = (0,) * matrix.size
    s0 = {tuple(int(x) for x in p) for p in base} | {zero}
    current = set(s0)
    rounds = 0
    for _ in range(MAX_ROUNDS):
        candidates = minkowski_sum(current, s0)
        nxt = set(reduce(build_graph(candidates, matrix, digits)).vertices)
        if nxt == current:
            break
        current = nxt
        rounds += 1
    else:
        raise RuntimeError("neighbor iteration exceeded 64 rounds")
    points = tuple(sorted(current - {zero}))
    trimmed = reduce(build_graph(points, matrix, digits))
    if set(trimmed.vertices) != set(points):
        raise AssertionError("neighbor set lost walk-freeness without the origin")
    return NeighborSet(points, rounds)
