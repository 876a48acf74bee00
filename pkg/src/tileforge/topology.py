"""Combinatorial audits of the boundary complex.

Pieces of the boundary are handled purely symbolically: a piece is the set of
tiles it lies in, so two pieces intersect exactly when the union of their
tile families, seen from one piece's frame, is a vertex of the level graph of
the right size.  All Hata graphs here compare pieces at one common scale.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import AbcTriple, TileAnalysis, analysis_for, predicts_14
from .lattice import Vec, vec_add, vec_neg, vec_sub
from .power import (
    SubtileRef,
    VertexSet,
    piece_key,
    ref_shift,
    subdivide,
    vertex_set,
)


def _ctx(obj) -> TileAnalysis:
    return obj if isinstance(obj, TileAnalysis) else analysis_for(obj)


@dataclass(frozen=True, order=True)
class Piece:
    """Same-scale boundary piece, canonically framed by its tile family."""

    vertex: VertexSet
    shift: Vec

    @property
    def key(self) -> frozenset:
        return piece_key(self.vertex, self.shift)


def make_piece(vertex, shift) -> Piece:
    """Canonical piece: reframe so the shift is the smallest family member."""
    key = piece_key(tuple(vertex), tuple(shift))
    base = min(key)
    members = tuple(sorted(vec_sub(t, base) for t in key if t != base))
    return Piece(members, base)


@dataclass(frozen=True)
class HataGraph:
    """Undirected intersection graph of same-scale pieces."""

    nodes: tuple[Piece, ...]
    edges: tuple[tuple[int, int, VertexSet], ...]

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * len(self.nodes)
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return tuple(deg)


def hata_graph(ctx, pieces) -> HataGraph:
    """Intersection graph of pieces given as (vertex, shift) pairs or Pieces."""
    t = _ctx(ctx)
    canon = sorted({
        p if isinstance(p, Piece) else make_piece(*p) for p in pieces
    })
    by_shift: dict[Vec, list[int]] = {}
    for i, p in enumerate(canon):
        by_shift.setdefault(p.shift, []).append(i)
    zero = (0,) * t.matrix.size
    offsets = (zero,) + t.neighbors.points
    edges = []
    for i, p in enumerate(canon):
        for off in offsets:
            for j in by_shift.get(vec_add(p.shift, off), ()):
                if j <= i:
                    continue
                q = canon[j]
                gamma = t.intersection(p.vertex, p.shift, q.vertex, q.shift)
                if gamma is not None:
                    edges.append((i, j, gamma))
    return HataGraph(tuple(canon), tuple(sorted(edges)))


@dataclass(frozen=True)
class ChainReport:
    """Shape classification of a Hata graph.

    classification is one of path, regular_chain, cycle, circular_chain,
    connected, disconnected, other.  regular chains are paths whose links are
    single points; circular chains are point-linked cycles of length >= 4.
    """

    classification: str
    node_count: int
    edge_count: int
    witness: str | None = None

    @property
    def is_path(self) -> bool:
        return self.classification in ("path", "regular_chain")

    @property
    def is_circular_chain(self) -> bool:
        return self.classification == "circular_chain"


def classify(h: HataGraph) -> ChainReport:
    n = len(h.nodes)
    if n == 0:
        return ChainReport("other", 0, 0, "no pieces")
    deg = h.degrees()
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j, _ in h.edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = {0}
    stack = [0]
    while stack:
        for x in adj[stack.pop()]:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    if len(seen) < n:
        out = next(i for i in range(n) if i not in seen)
        return ChainReport("disconnected", n, len(h.edges),
                           f"nodes 0 and {out} are in different components")
    point_links = all(len(e[2]) == 3 for e in h.edges)
    if all(d == 2 for d in deg) and n >= 3:
        if n >= 4 and point_links:
            return ChainReport("circular_chain", n, len(h.edges))
        bad = next((e for e in h.edges if len(e[2]) != 3), None)
        note = None if bad is None else f"link {bad[0]}-{bad[1]} is not a point"
        if n < 4:
            note = "fewer than 4 pieces"
        return ChainReport("cycle", n, len(h.edges), note)
    if all(d <= 2 for d in deg) and len(h.edges) == n - 1:
        if n == 1:
            return ChainReport("path", 1, 0)
        if point_links:
            return ChainReport("regular_chain", n, len(h.edges))
        bad = next(e for e in h.edges if len(e[2]) != 3)
        return ChainReport("path", n, len(h.edges),
                           f"link {bad[0]}-{bad[1]} is not a point")
    return ChainReport("connected", n, len(h.edges), "degree above 2")


def path_order(h: HataGraph) -> list[int]:
    """Node indices along a path-shaped Hata graph."""
    n = len(h.nodes)
    if n == 1:
        return [0]
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j, _ in h.edges:
        adj[i].append(j)
        adj[j].append(i)
    ends = [i for i in range(n) if len(adj[i]) == 1]
    if len(ends) != 2:
        raise ValueError("graph is not a path")
    order = [min(ends)]
    prev = None
    while len(order) < n:
        nxt = [x for x in adj[order[-1]] if x != prev]
        if len(nxt) != 1:
            raise ValueError("graph is not a path")
        prev = order[-1]
        order.append(nxt[0])
    return order


def successor_hata(ctx, alpha_set) -> tuple[HataGraph, ChainReport]:
    """Hata graph of the distinct one-step successors of a level vertex."""
    t = _ctx(ctx)
    vs = vertex_set(alpha_set)
    g = t.level(len(vs))
    if not g.has_vertex(vs):
        raise ValueError(f"{vs} is not a level-{len(vs)} vertex")
    zero = (0,) * t.matrix.size
    dsts = sorted({dst for _, dst in g.out_edges(vs)})
    h = hata_graph(t, [(d, zero) for d in dsts])
    return h, classify(h)


def boundary_loop_pieces(ctx, alpha: Vec, k: int = 1) -> tuple:
    """Depth-k pieces of the closed piece loop around one neighbor."""
    t = _ctx(ctx)
    if k < 1:
        raise ValueError("k must be at least 1")
    alpha = tuple(int(x) for x in alpha)
    faces = [v for v in t.level(2).vertices if alpha in v]
    if not faces:
        raise ValueError(f"{alpha} appears in no level-2 vertex")
    g2 = t.level(2)
    pieces = []
    for f in faces:
        for ref in subdivide(g2, SubtileRef(1, (), f), k - 1):
            pieces.append((ref.vertex, ref_shift(t.matrix, ref.word)))
    return tuple(pieces)


def boundary_loop_audit(ctx, alpha: Vec, k: int = 1) -> tuple[HataGraph, ChainReport]:
    t = _ctx(ctx)
    h = hata_graph(t, boundary_loop_pieces(t, alpha, k))
    return h, classify(h)


@dataclass(frozen=True)
class FourFold:
    """The two level-3 vertices enclosing a level-2 vertex."""

    pair: tuple[VertexSet, VertexSet]
    first_digits: tuple[Vec, Vec]


def four_fold_placement(ctx, alpha_set) -> FourFold:
    """Exactly two triple-points bound each arc; returns them with first digits."""
    t = _ctx(ctx)
    vs = vertex_set(alpha_set)
    supersets = [w for w in t.level(3).vertices if set(vs) <= set(w)]
    if len(supersets) != 2:
        raise ValueError(f"{vs} lies in {len(supersets)} level-3 vertices, not 2")
    first = []
    for w in supersets:
        word = t.walk(w)
        first.append((word.preperiod + word.period)[0])
    return FourFold((supersets[0], supersets[1]), (first[0], first[1]))


@dataclass(frozen=True)
class ComplexCensus:
    """Face/arc/point counts of the boundary complex with adjacency degrees."""

    faces: int
    edges: int
    points: int
    euler: int
    degree_sequence: tuple[int, ...]


def census(p) -> ComplexCensus:
    triple = p if isinstance(p, AbcTriple) else AbcTriple(*p)
    if not predicts_14(triple):
        raise ValueError("census requires a 14-neighbor family member")
    t = analysis_for(triple)
    s = t.neighbors.points
    v2 = t.level(2).vertices
    v3 = t.level(3).vertices
    degs = tuple(sorted(sum(1 for v in v2 if a in v) for a in s))
    return ComplexCensus(len(s), len(v2), len(v3),
                         len(s) - len(v2) + len(v3), degs)


# ---------------------------------------------------------------------------
# audit helpers shared by the sweep; each returns None or a failure message


def successor_paths_failure(ctx) -> str | None:
    t = _ctx(ctx)
    for v in t.level(2).vertices:
        _, report = successor_hata(t, v)
        if not report.is_path:
            return f"successors of {v} form {report.classification}"
    return None


def four_fold_failure(ctx) -> str | None:
    t = _ctx(ctx)
    for v in t.level(2).vertices:
        try:
            ff = four_fold_placement(t, v)
        except ValueError as exc:
            return str(exc)
        if len(t.level(2).out_edges(v)) > 1 and ff.first_digits[0] == ff.first_digits[1]:
            return f"branching vertex {v} has equal first digits"
    return None


def loop_chains_failure(ctx, k_max: int = 1) -> str | None:
    t = _ctx(ctx)
    for alpha in t.neighbors.points:
        for k in range(1, k_max + 1):
            h, report = boundary_loop_audit(t, alpha, k)
            if not report.is_circular_chain:
                return (f"loop around {alpha} at depth {k} is "
                        f"{report.classification}")
            msg = _loop_point_failure(h)
            if msg is not None:
                return f"loop around {alpha} at depth {k}: {msg}"
    return None


def walk_points_failure(ctx) -> str | None:
    from .power import word_admissible_from

    t = _ctx(ctx)
    pts = {}
    for v in t.level(3).vertices:
        word = t.walk(v)
        x = t.point_of(v)
        if x in pts:
            return f"{v} and {pts[x]} share the point {x}"
        pts[x] = v
        for member in v:
            if not word_admissible_from(t.boundary_graph, member, word):
                return f"walk word of {v} is not admissible from {member}"
    return None


def _loop_point_failure(h: HataGraph) -> str | None:
    incident: dict[int, list[frozenset]] = {}
    keys = []
    for i, j, gamma in h.edges:
        if len(gamma) != 3:
            return f"link {i}-{j} is not a point"
        key = h.nodes[i].key | h.nodes[j].key
        keys.append(key)
        incident.setdefault(i, []).append(key)
        incident.setdefault(j, []).append(key)
    for i, ks in incident.items():
        if len(ks) != 2 or ks[0] == ks[1]:
            return f"piece {i} does not meet its neighbors in 2 distinct points"
    if len(set(keys)) != len(keys):
        return "a point lies in more than two pieces"
    return None


# ---------------------------------------------------------------------------
# interior-structure audit: loops, ordered face equations, check partition


@dataclass(frozen=True)
class BingReport:
    ok: bool
    loop_checks: tuple
    equation_checks: tuple
    partition_checks: tuple
    messages: tuple[str, ...]


def _face_order(triple: AbcTriple) -> tuple[Vec, ...]:
    """Fixed face enumeration used by the check-partition audit."""
    p, q, n = triple.p, triple.q, triple.n
    qp = vec_sub(q, p)
    nq = vec_sub(n, q)
    np_ = vec_sub(n, p)
    nqp = vec_add(nq, p)
    return (
        vec_neg(qp), nqp, nq, vec_neg(q), vec_neg(n), vec_neg(np_),
        p, vec_neg(p), np_, n, q, vec_neg(nq), vec_neg(nqp), qp,
    )


def _equation_failure(t: TileAnalysis, alpha: Vec) -> tuple[int, str | None]:
    """Check the ordered subdivision of one face meets only adjacently."""
    out = t.boundary_graph.out_edges(alpha)
    labeled = {}
    for e in out:
        piece = make_piece((e.dst,), e.d)
        labeled.setdefault(piece, set()).add(e.d)
    if any(len(ls) > 1 for ls in labeled.values()):
        return len(out), "two labels denote one piece"
    h = hata_graph(t, labeled.keys())
    if len(h.nodes) != len(out):
        return len(out), "children collapsed unexpectedly"
    report = classify(h)
    if len(h.nodes) > 1:
        if report.classification != "path":
            return len(out), f"children form {report.classification}"
        if any(len(gamma) != 2 for _, _, gamma in h.edges):
            return len(out), "a consecutive link is not an arc"
        label_of = {node: next(iter(labeled[node]))[0] for node in h.nodes}
        seq = [label_of[h.nodes[i]] for i in path_order(h)]
        if seq != sorted(seq) and seq != sorted(seq, reverse=True):
            return len(out), f"path does not follow the digit order: {seq}"
    return len(out), None


def bing_audit(p, k_max: int = 4) -> BingReport:
    """Loops are circular chains, face equations meet adjacent-only, and the
    fixed face order gives nonempty connected attachment sets."""
    triple = p if isinstance(p, AbcTriple) else AbcTriple(*p)
    if not predicts_14(triple):
        raise ValueError("audit requires a 14-neighbor family member")
    t = analysis_for(triple)
    messages = []

    loop_checks = []
    for alpha in t.neighbors.points:
        for k in range(1, k_max + 1):
            h, report = boundary_loop_audit(t, alpha, k)
            ok = report.is_circular_chain
            msg = _loop_point_failure(h) if ok else report.witness
            if msg is not None:
                ok = False
                messages.append(f"loop {alpha} depth {k}: {msg}")
            loop_checks.append((alpha, k, report.classification, ok))

    equation_checks = []
    for alpha in t.neighbors.points:
        count, msg = _equation_failure(t, alpha)
        if msg is not None:
            messages.append(f"face equation {alpha}: {msg}")
        equation_checks.append((alpha, count, msg is None, msg))

    partition_checks = []
    order = _face_order(triple)
    v2 = set(t.level(2).vertices)
    zero = (0,) * t.matrix.size
    for i in range(1, len(order)):
        alpha = order[i]
        arcs = [vertex_set((prev, alpha)) for prev in order[:i]
                if vertex_set((prev, alpha)) in v2]
        ok = bool(arcs)
        if ok:
            report = classify(hata_graph(t, [(a, zero) for a in arcs]))
            ok = report.classification != "disconnected" and report.node_count > 0
            if not ok:
                messages.append(f"attachment set {i + 1} is disconnected")
        else:
            messages.append(f"attachment set {i + 1} is empty")
        if i == len(order) - 1 and ok:
            loop_faces = {v for v in v2 if alpha in v}
            if set(arcs) != loop_faces:
                ok = False
                messages.append("final attachment set is not the full loop")
        partition_checks.append((i + 1, alpha, len(arcs), ok))

    ok = not messages
    return BingReport(ok, tuple(loop_checks), tuple(equation_checks),
                      tuple(partition_checks), tuple(messages))


def audit_report(p, k_max: int = 1) -> dict:
    """JSON-ready audit summary for one family member."""
    triple = p if isinstance(p, AbcTriple) else AbcTriple(*p)
    t = analysis_for(triple)
    report: dict = {
        "triple": [triple.A, triple.B, triple.C],
        "neighbor_count": len(t.neighbors.points),
        "predicted_14": predicts_14(triple),
    }
    if predicts_14(triple) and len(t.neighbors.points) == 14:
        c = census(triple)
        failures = {
            "successor_paths": successor_paths_failure(t),
            "four_fold": four_fold_failure(t),
            "loops": loop_chains_failure(t, k_max),
            "walk_points": walk_points_failure(t),
        }
        report["census"] = {
            "faces": c.faces, "edges": c.edges, "points": c.points,
            "euler": c.euler, "degree_sequence": list(c.degree_sequence),
        }
        report["audits"] = {k: (v if v else "ok") for k, v in failures.items()}
        report["audit_pass"] = all(v is None for v in failures.values())
    else:
        report["audit_pass"] = None
    return report
