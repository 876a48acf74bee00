"""Family-wide expected structures and the parameter sweep.

The contact graph, the arc graph, and the point graph of a 14-neighbor
family member follow closed-form edge tables in the parameters.  This module
instantiates those tables so computed graphs can be checked edge for edge,
and runs the full audit bundle over parameter boxes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .analysis import AbcTriple, analysis_for, predicts_14
from .graphs import LabeledEdge, minkowski_sum
from .lattice import Vec, vec_add, vec_neg, vec_sub
from .power import vertex_set
from .topology import (
    four_fold_failure,
    loop_chains_failure,
    successor_paths_failure,
    walk_points_failure,
)

ORIGIN = (0, 0, 0)


def _names(triple: AbcTriple):
    p, q, n = triple.p, triple.q, triple.n
    qp = vec_sub(q, p)
    nq = vec_sub(n, q)
    np_ = vec_sub(n, p)
    nqp = vec_add(nq, p)
    return p, q, n, qp, nq, np_, nqp


def expected_contact_set(p) -> tuple[Vec, ...]:
    """Closed-form contact set: 15 points when A < B, 13 when A = B."""
    triple = p if isinstance(p, AbcTriple) else AbcTriple(*p)
    pv, q, n, qp, nq, np_, nqp = _names(triple)
    pts = {ORIGIN, pv, q, n, qp, nq, np_}
    if triple.A < triple.B:
        pts.add(nqp)
    return tuple(sorted(pts | {vec_neg(x) for x in pts}))


def _contact_rows(triple: AbcTriple):
    A, B, C = triple.A, triple.B, triple.C
    p, q, n, qp, nq, np_, nqp = _names(triple)
    rows = [
        (ORIGIN, ORIGIN, 0, C - 1, 0),
        (ORIGIN, p, 0, C - 2, 1),
        (p, q, 0, C - A - 1, A),
        (p, qp, 0, C - A, A - 1),
        (n, vec_neg(p), 0, 0, C - 1),
        (q, n, 0, C - B - 1, B),
        (q, np_, 0, C - B, B - 1),
        (np_, vec_neg(q), 0, A - 1, C - A),
        (nq, vec_neg(n), 0, B - 1, C - B),
        (qp, nq, 0, C - B + A - 1, B - A),
    ]
    if A >= 2:
        rows.append((np_, vec_neg(qp), 0, A - 2, C - A + 1))
    if B >= 2:
        rows.append((nq, vec_neg(np_), 0, B - 2, C - B + 1))
    if A != B:
        rows += [
            (nqp, vec_neg(nq), 0, B - A - 1, C - B + A),
            (qp, nqp, 0, C - B + A - 2, B - A + 1),
            (nqp, vec_neg(nqp), 0, B - A, C - B + A - 1),
        ]
    return rows


def _contact_edges(triple: AbcTriple, include_origin: bool) -> set[LabeledEdge]:
    digit = lambda i: (i, 0, 0)
    edges: set[LabeledEdge] = set()
    for src, dst, lo, hi, off in _contact_rows(triple):
        if not include_origin and ORIGIN in (src, dst):
            continue
        for i in range(lo, hi + 1):
            e = LabeledEdge(src, dst, digit(i), digit(i + off))
            edges.add(e)
            edges.add(e.mirrored())
    return edges


def _g2_rows(triple: AbcTriple):
    """Arc-graph edge table: (src pair, dst pair, label range)."""
    A, B, C = triple.A, triple.B, triple.C
    p, q, n, qp, nq, np_, nqp = _names(triple)
    neg = vec_neg
    rows = []

    def add(src, dst, lo, hi, guard=True):
        if guard and hi >= lo:
            rows.append((vertex_set(src), vertex_set(dst), lo, hi))

    add((qp, np_), (neg(q), nq), 0, A - 1)
    add((qp, np_), (neg(qp), nq), 0, A - 2, A >= 2)
    add((qp, np_), (neg(qp), nqp), 0, A - 2, A >= 2)
    add((neg(p), qp), (neg(q), nq), A, C - B + A - 1)
    add((neg(p), qp), (neg(qp), nq), A - 1, C - B + A - 1)
    add((neg(p), qp), (neg(qp), nqp), A - 1, C - B + A - 2)
    add((neg(nqp), neg(p)), (neg(q), nq), C - B + A, C - 1)
    add((neg(nqp), neg(p)), (neg(qp), nq), C - B + A, C - 1)
    add((neg(nqp), neg(p)), (neg(qp), nqp), C - B + A - 1, C - 1)
    add((p, q), (qp, np_), 0, C - B)
    add((p, q), (qp, n), 0, C - B - 1)
    add((p, q), (q, n), 0, C - B - 1)
    add((neg(nq), p), (qp, np_), C - B + 1, C - A)
    add((neg(nq), p), (qp, n), C - B, C - A)
    add((neg(nq), p), (q, n), C - B, C - A - 1)
    add((neg(np_), neg(nq)), (qp, np_), C - A + 1, C - 1, A >= 2)
    add((neg(np_), neg(nq)), (qp, n), C - A + 1, C - 1, A >= 2)
    add((neg(np_), neg(nq)), (q, n), C - A, C - 1)
    add((nq, nqp), (neg(nqp), neg(n)), 0, B - A)
    add((nq, nqp), (neg(nq), neg(n)), 0, B - A - 1)
    add((nq, nqp), (neg(nq), neg(np_)), 0, B - A - 1)
    add((neg(qp), nq), (neg(nqp), neg(n)), B - A + 1, B - 1, A >= 2)
    add((neg(qp), nq), (neg(nq), neg(n)), B - A, B - 1)
    add((neg(qp), nq), (neg(nq), neg(np_)), B - A, B - 2, A >= 2)
    add((neg(qp), neg(q)), (neg(nqp), neg(n)), B, C - 1)
    add((neg(qp), neg(q)), (neg(nq), neg(n)), B, C - 1)
    add((neg(qp), neg(q)), (neg(np_), neg(nq)), B - 1, C - 1)
    add((neg(qp), nqp), (neg(nqp), neg(nq)), B - A, B - A)
    add((neg(q), nq), (neg(n), neg(np_)), B - 1, B - 1)
    add((neg(n), neg(np_)), (p, q), C - 1, C - 1)
    add((qp, n), (neg(p), nq), 0, 0)
    add((q, n), (neg(p), np_), 0, 0)
    add((neg(p), np_), (neg(q), neg(qp)), A - 1, A - 1)
    add((neg(n), neg(nqp)), (p, nqp), C - 1, C - 1)
    add((neg(n), neg(nq)), (p, n), C - 1, C - 1)
    add((p, n), (neg(p), qp), 0, 0)
    return rows


def _g3_cycles(triple: AbcTriple):
    """Point-graph cycles: lists of (vertex members, digit label index)."""
    A, B, C = triple.A, triple.B, triple.C
    p, q, n, qp, nq, np_, nqp = _names(triple)
    neg = vec_neg
    return (
        (((neg(qp), nqp, p), B - A),
         ((neg(nqp), neg(nq), qp), C - B + A - 1),
         ((nqp, n, nq), 0),
         ((neg(nqp), neg(p), neg(n)), C - 1)),
        (((neg(qp), nqp, nq), B - A),
         ((neg(nqp), neg(nq), neg(n)), C - 1),
         ((nqp, n, p), 0),
         ((neg(nqp), neg(p), qp), C - B + A - 1)),
        (((neg(qp), nq, neg(q)), B - 1),
         ((neg(n), neg(nq), neg(np_)), C - 1),
         ((p, n, q), 0),
         ((neg(p), qp, np_), A - 1)),
        (((neg(q), nq, neg(p)), B - 1),
         ((neg(n), neg(np_), neg(qp)), C - 1),
         ((p, q, neg(nq)), C - B),
         ((qp, np_, n), 0)),
        (((qp, n, q), 0),
         ((neg(p), nq, np_), A - 1),
         ((neg(n), neg(qp), neg(q)), C - 1),
         ((neg(nq), p, neg(np_)), C - A)),
        (((nq, n, np_), 0),
         ((neg(n), neg(p), neg(q)), C - 1),
         ((neg(qp), p, neg(np_)), C - A),
         ((neg(nq), qp, q), C - B)),
    )


def expected_graph(p, which: str):
    """Instantiated edge table; which is contact, g2, or g3.

    contact edges are LabeledEdge objects over the origin-free contact set;
    g2 and g3 edges are (src, digit, dst) triples matching the level graphs.
    """
    triple = p if isinstance(p, AbcTriple) else AbcTriple(*p)
    if which == "contact":
        return tuple(sorted(_contact_edges(triple, include_origin=False)))
    if not predicts_14(triple):
        raise ValueError("edge tables for levels 2 and 3 require a "
                         "14-neighbor family member")
    digit = lambda i: (i, 0, 0)
    if which == "g2":
        edges = set()
        for src, dst, lo, hi in _g2_rows(triple):
            for i in range(lo, hi + 1):
                edges.add((src, digit(i), dst))
                edges.add((vertex_set(vec_neg(v) for v in src),
                           digit(triple.C - 1 - i),
                           vertex_set(vec_neg(v) for v in dst)))
        return tuple(sorted(edges))
    if which == "g3":
        edges = set()
        for cycle in _g3_cycles(triple):
            for idx, (members, label) in enumerate(cycle):
                nxt = cycle[(idx + 1) % len(cycle)][0]
                edges.add((vertex_set(members), digit(label), vertex_set(nxt)))
        return tuple(sorted(edges))
    raise ValueError(f"unknown table {which!r}")


@dataclass(frozen=True)
class ExpectedStructures:
    """All closed-form structures of one 14-neighbor family member."""

    triple: AbcTriple
    contact_points: tuple[Vec, ...]
    contact_edges: tuple[LabeledEdge, ...]
    g2_edges: tuple
    g3_edges: tuple


def expected_structures(p) -> ExpectedStructures:
    triple = p if isinstance(p, AbcTriple) else AbcTriple(*p)
    return ExpectedStructures(
        triple,
        expected_contact_set(triple),
        expected_graph(triple, "contact"),
        expected_graph(triple, "g2"),
        expected_graph(triple, "g3"),
    )


# ---------------------------------------------------------------------------
# sweep


@dataclass(frozen=True)
class SweepRecord:
    A: int
    B: int
    C: int
    neighbor_count: int
    predicted_14: bool
    agrees: bool
    contact_size: int
    g2_count: int
    g3_count: int
    g4_empty: bool
    euler: int
    audit_pass: bool
    message: str = ""


CSV_HEADER = ("A", "B", "C", "neighbor_count", "predicted_14", "agrees",
              "contact_size", "g2", "g3", "g4_empty", "euler", "audit_pass")


def _evaluate(triple: AbcTriple) -> SweepRecord:
    """Audit one triple.

    Levels 3 and 4 are only enumerated when the tile actually has 14
    neighbors: outside that family the power graphs are unbounded in the
    parameters (they reach 6 digits of vertices inside the C <= 12 box) and
    nothing constrains them.  Skipped fields carry the -1 sentinel.
    """
    t = analysis_for(triple)
    s_count = len(t.neighbors.points)
    predicted = predicts_14(triple)
    agrees = (s_count == 14) == predicted
    failures: list[str] = []

    if tuple(sorted(t.contact.points)) != expected_contact_set(triple):
        failures.append("contact set deviates from its closed form")
    if set(t.contact_graph.edges) != set(expected_graph(triple, "contact")):
        failures.append("contact edges deviate from the table")
    if triple.A < triple.B:
        if len(minkowski_sum(t.contact.points, t.contact.points)) != 65:
            failures.append("contact sumset does not have 65 points")
    elif s_count < 16:
        failures.append("A=B member with fewer than 16 neighbors")

    g2_count, g3_count, g4_empty, euler = -1, -1, False, -1
    if s_count == 14:
        g2, g3, g4 = t.level(2), t.level(3), t.level(4)
        g2_count, g3_count = len(g2.vertices), len(g3.vertices)
        g4_empty = not g4.vertices
        euler = s_count - g2_count + g3_count
        if predicted and set(g2.edges) != set(expected_graph(triple, "g2")):
            failures.append("arc-graph edges deviate from the table")
        if predicted and set(g3.edges) != set(expected_graph(triple, "g3")):
            failures.append("point-graph edges deviate from the table")
        if (g2_count, g3_count) != (36, 24):
            failures.append("level sizes are not 36 and 24")
        if not g4_empty:
            failures.append("level 4 is not empty")
        if euler != 2:
            failures.append(f"alternating census is {euler}, not 2")
        degs = tuple(sorted(sum(1 for v in g2.vertices if a in v)
                            for a in t.neighbors.points))
        if degs != (4,) * 6 + (6,) * 8:
            failures.append("arc membership degrees deviate")
        for name, check in (("successors", successor_paths_failure),
                            ("placement", four_fold_failure),
                            ("loops", loop_chains_failure),
                            ("points", walk_points_failure)):
            msg = check(t)
            if msg is not None:
                failures.append(f"{name}: {msg}")

    return SweepRecord(
        triple.A, triple.B, triple.C, s_count, predicted, agrees,
        len(t.contact.points), g2_count, g3_count, g4_empty, euler,
        not failures, "; ".join(failures),
    )


def _sweep_worker(abc: tuple[int, int, int]) -> SweepRecord:
    a, b, c = abc
    try:
        return _evaluate(AbcTriple(a, b, c))
    except Exception as exc:
        return SweepRecord(a, b, c, -1, False, False, -1, -1, -1, False, 0,
                           False, f"{type(exc).__name__}: {exc}")


def family_triples(a_max: int, b_max: int, c_max: int):
    """All (A, B, C) with 1 <= A <= B < C inside the box, in order."""
    return tuple((a, b, c)
                 for a in range(1, a_max + 1)
                 for b in range(a, b_max + 1)
                 for c in range(b + 1, c_max + 1))


def sweep(a_max: int = 12, b_max: int = 12, c_max: int = 12,
          parallelism: int = 1) -> tuple[SweepRecord, ...]:
    """Audit every family member in the box; order is deterministic."""
    triples = family_triples(a_max, b_max, c_max)
    if parallelism <= 1:
        return tuple(_sweep_worker(abc) for abc in triples)
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return tuple(pool.map(_sweep_worker, triples, chunksize=4))


def disagreements(records) -> tuple[SweepRecord, ...]:
    return tuple(r for r in records if not r.agrees)


def sweep_csv(records) -> str:
    """Render sweep records as CSV text with LF line endings."""
    lines = [",".join(CSV_HEADER)]
    for r in records:
        row = (r.A, r.B, r.C, r.neighbor_count, r.predicted_14, r.agrees,
               r.contact_size, r.g2_count, r.g3_count, r.g4_empty, r.euler,
               r.audit_pass)
        lines.append(",".join(str(x).lower() if isinstance(x, bool)
                              else str(x) for x in row))
    return "\n".join(lines) + "\n"
