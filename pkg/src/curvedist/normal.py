"""Normal coordinates for multicurves on a triangulated surface.

A multicurve is stored as one nonnegative integer weight per edge: the
number of transverse crossings of a normal representative with that edge.
In every triangle the three slot weights must have even sum and satisfy
the triangle inequalities, so that the corner-arc counts

    x_k = (w_{k-1} + w_k - w_{k+1}) / 2        (corner k, slots mod 3)

are nonnegative integers.  Weight vectors determine the multicurve up to
isotopy, and distinct essential classes have distinct vectors.  The only
normal curves that are not essential are the vertex links (trivial on a
closed surface, peripheral around a puncture), which ``canonicalize``
strips out.

Curves are also manipulated as *step words*: cyclic sequences of
``(triangle, in_slot, out_slot)`` triples recording the itinerary of a
loop transverse to the triangulation.  ``reduce_steps`` removes backtracks
(steps with ``in_slot == out_slot``) until the word is normal, which is
how derived curves (twists, region boundaries, enumerated candidates) get
converted back to coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidNormalCoordinates, TriangulationMismatch
from .surfaces import Triangulation


def check_weights(tri: Triangulation, weights) -> None:
    """Raise InvalidNormalCoordinates naming the first violated constraint."""
    if len(weights) != tri.num_edges:
        raise InvalidNormalCoordinates(
            f"expected {tri.num_edges} weights, got {len(weights)}"
        )
    if any(w < 0 for w in weights):
        raise InvalidNormalCoordinates("negative edge weight")
    for t, triangle in enumerate(tri.triangles):
        w = [weights[e] for e, _ in triangle]
        if sum(w) % 2 != 0:
            raise InvalidNormalCoordinates(f"odd weight sum in triangle {t}: {w}")
        for k in range(3):
            if w[k] > w[(k + 1) % 3] + w[(k + 2) % 3]:
                raise InvalidNormalCoordinates(
                    f"triangle inequality fails in triangle {t}: "
                    f"w[{k}]={w[k]} > {w[(k + 1) % 3]}+{w[(k + 2) % 3]}"
                )


def corner_counts(tri: Triangulation, weights, t: int):
    """Corner-arc counts (x_0, x_1, x_2) of triangle t."""
    w = [weights[e] for e, _ in tri.triangles[t]]
    return tuple((w[(k - 1) % 3] + w[k] - w[(k + 1) % 3]) // 2 for k in range(3))


@dataclass(frozen=True)
class NormalMulticurve:
    """An isotopy class of a multicurve, as per-edge crossing weights.

    Instances are immutable; the canonical form (no trivial or peripheral
    components) is produced by :func:`canonicalize`.
    """

    tri: Triangulation
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        check_weights(self.tri, self.weights)

    @property
    def is_empty(self) -> bool:
        return all(w == 0 for w in self.weights)

    def total_weight(self) -> int:
        return sum(self.weights)

    def key(self):
        return self.weights

    def same_triangulation(self, other: "NormalMulticurve") -> None:
        if self.tri != other.tri:
            raise TriangulationMismatch("curves live on different triangulations")

    def decompose(self):
        """Connected components as (component, multiplicity) pairs.

        Components are pairwise non-isotopic; multiplicities count parallel
        copies.  The weighted union of the parts reassembles the curve.
        """
        groups = {}
        order = []
        for strand in trace_strands(self.tri, self.weights):
            v = strand.weight_vector()
            if v not in groups:
                groups[v] = 0
                order.append(v)
            groups[v] += 1
        return [(NormalMulticurve(self.tri, v), groups[v]) for v in order]

    def is_connected(self) -> bool:
        parts = self.decompose()
        return len(parts) == 1 and parts[0][1] == 1

    def __str__(self):
        return "(" + ",".join(str(w) for w in self.weights) + ")"


class Strand:
    """One traced component: a cyclic sequence of steps through triangles.

    ``steps[i] = (t, in_slot, out_slot)`` means the loop enters triangle t
    through slot ``in_slot`` and leaves through ``out_slot``; the entry
    point of step i+1 is glued to the exit of step i.  ``in_positions[i]``
    is the (edge, position) of the entry point in the traced realization.
    """

    __slots__ = ("tri", "steps", "in_positions")

    def __init__(self, tri: Triangulation, steps, in_positions=None):
        self.tri = tri
        self.steps = list(steps)
        self.in_positions = list(in_positions) if in_positions else []

    def __len__(self):
        return len(self.steps)

    def weight_vector(self):
        w = [0] * self.tri.num_edges
        for t, s_in, _ in self.steps:
            e, _ = self.tri.triangles[t][s_in]
            w[e] += 1
        return tuple(w)

    def check_closed(self):
        for i, (t, _, s_out) in enumerate(self.steps):
            t2, s2 = self.tri.opposite(t, s_out)
            nt, ns, _ = (*self.steps[(i + 1) % len(self.steps)],)
            if (t2, s2) != (nt, ns):
                raise AssertionError("step word is not a closed transverse loop")


def _side_pos_to_edge_pos(sign, w, j):
    return j if sign == 1 else w + 1 - j


def _edge_pos_to_side_pos(sign, w, q):
    return q if sign == 1 else w + 1 - q


def _in_triangle_partner(tri, weights, t, slot, j):
    """Partner of side-pos j on side ``slot`` under the corner arcs of t.

    Returns (other_slot, other_side_pos).
    """
    x = corner_counts(tri, weights, t)
    w = [weights[e] for e, _ in tri.triangles[t]]
    if j <= x[slot]:
        other = (slot - 1) % 3
        return other, w[other] + 1 - j
    i = w[slot] + 1 - j
    other = (slot + 1) % 3
    return other, i


def trace_strands(tri: Triangulation, weights):
    """Split a weight vector into its connected components.

    Returns a list of Strands; raises InvalidNormalCoordinates when the
    vector is not realizable.
    """
    check_weights(tri, weights)
    # occurrence lookup: edge -> ((t, slot, sign), (t, slot, sign))
    visited = set()  # (edge, pos, occurrence_index) arc-ends already used
    strands = []
    for e0 in range(tri.num_edges):
        for q0 in range(1, weights[e0] + 1):
            for oi0 in range(2):
                if (e0, q0, oi0) in visited:
                    continue
                # walk the loop: at (edge, pos) about to traverse the arc in
                # occurrence oi of that edge.
                steps = []
                in_positions = []
                e, q, oi = e0, q0, oi0
                while (e, q, oi) not in visited:
                    visited.add((e, q, oi))
                    t, slot, sign = tri.edge_occurrences[e][oi]
                    j = _edge_pos_to_side_pos(sign, weights[e], q)
                    slot2, j2 = _in_triangle_partner(tri, weights, t, slot, j)
                    e2, sign2 = tri.triangles[t][slot2]
                    q2 = _side_pos_to_edge_pos(sign2, weights[e2], j2)
                    steps.append((t, slot, slot2))
                    in_positions.append((e, q))
                    # mark the same arc as seen from its far end (reverse
                    # traversal), so each loop is traced only once
                    oi_rev = next(
                        i
                        for i, (tt, ss, _) in enumerate(tri.edge_occurrences[e2])
                        if (tt, ss) == (t, slot2)
                    )
                    visited.add((e2, q2, oi_rev))
                    # continue out of the other side of e2
                    e, q, oi = e2, q2, 1 - oi_rev
                strands.append(Strand(tri, steps, in_positions))
    return strands


# -- step words --------------------------------------------------------------


def steps_are_closed(tri: Triangulation, steps) -> bool:
    n = len(steps)
    for i, (t, _, s_out) in enumerate(steps):
        nt, ns, _ = steps[(i + 1) % n]
        if tri.opposite(t, s_out) != (nt, ns):
            return False
    return True


def reduce_steps(tri: Triangulation, steps):
    """Remove backtracks from a cyclic step word.

    A backtrack is a step entering and leaving through the same slot; it is
    isotoped across the edge, merging its neighbours.  The result is either
    empty (the loop was null-homotopic into an edge) or a normal loop.
    """
    word = list(steps)
    changed = True
    while changed and word:
        changed = False
        n = len(word)
        for i in range(n):
            t, a, b = word[i]
            if a != b:
                continue
            if n == 1:
                word = []
            else:
                p = (i - 1) % n
                q = (i + 1) % n
                tp, ap, _ = word[p]
                tq, _, bq = word[q]
                assert tp == tq, "backtrack neighbours must share a triangle"
                merged = (tp, ap, bq)
                if q == p:  # two-step word collapsing to one step
                    word = [merged]
                else:
                    keep = [word[k] for k in range(n) if k not in (i, p, q)]
                    # insert merged at the position of p, preserving cyclic order
                    out = []
                    for k in range(n):
                        if k == p:
                            out.append(merged)
                        elif k in (i, q):
                            continue
                        else:
                            out.append(word[k])
                    word = out
                    del keep
            changed = True
            break
    return word


def steps_to_weights(tri: Triangulation, steps):
    w = [0] * tri.num_edges
    for t, s_in, _ in steps:
        e, _ = tri.triangles[t][s_in]
        w[e] += 1
    return tuple(w)


def class_of_steps(tri: Triangulation, steps):
    """Normal coordinates of the loop a cyclic step word represents.

    Returns the zero vector when the loop is trivial enough to vanish into
    an edge.  The result may still be a vertex link; feed it through
    ``canonicalize`` to test essentialness.
    """
    reduced = reduce_steps(tri, steps)
    if not reduced:
        return tuple([0] * tri.num_edges)
    return steps_to_weights(tri, reduced)


# -- canonical form ----------------------------------------------------------


@dataclass(frozen=True)
class CanonicalizationCensus:
    """What was removed while canonicalizing a raw weight vector."""

    trivial: int
    peripheral: tuple  # (vertex id, multiplicity) pairs

    @property
    def removed_anything(self) -> bool:
        return self.trivial > 0 or bool(self.peripheral)


def canonicalize(tri: Triangulation, weights):
    """Essential part of a weight vector, plus a census of what was dropped.

    Vertex-link components bound discs (closed surfaces) or once-punctured
    discs (ideal vertices) and are removed; everything else is essential.
    Idempotent.
    """
    check_weights(tri, weights)
    links = tri.all_link_vectors()
    kept = [0] * tri.num_edges
    trivial = 0
    peripheral = {}
    for strand in trace_strands(tri, weights):
        v = strand.weight_vector()
        if v in links:
            if tri.is_ideal:
                vert = links[v]
                peripheral[vert] = peripheral.get(vert, 0) + 1
            else:
                trivial += 1
            continue
        for e in range(tri.num_edges):
            kept[e] += v[e]
    census = CanonicalizationCensus(trivial, tuple(sorted(peripheral.items())))
    return NormalMulticurve(tri, tuple(kept)), census


def multicurve(tri: Triangulation, weights) -> NormalMulticurve:
    """Canonical multicurve from a raw weight vector (census discarded)."""
    curve, _ = canonicalize(tri, weights)
    return curve


def empty_multicurve(tri: Triangulation) -> NormalMulticurve:
    return NormalMulticurve(tri, tuple([0] * tri.num_edges))
