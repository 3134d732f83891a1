"""Region census of an arrangement.

The arrangement's strands, together with the triangulation skeleton, cut
the surface into disc cells.  This module builds that cell complex
explicitly (vertices, edge pieces, chord segments, rotations), traces its
faces, and merges cells across skeleton pieces to recover the regions
complementary to the curves alone.  Each region is reported with its
Euler characteristic, punctures, and boundary circles as explicit walks,
which is enough to classify it (disc, once-punctured disc, annulus, ...)
and to detect bigons.

Node kinds: ('v', vertex), ('p', point id), ('x', crossing index).
Edge kinds: ('gap', edge, i) for the i-th piece of a triangulation edge,
('seg', strand, step, j) for the j-th piece of a chord.  A dart is
(edge_key, direction); direction 0 runs from the canonical tail (lower
end of a gap, entry end of a segment).
"""

from __future__ import annotations

from fractions import Fraction


def _pos_point(k):
    return (k, k * k)


def _seg_param(pa, pb, qa, qb):
    """Parameter along segment pa->pb of its crossing with qa->qb."""
    (x1, y1), (x2, y2) = pa, pb
    (x3, y3), (x4, y4) = qa, qb
    dx1, dy1 = x2 - x1, y2 - y1
    dx2, dy2 = x4 - x3, y4 - y3
    den = dx2 * dy1 - dy2 * dx1
    num = dx2 * (y3 - y1) - dy2 * (x3 - x1)
    assert den != 0, "interleaved chords must cross transversally"
    return Fraction(num, den)


class Arc:
    """A maximal run of one strand along a region boundary circle."""

    __slots__ = ("sid", "chord_steps", "interior_points", "darts")

    def __init__(self, sid, chord_steps, interior_points, darts):
        self.sid = sid
        self.chord_steps = chord_steps
        self.interior_points = interior_points
        self.darts = darts


class Circle:
    """One boundary circle of a region: the contracted dart walk.

    ``junctions[i]`` is the node where the walk pivots after ``darts[i]``;
    it is a crossing node exactly when ``hops[i]`` is empty, and a pierce
    point otherwise (the walk slips past it across ``hops[i]``, pieces of
    triangulation edges interior to the region).
    """

    __slots__ = ("darts", "junctions", "hops", "arcs")

    def __init__(self, darts, junctions, hops):
        self.darts = darts
        self.junctions = junctions
        self.hops = hops
        self.arcs = []

    @property
    def crossing_junctions(self):
        return [n for n in self.junctions if n[0] == "x"]


class Region:
    __slots__ = (
        "rid",
        "cells",
        "gaps",
        "vertices",
        "punctures",
        "chi",
        "circles",
    )

    def __init__(self, rid):
        self.rid = rid
        self.cells = 0
        self.gaps = 0
        self.vertices = []
        self.punctures = 0
        self.chi = 0
        self.circles = []

    @property
    def boundary_count(self):
        return len(self.circles)

    def classification(self):
        g = (2 - self.chi - self.boundary_count) // 2
        if self.chi == 1 and self.punctures == 0:
            return "disc"
        if self.chi == 1 and self.punctures == 1:
            return "once-punctured disc"
        if self.chi == 0 and self.punctures == 0 and g == 0:
            return "annulus"
        return "essential"


class Census:
    def __init__(self, arr):
        self.arr = arr
        self.tri = arr.tri
        self._build_crossings()
        self._build_graph()
        self._trace_faces()
        self._merge_regions()
        self._trace_boundaries()

    # -- crossings -------------------------------------------------------

    def _build_crossings(self):
        arr = self.arr
        self.crossings = []  # (chordA, chordB, triangle); chord = (sid, step)
        self.chord_cross = {}  # chord -> list of (param, crossing index)
        for t in range(self.tri.num_triangles):
            chords, _boundary = arr.chords_in(t)
            coords = {}
            for sid, i, a, b in chords:
                coords[(sid, i)] = (a, b)
            m = len(chords)
            for u in range(m):
                s1, i1, a1, b1 = chords[u]
                for v in range(u + 1, m):
                    s2, i2, a2, b2 = chords[v]
                    if not arr._interleaved(a1, b1, a2, b2):
                        continue
                    cid = len(self.crossings)
                    self.crossings.append(((s1, i1), (s2, i2), t))
                    p1, p2 = _pos_point(a1), _pos_point(b1)
                    q1, q2 = _pos_point(a2), _pos_point(b2)
                    tA = _seg_param(p1, p2, q1, q2)
                    tB = _seg_param(q1, q2, p1, p2)
                    self.chord_cross.setdefault((s1, i1), []).append((tA, cid))
                    self.chord_cross.setdefault((s2, i2), []).append((tB, cid))
        for lst in self.chord_cross.values():
            lst.sort()
        self._chord_pos = {}
        for t in range(self.tri.num_triangles):
            chords, _ = arr.chords_in(t)
            for sid, i, a, b in chords:
                self._chord_pos[(sid, i)] = (t, a, b)

    def chord_segments(self, chord):
        """Node chain along a chord: in-point, crossings in order, out-point."""
        sid, i = chord
        arr = self.arr
        strand = arr.strands[sid]
        n = len(strand.steps)
        nodes = [("p", strand.pts[i])]
        for _param, cid in self.chord_cross.get(chord, ()):
            nodes.append(("x", cid))
        nodes.append(("p", strand.pts[(i + 1) % n]))
        return nodes

    # -- graph -----------------------------------------------------------

    def _gap_ends(self, e, i):
        pts = self.arr.edge_points[e]
        tail_v, head_v = self.tri.edge_endpoints(e)
        lower = ("p", pts[i - 1]) if i > 0 else ("v", tail_v)
        upper = ("p", pts[i]) if i < len(pts) else ("v", head_v)
        return lower, upper

    def _build_graph(self):
        arr = self.arr
        tri = self.tri
        self.dart_head = {}
        self.rotation = {}
        self.wedge_triangle = {}  # (v-node, outgoing dart) -> triangle of wedge before it

        def reverse(d):
            return (d[0], 1 - d[1])

        self.reverse = reverse
        ends = {}  # edge_key -> (tail node, head node)

        for e in range(tri.num_edges):
            for i in range(len(arr.edge_points[e]) + 1):
                ends[("gap", e, i)] = self._gap_ends(e, i)
        for strand in arr.strands:
            for i in range(len(strand.steps)):
                chain = self.chord_segments((strand.sid, i))
                for j in range(len(chain) - 1):
                    ends[("seg", strand.sid, i, j)] = (chain[j], chain[j + 1])
        self.edge_ends = ends
        for key, (a, b) in ends.items():
            self.dart_head[(key, 0)] = b
            self.dart_head[(key, 1)] = a

        rot = {}

        # point nodes
        for e in range(tri.num_edges):
            pts = arr.edge_points[e]
            occ = tri.edge_occurrences[e]
            t_plus = next((t, s) for (t, s, sg) in occ if sg == 1)
            t_minus = next((t, s) for (t, s, sg) in occ if sg == -1)
            for idx, pid in enumerate(pts):
                sid, i = arr.point_owner[pid]
                strand = arr.strands[sid]
                n = len(strand.steps)
                step_in = i  # chord (sid, i) starts at pid
                step_out = (i - 1) % n  # chord (sid, i-1) ends at pid
                t_in = strand.steps[step_in][0]
                in_slot = strand.steps[step_in][1]
                dart_in = (("seg", sid, step_in, 0), 0)
                last_j = len(self.chord_segments((sid, step_out))) - 2
                dart_out = (("seg", sid, step_out, last_j), 1)
                if (t_in, in_slot) == t_plus:
                    chord_plus, chord_minus = dart_in, dart_out
                else:
                    chord_plus, chord_minus = dart_out, dart_in
                up = (("gap", e, idx + 1), 0)
                down = (("gap", e, idx), 1)
                rot[("p", pid)] = [up, chord_plus, down, chord_minus]

        # crossing nodes
        for cid, (chA, chB, t) in enumerate(self.crossings):
            tA, aA, bA = self._chord_pos[chA]
            tB, aB, bB = self._chord_pos[chB]
            assert tA == tB == t
            jA = [k for k, (_p, c) in enumerate(self.chord_cross[chA]) if c == cid][0]
            jB = [k for k, (_p, c) in enumerate(self.chord_cross[chB]) if c == cid][0]
            toward_a = (("seg", chA[0], chA[1], jA), 1)
            toward_b = (("seg", chA[0], chA[1], jA + 1), 0)
            toward_c = (("seg", chB[0], chB[1], jB), 1)
            toward_d = (("seg", chB[0], chB[1], jB + 1), 0)
            boundary_len = 3 + sum(
                len(arr.edge_points[tri.triangles[t][k][0]]) for k in range(3)
            )
            # is B's entry endpoint inside the ccw arc from a to b?
            span = (bA - aA) % boundary_len
            inside = (aB - aA) % boundary_len < span
            if inside:
                rot[("x", cid)] = [toward_a, toward_c, toward_b, toward_d]
            else:
                rot[("x", cid)] = [toward_a, toward_d, toward_b, toward_c]

        # vertex nodes: counterclockwise wedge walk
        seen = set()
        for t0 in range(tri.num_triangles):
            for k0 in range(3):
                if (t0, k0) in seen:
                    continue
                v = tri.vertex_of_corner[(t0, k0)]
                cycle = []
                cur = (t0, k0)
                while cur not in seen:
                    seen.add(cur)
                    cycle.append(cur)
                    t, k = cur
                    cur = tri.opposite(t, (k - 1) % 3)
                darts = []
                for (t, k) in cycle:
                    e, sign = tri.triangles[t][(k - 1) % 3]
                    m = len(arr.edge_points[e])
                    if sign == 1:
                        d = (("gap", e, m), 1)  # v at intrinsic head
                    else:
                        d = (("gap", e, 0), 0)  # v at intrinsic tail
                    darts.append(d)
                    self.wedge_triangle[(("v", v), d)] = t
                rot[("v", v)] = darts
        self.rotation = rot

        # sanity: rotations cover exactly the darts incident to each node
        incident = {}
        for key, (a, b) in ends.items():
            incident.setdefault(a, set()).add((key, 0))
            incident.setdefault(b, set()).add((key, 1))
        for node, darts in rot.items():
            assert incident.get(node, set()) == set(darts), (
                f"rotation mismatch at {node}: {sorted(incident.get(node, set()))} vs {sorted(darts)}"
            )

    # -- faces -----------------------------------------------------------

    def _next_face_dart(self, d):
        node = self.dart_head[d]
        r = self.rotation[node]
        rev = self.reverse(d)
        i = r.index(rev)
        return r[(i - 1) % len(r)]

    def _trace_faces(self):
        self.face_of = {}
        self.faces = []
        for d0 in self.dart_head:
            if d0 in self.face_of:
                continue
            fid = len(self.faces)
            walk = []
            d = d0
            while d not in self.face_of:
                self.face_of[d] = fid
                walk.append(d)
                d = self._next_face_dart(d)
            assert d == d0, "face walk did not close"
            self.faces.append(walk)
        V = len(self.rotation)
        E = len(self.edge_ends)
        F = len(self.faces)
        g = self.tri.surface.genus
        assert V - E + F == 2 - 2 * g, f"cell complex is inconsistent: {V}-{E}+{F} != {2 - 2 * g}"
        # triangle of each cell
        self.face_triangle = [None] * F
        for fid, walk in enumerate(self.faces):
            t_found = None
            for idx, d in enumerate(walk):
                if d[0][0] == "seg":
                    sid, i = d[0][1], d[0][2]
                    t_found = self._chord_pos[(sid, i)][0]
                    break
            if t_found is None:
                for idx, d in enumerate(walk):
                    node = self.dart_head[d]
                    if node[0] == "v":
                        nxt = walk[(idx + 1) % len(walk)]
                        t_found = self.wedge_triangle.get((node, nxt))
                        if t_found is not None:
                            break
            assert t_found is not None, "cell without triangle context"
            self.face_triangle[fid] = t_found

    # -- regions ---------------------------------------------------------

    def _merge_regions(self):
        parent = list(range(len(self.faces)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        gap_keys = [k for k in self.edge_ends if k[0] == "gap"]
        for k in gap_keys:
            union(self.face_of[(k, 0)], self.face_of[(k, 1)])
        self._find = find

        regions = {}
        for fid in range(len(self.faces)):
            root = find(fid)
            if root not in regions:
                regions[root] = Region(len(regions))
            regions[root].cells += 1
        for k in gap_keys:
            regions[find(self.face_of[(k, 0)])].gaps += 1
        for node in self.rotation:
            if node[0] != "v":
                continue
            roots = {find(self.face_of[d]) for d in self.rotation[node]}
            assert len(roots) == 1, "vertex adjacent to several regions"
            reg = regions[roots.pop()]
            reg.vertices.append(node[1])
        for reg in regions.values():
            reg.punctures = len(reg.vertices) if self.tri.is_ideal else 0
            reg.chi = reg.cells - reg.gaps + len(reg.vertices)
        self._root_region = regions
        self.regions = list(regions.values())
        self.region_of_face = {fid: regions[find(fid)] for fid in range(len(self.faces))}

    def region_of_dart(self, d):
        return self.region_of_face[self.face_of[d]]

    def region_of_gap(self, e, i):
        return self.region_of_dart((("gap", e, i), 0))

    # -- boundary circles --------------------------------------------------

    def _next_region_dart(self, d):
        """Next seg dart along the region boundary, plus the hopped gaps.

        Gluing cells across a gap splices their face walks: what follows a
        gap dart on the merged boundary is whatever follows its reverse in
        the neighbouring cell.
        """
        hops = []
        x = self._next_face_dart(d)
        guard = 0
        while x[0][0] == "gap":
            hops.append(x)
            x = self._next_face_dart(self.reverse(x))
            guard += 1
            if guard > len(self.edge_ends) + 1:
                raise AssertionError("region boundary walk stuck in gaps")
        return x, hops

    def _trace_boundaries(self):
        seg_darts = [d for d in self.dart_head if d[0][0] == "seg"]
        seen = set()
        for d0 in seg_darts:
            if d0 in seen:
                continue
            darts = []
            junctions = []
            hoplists = []
            d = d0
            while d not in seen:
                seen.add(d)
                darts.append(d)
                junctions.append(self.dart_head[d])
                d2, hops = self._next_region_dart(d)
                hoplists.append(hops)
                d = d2
            assert d == d0, "boundary walk did not close"
            circle = Circle(darts, junctions, hoplists)
            self._split_arcs(circle)
            region = self.region_of_dart(d0)
            region.circles.append(circle)

    def _split_arcs(self, circle):
        n = len(circle.darts)
        # breakpoints: indices i such that the junction after darts[i] is a
        # crossing (the walk switches strands there)
        breaks = [i for i in range(n) if circle.junctions[i][0] == "x"]
        arcs = []
        if not breaks:
            arcs.append(self._make_arc(circle.darts, closed=True))
        else:
            for bi in range(len(breaks)):
                start = (breaks[bi] + 1) % n
                end = breaks[(bi + 1) % len(breaks)]
                run = []
                i = start
                while True:
                    run.append(circle.darts[i])
                    if i == end:
                        break
                    i = (i + 1) % n
                arcs.append(self._make_arc(run, closed=False))
        circle.arcs = arcs

    def _make_arc(self, darts, closed):
        sid = darts[0][0][1]
        chord_steps = []
        interior = []
        for d in darts:
            key, _dirn = d
            assert key[0] == "seg" and key[1] == sid, "arc mixes strands"
            step = key[2]
            if not chord_steps or chord_steps[-1] != step:
                chord_steps.append(step)
        # interior pierce points: heads of darts that are 'p' nodes, except
        # the final dart's head when the arc is open (that junction is a
        # crossing, handled by the split) -- for open arcs every dart head
        # that is a 'p' node is interior except after the last dart.
        for idx, d in enumerate(darts):
            if closed or idx < len(darts) - 1:
                node = self.dart_head[d]
                if node[0] == "p":
                    interior.append(node[1])
        return Arc(sid, chord_steps, interior, list(darts))

    # -- queries -----------------------------------------------------------

    def find_bigon(self):
        for reg in self.regions:
            if reg.chi != 1 or reg.punctures != 0 or len(reg.circles) != 1:
                continue
            circle = reg.circles[0]
            xs = [j for j in circle.junctions if j[0] == "x"]
            if len(xs) == 2 and len(circle.arcs) == 2:
                a1, a2 = circle.arcs
                assert a1.sid != a2.sid, "bigon arcs on one strand"
                return reg
            assert len(xs) != 1, "monogon region found"
        return None

    def region_arcs(self, region):
        return region.circles[0].arcs

    def is_filling(self):
        return all(r.classification() in ("disc", "once-punctured disc") for r in self.regions)

    def bigon_free(self):
        return self.find_bigon() is None

    def point_gap_regions(self, pid):
        """Regions of the gaps just below and above point pid on its edge."""
        e = self.arr.point_edge[pid]
        idx = self.arr.edge_points[e].index(pid)
        return self.region_of_gap(e, idx), self.region_of_gap(e, idx + 1)

    # -- push-off words ------------------------------------------------------

    def circle_pushoff_steps(self, circle):
        """Step word of a curve parallel to a boundary circle, pushed into
        the region the circle bounds."""
        letters = []  # (edge crossed, chamber face entered)
        n = len(circle.darts)
        for i in range(n):
            hops = circle.hops[i]
            for h, gap_dart in enumerate(hops):
                e = gap_dart[0][1]
                if h + 1 < len(hops):
                    chamber = self.face_of[hops[h + 1]]
                else:
                    chamber = self.face_of[circle.darts[(i + 1) % n]]
                letters.append((e, chamber))
        if not letters:
            return []
        steps = []
        m = len(letters)
        for j in range(m):
            e_in, chamber = letters[j]
            e_out, _ = letters[(j + 1) % m]
            t = self.face_triangle[chamber]
            slots_in = [s for s in range(3) if self.tri.triangles[t][s][0] == e_in]
            slots_out = [s for s in range(3) if self.tri.triangles[t][s][0] == e_out]
            assert len(slots_in) == 1 and len(slots_out) == 1, (
                "push-off through a triangle with a repeated edge"
            )
            steps.append((t, slots_in[0], slots_out[0]))
        return steps
