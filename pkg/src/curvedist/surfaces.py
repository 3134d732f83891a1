"""Surfaces and their canonical triangulations.

A surface is an oriented closed genus-g surface with a finite set of
punctures.  Only non-exceptional surfaces (complexity C = 3g + p - 4 > 0)
are allowed; everything else in the package works relative to a fixed
triangulation of such a surface:

* punctured surfaces carry an ideal triangulation whose vertices are
  exactly the punctures;
* closed surfaces carry a one-vertex triangulation.

Both choices give unique normal representatives for essential multicurves,
which is what the curve machinery relies on.

Conventions.  A triangle has three slots 0, 1, 2; its boundary traversed
counterclockwise is side 0, side 1, side 2, and corner k is the tail of
side k (equivalently the head of side k-1).  Each side references an edge
with a sign: +1 if the counterclockwise traversal agrees with the edge's
intrinsic orientation.  On an oriented surface every edge appears in
exactly two slots, once with each sign.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ExceptionalSurface, InvalidTriangulation


@dataclass(frozen=True)
class SurfaceSpec:
    """An oriented surface of given genus with a set of punctures."""

    genus: int
    punctures: int

    @property
    def complexity(self) -> int:
        """Simplicial dimension of the curve complex: 3(g-1) + p - 1."""
        return 3 * (self.genus - 1) + self.punctures - 1

    @property
    def euler_char(self) -> int:
        """Euler characteristic of the punctured surface, 2 - 2g - p."""
        return 2 - 2 * self.genus - self.punctures

    def __str__(self):
        return f"S_{{{self.genus},{self.punctures}}}"


def make_surface(genus: int, punctures: int) -> SurfaceSpec:
    """Build a SurfaceSpec, rejecting exceptional (genus, punctures) pairs.

    A surface is exceptional exactly when 3*genus + punctures < 5, i.e. a
    sphere with at most four punctures or a torus with at most one.
    """
    if genus < 0 or punctures < 0:
        raise ExceptionalSurface(genus, punctures, "negative genus or puncture count")
    if 3 * genus + punctures < 5:
        if genus == 0:
            family = "sphere with at most 4 punctures"
        else:
            family = "torus with at most 1 puncture"
        raise ExceptionalSurface(genus, punctures, family)
    return SurfaceSpec(genus, punctures)


class Triangulation:
    """A triangulation of a surface, given as signed edge triples.

    ``triangles[t]`` is a triple of ``(edge, sign)`` pairs, one per slot.
    Immutable after construction; all derived tables are precomputed.
    """

    def __init__(self, surface: SurfaceSpec, triangles):
        self.surface = surface
        self.triangles = tuple(tuple((int(e), int(s)) for (e, s) in tri) for tri in triangles)
        for tri in self.triangles:
            if len(tri) != 3:
                raise InvalidTriangulation("each triangle needs exactly 3 sides")
            for e, s in tri:
                if s not in (1, -1):
                    raise InvalidTriangulation(f"side sign must be +1 or -1, got {s}")
        edges = set()
        for tri in self.triangles:
            for e, _ in tri:
                if e < 0:
                    raise InvalidTriangulation("edge indices must be nonnegative")
                edges.add(e)
        if edges and edges != set(range(max(edges) + 1)):
            raise InvalidTriangulation("edge indices must be 0..E-1 without gaps")
        self.num_edges = len(edges)
        self.num_triangles = len(self.triangles)

        # Occurrences of each edge: map edge -> list of (triangle, slot, sign).
        occ = [[] for _ in range(self.num_edges)]
        for t, tri in enumerate(self.triangles):
            for s, (e, sign) in enumerate(tri):
                occ[e].append((t, s, sign))
        self.edge_occurrences = [tuple(o) for o in occ]
        for e, o in enumerate(self.edge_occurrences):
            if len(o) != 2:
                raise InvalidTriangulation(f"edge {e} used {len(o)} times, expected 2")
            if o[0][2] + o[1][2] != 0:
                raise InvalidTriangulation(
                    f"edge {e} must be traversed once in each direction (oriented gluing)"
                )

        # Slot gluing: the paired occurrence of each (triangle, slot).
        glued = {}
        for o in self.edge_occurrences:
            (t0, s0, _), (t1, s1, _) = o
            glued[(t0, s0)] = (t1, s1)
            glued[(t1, s1)] = (t0, s0)
        self._glued = glued

        self._compute_vertices()

    # -- basic combinatorics -------------------------------------------------

    def side(self, t: int, s: int):
        return self.triangles[t][s]

    def opposite(self, t: int, s: int):
        """The (triangle, slot) glued to slot s of triangle t."""
        return self._glued[(t, s)]

    def _compute_vertices(self):
        # Corner (t, k) sits between side k-1 (head) and side k (tail).
        # Rotating across side k: its tail matches the head of the glued
        # side (t', s'), i.e. corner (t', s'+1).
        corners = [(t, k) for t in range(self.num_triangles) for k in range(3)]
        nxt = {}
        for t, k in corners:
            t2, s2 = self.opposite(t, k)
            nxt[(t, k)] = (t2, (s2 + 1) % 3)
        vid = {}
        n = 0
        for c in corners:
            if c in vid:
                continue
            cur = c
            while cur not in vid:
                vid[cur] = n
                cur = nxt[cur]
            n += 1
        self.vertex_of_corner = vid
        self.num_vertices = n

    @property
    def is_ideal(self) -> bool:
        return self.surface.punctures > 0

    def edge_endpoints(self, e: int):
        """Vertex ids at the tail and head of edge e (intrinsic orientation)."""
        (t, s, sign) = self.edge_occurrences[e][0] if self.edge_occurrences[e][0][2] == 1 else self.edge_occurrences[e][1]
        # side (t, s) runs corner s -> corner s+1 and agrees with e.
        tail = self.vertex_of_corner[(t, s)]
        head = self.vertex_of_corner[(t, (s + 1) % 3)]
        return tail, head

    def vertex_link_vector(self, v: int):
        """Edge weights of the small circle around vertex v.

        The link crosses each edge once near each endpoint lying at v.
        """
        w = [0] * self.num_edges
        for e in range(self.num_edges):
            tail, head = self.edge_endpoints(e)
            w[e] += (tail == v) + (head == v)
        return tuple(w)

    def all_link_vectors(self):
        return {self.vertex_link_vector(v): v for v in range(self.num_vertices)}

    # -- identity ------------------------------------------------------------

    def _key(self):
        return (self.surface, self.triangles)

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"Triangulation({self.surface}, {self.num_triangles} triangles, "
            f"{self.num_edges} edges, {self.num_vertices} vertices)"
        )


# -- canonical triangulations ----------------------------------------------


def _fan_once_punctured(genus: int):
    """Fan triangulation of the standard 4g-gon (all corners one vertex).

    Edges 0..2g-1 are the identified polygon pairs (A_1, B_1, A_2, ...);
    edges 2g..6g-4 are the fan diagonals D_2..D_{4g-2} from polygon vertex 0.
    """
    n = 4 * genus
    # polygon position i -> (edge, sign)
    def poly(i):
        k, r = divmod(i, 4)
        if r == 0:
            return (2 * k, 1)
        if r == 1:
            return (2 * k + 1, 1)
        if r == 2:
            return (2 * k, -1)
        return (2 * k + 1, -1)

    def diag(i):  # D_i, i = 2..n-2, oriented v0 -> v_i
        return 2 * genus + (i - 2)

    tris = []
    for i in range(1, n - 1):
        if i == 1:
            tris.append((poly(0), poly(1), (diag(2), -1)))
        elif i == n - 2:
            tris.append(((diag(i), 1), poly(i), poly(i + 1)))
        else:
            tris.append(((diag(i), 1), poly(i), (diag(i + 1), -1)))
    num_edges = 2 * genus + (n - 3)
    return tris, num_edges


def _cone_subdivide(tris, num_edges, t_index):
    """Replace triangle t_index by its cone to a new interior vertex."""
    s0, s1, s2 = tris[t_index]
    f0, f1, f2 = num_edges, num_edges + 1, num_edges + 2
    new = [
        (s0, (f1, 1), (f0, -1)),
        (s1, (f2, 1), (f1, -1)),
        (s2, (f0, 1), (f2, -1)),
    ]
    out = list(tris)
    out[t_index : t_index + 1] = new
    return out, num_edges + 3


def _doubled_fan_sphere(p: int):
    """Two fan-triangulated p-gons glued along their boundary.

    Edges 0..p-1 are the boundary edges b_i (v_i -> v_{i+1}); edges
    p..2p-4 are the front diagonals D_2..D_{p-2}; edges 2p-3..3p-7 the
    back diagonals E_2..E_{p-2}.
    """
    def b(i):
        return i % p

    def D(i):
        return p + (i - 2)

    def E(i):
        return (2 * p - 3) + (i - 2)

    tris = []
    for i in range(1, p - 1):  # front fan A_i = (v0, v_i, v_{i+1})
        a = (b(0), 1) if i == 1 else ((D(i), 1))
        c = (b(p - 1), 1) if i == p - 2 else ((D(i + 1), -1))
        tris.append((a, (b(i), 1), c))
    for i in range(1, p - 1):  # back fan B_i = (v0, v_{i+1}, v_i)
        a = (b(p - 1), -1) if i == p - 2 else ((E(i + 1), 1))
        c = (b(0), -1) if i == 1 else ((E(i), -1))
        tris.append((a, (b(i), -1), c))
    return tris, 3 * p - 6


def canonical_triangulation(surface: SurfaceSpec) -> Triangulation:
    """The package's fixed triangulation for each (genus, punctures).

    Deterministic and stable across runs:

    * genus 0: doubled fan of a p-gon (ideal, p vertices);
    * genus g >= 1, p >= 1: fan of the standard 4g-gon (one ideal vertex),
      with p-1 cone subdivisions applied repeatedly to the last triangle;
    * closed genus g >= 2: fan of the standard 4g-gon (one vertex).

    Edge indexing is documented in the README.
    """
    g, p = surface.genus, surface.punctures
    if g == 0:
        tris, ne = _doubled_fan_sphere(p)
    else:
        tris, ne = _fan_once_punctured(g)
        for _ in range(max(0, p - 1)):
            tris, ne = _cone_subdivide(tris, ne, len(tris) - 1)
    tri = Triangulation(surface, tris)
    report = validate_triangulation(tri)
    if not report.all_ok:
        raise InvalidTriangulation(f"canonical triangulation failed checks: {report}")
    return tri


# -- validation --------------------------------------------------------------


@dataclass
class TriangulationReport:
    """Outcome of the structural checks on a triangulation."""

    checks: list

    @property
    def all_ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failed(self):
        return [(name, detail) for name, ok, detail in self.checks if not ok]

    def __str__(self):
        return "; ".join(f"{name}: {'ok' if ok else 'FAIL (' + detail + ')'}" for name, ok, detail in self.checks)


def validate_triangulation(tri: Triangulation) -> TriangulationReport:
    """Check gluing consistency, Euler count and vertex policy.

    Report-style: never raises, lists each failed check.  (Structural
    problems like an edge used once are caught at construction; here we
    re-derive them from raw counts so hand-built data can be audited.)
    """
    checks = []
    g, p = tri.surface.genus, tri.surface.punctures

    counts = [len(o) for o in tri.edge_occurrences]
    ok = all(c == 2 for c in counts)
    checks.append(("edge pairing", ok, f"occurrence counts {counts}" if not ok else ""))

    ok = all(o[0][2] + o[1][2] == 0 for o in tri.edge_occurrences)
    checks.append(("orientation", ok, "some edge traversed twice in the same direction" if not ok else ""))

    euler = tri.num_vertices - tri.num_edges + tri.num_triangles
    ok = euler == 2 - 2 * g
    checks.append(
        ("surface identity", ok, f"V-E+F = {euler}, expected {2 - 2 * g}" if not ok else "")
    )

    if p > 0:
        ok = tri.num_vertices == p
        checks.append(("vertex policy", ok, f"{tri.num_vertices} vertices, expected {p} (ideal)" if not ok else ""))
        expected_e = 6 * g - 6 + 3 * p
    else:
        ok = tri.num_vertices == 1
        checks.append(("vertex policy", ok, f"{tri.num_vertices} vertices, expected 1 (closed)" if not ok else ""))
        expected_e = 6 * g - 3
    ok = tri.num_edges == expected_e
    checks.append(("edge count", ok, f"E = {tri.num_edges}, expected {expected_e}" if not ok else ""))

    return TriangulationReport(checks)
