"""Newton polyhedra: facets, the face lattice, cones of faces, candidate poles
and the B1 classification of facets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Tuple

from ._linalg import dot, normal_vector, primitive, rank, solve_coordinates
from .lattice import simplicial_decomposition
from .polynomial import VARIABLES, IntPolynomial


class NewtonError(ValueError):
    """Raised for polynomials without a usable Newton polyhedron."""


@dataclass(frozen=True)
class FacetData:
    """A facet ``{v . x = m}`` with primitive normal ``v >= 0``."""

    normal: Tuple[int, ...]
    m: int
    vertices: FrozenSet[Tuple[int, ...]]
    rays: FrozenSet[int]

    @property
    def sigma(self) -> int:
        return sum(self.normal)


@dataclass(eq=False)
class Face:
    """A face of the Newton polyhedron: convex hull of ``vertices`` plus the
    cone spanned by the unit vectors ``e_i`` for ``i`` in ``rays`` (0-based).
    """

    vertices: Tuple[Tuple[int, ...], ...]
    rays: FrozenSet[int]
    dim: int
    facets: FrozenSet[int]
    polyhedron: "NewtonPolyhedron" = field(repr=False)
    index: int = -1

    @property
    def compact(self) -> bool:
        return not self.rays

    @property
    def hyperplanes(self) -> FrozenSet[int]:
        """Indices ``i`` (0-based) with the face inside ``{x_i = 0}``."""
        n = self.polyhedron.n
        return frozenset(
            i for i in range(n) if i not in self.rays and all(v[i] == 0 for v in self.vertices)
        )

    @property
    def is_whole(self) -> bool:
        return not self.facets

    def contains(self, point) -> bool:
        np_ = self.polyhedron
        for j, fc in enumerate(np_.facets):
            val = dot(fc.normal, point)
            if val < fc.m or (j in self.facets and val != fc.m):
                return False
        return True

    def key(self):
        return (frozenset(self.vertices), self.rays)

    def __repr__(self):
        verts = ",".join("(%s)" % ",".join(map(str, v)) for v in self.vertices)
        rays = "".join("+e%d" % (i + 1) for i in sorted(self.rays))
        return "Face[%s%s]" % (verts, rays)


@dataclass(frozen=True)
class ComplexCandidate:
    """``s0 = -q + 2 pi i r / log p``; ``r`` is reduced modulo 1."""

    q: Fraction
    r: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        r = Fraction(self.r)
        object.__setattr__(self, "r", r - (r.numerator // r.denominator))

    def hits(self, m: int, sigma: int) -> bool:
        """True when ``p^(sigma + m s0) == 1``."""
        return m > 0 and sigma == m * self.q and (m * self.r).denominator == 1


@dataclass
class CandidatePole:
    real_part: Fraction
    families: List[Tuple[int, int]]
    contributing_facets: List[int]
    universal: bool = False


@dataclass(frozen=True)
class B1Class:
    kind: str  # "simplex", "noncompact" or "none"
    variables: Tuple[int, ...] = ()

    @property
    def is_b1(self) -> bool:
        return self.kind != "none"

    def names(self) -> List[str]:
        return [VARIABLES[i] for i in self.variables]


@dataclass(frozen=True)
class HypothesisVerdict:
    applies: bool
    reason: str = ""


def _rank_of_face(vertices, rays, n) -> int:
    if not vertices:
        return -1
    v0 = vertices[0]
    dirs = [tuple(a - b for a, b in zip(v, v0)) for v in vertices[1:]]
    dirs += [tuple(1 if k == i else 0 for k in range(n)) for i in rays]
    return rank(dirs) if dirs else 0


class NewtonPolyhedron:
    """Newton polyhedron of ``f`` at the origin with its full face lattice."""

    def __init__(self, f: IntPolynomial):
        if f.is_zero():
            raise NewtonError("empty support")
        if f.constant_term():
            raise NewtonError("f(0) != 0")
        self.f = f
        self.n = f.n
        self.support = f.support
        self.facets = self._facets()
        self.vertices = self._vertices()
        self.faces = self._faces()
        self._by_key = {fc.key(): fc for fc in self.faces}

    # -- construction -----------------------------------------------------------

    def _facets(self) -> List[FacetData]:
        n, pts = self.n, self.support
        dirs = set()
        for a, b in combinations(pts, 2):
            d = tuple(x - y for x, y in zip(a, b))
            if d[0] < 0 or (d[0] == 0 and next((x for x in d if x), 0) < 0):
                d = tuple(-x for x in d)
            dirs.add(primitive(d))
        dirs.update(tuple(1 if k == i else 0 for k in range(n)) for i in range(n))
        normals = set()
        for sub in combinations(sorted(dirs), n - 1):
            v = normal_vector(sub, n)
            if not any(v):
                continue
            if all(x <= 0 for x in v):
                v = tuple(-x for x in v)
            if any(x < 0 for x in v):
                continue
            normals.add(primitive(v))
        facets = []
        for v in normals:
            m = min(dot(v, a) for a in pts)
            on = sorted((a for a in pts if dot(v, a) == m), reverse=True)
            rays = frozenset(i for i in range(n) if v[i] == 0)
            if _rank_of_face(on, rays, n) == n - 1:
                facets.append(FacetData(v, m, frozenset(on), rays))
        facets.sort(key=lambda fc: (fc.m == 0, -fc.m, tuple(-x for x in fc.normal)))
        return facets

    def _vertices(self) -> List[Tuple[int, ...]]:
        verts = []
        for a in self.support:
            normals = [fc.normal for fc in self.facets if a in fc.vertices]
            if normals and rank(normals) == self.n:
                verts.append(a)
        vs = set(verts)
        self.facets = [FacetData(fc.normal, fc.m, frozenset(x for x in fc.vertices if x in vs), fc.rays)
                       for fc in self.facets]
        return sorted(verts, reverse=True)

    def _faces(self) -> List[Face]:
        n = self.n
        found: Dict[tuple, FrozenSet[int]] = {}
        all_key = (frozenset(self.vertices), frozenset(range(n)))
        frontier = []
        for j, fc in enumerate(self.facets):
            key = (fc.vertices, fc.rays)
            found.setdefault(key, frozenset())
            frontier.append(key)
        # closure under pairwise intersection
        level = list(dict.fromkeys(frontier))
        while level:
            nxt = []
            for key in level:
                for fc in self.facets:
                    vs = key[0] & fc.vertices
                    if not vs:
                        continue
                    k2 = (vs, key[1] & fc.rays)
                    if k2 not in found:
                        found[k2] = frozenset()
                        nxt.append(k2)
            level = nxt
        faces = []
        for (vs, rays) in found:
            fset = frozenset(j for j, fc in enumerate(self.facets)
                             if vs <= fc.vertices and rays <= fc.rays)
            verts = tuple(sorted(vs, reverse=True))
            faces.append(Face(verts, rays, _rank_of_face(verts, rays, n), fset, self))
        faces.append(Face(tuple(self.vertices), all_key[1], n, frozenset(), self))
        order = {v: i for i, v in enumerate(self.vertices)}
        faces.sort(key=lambda fc: (fc.dim, bool(fc.rays), [order[v] for v in fc.vertices], sorted(fc.rays)))
        for i, fc in enumerate(faces):
            fc.index = i
        return faces

    # -- queries ----------------------------------------------------------------

    @property
    def compact_faces(self) -> List[Face]:
        return [fc for fc in self.faces if fc.compact]

    def facet_face(self, j: int) -> Face:
        fc = self.facets[j]
        return self._by_key[(fc.vertices, fc.rays)]

    def m(self, k) -> int:
        return min(dot(k, a) for a in self.vertices)

    def m_and_F(self, k) -> Tuple[int, Face]:
        """``m(k)`` and the face of points where ``k . x`` is minimal."""
        k = tuple(int(x) for x in k)
        if len(k) != self.n or any(x < 0 for x in k):
            raise NewtonError("k must be a non-negative vector of length %d" % self.n)
        m = self.m(k)
        verts = frozenset(a for a in self.vertices if dot(k, a) == m)
        rays = frozenset(i for i in range(self.n) if k[i] == 0)
        return m, self._by_key[(verts, rays)]

    def face_cone(self, face: Face) -> List[Tuple[int, ...]]:
        """Primitive generators of the cone of ``face`` (normals of the facets containing it)."""
        if face.is_whole:
            raise NewtonError("the cone of the whole polyhedron is {0}")
        return [self.facets[j].normal for j in sorted(face.facets)]

    def cone_pieces(self, face: Face):
        return simplicial_decomposition(self.face_cone(face))

    def facet_by_normal(self, v) -> int:
        for j, fc in enumerate(self.facets):
            if fc.normal == tuple(v):
                return j
        raise KeyError(v)

    # -- B1 classification -------------------------------------------------------

    def classify_b1(self, j: int) -> B1Class:
        fc = self.facets[j]
        n = self.n
        if fc.m == 0:
            return B1Class("none")
        if not fc.rays:
            verts = sorted(fc.vertices, reverse=True)
            if len(verts) != n:
                return B1Class("none")
            return _b1_kind("simplex", _b1_variables(verts, range(n)))
        if n < 3 or len(fc.rays) != 1:
            return B1Class("none")
        (jr,) = tuple(fc.rays)
        keep = [i for i in range(n) if i != jr]
        proj = sorted({tuple(v[i] for i in keep) for v in fc.vertices})
        simplex = simplex_vertices(proj)
        if simplex is None or len(simplex) != n - 1:
            return B1Class("none")
        lifted = [dict(zip(keep, s)) for s in simplex]
        vars_ = tuple(i for i in keep if _is_b1_for(lifted, i))
        return _b1_kind("noncompact", vars_)

    # -- candidate poles -----------------------------------------------------------

    def candidate_poles(self) -> List[CandidatePole]:
        groups: Dict[Fraction, CandidatePole] = {
            Fraction(1): CandidatePole(Fraction(-1), [], [], universal=True)
        }
        for j, fc in enumerate(self.facets):
            if fc.m == 0:
                continue
            q = Fraction(fc.sigma, fc.m)
            cp = groups.setdefault(q, CandidatePole(-q, [], []))
            if (fc.m, fc.sigma) not in cp.families:
                cp.families.append((fc.m, fc.sigma))
            cp.contributing_facets.append(j)
        return [groups[q] for q in sorted(groups)]

    def contributes(self, j: int, s0: ComplexCandidate) -> bool:
        fc = self.facets[j]
        return s0.hits(fc.m, fc.sigma)

    def contributing_facets(self, s0: ComplexCandidate) -> List[int]:
        return [j for j in range(len(self.facets)) if self.contributes(j, s0)]

    def contributing_faces(self, s0: ComplexCandidate) -> List[Face]:
        js = set(self.contributing_facets(s0))
        return [fc for fc in self.faces if fc.facets & js]

    def candidate_classes(self, q: Fraction) -> List[ComplexCandidate]:
        """All residue classes ``r`` (mod 1) of candidates with real part ``-q``."""
        q = Fraction(q)
        rs = set()
        if q == 1:
            rs.add(Fraction(0))
        for fc in self.facets:
            if fc.m and Fraction(fc.sigma, fc.m) == q:
                rs.update(Fraction(k, fc.m) for k in range(fc.m))
        return [ComplexCandidate(q, r) for r in sorted(rs)]

    def expected_order(self, s0: ComplexCandidate, counts: Optional[Dict[int, int]] = None) -> int:
        """Largest number of factors vanishing at ``s0`` in a single term.

        ``counts`` maps face index to the torus zero count ``N``; without it,
        every compact face other than a vertex is assumed to have ``N != 0``.
        """
        universal = s0.q == 1 and s0.r.denominator == 1
        if not universal and not self.contributing_facets(s0):
            return 0
        best = 0
        for face in self.compact_faces:
            extra = 0
            if universal:
                nonzero = counts[face.index] != 0 if counts is not None else face.dim > 0
                extra = 1 if nonzero else 0
            for piece in self.cone_pieces(face):
                hits = 0
                for g in piece.generators:
                    j = self.facet_by_normal(g)
                    if self.contributes(j, s0):
                        hits += 1
                best = max(best, hits + extra)
        return best

    def check_theorem_hypotheses(self, s0: ComplexCandidate) -> HypothesisVerdict:
        """Whether the non-pole statement for B1-only candidates applies to ``s0``."""
        if s0.q == 1:
            return HypothesisVerdict(False, "real part is -1")
        if self.n != 3:
            return HypothesisVerdict(False, "only three variables are covered")
        js = self.contributing_facets(s0)
        if not js:
            return HypothesisVerdict(False, "no contributing facet")
        classes = {}
        for j in js:
            c = self.classify_b1(j)
            if not c.is_b1:
                return HypothesisVerdict(False, "non-B1-contributor: facet %d" % j)
            classes[j] = set(c.variables)
        for a, b in combinations(js, 2):
            if classes[a] & classes[b]:
                continue
            fa, fb = self.facets[a], self.facets[b]
            common = fa.vertices & fb.vertices
            if len(common) > 1 or (common and fa.rays & fb.rays):
                return HypothesisVerdict(
                    False, "facets %d and %d are B1 for different variables and meet in more than a point" % (a, b)
                )
        return HypothesisVerdict(True)


def _b1_variables(verts, indices):
    return tuple(i for i in indices if _is_b1_for([dict(enumerate(v)) for v in verts], i))


def _is_b1_for(points, i) -> bool:
    heights = sorted(pt[i] for pt in points)
    return heights[-1] == 1 and all(h == 0 for h in heights[:-1])


def _b1_kind(kind, variables) -> B1Class:
    return B1Class(kind, tuple(variables)) if variables else B1Class("none")


def simplex_vertices(points) -> Optional[list]:
    """If the convex hull of ``points`` is a simplex, its vertices; else None.

    The simplex must be full-dimensional in its affine span.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        return None
    v0 = pts[0]
    d = rank([tuple(a - b for a, b in zip(p, v0)) for p in pts[1:]]) if len(pts) > 1 else 0
    for cand in combinations(pts, d + 1):
        base = cand[0]
        gens = [tuple(a - b for a, b in zip(c, base)) for c in cand[1:]]
        if d and rank(gens) != d:
            continue
        ok = True
        for p in pts:
            if p in cand:
                continue
            if d == 0:
                ok = False
                break
            c = solve_coordinates(gens, tuple(a - b for a, b in zip(p, base)))
            if c is None or any(x < 0 for x in c) or sum(c) > 1:
                ok = False
                break
        if ok:
            return list(cand)
    return None


def build_newton_polyhedron(f: IntPolynomial) -> NewtonPolyhedron:
    return NewtonPolyhedron(f)


def m_and_F(np_: NewtonPolyhedron, k):
    return np_.m_and_F(k)


def face_cone(np_: NewtonPolyhedron, face: Face):
    return np_.face_cone(face)


def classify_b1(np_: NewtonPolyhedron, facet) -> B1Class:
    j = facet if isinstance(facet, int) else _facet_index(np_, facet)
    return np_.classify_b1(j)


def _facet_index(np_, face: Face) -> int:
    if face.dim != np_.n - 1 or len(face.facets) != 1:
        raise NewtonError("not a facet")
    return next(iter(face.facets))


def candidate_poles(np_: NewtonPolyhedron):
    return np_.candidate_poles()


def expected_order(np_: NewtonPolyhedron, s0: ComplexCandidate, counts=None) -> int:
    return np_.expected_order(s0, counts)


def check_theorem_hypotheses(np_: NewtonPolyhedron, s0: ComplexCandidate) -> HypothesisVerdict:
    return np_.check_theorem_hypotheses(s0)
