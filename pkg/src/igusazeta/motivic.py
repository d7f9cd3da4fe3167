"""The local motivic zeta function of a non-degenerate polynomial, in the
variable ``T`` over rational functions in ``L`` and symbols for classes of
torus hypersurfaces, and its specialization to the p-adic zeta function.

For a compact face ``tau`` contained in the coordinate hyperplanes indexed
by ``P_tau`` (possibly none), with ``k = n - |P_tau|`` remaining variables,

    L'_tau = (1 - 1/L)^k - L^(-k) [X'_tau] (1 - T)/(1 - T/L)
    S'_tau = sum_i (1 - 1/L)^(|P_tau| - |P_i|) sum_h L^(-sigma(h)) T^m(h)
             / prod_{j in J_i} (1 - L^(-sigma_j) T^m_j)

where piece ``i`` of the cone has unit generators ``P_i`` and other
generators ``J_i``, and ``h`` runs over its (0,1]-parallelepiped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ._upoly import UPoly
from .finite_field import count_torus_solutions, require_prime
from .lattice import Convention, enumerate_parallelepiped
from .newton import Face, NewtonPolyhedron
from .polynomial import IntPolynomial, face_restriction
from .rational import ConcreteRing, SymbolicRing, ZetaRational, ring_power


class MotivicError(ValueError):
    """Raised for invalid motivic input or missing class values."""


# --- classes of face hypersurfaces ----------------------------------------------------


def _b1_base(np_: NewtonPolyhedron, face: Face) -> Optional[Face]:
    """For a compact simplex face with all vertices but one in ``{x_i = 0}`` and
    the remaining one in ``{x_i = 1}``, the face spanned by the former.  Among
    several such bases the lexicographically smallest is chosen."""
    if not face.compact or face.dim == 0 or len(face.vertices) != face.dim + 1:
        return None
    bases = []
    for i in range(np_.n):
        low = [v for v in face.vertices if v[i] == 0]
        high = [v for v in face.vertices if v[i] == 1]
        if len(high) == 1 and len(low) == len(face.vertices) - 1:
            bases.append(tuple(sorted(low)))
    if not bases:
        return None
    verts = min(bases)
    return np_._by_key[(frozenset(verts), frozenset())]


def face_class_trees(np_: NewtonPolyhedron, prefix: str = "X") -> Tuple[Dict[int, tuple], Dict[str, Face]]:
    """Describe the class of ``{f_tau = 0}`` in the torus of the variables not in
    ``P_tau`` for every compact face.

    Returns ``(trees, symbols)``: ``trees[face.index]`` is ``("zero",)``,
    ``("sym", name)`` or ``("b1", a, b, base_tree)`` meaning
    ``(L-1)^a - (L-1)^b * base``; ``symbols`` maps each fresh symbol to its face.
    """
    trees: Dict[int, tuple] = {}
    symbols: Dict[str, Face] = {}
    n = np_.n

    def tree(face: Face) -> tuple:
        if face.index in trees:
            return trees[face.index]
        if face.dim == 0:
            t = ("zero",)
        else:
            base = _b1_base(np_, face)
            if base is not None:
                k = n - len(face.hyperplanes)
                t = ("b1", k - 1, len(base.hyperplanes) - len(face.hyperplanes) - 1, tree(base))
            else:
                name = "%s%d" % (prefix, len(symbols))
                symbols[name] = face
                t = ("sym", name)
        trees[face.index] = t
        return t

    for face in np_.compact_faces:
        tree(face)
    return trees, symbols


def class_value(tree: tuple, ring):
    """Evaluate a class tree with the ring's main symbol standing for ``L``."""
    kind = tree[0]
    if kind == "zero":
        return ring.zero
    if kind == "sym":
        return ring.symbol(tree[1])
    _, a, b, base = tree
    u = ring.P - ring.one
    return u ** a - u ** b * class_value(base, ring)


def class_for_face(f, face: Face, np_: Optional[NewtonPolyhedron] = None):
    """Class used for ``face`` in the formula: ``[X_tau]`` when the face meets no
    coordinate hyperplane, ``[X'_tau]`` otherwise.  Returned in a ring whose
    main symbol is ``L``."""
    np_ = np_ or face.polyhedron
    if not face.compact:
        raise MotivicError("classes are only used for compact faces")
    trees, symbols = face_class_trees(np_)
    ring = SymbolicRing("L", list(symbols))
    return class_value(trees[face.index], ring), ring


def reduced_face_polynomial(f: IntPolynomial, face: Face) -> IntPolynomial:
    """``f_tau`` as a polynomial in the variables not in ``P_tau``."""
    ft = face_restriction(f, face)
    drop = sorted(face.hyperplanes)
    return ft.drop_variables(drop) if drop else ft


def count_classes(np_: NewtonPolyhedron, p: int, symbols: Dict[str, Face]) -> Dict[str, int]:
    """Point counts over F_p standing in for every class symbol."""
    require_prime(p)
    return {name: count_torus_solutions(reduced_face_polynomial(np_.f, face), p)
            for name, face in symbols.items()}


# --- the zeta function ----------------------------------------------------------------------


@dataclass
class MotivicTerm:
    face: Face
    cls: object
    L: ZetaRational
    S: ZetaRational


@dataclass
class MotivicZeta:
    zeta: ZetaRational
    polyhedron: NewtonPolyhedron
    symbols: Dict[str, Face]
    terms: List[MotivicTerm] = field(default_factory=list)

    @property
    def ring(self):
        return self.zeta.ring

    def __str__(self):
        return str(self.zeta)


def motivic_L(k: int, cls, ring) -> ZetaRational:
    """``(1 - 1/L)^k - L^(-k) cls (1 - T)/(1 - T/L)``."""
    Lm, one = ring.P, ring.one
    a = (one - one / Lm) ** k
    b = cls * ring_power(ring, Lm, 1 - k)
    # (1 - T)/(1 - T/L) = L (T - 1)/(T - L)
    num = UPoly([-a * Lm + b, a - b], ring.zero, one)
    return ZetaRational(ring, num, {(1, 1, 1): 1}, "T").reduced()


def motivic_S(np_: NewtonPolyhedron, face: Face, ring) -> ZetaRational:
    Lm, one = ring.P, ring.one
    n_hyper = len(face.hyperplanes)
    total = ZetaRational(ring, UPoly([], ring.zero, one), {}, "T")
    for piece in np_.cone_pieces(face):
        gens = piece.generators
        units = [v for v in gens if np_.m(v) == 0]
        others = [v for v in gens if np_.m(v) > 0]
        if not others:
            raise MotivicError("a piece of the cone consists of unit vectors only")
        pts = enumerate_parallelepiped(gens, Convention.HIGH)
        terms: Dict[int, object] = {}
        for h in pts.points:
            k = np_.m(h)
            terms[k] = terms.get(k, ring.zero) + ring_power(ring, Lm, -sum(h))
        num = UPoly([terms.get(k, ring.zero) for k in range(max(terms) + 1)], ring.zero, one)
        part = ZetaRational(ring, num * (one - one / Lm) ** (n_hyper - len(units)), {}, "T")
        for v in others:
            # 1/(1 - L^-s T^m) = L^s / (L^s - T^m)
            inv = ZetaRational.inverse_family(ring, np_.m(v), sum(v), "T")
            part = part * inv * ring_power(ring, Lm, sum(v))
        total = total + part
    return total.reduced()


def motivic_local_zeta(f) -> MotivicZeta:
    """Local motivic zeta function, summed over the compact faces."""
    np_ = f if isinstance(f, NewtonPolyhedron) else NewtonPolyhedron(f)
    trees, symbols = face_class_trees(np_, prefix="X")
    ring = SymbolicRing("L", list(symbols))
    total = ZetaRational(ring, UPoly([], ring.zero, ring.one), {}, "T")
    terms = []
    for face in np_.compact_faces:
        cls = class_value(trees[face.index], ring)
        k = np_.n - len(face.hyperplanes)
        L = motivic_L(k, cls, ring)
        S = motivic_S(np_, face, ring)
        terms.append(MotivicTerm(face, cls, L, S))
        total = total + L * S
    return MotivicZeta(total.reduced(), np_, symbols, terms)


def specialize(zmot: MotivicZeta, p: int, class_values: Optional[Dict[str, int]] = None) -> ZetaRational:
    """Put ``L = p``, ``T = t`` and the given point counts for the class symbols."""
    require_prime(p)
    if class_values is None:
        class_values = count_classes(zmot.polyhedron, p, zmot.symbols)
    missing = set(zmot.symbols) - set(class_values)
    if missing:
        raise MotivicError("no value for symbol(s) %s" % ", ".join(sorted(missing)))
    values = dict(class_values)
    values["L"] = p
    src = zmot.ring
    target = ConcreteRing(p)
    out = zmot.zeta.map_coefficients(lambda c: src.substitute(c, values), target)
    out.var = "t"
    return out.reduced()
