"""Local Igusa zeta functions of non-degenerate polynomials as exact rational
functions of ``t = p^(-s)``, their twisted versions, and pole analysis.

Each compact face contributes ``L_tau(t) * S(Delta_tau)(t)`` with

    L_tau = ((p-1)/p)^n - (N_tau / p^(n-1)) (1 - t)/(p - t)
    S(delta) = sum_h p^sigma(h) t^(M - m(h)) / prod_j (p^sigma_j - t^m_j)

where ``h`` runs over the [0,1)-parallelepiped of a simplicial piece and
``M`` is the sum of the ``m_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from ._upoly import UPoly
from .finite_field import (
    CharacterSpec,
    character_sum,
    count_torus_solutions,
    is_nondegenerate_fp,
    require_prime,
)
from .lattice import Convention, SimplicialCone, enumerate_parallelepiped
from .newton import ComplexCandidate, Face, NewtonPolyhedron
from .polynomial import IntPolynomial, face_restriction
from .rational import (
    ConcreteRing,
    CyclotomicRing,
    SymbolicRing,
    ZetaRational,
    base_key,
    classes_of,
    family_atoms,
    ring_power,
)


class ZetaError(ValueError):
    """Raised for inputs the formula does not cover."""


class DegenerateError(ZetaError):
    def __init__(self, face, point, p):
        super().__init__("f is degenerate over F_%d on face %r at %r" % (p, face, point))
        self.face = face
        self.point = point


def _as_np(f_or_np) -> NewtonPolyhedron:
    return f_or_np if isinstance(f_or_np, NewtonPolyhedron) else NewtonPolyhedron(f_or_np)


# --- the two factors of a face term ---------------------------------------------------


def assemble_L(n: int, N, ring) -> ZetaRational:
    """``((P-1)/P)^n - N/P^(n-1) * (1-t)/(P-t)`` with ``N`` a count or a ring element."""
    P, one = ring.P, ring.one
    a = ((P - one) / P) ** n
    b = ring.coerce(N) / ring_power(ring, P, n - 1)
    # (1 - t)/(P - t) = (t - 1)/(t - P), and t - P is the atom (1, 1, 1)
    num = UPoly([-a * P + b, a - b], ring.zero, one)
    return ZetaRational(ring, num, {(1, 1, 1): 1}).reduced()


def assemble_L_char(n: int, char_sum, ring) -> ZetaRational:
    """``P^(-n)`` times the character sum over the torus."""
    return ZetaRational.constant(ring, ring.coerce(char_sum) / ring.P ** n)


def piece_S(np_: NewtonPolyhedron, piece: SimplicialCone, ring) -> ZetaRational:
    gens = piece.generators
    pts = enumerate_parallelepiped(gens, Convention.LOW)
    ms = [np_.m(v) for v in gens]
    total_m = sum(ms)
    terms: Dict[int, object] = {}
    for h in pts.points:
        k = total_m - np_.m(h)
        terms[k] = terms.get(k, ring.zero) + ring_power(ring, ring.P, sum(h))
    num = UPoly([terms.get(k, ring.zero) for k in range(max(terms) + 1)], ring.zero, ring.one)
    acc = ZetaRational(ring, num, {})
    for v, m in zip(gens, ms):
        if m == 0 and sum(v) == 0:
            raise ZetaError("zero generator")
        acc = acc * ZetaRational.inverse_family(ring, m, sum(v))
    return acc


def assemble_S(np_: NewtonPolyhedron, face: Face, ring) -> ZetaRational:
    """``S(Delta_tau)`` summed over the simplicial pieces of the cone of ``face``."""
    total = ZetaRational(ring, UPoly([], ring.zero, ring.one), {})
    for piece in np_.cone_pieces(face):
        total = total + piece_S(np_, piece, ring)
    return total.reduced()


# --- rings ------------------------------------------------------------------------------


def make_ring(spec, extra=()):
    if isinstance(spec, (ConcreteRing, SymbolicRing, CyclotomicRing)):
        return spec
    if spec == "symbolic":
        return SymbolicRing("P", extra)
    if isinstance(spec, int):
        return ConcreteRing(require_prime(spec))
    raise ZetaError("unknown coefficient ring %r" % (spec,))


@dataclass
class FaceTerm:
    face: Face
    count: object
    L: ZetaRational
    S: ZetaRational
    pieces: List[SimplicialCone] = field(default_factory=list)

    @property
    def product(self) -> ZetaRational:
        return self.L * self.S


@dataclass
class ZetaBreakdown:
    polyhedron: NewtonPolyhedron
    ring: object
    terms: List[FaceTerm]
    zeta: ZetaRational
    class_symbols: Dict[str, Face] = field(default_factory=dict)


def zeta_breakdown(f: IntPolynomial, ring_spec, check: bool = True) -> ZetaBreakdown:
    """All face terms and their reduced sum.

    ``ring_spec`` is a prime, ``"symbolic"`` or a ring object.  For a prime,
    non-degeneracy over F_p is checked first (unless ``check`` is false).
    """
    np_ = _as_np(f)
    f = np_.f
    symbols: Dict[str, Face] = {}
    if ring_spec == "symbolic" or isinstance(ring_spec, SymbolicRing):
        from .motivic import face_class_trees, class_value

        trees, symbols = face_class_trees(np_, prefix="N")
        ring = make_ring(ring_spec, list(symbols))
    else:
        ring = make_ring(ring_spec)
        trees = None
        if check and ring.kind == "concrete":
            res = is_nondegenerate_fp(f, ring.p, np_)
            if not res.ok:
                raise DegenerateError(res.face, res.point, ring.p)
    terms = []
    total = ZetaRational(ring, UPoly([], ring.zero, ring.one), {})
    for face in np_.compact_faces:
        if trees is not None:
            primed = class_value(trees[face.index], ring)
            N = (ring.P - ring.one) ** len(face.hyperplanes) * primed
        else:
            N = count_torus_solutions(face_restriction(f, face), ring.p)
        L = assemble_L(f.n, N, ring)
        S = assemble_S(np_, face, ring)
        terms.append(FaceTerm(face, N, L, S, np_.cone_pieces(face)))
        total = total + L * S
    return ZetaBreakdown(np_, ring, terms, total.reduced(), symbols)


def local_igusa_zeta(f: IntPolynomial, ring_spec) -> ZetaRational:
    """Reduced local zeta function over ``pZ_p^n`` as a function of ``t = p^(-s)``."""
    return zeta_breakdown(f, ring_spec).zeta


def char_zeta_breakdown(f: IntPolynomial, chi: CharacterSpec, check: bool = True) -> ZetaBreakdown:
    np_ = _as_np(f)
    f = np_.f
    if check:
        res = is_nondegenerate_fp(f, chi.p, np_)
        if not res.ok:
            raise DegenerateError(res.face, res.point, chi.p)
    ring = CyclotomicRing(chi.p, chi.d)
    terms = []
    total = ZetaRational(ring, UPoly([], ring.zero, ring.one), {})
    for face in np_.compact_faces:
        cs = character_sum(face_restriction(f, face), chi)
        L = assemble_L_char(f.n, cs, ring)
        S = assemble_S(np_, face, ring)
        terms.append(FaceTerm(face, cs, L, S, np_.cone_pieces(face)))
        total = total + L * S
    return ZetaBreakdown(np_, ring, terms, total.reduced())


def local_igusa_zeta_char(f: IntPolynomial, chi: CharacterSpec) -> ZetaRational:
    """Reduced zeta function twisted by a non-trivial character of order ``chi.d``."""
    return char_zeta_breakdown(f, chi).zeta


# --- poles ------------------------------------------------------------------------------


@dataclass
class AtomReport:
    key: tuple
    factor: str
    multiplicity: int
    classes: List[Fraction]
    grouped: bool

    @property
    def q(self) -> Fraction:
        return Fraction(self.key[1], self.key[0])


@dataclass
class FamilyReport:
    m: int
    sigma: int
    atoms: List[AtomReport]

    @property
    def survives(self) -> bool:
        return bool(self.atoms)


@dataclass
class PoleReport:
    families: List[FamilyReport]
    atoms: List[AtomReport]

    def surviving(self) -> Dict[ComplexCandidate, Union[int, str]]:
        """Map each pole class to its order, or to ``"grouped"`` when only part of
        an atom survives and the class cannot be separated."""
        out: Dict[ComplexCandidate, Union[int, str]] = {}
        for a in self.atoms:
            for r in a.classes:
                out[ComplexCandidate(a.q, r)] = "grouped" if a.grouped else a.multiplicity
        return out

    def order(self, s0: ComplexCandidate):
        return self.surviving().get(s0, 0)

    def family(self, m, sigma) -> Optional[FamilyReport]:
        for fr in self.families:
            if (fr.m, fr.sigma) == (m, sigma):
                return fr
        return None


def pole_spectrum(Z: ZetaRational, families: Optional[List[Tuple[int, int]]] = None) -> PoleReport:
    """Surviving denominator atoms of a reduced ``Z`` with their pole classes.

    ``families`` lists the ``(m, sigma)`` pairs to report on (default: every
    family present in the denominator, plus ``(1, 1)``).
    """
    from .rational import format_upoly

    Z = Z.reduced()
    groups: Dict[tuple, List[tuple]] = {}
    for k in Z.den:
        groups.setdefault(base_key(k), []).append(k)
    atoms = []
    for b, keys in sorted(groups.items()):
        if keys == [b]:
            atoms.append(AtomReport(b, format_upoly(Z.atom(b), Z.ring, Z.var), Z.den[b], classes_of(b), False))
        else:
            for k in keys:
                atoms.append(AtomReport(k, format_upoly(Z.atom(k), Z.ring, Z.var), Z.den[k], classes_of(b), True))
    if families is None:
        fams = {(1, 1)}
        for a in atoms:
            fams.add((a.key[0], a.key[1]))
        families = sorted(fams)
    reports = []
    for m, s in families:
        keys = set(family_atoms(m, s))
        reports.append(FamilyReport(m, s, [a for a in atoms if base_key(a.key) in keys]))
    return PoleReport(reports, atoms)


def denominator_gcd(Z: ZetaRational, poly: UPoly) -> Tuple[UPoly, int]:
    """``gcd(den, poly)`` and the multiplicity of ``poly``'s gcd factor in the denominator."""
    D = Z.reduced().den_poly()
    g = D.gcd(poly)
    mult = 0
    if g.degree > 0:
        rest = D
        while g.divides(rest):
            rest = rest // g
            mult += 1
    return g, mult


@dataclass
class CandidateVerdict:
    candidate: ComplexCandidate
    applies: bool
    reason: str
    survives: Union[int, str]
    expected_order: int

    @property
    def ok(self) -> bool:
        return not self.applies or self.survives == 0


@dataclass
class B1Report:
    verdicts: List[CandidateVerdict]
    zeta: ZetaRational

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    @property
    def applicable(self) -> List[CandidateVerdict]:
        return [v for v in self.verdicts if v.applies]


def verify_b1_theorem(f: IntPolynomial, p: int, breakdown: Optional[ZetaBreakdown] = None) -> B1Report:
    """For every candidate pole class off ``Re(s) = -1`` where the B1 hypotheses
    hold, check that it is not a pole of the reduced zeta function."""
    bd = breakdown or zeta_breakdown(f, p)
    np_ = bd.polyhedron
    report = pole_spectrum(bd.zeta)
    survivors = report.surviving()
    counts = {t.face.index: t.count for t in bd.terms}
    verdicts = []
    for cp in np_.candidate_poles():
        if cp.universal:
            continue
        for s0 in np_.candidate_classes(-cp.real_part):
            hv = np_.check_theorem_hypotheses(s0)
            verdicts.append(CandidateVerdict(
                s0, hv.applies, hv.reason, survivors.get(s0, 0), np_.expected_order(s0, counts)))
    return B1Report(verdicts, bd.zeta)
