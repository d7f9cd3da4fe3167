import random
from fractions import Fraction

import pytest
import sympy

from igusazeta import oracle
from igusazeta._upoly import UPoly
from igusazeta.finite_field import CharacterSpec, count_torus_solutions
from igusazeta.lattice import SimplicialCone
from igusazeta.newton import ComplexCandidate
from igusazeta.polynomial import parse_polynomial
from igusazeta.rational import ConcreteRing
from igusazeta.zeta import (
    DegenerateError,
    ZetaError,
    assemble_L,
    denominator_gcd,
    local_igusa_zeta,
    local_igusa_zeta_char,
    piece_S,
    pole_spectrum,
    verify_b1_theorem,
    zeta_breakdown,
)

import golden
from conftest import face_of, same_function, sympy_of

t = sympy.Symbol("t")
Q = Fraction(3, 2)


def poly(text, n=3):
    return parse_polynomial(text, n)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_example_closed_form(example, p):
    Z = local_igusa_zeta(example, p)
    assert same_function(sympy_of(Z), golden.in_t(golden.closed_form(), p, t))


def test_example_reduced_shape(example):
    Z = local_igusa_zeta(example, 3)
    assert sorted(Z.den.items()) == [((1, 1, 1), 1), ((2, 3, 1), 1)]


@pytest.mark.parametrize("p", [3, 5])
def test_monomial_z(p):
    Z = local_igusa_zeta(poly("z"), p)
    assert same_function(sympy_of(Z), sympy.Rational(p - 1, p ** 3) * t / (p - t))


def test_degenerate_input_rejected(example):
    with pytest.raises(DegenerateError):
        local_igusa_zeta(example, 2)


def test_unknown_ring(example):
    with pytest.raises(ZetaError):
        local_igusa_zeta(example, "global")


def test_L_values():
    ring = ConcreteRing(5)
    assert assemble_L(3, 0, ring).series(1)[0] == Fraction(64, 125)
    L = assemble_L(3, 7, ring)
    # t = 1 kills the N-term
    assert L.evaluate(Fraction(1)) == Fraction(64, 125)


@pytest.mark.parametrize("p", [3, 7])
def test_piece_values_of_delta_D(example_np, p):
    ring = ConcreteRing(p)
    for gens, expr in golden.PIECES.items():
        S = piece_S(example_np, SimplicialCone(gens), ring)
        assert same_function(sympy_of(S), golden.in_t(expr, p, t))


@pytest.mark.parametrize("p", [3, 5])
def test_face_terms_match_reference(example, example_np, p):
    n0 = count_torus_solutions(poly("x^3 + y^2", 2), p)
    n1 = count_torus_solutions(poly("x^2 + y^2", 2), p)
    bd = zeta_breakdown(example, p)
    terms = {t_.face.index: t_ for t_ in bd.terms}
    assert len(terms) == len(golden.FACES)
    for name, (verts, N, S, mult) in golden.FACES.items():
        face = face_of(example_np, *verts)
        term = terms[face.index]
        assert term.count == N(p, n0, n1), name
        assert same_function(sympy_of(term.L), golden.in_t(golden.L_expr(N(p, n0, n1)), p, t)), name
        assert same_function(sympy_of(term.S), golden.in_t(S, p, t)), name


def test_series_against_residue_counts(example):
    Z = local_igusa_zeta(example, 3)
    assert Z.series(5) == oracle.series_coefficients_padic(example, 3, 4)


@pytest.mark.parametrize("text,p", [("x^2 + y^3 + z^5", 7), ("x*y + z^2", 3), ("x^2*y + y^3 + z^2", 5),
                                    ("x + y^2*z^2", 3)])
def test_series_other_polynomials(text, p):
    f = poly(text)
    Z = local_igusa_zeta(f, p)
    lmax = 3 if p <= 5 else 2
    assert Z.series(lmax + 1) == oracle.series_coefficients_padic(f, p, lmax)


def test_series_random_b1_polynomials():
    rng = random.Random(17)
    done = 0
    while done < 6:
        f = oracle.random_b1_polynomial(rng, 3)
        try:
            Z = local_igusa_zeta(f, 3)
        except DegenerateError:
            continue
        assert Z.series(4) == oracle.series_coefficients_padic(f, 3, 3)
        done += 1


def test_pole_spectrum_example(example):
    rep = pole_spectrum(local_igusa_zeta(example, 3), [(1, 1), (2, 3), (6, 9)])
    assert rep.family(1, 1).survives
    assert [(a.factor, a.multiplicity) for a in rep.family(2, 3).atoms] == [("t^2 - 27", 1)]
    fam69 = rep.family(6, 9)
    assert [a.key for a in fam69.atoms] == [(2, 3, 1)]
    surv = rep.surviving()
    assert surv == {ComplexCandidate(1): 1, ComplexCandidate(Q): 1, ComplexCandidate(Q, Fraction(1, 2)): 1}


def test_pole_spectrum_monomial():
    rep = pole_spectrum(local_igusa_zeta(poly("z"), 5))
    assert [(fr.m, fr.sigma) for fr in rep.families if fr.survives] == [(1, 1)]


def test_denominator_gcd(example):
    Z = local_igusa_zeta(example, 3)
    ring = Z.ring
    quartic = UPoly([729, 0, 27, 0, 1], ring.zero, ring.one)
    g, mult = denominator_gcd(Z, quartic)
    assert g.degree == 0 and mult == 0
    g, mult = denominator_gcd(Z, UPoly([-27, 0, 1], ring.zero, ring.one))
    assert g.degree == 2 and mult == 1


def test_orders_bounded_by_expected(example, example_np):
    bd = zeta_breakdown(example, 5)
    counts = {t_.face.index: t_.count for t_ in bd.terms}
    for s0, order in pole_spectrum(bd.zeta).surviving().items():
        assert order <= example_np.expected_order(s0, counts)


def test_verify_b1_example(example):
    rep = verify_b1_theorem(example, 3)
    assert rep.ok
    assert sorted(v.candidate.r for v in rep.applicable) == [Fraction(k, 6) for k in (1, 2, 4, 5)]
    blocked = [v for v in rep.verdicts if not v.applies]
    assert all(v.survives == 1 and v.expected_order == 2 for v in blocked)


def test_verify_b1_vacuous():
    rep = verify_b1_theorem(poly("x^2 + y^2 + z^2"), 3)
    assert rep.ok and not rep.applicable


def test_symbolic_specializes(example):
    Zs = zeta_breakdown(example, "symbolic")
    assert Zs.zeta.symbols() == {"P"}
    for p in (3, 5):
        values = {"P": p}
        for name, face in Zs.class_symbols.items():
            from igusazeta.motivic import reduced_face_polynomial
            values[name] = count_torus_solutions(reduced_face_polynomial(example, face), p)
        out = Zs.zeta.map_coefficients(lambda c: Zs.ring.substitute(c, values), ConcreteRing(p))
        assert out.reduced() == local_igusa_zeta(example, p)


def test_decomposition_independence_on_delta_D(example_np):
    ring = ConcreteRing(5)
    gens = example_np.face_cone(face_of(example_np, (0, 0, 2)))
    from igusazeta.lattice import simplicial_decomposition
    sums = []
    for order in (gens, gens[::-1], gens[1:] + gens[:1]):
        total = None
        for piece in simplicial_decomposition(order):
            term = piece_S(example_np, piece, ring)
            total = term if total is None else total + term
        sums.append(total.reduced())
    assert sums[0] == sums[1] == sums[2]


# --- twisted ----------------------------------------------------------------------------


def test_char_monomial_vanishes():
    Z = local_igusa_zeta_char(poly("z"), CharacterSpec(5, 4))
    assert Z.is_zero()


def test_char_square():
    Z = local_igusa_zeta_char(poly("z^2"), CharacterSpec(5, 2))
    assert [k[:2] for k in Z.den] == [(2, 1)]
    assert Z.series(3)[2] != 0


def test_char_example_against_twisted_counts(example):
    chi = CharacterSpec(5, 2)
    Z = local_igusa_zeta_char(example, chi)
    rows = oracle.series_coefficients_char(example, 5, 2, chi.dlog, 2)
    ser = Z.series(3)
    for l, (scale, hist) in enumerate(rows):
        value = sum((chi.value(chi.g) ** (-k) * c for k, c in enumerate(hist)), chi.zero())
        assert value * scale == ser[l]


def test_char_example_reduced(example):
    Z = local_igusa_zeta_char(example, CharacterSpec(5, 2))
    # only the order-two family with t^2 - 125 remains
    assert [k for k in Z.den] == [(2, 3, 1)]
