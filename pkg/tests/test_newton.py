import itertools
import random
from fractions import Fraction

import pytest

from igusazeta.newton import (
    ComplexCandidate,
    NewtonError,
    NewtonPolyhedron,
    candidate_poles,
    check_theorem_hypotheses,
    classify_b1,
    expected_order,
    face_cone,
    m_and_F,
)
from igusazeta.polynomial import IntPolynomial, parse_polynomial

from conftest import A, B, C, D, face_of

Q = Fraction(3, 2)


def poly(text, n=3):
    return NewtonPolyhedron(parse_polynomial(text, n))


def test_example_facets(example_np):
    assert [fc.normal for fc in example_np.facets] == [(2, 4, 3), (1, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert [fc.m for fc in example_np.facets] == [6, 2, 0, 0, 0]
    assert [fc.sigma for fc in example_np.facets] == [9, 3, 1, 1, 1]


def test_example_face_counts(example_np):
    assert sorted(example_np.vertices) == sorted([A, B, C, D])
    compact = example_np.compact_faces
    assert len(compact) == 11
    assert [f.dim for f in compact].count(0) == 4
    assert [f.dim for f in compact].count(1) == 5
    assert [f.dim for f in compact].count(2) == 2
    assert any(f.is_whole for f in example_np.faces)


def test_single_monomial():
    np_ = poly("x")
    assert sorted((fc.normal, fc.m) for fc in np_.facets) == [((0, 0, 1), 0), ((0, 1, 0), 0), ((1, 0, 0), 1)]
    assert [cp.real_part for cp in np_.candidate_poles()] == [-1]


def test_unit_simplex():
    np_ = poly("x + y + z")
    assert (1, 1, 1) in [fc.normal for fc in np_.facets]
    assert [fc.m for fc in np_.facets if fc.normal == (1, 1, 1)] == [1]
    assert [cp.real_part for cp in np_.candidate_poles()] == [-1, -3]
    tri = [f for f in np_.compact_faces if f.dim == 2][0]
    assert face_cone(np_, tri) == [(1, 1, 1)]


def test_empty_or_constant_rejected():
    with pytest.raises(NewtonError):
        NewtonPolyhedron(IntPolynomial(3, {}))
    with pytest.raises(NewtonError):
        NewtonPolyhedron(parse_polynomial("1 + x", 3))


def test_m_and_F(example_np):
    m, F = m_and_F(example_np, (1, 1, 1))
    assert m == 2 and F is face_of(example_np, B, C, D)
    m, F = m_and_F(example_np, (2, 4, 3))
    assert m == 6 and F is face_of(example_np, A, B, D)
    m, F = m_and_F(example_np, (0, 0, 0))
    assert m == 0 and F.is_whole


def test_face_cones(example_np):
    assert face_cone(example_np, face_of(example_np, D)) == [(2, 4, 3), (1, 1, 1), (1, 0, 0), (0, 1, 0)]
    assert face_cone(example_np, face_of(example_np, A, B, D)) == [(2, 4, 3)]
    whole = [f for f in example_np.faces if f.is_whole][0]
    with pytest.raises(NewtonError):
        face_cone(example_np, whole)
    for face in example_np.faces:
        if not face.is_whole:
            assert len(face_cone(example_np, face)) >= example_np.n - face.dim


def test_b1_classification(example_np):
    tau0 = face_of(example_np, A, B, D)
    tau1 = face_of(example_np, B, C, D)
    assert classify_b1(example_np, tau0).names() == ["y"]
    assert classify_b1(example_np, tau1).names() == ["x"]
    assert classify_b1(example_np, 0).kind == "simplex"
    for j in (2, 3, 4):
        assert not classify_b1(example_np, j).is_b1


def test_noncompact_b1():
    # vertices (2,2,0) and (1,1,1) with a ray along e_x
    np_ = poly("x^2*y^2 + x*y*z + z^3")
    j = np_.facet_by_normal((0, 1, 1))
    assert np_.facets[j].rays == frozenset({0})
    c = np_.classify_b1(j)
    assert c.kind == "noncompact" and c.names() == ["z"]


def test_b1_invariant_under_permutation():
    rng = random.Random(7)
    for _ in range(10):
        terms = {tuple(rng.randint(0, 3) for _ in range(3)): 1 for _ in range(4)}
        terms.pop((0, 0, 0), None)
        if not terms:
            continue
        f = IntPolynomial(3, terms)
        np_ = NewtonPolyhedron(f)
        for perm in itertools.permutations(range(3)):
            g = IntPolynomial(3, {tuple(e[perm[i]] for i in range(3)): c for e, c in terms.items()})
            npg = NewtonPolyhedron(g)
            for j, fc in enumerate(np_.facets):
                jg = npg.facet_by_normal(tuple(fc.normal[perm[i]] for i in range(3)))
                vars_f = set(np_.classify_b1(j).variables)
                vars_g = {perm[i] for i in npg.classify_b1(jg).variables}
                assert vars_f == vars_g


def test_candidate_poles_example(example_np):
    cps = candidate_poles(example_np)
    assert [cp.real_part for cp in cps] == [-1, Fraction(-3, 2)]
    assert cps[0].universal
    assert sorted(cps[1].families) == [(2, 3), (6, 9)]
    assert cps[1].contributing_facets == [0, 1]


@pytest.mark.parametrize("k", range(12))
def test_contributors_and_orders(example_np, k):
    s0 = ComplexCandidate(Q, Fraction(k, 6))
    if k % 3:
        assert example_np.contributing_facets(s0) == [0]
        assert expected_order(example_np, s0) == 1
        assert check_theorem_hypotheses(example_np, s0).applies
    else:
        assert example_np.contributing_facets(s0) == [0, 1]
        assert expected_order(example_np, s0) == 2
        verdict = check_theorem_hypotheses(example_np, s0)
        assert not verdict.applies and "different variables" in verdict.reason


def test_non_candidate(example_np):
    s0 = ComplexCandidate(Fraction(5, 4))
    assert example_np.contributing_facets(s0) == []
    assert example_np.contributing_faces(s0) == []
    assert expected_order(example_np, s0) == 0


def test_contributing_faces(example_np):
    faces = example_np.contributing_faces(ComplexCandidate(Q, Fraction(1, 6)))
    assert all(0 in f.facets for f in faces)
    assert face_of(example_np, A, B, D) in faces
    assert face_of(example_np, C) not in faces


def test_non_b1_contributor():
    # x^2 + y^2 + z^2: facet (1,1,1) with m = 2 is not B1
    np_ = poly("x^2 + y^2 + z^2")
    verdict = np_.check_theorem_hypotheses(ComplexCandidate(Fraction(3, 2)))
    assert not verdict.applies and "non-B1" in verdict.reason


def test_complex_candidate_normalizes():
    assert ComplexCandidate(Q, Fraction(7, 6)) == ComplexCandidate(Q, Fraction(1, 6))
    assert ComplexCandidate(Q, Fraction(-1, 6)).r == Fraction(5, 6)
    s0 = ComplexCandidate(Q, Fraction(1, 2))
    assert s0.hits(2, 3) and s0.hits(6, 9) and not s0.hits(4, 5)


def test_partition_of_orthant(example_np):
    """Each k in a box lies in the cone of exactly the face F(k), and m is
    linear on that cone."""
    for k in itertools.product(range(5), repeat=3):
        m, F = example_np.m_and_F(k)
        x = F.vertices[0]
        assert m == sum(a * b for a, b in zip(k, x))
        assert F.contains(x)


def test_facet_normals_valid(example_np):
    for fc in example_np.facets:
        assert all(x >= 0 for x in fc.normal)
        for w in example_np.support:
            val = sum(a * b for a, b in zip(fc.normal, w))
            assert val >= fc.m
            assert (val == fc.m) == (w in fc.vertices)
