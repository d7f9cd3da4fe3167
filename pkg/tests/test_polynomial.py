import pytest

from igusazeta.polynomial import (
    IntPolynomial,
    PolynomialError,
    face_restriction,
    format_polynomial,
    parse_polynomial,
    partial_derivative,
)

from conftest import A, B, D, face_of


def test_parse_example_support():
    f = parse_polynomial("x^3 + x*y + y^2 + z^2", 3)
    assert set(f.terms) == {(3, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 2)}
    assert set(f.terms.values()) == {1}


def test_single_term_with_coefficient():
    f = parse_polynomial("2*x^2*y", 3)
    assert f.terms == {(2, 1, 0): 2}


def test_optional_star_between_coefficient_and_variable():
    assert parse_polynomial("3x^2 y", 3) == parse_polynomial("3*x^2*y", 3)


def test_like_terms_collect():
    f = parse_polynomial("x*y + 2*x*y - z", 3)
    assert f.terms == {(1, 1, 0): 3, (0, 0, 1): -1}


@pytest.mark.parametrize("text", ["x^", "x**2", "x + q", "x^-1", "", "x +"])
def test_malformed_input(text):
    with pytest.raises(PolynomialError):
        parse_polynomial(text, 3)


def test_zero_polynomial_rejected():
    with pytest.raises(PolynomialError):
        parse_polynomial("x - x", 3)


def test_constant_term_rejected_on_request():
    assert parse_polynomial("1 + x", 3).constant_term() == 1
    with pytest.raises(PolynomialError):
        parse_polynomial("1 + x", 3, require_vanishing_at_origin=True)


def test_variable_beyond_dimension():
    with pytest.raises(PolynomialError):
        parse_polynomial("x + w", 3)
    with pytest.raises(PolynomialError):
        parse_polynomial("x", 7)


@pytest.mark.parametrize("text", ["x^3 + x*y + y^2 + z^2", "-2*x*y*z + 5*w^3 - z", "7*y"])
def test_format_round_trip(text):
    f = parse_polynomial(text, 4)
    assert parse_polynomial(format_polynomial(f), 4) == f


def test_face_restriction_example(example_np):
    f = example_np.f
    tau0 = face_of(example_np, A, B, D)
    assert face_restriction(f, tau0) == parse_polynomial("x^3 + x*y + z^2", 3)
    assert face_restriction(f, face_of(example_np, B, D)) == parse_polynomial("x*y + z^2", 3)


def test_face_restriction_needs_matching_polyhedron(example_np):
    other = parse_polynomial("x^2 + y", 3)
    with pytest.raises(PolynomialError):
        face_restriction(other, example_np.compact_faces[0])


def test_partial_derivative():
    f = parse_polynomial("x^3 + x*y + y^2 + z^2", 3)
    assert partial_derivative(f, "x") == parse_polynomial("3*x^2 + y", 3)
    assert partial_derivative(f, 3) == parse_polynomial("2*z", 3)
    assert partial_derivative(parse_polynomial("z^2", 3), "x").is_zero()
    assert partial_derivative(parse_polynomial("x*y", 3), "y") == parse_polynomial("x", 3)
    with pytest.raises(PolynomialError):
        partial_derivative(f, 4)


def test_evaluate_modulus():
    f = IntPolynomial(2, {(2, 0): 1, (0, 1): 3})
    assert f.evaluate((4, 5)) == 31
    assert f.evaluate((4, 5), modulus=7) == 3
