"""Integer polynomials and exact alternating sums over residue classes."""

import math
import random

import pytest

from padicsums import (
    IntPolynomial,
    alt_floor_sum,
    alt_sum,
    binom_exact,
    binom_poly,
    check_floor_identity,
    check_split_identity,
    parse_poly,
    poly_delta,
)
from padicsums.polysum import ONE, X, ZERO


def brute_alt_sum(n, r, m, f):
    return sum(
        (-1) ** k * math.comb(n, k) * f((k - r) // m)
        for k in range(n + 1)
        if (k - r) % m == 0
    )


def brute_alt_floor_sum(n, r, m, f):
    return sum((-1) ** k * math.comb(n, k) * f((k - r) // m) for k in range(n + 1))


def random_poly(rng, max_deg=5):
    deg = rng.randint(0, max_deg)
    coeffs = [rng.randint(-9, 9) for _ in range(deg + 1)]
    return IntPolynomial.of(coeffs)


def test_polynomial_evaluation_and_accessors():
    f = parse_poly("x^3 - 2*x + 1")
    assert f.coeffs == (1, -2, 0, 1)
    assert f.degree == 3
    assert [f(x) for x in (-2, 0, 3)] == [-3, 1, 22]
    assert str(f) == "x^3-2*x+1"
    assert IntPolynomial.of([1, 2, 3])(10) == 321
    assert IntPolynomial.monomial(2)(7) == 49
    assert IntPolynomial.constant(5)(-100) == 5
    assert ZERO(3) == 0 and ONE(3) == 1 and X(3) == 3


def test_shift_property():
    rng = random.Random(101)
    for _ in range(100):
        f = random_poly(rng)
        t = rng.randint(-6, 6)
        g = f.shift(t)
        for x in range(-5, 6):
            assert g(x) == f(x + t)


def test_poly_delta_is_forward_difference():
    assert str(poly_delta(parse_poly("x^3-2*x+1"))) == "3*x^2+3*x-1"
    assert poly_delta(IntPolynomial.constant(7)) == ZERO
    rng = random.Random(103)
    for _ in range(100):
        f = random_poly(rng)
        g = poly_delta(f)
        for x in range(-4, 5):
            assert g(x) == f(x + 1) - f(x)


def test_binom_poly_is_falling_factorial():
    assert str(binom_poly(3)) == "x^3-3*x^2+2*x"
    assert binom_poly(0) == ONE
    assert binom_poly(1) == X
    for l in range(7):
        f = binom_poly(l)
        for x in range(-6, 12):
            assert f(x) == math.prod(x - i for i in range(l))
        for x in range(l, 12):
            assert f(x) == math.factorial(l) * math.comb(x, l)


def test_binom_exact():
    for n in range(0, 40):
        for k in range(-2, n + 3):
            want = math.comb(n, k) if 0 <= k <= n else 0
            assert binom_exact(n, k) == want


def test_parse_poly_errors():
    for bad in ("x^", "x**2", "", "2x+", "y"):
        with pytest.raises(ValueError):
            parse_poly(bad)


def test_alt_sum_matches_brute_force():
    rng = random.Random(107)
    for _ in range(300):
        n = rng.randint(0, 50)
        m = rng.randint(1, 9)
        r = rng.randint(-12, 12)
        f = random_poly(rng)
        assert alt_sum(n, r, m, f) == brute_alt_sum(n, r, m, f)


def test_alt_sum_pascal_recurrence():
    rng = random.Random(109)
    for _ in range(200):
        n = rng.randint(1, 40)
        m = rng.randint(1, 9)
        r = rng.randint(-12, 12)
        f = random_poly(rng)
        assert alt_sum(n, r, m, f) == alt_sum(n - 1, r, m, f) - alt_sum(n - 1, r - 1, m, f)


def test_alt_sum_reflection_symmetry():
    """Swapping r for n-r flips the sign by (-1)^(l+n) for monomials."""
    ms = (1, 2, 3, 4, 5, 8, 9, 16, 25, 27)
    for n in range(1, 61, 3):
        for m in ms:
            for l in (0, 1, 3, 8):
                f = IntPolynomial.monomial(l)
                for r in {0, 1, m // 2, m - 1, n % m}:
                    lhs = alt_sum(n, n - r, m, f)
                    rhs = (-1) ** (l + n) * alt_sum(n, r, m, f)
                    assert lhs == rhs, (n, m, l, r)


def test_alt_floor_sum_matches_brute_force():
    rng = random.Random(113)
    for _ in range(300):
        n = rng.randint(0, 50)
        m = rng.randint(1, 9)
        r = rng.randint(-12, 12)
        f = random_poly(rng)
        assert alt_floor_sum(n, r, m, f) == brute_alt_floor_sum(n, r, m, f)


def test_floor_identity_random():
    rng = random.Random(127)
    for _ in range(500):
        n = rng.randint(1, 60)
        m = rng.randint(1, 9)
        r = rng.randint(-12, 12)
        f = random_poly(rng)
        assert check_floor_identity(n, m, r, f)


def test_split_identity_random():
    rng = random.Random(131)
    for _ in range(500):
        n = rng.randint(1, 60)
        m = rng.randint(1, 9)
        r = rng.randint(-12, 12)
        f = random_poly(rng)
        assert check_split_identity(n, m, r, f)


def test_identities_edge_cases():
    # constants, m = 1, and extreme residues
    for f in (ZERO, ONE, IntPolynomial.constant(-4), binom_poly(5)):
        for n in (1, 2, 7):
            for m in (1, 2, 9):
                for r in (-12, 0, m - 1, 12):
                    assert check_floor_identity(n, m, r, f)
                    assert check_split_identity(n, m, r, f)


def test_alt_sum_small_closed_forms():
    # m = 1 collapses to a plain alternating binomial sum; degree below n
    # kills it, degree n leaves the sign and factorial
    for n in range(1, 10):
        for l in range(0, n):
            assert alt_sum(n, 0, 1, IntPolynomial.monomial(l)) == 0
        assert alt_sum(n, 0, 1, IntPolynomial.monomial(n)) == (-1) ** n * math.factorial(n)
