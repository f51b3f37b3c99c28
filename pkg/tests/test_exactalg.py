from __future__ import annotations

import cmath
import itertools
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kastpoly.cohomology import kasteleyn_class
from kastpoly.exactalg import (
    ONE,
    Q,
    GaussLaurent,
    Poly,
    RepresentabilityError,
    charpoly,
    conj,
    det,
    eta,
    expand_factored,
    gram,
    hermitian_eigenvalues,
    matmul,
    minor_sum,
    poly_from_json,
    strip_zero_roots,
)
from kastpoly.graph import rectangle_grid
from kastpoly.singular import build_matrix

small = st.integers(-3, 3)
laurent = st.dictionaries(st.integers(-3, 3), st.tuples(small, small), max_size=4).map(GaussLaurent)
unit_z = st.floats(0, 2 * np.pi).map(lambda th: cmath.exp(1j * th))


def close(a, b, tol=1e-9):
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


def leibniz_det(m):
    n = len(m)
    acc = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term = term * m[i][perm[i]]
        acc = acc + term
    return acc


def random_matrix(rng, rows, cols, zero_rate=0.3, qspan=2):
    out = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if rng.random() < zero_rate:
                row.append(GaussLaurent())
            else:
                row.append(GaussLaurent({rng.randint(-qspan, qspan): (rng.randint(-2, 2), rng.randint(-2, 2))}))
        out.append(row)
    return out


# -- the scalar ring --------------------------------------------------------


@given(laurent, laurent, laurent)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * ONE == a


@given(laurent, laurent)
def test_conjugation(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    n = a * a.conjugate()
    assert n == n.conjugate()


@given(laurent, laurent, unit_z)
def test_unit_specialisation_is_a_homomorphism(a, b, z):
    assert close((a * b).at(z), a.at(z) * b.at(z))
    assert close(a.conjugate().at(z), complex(a.at(z)).conjugate())


def test_scalar_basics():
    assert Q ** -1 * Q == ONE
    assert (ONE + Q) * (ONE + Q ** -1) == GaussLaurent({-1: (1, 0), 0: (2, 0), 1: (1, 0)})
    assert GaussLaurent.coerce(3) == 3 and GaussLaurent.coerce(3).to_int() == 3
    assert GaussLaurent.coerce(2j) * GaussLaurent.coerce(2j) == -4
    assert (Q + Q ** -1).at(1) == 2 and (Q + Q ** -1).at(-1) == -2
    with pytest.raises(ValueError):
        Q.to_complex()
    with pytest.raises(TypeError):
        GaussLaurent.coerce(0.5)


def test_eta_examples():
    assert eta((0, 0)) == 1
    assert eta((F(1, 2), 0)) == -1
    assert eta((F(1, 4), 2)) == GaussLaurent({2: (0, 1)})
    assert eta((F(-1, 4), 0)) == GaussLaurent({0: (0, -1)})
    with pytest.raises(RepresentabilityError):
        eta((F(1, 3), 0))
    assert close(eta((F(1, 3), 0), "float"), cmath.exp(2j * cmath.pi / 3))
    with pytest.raises(ValueError):
        eta((0, 1), "float")
    assert close(eta((F(1, 4), 1), "float", -1), -1j)


@given(st.fractions(max_denominator=4).filter(lambda f: f.denominator in (1, 2, 4)), st.integers(-3, 3), unit_z)
def test_eta_backends_agree(rot, qexp, z):
    assert close(eta((rot, qexp)).at(z), eta((rot, qexp), "float", z))
    assert conj(eta((rot, qexp))) == eta((-rot, -qexp))


# -- polynomials --------------------------------------------------------------


def test_charpoly_examples():
    assert charpoly([[GaussLaurent.coerce(5)]]) == Poly.from_ints([1, -5])
    assert charpoly([[2, 0], [0, 2]]) == Poly.from_ints([1, -4, 4])
    m = [[GaussLaurent.coerce(2), ONE + Q ** -1], [ONE + Q, GaussLaurent.coerce(2)]]
    p = charpoly(m)
    assert p.coeffs[:2] == (1, -4)
    assert p.coeffs[2] == GaussLaurent({-1: (-1, 0), 0: (2, 0), 1: (-1, 0)})
    assert charpoly([]) == Poly.from_ints([1])


@given(st.integers(0, 10**6), st.integers(1, 5))
def test_charpoly_matches_numpy(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.integers(-3, 4, (n, n)) + 1j * rng.integers(-3, 4, (n, n))
    exact = charpoly([[GaussLaurent.coerce(complex(x)) for x in row] for row in a])
    ref = np.poly(a)
    assert all(close(GaussLaurent.coerce(c).to_complex(), r, 1e-7) for c, r in zip(exact.coeffs, ref))
    floaty = charpoly(a.tolist())
    assert all(close(c, r, 1e-7) for c, r in zip(floaty.coeffs, ref))


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_cayley_hamilton_over_laurent(seed, n):
    a = random_matrix(random.Random(seed), n, n)
    p = charpoly(a)
    acc = [[GaussLaurent() for _ in range(n)] for _ in range(n)]
    for c in p.coeffs:
        acc = matmul(acc, a)
        for i in range(n):
            acc[i][i] = acc[i][i] + c
    assert all(x == 0 for row in acc for x in row)


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_det_matches_leibniz(seed, n):
    a = random_matrix(random.Random(seed), n, n)
    assert GaussLaurent.coerce(det(a)) == GaussLaurent.coerce(leibniz_det(a))


def test_minor_sum_examples():
    g = rectangle_grid(2, 2)
    k = build_matrix(g, kasteleyn_class(g)).rows()
    assert minor_sum(k, 0) == 1
    assert minor_sum(k, 1) == len(g.edges)
    assert minor_sum(k, 2) == 4
    with pytest.raises(ValueError):
        minor_sum(k, 3)


@given(st.integers(0, 10**6), st.integers(1, 4), st.integers(1, 4))
def test_coefficients_are_minor_sums(seed, rows, cols):
    a = random_matrix(random.Random(seed), rows, cols)
    p = charpoly(gram(a))
    assert p.degree == rows
    for m in range(min(rows, cols) + 1):
        assert p.coeff(m) == (-1) ** m * minor_sum(a, m)
    for m in range(min(rows, cols) + 1, rows + 1):
        assert p.coeff(m) == 0


def test_strip_examples():
    assert strip_zero_roots(Poly.from_ints([1, -2, 0])) == (Poly.from_ints([1, -2]), 1)
    assert strip_zero_roots(Poly.from_ints([1, -1])) == (Poly.from_ints([1, -1]), 0)
    p = charpoly(gram(build_matrix(rectangle_grid(3, 3), kasteleyn_class(rectangle_grid(3, 3))).rows()))
    q = expand_factored([(Poly.from_ints([1, -2]), 2), (Poly.from_ints([1, -4]), 2)])
    assert strip_zero_roots(p) == (q, 1)
    with pytest.raises(ValueError):
        strip_zero_roots(Poly(()))
    assert strip_zero_roots(Poly((1.0, -2.0, 1e-14)))[1] == 1


def test_expand_examples():
    assert expand_factored([(Poly.from_ints([1, -2]), 2)]) == Poly.from_ints([1, -4, 4])
    assert expand_factored([(Poly.from_ints([1, -5, 5]), 2)]) == Poly.from_ints([1, -10, 35, -50, 25])
    assert expand_factored([(Poly.from_ints([1, -1]), 1), (Poly.from_ints([1, -3]), 2)]) == Poly.from_ints([1, -7, 15, -9])
    assert expand_factored([]) == Poly.from_ints([1])


ipoly = st.lists(st.integers(-5, 5), min_size=1, max_size=6).map(Poly.from_ints)
monic = st.lists(st.integers(-5, 5), max_size=4).map(lambda cs: Poly.from_ints([1] + cs))


@given(ipoly, monic)
def test_division(p, d):
    quo, rem = p.divmod_monic(d)
    assert quo * d + rem == p
    assert rem.degree < d.degree


@given(ipoly, ipoly, st.integers(-4, 4))
def test_poly_evaluation(p, r, x):
    assert (p * r)(x) == p(x) * r(x)
    assert (p + r)(x) == p(x) + r(x)


def test_json_round_trip():
    m = [[GaussLaurent.coerce(2), ONE + Q ** -1], [ONE + Q, GaussLaurent.coerce(2)]]
    for p in (Poly.from_ints([1, -4, 4]), charpoly(m)):
        assert poly_from_json(p.to_json()) == p
    assert Poly.from_ints([1, -4, 4]).to_json() == {"var": "t", "coeffs": [1, -4, 4]}
    assert str(Poly.from_ints([1, -4, 4])) == "t^2 - 4*t + 4"


# -- eigenvalues ------------------------------------------------------------------


def test_jacobi_examples():
    assert np.allclose(hermitian_eigenvalues([[2, 0], [0, 2]]), [2, 2])
    g = rectangle_grid(2, 2)
    k = build_matrix(g, kasteleyn_class(g), "float").to_numpy()
    assert np.allclose(hermitian_eigenvalues(k @ k.conj().T), [2, 2])
    g = rectangle_grid(3, 3)
    k = build_matrix(g, kasteleyn_class(g), "float").to_numpy()
    assert np.allclose(hermitian_eigenvalues(k @ k.conj().T), [0, 2, 2, 4, 4], atol=1e-10)
    with pytest.raises(ValueError):
        hermitian_eigenvalues([[0, 1], [0, 0]])
    assert hermitian_eigenvalues(np.zeros((0, 0))) == []


@given(st.integers(0, 10**6), st.integers(1, 9))
def test_jacobi_matches_numpy(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = a + a.conj().T
    assert np.allclose(hermitian_eigenvalues(h), np.linalg.eigvalsh(h), atol=1e-9)


def test_jacobi_degenerate_spectrum():
    rng = np.random.default_rng(1)
    u, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    h = u @ np.diag([1, 1, 1, 4, 4, 9]) @ u.conj().T
    assert np.allclose(hermitian_eigenvalues(h), [1, 1, 1, 4, 4, 9], atol=1e-9)
