import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modlie.fppoly import (
    FpPoly,
    PolyMatrix,
    RingMismatch,
    adjugate,
    det_bareiss,
    det_cofactor,
    divides,
    parse_poly,
)
from modlie.linalg import det_mod


def w(p, m, i, k=1):
    return FpPoly.var(p, m, i - 1, k)


def polys(p, m, max_deg=3, max_terms=4):
    term = st.tuples(st.tuples(*[st.integers(0, max_deg)] * m), st.integers(0, p - 1))
    return st.lists(term, max_size=max_terms).map(lambda ts: FpPoly(p, m, dict(ts)))


def evaluate(f, point):
    total = 0
    for e, c in f.terms.items():
        t = c
        for x, k in zip(point, e):
            t = t * pow(x, k, f.p)
        total += t
    return total % f.p


def test_arithmetic_examples():
    w1, w2 = w(2, 2, 1), w(2, 2, 2)
    assert (w1 + w2) ** 2 == w1 ** 2 + w2 ** 2
    assert (w1 * FpPoly.zero(2, 2)).is_zero()
    v = w(3, 1, 1)
    assert (v + 1) ** 3 == v ** 3 + 1
    assert FpPoly.constant(5, 1, 7) == 2


def test_frobenius_examples():
    w1, w2 = w(3, 2, 1), w(3, 2, 2)
    assert (w1 + w2).frobenius_pow(1) == w1 ** 3 + w2 ** 3
    f = w1 * w2 + 2
    assert f.frobenius_pow(0) == f
    assert (2 * w(5, 1, 1)).frobenius_pow(2) == 2 * w(5, 1, 1, 25)


def test_divides_examples():
    w1, w2 = w(5, 2, 1), w(5, 2, 2)
    assert divides(w1, w1 * w2 ** 2) == w2 ** 2
    assert divides(w1 + w2, w1 ** 2 - w2 ** 2) == w1 - w2
    assert divides(w1, w2) is None
    with pytest.raises(ZeroDivisionError):
        divides(FpPoly.zero(5, 2), w1)


def test_determinant_examples():
    f = w(3, 2, 1) + 2
    assert det_cofactor(PolyMatrix([[f]])) == f
    assert adjugate(PolyMatrix([[f]])) == PolyMatrix([[FpPoly.constant(3, 2, 1)]])
    w1, w2 = w(3, 2, 1), w(3, 2, 2)
    a = PolyMatrix([[w1, w2], [w1 ** 2, w2 ** 2]])
    assert det_cofactor(a) == w1 * w2 ** 2 - w1 ** 2 * w2
    assert det_bareiss(a) == det_cofactor(a)


def test_substitute_examples():
    w1, w2 = w(5, 2, 1), w(5, 2, 2)
    assert (w1 + w2).substitute([w2, w2]) == 2 * w2
    moore = det_cofactor(PolyMatrix([[w1, w2], [w1 ** 5, w2 ** 5]]))
    assert moore.substitute([w2, w2]).is_zero()
    f = w1 ** 3 * w2 + 4 * w2 ** 2 + 1
    assert f.substitute([w1, w2]) == f


def test_ring_mismatch_and_overflow():
    with pytest.raises(RingMismatch):
        w(3, 2, 1) + w(5, 2, 1)
    with pytest.raises(RingMismatch):
        w(3, 2, 1) * w(3, 3, 1)
    with pytest.raises(OverflowError):
        FpPoly.monomial(3, (2 ** 31,))
    with pytest.raises(ValueError):
        FpPoly.monomial(3, (-1,))


def test_str_roundtrip():
    f = FpPoly(5, 2, {(3, 1): 2, (0, 0): 1, (1, 0): 4})
    assert str(f) == "2*w1^3*w2^1 + 4*w1^1 + 1"
    assert parse_poly(5, 2, str(f)) == f
    assert FpPoly.from_json(5, 2, f.to_json()) == f


@settings(max_examples=80, deadline=None)
@given(polys(5, 2), polys(5, 2), polys(5, 2))
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert (f - f).is_zero()


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(polys(p, 2), polys(p, 2))))
def test_divides_product(fg):
    f, g = fg
    if f.is_zero():
        return
    assert divides(f, f * g) == g


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(polys(p, 3), st.integers(0, 2))))
def test_frobenius_matches_power(fr):
    f, r = fr
    assert f.frobenius_pow(r) == f ** (f.p ** r)


@settings(max_examples=60, deadline=None)
@given(polys(3, 2), polys(3, 2))
def test_formal_partial_is_leibniz(f, g):
    for j in range(2):
        assert (f * g).partial(j) == f.partial(j) * g + f * g.partial(j)


def test_division_failure_of_non_multiple():
    w1, w2 = w(3, 2, 1), w(3, 2, 2)
    assert divides(w1 + w2, w1 * w2 + 1) is None
    assert divides(w1 ** 2, w1 ** 3 * w2) == w1 * w2


@pytest.mark.parametrize("p,n", [(2, 2), (3, 3), (5, 3), (3, 4), (2, 5)])
def test_det_against_pointwise_evaluation(p, n):
    # oracle: evaluating the polynomial determinant at points equals det_mod of evaluated matrices
    rng = random.Random(p * 100 + n)
    m = 2
    mat = PolyMatrix([[FpPoly(p, m, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randrange(p) for _ in range(2)})
                       for _ in range(n)] for _ in range(n)])
    d_b = det_bareiss(mat)
    d_c = det_cofactor(mat)
    assert d_b == d_c
    for point in itertools.product(range(p), repeat=m):
        num = np.array([[evaluate(mat[i, j], point) for j in range(n)] for i in range(n)])
        assert evaluate(d_b, point) == det_mod(num, p)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_adjugate_identity(n):
    rng = random.Random(n)
    p, m = 3, 2
    for _ in range(5):
        a = PolyMatrix([[FpPoly(p, m, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randrange(p)})
                         for _ in range(n)] for _ in range(n)])
        d = det_cofactor(a)
        assert adjugate(a) @ a == PolyMatrix.identity(p, m, n, scale=d)
        assert a @ adjugate(a) == PolyMatrix.identity(p, m, n, scale=d)
