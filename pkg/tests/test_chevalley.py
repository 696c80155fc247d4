import copy

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modlie.chevalley import (
    algebra_from_table,
    adjoint_matrix,
    bracket,
    build_chevalley,
    center,
    certify_simple,
    derived_subalgebra,
    ideal_closure,
    lemma31_check,
    reduce_mod_p,
    replay_certificate,
    verify_jacobi,
)
from modlie.rootsystem import parse_type

_cache = {}


def alg(name):
    if name not in _cache:
        _cache[name] = build_chevalley(parse_type(name))
    return _cache[name]


def basis_a1():
    a = alg("A1")
    return a.e((1,)), a.e((-1,)), a.h(0)


def test_basis_order_is_e_f_h():
    assert alg("A1").labels == ("E(1)", "E(-1)", "H(1)")


def test_a1_against_sl2_matrices():
    # independent oracle: e, f, h as 2x2 matrices with the commutator
    mats = [np.array([[0, 1], [0, 0]]), np.array([[0, 0], [1, 0]]), np.array([[1, 0], [0, -1]])]
    flat = np.array([m.flatten() for m in mats]).T
    a = alg("A1")
    for i in range(3):
        for j in range(3):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            coords = np.linalg.lstsq(flat, comm.flatten(), rcond=None)[0].round().astype(int)
            assert list(bracket(a, a.basis_vector(i), a.basis_vector(j))) == list(coords)


def test_a1_examples():
    a = alg("A1")
    e, f, h = basis_a1()
    assert list(bracket(a, h, e)) == list(2 * e)
    assert list(bracket(a, e, f)) == list(h)
    assert list(bracket(a, h, e + f)) == list(2 * e - 2 * f)
    assert not bracket(a, e + 3 * h, e + 3 * h).any()


def test_a2_simply_laced_constant():
    a = alg("A2")
    v = bracket(a, a.e((1, 0)), a.e((0, 1)))
    k = a.root_index((1, 1))
    assert abs(v[k]) == 1 and np.count_nonzero(v) == 1


def test_g2_has_constant_three():
    t = alg("G2").structure_tensor()
    n = alg("G2").nroots
    assert np.abs(t[:n, :n, :n]).max() == 3


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2", "F4"])
def test_abs_N_is_q_plus_one(name):
    # Chevalley's theorem: |N_{a,b}| = q + 1, q from the root string enumerated by brute force
    a = alg(name)
    roots = set(a.rs.roots)
    t = a.structure_tensor()
    for i, x in enumerate(a.rs.roots):
        for j, y in enumerate(a.rs.roots):
            s = tuple(u + v for u, v in zip(x, y))
            if s not in roots:
                continue
            q = 0
            while tuple(v - (q + 1) * u for u, v in zip(x, y)) in roots:
                q += 1
            assert abs(t[i, j, a.root_index(s)]) == q + 1


def test_jacobi_a1_and_f4():
    rep = verify_jacobi(alg("A1"))
    assert rep["triples_checked"] == 1 and rep["violations"] == []
    rep = verify_jacobi(alg("F4"))
    assert rep["violations"] == [] and rep["antisymmetry_violations"] == []


def test_corrupted_table_detected():
    a = alg("A2")
    table = copy.deepcopy([dict(r) for r in a.table])
    i, j = a.root_index((1, 0)), a.root_index((0, 1))
    k = a.root_index((1, 1))
    table[i][j] = {k: table[i][j][k] * 2}
    table[j][i] = {k: -table[i][j][k]}
    bad = algebra_from_table(table, 7)
    assert verify_jacobi(bad, p=7)["violations"]


def test_reduce_mod_p_rejects_composite():
    with pytest.raises(ValueError):
        reduce_mod_p(alg("A1"), 4)


def test_adjoint_examples():
    g = reduce_mod_p(alg("A1"), 5)
    assert not adjoint_matrix(g, np.zeros(3, dtype=np.int64)).any()
    assert adjoint_matrix(g, g.basis_vector(2)).tolist() == [[2, 0, 0], [0, 3, 0], [0, 0, 0]]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=16, max_size=16), st.lists(st.integers(0, 6), min_size=16, max_size=16))
def test_ad_is_a_representation(xs, ys):
    # ad([x, y]) = [ad x, ad y] mod p, on B2
    g = reduce_mod_p(alg("A2"), 7)
    x, y = np.array(xs[:8]), np.array(ys[:8])
    ax, ay = adjoint_matrix(g, x), adjoint_matrix(g, y)
    assert ((adjoint_matrix(g, bracket(g, x, y)) - (ax @ ay - ay @ ax)) % 7 == 0).all()


def test_center_examples():
    assert len(center(reduce_mod_p(alg("A1"), 5))) == 0
    g2 = reduce_mod_p(alg("A1"), 2)
    c = center(g2)
    assert len(c) == 1 and c.contains(g2.basis_vector(2))
    a4 = alg("A4")
    g = reduce_mod_p(a4, 5)
    z = sum((i + 1) * a4.h(i) for i in range(4))
    c = center(g)
    assert len(c) == 1 and c.contains(z)


def test_derived_examples():
    assert len(derived_subalgebra(reduce_mod_p(alg("A2"), 5))) == 8
    d = derived_subalgebra(reduce_mod_p(alg("A1"), 2))
    assert len(d) == 1 and d.contains([0, 0, 1])
    toy = algebra_from_table([{}, {}, {}], 3)
    assert len(derived_subalgebra(toy)) == 0


def test_ideal_closure_examples():
    g = reduce_mod_p(alg("A1"), 5)
    assert len(ideal_closure(g, [[0, 0, 0]])) == 0
    assert len(ideal_closure(g, [g.basis_vector(0)])) == 3
    a4 = alg("A4")
    z = sum((i + 1) * a4.h(i) for i in range(4))
    assert len(ideal_closure(reduce_mod_p(a4, 5), [z])) == 1


def test_certify_simple_examples():
    g = reduce_mod_p(alg("A1"), 5)
    cert = certify_simple(g, seed=3)
    assert cert["verdict"] == "simple"
    assert replay_certificate(g, cert)
    # cross-check: every basis vector generates the whole algebra
    assert all(len(ideal_closure(g, [g.basis_vector(i)])) == 3 for i in range(3))

    cert = certify_simple(reduce_mod_p(alg("A1"), 2), seed=0)
    assert cert["verdict"] == "not_simple" and cert["ideal_check"]
    assert cert["witness"]["ideal_basis"] == [[0, 0, 1]]

    a4 = alg("A4")
    cert = certify_simple(reduce_mod_p(a4, 5), seed=0)
    assert cert["verdict"] == "not_simple" and cert["witness"]["ideal_dim"] == 1
    z = sum((i + 1) * a4.h(i) for i in range(4)) % 5
    basis = np.array(cert["witness"]["ideal_basis"][0])
    assert any(((c * basis - z) % 5 == 0).all() for c in range(1, 5))


def test_certify_simple_rejects_abelian():
    with pytest.raises(ValueError):
        certify_simple(algebra_from_table([{}, {}], 3))


@pytest.mark.parametrize("name,p", [("B2", 5), ("G2", 7), ("C3", 5)])
def test_certify_simple_nice(name, p):
    assert certify_simple(reduce_mod_p(alg(name), p), seed=1)["verdict"] == "simple"


def test_lemma31_examples():
    a1 = alg("A1")
    assert lemma31_check(a1, 5, 1, a1.e((1,)), 1)["verdict"]
    a2 = alg("A2")
    assert lemma31_check(a2, 7, 2, a2.h(0), 2)["verdict"]
    with pytest.raises(ValueError):
        lemma31_check(a1, 5, 1, 5 * a1.e((1,)), 1)
    with pytest.raises(ValueError):
        lemma31_check(a1, 5, 2, a1.e((1,)), 1)


def test_f4_constant_sizes():
    a = alg("F4")
    t = a.structure_tensor()
    n = a.nroots
    # root strings have length at most 2 off G2
    assert np.abs(t[:n, :n, :n]).max() == 2
    # coroot coefficients of [e_a, e_-a] reach 4 in F4
    assert np.abs(t[:n, :n, n:]).max() == 4
