"""Invariant bilinear forms, Killing forms and the (L*) checks.

Dual vectors are coordinate vectors in the dual basis of the Chevalley basis.
A form with Gram matrix G gives beta(v) = G^T v, i.e. beta(v)(w) = v^T G w.
"""

import itertools
from dataclasses import dataclass, field
from math import gcd
from functools import reduce

import numpy as np

from .chevalley import (
    _sparse_bracket,
    adjoint_matrices,
    adjoint_matrix,
    build_chevalley,
    center,
    derived_subalgebra,
    epsilon,
    p_valuation,
    reduce_mod_p,
)
from .linalg import SubspaceModP, det_mod, nullspace
from .moore import CounterexampleError, canonical_line
from .rootsystem import build_root_system


@dataclass(eq=False)
class BilinearForm:
    g: object
    gram: np.ndarray
    invariant: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def p(self):
        return self.g.p

    def __call__(self, v, w):
        return int(np.asarray(v) @ self.gram @ np.asarray(w)) % self.p

    def beta(self, v):
        return (self.gram.T @ (np.asarray(v, dtype=np.int64) % self.p)) % self.p

    def is_invariant(self):
        return not invariance_residual(self.g, self.gram).any()

    def is_nondegenerate(self):
        return det_mod(self.gram, self.p) != 0

    def radical(self):
        return SubspaceModP(self.p, self.g.dim, nullspace(self.gram, self.p))

    def scaled(self, c):
        return BilinearForm(self.g, (self.gram * c) % self.p, self.invariant, dict(self.meta))


def invariance_residual(g, gram):
    """Stack of ad(x)^T G + G ad(x) over all basis x (all zero iff G is invariant)."""
    mats = adjoint_matrices(g)
    return (np.transpose(mats, (0, 2, 1)) @ gram + gram @ mats) % g.p


def dual_action(g, x, f):
    """(x . f)(v) = -f([x, v])."""
    a = adjoint_matrix(g, x)
    return (-(a.T @ (np.asarray(f, dtype=np.int64) % g.p))) % g.p


def killing_form_Z(alg):
    """Exact integer Gram matrix of tr(ad x ad y) over the Chevalley basis."""
    t = alg.structure_tensor()
    ad = np.transpose(t, (0, 2, 1)).astype(object)
    # sparse enough at these ranks to do the traces exactly with Python ints
    dim = alg.dim
    out = np.zeros((dim, dim), dtype=object)
    for i in range(dim):
        for j in range(i, dim):
            v = int(np.sum(ad[i] * ad[j].T))
            out[i, j] = out[j, i] = v
    return out


def _basis_components(alg):
    """Component index of each basis element."""
    rs = alg.rs
    comp = []
    for r in rs.roots:
        k = next(i for i, c in enumerate(r) if c)
        comp.append(rs.component_of[k])
    return comp + list(rs.component_of)


def killing_divisibility(alg):
    """Per component: does 2h divide every Killing entry over Z?  Also the gcd."""
    kz = killing_form_Z(alg)
    comp = _basis_components(alg)
    out = []
    for c, (fam, r) in enumerate(alg.rs.components):
        idx = [i for i, k in enumerate(comp) if k == c]
        entries = [int(kz[i, j]) for i in idx for j in idx if kz[i, j]]
        h = alg.rs.coxeter_numbers[c]
        g_all = reduce(gcd, entries, 0)
        out.append({
            "component": "%s%d" % (fam, r),
            "coxeter": h,
            "two_h": 2 * h,
            "gcd": g_all,
            "divisible_over_Z": all(e % (2 * h) == 0 for e in entries),
        })
    return out


def _divide_in_Zp(value, divisor, p):
    """value / divisor as an element of Z_p, reduced mod p."""
    if value == 0:
        return 0
    a = p_valuation(divisor, p)
    if p_valuation(value, p) < a:
        raise CounterexampleError("%d / %d does not lie in Z_%d" % (value, divisor, p))
    v, d = value // p**a, divisor // p**a
    return (v * pow(d % p, p - 2, p)) % p


def normalized_killing(alg, p, strict=True):
    """Killing form divided by 2h (per component), as a form on Phi(F_p).

    The division is exact over Z when 2h divides every entry; otherwise it is
    carried out in Z_p, which needs p-adic divisibility.  With strict=False a
    degenerate form at a nice prime is returned (meta records it) instead of
    raising.
    """
    kz = killing_form_Z(alg)
    comp = _basis_components(alg)
    hs = alg.rs.coxeter_numbers
    dim = alg.dim
    gram = np.zeros((dim, dim), dtype=np.int64)
    integral = True
    for i in range(dim):
        for j in range(dim):
            v = int(kz[i, j])
            if not v:
                continue
            if comp[i] != comp[j]:
                raise CounterexampleError("Killing form pairs different components")
            two_h = 2 * hs[comp[i]]
            if v % two_h == 0:
                gram[i, j] = (v // two_h) % p
            else:
                integral = False
                gram[i, j] = _divide_in_Zp(v, two_h, p)
    g = reduce_mod_p(alg, p)
    form = BilinearForm(g, gram, meta={"integral_over_Z": integral})
    form.invariant = form.is_invariant()
    if not form.invariant:
        raise CounterexampleError("normalized Killing form is not invariant")
    form.meta["nondegenerate"] = form.is_nondegenerate()
    if strict and is_nice_prime(p, alg.rs)["verdict"] and not form.meta["nondegenerate"]:
        raise CounterexampleError("normalized Killing form degenerate at a nice prime")
    return form


def primitive_killing(alg, p):
    """Killing form divided by the gcd of its entries on each component.

    Over Z that gcd is 2h^vee (dual Coxeter number), which equals 2h only in
    the simply-laced case.
    """
    kz = killing_form_Z(alg)
    comp = _basis_components(alg)
    content = {d["component"]: d["gcd"] for d in killing_divisibility(alg)}
    names = ["%s%d" % c for c in alg.rs.components]
    gram = np.zeros((alg.dim, alg.dim), dtype=np.int64)
    for i, j in zip(*np.nonzero(kz)):
        gram[i, j] = (int(kz[i, j]) // content[names[comp[i]]]) % p
    g = reduce_mod_p(alg, p)
    form = BilinearForm(g, gram, meta={"content": [content[n] for n in names]})
    form.invariant = form.is_invariant()
    return form


def invariant_form_space(g):
    """Basis of all g-invariant bilinear forms ([x,v],w) + (v,[x,w]) = 0."""
    p, dim = g.p, g.dim
    mats = adjoint_matrices(g)
    allowed = np.ones((dim, dim), dtype=bool)
    rest = []
    for a in mats:
        off = a.copy()
        np.fill_diagonal(off, 0)
        if not off.any():
            d = np.diag(a)
            allowed &= ((d[:, None] + d[None, :]) % p == 0)
        else:
            rest.append(a)
    idx = np.argwhere(allowed)
    sols = np.zeros((len(idx), dim * dim), dtype=np.int64)
    for k, (i, j) in enumerate(idx):
        sols[k, i * dim + j] = 1
    for a in rest:
        if len(sols) == 0:
            break
        grams = sols.reshape(-1, dim, dim)
        res = (a.T[None] @ grams + grams @ a[None]) % p
        res = res.reshape(len(sols), -1)
        coeffs = nullspace(res.T, p)
        sols = (coeffs @ sols) % p
    return [BilinearForm(g, s.reshape(dim, dim), invariant=True) for s in sols]


def lemma17_check(g, form):
    """Check x.beta(y) = y.beta(-x) and beta(x)([x, g]) = 0 on all basis pairs."""
    p, dim = g.p, g.dim
    fails_a, fails_b = [], []
    for i in range(dim):
        x = g.basis_vector(i)
        ax = adjoint_matrix(g, x)
        bx = form.beta(x)
        if ((bx @ ax) % p).any():
            fails_b.append(g.labels[i])
        for j in range(dim):
            y = g.basis_vector(j)
            lhs = dual_action(g, x, form.beta(y))
            rhs = dual_action(g, y, form.beta((-x) % p))
            if not np.array_equal(lhs, rhs):
                fails_a.append((g.labels[i], g.labels[j]))
    return {"check": "lemma17", "pairs": dim * dim, "a_violations": fails_a, "b_violations": fails_b,
            "verdict": not fails_a and not fails_b}


def _lines_of(space):
    """Canonical generators of every line in a subspace (explicit enumeration)."""
    p = space.p
    k = len(space)
    out = set()
    for coeffs in itertools.product(range(p), repeat=k):
        if any(coeffs):
            v = (np.array(coeffs, dtype=np.int64) @ space.basis) % p
            out.add(canonical_line(v, p))
    return out


def disjointness_check(g, form, x, y):
    """(P([x,g]) - P(ker beta(y))) and (P([y,g]) - P(ker beta(x))) share no line."""
    p = g.p
    x = np.asarray(x, dtype=np.int64) % p
    y = np.asarray(y, dtype=np.int64) % p
    img_x = SubspaceModP(p, g.dim, adjoint_matrix(g, x).T)
    img_y = SubspaceModP(p, g.dim, adjoint_matrix(g, y).T)
    bx, by = form.beta(x), form.beta(y)
    left = {l for l in _lines_of(img_x) if int(np.array(l) @ by) % p}
    right = {l for l in _lines_of(img_y) if int(np.array(l) @ bx) % p}
    common = left & right
    return {"left": len(left), "right": len(right), "common": sorted(common), "verdict": not common}


def is_nice_prime(p, rs):
    if p < 5:
        return {"p": p, "type": rs.name, "verdict": False, "failing_clause": "p < 5"}
    for fam, n in rs.components:
        if fam == "A" and (n + 1) % p == 0:
            return {"p": p, "type": rs.name, "verdict": False, "failing_clause": "p divides n+1 for A%d" % n}
    return {"p": p, "type": rs.name, "verdict": True, "failing_clause": None}


def check_L0(alg, p, t):
    """zeta: g -> V = L/pL, zeta(x + pN) = p^t x + pL, checked for equivariance."""
    eps = epsilon(p)
    g = reduce_mod_p(alg, p)
    report = {"check": "L0", "p": p, "t": t}
    if t < eps:
        report.update(verdict=False, reason="t < epsilon")
        return report
    z = center(g)
    if len(z):
        report.update(verdict=False, reason="precondition failure: center(g) != 0", center_dim=len(z))
        return report
    dim = alg.dim
    pt = p**t
    zeta = np.eye(dim, dtype=np.int64)
    bad = []
    for i in range(dim):
        # action of x = b_i on V, from integer brackets [b_i, p^t b_j] in the basis p^t b_j of L
        rho = np.zeros((dim, dim), dtype=np.int64)
        for j in range(dim):
            br = _sparse_bracket(alg.table, {i: 1}, {j: pt})
            for k, c in br.items():
                assert c % pt == 0
                rho[k, j] = (c // pt) % p
        ad = adjoint_matrix(g, g.basis_vector(i))
        if not np.array_equal((rho @ zeta) % p, (zeta @ ad) % p):
            bad.append(alg.labels[i])
    report.update(verdict=not bad and det_mod(zeta, p) != 0, equivariance_failures=bad)
    return report


def check_L1(g, forms=None):
    """Span of {x . beta(y)} over basis x, y and a basis of invariant forms."""
    p, dim = g.p, g.dim
    if forms is None:
        forms = invariant_form_space(g)
    mats = adjoint_matrices(g)
    vecs = []
    for form in forms:
        betas = form.gram.T % p  # column j is beta(b_j)
        # x . beta(y) = -ad(x)^T beta(y)
        for a in mats:
            vecs.append((-(a.T @ betas)).T % p)
    span = SubspaceModP(p, dim, np.concatenate(vecs) if vecs else None)
    return {
        "check": "L1",
        "p": p,
        "span_dim": len(span),
        "required_dim": dim,
        "num_forms": len(forms),
        "verdict": len(span) == dim,
        "span": span,
    }


def central_z(alg):
    """z = sum_i i h_i as an integer coefficient vector."""
    z = np.zeros(alg.dim, dtype=np.int64)
    for i in range(alg.rs.rank):
        z[alg.h_index(i)] = i + 1
    return z


def central_z_check(n, p):
    if (n + 1) % p:
        raise ValueError("need p | n+1")
    alg = build_chevalley(build_root_system("A", n))
    g = reduce_mod_p(alg, p)
    z = central_z(alg) % p
    brackets_zero = not adjoint_matrix(g, z).any()
    cen = center(g)
    expected = SubspaceModP(p, g.dim, [z])
    return {
        "check": "central_z",
        "n": n,
        "p": p,
        "z_central": brackets_zero,
        "center_dim": len(cen),
        "center_is_z": cen == expected,
        "verdict": brackets_zero and cen == expected,
    }


def section4_check(n, p):
    """Center = <z>, and the (L1) span is exactly the annihilator of z."""
    rep = central_z_check(n, p)
    alg = build_chevalley(build_root_system("A", n))
    g = reduce_mod_p(alg, p)
    l1 = check_L1(g)
    ann = SubspaceModP(p, g.dim, [central_z(alg) % p]).annihilator()
    rep.update({
        "check": "section4",
        "span_dim": l1["span_dim"],
        "dim": g.dim,
        "span_is_annihilator": l1["span"] == ann,
    })
    rep["verdict"] = rep["verdict"] and l1["span_dim"] == g.dim - 1 and rep["span_is_annihilator"]
    return rep


def lstar_check(rs, p, t):
    """(L0) and (L1) per indecomposable component; the sum passes iff all components do."""
    comps = []
    for fam, n in rs.components:
        crs = build_root_system(fam, n)
        alg = build_chevalley(crs)
        g = reduce_mod_p(alg, p)
        l0 = check_L0(alg, p, t)
        l1 = check_L1(g)
        entry = {"component": "%s%d" % (fam, n), "L0": l0["verdict"], "L1": l1["verdict"],
                 "span_dim": l1["span_dim"], "dim": g.dim}
        if is_nice_prime(p, crs)["verdict"]:
            perfect = len(derived_subalgebra(g)) == g.dim
            nondeg = normalized_killing(alg, p, strict=False).meta["nondegenerate"]
            entry["thm34_route"] = perfect and nondeg
            if entry["thm34_route"] and not l1["verdict"]:
                raise CounterexampleError("perfect + nondegenerate form but (L1) fails for %s" % entry["component"])
        entry["verdict"] = l0["verdict"] and l1["verdict"]
        comps.append(entry)
    return {"check": "lstar", "type": rs.name, "p": p, "t": t, "components": comps,
            "verdict": all(c["verdict"] for c in comps)}
