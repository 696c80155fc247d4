"""Derivations of B = F_p[w_1..w_m], Frobenius twists and membership certificates.

A derivation is stored through its values on the generators: d(w_j) = b_j.
This is the identification of Der(B) with B (x) V*, under which the dual
basis vector f_i is the derivation with d(w_j) = delta_ij.
"""

import itertools
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from .fppoly import FpPoly, RingMismatch, divides
from .linalg import as_mod, rank, rref
from .moore import CounterexampleError, build_U_D, canonical_line, enumerate_lines


@dataclass(frozen=True)
class Derivation:
    p: int
    m: int
    coeffs: Tuple[FpPoly, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.m:
            raise ValueError("need one coefficient per variable")
        for b in self.coeffs:
            if (b.p, b.m) != (self.p, self.m):
                raise RingMismatch("coefficient from a different ring")

    @classmethod
    def zero(cls, p, m):
        return cls(p, m, tuple(FpPoly.zero(p, m) for _ in range(m)))

    @classmethod
    def dual_basis(cls, p, m, i):
        """f_{i+1}: the derivation with w_j -> delta_{i,j}."""
        return cls(p, m, tuple(FpPoly.constant(p, m, int(i == j)) for j in range(m)))

    def __call__(self, f):
        return apply(self, f)

    def __add__(self, other):
        return Derivation(self.p, self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, b):
        """The B-module action (b . d)(x) = b d(x)."""
        return Derivation(self.p, self.m, tuple(b * c for c in self.coeffs))

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)


def apply(d, f):
    """Leibniz extension of w_j -> b_j."""
    if (f.p, f.m) != (d.p, d.m):
        raise RingMismatch("derivation and polynomial live in different rings")
    out = FpPoly.zero(d.p, d.m)
    for j, b in enumerate(d.coeffs):
        if b:
            pj = f.partial(j)
            if pj:
                out = out + b * pj
    return out


def from_endomorphism(phi, p):
    """phi in End(V), V = <w_1..w_m>, viewed as the derivation w_j -> phi(w_j)."""
    phi = as_mod(phi, p)
    m = phi.shape[0]
    coeffs = tuple(FpPoly.linear(p, [int(phi[i, j]) for i in range(m)]) for j in range(m))
    return Derivation(p, m, coeffs)


def frobenius_twist(d, r):
    """d^[p^r]: the derivation with w_j -> d(w_j)^(p^r)."""
    return Derivation(d.p, d.m, tuple(b.frobenius_pow(r) for b in d.coeffs))


def dual_apply(phi, g, p):
    """phi*(g) = g o phi, as a coordinate vector of V*."""
    phi = as_mod(phi, p)
    g = as_mod(g, p)
    if phi.shape[0] != g.shape[0]:
        raise ValueError("dimension mismatch")
    return (phi.T @ g) % p


def _complete_basis(first_rows, p, n):
    """Greedily extend independent rows to a basis of F_p^n with unit vectors."""
    rows = [np.asarray(r, dtype=np.int64) % p for r in first_rows]
    for k in range(n):
        if len(rows) == n:
            break
        e = np.zeros(n, dtype=np.int64)
        e[k] = 1
        if rank(np.array(rows + [e]), p) > len(rows):
            rows.append(e)
    return rows


def _inverse_mod(a, p):
    n = a.shape[0]
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref(aug, p)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return r[:, n:]


@dataclass
class MembershipCertificate:
    p: int
    phi: list
    g: list
    s: int
    dual_image: list           # phi*(g) as a vector
    coefficients: Dict[int, FpPoly]  # r -> c_r, multiplying phi^[p^r]
    prefactor: FpPoly
    forms: list = field(default_factory=list)  # w_i = phi(v_i) as linear forms
    prefactor_unit: int = 1    # prefactor = unit * prod of ambient-canonical line generators

    def verify(self):
        """Replay sum_r c_r phi^[p^r] == prefactor * phi*(g) on every variable."""
        p = self.p
        n = len(self.g)
        phi = as_mod(self.phi, p)
        lhs_d = Derivation.zero(p, n)
        base = from_endomorphism(phi, p)
        for r, c in self.coefficients.items():
            lhs_d = lhs_d + frobenius_twist(base, r).scale(c)
        for j in range(n):
            x = FpPoly.var(p, n, j)
            lhs = apply(lhs_d, x)
            rhs = self.prefactor.scalar_mul(int(self.dual_image[j]))
            if lhs != rhs:
                return False
        return True

    def to_json(self):
        return {
            "p": self.p,
            "phi": [list(map(int, r)) for r in self.phi],
            "g": list(map(int, self.g)),
            "s": self.s,
            "dual_image": list(map(int, self.dual_image)),
            "prefactor": str(self.prefactor),
            "prefactor_unit": self.prefactor_unit,
            "coefficients": {str(r): str(c) for r, c in sorted(self.coefficients.items())},
        }


def es_membership_certificate(phi, g, s, p):
    """Exhibit prod(v_l^(p^s)) . phi*(g) as a B-combination of phi^[p^r], r >= s."""
    phi = as_mod(phi, p)
    n = phi.shape[0]
    g = as_mod(g, p)
    fm = dual_apply(phi, g, p)
    if not fm.any():
        raise ValueError("phi*(g) = 0: nothing to certify")
    # basis f_1..f_m of (ker phi)^perp = row space of phi, ending in phi*(g)
    chosen = [fm]
    for row in phi:
        if rank(np.array(chosen + [row]), p) > len(chosen):
            chosen.append(row % p)
    mrank = len(chosen)
    f_rows = chosen[1:] + [fm]
    full = np.array(_complete_basis(f_rows, p, n), dtype=np.int64)
    vs = _inverse_mod(full, p)  # column i is v_i with f_i(v_j) = delta_ij
    forms = []
    for i in range(mrank):
        w = (phi @ vs[:, i]) % p
        forms.append(FpPoly.linear(p, [int(c) for c in w]))
    u, d = build_U_D(p, mrank, s, forms=forms)
    last = mrank - 1
    coeffs = {s + r: u.rows[last][r] for r in range(mrank) if u.rows[last][r]}
    prefactor = d.rows[last][last]
    cert = MembershipCertificate(
        p=p, phi=phi.tolist(), g=g.tolist(), s=s, dual_image=fm.tolist(),
        coefficients=coeffs, prefactor=prefactor, forms=forms,
    )
    # compare with the product over lines of phi(V) not in ker g, canonical in ambient coordinates
    ambient = FpPoly.constant(p, n, 1)
    for a in enumerate_lines(p, mrank).generators:
        vec = sum(c * (phi @ vs[:, i]) for i, c in enumerate(a)) % p
        if int(vec @ g) % p == 0:
            continue
        ambient = ambient * FpPoly.linear(p, list(canonical_line(vec, p))).frobenius_pow(s)
    unit = divides(ambient, prefactor)
    if unit is None or not unit.is_constant() or unit.is_zero():
        raise CounterexampleError("prefactor is not a unit multiple of the line product")
    cert.prefactor_unit = unit.constant_value()
    if not cert.verify():
        raise CounterexampleError("membership certificate failed to replay")
    return cert


# graded side: B = F_p[w], B_1 = F_p[w^p]

def decompose_B1(f):
    """f = sum_alpha u_alpha w^alpha with alpha in [0, p-1]^m and u_alpha in B_1."""
    p = f.p
    parts = {}
    for e, c in f.terms.items():
        alpha = tuple(x % p for x in e)
        parts.setdefault(alpha, {})[tuple(x - a for x, a in zip(e, alpha))] = c
    return {alpha: FpPoly(p, f.m, t) for alpha, t in sorted(parts.items())}


def reassemble_B1(parts, p, m):
    out = FpPoly.zero(p, m)
    for alpha, u in parts.items():
        out = out + u * FpPoly.monomial(p, alpha)
    return out


def partial(j, f):
    """B_1-linear derivation d_j(sum u_a w^a) = sum a_j u_a w^(a - e_j); j is 1-based."""
    if not 1 <= j <= f.m:
        raise ValueError("j must be in 1..%d" % f.m)
    k = j - 1
    out = FpPoly.zero(f.p, f.m)
    for alpha, u in decompose_B1(f).items():
        if alpha[k]:
            lowered = list(alpha)
            lowered[k] -= 1
            out = out + (u * FpPoly.monomial(f.p, lowered)).scalar_mul(alpha[k])
    return out


def in_B1_syntactic(f):
    return all(x % f.p == 0 for e in f.terms for x in e)


def is_in_B1(f):
    """True iff every d_j kills f."""
    return all(partial(j, f).is_zero() for j in range(1, f.m + 1))


def _minimal_B1_exponents(a, p):
    """Minimal exponent vectors b >= a with p | b, found by search over a box."""
    box = [range(x, x + p) for x in a]
    cands = [b for b in itertools.product(*box) if all(x % p == 0 for x in b)]
    return [b for b in cands if not any(c != b and all(ci <= bi for ci, bi in zip(c, b)) for c in cands)]


def controlled_check_monomial(a, p):
    """Check: (w^a) is stable under all d_j iff (w^a) = ((w^a) cap B_1) B."""
    a = tuple(a)
    m = len(a)
    gen = FpPoly.monomial(p, a)
    stable = all(divides(gen, partial(j, gen)) is not None for j in range(1, m + 1))
    mins = _minimal_B1_exponents(a, p)
    if len(mins) != 1:
        raise CounterexampleError("(w^a) cap B_1 is not principal for a=%s" % (a,))
    meet = FpPoly.monomial(p, mins[0])
    # (meet)B == (gen)B iff they divide each other
    controlled = divides(gen, meet) is not None and divides(meet, gen) is not None
    return {
        "check": "prop22d",
        "a": list(a),
        "p": p,
        "stable": stable,
        "controlled": controlled,
        "intersection_generator": list(mins[0]),
        "verdict": stable == controlled,
    }
