"""Lines of F_p^m, the line product Delta(W), Moore matrices and their adjugates."""

import itertools
from dataclasses import dataclass
from typing import Tuple

from .fppoly import FpPoly, PolyMatrix, adjugate, determinant, divides
from .linalg import is_prime


class CounterexampleError(ArithmeticError):
    """A construction that the theory guarantees has failed."""


@dataclass(frozen=True)
class LineSet:
    p: int
    m: int
    generators: Tuple[Tuple[int, ...], ...]

    def __len__(self):
        return len(self.generators)


def canonical_line(v, p):
    """Scale v so that its first nonzero coordinate is 1; None for v = 0."""
    v = [int(x) % p for x in v]
    for x in v:
        if x:
            inv = pow(x, p - 2, p)
            return tuple((y * inv) % p for y in v)
    return None


def enumerate_lines(p, m):
    if not is_prime(p):
        raise ValueError("p must be prime")
    if m < 1:
        raise ValueError("m must be >= 1")
    gens = []
    for lead in range(m):
        for tail in itertools.product(range(p), repeat=m - lead - 1):
            gens.append((0,) * lead + (1,) + tail)
    gens.sort()
    return LineSet(p, m, tuple(gens))


def _combine(forms, coeffs):
    out = FpPoly.zero(forms[0].p, forms[0].m)
    for c, f in zip(coeffs, forms):
        if c:
            out = out + f.scalar_mul(c)
    return out


def line_forms(forms, p):
    """For each line of span(forms) (forms independent), its canonical generator sum a_i u_i."""
    lines = enumerate_lines(p, len(forms))
    return [(a, _combine(forms, a)) for a in lines.generators]


def delta_W(lines, forms=None):
    """Product over the lines of W of their canonical generators.

    With `forms` given, W is the span of those (independent) polynomials
    and line generators are taken in that basis; otherwise W = <w_1..w_m>.
    """
    p, m = lines.p, lines.m
    if forms is None:
        forms = [FpPoly.var(p, m, i) for i in range(m)]
    out = FpPoly.constant(p, forms[0].m, 1)
    for a in lines.generators:
        out = out * _combine(forms, a)
    return out


@dataclass(frozen=True)
class MooreSpec:
    forms: Tuple[FpPoly, ...]
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if not self.forms:
            raise ValueError("need at least one form")
        if any(d < 0 for d in self.exponents):
            raise ValueError("exponents must be non-negative")


def moore_matrix(spec):
    """Entry (i, j) = u_j^(p^(d_i))."""
    return PolyMatrix([[u.frobenius_pow(d) for u in spec.forms] for d in spec.exponents])


def standard_spec(p, m, d=None):
    forms = tuple(FpPoly.var(p, m, i) for i in range(m))
    return MooreSpec(forms, tuple(range(m)) if d is None else tuple(d))


def verify_divisibility(p, m, d):
    """Delta(W) | det M(w; d), with the quotient as witness."""
    det = determinant(moore_matrix(standard_spec(p, m, d)))
    delta = delta_W(enumerate_lines(p, m))
    q = divides(delta, det)
    report = {
        "lemma": "lemma11",
        "params": {"p": p, "m": m, "d": list(d)},
        "det_zero": det.is_zero(),
        "verdict": q is not None,
    }
    if q is not None:
        report["quotient_degree"] = q.degree()
        report["quotient"] = str(q) if len(q.terms) <= 50 else "<%d terms>" % len(q.terms)
    return report


def scalar_ratio(p, m):
    """lambda with det M(w_1..w_m) = lambda * Delta(W)."""
    det = determinant(moore_matrix(standard_spec(p, m)))
    delta = delta_W(enumerate_lines(p, m))
    q = divides(delta, det)
    if q is None or not q.is_constant() or q.is_zero():
        raise CounterexampleError("det M / Delta(W) is not a nonzero constant for p=%d, m=%d" % (p, m))
    return q.constant_value()


def _moore_det(forms, s):
    """det M(u_1^(p^s), ..., u_k^(p^s)); the empty matrix has determinant 1."""
    if not forms:
        return None
    k = len(forms)
    return determinant(moore_matrix(MooreSpec(tuple(forms), tuple(range(s, s + k)))))


def build_U_D(p, m, s, forms=None):
    """U, D with U A = D, A = M(u_1^(p^s), ..., u_m^(p^s)).

    D_jj is the product of the (p^s-twisted) canonical generators of the lines
    of W that are not contained in W_j = <u_1, .., u_j omitted, .., u_m>.
    Row j of U is adj(A) row j divided exactly by det M with u_j omitted,
    rescaled by the constant lambda_j.
    """
    if forms is None:
        forms = [FpPoly.var(p, m, i) for i in range(m)]
    forms = list(forms)
    if len(forms) != m:
        raise ValueError("need exactly m forms")
    ring_p, ring_m = forms[0].p, forms[0].m
    a = moore_matrix(MooreSpec(tuple(forms), tuple(range(s, s + m))))
    det_a = determinant(a)
    adj = adjugate(a)
    lines = line_forms(forms, p)
    one = FpPoly.constant(ring_p, ring_m, 1)
    u_rows, d_diag = [], []
    for j in range(m):
        dj = one
        for coeffs, gen in lines:
            if coeffs[j]:
                dj = dj * gen.frobenius_pow(s)
        others = forms[:j] + forms[j + 1:]
        sub = _moore_det(others, s) if others else one
        row = []
        for entry in adj.rows[j]:
            q = divides(sub, entry)
            if q is None:
                raise CounterexampleError("det M(omit %d) does not divide adj(A) row %d" % (j + 1, j + 1))
            row.append(q)
        ratio = divides(sub, det_a)
        lam = divides(ratio, dj) if ratio is not None else None
        if lam is None or not lam.is_constant() or lam.is_zero():
            raise CounterexampleError("Delta_%d is not a unit multiple of det A / det M(omit %d)" % (j + 1, j + 1))
        c = pow(lam.constant_value(), ring_p - 2, ring_p)
        u_rows.append([x.scalar_mul(c) for x in row])
        d_diag.append(dj)
    u = PolyMatrix(u_rows)
    d = PolyMatrix.diagonal(d_diag)
    if u @ a != d:
        raise CounterexampleError("U A != D for p=%d, m=%d, s=%d" % (p, m, s))
    return u, d
