"""Sparse multivariate polynomials over F_p.

A polynomial is a dict {exponent tuple: coefficient in 1..p-1}.  Terms are
ordered graded-lexicographically (total degree first, then lex on the
exponent vector, largest first) for iteration, rendering and division.
"""

import heapq

EXP_MAX = 2**31 - 1


class RingMismatch(ValueError):
    pass


def grlex_key(exps):
    return (sum(exps), exps)


class FpPoly:
    __slots__ = ("p", "m", "terms", "_hash")

    def __init__(self, p, m, terms=None):
        self.p = p
        self.m = m
        clean = {}
        if terms:
            for e, c in terms.items():
                c %= p
                if c:
                    e = tuple(e)
                    if len(e) != m:
                        raise ValueError("exponent %r has wrong length for %d variables" % (e, m))
                    if any(x < 0 for x in e):
                        raise ValueError("negative exponent %r" % (e,))
                    if any(x > EXP_MAX for x in e):
                        raise OverflowError("exponent %r exceeds 32-bit range" % (e,))
                    clean[e] = c
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, p, m):
        return cls(p, m)

    @classmethod
    def constant(cls, p, m, c):
        return cls(p, m, {(0,) * m: c})

    @classmethod
    def var(cls, p, m, i, power=1):
        """The variable w_{i+1} (0-based index i)."""
        e = [0] * m
        e[i] = power
        return cls(p, m, {tuple(e): 1})

    @classmethod
    def linear(cls, p, coeffs):
        m = len(coeffs)
        return cls(p, m, {tuple(int(i == j) for j in range(m)): c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, p, exps, c=1):
        return cls(p, len(exps), {tuple(exps): c})

    # basic queries
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if not isinstance(other, FpPoly):
            return FpPoly.constant(self.p, self.m, other)
        if (self.p, self.m) != (other.p, other.m):
            raise RingMismatch("ring mismatch: F_%d[%d vars] vs F_%d[%d vars]" % (self.p, self.m, other.p, other.m))
        return other

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.m, 0)

    def leading_term(self):
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # arithmetic
    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == FpPoly.constant(self.p, self.m, other).terms
        if not isinstance(other, FpPoly):
            return NotImplemented
        return (self.p, self.m) == (other.p, other.m) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.m, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        p = self.p
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return FpPoly._raw(p, self.m, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return FpPoly._raw(p, self.m, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scalar_mul(other)
        other = self._check(other)
        p = self.p
        out = {}
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return FpPoly(p, self.m, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scalar_mul(self, c):
        c %= self.p
        if c == 0:
            return FpPoly.zero(self.p, self.m)
        p = self.p
        return FpPoly._raw(p, self.m, {e: (v * c) % p for e, v in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = FpPoly.constant(self.p, self.m, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius_pow(self, r):
        """f^(p^r), computed termwise: exponents scale by p^r, coefficients are fixed."""
        if r < 0:
            raise ValueError("r must be non-negative")
        q = self.p**r
        return FpPoly(self.p, self.m, {tuple(x * q for x in e): c for e, c in self.terms.items()})

    def substitute(self, assignment):
        """Ring-homomorphic image under w_i -> assignment[i]."""
        if len(assignment) != self.m:
            raise ValueError("assignment must give an image for every variable")
        target = assignment[0] if assignment else None
        if target is None:
            return self
        for a in assignment:
            if (a.p, a.m) != (target.p, target.m) or a.p != self.p:
                raise RingMismatch("assignment images live in different rings")
        cache = [dict() for _ in range(self.m)]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = assignment[i] ** k
            return cache[i][k]

        out = FpPoly.zero(target.p, target.m)
        for e, c in self.terms.items():
            t = FpPoly.constant(target.p, target.m, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def partial(self, j):
        """Formal partial derivative with respect to w_{j+1}."""
        out = {}
        for e, c in self.terms.items():
            k = e[j]
            if k % self.p:
                e2 = list(e)
                e2[j] -= 1
                out[tuple(e2)] = c * k
        return FpPoly(self.p, self.m, out)

    @classmethod
    def _raw(cls, p, m, terms):
        obj = cls.__new__(cls)
        obj.p, obj.m, obj.terms, obj._hash = p, m, terms, None
        return obj

    # rendering
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join("w%d^%d" % (i + 1, k) for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append("%d*%s" % (c, mono))
        return " + ".join(parts)

    def __repr__(self):
        return "FpPoly(p=%d, m=%d, %s)" % (self.p, self.m, self)

    def to_json(self):
        return [[list(e), c] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, p, m, data):
        return cls(p, m, {tuple(e): c for e, c in data})


def parse_poly(p, m, text):
    """Inverse of str(); accepts 'c*w1^a*w2^b + ...'."""
    terms = {}
    text = text.strip()
    if text == "0":
        return FpPoly.zero(p, m)
    for part in text.split("+"):
        part = part.strip()
        c = 1
        e = [0] * m
        for factor in part.split("*"):
            factor = factor.strip()
            if factor.startswith("w"):
                name, _, k = factor.partition("^")
                e[int(name[1:]) - 1] += int(k) if k else 1
            else:
                c *= int(factor)
        e = tuple(e)
        terms[e] = (terms.get(e, 0) + c) % p
    return FpPoly(p, m, terms)


def divides(f, g):
    """Quotient q with g = f*q, or None when f does not divide g."""
    f = g._check(f)
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p, m = g.p, g.m
    if g.is_zero():
        return FpPoly.zero(p, m)
    lt_e, lt_c = f.leading_term()
    inv = pow(lt_c, p - 2, p)
    rest = [(e, c) for e, c in f.terms.items() if e != lt_e]
    r = dict(g.terms)
    heap = [(-sum(e), tuple(-x for x in e)) for e in r]
    heapq.heapify(heap)
    q = {}
    while heap:
        _, ne = heapq.heappop(heap)
        e = tuple(-x for x in ne)
        c = r.pop(e, 0)
        if not c:
            continue
        shift = tuple(a - b for a, b in zip(e, lt_e))
        if any(x < 0 for x in shift):
            return None
        qc = (c * inv) % p
        q[shift] = qc
        for fe, fc in rest:
            te = tuple(a + b for a, b in zip(shift, fe))
            v = (r.get(te, 0) - qc * fc) % p
            if v:
                if te not in r:
                    heapq.heappush(heap, (-sum(te), tuple(-x for x in te)))
                r[te] = v
            else:
                r.pop(te, None)
    return FpPoly(p, m, q)


class PolyMatrix:
    """Rectangular matrix of FpPoly sharing (p, m)."""

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        first = rows[0][0]
        for r in rows:
            for x in r:
                if (x.p, x.m) != (first.p, first.m):
                    raise RingMismatch("matrix entries from different rings")
        self.rows = rows
        self.p, self.m = first.p, first.m

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __matmul__(self, other):
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        zero = FpPoly.zero(self.p, self.m)
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = zero
                for t in range(k):
                    a, b = self.rows[i][t], other.rows[t][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def minor(self, i, j):
        """The matrix with row i and column j removed."""
        return PolyMatrix([r[:j] + r[j + 1:] for k, r in enumerate(self.rows) if k != i])

    @classmethod
    def identity(cls, p, m, n, scale=None):
        one = FpPoly.constant(p, m, 1) if scale is None else scale
        zero = FpPoly.zero(p, m)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries):
        zero = FpPoly.zero(entries[0].p, entries[0].m)
        n = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    def __repr__(self):
        return "PolyMatrix(%s)" % [[str(x) for x in r] for r in self.rows]

    def to_json(self):
        return [[str(x) for x in r] for r in self.rows]


def _require_square(a):
    n, k = a.shape
    if n != k:
        raise ValueError("matrix must be square, got %dx%d" % (n, k))
    return n


def det_cofactor(a):
    n = _require_square(a)
    rows = a.rows
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = FpPoly.zero(a.p, a.m)
    for j in range(n):
        x = rows[0][j]
        if not x:
            continue
        d = det_cofactor(a.minor(0, j))
        total = total + x * d if j % 2 == 0 else total - x * d
    return total


def det_bareiss(a):
    """Fraction-free Bareiss elimination; every division is exact."""
    n = _require_square(a)
    m = [list(r) for r in a.rows]
    one = FpPoly.constant(a.p, a.m, 1)
    prev = one
    sign = 1
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return FpPoly.zero(a.p, a.m)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                q = divides(prev, num)
                if q is None:
                    raise ArithmeticError("Bareiss step not exact")
                m[i][j] = q
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def determinant(a, method="auto"):
    n = _require_square(a)
    if method == "cofactor" or (method == "auto" and n <= 4):
        return det_cofactor(a)
    return det_bareiss(a)


def adjugate(a):
    """adj(A)_{ij} = (-1)^(i+j) det C_{ji}."""
    n = _require_square(a)
    if n == 1:
        return PolyMatrix([[FpPoly.constant(a.p, a.m, 1)]])
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            d = determinant(a.minor(j, i))
            row.append(d if (i + j) % 2 == 0 else -d)
        out.append(row)
    return PolyMatrix(out)
