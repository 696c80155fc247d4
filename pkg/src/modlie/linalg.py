"""Dense linear algebra over F_p on numpy int64 arrays.

Entries are kept reduced to [0, p).  All products of two reduced entries
fit in int64 for every prime this package is used with.
"""

import numpy as np


def as_mod(a, p):
    return np.asarray(a, dtype=np.int64) % p


def inverse_mod(a, p):
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod %d" % p)
    return pow(int(a), p - 2, p)


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def rref(a, p):
    """Reduced row-echelon form of `a` mod p.

    Returns (R, pivots) where R holds only the nonzero rows.
    """
    m = as_mod(a, p).copy()
    if m.ndim != 2:
        raise ValueError("expected a 2-d array")
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * inverse_mod(int(m[r, c]), p)) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p):
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p):
    """Basis (as rows) of {x : a @ x = 0 mod p}."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-r[row, f]) % p
    return basis


def det_mod(a, p):
    """Determinant mod p by Gaussian elimination."""
    m = as_mod(a, p).copy()
    n = m.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(m[c:, c])[0]
        if len(nz) == 0:
            return 0
        k = c + nz[0]
        if k != c:
            m[[c, k]] = m[[k, c]]
            d = -d
        piv = int(m[c, c])
        d = (d * piv) % p
        inv = inverse_mod(piv, p)
        below = m[c + 1:, c].copy()
        nzr = np.nonzero(below)[0]
        if len(nzr):
            rows = c + 1 + nzr
            m[rows] = (m[rows] - np.outer(below[nzr] * inv % p, m[c])) % p
    return d % p


def solve_left(basis, v, p):
    """Coefficients c with c @ basis = v mod p, or None if v is not in the row span."""
    basis = np.asarray(basis, dtype=np.int64)
    v = as_mod(v, p)
    k = basis.shape[0]
    if k == 0:
        return np.zeros(0, dtype=np.int64) if not v.any() else None
    aug = np.concatenate([basis.T, v.reshape(-1, 1)], axis=1)
    r, pivots = rref(aug, p)
    if k in pivots:
        return None
    c = np.zeros(k, dtype=np.int64)
    for row, pc in enumerate(pivots):
        c[pc] = r[row, k]
    return c


class SubspaceModP:
    """Subspace of F_p^dim, stored canonically as a reduced row-echelon basis."""

    def __init__(self, p, dim, rows=None):
        self.p = p
        self.dim = dim
        if rows is None or len(rows) == 0:
            self.basis = np.zeros((0, dim), dtype=np.int64)
            self.pivots = []
        else:
            rows = np.asarray(rows, dtype=np.int64).reshape(-1, dim)
            self.basis, self.pivots = rref(rows, p)

    @classmethod
    def full(cls, p, dim):
        return cls(p, dim, np.eye(dim, dtype=np.int64))

    def __len__(self):
        return self.basis.shape[0]

    @property
    def dimension(self):
        return self.basis.shape[0]

    def __eq__(self, other):
        if not isinstance(other, SubspaceModP):
            return NotImplemented
        return (self.p, self.dim) == (other.p, other.dim) and np.array_equal(self.basis, other.basis)

    def __repr__(self):
        return "SubspaceModP(p=%d, dim=%d, rank=%d)" % (self.p, self.dim, len(self))

    def contains(self, v):
        v = as_mod(v, self.p)
        if not v.any():
            return True
        return solve_left(self.basis, v, self.p) is not None

    def contains_subspace(self, other):
        return all(self.contains(row) for row in other.basis)

    def add(self, rows):
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.dim)
        return SubspaceModP(self.p, self.dim, np.concatenate([self.basis, rows]))

    def annihilator(self):
        """The annihilator in the dual space, with dual vectors as rows."""
        if len(self) == 0:
            return SubspaceModP.full(self.p, self.dim)
        return SubspaceModP(self.p, self.dim, nullspace(self.basis, self.p))

    def to_list(self):
        return self.basis.tolist()
