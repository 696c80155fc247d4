"""Root systems of every Dynkin type, in simple-root coordinates.

Labeling follows Bourbaki.  The Cartan matrix entry (i, j) is
<alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i), so row i
lists the eigenvalues of ad(h_i) on the simple root vectors.  For B_2 this
gives [[2, -1], [-2, 2]] (alpha_1 long, alpha_2 short).
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple


class RootSystemError(ValueError):
    pass


MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def check_admissible(family, rank):
    if family not in "ABCDEFG" or len(family) != 1:
        raise RootSystemError("unknown family %r (expected one of A-G)" % (family,))
    if not isinstance(rank, int) or rank < 1:
        raise RootSystemError("rank must be a positive integer, got %r" % (rank,))
    if family in MIN_RANK and rank < MIN_RANK[family]:
        raise RootSystemError("%s_n requires n >= %d, got n = %d" % (family, MIN_RANK[family], rank))
    if family in FIXED_RANKS and rank not in FIXED_RANKS[family]:
        allowed = ", ".join("%s_%d" % (family, r) for r in FIXED_RANKS[family])
        raise RootSystemError("type %s%d does not exist (allowed: %s)" % (family, rank, allowed))


def _gram(family, n):
    """Integer Gram matrix (alpha_i, alpha_j) of the simple roots."""
    g = [[0] * n for _ in range(n)]

    def link(i, j, val):
        g[i][j] = g[j][i] = val

    if family in "ADE":
        for i in range(n):
            g[i][i] = 2
        if family == "A":
            for i in range(n - 1):
                link(i, i + 1, -1)
        elif family == "D":
            for i in range(n - 2):
                link(i, i + 1, -1)
            link(n - 3, n - 1, -1)
        else:
            # 1-3-4-5-6(-7-8), with 2 hanging off 4
            for a, b in [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]:
                link(a, b, -1)
    elif family == "B":
        for i in range(n - 1):
            g[i][i] = 2
        g[n - 1][n - 1] = 1
        for i in range(n - 1):
            link(i, i + 1, -1)
    elif family == "C":
        for i in range(n - 1):
            g[i][i] = 2
        g[n - 1][n - 1] = 4
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 2, n - 1, -2)
    elif family == "F":
        g[0][0] = g[1][1] = 4
        g[2][2] = g[3][3] = 2
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif family == "G":
        g[0][0] = 2
        g[1][1] = 6
        link(0, 1, -3)
    return g


def _cartan_from_gram(g):
    n = len(g)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            q = Fraction(2 * g[i][j], g[i][i])
            assert q.denominator == 1
            row.append(int(q))
        out.append(row)
    return out


def _pairing(beta, i, cartan):
    """<beta, alpha_i^vee> for beta in simple-root coordinates."""
    return sum(k * cartan[i][j] for j, k in enumerate(beta))


def _close_under_reflections(cartan):
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                c = _pairing(beta, i, cartan)
                if c == 0:
                    continue
                img = list(beta)
                img[i] -= c
                img = tuple(img)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def order_roots(roots):
    """Positive roots by (height, lex), then their negatives in the same order."""
    pos = sorted((r for r in roots if sum(r) > 0), key=lambda r: (sum(r), r))
    return pos + [tuple(-x for x in r) for r in pos]


@dataclass(frozen=True)
class RootSystem:
    components: Tuple[Tuple[str, int], ...]
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    gram: Tuple[Tuple[int, ...], ...]
    roots: Tuple[Tuple[int, ...], ...]
    coxeter_numbers: Tuple[int, ...]
    # component index of each simple root
    component_of: Tuple[int, ...] = field(default=())

    @property
    def rank(self):
        return len(self.cartan_matrix)

    @property
    def simple_roots(self):
        n = self.rank
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]

    @property
    def positive_roots(self):
        return self.roots[: len(self.roots) // 2]

    @property
    def name(self):
        return "+".join("%s%d" % c for c in self.components) or "empty"

    def is_root(self, v):
        return tuple(v) in self._root_set

    @property
    def _root_set(self):
        s = self.__dict__.get("_rs")
        if s is None:
            s = frozenset(self.roots)
            object.__setattr__(self, "_rs", s)
        return s

    def index(self, root):
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {r: i for i, r in enumerate(self.roots)}
            object.__setattr__(self, "_idx", idx)
        return idx[tuple(root)]

    def inner(self, a, b):
        return sum(a[i] * self.gram[i][j] * b[j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j])

    def pairing(self, beta, i):
        return _pairing(beta, i, self.cartan_matrix)

    def height(self, root):
        return sum(root)

    def reflect(self, alpha, beta):
        """s_alpha(beta) = beta - <beta, alpha^vee> alpha."""
        c = Fraction(2 * self.inner(beta, alpha), self.inner(alpha, alpha))
        assert c.denominator == 1
        return tuple(b - int(c) * a for a, b in zip(alpha, beta))

    def component_slices(self):
        """(start, stop) of simple-root indices for each component."""
        out, start = [], 0
        for _, r in self.components:
            out.append((start, start + r))
            start += r
        return out

    def component_roots(self, k):
        lo, hi = self.component_slices()[k]
        return [r for r in self.roots if any(r[lo:hi]) and not any(r[:lo]) and not any(r[hi:])]

    def to_dict(self):
        return {
            "components": [[f, r] for f, r in self.components],
            "cartan": [list(row) for row in self.cartan_matrix],
            "roots": [list(r) for r in self.roots],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _make(components, gram):
    cartan = _cartan_from_gram(gram)
    roots = order_roots(_close_under_reflections(cartan))
    comp_of = []
    for k, (_, r) in enumerate(components):
        comp_of += [k] * r
    rs = RootSystem(
        components=tuple(components),
        cartan_matrix=tuple(tuple(r) for r in cartan),
        gram=tuple(tuple(r) for r in gram),
        roots=tuple(roots),
        coxeter_numbers=(),
        component_of=tuple(comp_of),
    )
    cox = tuple(len(rs.component_roots(k)) // r for k, (_, r) in enumerate(components))
    object.__setattr__(rs, "coxeter_numbers", cox)
    return rs


def build_root_system(family, rank):
    check_admissible(family, rank)
    return _make([(family, rank)], _gram(family, rank))


def empty_root_system():
    return _make([], [])


def direct_sum(rs1, rs2):
    n1, n2 = rs1.rank, rs2.rank
    gram = [list(row) + [0] * n2 for row in rs1.gram] + [[0] * n1 + list(row) for row in rs2.gram]
    return _make(list(rs1.components) + list(rs2.components), gram)


def coxeter_number(rs, component_index):
    if not 0 <= component_index < len(rs.components):
        raise IndexError("component index %d out of range" % component_index)
    return len(rs.component_roots(component_index)) // rs.components[component_index][1]


def root_string(alpha, beta, rs):
    """(q, r): largest q with beta - q alpha a root, largest r with beta + r alpha a root."""
    alpha, beta = tuple(alpha), tuple(beta)
    if not rs.is_root(alpha) or not rs.is_root(beta):
        raise RootSystemError("both arguments must be roots")
    if beta == alpha or beta == tuple(-a for a in alpha):
        raise RootSystemError("root string undefined for beta = +/- alpha")

    def walk(sign):
        k = 0
        while rs.is_root(tuple(b + sign * (k + 1) * a for a, b in zip(alpha, beta))):
            k += 1
        return k

    return walk(-1), walk(1)


_TYPE_RE = re.compile(r"^([A-Ga-g])(\d+)$")


def parse_type(text):
    """Parse 'A2', 'A1+B2', ... into a RootSystem."""
    rs = None
    for part in text.split("+"):
        m = _TYPE_RE.match(part.strip())
        if not m:
            raise RootSystemError("cannot parse root system type %r" % part)
        comp = build_root_system(m.group(1).upper(), int(m.group(2)))
        rs = comp if rs is None else direct_sum(rs, comp)
    return rs

