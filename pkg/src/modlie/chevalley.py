"""Chevalley Lie algebras over Z and their reductions mod p.

Basis order: E(alpha) for alpha in rs.roots (in the root system's order),
then H(1), ..., H(n).  Brackets are stored sparsely: table[i][j] is a dict
{k: coeff}.

Signs of the structure constants N_{alpha,beta} are pinned by setting
N = +(q + 1) on every extraspecial pair; all other constants follow from the
standard identities (antisymmetry, the cyclic rule for alpha+beta+gamma = 0,
N_{-a,-b} = -N_{a,b}, and the four-root relation).
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import SubspaceModP, is_prime, nullspace
from .rootsystem import RootSystem, root_string


class ChevalleyError(RuntimeError):
    pass


INT64_MAX = 2**63 - 1


def _neg(a):
    return tuple(-x for x in a)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _is_positive(a):
    return sum(a) > 0


class _StructureConstants:
    def __init__(self, rs):
        self.rs = rs
        self.order = {r: i for i, r in enumerate(rs.positive_roots)}
        self.extraspecial = {}
        for xi in rs.positive_roots:
            for gamma in rs.positive_roots:
                delta = _sub(xi, gamma)
                if rs.is_root(delta) and _is_positive(delta):
                    self.extraspecial[xi] = (gamma, delta)
                    break
        self.cache = {}

    def norm(self, a):
        return self.rs.inner(a, a)

    def N(self, a, b):
        """N_{a,b}, with 0 when a + b is not a root."""
        s = _add(a, b)
        if not self.rs.is_root(s):
            return 0
        key = (a, b)
        if key in self.cache:
            return self.cache[key]
        pa, pb = _is_positive(a), _is_positive(b)
        if pa and pb:
            val = self._positive(a, b)
        elif not pa and not pb:
            val = -self.N(_neg(a), _neg(b))
        else:
            # rotate (a, b, -s) to a same-sign pair:
            # N_{a,b}/(s,s) = N_{b,-s}/(a,a) = N_{-s,a}/(b,b)
            ms = _neg(s)
            if _is_positive(ms) == pa:
                val = Fraction(self.norm(s), self.norm(b)) * self.N(ms, a)
            else:
                val = Fraction(self.norm(s), self.norm(a)) * self.N(b, ms)
            if val.denominator != 1:
                raise ChevalleyError("non-integral structure constant for %s, %s" % (a, b))
            val = int(val)
        self.cache[key] = val
        return val

    def _positive(self, a, b):
        xi = _add(a, b)
        gamma, delta = self.extraspecial[xi]
        q = root_string(gamma, delta, self.rs)[0]
        if (a, b) == (gamma, delta):
            return q + 1
        if (a, b) == (delta, gamma):
            return -(q + 1)
        # four-root relation with r=a, s=b, t=-gamma, u=-delta
        mg, md = _neg(gamma), _neg(delta)
        total = Fraction(0)
        bg = _add(b, mg)
        if self.rs.is_root(bg):
            total += Fraction(self.N(b, mg) * self.N(a, md), self.norm(bg))
        ag = _add(a, mg)
        if self.rs.is_root(ag):
            total += Fraction(self.N(mg, a) * self.N(b, md), self.norm(ag))
        # N_{a,b} N_{-g,-d} / (xi,xi) + total = 0, N_{-g,-d} = -N_{g,d}
        val = total * self.norm(xi) / (q + 1)
        if val.denominator != 1:
            raise ChevalleyError("non-integral structure constant for %s, %s" % (a, b))
        return int(val)


@dataclass(frozen=True, eq=False)
class ChevalleyAlgebra:
    rs: RootSystem
    table: tuple
    labels: tuple

    @property
    def dim(self):
        return len(self.labels)

    @property
    def nroots(self):
        return len(self.rs.roots)

    def root_index(self, root):
        return self.rs.index(root)

    def h_index(self, i):
        return self.nroots + i

    def basis_vector(self, k):
        v = np.zeros(self.dim, dtype=np.int64)
        v[k] = 1
        return v

    def e(self, root):
        return self.basis_vector(self.root_index(root))

    def h(self, i):
        return self.basis_vector(self.h_index(i))

    def structure_tensor(self):
        """Dense integer tensor T with [b_i, b_j] = sum_k T[i, j, k] b_k."""
        t = self.__dict__.get("_tensor")
        if t is None:
            t = np.zeros((self.dim,) * 3, dtype=np.int64)
            for i, row in enumerate(self.table):
                for j, res in row.items():
                    for k, c in res.items():
                        t[i, j, k] = c
            object.__setattr__(self, "_tensor", t)
        return t

    def to_records(self):
        out = []
        for i in range(self.dim):
            for j in range(self.dim):
                res = self.table[i].get(j)
                if res:
                    out.append({
                        "x_label": self.labels[i],
                        "y_label": self.labels[j],
                        "result": [[c, self.labels[k]] for k, c in sorted(res.items())],
                    })
        return out


def root_label(root):
    return "E(" + ",".join(str(x) for x in root) + ")"


def _coroot_coeffs(rs, alpha):
    """Coefficients of alpha^vee in the simple coroots alpha_i^vee."""
    na = rs.inner(alpha, alpha)
    out = []
    for i, k in enumerate(alpha):
        c = Fraction(k * rs.gram[i][i], na)
        if c.denominator != 1:
            raise ChevalleyError("coroot of %s is not integral" % (alpha,))
        out.append(int(c))
    return out


def build_chevalley(rs, verify=True):
    """Integral Chevalley algebra of `rs`; Jacobi is checked before returning."""
    R, n = len(rs.roots), rs.rank
    dim = R + n
    sc = _StructureConstants(rs)
    table = [dict() for _ in range(dim)]

    def put(i, j, res):
        res = {k: c for k, c in res.items() if c}
        if res:
            table[i][j] = res

    for i, a in enumerate(rs.roots):
        for j, b in enumerate(rs.roots):
            s = _add(a, b)
            if not any(s):
                put(i, j, {R + k: c for k, c in enumerate(_coroot_coeffs(rs, a))})
            elif rs.is_root(s):
                put(i, j, {rs.index(s): sc.N(a, b)})
        for k in range(n):
            c = rs.pairing(a, k)
            put(R + k, i, {i: c})
            put(i, R + k, {i: -c})
    for i in range(dim):
        for res in table[i].values():
            for c in res.values():
                if abs(c) > INT64_MAX:
                    raise OverflowError("structure constant exceeds int64")
    labels = tuple(root_label(r) for r in rs.roots) + tuple("H(%d)" % (k + 1) for k in range(n))
    alg = ChevalleyAlgebra(rs=rs, table=tuple(table), labels=labels)
    if verify:
        report = verify_jacobi(alg)
        if report["violations"]:
            raise ChevalleyError("Jacobi identity fails on triple %s" % (report["violations"][0],))
    return alg


def _sparse_bracket(table, x, y):
    """Bracket of two sparse vectors {index: coeff}."""
    out = {}
    for i, a in x.items():
        row = table[i]
        for j, b in y.items():
            res = row.get(j)
            if res:
                ab = a * b
                for k, c in res.items():
                    out[k] = out.get(k, 0) + ab * c
    return {k: c for k, c in out.items() if c}


def verify_jacobi(alg, p=None, limit=None):
    """Exhaustive antisymmetry and Jacobi check over distinct basis triples.

    With `p` set, identities are checked mod p.  Returns
    {"triples_checked", "antisymmetry_violations", "violations"}.
    """
    table = alg.table
    dim = len(table)

    def red(d):
        if p is None:
            return d
        return {k: c % p for k, c in d.items() if c % p}

    anti = []
    for i in range(dim):
        for j in range(i, dim):
            x = red(table[i].get(j, {}))
            y = red({k: -c for k, c in table[j].get(i, {}).items()})
            if x != y:
                anti.append((alg.labels[i], alg.labels[j]))
    violations = []
    checked = 0
    for i, j, k in itertools.combinations(range(dim), 3):
        # [x,[y,z]] + [y,[z,x]] + [z,[x,y]]
        total = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = table[b].get(c)
            if not inner:
                continue
            for t, coef in _sparse_bracket(table, {a: 1}, inner).items():
                total[t] = total.get(t, 0) + coef
        checked += 1
        if any(red({t: v for t, v in total.items() if v}).values()):
            violations.append((alg.labels[i], alg.labels[j], alg.labels[k]))
            if limit is not None and len(violations) >= limit:
                break
    return {"triples_checked": checked, "antisymmetry_violations": anti, "violations": violations}


def bracket(alg, x, y):
    """Bilinear bracket of coefficient vectors; mod p when `alg` is a ModpAlgebra."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != (alg.dim,) or y.shape != (alg.dim,):
        raise ValueError("expected vectors of length %d" % alg.dim)
    t = alg.structure_tensor()
    if isinstance(alg, ModpAlgebra):
        return np.einsum("i,j,ijk->k", x % alg.p, y % alg.p, t) % alg.p
    xs = {i: int(v) for i, v in enumerate(x) if v}
    ys = {i: int(v) for i, v in enumerate(y) if v}
    out = np.zeros(alg.dim, dtype=object)
    for k, c in _sparse_bracket(alg.table, xs, ys).items():
        out[k] = c
    if all(abs(c) <= INT64_MAX for c in out):
        return out.astype(np.int64)
    return out


@dataclass(frozen=True, eq=False)
class ModpAlgebra:
    parent: object
    p: int
    table: tuple

    @property
    def dim(self):
        return len(self.table)

    @property
    def labels(self):
        return self.parent.labels

    @property
    def rs(self):
        return getattr(self.parent, "rs", None)

    def structure_tensor(self):
        t = self.__dict__.get("_tensor")
        if t is None:
            t = np.zeros((self.dim,) * 3, dtype=np.int64)
            for i, row in enumerate(self.table):
                for j, res in row.items():
                    for k, c in res.items():
                        t[i, j, k] = c
            object.__setattr__(self, "_tensor", t)
        return t

    def basis_vector(self, k):
        v = np.zeros(self.dim, dtype=np.int64)
        v[k] = 1
        return v


def reduce_mod_p(alg, p):
    if not is_prime(p):
        raise ValueError("%r is not prime" % (p,))
    table = []
    for row in alg.table:
        new = {}
        for j, res in row.items():
            r = {k: c % p for k, c in res.items() if c % p}
            if r:
                new[j] = r
        table.append(new)
    return ModpAlgebra(parent=alg, p=p, table=tuple(table))


class _RawParent:
    def __init__(self, labels):
        self.labels = labels
        self.rs = None


def algebra_from_table(table, p, labels=None):
    """ModpAlgebra from a raw {i: {j: {k: c}}} style table (toy algebras, fault injection)."""
    labels = tuple(labels) if labels else tuple("b%d" % i for i in range(len(table)))
    reduced = tuple(
        {j: {k: c % p for k, c in res.items() if c % p} for j, res in row.items()} for row in table
    )
    reduced = tuple({j: r for j, r in row.items() if r} for row in reduced)
    return ModpAlgebra(parent=_RawParent(labels), p=p, table=reduced)


def adjoint_matrix(g, x):
    """Matrix of ad(x) mod p; column j is [x, b_j]."""
    x = np.asarray(x, dtype=np.int64) % g.p
    t = g.structure_tensor()
    return np.einsum("i,ijk->kj", x, t) % g.p


def adjoint_matrices(g):
    """ad(b_i) for every basis element, as an array of shape (dim, dim, dim)."""
    t = g.structure_tensor() % g.p
    return np.transpose(t, (0, 2, 1)).copy()


def center(g):
    # x central iff [x, b_j] = 0 for all j: sum_i x_i T[i, j, :] = 0
    t = g.structure_tensor() % g.p
    system = t.reshape(g.dim, -1).T
    return SubspaceModP(g.p, g.dim, nullspace(system, g.p))


def derived_subalgebra(g):
    t = g.structure_tensor() % g.p
    return SubspaceModP(g.p, g.dim, t.reshape(-1, g.dim))


def ideal_closure(g, seeds):
    """Smallest ideal containing the seed vectors."""
    seeds = np.asarray(seeds, dtype=np.int64).reshape(-1, g.dim) % g.p
    space = SubspaceModP(g.p, g.dim, seeds)
    mats = adjoint_matrices(g)
    frontier = space.basis
    while len(frontier):
        images = np.einsum("akj,nj->ank", mats, frontier).reshape(-1, g.dim) % g.p
        grown = space.add(images)
        if len(grown) == len(space):
            break
        new = [row for row in grown.basis if not space.contains(row)]
        space = grown
        frontier = np.array(new, dtype=np.int64).reshape(-1, g.dim)
    return space


def is_abelian(g):
    return not any(g.table)


def _spin(gens, v, p):
    """Span of v under the associative algebra generated by `gens`."""
    dim = len(v)
    space = SubspaceModP(p, dim, [v])
    frontier = space.basis
    while len(frontier):
        imgs = np.einsum("akj,nj->ank", gens, frontier).reshape(-1, dim) % p
        grown = space.add(imgs)
        if len(grown) == len(space):
            break
        frontier = np.array([r for r in grown.basis if not space.contains(r)], dtype=np.int64).reshape(-1, dim)
        space = grown
        if len(space) == dim:
            break
    return space


def minimal_ideal_in(g, ideal):
    """Shrink a nonzero ideal to one generated by a single vector with smallest closure."""
    current = ideal
    while True:
        best = None
        for row in current.basis:
            cl = ideal_closure(g, [row])
            if best is None or len(cl) < len(best):
                best = cl
        if best is None or len(best) >= len(current):
            return current
        current = best


def _not_simple(g, sub, seed, transcript):
    ideal = minimal_ideal_in(g, ideal_closure(g, sub.basis))
    return {
        "verdict": "not_simple",
        "seed": seed,
        "witness": {"ideal_basis": ideal.basis.tolist(), "ideal_dim": len(ideal)},
        "ideal_check": ideal_closure(g, ideal.basis) == ideal and 0 < len(ideal) < g.dim,
        "transcript": transcript,
    }


def certify_simple(g, seed=0, max_iterations=64):
    """Seeded MeatAxe test of irreducibility of the adjoint module.

    Uses Norton's criterion with linear factors: for a random element theta
    of the enveloping algebra and an eigenvalue lam with nullity 1, the
    module is irreducible iff the kernel vector spins to everything under
    ad(g) and a kernel vector of the transpose spins to everything under
    the transposed generators.
    """
    if is_abelian(g):
        raise ValueError("abelian algebra: simplicity test not applicable")
    p, dim = g.p, g.dim
    gens = adjoint_matrices(g)
    gens = gens[[i for i in range(dim) if gens[i].any()]]
    gens_t = np.transpose(gens, (0, 2, 1)).copy()
    rng = random.Random(seed)
    transcript = []
    theta = np.zeros((dim, dim), dtype=np.int64)
    for it in range(max_iterations):
        a = rng.randrange(len(gens))
        b = rng.randrange(len(gens))
        c = rng.randrange(1, p) if p > 1 else 1
        # random word accumulation
        theta = (theta @ gens[a] + c * gens[b]) % p
        for lam in range(p):
            m = (theta - lam * np.eye(dim, dtype=np.int64)) % p
            ker = nullspace(m, p)
            if len(ker) == 0:
                continue
            step = {"iteration": it, "word": [a, b, c], "eigenvalue": lam, "nullity": len(ker)}
            v = ker[0]
            span = _spin(gens, v, p)
            if len(span) < dim:
                step["result"] = "submodule"
                transcript.append(step)
                return _not_simple(g, span, seed, transcript)
            if len(ker) != 1:
                step["result"] = "nullity>1"
                transcript.append(step)
                continue
            w = nullspace(m.T, p)[0]
            span_t = _spin(gens_t, w, p)
            if len(span_t) < dim:
                # the annihilator of a proper submodule of the dual is a proper submodule
                step["result"] = "dual submodule"
                transcript.append(step)
                return _not_simple(g, span_t.annihilator(), seed, transcript)
            step["result"] = "norton"
            transcript.append(step)
            return {"verdict": "simple", "seed": seed, "witness": {"norton_element": step}, "transcript": transcript}
        transcript.append({"iteration": it, "word": [a, b, c], "result": "nonsingular"})
    return {"verdict": "inconclusive", "seed": seed, "witness": None, "transcript": transcript}


def replay_certificate(g, cert, max_iterations=64):
    again = certify_simple(g, seed=cert["seed"], max_iterations=max_iterations)
    return again["verdict"] == cert["verdict"] and again["transcript"] == cert["transcript"]


def epsilon(p):
    return 2 if p == 2 else 1


def p_valuation(n, p):
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def lemma31_check(alg, p, t, x, k):
    """Check the three valuation statements for u = p^k x acting on L = p^t C.

    Coordinates are taken in the basis {p^t b_j} of L; everything is exact
    integer arithmetic.
    """
    eps = epsilon(p)
    if t < eps:
        raise ValueError("need t >= epsilon = %d" % eps)
    if k < max(t, eps):
        raise ValueError("need k >= max(t, epsilon)")
    x = [int(c) for c in x]
    if all(c % p == 0 for c in x):
        raise ValueError("x lies in pC")
    g = reduce_mod_p(alg, p)
    if len(center(g)):
        raise ValueError("center of g is nonzero; N = C is not established")
    xs = {i: c for i, c in enumerate(x) if c}
    pt = p**t

    def vals(scale):
        # valuations of [u, scale * p^t b_j] in L-coordinates
        out = []
        for j in range(alg.dim):
            br = _sparse_bracket(alg.table, xs, {j: 1})
            coords = [p**k * scale * pt * c for c in br.values()]
            # divide by p^t to get L-coordinates
            coords = [c // pt for c in coords]
            vs = [p_valuation(c, p) for c in coords if c]
            out.append(min(vs) if vs else None)
        return out

    v_L = vals(1)
    v_pL = vals(p)
    finite = [v for v in v_L if v is not None]
    finite_p = [v for v in v_pL if v is not None]
    min_v = min(finite) if finite else None
    a = all(v >= k for v in finite)
    b = min_v == k
    c = all(v >= k + 1 for v in finite_p)
    return {"check": "lemma31", "p": p, "t": t, "k": k, "min_valuation": min_v, "a": a, "b": b, "c": c,
            "verdict": a and b and c}
