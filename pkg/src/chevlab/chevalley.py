"""Chevalley bases: integral structure constants and commutator coefficients.

For classical types the bracket table is read off explicit integer matrix
realizations (sl, so, sp), which keeps the table and the defining
representations consistent by construction.  For exceptional types the table
is built by the extraspecial-pair recursion and certified by Jacobi and
root-string magnitude checks.

The group-level coefficients of the two-parameter commutator expansion
    [e_a(s), e_b(t)] = prod e_{i*a+j*b}(C[i,j] * s^i * t^j)
are computed symbolically in the adjoint representation over Q[s, t] and
asserted integral; no per-type case tables are used.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .roots import RootSystem, _add, _neg, _scale, _sub


class ChevalleyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Integer matrices (dense tuples of tuples)


def int_zero(n: int):
    return [[0] * n for _ in range(n)]


def int_identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def int_mul(a, b):
    n = len(a)
    m = len(b[0])
    bt = list(zip(*b))
    return [
        [sum(x * y for x, y in zip(row, col)) for col in bt] for row in a
    ]


def int_bracket(a, b):
    ab = int_mul(a, b)
    ba = int_mul(b, a)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def int_scale(c, a):
    return [[c * x for x in row] for row in a]


def int_add(a, b):
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def int_is_zero(a):
    return all(all(x == 0 for x in row) for row in a)


def freeze(a):
    return tuple(tuple(row) for row in a)


def _solve_scalar_multiple(target, base):
    """c with target == c * base, for integer matrices; None if no such c."""
    c = None
    for r1, r2 in zip(target, base):
        for x, y in zip(r1, r2):
            if y != 0:
                if x % y:
                    return None
                cand = x // y
                if c is None:
                    c = cand
                elif c != cand:
                    return None
            elif x != 0:
                return None
    return 0 if c is None else c


# ---------------------------------------------------------------------------
# Classical matrix realizations


def _unit(n, i, j, c=1):
    m = int_zero(n)
    m[i][j] = c
    return m


def classical_generators(rs: RootSystem):
    """Root vectors X_a for the defining representation of a classical type.

    Returns (dim, xmats, weights) where weights[i] is the weight of the i-th
    basis vector in the realization's epsilon-coordinates.
    """
    letter, n = rs.letter, rs.rank
    if letter == "A":
        dim = n + 1
        xmats = {}
        for r in rs.roots:
            i = r.index(1)
            j = r.index(-1)
            xmats[r] = _unit(dim, i, j)
        weights = [tuple(1 if k == i else 0 for k in range(dim)) for i in range(dim)]
        return dim, xmats, weights
    if letter == "C":
        dim = 2 * n
        bar = lambda i: 2 * n - 1 - i
        xmats = {}
        for r in rs.roots:
            pos = [i for i, c in enumerate(r) if c]
            if len(pos) == 1:
                (i,) = pos
                if r[i] == 2:
                    xmats[r] = _unit(dim, i, bar(i))
                else:
                    xmats[r] = _unit(dim, bar(i), i)
            else:
                i, j = pos
                ci, cj = r[i], r[j]
                if ci == 1 and cj == -1:
                    m = _unit(dim, i, j)
                    m[bar(j)][bar(i)] = -1
                elif ci == -1 and cj == 1:
                    m = _unit(dim, j, i)
                    m[bar(i)][bar(j)] = -1
                elif ci == 1 and cj == 1:
                    m = _unit(dim, i, bar(j))
                    m[j][bar(i)] = 1
                else:
                    m = _unit(dim, bar(j), i)
                    m[bar(i)][j] = 1
                xmats[r] = m
        weights = []
        for i in range(n):
            weights.append(tuple(1 if k == i else 0 for k in range(n)))
        for i in range(n - 1, -1, -1):
            weights.append(tuple(-1 if k == i else 0 for k in range(n)))
        return dim, xmats, weights
    if letter == "D":
        dim = 2 * n
        bar = lambda i: 2 * n - 1 - i
        xmats = {}
        for r in rs.roots:
            i, j = [k for k, c in enumerate(r) if c]
            ci, cj = r[i], r[j]
            if ci == 1 and cj == -1:
                m = _unit(dim, i, j)
                m[bar(j)][bar(i)] = -1
            elif ci == -1 and cj == 1:
                m = _unit(dim, j, i)
                m[bar(i)][bar(j)] = -1
            elif ci == 1 and cj == 1:
                m = _unit(dim, i, bar(j))
                m[j][bar(i)] = -1
            else:
                m = _unit(dim, bar(j), i)
                m[bar(i)][j] = -1
            xmats[r] = m
        weights = []
        for i in range(n):
            weights.append(tuple(1 if k == i else 0 for k in range(n)))
        for i in range(n - 1, -1, -1):
            weights.append(tuple(-1 if k == i else 0 for k in range(n)))
        return dim, xmats, weights
    if letter == "B":
        dim = 2 * n + 1
        mid = n
        bar = lambda i: 2 * n - i
        xmats = {}
        for r in rs.roots:
            pos = [i for i, c in enumerate(r) if c]
            if len(pos) == 1:
                (i,) = pos
                if r[i] == 1:
                    m = _unit(dim, i, mid, 2)
                    m[mid][bar(i)] = -1
                else:
                    m = _unit(dim, mid, i)
                    m[bar(i)][mid] = -2
                xmats[r] = m
            else:
                i, j = pos
                ci, cj = r[i], r[j]
                if ci == 1 and cj == -1:
                    m = _unit(dim, i, j)
                    m[bar(j)][bar(i)] = -1
                elif ci == -1 and cj == 1:
                    m = _unit(dim, j, i)
                    m[bar(i)][bar(j)] = -1
                elif ci == 1 and cj == 1:
                    m = _unit(dim, i, bar(j))
                    m[j][bar(i)] = -1
                else:
                    m = _unit(dim, bar(j), i)
                    m[bar(i)][j] = -1
                xmats[r] = m
        weights = []
        for i in range(n):
            weights.append(tuple(1 if k == i else 0 for k in range(n)))
        weights.append(tuple(0 for _ in range(n)))
        for i in range(n - 1, -1, -1):
            weights.append(tuple(-1 if k == i else 0 for k in range(n)))
        return dim, xmats, weights
    raise ChevalleyError(f"no defining matrix model for type {letter}")


# ---------------------------------------------------------------------------
# Structure table


def _p_value(rs: RootSystem, a, b) -> int:
    """Largest p with b - p*a a root."""
    p = 0
    cur = b
    while True:
        cur = _sub(cur, a)
        if not rs.is_root(cur):
            return p
        p += 1


def _table_from_matrices(rs: RootSystem):
    dim, xmats, _ = classical_generators(rs)
    nmap = {}
    for a in rs.roots:
        for b in rs.roots:
            s = _add(a, b)
            if s == tuple([0] * rs.ambient):
                continue
            br = int_bracket(xmats[a], xmats[b])
            if rs.is_root(s):
                c = _solve_scalar_multiple(br, xmats[s])
                if c is None:
                    raise ChevalleyError(
                        f"bracket of {a}, {b} is not a multiple of X_{s}"
                    )
                nmap[(a, b)] = c
            elif not int_is_zero(br):
                raise ChevalleyError(f"bracket of {a}, {b} should vanish")
    return nmap


def _table_extraspecial(rs: RootSystem):
    positives = sorted(rs.positive, key=lambda r: (rs.height(r), r))
    order = {r: i for i, r in enumerate(positives)}
    nmap = {}  # (a, b) positive, a before b in the order

    def lookup_pos(a, b) -> int:
        if order[a] < order[b]:
            return nmap[(a, b)]
        return -nmap[(b, a)]

    def get_n(a, b) -> int:
        s = _add(a, b)
        if not rs.is_root(s):
            return 0
        pa, pb = rs.is_positive(a), rs.is_positive(b)
        if pa and pb:
            return lookup_pos(a, b)
        if not pa and not pb:
            return -get_n(_neg(a), _neg(b))
        z = _neg(s)
        pz = rs.is_positive(z)
        if pb == pz:
            val = Fraction(rs.norm(z), rs.norm(a)) * get_n(b, z)
        else:
            val = Fraction(rs.norm(z), rs.norm(b)) * get_n(z, a)
        if val.denominator != 1:
            raise ChevalleyError("non-integral structure constant")
        return int(val)

    def term(x, y, u, v) -> Fraction:
        s = _add(x, y)
        if not rs.is_root(s):
            return Fraction(0)
        return Fraction(get_n(x, y) * get_n(u, v), rs.norm(s))

    for gamma in positives:
        if rs.height(gamma) < 2:
            continue
        specials = []
        for a in positives:
            b = _sub(gamma, a)
            if rs.is_root(b) and rs.is_positive(b) and order[a] < order[b]:
                specials.append((a, b))
        specials.sort(key=lambda ab: order[ab[0]])
        if not specials:
            raise ChevalleyError(f"no special pair for {gamma}")
        a1, b1 = specials[0]
        nmap[(a1, b1)] = _p_value(rs, a1, b1) + 1
        for a, b in specials[1:]:
            t2 = term(b1, _neg(a), a1, _neg(b))
            t3 = term(_neg(a), a1, b1, _neg(b))
            val = Fraction(rs.norm(gamma), nmap[(a1, b1)]) * (t2 + t3)
            if val.denominator != 1:
                raise ChevalleyError("non-integral structure constant")
            n = int(val)
            if abs(n) != _p_value(rs, a, b) + 1:
                raise ChevalleyError(
                    f"structure constant magnitude mismatch for {a}, {b}"
                )
            nmap[(a, b)] = n

    full = {}
    for a in rs.roots:
        for b in rs.roots:
            if b == _neg(a):
                continue
            s = _add(a, b)
            if rs.is_root(s):
                full[(a, b)] = get_n(a, b)
    return full


class ChevalleyBasisTable:
    """Bracket data for the simple Lie algebra in a Chevalley basis.

    Basis: {e_a : a root} plus {h_i : i < rank} (simple coroots).  Brackets:
    [h_i, h_j] = 0, [h_i, e_a] = <a, a_i^v> e_a, [e_a, e_-a] = h_a (integral
    combination of the h_i), [e_a, e_b] = N(a, b) e_{a+b}.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        if rs.letter in "ABCD":
            self.nmap = _table_from_matrices(rs)
            self.sign_convention = "classical matrix realization"
        else:
            self.nmap = _table_extraspecial(rs)
            self.sign_convention = "extraspecial pairs positive"
        self.hcoords = {r: rs.coroot_coords(r) for r in rs.roots}
        self._adjoint = None
        self._coeff_cache: dict = {}
        self._verify_magnitudes()

    def n_constant(self, a, b) -> int:
        """N(a, b) for a+b a root; 0 when a+b is neither a root nor zero."""
        if b == _neg(a):
            raise ChevalleyError("N undefined for b = -a; bracket is h_a")
        return self.nmap.get((tuple(a), tuple(b)), 0)

    def _verify_magnitudes(self):
        rs = self.rs
        for (a, b), n in self.nmap.items():
            if abs(n) != _p_value(rs, a, b) + 1:
                raise ChevalleyError(f"|N({a},{b})| != p+1")
            if self.nmap[(b, a)] != -n:
                raise ChevalleyError("antisymmetry failure")
            if self.nmap[(_neg(a), _neg(b))] != -n:
                raise ChevalleyError("opposite-pair sign failure")

    # -- abstract bracket ---------------------------------------------------

    def basis_keys(self) -> list:
        """Adjoint basis order: roots by descending height, then coroots."""
        rs = self.rs
        keys = [("e", r) for r in sorted(rs.roots, key=lambda r: (-rs.height(r), r))]
        mid = [("h", i) for i in range(rs.rank)]
        # interleave the zero-height block between positive and negative roots
        pos = [k for k in keys if rs.height(k[1]) > 0]
        neg = [k for k in keys if rs.height(k[1]) < 0]
        return pos + mid + neg

    def bracket_keys(self, k1, k2) -> dict:
        """Bracket of two basis symbols as a coordinate dict."""
        rs = self.rs
        t1, v1 = k1
        t2, v2 = k2
        if t1 == "h" and t2 == "h":
            return {}
        if t1 == "h":
            c = rs.cartan_int(v2, rs.simple[v1])
            return {k2: c} if c else {}
        if t2 == "h":
            c = rs.cartan_int(v1, rs.simple[v2])
            return {k1: -c} if c else {}
        if v2 == _neg(v1):
            return {
                ("h", i): c
                for i, c in enumerate(self.hcoords[v1])
                if c
            }
        s = _add(v1, v2)
        if rs.is_root(s):
            n = self.nmap[(v1, v2)]
            return {("e", s): n} if n else {}
        return {}

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                for k, c in self.bracket_keys(k1, k2).items():
                    v = out.get(k, 0) + c1 * c2 * c
                    if v:
                        out[k] = v
                    elif k in out:
                        del out[k]
        return out

    def verify_jacobi(self, sample: int | None = None, seed: int = 0) -> int:
        """Jacobi identity on basis triples; returns the number checked."""
        keys = self.basis_keys()
        if sample is None:
            triples = [
                (x, y, z) for x in keys for y in keys for z in keys
            ]
        else:
            rng = random.Random(seed)
            triples = [
                (rng.choice(keys), rng.choice(keys), rng.choice(keys))
                for _ in range(sample)
            ]
        for x, y, z in triples:
            total: dict = {}
            for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                inner = self.bracket_keys(b, c)
                term = self.bracket({a: 1}, inner)
                for k, v in term.items():
                    w = total.get(k, 0) + v
                    if w:
                        total[k] = w
                    elif k in total:
                        del total[k]
            if total:
                raise ChevalleyError(f"Jacobi failure on {x}, {y}, {z}")
        return len(triples)

    # -- adjoint matrices -----------------------------------------------------

    def adjoint_data(self):
        """(keys, weights, xmats) for the adjoint representation, integer dense."""
        if self._adjoint is not None:
            return self._adjoint
        keys = self.basis_keys()
        index = {k: i for i, k in enumerate(keys)}
        dim = len(keys)
        zero_w = tuple([0] * self.rs.ambient)
        weights = [k[1] if k[0] == "e" else zero_w for k in keys]
        xmats = {}
        for r in self.rs.roots:
            m = int_zero(dim)
            for j, k in enumerate(keys):
                for kk, c in self.bracket_keys(("e", r), k).items():
                    m[index[kk]][j] = c
            xmats[r] = freeze(m)
        self._adjoint = (keys, weights, xmats)
        return self._adjoint

    # -- group-level commutator coefficients ----------------------------------

    def commutator_coefficients(self, a, b) -> dict:
        """Integer coefficients C[i,j] of the commutator expansion for (a, b).

        The expansion is taken over the roots i*a+j*b ordered by (i+j, i); the
        coefficients are solved symbolically over Q[s, t] in the adjoint
        representation and asserted integral.
        """
        a, b = tuple(a), tuple(b)
        if b == _neg(a):
            raise ChevalleyError("commutator expansion undefined for b = -a")
        hit = self._coeff_cache.get((a, b))
        if hit is not None:
            return dict(hit)
        entries = self.rs.commutator_root_list(a, b)
        _, _, xmats = self.adjoint_data()
        dim = len(self.basis_keys())
        sa = _sparse_from_dense(xmats[a])
        sb = _sparse_from_dense(xmats[b])
        ea = _exp_poly(sa, (1, 0), Fraction(1), dim)
        eb = _exp_poly(sb, (0, 1), Fraction(1), dim)
        ea_inv = _exp_poly(sa, (1, 0), Fraction(-1), dim)
        eb_inv = _exp_poly(sb, (0, 1), Fraction(-1), dim)
        m = _smat_mul(_smat_mul(ea, eb), _smat_mul(ea_inv, eb_inv))
        out = {}
        for i, j, g in entries:
            xg = _sparse_from_dense(xmats[g])
            coeff = None
            for (r, c), val in _collect_monomial(m, (i, j)).items():
                base = xg.get(r, {}).get(c, 0)
                if base:
                    coeff = val / base
                    break
            if coeff is None:
                coeff = Fraction(0)
            if coeff.denominator != 1:
                raise ChevalleyError("non-integral commutator coefficient")
            # verify the full monomial matrix matches coeff * X_g
            mono = _collect_monomial(m, (i, j))
            for r, row in xg.items():
                for c, val in row.items():
                    if mono.get((r, c), Fraction(0)) != coeff * val:
                        raise ChevalleyError("commutator coefficient mismatch")
            for (r, c), val in mono.items():
                if xg.get(r, {}).get(c, 0) == 0 and val != 0:
                    raise ChevalleyError("stray monomial in commutator")
            out[(i, j)] = int(coeff)
            strip = _exp_poly(xg, (i, j), Fraction(-int(coeff)), dim)
            m = _smat_mul(strip, m)
        if not _smat_is_identity(m, dim):
            raise ChevalleyError("commutator expansion failed to close")
        self._coeff_cache[(a, b)] = dict(out)
        return out


# ---------------------------------------------------------------------------
# Bivariate polynomials over Q and sparse matrices of them
#
# Poly2 = dict[(i, j)] -> Fraction (coefficient of s^i t^j)
# Sparse matrix = dict[row] -> dict[col] -> Poly2


def _p2_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in f.items():
        for (i2, j2), c2 in g.items():
            k = (i1 + i2, j1 + j2)
            v = out.get(k, Fraction(0)) + c1 * c2
            if v:
                out[k] = v
            elif k in out:
                del out[k]
    return out


def _p2_add_into(acc: dict, f: dict):
    for k, c in f.items():
        v = acc.get(k, Fraction(0)) + c
        if v:
            acc[k] = v
        elif k in acc:
            del acc[k]


def _sparse_from_dense(m) -> dict:
    out: dict = {}
    for r, row in enumerate(m):
        for c, v in enumerate(row):
            if v:
                out.setdefault(r, {})[c] = v
    return out


def _int_smat_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for r, row in a.items():
        acc: dict = {}
        for k, v in row.items():
            brow = b.get(k)
            if not brow:
                continue
            for c, w in brow.items():
                acc[c] = acc.get(c, 0) + v * w
        acc = {c: v for c, v in acc.items() if v}
        if acc:
            out[r] = acc
    return out


def _exp_poly(x: dict, mono: tuple, scale: Fraction, dim: int) -> dict:
    """exp(scale * u * X) for the monomial u = s^i t^j and nilpotent integer X."""
    out: dict = {r: {r: {(0, 0): Fraction(1)}} for r in range(dim)}
    power = x
    k = 1
    fact = 1
    while power:
        coeff = scale**k / fact
        m = (mono[0] * k, mono[1] * k)
        for r, row in power.items():
            orow = out.setdefault(r, {})
            for c, v in row.items():
                entry = orow.setdefault(c, {})
                _p2_add_into(entry, {m: coeff * v})
        k += 1
        fact *= k
        power = _int_smat_mul(power, x)
        if k > dim + 2:
            raise ChevalleyError("root vector is not nilpotent")
    return out


def _smat_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for r, row in a.items():
        acc: dict = {}
        for k, poly in row.items():
            brow = b.get(k)
            if not brow:
                continue
            for c, q in brow.items():
                prod = _p2_mul(poly, q)
                if not prod:
                    continue
                entry = acc.setdefault(c, {})
                _p2_add_into(entry, prod)
        clean = {c: p for c, p in acc.items() if p}
        if clean:
            out[r] = clean
    return out


def _collect_monomial(m: dict, mono: tuple) -> dict:
    out = {}
    for r, row in m.items():
        for c, poly in row.items():
            v = poly.get(mono)
            if v:
                out[(r, c)] = v
    return out


def _smat_is_identity(m: dict, dim: int) -> bool:
    for r in range(dim):
        row = m.get(r, {})
        for c, poly in row.items():
            expected = {(0, 0): Fraction(1)} if r == c else {}
            if poly != expected:
                return False
        if row.get(r, {}) != {(0, 0): Fraction(1)}:
            return False
    return True


# ---------------------------------------------------------------------------


_TABLE_CACHE: dict = {}


def build_basis(rs: RootSystem) -> ChevalleyBasisTable:
    """Build (and cache) the integral bracket table for a root system."""
    key = (rs.letter, rs.rank)
    hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return hit
    table = ChevalleyBasisTable(rs)
    if rs.rank <= 4:
        table.verify_jacobi()
    else:
        table.verify_jacobi(sample=4000, seed=0)
    _TABLE_CACHE[key] = table
    return table


def g2_epsilon_signs(table: ChevalleyBasisTable) -> dict:
    """The computed unit signs of the G2 mixed-root commutator expansions."""
    if table.rs.letter != "G":
        raise ChevalleyError("epsilon signs are a G2 report")
    k, c = (1, 0), (0, 1)
    row = table.commutator_coefficients(k, c)
    eps = {
        "eps1": row[(1, 1)],
        "eps2": row[(1, 2)],
        "eps3": row[(1, 3)],
        "eps4": row[(2, 3)],
    }
    row2 = table.commutator_coefficients((1, 1), (1, 2))
    if abs(row2[(1, 1)]) != 3:
        raise ChevalleyError("short-short G2 coefficient should be +-3")
    eps["eps5"] = row2[(1, 1)] // 3
    for k2, v in eps.items():
        if k2 != "eps5" and abs(v) != 1:
            raise ChevalleyError(f"G2 sign {k2} is not a unit: {v}")
    return eps
