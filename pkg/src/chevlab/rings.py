"""Finite commutative unital rings with exact arithmetic.

Supported constructors: integers mod n, finite fields GF(q), polynomial
quotients GF(p)[x]/(f) with monic f, finite direct products, and (internally)
quotients of any of these by an ideal.  Elements are kept in canonical form,
so equality is plain coordinate equality.  All values are immutable; ideal
element sets are materialized eagerly, so specs are safe to share between
threads.
"""
from __future__ import annotations

import itertools
import json


class RingError(ValueError):
    """Malformed ring description or invalid ring operation."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, ascending primes."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


# ---------------------------------------------------------------------------
# Ring specs


class RingSpec:
    """A finite commutative unital ring.

    Subclasses provide raw-value arithmetic; `RingElement` wraps a value with
    its owning spec for operator syntax.  Raw values are always hashable and
    canonical (no normalization needed before comparing).
    """

    label: str
    card: int
    is_field: bool = False

    def key(self):
        raise NotImplementedError

    # raw-value arithmetic
    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        """Multiplicative inverse of a raw value, or None when not a unit."""
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_unit(self, a) -> bool:
        return self.inv(a) is not None

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def from_int(self, k: int):
        """Image of the integer k under the unique map Z -> R."""
        raise NotImplementedError

    def elements(self) -> list:
        """All raw values in a fixed deterministic order."""
        raise NotImplementedError

    def units(self) -> list:
        cached = getattr(self, "_units", None)
        if cached is None:
            cached = [v for v in self.elements() if self.is_unit(v)]
            self._units = cached
        return cached

    @property
    def char(self) -> int:
        cached = getattr(self, "_char", None)
        if cached is None:
            k, v = 1, self.one
            while v != self.zero:
                v = self.add(v, self.one)
                k += 1
                if k > self.card + 1:
                    raise RingError("additive order of 1 exceeds ring size")
            cached = k if self.card > 1 else 1
            self._char = cached
        return cached

    def spec_string(self) -> str:
        return self.label

    def element(self, value) -> "RingElement":
        return RingElement(self, value)

    # serialization: ints / nested lists, per the constructor shape
    def element_to_json(self, v):
        raise NotImplementedError

    def element_from_json(self, obj):
        raise NotImplementedError

    def format_element(self, v) -> str:
        return json.dumps(self.element_to_json(v))

    def parse_element(self, text: str):
        return self.element_from_json(json.loads(text))

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<ring {self.label} (order {self.card})>"


class ZmodRing(RingSpec):
    """Z/n with values 0..n-1."""

    def __init__(self, n: int, label: str | None = None):
        if n < 1:
            raise RingError(f"invalid modulus {n}")
        self.n = n
        self.card = n
        self.label = label or f"Z/{n}"
        self.is_field = is_prime(n)

    def key(self):
        return ("zmod", self.n)

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def inv(self, a):
        g, x, _ = xgcd(a, self.n)
        if g != 1:
            return None if self.n > 1 else 0
        return x % self.n

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.n

    def from_int(self, k: int):
        return k % self.n

    def elements(self):
        return list(range(self.n))

    def element_to_json(self, v):
        return v

    def element_from_json(self, obj):
        if not isinstance(obj, int):
            raise RingError(f"expected integer residue, got {obj!r}")
        return obj % self.n


class PolyQuotientRing(RingSpec):
    """base[x]/(f) for monic f; values are coefficient tuples, low degree first."""

    def __init__(self, base: RingSpec, modulus: tuple, label: str | None = None):
        if len(modulus) < 2:
            raise RingError("modulus must have degree >= 1")
        if modulus[-1] != base.one:
            raise RingError("modulus must be monic")
        self.base = base
        self.modulus = tuple(modulus)
        self.degree = len(modulus) - 1
        self.card = base.card ** self.degree
        self.label = label or f"{base.label}[x]/({poly_str(base, modulus)})"
        self.is_field = bool(base.is_field) and poly_is_irreducible(
            base, list(modulus)
        )
        # x^(degree+k) reduced mod f, for k = 0..degree-2 (covers products)
        self._high_powers = self._reduction_table()
        self._mul_cache: dict | None = {} if self.card <= 4096 else None

    def _reduction_table(self):
        d = self.degree
        base = self.base
        # x^d = -(f_0 + ... + f_{d-1} x^{d-1})
        top = [base.neg(c) for c in self.modulus[:d]]
        rows = [tuple(top)]
        for _ in range(d - 2):
            prev = rows[-1]
            shifted = [base.zero] + list(prev[: d - 1])
            carry = prev[d - 1]
            row = [
                base.add(shifted[i], base.mul(carry, top[i])) for i in range(d)
            ]
            rows.append(tuple(row))
        return rows

    def key(self):
        return ("polyquot", self.base.key(), self.modulus)

    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(base.neg(x) for x in a)

    def mul(self, a, b):
        if self._mul_cache is not None:
            hit = self._mul_cache.get((a, b))
            if hit is not None:
                return hit
        base = self.base
        d = self.degree
        conv = [base.zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == base.zero:
                continue
            for j, y in enumerate(b):
                if y == base.zero:
                    continue
                conv[i + j] = base.add(conv[i + j], base.mul(x, y))
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c == base.zero:
                continue
            row = self._high_powers[k - d]
            for i in range(d):
                out[i] = base.add(out[i], base.mul(c, row[i]))
        res = tuple(out)
        if self._mul_cache is not None:
            self._mul_cache[(a, b)] = res
        return res

    def inv(self, a):
        if all(x == self.base.zero for x in a):
            return None if self.card > 1 else a
        if self.is_field:
            g, u, _ = poly_xgcd(self.base, list(a), list(self.modulus))
            if len(g) != 1:
                return None
            c = self.base.inv(g[0])
            out = [self.base.mul(c, x) for x in u]
            out = out[: self.degree] + [self.base.zero] * (self.degree - len(out))
            return tuple(out[: self.degree])
        inv_map = getattr(self, "_inv_map", None)
        if inv_map is None:
            inv_map = {}
            for v in self.elements():
                for w in self.elements():
                    if self.mul(v, w) == self.one:
                        inv_map[v] = w
                        break
            self._inv_map = inv_map
        return inv_map.get(a)

    @property
    def zero(self):
        z = self.base.zero
        return tuple([z] * self.degree)

    @property
    def one(self):
        out = [self.base.zero] * self.degree
        out[0] = self.base.one
        return tuple(out)

    def from_int(self, k: int):
        out = [self.base.zero] * self.degree
        out[0] = self.base.from_int(k)
        return tuple(out)

    def elements(self):
        cached = getattr(self, "_elements", None)
        if cached is None:
            cached = [
                tuple(reversed(t))
                for t in itertools.product(
                    self.base.elements(), repeat=self.degree
                )
            ]
            self._elements = cached
        return cached

    def element_to_json(self, v):
        return [self.base.element_to_json(c) for c in v]

    def element_from_json(self, obj):
        if not isinstance(obj, list):
            raise RingError(f"expected coefficient list, got {obj!r}")
        coeffs = [self.base.element_from_json(c) for c in obj]
        if len(coeffs) > self.degree:
            raise RingError("coefficient list longer than quotient degree")
        coeffs += [self.base.zero] * (self.degree - len(coeffs))
        return tuple(coeffs)


class ProductRing(RingSpec):
    """Finite direct product; values are per-factor tuples."""

    def __init__(self, factors: list[RingSpec], label: str | None = None):
        if len(factors) < 2:
            raise RingError("product needs at least two factors")
        self.factors = tuple(factors)
        self.card = 1
        for f in factors:
            self.card *= f.card
        self.label = label or " x ".join(f.label for f in factors)

    def key(self):
        return ("product", tuple(f.key() for f in self.factors))

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def inv(self, a):
        out = []
        for f, x in zip(self.factors, a):
            i = f.inv(x)
            if i is None:
                return None
            out.append(i)
        return tuple(out)

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def one(self):
        return tuple(f.one for f in self.factors)

    def from_int(self, k: int):
        return tuple(f.from_int(k) for f in self.factors)

    def elements(self):
        cached = getattr(self, "_elements", None)
        if cached is None:
            cached = list(
                itertools.product(*[f.elements() for f in self.factors])
            )
            self._elements = cached
        return cached

    def inject(self, index: int, value):
        """Element (0, ..., value, ..., 0) supported on one factor."""
        out = [f.zero for f in self.factors]
        out[index] = value
        return tuple(out)

    def element_to_json(self, v):
        return [f.element_to_json(x) for f, x in zip(self.factors, v)]

    def element_from_json(self, obj):
        if not isinstance(obj, list) or len(obj) != len(self.factors):
            raise RingError(f"expected {len(self.factors)}-tuple, got {obj!r}")
        return tuple(
            f.element_from_json(x) for f, x in zip(self.factors, obj)
        )


class QuotientRing(RingSpec):
    """base/ideal with canonical coset representatives (internal constructor)."""

    def __init__(self, base: RingSpec, ideal: "IdealHandle", label: str | None = None):
        if ideal.spec != base:
            raise RingError("ideal does not belong to the base ring")
        self.base = base
        self.ideal = ideal
        proj = {}
        reps = []
        for v in base.elements():
            if v in proj:
                continue
            reps.append(v)
            for a in ideal.elements_list():
                proj[base.add(v, a)] = v
        self._proj = proj
        self._reps = reps
        self.card = len(reps)
        self.label = label or f"{base.label}/{ideal.short_label()}"

    def key(self):
        return ("quotient", self.base.key(), tuple(sorted_values(self.base, self.ideal.elements_list())))

    def project(self, v):
        return self._proj[v]

    def lift(self, v):
        return v

    def add(self, a, b):
        return self._proj[self.base.add(a, b)]

    def neg(self, a):
        return self._proj[self.base.neg(a)]

    def mul(self, a, b):
        return self._proj[self.base.mul(a, b)]

    def inv(self, a):
        inv_map = getattr(self, "_inv_map", None)
        if inv_map is None:
            inv_map = {}
            for v in self._reps:
                for w in self._reps:
                    if self.mul(v, w) == self.one:
                        inv_map[v] = w
                        break
            self._inv_map = inv_map
        return inv_map.get(a)

    @property
    def zero(self):
        return self._proj[self.base.zero]

    @property
    def one(self):
        return self._proj[self.base.one]

    def from_int(self, k: int):
        return self._proj[self.base.from_int(k)]

    def elements(self):
        return list(self._reps)

    def element_to_json(self, v):
        return self.base.element_to_json(v)

    def element_from_json(self, obj):
        return self._proj[self.base.element_from_json(obj)]


def sorted_values(spec: RingSpec, values) -> list:
    """Deterministic ordering of raw values, by position in spec.elements()."""
    index = {v: i for i, v in enumerate(spec.elements())}
    return sorted(values, key=lambda v: index[v])


class RingElement:
    """A ring value tied to its owning spec, with operator syntax."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: RingSpec, value):
        self.spec = spec
        self.value = value

    def _check(self, other: "RingElement"):
        if self.spec != other.spec:
            raise RingError(
                f"mixed rings: {self.spec.label} vs {other.spec.label}"
            )

    def __add__(self, other):
        self._check(other)
        return RingElement(self.spec, self.spec.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return RingElement(self.spec, self.spec.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return RingElement(self.spec, self.spec.mul(self.value, other.value))

    def __neg__(self):
        return RingElement(self.spec, self.spec.neg(self.value))

    def inverse(self):
        """Multiplicative inverse, or None when this element is not a unit."""
        v = self.spec.inv(self.value)
        return None if v is None else RingElement(self.spec, v)

    def is_unit(self) -> bool:
        return self.spec.is_unit(self.value)

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.spec == other.spec
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.spec.key(), self.value))

    def __repr__(self):
        return f"{self.spec.format_element(self.value)} in {self.spec.label}"


# ---------------------------------------------------------------------------
# Polynomials over a field spec (coefficient lists, low degree first)


def poly_trim(base: RingSpec, f: list) -> list:
    while f and f[-1] == base.zero:
        f.pop()
    return f


def poly_str(base: RingSpec, coeffs) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == base.zero:
            continue
        if i == 0:
            terms.append(base.format_element(c))
        else:
            xs = "x" if i == 1 else f"x^{i}"
            if c == base.one:
                terms.append(xs)
            else:
                terms.append(f"{base.format_element(c)}{xs}")
    return "+".join(terms) if terms else "0"


def poly_mul(base: RingSpec, f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [base.zero] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x == base.zero:
            continue
        for j, y in enumerate(g):
            out[i + j] = base.add(out[i + j], base.mul(x, y))
    return poly_trim(base, out)


def poly_divmod(base: RingSpec, f: list, g: list) -> tuple[list, list]:
    """Division with remainder; leading coefficient of g must be a unit."""
    f = poly_trim(base, list(f))
    g = poly_trim(base, list(g))
    if not g:
        raise RingError("division by zero polynomial")
    lead_inv = base.inv(g[-1])
    if lead_inv is None:
        raise RingError("leading coefficient is not a unit")
    q = [base.zero] * max(0, len(f) - len(g) + 1)
    r = list(f)
    while len(r) >= len(g) and r:
        c = base.mul(r[-1], lead_inv)
        k = len(r) - len(g)
        q[k] = c
        for i, gc in enumerate(g):
            r[k + i] = base.sub(r[k + i], base.mul(c, gc))
        r = poly_trim(base, r)
    return poly_trim(base, q), r


def poly_xgcd(base: RingSpec, f: list, g: list):
    """Extended gcd over a field base: (d, u, v) with u*f + v*g = d."""
    r0, r1 = poly_trim(base, list(f)), poly_trim(base, list(g))
    s0, s1 = [base.one], []
    t0, t1 = [], [base.one]
    while r1:
        q, r = poly_divmod(base, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(base, s0, poly_mul(base, q, s1))
        t0, t1 = t1, poly_sub(base, t0, poly_mul(base, q, t1))
    return r0, s0, t0


def poly_sub(base: RingSpec, f: list, g: list) -> list:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else base.zero
        b = g[i] if i < len(g) else base.zero
        out.append(base.sub(a, b))
    return poly_trim(base, out)


def monic_polys(base: RingSpec, degree: int):
    """All monic polynomials of the given degree over a finite base."""
    for tail in itertools.product(base.elements(), repeat=degree):
        yield list(tail) + [base.one]


def poly_is_irreducible(base: RingSpec, f: list) -> bool:
    """Trial division by all monic polynomials of degree <= deg(f)/2."""
    if not base.is_field:
        return False
    f = poly_trim(base, list(f))
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for g in monic_polys(base, k):
            _, r = poly_divmod(base, f, g)
            if not r:
                return False
    return True


def poly_factor(base: RingSpec, f: list) -> list[tuple[tuple, int]]:
    """Factor monic f over a finite field base into (irreducible, multiplicity)."""
    f = poly_trim(base, list(f))
    factors: dict[tuple, int] = {}
    work = list(f)
    d = 1
    while len(work) - 1 >= 1:
        if len(work) - 1 == 1 or poly_is_irreducible(base, work):
            key = tuple(work)
            factors[key] = factors.get(key, 0) + 1
            break
        found = False
        while d <= (len(work) - 1) // 2:
            for g in monic_polys(base, d):
                q, r = poly_divmod(base, work, g)
                if not r:
                    key = tuple(g)
                    factors[key] = factors.get(key, 0) + 1
                    work = q
                    found = True
                    break
            if found:
                break
            d += 1
        if not found:
            key = tuple(work)
            factors[key] = factors.get(key, 0) + 1
            break
    return sorted(factors.items())


# ---------------------------------------------------------------------------
# Parsing


def field_spec(q: int) -> RingSpec:
    """GF(q) with an auto-selected irreducible modulus when q is not prime."""
    if q < 2:
        raise RingError(f"GF({q}): order must be at least 2")
    fact = factorize(q)
    if len(fact) != 1:
        raise RingError(f"GF({q}): order is not a prime power")
    p, k = fact[0]
    if k == 1:
        return ZmodRing(p, label=f"GF({p})")
    base = ZmodRing(p, label=f"GF({p})")
    for f in monic_polys(base, k):
        if poly_is_irreducible(base, f):
            return PolyQuotientRing(base, tuple(f), label=f"GF({q})")
    raise RingError(f"GF({q}): no irreducible polynomial found")


def field_from_poly(p: int, coeffs) -> RingSpec:
    """Field GF(p)[x]/(f); rejects a reducible defining polynomial."""
    base = ZmodRing(p, label=f"GF({p})")
    f = [base.from_int(c) if isinstance(c, int) else c for c in coeffs]
    if not poly_is_irreducible(base, list(f)):
        raise RingError(
            f"reducible polynomial passed to GF: {poly_str(base, f)} over GF({p})"
        )
    return PolyQuotientRing(base, tuple(poly_trim(base, list(f))))


class _PolyParser:
    """Parses polynomial expressions like x^3+x+1, 2x^2, x^2(x+1)."""

    def __init__(self, text: str, p: int):
        self.text = text.replace(" ", "")
        self.pos = 0
        self.p = p

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> list[int]:
        f = self.expr()
        if self.pos != len(self.text):
            raise RingError(f"trailing input in polynomial: {self.text[self.pos:]!r}")
        return [c % self.p for c in f]

    def expr(self) -> list[int]:
        sign = 1
        if self.peek() and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        total = [sign * c for c in self.term()]
        while self.peek() and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            t = self.term()
            n = max(len(total), len(t))
            total += [0] * (n - len(total))
            for i, c in enumerate(t):
                total[i] += sign * c
        return total

    def term(self) -> list[int]:
        out = self.factor()
        while self.peek() and (self.peek().isdigit() or self.peek() in "x("):
            g = self.factor()
            conv = [0] * (len(out) + len(g) - 1)
            for i, a in enumerate(out):
                for j, b in enumerate(g):
                    conv[i + j] += a * b
            out = conv
        return out

    def factor(self) -> list[int]:
        c = self.peek()
        if c == "(":
            self.pos += 1
            f = self.expr()
            if self.peek() != ")":
                raise RingError("unbalanced parenthesis in polynomial")
            self.pos += 1
            return self._maybe_pow(f)
        if c == "x":
            self.pos += 1
            return self._maybe_pow([0, 1])
        if c.isdigit():
            start = self.pos
            while self.peek().isdigit():
                self.pos += 1
            return [int(self.text[start : self.pos])]
        raise RingError(f"unexpected character {c!r} in polynomial")

    def _maybe_pow(self, f: list[int]) -> list[int]:
        if self.peek() != "^":
            return f
        self.pos += 1
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise RingError("missing exponent")
        e = int(self.text[start : self.pos])
        out = [1]
        for _ in range(e):
            conv = [0] * (len(out) + len(f) - 1)
            for i, a in enumerate(out):
                for j, b in enumerate(f):
                    conv[i + j] += a * b
            out = conv
        return out


def _split_product(text: str) -> list[str]:
    parts = []
    depth = 0
    cur = []
    i = 0
    while i < len(text):
        c = text[i]
        if c in "([":
            depth += 1
        elif c in ")]":
            depth -= 1
        if (
            depth == 0
            and c == "x"
            and i > 0
            and text[i - 1] == " "
            and i + 1 < len(text)
            and text[i + 1] == " "
        ):
            parts.append("".join(cur).strip())
            cur = []
            i += 2
            continue
        cur.append(c)
        i += 1
    parts.append("".join(cur).strip())
    return [p for p in parts if p]


def parse_ring_spec(text: str) -> RingSpec:
    """Parse a ring description: Z/<n> | GF(<q>) | GF(<p>)[x]/(<monic poly>) | products with ' x '."""
    text = text.strip()
    parts = _split_product(text)
    if len(parts) > 1:
        return ProductRing([parse_ring_spec(p) for p in parts])
    atom = parts[0]
    if atom.startswith("Z/"):
        body = atom[2:]
        if not body.isdigit():
            raise RingError(f"bad modulus in {atom!r}")
        n = int(body)
        if n < 2:
            raise RingError(f"Z/{n}: modulus must be at least 2")
        return ZmodRing(n)
    if atom.startswith("GF(") and ")" in atom:
        close = atom.index(")")
        q_text = atom[3:close]
        if not q_text.isdigit():
            raise RingError(f"bad field order in {atom!r}")
        rest = atom[close + 1 :].strip()
        if not rest:
            return field_spec(int(q_text))
        # GF(p)[x]/(f): polynomial quotient over the prime field
        p = int(q_text)
        if not is_prime(p):
            raise RingError(f"GF({p})[x]/(...): base order must be prime")
        if not (rest.startswith("[x]/(") and rest.endswith(")")):
            raise RingError(f"bad polynomial quotient syntax in {atom!r}")
        poly_text = rest[len("[x]/(") : -1]
        coeffs = _PolyParser(poly_text, p).parse()
        base = ZmodRing(p, label=f"GF({p})")
        f = [c % p for c in coeffs]
        while f and f[-1] == 0:
            f.pop()
        if len(f) < 2:
            raise RingError("quotient polynomial must have degree >= 1")
        if f[-1] != 1:
            raise RingError("quotient polynomial must be monic")
        return PolyQuotientRing(base, tuple(f))
    raise RingError(f"unrecognized ring spec {atom!r}")


# ---------------------------------------------------------------------------
# Ideals


class IdealHandle:
    """A finitely generated ideal with its element set materialized."""

    def __init__(self, spec: RingSpec, generators, elements: frozenset):
        self.spec = spec
        self.generators = tuple(generators)
        self._elements = elements
        self._sorted = None

    @property
    def size(self) -> int:
        return len(self._elements)

    def contains(self, v) -> bool:
        return v in self._elements

    def elements_list(self) -> list:
        if self._sorted is None:
            self._sorted = sorted_values(self.spec, self._elements)
        return list(self._sorted)

    def element_set(self) -> frozenset:
        return self._elements

    def is_zero(self) -> bool:
        return self.size == 1

    def is_unit_ideal(self) -> bool:
        return self.size == self.spec.card

    def short_label(self) -> str:
        gens = ",".join(self.spec.format_element(g) for g in self.generators)
        return f"({gens})"

    def quotient(self):
        """Quotient ring with projection and a canonical lift (section).

        Returns (spec, project, lift) where project is a surjective ring
        homomorphism and project(lift(v)) == v.
        """
        spec = self.spec
        if isinstance(spec, ZmodRing):
            d = spec.n
            for g in self.elements_list():
                d = xgcd(d, g)[0]
            if d == spec.n:
                return spec, (lambda v: v), (lambda v: v)
            q = ZmodRing(d)
            return q, (lambda v: v % d), (lambda v: v)
        q = QuotientRing(spec, self)
        return q, q.project, q.lift

    def __eq__(self, other):
        return (
            isinstance(other, IdealHandle)
            and self.spec == other.spec
            and self._elements == other._elements
        )

    def __hash__(self):
        return hash((self.spec.key(), self._elements))

    def __repr__(self):
        return f"<ideal {self.short_label()} of {self.spec.label}, {self.size} elements>"


def ideal_from_generators(spec: RingSpec, generators) -> IdealHandle:
    """Smallest ideal containing the generators (exact, finite rings only)."""
    gens = [g.value if isinstance(g, RingElement) else g for g in generators]
    seeds = {spec.zero}
    for g in gens:
        for r in spec.elements():
            seeds.add(spec.mul(r, g))
    # additive closure
    closed = set(seeds)
    frontier = list(seeds)
    while frontier:
        nxt = []
        for a in frontier:
            for b in seeds:
                s = spec.add(a, b)
                if s not in closed:
                    closed.add(s)
                    nxt.append(s)
        frontier = nxt
    return IdealHandle(spec, gens, frozenset(closed))


def principalize(handle: IdealHandle) -> IdealHandle:
    """The same ideal presented by a single generator when one exists."""
    spec = handle.spec
    for g in handle.elements_list():
        if g == spec.zero and handle.size > 1:
            continue
        trial = ideal_from_generators(spec, [g])
        if trial.element_set() == handle.element_set():
            return trial
    return handle


def additive_closure(spec: RingSpec, values) -> frozenset:
    """Closure of a value set under addition and negation."""
    seeds = {spec.zero}
    seeds.update(values)
    seeds.update(spec.neg(v) for v in list(seeds))
    closed = set(seeds)
    frontier = list(seeds)
    while frontier:
        nxt = []
        for a in frontier:
            for b in seeds:
                s = spec.add(a, b)
                if s not in closed:
                    closed.add(s)
                    nxt.append(s)
        frontier = nxt
    return frozenset(closed)


def is_local(spec: RingSpec) -> tuple[bool, IdealHandle | None]:
    """A finite commutative ring is local iff its non-units form an ideal."""
    cached = getattr(spec, "_local", None)
    if cached is not None:
        return cached
    result: tuple[bool, IdealHandle | None]
    if isinstance(spec, ZmodRing):
        fact = factorize(spec.n)
        if len(fact) == 1:
            p = fact[0][0]
            result = (True, ideal_from_generators(spec, [p % spec.n]))
        else:
            result = (False, None)
    elif isinstance(spec, ProductRing):
        result = (False, None)
    elif isinstance(spec, PolyQuotientRing) and spec.base.is_field:
        fact = poly_factor(spec.base, list(spec.modulus))
        if len(fact) != 1:
            result = (False, None)
        elif fact[0][1] == 1:
            result = (True, ideal_from_generators(spec, []))
        else:
            g = list(fact[0][0])
            g_val = tuple(
                (g[i] if i < len(g) else spec.base.zero)
                for i in range(spec.degree)
            )
            result = (True, ideal_from_generators(spec, [g_val]))
    else:
        nonunits = [v for v in spec.elements() if not spec.is_unit(v)]
        nonunit_set = set(nonunits)
        ok = all(
            spec.add(a, b) in nonunit_set for a in nonunits for b in nonunits
        )
        if ok:
            result = (True, ideal_from_generators(spec, nonunits))
        else:
            result = (False, None)
    spec._local = result
    return result


def residue_field(spec: RingSpec):
    """(field, project, lift) for a local ring's quotient by its maximal ideal."""
    flag, mx = is_local(spec)
    if not flag:
        raise RingError(f"{spec.label} is not local")
    return mx.quotient()


# ---------------------------------------------------------------------------
# Artinian decomposition


class ArtinianDecomposition:
    """R ~ product of local rings, with explicit coordinate maps both ways."""

    def __init__(self, source: RingSpec, factors, to_components, from_components):
        self.source = source
        self.factors = list(factors)
        self._to = to_components
        self._from = from_components

    def to_components(self, v) -> tuple:
        return self._to(v)

    def from_components(self, comps) -> object:
        return self._from(tuple(comps))

    def __repr__(self):
        names = ", ".join(f.label for f in self.factors)
        return f"<{self.source.label} ~ {names}>"


def _artinian_zmod(spec: ZmodRing) -> ArtinianDecomposition:
    fact = factorize(spec.n)
    moduli = [p**k for p, k in fact]
    factors = [ZmodRing(m) for m in moduli]
    n = spec.n
    # CRT idempotents
    idem = []
    for m in moduli:
        rest = n // m
        g, inv, _ = xgcd(rest, m)
        idem.append((rest * (inv % m)) % n)

    def to_components(v):
        return tuple(v % m for m in moduli)

    def from_components(comps):
        return sum(c * e for c, e in zip(comps, idem)) % n

    return ArtinianDecomposition(spec, factors, to_components, from_components)


def _artinian_polyquot(spec: PolyQuotientRing) -> ArtinianDecomposition:
    base = spec.base
    fact = poly_factor(base, list(spec.modulus))
    parts = [_poly_pow(base, list(g), e) for g, e in fact]
    factors = []
    for part in parts:
        coeffs = tuple(part)
        factors.append(PolyQuotientRing(base, coeffs))
    full = list(spec.modulus)
    idem = []
    for part in parts:
        rest, r = poly_divmod(base, full, part)
        if r:
            raise RingError("factorization inconsistency")
        d, u, _ = poly_xgcd(base, rest, part)
        if len(d) != 1:
            raise RingError("factors are not coprime")
        c = base.inv(d[0])
        e = poly_mul(base, [base.mul(c, x) for x in u], rest)
        _, e = poly_divmod(base, e, full)
        idem.append(e)

    def pad(coeffs, d):
        coeffs = list(coeffs)
        return tuple(coeffs[:d] + [base.zero] * (d - len(coeffs)))

    def to_components(v):
        out = []
        for f, part in zip(factors, parts):
            _, r = poly_divmod(base, list(v), part)
            out.append(pad(r, f.degree))
        return tuple(out)

    def from_components(comps):
        total: list = []
        for comp, e in zip(comps, idem):
            total = poly_sub(base, total, [base.neg(c) for c in poly_mul(base, list(comp), e)])
        _, r = poly_divmod(base, total, full)
        return pad(r, spec.degree)

    return ArtinianDecomposition(spec, factors, to_components, from_components)


def _poly_pow(base: RingSpec, f: list, e: int) -> list:
    out = [base.one]
    for _ in range(e):
        out = poly_mul(base, out, f)
    return out


def _artinian_generic(spec: RingSpec) -> ArtinianDecomposition:
    if spec.card > 2**16:
        raise RingError(
            f"{spec.label}: too large for exhaustive idempotent decomposition"
        )
    idems = [v for v in spec.elements() if spec.mul(v, v) == v]
    primitive = []
    for e in idems:
        if e == spec.zero:
            continue
        minimal = True
        for f in idems:
            if f in (spec.zero, e):
                continue
            if spec.mul(e, f) == f:
                minimal = False
                break
        if minimal:
            primitive.append(e)
    if len(primitive) == 1:
        def ident_to(v):
            return (v,)

        def ident_from(comps):
            return comps[0]

        return ArtinianDecomposition(spec, [spec], ident_to, ident_from)
    quotients = []
    for e in primitive:
        comp = spec.sub(spec.one, e)
        ideal = ideal_from_generators(spec, [comp])
        q = QuotientRing(spec, ideal)
        quotients.append(q)

    def to_components(v):
        return tuple(q.project(v) for q in quotients)

    def from_components(comps):
        total = spec.zero
        for comp, e, q in zip(comps, primitive, quotients):
            total = spec.add(total, spec.mul(q.lift(comp), e))
        return total

    return ArtinianDecomposition(spec, quotients, to_components, from_components)


def artinian_decompose(spec: RingSpec) -> ArtinianDecomposition:
    """Split a finite ring into local factors with invertible coordinate maps."""
    if isinstance(spec, ZmodRing):
        if len(factorize(spec.n)) <= 1:
            return ArtinianDecomposition(
                spec, [spec], lambda v: (v,), lambda comps: comps[0]
            )
        return _artinian_zmod(spec)
    if isinstance(spec, ProductRing):
        subs = [artinian_decompose(f) for f in spec.factors]
        factors = [g for s in subs for g in s.factors]
        widths = [len(s.factors) for s in subs]

        def to_components(v):
            out = []
            for x, s in zip(v, subs):
                out.extend(s.to_components(x))
            return tuple(out)

        def from_components(comps):
            out = []
            pos = 0
            for w, s in zip(widths, subs):
                out.append(s.from_components(comps[pos : pos + w]))
                pos += w
            return tuple(out)

        return ArtinianDecomposition(spec, factors, to_components, from_components)
    if isinstance(spec, PolyQuotientRing) and spec.base.is_field:
        if is_local(spec)[0]:
            return ArtinianDecomposition(
                spec, [spec], lambda v: (v,), lambda comps: comps[0]
            )
        return _artinian_polyquot(spec)
    if is_local(spec)[0]:
        return ArtinianDecomposition(
            spec, [spec], lambda v: (v,), lambda comps: comps[0]
        )
    return _artinian_generic(spec)
