"""Chevalley group elements over finite rings: generators, words, oracles.

Group elements are exact matrices over a ring spec in a chosen
representation.  The module provides the elementary generators e_a(t), torus
and Weyl lifts, congruence reduction, a brute-force subgroup closure, and
exhaustive/sampled verification of the additivity and commutator relations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg
from .chevalley import build_basis
from .reps import Representation
from .rings import IdealHandle, RingSpec
from .roots import _neg


class GroupError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Subgroup closure grew past the requested cap."""


DEBUG_VALIDATE = False


def set_debug_validation(flag: bool):
    """Check form/determinant preservation on every constructed generator."""
    global DEBUG_VALIDATE
    DEBUG_VALIDATE = bool(flag)


class GroupElement:
    """An invertible matrix over a finite ring, tagged with its representation."""

    __slots__ = ("rep", "ring", "mat", "_hash")

    def __init__(self, rep: Representation, ring: RingSpec, mat):
        self.rep = rep
        self.ring = ring
        self.mat = mat
        self._hash = None

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.rep, self.ring, linalg.mat_mul(self.ring, self.mat, other.mat)
        )

    def inverse(self) -> "GroupElement":
        return GroupElement(
            self.rep, self.ring, linalg.mat_inverse(self.ring, self.mat)
        )

    def is_identity(self) -> bool:
        return self.mat == self.rep.identity(self.ring)

    def _check(self, other: "GroupElement"):
        if self.rep.key != other.rep.key or self.ring != other.ring:
            raise GroupError("elements live in different groups")

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.rep.key == other.rep.key
            and self.ring == other.ring
            and self.mat == other.mat
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rep.key, self.mat))
        return self._hash

    def to_json(self):
        ring = self.ring
        return [[ring.element_to_json(v) for v in row] for row in self.mat]

    @classmethod
    def from_json(cls, rep: Representation, ring: RingSpec, rows):
        if len(rows) != rep.dim or any(len(r) != rep.dim for r in rows):
            raise GroupError(f"matrix must be {rep.dim}x{rep.dim}")
        mat = tuple(
            tuple(ring.element_from_json(v) for v in row) for row in rows
        )
        return cls(rep, ring, mat)

    def __repr__(self):
        return f"<{self.rep.tag} element over {self.ring.label}>"


def identity_element(rep: Representation, ring: RingSpec) -> GroupElement:
    return GroupElement(rep, ring, rep.identity(ring))


def elementary(rep: Representation, ring: RingSpec, root, t) -> GroupElement:
    """The root-group element e_root(t) = exp(t X_root), reduced into the ring."""
    if tuple(root) not in rep.rs.root_set:
        raise GroupError(f"{root} is not a root of {rep.rs.label}")
    g = GroupElement(rep, ring, rep.elementary_matrix(ring, tuple(root), t))
    if DEBUG_VALIDATE and not rep.check_invariant(ring, g.mat):
        raise GroupError(f"generator for {root} broke the representation form")
    return g


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """[g, h] = g h g^-1 h^-1."""
    return a * b * a.inverse() * b.inverse()


class ElementaryWord:
    """A product of elementary generators, as (root, parameter) letters."""

    def __init__(self, rep: Representation, ring: RingSpec, letters=()):
        self.rep = rep
        self.ring = ring
        self.letters = tuple((tuple(r), t) for r, t in letters)
        self._value = None

    def evaluate(self) -> GroupElement:
        if self._value is None:
            mat = self.rep.identity(self.ring)
            for root, t in self.letters:
                mat = linalg.mat_mul(
                    self.ring, mat, self.rep.elementary_matrix(self.ring, root, t)
                )
            self._value = GroupElement(self.rep, self.ring, mat)
        return self._value

    def inverse_word(self) -> "ElementaryWord":
        return ElementaryWord(
            self.rep,
            self.ring,
            [(r, self.ring.neg(t)) for r, t in reversed(self.letters)],
        )

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "ElementaryWord") -> "ElementaryWord":
        if self.rep.key != other.rep.key or self.ring != other.ring:
            raise GroupError("words live in different groups")
        return ElementaryWord(self.rep, self.ring, self.letters + other.letters)

    def nonzero(self) -> "ElementaryWord":
        zero = self.ring.zero
        return ElementaryWord(
            self.rep, self.ring, [(r, t) for r, t in self.letters if t != zero]
        )

    def to_json(self):
        return [
            {"root": list(r), "t": self.ring.element_to_json(t)}
            for r, t in self.letters
        ]

    @classmethod
    def from_json(cls, rep: Representation, ring: RingSpec, items):
        letters = []
        for item in items:
            root = tuple(item["root"])
            if root not in rep.rs.root_set:
                raise GroupError(f"{root} is not a root of {rep.rs.label}")
            letters.append((root, ring.element_from_json(item["t"])))
        return cls(rep, ring, letters)

    def __repr__(self):
        return f"<word of length {len(self.letters)} over {self.ring.label}>"


# ---------------------------------------------------------------------------
# Torus and Weyl lifts


def weyl_letters(rep: Representation, ring: RingSpec, alpha, u):
    """Letters of w_alpha(u) = e_a(u) e_-a(-u^-1) e_a(u)."""
    ui = ring.inv(u)
    if ui is None:
        raise GroupError("Weyl lift needs a unit parameter")
    alpha = tuple(alpha)
    return [(alpha, u), (_neg(alpha), ring.neg(ui)), (alpha, u)]


def torus_and_weyl(rep: Representation, ring: RingSpec, alpha, u):
    """(w_alpha(u), h_alpha(u)) with h_alpha(u) = w_alpha(u) w_alpha(1)^-1."""
    w = ElementaryWord(rep, ring, weyl_letters(rep, ring, alpha, u)).evaluate()
    w1_inv = (
        ElementaryWord(rep, ring, weyl_letters(rep, ring, alpha, ring.one))
        .inverse_word()
        .evaluate()
    )
    return w, w * w1_inv


def weyl_lift_word(rep: Representation, ring: RingSpec, word) -> ElementaryWord:
    """Canonical lift of a Weyl word as 3-letter blocks w_simple(1)."""
    letters = []
    for i in word:
        letters.extend(weyl_letters(rep, ring, rep.rs.simple[i], ring.one))
    return ElementaryWord(rep, ring, letters)


def weyl_conjugation_check(
    rep: Representation,
    ring: RingSpec,
    word,
    alpha,
    sample_cap: int = 512,
    seed: int = 0,
):
    """Sign eps with w e_alpha(t) w^-1 = e_{w(alpha)}(eps t) for all checked t.

    Returns (eps, True) on success; raises GroupError when the identity fails
    (which would indicate a structure-table inconsistency).
    """
    rs = rep.rs
    alpha = tuple(alpha)
    beta = rs.apply_word(word, alpha)
    lift = weyl_lift_word(rep, ring, word)
    w = lift.evaluate()
    w_inv = lift.inverse_word().evaluate()
    values = ring.elements()
    if len(values) > sample_cap:
        rng = random.Random(seed)
        values = [rng.choice(values) for _ in range(sample_cap)]
    sign = None
    for t in values:
        lhs = w * elementary(rep, ring, alpha, t) * w_inv
        matched = None
        for eps in (1, -1):
            s = t if eps == 1 else ring.neg(t)
            if lhs == elementary(rep, ring, beta, s):
                matched = eps
                break
        if matched is None:
            raise GroupError(f"Weyl conjugation failed for {alpha} at t={t}")
        if t != ring.zero and ring.neg(t) != t:
            if sign is None:
                sign = matched
            elif sign != matched:
                raise GroupError(f"Weyl conjugation sign varies with t for {alpha}")
    return (sign if sign is not None else 1), True


# ---------------------------------------------------------------------------
# Congruence reduction


def congruence_reduce(g: GroupElement, ideal: IdealHandle) -> GroupElement:
    """Entrywise reduction of g modulo the ideal (a group homomorphism)."""
    if ideal.spec != g.ring:
        raise GroupError("ideal belongs to a different ring")
    qspec, proj, _ = _quotient_data(ideal)
    mat = tuple(tuple(proj(v) for v in row) for row in g.mat)
    return GroupElement(g.rep, qspec, mat)


def in_congruence_kernel(g: GroupElement, ideal: IdealHandle) -> bool:
    return congruence_reduce(g, ideal).is_identity()


_QUOTIENT_CACHE: dict = {}


def _quotient_data(ideal: IdealHandle):
    key = (ideal.spec.key(), ideal.element_set())
    hit = _QUOTIENT_CACHE.get(key)
    if hit is None:
        hit = ideal.quotient()
        _QUOTIENT_CACHE[key] = hit
    return hit


# ---------------------------------------------------------------------------
# Brute-force closure


def subgroup_closure(generators, cap: int, track_words: bool = False):
    """Multiplicative closure of the generators (a subgroup, the group being finite).

    With track_words=True returns a dict element -> ElementaryWord whenever all
    generators are given as (word) pairs; otherwise returns a frozenset.
    Raises CapExceeded when the closure grows past cap.
    """
    gens = list(generators)
    if not gens:
        raise GroupError("closure needs at least one generator")
    if track_words:
        first = gens[0][0]
        ident = identity_element(first.rep, first.ring)
        words = {ident: ElementaryWord(first.rep, first.ring)}
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                gw = words[g]
                for h, hw in gens:
                    prod = g * h
                    if prod not in words:
                        words[prod] = gw + hw
                        nxt.append(prod)
                        if len(words) > cap:
                            raise CapExceeded(f"closure exceeded cap {cap}")
            frontier = nxt
        return words
    first = gens[0]
    ident = identity_element(first.rep, first.ring)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = g * h
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    if len(seen) > cap:
                        raise CapExceeded(f"closure exceeded cap {cap}")
        frontier = nxt
    return frozenset(seen)


def all_elementaries(rep: Representation, ring: RingSpec, omit_root=None):
    """Generators e_a(t) for t != 0, optionally omitting a single root."""
    omit = tuple(omit_root) if omit_root is not None else None
    out = []
    for r in rep.rs.roots:
        if r == omit:
            continue
        for t in ring.elements():
            if t == ring.zero:
                continue
            out.append(elementary(rep, ring, r, t))
    return out


def elementary_generator_words(rep: Representation, ring: RingSpec):
    """(element, single-letter word) pairs for all elementary generators."""
    out = []
    for r in rep.rs.roots:
        for t in ring.elements():
            if t == ring.zero:
                continue
            w = ElementaryWord(rep, ring, [(r, t)])
            out.append((w.evaluate(), w))
    return out


def random_elementary_word(
    rep: Representation, ring: RingSpec, length: int, rng: random.Random
) -> ElementaryWord:
    roots = list(rep.rs.roots)
    values = ring.elements()
    letters = [
        (rng.choice(roots), rng.choice(values)) for _ in range(length)
    ]
    return ElementaryWord(rep, ring, letters)


# ---------------------------------------------------------------------------
# Steinberg relation verification


@dataclass
class RelationReport:
    type_label: str
    ring_label: str
    rep_tag: str
    additivity_checked: int = 0
    commutator_checked: int = 0
    excluded_pairs: int = 0
    exhaustive: bool = True
    failures: list = field(default_factory=list)
    caveat: str | None = None

    @property
    def ok(self) -> bool:
        return not self.failures


def _parameter_pairs(ring: RingSpec, loop_cap: int, sample: int, seed: int):
    values = ring.elements()
    total = len(values) ** 2
    if total <= loop_cap:
        return [(s, t) for s in values for t in values], True
    rng = random.Random(seed)
    return (
        [(rng.choice(values), rng.choice(values)) for _ in range(sample)],
        False,
    )


def verify_steinberg_relations(
    rep: Representation,
    ring: RingSpec,
    mode: str = "both",
    loop_cap: int = 2**16,
    sample: int = 512,
    seed: int = 0,
) -> RelationReport:
    """Check additivity (R1) and the commutator expansion (R2) over the ring.

    R1: e_a(s) e_a(t) = e_a(s+t) for every root.  R2: for every ordered pair
    with b != -a, [e_a(s), e_b(t)] equals the expansion with the integral
    coefficients from the structure table, factors ordered by (i+j, i).
    Failures are collected in the report, not raised.
    """
    rs = rep.rs
    table = build_basis(rs)
    report = RelationReport(rs.label, ring.label, rep.tag, caveat=rep.caveat)
    pairs, exhaustive = _parameter_pairs(ring, loop_cap, sample, seed)
    report.exhaustive = exhaustive
    if mode in ("R1", "both"):
        for a in rs.roots:
            for s, t in pairs:
                lhs = linalg.mat_mul(
                    ring,
                    rep.elementary_matrix(ring, a, s),
                    rep.elementary_matrix(ring, a, t),
                )
                rhs = rep.elementary_matrix(ring, a, ring.add(s, t))
                report.additivity_checked += 1
                if lhs != rhs:
                    report.failures.append(("R1", a, s, t))
    if mode in ("R2", "both"):
        coeff_rows = {}
        for a in rs.roots:
            for b in rs.roots:
                if b == _neg(a):
                    report.excluded_pairs += 1
                    continue
                coeff_rows[(a, b)] = (
                    rs.commutator_root_list(a, b),
                    table.commutator_coefficients(a, b),
                )
        for (a, b), (entries, coeffs) in coeff_rows.items():
            for s, t in pairs:
                ea = rep.elementary_matrix(ring, a, s)
                eb = rep.elementary_matrix(ring, b, t)
                ea_inv = rep.elementary_matrix(ring, a, ring.neg(s))
                eb_inv = rep.elementary_matrix(ring, b, ring.neg(t))
                lhs = linalg.mat_mul(
                    ring,
                    linalg.mat_mul(ring, ea, eb),
                    linalg.mat_mul(ring, ea_inv, eb_inv),
                )
                rhs = rep.identity(ring)
                spow = {1: s}
                tpow = {1: t}
                for i, j, g in entries:
                    si = spow.get(i)
                    if si is None:
                        si = ring.mul(spow[i - 1], s)
                        spow[i] = si
                    tj = tpow.get(j)
                    if tj is None:
                        tj = ring.mul(tpow[j - 1], t)
                        tpow[j] = tj
                    param = ring.mul(
                        ring.from_int(coeffs[(i, j)]), ring.mul(si, tj)
                    )
                    rhs = linalg.mat_mul(
                        ring, rhs, rep.elementary_matrix(ring, g, param)
                    )
                report.commutator_checked += 1
                if lhs != rhs:
                    report.failures.append(("R2", a, b, s, t))
    return report
