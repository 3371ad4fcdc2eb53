"""Bounded-generation decompositions into elementary generators.

Implements the constructive toolchain: the four-letter torus identity, exact
big-cell (Gauss) factorization over local rings, Bruhat decomposition over
finite fields by brute force over the Weyl group, the local-ring
decomposition assembled from those two, the letterwise merge over product
rings, and the (U+ U-)^4 normal form obtained by rank induction with
unipotent interchange.  Every emitted word is re-evaluated against its input
before being returned; verification is part of the contract.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .groups import (
    ElementaryWord,
    GroupElement,
    GroupError,
    elementary,
    torus_and_weyl,
    weyl_lift_word,
)
from .reps import Representation
from .rings import RingSpec, is_local, residue_field
from .roots import RootSystem, _neg


class NotInBigCell(Exception):
    """The element admits no lower-torus-upper factorization."""


class NotUnipotent(GroupError):
    """The matrix is not in the claimed unipotent subgroup."""


class UnsupportedDecomposition(GroupError):
    pass


def decomposition_constants(rs: RootSystem) -> dict:
    """Word-length bounds: big cell N1, Bruhat N2, merge factor, fourfold form."""
    npos = len(rs.positive)
    n1 = 2 * npos + 4 * rs.rank
    n2 = n1 + 3 * npos
    return {
        "N1": n1,
        "N2": n2,
        "local_bound": n1 + n2,
        "merge_bound": (n1 + n2) * len(rs.roots),
        "fourfold_bound": 4 * len(rs.roots),
    }


def check_decomposition_supported(rs: RootSystem, allow_slow: bool = False):
    letter, rank = rs.letter, rs.rank
    if letter == "A" and 1 <= rank <= 4:
        return
    if letter in "BC" and 2 <= rank <= 4:
        return
    if letter == "D" and 3 <= rank <= 4:
        return
    if letter == "G":
        return
    if letter == "F" and allow_slow:
        return
    raise UnsupportedDecomposition(
        f"decomposition algorithms cover rank <= 4 classical types and G2; "
        f"got {rs.label}" + ("" if letter != "F" else " (pass allow_slow=True)")
    )


# ---------------------------------------------------------------------------
# Unipotent coordinates


def unipotent_order(rs: RootSystem, sign: int):
    """Fixed coordinate order: positives by ascending height (mirrored for -)."""
    pos = sorted(rs.positive, key=lambda r: (rs.height(r), r))
    if sign > 0:
        return pos
    return [_neg(r) for r in pos]


def _read_coordinate(rep: Representation, ring: RingSpec, mat, root):
    _, combo = rep.extraction_data(root)
    acc = ring.zero
    for (r, c), m in combo:
        acc = ring.add(acc, ring.mul(ring.from_int(m), mat[r][c]))
    return acc


def unipotent_coordinates(
    g: GroupElement, sign: int, order=None
) -> list:
    """Coordinates (root, value) whose height-ordered product re-evaluates to g.

    Raises NotUnipotent when g is not in the unipotent subgroup of the given
    sign (the strip-down fails to reach the identity).
    """
    rep, ring = g.rep, g.ring
    if order is None:
        order = unipotent_order(rep.rs, sign)
    cur = g.mat
    coords = []
    for root in order:
        x = _read_coordinate(rep, ring, cur, root)
        coords.append((root, x))
        if x != ring.zero:
            strip = rep.elementary_matrix(ring, root, ring.neg(x))
            cur = linalg.mat_mul(ring, strip, cur)
    if cur != rep.identity(ring):
        raise NotUnipotent("matrix is not a product of the claimed root groups")
    return coords


# ---------------------------------------------------------------------------
# Torus words


def torus_word(rep: Representation, ring: RingSpec, alpha, a) -> ElementaryWord:
    """Four elementary letters evaluating to h_alpha(a), verified."""
    a_inv = ring.inv(a)
    if a_inv is None:
        raise GroupError("torus word needs a unit")
    alpha = tuple(alpha)
    one = ring.one
    letters = [
        (alpha, ring.neg(one)),
        (_neg(alpha), ring.sub(one, a)),
        (alpha, a_inv),
        (_neg(alpha), ring.mul(a, ring.sub(a, one))),
    ]
    word = ElementaryWord(rep, ring, letters)
    _, h = torus_and_weyl(rep, ring, alpha, a)
    if word.evaluate() != h:
        raise GroupError("torus identity failed to verify")
    return word


_TORUS_TABLE_CACHE: dict = {}


def _torus_diag_table(rep: Representation, ring: RingSpec) -> dict:
    """diag tuple -> simple-root unit tuple, over the whole torus image."""
    key = (rep.key, ring.key())
    hit = _TORUS_TABLE_CACHE.get(key)
    if hit is not None:
        return hit
    units = ring.units()
    if len(units) ** rep.rs.rank > 300000:
        raise UnsupportedDecomposition("torus enumeration too large")
    h_diags = []
    for alpha in rep.rs.simple:
        per = {}
        for u in units:
            _, h = torus_and_weyl(rep, ring, alpha, u)
            per[u] = tuple(h.mat[i][i] for i in range(rep.dim))
        h_diags.append(per)
    table = {}
    for combo in itertools.product(units, repeat=rep.rs.rank):
        diag = tuple(
            _prod_all(ring, [h_diags[i][u][k] for i, u in enumerate(combo)])
            for k in range(rep.dim)
        )
        table.setdefault(diag, combo)
    _TORUS_TABLE_CACHE[key] = table
    return table


def _prod_all(ring: RingSpec, values):
    acc = ring.one
    for v in values:
        acc = ring.mul(acc, v)
    return acc


# ---------------------------------------------------------------------------
# Big cell


@dataclass
class BigCellFactorization:
    neg_coords: tuple
    torus_units: tuple  # one unit per simple root
    pos_coords: tuple
    word: ElementaryWord

    def length(self) -> int:
        return len(self.word)


def big_cell_factor(g: GroupElement) -> BigCellFactorization:
    """Exact lower-torus-upper factorization over a local ring.

    Gaussian elimination with unit pivots in the height-sorted basis; raises
    NotInBigCell when a pivot fails to be a unit, when the diagonal is not in
    the torus image, or when re-evaluation does not reproduce g.
    """
    rep, ring = g.rep, g.ring
    if not is_local(ring)[0]:
        raise GroupError("big-cell factorization needs a local ring")
    n = rep.dim
    m = [list(row) for row in g.mat]
    lower = [list(row) for row in rep.identity(ring)]
    for col in range(n):
        piv = m[col][col]
        if not ring.is_unit(piv):
            raise NotInBigCell(f"pivot {col} is not a unit")
        piv_inv = ring.inv(piv)
        for r in range(col + 1, n):
            f = ring.mul(m[r][col], piv_inv)
            if f == ring.zero:
                continue
            lower[r][col] = f
            m[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(m[r], m[col])]
    diag = tuple(m[i][i] for i in range(n))
    table = _torus_diag_table(rep, ring)
    units = table.get(diag)
    if units is None:
        raise NotInBigCell("diagonal part is not in the torus image")
    upper = []
    for i in range(n):
        inv = ring.inv(diag[i])
        upper.append(tuple(ring.mul(inv, x) for x in m[i]))
    try:
        neg = unipotent_coordinates(
            GroupElement(rep, ring, tuple(tuple(r) for r in lower)), -1
        )
        pos = unipotent_coordinates(GroupElement(rep, ring, tuple(upper)), +1)
    except NotUnipotent as exc:
        raise NotInBigCell(str(exc))
    letters = [(r, x) for r, x in neg if x != ring.zero]
    word = ElementaryWord(rep, ring, letters)
    for alpha, u in zip(rep.rs.simple, units):
        if u != ring.one:
            word = word + torus_word(rep, ring, alpha, u)
    word = word + ElementaryWord(
        rep, ring, [(r, x) for r, x in pos if x != ring.zero]
    )
    if word.evaluate() != g:
        raise NotInBigCell("factorization failed to re-evaluate")
    return BigCellFactorization(tuple(neg), tuple(units), tuple(pos), word)


# ---------------------------------------------------------------------------
# Bruhat decomposition over a finite field


def bruhat_decompose(g: GroupElement, allow_slow: bool = False):
    """(weyl word, elementary word) with the word evaluating to g, over a field."""
    rep, ring = g.rep, g.ring
    if len(ring.units()) != ring.card - 1:
        raise GroupError("Bruhat decomposition needs a field")
    check_decomposition_supported(rep.rs, allow_slow=allow_slow)
    for word, _ in rep.rs.weyl_elements():
        lift = weyl_lift_word(rep, ring, word)
        try:
            fac = big_cell_factor(g * lift.inverse_word().evaluate())
        except NotInBigCell:
            continue
        full = fac.word + lift
        if full.evaluate() != g:
            raise GroupError("Bruhat word failed to re-evaluate")
        return word, full
    raise GroupError("no Weyl chamber matched; the cell cover is broken")


# ---------------------------------------------------------------------------
# Local decomposition


@dataclass
class DecompositionReport:
    algorithm: str
    input: GroupElement
    word: ElementaryWord
    bound: int
    constants: dict
    verified: bool

    @property
    def length(self) -> int:
        return len(self.word)

    def to_json(self):
        return {
            "algorithm": self.algorithm,
            "word": self.word.to_json(),
            "length": self.length,
            "bound": self.bound,
            "constants": dict(self.constants),
            "verified": self.verified,
        }


def _single_letter_fast_path(g: GroupElement):
    rep, ring = g.rep, g.ring
    for root in rep.rs.roots:
        t = _read_coordinate(rep, ring, g.mat, root)
        if g.mat == rep.elementary_matrix(ring, root, t):
            return ElementaryWord(rep, ring, [(root, t)]).nonzero()
    return None


def local_decompose(g: GroupElement, allow_slow: bool = False) -> DecompositionReport:
    """Bounded word over a local ring: Bruhat over the residue field, lift,
    then big-cell factorization of the congruence-kernel remainder."""
    rep, ring = g.rep, g.ring
    rs = rep.rs
    check_decomposition_supported(rs, allow_slow=allow_slow)
    if not is_local(ring)[0]:
        raise GroupError("local decomposition needs a local ring")
    consts = decomposition_constants(rs)
    bound = consts["local_bound"]

    def finish(word):
        if word.evaluate() != g:
            raise GroupError("decomposition failed to re-evaluate")
        if len(word) > bound:
            raise GroupError("decomposition exceeded its advertised bound")
        return DecompositionReport("prop2", g, word, bound, consts, True)

    if g.is_identity():
        return finish(ElementaryWord(rep, ring))
    fast = _single_letter_fast_path(g)
    if fast is not None:
        return finish(fast)
    field, proj, lift = residue_field(ring)
    reduced = GroupElement(
        rep, field, tuple(tuple(proj(v) for v in row) for row in g.mat)
    )
    _, res_word = bruhat_decompose(reduced, allow_slow=allow_slow)
    lifted = ElementaryWord(
        rep, ring, [(r, lift(t)) for r, t in res_word.letters]
    ).nonzero()
    remainder = g * lifted.inverse_word().evaluate()
    fac = big_cell_factor(remainder)
    return finish(fac.word + lifted)


# ---------------------------------------------------------------------------
# Product-ring merge


def factor_projection(g: GroupElement, factors, to_components, index: int) -> GroupElement:
    mat = tuple(
        tuple(to_components(v)[index] for v in row) for row in g.mat
    )
    return GroupElement(g.rep, factors[index], mat)


def product_merge_decompose(
    g: GroupElement, factor_words, from_components
) -> ElementaryWord:
    """Merge per-factor words into one word over the product, letter slot by slot.

    Each aligned tuple of letters (e_{a_i}(r_i))_i becomes a short run of
    letters e_a(t_a) whose parameters assemble the r_i componentwise; words
    are padded with zero letters to a common length first.
    """
    rep, ring = g.rep, g.ring
    n_factors = len(factor_words)
    width = max((len(w) for w in factor_words), default=0)
    pad_root = rep.rs.roots[0]
    columns = []
    for w in factor_words:
        letters = list(w.letters)
        letters += [(pad_root, None)] * (width - len(letters))
        columns.append(letters)
    merged = []
    for j in range(width):
        slot: dict = {}
        order = []
        for i in range(n_factors):
            root, t = columns[i][j]
            if t is None:
                continue
            if root not in slot:
                slot[root] = [None] * n_factors
                order.append(root)
            slot[root][i] = t
        for root in order:
            comps = []
            for i, t in enumerate(slot[root]):
                if t is None:
                    comps.append(factor_words[i].ring.zero)
                else:
                    comps.append(t)
            merged.append((root, from_components(tuple(comps))))
    word = ElementaryWord(rep, ring, merged).nonzero()
    if word.evaluate() != g:
        raise GroupError("merged word failed to re-evaluate")
    return word


def decompose_over_product(g: GroupElement, allow_slow: bool = False) -> DecompositionReport:
    """Split the ring into local factors, decompose per factor, merge back."""
    from .rings import artinian_decompose

    rep, ring = g.rep, g.ring
    consts = decomposition_constants(rep.rs)
    dec = artinian_decompose(ring)
    factor_words = []
    for idx, f in enumerate(dec.factors):
        part = factor_projection(g, dec.factors, dec.to_components, idx)
        factor_words.append(local_decompose(part, allow_slow=allow_slow).word)
    word = product_merge_decompose(g, factor_words, dec.from_components)
    bound = consts["merge_bound"]
    if len(word) > bound:
        raise GroupError("merged word exceeded its advertised bound")
    return DecompositionReport("merge", g, word, bound, consts, True)


# ---------------------------------------------------------------------------
# (U+ U-)^4 normal form


@dataclass
class FourfoldReport:
    input_word: ElementaryWord
    blocks: list  # 8 coordinate dicts, alternating +, -
    word: ElementaryWord
    bound: int
    verified: bool


def _conjugation_sign(rep: Representation, ring: RingSpec, word, beta) -> int:
    """Sign in the Weyl conjugation of e_beta by the canonical lift of word."""
    rs = rep.rs
    target = rs.apply_word(word, beta)
    lift = weyl_lift_word(rep, ring, word)
    w = lift.evaluate()
    w_inv = lift.inverse_word().evaluate()
    lhs = w * elementary(rep, ring, beta, ring.one) * w_inv
    if lhs == elementary(rep, ring, target, ring.one):
        return 1
    if lhs == elementary(rep, ring, target, ring.neg(ring.one)):
        return -1
    raise GroupError("Weyl conjugation does not send a root group to a root group")


def _rewrite_to_simple_letters(word: ElementaryWord) -> list:
    """Rewrite arbitrary-root letters as words in +-simple-root letters."""
    rep, ring = word.rep, word.ring
    rs = rep.rs
    simple_set = set(rs.simple) | {_neg(s) for s in rs.simple}
    out = []
    for root, t in word.letters:
        if t == ring.zero:
            continue
        if root in simple_set:
            out.append((root, t))
            continue
        base = next(s for s in rs.simple if rs.norm(s) == rs.norm(root))
        w = rs.same_length_conjugator(base, root)
        eps = _conjugation_sign(rep, ring, w, base)
        lift = weyl_lift_word(rep, ring, w)
        s = t if eps == 1 else ring.neg(t)
        out.extend(lift.letters)
        out.append((base, s))
        out.extend(lift.inverse_word().letters)
    return out


class _Sl2Machine:
    """Rank-1 base case: track the abstract 2x2 matrix and re-solve blocks."""

    def __init__(self, rep, ring, beta, blocks=None):
        self.rep = rep
        self.ring = ring
        self.beta = tuple(beta)
        one, zero = ring.one, ring.zero
        self.m = ((one, zero), (zero, one))
        if blocks:
            for k, coords in enumerate(blocks):
                x = coords.get(self.beta if k % 2 == 0 else _neg(self.beta))
                if x is not None and x != zero:
                    self._mul_right(k % 2 == 0, x)

    def _mul_right(self, upper: bool, t):
        ring = self.ring
        (a, b), (c, d) = self.m
        if upper:
            self.m = (
                (a, ring.add(ring.mul(a, t), b)),
                (c, ring.add(ring.mul(c, t), d)),
            )
        else:
            self.m = (
                (ring.add(a, ring.mul(b, t)), b),
                (ring.add(c, ring.mul(d, t)), d),
            )

    def push_left(self, root, t):
        ring = self.ring
        (a, b), (c, d) = self.m
        if tuple(root) == self.beta:
            self.m = (
                (ring.add(a, ring.mul(t, c)), ring.add(b, ring.mul(t, d))),
                (c, d),
            )
        elif tuple(root) == _neg(self.beta):
            self.m = (
                (a, b),
                (ring.add(c, ring.mul(t, a)), ring.add(d, ring.mul(t, b))),
            )
        else:
            raise GroupError(f"letter {root} outside the rank-1 system")

    def blocks(self) -> list:
        ring = self.ring
        beta, nbeta = self.beta, _neg(self.beta)
        (a, b), (c, d) = self.m
        one = ring.one
        out = [dict() for _ in range(8)]

        def solve(a, b, c, d):
            c_inv = ring.inv(c)
            if c_inv is None:
                raise GroupError("rank-1 solve needs a unit corner")
            x = ring.mul(ring.sub(a, one), c_inv)
            z = ring.mul(ring.sub(d, one), c_inv)
            return x, z

        if ring.is_unit(c):
            x, z = solve(a, b, c, d)
            out[0] = {beta: x}
            out[1] = {nbeta: c}
            out[2] = {beta: z}
        else:
            # local ring: a is then a unit, so c + a is a unit
            c2 = ring.add(c, a)
            d2 = ring.add(d, b)
            x, z = solve(a, b, c2, d2)
            out[1] = {nbeta: ring.neg(one)}
            out[2] = {beta: x}
            out[3] = {nbeta: c2}
            out[4] = {beta: z}
        return [
            {r: v for r, v in blk.items() if v != ring.zero} for blk in out
        ]


class _Machine:
    """Rank-inductive (U+ U-)^4 state over a fixed representation and ring."""

    def __init__(self, rs: RootSystem, rep: Representation, ring: RingSpec, blocks=None):
        self.rs = rs
        self.rep = rep
        self.ring = ring
        self.blocks = blocks if blocks is not None else [dict() for _ in range(8)]
        self._splits: dict = {}

    # coordinate evaluation in this subsystem's fixed orders
    def _order(self, sign):
        return unipotent_order(self.rs, sign)

    def _eval(self, sign, coords: dict):
        mat = self.rep.identity(self.ring)
        for root in self._order(sign):
            x = coords.get(root)
            if x is not None and x != self.ring.zero:
                mat = linalg.mat_mul(
                    self.ring, mat, self.rep.elementary_matrix(self.ring, root, x)
                )
        return mat

    def _extract(self, sign, mat, support=None) -> dict:
        order = self._order(sign)
        g = GroupElement(self.rep, self.ring, mat)
        coords = unipotent_coordinates(g, sign, order=order)
        out = {}
        for root, x in coords:
            if x == self.ring.zero:
                continue
            if support is not None and root not in support:
                raise GroupError("interchange left the expected root span")
            out[root] = x
        return out

    def push_left(self, root, t):
        if t == self.ring.zero:
            return
        rs = self.rs
        if rs.rank == 1:
            raise GroupError("rank-1 systems use the SL2 machine")
        root = tuple(root)
        beta_idx = None
        for i, s in enumerate(rs.simple):
            if root == s or root == _neg(s):
                beta_idx = i
                break
        if beta_idx is None:
            raise GroupError(f"letter {root} is not a +-simple root of {rs.label}")
        alpha_idx = next(
            i for i in rs.extremal_simple_indices() if i != beta_idx
        )
        split = self._splits.get(alpha_idx)
        if split is None:
            split = rs.tavgen_split(alpha_idx)
            self._splits[alpha_idx] = split
        sub = split.sub_system
        phi1 = set(split.phi1)
        phi0 = set(split.phi0)
        ring = self.ring

        # (A) factor each block as U0 * U1
        a_coords, c_mats = [], []
        for k in range(8):
            sign = 1 if k % 2 == 0 else -1
            coords = self.blocks[k]
            u0 = {r: v for r, v in coords.items() if r in phi0}
            u0_mat = self._eval(sign, u0)
            u_mat = self._eval(sign, coords)
            u0_inv = linalg.mat_inverse(ring, u0_mat)
            u1_mat = linalg.mat_mul(ring, u0_inv, u_mat)
            self._extract(sign, u1_mat, support=phi1)  # validity check
            a_coords.append(u0)
            c_mats.append(u1_mat)

        # (B) bubble the U1 parts to the right of all U0 blocks
        d_mats = [None] * 8
        p = self.rep.identity(ring)
        p_inv = self.rep.identity(ring)
        for k in range(7, -1, -1):
            d_mats[k] = linalg.mat_mul(ring, linalg.mat_mul(ring, p_inv, c_mats[k]), p)
            a_mat = self._eval(1 if k % 2 == 0 else -1, a_coords[k])
            p = linalg.mat_mul(ring, a_mat, p)
            p_inv = linalg.mat_mul(
                ring, p_inv, linalg.mat_inverse(ring, a_mat)
            )

        # (C) absorb the letter into the rank-(l-1) state
        if sub.rank == 1:
            beta = sub.positive[0]
            base = _Sl2Machine(self.rep, ring, beta, blocks=a_coords)
            base.push_left(root, t)
            new_a = base.blocks()
        else:
            inner = _Machine(sub, self.rep, ring, blocks=[dict(d) for d in a_coords])
            inner.push_left(root, t)
            new_a = inner.blocks

        # (D) bubble the U1 parts back in behind the refreshed U0 blocks
        new_blocks = []
        q = self.rep.identity(ring)
        q_inv = self.rep.identity(ring)
        c_primes = [None] * 8
        for k in range(7, -1, -1):
            c_primes[k] = linalg.mat_mul(
                ring, linalg.mat_mul(ring, q, d_mats[k]), q_inv
            )
            a_mat = self._eval(1 if k % 2 == 0 else -1, new_a[k])
            q = linalg.mat_mul(ring, a_mat, q)
            q_inv = linalg.mat_mul(ring, q_inv, linalg.mat_inverse(ring, a_mat))
        for k in range(8):
            sign = 1 if k % 2 == 0 else -1
            combined = linalg.mat_mul(
                ring, self._eval(sign, new_a[k]), c_primes[k]
            )
            new_blocks.append(self._extract(sign, combined))
        self.blocks = new_blocks

    def evaluate(self) -> GroupElement:
        mat = self.rep.identity(self.ring)
        for k in range(8):
            sign = 1 if k % 2 == 0 else -1
            mat = linalg.mat_mul(self.ring, mat, self._eval(sign, self.blocks[k]))
        return GroupElement(self.rep, self.ring, mat)


def tavgen_decompose(word: ElementaryWord, allow_slow: bool = False) -> FourfoldReport:
    """Rewrite a word in the elementary subgroup as u1+ u1- ... u4+ u4-.

    Input membership is by construction (the element is given as a word); the
    output blocks re-evaluate to the same element, exactly.
    """
    rep, ring = word.rep, word.ring
    rs = rep.rs
    check_decomposition_supported(rs, allow_slow=allow_slow)
    if not is_local(ring)[0]:
        raise GroupError("the fourfold normal form needs a local ring")
    target = word.evaluate()
    if rs.rank == 1:
        machine = _Sl2Machine(rep, ring, rs.positive[0])
        for root, t in reversed(word.letters):
            if t != ring.zero:
                machine.push_left(root, t)
        blocks = machine.blocks()
        outer = _Machine(rs, rep, ring, blocks=blocks)
    else:
        outer = _Machine(rs, rep, ring)
        letters = _rewrite_to_simple_letters(word)
        for root, t in reversed(letters):
            outer.push_left(root, t)
        blocks = outer.blocks
    result = outer.evaluate()
    if result != target:
        raise GroupError("fourfold normal form failed to re-evaluate")
    letters = []
    for k in range(8):
        sign = 1 if k % 2 == 0 else -1
        for root in unipotent_order(rs, sign):
            x = blocks[k].get(root)
            if x is not None and x != ring.zero:
                letters.append((root, x))
    out_word = ElementaryWord(rep, ring, letters)
    bound = decomposition_constants(rs)["fourfold_bound"]
    if len(out_word) > bound:
        raise GroupError("fourfold word exceeded 4|Phi| letters")
    if out_word.evaluate() != target:
        raise GroupError("fourfold word failed to re-evaluate")
    return FourfoldReport(word, blocks, out_word, bound, True)
