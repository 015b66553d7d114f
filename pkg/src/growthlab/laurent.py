"""Integer Laurent polynomials and kernel rewriting.

For a presentation on a stable letter t and one kernel letter x, each
relator with zero t-exponent sum rewrites to a word in the shifted
kernel generators x_i; abelianizing gives a Laurent polynomial, and the
normalized gcd over the relators is the polynomial invariant Delta.
Delta carries two facts used elsewhere: a kernel that is finitely
generated forces Delta monic at both ends, and the degree (top exponent
minus bottom exponent) bounds the first Betti number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from growthlab.words import Word

NOT_FG = "NotFG"
POSSIBLY_FG = "PossiblyFG"


class LaurentError(Exception):
    pass


class RewriteError(LaurentError):
    pass


class LaurentPoly:
    """Sparse map exponent -> nonzero integer coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, c in items:
                c = d.get(e, 0) + c
                if c:
                    d[e] = c
                elif e in d:
                    del d[e]
        self.coeffs = d

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def term(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def of_list(cls, low_to_high) -> "LaurentPoly":
        return cls({e: c for e, c in enumerate(low_to_high) if c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        if len(self.coeffs) != 1:
            return False
        return abs(next(iter(self.coeffs.values()))) == 1

    @property
    def min_exp(self) -> int:
        if not self.coeffs:
            raise LaurentError("zero polynomial has no exponents")
        return min(self.coeffs)

    @property
    def max_exp(self) -> int:
        if not self.coeffs:
            raise LaurentError("zero polynomial has no exponents")
        return max(self.coeffs)

    @property
    def degree(self) -> int:
        """Top exponent minus bottom exponent."""
        return self.max_exp - self.min_exp

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def normalized(self) -> "LaurentPoly":
        """Unit-normalize: bottom exponent 0, top coefficient positive."""
        if not self.coeffs:
            return LaurentPoly()
        p = self.shift(-self.min_exp)
        if p.coeffs[p.max_exp] < 0:
            p = -p
        return p

    def terms(self):
        return sorted(self.coeffs.items())

    def __add__(self, other):
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            c = d.get(e, 0) + c
            if c:
                d[e] = c
            elif e in d:
                del d[e]
        return LaurentPoly(d)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        d = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                tpart = "t" if e == 1 else f"t^{e}"
                body = tpart if mag == 1 else f"{mag}*{tpart}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.format()})"


# ---------------------------------------------------------------------------
# gcd, exact division


def _to_list(p: LaurentPoly):
    """Shift bottom exponent to 0 and return low-to-high coefficients."""
    lo = p.min_exp
    hi = p.max_exp
    return [p.coeffs.get(e, 0) for e in range(lo, hi + 1)]


def _content(xs) -> int:
    g = 0
    for c in xs:
        g = math.gcd(g, abs(c))
    return g


def _primitive(xs):
    while xs and xs[-1] == 0:
        xs = xs[:-1]
    if not xs:
        return []
    g = _content(xs)
    return [c // g for c in xs]


def _prem(a, b):
    """Fraction-free pseudo-remainder of a by b (lists, b nonzero)."""
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        d = len(a) - len(b)
        la = a[-1]
        a = [c * lb for c in a]
        for j, c in enumerate(b):
            a[d + j] -= la * c
        while a and a[-1] == 0:
            a.pop()
    return a


def _zx_gcd(a, b):
    """gcd in Z[t] of nonzero coefficient lists, positive leading."""
    ca, cb = _content(a), _content(b)
    g = math.gcd(ca, cb)
    a, b = _primitive(a), _primitive(b)
    while b:
        a, b = b, _primitive(_prem(a, b))
    if a[-1] < 0:
        a = [-c for c in a]
    return [c * g for c in a]


def divides(d: LaurentPoly, p: LaurentPoly) -> bool:
    """Whether d divides p in the Laurent ring (zero divides only zero)."""
    if d.is_zero():
        return p.is_zero()
    if p.is_zero():
        return True
    num = _to_list(p)
    den = _to_list(d)
    while len(num) >= len(den):
        lead = num[-1]
        if lead % den[-1]:
            return False
        q = lead // den[-1]
        off = len(num) - len(den)
        for j, c in enumerate(den):
            num[off + j] -= q * c
        while num and num[-1] == 0:
            num.pop()
        if not num:
            return True
    return not num


def laurent_gcd(ps) -> LaurentPoly:
    """Normalized gcd: bottom exponent 0, positive top coefficient."""
    nz = [p for p in ps if not p.is_zero()]
    if not nz:
        raise LaurentError("gcd of an all-zero family is undefined")
    g = _to_list(nz[0])
    if g[-1] < 0:
        g = [-c for c in g]
    for p in nz[1:]:
        if g == [1]:
            break
        g = _zx_gcd(g, _to_list(p))
    result = LaurentPoly.of_list(g).normalized()
    for p in nz:
        if not divides(result, p):
            raise AssertionError("gcd candidate fails exact division")
    return result


# ---------------------------------------------------------------------------
# rewriting


@dataclass(frozen=True)
class RewrittenRelator:
    terms: tuple  # ordered (subscript, +1 or -1)

    def format(self) -> str:
        if not self.terms:
            return "<empty>"
        out = []
        for i, s in self.terms:
            out.append(f"x_{i}" if s > 0 else f"x_{i}^-1")
        return " ".join(out)


def rs_rewrite(relator) -> RewrittenRelator:
    """Rewrite a zero-t-exponent relator over {t, x} in the shifted
    kernel letters: scanning left to right with running t-exponent h,
    each x or x^-1 emits (h, +1) or (h, -1)."""
    w = Word.parse(relator) if isinstance(relator, str) else relator
    for name, _ in w.letters:
        if name not in ("t", "x"):
            raise RewriteError(f"unexpected letter {name!r}: relators use t and x only")
    total = sum(e for name, e in w.letters if name == "t")
    if total != 0:
        raise RewriteError(f"t-exponent sum is {total}, not 0")
    terms = []
    h = 0
    for name, e in w.letters:
        if name == "t":
            h += e
        else:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                terms.append((h, step))
    return RewrittenRelator(tuple(terms))


def abelianize(r: RewrittenRelator) -> LaurentPoly:
    return LaurentPoly(list(r.terms))


def alexander_polynomial(relators) -> LaurentPoly:
    """Normalized gcd of the abelianized rewrites of the relators."""
    polys = [abelianize(rs_rewrite(r)) for r in relators]
    return laurent_gcd(polys)


# ---------------------------------------------------------------------------
# finite generation and the sticking relation


def monic_both_ends(p: LaurentPoly) -> bool:
    if p.is_zero():
        raise LaurentError("zero polynomial has no end coefficients")
    return abs(p.coeffs[p.min_exp]) == 1 and abs(p.coeffs[p.max_exp]) == 1


def fg_kernel_obstruction(p: LaurentPoly) -> str:
    """NotFG when an end coefficient is not a unit; PossiblyFG otherwise."""
    return POSSIBLY_FG if monic_both_ends(p) else NOT_FG


@dataclass(frozen=True)
class StickingVerdict:
    contradiction: bool
    case: str
    detail: str


def sticking_contradiction(alpha: int, beta: int,
                           delta: LaurentPoly = None) -> StickingVerdict:
    """Resolve a chain that sticks with the relation x0^alpha x1^beta = e.

    The polynomial invariant of the pair must divide beta*t + alpha and
    be monic at both ends; with |beta| >= 2 the only such divisor is a
    unit, which contradicts a strictly ascending chain.
    """
    if alpha == 0 or beta == 0:
        raise LaurentError("degenerate relation: alpha and beta must be nonzero")
    if math.gcd(alpha, beta) != 1:
        raise LaurentError("alpha and beta must be coprime")
    constraint = LaurentPoly({1: beta, 0: alpha})
    if delta is not None:
        if delta.is_zero():
            raise LaurentError("zero invariant")
        if not divides(delta, constraint):
            raise LaurentError(
                f"invariant {delta.format()} does not divide {constraint.format()}")
        if not monic_both_ends(delta):
            raise LaurentError("invariant must be monic at both ends")
    if abs(beta) == 1:
        return StickingVerdict(
            False, "beta_unit",
            "leading coefficient is a unit, so the chain stabilizes at the first step")
    return StickingVerdict(
        True, "delta_unit_forced",
        f"every monic-both-ends divisor of {constraint.format()} is a unit, "
        "forcing first Betti number 0 against a strictly ascending chain")


# ---------------------------------------------------------------------------
# Betti bounds along the subgroup chain


def _rational_rank(rows) -> int:
    if not rows:
        return 0
    m = [[Fraction(c) for c in row] for row in rows]
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][col]
        for r in range(rank + 1, len(m)):
            if m[r][col] != 0:
                f = m[r][col] / inv
                for c in range(col, ncols):
                    m[r][c] -= f * m[rank][c]
        rank += 1
        if rank == len(m):
            break
    return rank


def betti_chain(relator_polys, depth: int) -> list:
    """Upper bounds b_0..b_depth on the first Betti numbers of the
    chain subgroups: i+1 generators minus the rank spanned by every
    shift of each relation that fits in the exponent window [0, i]."""
    if depth < 0:
        raise LaurentError("depth must be nonnegative")
    rels = []
    for p in relator_polys:
        if p is None or p.is_zero():
            continue
        q = p.normalized()
        rels.append([q.coeffs.get(e, 0) for e in range(q.max_exp + 1)])
    out = []
    for i in range(depth + 1):
        rows = []
        for coeffs in rels:
            span = len(coeffs) - 1
            for s in range(i - span + 1):
                row = [0] * (i + 1)
                for j, c in enumerate(coeffs):
                    row[s + j] = c
                rows.append(row)
        out.append((i + 1) - _rational_rank(rows))
    return out
