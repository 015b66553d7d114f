"""Spectral classification of integer matrices and polynomials.

An automorphism of Z^n either has every eigenvalue a root of unity (the
matrix is quasi-unipotent and the extension is virtually nilpotent) or
its spectral radius clears a degree-dependent gap above 1, giving
exponential growth.  Root-of-unity detection is exact via cyclotomic
trial division; the radius is numeric with a certified gap check.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

LOG_BASE = "e"  # base of the logarithm in the gap threshold

VIRTUALLY_NILPOTENT = "VirtuallyNilpotent"
EXPONENTIAL = "Exponential"


class SpectraError(Exception):
    pass


# ---------------------------------------------------------------------------
# integer polynomials

_TERM_RE = re.compile(r"([+-]?)(\d*)(t(?:\^(\d+))?)?$")


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients low-to-high, leading nonzero."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] == 0:
            raise SpectraError("leading coefficient must be nonzero")

    @classmethod
    def of(cls, low_to_high) -> "IntPoly":
        xs = list(low_to_high)
        while len(xs) > 1 and xs[-1] == 0:
            xs.pop()
        return cls(tuple(xs))

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        s = text.replace(" ", "").replace("*", "")
        if not s:
            raise SpectraError("empty polynomial")
        tokens = re.findall(r"[+-]?[^+-]+", s)
        if "".join(tokens) != s:
            raise SpectraError(f"cannot parse polynomial {text!r}")
        coeffs: dict = {}
        for tok in tokens:
            m = _TERM_RE.match(tok)
            if not m or (not m.group(2) and not m.group(3)):
                raise SpectraError(f"bad term {tok!r} in {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(3) is None:
                e = 0
            elif m.group(4) is None:
                e = 1
            else:
                e = int(m.group(4))
            coeffs[e] = coeffs.get(e, 0) + sign * c
        deg = max((e for e, c in coeffs.items() if c), default=0)
        return cls.of([coeffs.get(e, 0) for e in range(deg + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_matrix(self, m):
        n = len(m)
        acc = mat_scale(mat_identity(n), self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = mat_add(mat_mul(acc, m), mat_scale(mat_identity(n), c))
        return acc

    def format(self) -> str:
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
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
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return f"IntPoly({self.format()})"


def _poly_divmod(a, b):
    """Greedy integer division of coefficient lists; b leading must be
    +-1 for exactness to be meaningful."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        if a[-1] % b[-1]:
            break
        f = a[-1] // b[-1]
        off = len(a) - len(b)
        q[off] = f
        for j, c in enumerate(b):
            a[off + j] -= f * c
    while a and a[-1] == 0:
        a.pop()
    return q, a


# ---------------------------------------------------------------------------
# integer matrices

def mat_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_scale(m, c):
    return [[x * c for x in row] for row in m]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for p in range(k):
            c = ai[p]
            if c:
                bp = b[p]
                for j in range(m):
                    oi[j] += c * bp[j]
    return out


def mat_vec(m, v):
    return tuple(sum(c * x for c, x in zip(row, v)) for row in m)


def mat_trace(m):
    return sum(m[i][i] for i in range(len(m)))


def mat_det(m) -> int:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / inv
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    assert det.denominator == 1
    return int(det)


def mat_pow(m, k: int):
    n = len(m)
    if k < 0:
        return mat_pow(mat_inv_unimodular(m), -k)
    acc = mat_identity(n)
    base = [row[:] for row in m]
    while k:
        if k & 1:
            acc = mat_mul(acc, base)
        base = mat_mul(base, base)
        k >>= 1
    return acc


def _minor(m, i, j):
    return [[m[r][c] for c in range(len(m)) if c != j]
            for r in range(len(m)) if r != i]


def mat_inv_unimodular(m):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(m)
    d = mat_det(m)
    if abs(d) != 1:
        raise SpectraError(f"matrix determinant {d} is not a unit")
    if n == 1:
        return [[d]]
    adj = [[(-1) ** (i + j) * mat_det(_minor(m, j, i)) for j in range(n)]
           for i in range(n)]
    return mat_scale(adj, d)


def matrix_rank(rows) -> int:
    rows = [row for row in rows if any(row)]
    if not rows:
        return 0
    a = [[Fraction(x) for x in row] for row in rows]
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = a[rank][col]
        for r in range(rank + 1, len(a)):
            if a[r][col] != 0:
                f = a[r][col] / inv
                for c in range(col, ncols):
                    a[r][c] -= f * a[rank][c]
        rank += 1
        if rank == len(a):
            break
    return rank


def _ext_gcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def hermite_rows(rows):
    """Row-style Hermite form of the lattice spanned by integer rows:
    unique basis with positive pivots and reduced entries above them."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    cols = len(mat[0])
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] == 0:
                continue
            if pivot is None:
                pivot = i
                continue
            a, b = mat[pivot][c], mat[i][c]
            g, u, v = _ext_gcd(a, b)
            row_p = [u * mat[pivot][k] + v * mat[i][k] for k in range(cols)]
            row_i = [(-b // g) * mat[pivot][k] + (a // g) * mat[i][k]
                     for k in range(cols)]
            mat[pivot], mat[i] = row_p, row_i
        if pivot is None or mat[pivot][c] == 0:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        if mat[r][c] < 0:
            mat[r] = [-x for x in mat[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [mat[i][k] - q * mat[r][k] for k in range(cols)]
        r += 1
        if r == len(mat):
            break
    return [row for row in mat[:r] if any(row)]


# ---------------------------------------------------------------------------
# characteristic polynomial and root-of-unity test

def char_poly(m) -> IntPoly:
    """Monic characteristic polynomial det(t*I - M), exact integers.

    Uses the trace-of-powers recurrence whose divisions are exact."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise SpectraError("matrix must be square")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    nmat = mat_identity(n)
    for k in range(1, n + 1):
        mk = mat_mul(m, nmat)
        t = mat_trace(mk)
        # the division is exact at every step
        assert t % k == 0
        c = -t // k
        coeffs[n - k] = c
        nmat = mat_add(mk, mat_scale(mat_identity(n), c))
    return IntPoly(tuple(coeffs))


@lru_cache(maxsize=None)
def euler_phi(k: int) -> int:
    out = k
    n = k
    p = 2
    while p * p <= n:
        if n % p == 0:
            out -= out // p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out -= out // n
    return out


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> tuple:
    """Coefficients (low-to-high) of the k-th cyclotomic polynomial."""
    num = [0] * (k + 1)
    num[0], num[k] = -1, 1
    for d in range(1, k):
        if k % d == 0:
            q, rem = _poly_divmod(num, list(cyclotomic(d)))
            assert not rem
            num = q
    return tuple(num)


def _strip_cyclotomic(coeffs):
    """Divide out every cyclotomic factor; returns (rest, stripped_any)."""
    xs = list(coeffs)
    d0 = len(xs) - 1
    stripped = False
    bound = 2 * d0 * d0 + 1
    k = 1
    while k <= bound and len(xs) > 1:
        if euler_phi(k) <= len(xs) - 1:
            q, rem = _poly_divmod(xs, list(cyclotomic(k)))
            if not rem and q:
                xs = q
                stripped = True
                continue
        k += 1
    return xs, stripped


def smallest_cyclotomic_order(p: IntPoly) -> int:
    """Least k whose k-th cyclotomic polynomial divides p, or None.

    A hit at k means p has a primitive k-th root of unity among its
    roots, so the matrix it came from has a fixed vector at power k."""
    d = p.degree
    if d < 1:
        return None
    for k in range(1, 2 * d * d + 2):
        if euler_phi(k) > d:
            continue
        _, rem = _poly_divmod(list(p.coeffs), list(cyclotomic(k)))
        if not rem:
            return k
    return None


def all_roots_of_unity(p: IntPoly) -> bool:
    """Exact Kronecker-style test by cyclotomic trial division."""
    if not p.is_monic():
        raise SpectraError("root-of-unity test requires a monic polynomial")
    if p.degree == 0:
        return True
    if p.coeffs[0] == 0:
        return False  # zero is a root
    rest, _ = _strip_cyclotomic(p.coeffs)
    return rest == [1]


# ---------------------------------------------------------------------------
# spectral radius

def max_root_modulus(coeffs, tol: float = 1e-9) -> float:
    """Numeric largest root modulus of a coefficient list (low-to-high)."""
    xs = list(coeffs)
    while xs and xs[-1] == 0:
        xs.pop()
    if len(xs) <= 1:
        return 0.0
    roots = np.roots([float(c) for c in reversed(xs)])
    best = max(roots, key=abs)
    # guarded Newton polish on the extremal root
    z = complex(best)
    dcoeffs = [i * c for i, c in enumerate(xs)][1:]

    def ev(cs, x):
        acc = 0j
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    for _ in range(100):
        dz = ev(dcoeffs, z)
        if abs(dz) < 1e-8:
            break
        step = ev(xs, z) / dz
        if abs(step) > 1e-3 * (1.0 + abs(z)):
            break
        z -= step
        if abs(step) < 1e-15:
            break
    r = abs(z) if abs(ev(xs, z)) <= abs(ev(xs, complex(best))) else abs(best)
    lead = abs(xs[-1])
    cauchy = 1.0 + max(abs(c) for c in xs) / lead
    if r > cauchy + tol:
        raise SpectraError("radius estimate exceeds the Cauchy bound")
    return float(r)


def spectral_radius(p: IntPoly, tol: float = 1e-9) -> float:
    """Largest root modulus of a monic polynomial.

    Cyclotomic factors are removed exactly first, so polynomials whose
    roots all lie on the unit circle report exactly 1.0."""
    if not p.is_monic():
        raise SpectraError("spectral radius requires a monic polynomial")
    if p.degree < 1:
        raise SpectraError("degree must be at least 1")
    rest, stripped = _strip_cyclotomic(p.coeffs)
    if len(rest) == 1:
        return 1.0
    r = max_root_modulus(rest, tol)
    if stripped:
        r = max(r, 1.0)
    return r


def mahler_gap_threshold(d: int) -> float:
    """1 + 1/(30 d^2 ln(6d)); natural logarithm (see LOG_BASE)."""
    if d < 1:
        raise SpectraError("degree must be at least 1")
    return 1.0 + 1.0 / (30.0 * d * d * math.log(6.0 * d))


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class SpectralClassification:
    kind: str  # VIRTUALLY_NILPOTENT or EXPONENTIAL
    char: IntPoly
    m: float = None
    threshold: float = None
    log_base: str = LOG_BASE


def classify_abelian_by_cyclic(m) -> SpectralClassification:
    """Classify the extension of Z^n by an integer matrix action."""
    p = char_poly(m)
    n = p.degree
    det = (-1) ** n * p.coeffs[0]
    if abs(det) != 1:
        raise SpectraError(f"determinant {det} is not a unit")
    thr = mahler_gap_threshold(n)
    if all_roots_of_unity(p):
        return SpectralClassification(VIRTUALLY_NILPOTENT, p, threshold=thr)
    rad = spectral_radius(p)
    if rad < thr:
        raise SpectraError(
            "radius below the degree gap for a non-cyclotomic polynomial")
    return SpectralClassification(EXPONENTIAL, p, m=rad, threshold=thr)


def fixed_vector_of_power(m, r: int):
    """Primitive integer vector v with M^r v = v, or None."""
    if r < 1:
        raise SpectraError("power must be at least 1")
    n = len(m)
    a = mat_sub(mat_pow(m, r), mat_identity(n))
    rows = [[Fraction(x) for x in row] for row in a]
    ncols = n
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows))
                      if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col]
        rows[rank] = [x / inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    j0 = free[0]
    x = [Fraction(0)] * ncols
    x[j0] = Fraction(1)
    for prow, pcol in enumerate(pivots):
        x[pcol] = -rows[prow][j0]
    lcm = 1
    for f in x:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    v = [int(f * lcm) for f in x]
    g = 0
    for c in v:
        g = math.gcd(g, abs(c))
    v = [c // g for c in v]
    first = next(c for c in v if c)
    if first < 0:
        v = [-c for c in v]
    v = tuple(v)
    if mat_vec(mat_pow(m, r), v) != v:
        raise AssertionError("fixed-vector witness failed re-verification")
    return v
