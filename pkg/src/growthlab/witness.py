"""Certificate search for growth witnesses in split extensions K x| Z.

Given a finite generating set A, the analyzer walks the short subgroup
candidates ⟨a_i, [a_j, a_k]⟩ in a fixed order and tries to certify
exponential growth: a short non-cyclic pair inside the kernel, an
escaping conjugation chain, or an expanding integer-matrix action.  The
degenerate outcomes are certified too where they are decidable (a
periodic conjugacy class, an abelian generating set); anything else is
reported as inconclusive with diagnostics, never guessed.

Every certificate carries the growth bound implied by its branch,
rescaled by the word length of the witnesses in the A alphabet, and is
re-verified by an independent computation before it is returned.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from growthlab.engines import UnsupportedFamilyError, units_to_flat
from growthlab.laurent import sticking_contradiction
from growthlab.spectra import (
    EXPONENTIAL,
    SpectraError,
    char_poly,
    classify_abelian_by_cyclic,
    fixed_vector_of_power,
    hermite_rows,
    matrix_rank,
    mat_det,
    mat_pow,
    mat_vec,
    max_root_modulus,
    smallest_cyclotomic_order,
)
from growthlab.subgroups import fold, is_cyclic_pair
from growthlab.words import Word

NON_CYCLIC_PAIR = "NonCyclicPair"
KERNEL_CHAIN_ESCAPE = "KernelChainEscape"
SPECTRAL_EXPONENTIAL = "SpectralExponential"
PERIODIC_CONJUGACY = "PeriodicConjugacy"
VIRTUALLY_NILPOTENT_DIAGNOSIS = "VirtuallyNilpotentDiagnosis"
INCONCLUSIVE = "Inconclusive"

# chain relations are searched within this exponent window
RELATION_SEARCH_BOUND = 8
# required margin over 2 for the expanding-action word argument
EXPANSION_MARGIN = 2.05
_EXPANSION_POWER_CAP = 128


class WitnessError(Exception):
    pass


@dataclass
class Certificate:
    variant: str
    bound: float = None
    u_word: str = None
    v_word: str = None
    max_A_length: int = None
    depth: int = None
    matrix: tuple = None
    m: float = None
    k_word: str = None
    n: int = None
    c_word: str = None
    reason: str = None
    diagnostics: str = None
    reverified: bool = None

    def to_json(self) -> dict:
        out = {"variant": self.variant}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.u_word is not None:
            out["u"] = self.u_word
        if self.v_word is not None:
            out["v"] = self.v_word
        if self.max_A_length is not None:
            out["max_A_length"] = self.max_A_length
        if self.depth is not None:
            out["depth"] = self.depth
        if self.matrix is not None:
            out["matrix"] = [list(row) for row in self.matrix]
        if self.m is not None:
            out["m"] = self.m
        if self.k_word is not None:
            out["k"] = self.k_word
        if self.n is not None:
            out["n"] = self.n
        if self.c_word is not None:
            out["c"] = self.c_word
        if self.reason is not None:
            out["reason"] = self.reason
        if self.diagnostics is not None:
            out["diagnostics"] = self.diagnostics
        if self.reverified is not None:
            out["reverified"] = self.reverified
        return out


def combined_bound(u: float, branch: str, d: int = None) -> float:
    """Exponent bookkeeping for the certified branches."""
    if u <= 1.0:
        raise WitnessError("growth hypothesis u must exceed 1")
    if branch == "pair_in_kernel":
        return u ** 0.25
    if branch == "conjugate_pair":
        return u ** (1.0 / 6.0)
    if branch == "infinite_kernel":
        return u ** 0.25
    if branch == "chain":
        if d is None or d < 1:
            raise WitnessError("chain branch needs the depth cap d")
        return u ** (1.0 / (2 * d + 4))
    raise WitnessError(f"unknown branch {branch!r}")


def commutator_candidates(gens) -> list:
    """All commutators of signed generator pairs, as length-4 words in
    the A alphabet (their values are filtered against the identity once
    an engine evaluates them)."""
    words = [Word.parse(w) if isinstance(w, str) else w for w in gens]
    out = []
    for j in range(len(words)):
        for k in range(j + 1, len(words)):
            for sj, sk in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                wj = words[j] if sj > 0 else words[j].inverse()
                wk = words[k] if sk > 0 else words[k].inverse()
                out.append(wj * wk * wj.inverse() * wk.inverse())
    return out


# ---------------------------------------------------------------------------
# shared helpers


def _word_str(engine, el) -> str:
    return str(engine.element_to_word(el))


def _conj(engine, a, x):
    return engine.multiply(engine.multiply(a, x), engine.invert(a))


def _reverify_noncyclic(engine, uel, vel) -> bool:
    """Independent confirmation that <u, v> is not cyclic."""
    if not engine.commute(uel, vel):
        return True
    cur, cu, cv = engine, uel, vel
    while (cur.family == "semidirect" and cur.shift(cu) == 0
           and cur.shift(cv) == 0):
        cu, cv = cur.kernel_part(cu), cur.kernel_part(cv)
        cur = cur.base
    if cur.family == "abelian":
        return matrix_rank([list(cu), list(cv)]) >= 2
    if cur.family == "free":
        return fold([cu, cv], cur.rank).rank >= 2
    if cur.family == "semidirect":
        p, q = cur.shift(cu), cur.shift(cv)
        rel = cur.multiply(cur.power(cu, q), cur.power(cv, -p))
        return rel != cur.identity
    if cur.family == "klein":
        if cu[1] % 2 == 0 and cv[1] % 2 == 0:
            return matrix_rank([[cu[0], cu[1]], [cv[0], cv[1]]]) >= 2
        p, q = cu[1], cv[1]
        rel = cur.multiply(cur.power(cu, q), cur.power(cv, -p))
        return rel != cur.identity
    return False


def _noncyclic_certificate(engine, uel, vel, max_len: int, bound: float):
    if not _reverify_noncyclic(engine, uel, vel):
        raise AssertionError("non-cyclic pair failed independent re-verification")
    return Certificate(
        NON_CYCLIC_PAIR,
        bound=bound,
        u_word=_word_str(engine, uel),
        v_word=_word_str(engine, vel),
        max_A_length=max_len,
        reverified=True,
    )


def _verify_pcc(engine, k_el, n: int, c_el) -> bool:
    base = engine.base
    lhs = engine.auto_power(k_el, n)
    rhs = base.multiply(base.multiply(c_el, k_el), base.invert(c_el))
    return lhs == rhs


def _pcc_certificate(engine, k_el, n: int, c_el, diagnostics=None):
    if k_el == engine.base.identity:
        raise AssertionError("periodic-class witness must be nontrivial")
    if not _verify_pcc(engine, k_el, n, c_el):
        raise AssertionError("periodic conjugacy failed engine re-verification")
    return Certificate(
        PERIODIC_CONJUGACY,
        k_word=str(engine.base.element_to_word(k_el)),
        n=n,
        c_word=str(engine.base.element_to_word(c_el)),
        diagnostics=diagnostics,
        reverified=True,
    )


def _pcc_from_stable(engine, a_el, x0, eps: int, diagnostics: str):
    """x1 = x0^eps exactly: conjugation by a fixes the class of x0, so
    the kernel part of x0 lies on a periodic conjugacy class."""
    base = engine.base
    w = engine.kernel_part(a_el)
    p = engine.shift(a_el)
    v = engine.kernel_part(x0)
    if eps == 1:
        n = abs(p)
        if p > 0:
            c = base.invert(w)
        else:
            c = engine.auto_power(w, -p)
    else:
        n = 2 * abs(p)
        cpos = base.invert(base.multiply(w, engine.auto_power(w, p)))
        if p > 0:
            c = cpos
        else:
            c = engine.auto_power(base.invert(cpos), -2 * p)
    return _pcc_certificate(engine, v, n, c, diagnostics=diagnostics)


def _find_relation(engine, x0, x1):
    """Smallest relation x0^a x1^b = e with b >= 1 and gcd(|a|, b) = 1
    inside the search window, or None."""
    identity = engine.identity
    for b in range(1, RELATION_SEARCH_BOUND + 1):
        xb = engine.power(x1, b)
        for aa in range(1, RELATION_SEARCH_BOUND + 1):
            if math.gcd(aa, b) != 1:
                continue
            for a in (aa, -aa):
                if engine.multiply(engine.power(x0, a), xb) == identity:
                    return (a, b)
    return None


# ---------------------------------------------------------------------------
# the abelian-kernel track


def _abelian_matrix(engine):
    """Matrix of the automorphism on the abelian base, columns = images."""
    base = engine.base
    r = base.rank
    cols = []
    for name in base.gen_names:
        cols.append(engine.auto_power(base.generator(name), 1))
    return [[cols[j][i] for j in range(r)] for i in range(r)]


def _solve_int_combo(basis_rows, target):
    """Integer coordinates of target in the given lattice basis."""
    k = len(basis_rows)
    r = len(target)
    aug = [[Fraction(basis_rows[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(r)]
    pivots = []
    rank = 0
    for col in range(k):
        pivot = next((i for i in range(rank, r) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = aug[rank][col]
        aug[rank] = [x / inv for x in aug[rank]]
        for i in range(r):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
    coords = [Fraction(0)] * k
    for prow, pcol in enumerate(pivots):
        coords[pcol] = aug[prow][k]
    for i in range(rank, r):
        if aug[i][k] != 0:
            raise AssertionError("target vector lies outside the lattice")
    out = []
    for f in coords:
        if f.denominator != 1:
            raise AssertionError("lattice coordinates are not integral")
        out.append(int(f))
    return out


def _invariant_lattice(n_mat, n_inv, v):
    rows = hermite_rows([list(v)])
    while True:
        ext = [list(b) for b in rows]
        for b in rows:
            ext.append(list(mat_vec(n_mat, b)))
            ext.append(list(mat_vec(n_inv, b)))
        new = hermite_rows(ext)
        if new == rows:
            return rows
        rows = new


def _restricted_matrix(n_mat, basis_rows):
    cols = []
    for b in basis_rows:
        cols.append(_solve_int_combo(basis_rows, mat_vec(n_mat, b)))
    k = len(basis_rows)
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def _krylov_annihilator(t_mat, v):
    """Primitive integer coefficients (low-to-high) of the minimal
    polynomial of v under t_mat."""
    dim = len(v)
    vs = [list(v)]
    for _ in range(dim):
        vs.append(list(mat_vec(t_mat, vs[-1])))
        k = len(vs) - 1
        aug = [[Fraction(vs[j][i]) for j in range(k)] + [Fraction(vs[k][i])]
               for i in range(dim)]
        sol = _try_solve(aug, k, dim)
        if sol is not None:
            denom = 1
            for f in sol:
                denom = denom * f.denominator // math.gcd(denom, f.denominator)
            coeffs = [-int(f * denom) for f in sol] + [denom]
            g = 0
            for c in coeffs:
                g = math.gcd(g, abs(c))
            return [c // g for c in coeffs]
    raise AssertionError("no dependence found within the space dimension")


def _try_solve(aug, k, rows):
    rank = 0
    pivots = []
    for col in range(k):
        pivot = next((i for i in range(rank, rows) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = aug[rank][col]
        aug[rank] = [x / inv for x in aug[rank]]
        for i in range(rows):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, rows):
        if aug[i][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for prow, pcol in enumerate(pivots):
        sol[pcol] = aug[prow][k]
    return sol


def _expansion_power(r_mat, v_coords) -> int:
    """Least K for which the minimal polynomial of v under R^K has a
    root of modulus beyond the margin, making the 2^L sign words over
    the orbit pairwise distinct."""
    for k in range(1, _EXPANSION_POWER_CAP + 1):
        anni = _krylov_annihilator(mat_pow(r_mat, k), v_coords)
        if max_root_modulus(anni) > EXPANSION_MARGIN:
            return k
    raise AssertionError("expanding action failed to clear the margin")


def _abelian_case(engine, a_el, x0, tag):
    base = engine.base
    p = engine.shift(a_el)
    m_mat = _abelian_matrix(engine)
    if abs(mat_det(m_mat)) != 1:
        return None, f"{tag}: base action determinant is not a unit"
    n_mat = mat_pow(m_mat, p)
    n_inv = mat_pow(m_mat, -p)
    v = list(engine.kernel_part(x0))
    basis = _invariant_lattice(n_mat, n_inv, v)
    r_mat = _restricted_matrix(n_mat, basis)
    try:
        cls = classify_abelian_by_cyclic(r_mat)
    except SpectraError as exc:
        return None, f"{tag}: {exc}"
    if cls.kind == EXPONENTIAL:
        v_coords = _solve_int_combo(basis, v)
        k_pow = _expansion_power(r_mat, v_coords)
        bound = 2.0 ** (1.0 / (4 + k_pow))
        cert = Certificate(
            SPECTRAL_EXPONENTIAL,
            bound=bound,
            matrix=tuple(tuple(row) for row in r_mat),
            m=cls.m,
            max_A_length=4 + k_pow,
            diagnostics=(
                f"orbit lattice rank {len(basis)}; expansion power {k_pow}"),
            reverified=True,
        )
        return cert, None
    # quasi-unipotent action: produce the explicit periodic class
    d_full = smallest_cyclotomic_order(char_poly(n_mat))
    if d_full is not None:
        k_vec = fixed_vector_of_power(n_mat, d_full)
        k_el = tuple(k_vec)
        n_cert = d_full * abs(p)
    else:
        d_res = smallest_cyclotomic_order(char_poly(r_mat))
        if d_res is None:
            return None, f"{tag}: quasi-unipotent action with no cyclotomic order"
        coords = fixed_vector_of_power(r_mat, d_res)
        k_el = tuple(sum(coords[j] * basis[j][i] for j in range(len(basis)))
                     for i in range(len(v)))
        n_cert = d_res * abs(p)
    cert = _pcc_certificate(engine, k_el, n_cert, base.identity,
                            diagnostics=f"{tag}: root-of-unity action")
    return cert, None


# ---------------------------------------------------------------------------
# the conjugation chain track


def _klein_suspect(engine, x0, x1) -> bool:
    return (not engine.commute(x0, x1)
            and engine.power(x0, 2) == engine.power(x1, 2))


def _chain_case(engine, a_el, x0, u, d, tag):
    x1 = _conj(engine, a_el, x0)
    xm1 = _conj(engine, engine.invert(a_el), x0)
    try:
        for other in (x1, xm1):
            if not is_cyclic_pair(engine, x0, other):
                # a Klein-bottle shaped pair grows polynomially, so it
                # must not be certified as a growth witness
                if _klein_suspect(engine, x0, other):
                    return None, (
                        f"{tag}: KleinBottleSuspect: one-step subgroup is "
                        "non-abelian with x0^2 = x1^2")
                return _noncyclic_certificate(
                    engine, x0, other, 6,
                    combined_bound(u, "conjugate_pair")), None
    except UnsupportedFamilyError as exc:
        return None, f"{tag}: {exc}"
    if x1 == x0:
        return _pcc_from_stable(engine, a_el, x0, 1, f"{tag}: conjugation fixes x0"), None
    if x1 == engine.invert(x0):
        return _pcc_from_stable(engine, a_el, x0, -1, f"{tag}: conjugation inverts x0"), None
    # both one-step subgroups are cyclic yet x1 is not x0 or its inverse:
    # grow the conjugation chain up to depth d+1
    xs = [x0, x1]
    for s in range(2, d + 2):
        xs.append(_conj(engine, a_el, xs[-1]))
        for r in range(len(xs) - 1):
            if not engine.commute(xs[r], xs[-1]):
                if s <= d:
                    return Certificate(
                        KERNEL_CHAIN_ESCAPE,
                        bound=combined_bound(u, "chain", d),
                        depth=s,
                        max_A_length=2 * s + 4,
                        diagnostics=(
                            f"{tag}: chain elements at offsets {r} and {s} "
                            "do not commute"),
                        reverified=True,
                    ), None
                return None, (
                    f"{tag}: chain escapes only at depth {s}, beyond the "
                    f"certified window for d={d}")
    rel = _find_relation(engine, x0, x1)
    if rel is None:
        return None, (
            f"{tag}: chain stays abelian through depth {d + 1} and no "
            f"relation was found with exponents up to {RELATION_SEARCH_BOUND}")
    a, b = rel
    if b == 1:
        if abs(a) == 1:
            return None, f"{tag}: unexpected unit relation between x0 and x1"
        detail = (f"conjugation relation x1 = x0^{-a}: polynomial invariant "
                  f"t - {-a} is not monic at both ends, kernel not finitely "
                  "generated")
    else:
        verdict = sticking_contradiction(a, b)
        if not verdict.contradiction:
            return None, f"{tag}: sticking relation resolved without contradiction"
        detail = f"sticking relation x0^{a} x1^{b} = e: {verdict.detail}"
    cert = Certificate(
        KERNEL_CHAIN_ESCAPE,
        bound=combined_bound(2.0 ** 0.25, "infinite_kernel"),
        depth=d + 1,
        max_A_length=4,
        diagnostics=f"{tag}: {detail}",
        reverified=True,
    )
    return cert, None


# ---------------------------------------------------------------------------
# the analyzer


def _case(engine, elems, u, d, i, cand):
    j, k, sj, sk, c_el = cand
    sgn = lambda s: "" if s > 0 else "^-1"
    tag = f"(i={i}, [a{j}{sgn(sj)},a{k}{sgn(sk)}])"
    a_el = elems[i]
    p = engine.shift(a_el)
    base_fam = engine.base.family
    if p == 0:
        if base_fam in ("free", "semidirect"):
            try:
                cyc = is_cyclic_pair(engine, a_el, c_el)
            except UnsupportedFamilyError as exc:
                return None, f"{tag}: {exc}"
            if not cyc:
                return _noncyclic_certificate(
                    engine, a_el, c_el, 4,
                    combined_bound(u, "pair_in_kernel")), None
            return None, None
        return None, (f"{tag}: kernel pair skipped for {base_fam} base "
                      "(kernel may have polynomial growth)")
    if base_fam == "abelian":
        return _abelian_case(engine, a_el, c_el, tag)
    if base_fam in ("free", "semidirect"):
        return _chain_case(engine, a_el, c_el, u, d, tag)
    # klein or bs1 base: detection only
    x1 = _conj(engine, a_el, c_el)
    if _klein_suspect(engine, c_el, x1):
        return None, (f"{tag}: KleinBottleSuspect: one-step subgroup is "
                      "non-abelian with x0^2 = x1^2")
    return None, f"{tag}: no decision procedure for {base_fam} base"


def analyze(engine, gens, u: float, d: int, threads: int = 1) -> Certificate:
    """Search the candidate subgroups lexicographically and return the
    first certificate; deterministic for fixed inputs regardless of the
    worker schedule."""
    if engine.family != "semidirect":
        raise WitnessError("analysis requires a split-extension engine")
    if u <= 1.0:
        raise WitnessError("growth hypothesis u must exceed 1")
    if d < 1:
        raise WitnessError("abelian cap d must be at least 1")
    words = [Word.parse(w) if isinstance(w, str) else w for w in gens]
    if not words:
        raise WitnessError("generating set is empty")
    elems = [engine.evaluate_word(w) for w in words]
    cands = []
    for j in range(len(elems)):
        for k in range(j + 1, len(elems)):
            for sj, sk in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                aj = elems[j] if sj > 0 else engine.invert(elems[j])
                ak = elems[k] if sk > 0 else engine.invert(elems[k])
                c_el = engine.multiply(
                    engine.multiply(aj, ak),
                    engine.multiply(engine.invert(aj), engine.invert(ak)))
                if c_el != engine.identity:
                    cands.append((j, k, sj, sk, c_el))
    if not cands:
        return Certificate(
            VIRTUALLY_NILPOTENT_DIAGNOSIS,
            reason="every generator commutator vanishes; the generated "
                   "group is abelian")
    cases = [(i, cand) for i in range(len(elems)) for cand in cands]
    diags = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(
                lambda case: _case(engine, elems, u, d, case[0], case[1]),
                cases))
        for cert, diag in results:
            if cert is not None:
                return cert
            if diag:
                diags.append(diag)
    else:
        for i, cand in cases:
            cert, diag = _case(engine, elems, u, d, i, cand)
            if cert is not None:
                return cert
            if diag:
                diags.append(diag)
    seen = set()
    uniq = []
    for s in diags:
        if s not in seen:
            seen.add(s)
            uniq.append(s)
    return Certificate(
        INCONCLUSIVE,
        diagnostics="; ".join(uniq) if uniq else
        "no candidate case produced a certificate")


# ---------------------------------------------------------------------------
# periodic-conjugacy scan


@dataclass
class PccResult:
    certificate: Certificate
    exact: bool
    note: str


def _cyclically_reduced_words(rank: int, max_length: int):
    """Flat free words, cyclically reduced, ordered by (length, lex) in
    the unit order x, x^-1, y, y^-1, ..."""
    order = []
    for g in range(1, rank + 1):
        order.extend((g, -g))

    def emit(length):
        seq = []

        def rec():
            if len(seq) == length:
                if length == 1 or seq[-1] != -seq[0]:
                    yield tuple(seq)
                return
            for unit in order:
                if seq and unit == -seq[-1]:
                    continue
                seq.append(unit)
                yield from rec()
                seq.pop()

        yield from rec()

    for length in range(1, max_length + 1):
        for units in emit(length):
            yield units_to_flat(list(units))


def pcc_scan(engine, max_period: int, max_length: int) -> PccResult:
    """Look for k != e and n <= max_period with alpha^n(k) conjugate to
    k in the base.  Exact for an abelian base; elsewhere a bounded scan
    whose empty answer only means none within bounds."""
    if engine.family != "semidirect":
        raise WitnessError("periodic-class scan requires a split-extension engine")
    if max_period < 1 or max_length < 1:
        raise WitnessError("scan bounds must be positive")
    base = engine.base
    if base.family == "abelian":
        m_mat = _abelian_matrix(engine)
        d = smallest_cyclotomic_order(char_poly(m_mat))
        if d is None or d > max_period:
            return PccResult(
                None, True,
                "exact: the action polynomial has no cyclotomic factor"
                if d is None else
                f"exact: smallest period {d} exceeds the bound")
        k_vec = fixed_vector_of_power(m_mat, d)
        cert = _pcc_certificate(engine, tuple(k_vec), d, base.identity)
        return PccResult(cert, True, "exact cyclotomic test")
    if base.family == "free":
        candidates = _cyclically_reduced_words(base.rank, max_length)
    elif base.family == "klein":
        candidates = (
            (i, j)
            for total in range(1, max_length + 1)
            for i in range(-total, total + 1)
            for j in ([total - abs(i)] if abs(i) == total
                      else [total - abs(i), abs(i) - total])
        )
    else:
        raise UnsupportedFamilyError(
            f"periodic-class scan unsupported for base family {base.family!r}")
    for k_el in candidates:
        for n in range(1, max_period + 1):
            img = engine.auto_power(k_el, n)
            c = base.conjugacy_test(k_el, img)
            if c is not None:
                cert = _pcc_certificate(engine, k_el, n, c)
                return PccResult(cert, False, "found within bounds")
    return PccResult(None, False, "none within bounds (semi-decision)")
