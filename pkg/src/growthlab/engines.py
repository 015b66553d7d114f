"""Group engines with exact normal forms.

Families:

* free rank r: elements are reduced words, stored as flat tuples
  (g0, e0, g1, e1, ...) of 0-based generator indices and nonzero
  exponents;
* abelian rank r: integer vectors;
* klein: pairs (i, j) meaning a^i t^j in <a, t | t a t^-1 = a^-1>;
* bs1 with multiplier m, |m| >= 2: triples (num, e, shift) meaning the
  affine pair (num / m^e, shift) with e = 0 or m not dividing num, in
  <a, t | t a t^-1 = a^m>;
* semidirect K x| Z for an automorphism alpha of the base K given by
  generator images in both directions: pairs (base element, shift) with
  (w1, k1)(w2, k2) = (w1 * alpha^k1(w2), k1 + k2).

Normal forms are canonical, so plain tuple equality is group equality,
and canonical_key produces an injective bytes key: one family tag byte
followed by a decimal payload (semidirect keys embed the base key, a
``|`` separator and the shift).
"""

from __future__ import annotations

import json
import threading

from growthlab import wordops
from growthlab.words import Word, WordSyntaxError

TAG_FREE = b"\x01"
TAG_ABELIAN = b"\x02"
TAG_KLEIN = b"\x03"
TAG_BS1 = b"\x04"
TAG_SEMIDIRECT = b"\x05"


class GroupSpecError(ValueError):
    """Malformed group description or invalid automorphism."""


class UnknownGeneratorError(KeyError):
    pass


class UnsupportedFamilyError(NotImplementedError):
    """The requested operation is not decidable/implemented for this family."""


# ---------------------------------------------------------------------------
# free-word helpers shared with the subgroup machinery


def flat_to_units(flat: tuple) -> list:
    """Expand a flat word into signed 1-based unit letters."""
    units = []
    for i in range(0, len(flat), 2):
        g = flat[i] + 1
        e = flat[i + 1]
        step = g if e > 0 else -g
        units.extend([step] * abs(e))
    return units


def units_to_flat(units) -> tuple:
    return wordops.normalize_pairs((abs(u) - 1, 1 if u > 0 else -1) for u in units)


def cyclic_reduce_units(units):
    """Split units as p * core * p^-1; returns (p_units, core_units)."""
    lo, hi = 0, len(units)
    while hi - lo >= 2 and units[lo] == -units[hi - 1]:
        lo += 1
        hi -= 1
    return units[:lo], units[lo:hi]


# ---------------------------------------------------------------------------


def _free_names(rank: int):
    if rank <= 3:
        return tuple("xyz"[:rank])
    return tuple(f"x{i + 1}" for i in range(rank))


class _EngineBase:
    family = ""

    def power(self, a, k):
        """a**k by binary powering."""
        if k < 0:
            a = self.invert(a)
            k = -k
        result = self.identity
        base = a
        while k:
            if k & 1:
                result = self.multiply(result, base)
            k >>= 1
            if k:
                base = self.multiply(base, base)
        return result

    def commute(self, a, b) -> bool:
        return self.multiply(a, b) == self.multiply(b, a)

    def evaluate_word(self, word: Word):
        out = self.identity
        for name, exp in word.letters:
            out = self.multiply(out, self.power(self.generator(name), exp))
        return out

    def generator(self, name: str):
        raise NotImplementedError

    def describe(self, el) -> str:
        return str(self.element_to_word(el))

    def spec_id(self) -> str:
        return json.dumps(self.spec_dict(), sort_keys=True, separators=(",", ":"))

    def conjugacy_test(self, a, b):
        raise UnsupportedFamilyError(
            f"conjugacy test is not supported for family {self.family!r}"
        )


class FreeEngine(_EngineBase):
    family = "free"

    def __init__(self, rank: int):
        if rank < 1:
            raise GroupSpecError("free rank must be >= 1")
        self.rank = rank
        self.gen_names = _free_names(rank)
        self._index = {n: i for i, n in enumerate(self.gen_names)}
        self.identity: tuple = ()

    def generator(self, name: str) -> tuple:
        try:
            return (self._index[name], 1)
        except KeyError:
            raise UnknownGeneratorError(name) from None

    def multiply(self, a, b):
        return wordops.concat_reduce(a, b)

    def invert(self, a):
        return wordops.invert_word(a)

    def power(self, a, k):
        return wordops.pow_word(a, k)

    def evaluate_word(self, word: Word):
        pairs = []
        for name, exp in word.letters:
            try:
                pairs.append((self._index[name], exp))
            except KeyError:
                raise UnknownGeneratorError(name) from None
        return wordops.normalize_pairs(pairs)

    def element_to_word(self, a) -> Word:
        return Word(tuple((self.gen_names[a[i]], a[i + 1]) for i in range(0, len(a), 2)))

    def canonical_key(self, a) -> bytes:
        return TAG_FREE + wordops.free_key_payload(a)

    def length(self, a):
        return wordops.word_length(a)

    def spec_dict(self) -> dict:
        return {"family": "free", "rank": self.rank}

    def conjugacy_test(self, a, b):
        """Conjugator c with c a c^-1 = b, or None."""
        ua, ub = flat_to_units(a), flat_to_units(b)
        pa, core_a = cyclic_reduce_units(ua)
        pb, core_b = cyclic_reduce_units(ub)
        if len(core_a) != len(core_b):
            return None
        n = len(core_a)
        if n == 0:
            return () if a == b == () else None
        for r in range(n):
            if core_a[r:] + core_a[:r] == core_b:
                # b = q (w2 w1) q^-1 with a = p (w1 w2) p^-1, w1 = core_a[:r]
                c_units = pb + [-u for u in reversed(core_a[:r])] + [-u for u in reversed(pa)]
                return units_to_flat(c_units)
        return None


class AbelianEngine(_EngineBase):
    family = "abelian"

    def __init__(self, rank: int):
        if rank < 1:
            raise GroupSpecError("abelian rank must be >= 1")
        self.rank = rank
        self.gen_names = tuple(f"e{i + 1}" for i in range(rank))
        self._index = {n: i for i, n in enumerate(self.gen_names)}
        self.identity = (0,) * rank

    def generator(self, name: str):
        try:
            i = self._index[name]
        except KeyError:
            raise UnknownGeneratorError(name) from None
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def invert(self, a):
        return tuple(-x for x in a)

    def power(self, a, k):
        return tuple(k * x for x in a)

    def element_to_word(self, a) -> Word:
        return Word(tuple((self.gen_names[i], v) for i, v in enumerate(a) if v != 0))

    def canonical_key(self, a) -> bytes:
        return TAG_ABELIAN + ",".join(str(v) for v in a).encode()

    def spec_dict(self) -> dict:
        return {"family": "abelian", "rank": self.rank}

    def conjugacy_test(self, a, b):
        return self.identity if a == b else None


class KleinEngine(_EngineBase):
    """<a, t | t a t^-1 = a^-1> with normal form a^i t^j stored as (i, j)."""

    family = "klein"

    def __init__(self):
        self.gen_names = ("a", "t")
        self.identity = (0, 0)

    def generator(self, name: str):
        if name == "a":
            return (1, 0)
        if name == "t":
            return (0, 1)
        raise UnknownGeneratorError(name)

    def multiply(self, a, b):
        i, j = a
        k, l = b
        return (i + k if j % 2 == 0 else i - k, j + l)

    def invert(self, a):
        i, j = a
        return (-i if j % 2 == 0 else i, -j)

    def element_to_word(self, a) -> Word:
        return Word.of((("a", a[0]), ("t", a[1])))

    def canonical_key(self, a) -> bytes:
        return TAG_KLEIN + f"{a[0]},{a[1]}".encode()

    def spec_dict(self) -> dict:
        return {"family": "klein"}

    def conjugacy_test(self, a, b):
        """Conjugates of (i, j): {(+-i, j)} for even j, i + 2Z at odd j."""
        i, j = a
        k, l = b
        if j != l:
            return None
        if j % 2 == 0:
            if k == i:
                return self.identity
            if k == -i:
                return (0, 1)
            return None
        if (k - i) % 2 == 0:
            return ((k - i) // 2, 0)
        return None


class BS1Engine(_EngineBase):
    """<a, t | t a t^-1 = a^m>, elements (num, e, shift) = (num/m^e, t^shift)."""

    family = "bs1"

    def __init__(self, m: int):
        if abs(m) < 2:
            raise GroupSpecError("bs1 multiplier must satisfy |m| >= 2")
        self.m = m
        self.gen_names = ("a", "t")
        self.identity = (0, 0, 0)

    def _norm(self, num, e):
        m = self.m
        if num == 0:
            return (0, 0)
        if e < 0:
            num *= m ** (-e)
            e = 0
        while e > 0 and num % m == 0:
            num //= m
            e -= 1
        return (num, e)

    def generator(self, name: str):
        if name == "a":
            return (1, 0, 0)
        if name == "t":
            return (0, 0, 1)
        raise UnknownGeneratorError(name)

    def multiply(self, a, b):
        n1, e1, s1 = a
        n2, e2, s2 = b
        m = self.m
        d1, d2 = e1, e2 - s1
        ee = max(d1, d2, 0)
        num = n1 * m ** (ee - d1) + n2 * m ** (ee - d2)
        num, ee = self._norm(num, ee)
        return (num, ee, s1 + s2)

    def invert(self, a):
        n, e, s = a
        num, ee = self._norm(-n, e + s)
        return (num, ee, -s)

    def element_to_word(self, a) -> Word:
        n, e, s = a
        return Word.of((("t", -e), ("a", n), ("t", e + s)))

    def canonical_key(self, a) -> bytes:
        return TAG_BS1 + f"{a[0]},{a[1]},{a[2]}".encode()

    def spec_dict(self) -> dict:
        return {"family": "bs1", "m": self.m}


def _bump_stable_name(name: str) -> str:
    if name == "t":
        return "t1"
    if name.startswith("t") and name[1:].isdigit():
        return f"t{int(name[1:]) + 1}"
    return name


class SemidirectEngine(_EngineBase):
    """K x| Z with stable letter t acting by a declared automorphism.

    The automorphism comes with generator images in both directions; the
    two maps are checked inverse on every generator at construction.
    Powers of the automorphism are applied through a per-generator,
    per-exponent memo that is safe to share between worker threads.
    """

    family = "semidirect"

    def __init__(self, base, forward: dict, backward: dict):
        self.base = base
        need = set(base.gen_names)
        for label, mapping in (("forward", forward), ("backward", backward)):
            if set(mapping) != need:
                raise GroupSpecError(
                    f"automorphism {label} map must cover exactly the base "
                    f"generators {sorted(need)}, got {sorted(mapping)}"
                )
        self._fwd_words = {g: w if isinstance(w, Word) else Word.parse(w) for g, w in forward.items()}
        self._bwd_words = {g: w if isinstance(w, Word) else Word.parse(w) for g, w in backward.items()}
        fwd = {g: base.evaluate_word(w) for g, w in self._fwd_words.items()}
        bwd = {g: base.evaluate_word(w) for g, w in self._bwd_words.items()}
        for g in base.gen_names:
            gen = base.generator(g)
            if self._apply_images(bwd, fwd[g]) != gen:
                raise GroupSpecError(f"backward(forward({g})) != {g}: maps are not inverse")
            if self._apply_images(fwd, bwd[g]) != gen:
                raise GroupSpecError(f"forward(backward({g})) != {g}: maps are not inverse")

        self._levels = {0: {g: base.generator(g) for g in base.gen_names}, 1: fwd, -1: bwd}
        self._lock = threading.Lock()

        rename = {n: _bump_stable_name(n) for n in base.gen_names}
        if len(set(rename.values())) != len(rename):
            raise GroupSpecError("base generator names collide after stable-letter renaming")
        if "t" in rename.values():
            raise GroupSpecError("renamed base generators may not shadow the stable letter")
        self._base_to_outer = rename
        self._outer_to_base = {v: k for k, v in rename.items()}
        self.gen_names = ("t",) + tuple(rename[n] for n in base.gen_names)
        self.identity = (base.identity, 0)

    # -- automorphism ------------------------------------------------------

    def _apply_images(self, images: dict, el):
        base = self.base
        if base.family == "free":
            imgs = [images[n] for n in base.gen_names]
            return wordops.substitute(el, imgs)
        out = base.identity
        for name, exp in base.element_to_word(el).letters:
            out = base.multiply(out, base.power(images[name], exp))
        return out

    def _images_at(self, k: int) -> dict:
        levels = self._levels
        hit = levels.get(k)
        if hit is not None:
            return hit
        with self._lock:
            hit = levels.get(k)
            if hit is not None:
                return hit
            step = 1 if k > 0 else -1
            j = k - step
            while levels.get(j) is None:
                j -= step
            one = levels[step]
            while j != k:
                prev = levels[j]
                j += step
                levels[j] = {g: self._apply_images(one, prev[g]) for g in self.base.gen_names}
            return levels[k]

    def auto_power(self, el, k: int):
        """alpha^k applied to a base element."""
        if k == 0 or el == self.base.identity:
            return el
        return self._apply_images(self._images_at(k), el)

    # -- group operations --------------------------------------------------

    def generator(self, name: str):
        if name == "t":
            return (self.base.identity, 1)
        try:
            inner = self._outer_to_base[name]
        except KeyError:
            raise UnknownGeneratorError(name) from None
        return (self.base.generator(inner), 0)

    def multiply(self, a, b):
        w1, k1 = a
        w2, k2 = b
        return (self.base.multiply(w1, self.auto_power(w2, k1)), k1 + k2)

    def invert(self, a):
        w, k = a
        return (self.auto_power(self.base.invert(w), -k), -k)

    def shift(self, a) -> int:
        return a[1]

    def kernel_part(self, a):
        return a[0]

    def embed(self, base_el):
        return (base_el, 0)

    def element_to_word(self, a) -> Word:
        w, k = a
        inner = self.base.element_to_word(w).rename(self._base_to_outer)
        return inner * Word.of((("t", k),))

    def canonical_key(self, a) -> bytes:
        w, k = a
        return TAG_SEMIDIRECT + self.base.canonical_key(w) + b"|" + str(k).encode()

    def forward_words(self) -> dict:
        return dict(self._fwd_words)

    def backward_words(self) -> dict:
        return dict(self._bwd_words)

    def spec_dict(self) -> dict:
        return {
            "family": "semidirect",
            "base": self.base.spec_dict(),
            "automorphism": {
                "forward": {g: str(w) for g, w in self._fwd_words.items()},
                "backward": {g: str(w) for g, w in self._bwd_words.items()},
            },
        }


# ---------------------------------------------------------------------------
# spec parsing

_FAMILIES = {"free", "abelian", "klein", "bs1", "semidirect"}


def parse_group_spec(source):
    """Parse and structurally validate a group description.

    Accepts a JSON string/bytes or an already-decoded dict; returns the
    validated dict.  Deep validation of automorphisms happens in
    build_engine, which parse callers normally follow with.
    """
    if isinstance(source, (str, bytes)):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise GroupSpecError(f"invalid JSON: {exc}") from None
    else:
        obj = source
    if not isinstance(obj, dict):
        raise GroupSpecError("group spec must be a JSON object")
    family = obj.get("family")
    if family not in _FAMILIES:
        raise GroupSpecError(f"unknown family {family!r}")
    allowed = {
        "free": {"family", "rank"},
        "abelian": {"family", "rank"},
        "klein": {"family"},
        "bs1": {"family", "m"},
        "semidirect": {"family", "base", "automorphism"},
    }[family]
    extra = set(obj) - allowed
    if extra:
        raise GroupSpecError(f"unexpected keys {sorted(extra)} for family {family!r}")
    if family in ("free", "abelian"):
        rank = obj.get("rank")
        if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
            raise GroupSpecError("rank must be a positive integer")
    if family == "bs1":
        m = obj.get("m")
        if not isinstance(m, int) or isinstance(m, bool) or abs(m) < 2:
            raise GroupSpecError("bs1 multiplier m must be an integer with |m| >= 2")
    if family == "semidirect":
        if "base" not in obj:
            raise GroupSpecError("semidirect spec needs a base")
        parse_group_spec(obj["base"])
        auto = obj.get("automorphism")
        if not isinstance(auto, dict) or set(auto) != {"forward", "backward"}:
            raise GroupSpecError("automorphism must have exactly forward and backward maps")
        for side in ("forward", "backward"):
            mapping = auto[side]
            if not isinstance(mapping, dict) or not all(
                isinstance(k, str) and isinstance(v, str) for k, v in mapping.items()
            ):
                raise GroupSpecError(f"automorphism {side} map must be a dict of words")
    return obj


def build_engine(spec):
    spec = parse_group_spec(spec)
    family = spec["family"]
    if family == "free":
        return FreeEngine(spec["rank"])
    if family == "abelian":
        return AbelianEngine(spec["rank"])
    if family == "klein":
        return KleinEngine()
    if family == "bs1":
        return BS1Engine(spec["m"])
    base = build_engine(spec["base"])
    auto = spec["automorphism"]
    try:
        return SemidirectEngine(base, auto["forward"], auto["backward"])
    except UnknownGeneratorError as exc:
        raise GroupSpecError(f"automorphism references unknown generator {exc}") from None
    except WordSyntaxError as exc:
        raise GroupSpecError(f"bad automorphism word: {exc}") from None


