"""Word-growth tables over finite generating sets.

gamma(n) counts group elements whose word length over the chosen
generating set (closed under inverses) is at most n, so gamma(0) = 1 and
the sequence is nondecreasing and submultiplicative.  Estimates
gamma(n)**(1/n) bound the growth rate of the group from above.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

DEFAULT_BUDGET = 50_000_000


class GrowthError(Exception):
    pass


@dataclass
class GrowthTable:
    radius: int
    counts: list  # counts[n] = gamma(n), n = 0..radius
    gens: list = field(default_factory=list)
    engine_id: str = ""
    truncated: bool = False
    notes: list = field(default_factory=list)

    def validate(self) -> None:
        if len(self.counts) != self.radius + 1:
            raise GrowthError("count vector length does not match radius")
        if self.counts[0] != 1:
            raise GrowthError("gamma(0) must be 1")
        for n in range(1, self.radius + 1):
            if self.counts[n] < self.counts[n - 1]:
                raise GrowthError(f"gamma({n}) decreased")
        for m in range(self.radius + 1):
            for n in range(self.radius + 1 - m):
                if self.counts[m + n] > self.counts[m] * self.counts[n]:
                    raise GrowthError(
                        f"submultiplicativity fails at ({m}, {n})"
                    )

    def estimates(self) -> list:
        """gamma(n)**(1/n) for n >= 1; index 0 is None."""
        out = [None]
        for n in range(1, self.radius + 1):
            out.append(self.counts[n] ** (1.0 / n))
        return out

    def to_tsv(self) -> str:
        lines = ["n\tgamma\tupper_estimate"]
        est = self.estimates()
        for n in range(self.radius + 1):
            e = "" if n == 0 else f"{est[n]:.10f}"
            lines.append(f"{n}\t{self.counts[n]}\t{e}")
        return "\n".join(lines) + "\n"


def _closed_alphabet(engine, gens):
    """Generator elements plus inverses, deduplicated by canonical key."""
    alphabet = []
    seen = set()
    notes = []
    for g in gens:
        for el in (g, engine.invert(g)):
            key = engine.canonical_key(el)
            if key in seen:
                continue
            seen.add(key)
            alphabet.append(el)
    idkey = engine.canonical_key(engine.identity)
    if idkey in seen:
        alphabet = [el for el in alphabet if engine.canonical_key(el) != idkey]
        notes.append("identity generator ignored")
    if len(alphabet) < 2 * len(gens):
        notes.append("generating set not free of coincidences")
    return alphabet, notes


def _expand_chunk(engine, alphabet, chunk):
    out = []
    for el in chunk:
        for a in alphabet:
            nxt = engine.multiply(el, a)
            out.append((engine.canonical_key(nxt), nxt))
    return out


def ball_sizes(engine, gens, radius: int, budget: int = DEFAULT_BUDGET,
               threads: int = 1) -> GrowthTable:
    """Breadth-first ball counts gamma(0..radius).

    Exploration stops with truncated=True once the visited-state budget
    is exhausted; the table then covers only the completed radii.
    """
    if radius < 0:
        raise GrowthError("radius must be nonnegative")
    alphabet, notes = _closed_alphabet(engine, gens)
    identity = engine.identity
    visited = {engine.canonical_key(identity)}
    frontier = [identity]
    counts = [1]
    truncated = False
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for _ in range(radius):
            if not frontier:
                counts.append(counts[-1])
                continue
            if pool is not None and len(frontier) >= 4 * threads:
                size = (len(frontier) + threads - 1) // threads
                chunks = [frontier[i:i + size]
                          for i in range(0, len(frontier), size)]
                parts = pool.map(
                    lambda c: _expand_chunk(engine, alphabet, c), chunks)
                produced = [p for part in parts for p in part]
            else:
                produced = _expand_chunk(engine, alphabet, frontier)
            new_frontier = []
            for key, el in produced:
                if key in visited:
                    continue
                if len(visited) >= budget:
                    truncated = True
                    break
                visited.add(key)
                new_frontier.append(el)
            if truncated:
                break
            frontier = new_frontier
            counts.append(counts[-1] + len(new_frontier))
    finally:
        if pool is not None:
            pool.shutdown(wait=False)
    table = GrowthTable(radius=len(counts) - 1, counts=counts,
                        gens=list(gens), engine_id=engine.spec_id(),
                        truncated=truncated, notes=notes)
    table.validate()
    return table


def upper_estimates(table: GrowthTable) -> list:
    """gamma(n)**(1/n) for n = 1..radius; upper bounds on the rate."""
    return table.estimates()[1:]


def rescale_lower_bound(omega: float, length: int) -> float:
    """Growth bound for the ambient set when witness words have length
    at most `length` over it."""
    if length < 1:
        raise GrowthError("length must be positive")
    return omega ** (1.0 / length)


def finite_index_lower_bound(omega: float, index: int) -> float:
    """Growth bound passed from a finite-index subgroup to the group."""
    if index < 1:
        raise GrowthError("index must be positive")
    return omega ** (1.0 / (2 * index - 1))
