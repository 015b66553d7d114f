"""Compare the compiled word kernel against the pure-Python fallback.

Runs the same seeded workloads through growthlab._fastwords and
growthlab._purewords and reports best-of-N wall times.  The two modules
share one signature set, so each workload is a function of the module.
"""

import argparse
import random
import time

from growthlab import _purewords

try:
    from growthlab import _fastwords
except ImportError:
    _fastwords = None


def random_pairs(rng, count, letters=3):
    return [(rng.randrange(letters), rng.randint(-3, 3)) for _ in range(count)]


def make_words(rng, count, size):
    return [_purewords.normalize_pairs(random_pairs(rng, size))
            for _ in range(count)]


def bench_normalize(mod, scale):
    rng = random.Random(101)
    batches = [random_pairs(rng, 400) for _ in range(40 * scale)]

    def run():
        for batch in batches:
            mod.normalize_pairs(batch)

    return run


def bench_products(mod, scale):
    rng = random.Random(202)
    words = make_words(rng, 400 * scale, 60)

    def run():
        acc = ()
        for w in words:
            acc = mod.concat_reduce(acc, w)
            if mod.word_length(acc) > 4000:
                acc = ()

    return run


def bench_powers(mod, scale):
    rng = random.Random(303)
    words = make_words(rng, 60 * scale, 20)
    exps = [rng.choice([-64, -17, 9, 33, 64]) for _ in words]

    def run():
        for w, e in zip(words, exps):
            mod.pow_word(w, e)

    return run


def bench_substitution(mod, scale):
    # Fibonacci-type automorphism iterated on a short seed; image words
    # grow exponentially, which is the ball-enumeration hot path
    images = ((1, 1), (0, 1, 1, 1))

    def run():
        for _ in range(6 * scale):
            w = (0, 1)
            for _ in range(18):
                w = mod.substitute(w, images)

    return run


def bench_keys(mod, scale):
    rng = random.Random(404)
    words = make_words(rng, 2000 * scale, 30)

    def run():
        for w in words:
            mod.free_key_payload(w)

    return run


WORKLOADS = [
    ("normalize_pairs", bench_normalize),
    ("concat_reduce", bench_products),
    ("pow_word", bench_powers),
    ("substitute", bench_substitution),
    ("free_key_payload", bench_keys),
]


def best_time(run, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        run()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions per workload (best is kept)")
    parser.add_argument("--scale", type=int, default=1,
                        help="workload size multiplier")
    args = parser.parse_args(argv)
    if _fastwords is None:
        print("compiled kernel not built; only the pure timings follow")
    header = f"{'workload':<18} {'pure ms':>10} {'fast ms':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, factory in WORKLOADS:
        pure = best_time(factory(_purewords, args.scale), args.repeat)
        if _fastwords is None:
            print(f"{name:<18} {pure * 1e3:>10.2f} {'-':>10} {'-':>8}")
            continue
        fast = best_time(factory(_fastwords, args.scale), args.repeat)
        print(f"{name:<18} {pure * 1e3:>10.2f} {fast * 1e3:>10.2f} "
              f"{pure / fast:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
