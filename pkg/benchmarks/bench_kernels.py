"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--n 8] [--length 200]

Both backends are imported directly, so the environment switch does not
matter here.  Results are checked for agreement before timing.
"""

from __future__ import annotations

import argparse
import random
import timeit

from braidcrypt import _kernels_py

try:
    from braidcrypt import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _random_letters(rng: random.Random, n: int, length: int) -> tuple[int, ...]:
    return tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length))


def _random_perm(rng: random.Random, n: int) -> tuple[int, ...]:
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


def workloads(n: int, length: int, seed: int = 0):
    rng = random.Random(seed)
    words = [_random_letters(rng, n, length) for _ in range(20)]
    pairs = [(_random_perm(rng, n), _random_perm(rng, n)) for _ in range(500)]
    return {
        "left_normal_form": lambda k: [k.left_normal_form(n, w) for w in words],
        "meet": lambda k: [k.meet(a, b) for a, b in pairs],
        "slide": lambda k: [k.slide(a, b) for a, b in pairs],
        "inversions": lambda k: [k.inversions(a) for a, _ in pairs],
        "compose": lambda k: [k.compose(a, b) for a, b in pairs],
    }


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--length", type=int, default=200)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not available; only the Python backend can run")
    print(f"n={args.n} word length={args.length}, best of {args.repeat}")
    print(f"{'kernel':<18}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, job in workloads(args.n, args.length).items():
        py = min(timeit.repeat(lambda: job(_kernels_py), number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{name:<18}{py * 1e3:>14.2f}{'-':>14}{'-':>10}")
            continue
        if job(_kernels_py) != job(_ckernels):
            raise SystemExit(f"backends disagree on {name}")
        cy = min(timeit.repeat(lambda: job(_ckernels), number=1, repeat=args.repeat))
        print(f"{name:<18}{py * 1e3:>14.2f}{cy * 1e3:>14.2f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
