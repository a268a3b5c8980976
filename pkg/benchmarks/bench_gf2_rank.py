"""Time GF(2) rank of random square matrices with packed-word elimination.

    python3 benchmarks/bench_gf2_rank.py [--sizes 1024 2048 4096] [--repeat 3] [--seed 0]
"""

import argparse
import random
import time

from localinv.linalg import Mat, mat_rank


def bench(n: int, repeat: int, seed: int) -> tuple[int, float]:
    rng = random.Random(seed)
    m = Mat.from_packed([rng.getrandbits(n) for _ in range(n)], n)
    best = float("inf")
    rank = 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        rank = mat_rank(m)
        best = min(best, time.perf_counter() - t0)
    return rank, best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1024, 2048, 4096])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    for n in args.sizes:
        rank, secs = bench(n, args.repeat, args.seed)
        print(f"{n:>5} x {n:<5} rank={rank:<5} best of {args.repeat}: {secs:.3f} s")


if __name__ == "__main__":
    main()
