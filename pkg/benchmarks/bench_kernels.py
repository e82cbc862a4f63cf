"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--trials N]

Kernel rows time each function on identical inputs with both backends.  The
last row times a full move sweep end to end, running the pure-Python side in
a subprocess with GAUSSLINK_PURE_PYTHON=1.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

from gausslink import _pykernels as py
from gausslink.families import gen_torus
from gausslink.pairing import S, _ends
from gausslink.verify import VerifySuiteConfig, corpus

try:
    from gausslink import _ckernels as cy
except ImportError:
    sys.exit("compiled extension not built: run `pip install -e . --no-build-isolation` first")

SWEEP = (
    "import time; from gausslink.verify import sweep, VerifySuiteConfig; "
    "t=time.perf_counter(); sweep(VerifySuiteConfig(trials={trials})); print(time.perf_counter()-t)"
)


def _plain(x):
    # compiled kernels may return lists or memoryviews where Python returns tuples
    if isinstance(x, (list, tuple)):
        return tuple(_plain(v) for v in x)
    return x


def cases():
    d = gen_torus(30)
    ends = _ends(d)
    yield "bracket_count S on torus(30)", lambda k: k.bracket_count(ends, d.signs, 2, 2, S.table)
    diagrams = [g.raw for g in corpus(VerifySuiteConfig(trials=200))]
    yield "canonical_key_bytes x200", lambda k: [k.canonical_key_bytes(w, s, True) for w, s in diagrams]
    yield "linking_counts x200", lambda k: [k.linking_counts(w, s) for w, s in diagrams]
    big = gen_torus(20).raw
    place = [(0, 3, 0, True), (1, 5, 0, False), (0, 4, 1, False), (1, 6, 1, True)]
    yield "insert_arrows torus(20) x200", lambda k: [k.insert_arrows(*big, place, (1, -1)) for _ in range(200)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--trials", type=int, default=100, help="corpus size for the end-to-end sweep")
    args = ap.parse_args(argv)

    print(f"{'kernel':32} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, fn in cases():
        assert _plain(fn(py)) == _plain(fn(cy)), f"backends disagree on {name}"
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:32} {t_py:10.2f} {t_cy:10.2f} {t_py / t_cy:7.1f}x")

    code = SWEEP.format(trials=args.trials)
    run = lambda env: float(
        subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    )
    t_py = run({**os.environ, "GAUSSLINK_PURE_PYTHON": "1"}) * 1e3
    t_cy = run({k: v for k, v in os.environ.items() if k != "GAUSSLINK_PURE_PYTHON"}) * 1e3
    print(f"{f'sweep {args.trials} trials (end to end)':32} {t_py:10.0f} {t_cy:10.0f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
