"""Compiled vs pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs on every available backend; results must agree, and the
table reports the best wall time and the speedup over the pure path.
"""

import argparse
import time

from twistspin import load_knot
from twistspin.assembly import build_closed_complex, build_complement_complex, vankampen_pi1
from twistspin.kernels import backends, count_homs


def best_of(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def workloads():
    tref = load_knot("trefoil")
    comp = vankampen_pi1(build_complement_complex(tref, 2, 3))
    closed = vankampen_pi1(build_closed_complex(tref, 2, 3))
    fig8 = load_knot("figure8")
    return [
        ("reduction_sweep(300, nearest)", lambda b: b.reduction_sweep(300, True)),
        ("reduction_sweep(300, floor)", lambda b: b.reduction_sweep(300, False)),
        ("count_homs S4, trefoil complement",
         lambda b: count_homs(4, comp.ngens, comp.relators, b)),
        ("count_homs S5, trefoil complement",
         lambda b: count_homs(5, comp.ngens, comp.relators, b)),
        ("count_homs S4, closed (2,3), raw",
         lambda b: count_homs(4, closed.ngens, closed.relators, b)),
        ("count_homs S4, figure-eight group",
         lambda b: count_homs(4, fig8.ngens, fig8.relators, b)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    found = backends()
    names = sorted(found, key=lambda k: k != "pure")
    print(f"{'workload':<36}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, fn in workloads():
        row, results = {}, set()
        for name in names:
            t, r = best_of(lambda: fn(found[name]), args.repeat)
            row[name] = t
            results.add(repr(r))
        assert len(results) == 1, f"backends disagree on {label}"
        speed = row["pure"] / row["compiled"] if "compiled" in row else float("nan")
        print(f"{label:<36}" + "".join(f"{row[n]:>11.4f}s" for n in names) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
