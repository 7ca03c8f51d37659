"""Compare the compiled and pure-Python Omega_0 kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--json]
"""
import argparse
import json
import random
import timeit

from tdrings import _pykernels

try:
    from tdrings import _kernels
except ImportError:
    _kernels = None

SCANS = [(0, 40, 90), (0, 3, 7, 12), (0, 1, 2, 4, 6)]


def _flat_inputs(count=2000, seed=1):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        roots = rng.choice(SCANS)
        n = len(roots)
        out.append((roots, [rng.randint(-100, 100) for _ in range(n * (n - 1) // 2)]))
    return out


def _time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def run(repeat=3):
    backends = {"python": _pykernels}
    if _kernels is not None:
        backends["cython"] = _kernels
    flat = _flat_inputs()
    results = []
    for roots in SCANS:
        row = {"kernel": "scan_omega0", "roots": list(roots)}
        for name, mod in backends.items():
            row[name] = _time(lambda: mod.scan_omega0(roots, False), repeat)
        results.append(row)
    for kname in ("canonical_flat", "reduce_flat"):
        row = {"kernel": kname, "roots": "2000 random inputs"}
        for name, mod in backends.items():
            fn = getattr(mod, kname)
            row[name] = _time(lambda: [fn(r, list(u)) for r, u in flat], repeat)
        results.append(row)
    for row in results:
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
    return results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    results = run(args.repeat)
    if args.json:
        print(json.dumps(results, indent=2))
        return
    if _kernels is None:
        print("compiled kernels not built; timing the Python backend only")
    print(f"{'kernel':<16}{'input':<22}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for row in results:
        cy = row.get("cython")
        print(f"{row['kernel']:<16}{str(row['roots']):<22}{row['python']:>10.4f}"
              + (f"{cy:>10.4f}{row['speedup']:>8.1f}x" if cy is not None else ""))


if __name__ == "__main__":
    main()
