"""Compare the compiled kernels with the NumPy fallback.

Runs the per-kernel timings in-process and, with --end-to-end, a zero search
plus characteristic evaluation in two subprocesses (one per backend).

    python benchmarks/bench_kernels.py --points 2000 --repeat 20
"""

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from defect_forge.numerics import _kernels_py as pure
from defect_forge.numerics import kernels
from defect_forge.numerics.expsum import ExpSum

CURVES = {
    "two-term": "exp(z) - 1",
    "mixed": "(z^2 + 1/3)*exp(z^2 - 2*z) + z*exp(5*z) - 7",
    "wide": " + ".join(f"exp({k}*z)*z^{k % 4 + 1}" for k in range(1, 13)),
}

END_TO_END = """
import time
from defect_forge.numerics import kernels
from defect_forge.numerics.expsum import parse_curve
from defect_forge.numerics.nevanlinna import characteristic
from defect_forge.numerics.zeros import locate_zeros
from defect_forge.numerics.expsum import ExpSum
t = time.perf_counter()
locate_zeros(ExpSum.parse("exp(z^2) - exp(2*z)"), 25.0)
characteristic(parse_curve("1\\nexp(z)\\nexp(z^2)\\n"), 30.0)
print(kernels.BACKEND, time.perf_counter() - t)
"""


def bench_kernels(points: int, repeat: int) -> list:
    rng = np.random.default_rng(0)
    z = rng.normal(size=points) * 10 + 1j * rng.normal(size=points) * 10
    w = rng.normal(size=points) + 1j * rng.normal(size=points)
    s = rng.normal(size=points)
    rows = []
    impls = [("numpy", pure)]
    if kernels.compiled is not None:
        impls.append(("cython", kernels.compiled))
    for name, src in CURVES.items():
        E, C, D = ExpSum.parse(src).pack()
        for label, mod in impls:
            t = min(timeit.repeat(lambda: mod.eval_expsum(z, E, C, D), number=1, repeat=repeat))
            rows.append({"kernel": f"eval_expsum[{name}]", "backend": label, "seconds": t})
    for kname, call in [("winding", lambda m: m.winding(w)), ("log_abs", lambda m: m.log_abs(w, s))]:
        for label, mod in impls:
            t = min(timeit.repeat(lambda: call(mod), number=1, repeat=repeat))
            rows.append({"kernel": kname, "backend": label, "seconds": t})
    return rows


def end_to_end() -> list:
    out = []
    for pure_flag in ("1", "0"):
        env = dict(os.environ, DEFECT_FORGE_PURE=pure_flag)
        res = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True)
        backend, secs = res.stdout.split()
        out.append({"kernel": "end-to-end", "backend": backend, "seconds": float(secs)})
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--end-to-end", action="store_true")
    ap.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = ap.parse_args(argv)
    rows = bench_kernels(args.points, args.repeat)
    if args.end_to_end:
        rows += end_to_end()
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    base = {r["kernel"]: r["seconds"] for r in rows if r["backend"] in ("numpy", "python")}
    print(f"{'kernel':28s} {'backend':8s} {'ms':>9s} {'speedup':>8s}")
    for r in rows:
        sp = base[r["kernel"]] / r["seconds"] if r["seconds"] else float("nan")
        print(f"{r['kernel']:28s} {r['backend']:8s} {1e3 * r['seconds']:9.3f} {sp:8.2f}")


if __name__ == "__main__":
    main()
