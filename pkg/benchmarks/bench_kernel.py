"""Compare the compiled elimination kernel against its pure-Python twin.

Two sections:

* elimination -- synthetic reproducible sparse rows fed straight into the
  span basis.  This isolates the kernel; the compiled twin wins by loop
  dispatch only (values are arbitrary-precision ints in both).
* workload -- the real verification hot path: building the cyclic closure
  for a flag case at exact q = 1/2 and running the full entrywise
  idempotency check.  Profiling shows this path is dominated by candidate
  row construction (generator action + exact rational arithmetic), not by
  elimination, so expect the kernels to tie here; the section exists to
  keep that claim measured rather than assumed.

The kernel is chosen at import time, so each measurement runs in a child
process; QFLAG_PURE=1 forces the pure kernel there.

Usage:
    python benchmarks/bench_kernel.py [--case b2|a2full] [--repeat N]
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import time

CASES = {
    "b2": ("B", 2, (1,)),
    "a2full": ("A", 2, ()),
}


def run_elimination():
    from fractions import Fraction

    from qflag.lin import kernel_name, span_basis

    class _Fixed:
        fraction_elements = True

    rng = random.Random(20260819)
    rows = [{rng.randrange(300): Fraction(rng.choice((-2, -1, 1, 2)))
             for _ in range(10)} for _ in range(250)]
    basis = span_basis(_Fixed())
    t0 = time.perf_counter()
    for r in rows:
        basis.insert(dict(r))
    seconds = time.perf_counter() - t0
    return {"kernel": kernel_name(), "seconds": seconds,
            "dims": [basis.dim], "checks": len(rows)}


def run_workload(case):
    from fractions import Fraction

    from qflag.flagproj import flag_context, verify_idempotent, verify_qtrace
    from qflag.lin import kernel_name
    from qflag.qscalar import FixedField

    family, rank, subset = CASES[case]
    ctx = flag_context(family, rank, subset, FixedField(Fraction(1, 2)))

    t0 = time.perf_counter()
    qcert = verify_qtrace(ctx)
    certs = verify_idempotent(ctx)
    seconds = time.perf_counter() - t0

    assert qcert.zero and all(c.zero for c in certs.values())
    dims = sorted({d for c in certs.values() for d in c.closure_dims})
    return {"kernel": kernel_name(), "seconds": seconds, "dims": dims,
            "checks": len(certs) + 1}


def measure(section, case, pure, repeat):
    env = dict(os.environ)
    env.pop("QFLAG_PURE", None)
    if pure:
        env["QFLAG_PURE"] = "1"
    best = None
    for _ in range(repeat):
        out = subprocess.run(
            [sys.executable, __file__, "--run-child", section,
             "--case", case],
            env=env, capture_output=True, text=True, check=True)
        res = json.loads(out.stdout)
        if best is None or res["seconds"] < best["seconds"]:
            best = res
    return best


def compare(section, case, repeat, label):
    print(label)
    results = []
    for pure in (False, True):
        res = measure(section, case, pure, repeat)
        results.append(res)
        print(f"  {res['kernel']:9s} {res['seconds']:8.3f} s   "
              f"dims {res['dims']}, {res['checks']} inserts/checks")
    fast, slow = results
    if fast["kernel"] == slow["kernel"]:
        print("  note: extension not built; both runs used the pure kernel")
    else:
        assert fast["dims"] == slow["dims"], "kernels disagree on dims!"
        print(f"  speedup: {slow['seconds'] / fast['seconds']:.2f}x")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--case", choices=sorted(CASES), default="b2")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--run-child", choices=("elim", "work"), default=None,
                    help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.run_child == "elim":
        print(json.dumps(run_elimination()))
        return
    if args.run_child == "work":
        print(json.dumps(run_workload(args.case)))
        return

    compare("elim", args.case, args.repeat,
            "elimination: 250 synthetic sparse rows over Q")
    family, rank, subset = CASES[args.case]
    compare("work", args.case, max(1, args.repeat // 3),
            f"workload: {family}{rank} S={list(subset)} at q = 1/2 -- "
            "cyclic closure + full idempotency check")


if __name__ == "__main__":
    main()
