"""Survey: fully certified verdicts for st_n(R) across the ring suite.

Each row runs the complete pipeline (sl, covering, lifts, W, st,
presentation, formula and relation suites, cocycle, extension) and
reports the measured H2(st) with every certificate folded in.  The
dimension guard refuses oversized inputs unless raised explicitly.
"""
import time

from stlie import (GuardExceeded, preset_dual_numbers, preset_gf,
                   preset_matrix, verify_main_theorem)

suite = [
    (preset_gf(2), 3), (preset_gf(2), 4), (preset_gf(2), 5),
    (preset_gf(3), 3), (preset_gf(3), 4),
    (preset_dual_numbers(2), 4),
    (preset_matrix(2, 2), 4),
]

print(f"{'ring':>14} {'n':>2} {'dim st':>7} {'H2(st)':>7} "
      f"{'checks':>8} {'time':>7}")
for R, n in suite:
    t0 = time.monotonic()
    v = verify_main_theorem(R, n)
    dt = time.monotonic() - t0
    npass = sum(c.passed for c in v.checks)
    state = "ok" if v.passed else "FAIL"
    print(f"{R.name:>14} {n:>2} {v.dims['st']:>7} {v.dims['h2_st']:>7} "
          f"{npass:>3}/{len(v.checks):>3} {dt:>6.2f}s  {state}")
    assert v.passed, v.failures()

print()
print("the guard in action:")
try:
    verify_main_theorem(preset_matrix(2, 2), 5)
except GuardExceeded as exc:
    print(f"  refused: {exc}")
print("  (pass max_dim=120 to run it anyway; dim sl = 99 takes ~15 s)")
