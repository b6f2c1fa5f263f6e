"""Special linear Lie algebras over small rings, their second homology,
and universal central extensions.

dim sl_n(R) = n^2 dim R - dim R + dim [R,R]; the covering uce(sl) adds
exactly H2(sl) central directions, and its kernel realises that
homology concretely.
"""
import numpy as np

from stlie import (build_sl, center, h2_dim, hc1_dim, is_centrally_closed,
                   is_perfect, preset_dual_numbers, preset_gf, quotient_Rm,
                   radical, uce)

cases = [
    (preset_gf(2), 3), (preset_gf(2), 4), (preset_gf(2), 5),
    (preset_gf(3), 3), (preset_gf(3), 4),
    (preset_dual_numbers(2), 3), (preset_dual_numbers(2), 4),
]

print("H2(sl_n(R)) against the prediction 6 dim R_r(n) [n in 3,4] + HC_1(R)")
print(f"{'ring':>14} {'n':>2} {'dim sl':>7} {'center':>7} "
      f"{'H2':>3} {'predicted':>10}")
for R, n in cases:
    sl = build_sl(R, n)
    h2 = h2_dim(sl.lie)
    w = quotient_Rm(R, radical(n)).dim
    pred = (6 * w if n in (3, 4) else 0) + hc1_dim(R)
    mark = "" if h2 == pred else "   <-- MISMATCH"
    assert is_perfect(sl.lie)
    print(f"{R.name:>14} {n:>2} {sl.lie.dim:>7} {center(sl.lie).dim:>7} "
          f"{h2:>3} {pred:>10}{mark}")

print()
print("building the universal covering of sl_3(F_3):")
sl = build_sl(preset_gf(3), 3)
cover = uce(sl.lie)
print(f"  dim sl = {sl.lie.dim}, dim uce = {cover.dim}, "
      f"kernel = {cover.kernel_dim}")
print(f"  carrier basis classes come from wedge pairs, e.g. "
      f"{cover.rep_pairs[:4]} ...")
f = sl.ring.field
print(f"  covering kills the kernel: "
      f"{bool(f.is_zero(cover.project(cover.kernel.basis)))}")

print()
print("a centrally closed contrast: sl_3(QQ) is its own covering")
slq = build_sl(preset_gf(0), 3)
print(f"  H2 = {h2_dim(slq.lie)}, centrally closed: "
      f"{is_centrally_closed(slq.lie)}, dim uce = {uce(slq.lie).dim}")
