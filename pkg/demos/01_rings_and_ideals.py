"""Tour of the coefficient rings: multiplication tables, commutators,
the ideals I_m = mR + R[R,R], their quotients R_m, and first cyclic
homology.  These numbers drive everything downstream: R_m carries the
answer for H2(st_n) and HC_1 measures the kernel of st_n -> sl_n.
"""
import numpy as np

from stlie import (commutator_subspace, hc1_dim, ideal_Im, multiply,
                   preset_dual_numbers, preset_gf, preset_group_algebra,
                   preset_matrix, preset_poly_quotient, quotient_Rm,
                   symmetric_group_table, validate_algebra)

rings = [
    preset_gf(2),
    preset_gf(3),
    preset_dual_numbers(2),
    preset_poly_quotient(2, "x^2+x+1"),      # GF(4)
    preset_matrix(2, 2),                     # M_2(F_2)
    preset_group_algebra(3, symmetric_group_table(3), name="f3s3"),
]

print("ring summaries")
print(f"{'name':>14} {'dim':>4} {'[R,R]':>6} {'I_2':>4} {'R_2':>4} "
      f"{'I_3':>4} {'R_3':>4} {'HC_1':>5}")
for R in rings:
    assert validate_algebra(R) == [], R.name
    comm = commutator_subspace(R)
    row = [R.name, R.dim, comm.dim]
    for m in (2, 3):
        row.append(ideal_Im(R, m).subspace.dim)
        row.append(quotient_Rm(R, m).dim)
    # reorder: I_2 R_2 I_3 R_3
    print(f"{row[0]:>14} {row[1]:>4} {row[2]:>6} {row[3]:>4} {row[4]:>4} "
          f"{row[5]:>4} {row[6]:>4} {hc1_dim(R):>5}")

print()
print("multiplication in GF(4) = F_2[x]/(x^2 + x + 1):")
R = rings[3]
f = R.field
x = f.zeros(2); x[1] = 1
x2 = multiply(R, x, x)
print(f"  x * x = {x2.tolist()}  (that is 1 + x, coefficients on {R.labels})")

print()
print("why R_2 vanishes for the matrix ring: [R, R] contains e11 - e22,")
print("and the two-sided ideal it generates is everything, so I_2 = R.")
M = preset_matrix(2, 2)
print(f"  dim [M_2(F_2), M_2(F_2)] = {commutator_subspace(M).dim}")
print(f"  dim I_2 = {ideal_Im(M, 2).subspace.dim} = dim R -> R_2 = 0")

print()
print("HC_1 detects truncation in small characteristic:")
for p, poly in ((0, "x^2"), (2, "x^2"), (3, "x^3"), (2, "x^4")):
    S = preset_poly_quotient(p, poly)
    print(f"  HC_1({S.name}) = {hc1_dim(S)}")
