"""
Cohomology of truncated polydifferential windows
================================================

"""

import time

from hochkit import parse_operator
from hochkit.hkr import cohomology_report, mvf_to_op, split_cocycle, slack_scan
from hochkit.hochschild import hochschild_delta

# exact ranks of the truncated complex versus binom(m, n) * binom(m + d, d)
for m, r, d, nmax in [(1, 2, 2, 3), (2, 2, 2, 2), (3, 1, 1, 3)]:
    t0 = time.perf_counter()
    rep = cohomology_report(m, r, d, nmax)
    print(f"m={m} r={r} d={d}: dims {rep['dims']}, prediction {rep['hkr_prediction']}, "
          f"basis {rep['basis_sizes']} ({time.perf_counter() - t0:.2f}s)")

# widening the degree slack does not move the answer
print("slack scan:", slack_scan(2, 1, 1, 2))

# split a cocycle into a coboundary plus a multivector field
E0 = parse_operator("x1*D[2,0] + x2*D[1,1]")
D = hochschild_delta(E0) + parse_operator("x1*D[1,0|0,1] - x1*D[0,1|1,0]")
E, eta = split_cocycle(D)
print("eta =", eta)
print("E   =", E)
print("D == delta(E) + psi(eta):", D == hochschild_delta(E) + mvf_to_op(eta))
