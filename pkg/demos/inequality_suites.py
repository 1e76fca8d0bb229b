"""Random parameter grids for the zero-gap inequalities of c J_a + d J_{a+1}.

    python3 demos/inequality_suites.py [tuples_per_case]
"""

import sys

import numpy as np

from ortho_sing.verify import comparison_suite, convexity_suite, gap_limit_suite, sample_case_grid

count = int(sys.argv[1]) if len(sys.argv) > 1 else 20
rng = np.random.default_rng(1)

for family, suite, cases in (("convexity", convexity_suite, "i ii iii iv"),
                             ("comparison", comparison_suite, "i ii iii")):
    for case in cases.split():
        reps = suite(sample_case_grid(family, case, count, rng), k_max=100)
        worst = max(max(r[1] - r[2] for r in rep.rows) for rep in reps)
        nviol = sum(len(rep.violations) for rep in reps)
        print(f"{family:10s} case {case:3s}: {len(reps)} tuples, {nviol} violations, worst lhs-rhs {worst:.3e}")

for row in gap_limit_suite([(-0.5, 1, 0), (0, 1, 0), (2.5, 1, -3), (-0.9, 3, -1)]):
    devs = ", ".join(f"{d:.2e}" for d in row.deviations)
    print(f"gap - pi at k={row.probes} for (a, c, d)={tuple(round(v, 3) for v in row.params)}: {devs}")
