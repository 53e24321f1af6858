"""Hilbert schemes of points on P^1 are Grassmannians.

For p = 1 and n = d every chart of the Grassmannian already lies in Quot, so
all the Fitting strata vanish. The fiber dimensions at random points stay
equal to n in every degree.
"""

from quotfit import GrassmannChart, QuotProblem, chart_kernel, fitting_stratum
from quotfit.quotcore import fiber_dimensions, random_point
import random

rng = random.Random(1)
for n in range(1, 5):
    problem = QuotProblem(p=1, r=1, n=n, d=n)
    charts = GrassmannChart.all_charts(problem)
    zero = all(
        fitting_stratum(chart_kernel(ch), s).ideal.is_zero() for ch in charts for s in (1, 2, 3)
    )
    ch = charts[-1]
    dims = fiber_dimensions(chart_kernel(ch), n + 3, random_point(ch.nchart, rng))
    print(f"n={n}: {len(charts)} charts, all strata zero: {zero}, fiber dims d..d+3 = {dims}")
