"""Rank-one quotients of O^2 on the projective line.

Quot^1 of O^2 on P^1 is P^1 x P^1. On the first Grassmannian chart the
Fitting strata cut out a single quadric; homogenizing over all four charts
recovers the Segre quadric b*c - a*d.
"""

from quotfit import GrassmannChart, QuotProblem, cumulative_equations, homogenize_chart_ideal

problem = QuotProblem(p=2, r=1, n=1, d=1)

for chart in GrassmannChart.all_charts(problem):
    res = cumulative_equations(problem, chart, s_max=3)
    hom = homogenize_chart_ideal(problem, chart, res.ideal)
    print(f"chart {chart.pivot_labels()}:")
    print("  chart ideal :", ", ".join(map(str, res.ideal.generators)))
    print("  new per s   :", res.contributed)  # strata 2, 3 add nothing
    print("  homogenized :", ", ".join(map(str, hom.generators)))
