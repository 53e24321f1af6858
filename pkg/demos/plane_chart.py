"""The first chart of Quot^1 of O^2 on P^2, where three quadrics appear.

Fitt_0 of the degree-2 piece is generated by three quadrics in the five
chart coordinates. Later strata only add elements of the same ideal.
"""

from quotfit import GrassmannChart, QuotProblem, chart_kernel, fitting_stratum, stabilization_offset

problem = QuotProblem(p=2, r=2, n=1, d=1)
chart = GrassmannChart(problem)  # pivot e1*X
cone = chart_kernel(chart)

for s in (1, 2):
    st = fitting_stratum(cone, s)
    print(f"s={s}: {len(st.generators)} generators, presentation reduced to {st.reduced_shape}")
    if s == 1:
        for g in st.generators:
            print("   ", g)

print("stabilization offset:", stabilization_offset(problem, chart, s_max=3))
