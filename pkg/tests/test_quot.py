import random
from fractions import Fraction

import pytest

from quotfit import (
    GrassmannChart,
    Ideal,
    PolyMatrix,
    QuotProblem,
    chart_kernel,
    cumulative_equations,
    fiber_dimension_check,
    fitting_ideal,
    fitting_stratum,
    homogenize_chart_ideal,
    ideal_equal,
    presentation_matrix,
    radical_stability_check,
    stabilization_offset,
)
from quotfit.exactla import rank_at_point
from quotfit.goldens import load_fixture, verify_example
from quotfit.quotcore import (
    NOT_STABILIZED,
    apply_quotient,
    fiber_dimensions,
    fitting_contained,
    homogeneous_ring,
    random_point,
)


def P(p, r, n, d):
    return QuotProblem(p, r, n, d)


def test_problem_validation():
    with pytest.raises(ValueError):
        P(1, 1, 3, 2)
    with pytest.raises(ValueError):
        P(0, 1, 1, 1)
    assert P(2, 2, 1, 1).N == 6
    assert P(3, 1, 3, 3).chart_count() == 220


def test_chart_variables_and_labels():
    ch = GrassmannChart(P(2, 1, 1, 1), [2])
    assert ch.chart_ring.names == ("u1", "u2", "u3")
    assert ch.pivot_labels() == ["e2*X"]
    ch2 = GrassmannChart(P(1, 1, 2, 2), [0, 2])
    assert ch2.chart_ring.names == ("phi_1_2", "phi_3_2")
    with pytest.raises(ValueError):
        GrassmannChart(P(1, 1, 2, 2), [0, 0])
    with pytest.raises(ValueError):
        GrassmannChart(P(1, 1, 2, 2), [0, 3])


def test_sample_charts_is_deterministic():
    prob = P(3, 1, 2, 3)
    a = GrassmannChart.sample_charts(prob, 5, seed=4)
    b = GrassmannChart.sample_charts(prob, 5, seed=4)
    assert a == b and len(a) == 5
    assert a[0].pivots == (0, 1)
    assert len(GrassmannChart.sample_charts(P(1, 1, 1, 1), 5)) == 2


@pytest.mark.parametrize("args", [(2, 1, 1, 1), (2, 2, 2, 2), (1, 2, 2, 2), (3, 1, 2, 3)])
def test_kernel_is_the_kernel_of_the_quotient_map(args):
    prob = P(*args)
    rng = random.Random(0)
    for ch in GrassmannChart.sample_charts(prob, 3, seed=1):
        cone = chart_kernel(ch)
        assert len(cone.kernel_gens) == prob.N - prob.n
        for g in cone.kernel_gens:
            assert all(not c for c in apply_quotient(ch, g))
        # the quotient map is onto A^n and the kernel has the complementary rank
        pt = random_point(ch.nchart, rng)
        assert rank_at_point(ch.quotient_matrix(), pt) == prob.n
        assert rank_at_point(presentation_matrix(cone, prob.d), pt) == prob.N - prob.n


@pytest.mark.parametrize("args", [(1, 1, 1, 1), (2, 2, 1, 1), (2, 1, 2, 2)])
def test_iterative_cone_matches_direct(args):
    prob = P(*args)
    cone = chart_kernel(GrassmannChart(prob))
    for m in range(prob.d, prob.d + 3):
        direct = presentation_matrix(cone, m)
        iterative = presentation_matrix(cone, m, iterative=True)
        assert direct.nrows == iterative.nrows == prob.rank(m)
        assert sorted(map(str, direct.columns())) == sorted(map(str, iterative.columns()))


def test_presentation_independence():
    prob = P(2, 2, 1, 1)
    cone = chart_kernel(GrassmannChart(prob, [4]))
    M = presentation_matrix(cone, 2)
    R = M.ring
    rng = random.Random(2)
    # adding a combination column and an invertible row operation keeps the module
    cols = M.columns()
    coeffs = [rng.randint(-2, 2) for _ in range(3)]
    combo = [sum((cols[j][i] * c for j, c in enumerate(coeffs)), R.zero()) for i in range(M.nrows)]
    M2 = M.with_column(combo)
    rows = [list(r) for r in M2.data]
    rows[1] = [a + b * 3 for a, b in zip(rows[1], rows[4])]
    rows[0], rows[5] = rows[5], rows[0]
    M2 = PolyMatrix(R, rows, M2.ncols)
    for k in (0, 1):
        a, _, _ = fitting_ideal(M, k)
        b, _, _ = fitting_ideal(M2, k)
        assert ideal_equal(Ideal(R, a), Ideal(R, b))


def test_fitting_ideals_increase_with_k():
    prob = P(1, 1, 2, 2)
    cone = chart_kernel(GrassmannChart(prob, [0, 1]))
    M = presentation_matrix(cone, 3)
    prev = None
    for k in range(0, 4):
        gens, _, _ = fitting_ideal(M, k)
        cur = Ideal(M.ring, gens)
        if prev is not None:
            assert all(cur.contains(g) for g in prev.generators)
        prev = cur


def test_p1xp1_affine_chart():
    prob = P(2, 1, 1, 1)
    ch = GrassmannChart(prob)
    res = cumulative_equations(prob, ch, 3)
    assert [str(g) for g in res.ideal.generators] == ["u1*u2 - u3"]
    assert res.contributed == [1, 0, 0]
    assert stabilization_offset(prob, ch, 3, result=res) == 1
    assert radical_stability_check(prob, ch, 3, result=res)
    assert len(res.strata) == 3
    hom = homogenize_chart_ideal(prob, ch, res.ideal)
    H, _ = homogeneous_ring(prob)
    assert [str(g) for g in hom.generators] == ["b*c - a*d"]
    expected = load_fixture("p1xp1")
    assert ideal_equal(hom, Ideal(H, [H.from_dict(g.terms) for g in expected.generators]))


def test_hilbert_scheme_charts_are_unobstructed():
    for n in (1, 2, 3):
        prob = P(1, 1, n, n)
        for ch in GrassmannChart.all_charts(prob):
            res = cumulative_equations(prob, ch, 3)
            assert res.ideal.is_zero()
            assert all(st.ideal.is_zero() for st in res.strata)


def test_chart_symmetry_under_swapping_components():
    # swapping e1 and e2 is an automorphism; charts related by it give the same ideal
    prob = P(2, 1, 1, 2)
    half = prob.N // 2
    swap = lambda i: (i + half) % prob.N
    for piv in ([0], [1]):
        a = GrassmannChart(prob, piv)
        b = GrassmannChart(prob, [swap(piv[0])])
        Ia = cumulative_equations(prob, a, 2).ideal
        Ib = cumulative_equations(prob, b, 2).ideal
        images = {}
        for (i, j), k in a.var_index.items():
            images[k] = b.coordinate(swap(i), swap(j))
        moved = Ideal(b.chart_ring, [g.substitute(images, b.chart_ring) for g in Ia.generators])
        assert ideal_equal(moved, Ib)


def test_not_stabilized_marker():
    # with s_max = 2 the last stratum decides; a chart where it contributes nothing is stable
    prob = P(2, 1, 1, 1)
    assert stabilization_offset(prob, GrassmannChart(prob), 2) == 1
    assert NOT_STABILIZED != 1
    with pytest.raises(ValueError):
        stabilization_offset(prob, GrassmannChart(prob), 1)


def test_containment_by_base_change_agrees_with_minors():
    prob = P(2, 1, 2, 2)
    for ch in GrassmannChart.sample_charts(prob, 4, seed=0):
        cone = chart_kernel(ch)
        base = fitting_stratum(cone, 1).ideal
        for s in (2, 3):
            M = presentation_matrix(cone, prob.d + s)
            direct = all(base.contains(g) for g in fitting_stratum(cone, s).generators)
            assert fitting_contained(M, 1, base) == direct
    # a strictly larger Fitting ideal is detected
    prob = P(2, 1, 1, 1)
    cone = chart_kernel(GrassmannChart(prob))
    M = presentation_matrix(cone, 2)
    zero = Ideal(M.ring)
    assert not fitting_contained(M, 0, zero)


@pytest.mark.parametrize("args", [(2, 1, 1, 1), (1, 2, 2, 2), (2, 2, 2, 2), (3, 1, 2, 3)])
def test_fiber_dimension_bound(args):
    prob = P(*args)
    for ch in GrassmannChart.sample_charts(prob, 2, seed=3):
        assert fiber_dimension_check(chart_kernel(ch), prob.d + 2, trials=5, seed=1)


def test_fiber_dimensions_at_the_origin_of_a_monomial_chart():
    # the origin of chart [e1*X, e1*Y] on P^1 is the quotient by (X, Y)^... , of length 2
    prob = P(1, 1, 2, 2)
    ch = GrassmannChart(prob, [0, 1])
    dims = fiber_dimensions(chart_kernel(ch), 4, [Fraction(0)] * ch.nchart)
    assert dims == [2, 2, 2]


@pytest.mark.parametrize("name", ["hilb-p1", "p1xp1", "segre-p3", "p2-plane"])
def test_classical_examples(name):
    lines = verify_example(name)
    assert lines and all(l.passed for l in lines), [str(l) for l in lines if not l.passed]
