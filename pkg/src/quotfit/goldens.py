"""Reference ideals for the classical examples and a checker that recomputes them.

Fixture files live in ``quotfit/fixtures``. Each is a ``#`` comment header,
a ``vars:`` line and one polynomial per line. The fixtures are only ever
compared against; every verdict comes from a fresh computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .errors import ParseError
from .grobner import DEFAULT_BUDGET, Ideal, ideal_equal
from .polyring import PolyRing
from .quotcore import (
    GrassmannChart,
    QuotProblem,
    cumulative_equations,
    fitting_stratum,
    chart_kernel,
    homogenize_chart_ideal,
    homogeneous_ring,
    stabilization_offset,
)

EXAMPLES = ("hilb-p1", "p1xp1", "segre-p3", "p2-plane")


def parse_ideal_text(text: str) -> Ideal:
    """Read the fixture text format into an :class:`Ideal`."""
    names = None
    polys = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            names = line[len("vars:"):].split()
            continue
        if names is None:
            raise ParseError("ideal text must declare 'vars:' before polynomials")
        polys.append(line)
    if names is None:
        raise ParseError("ideal text has no 'vars:' line")
    ring = PolyRing(names)
    return Ideal(ring, [ring.parse(p) for p in polys])


def format_ideal_text(ideal: Ideal, header: str = "") -> str:
    lines = [f"# {h}" if h else "#" for h in header.splitlines()]
    lines.append("vars: " + " ".join(ideal.ring.names))
    lines.extend(str(g) for g in ideal.generators)
    return "\n".join(lines) + "\n"


def load_fixture(name: str) -> Ideal:
    path = resources.files("quotfit").joinpath("fixtures", f"{name}.txt")
    return parse_ideal_text(path.read_text(encoding="utf-8"))


def _rename(ideal: Ideal, ring: PolyRing) -> Ideal:
    """Same generators read in ``ring`` (variables matched by position)."""
    if ideal.ring.nvars != ring.nvars:
        raise ValueError("rings differ in size")
    return Ideal(ring, [ring.from_dict(g.terms) for g in ideal.generators])


@dataclass
class CheckLine:
    example: str
    label: str
    passed: bool
    detail: str

    def __str__(self):
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.example} {self.label}: {self.detail}"


def _chart_label(chart: GrassmannChart) -> str:
    return "chart [" + ", ".join(chart.pivot_labels()) + "]"


def _homogeneous_example(name, problem, budget):
    """Every chart: homogenized chart ideal equals the fixture; offset is 1."""
    expected = load_fixture(name)
    H, _ = homogeneous_ring(problem)
    expected = _rename(expected, H)
    out = []
    for chart in GrassmannChart.all_charts(problem):
        res = cumulative_equations(problem, chart, 3, budget=budget)
        hom = homogenize_chart_ideal(problem, chart, res.ideal, budget)
        same = ideal_equal(hom, expected, budget)
        offset = stabilization_offset(problem, chart, 3, budget, res)
        text = ", ".join(str(g) for g in hom.generators) or "0"
        out.append(
            CheckLine(
                name,
                _chart_label(chart),
                same and offset == 1,
                f"homogenized ({text}), stabilization offset {offset}",
            )
        )
    return out


def verify_example(name: str, budget: int = DEFAULT_BUDGET) -> list[CheckLine]:
    """Recompute one named example; one :class:`CheckLine` per chart checked."""
    if name == "hilb-p1":
        out = []
        for n in (1, 2, 3):
            problem = QuotProblem(1, 1, n, n)
            for chart in GrassmannChart.all_charts(problem):
                cone = chart_kernel(chart)
                zero = all(fitting_stratum(cone, s).ideal.is_zero() for s in (1, 2, 3))
                out.append(
                    CheckLine(
                        name,
                        f"n={n} " + _chart_label(chart),
                        zero,
                        "strata s=1..3 are zero" if zero else "nonzero stratum",
                    )
                )
        return out
    if name == "p1xp1":
        problem = QuotProblem(2, 1, 1, 1)
        out = []
        chart = GrassmannChart(problem)
        ideal = cumulative_equations(problem, chart, 3, budget=budget).ideal
        expected = _rename(load_fixture("p1xp1-chart"), chart.chart_ring)
        same = ideal_equal(ideal, expected, budget)
        text = ", ".join(str(g) for g in ideal.generators) or "0"
        out.append(CheckLine(name, _chart_label(chart) + " affine", same, f"({text})"))
        return out + _homogeneous_example(name, problem, budget)
    if name == "segre-p3":
        return _homogeneous_example(name, QuotProblem(3, 1, 1, 1), budget)
    if name == "p2-plane":
        problem = QuotProblem(2, 2, 1, 1)
        chart = GrassmannChart(problem)
        ideal = fitting_stratum(chart_kernel(chart), 1).ideal
        expected = _rename(load_fixture("p2-plane"), chart.chart_ring)
        same = ideal_equal(ideal, expected, budget)
        text = ", ".join(str(g) for g in ideal.generators) or "0"
        return [CheckLine(name, _chart_label(chart), same, f"Fitt_0(E_2) = ({text})")]
    raise ValueError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
