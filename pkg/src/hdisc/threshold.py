"""Minimum-degree threshold for high-discrepancy H-factors, with a trace of
every predicate evaluated on the way."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import chromatic_number
from .errors import Contradiction, ContractViolation
from .graph import Graph, graph_basics
from .params import ChromaticProfile, chromatic_profile
from .structure import satisfies_c4
from .templates import Delta0Result, butterfly_status, delta0

THEOREM_CASES = (
    "bipartite-regular", "bipartite-component-density", "bipartite-chi-star",
    "tri-regular", "tri-butterfly", "tri-default",
    "r-cond1", "r-cond2", "r-default",
)


@dataclass(frozen=True)
class ThresholdReport:
    delta_star: Fraction
    theorem_case: str
    profile: ChromaticProfile
    delta0: Fraction
    cond1: bool | None = None
    cond2: bool | None = None
    butterfly_flags: dict[int, bool] | None = None     # type -> is a template
    component_density: Fraction | None = None
    trace: tuple[tuple[str, object], ...] = field(default=())


def conditions(h: Graph, trace: list | None = None) -> tuple[bool, bool]:
    """(first condition, second condition) for graphs of chromatic number >= 4."""
    r = chromatic_number(h)
    if r < 4:
        raise ContractViolation("conditions are defined for chromatic number at least 4")
    regular = graph_basics(h).is_regular
    c4_next = satisfies_c4(h, r + 1).holds
    c4_r = satisfies_c4(h, r).holds
    cond1 = c4_next and (r % 4 == 0 or regular)
    cond2 = c4_r and regular
    if trace is not None:
        trace += [("regular", regular), (f"c4[{r + 1}]", c4_next), (f"c4[{r}]", c4_r),
                  ("r = 0 mod 4", r % 4 == 0), ("cond1", cond1), ("cond2", cond2)]
    return cond1, cond2


def delta_star(h: Graph, d0: Delta0Result | None = None) -> ThresholdReport:
    profile = chromatic_profile(h)
    basics = graph_basics(h)
    r = profile.r
    trace: list = [("r", r), ("chi_star", profile.chi_star)]
    d0 = d0 if d0 is not None else delta0(h)
    trace.append(("delta0", d0.value))
    floor = 1 - 1 / profile.chi_star
    extra: dict = {}

    if r == 2:
        trace.append(("regular", basics.is_regular))
        rho = basics.component_density
        extra["component_density"] = rho
        if basics.is_regular:
            case, value = "bipartite-regular", Fraction(3, 4)
        else:
            trace.append(("component_density", rho))
            if rho is not None and rho > 0:
                case, value = "bipartite-component-density", Fraction(1, 2)
            else:
                case, value = "bipartite-chi-star", floor
    elif r == 3:
        trace.append(("regular", basics.is_regular))
        if basics.is_regular:
            case, value = "tri-regular", Fraction(3, 4)
        else:
            status = butterfly_status(h)
            flags = {k: d.is_template for k, d in status.decisions.items()}
            extra["butterfly_flags"] = flags
            trace.append(("butterfly_templates", flags))
            if status.some_nontemplate:
                case, value = "tri-butterfly", max(floor, d0.value, Fraction(4, 7))
            else:
                case, value = "tri-default", max(floor, d0.value)
    else:
        cond1, cond2 = conditions(h, trace)
        extra.update(cond1=cond1, cond2=cond2)
        if cond1:
            case, value = "r-cond1", 1 - Fraction(1, r + 1)
        elif cond2:
            case, value = "r-cond2", 1 - Fraction(1, r)
        else:
            case, value = "r-default", max(floor, d0.value)

    trace.append(("case", case))
    if value < max(floor, d0.value):
        raise Contradiction(f"threshold {value} below the lower bounds {floor}, {d0.value}")
    return ThresholdReport(value, case, profile, d0.value, trace=tuple(trace), **extra)
