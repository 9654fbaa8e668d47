"""Curve-level data and the two finiteness bounds on higher-order degrees."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .laurent import MultiLaurentPoly


@dataclass(frozen=True)
class LocalSingularity:
    """User-supplied local data at one singular point.

    local_alexander is the characteristic polynomial of the local monodromy;
    it is input data, never computed from equations.
    """

    label: str
    mu: int
    branches: int
    local_alexander: Optional[MultiLaurentPoly] = None

    def __post_init__(self):
        if self.mu < 0:
            raise ValueError("Milnor number must be nonnegative")
        if self.branches < 1:
            raise ValueError("branch count must be positive")
        if self.local_alexander is not None:
            p = self.local_alexander.unit_normal()
            if p.is_zero() or p.terms.get(tuple([0] * p.arity)) is None:
                raise ValueError("local Alexander polynomial must have nonzero constant term "
                                 "after normalization")


@dataclass(frozen=True)
class CurveData:
    """Degree/genus/singularity bookkeeping for the bound checks."""

    total_degree: Optional[int] = None
    component_degrees: Optional[Tuple[int, ...]] = None
    genus: int = 0
    singularities: Tuple[LocalSingularity, ...] = ()

    def __post_init__(self):
        if self.component_degrees is not None and self.total_degree is not None:
            if sum(self.component_degrees) != self.total_degree:
                raise ValueError("component degrees must sum to the total degree")

    @property
    def degree(self) -> int:
        if self.total_degree is not None:
            return self.total_degree
        if self.component_degrees is not None:
            return sum(self.component_degrees)
        raise ValueError("curve data has no degree")

    @property
    def num_components(self) -> Optional[int]:
        return len(self.component_degrees) if self.component_degrees is not None else None

    @property
    def num_singular_points(self) -> int:
        return len(self.singularities)


@dataclass
class BoundVerdict:
    level: int
    value: Optional[int]            # None for non-finite outcomes
    degree_bound: int               # d(d-2)
    local_bound: int                # sum(mu_k + 2 n_k) + 2g + d - l
    passed: bool
    note: str = ""


def degree_bound(cd: CurveData) -> int:
    d = cd.degree
    return d * (d - 2)


def local_bound(cd: CurveData) -> int:
    d = cd.degree
    total = sum(s.mu + 2 * s.branches for s in cd.singularities)
    return total + 2 * cd.genus + d - cd.num_singular_points


def check_bounds(results, cd: CurveData):
    """Check delta_n <= d(d-2) and the local-singularity bound per level.

    `results` is a list of (level, DeltaResult-like); a result is considered
    finite when it has outcome "finite" and an integer value.  Non-finite
    outcomes are reported as violations (the group is obstructed).
    """
    db = degree_bound(cd)
    lb = local_bound(cd)
    verdicts = []
    for level, res in results:
        outcome = getattr(res, "outcome", None)
        if outcome == "finite":
            v = res.value
            ok = v <= db and v <= lb
            note = "equality in degree bound" if v == db else ""
            verdicts.append(BoundVerdict(level, v, db, lb, ok, note))
        elif outcome == "infinite":
            verdicts.append(BoundVerdict(level, None, db, lb, False,
                                         "infinite degree violates finiteness"))
        else:
            verdicts.append(BoundVerdict(level, None, db, lb, False,
                                         f"non-finite outcome {outcome!r} cannot be bounded"))
    return verdicts
