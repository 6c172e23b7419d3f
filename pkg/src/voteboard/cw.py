"""Weight feasibility: can any task weighting make a system the majority champion?

For a fixed system m, each rival contributes one constraint row: the signed
per-task comparison pattern of m against that rival. m can be made a
Condorcet winner exactly when some weight vector w (non-negative, summing to
one, optionally box-bounded) gives every row a positive weighted sum, i.e.
G w >= margin elementwise for the requested margin. Feasibility is decided
by an exact simplex and the witness is re-verified arithmetically before it
is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InfeasibleBounds
from .linprog import INFEASIBLE, OPTIMAL, solve_lp
from .model import MINIMIZE, Leaderboard, as_fraction

PROSPECTIVE = "prospective"
NON_PROSPECTIVE = "non_prospective"


@dataclass(frozen=True)
class DominanceMatrix:
    """Rows of {-1, 0, +1}: system-vs-rival comparison per task.

    +1 where the system strictly beats the rival on the task (after
    direction adjustment), -1 where it strictly loses, 0 on ties and
    wherever either score is missing.
    """

    system: str
    rivals: tuple[str, ...]
    tasks: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FeasibilityResult:
    status: str
    witness: tuple[Fraction, ...] | None
    active_constraints: tuple[int, ...]

    @property
    def prospective(self) -> bool:
        return self.status == PROSPECTIVE


def build_dominance_matrix(lb: Leaderboard, system: str) -> DominanceMatrix:
    i = lb._sys_index(system)
    rivals = tuple(m for m in lb.systems if m != system)
    rows = []
    for rival in rivals:
        r = lb._sys_index(rival)
        row = []
        for j in range(len(lb.tasks)):
            mine = lb.scores[i][j]
            theirs = lb.scores[r][j]
            if mine is None or theirs is None or mine == theirs:
                row.append(0)
                continue
            better = mine > theirs
            if lb.directions[j] == MINIMIZE:
                better = not better
            row.append(1 if better else -1)
        rows.append(tuple(row))
    return DominanceMatrix(system, rivals, lb.tasks, tuple(rows))


def _bound_tuple(
    values: Sequence[int | float | Fraction | str] | int | float | Fraction | str | None,
    size: int,
    default: Fraction | None,
) -> tuple[Fraction | None, ...]:
    if values is None:
        return (default,) * size
    if isinstance(values, (int, float, Fraction, str)):
        return (as_fraction(values),) * size
    out = tuple(None if v is None else as_fraction(v) for v in values)
    if len(out) != size:
        raise ValueError("bound length must match the task count")
    return out


def find_cw_weights(
    matrix: DominanceMatrix,
    *,
    lower_bounds=None,
    upper_bounds=None,
    margin: int | float | Fraction | str = 0,
    objective: Sequence[int | float | Fraction | str] | None = None,
) -> FeasibilityResult:
    """Solve { G w >= margin, lower <= w <= upper, sum w = 1 } exactly.

    With an objective, the returned witness additionally minimizes that
    linear functional over the feasible region. Contradictory bounds raise
    InfeasibleBounds; an empty region otherwise is a normal non-prospective
    answer.
    """
    t = len(matrix.tasks)
    eps = as_fraction(margin)
    if eps < 0:
        raise ValueError("margin must be non-negative")
    lower = tuple(v if v is not None else Fraction(0)
                  for v in _bound_tuple(lower_bounds, t, Fraction(0)))
    upper = _bound_tuple(upper_bounds, t, None)
    for lo, up in zip(lower, upper):
        if lo < 0:
            raise ValueError("lower bounds must be non-negative")
        if up is not None and up < lo:
            raise InfeasibleBounds("upper bound below lower bound")
    low_sum = sum(lower, Fraction(0))
    if low_sum > 1:
        raise InfeasibleBounds("lower bounds sum beyond 1")
    if all(u is not None for u in upper) and sum(upper, Fraction(0)) < 1:
        raise InfeasibleBounds("upper bounds cannot reach a total of 1")

    # substitute v = w - lower, v >= 0
    constraints = [((Fraction(1),) * t, "==", Fraction(1) - low_sum)]
    for row in matrix.rows:
        coeffs = tuple(Fraction(v) for v in row)
        shift = sum((c * lo for c, lo in zip(coeffs, lower)), Fraction(0))
        constraints.append((coeffs, ">=", eps - shift))
    for j, up in enumerate(upper):
        if up is None:
            continue
        unit = tuple(Fraction(1 if k == j else 0) for k in range(t))
        constraints.append((unit, "<=", up - lower[j]))

    if objective is None:
        cost: list[Fraction] = [Fraction(0)] * t
    else:
        cost = [as_fraction(v) for v in objective]
        if len(cost) != t:
            raise ValueError("objective length must match the task count")

    status, v = solve_lp(cost, constraints, t)
    if status == INFEASIBLE:
        return FeasibilityResult(NON_PROSPECTIVE, None, ())
    if status != OPTIMAL or v is None:
        raise RuntimeError(f"unexpected solver status: {status}")

    witness = tuple(value + lo for value, lo in zip(v, lower))
    _verify(matrix, witness, lower, upper, eps)
    active = tuple(
        i
        for i, row in enumerate(matrix.rows)
        if sum((Fraction(c) * w for c, w in zip(row, witness)), Fraction(0)) == eps
    )
    return FeasibilityResult(PROSPECTIVE, witness, active)


def _verify(
    matrix: DominanceMatrix,
    witness: tuple[Fraction, ...],
    lower: tuple[Fraction, ...],
    upper: tuple[Fraction | None, ...],
    eps: Fraction,
) -> None:
    if sum(witness, Fraction(0)) != 1:
        raise RuntimeError("witness does not sum to 1")
    for w, lo, up in zip(witness, lower, upper):
        if w < lo or (up is not None and w > up):
            raise RuntimeError("witness violates a bound")
    for row in matrix.rows:
        total = sum((Fraction(c) * w for c, w in zip(row, witness)), Fraction(0))
        if total < eps:
            raise RuntimeError("witness violates a dominance row")


def is_prospective(
    lb: Leaderboard,
    system: str,
    *,
    margin: int | float | Fraction | str = 0,
) -> bool:
    """Whether some task weighting makes the system a Condorcet winner."""
    result = find_cw_weights(build_dominance_matrix(lb, system), margin=margin)
    return result.prospective
