"""Crystal operators as residual-slack moves on feasible weight functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .support import NodeRef
from .weights import BACKWARD, FORWARD, WeightFunction, switch_node


@dataclass(frozen=True)
class LevelSlacks:
    """Upper/lower slacks of level i and their residuals after cancelation.

    ``eps`` is keyed by j = 1..i+1, ``delta`` by j = 0..i; the residual maps
    share those key ranges.
    """

    i: int
    eps: dict
    delta: dict
    eps_res: dict
    delta_res: dict


@dataclass(frozen=True)
class MoveOutcome:
    function: WeightFunction
    node: NodeRef
    multinode: Tuple[int, int]


def level_slacks(f: WeightFunction, i: int) -> LevelSlacks:
    """Slacks of level i summed over the extended multinodes, plus residuals.

    The residuals come from the closed form: with the prefix sums
    A(0) = 0, A(j) = A(j-1) + eps(j) - delta(j-1), the residual upper slack at j
    is max(0, A(j) - max_{p<j} A(p)) and the residual lower slack at j is
    max(0, A(j) - max_{q>j} A(q)).
    """
    n = f.graph.n
    ext = f.extended_value
    eps = {}
    delta = {}
    for j in range(1, i + 2):
        eps[j] = sum(
            ext(NodeRef(k, i - 1, j - 1)) - ext(NodeRef(k, i, j)) for k in range(1, n + 1)
        )
    for j in range(0, i + 1):
        delta[j] = sum(
            ext(NodeRef(k, i, j)) - ext(NodeRef(k, i + 1, j + 1)) for k in range(1, n + 1)
        )
    prefix = [0]
    for j in range(1, i + 2):
        prefix.append(prefix[j - 1] + eps[j] - delta[j - 1])
    eps_res = {}
    run_max = prefix[0]
    for j in range(1, i + 2):
        eps_res[j] = max(0, prefix[j] - run_max)
        run_max = max(run_max, prefix[j])
    delta_res = {}
    run_max = prefix[i + 1]
    for j in range(i, -1, -1):
        delta_res[j] = max(0, prefix[j] - run_max)
        run_max = max(run_max, prefix[j])
    return LevelSlacks(i=i, eps=eps, delta=delta, eps_res=eps_res, delta_res=delta_res)


def residual_slacks_by_cancelation(eps: dict, delta: dict) -> Tuple[dict, dict]:
    """Residual slacks by the pair-cancelation process.

    Repeatedly pick a positive lower slack at j' and a positive upper slack at
    j > j' with nothing positive strictly between them, and cancel the smaller
    against the larger.  The result is order-independent and must agree with the
    closed form used by level_slacks.
    """
    er = dict(eps)
    dr = dict(delta)
    while True:
        pair = None
        positions = sorted(set(er) | set(dr))
        for jp in positions:
            if dr.get(jp, 0) <= 0:
                continue
            for j in positions:
                if j <= jp or er.get(j, 0) <= 0:
                    continue
                between = [l for l in positions if jp < l < j]
                if all(er.get(l, 0) == 0 and dr.get(l, 0) == 0 for l in between):
                    pair = (jp, j)
                break
            if pair:
                break
        if pair is None:
            return er, dr
        jp, j = pair
        m = min(dr[jp], er[j])
        dr[jp] -= m
        er[j] -= m


def active_multinode(f: WeightFunction, i: int, direction: str) -> Optional[Tuple[int, int]]:
    """Multinode of level i at which the color-i operator acts, if any.

    Forward: the minimum j whose residual slacks sandwich it (all residual lower
    slacks before j and all residual upper slacks after j vanish), accepted iff
    its own residual upper slack is positive.  Backward: the minimum j with
    positive residual lower slack.
    """
    ls = level_slacks(f, i)
    if direction == FORWARD:
        for j in range(1, i + 1):
            if all(ls.delta_res[l] == 0 for l in range(0, j)) and all(
                ls.eps_res[l] == 0 for l in range(j + 1, i + 2)
            ):
                return (i, j) if ls.eps_res[j] > 0 else None
        return None
    for j in range(1, i + 1):
        if ls.delta_res[j] > 0:
            return (i, j)
    return None


def forward_move(f: WeightFunction, i: int) -> Optional[MoveOutcome]:
    """Apply the color-i raising step: +1 at the forward switch-node of the
    active multinode; None when the operator does not act."""
    am = active_multinode(f, i, FORWARD)
    if am is None:
        return None
    v = switch_node(f, am[0], am[1], FORWARD)
    return MoveOutcome(f.replace(v, f.value(v) + 1), v, am)


def backward_move(f: WeightFunction, i: int) -> Optional[MoveOutcome]:
    """Inverse of forward_move: -1 at the backward switch-node."""
    am = active_multinode(f, i, BACKWARD)
    if am is None:
        return None
    v = switch_node(f, am[0], am[1], BACKWARD)
    return MoveOutcome(f.replace(v, f.value(v) - 1), v, am)


def string_lengths(f: WeightFunction, i: int) -> Tuple[int, int]:
    """(h_i, t_i): how many consecutive forward / backward i-moves apply at f."""
    ls = level_slacks(f, i)
    return sum(ls.eps_res.values()), sum(ls.delta_res.values())
