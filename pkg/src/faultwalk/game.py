"""Exact minimax value of ring exploration over regular strategies.

The explored part of the ring is always an arc ``v-a .. v+b`` with the agent
at one of its ends.  A regular agent either extends the arc by one edge on
its own side, or crosses the arc (``a + b`` traversals) and extends the other
side.  Each newly visited node reveals its onward port, and the adversary
decides on the spot whether that port is faulty.

The play ends when both onward ports are known faulty or all ``n`` nodes are
visited; the payoff is ``cost / opt`` for the scenario the adversary has
committed to.  If no fault was ever revealed the adversary may still pick the
fault-free ring or the single fault closing the arc, whichever is worse for
the agent.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from functools import lru_cache

from .errors import BudgetExceededError, InvalidSizeError
from .graph import RingScenario
from .opt import opt_ring

DEFAULT_GAME_BUDGET = 14

_START, _LEFT, _RIGHT = 0, 1, 2


def minimax_lower_bound(n: int, *, budget: int = DEFAULT_GAME_BUDGET) -> Fraction:
    if n < 3:
        raise InvalidSizeError(f"a ring needs n >= 3, got {n}")
    if n > budget:
        raise BudgetExceededError(f"game on n={n} exceeds budget {budget}")

    def payoff(cost: int, a: int, b: int, faults_seen: bool) -> Fraction:
        opt = opt_ring(n, RingScenario(a, b)).cost
        if not faults_seen:
            opt = min(opt, n - 1)
        if opt == 0:
            return Fraction(1)
        return Fraction(cost, opt)

    # memo key includes cost so far: the ratio objective is not additive
    @lru_cache(maxsize=None)
    def agent(a: int, b: int, side: int, left_blocked: bool, right_blocked: bool, cost: int):
        if left_blocked and right_blocked:
            return payoff(cost, a, b, True)
        best = None
        for target, blocked in ((_LEFT, left_blocked), (_RIGHT, right_blocked)):
            if blocked:
                continue
            step = 1 if side in (_START, target) else a + b + 1
            na, nb = (a + 1, b) if target == _LEFT else (a, b + 1)
            value = arrive(na, nb, target, left_blocked, right_blocked, cost + step)
            if best is None or value < best:
                best = value
        return best

    def arrive(a, b, side, left_blocked, right_blocked, cost):
        if a + b == n - 1:
            return payoff(cost, a, b, left_blocked or right_blocked)
        free = agent(a, b, side, left_blocked, right_blocked, cost)
        if side == _LEFT:
            faulty = agent(a, b, side, True, right_blocked, cost)
        else:
            faulty = agent(a, b, side, left_blocked, True, cost)
        return max(free, faulty)

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10_000))
    try:
        return max(agent(0, 0, _START, fl, fr, 0) for fl in (False, True) for fr in (False, True))
    finally:
        sys.setrecursionlimit(limit)
        agent.cache_clear()
