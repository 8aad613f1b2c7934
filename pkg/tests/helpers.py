"""Independent brute-force oracles used to validate the package.

Everything here recomputes results from first principles (plain loops,
expanded voter lists, full subset enumeration) without touching the
package's solver internals, so a bug in the fast paths cannot hide
behind itself.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from rangecontrol.control import (
    ADD_CANDIDATES,
    ADD_VOTERS,
    CONSTRUCTIVE,
    DELETE_CANDIDATES,
    DELETE_VOTERS,
    PARTITION_CANDIDATES,
    RUNOFF_PARTITION_CANDIDATES,
    ControlInstance,
)
from rangecontrol.elections import Election


def brute_tally(election: Election, system: str) -> dict[str, Fraction]:
    """Direct summation over individually expanded voters."""
    totals = {c: Fraction(0) for c in election.candidates}
    for group in election.ballots:
        for _ in range(group.multiplicity):
            scores = list(group.scores)
            if not scores:
                continue
            if system == "nrv":
                hi, lo = max(scores), min(scores)
                if hi == lo:
                    continue
                row = [Fraction(election.k * (s - lo), hi - lo) for s in scores]
            else:
                row = [Fraction(s) for s in scores]
            for c, v in zip(election.candidates, row):
                totals[c] += v
    return totals


def brute_winners(election: Election, system: str) -> frozenset[str]:
    totals = brute_tally(election, system)
    if not totals:
        return frozenset()
    best = max(totals.values())
    return frozenset(c for c, v in totals.items() if v == best)


def brute_unique_winner(election: Election, system: str) -> str | None:
    winners = brute_winners(election, system)
    return next(iter(winners)) if len(winners) == 1 else None


def _survivors(election: Election, system: str, tie_model: str) -> frozenset[str]:
    winners = brute_winners(election, system)
    if tie_model == "promote":
        return winners
    return winners if len(winners) == 1 else frozenset()


def _sub(election: Election, keep: set[str]) -> Election:
    idx = [i for i, c in enumerate(election.candidates) if c in keep]
    cands = tuple(election.candidates[i] for i in idx)
    rows = [
        (g.multiplicity, tuple(g.scores[i] for i in idx)) for g in election.ballots
    ]
    return Election.from_rows(election.k, cands, rows)


def _expand_voters(election: Election) -> list[tuple[int, ...]]:
    out = []
    for g in election.ballots:
        out.extend([g.scores] * g.multiplicity)
    return out


def _with_voters(election: Election, voters: list[tuple[int, ...]]) -> Election:
    return Election.from_rows(election.k, election.candidates, [(1, v) for v in voters])


def _goal(instance: ControlInstance, winner: str | None) -> bool:
    if instance.goal == CONSTRUCTIVE:
        return winner == instance.distinguished
    return winner != instance.distinguished


def brute_control(instance: ControlInstance) -> bool:
    """Decide a control instance by enumeration over individual voters
    and raw candidate subsets; no sharing with the package solvers."""
    base = instance.base
    system = instance.system
    if instance.family == ADD_CANDIDATES:
        registered = set(instance.registered)
        spoilers = list(instance.spoilers)
        for size in range(min(instance.limit, len(spoilers)) + 1):
            for combo in itertools.combinations(spoilers, size):
                winner = brute_unique_winner(_sub(base, registered | set(combo)), system)
                if _goal(instance, winner):
                    return True
        return False
    if instance.family == DELETE_CANDIDATES:
        others = [c for c in base.candidates if c != instance.distinguished]
        for size in range(min(instance.limit, len(others)) + 1):
            for combo in itertools.combinations(others, size):
                keep = set(base.candidates) - set(combo)
                winner = brute_unique_winner(_sub(base, keep), system)
                if _goal(instance, winner):
                    return True
        return False
    if instance.family == ADD_VOTERS:
        pool = []
        for g in instance.pool:
            pool.extend([g.scores] * g.multiplicity)
        voters = _expand_voters(base)
        for size in range(min(instance.limit, len(pool)) + 1):
            for combo in itertools.combinations(range(len(pool)), size):
                chosen = voters + [pool[i] for i in combo]
                winner = brute_unique_winner(_with_voters(base, chosen), system)
                if _goal(instance, winner):
                    return True
        return False
    if instance.family == DELETE_VOTERS:
        voters = _expand_voters(base)
        for size in range(min(instance.limit, len(voters)) + 1):
            for combo in itertools.combinations(range(len(voters)), size):
                chosen = [v for i, v in enumerate(voters) if i not in set(combo)]
                winner = brute_unique_winner(_with_voters(base, chosen), system)
                if _goal(instance, winner):
                    return True
        return False
    if instance.family in (PARTITION_CANDIDATES, RUNOFF_PARTITION_CANDIDATES):
        cands = base.candidates
        for mask in range(1 << len(cands)):
            first = {c for i, c in enumerate(cands) if mask >> i & 1}
            rest = set(cands) - first
            d1 = _survivors(_sub(base, first), system, instance.tie_model)
            if instance.family == PARTITION_CANDIDATES:
                finalists = set(d1) | rest
            else:
                d2 = _survivors(_sub(base, rest), system, instance.tie_model)
                finalists = set(d1) | set(d2)
            winner = brute_unique_winner(_sub(base, finalists), system)
            if _goal(instance, winner):
                return True
        return False
    # partition of voters: every subset of the expanded voter list
    voters = _expand_voters(base)
    for mask in range(1 << len(voters)):
        side1 = [v for i, v in enumerate(voters) if mask >> i & 1]
        side2 = [v for i, v in enumerate(voters) if not mask >> i & 1]
        d1 = _survivors(_with_voters(base, side1), system, instance.tie_model)
        d2 = _survivors(_with_voters(base, side2), system, instance.tie_model)
        winner = brute_unique_winner(_sub(base, set(d1) | set(d2)), system)
        if _goal(instance, winner):
            return True
    return False


def brute_hitting_set(universe, sets, k) -> bool:
    elems = list(universe)
    for size in range(min(k, len(elems)) + 1):
        for combo in itertools.combinations(elems, size):
            chosen = set(combo)
            if all(chosen & set(s) for s in sets):
                return True
    return False


def brute_x3c(elements, sets) -> bool:
    k = len(elements) // 3
    for combo in itertools.combinations(range(len(sets)), k):
        seen: set[str] = set()
        total = 0
        for i in combo:
            seen.update(sets[i])
            total += len(sets[i])
        if total == len(seen) == len(elements):
            return True
    return False
