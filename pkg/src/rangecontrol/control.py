"""Exact solvers for electoral-control decision problems.

Seven control families are modeled: adding/deleting candidates,
adding/deleting voters, partition of candidates (with and without a
runoff on both sides), and partition of voters.  Each family is decided
by exhaustive enumeration of the chair's possible actions, under the
unique-winner model: a constructive goal succeeds only when the
distinguished candidate is the singleton argmax of the terminal
election, a destructive goal succeeds exactly when they are not.

Enumeration canon (fixes witnesses and explored counts):

* candidate subsets are visited by (size, then index-lexicographic)
  order over the base election's declaration order;
* candidate partitions are visited by bitmask value, bit ``i`` placing
  candidate ``i`` into the first group;
* voter selections (take counts, removal counts, split vectors) are
  per-group count tuples visited in lexicographic order with the first
  group most significant.

The first success in this order is the canonical witness.  Solvers may
evaluate actions in parallel (``workers > 1``) but always report the
canonical witness and the canonical explored count, so results are
byte-identical across any parallelism degree.

A node budget caps how many actions may be evaluated.  Hitting the
budget with actions left yields ``decision=None`` ("budget exceeded"),
which is distinct from a proven "no".
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .elections import (
    NRV,
    RV,
    SYSTEMS,
    BallotGroup,
    Election,
    InvalidElection,
    drop_voters,
    normalize_ballot,
    project,
    scale_election,
    take_voters,
    tally,
)

__all__ = [
    "ADD_CANDIDATES",
    "DELETE_CANDIDATES",
    "ADD_VOTERS",
    "DELETE_VOTERS",
    "PARTITION_CANDIDATES",
    "RUNOFF_PARTITION_CANDIDATES",
    "PARTITION_VOTERS",
    "FAMILIES",
    "CONSTRUCTIVE",
    "DESTRUCTIVE",
    "TIES_PROMOTE",
    "TIES_ELIMINATE",
    "InvalidInstance",
    "ControlInstance",
    "ControlOutcome",
    "subelection_survivors",
    "solve",
    "solve_add_candidates",
    "solve_delete_candidates",
    "solve_add_voters",
    "solve_delete_voters",
    "solve_partition_candidates",
    "solve_runoff_partition_candidates",
    "solve_partition_voters",
    "replay_witness",
    "search_space",
    "scale_instance",
    "describe",
]

ADD_CANDIDATES = "add-candidates"
DELETE_CANDIDATES = "delete-candidates"
ADD_VOTERS = "add-voters"
DELETE_VOTERS = "delete-voters"
PARTITION_CANDIDATES = "partition-candidates"
RUNOFF_PARTITION_CANDIDATES = "runoff-partition-candidates"
PARTITION_VOTERS = "partition-voters"

FAMILIES = (
    ADD_CANDIDATES,
    DELETE_CANDIDATES,
    ADD_VOTERS,
    DELETE_VOTERS,
    PARTITION_CANDIDATES,
    RUNOFF_PARTITION_CANDIDATES,
    PARTITION_VOTERS,
)
_PARTITION_FAMILIES = (PARTITION_CANDIDATES, RUNOFF_PARTITION_CANDIDATES, PARTITION_VOTERS)
_BUDGETED_FAMILIES = (ADD_CANDIDATES, DELETE_CANDIDATES, ADD_VOTERS, DELETE_VOTERS)

CONSTRUCTIVE = "constructive"
DESTRUCTIVE = "destructive"

TIES_PROMOTE = "promote"
TIES_ELIMINATE = "eliminate"


class InvalidInstance(ValueError):
    """Raised when a control instance is malformed."""


@dataclass(frozen=True)
class ControlInstance:
    """One control decision problem over a base election.

    For ``add-candidates`` the base election is defined over the
    registered candidates plus the spoiler set (every ballot already
    scores the spoilers); ``spoilers`` flags which columns are merely
    addable.  ``pool`` holds the addable voters for ``add-voters`` and
    is canonicalized like election ballots.
    """

    base: Election
    family: str
    goal: str
    system: str
    distinguished: str
    tie_model: str | None = None
    limit: int | None = None
    spoilers: tuple[str, ...] = ()
    pool: tuple[BallotGroup, ...] = ()

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidInstance(f"unknown control family {self.family!r}")
        if self.goal not in (CONSTRUCTIVE, DESTRUCTIVE):
            raise InvalidInstance(f"goal must be constructive or destructive, got {self.goal!r}")
        if self.system not in SYSTEMS:
            raise InvalidInstance(f"unknown system {self.system!r}")
        spoilers = tuple(self.spoilers)
        if spoilers and self.family != ADD_CANDIDATES:
            raise InvalidInstance("spoilers are only meaningful for add-candidates")
        unknown = set(spoilers) - set(self.base.candidates)
        if unknown:
            raise InvalidInstance(f"spoilers not in the base election: {sorted(unknown)}")
        # keep spoilers in declaration order, deduplicated
        spoilers = tuple(c for c in self.base.candidates if c in set(spoilers))
        object.__setattr__(self, "spoilers", spoilers)
        if self.distinguished not in self.base.candidates:
            raise InvalidInstance(f"distinguished candidate {self.distinguished!r} not registered")
        if self.distinguished in spoilers:
            raise InvalidInstance("distinguished candidate cannot be a spoiler")
        if self.family in _PARTITION_FAMILIES:
            if self.tie_model not in (TIES_PROMOTE, TIES_ELIMINATE):
                raise InvalidInstance(f"partition control needs a tie model, got {self.tie_model!r}")
            if self.limit is not None:
                raise InvalidInstance("partition control takes no limit")
        else:
            if self.tie_model is not None:
                raise InvalidInstance("tie model only applies to partition control")
            if not isinstance(self.limit, int) or self.limit < 1:
                raise InvalidInstance(f"{self.family} needs a positive limit, got {self.limit!r}")
        if self.family == ADD_VOTERS:
            try:
                # validates score ranges/widths and canonicalizes the pool
                pool_election = Election(self.base.k, self.base.candidates, tuple(self.pool))
            except InvalidElection as exc:
                raise InvalidInstance(f"bad voter pool: {exc}") from exc
            object.__setattr__(self, "pool", pool_election.ballots)
        elif self.pool:
            raise InvalidInstance("a voter pool is only meaningful for add-voters")

    @property
    def registered(self) -> tuple[str, ...]:
        """Candidates actually standing before any control action."""
        if not self.spoilers:
            return self.base.candidates
        out = set(self.spoilers)
        return tuple(c for c in self.base.candidates if c not in out)


@dataclass(frozen=True)
class ControlOutcome:
    """Decision plus canonical witness.

    ``decision`` is ``True``/``False`` for a proven answer and ``None``
    when the node budget ran out first.  ``explored`` counts actions in
    canonical order: first-success index + 1 on yes, the full action
    count on no, exactly the budget when exceeded.
    """

    decision: bool | None
    witness: tuple | None
    explored: int

    @property
    def budget_exceeded(self) -> bool:
        return self.decision is None


def subelection_survivors(election: Election, system: str, tie_model: str) -> frozenset[str]:
    """Who proceeds from a subelection: all winners (promote) or a lone winner (eliminate)."""
    if tie_model not in (TIES_PROMOTE, TIES_ELIMINATE):
        raise ValueError(f"unknown tie model {tie_model!r}")
    winners = tally(election, system).winners
    if tie_model == TIES_PROMOTE:
        return winners
    return winners if len(winners) == 1 else frozenset()


def _goal_met(goal: str, distinguished: str, unique_winner: str | None) -> bool:
    if goal == CONSTRUCTIVE:
        return unique_winner == distinguished
    return unique_winner != distinguished


# ---------------------------------------------------------------------------
# cached subelection tallies (candidate subsets of a fixed election)

@lru_cache(maxsize=None)
def _subset_tally(election: Election, subset: frozenset[str], system: str):
    return tally(project(election, subset), system)


def _subset_unique_winner(election: Election, subset: frozenset[str], system: str) -> str | None:
    return _subset_tally(election, subset, system).unique_winner


def _subset_survivors(
    election: Election, subset: frozenset[str], system: str, tie_model: str
) -> frozenset[str]:
    winners = _subset_tally(election, subset, system).winners
    if tie_model == TIES_PROMOTE:
        return winners
    return winners if len(winners) == 1 else frozenset()


# ---------------------------------------------------------------------------
# integer-scaled score rows for the fixed-candidate-set families

def _int_rows(groups: Sequence[BallotGroup], k: int, system: str) -> tuple[list[tuple[int, ...]], int]:
    """Per-group counted score vectors scaled to a common integer grid.

    Returns ``(rows, scale)`` with every entry ``scale *`` the exact
    counted score; argmax-equivalent to the rational tally.  Discarded
    NRV ballots become zero rows.
    """
    raw: list[tuple[Fraction, ...]] = []
    for g in groups:
        if system == RV:
            raw.append(tuple(Fraction(s) for s in g.scores))
        else:
            norm = normalize_ballot(g.scores, k) if g.scores else None
            raw.append(norm if norm is not None else tuple(Fraction(0) for _ in g.scores))
    scale = 1
    for row in raw:
        for v in row:
            scale = scale * v.denominator // math.gcd(scale, v.denominator)
    rows = [tuple(int(v * scale) for v in row) for row in raw]
    return rows, scale


def _winner_indices(totals: Sequence[int]) -> list[int]:
    best = max(totals)
    return [i for i, t in enumerate(totals) if t == best]


# ---------------------------------------------------------------------------
# enumeration primitives

def _subsets_by_size(domain: tuple[str, ...], max_size: int) -> Iterator[tuple[str, ...]]:
    for size in range(min(max_size, len(domain)) + 1):
        yield from itertools.combinations(domain, size)


def _count_subsets(domain_size: int, max_size: int) -> int:
    return sum(math.comb(domain_size, i) for i in range(min(max_size, domain_size) + 1))


def _capped_vectors(caps: Sequence[int], cap_sum: int) -> Iterator[tuple[int, ...]]:
    """All per-group count tuples with sum <= cap_sum, lexicographic order."""
    n = len(caps)

    def rec(i: int, remaining: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(prefix)
            return
        for v in range(min(caps[i], remaining) + 1):
            prefix.append(v)
            yield from rec(i + 1, remaining - v, prefix)
            prefix.pop()

    return rec(0, cap_sum, [])


def _count_capped_vectors(caps: Sequence[int], cap_sum: int) -> int:
    counts = [1] + [0] * cap_sum  # counts[s] = #vectors so far with sum s
    for cap in caps:
        nxt = [0] * (cap_sum + 1)
        for s, c in enumerate(counts):
            if not c:
                continue
            for v in range(min(cap, cap_sum - s) + 1):
                nxt[s + v] += c
        counts = nxt
    return sum(counts)


# ---------------------------------------------------------------------------
# the generic canonical-order scanner

_CHUNK = 64


def _scan(
    actions: Iterable,
    evaluate: Callable,
    budget: int | None,
    workers: int,
) -> ControlOutcome:
    it = iter(actions)
    explored = 0
    if workers <= 1:
        for action in it:
            if budget is not None and explored >= budget:
                return ControlOutcome(None, None, explored)
            explored += 1
            if evaluate(action):
                return ControlOutcome(True, action, explored)
        return ControlOutcome(False, None, explored)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        while True:
            room = _CHUNK if budget is None else min(_CHUNK, budget - explored)
            batch = list(itertools.islice(it, room)) if room > 0 else []
            if not batch:
                if budget is not None and next(it, _SENTINEL) is not _SENTINEL:
                    return ControlOutcome(None, None, explored)
                return ControlOutcome(False, None, explored)
            for action, hit in zip(batch, pool.map(evaluate, batch)):
                explored += 1
                if hit:
                    return ControlOutcome(True, action, explored)


_SENTINEL = object()


# ---------------------------------------------------------------------------
# per-family solvers

def _require(instance: ControlInstance, family: str) -> None:
    if instance.family != family:
        raise InvalidInstance(f"expected a {family} instance, got {instance.family}")


def solve_add_candidates(
    instance: ControlInstance, *, budget: int | None = None, workers: int = 1
) -> ControlOutcome:
    """Decide control by adding at most ``limit`` spoiler candidates."""
    _require(instance, ADD_CANDIDATES)
    base = instance.base
    registered = frozenset(instance.registered)
    limit = min(instance.limit, len(instance.spoilers))

    def evaluate(added: tuple[str, ...]) -> bool:
        winner = _subset_unique_winner(base, registered | frozenset(added), instance.system)
        return _goal_met(instance.goal, instance.distinguished, winner)

    return _scan(_subsets_by_size(instance.spoilers, limit), evaluate, budget, workers)


def solve_delete_candidates(
    instance: ControlInstance, *, budget: int | None = None, workers: int = 1
) -> ControlOutcome:
    """Decide control by deleting at most ``limit`` candidates.

    The distinguished candidate is never deletable: the problem
    statement forbids it for destructive control, and deleting them can
    never help a constructive goal, so excluding them uniformly only
    prunes the search.
    """
    _require(instance, DELETE_CANDIDATES)
    base = instance.base
    deletable = tuple(c for c in base.candidates if c != instance.distinguished)
    limit = min(instance.limit, len(deletable))
    everyone = frozenset(base.candidates)

    def evaluate(deleted: tuple[str, ...]) -> bool:
        winner = _subset_unique_winner(base, everyone - frozenset(deleted), instance.system)
        return _goal_met(instance.goal, instance.distinguished, winner)

    return _scan(_subsets_by_size(deletable, limit), evaluate, budget, workers)


def solve_add_voters(
    instance: ControlInstance, *, budget: int | None = None, workers: int = 1
) -> ControlOutcome:
    """Decide control by registering at most ``limit`` voters from the pool.

    Partial multiplicities are allowed: an action takes ``j_i`` voters
    from pool group ``i``.
    """
    _require(instance, ADD_VOTERS)
    base = instance.base
    rows, _ = _int_rows(tuple(base.ballots) + tuple(instance.pool), base.k, instance.system)
    base_rows = rows[: len(base.ballots)]
    pool_rows = rows[len(base.ballots):]
    width = len(base.candidates)
    base_totals = [0] * width
    for g, row in zip(base.ballots, base_rows):
        for i in range(width):
            base_totals[i] += g.multiplicity * row[i]
    target = base.index(instance.distinguished)
    caps = [g.multiplicity for g in instance.pool]

    def evaluate(take: tuple[int, ...]) -> bool:
        totals = base_totals[:]
        for j, row in zip(take, pool_rows):
            if j:
                for i in range(width):
                    totals[i] += j * row[i]
        winners = _winner_indices(totals)
        unique = winners[0] if len(winners) == 1 else None
        met_target = unique == target
        return met_target if instance.goal == CONSTRUCTIVE else not met_target

    return _scan(_capped_vectors(caps, instance.limit), evaluate, budget, workers)


def solve_delete_voters(
    instance: ControlInstance, *, budget: int | None = None, workers: int = 1
) -> ControlOutcome:
    """Decide control by removing at most ``limit`` voters."""
    _require(instance, DELETE_VOTERS)
    base = instance.base
    rows, _ = _int_rows(base.ballots, base.k, instance.system)
    width = len(base.candidates)
    full = [0] * width
    for g, row in zip(base.ballots, rows):
        for i in range(width):
            full[i] += g.multiplicity * row[i]
    target = base.index(instance.distinguished)
    caps = [g.multiplicity for g in base.ballots]

    def evaluate(remove: tuple[int, ...]) -> bool:
        totals = full[:]
        for j, row in zip(remove, rows):
            if j:
                for i in range(width):
                    totals[i] -= j * row[i]
        winners = _winner_indices(totals)
        unique = winners[0] if len(winners) == 1 else None
        met_target = unique == target
        return met_target if instance.goal == CONSTRUCTIVE else not met_target

    return _scan(_capped_vectors(caps, instance.limit), evaluate, budget, workers)


def _masks(n: int) -> Iterator[int]:
    return iter(range(1 << n))


def solve_partition_candidates(
    instance: ControlInstance, *, budget: int | None = None, workers: int = 1
) -> ControlOutcome:
    """Decide control by partition of candidates (one-sided subelection).

    The first group runs a subelection; its survivors join the second
    group for the final election over the full voter set.
    """
    _require(instance, PARTITION_CANDIDATES)
    base = instance.base
    cands = base.candidates
    n = len(cands)

    def evaluate(mask: int) -> bool:
        first = frozenset(c for i, c in enumerate(cands) if mask >> i & 1)
        rest = frozenset(c for i, c in enumerate(cands) if not mask >> i & 1)
        survivors = _subset_survivors(base, first, instance.system, instance.tie_model)
        winner = _subset_unique_winner(base, survivors | rest, instance.system)
        return _goal_met(instance.goal, instance.distinguished, winner)

    outcome = _scan(_masks(n), evaluate, budget, workers)
    return _mask_witness(outcome, cands)


def solve_runoff_partition_candidates(
    instance: ControlInstance, *, budget: int | None = None, workers: int = 1
) -> ControlOutcome:
    """Decide control by runoff partition of candidates (subelections on both sides)."""
    _require(instance, RUNOFF_PARTITION_CANDIDATES)
    base = instance.base
    cands = base.candidates
    n = len(cands)

    def evaluate(mask: int) -> bool:
        first = frozenset(c for i, c in enumerate(cands) if mask >> i & 1)
        rest = frozenset(c for i, c in enumerate(cands) if not mask >> i & 1)
        d1 = _subset_survivors(base, first, instance.system, instance.tie_model)
        d2 = _subset_survivors(base, rest, instance.system, instance.tie_model)
        winner = _subset_unique_winner(base, d1 | d2, instance.system)
        return _goal_met(instance.goal, instance.distinguished, winner)

    outcome = _scan(_masks(n), evaluate, budget, workers)
    return _mask_witness(outcome, cands)


def _mask_witness(outcome: ControlOutcome, cands: tuple[str, ...]) -> ControlOutcome:
    if outcome.decision and outcome.witness is not None:
        mask = outcome.witness
        members = tuple(c for i, c in enumerate(cands) if mask >> i & 1)
        return ControlOutcome(outcome.decision, members, outcome.explored)
    return outcome


def solve_partition_voters(
    instance: ControlInstance, *, budget: int | None = None, workers: int = 1
) -> ControlOutcome:
    """Decide control by partition of voters.

    Actions are split vectors: entry ``j_i`` sends that many voters of
    group ``i`` into the first subelection, the rest into the second.
    By multiplicity linearity this covers every voter partition.  Both
    subelections use the full candidate set; the survivors' union faces
    the full voter set in the final round.
    """
    _require(instance, PARTITION_VOTERS)
    base = instance.base
    cands = base.candidates
    width = len(cands)
    rows, _ = _int_rows(base.ballots, base.k, instance.system)
    mults = [g.multiplicity for g in base.ballots]
    full = [0] * width
    for mult, row in zip(mults, rows):
        for i in range(width):
            full[i] += mult * row[i]

    def survivors_of(totals: Sequence[int]) -> frozenset[str]:
        winners = _winner_indices(totals)
        if instance.tie_model == TIES_ELIMINATE and len(winners) != 1:
            return frozenset()
        return frozenset(cands[i] for i in winners)

    def evaluate(split: tuple[int, ...]) -> bool:
        first = [0] * width
        for j, row in zip(split, rows):
            if j:
                for i in range(width):
                    first[i] += j * row[i]
        second = [f - s for f, s in zip(full, first)]
        finalists = survivors_of(first) | survivors_of(second)
        winner = _subset_unique_winner(base, finalists, instance.system)
        return _goal_met(instance.goal, instance.distinguished, winner)

    actions = itertools.product(*(range(m + 1) for m in mults))
    return _scan(actions, evaluate, budget, workers)


_SOLVERS = {
    ADD_CANDIDATES: solve_add_candidates,
    DELETE_CANDIDATES: solve_delete_candidates,
    ADD_VOTERS: solve_add_voters,
    DELETE_VOTERS: solve_delete_voters,
    PARTITION_CANDIDATES: solve_partition_candidates,
    RUNOFF_PARTITION_CANDIDATES: solve_runoff_partition_candidates,
    PARTITION_VOTERS: solve_partition_voters,
}


def solve(
    instance: ControlInstance, *, budget: int | None = None, workers: int = 1
) -> ControlOutcome:
    """Dispatch to the family-specific exhaustive solver."""
    return _SOLVERS[instance.family](instance, budget=budget, workers=workers)


def search_space(instance: ControlInstance) -> int:
    """Number of actions the exhaustive solver would enumerate."""
    if instance.family == ADD_CANDIDATES:
        return _count_subsets(len(instance.spoilers), instance.limit)
    if instance.family == DELETE_CANDIDATES:
        return _count_subsets(len(instance.base.candidates) - 1, instance.limit)
    if instance.family == ADD_VOTERS:
        return _count_capped_vectors([g.multiplicity for g in instance.pool], instance.limit)
    if instance.family == DELETE_VOTERS:
        return _count_capped_vectors([g.multiplicity for g in instance.base.ballots], instance.limit)
    if instance.family in (PARTITION_CANDIDATES, RUNOFF_PARTITION_CANDIDATES):
        return 1 << len(instance.base.candidates)
    return math.prod(g.multiplicity + 1 for g in instance.base.ballots)


def replay_witness(instance: ControlInstance, witness: tuple) -> bool:
    """Re-evaluate a witnessed action with plain project/tally calls.

    Independent of solver-internal caching and integer scaling; used to
    validate that yes-outcomes really achieve their goal.
    """
    base = instance.base
    system = instance.system
    family = instance.family
    if family == ADD_CANDIDATES:
        subset = set(instance.registered) | set(witness)
        winner = tally(project(base, subset), system).unique_winner
    elif family == DELETE_CANDIDATES:
        if instance.distinguished in witness:
            raise InvalidInstance("the distinguished candidate is never deletable")
        subset = set(base.candidates) - set(witness)
        winner = tally(project(base, subset), system).unique_winner
    elif family == ADD_VOTERS:
        groups = list(base.ballots)
        for take, g in zip(witness, instance.pool):
            if take:
                groups.append(BallotGroup(g.scores, take))
        winner = tally(Election(base.k, base.candidates, tuple(groups)), system).unique_winner
    elif family == DELETE_VOTERS:
        winner = tally(drop_voters(base, list(witness)), system).unique_winner
    elif family in (PARTITION_CANDIDATES, RUNOFF_PARTITION_CANDIDATES):
        first = set(witness)
        rest = set(base.candidates) - first
        d1 = subelection_survivors(project(base, first), system, instance.tie_model)
        if family == PARTITION_CANDIDATES:
            finalists = d1 | rest
        else:
            d2 = subelection_survivors(project(base, rest), system, instance.tie_model)
            finalists = d1 | d2
        winner = tally(project(base, finalists), system).unique_winner
    else:  # partition-voters
        side1 = take_voters(base, list(witness))
        side2 = drop_voters(base, list(witness))
        d1 = subelection_survivors(side1, system, instance.tie_model)
        d2 = subelection_survivors(side2, system, instance.tie_model)
        winner = tally(project(base, d1 | d2), system).unique_winner
    return _goal_met(instance.goal, instance.distinguished, winner)


def scale_instance(instance: ControlInstance, a: int) -> ControlInstance:
    """Scale the base election (and pool ballots) by ``a``; decisions are invariant."""
    base = scale_election(instance.base, a)
    pool = tuple(
        BallotGroup(tuple(s * a for s in g.scores), g.multiplicity) for g in instance.pool
    )
    return ControlInstance(
        base=base,
        family=instance.family,
        goal=instance.goal,
        system=instance.system,
        distinguished=instance.distinguished,
        tie_model=instance.tie_model,
        limit=instance.limit,
        spoilers=instance.spoilers,
        pool=pool,
    )


def describe(instance: ControlInstance) -> str:
    """Stable one-line label, used in audit reports and CLI output."""
    parts = [instance.goal, instance.family]
    if instance.tie_model:
        parts.append(instance.tie_model)
    parts.append(f"w={instance.distinguished}")
    if instance.limit is not None:
        parts.append(f"limit={instance.limit}")
    parts.append(instance.system)
    return " ".join(parts)
