"""Range-voting elections with exact rational tallies.

A ballot assigns every candidate an integer score in ``[0, k]``.  Two
aggregation systems are supported:

* ``rv`` -- plain range voting; totals are multiplicity-weighted raw sums.
* ``nrv`` -- normalized range voting; before summation each ballot is
  rescaled affinely so that its minimum score becomes 0 and its maximum
  becomes ``k``.  Ballots scoring every candidate equally express no
  preference and are discarded.

All scores and totals are exact rationals (``fractions.Fraction``);
floating point is never used, because downstream search problems decide
winners on margins as small as 2 points among totals in the thousands.

Values are immutable after construction and safe to share across threads;
every operation here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "RV",
    "NRV",
    "SYSTEMS",
    "Score",
    "InvalidElection",
    "BallotGroup",
    "Election",
    "Tally",
    "normalize_ballot",
    "tally",
    "project",
    "scale_election",
    "from_approval",
    "take_voters",
    "drop_voters",
]

RV = "rv"
NRV = "nrv"
SYSTEMS = (RV, NRV)

# Exact rational score value.  Totals and normalized ballot entries are
# always Fractions; raw ballot scores are ints.
Score = Fraction


class InvalidElection(ValueError):
    """Raised when election data violates a structural invariant."""


def _check_system(system: str) -> None:
    if system not in SYSTEMS:
        raise ValueError(f"unknown voting system {system!r}; expected one of {SYSTEMS}")


@dataclass(frozen=True)
class BallotGroup:
    """A block of ``multiplicity`` identical voters.

    ``scores`` is aligned with the owning election's candidate order.
    """

    scores: tuple[int, ...]
    multiplicity: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "scores", tuple(self.scores))
        for s in self.scores:
            if not isinstance(s, int):
                raise InvalidElection(f"ballot scores must be integers, got {s!r}")
            if s < 0:
                raise InvalidElection(f"negative ballot score {s}")
        if not isinstance(self.multiplicity, int) or self.multiplicity < 1:
            raise InvalidElection(f"multiplicity must be a positive integer, got {self.multiplicity!r}")


@dataclass(frozen=True)
class Election:
    """An immutable ``k``-range election.

    Candidate order is the declaration order and fixes ballot column
    order everywhere (files, witnesses, enumeration).  Ballot groups are
    canonicalized on construction: identical score vectors merge by
    summing multiplicities, and groups are stored sorted by score vector
    so that structurally equal elections compare equal.
    """

    k: int
    candidates: tuple[str, ...]
    ballots: tuple[BallotGroup, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise InvalidElection(f"score range k must be a positive integer, got {self.k!r}")
        candidates = tuple(self.candidates)
        seen: set[str] = set()
        for cid in candidates:
            if not isinstance(cid, str) or not cid or any(ch.isspace() for ch in cid):
                raise InvalidElection(f"candidate id must be a nonempty token without whitespace: {cid!r}")
            if cid in seen:
                raise InvalidElection(f"duplicate candidate id {cid!r}")
            seen.add(cid)
        merged: dict[tuple[int, ...], int] = {}
        for group in self.ballots:
            if not isinstance(group, BallotGroup):
                group = BallotGroup(*group)
            if len(group.scores) != len(candidates):
                raise InvalidElection(
                    f"ballot scores {group.scores} do not cover the {len(candidates)} candidates"
                )
            for s in group.scores:
                if s > self.k:
                    raise InvalidElection(f"score {s} exceeds range k={self.k}")
            merged[group.scores] = merged.get(group.scores, 0) + group.multiplicity
        groups = tuple(BallotGroup(vec, mult) for vec, mult in sorted(merged.items()))
        object.__setattr__(self, "candidates", candidates)
        object.__setattr__(self, "ballots", groups)

    @property
    def total_voters(self) -> int:
        return sum(g.multiplicity for g in self.ballots)

    def index(self, candidate: str) -> int:
        try:
            return self.candidates.index(candidate)
        except ValueError:
            raise InvalidElection(f"unknown candidate {candidate!r}") from None

    @classmethod
    def from_rows(
        cls, k: int, candidates: Sequence[str], rows: Iterable[tuple[int, Sequence[int]]]
    ) -> "Election":
        """Build from ``(multiplicity, score-vector)`` rows."""
        groups = [BallotGroup(tuple(scores), mult) for mult, scores in rows]
        return cls(k, tuple(candidates), tuple(groups))

    @classmethod
    def from_maps(
        cls,
        k: int,
        candidates: Sequence[str],
        groups: Iterable[tuple[Mapping[str, int], int]],
        default: int = 0,
    ) -> "Election":
        """Build from ``(candidate->score mapping, multiplicity)`` pairs.

        Candidates missing from a mapping get ``default``; unknown keys
        are an error.
        """
        cands = tuple(candidates)
        known = set(cands)
        rows = []
        for mapping, mult in groups:
            extra = set(mapping) - known
            if extra:
                raise InvalidElection(f"scores for unknown candidates {sorted(extra)}")
            rows.append((mult, tuple(mapping.get(c, default) for c in cands)))
        return cls.from_rows(k, cands, rows)


@dataclass(frozen=True, eq=True)
class Tally:
    """Exact per-candidate totals plus the argmax winner set."""

    totals: dict[str, Fraction]
    winners: frozenset[str] = frozenset()
    unique_winner: str | None = None


def normalize_ballot(
    scores: Sequence[int | Fraction], k: int
) -> tuple[Fraction, ...] | None:
    """Rescale one ballot so its entries span exactly ``[0, k]``.

    Each score ``s`` maps to ``k*(s - lo)/(hi - lo)`` where ``hi``/``lo``
    are the ballot's maximum and minimum.  Returns ``None`` when all
    scores are equal: such a ballot shows no preference and is not
    counted.
    """
    if not scores:
        raise ValueError("cannot normalize an empty ballot")
    hi = max(scores)
    lo = min(scores)
    if lo < 0 or hi > k:
        raise ValueError(f"scores must lie in [0, {k}]: {scores!r}")
    if hi == lo:
        return None
    span = hi - lo
    return tuple(Fraction(k) * (Fraction(s) - lo) / span for s in scores)


def _effective_rows(election: Election, system: str) -> list[tuple[int, tuple[Fraction, ...]]]:
    """Per-group (multiplicity, counted score vector); discarded groups dropped."""
    rows: list[tuple[int, tuple[Fraction, ...]]] = []
    for group in election.ballots:
        if system == RV:
            rows.append((group.multiplicity, tuple(Fraction(s) for s in group.scores)))
        else:
            if not group.scores:
                continue
            norm = normalize_ballot(group.scores, election.k)
            if norm is not None:
                rows.append((group.multiplicity, norm))
    return rows


def tally(election: Election, system: str) -> Tally:
    """Compute exact totals and the winner set under ``rv`` or ``nrv``."""
    _check_system(system)
    totals: dict[str, Fraction] = {c: Fraction(0) for c in election.candidates}
    for mult, row in _effective_rows(election, system):
        for c, s in zip(election.candidates, row):
            totals[c] += s * mult
    if not election.candidates:
        return Tally({}, frozenset(), None)
    best = max(totals.values())
    winners = frozenset(c for c, v in totals.items() if v == best)
    unique = next(iter(winners)) if len(winners) == 1 else None
    return Tally(totals, winners, unique)


def project(election: Election, subset: Iterable[str]) -> Election:
    """Restrict the election to ``subset``, keeping raw integer scores.

    Raw scores are retained on purpose: under NRV, re-normalization over
    the candidates actually present happens at tally time, so projecting
    and then tallying reflects how a subelection would really be scored.
    """
    wanted = set(subset)
    unknown = wanted - set(election.candidates)
    if unknown:
        raise InvalidElection(f"cannot project onto unknown candidates {sorted(unknown)}")
    keep = [i for i, c in enumerate(election.candidates) if c in wanted]
    cands = tuple(election.candidates[i] for i in keep)
    groups = tuple(
        BallotGroup(tuple(g.scores[i] for i in keep), g.multiplicity) for g in election.ballots
    )
    return Election(election.k, cands, groups)


def scale_election(election: Election, a: int) -> Election:
    """Multiply the range and every score by ``a`` (argmax-preserving)."""
    if not isinstance(a, int) or a < 1:
        raise ValueError(f"scale factor must be a positive integer, got {a!r}")
    groups = tuple(
        BallotGroup(tuple(s * a for s in g.scores), g.multiplicity) for g in election.ballots
    )
    return Election(election.k * a, election.candidates, groups)


def from_approval(
    candidates: Sequence[str], groups: Iterable[tuple[Sequence[int], int]]
) -> Election:
    """Embed approval ballots (0/1 vectors with multiplicities) as a 1-range election."""
    rows = []
    for scores, mult in groups:
        vec = tuple(scores)
        for s in vec:
            if s not in (0, 1):
                raise InvalidElection(f"approval scores must be 0 or 1, got {s!r}")
        rows.append((mult, vec))
    return Election.from_rows(1, candidates, rows)


def take_voters(election: Election, counts: Sequence[int]) -> Election:
    """Keep ``counts[i]`` voters from ballot group ``i`` (0 drops the group)."""
    if len(counts) != len(election.ballots):
        raise ValueError(
            f"expected {len(election.ballots)} per-group counts, got {len(counts)}"
        )
    groups = []
    for group, take in zip(election.ballots, counts):
        if take < 0 or take > group.multiplicity:
            raise ValueError(f"count {take} outside [0, {group.multiplicity}]")
        if take:
            groups.append(BallotGroup(group.scores, take))
    return Election(election.k, election.candidates, tuple(groups))


def drop_voters(election: Election, counts: Sequence[int]) -> Election:
    """Complement of :func:`take_voters`: remove ``counts[i]`` voters per group."""
    if len(counts) != len(election.ballots):
        raise ValueError(
            f"expected {len(election.ballots)} per-group counts, got {len(counts)}"
        )
    return take_voters(
        election, [g.multiplicity - c for g, c in zip(election.ballots, counts)]
    )
