"""Instance generation, gadget-vs-oracle audits, and deterministic reports.

An audit sweeps a family of source instances (exhaustively within
bounds, or seeded-randomly), builds the gadget for each, decides the
emitted control instances with the exhaustive solvers, asks the
independent oracle the source question, evaluates every attached score
assertion, and records agreements and counterexamples.

Two kinds of failure are kept apart on purpose: the gadget's claim
(solver answer vs oracle answer, or a one-direction replay) and the
stated intermediate score formulas.  A gadget can pass equivalence
while a stated total deviates; both facts are reported independently --
the agreement flag and counterexample list track the claim, the
identity-failure list tracks the formulas.  ``MUST_PASS_IDENTITIES``
names the gadgets whose identity-failure list is expected to be empty.

Reports are pure functions of (spec, seed): records are assembled in
enumeration order and serialized with a canonical text and a JSONL
rendering, so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import control as ctl
from .control import ControlInstance, ControlOutcome, describe, solve
from .elections import NRV, BallotGroup, Election, project, take_voters, tally
from .gadgets import (
    GadgetError,
    GadgetOutput,
    HittingSetInstance,
    ScoreIdentity,
    X3CInstance,
    delete_constructive_subelection_identities,
    destructive_partition_subelection_identities,
    gadget_deletion_to_candidate_partition,
    gadget_hs_candidates,
    gadget_hs_delete_constructive,
    gadget_hs_destructive_candidate_partition,
    gadget_rhs_voter_partition_tp,
    gadget_x3c_voter_partition_te,
    tp_explicit_partition,
    x3c_cover_side,
)
from .oracles import OracleResult, solve_hitting_set, solve_x3c

__all__ = [
    "GADGET_NAMES",
    "DEFAULT_CHECKS",
    "AuditSpec",
    "IdentityResult",
    "InstanceRecord",
    "AuditReport",
    "gen_random_hs",
    "gen_random_x3c",
    "gen_random_election",
    "gen_random_control_instance",
    "exhaustive_hs_instances",
    "exhaustive_x3c_instances",
    "check_score_identities",
    "evaluate_identity",
    "audit_gadget",
    "replay_instance",
    "encode_hs",
    "decode_hs",
    "encode_x3c",
    "decode_x3c",
    "encode_deletion_source",
    "decode_deletion_source",
    "render_text",
    "render_jsonl",
]

GADGET_NAMES = (
    "hs-candidates",
    "hs-delete-constructive",
    "rhs-voter-partition-tp",
    "x3c-voter-partition-te",
    "deletion-to-candidate-partition",
    "hs-destructive-candidate-partition",
)

DEFAULT_CHECKS = {
    "hs-candidates": ("equivalence", "identities"),
    "hs-delete-constructive": ("equivalence", "identities"),
    "rhs-voter-partition-tp": ("identities", "one-direction"),
    "x3c-voter-partition-te": ("equivalence", "identities", "final-round"),
    "deletion-to-candidate-partition": ("equivalence", "identities"),
    "hs-destructive-candidate-partition": ("equivalence", "identities"),
}

# gadgets whose score assertions are hard requirements: their audits are
# expected to show an empty identity-failure list (the remaining gadgets'
# assertions are soft and their failures are merely recorded)
MUST_PASS_IDENTITIES = frozenset(
    {"hs-candidates", "rhs-voter-partition-tp", "hs-destructive-candidate-partition"}
)


@dataclass(frozen=True)
class AuditSpec:
    """What to audit and over which instance family.

    Exhaustive mode sweeps (n, m, k) / (k, set-count) bounds in
    ascending order; random mode draws ``trials`` instances from the
    same bounds with a deterministic per-trial seed.  For the
    deletion-to-candidate-partition gadget the source family is random
    elections shaped by the ``source_*`` fields.
    """

    gadget: str
    mode: str = "exhaustive"  # or "random"
    n: tuple[int, int] = (1, 3)
    m: tuple[int, int] = (1, 2)
    k: tuple[int, int] = (1, 1)
    sets: tuple[int, int] = (1, 2)
    trials: int = 0
    seed: int = 0
    budget: int | None = None
    checks: tuple[str, ...] = ()
    isomorphism_free: bool = True
    source_candidates: tuple[int, int] = (2, 4)
    source_groups: tuple[int, int] = (1, 4)
    source_limit: tuple[int, int] = (1, 2)

    def __post_init__(self) -> None:
        if self.gadget not in GADGET_NAMES:
            raise ValueError(f"unknown gadget {self.gadget!r}")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown audit mode {self.mode!r}")
        if not self.checks:
            object.__setattr__(self, "checks", DEFAULT_CHECKS[self.gadget])


@dataclass(frozen=True)
class IdentityResult:
    label: str
    relation: str
    expected: str
    computed: str
    passed: bool


@dataclass(frozen=True)
class InstanceRecord:
    index: int
    encoding: str
    oracle: str
    oracle_witness: str
    solver: tuple[tuple[str, str], ...]
    identities: tuple[IdentityResult, ...]
    notes: tuple[str, ...]
    status: str  # "agree" | "disagree" | "budget-exceeded"
    explored: int


@dataclass(frozen=True)
class AuditReport:
    spec: AuditSpec
    records: tuple[InstanceRecord, ...]
    agreement: bool
    counterexamples: tuple[int, ...] = ()
    identity_failures: tuple[int, ...] = ()
    budget_exceeded: tuple[int, ...] = ()


# ---------------------------------------------------------------------------
# deterministic random generators

def _rng(*parts) -> random.Random:
    return random.Random(":".join(str(p) for p in parts))


def gen_random_hs(
    n: int, m: int, k: int, seed: int, restricted: bool = False
) -> HittingSetInstance:
    """Uniformly sampled family of m nonempty subsets of an n-universe."""
    if restricted and m * (k + 1) + 3 > n - k:
        raise ValueError(
            f"no restricted instance exists for n={n}, m={m}, k={k}"
        )
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    rng = _rng("hs", seed)
    universe = tuple(f"b{i + 1}" for i in range(n))
    sets = []
    for _ in range(m):
        mask = rng.randrange(1, 1 << n)
        sets.append(tuple(universe[i] for i in range(n) if mask >> i & 1))
    return HittingSetInstance(universe, tuple(sets), k)


def gen_random_x3c(
    k: int, set_count: int, seed: int, planted: bool | None = None
) -> X3CInstance:
    """Random exact-cover instance over 3k elements.

    With ``planted=None`` a seeded coin decides whether an exact cover
    is planted, so both answers occur; unplanted instances may still
    contain a cover by accident.
    """
    if set_count < k:
        raise ValueError(f"need at least k={k} sets, got {set_count}")
    rng = _rng("x3c", seed)
    elements = tuple(f"b{i + 1}" for i in range(3 * k))
    if planted is None:
        planted = rng.random() < 0.5
    if planted:
        perm = list(elements)
        rng.shuffle(perm)
        sets = [tuple(perm[3 * i: 3 * i + 3]) for i in range(k)]
        while len(sets) < set_count:
            sets.append(tuple(rng.sample(elements, 3)))
        rng.shuffle(sets)
        return X3CInstance(elements, tuple(tuple(s) for s in sets))
    for _ in range(1000):
        sets = [tuple(rng.sample(elements, 3)) for _ in range(set_count)]
        if set(itertools.chain.from_iterable(sets)) == set(elements):
            return X3CInstance(elements, tuple(sets))
    raise ValueError(f"could not cover {3 * k} elements with {set_count} random sets")


def gen_random_election(
    seed: int,
    max_candidates: int = 5,
    max_groups: int = 6,
    max_k: int = 4,
    max_multiplicity: int = 4,
    k: int | None = None,
    zero_one: bool = False,
) -> Election:
    """Small random election; deterministic per seed."""
    rng = _rng("election", seed)
    n_cands = rng.randint(1, max_candidates)
    cands = tuple(f"c{i + 1}" for i in range(n_cands))
    rng_k = 1 if zero_one else (k if k is not None else rng.randint(1, max_k))
    rows = []
    for _ in range(rng.randint(0, max_groups)):
        hi = 1 if zero_one else rng_k
        scores = tuple(rng.randint(0, hi) for _ in cands)
        rows.append((rng.randint(1, max_multiplicity), scores))
    return Election.from_rows(rng_k, cands, rows)


def gen_random_control_instance(seed: int, max_actions: int = 30000) -> ControlInstance:
    """Random control instance with a bounded exhaustive search space."""
    for attempt in range(200):
        rng = _rng("instance", seed, attempt)
        family = rng.choice(ctl.FAMILIES)
        compact = family == ctl.PARTITION_VOTERS
        base = gen_random_election(
            rng.randrange(1 << 30),
            max_candidates=3 if compact else 4,
            max_groups=3 if compact else 4,
            max_k=3,
            max_multiplicity=2 if compact else 3,
        )
        if not base.ballots and family in (ctl.DELETE_VOTERS, ctl.PARTITION_VOTERS):
            continue
        goal = rng.choice((ctl.CONSTRUCTIVE, ctl.DESTRUCTIVE))
        system = rng.choice((ctl.RV, ctl.NRV))
        cands = base.candidates
        distinguished = rng.choice(cands)
        kwargs = {}
        if family in (ctl.PARTITION_CANDIDATES, ctl.RUNOFF_PARTITION_CANDIDATES, ctl.PARTITION_VOTERS):
            kwargs["tie_model"] = rng.choice((ctl.TIES_PROMOTE, ctl.TIES_ELIMINATE))
        else:
            kwargs["limit"] = rng.randint(1, 2)
        if family == ctl.ADD_CANDIDATES:
            others = [c for c in cands if c != distinguished]
            rng.shuffle(others)
            kwargs["spoilers"] = tuple(sorted(others[: rng.randint(0, len(others))]))
        if family == ctl.ADD_VOTERS:
            pool = []
            for _ in range(rng.randint(0, 2)):
                scores = tuple(rng.randint(0, base.k) for _ in cands)
                pool.append(BallotGroup(scores, rng.randint(1, 2)))
            kwargs["pool"] = tuple(pool)
        try:
            instance = ControlInstance(
                base=base, family=family, goal=goal, system=system,
                distinguished=distinguished, **kwargs,
            )
        except ctl.InvalidInstance:
            continue
        if ctl.search_space(instance) <= max_actions:
            return instance
    raise ValueError(f"could not build a bounded random instance for seed {seed}")


# ---------------------------------------------------------------------------
# exhaustive instance enumeration (ordered by n, m, k, then family)

def _canonical_family(masks: tuple[int, ...], n: int) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(n)):
        permuted = []
        for mask in masks:
            pm = 0
            for i in range(n):
                if mask >> i & 1:
                    pm |= 1 << perm[i]
            permuted.append(pm)
        cand = tuple(sorted(permuted))
        if best is None or cand < best:
            best = cand
    return best


def exhaustive_hs_instances(
    n_range: tuple[int, int],
    m_range: tuple[int, int],
    k_range: tuple[int, int],
    isomorphism_free: bool = True,
) -> Iterator[HittingSetInstance]:
    """All hitting-set instances within bounds, ascending by (n, m, k, family)."""
    for n in range(max(1, n_range[0]), n_range[1] + 1):
        universe = tuple(f"b{i + 1}" for i in range(n))
        nonempty = range(1, 1 << n)
        for m in range(max(1, m_range[0]), m_range[1] + 1):
            for family in itertools.combinations_with_replacement(nonempty, m):
                if isomorphism_free and _canonical_family(family, n) != tuple(sorted(family)):
                    continue
                sets = tuple(
                    tuple(universe[i] for i in range(n) if mask >> i & 1) for mask in family
                )
                for k in range(max(1, k_range[0]), min(k_range[1], n) + 1):
                    yield HittingSetInstance(universe, sets, k)


def exhaustive_x3c_instances(
    k_range: tuple[int, int],
    set_range: tuple[int, int],
    isomorphism_free: bool = True,
) -> Iterator[X3CInstance]:
    """All exact-cover instances within bounds, ascending by (k, |S|, family)."""
    for k in range(max(1, k_range[0]), k_range[1] + 1):
        elements = tuple(f"b{i + 1}" for i in range(3 * k))
        triples = list(itertools.combinations(range(3 * k), 3))
        masks = {t: (1 << t[0]) | (1 << t[1]) | (1 << t[2]) for t in triples}
        full = (1 << (3 * k)) - 1
        for count in range(max(k, set_range[0]), set_range[1] + 1):
            for family in itertools.combinations_with_replacement(triples, count):
                union = 0
                for t in family:
                    union |= masks[t]
                if union != full:
                    continue
                fam_masks = tuple(masks[t] for t in family)
                if isomorphism_free and _canonical_family(fam_masks, 3 * k) != tuple(sorted(fam_masks)):
                    continue
                sets = tuple(tuple(elements[i] for i in t) for t in family)
                yield X3CInstance(elements, sets)


# ---------------------------------------------------------------------------
# identity evaluation

def evaluate_identity(
    election: Election, system: str, identity: ScoreIdentity
) -> IdentityResult:
    """Evaluate one score assertion by exact tally of the named subelection."""
    sub = election
    if identity.voter_counts is not None:
        sub = take_voters(sub, identity.voter_counts)
    if identity.candidates is not None:
        sub = project(sub, identity.candidates)
    totals = tally(sub, system).totals
    value = totals[identity.candidate]
    for other in identity.subtract:
        value -= totals[other]
    if identity.subtract_max_of:
        value -= max(totals[c] for c in identity.subtract_max_of)
    if identity.relation == "==":
        passed = value == identity.expected
    elif identity.relation == "<=":
        passed = value <= identity.expected
    else:
        passed = value >= identity.expected
    return IdentityResult(
        identity.label, identity.relation, str(identity.expected), str(value), passed
    )


def check_score_identities(gadget: GadgetOutput) -> tuple[IdentityResult, ...]:
    """Evaluate every attached assertion on the constructed election."""
    return tuple(
        evaluate_identity(gadget.election, gadget.system, ident)
        for ident in gadget.identities
    )


# ---------------------------------------------------------------------------
# instance encodings (single line, replayable)

def encode_hs(hs: HittingSetInstance) -> str:
    sets = ";".join(",".join(s) for s in hs.sets)
    return f"hs k={hs.k} B={','.join(hs.universe)} S={sets}"


def decode_hs(text: str) -> HittingSetInstance:
    fields = _decode_fields(text, "hs")
    universe = tuple(fields["B"].split(","))
    sets = tuple(tuple(part.split(",")) for part in fields["S"].split(";"))
    return HittingSetInstance(universe, sets, int(fields["k"]))


def encode_x3c(x3c: X3CInstance) -> str:
    sets = ";".join(",".join(s) for s in x3c.sets)
    return f"x3c B={','.join(x3c.elements)} S={sets}"


def decode_x3c(text: str) -> X3CInstance:
    fields = _decode_fields(text, "x3c")
    elements = tuple(fields["B"].split(","))
    sets = tuple(tuple(part.split(",")) for part in fields["S"].split(";"))
    return X3CInstance(elements, sets)


def encode_deletion_source(source: Election, w: str, limit: int) -> str:
    ballots = ";".join(
        f"{g.multiplicity}|{'.'.join(str(s) for s in g.scores)}" for g in source.ballots
    )
    return (
        f"del-src k={source.k} cands={','.join(source.candidates)} "
        f"ballots={ballots} w={w} limit={limit}"
    )


def decode_deletion_source(text: str) -> tuple[Election, str, int]:
    fields = _decode_fields(text, "del-src")
    cands = tuple(fields["cands"].split(","))
    rows = []
    if fields["ballots"]:
        for part in fields["ballots"].split(";"):
            mult, scores = part.split("|")
            rows.append((int(mult), tuple(int(s) for s in scores.split(".")) if scores else ()))
    election = Election.from_rows(int(fields["k"]), cands, rows)
    return election, fields["w"], int(fields["limit"])


def _decode_fields(text: str, tag: str) -> dict[str, str]:
    parts = text.split()
    if not parts or parts[0] != tag:
        raise ValueError(f"expected a {tag!r} encoding, got {text!r}")
    out: dict[str, str] = {}
    for part in parts[1:]:
        key, _, value = part.partition("=")
        out[key] = value
    return out


# ---------------------------------------------------------------------------
# per-gadget audit logic

def _solver_answer(outcome: ControlOutcome) -> str:
    if outcome.decision is None:
        return "budget-exceeded"
    return "yes" if outcome.decision else "no"


def _pad_hitting_set(hs: HittingSetInstance, witness: Sequence[str], size: int) -> tuple[str, ...]:
    chosen = list(witness)
    have = set(chosen)
    for e in hs.universe:
        if len(chosen) >= size:
            break
        if e not in have:
            chosen.append(e)
    return tuple(chosen)


def _audit_hs_common(
    builder: Callable[[HittingSetInstance], GadgetOutput],
    hs: HittingSetInstance,
    budget: int | None,
    checks: Sequence[str],
    extra_identities: Callable[[HittingSetInstance, OracleResult], tuple[ScoreIdentity, ...]] | None,
) -> tuple[str, str, list, list, list, str, int]:
    gadget = builder(hs)
    oracle = solve_hitting_set(hs)
    solver: list[tuple[str, str]] = []
    explored = 0
    disagree = False
    budget_hit = False
    if "equivalence" in checks:
        for instance in gadget.instances:
            outcome = solve(instance, budget=budget)
            explored += outcome.explored
            solver.append((describe(instance), _solver_answer(outcome)))
            if outcome.decision is None:
                budget_hit = True
            elif outcome.decision != oracle.decision:
                disagree = True
    identities: list[IdentityResult] = []
    if "identities" in checks:
        identities.extend(check_score_identities(gadget))
        if extra_identities is not None and oracle.decision:
            for ident in extra_identities(hs, oracle):
                identities.append(evaluate_identity(gadget.election, gadget.system, ident))
    notes: list[str] = []
    if budget_hit:
        status = "budget-exceeded"
    elif disagree:
        status = "disagree"
    else:
        status = "agree"
    return (
        "yes" if oracle.decision else "no",
        " ".join(oracle.witness),
        solver,
        identities,
        notes,
        status,
        explored,
    )


def _audit_hs_candidates(hs, budget, checks):
    return _audit_hs_common(gadget_hs_candidates, hs, budget, checks, None)


def _audit_hs_delete(hs, budget, checks):
    def extras(hs_in, oracle):
        padded = _pad_hitting_set(hs_in, oracle.witness, hs_in.k)
        return delete_constructive_subelection_identities(hs_in, padded)

    return _audit_hs_common(gadget_hs_delete_constructive, hs, budget, checks, extras)


def _audit_hs_destructive_partition(hs, budget, checks):
    def extras(hs_in, oracle):
        return destructive_partition_subelection_identities(hs_in, oracle.witness)

    return _audit_hs_common(
        gadget_hs_destructive_candidate_partition, hs, budget, checks, extras
    )


def _audit_rhs_tp(hs: HittingSetInstance, budget, checks):
    gadget = gadget_rhs_voter_partition_tp(hs)
    oracle = solve_hitting_set(hs)
    identities: list[IdentityResult] = []
    disagree = False
    if "identities" in checks:
        identities.extend(check_score_identities(gadget))
    notes: list[str] = []
    if "one-direction" in checks:
        if oracle.decision:
            instance = gadget.instances[0]
            counts = tp_explicit_partition(gadget, hs, oracle.witness)
            ok = ctl.replay_witness(instance, counts)
            notes.append(
                "one-direction: explicit partition "
                + ("denies c unique victory" if ok else "FAILED to deny c unique victory")
            )
            if not ok:
                disagree = True
        else:
            notes.append("one-direction: vacuous (no hitting set within budget)")
    status = "disagree" if disagree else "agree"
    return (
        "yes" if oracle.decision else "no",
        " ".join(oracle.witness),
        [],
        identities,
        notes,
        status,
        0,
    )


def _audit_x3c(x3c: X3CInstance, budget, checks):
    gadget = gadget_x3c_voter_partition_te(x3c)
    oracle = solve_x3c(x3c)
    solver: list[tuple[str, str]] = []
    explored = 0
    disagree = False
    budget_hit = False
    if "equivalence" in checks:
        instance = gadget.instances[0]
        outcome = solve(instance, budget=budget)
        explored += outcome.explored
        solver.append((describe(instance), _solver_answer(outcome)))
        if outcome.decision is None:
            budget_hit = True
        elif outcome.decision != oracle.decision:
            disagree = True
    identities: list[IdentityResult] = []
    notes: list[str] = []
    if "identities" in checks and oracle.decision:
        _, cover_idents = x3c_cover_side(gadget, x3c, oracle.witness)
        for ident in cover_idents:
            identities.append(evaluate_identity(gadget.election, gadget.system, ident))
    if "final-round" in checks:
        n = len(x3c.sets)
        k = x3c.k
        extras = [c for c in gadget.election.candidates if c not in x3c.elements]
        c_id, w_id = extras  # declaration order: ... c, w
        final = tally(project(gadget.election, (c_id, w_id)), gadget.system)
        c_total = final.totals[c_id]
        stated = Fraction(12 * n + 14 * k - 2)
        recomputed = Fraction(12 * n + 12 * k)
        if c_total == stated == recomputed:
            which = "both"
        elif c_total == stated:
            which = "stated"
        elif c_total == recomputed:
            which = "recomputed"
        else:
            which = "neither"
        notes.append(
            f"final-round c total {c_total}; stated 12n+14k-2={stated}; "
            f"recomputed 12n+12k={recomputed}; matches={which}"
        )
    if budget_hit:
        status = "budget-exceeded"
    elif disagree:
        status = "disagree"
    else:
        status = "agree"
    witness = " | ".join(",".join(s) for s in oracle.witness) if oracle.decision else ""
    return (
        "yes" if oracle.decision else "no",
        witness,
        solver,
        identities,
        notes,
        status,
        explored,
    )


def _audit_deletion_source(source: Election, w: str, limit: int, budget, checks):
    gadget = gadget_deletion_to_candidate_partition(source, w, limit)
    deletion = ControlInstance(
        base=source, family=ctl.DELETE_CANDIDATES, goal=ctl.CONSTRUCTIVE,
        system=NRV, distinguished=w, limit=limit,
    )
    source_outcome = solve(deletion, budget=budget)
    explored = source_outcome.explored
    disagree = False
    budget_hit = source_outcome.decision is None
    solver: list[tuple[str, str]] = []
    if "equivalence" in checks and not budget_hit:
        for instance in gadget.instances:
            outcome = solve(instance, budget=budget)
            explored += outcome.explored
            solver.append((describe(instance), _solver_answer(outcome)))
            if outcome.decision is None:
                budget_hit = True
            elif outcome.decision != source_outcome.decision:
                disagree = True
    identities: list[IdentityResult] = []
    if "identities" in checks:
        identities.extend(check_score_identities(gadget))
    notes = [f"source deletion answer: {_solver_answer(source_outcome)}"]
    if budget_hit:
        status = "budget-exceeded"
    elif disagree:
        status = "disagree"
    else:
        status = "agree"
    oracle = _solver_answer(source_outcome)
    witness = " ".join(source_outcome.witness) if source_outcome.decision else ""
    return oracle, witness, solver, identities, notes, status, explored


def _audit_one(
    gadget_name: str, encoding: str, budget: int | None, checks: Sequence[str]
) -> tuple:
    if gadget_name == "hs-candidates":
        return _audit_hs_candidates(decode_hs(encoding), budget, checks)
    if gadget_name == "hs-delete-constructive":
        return _audit_hs_delete(decode_hs(encoding), budget, checks)
    if gadget_name == "rhs-voter-partition-tp":
        return _audit_rhs_tp(decode_hs(encoding), budget, checks)
    if gadget_name == "x3c-voter-partition-te":
        return _audit_x3c(decode_x3c(encoding), budget, checks)
    if gadget_name == "hs-destructive-candidate-partition":
        return _audit_hs_destructive_partition(decode_hs(encoding), budget, checks)
    if gadget_name == "deletion-to-candidate-partition":
        source, w, limit = decode_deletion_source(encoding)
        return _audit_deletion_source(source, w, limit, budget, checks)
    raise ValueError(f"unknown gadget {gadget_name!r}")


def replay_instance(
    gadget_name: str,
    encoding: str,
    budget: int | None = None,
    checks: Sequence[str] | None = None,
) -> InstanceRecord:
    """Re-run one audited instance from its report encoding."""
    if checks is None:
        checks = DEFAULT_CHECKS[gadget_name]
    oracle, witness, solver, identities, notes, status, explored = _audit_one(
        gadget_name, encoding, budget, checks
    )
    return InstanceRecord(
        0, encoding, oracle, witness, tuple(solver), tuple(identities),
        tuple(notes), status, explored,
    )


# ---------------------------------------------------------------------------
# audit driver

def _spec_encodings(spec: AuditSpec) -> Iterator[str]:
    gadget = spec.gadget
    if gadget == "deletion-to-candidate-partition":
        if spec.mode != "random":
            raise ValueError("the deletion gadget audit samples random source elections")
        for trial in range(spec.trials):
            yield _random_deletion_encoding(spec, trial)
        return
    if spec.mode == "exhaustive":
        if gadget == "x3c-voter-partition-te":
            for x3c in exhaustive_x3c_instances(spec.k, spec.sets, spec.isomorphism_free):
                yield encode_x3c(x3c)
        else:
            for hs in exhaustive_hs_instances(spec.n, spec.m, spec.k, spec.isomorphism_free):
                if _meets_preconditions(gadget, hs):
                    yield encode_hs(hs)
        return
    for trial in range(spec.trials):
        if gadget == "x3c-voter-partition-te":
            rng = _rng("audit", spec.seed, trial)
            k = rng.randint(*spec.k)
            count = rng.randint(max(k, spec.sets[0]), max(k, spec.sets[1]))
            yield encode_x3c(gen_random_x3c(k, count, rng.randrange(1 << 30)))
        else:
            yield _random_hs_encoding(spec, trial)


def _meets_preconditions(gadget: str, hs: HittingSetInstance) -> bool:
    try:
        if gadget == "hs-candidates":
            gadget_hs_candidates(hs)
        elif gadget == "hs-delete-constructive":
            gadget_hs_delete_constructive(hs)
        elif gadget == "rhs-voter-partition-tp":
            gadget_rhs_voter_partition_tp(hs)
        elif gadget == "hs-destructive-candidate-partition":
            gadget_hs_destructive_candidate_partition(hs)
        return True
    except GadgetError:
        return False


def _random_hs_encoding(spec: AuditSpec, trial: int) -> str:
    for attempt in range(500):
        rng = _rng("audit", spec.seed, trial, attempt)
        n = rng.randint(*spec.n)
        m = rng.randint(*spec.m)
        k = rng.randint(spec.k[0], min(spec.k[1], n))
        try:
            hs = gen_random_hs(n, m, k, rng.randrange(1 << 30))
        except ValueError:
            continue
        if _meets_preconditions(spec.gadget, hs):
            return encode_hs(hs)
    raise ValueError(f"could not sample a valid instance for {spec.gadget}")


def _random_deletion_encoding(spec: AuditSpec, trial: int) -> str:
    for attempt in range(500):
        rng = _rng("audit", spec.seed, trial, attempt)
        n_cands = rng.randint(*spec.source_candidates)
        source = gen_random_election(
            rng.randrange(1 << 30),
            max_candidates=n_cands,
            max_groups=spec.source_groups[1],
            k=2,
            max_multiplicity=3,
        )
        if len(source.candidates) < 2:
            continue
        w = rng.choice(source.candidates)
        limit = rng.randint(
            spec.source_limit[0],
            min(spec.source_limit[1], len(source.candidates) - 1),
        )
        return encode_deletion_source(source, w, limit)
    raise ValueError("could not sample a deletion source")


def audit_gadget(spec: AuditSpec) -> AuditReport:
    """Run the audit described by ``spec`` and assemble a deterministic report."""
    records: list[InstanceRecord] = []
    for index, encoding in enumerate(_spec_encodings(spec)):
        oracle, witness, solver, identities, notes, status, explored = _audit_one(
            spec.gadget, encoding, spec.budget, spec.checks
        )
        records.append(
            InstanceRecord(
                index, encoding, oracle, witness, tuple(solver), tuple(identities),
                tuple(notes), status, explored,
            )
        )
    counterexamples = tuple(r.index for r in records if r.status == "disagree")
    identity_failures = tuple(
        r.index for r in records if any(not i.passed for i in r.identities)
    )
    budget_exceeded = tuple(r.index for r in records if r.status == "budget-exceeded")
    agreement = not counterexamples
    return AuditReport(
        spec, tuple(records), agreement, counterexamples, identity_failures, budget_exceeded
    )


# ---------------------------------------------------------------------------
# rendering

def _spec_header(spec: AuditSpec) -> list[str]:
    fields = [
        ("gadget", spec.gadget),
        ("mode", spec.mode),
        ("n", f"{spec.n[0]}..{spec.n[1]}"),
        ("m", f"{spec.m[0]}..{spec.m[1]}"),
        ("k", f"{spec.k[0]}..{spec.k[1]}"),
        ("sets", f"{spec.sets[0]}..{spec.sets[1]}"),
        ("trials", spec.trials),
        ("seed", spec.seed),
        ("budget", spec.budget if spec.budget is not None else "none"),
        ("checks", ",".join(spec.checks)),
        ("isomorphism-free", str(spec.isomorphism_free).lower()),
    ]
    return [f"{key}: {value}" for key, value in fields]


def render_text(report: AuditReport) -> str:
    """Line-oriented report; identical (spec, seed) gives identical bytes."""
    lines = ["# gadget audit report"]
    lines.extend(_spec_header(report.spec))
    lines.append(f"instances: {len(report.records)}")
    lines.append(f"agreement: {str(report.agreement).lower()}")
    lines.append(f"counterexamples: {' '.join(str(i) for i in report.counterexamples) or '-'}")
    lines.append(f"identity-failures: {' '.join(str(i) for i in report.identity_failures) or '-'}")
    lines.append(f"budget-exceeded: {' '.join(str(i) for i in report.budget_exceeded) or '-'}")
    lines.append("")
    for r in report.records:
        lines.append(f"[{r.index}] {r.encoding}")
        lines.append(f"  status: {r.status}  oracle: {r.oracle}"
                     + (f"  witness: {r.oracle_witness}" if r.oracle_witness else ""))
        for label, answer in r.solver:
            lines.append(f"  solver: {label} -> {answer}")
        for ident in r.identities:
            verdict = "ok" if ident.passed else "FAIL"
            lines.append(
                f"  identity [{verdict}] {ident.label}: computed {ident.computed} "
                f"{ident.relation} expected {ident.expected}"
            )
        for note in r.notes:
            lines.append(f"  note: {note}")
        lines.append(f"  explored: {r.explored}")
    return "\n".join(lines) + "\n"


def render_jsonl(report: AuditReport) -> str:
    """One JSON object per instance plus a trailing summary object."""
    lines = []
    for r in report.records:
        lines.append(json.dumps({
            "index": r.index,
            "gadget": report.spec.gadget,
            "instance": r.encoding,
            "oracle": r.oracle,
            "oracle_witness": r.oracle_witness,
            "solver": [[label, answer] for label, answer in r.solver],
            "identities": [
                {
                    "label": i.label,
                    "relation": i.relation,
                    "expected": i.expected,
                    "computed": i.computed,
                    "passed": i.passed,
                }
                for i in r.identities
            ],
            "notes": list(r.notes),
            "status": r.status,
            "explored": r.explored,
        }, sort_keys=True))
    lines.append(json.dumps({
        "summary": {
            "gadget": report.spec.gadget,
            "seed": report.spec.seed,
            "instances": len(report.records),
            "agreement": report.agreement,
            "counterexamples": list(report.counterexamples),
            "identity_failures": list(report.identity_failures),
            "budget_exceeded": list(report.budget_exceeded),
        }
    }, sort_keys=True))
    return "\n".join(lines) + "\n"
