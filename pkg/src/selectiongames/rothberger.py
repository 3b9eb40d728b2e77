"""The single-selection game theorem: one pick per family from families that
cover infinitely often, and the joint-refinement reduction to the
finite-selection game.

`distinct_intersections` builds, from a sequence of finite families, the
cover of all n-fold intersections of sets drawn from n distinct families.
`select_one_per_family` applies a single-selection witness to those covers
and unpacks each selected intersection into an assignment of one member to
one previously unassigned source family; remaining families receive their
first member, so exactly one member is chosen from every family and the
chosen members cover the working horizon.

`menger_from_rothberger` derives a finite-selection strategy from a
single-selection strategy tree: after the opponent's finite selections have
pinned down a bound sequence sigma, the derived move is the joint refinement
of the covers at all nodes coordinatewise below sigma. The refinement is
enumerated diagonally — its n-th member is the intersection of the n-th
members of the distinct node covers on the box — so each member carries the
factor record j = n for every node, recoveries stay bookkeeping, and the
enumeration is a cover whenever the node covers are increasing (the witness
is the max of the factor witnesses, rescanned a little for safety).

`rothberger_counterplay` composes the pieces: play the infinitely-often
counterplay against the derived strategy, pick one refinement member per
inning, and read off the single-selection play whose n-th pick is the
recorded factor of the n-th picked member at the node the recovered indices
name.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .covers import FiniteSelection, IndexedCover, witness_of
from .engine import (
    AliceStrategy,
    History,
    ROTHBERGER_GAME,
    Transcript,
    make_inning,
)
from .errors import BudgetError, GameError, IntegrityError
from .spaces import FiniteIntersection, OpenSet, Point, SpaceModel, member
from .trees import Path, TreeStrategy, distinct_covers_on_box

SoneSelector = Callable[[SpaceModel, Callable[[int], IndexedCover]], Iterator[int]]


@dataclass(frozen=True)
class IntersectionRecord:
    """Which member of which source family each factor of an intersection
    came from (family indices strictly increasing)."""

    factors: tuple[tuple[int, int], ...]  # (family index, member index) pairs


def _symmetric_sums(values: Sequence[int], k: int) -> list[int]:
    """Elementary symmetric polynomials e_0..e_k of the given values."""
    e = [1] + [0] * k
    for v in values:
        for i in range(min(k, len(e) - 1), 0, -1):
            e[i] += e[i - 1] * v
    return e


def distinct_intersections(
    families: Callable[[int], Sequence[OpenSet]],
    n: int,
    family_limit: int = 200,
) -> tuple[IndexedCover, Callable[[int], IntersectionRecord]]:
    """The cover of n-fold intersections over n distinct families.

    Members are enumerated by increasing largest family index, then
    lexicographically in the family-index tuple, then lexicographically in
    the member choices; each member records its factors. Ranks are computed
    arithmetically (block sizes are elementary symmetric sums of the family
    sizes), so both member lookup and the witness work at any index without
    materializing the enumeration. The witness takes the first n distinct
    families whose listed members contain the point — they exist when the
    point is covered infinitely often — and returns the exact rank of that
    combination, raising :class:`BudgetError` past `family_limit` families.
    """
    if n < 1:
        raise ValueError("intersection arity must be positive")

    fam_cache: dict[int, Sequence[OpenSet]] = {}

    def fam(i: int) -> Sequence[OpenSet]:
        if i > family_limit:
            raise BudgetError(f"intersection enumeration passed family {family_limit}")
        hit = fam_cache.get(i)
        if hit is None:
            hit = fam_cache[i] = tuple(families(i))
            if not hit:
                raise ValueError(f"family {i} is empty")
        return hit

    def size(i: int) -> int:
        return len(fam(i))

    def block(bound: int) -> int:
        # members whose largest family index is exactly `bound`
        head_sizes = [size(i) for i in range(1, bound)]
        return size(bound) * _symmetric_sums(head_sizes, n - 1)[n - 1]

    def unrank(j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        rest = j - 1
        bound = n
        while True:
            b = block(bound)
            if rest < b:
                break
            rest -= b
            bound += 1
        # fix the head combination lexicographically
        head: list[int] = []
        lo = 1
        for pos in range(n - 1):
            need = n - 2 - pos  # head entries still to choose after this one
            a = lo
            while True:
                suffix = [size(i) for i in range(a + 1, bound)]
                cnt = size(a) * _symmetric_sums(suffix, need)[need] * size(bound)
                for h in head:
                    cnt *= size(h)
                if rest < cnt:
                    break
                rest -= cnt
                a += 1
            head.append(a)
            lo = a + 1
        fams = tuple(head) + (bound,)
        # mixed-radix decomposition of the member choices (last varies fastest)
        radices = [size(i) for i in fams]
        choices = [0] * n
        for pos in range(n - 1, -1, -1):
            choices[pos] = rest % radices[pos] + 1
            rest //= radices[pos]
        return fams, tuple(choices)

    def rank(fams: Sequence[int], choices: Sequence[int]) -> int:
        bound = fams[-1]
        total = 0
        for b in range(n, bound):
            total += block(b)
        head = list(fams[:-1])
        lo = 1
        fixed = 1
        for pos, chosen_a in enumerate(head):
            need = n - 2 - pos
            for a in range(lo, chosen_a):
                suffix = [size(i) for i in range(a + 1, bound)]
                total += fixed * size(a) * _symmetric_sums(suffix, need)[need] * size(bound)
            fixed *= size(chosen_a)
            lo = chosen_a + 1
        member_rank = 0
        for i, c in zip(fams, choices):
            member_rank = member_rank * size(i) + (c - 1)
        return total + member_rank + 1

    def record(j: int) -> IntersectionRecord:
        fams, choices = unrank(j)
        return IntersectionRecord(factors=tuple(zip(fams, choices)))

    def sets(j: int) -> OpenSet:
        fams, choices = unrank(j)
        parts = tuple(fam(i)[c - 1] for i, c in zip(fams, choices))
        return FiniteIntersection(parts=parts)

    def witness(p: Point) -> int:
        fams: list[int] = []
        choices: list[int] = []
        i = 1
        while len(fams) < n:
            if i > family_limit:
                raise BudgetError(
                    f"point {p!r} not covered by {n} families within the first {family_limit}"
                )
            for m, s in enumerate(fam(i), start=1):
                if member(s, p):
                    fams.append(i)
                    choices.append(m)
                    break
            i += 1
        return rank(fams, choices)

    cover = IndexedCover(
        space=_space_of_families(fam(1)),
        sets=sets,
        witness=witness,
        label=f"distinct({n})",
    )
    return cover, record


def _space_of_families(fam: Sequence[OpenSet]) -> SpaceModel:
    for s in fam:
        hint = s.space_hint()
        if hint is not None:
            return hint
    raise ValueError("cannot infer the space from the families")


def check_infinitely_often(
    families: Callable[[int], Sequence[OpenSet]],
    space: SpaceModel,
    horizon: int,
    family_budget: int,
) -> None:
    """Verify the working form of the infinitely-often hypothesis: the point
    targeted at stage i+1 must lie in the union of at least i+1 distinct
    families within the budget."""
    for idx, p in enumerate(space.points(horizon)):
        needed = idx + 1
        found = 0
        for i in range(1, family_budget + 1):
            if any(member(s, p) for s in families(i)):
                found += 1
                if found >= needed:
                    break
        if found < needed:
            raise GameError(
                f"hypothesis fails: {p!r} is covered by only {found} of the first "
                f"{family_budget} families (need {needed})"
            )


def select_one_per_family(
    families: Callable[[int], Sequence[OpenSet]],
    count: int,
    sone: SoneSelector,
    space: SpaceModel,
    horizon: int,
    stage_cap: int | None = None,
    family_budget: int | None = None,
) -> list[tuple[int, int]]:
    """Pick one member from each of the first `count` families so that the
    picked members cover every point below the horizon.

    Stage n applies the single-selection witness to the n-fold intersection
    cover; the selected intersection's factors name n distinct families, at
    least one of which is still unassigned, and that family receives its
    recorded member. Families left unassigned when coverage is reached
    receive member 1.
    """
    stage_cap = stage_cap or max(horizon, 1) + 5
    family_budget = family_budget or count
    check_infinitely_often(families, space, horizon, family_budget)

    covers: dict[int, tuple[IndexedCover, Callable[[int], IntersectionRecord]]] = {}

    def cover_for(n: int) -> IndexedCover:
        if n not in covers:
            covers[n] = distinct_intersections(families, n, family_limit=max(family_budget, count))
        return covers[n][0]

    assigned: dict[int, int] = {}
    picks = sone(space, cover_for)
    for stage in range(1, stage_cap + 1):
        j = next(picks)
        record = covers[stage][1](j)
        for fam_idx, member_idx in record.factors:
            if fam_idx not in assigned:
                assigned[fam_idx] = member_idx
                break
        else:
            # unreachable: the stage-n pick has n distinct factor families
            # and at most n-1 assignments exist before it
            raise IntegrityError("no unassigned factor family at stage " + str(stage))
        if _assigned_cover(families, assigned, space, horizon):
            break
    else:
        if not _assigned_cover(families, assigned, space, horizon):
            raise BudgetError(f"no covering assignment within {stage_cap} stages")

    out: list[tuple[int, int]] = []
    for i in range(1, count + 1):
        out.append((i, assigned.get(i, 1)))
    return out


def _assigned_cover(
    families: Callable[[int], Sequence[OpenSet]],
    assigned: dict[int, int],
    space: SpaceModel,
    horizon: int,
) -> bool:
    pts = space.points(horizon)
    sets = [families(i)[m - 1] for i, m in assigned.items()]
    return all(any(member(s, p) for s in sets) for p in pts)


# ---------------------------------------------------------------------------
# Joint refinements and the derived finite-selection strategy


def joint_refinement_cover(
    tree: TreeStrategy,
    bound: Path,
    box_limit: int = 20_000,
    rescan: int = 64,
) -> IndexedCover:
    """The joint refinement of the node covers on the box below `bound`,
    enumerated diagonally: member n is the intersection of the n-th members
    of the distinct covers on the box.

    Every member refines each node cover by construction and records factor
    index n at every node. The witness starts at the max of the factor
    witnesses (exact when all factors are increasing) and rescans forward a
    little otherwise.
    """
    factors = distinct_covers_on_box(tree, bound, limit=box_limit)

    def sets(n: int) -> OpenSet:
        if len(factors) == 1:
            return factors[0].sets(n)
        return FiniteIntersection(parts=tuple(c.sets(n) for c in factors))

    def witness(p: Point) -> int:
        start = max(witness_of(c, p) for c in factors)
        for n in range(start, start + rescan + 1):
            if all(member(c.sets(n), p) for c in factors):
                return n
        raise IntegrityError(
            f"no joint member within {rescan} of the factor witnesses contains {p!r}"
        )

    return IndexedCover(
        space=tree.space,
        sets=sets,
        witness=witness,
        increasing=all(c.increasing for c in factors),
        label=f"refine{bound}",
    )


def bounds_from_history(history: History) -> Path:
    """The bound sequence pinned down by the opponent's selections so far:
    each selection extends it by the largest index selected (the least bound
    m such that, by the factor records, the selection refines every node
    cover's first m members)."""
    return tuple(max(sel.indices) for sel in history)


def menger_from_rothberger(
    tree: TreeStrategy,
    box_limit: int = 20_000,
) -> AliceStrategy:
    """Derive a finite-selection strategy from a single-selection tree.

    The opening move is the root cover; after selections with bounds
    (m_1, ..., m_k) the move is the joint refinement over the box below that
    bound sequence.
    """

    memo: dict[Path, IndexedCover] = {}

    def move(history: History) -> IndexedCover:
        bound = bounds_from_history(history)
        hit = memo.get(bound)
        if hit is None:
            hit = memo[bound] = joint_refinement_cover(tree, bound, box_limit=box_limit)
        return hit

    return AliceStrategy(space=tree.space, move=move, name=f"refined({tree.label})")


@dataclass(frozen=True)
class RothbergerResult:
    transcript: Transcript
    picked_path: Path
    bounds: Path
    menger_transcript: Transcript


def rothberger_counterplay(
    tree: TreeStrategy,
    sone: SoneSelector,
    innings: int,
    horizon: int = 5,
    box_limit: int = 20_000,
    plan=None,
) -> RothbergerResult:
    """The winning single-selection play against a strategy tree.

    Pipeline: derive the joint-refinement strategy, run the infinitely-often
    counterplay against it, pick one refinement member per inning with the
    single-selection witness, and reconstruct the play of the original tree:
    the n-th picked member is a subset of the member its record names at the
    node the previously recovered indices name, and that factor index is at
    most the n-th bound. Transcript audit fields carry the (bound, pick)
    pair per inning.
    """
    from .products import infinitely_often_play

    derived = menger_from_rothberger(tree, box_limit=box_limit)
    # run the finite-selection phase long enough that the point targeted at
    # stage i+1 is covered at i+1 distinct innings (multiplicity grows without
    # bound, so doubling terminates; the transcript only gets longer than
    # requested, never shorter)
    menger_innings = innings
    while True:
        menger_transcript, report, _result = infinitely_often_play(
            derived, innings=menger_innings, horizon=horizon, plan=plan
        )
        pts = tree.space.points(horizon)
        if all(report.multiplicity(p.id) >= i + 1 for i, p in enumerate(pts)):
            break
        if menger_innings >= innings * 8:
            raise BudgetError(
                f"infinitely-often multiplicity did not reach the stage schedule within {menger_innings} innings"
            )
        menger_innings *= 2

    # the derived-game covers and selections, replayed for structure
    bounds: list[int] = []
    selections: list[tuple[OpenSet, ...]] = []
    sel_indices: list[tuple[int, ...]] = []
    history: History = ()
    for rec in menger_transcript.innings:
        cover = derived.move(history)
        sel = FiniteSelection(cover, rec.selection)
        selections.append(sel.sets())
        sel_indices.append(rec.selection)
        bounds.append(max(rec.selection))
        history = history + (sel,)

    played = len(selections)

    def family(i: int) -> Sequence[OpenSet]:
        return selections[i - 1]

    chosen = select_one_per_family(
        family,
        count=played,
        sone=sone,
        space=tree.space,
        horizon=horizon,
        family_budget=played,
    )

    # recover the single-selection play: the pick at inning i is a diagonal
    # refinement member, so its factor record at every box node is its own
    # member index within the refinement cover
    picked_path: list[int] = []
    records = []
    for i, (fam_idx, member_pos) in enumerate(chosen, start=1):
        refinement_index = sel_indices[i - 1][member_pos - 1]
        k_i = refinement_index
        m_i = bounds[i - 1]
        if k_i > m_i:
            raise IntegrityError(f"recovered index {k_i} exceeds bound {m_i} at inning {i}")
        node = tuple(picked_path)
        cover = tree.cover_at(node)
        records.append(
            make_inning(
                ROTHBERGER_GAME,
                i,
                cover,
                (k_i,),
                audit={"bound": m_i, "pick": k_i},
            )
        )
        picked_path.append(k_i)

    transcript = Transcript(
        game=ROTHBERGER_GAME, innings=tuple(records), label=f"single({tree.label})"
    )
    return RothbergerResult(
        transcript=transcript,
        picked_path=tuple(picked_path),
        bounds=tuple(bounds),
        menger_transcript=menger_transcript,
    )
