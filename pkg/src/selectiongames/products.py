"""The product-space reduction: lifting a strategy to X x N and extracting a
play that covers every point infinitely often.

Lifting a cover places one copy of each member at each level of the product,
enumerated by the Cantor pairing on (member index, level). A selection from
the lifted cover projects to the base move consisting of the members whose
lift at some level was selected. Running the tree counterplay against the
lifted strategy covers the product space progressively; since the copies of
a base point at different levels are covered at ever-later innings, the
projected base play covers each base point at more and more distinct innings
as it is extended.

The product of a countable model is again a countable model, so the canonical
selection schedule applies to it directly; the usual splitting argument for
countable unions is subsumed by that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .covers import FiniteSelection, IndexedCover
from .engine import AliceStrategy, History, MENGER_GAME, Transcript, make_inning
from .hurewicz import CounterplayResult, bob_counterplay_menger, normalize_strategy, protection_plan
from .pairing import pair, unpair
from .spaces import Point, ProductSpace, member
from .trees import Path


def lifted_cover(product: ProductSpace, base_cover: IndexedCover) -> IndexedCover:
    """Place every member of a base cover at every level of the product.

    Index j encodes (base member index, level) through the Cantor pairing;
    provenance back-maps a lifted index to its base member.
    """

    def decompose(j: int) -> tuple[int, int]:
        a, b = unpair(j - 1)
        return a + 1, b + 1  # (base index, level)

    def sets(j: int):
        base_idx, level = decompose(j)
        return product.lift(base_cover.sets(base_idx), level)

    def witness(p: Point) -> int:
        base_point, level = product.split(p)
        return pair(base_cover.witness(base_point) - 1, level - 1) + 1

    return IndexedCover(
        space=product,
        sets=sets,
        witness=witness,
        provenance=lambda j: (decompose(j)[0],),
        label=f"lift({base_cover.label})" if base_cover.label else "lift",
    )


def project_selection(product: ProductSpace, sel: FiniteSelection) -> tuple[int, ...]:
    """Base member indices whose lift at some level was selected, deduplicated
    and sorted."""
    out: set[int] = set()
    for j in sel.indices:
        a, _ = unpair(j - 1)
        out.add(a + 1)
    return tuple(sorted(out))


def lift_strategy(alice: AliceStrategy) -> tuple[ProductSpace, AliceStrategy]:
    """The strategy on the product space that mirrors a base strategy.

    Each lifted reply is computed by projecting the opponent's lifted
    selections to base moves and re-querying the base strategy.
    """
    product = ProductSpace(alice.space)
    base_cover_memo: dict[tuple[tuple[int, ...], ...], IndexedCover] = {}

    def base_cover_for(projected: tuple[tuple[int, ...], ...]) -> IndexedCover:
        hit = base_cover_memo.get(projected)
        if hit is None:
            history: History = ()
            for depth, indices in enumerate(projected):
                prev = base_cover_for(projected[:depth])
                history = history + (FiniteSelection(prev, indices),)
            hit = base_cover_memo[projected] = alice.move(history)
        return hit

    lifted_memo: dict[tuple[tuple[int, ...], ...], IndexedCover] = {}

    def move(history: History) -> IndexedCover:
        projected = tuple(project_selection(product, sel) for sel in history)
        hit = lifted_memo.get(projected)
        if hit is None:
            hit = lifted_memo[projected] = lifted_cover(product, base_cover_for(projected))
        return hit

    return product, AliceStrategy(space=product, move=move, name=f"lifted({alice.name})")


@dataclass(frozen=True)
class MultiplicityReport:
    """Per base point (id), the sorted innings whose selections cover it."""

    horizon: int
    covering_innings: Mapping[int, tuple[int, ...]]

    def multiplicity(self, point_id: int) -> int:
        return len(self.covering_innings.get(point_id, ()))

    def min_multiplicity(self) -> int:
        if not self.covering_innings:
            return 0
        return min(len(v) for v in self.covering_innings.values())


def infinitely_often_play(
    alice: AliceStrategy,
    innings: int,
    horizon: int = 5,
    finite_win_horizon: int | None = None,
    plan=None,
) -> tuple[Transcript, MultiplicityReport, CounterplayResult]:
    """A play of the base game, according to the given strategy, in which
    every enumerated point below the horizon is covered at many distinct
    innings (growing without bound as the inning count grows).

    Runs the tree counterplay against the lifted strategy on the product
    space, projects each selection back to the base game, and reports the
    covering innings per base point. `plan` overrides the counterplay's
    protection schedule on the product space (the canonical one by default).
    """
    if innings < 1:
        raise ValueError("a play needs at least one inning")
    product, lifted = lift_strategy(alice)
    tree = normalize_strategy(lifted, product, finite_win_horizon=finite_win_horizon)
    result = bob_counterplay_menger(
        tree, raw=lifted, innings=innings, plan=plan or protection_plan(product)
    )

    # project the lifted transcript to the base game
    base_records = []
    base_history: History = ()
    path: Path = result.tree_path
    lifted_history: History = ()
    for n, rec in enumerate(result.transcript.innings, start=1):
        lifted_cover_n = lifted.move(lifted_history)
        lifted_sel = FiniteSelection(lifted_cover_n, rec.selection)
        base_cover_n = alice.move(base_history)
        base_indices = project_selection(product, lifted_sel)
        audit = dict(rec.audit)
        audit["lifted_selection"] = list(rec.selection)
        base_records.append(make_inning(MENGER_GAME, n, base_cover_n, base_indices, audit=audit))
        lifted_history = lifted_history + (lifted_sel,)
        base_history = base_history + (FiniteSelection(base_cover_n, base_indices),)

    transcript = Transcript(game=MENGER_GAME, innings=tuple(base_records), label=f"often({alice.name})")
    covering: dict[int, list[int]] = {p.id: [] for p in alice.space.points(horizon)}
    for n, rec in enumerate(transcript.innings, start=1):
        for p in alice.space.points(horizon):
            if any(member(s, p) for s in rec.selected_sets):
                covering[p.id].append(n)
    report = MultiplicityReport(
        horizon=horizon,
        covering_innings={pid: tuple(v) for pid, v in covering.items()},
    )
    return transcript, report, result
