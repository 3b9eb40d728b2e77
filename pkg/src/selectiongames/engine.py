"""Plays the selection games, records transcripts, checks legality, and
evaluates win conditions.

Games are truncated at a finite inning count and win evaluation is
horizon-relative: the theorems' "Bob wins" conclusions are checked as "for
every horizon there is an inning count that suffices", with (horizon,
innings) pairs fixed per test scenario.

Transcripts store, per inning, a structural description of a prefix of the
cover that was played plus the selected indices. Legality checking replays
the strategy against the recorded selections and compares descriptions, so
it needs no live set objects; win evaluation does need them, and is only
available on transcripts that still carry their selected sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from .covers import FiniteSelection, IndexedCover, Verdict
from .errors import LegalityError
from .spaces import OpenSet, SpaceModel, describe, member

History = tuple[FiniteSelection, ...]


@dataclass(frozen=True)
class GameKind:
    """Selector arity plus win condition.

    arity "finite" lets the second player select finitely many members per
    inning, "single" exactly one. multiplicity 1 is the plain union-covers
    win; k > 1 requires every point to lie in k structurally distinct
    selected sets (the large-cover variant).
    """

    arity: str
    multiplicity: int = 1

    def __post_init__(self):
        if self.arity not in ("finite", "single"):
            raise ValueError("arity must be 'finite' or 'single'")
        if self.multiplicity < 1:
            raise ValueError("win multiplicity must be positive")


MENGER_GAME = GameKind("finite", 1)
ROTHBERGER_GAME = GameKind("single", 1)


def large_menger_game(multiplicity: int) -> GameKind:
    return GameKind("finite", multiplicity)


@dataclass(frozen=True, eq=False)
class AliceStrategy:
    """A deterministic first-player strategy: prior selections -> next cover."""

    space: SpaceModel
    move: Callable[[History], IndexedCover]
    name: str = ""


@dataclass(frozen=True, eq=False)
class BobStrategy:
    """A deterministic second-player strategy:
    (cover just played, inning number, own prior selections) -> selection."""

    move: Callable[[IndexedCover, int, History], FiniteSelection]
    name: str = ""


@dataclass(frozen=True)
class Inning:
    """One recorded inning. `cover_prefix` describes the first few members of
    the cover played (at least up to the largest selected index);
    `original_move` is the back-translated move of the pre-normalization
    strategy when one exists."""

    number: int
    cover_prefix: tuple[tuple, ...]
    selection: tuple[int, ...]
    selected_sets: tuple[OpenSet, ...] | None = None
    original_move: tuple[int, ...] | None = None
    audit: tuple[tuple[str, Any], ...] = ()

    def audit_dict(self) -> dict[str, Any]:
        return dict(self.audit)


@dataclass(frozen=True)
class Transcript:
    game: GameKind
    innings: tuple[Inning, ...]
    label: str = ""

    @property
    def truncated_at(self) -> int:
        return len(self.innings)


def cover_prefix(cover: IndexedCover, upto: int) -> tuple[tuple, ...]:
    return tuple(describe(cover.sets(j)) for j in range(1, upto + 1))


def _validate_selection(game: GameKind, sel: FiniteSelection, inning: int) -> None:
    if game.arity == "single" and len(sel.indices) != 1:
        raise LegalityError(
            f"inning {inning}: single-selection game got {len(sel.indices)} indices", inning=inning
        )


def make_inning(
    game: GameKind,
    number: int,
    cover: IndexedCover,
    indices: tuple[int, ...],
    audit: Mapping[str, Any] | None = None,
    prefix_pad: int = 1,
) -> Inning:
    """Record one inning, describing the played cover up to the largest
    selected index plus a small pad."""
    sel = FiniteSelection(cover, tuple(indices))
    _validate_selection(game, sel, number)
    upto = max(sel.indices) + prefix_pad
    original: list[int] = []
    for i in sorted(sel.indices):
        for back in cover.provenance(i):
            if back not in original:
                original.append(back)
    return Inning(
        number=number,
        cover_prefix=cover_prefix(cover, upto),
        selection=tuple(sorted(sel.indices)),
        selected_sets=sel.sets(),
        original_move=tuple(original),
        audit=tuple(sorted((audit or {}).items())),
    )


def run_play(game: GameKind, alice: AliceStrategy, bob: BobStrategy, innings: int) -> Transcript:
    """Drive a full play of `innings` innings and record it.

    Each cover is the first player's move on the selection history so far;
    each selection is the second player's reply to that cover. A selection
    with invalid indices raises :class:`LegalityError` naming the inning.
    """
    if innings < 1:
        raise ValueError("a play needs at least one inning")
    history: History = ()
    records: list[Inning] = []
    for n in range(1, innings + 1):
        cover = alice.move(history)
        sel = bob.move(cover, n, history)
        if sel.cover is not cover:
            raise LegalityError(f"inning {n}: selection does not reference the played cover", inning=n)
        _validate_selection(game, sel, n)
        records.append(make_inning(game, n, cover, sel.indices))
        history = history + (sel,)
    return Transcript(game=game, innings=tuple(records), label=f"play({alice.name or 'alice'})")


def check_legal(t: Transcript, alice: AliceStrategy) -> Verdict:
    """Replay the strategy against the transcript's selections and compare,
    inning by inning, the recorded cover descriptions with the replayed ones.

    The verdict carries the first divergent inning on failure.
    """
    history: History = ()
    for rec in t.innings:
        cover = alice.move(history)
        expected = cover_prefix(cover, len(rec.cover_prefix))
        if expected != rec.cover_prefix:
            return Verdict(False, reason="cover diverges from strategy", failing_inning=rec.number)
        if not rec.selection or any(i < 1 for i in rec.selection):
            return Verdict(False, reason="invalid selection indices", failing_inning=rec.number)
        if len(set(rec.selection)) != len(rec.selection):
            return Verdict(False, reason="duplicate selection indices", failing_inning=rec.number)
        if t.game.arity == "single" and len(rec.selection) != 1:
            return Verdict(False, reason="single-selection game with several indices", failing_inning=rec.number)
        history = history + (FiniteSelection(cover, rec.selection),)
    return Verdict(True)


@dataclass(frozen=True)
class WinReport:
    winner: str
    horizon: int
    uncovered: tuple[int, ...]
    coverage: Mapping[int, int] = field(default_factory=dict)

    @property
    def bob_wins(self) -> bool:
        return self.winner == "bob"


def evaluate_win(t: Transcript, horizon: int) -> WinReport:
    """Horizon-relative win evaluation.

    For the plain union win the second player wins iff every enumerated point
    below the horizon lies in some selected set; for multiplicity k it must
    lie in at least k structurally distinct selected sets. The report carries
    the per-point count of distinct covering sets and the failing points.
    """
    chosen: list[OpenSet] = []
    for rec in t.innings:
        if rec.selected_sets is None:
            raise ValueError("transcript was parsed from records and has no live sets")
        chosen.extend(rec.selected_sets)
    space = None
    for s in chosen:
        space = s.space_hint()
        if space is not None:
            break
    if space is None and horizon > 0:
        raise ValueError("cannot infer the space from the transcript")
    need = t.game.multiplicity
    uncovered: list[int] = []
    coverage: dict[int, int] = {}
    for p in space.points(horizon) if space is not None else []:
        distinct: set[tuple] = set()
        for s in chosen:
            if member(s, p):
                distinct.add(describe(s))
        coverage[p.id] = len(distinct)
        if len(distinct) < need:
            uncovered.append(p.id)
    winner = "bob" if not uncovered else "alice"
    return WinReport(winner=winner, horizon=horizon, uncovered=tuple(uncovered), coverage=coverage)
