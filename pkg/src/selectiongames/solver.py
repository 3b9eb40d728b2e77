"""Exact backward-induction solver for finitely truncated games on finite
space models: the independent ground truth the constructed counterplays are
cross-checked against.

Instances are explicit: a finite space and, at every position, a finite list
of covers the first player may choose among (a deterministic strategy is the
one-option case). The solver enumerates every selection of bounded size and
every listed option, so the returned winner and decision table are exact —
no horizon, the whole finite space must be covered within the depth. Finite
spaces are compact, so the second player always wins at sufficient depth;
the solver's value is the exact minimal depth and the strategy realizing it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .covers import FiniteSelection, IndexedCover, Verdict
from .engine import AliceStrategy, GameKind, History
from .errors import ResourceLimitError
from .spaces import FiniteTopological, from_ids

Cover = tuple[frozenset[int], ...]
OracleHistory = tuple[tuple[int, tuple[int, ...]], ...]  # (option chosen, selection)
BobMove = Callable[[IndexedCover, int, History], FiniteSelection]


@dataclass(frozen=True, eq=False)
class FiniteGameInstance:
    """A finite game instance: the space and, per position, the first
    player's cover options (each a finite tuple of open id-sets)."""

    space: FiniteTopological
    options_at: Callable[[OracleHistory], Sequence[Cover]]
    name: str = ""

    def validate(self) -> None:
        universe = frozenset(range(self.space.n_points))
        for opt_idx, cover in enumerate(self.options_at(())):
            if not cover:
                raise ValueError(f"{self.name}: option {opt_idx} is empty")
            if frozenset().union(*cover) != universe:
                raise ValueError(f"{self.name}: option {opt_idx} is not a cover")
            for s in cover:
                if not self.space.is_open(s):
                    raise ValueError(f"{self.name}: {sorted(s)} is not open")


def stationary_instance(space: FiniteTopological, covers: Sequence[Sequence], name: str = "") -> FiniteGameInstance:
    """An instance whose options do not depend on the position."""
    fixed = tuple(tuple(frozenset(s) for s in cover) for cover in covers)
    return FiniteGameInstance(space=space, options_at=lambda history: fixed, name=name)


def _selections(cover: Cover, cap: int, arity: str) -> list[tuple[int, ...]]:
    indices = range(1, len(cover) + 1)
    if arity == "single":
        return [(i,) for i in indices]
    out: list[tuple[int, ...]] = []
    for size in range(1, min(cap, len(cover)) + 1):
        out.extend(combinations(indices, size))
    return out


@dataclass(frozen=True)
class SolveResult:
    winner: str
    depth: int
    strategy: Mapping[tuple, object]
    nodes: int


def solve_finite_game(
    instance: FiniteGameInstance,
    game: GameKind,
    depth: int,
    selection_cap: int,
    node_limit: int = 200_000,
) -> SolveResult:
    """Exact backward induction.

    The second player wins a position iff, for every cover option, some
    selection (of at most `selection_cap` indices, exactly one in
    single-selection games) leads to a covered space or to a winning deeper
    position. The decision table maps second-player states (position, option
    faced, covered set) to a winning selection, and first-player states to a
    refuting option index.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    counter = {"nodes": 0}
    strategy: dict[tuple, object] = {}

    def bob_wins(history: OracleHistory, covered: frozenset[int], d: int) -> bool:
        counter["nodes"] += 1
        if counter["nodes"] > node_limit:
            raise ResourceLimitError(f"solver exceeded {node_limit} nodes")
        if len(covered) == instance.space.n_points:
            return True
        if d == 0:
            return False
        for opt_idx, cover in enumerate(instance.options_at(history)):
            won = False
            for sel in _selections(cover, selection_cap, game.arity):
                new_covered = covered.union(*(cover[i - 1] for i in sel))
                if bob_wins(history + ((opt_idx, sel),), new_covered, d - 1):
                    strategy[("bob", history, opt_idx, tuple(sorted(covered)))] = sel
                    won = True
                    break
            if not won:
                strategy[("alice", history, tuple(sorted(covered)))] = opt_idx
                return False
        return True

    winner = "bob" if bob_wins((), frozenset(), depth) else "alice"
    return SolveResult(winner=winner, depth=depth, strategy=dict(strategy), nodes=counter["nodes"])


def minimal_winning_depth(
    instance: FiniteGameInstance,
    game: GameKind,
    selection_cap: int,
    max_depth: int = 8,
) -> int:
    """The least depth at which the second player wins (exists by
    compactness; raises if not found within max_depth)."""
    for d in range(1, max_depth + 1):
        if solve_finite_game(instance, game, d, selection_cap).winner == "bob":
            return d
    raise ResourceLimitError(f"no winning depth within {max_depth} for {instance.name}")


# ---------------------------------------------------------------------------
# Bridging instances to the lazy-cover machinery


def instance_cover(space: FiniteTopological, cover: Cover, label: str) -> IndexedCover:
    """Wrap a finite explicit cover as a lazy cover by repeating its last
    member beyond its length; provenance clamps back to the explicit range."""
    sets = tuple(from_ids(space, s, label=f"{label}[{i}]") for i, s in enumerate(cover, start=1))

    def witness(p):
        for i, s in enumerate(cover, start=1):
            if p.id in s:
                return i
        raise ValueError(f"{label} does not cover point {p.id}")

    return IndexedCover(
        space=space,
        sets=lambda j: sets[min(j, len(sets)) - 1],
        witness=witness,
        provenance=lambda j: (min(j, len(sets)),),
        label=label,
    )


def deterministic_strategy(instance: FiniteGameInstance, option: int = 0) -> AliceStrategy:
    """View a single line of an instance (the same option at every position)
    as a lazy-cover strategy for the construction pipeline."""

    memo: dict[tuple[tuple[int, ...], ...], IndexedCover] = {}

    def explicit_at(oracle_history: OracleHistory) -> Cover:
        return tuple(instance.options_at(oracle_history))[option]

    def move(history: History) -> IndexedCover:
        key = tuple(sel.indices for sel in history)
        hit = memo.get(key)
        if hit is None:
            oracle_history: OracleHistory = ()
            for indices in key:
                cover = explicit_at(oracle_history)
                clamped = tuple(sorted({min(i, len(cover)) for i in indices}))
                oracle_history = oracle_history + ((option, clamped),)
            cover = explicit_at(oracle_history)
            hit = memo[key] = instance_cover(
                instance.space, cover, f"{instance.name}@{len(key)}"
            )
        return hit

    return AliceStrategy(space=instance.space, move=move, name=instance.name or "instance")


def restrict_option(instance: FiniteGameInstance, option: int) -> FiniteGameInstance:
    """The deterministic line of an instance that always plays one option."""
    return FiniteGameInstance(
        space=instance.space,
        options_at=lambda history: (tuple(instance.options_at(history))[option],),
        name=f"{instance.name}#opt{option}",
    )


def counterplay_bob_strategy(instance: FiniteGameInstance, option: int = 0) -> BobMove:
    """The constructed tree counterplay, packaged as a plain second-player
    move function against one deterministic line of an instance.

    The move is reconstructed from the inning number alone (the underlying
    play is deterministic): walk the normalized tree taking, at each step,
    the least child whose set contains every point of the finite space, and
    back-translate the tree choice into the instance's selection.
    """
    from .hurewicz import ExclusionOracle, normalize_strategy, protection_plan

    alice = deterministic_strategy(instance, option)
    tree = normalize_strategy(alice, instance.space)
    plan = protection_plan(instance.space)

    def advance(path: tuple[int, ...], inning: int) -> int:
        oracles = [ExclusionOracle(tree, len(path) + 1, p) for p in plan(inning)]
        m = 1
        while any(o.omits(path + (m,)) for o in oracles):
            m += 1
        return m

    def move(cover: IndexedCover, inning: int, history: History) -> FiniteSelection:
        path: tuple[int, ...] = ()
        for k in range(1, inning):
            path = path + (advance(path, k),)
        m = advance(path, inning)
        u = m if inning == 1 else max(1, m - 1)
        return FiniteSelection(cover, tuple(range(1, u + 1)))

    return move


def cross_check(
    constructed: BobMove,
    instance: FiniteGameInstance,
    game: GameKind,
    selection_cap: int,
    max_depth: int = 8,
) -> Verdict:
    """Check a constructed second-player strategy against the oracle: within
    the oracle's minimal winning depth it must cover the space against every
    first-player line of the instance.

    The constructed strategy sees the instance's covers through the lazy
    wrapper; its selections are clamped back to the explicit range before
    coverage is evaluated.
    """
    depth = minimal_winning_depth(instance, game, selection_cap, max_depth)
    universe = frozenset(range(instance.space.n_points))

    def walk(oracle_history: OracleHistory, bob_history: History, covered: frozenset[int], inning: int) -> str | None:
        if covered == universe:
            return None
        if inning > depth:
            return f"line {tuple(o for o, _ in oracle_history)} left {sorted(universe - covered)} uncovered"
        for opt_idx, cover in enumerate(instance.options_at(oracle_history)):
            lazy = instance_cover(instance.space, cover, f"{instance.name}/{inning}")
            sel = constructed(lazy, inning, bob_history)
            clamped = tuple(sorted({min(i, len(cover)) for i in sel.indices}))
            if game.arity == "single" and len(clamped) != 1:
                return f"arity violation at inning {inning}"
            if game.arity == "finite" and len(clamped) > selection_cap:
                return f"selection of {len(clamped)} exceeds cap {selection_cap} at inning {inning}"
            bad = walk(
                oracle_history + ((opt_idx, clamped),),
                bob_history + (FiniteSelection(lazy, sel.indices),),
                covered.union(*(cover[i - 1] for i in clamped)),
                inning + 1,
            )
            if bad:
                return bad
        return None

    failure = walk((), (), frozenset(), 1)
    return Verdict(failure is None, reason=failure or "")
