"""The finite-selection game theorem as an executable construction.

Three pieces live here:

1. `normalize_strategy` applies the standard strategy simplifications to an
   arbitrary first-player strategy: every cover is replaced by its increasing
   form (so single-set selections suffice and back-translate to legal finite
   moves), and every reply is head-normalized so its first member equals the
   set just chosen. The result is a :class:`~.trees.TreeStrategy` whose
   covers are increasing, whose nodes satisfy the head condition, and whose
   plays back-translate to legal plays of the raw strategy.

2. The tail-cover machinery: the family of node sets at a fixed depth has the
   property that intersections of its cofinite subfamilies again form an open
   cover. `cofinite_intersection` computes such an intersection as a finite
   expression by the level recursion (at depth one an increasing cover's
   cofinite intersection is its minimum surviving member; one level up it is
   a finite intersection of a lower-level instance with finitely many node
   sets), and `tail_derived_cover` packages the intersections as an indexed
   cover with a constructive witness.

3. `bob_counterplay_menger` plays against the normalized tree: selecting, at
   each inning, a member of the current cover that stays inside a cofinite
   subfamily protecting the enumerated points seen so far. The chosen set
   then contains the intersection of the protected subfamily, so the play
   covers every horizon once the inning count reaches it, and the
   back-translated play is legal for the raw strategy.

Key computational fact used throughout: in a normalized tree the set at a
child node contains the set at its parent, so the nodes at depth n whose sets
omit a given point are exactly the descendants of omitting nodes, and their
exclusion set can be generated level by level from per-node scan thresholds.
Its size grows like the product of the thresholds, which is exponential in
the depth; the counterplay therefore queries the exclusion structure as a
predicate, and materializes excluded index sets only where tests need literal
cofinite specs (small depths).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .covers import (
    CofiniteSpec,
    FiniteSelection,
    IndexedCover,
    increasing_form,
    head_normalize,
    witness_of,
)
from .engine import (
    AliceStrategy,
    GameKind,
    MENGER_GAME,
    Transcript,
    make_inning,
)
from .errors import BudgetError, GameError
from .pairing import decode_tuple, encode_tuple, excluded_set_from_index, excluded_set_index
from .spaces import FiniteIntersection, OpenSet, Point, SpaceModel, member
from .trees import Path, TreeStrategy


class FiniteWinFound(GameError):
    """Raised while materializing a play when the sets chosen so far already
    cover the space up to the working horizon: the second player has won
    after finitely many steps and no machinery is needed."""

    def __init__(self, path: Path):
        super().__init__(f"finite selection at node {path} already covers the working horizon")
        self.path = path


def normalize_strategy(
    raw: AliceStrategy,
    space: SpaceModel | None = None,
    finite_win_horizon: int | None = None,
) -> TreeStrategy:
    """Normalize an arbitrary finite-selection strategy into tree form.

    The tree's node path records single-set choices from the transformed
    covers; `back_map` translates a path into the raw strategy's per-inning
    index selections. When `finite_win_horizon` is set, materializing any
    node whose set already covers that many enumerated points raises
    :class:`FiniteWinFound` with the witnessing path (the chosen set at a
    node is the union of everything chosen on the way to it, so this is
    exactly the "a finite selection suffices" escape).
    """
    space = space or raw.space
    raw_cover_memo: dict[Path, IndexedCover] = {}
    tree_holder: list[TreeStrategy] = []

    def raw_history(path: Path) -> tuple[FiniteSelection, ...]:
        history: list[FiniteSelection] = []
        for depth, idx in enumerate(path):
            u = idx if depth == 0 else max(1, idx - 1)
            history.append(FiniteSelection(raw_cover_at(path[:depth]), tuple(range(1, u + 1))))
        return tuple(history)

    def raw_cover_at(path: Path) -> IndexedCover:
        hit = raw_cover_memo.get(path)
        if hit is None:
            hit = raw_cover_memo[path] = raw.move(raw_history(path))
        return hit

    def cover_at(path: Path) -> IndexedCover:
        base = increasing_form(raw_cover_at(path))
        if not path:
            return base
        tree = tree_holder[0]
        chosen = tree.set_at(path)
        if finite_win_horizon is not None:
            if all(member(chosen, p) for p in space.points(finite_win_horizon)):
                raise FiniteWinFound(path)
        return head_normalize(chosen, base)

    def back_map(path: Path) -> tuple[tuple[int, ...], ...]:
        out: list[tuple[int, ...]] = []
        for depth, idx in enumerate(path):
            u = idx if depth == 0 else max(1, idx - 1)
            out.append(tuple(range(1, u + 1)))
        return tuple(out)

    tree = TreeStrategy(
        space=space,
        cover_at_raw=cover_at,
        back_map=back_map,
        label=f"normalized({raw.name})" if raw.name else "normalized",
    )
    tree_holder.append(tree)
    return tree


def raw_covers_along(raw: AliceStrategy, tree: TreeStrategy, path: Path) -> list[IndexedCover]:
    """The raw strategy's covers along the back-translated history of a tree
    path (used when emitting transcripts of the original game)."""
    if tree.back_map is None:
        raise ValueError("tree has no back-map")
    moves = tree.back_map(path)
    covers: list[IndexedCover] = []
    history: tuple[FiniteSelection, ...] = ()
    for sel_indices in moves:
        cover = raw.move(history)
        covers.append(cover)
        history = history + (FiniteSelection(cover, sel_indices),)
    return covers


# ---------------------------------------------------------------------------
# Level families and the tail-cover machinery


@dataclass(frozen=True, eq=False)
class LevelFamily:
    """The family of node sets at a fixed depth of a normalized tree,
    enumerated through the iterated-pairing bijection between positive
    naturals and fixed-length index sequences."""

    tree: TreeStrategy
    level: int

    def node(self, j: int) -> Path:
        return decode_tuple(j, self.level)

    def index_of(self, path: Path) -> int:
        if len(path) != self.level:
            raise ValueError(f"path {path} is not at level {self.level}")
        return encode_tuple(path)

    def sets(self, j: int) -> OpenSet:
        return self.tree.set_at(self.node(j))


def level_family(tree: TreeStrategy, n: int) -> LevelFamily:
    """The depth-n family: every set the strategy can offer at its n-th move.

    Depth one is exactly the root cover; in general the family collects
    set_at over all length-n index sequences, which coincides with collecting
    the members of all depth-(n-1) node covers.
    """
    if n < 1:
        raise ValueError("levels are 1-based")
    return LevelFamily(tree=tree, level=n)


def cofinite_intersection(fam: LevelFamily, spec: CofiniteSpec) -> OpenSet:
    """The intersection of the cofinite subfamily of a level family, as a
    finite expression.

    At level one the family is an increasing cover, so the intersection is
    its minimum surviving member. One level up, group the excluded indices by
    parent node: within a parent's (increasing, head-normalized) cover the
    surviving members intersect to the minimum surviving child; parents whose
    child 1 survives contribute their own node set, which regroups as a
    level-(n-1) cofinite intersection because the head condition identifies
    child 1 with the parent.
    """
    if fam.level == 1:
        return fam.sets(spec.min_surviving())
    by_parent: dict[Path, set[int]] = {}
    for idx in spec.excluded:
        node = decode_tuple(idx, fam.level)
        by_parent.setdefault(node[:-1], set()).add(node[-1])
    named_parts: list[OpenSet] = []
    excluded_parents: set[int] = set()
    for parent, gone in sorted(by_parent.items()):
        m = 1
        while m in gone:
            m += 1
        if m > 1:
            named_parts.append(fam.tree.set_at(parent + (m,)))
            excluded_parents.add(encode_tuple(parent))
    lower = cofinite_intersection(
        level_family(fam.tree, fam.level - 1), CofiniteSpec(frozenset(excluded_parents))
    )
    if not named_parts:
        return lower
    return FiniteIntersection(parts=(lower, *named_parts))


class ExclusionOracle:
    """The omitting-node structure of one point at one level, queried lazily.

    In a normalized tree, a node's set contains its parent's set, so the
    depth-n nodes omitting a point are the depth-n descendants of omitting
    nodes; per omitting node the omitting children form an initial segment of
    the child indices, whose length is found by a witness-bounded scan.
    """

    def __init__(self, tree: TreeStrategy, level: int, point: Point):
        self.tree = tree
        self.level = level
        self.point = point
        self._threshold: dict[Path, int] = {}

    def _omitting_children_below(self, path: Path) -> int:
        """Number of leading child indices m with the point outside
        set_at(path + (m,)); children from there on contain the point."""
        hit = self._threshold.get(path)
        if hit is not None:
            return hit
        cover = self.tree.cover_at(path)
        w = witness_of(cover, self.point)
        m = 1
        while m < w and not member(self.tree.set_at(path + (m,)), self.point):
            m += 1
        self._threshold[path] = m - 1
        return m - 1

    def omits(self, path: Path) -> bool:
        """Does the set at this node omit the point?"""
        if len(path) != self.level:
            raise ValueError("query is level-specific")
        return not member(self.tree.set_at(path), self.point)

    def excluded_nodes(self, node_limit: int = 500_000) -> Iterator[Path]:
        """Enumerate every omitting node at this level (ancestors first).

        The count is the product of the per-node scan thresholds and grows
        exponentially with the level; `node_limit` guards materialization.
        """
        frontier: list[Path] = [()]
        produced = 0
        for depth in range(1, self.level + 1):
            next_frontier: list[Path] = []
            for parent in frontier:
                bad = self._omitting_children_below(parent)
                for m in range(1, bad + 1):
                    child = parent + (m,)
                    produced += 1
                    if produced > node_limit:
                        raise BudgetError(
                            f"exclusion set at level {self.level} exceeds {node_limit} nodes"
                        )
                    next_frontier.append(child)
            frontier = next_frontier
        yield from frontier

    def materialize(self, node_limit: int = 500_000) -> CofiniteSpec:
        return CofiniteSpec(frozenset(encode_tuple(p) for p in self.excluded_nodes(node_limit)))


def tail_derived_cover(fam: LevelFamily, node_limit: int = 500_000) -> IndexedCover:
    """The cover of cofinite intersections of a level family.

    Members are indexed by the binary-subset bijection on excluded index
    sets; the witness for a point materializes its omitting-node structure
    (exact at this level) and returns the index of the spec excluding it.
    """

    def sets(j: int) -> OpenSet:
        return cofinite_intersection(fam, CofiniteSpec(excluded_set_from_index(j)))

    def witness(p: Point) -> int:
        oracle = ExclusionOracle(fam.tree, fam.level, p)
        spec = oracle.materialize(node_limit)
        return excluded_set_index(spec.excluded)

    return IndexedCover(
        space=fam.tree.space,
        sets=sets,
        witness=witness,
        label=f"tail(level={fam.level})",
    )


# ---------------------------------------------------------------------------
# The counterplay


@dataclass(frozen=True)
class CounterplayResult:
    """A winning play and its two transcripts: the tree-form play and the
    back-translated play of the raw strategy."""

    tree_path: Path
    transcript: Transcript
    finite_win: bool = False


def protection_plan(space: SpaceModel) -> Callable[[int], list[Point]]:
    """Which points the counterplay protects at each inning: the first n
    enumerated points on countable models (the canonical selection schedule),
    every point on finite ones."""

    def plan(n: int) -> list[Point]:
        if space.size is not None:
            return space.all_points()
        return space.points(n)

    return plan


def bob_counterplay_menger(
    tree: TreeStrategy,
    raw: AliceStrategy | None = None,
    innings: int = 10,
    plan: Callable[[int], list[Point]] | None = None,
    probe_limit: int = 10_000,
    game: GameKind = MENGER_GAME,
) -> CounterplayResult:
    """Play the winning counterplay against a normalized tree.

    At inning n, with the play so far at node sigma, the protected points are
    plan(n); their omitting nodes at the next level form finitely many
    excluded children of sigma, and the move is the least child index outside
    all of them. The chosen set therefore contains every protected point (it
    is a member of each point's protecting cofinite subfamily, hence contains
    that subfamily's intersection), so the play wins every horizon h once n
    and the plan reach it.

    The transcript is emitted in terms of the raw strategy when one is given
    (covers and finite selections reconstructed through the tree's back-map),
    and in tree form otherwise. Audit fields record, per inning, the child
    indices that were skipped as excluded and the protected point count.

    If materializing the tree raises :class:`FiniteWinFound`, the witnessing
    path is replayed as-is: those finitely many choices already cover the
    working horizon.
    """
    plan = plan or protection_plan(tree.space)
    try:
        return _drive_counterplay(tree, raw, innings, plan, probe_limit, game, None)
    except FiniteWinFound as fw:
        return _drive_counterplay(tree, raw, len(fw.path), plan, probe_limit, game, fw.path)


def _drive_counterplay(
    tree: TreeStrategy,
    raw: AliceStrategy | None,
    innings: int,
    plan: Callable[[int], list[Point]],
    probe_limit: int,
    game: GameKind,
    forced_path: Path | None,
) -> CounterplayResult:
    if innings < 1:
        raise ValueError("a play needs at least one inning")
    path: Path = ()
    moves: list[tuple[int, list[int]]] = []  # (chosen child, skipped children)
    for n in range(1, innings + 1):
        if forced_path is not None:
            chosen, skipped = forced_path[n - 1], []
        else:
            protected = plan(n)
            oracles = [ExclusionOracle(tree, len(path) + 1, p) for p in protected]
            chosen = None
            skipped = []
            for m in range(1, probe_limit + 1):
                child = path + (m,)
                if any(o.omits(child) for o in oracles):
                    skipped.append(m)
                    continue
                chosen = m
                break
            if chosen is None:
                raise BudgetError(f"no admissible child within {probe_limit} probes at inning {n}")
        moves.append((chosen, skipped))
        path = path + (chosen,)
    transcript = _emit_counterplay_transcript(tree, raw, path, moves, plan, game)
    return CounterplayResult(tree_path=path, transcript=transcript, finite_win=forced_path is not None)


def _emit_counterplay_transcript(
    tree: TreeStrategy,
    raw: AliceStrategy | None,
    path: Path,
    moves: Sequence[tuple[int, list[int]]],
    plan: Callable[[int], list[Point]],
    game: GameKind,
) -> Transcript:
    records = []
    if raw is not None and tree.back_map is not None:
        covers = raw_covers_along(raw, tree, path)
        back = tree.back_map(path)
        for n, (cover, indices) in enumerate(zip(covers, back), start=1):
            chosen, skipped = moves[n - 1]
            audit = {
                "tree_choice": chosen,
                "excluded_children_probed": list(skipped),
                "protected_points": len(plan(n)),
            }
            records.append(make_inning(game, n, cover, indices, audit=audit))
        return Transcript(game=game, innings=tuple(records), label=f"counterplay({tree.label})")
    for n in range(1, len(path) + 1):
        cover = tree.cover_at(path[: n - 1])
        chosen, skipped = moves[n - 1]
        audit = {
            "excluded_children_probed": list(skipped),
            "protected_points": len(plan(n)),
        }
        records.append(make_inning(GameKind("single", game.multiplicity), n, cover, (chosen,), audit=audit))
    return Transcript(
        game=GameKind("single", game.multiplicity),
        innings=tuple(records),
        label=f"counterplay({tree.label})",
    )
