"""The large-cover counterplay via greedy index traces and an evasion
function.

Preprocessing: `strip_chosen_tree` removes from each node's cover the sets
chosen on the way to that node (largeness of the covers survives the removal
of finitely many sets, and the stripped play can never re-select an earlier
choice, so covering a point at k innings means k distinct sets).
`wedge_tree` then intersects, at each node, the members of all node covers on
the box below it, indexwise; the wedged tree's covers are increasing, refine
the originals, and get finer as the node sequence grows coordinatewise.

For a point x, the greedy index trace follows the tree downward, always
taking the least child index whose set contains x; a node-relative variant is
pinned to a given prefix first. On a finer-with-larger-nodes tree these
traces satisfy: if n is the least argument where a trace is at most g, then x
lies in the set at node (g(1), ..., g(n)) — so a function g that eventually
dominates every trace (including the traces pinned to g's own prefixes)
yields a play whose chosen sets pick x up again and again.

The evasion function realizes that by a diagonal maximum over the sampled
points and a prefix family consisting of an enumeration prefix of all finite
sequences plus g's own prefixes (the latter are what the node-wise iteration
actually consumes; they are known recursively when g(n) is computed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .covers import IndexedCover, witness_of
from .engine import GameKind, Transcript, large_menger_game, make_inning
from .errors import BudgetError
from .pairing import finseq_from_index
from .spaces import FiniteIntersection, OpenSet, Point, describe, member
from .trees import Path, TreeStrategy, box_paths


@dataclass(eq=False)
class BaireFunction:
    """A lazily memoized total function from positive naturals to positive
    naturals, tagged with its provenance."""

    eval_raw: Callable[[int], int]
    description: str = ""
    _memo: dict[int, int] = field(default_factory=dict, repr=False)

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValueError("arguments are 1-based")
        hit = self._memo.get(n)
        if hit is None:
            hit = self._memo[n] = int(self.eval_raw(n))
            if hit < 1:
                raise ValueError(f"{self.description or 'function'} returned {hit} < 1")
        return hit

    def prefix(self, n: int) -> Path:
        return tuple(self(i) for i in range(1, n + 1))


def strip_history(cover: IndexedCover, chosen: Sequence[OpenSet], scan_budget: int = 200) -> IndexedCover:
    """The subfamily excluding the given sets (matched structurally),
    reindexed order-preservingly.

    The witness is repaired by scanning forward from the old witness; a large
    cover guarantees the scan succeeds, and running past the budget raises
    :class:`BudgetError`. Provenance maps each new index to the original one.
    """
    gone = {describe(s) for s in chosen}
    surviving: list[int] = []  # original indices, in order

    def original_index(j: int) -> int:
        while len(surviving) < j:
            nxt = surviving[-1] + 1 if surviving else 1
            if gone:
                limit = nxt + scan_budget
                while nxt < limit and describe(cover.sets(nxt)) in gone:
                    nxt += 1
                if nxt >= limit:
                    raise BudgetError(f"no surviving member within {scan_budget} of index {nxt}")
            surviving.append(nxt)
        return surviving[j - 1]

    def witness(p: Point) -> int:
        old = cover.witness(p)
        k = 1
        limit = None
        while True:
            oj = original_index(k)
            if member(cover.sets(oj), p):
                return k
            if limit is None and oj >= old:
                limit = k + scan_budget
            if limit is not None and k >= limit:
                raise BudgetError(f"witness repair exhausted budget {scan_budget} for {p!r}")
            k += 1

    return IndexedCover(
        space=cover.space,
        sets=lambda j: cover.sets(original_index(j)),
        witness=witness,
        provenance=lambda j: (original_index(j),),
        increasing=cover.increasing,
        label=f"stripped({cover.label})" if cover.label else "stripped",
    )


def strip_chosen_tree(tree: TreeStrategy) -> TreeStrategy:
    """Remove, from each node's cover, the sets chosen on the way to that
    node. Node sequences of the result are indices into the stripped covers;
    `back_map` translates them to original single-index selections."""

    state: dict[Path, tuple[Path, tuple[OpenSet, ...]]] = {(): ((), ())}

    def resolve(path: Path) -> tuple[Path, tuple[OpenSet, ...]]:
        hit = state.get(path)
        if hit is None:
            parent_orig, parent_chosen = resolve(path[:-1])
            stripped_parent = stripped.cover_at(path[:-1])
            orig_idx = stripped_parent.provenance(path[-1])[0]
            chosen_set = tree.set_at(parent_orig + (orig_idx,))
            hit = state[path] = (parent_orig + (orig_idx,), parent_chosen + (chosen_set,))
        return hit

    def cover_at(path: Path) -> IndexedCover:
        orig_path, chosen = resolve(path)
        return strip_history(tree.cover_at(orig_path), chosen)

    def back_map(path: Path) -> tuple[tuple[int, ...], ...]:
        orig_path, _ = resolve(path)
        return tuple((i,) for i in orig_path)

    stripped = TreeStrategy(
        space=tree.space,
        cover_at_raw=cover_at,
        back_map=back_map,
        label=f"stripped({tree.label})",
    )
    return stripped


def wedge_tree(tree: TreeStrategy, box_limit: int = 20_000) -> TreeStrategy:
    """Intersect, indexwise, the covers at all nodes coordinatewise below
    each node.

    The new set at node sigma + (n,) is the intersection of the n-th members
    of the covers at all nodes tau <= sigma, with structurally duplicate
    factors collapsed. Covers stay increasing, each new cover refines the
    original at the same node, and the finer-with-larger-nodes monotonicity
    holds: for tau <= sigma and m <= n the new set at sigma + (m,) is
    contained in the new set at tau + (n,).
    """

    def factor_sets(bound: Path, n: int) -> list[OpenSet]:
        out: list[OpenSet] = []
        seen: set[tuple] = set()
        for tau in box_paths(bound, box_limit):
            s = tree.cover_at(tau).sets(n)
            d = describe(s)
            if d not in seen:
                seen.add(d)
                out.append(s)
        return out

    def cover_at(path: Path) -> IndexedCover:
        base = tree.cover_at(path)

        def sets(n: int) -> OpenSet:
            parts = factor_sets(path, n)
            if len(parts) == 1:
                return parts[0]
            return FiniteIntersection(parts=tuple(parts))

        def witness(p: Point) -> int:
            w = 0
            for tau in box_paths(path, box_limit):
                w = max(w, witness_of(tree.cover_at(tau), p))
            return w

        return IndexedCover(
            space=tree.space,
            sets=sets,
            witness=witness,
            increasing=base.increasing,
            label=f"wedged{path}",
        )

    return TreeStrategy(
        space=tree.space,
        cover_at_raw=cover_at,
        back_map=tree.back_map,
        label=f"wedge({tree.label})",
    )


def greedy_index_function(
    tree: TreeStrategy,
    point: Point,
    prefix: Path = (),
    scan_budget: int = 10_000,
) -> BaireFunction:
    """The greedy index trace of a point through a tree: entry n is the least
    child index whose set contains the point, after the path fixed by the
    prefix (whose entries are returned verbatim for arguments up to its
    length)."""

    entries: list[int] = list(prefix)

    def eval_raw(n: int) -> int:
        while len(entries) < n:
            at = tuple(entries)
            cover = tree.cover_at(at)
            w = witness_of(cover, point)
            pick = None
            for m in range(1, min(w, scan_budget) + 1):
                if member(tree.set_at(at + (m,)), point):
                    pick = m
                    break
            if pick is None:
                raise BudgetError(f"no covering child within {scan_budget} at node {at}")
            entries.append(pick)
        return entries[n - 1]

    tag = f"trace(p{point.id}" + (f", prefix={prefix})" if prefix else ")")
    return BaireFunction(eval_raw=eval_raw, description=tag)


def evasion_function(
    tree: TreeStrategy,
    sample: Sequence[Point],
    node_budget: int = 12,
) -> BaireFunction:
    """A function eventually dominating, argument by argument, the greedy
    traces of the sampled points pinned to an enumeration prefix of finite
    sequences and to the function's own prefixes.

    g(n) is the max of trace(x, pinned to sigma)(n) over the first min(n,
    sample size) sampled points and every relevant pinned prefix sigma with
    length below n; each sampled point and prefix therefore satisfies
    trace <= g from some argument on. Including g's own prefixes (known
    recursively when g(n) is computed) is what the node-wise iteration of the
    counterplay consumes.
    """
    if not sample:
        raise ValueError("the sample must be nonempty")

    generic_prefixes = [finseq_from_index(i) for i in range(1, node_budget + 1)]
    traces: dict[tuple[Path, int], BaireFunction] = {}

    def trace(prefix: Path, x: Point) -> BaireFunction:
        key = (prefix, x.id)
        hit = traces.get(key)
        if hit is None:
            hit = traces[key] = greedy_index_function(tree, x, prefix)
        return hit

    def eval_raw(n: int) -> int:
        prefixes = [s for s in generic_prefixes if len(s) < n]
        prefixes.extend(g.prefix(k) for k in range(1, n))
        best = 1
        for x in sample[: min(n, len(sample))]:
            for sigma in prefixes:
                best = max(best, trace(sigma, x)(n))
        return best

    g = BaireFunction(eval_raw=eval_raw, description=f"evasion(sample={len(sample)})")
    return g


@dataclass(frozen=True)
class LargeCoverReport:
    """Covering innings per sampled point id, and whether every selected set
    was distinct from the earlier ones."""

    covering_innings: dict[int, tuple[int, ...]]
    distinct_selections: bool

    def min_multiplicity(self) -> int:
        if not self.covering_innings:
            return 0
        return min(len(v) for v in self.covering_innings.values())


@dataclass(frozen=True)
class LargeCounterplayResult:
    transcript: Transcript
    report: LargeCoverReport
    evasion_prefix: Path
    wedged_path: Path
    stripped_play: bool = True


def counterplay_large(
    tree: TreeStrategy,
    sample: Sequence[Point],
    innings: int,
    node_budget: int = 12,
    box_limit: int = 20_000,
    game: GameKind | None = None,
    start_node: Path = (),
) -> LargeCounterplayResult:
    """Play the evasion counterplay for the large-cover game.

    The tree (restricted below `start_node` when given) is stripped and
    wedged, the evasion function g is computed for the sample, and the play
    follows g: inning n selects member g(n) of the wedged cover at node
    (g(1), ..., g(n-1)). The transcript is emitted in the original tree's
    terms through the strip back-map; the report lists, per sampled point,
    the innings whose selected set contains it, and certifies that the
    selected sets are pairwise structurally distinct (stripping is what
    makes covering innings count as distinct covering sets).

    When stripping empties a node cover — the tree offers a finite subcover,
    so the removal budget runs out on structurally identical members — the
    play short-circuits to the unstripped pipeline: the second player is
    winning trivially there, and the report's `stripped_play` flag records
    that the distinctness guarantee was not in force.
    """
    from .trees import subtree

    if innings < 1:
        raise ValueError("a play needs at least one inning")
    base = subtree(tree, start_node) if start_node else tree
    stripped_play = True
    try:
        stripped = strip_chosen_tree(base)
        wedged = wedge_tree(stripped, box_limit=box_limit)
        g = evasion_function(wedged, sample, node_budget=node_budget)
        path = g.prefix(innings)
        orig_moves = stripped.back_map(path)
        orig_path = tuple(m[0] for m in orig_moves)
    except BudgetError:
        stripped_play = False
        wedged = wedge_tree(base, box_limit=box_limit)
        g = evasion_function(wedged, sample, node_budget=node_budget)
        path = g.prefix(innings)
        orig_path = path

    records = []
    chosen_sets: list[OpenSet] = []
    game = game or large_menger_game(2)
    for n in range(1, innings + 1):
        cover = base.cover_at(orig_path[: n - 1])
        idx = orig_path[n - 1]
        audit = {"evasion_value": path[n - 1], "stripped_index": path[n - 1]}
        records.append(make_inning(GameKind("single", game.multiplicity), n, cover, (idx,), audit=audit))
        chosen_sets.append(base.set_at(orig_path[:n]))
    transcript = Transcript(
        game=GameKind("single", game.multiplicity),
        innings=tuple(records),
        label=f"large({tree.label})",
    )

    covering: dict[int, tuple[int, ...]] = {}
    for x in sample:
        covering[x.id] = tuple(
            n for n in range(1, innings + 1) if member(chosen_sets[n - 1], x)
        )
    descriptions = [describe(s) for s in chosen_sets]
    report = LargeCoverReport(
        covering_innings=covering,
        distinct_selections=len(set(descriptions)) == len(descriptions),
    )
    return LargeCounterplayResult(
        transcript=transcript,
        report=report,
        evasion_prefix=path,
        wedged_path=path,
        stripped_play=stripped_play,
    )
