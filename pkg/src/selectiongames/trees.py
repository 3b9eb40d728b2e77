"""Strategies in tree form: a cover attached to every finite sequence of
positive naturals, with the set at a node being the chosen member of its
parent's cover.

Both single-selection strategies (where the node sequence records the indices
the second player picked) and the normalized finite-selection strategies use
this shape; the normalization invariants (increasing covers, head condition)
are guaranteed by specific constructors, not by the type.

A tree may carry a `box_covers` hook returning the distinct cover objects
attached to the nodes of a coordinatewise-bounded box. Joint refinements
intersect over such boxes, whose node count is the product of the bound's
entries; the hook lets trees with few distinct covers (constant, or keyed by
depth or by a bounded aggregate of the node sequence) answer without
enumerating the box.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .covers import FiniteSelection, IndexedCover
from .engine import AliceStrategy, History
from .errors import ResourceLimitError
from .spaces import OpenSet, SpaceModel

Path = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class TreeStrategy:
    """A strategy as a tree of covers.

    cover_at(path) is the cover played after the second player chose the
    indices in `path`; the set at a nonempty node is its parent's member at
    the node's last index. back_map, when present, translates a tree path to
    the per-inning selections of the strategy this tree was derived from.
    """

    space: SpaceModel
    cover_at_raw: Callable[[Path], IndexedCover]
    back_map: Callable[[Path], tuple[tuple[int, ...], ...]] | None = None
    box_covers: Callable[[Path], tuple[IndexedCover, ...]] | None = None
    label: str = ""
    _cover_memo: dict[Path, IndexedCover] = field(default_factory=dict, repr=False)

    def cover_at(self, path: Path) -> IndexedCover:
        hit = self._cover_memo.get(path)
        if hit is None:
            hit = self._cover_memo[path] = self.cover_at_raw(path)
        return hit

    def set_at(self, path: Path) -> OpenSet:
        if not path:
            raise ValueError("the root carries a cover, not a set")
        return self.cover_at(path[:-1]).sets(path[-1])


def tree_from_strategy(alice: AliceStrategy, label: str = "") -> TreeStrategy:
    """View a single-selection strategy as a tree: the node sequence is the
    history of picked indices."""

    tree = TreeStrategy(
        space=alice.space,
        cover_at_raw=lambda path: alice.move(_history_for(tree, path)),
        label=label or f"tree({alice.name})",
    )
    return tree


def _history_for(tree: TreeStrategy, path: Path) -> History:
    history: History = ()
    for depth, idx in enumerate(path):
        prev = tree.cover_at(path[:depth])
        history = history + (FiniteSelection(prev, (idx,)),)
    return history


def strategy_from_tree(tree: TreeStrategy) -> AliceStrategy:
    """View a tree as a single-selection strategy (for legality replays)."""

    def move(history: History) -> IndexedCover:
        path = tuple(sel.indices[0] for sel in history)
        return tree.cover_at(path)

    return AliceStrategy(space=tree.space, move=move, name=tree.label)


def subtree(tree: TreeStrategy, start: Path, label: str = "") -> TreeStrategy:
    """Restrict play to the part of the tree below a designated node."""

    return TreeStrategy(
        space=tree.space,
        cover_at_raw=lambda path: tree.cover_at(start + path),
        back_map=None if tree.back_map is None else (lambda path: tree.back_map(start + path)),
        label=label or f"{tree.label}@{start}",
    )


def box_paths(bound: Path, limit: int) -> Iterable[Path]:
    """All node sequences coordinatewise between the all-ones sequence and
    `bound`, in lexicographic order. Raises when the box exceeds `limit`."""
    total = 1
    for b in bound:
        if b < 1:
            raise ValueError("box bounds must be positive")
        total *= b
    if total > limit:
        raise ResourceLimitError(f"node box of size {total} exceeds limit {limit}")
    if not bound:
        return [()]

    def gen() -> Iterable[Path]:
        counters = [1] * len(bound)
        while True:
            yield tuple(counters)
            pos = len(bound) - 1
            while pos >= 0:
                counters[pos] += 1
                if counters[pos] <= bound[pos]:
                    break
                counters[pos] = 1
                pos -= 1
            if pos < 0:
                return

    return gen()


def distinct_covers_on_box(tree: TreeStrategy, bound: Path, limit: int = 20000) -> list[IndexedCover]:
    """The distinct cover objects attached to the nodes of the box below
    `bound`, in first-appearance order.

    Uses the tree's hook when available; otherwise walks the box, guarded by
    `limit`.
    """
    if tree.box_covers is not None:
        return list(tree.box_covers(bound))
    covers: list[IndexedCover] = []
    seen: set[int] = set()
    for path in box_paths(bound, limit):
        cover = tree.cover_at(path)
        if id(cover) not in seen:
            seen.add(id(cover))
            covers.append(cover)
    return covers
