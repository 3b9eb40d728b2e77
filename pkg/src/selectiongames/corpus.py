"""The built-in corpus: named strategies, seeded random strategies, tree
corpora for the single-selection and large-cover constructions, and the
bundled finite game instances.

The theorems quantify over all strategies; a fixed set of named shapes plus
seeded random generation gives reproducible breadth. All randomness is
seeded, and history hashing uses an explicit 64-bit fold so the corpus is
stable across interpreter runs.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .covers import IndexedCover
from .engine import AliceStrategy, History
from .solver import FiniteGameInstance, stationary_instance
from .spaces import FiniteTopological, SpaceModel, initial_segment, singleton, whole
from .trees import Path, TreeStrategy

_MASK = (1 << 64) - 1


def fold_history(history: History) -> int:
    """Deterministic 64-bit hash of a selection history (indices only)."""
    h = 0x9E3779B97F4A7C15
    for sel in history:
        h = (h * 1000003 ^ 0xABCDEF) & _MASK
        for i in sel.indices:
            h = (h * 1000003 ^ i) & _MASK
    return h


# ---------------------------------------------------------------------------
# Primitive covers on countable models


def segment_cover(space: SpaceModel, shift: int = 0, label: str | None = None) -> IndexedCover:
    """The increasing cover whose j-th member is the initial segment of
    length shift + j."""
    return IndexedCover(
        space=space,
        sets=lambda j: initial_segment(space, shift + j - 1),
        witness=lambda p: max(1, p.id - shift + 1),
        increasing=True,
        label=label or (f"segments+{shift}" if shift else "segments"),
    )


def singleton_cover(space: SpaceModel, label: str | None = None) -> IndexedCover:
    """The cover of one-point sets, in enumeration order (not increasing)."""
    return IndexedCover(
        space=space,
        sets=lambda j: singleton(space, j - 1),
        witness=lambda p: p.id + 1,
        increasing=False,
        label=label or "singletons",
    )


def whole_head_cover(space: SpaceModel, label: str | None = None) -> IndexedCover:
    """Whole space first, then segments (a cover with a one-set subcover)."""
    return IndexedCover(
        space=space,
        sets=lambda j: whole(space) if j == 1 else initial_segment(space, j - 2),
        witness=lambda p: 1,
        increasing=False,
        label=label or "whole-head",
    )


def _memoized_strategy(space: SpaceModel, name: str, cover_for: Callable[[History], IndexedCover]) -> AliceStrategy:
    memo: dict[tuple[tuple[int, ...], ...], IndexedCover] = {}

    def move(history: History) -> IndexedCover:
        key = tuple(sel.indices for sel in history)
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = cover_for(history)
        return hit

    return AliceStrategy(space=space, move=move, name=name)


def named_strategies(space: SpaceModel) -> dict[str, AliceStrategy]:
    """The five named corpus strategies."""

    def shifted(history: History) -> IndexedCover:
        shift = max(history[-1].indices) if history else 0
        return segment_cover(space, shift=shift)

    def mixed(history: History) -> IndexedCover:
        shift = sum(max(sel.indices) for sel in history) % 7
        if len(history) % 2 == 0:
            return segment_cover(space, shift=shift)
        return singleton_cover(space)

    return {
        "seg_tower": _memoized_strategy(space, "seg_tower", lambda h: segment_cover(space)),
        "shifted_seg": _memoized_strategy(space, "shifted_seg", shifted),
        "singletons": _memoized_strategy(space, "singletons", lambda h: singleton_cover(space)),
        "whole_head": _memoized_strategy(space, "whole_head", lambda h: whole_head_cover(space)),
        "mixed_adversarial": _memoized_strategy(space, "mixed_adversarial", mixed),
    }


def seeded_strategy(space: SpaceModel, seed: int) -> AliceStrategy:
    """A deterministic pseudo-random strategy: per history, draw one of the
    primitive cover shapes with a small random shift."""

    def cover_for(history: History) -> IndexedCover:
        rng = random.Random((seed * 0x9E3779B1 ^ fold_history(history)) & _MASK)
        shape = rng.choice(["seg", "seg", "seg", "single", "whole"])
        if shape == "seg":
            return segment_cover(space, shift=rng.randrange(0, 5))
        if shape == "single":
            return singleton_cover(space)
        return whole_head_cover(space)

    return _memoized_strategy(space, f"seeded{seed}", cover_for)


def strategy_corpus(space: SpaceModel, n_random: int = 20, seed: int = 0) -> dict[str, AliceStrategy]:
    """Named strategies plus n_random seeded ones."""
    corpus = dict(named_strategies(space))
    for k in range(n_random):
        s = seeded_strategy(space, seed * 1000 + k)
        corpus[s.name] = s
    return corpus


# ---------------------------------------------------------------------------
# Tree corpora (single-selection indexing, and the large-cover suite)


def path_keyed_tree(
    space: SpaceModel,
    name: str,
    key_of: Callable[[Path], object],
    keys_on_box: Callable[[Path], Sequence[object]],
    cover_of_key: Callable[[object], IndexedCover],
) -> TreeStrategy:
    """A tree whose node cover depends on the node only through a small key.

    `keys_on_box(bound)` must list exactly the keys attained on the box of
    nodes coordinatewise below `bound`; the box hook then answers joint
    refinements without enumerating the box.
    """
    cover_memo: dict[object, IndexedCover] = {}

    def cover_for(key: object) -> IndexedCover:
        hit = cover_memo.get(key)
        if hit is None:
            hit = cover_memo[key] = cover_of_key(key)
        return hit

    def box_covers(bound: Path) -> tuple[IndexedCover, ...]:
        out: list[IndexedCover] = []
        seen: set[int] = set()
        for key in keys_on_box(bound):
            c = cover_for(key)
            if id(c) not in seen:
                seen.add(id(c))
                out.append(c)
        return tuple(out)

    return TreeStrategy(
        space=space,
        cover_at_raw=lambda path: cover_for(key_of(path)),
        box_covers=box_covers,
        label=name,
    )


def rothberger_tree_corpus(space: SpaceModel, n_random: int = 0, seed: int = 0) -> dict[str, TreeStrategy]:
    """Single-selection strategy trees mirroring the strategy corpus, with
    box hooks so the joint-refinement machinery stays small.

    Key shapes: constant (node-independent covers), last entry (the reply
    depends on the opponent's previous pick), depth, and depth-parity mixes.
    """

    def const_tree(name: str, cover: Callable[[], IndexedCover]) -> TreeStrategy:
        return path_keyed_tree(
            space,
            name,
            key_of=lambda path: None,
            keys_on_box=lambda bound: [None],
            cover_of_key=lambda key: cover(),
        )

    def last_keyed(name: str, cover_of_last: Callable[[int], IndexedCover], cap: int = 12) -> TreeStrategy:
        def key_of(path: Path) -> int:
            return min(path[-1], cap) if path else 0

        def keys_on_box(bound: Path) -> Sequence[int]:
            if not bound:
                return [0]
            return list(range(1, min(bound[-1], cap) + 1))

        return path_keyed_tree(space, name, key_of, keys_on_box, cover_of_last)

    def depth_keyed(name: str, cover_of_depth: Callable[[int], IndexedCover]) -> TreeStrategy:
        return path_keyed_tree(
            space,
            name,
            key_of=lambda path: len(path),
            keys_on_box=lambda bound: [len(bound)],
            cover_of_key=cover_of_depth,
        )

    corpus = {
        "seg_tower": const_tree("seg_tower", lambda: segment_cover(space)),
        "shifted_seg": last_keyed("shifted_seg", lambda last: segment_cover(space, shift=last)),
        "singletons": const_tree("singletons", lambda: singleton_cover(space)),
        "whole_head": const_tree("whole_head", lambda: whole_head_cover(space)),
        "mixed_adversarial": depth_keyed(
            "mixed_adversarial",
            lambda depth: singleton_cover(space) if depth % 2 else segment_cover(space, shift=depth % 5),
        ),
    }
    for k in range(n_random):
        rng = random.Random(seed * 7919 + k)
        shape = rng.choice(["const_seg", "depth", "last"])
        shift = rng.randrange(0, 4)
        nm = f"seeded{seed * 1000 + k}"
        if shape == "const_seg":
            corpus[nm] = const_tree(nm, lambda shift=shift: segment_cover(space, shift=shift))
        elif shape == "depth":
            corpus[nm] = depth_keyed(nm, lambda d, shift=shift: segment_cover(space, shift=(d + shift) % 6))
        else:
            corpus[nm] = last_keyed(nm, lambda last, shift=shift: segment_cover(space, shift=min(last + shift, 9)))
    return corpus


def appendix_tree_corpus(space: SpaceModel, n_random: int = 0, seed: int = 0) -> dict[str, TreeStrategy]:
    """Increasing-cover trees for the large-cover suite.

    These trees cover sampled points at ever smaller indices as the depth
    grows, which keeps the evasion function's path products bounded; trees
    with depth-independent covers make the wedge boxes grow as the product of
    the play's entries and are exercised at shallow depth in the invariant
    tests instead.
    """

    def depth_tree(name: str, rate: int = 1, base: int = 0) -> TreeStrategy:
        def cover_of_depth(depth: int) -> IndexedCover:
            return segment_cover(space, shift=base + rate * depth)

        return path_keyed_tree(
            space,
            name,
            key_of=lambda path: len(path),
            keys_on_box=lambda bound: [len(bound)],
            cover_of_key=cover_of_depth,
        )

    def max_tree(name: str, cap: int = 12) -> TreeStrategy:
        def key_of(path: Path) -> int:
            return min(max(path), cap) if path else 0

        def keys_on_box(bound: Path) -> Sequence[int]:
            if not bound:
                return [0]
            top = min(max(bound), cap)
            return list(range(1, top + 1))

        return path_keyed_tree(
            space, name, key_of, keys_on_box, lambda key: segment_cover(space, shift=key)
        )

    corpus = {
        "depth_shifted": depth_tree("depth_shifted", rate=1),
        "depth_fast": depth_tree("depth_fast", rate=2),
        "max_shifted": max_tree("max_shifted"),
        "whole_tree": path_keyed_tree(
            space,
            "whole_tree",
            key_of=lambda path: None,
            keys_on_box=lambda bound: [None],
            cover_of_key=lambda key: IndexedCover(
                space=space,
                sets=lambda j: whole(space),
                witness=lambda p: 1,
                increasing=True,
                label="wholes",
            ),
        ),
        "uniform_segments": path_keyed_tree(
            space,
            "uniform_segments",
            key_of=lambda path: None,
            keys_on_box=lambda bound: [None],
            cover_of_key=lambda key: segment_cover(space),
        ),
    }
    for k in range(n_random):
        rng = random.Random(seed * 104729 + k)
        nm = f"seeded{seed * 1000 + k}"
        corpus[nm] = depth_tree(nm, rate=rng.choice([1, 1, 2]), base=rng.randrange(0, 3))
    return corpus


# ---------------------------------------------------------------------------
# Bundled finite instances


def bundled_instances() -> dict[str, FiniteGameInstance]:
    """The finite instances the oracle suite runs on, all hand-checkable."""
    disc1 = FiniteTopological.discrete(1, tag="disc1")
    disc2 = FiniteTopological.discrete(2, tag="disc2")
    disc3 = FiniteTopological.discrete(3, tag="disc3")
    disc4 = FiniteTopological.discrete(4, tag="disc4")
    sierpinski = FiniteTopological(2, [[], [0], [0, 1]], tag="sierpinski")
    chain3 = FiniteTopological(3, [[], [0], [0, 1], [0, 1, 2]], tag="chain3")
    # two maximal proper opens overlapping in the middle point: the only
    # non-discrete bundled space whose covers need not contain the whole space
    valley = FiniteTopological(3, [[], [1], [0, 1], [1, 2], [0, 1, 2]], tag="valley")

    return {
        "one_point": stationary_instance(disc1, [[[0]]], name="one_point"),
        "two_point_singletons": stationary_instance(disc2, [[[0], [1]]], name="two_point_singletons"),
        "two_point_options": FiniteGameInstance(
            space=disc2,
            options_at=lambda history: (
                (frozenset({0, 1}),),
                (frozenset({0}), frozenset({1})),
            ),
            name="two_point_options",
        ),
        "three_point_singletons": stationary_instance(disc3, [[[0], [1], [2]]], name="three_point_singletons"),
        "four_point_pairs": stationary_instance(disc4, [[[0, 1], [2, 3]]], name="four_point_pairs"),
        "sierpinski_game": stationary_instance(sierpinski, [[[0], [0, 1]]], name="sierpinski_game"),
        "chain_game": stationary_instance(chain3, [[[0], [0, 1], [0, 1, 2]]], name="chain_game"),
        "valley_game": stationary_instance(valley, [[[0, 1], [1, 2]]], name="valley_game"),
    }
