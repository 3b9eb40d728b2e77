"""Indexed covers with constructive witnesses, and the transformations the
game constructions use.

A cover here is a lazy 1-based sequence of open sets together with a witness
function mapping each point to an index of a set containing it. Witnesses are
what make "this family covers the space" a checkable contract at desk scale:
every transformation below transports the witness, and the transported
witness is re-verified on use.

Coverage, largeness, and extensional equality are checked exactly on finite
models and up to an enumeration-prefix horizon on countable ones; the horizon
is a test parameter, never a truncation of the data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import IntegrityError
from .spaces import (
    CumulativeUnion,
    FiniteIntersection,
    FiniteUnion,
    OpenSet,
    Point,
    SpaceModel,
    member,
)


class IndexedCover:
    """A lazy countable family of open sets with a coverage witness.

    `sets` is 1-based and memoized; `witness` maps a point to some index of a
    member containing it; `provenance` back-maps each index to the indices of
    an ancestor cover it translates to (identity for primitive covers).
    """

    def __init__(
        self,
        space: SpaceModel,
        sets: Callable[[int], OpenSet],
        witness: Callable[[Point], int],
        provenance: Callable[[int], tuple[int, ...]] | None = None,
        increasing: bool = False,
        label: str = "",
    ):
        self.space = space
        self._sets = sets
        self._memo: dict[int, OpenSet] = {}
        self._witness = witness
        self._provenance = provenance
        self.increasing = increasing
        self.label = label

    def sets(self, j: int) -> OpenSet:
        if j < 1:
            raise ValueError("cover indices are 1-based")
        hit = self._memo.get(j)
        if hit is None:
            hit = self._memo[j] = self._sets(j)
        return hit

    def witness(self, p: Point) -> int:
        return self._witness(p)

    def provenance(self, j: int) -> tuple[int, ...]:
        if self._provenance is None:
            return (j,)
        return self._provenance(j)

    def __repr__(self) -> str:
        kind = "increasing " if self.increasing else ""
        return f"<{kind}cover {self.label or hex(id(self))} over {self.space.tag}>"


@dataclass(frozen=True)
class FiniteSelection:
    """A finite, nonempty, duplicate-free choice of indices from a cover."""

    cover: IndexedCover
    indices: tuple[int, ...]

    def __post_init__(self):
        if not self.indices:
            raise ValueError("a selection must pick at least one index")
        if any(i < 1 for i in self.indices):
            raise ValueError("selection indices are 1-based")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("selection indices must be distinct")

    def sets(self) -> tuple[OpenSet, ...]:
        return tuple(self.cover.sets(i) for i in self.indices)


@dataclass(frozen=True)
class CofiniteSpec:
    """A cofinite subfamily, recorded by its finite excluded index set."""

    excluded: frozenset[int]

    def __post_init__(self):
        if any(i < 1 for i in self.excluded):
            raise ValueError("excluded indices are 1-based")

    def min_surviving(self) -> int:
        j = 1
        while j in self.excluded:
            j += 1
        return j


@dataclass(frozen=True)
class Verdict:
    """Outcome of a desk-scale check; truthy exactly when it passed."""

    ok: bool
    reason: str = ""
    failing_point: Point | None = None
    failing_inning: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def witness_of(cover: IndexedCover, p: Point) -> int:
    """The cover's witness index for p, verified by membership.

    A witness that fails membership signals a broken transformation and
    raises :class:`IntegrityError`.
    """
    j = cover.witness(p)
    if j < 1:
        raise IntegrityError(f"witness returned invalid index {j} for {p!r}")
    if not member(cover.sets(j), p):
        raise IntegrityError(f"witness index {j} of cover {cover.label!r} does not contain {p!r}")
    return j


def is_cover_up_to(cover: IndexedCover, horizon: int) -> Verdict:
    """Check the witness invariant on every enumerated point below the horizon."""
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    for p in cover.space.points(horizon):
        try:
            witness_of(cover, p)
        except IntegrityError:
            return Verdict(False, reason="witness failed membership", failing_point=p)
    return Verdict(True)


def increasing_form(cover: IndexedCover) -> IndexedCover:
    """Replace each member by the union of all members up to it.

    The result is an increasing cover whose j-th member back-maps to the
    selection {1..j} of the original: picking one cumulative set is the same
    legal move as picking the first j originals, and any space covered by the
    cumulative sets is covered by the originals.
    """
    return IndexedCover(
        space=cover.space,
        sets=lambda j: CumulativeUnion(cover=cover, upto=j),
        witness=cover.witness,
        provenance=lambda j: tuple(range(1, j + 1)),
        increasing=True,
        label=f"increasing({cover.label})" if cover.label else "increasing",
    )


def head_normalize(chosen: OpenSet, reply: IndexedCover) -> IndexedCover:
    """Prefix a cover with the set just chosen, so the reply's first member
    equals the previous move.

    Index 1 back-maps to answering index 1 of the reply, and index j+1 to
    answering index j; since the chosen set was already picked, unioning it
    into later members adds no new coverage.
    """
    if not reply.increasing:
        raise ValueError("head_normalize expects an increasing reply")

    def sets(j: int) -> OpenSet:
        if j == 1:
            return chosen
        return FiniteUnion(parts=(chosen, reply.sets(j - 1)))

    return IndexedCover(
        space=reply.space,
        sets=sets,
        witness=lambda p: reply.witness(p) + 1,
        provenance=lambda j: (1,) if j == 1 else (j - 1,),
        increasing=True,
        label=f"headed({reply.label})" if reply.label else "headed",
    )


def wedge_finite(families: Sequence[Sequence[OpenSet]]) -> list[OpenSet]:
    """All cross intersections of finitely many finite families.

    One set is taken from each family; results are listed in lexicographic
    order of the source index tuples, so the output size is the product of
    the input sizes.
    """
    if not families:
        raise ValueError("the wedge of no families is undefined")
    for fam in families:
        if not fam:
            raise ValueError("wedge families must be nonempty")
    out: list[OpenSet] = []
    counters = [0] * len(families)
    total = 1
    for fam in families:
        total *= len(fam)
    for _ in range(total):
        out.append(FiniteIntersection(parts=tuple(fam[c] for fam, c in zip(families, counters))))
        for pos in range(len(families) - 1, -1, -1):
            counters[pos] += 1
            if counters[pos] < len(families[pos]):
                break
            counters[pos] = 0
    return out


def wedge_increasing(c1: IndexedCover, c2: IndexedCover) -> IndexedCover:
    """Indexwise intersection of two increasing covers.

    The result is increasing and refines both inputs; the witness is the max
    of the factor witnesses, which is valid exactly because the factors are
    increasing.
    """
    if not (c1.increasing and c2.increasing):
        raise ValueError("wedge_increasing expects increasing covers")
    if c1.space is not c2.space:
        raise ValueError("cannot wedge covers over different spaces")
    return IndexedCover(
        space=c1.space,
        sets=lambda j: FiniteIntersection(parts=(c1.sets(j), c2.sets(j))),
        witness=lambda p: max(c1.witness(p), c2.witness(p)),
        increasing=True,
        label="wedge",
    )


def is_large_up_to(
    selected: Iterable[OpenSet],
    horizon: int,
    multiplicity: int,
    budget: int,
) -> Verdict:
    """Check that every point below the horizon lies in at least
    `multiplicity` structurally distinct sets among the first `budget`
    inspected members."""
    from .spaces import describe

    pool: list[OpenSet] = []
    for s in selected:
        pool.append(s)
        if len(pool) >= budget:
            break
    space = None
    for s in pool:
        space = s.space_hint()
        if space is not None:
            break
    if space is None:
        raise ValueError("cannot infer the space from the selected sets")
    for p in space.points(horizon):
        seen: set[tuple] = set()
        for s in pool:
            if member(s, p):
                seen.add(describe(s))
                if len(seen) >= multiplicity:
                    break
        if len(seen) < multiplicity:
            return Verdict(False, reason=f"only {len(seen)} distinct sets cover", failing_point=p)
    return Verdict(True)
