"""Property tests over randomly generated expressions, covers, and boxes."""

from hypothesis import given, settings, strategies as st

from selectiongames.covers import CofiniteSpec, IndexedCover, increasing_form, is_cover_up_to, wedge_finite
from selectiongames.errors import ResourceLimitError
from selectiongames.spaces import (
    CountableDiscrete,
    FiniteIntersection,
    FiniteUnion,
    ProductSpace,
    FiniteTopological,
    initial_segment,
    member,
    singleton,
    whole,
)
from selectiongames.trees import box_paths

import pytest

N = CountableDiscrete()


def leaf_sets():
    return st.one_of(
        st.integers(min_value=0, max_value=8).map(lambda m: initial_segment(N, m)),
        st.integers(min_value=0, max_value=8).map(lambda i: singleton(N, i)),
        st.just(whole(N)),
    )


def expressions(depth=3):
    return st.recursive(
        leaf_sets(),
        lambda children: st.one_of(
            st.lists(children, min_size=0, max_size=3).map(lambda ps: FiniteUnion(parts=tuple(ps))),
            st.lists(children, min_size=0, max_size=3).map(lambda ps: FiniteIntersection(parts=tuple(ps))),
        ),
        max_leaves=8,
    )


@given(expressions(), expressions(), st.integers(min_value=0, max_value=12))
@settings(max_examples=60)
def test_boolean_structure_of_expressions(a, b, pid):
    p = N.point(pid)
    assert member(FiniteIntersection(parts=(a, b)), p) == (member(a, p) and member(b, p))
    assert member(FiniteUnion(parts=(a, b)), p) == (member(a, p) or member(b, p))


@given(st.lists(st.integers(min_value=0, max_value=10), min_size=1, max_size=8))
@settings(max_examples=40)
def test_increasing_form_is_monotone_and_covers(bounds):
    # a cover of arbitrary segments with an honest witness
    def witness(p):
        for j, m in enumerate(bounds, start=1):
            if p.id <= m:
                return j
        return len(bounds)  # may fail membership: constrain below

    top = max(bounds)
    cover = IndexedCover(
        N,
        sets=lambda j: initial_segment(N, bounds[min(j, len(bounds)) - 1]),
        witness=witness,
    )
    inc = increasing_form(cover)
    for j in range(1, len(bounds) + 1):
        for i in range(top + 2):
            p = N.point(i)
            if member(inc.sets(j), p):
                assert member(inc.sets(j + 1), p)
    assert is_cover_up_to(inc, top + 1)


@given(
    st.lists(st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=3), min_size=1, max_size=3)
)
@settings(max_examples=40)
def test_wedge_finite_size_and_membership(shape):
    families = [[initial_segment(N, m) for m in fam] for fam in shape]
    out = wedge_finite(families)
    expected = 1
    for fam in families:
        expected *= len(fam)
    assert len(out) == expected
    # each member is the intersection of one set per family: check the first
    p = N.point(min(min(fam) for fam in shape))
    assert member(out[0], p) == all(member(fam[0], p) for fam in families)


@given(st.integers(min_value=0, max_value=400))
@settings(max_examples=50)
def test_product_space_split_combine_round_trip(idx):
    prod = ProductSpace(N)
    base, level = prod.split(prod.point(idx))
    assert prod.combine(base, level).id == idx


@given(st.integers(min_value=0, max_value=60))
@settings(max_examples=30)
def test_product_space_over_finite_base(idx):
    space = FiniteTopological.discrete(3)
    prod = ProductSpace(space)
    base, level = prod.split(prod.point(idx))
    assert 0 <= base.id < 3 and level >= 1
    assert prod.combine(base, level).id == idx


def test_box_paths_resource_guard():
    with pytest.raises(ResourceLimitError):
        list(box_paths((10, 10, 10), limit=100))


def test_cofinite_spec_rejects_nonpositive():
    with pytest.raises(ValueError):
        CofiniteSpec(frozenset({0}))
