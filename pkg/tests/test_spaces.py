import pytest

from selectiongames.errors import CrossSpaceError
from selectiongames.spaces import (
    CountableDiscrete,
    Empty,
    FiniteIntersection,
    FiniteTopological,
    FiniteUnion,
    ProductSpace,
    Whole,
    describe,
    enumerate_points,
    extension,
    extensionally_equal,
    from_ids,
    initial_segment,
    member,
    singleton,
    whole,
)

N = CountableDiscrete()


def test_enumerate_points_prefix():
    assert [p.id for p in enumerate_points(N, 3)] == [0, 1, 2]
    assert enumerate_points(N, 0) == []


def test_enumerate_points_clamps_on_finite_models():
    space = FiniteTopological.discrete(2)
    assert [p.id for p in enumerate_points(space, 5)] == [0, 1]


def test_member_on_segments():
    seg3 = initial_segment(N, 3)
    assert member(seg3, N.point(2))
    assert not member(seg3, N.point(4))


def test_member_intersection_and_union():
    seg3, seg1 = initial_segment(N, 3), initial_segment(N, 1)
    p2 = N.point(2)
    assert not member(FiniteIntersection(parts=(seg3, seg1)), p2)
    assert member(FiniteUnion(parts=(singleton(N, 0), initial_segment(N, 2))), p2)


def test_empty_combinations():
    p = N.point(0)
    assert member(FiniteIntersection(parts=()), p)  # empty intersection is the whole space
    assert not member(FiniteUnion(parts=()), p)  # empty union is empty


def test_whole_and_empty():
    for i in (0, 5, 17):
        assert member(Whole(), N.point(i))
        assert not member(Empty(), N.point(i))


def test_boolean_structure_sampled():
    a, b = initial_segment(N, 4), singleton(N, 6)
    for i in range(12):
        p = N.point(i)
        assert member(FiniteIntersection(parts=(a, b)), p) == (member(a, p) and member(b, p))
        assert member(FiniteUnion(parts=(a, b)), p) == (member(a, p) or member(b, p))


def test_membership_is_pure():
    s = initial_segment(N, 2)
    p = N.point(1)
    assert member(s, p) == member(s, p)


def test_cross_space_query_raises():
    other = CountableDiscrete(tag="M")
    seg = initial_segment(N, 3)
    with pytest.raises(CrossSpaceError):
        member(seg, other.point(1))


def test_finite_topology_closure_checked():
    FiniteTopological(2, [[], [0], [0, 1]])  # Sierpinski: fine
    with pytest.raises(ValueError):
        FiniteTopological(2, [[], [0], [1]])  # missing the union {0,1}
    with pytest.raises(ValueError):
        FiniteTopological(2, [[0], [0, 1]])  # missing the empty set


def test_from_ids_validates_openness():
    space = FiniteTopological(2, [[], [0], [0, 1]])
    from_ids(space, {0})
    with pytest.raises(ValueError):
        from_ids(space, {1})


def test_extension_on_finite_model():
    space = FiniteTopological.discrete(3)
    s = from_ids(space, {0, 2})
    assert extension(s, space) == frozenset({0, 2})


def test_extensionally_equal_sampled():
    assert extensionally_equal(
        FiniteUnion(parts=(initial_segment(N, 1), initial_segment(N, 3))),
        initial_segment(N, 3),
        N,
        horizon=30,
    )


def test_describe_is_structural():
    assert describe(initial_segment(N, 3)) == ("named", "seg:3")
    assert describe(initial_segment(N, 3)) == describe(initial_segment(N, 3))
    assert describe(whole(N)) == ("whole",)


def test_product_space_points_and_lift():
    prod = ProductSpace(N)
    p = prod.point(4)
    base, level = prod.split(p)
    assert prod.combine(base, level) is p
    lifted = prod.lift(initial_segment(N, 3), level)
    assert member(lifted, p) == (base.id <= 3)
    other_level = prod.lift(initial_segment(N, 3), level + 1)
    assert not member(other_level, p)


def test_product_space_enumeration_is_bijective():
    prod = ProductSpace(N)
    seen = set()
    for i in range(50):
        base, level = prod.split(prod.point(i))
        seen.add((base.id, level))
    assert len(seen) == 50
