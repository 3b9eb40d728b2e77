import pytest

from selectiongames.corpus import segment_cover, whole_head_cover
from selectiongames.covers import FiniteSelection
from selectiongames.engine import (
    AliceStrategy,
    BobStrategy,
    GameKind,
    MENGER_GAME,
    ROTHBERGER_GAME,
    check_legal,
    evaluate_win,
    run_play,
)
from selectiongames.errors import LegalityError
from selectiongames.spaces import CountableDiscrete

N = CountableDiscrete()


def memo_strategy(cover_for, name):
    memo = {}

    def move(history):
        key = tuple(sel.indices for sel in history)
        if key not in memo:
            memo[key] = cover_for(key)
        return memo[key]

    return AliceStrategy(space=N, move=move, name=name)


def always_segments():
    return memo_strategy(lambda key: segment_cover(N), "segments")


def pick_inning_number():
    return BobStrategy(move=lambda cover, n, hist: FiniteSelection(cover, (n,)), name="diag")


class TestRunPlay:
    def test_direct_simulation(self):
        t = run_play(MENGER_GAME, always_segments(), pick_inning_number(), 3)
        assert t.truncated_at == 3
        assert [rec.selection for rec in t.innings] == [(1,), (2,), (3,)]
        # the selected sets are Seg(0), Seg(1), Seg(2): evaluate directly
        win = evaluate_win(t, 3)
        assert win.bob_wins

    def test_whole_first_single_game_one_inning(self):
        alice = memo_strategy(lambda key: whole_head_cover(N), "wholes")
        bob = BobStrategy(move=lambda cover, n, hist: FiniteSelection(cover, (1,)))
        t = run_play(ROTHBERGER_GAME, alice, bob, 1)
        assert evaluate_win(t, 50).bob_wins

    def test_zero_innings_rejected(self):
        with pytest.raises(ValueError):
            run_play(MENGER_GAME, always_segments(), pick_inning_number(), 0)

    def test_single_arity_enforced(self):
        bob = BobStrategy(move=lambda cover, n, hist: FiniteSelection(cover, (1, 2)))
        with pytest.raises(LegalityError):
            run_play(ROTHBERGER_GAME, always_segments(), bob, 1)

    def test_deterministic(self):
        t1 = run_play(MENGER_GAME, always_segments(), pick_inning_number(), 4)
        t2 = run_play(MENGER_GAME, always_segments(), pick_inning_number(), 4)
        assert [r.cover_prefix for r in t1.innings] == [r.cover_prefix for r in t2.innings]
        assert [r.selection for r in t1.innings] == [r.selection for r in t2.innings]


class TestCheckLegal:
    def test_round_trip(self):
        alice = always_segments()
        t = run_play(MENGER_GAME, alice, pick_inning_number(), 3)
        assert check_legal(t, alice)

    def test_detects_divergent_strategy(self):
        # strategy B differs from inning 2 on: covers shift by the last pick
        alice_a = always_segments()

        def cover_b(key):
            shift = max(key[-1]) if key else 0
            return segment_cover(N, shift=shift + 1) if key else segment_cover(N)

        alice_b = memo_strategy(cover_b, "shifted")
        t = run_play(MENGER_GAME, alice_a, pick_inning_number(), 3)
        verdict = check_legal(t, alice_b)
        assert not verdict
        assert verdict.failing_inning == 2

    def test_detects_invalid_index(self):
        alice = always_segments()
        t = run_play(MENGER_GAME, alice, pick_inning_number(), 2)
        bad_inning = t.innings[1]
        hacked = type(t)(
            game=t.game,
            innings=(t.innings[0], type(bad_inning)(
                number=bad_inning.number,
                cover_prefix=bad_inning.cover_prefix,
                selection=(2, 2),
                selected_sets=bad_inning.selected_sets,
            )),
        )
        verdict = check_legal(hacked, alice)
        assert not verdict
        assert verdict.failing_inning == 2


class TestEvaluateWin:
    def test_uncovered_points_reported(self):
        alice = always_segments()
        bob = BobStrategy(move=lambda cover, n, hist: FiniteSelection(cover, (1,)))
        t = run_play(MENGER_GAME, alice, bob, 3)  # only Seg(0) selected
        win = evaluate_win(t, 3)
        assert win.winner == "alice"
        assert win.uncovered == (1, 2)

    def test_zero_horizon_bob_wins(self):
        alice = always_segments()
        t = run_play(MENGER_GAME, alice, pick_inning_number(), 1)
        assert evaluate_win(t, 0).bob_wins

    def test_monotone_in_horizon(self):
        t = run_play(MENGER_GAME, always_segments(), pick_inning_number(), 4)
        wins = [evaluate_win(t, h).bob_wins for h in range(0, 8)]
        # once lost, never won again as the horizon grows
        assert wins == sorted(wins, reverse=True)

    def test_large_union_multiplicity(self):
        alice = always_segments()
        bob = BobStrategy(move=lambda cover, n, hist: FiniteSelection(cover, (n + 1,)))
        t = run_play(GameKind("finite", 2), alice, bob, 4)
        # selections Seg(1), Seg(2), Seg(3), Seg(4): p0 in all four, p3 in two
        win = evaluate_win(t, 3)
        assert win.bob_wins
        assert win.coverage[0] == 4
