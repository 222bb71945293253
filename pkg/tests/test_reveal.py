import numpy as np
import pytest

from recourse_game import draw_reveal


def released(n, d=1):
    rng = np.random.default_rng(100)
    return {i: rng.normal(size=d) for i in range(n)}


def test_p_one_reveals_everything():
    sel = released(5)
    pos = np.arange(3, dtype=float)[:, None]
    state = draw_reveal(sel, pos, p=1.0, seed=0)
    assert state.revealed_recourse.shape[0] == 5
    assert state.revealed_positives.shape[0] == 3
    assert state.revealed_recourse_ids == tuple(range(5))


def test_p_zero_reveals_nothing():
    state = draw_reveal(released(5), np.arange(3, dtype=float)[:, None], p=0.0, seed=0)
    assert state.public.shape[0] == 0
    assert state.revealed_recourse_ids == ()


def test_same_seed_identical():
    sel = released(20)
    pos = np.random.default_rng(1).normal(size=(10, 1))
    a = draw_reveal(sel, pos, p=0.5, seed=42)
    b = draw_reveal(sel, pos, p=0.5, seed=42)
    assert a.revealed_recourse_ids == b.revealed_recourse_ids
    assert np.array_equal(a.public, b.public)


def test_invalid_p_rejected():
    with pytest.raises(ValueError):
        draw_reveal(released(2), None, p=1.5, seed=0)


def test_expected_reveal_count():
    # mean of |revealed released set| over many draws sits within 3 standard
    # errors of p * n
    n, p, draws = 20, 0.7, 10000
    sel = released(n)
    counts = np.array([
        len(draw_reveal(sel, None, p=p, seed=s).revealed_recourse_ids)
        for s in range(draws)
    ])
    expect = p * n
    stderr = np.sqrt(n * p * (1 - p) / draws)
    assert abs(counts.mean() - expect) <= 3 * stderr


def test_monotone_coupling_in_p():
    sel = released(30)
    pos = np.random.default_rng(2).normal(size=(10, 1))
    for seed in range(20):
        prev: set = set()
        prev_pos = 0
        for p in (0.2, 0.5, 0.8, 1.0):
            state = draw_reveal(sel, pos, p=p, seed=seed)
            ids = set(state.revealed_recourse_ids)
            assert prev <= ids
            assert state.revealed_positives.shape[0] >= prev_pos
            prev, prev_pos = ids, state.revealed_positives.shape[0]


def test_duplicate_rows_deduplicated():
    sel = {0: np.array([1.0]), 1: np.array([1.0]), 2: np.array([2.0])}
    state = draw_reveal(sel, None, p=1.0, seed=0)
    assert state.revealed_recourse.shape[0] == 2
    assert state.revealed_recourse_ids == (0, 1, 2)


def test_empty_inputs():
    state = draw_reveal({}, None, p=0.7, seed=0)
    assert state.public.shape[0] == 0
