"""Move semantics: frozen examples, exhaustive identities, projection."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlab import DeckState, MoveKind, OccupancyState, apply_move, project_deck

A, B, C, D = (MoveKind.TOP_TO_PENULTIMATE, MoveKind.TOP_TO_BOTTOM,
              MoveKind.BOTTOM_TO_TOP, MoveKind.SWAP_TOP_TWO)


def direct_move(vec, move):
    """Independent definitions of the four moves on a position vector."""
    v = list(vec)
    n = len(v)
    if move == A:
        return v[1:n - 1] + [v[0]] + [v[n - 1]]
    if move == B:
        return v[1:] + [v[0]]
    if move == C:
        return [v[-1]] + v[:-1]
    if move == D:
        return [v[1], v[0]] + v[2:]
    raise AssertionError


def all_states(n):
    for bits in itertools.product((0, 1), repeat=n):
        yield bits


def test_frozen_examples():
    s = OccupancyState([1, 0, 0, 0])
    assert s.apply(B).to_vector().tolist() == [0, 0, 0, 1]
    s = OccupancyState([1, 0, 0, 0])
    assert s.apply(A).to_vector().tolist() == [0, 0, 1, 0]
    s = OccupancyState([1, 0, 1, 0])
    assert s.apply(D).to_vector().tolist() == [0, 1, 1, 0]


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_moves_match_direct_definitions_exhaustively(n):
    for bits in all_states(n):
        for move in MoveKind:
            s = OccupancyState(np.array(bits, dtype=np.uint8))
            apply_move(s, move)
            assert s.to_vector().tolist() == direct_move(bits, move)


@pytest.mark.parametrize("n", [4, 6])
def test_top_to_bottom_then_bottom_to_top_is_identity(n):
    for bits in all_states(n):
        s = OccupancyState(np.array(bits, dtype=np.uint8))
        s.apply(B).apply(C)
        assert s.to_vector().tolist() == list(bits)


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_conservation_exhaustive(n):
    for bits in all_states(n) if n <= 8 else []:
        total = sum(bits)
        for move in MoveKind:
            s = OccupancyState(np.array(bits, dtype=np.uint8))
            s.apply(move)
            assert s.particle_count() == total
    # larger n: random sweep
    rng = np.random.default_rng(n)
    for _ in range(50):
        bits = rng.integers(0, 2, size=n).astype(np.uint8)
        s = OccupancyState(bits)
        for move in rng.integers(0, 4, size=200):
            s.apply(MoveKind(int(move)))
        assert s.particle_count() == int(bits.sum())


def test_moves_are_bijections():
    n = 6
    for move in MoveKind:
        images = set()
        for bits in all_states(n):
            s = OccupancyState(np.array(bits, dtype=np.uint8))
            s.apply(move)
            images.add(tuple(s.to_vector().tolist()))
        assert len(images) == 2 ** n


@given(st.integers(4, 40).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 1), min_size=n, max_size=n),
        st.integers(0, n - 1),
        st.lists(st.integers(0, 3), min_size=0, max_size=60))))
@settings(max_examples=60, deadline=None)
def test_origin_offset_is_representation_invariant(data):
    bits, origin, moves = data
    # same logical content stored at two different physical origins
    vec = np.array(bits, dtype=np.uint8)
    s1 = OccupancyState(vec.copy(), origin=0)
    s2 = OccupancyState(np.roll(vec, origin), origin=origin)
    assert s1 == s2
    for m in moves:
        s1.apply(MoveKind(m))
        s2.apply(MoveKind(m))
        assert s1.to_vector().tolist() == s2.to_vector().tolist()


@given(st.integers(4, 24).flatmap(
    lambda n: st.tuples(
        st.permutations(range(1, n + 1)),
        st.sets(st.integers(1, n)),
        st.lists(st.integers(0, 3), min_size=1, max_size=40))))
@settings(max_examples=60, deadline=None)
def test_projection_commutes_with_moves(data):
    perm, black, moves = data
    deck = DeckState(np.array(perm))
    eta = project_deck(deck, black)
    for m in moves:
        deck.apply(MoveKind(m))
        eta.apply(MoveKind(m))
        assert project_deck(deck, black) == eta


def test_small_decks_rejected():
    for n in (1, 2, 3):
        with pytest.raises(ValueError):
            OccupancyState([1] * n)
        with pytest.raises(ValueError):
            DeckState(list(range(1, n + 1)))


def test_bad_contents_rejected():
    with pytest.raises(ValueError):
        OccupancyState([0, 1, 2, 0])
    with pytest.raises(ValueError):
        DeckState([1, 2, 2, 4])


def test_logical_position_accessor():
    s = OccupancyState([1, 1, 0, 0, 0], origin=3)
    assert [s.get(p) for p in range(1, 6)] == s.to_vector().tolist()
