"""Deck and occupancy states for the generalized Rudvalis shuffle.

The chain acts on a deck of ``n`` cards through four moves: send the top
card to the penultimate position, send it to the bottom, bring the bottom
card to the top, or transpose the two top cards.  Colouring cards black/red
and keeping only the 0/1 pattern projects the permutation chain onto a
particle system on the discrete circle; that projection is what every
scaling experiment simulates.

Both state classes store their content in a circular buffer with a logical
``origin`` offset: logical position ``p`` (1-based, ``1`` = top of the deck)
lives at physical index ``(origin + p - 1) % n``.  The two insertion moves
are then pure origin shifts and the two remaining moves touch at most two
buffer cells, so every move costs O(1) regardless of ``n``.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np

__all__ = ["MoveKind", "OccupancyState", "DeckState", "apply_move", "project_deck"]


class MoveKind(IntEnum):
    """The four moves of the generalized Rudvalis shuffle."""

    TOP_TO_PENULTIMATE = 0  # position 1 -> n-1, rate a_n
    TOP_TO_BOTTOM = 1       # position 1 -> n,   rate b_n
    BOTTOM_TO_TOP = 2       # position n -> 1,   rate c_n
    SWAP_TOP_TWO = 3        # positions 1 <-> 2, rate d_n


def _check_size(n):
    # positions 1, 2, n-1, n must be pairwise distinct
    if n < 4:
        raise ValueError(f"deck size must be at least 4, got {n}")


class _CircularState:
    """Shared circular-buffer mechanics for deck and occupancy states."""

    __slots__ = ("buf", "origin")

    def __init__(self, buf, origin=0):
        self.buf = buf
        self.origin = origin % len(buf)

    @property
    def n(self):
        return len(self.buf)

    def get(self, p):
        """Value at logical position ``p`` (1-based)."""
        n = len(self.buf)
        return self.buf[(self.origin + p - 1) % n]

    def to_vector(self):
        """Contents in logical order ``(position 1, ..., position n)``."""
        return np.roll(self.buf, -self.origin)

    def _swap(self, p, q):
        n = len(self.buf)
        i = (self.origin + p - 1) % n
        j = (self.origin + q - 1) % n
        self.buf[i], self.buf[j] = self.buf[j], self.buf[i]

    def apply(self, move):
        """Apply one move in place.  O(1) for every move and every ``n``."""
        n = len(self.buf)
        if move == MoveKind.TOP_TO_BOTTOM:
            self.origin = (self.origin + 1) % n
        elif move == MoveKind.BOTTOM_TO_TOP:
            self.origin = (self.origin - 1) % n
        elif move == MoveKind.SWAP_TOP_TWO:
            self._swap(1, 2)
        elif move == MoveKind.TOP_TO_PENULTIMATE:
            # top-to-bottom followed by swapping the two bottom positions
            self.origin = (self.origin + 1) % n
            self._swap(n - 1, n)
        else:
            raise ValueError(f"unknown move {move!r}")
        return self

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.n == other.n and bool(
            np.array_equal(self.to_vector(), other.to_vector())
        )

    def __hash__(self):
        return hash((type(self).__name__, self.to_vector().tobytes()))


class OccupancyState(_CircularState):
    """Particle configuration eta on the discrete circle.

    ``bits`` holds 0/1 occupancies; ``bits[(origin + p - 1) % n]`` is the
    occupancy of logical position ``p``.  Every move conserves the particle
    count, so the total is cached once at construction.
    """

    def __init__(self, bits, origin=0):
        bits = np.ascontiguousarray(bits, dtype=np.uint8)
        _check_size(bits.size)
        if not np.all(bits <= 1):
            raise ValueError("occupancies must be 0 or 1")
        super().__init__(bits, origin)

    @property
    def bits(self):
        return self.buf

    def particle_count(self):
        return int(self.buf.sum())

    def copy(self):
        return OccupancyState(self.buf.copy(), self.origin)

    def __repr__(self):
        return f"OccupancyState({self.to_vector().tolist()})"


class DeckState(_CircularState):
    """Permutation state: ``slots`` is a circular buffer of card identifiers.

    Kept for validation parity with the occupancy chain; the scaling
    experiments simulate :class:`OccupancyState` directly.
    """

    def __init__(self, slots, origin=0):
        slots = np.ascontiguousarray(slots, dtype=np.int64)
        _check_size(slots.size)
        if sorted(slots.tolist()) != list(range(1, slots.size + 1)):
            raise ValueError("slots must be a permutation of 1..n")
        super().__init__(slots, origin)

    @classmethod
    def identity(cls, n):
        return cls(np.arange(1, n + 1))

    @property
    def slots(self):
        return self.buf

    def copy(self):
        return DeckState(self.buf.copy(), self.origin)

    def __repr__(self):
        return f"DeckState({self.to_vector().tolist()})"


def apply_move(state, move):
    """Apply ``move`` to ``state`` in place and return it."""
    return state.apply(move)


def project_deck(deck, black_cards):
    """Project a deck onto its colour pattern: black card -> particle.

    The projection commutes with every move, so simulating the occupancy
    chain and projecting a simulated deck give identical trajectories.
    """
    black = frozenset(int(c) for c in black_cards)
    bits = np.fromiter((1 if int(c) in black else 0 for c in deck.buf),
                       dtype=np.uint8, count=deck.n)
    return OccupancyState(bits, deck.origin)
