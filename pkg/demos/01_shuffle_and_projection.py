"""The four moves, the colour projection, and O(1) event cost.

A deck evolves by four moves: top card to the penultimate slot, top to
bottom, bottom to top, and a swap of the two top cards.  Colouring cards
black/red and keeping the 0/1 pattern projects the deck chain onto a
particle system; the projection commutes with every move.
"""

import time

import numpy as np

from rlab import (DeckState, EventClock, MoveKind, OccupancyState, preset,
                  project_deck, run_until, stream)

deck = DeckState.identity(8)
black = {1, 3, 5}  # colour three cards black
print("deck      :", deck.to_vector())
print("projection:", project_deck(deck, black).to_vector())

for move in MoveKind:
    d = deck.copy()
    d.apply(move)
    print(f"{move.name:<18} -> deck {d.to_vector()}  "
          f"particles {project_deck(d, black).to_vector()}")

# the occupancy chain is what the scaling experiments simulate
scheme = preset("rudvalis")
rng = stream(seed=1)
state = OccupancyState(np.array([1, 0, 1, 0, 0, 1, 0, 0], dtype=np.uint8))
clock = EventClock(rng=rng)
res = run_until(state, scheme, clock, t_target=2.0, observe_at=[1.0, 2.0])
print(f"\nran {res.events} events to t=2; particle count "
      f"{res.initial_particles} -> {res.final_particles} (conserved)")

# per-event cost does not grow with n: circular buffer + origin offset
for n in (2**10, 2**14, 2**18):
    state = OccupancyState(np.resize([1, 0], n))
    clock = EventClock(seed=3)
    horizon = 100_000 / scheme.event_rate(n)
    t0 = time.perf_counter()
    res = run_until(state, scheme, clock, horizon)
    dt = time.perf_counter() - t0
    print(f"n = {n:>7}: {res.events} events in {dt:.3f} s "
          f"({1e9 * dt / res.events:.0f} ns/event)")
