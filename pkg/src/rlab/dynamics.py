"""Continuous-time simulation of the projected shuffle chain.

The chain is simulated exactly: the total event rate ``n**beta * R_n`` is
constant in the state, so waiting times are i.i.d. exponential and the move
kind is an independent categorical draw (classic constant-rate kinetic
Monte Carlo).  Waits and moves are drawn from the replica's Philox stream
in fixed-size blocks and buffered on the clock, which makes a trajectory a
pure function of ``(initial state, scheme, seed)``: single-stepping,
running in one call, or running in several calls with different
observation schedules all consume the stream identically and therefore
produce the same event sequence.

Per-event work is O(1): insertion moves shift the circular-buffer origin,
the two swap-type moves touch two buffer cells (see :mod:`rlab.states`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fields import position_grid
from .rng import stream
from .states import MoveKind, OccupancyState

__all__ = [
    "EventClock",
    "RunResult",
    "step",
    "run_until",
    "sample_bernoulli",
    "sample_hyperplane",
    "boundary_integral_sup",
]

_BLOCK_FIRST = 64
_BLOCK_MAX = 8192


class _EventSource:
    """Buffered stream of (absolute event time, move kind) pairs.

    Draws grow geometrically from a small first block, so short runs pay
    for few variates while long runs amortize to large blocks.  The draw
    pattern depends only on how many events are consumed, never on the
    observation schedule, keeping trajectories pure functions of the seed.
    """

    def __init__(self, rng, event_rate, probs, t0=0.0):
        if event_rate <= 0.0:
            raise ValueError("degenerate chain: total rate is zero")
        self._rng = rng
        self._scale = 1.0 / event_rate
        self._cum = np.cumsum(probs)[:3]  # selection thresholds for 4 moves
        self._block = _BLOCK_FIRST
        self._t_acc = t0
        self._times = np.empty(0)
        self._moves = []
        self._i = 0

    def _refill(self):
        waits = self._rng.exponential(self._scale, self._block)
        u = self._rng.random(self._block)
        moves = np.searchsorted(self._cum, u, side="right")
        times = self._t_acc + np.cumsum(waits)
        self._block = min(4 * self._block, _BLOCK_MAX)
        self._t_acc = float(times[-1])
        self._times = times
        self._moves = moves.tolist()
        self._i = 0

    def _ensure(self):
        if self._i == len(self._moves):
            self._refill()


@dataclass
class EventClock:
    """Macroscopic time, event counter and the replica's random stream.

    A clock binds to the first (n, realized rates, beta) it simulates;
    reusing it for a different chain would silently misalign the buffered
    draws, so that is rejected.
    """

    t: float = 0.0
    events: int = 0
    rng: np.random.Generator = None
    seed: int | None = None

    _source: _EventSource = field(default=None, repr=False)
    _key: tuple = field(default=None, repr=False)

    def __post_init__(self):
        if self.rng is None:
            if self.seed is None:
                raise ValueError("EventClock needs a seed or an rng")
            self.rng = stream(self.seed)

    def source(self, n, scheme):
        key = (n, scheme.beta, scheme.realized(n))
        if self._source is None:
            rates = np.asarray(scheme.realized(n), dtype=float)
            probs = rates / rates.sum()
            self._source = _EventSource(self.rng, scheme.event_rate(n),
                                        probs, t0=self.t)
            self._key = key
        elif self._key != key:
            raise ValueError("clock is already bound to a different chain")
        return self._source


def _apply_block(bits, o, n, moves, lo, hi):
    # hot loop: ints and list cells only
    nm1 = n - 1
    nm2 = n - 2
    for m in moves[lo:hi]:
        if m == 1:            # top card to bottom
            o += 1
        elif m == 2:          # bottom card to top
            o -= 1
        elif m == 0:          # top card to penultimate position
            o += 1
            i = (o + nm2) % n
            j = (o + nm1) % n
            bits[i], bits[j] = bits[j], bits[i]
        else:                 # swap the two top cards
            i = o % n
            j = (o + 1) % n
            bits[i], bits[j] = bits[j], bits[i]
    return o


def step(state, scheme, clock):
    """Execute exactly one event: wait, select a move, apply it."""
    src = clock.source(state.n, scheme)
    src._ensure()
    i = src._i
    clock.t = float(src._times[i])
    state.apply(MoveKind(src._moves[i]))
    src._i = i + 1
    clock.events += 1
    return state, clock


@dataclass
class RunResult:
    observations: list
    events: int
    t: float
    initial_particles: int
    final_particles: int


def run_until(state, scheme, clock, t_target, observe_at=(), observe=None):
    """Advance ``state`` to macroscopic time ``t_target``.

    ``observe_at`` is a non-decreasing sequence of absolute times inside
    ``[clock.t, t_target]``; at each one, ``observe(t, snapshot)`` is called
    on a snapshot of the state at that time and its return value collected
    (the snapshot itself when ``observe`` is None).  Particle conservation
    is asserted over the whole run.

    Returns a :class:`RunResult` with the collected observations and the
    number of events executed.
    """
    obs = [float(x) for x in observe_at]
    if any(b < a for a, b in zip(obs, obs[1:])):
        raise ValueError("observation times must be sorted")
    if obs and (obs[0] < clock.t or obs[-1] > t_target):
        raise ValueError("observation times must lie in [clock.t, t_target]")
    if t_target < clock.t:
        raise ValueError("t_target lies in the past")

    src = clock.source(state.n, scheme)
    n = state.n
    bits = state.buf.tolist()
    o = state.origin
    count0 = sum(bits)
    applied = 0

    def advance_to(t_limit):
        nonlocal o, applied
        while True:
            src._ensure()
            times = src._times
            i0 = src._i
            if times[-1] <= t_limit:
                hi = len(times)
            else:
                hi = i0 + int(np.searchsorted(times[i0:], t_limit, side="right"))
            if hi > i0:
                o = _apply_block(bits, o, n, src._moves, i0, hi)
                applied += hi - i0
                src._i = hi
            if hi < len(times):
                return

    results = []
    for t_obs in obs:
        advance_to(t_obs)
        snap = OccupancyState(np.array(bits, dtype=np.uint8), o)
        results.append(snap if observe is None else observe(t_obs, snap))
    advance_to(t_target)

    if sum(bits) != count0:
        raise AssertionError("particle count changed along the trajectory")
    state.buf[:] = np.array(bits, dtype=np.uint8)
    state.origin = o % n
    clock.t = float(t_target)
    clock.events += applied
    return RunResult(results, applied, clock.t, count0, sum(bits))


def sample_bernoulli(n, profile, rng):
    """Sample eta with independent ``eta(x) ~ Bernoulli(profile(x/n))``.

    ``profile`` is a constant in ``[0, 1]`` or a callable on the unit torus
    with values in ``[0, 1]``.  A constant profile gives an exact draw from
    the product stationary measure with that density.
    """
    u = position_grid(n)
    if callable(profile):
        vals = np.asarray([float(profile(x)) for x in u])
    else:
        vals = np.full(n, float(profile))
    if vals.min() < 0.0 or vals.max() > 1.0:
        raise ValueError("profile values must lie in [0, 1]")
    bits = (rng.random(n) < vals).astype(np.uint8)
    return OccupancyState(bits)


def sample_hyperplane(n, ell, rng):
    """Uniform configuration with exactly ``ell`` particles."""
    if not 0 <= ell <= n:
        raise ValueError(f"particle count {ell} outside [0, {n}]")
    bits = np.zeros(n, dtype=np.uint8)
    bits[:ell] = 1
    return OccupancyState(rng.permutation(bits))


def boundary_integral_sup(state, scheme, clock, t_max, r):
    """Supremum statistic of the accumulated top-vs-position-r imbalance.

    Runs one trajectory to macroscopic time ``t_max`` and returns

        sup_{t <= t_max} | sqrt(n) * Integral_0^t (eta_s(1) - eta_s(r)) ds |^2.

    The integrand is piecewise constant between events and the integral
    piecewise linear, so tracking the kinks and the endpoint is exact.
    ``r`` must be 2 or n, and the move replacing position r must have
    positive rate (d for r=2, b for r=n).
    """
    n = state.n
    if r not in (2, n):
        raise ValueError("r must be 2 or n")
    a_n, b_n, c_n, d_n = scheme.realized(n)
    if r == 2 and d_n <= 0.0:
        raise ValueError("r=2 requires a positive swap rate d")
    if r == n and b_n <= 0.0:
        raise ValueError("r=n requires a positive top-to-bottom rate b")

    src = clock.source(n, scheme)
    bits = state.buf.tolist()
    o = state.origin
    rm1 = r - 1
    nm1 = n - 1
    nm2 = n - 2
    integral = 0.0
    peak = 0.0
    t_prev = clock.t
    applied = 0

    done = False
    while not done:
        src._ensure()
        times = src._times
        i0 = src._i
        if times[-1] <= t_max:
            hi = len(times)
        else:
            hi = i0 + int(np.searchsorted(times[i0:], t_max, side="right"))
            done = True
        tl = times.tolist()
        moves = src._moves
        for idx in range(i0, hi):
            t_next = tl[idx]
            diff = bits[o % n] - bits[(o + rm1) % n]
            if diff:
                integral += diff * (t_next - t_prev)
                if integral > peak:
                    peak = integral
                elif -integral > peak:
                    peak = -integral
            t_prev = t_next
            m = moves[idx]
            if m == 1:
                o += 1
            elif m == 2:
                o -= 1
            elif m == 0:
                o += 1
                i = (o + nm2) % n
                j = (o + nm1) % n
                bits[i], bits[j] = bits[j], bits[i]
            else:
                i = o % n
                j = (o + 1) % n
                bits[i], bits[j] = bits[j], bits[i]
        src._i = hi
        applied += hi - i0

    diff = bits[o % n] - bits[(o + rm1) % n]
    integral += diff * (t_max - t_prev)
    peak = max(peak, abs(integral))

    state.buf[:] = np.array(bits, dtype=np.uint8)
    state.origin = o % n
    clock.t = float(t_max)
    clock.events += applied
    return n * peak * peak
