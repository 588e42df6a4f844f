"""Rate schemes for the four shuffle moves.

A scheme fixes the limit rates ``(a, b, c, d)`` of the moves
top-to-penultimate, top-to-bottom, bottom-to-top and swap-top-two, the
time-scale exponent ``beta`` (1 = hyperbolic, 2 = diffusive) and, in
weakly-asymmetric mode, the drift parameter ``gamma``.  The realized rates
at deck size ``n`` are what the simulator and the exact oracle consume:

* ``fixed`` mode: ``(a_n, b_n, c_n, d_n) = (a, b, c, d)`` for every ``n``.
* ``weakly-asymmetric`` mode: ``a_n = 0``, ``c_n = c``, ``b_n = c + gamma/n``,
  ``d_n = d``, so that ``a_n + b_n - c_n = gamma/n``.

``kappa = a + b - c`` is the transport velocity of the hyperbolic limit.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["RateScheme", "PRESETS", "preset"]

_MODES = ("fixed", "weakly-asymmetric")


@dataclass(frozen=True)
class RateScheme:
    a: float
    b: float
    c: float
    d: float
    beta: int = 1
    gamma: float = 0.0
    mode: str = "fixed"

    def __post_init__(self):
        for name in "abcd":
            r = getattr(self, name)
            if not 0.0 <= r <= 1.0:
                raise ValueError(f"rate {name}={r} outside [0, 1]")
        if self.beta not in (1, 2):
            raise ValueError(f"beta must be 1 or 2, got {self.beta}")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")

    @property
    def kappa(self):
        """Limit drift a + b - c of the hyperbolic transport equation."""
        return self.a + self.b - self.c

    def realized(self, n):
        """Rates ``(a_n, b_n, c_n, d_n)`` at deck size ``n``."""
        if self.mode == "fixed":
            rates = (self.a, self.b, self.c, self.d)
        else:
            rates = (0.0, self.c + self.gamma / n, self.c, self.d)
        for r in rates:
            if not 0.0 <= r <= 1.0:
                raise ValueError(f"realized rates {rates} leave [0, 1] at n={n}")
        if sum(rates) <= 0.0:
            raise ValueError("degenerate chain: total rate is zero")
        if rates[0] <= 0.0 and rates[1] <= 0.0 and rates[2] <= 0.0:
            # swap-only dynamics never moves mass around the circle
            raise ValueError("no insertion move has positive rate")
        return rates

    def total_rate(self, n):
        return sum(self.realized(n))

    def event_rate(self, n):
        """Total event rate in macroscopic time: ``n**beta * R_n``."""
        return float(n) ** self.beta * self.total_rate(n)


def _rudvalis():
    # original shuffle: top card to penultimate or bottom, fair coin
    return RateScheme(a=0.5, b=0.5, c=0.0, d=0.0, beta=1)


def _symmetric(beta=2):
    # symmetric variant: bottom insertion / top extraction / top swap at 1/4
    return RateScheme(a=0.0, b=0.25, c=0.25, d=0.25, beta=beta)


def _weak_asym(gamma=1.0, c=0.25, d=0.0, n_min=4):
    scheme = RateScheme(a=0.0, b=c, c=c, d=d, beta=2, gamma=gamma,
                        mode="weakly-asymmetric")
    scheme.realized(n_min)  # fail fast if gamma pushes b_n outside [0, 1]
    return scheme


PRESETS = {
    "rudvalis": _rudvalis,
    "symmetric": _symmetric,
    "weak-asym": _weak_asym,
}


def preset(name, **kwargs):
    """Build a named rate scheme: 'rudvalis', 'symmetric' or 'weak-asym'."""
    try:
        factory = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return factory(**kwargs)
