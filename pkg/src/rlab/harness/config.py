"""Experiment configuration: one JSON document, presets expanded at parse.

The archived/logged form of a config is fully expanded (preset names are
resolved to their realized rate fields) so that a report plus its config
reproduces the run without any external state.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, asdict

from ..rates import RateScheme, preset

__all__ = ["ConfigError", "ExperimentConfig", "EXPERIMENTS", "load_config"]

EXPERIMENTS = (
    "hydro-hyperbolic",
    "hydro-diffusive",
    "flucts-hyperbolic",
    "flucts-diffusive",
    "boundary-decay",
    "stationarity",
    "oracle-validate",
    "spde-reference",
)

_BETA_OF = {
    "hydro-hyperbolic": 1,
    "flucts-hyperbolic": 1,
    "hydro-diffusive": 2,
    "flucts-diffusive": 2,
    "boundary-decay": 2,
    "spde-reference": 2,
}


class ConfigError(ValueError):
    """Malformed or inconsistent experiment configuration."""


@dataclass
class Tolerances:
    z: float = 4.0            # Monte Carlo comparisons: |z| <= z
    se_max: float | None = None   # SE ceiling; above it the row is inconclusive
    exact: float = 1e-12      # exact identities
    chi2_level: float = 0.01  # chi-square significance level

    def validate(self):
        if self.z <= 0 or self.exact <= 0:
            raise ConfigError("tolerances must be positive")
        if self.se_max is not None and self.se_max <= 0:
            raise ConfigError("se_max must be positive when given")
        if not 0.0 < self.chi2_level < 1.0:
            raise ConfigError("chi2_level must lie in (0, 1)")


@dataclass
class ExperimentConfig:
    experiment: str
    n: int = 512
    scheme: RateScheme = None
    profile: dict = field(default_factory=dict)   # {"constant": rho} | {"fourier": {k: c}}
    rho: float = 0.5
    K: int = 8
    times: list = field(default_factory=list)
    replicas: int = 64
    seed: int = 0
    modes: list = field(default_factory=lambda: [1])
    tolerance: Tolerances = field(default_factory=Tolerances)
    # boundary-decay
    ladder: list = field(default_factory=lambda: [64, 128, 256])
    r: str = "n"              # "2" or "n"
    horizon: float = 1.0
    # flucts-diffusive
    confirm_with_spde_mc: bool = True
    spde_mc_paths: int = 100_000
    # stationarity
    initial_particles: int | None = None
    # execution
    threads: int = 1
    out: str | None = None

    def validate(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}; "
                              f"choose from {EXPERIMENTS}")
        self.tolerance.validate()
        want_beta = _BETA_OF.get(self.experiment)
        if self.experiment != "oracle-validate":
            if self.scheme is None:
                raise ConfigError("experiment needs a rate scheme")
            if want_beta is not None and self.scheme.beta != want_beta:
                raise ConfigError(
                    f"{self.experiment} runs at beta={want_beta}, "
                    f"scheme has beta={self.scheme.beta}")
            if self.n < 4:
                raise ConfigError("deck size must be at least 4")
            self.scheme.realized(self.n)
        if self.experiment in ("hydro-hyperbolic", "hydro-diffusive",
                               "flucts-hyperbolic", "flucts-diffusive",
                               "stationarity", "spde-reference"):
            if not self.times or any(t < 0 for t in self.times):
                raise ConfigError("need nonnegative observation times")
            if sorted(self.times) != list(self.times):
                raise ConfigError("observation times must be sorted")
            if self.replicas < 2:
                raise ConfigError("need at least 2 replicas")
            if any(abs(k) > self.K or k == 0 for k in self.modes):
                raise ConfigError("compared modes must be nonzero and within K")
        if self.experiment in ("flucts-hyperbolic", "flucts-diffusive",
                               "spde-reference"):
            if not 0.0 <= self.rho <= 1.0:
                raise ConfigError("equilibrium density must lie in [0, 1]")
            if any(t <= 0 for t in self.times) or len(set(self.times)) != len(self.times):
                raise ConfigError("lags must be positive and strictly increasing")
        if self.experiment == "boundary-decay":
            self.r = str(self.r)
            if self.r not in ("2", "n"):
                raise ConfigError('r must be "2" or "n"')
            if list(self.ladder) != sorted(set(self.ladder)):
                raise ConfigError("ladder must be strictly increasing")
            if self.horizon <= 0:
                raise ConfigError("horizon must be positive")
            for n in self.ladder:
                a_n, b_n, c_n, d_n = self.scheme.realized(n)
                if self.r == "2" and d_n <= 0:
                    raise ConfigError("r=2 needs a positive swap rate d")
                if self.r == "n" and b_n <= 0:
                    raise ConfigError("r=n needs a positive top-to-bottom rate b")
        if self.threads < 1:
            raise ConfigError("threads must be at least 1")
        return self

    def profile_callable(self):
        from ..fields import fourier_profile

        if "constant" in self.profile:
            return float(self.profile["constant"])
        if "fourier" in self.profile:
            return fourier_profile(self.profile["fourier"])
        raise ConfigError('profile must be {"constant": rho} or {"fourier": {k: c}}')

    def profile_coefficients(self):
        from ..fields import profile_coefficient_vector

        if "constant" in self.profile:
            return profile_coefficient_vector({0: self.profile["constant"]}, self.K)
        return profile_coefficient_vector(self.profile["fourier"], self.K)

    def expanded(self):
        """JSON-ready dict with the preset resolved to explicit rates.

        Execution knobs (threads, output directory) are omitted: outputs
        are byte-identical for any thread count, and the archived config
        must reflect that.
        """
        d = asdict(self)
        d.pop("threads")
        d.pop("out")
        d["tolerance"] = asdict(self.tolerance)
        if self.scheme is not None:
            d["scheme"] = asdict(self.scheme)
            d["scheme"]["realized_at_n"] = list(self.scheme.realized(self.n))
        return d


def _parse_scheme(raw):
    if raw is None:
        return None
    if isinstance(raw, str):
        raw = {"preset": raw}
    if not isinstance(raw, dict):
        raise ConfigError("scheme must be a name or an object")
    raw = dict(raw)
    try:
        if "preset" in raw:
            name = raw.pop("preset")
            return preset(name, **raw)
        return RateScheme(**raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad rate scheme: {exc}") from exc


def load_config(source, overrides=None):
    """Parse a config from a JSON file path, JSON text, or dict."""
    if isinstance(source, dict):
        raw = dict(source)
    else:
        text = source
        if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
            with open(source) as fh:
                text = fh.read()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if overrides:
        raw.update({k: v for k, v in overrides.items() if v is not None})
    if "experiment" not in raw:
        raise ConfigError("config must name an experiment")
    raw["scheme"] = _parse_scheme(raw.get("scheme"))
    if "tolerance" in raw:
        if not isinstance(raw["tolerance"], dict):
            raise ConfigError("tolerance must be an object")
        raw["tolerance"] = Tolerances(**raw["tolerance"])
    known = {f for f in ExperimentConfig.__dataclass_fields__}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    try:
        cfg = ExperimentConfig(**raw)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg.validate()
