"""Construction literals and flat ``key = value`` experiment configs.

A construction literal is ``name:key=value,key=value``, for example
``g0:n=10,eta=3/10`` or ``blocker:n=24,d=4,seed=1``.  An experiment config
is one ``key = value`` per line; ``#`` starts a comment and keys of the
form ``sweep.<param>`` hold a list of values.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from ..constructions import (
    Construction,
    clique_free_low_alpha,
    disjoint_cliques,
    g0,
    g0_with_clique_free,
    g0_with_high_girth,
    gnp,
    high_girth_bihole_free,
    perturb,
    triangle_factor_blocker,
)
from ..errors import ParseError
from ..patterns import Pattern

SWEEP_CAP = 10**4
SEED_MASK = (1 << 64) - 1

ALIASES = {
    "g0": "g0",
    "cliques": "cliques",
    "disjoint_cliques": "cliques",
    "girth": "girth",
    "high_girth_bihole_free": "girth",
    "cliquefree": "cliquefree",
    "clique_free_low_alpha": "cliquefree",
    "blocker": "blocker",
    "triangle_factor_blocker": "blocker",
    "perturbed": "perturbed",
    "perturbed_union": "perturbed",
    "gnp": "gnp",
    "g0_cliquefree": "g0_cliquefree",
    "g0_girth": "g0_girth",
    "file": "file",
}

# required and optional parameters per construction (seed is always optional)
PARAMS = {
    "g0": ({"n", "eta"}, set()),
    "cliques": ({"sizes"}, set()),
    "girth": ({"n", "k", "alpha"}, {"strict", "budget"}),
    "cliquefree": ({"n", "r"}, {"alpha", "strict", "budget"}),
    "blocker": ({"n", "d"}, set()),
    "perturbed": ({"n", "eta", "p"}, set()),
    "gnp": ({"n", "p"}, set()),
    "g0_cliquefree": ({"n", "eta", "r"}, set()),
    "g0_girth": ({"n", "eta", "k", "alpha"}, set()),
    "file": ({"path"}, {"format"}),
}
RANDOM = {"girth", "cliquefree", "blocker", "perturbed", "gnp", "g0_cliquefree", "g0_girth"}


class ConfigError(ParseError):
    pass


def rational(text) -> Fraction:
    """Parse ``3/10``, ``0.3`` or ``2`` into a Fraction in lowest terms."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a rational number: {text!r}") from None


def _int(text, key: str) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {text!r}") from None


def _flag(text) -> bool:
    return str(text).strip().lower() in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class ConstructionSpec:
    name: str
    params: tuple[tuple[str, str], ...]

    @classmethod
    def parse(cls, text: str) -> "ConstructionSpec":
        text = text.strip()
        head, sep, rest = text.partition(":")
        name = ALIASES.get(head.strip())
        if name is None:
            raise ConfigError(f"unknown construction {head.strip()!r}; known: {sorted(ALIASES)}", position=0)
        params: dict[str, str] = {}
        offset = len(head) + len(sep)
        for item in rest.split(",") if rest.strip() else []:
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or not re.fullmatch(r"[A-Za-z_]\w*", key):
                raise ConfigError(f"expected key=value, got {item.strip()!r}", position=offset)
            if key in params:
                raise ConfigError(f"duplicate parameter {key!r}", position=offset)
            params[key] = value.strip()
            offset += len(item) + 1
        need, optional = PARAMS[name]
        missing = need - params.keys()
        if missing:
            raise ConfigError(f"{name} needs {sorted(missing)}")
        unknown = params.keys() - need - optional - {"seed"}
        if unknown:
            raise ConfigError(f"{name} does not take {sorted(unknown)}")
        return cls(name, tuple(params.items()))

    def get(self, key: str, default=None):
        return dict(self.params).get(key, default)

    def with_params(self, **changes) -> "ConstructionSpec":
        p = dict(self.params)
        for k, v in changes.items():
            p[k] = str(v)
        return replace(self, params=tuple(p.items()))

    def __str__(self) -> str:
        return self.name + ":" + ",".join(f"{k}={v}" for k, v in self.params)

    @property
    def randomized(self) -> bool:
        return self.name in RANDOM

    def build(self, seed: int | None = None) -> Construction:
        """Generate the graph.  ``seed`` is used only when the literal has none."""
        p = dict(self.params)
        if "seed" in p:
            seed = _int(p["seed"], "seed")
        seed = 0 if seed is None else seed
        name = self.name
        n = _int(p["n"], "n") if "n" in p else None
        if name == "g0":
            return Construction(g0(n, rational(p["eta"])), {})
        if name == "cliques":
            sizes = [_int(s, "sizes") for s in p["sizes"].split("+")]
            return Construction(disjoint_cliques(sizes), {})
        if name == "girth":
            return high_girth_bihole_free(
                n, _int(p["k"], "k"), rational(p["alpha"]), seed,
                budget=_int(p.get("budget", 10**6), "budget"), strict=_flag(p.get("strict", "0")),
            )
        if name == "cliquefree":
            alpha = rational(p["alpha"]) if "alpha" in p else None
            return clique_free_low_alpha(
                n, _int(p["r"], "r"), alpha, seed,
                budget=_int(p.get("budget", 10**6), "budget"), strict=_flag(p.get("strict", "0")),
            )
        if name == "blocker":
            return triangle_factor_blocker(n, _int(p["d"], "d"), seed)
        if name == "perturbed":
            return Construction(perturb(g0(n, rational(p["eta"])), rational(p["p"]), seed), {})
        if name == "gnp":
            return Construction(gnp(n, rational(p["p"]), seed), {})
        if name == "g0_cliquefree":
            return g0_with_clique_free(n, rational(p["eta"]), _int(p["r"], "r"), seed)
        if name == "g0_girth":
            return g0_with_high_girth(n, rational(p["eta"]), _int(p["k"], "k"), rational(p["alpha"]), seed)
        if name == "file":
            from .io import read_graph

            return Construction(read_graph(p["path"], p.get("format")), {"path": p["path"]})
        raise AssertionError(name)  # pragma: no cover


CONFIG_KEYS = {"construction", "pattern", "eta", "alpha", "r", "budget", "alpha_budget",
               "seed_base", "output", "workers", "measure", "cap"}
MEASURES = ("alpha_r", "alpha_star")


@dataclass(frozen=True)
class ExperimentConfig:
    construction: ConstructionSpec
    pattern: str = "K3"
    eta: Fraction = Fraction(1, 2)
    alpha: Fraction | None = None
    r: int = 2
    budget: int = 10**7
    alpha_budget: int = 10**6
    seed_base: int = 0
    output: Path = Path("results.csv")
    workers: int = 1
    measure: tuple[str, ...] = MEASURES
    sweeps: tuple[tuple[str, tuple[str, ...]], ...] = ()
    cap: int = SWEEP_CAP

    def __post_init__(self):
        Pattern.parse(self.pattern)
        if not 0 < self.eta <= 1:
            raise ConfigError("eta must lie in (0, 1]")
        if self.r < 2:
            raise ConfigError("r must be at least 2")
        if not 0 <= self.seed_base <= SEED_MASK:
            raise ConfigError("seed_base must fit in 64 bits")
        bad = set(self.measure) - set(MEASURES)
        if bad:
            raise ConfigError(f"unknown measures {sorted(bad)}")

    @classmethod
    def parse(cls, text: str, base_dir: Path | None = None) -> "ExperimentConfig":
        kv: dict[str, str] = {}
        sweeps: list[tuple[str, tuple[str, ...]]] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, eq, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not eq or not key:
                raise ConfigError(f"expected key = value, got {line!r}", line=lineno)
            if key.startswith("sweep."):
                param = key[len("sweep."):]
                sep = r"\s+" if param == "pattern" else r"[\s,]+"
                vals = tuple(v for v in re.split(sep, value) if v)
                if not param or not vals:
                    raise ConfigError(f"empty sweep {key!r}", line=lineno)
                sweeps.append((param, vals))
            elif key in CONFIG_KEYS:
                if key in kv:
                    raise ConfigError(f"duplicate key {key!r}", line=lineno)
                kv[key] = value
            else:
                raise ConfigError(f"unknown key {key!r}", line=lineno)
        if "construction" not in kv:
            raise ConfigError("config needs a construction")
        try:
            spec = ConstructionSpec.parse(kv["construction"])
        except ConfigError as err:
            raise ConfigError(str(err)) from None
        out = Path(kv.get("output", "results.csv"))
        if base_dir is not None and not out.is_absolute():
            out = base_dir / out
        cfg = cls(
            construction=spec,
            pattern=kv.get("pattern", "K3"),
            eta=rational(kv.get("eta", "1/2")),
            alpha=rational(kv["alpha"]) if "alpha" in kv else None,
            r=_int(kv.get("r", 2), "r"),
            budget=_int(kv.get("budget", 10**7), "budget"),
            alpha_budget=_int(kv.get("alpha_budget", 10**6), "alpha_budget"),
            seed_base=_int(kv.get("seed_base", 0), "seed_base"),
            output=out,
            workers=_int(kv.get("workers", 1), "workers"),
            measure=tuple(m for m in re.split(r"[\s,]+", kv.get("measure", ",".join(MEASURES))) if m and m != "none"),
            sweeps=tuple(sweeps),
            cap=_int(kv.get("cap", SWEEP_CAP), "cap"),
        )
        cfg.points()  # validates sweep names and the cap
        return cfg

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        p = Path(path)
        return cls.parse(p.read_text(), base_dir=p.parent)

    def points(self) -> list["SweepPoint"]:
        """Cross product of the sweeps, in the order they were listed."""
        size = 1
        for _, vals in self.sweeps:
            size *= len(vals)
        if size > self.cap:
            raise ConfigError(f"sweep has {size} points, more than the cap {self.cap}")
        names = [p for p, _ in self.sweeps]
        if len(set(names)) != len(names):
            raise ConfigError("a parameter is swept twice")
        spec_keys = set().union(*PARAMS[self.construction.name]) | {"seed"}
        for name in names:
            if name not in spec_keys and name not in ("pattern", "eta", "alpha", "r", "budget"):
                raise ConfigError(f"cannot sweep {name!r} for {self.construction.name}")
        out = []
        for index, combo in enumerate(itertools.product(*(vals for _, vals in self.sweeps))):
            chosen = dict(zip(names, combo))
            spec_changes = {k: v for k, v in chosen.items() if k in spec_keys}
            spec = self.construction.with_params(**spec_changes) if spec_changes else self.construction
            cfg = self
            for key in ("pattern", "eta", "alpha", "r", "budget"):
                if key in chosen:
                    val = chosen[key]
                    if key in ("eta", "alpha"):
                        val = rational(val)
                    elif key in ("r", "budget"):
                        val = _int(val, key)
                    cfg = replace(cfg, **{key: val})
            if spec.get("seed") is not None:
                seed = _int(spec.get("seed"), "seed")
            else:
                seed = (self.seed_base + index) & SEED_MASK
            out.append(SweepPoint(index, spec, cfg.pattern, cfg.eta, cfg.alpha, cfg.r, cfg.budget,
                                  cfg.alpha_budget, seed, cfg.measure))
        return out


@dataclass(frozen=True)
class SweepPoint:
    index: int
    spec: ConstructionSpec
    pattern: str
    eta: Fraction
    alpha: Fraction | None
    r: int
    budget: int
    alpha_budget: int
    seed: int
    measure: tuple[str, ...] = field(default=MEASURES)
