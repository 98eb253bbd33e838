"""Assembly of an absorbing set from a template, fans and per-edge absorbers."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import CertificateError, ConstructionError
from ..graph import Graph, as_mask, iter_bits, to_mask
from ..patterns import Pattern, PatternCopy, find_copy_at, is_copy
from ..tiling import factor, has_factor
from .absorbers import find_absorber, verify_absorber
from .template import Template, _perfect_matching, montgomery_template

SAMPLE_RETRIES = 200


@dataclass
class AbsorbingSet:
    host: Graph = field(repr=False)
    pattern: Pattern
    scope: frozenset[int]
    vertices: frozenset[int]
    xi: Fraction
    template: Template = field(repr=False)
    X: tuple[int, ...]
    Y: tuple[int, ...]
    Z_groups: tuple[tuple[int, ...], ...]
    absorbers: dict = field(repr=False)  # template edge -> absorber vertices
    factors: dict = field(repr=False)  # template edge -> (factor of A_e, factor of A_e + S_e)

    @property
    def capacity(self) -> int:
        """Largest |U| the constructive absorption route handles."""
        return self.template.surplus // (self.pattern.k - 1)

    def edge_set(self, e) -> int:
        a, z = e
        left = self.X[a] if a < len(self.X) else self.Y[a - len(self.X)]
        return (1 << left) | to_mask(self.Z_groups[z])

    def absorb(self, u) -> list[PatternCopy]:
        """An explicit F-factor of G[A + U], built as in the absorption argument."""
        g, f, k = self.host, self.pattern, self.pattern.k
        um = to_mask(u)
        if um & to_mask(self.vertices):
            raise ValueError("U must avoid the absorbing set")
        if um & ~to_mask(self.scope):
            raise ValueError("U must lie in the scope")
        if (len(self.vertices) + um.bit_count()) % k:
            raise ValueError("|A| + |U| must be divisible by k")
        q = self.template.surplus
        spare = q - (k - 1) * um.bit_count()
        if spare < 0 or spare % k:
            raise CertificateError(f"|U|={um.bit_count()} exceeds the absorption capacity {self.capacity}")
        xs = list(self.X)
        x_prime = xs[: spare // k]
        xmask = to_mask(xs)
        free = xmask & ~to_mask(x_prime)
        copies: list[PatternCopy] = []
        q_mask = to_mask(x_prime)
        for v in list(iter_bits(um)) + x_prime:
            c = find_copy_at(g, f, v, list(iter_bits(free)))
            if c is None:
                raise CertificateError(f"no fan set left inside X for vertex {v}")
            rest = c.mask & ~(1 << v)
            free &= ~rest
            q_mask |= rest
            copies.append(c)
        remaining_x = [i for i, x in enumerate(xs) if not q_mask >> x & 1]
        match = self.template.matching(remaining_x)
        if match is None:  # pragma: no cover - template was verified
            raise CertificateError("template matching failed")
        matched = {(left, z) for z, left in match.items()}
        for e in self.template.edges:
            fa, fas = self.factors[e]
            copies.extend(fas if e in matched else fa)
        cover = 0
        for c in copies:
            if c.mask & cover or not is_copy(g, f, c.vertices):
                raise CertificateError("absorption produced an invalid factor")
            cover |= c.mask
        if cover != to_mask(self.vertices) | um:
            raise CertificateError("absorption factor does not cover A + U")
        return copies

    def ledger(self) -> dict:
        return {
            "pattern": str(self.pattern),
            "n": self.host.n,
            "scope": sorted(self.scope),
            "vertices": sorted(self.vertices),
            "xi": str(self.xi),
            "template": {
                "m": self.template.m,
                "beta": str(self.template.beta),
                "x_size": self.template.x_size,
                "y_size": self.template.y_size,
                "z_size": self.template.z_size,
                "edges": [list(e) for e in self.template.edges],
                "sampled": self.template.sampled,
            },
            "X": list(self.X),
            "Y": list(self.Y),
            "Z_groups": [list(z) for z in self.Z_groups],
            "absorbers": [[list(e), sorted(a)] for e, a in sorted(self.absorbers.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.ledger(), sort_keys=True)


def reverify_ledger(g: Graph, f: Pattern, text: str) -> bool:
    """Offline check of a serialized ledger against the host."""
    led = json.loads(text)
    tpl = led["template"]
    xs, ys, zs = led["X"], led["Y"], [tuple(z) for z in led["Z_groups"]]
    if len(xs) != tpl["x_size"] or len(ys) != tpl["y_size"] or len(zs) != tpl["z_size"]:
        return False
    edges = [tuple(e) for e in tpl["edges"]]
    parts = xs + ys + [v for z in zs for v in z]
    absorbers = {tuple(e): a for e, a in led["absorbers"]}
    for a in absorbers.values():
        parts.extend(a)
    if len(parts) != len(set(parts)) or sorted(parts) != led["vertices"]:
        return False
    for e in edges:
        left = xs[e[0]] if e[0] < len(xs) else ys[e[0] - len(xs)]
        s = [left, *zs[e[1]]]
        if verify_absorber(g, f, s, absorbers[e]) is not True:
            return False
    m = tpl["m"]
    from itertools import combinations

    left_y = list(range(len(xs), len(xs) + len(ys)))
    for sub in combinations(range(len(xs)), m):
        if _perfect_matching(list(sub) + left_y, len(zs), edges) is None:
            return False
    return True


def _fan_inside(g: Graph, f: Pattern, v: int, xmask: int) -> int:
    """Size of a greedy fan at v inside X."""
    free = xmask & ~(1 << v)
    size = 0
    while True:
        c = find_copy_at(g, f, v, list(iter_bits(free)))
        if c is None:
            return size
        free &= ~c.mask
        size += 1


def build_absorbing_set(
    g: Graph,
    f: Pattern,
    scope=None,
    *,
    m: int = 2,
    beta=2,
    gamma=Fraction(4, 5),
    t: int = 1,
    seed=0,
    min_fan: int = 2,
    template_retries: int = 200,
) -> AbsorbingSet:
    """Run the absorbing-set pipeline: size, sample X, pick Y and Z, template, absorbers.

    Raises ConstructionError naming the failing stage.
    """
    k = f.k
    gamma = Fraction(gamma)
    scope_mask = as_mask(g, scope)
    budget_size = math.floor(gamma * g.n)
    x_size = m + math.ceil(Fraction(beta) * m)
    core = x_size + 2 * m + 3 * m * (k - 1)
    if core > budget_size or core > scope_mask.bit_count():
        raise ConstructionError(
            f"X, Y, Z need {core} vertices but only {min(budget_size, scope_mask.bit_count())} are allowed",
            stage="sizing",
            metrics={"core": core, "gamma_n": budget_size, "scope": scope_mask.bit_count()},
        )
    rng = np.random.default_rng(seed)
    scope_list = list(iter_bits(scope_mask))

    # sampling: X must carry a fan of size >= min_fan for every scope vertex
    xmask = 0
    for attempt in range(SAMPLE_RETRIES):
        pick = sorted(rng.choice(scope_list, size=x_size, replace=False).tolist())
        cand = to_mask(pick)
        if all(_fan_inside(g, f, v, cand) >= min_fan for v in scope_list):
            xmask = cand
            break
    else:
        raise ConstructionError("no X keeps enough fan sets for every scope vertex", stage="sampling",
                                metrics={"x_size": x_size, "min_fan": min_fan})
    rest = [v for v in scope_list if not xmask >> v & 1]
    order = rng.permutation(len(rest)).tolist()
    rest = [rest[i] for i in order]
    ys = tuple(sorted(rest[: 2 * m]))
    zflat = rest[2 * m : 2 * m + 3 * m * (k - 1)]
    zgroups = tuple(tuple(sorted(zflat[i : i + k - 1])) for i in range(0, len(zflat), k - 1))
    xs = tuple(iter_bits(xmask))

    try:
        tpl = montgomery_template(m, beta, int(rng.integers(2**63)), retries=template_retries)
    except ConstructionError as err:
        raise ConstructionError(str(err), stage="template", metrics=err.metrics) from None

    used = xmask | to_mask(ys) | to_mask(zflat)
    absorbers: dict = {}
    factors: dict = {}
    for e in tpl.edges:
        left = xs[e[0]] if e[0] < len(xs) else ys[e[0] - len(xs)]
        s = [left, *zgroups[e[1]]]
        a = find_absorber(g, f, s, t, avoid=iter_bits(used))
        if a is None:
            raise ConstructionError(f"no absorber for template edge {e}", stage="absorbers",
                                    metrics={"edge": e, "S": s, "done": len(absorbers)})
        am = to_mask(a)
        if verify_absorber(g, f, s, a, t) is not True:  # pragma: no cover - defensive
            raise AssertionError("absorber failed verification")
        fa = factor(g, f, within=list(iter_bits(am))) if am else []
        fas = factor(g, f, within=list(iter_bits(am | to_mask(s))))
        absorbers[e] = a
        factors[e] = (fa, fas)
        used |= am
    if used.bit_count() > budget_size:
        raise ConstructionError(
            f"absorbing set has {used.bit_count()} vertices, more than gamma n = {budget_size}",
            stage="absorbers",
            metrics={"size": used.bit_count(), "gamma_n": budget_size},
        )
    cap = tpl.surplus // (k - 1)
    return AbsorbingSet(
        host=g,
        pattern=f,
        scope=frozenset(scope_list),
        vertices=frozenset(iter_bits(used)),
        xi=Fraction(cap, g.n),
        template=tpl,
        X=xs,
        Y=ys,
        Z_groups=zgroups,
        absorbers=absorbers,
        factors=factors,
    )


def absorbs(s: AbsorbingSet, u) -> bool | None:
    """Direct solver check that G[A + U] has an F-factor."""
    res = has_factor(s.host, s.pattern, within=sorted(set(s.vertices) | set(u)))
    return {"yes": True, "no": False}.get(res)
