"""The wreath product G = A wr H and its standard word metric.

An element is ``(f, h)``: a finitely supported lamp configuration ``f`` on H
and the lamplighter position ``h``.  Products follow

    (f1, h1) * (f2, h2) = (f1 * (h1 . f2), h1 h2),   (h . f)(x) = f(h^-1 x),

and the word length for the standard generators (lamp generators at the
origin plus the generators of H) is

    |(f, h)| = TSP(id_H, supp f, h) + sum_{x in supp f} |f(x)|_A.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass

from . import tsp
from .base import BaseGroup, parse_base
from .errors import ResourceGuardError
from .lamps import FiniteLampGroup, parse_lamp_group

BALL_GUARD = 10_000_000


class LampConfig(Mapping):
    """Immutable, normalised map base element -> lamp value (identity lamps dropped)."""

    __slots__ = ("_d", "_hash")

    def __init__(self, items=(), identity=None):
        if isinstance(items, Mapping):
            items = items.items()
        self._d = {x: v for x, v in items if v != identity}
        self._hash = None

    def __getitem__(self, x):
        return self._d[x]

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, LampConfig):
            return self._d == other._d
        return NotImplemented

    def __repr__(self):
        return f"LampConfig({self._d!r})"

    @property
    def support(self):
        return self._d.keys()


@dataclass(frozen=True)
class WreathElement:
    lamps: LampConfig
    position: object


class WreathProduct:
    """The group ``lamp wr base`` with its standard generating set."""

    def __init__(self, lamp, base: BaseGroup):
        self.lamp = lamp
        self.base = base

    def __repr__(self):
        return f"WreathProduct({self.lamp!r}, {self.base!r})"

    def __eq__(self, other):
        return isinstance(other, WreathProduct) and other.lamp == self.lamp and other.base == self.base

    def __hash__(self):
        return hash((self.lamp, self.base))

    @classmethod
    def from_spec(cls, lamp: str = "Z2", base: str = "free:2") -> "WreathProduct":
        return cls(parse_lamp_group(lamp), parse_base(base))

    @property
    def spec(self) -> dict:
        return {"lamp": self.lamp.spec, "base": self.base.spec}

    # -- construction ------------------------------------------------------
    def config(self, items=()) -> LampConfig:
        return LampConfig(items, self.lamp.identity)

    def element(self, lamps=(), position=None) -> WreathElement:
        pos = self.base.identity() if position is None else position
        return WreathElement(self.config(lamps), pos)

    def identity(self) -> WreathElement:
        return self.element()

    def generators(self) -> list[WreathElement]:
        """Lamp generators at the origin, then base generators ``a, a^-1, b, ...``."""
        e = self.base.identity()
        out = [self.element({e: a}) for a in self.lamp.generators()]
        out.extend(self.element((), s) for s in self.base.generators())
        return out

    def parse(self, lamps: str = "", position: str = "") -> WreathElement:
        """Parse ``"b=1,ab=1"`` and ``"a"`` (capital letters are inverses)."""
        items = {}
        for part in filter(None, (p.strip() for p in lamps.split(","))):
            word, sep, value = part.partition("=")
            if not sep:
                raise ValueError(f"lamp entry {part!r} must look like word=value")
            x = self.base.parse(word)
            v = self.lamp.parse_value(value)
            if x in items:
                v = self.lamp.multiply(items[x], v)
            items[x] = v
        return self.element(items, self.base.parse(position))

    def format(self, g: WreathElement) -> tuple[str, str]:
        keys = sorted(g.lamps, key=self.base.sort_key)
        lamps = "+".join(f"{self.base.format(x)}={self.lamp.format_value(g.lamps[x])}" for x in keys)
        return lamps, self.base.format(g.position)

    def key(self, g: WreathElement):
        """Canonical serialised form: sorted support and the reduced base word."""
        keys = sorted(g.lamps, key=self.base.sort_key)
        return tuple((x, g.lamps[x]) for x in keys), g.position

    # -- algebra -------------------------------------------------------------
    def translate(self, h, f: LampConfig) -> LampConfig:
        """Left translate ``(h . f)(x) = f(h^-1 x)``: the lamp at y moves to h y."""
        mul = self.base.multiply
        return LampConfig({mul(h, x): v for x, v in f.items()}, self.lamp.identity)

    def multiply(self, g1: WreathElement, g2: WreathElement) -> WreathElement:
        base, lamp = self.base, self.lamp
        out = dict(g1.lamps)
        for x, v in g2.lamps.items():
            y = base.multiply(g1.position, x)
            out[y] = lamp.multiply(out.get(y, lamp.identity), v)
        return WreathElement(LampConfig(out, lamp.identity), base.multiply(g1.position, g2.position))

    def invert(self, g: WreathElement) -> WreathElement:
        hinv = self.base.inverse(g.position)
        f = {self.base.multiply(hinv, x): self.lamp.inverse(v) for x, v in g.lamps.items()}
        return WreathElement(LampConfig(f, self.lamp.identity), hinv)

    def product(self, elements) -> WreathElement:
        out = self.identity()
        for g in elements:
            out = self.multiply(out, g)
        return out

    # -- metric --------------------------------------------------------------
    def lamp_cost(self, f: LampConfig) -> int:
        return sum(self.lamp.length(v) for v in f.values())

    def tsp_instance(self, g: WreathElement) -> tsp.TspInstance:
        return tsp.TspInstance(self.base, self.base.identity(), tuple(g.lamps), g.position)

    def word_length(self, g: WreathElement, approximate: bool = False, cap: int = tsp.DP_CAP) -> int:
        sol = tsp.solve(self.tsp_instance(g), approximate=approximate, cap=cap)
        return sol.value + self.lamp_cost(g.lamps)

    def distance(self, g1: WreathElement, g2: WreathElement, **kw) -> int:
        return self.word_length(self.multiply(self.invert(g1), g2), **kw)

    # -- ground truth --------------------------------------------------------
    def bfs_oracle(self, radius: int, guard: int = BALL_GUARD) -> dict:
        """Exact distances to every element of the ball of ``radius`` by BFS.

        Keys are canonical forms (see :meth:`key`); values are ``(element, distance)``.
        """
        if radius < 0:
            raise ValueError("radius must be non-negative")
        gens = self.generators()
        start = self.identity()
        seen = {self.key(start): (start, 0)}
        frontier = deque([start])
        while frontier:
            g = frontier.popleft()
            d = seen[self.key(g)][1]
            if d == radius:
                continue
            for s in gens:
                h = self.multiply(g, s)
                k = self.key(h)
                if k not in seen:
                    seen[k] = (h, d + 1)
                    if len(seen) > guard:
                        raise ResourceGuardError(f"ball of radius {radius} exceeds {guard} elements")
                    frontier.append(h)
        return seen


def default_group() -> WreathProduct:
    return WreathProduct(FiniteLampGroup.cyclic(2), parse_base("free:2"))
