"""Lamp groups A.

Finite lamp groups come as validated multiplication tables over the indices
``0..order-1``; every non-identity element is a generator, so lamp word
length is 0/1.  Finitely generated lamps are ``Z^d`` with the unit vectors as
generators and the L1 norm as word length.
"""

from __future__ import annotations

import json
from itertools import product

import numpy as np


class FiniteLampGroup:
    finite = True

    def __init__(self, mul, name: str | None = None):
        table = np.asarray(mul, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] < 1:
            raise ValueError("lamp table must be a square order x order table")
        self.order = int(table.shape[0])
        self.mul_table = table
        self._validate()
        self.name = name or f"table:{self.order}"

    def _validate(self) -> None:
        n, t = self.order, self.mul_table
        if t.min() < 0 or t.max() >= n:
            raise ValueError("lamp table entries must be element indices")
        ids = [e for e in range(n) if all(t[e, x] == x and t[x, e] == x for x in range(n))]
        if not ids:
            raise ValueError("lamp table has no identity element")
        self.identity = ids[0]
        inv = []
        for x in range(n):
            row = [y for y in range(n) if t[x, y] == self.identity and t[y, x] == self.identity]
            if not row:
                raise ValueError(f"lamp element {x} has no inverse")
            inv.append(row[0])
        self.inverse_table = np.array(inv, dtype=np.int64)
        # associativity: (xy)z == x(yz) for all triples
        xy = t[:, :, None]
        lhs = t[xy, np.arange(n)[None, None, :]]
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise ValueError("lamp table is not associative")

    @classmethod
    def cyclic(cls, n: int) -> "FiniteLampGroup":
        if n < 2:
            raise ValueError("lamp group must be non-trivial")
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n, name=f"Z{n}")

    @classmethod
    def from_json(cls, path) -> "FiniteLampGroup":
        with open(path) as fh:
            doc = json.load(fh)
        if "mul" not in doc:
            raise ValueError("lamp table file needs a 'mul' table")
        group = cls(doc["mul"], name=doc.get("name"))
        if "order" in doc and int(doc["order"]) != group.order:
            raise ValueError("lamp table 'order' disagrees with the table size")
        return group

    def __repr__(self):
        return f"FiniteLampGroup({self.name})"

    def __eq__(self, other):
        return isinstance(other, FiniteLampGroup) and np.array_equal(self.mul_table, other.mul_table)

    def __hash__(self):
        return hash(("finite", self.mul_table.tobytes()))

    @property
    def spec(self) -> str:
        return self.name

    def multiply(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inverse_table[a])

    def length(self, a: int) -> int:
        return 0 if a == self.identity else 1

    def generators(self) -> list[int]:
        return [a for a in range(self.order) if a != self.identity]

    def elements(self) -> list[int]:
        return list(range(self.order))

    def parse_value(self, text: str) -> int:
        v = int(text)
        if not 0 <= v < self.order:
            raise ValueError(f"lamp value {v} outside 0..{self.order - 1}")
        return v

    def format_value(self, a: int) -> str:
        return str(a)


class FreeAbelianLamps:
    """``Z^d`` lamps with generators the unit vectors and their negatives."""

    finite = False

    def __init__(self, dim: int = 1):
        if dim < 1:
            raise ValueError("lamp lattice dimension must be positive")
        self.dim = dim
        self.identity = (0,) * dim

    def __repr__(self):
        return f"FreeAbelianLamps({self.dim})"

    def __eq__(self, other):
        return isinstance(other, FreeAbelianLamps) and other.dim == self.dim

    def __hash__(self):
        return hash(("zd", self.dim))

    @property
    def spec(self) -> str:
        return f"Zd:{self.dim}"

    def multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inverse(self, a):
        return tuple(-x for x in a)

    def length(self, a) -> int:
        return sum(abs(x) for x in a)

    def generators(self) -> list[tuple]:
        out = []
        for i in range(self.dim):
            for sign in (1, -1):
                v = [0] * self.dim
                v[i] = sign
                out.append(tuple(v))
        return out

    def elements_within(self, radius: int):
        for v in product(range(-radius, radius + 1), repeat=self.dim):
            if self.length(v) <= radius:
                yield v

    def parse_value(self, text: str) -> tuple:
        parts = [int(p) for p in text.split(":")]
        if len(parts) != self.dim:
            raise ValueError(f"lamp value {text!r} needs {self.dim} ':'-separated integers")
        return tuple(parts)

    def format_value(self, a) -> str:
        return ":".join(str(x) for x in a)


def parse_lamp_group(spec: str):
    """``"Z2"``, ``"Z<n>"``, ``"Zd:k"`` or a path to a JSON table file."""
    if spec.startswith("Zd:"):
        return FreeAbelianLamps(int(spec[3:]))
    if spec.startswith("Z") and spec[1:].isdigit():
        return FiniteLampGroup.cyclic(int(spec[1:]))
    return FiniteLampGroup.from_json(spec)
