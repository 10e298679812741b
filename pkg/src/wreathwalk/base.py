"""Base groups H: exact arithmetic, distances, geodesics and projections.

Two families are provided:

``FreeGroup(k)``
    Elements are reduced words stored as tuples of signed generator indices
    (``1`` is ``a``, ``-1`` is ``a^-1``, ``2`` is ``b`` ...).  The Cayley graph
    for the free generators is a tree, so geodesics are unique and every
    distance is computed from longest common prefixes.

``IntegerLattice(d)``
    Elements are integer vectors with the L1 word metric for the unit
    generators.  For ``d >= 2`` this is the non-hyperbolic control; for
    ``d == 1`` the Cayley graph is a path, hence also a tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

ALPHABET = "abcdefghijklmnopqrstuvwxyz"
IDENTITY_TOKEN = "1"


def _letter_index(ch: str) -> int:
    lower = ch.lower()
    if lower not in ALPHABET:
        raise ValueError(f"invalid generator symbol {ch!r}")
    idx = ALPHABET.index(lower) + 1
    return -idx if ch.isupper() else idx


def parse_letters(text: str) -> list[int]:
    """Parse ``"aB"`` into signed indices ``[1, -2]``; capitals are inverses."""
    text = text.strip()
    if text in ("", IDENTITY_TOKEN):
        return []
    return [_letter_index(ch) for ch in text]


def format_letters(letters: Iterable[int]) -> str:
    out = []
    for s in letters:
        ch = ALPHABET[abs(s) - 1]
        out.append(ch.upper() if s < 0 else ch)
    return "".join(out) or IDENTITY_TOKEN


class BaseGroup:
    """Interface shared by the base groups (documentation only)."""

    is_tree = False
    rank = 0

    def identity(self):
        raise NotImplementedError

    def generators(self) -> list:
        """Symmetric generating set, ordered ``s1, s1^-1, s2, s2^-1, ...``."""
        return [self.from_letters([s]) for s in self.letter_set()]

    def letter_set(self) -> list[int]:
        out = []
        for i in range(1, self.rank + 1):
            out.extend((i, -i))
        return out

    def check_letters(self, letters: Sequence[int]) -> None:
        for s in letters:
            if not isinstance(s, int) or s == 0 or abs(s) > self.rank:
                raise ValueError(f"generator index {s!r} out of range for rank {self.rank}")

    def parse(self, text: str):
        return self.from_letters(parse_letters(text))

    def format(self, x) -> str:
        return format_letters(self.as_letters(x))

    def length(self, x) -> int:
        return self.distance(self.identity(), x)

    def geodesic(self, x, y) -> "GeodesicSegment":
        return GeodesicSegment(self, tuple(self._geodesic_vertices(x, y)))


class FreeGroup(BaseGroup):
    is_tree = True

    def __init__(self, rank: int = 2):
        if rank < 1:
            raise ValueError("free group rank must be positive")
        self.rank = rank

    def __repr__(self):
        return f"FreeGroup({self.rank})"

    def __eq__(self, other):
        return isinstance(other, FreeGroup) and other.rank == self.rank

    def __hash__(self):
        return hash(("free", self.rank))

    @property
    def spec(self) -> str:
        return f"free:{self.rank}"

    def identity(self) -> tuple:
        return ()

    def reduce(self, letters: Sequence[int]) -> tuple:
        """Freely reduce a letter sequence with a stack."""
        self.check_letters(letters)
        stack: list[int] = []
        for s in letters:
            if stack and stack[-1] == -s:
                stack.pop()
            else:
                stack.append(s)
        return tuple(stack)

    from_letters = reduce

    def as_letters(self, x) -> tuple:
        return x

    def multiply(self, x: tuple, y: tuple) -> tuple:
        i = 0
        n = min(len(x), len(y))
        while i < n and x[len(x) - 1 - i] == -y[i]:
            i += 1
        return x[: len(x) - i] + y[i:]

    def inverse(self, x: tuple) -> tuple:
        return tuple(-s for s in reversed(x))

    def length(self, x: tuple) -> int:
        return len(x)

    @staticmethod
    def common_prefix(x: tuple, y: tuple) -> int:
        n = min(len(x), len(y))
        i = 0
        while i < n and x[i] == y[i]:
            i += 1
        return i

    def distance(self, x: tuple, y: tuple) -> int:
        return len(x) + len(y) - 2 * self.common_prefix(x, y)

    def _geodesic_vertices(self, x, y):
        p = self.common_prefix(x, y)
        for i in range(len(x), p, -1):
            yield x[:i]
        for i in range(p, len(y) + 1):
            yield y[:i]

    # tree structure, rooted at the identity
    def parent(self, x: tuple) -> tuple:
        return x[:-1]

    def depth(self, x: tuple) -> int:
        return len(x)

    def lca(self, x: tuple, y: tuple) -> tuple:
        return x[: self.common_prefix(x, y)]

    def sort_key(self, x: tuple):
        return (len(x), tuple((abs(s), s < 0) for s in x))

    def random_word(self, rng, length: int, avoid_first: Iterable[int] = ()) -> tuple:
        """Uniform random reduced word of the given length.

        ``avoid_first`` lists letters the first letter must not equal.
        """
        letters = self.letter_set()
        out: list[int] = []
        banned = set(avoid_first)
        for _ in range(length):
            choices = [s for s in letters if s not in banned and (not out or s != -out[-1])]
            out.append(choices[int(rng.integers(len(choices)))])
            banned = set()
        return tuple(out)


class IntegerLattice(BaseGroup):
    def __init__(self, dim: int = 1):
        if dim < 1:
            raise ValueError("lattice dimension must be positive")
        self.rank = dim
        self.dim = dim
        self.is_tree = dim == 1

    def __repr__(self):
        return f"IntegerLattice({self.dim})"

    def __eq__(self, other):
        return isinstance(other, IntegerLattice) and other.dim == self.dim

    def __hash__(self):
        return hash(("lattice", self.dim))

    @property
    def spec(self) -> str:
        return f"lattice:{self.dim}"

    def identity(self) -> tuple:
        return (0,) * self.dim

    def from_letters(self, letters: Sequence[int]) -> tuple:
        self.check_letters(letters)
        v = [0] * self.dim
        for s in letters:
            v[abs(s) - 1] += 1 if s > 0 else -1
        return tuple(v)

    reduce = from_letters

    def as_letters(self, x) -> tuple:
        out: list[int] = []
        for i, c in enumerate(x):
            out.extend([(i + 1) if c > 0 else -(i + 1)] * abs(c))
        return tuple(out)

    def multiply(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inverse(self, x):
        return tuple(-a for a in x)

    def length(self, x) -> int:
        return sum(abs(a) for a in x)

    def distance(self, x, y) -> int:
        return sum(abs(a - b) for a, b in zip(x, y))

    def _geodesic_vertices(self, x, y):
        cur = list(x)
        yield tuple(cur)
        for i in range(self.dim):
            step = 1 if y[i] > cur[i] else -1
            while cur[i] != y[i]:
                cur[i] += step
                yield tuple(cur)

    def parent(self, x):
        if self.dim != 1:
            raise TypeError("parent() is defined only for the rank-1 lattice")
        (c,) = x
        return (c - 1,) if c > 0 else (c + 1,) if c < 0 else x

    def depth(self, x) -> int:
        return self.length(x)

    def lca(self, x, y):
        if self.dim != 1:
            raise TypeError("lca() is defined only for the rank-1 lattice")
        (a,), (b,) = x, y
        if a > 0 and b > 0:
            return (min(a, b),)
        if a < 0 and b < 0:
            return (max(a, b),)
        return (0,)

    def sort_key(self, x):
        return x


@dataclass(frozen=True)
class GeodesicSegment:
    group: BaseGroup
    vertices: tuple

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("geodesic segment has no vertices")

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices) - 1

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def is_valid(self) -> bool:
        g = self.group
        steps = all(g.distance(u, v) == 1 for u, v in zip(self.vertices, self.vertices[1:]))
        return steps and g.distance(self.start, self.end) == self.length

    def index_of(self, x) -> int:
        return self.vertices.index(x)


def project_to_geodesic(group: BaseGroup, p, segment: GeodesicSegment):
    """Closest vertex of ``segment`` to ``p`` and its distance.

    In a tree the minimiser is the median of ``(start, end, p)``; elsewhere the
    vertices are scanned and ties go to the lexicographically smallest vertex.
    """
    if not segment.vertices:
        raise ValueError("empty geodesic segment")
    if group.is_tree:
        s, e = segment.start, segment.end
        cands = (group.lca(s, e), group.lca(s, p), group.lca(e, p))
        median = max(cands, key=group.depth)
        return median, group.distance(p, median)
    best = None
    best_d = None
    for v in segment.vertices:
        d = group.distance(p, v)
        if best_d is None or d < best_d or (d == best_d and group.sort_key(v) < group.sort_key(best)):
            best, best_d = v, d
    return best, best_d


def distance_to_segment(group: BaseGroup, p, segment: GeodesicSegment) -> int:
    return project_to_geodesic(group, p, segment)[1]


def parse_base(spec: str) -> BaseGroup:
    """``"free:k"`` or ``"lattice:d"``."""
    kind, _, arg = spec.partition(":")
    try:
        n = int(arg)
    except ValueError:
        raise ValueError(f"base spec {spec!r}: expected 'free:k' or 'lattice:d'") from None
    if kind == "free":
        if n < 2:
            raise ValueError("free base group needs rank k >= 2")
        return FreeGroup(n)
    if kind == "lattice":
        return IntegerLattice(n)
    raise ValueError(f"base spec {spec!r}: expected 'free:k' or 'lattice:d'")
