"""Colored braid words, Markov moves, and closure bookkeeping.

A braid word on n strands is a sequence of nonzero integers; the letter
s with |s| = i stands for the generator sigma_i (positive crossing of
strands i, i+1 read bottom to top) and its sign is the crossing sign.
Words are stored as given and never auto-reduced.

A coloring assigns each bottom strand a color in 1..mu.  Letters permute
the colors as the strands cross, giving the level colorings and the top
coloring; a braid whose top coloring equals its bottom coloring is
called a (c,c)-braid and has a well-defined colored closure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    ColoringMismatch,
    InconsistentColoring,
    InvalidColor,
    PreconditionViolated,
)

__all__ = [
    "ColoredBraidWord",
    "ClosureInfo",
    "parse_braid_file",
    "format_braid_file",
    "load_braid",
    "shipped_braid_names",
    "random_cc_braid",
]


@dataclass(frozen=True)
class ClosureInfo:
    """Component structure of the closure of a (c,c)-braid.

    Components are the orbits of the induced permutation, listed by
    smallest strand index and given in that order.  The linking matrix
    counts half the signed crossings between distinct components.
    """

    components: tuple[tuple[int, ...], ...]
    component_colors: tuple[int, ...]
    linking: tuple[tuple[int, ...], ...]

    @property
    def n_components(self) -> int:
        return len(self.components)

    def total_linking(self) -> int:
        """Sum of lk over unordered pairs of distinct components."""
        total = 0
        for a in range(len(self.components)):
            for b in range(a + 1, len(self.components)):
                total += self.linking[a][b]
        return total

    def color_linking(self, mu: int) -> list[list[int]]:
        """Linking numbers aggregated by color (sublink pairwise linking)."""
        out = [[0] * mu for _ in range(mu)]
        for a in range(len(self.components)):
            for b in range(len(self.components)):
                if a != b:
                    out[self.component_colors[a] - 1][self.component_colors[b] - 1] += self.linking[a][b]
        return out


class ColoredBraidWord:
    """An n-strand braid word with a bottom coloring.  Immutable."""

    __slots__ = ("n", "mu", "colors", "word", "_top")

    def __init__(self, n: int, colors: Sequence[int], word: Sequence[int], mu: int | None = None):
        if n < 1:
            raise ValueError("at least one strand required")
        colors = tuple(int(c) for c in colors)
        word = tuple(int(s) for s in word)
        if len(colors) != n:
            raise InvalidColor(f"{len(colors)} colors supplied for {n} strands")
        inferred = max(colors) if colors else 0
        m = inferred if mu is None else int(mu)
        for c in colors:
            if not 1 <= c <= m:
                raise InvalidColor(f"color {c} outside 1..{m}")
        for s in word:
            if s == 0 or not 1 <= abs(s) <= n - 1:
                raise ValueError(f"letter {s} does not name a generator of the {n}-strand group")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mu", m)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "_top", None)

    def __setattr__(self, *a):
        raise AttributeError("ColoredBraidWord is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredBraidWord):
            return NotImplemented
        return (self.n, self.mu, self.colors, self.word) == (
            other.n,
            other.mu,
            other.colors,
            other.word,
        )

    def __hash__(self):
        return hash((self.n, self.mu, self.colors, self.word))

    def __repr__(self) -> str:
        return f"ColoredBraidWord(n={self.n}, colors={self.colors}, word={self.word})"

    # -- colorings --------------------------------------------------------

    def level_colorings(self) -> list[tuple[int, ...]]:
        """Colorings below each letter plus the top coloring; length m+1."""
        levels = [self.colors]
        cur = list(self.colors)
        for s in self.word:
            i = abs(s) - 1
            cur[i], cur[i + 1] = cur[i + 1], cur[i]
            levels.append(tuple(cur))
        return levels

    @property
    def top_colors(self) -> tuple[int, ...]:
        cached = self._top
        if cached is None:
            cached = self.level_colorings()[-1]
            object.__setattr__(self, "_top", cached)
        return cached

    def is_cc(self) -> bool:
        return self.top_colors == self.colors

    # -- group structure --------------------------------------------------

    def compose(self, other: "ColoredBraidWord") -> "ColoredBraidWord":
        """self followed by other stacked above it."""
        if self.n != other.n:
            raise ColoringMismatch("strand counts differ")
        if self.mu != other.mu:
            raise ColoringMismatch("color counts differ")
        if self.top_colors != other.colors:
            raise ColoringMismatch(
                f"top coloring {self.top_colors} does not match bottom coloring {other.colors}"
            )
        return ColoredBraidWord(self.n, self.colors, self.word + other.word, self.mu)

    def inverse(self) -> "ColoredBraidWord":
        return ColoredBraidWord(
            self.n, self.top_colors, tuple(-s for s in reversed(self.word)), self.mu
        )

    def induced_permutation(self) -> tuple[int, ...]:
        """perm[k] = top position of the strand entering at bottom position k.

        Positions are 0-based.
        """
        inv = list(range(self.n))  # inv[p] = strand currently at position p
        for s in self.word:
            i = abs(s) - 1
            inv[i], inv[i + 1] = inv[i + 1], inv[i]
        perm = [0] * self.n
        for pos, strand in enumerate(inv):
            perm[strand] = pos
        return tuple(perm)

    def writhe(self) -> int:
        return sum(1 if s > 0 else -1 for s in self.word)

    # -- Markov moves ------------------------------------------------------

    def include_strand(self, color: int) -> "ColoredBraidWord":
        """Same word viewed on n+1 strands, new last strand given a color."""
        if not 1 <= color <= self.mu + 1:
            raise InvalidColor(f"color {color} outside 1..{self.mu + 1}")
        return ColoredBraidWord(
            self.n + 1, self.colors + (color,), self.word, max(self.mu, color)
        )

    def markov_stabilize(self, sign: int = 1) -> "ColoredBraidWord":
        """Add a strand colored like strand n and a crossing sigma_n^sign.

        The closure of the result is the closure of self.
        """
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not self.is_cc():
            raise InconsistentColoring("stabilization needs a (c,c)-braid")
        wider = self.include_strand(self.colors[self.n - 1])
        return ColoredBraidWord(
            wider.n, wider.colors, wider.word + (sign * self.n,), wider.mu
        )

    @staticmethod
    def markov_slide(gamma: "ColoredBraidWord", beta: "ColoredBraidWord") -> "ColoredBraidWord":
        """Turn the closure of gamma*beta into the closure of beta*gamma.

        gamma must run from coloring c to c' and beta from c' back to c;
        the two composites then close up to isotopic colored links.
        """
        if gamma.top_colors != beta.colors or beta.top_colors != gamma.colors:
            raise ColoringMismatch("colorings do not alternate between the two factors")
        return beta.compose(gamma)

    # -- closure -----------------------------------------------------------

    def closure(self) -> ClosureInfo:
        if not self.is_cc():
            raise InconsistentColoring(
                "closure of a colored braid needs matching top and bottom colorings"
            )
        perm = self.induced_permutation()
        seen = [False] * self.n
        components: list[tuple[int, ...]] = []
        comp_of = [0] * self.n
        for start in range(self.n):
            if seen[start]:
                continue
            orbit = []
            k = start
            while not seen[k]:
                seen[k] = True
                orbit.append(k)
                k = perm[k]
            idx = len(components)
            for s in orbit:
                comp_of[s] = idx
            components.append(tuple(sorted(orbit)))
        comp_colors = []
        for orbit in components:
            col = {self.colors[s] for s in orbit}
            if len(col) != 1:
                raise InconsistentColoring(f"component {orbit} carries colors {sorted(col)}")
            comp_colors.append(col.pop())
        k = len(components)
        lk = [[Fraction(0)] * k for _ in range(k)]
        inv = list(range(self.n))
        for s in self.word:
            i = abs(s) - 1
            a, b = inv[i], inv[i + 1]
            ca, cb = comp_of[a], comp_of[b]
            if ca != cb:
                half = Fraction(1, 2) if s > 0 else Fraction(-1, 2)
                lk[ca][cb] += half
                lk[cb][ca] += half
            inv[i], inv[i + 1] = inv[i + 1], inv[i]
        linking = []
        for row in lk:
            out_row = []
            for v in row:
                if v.denominator != 1:
                    raise InconsistentColoring("half-integral linking number; broken closure")
                out_row.append(int(v))
            linking.append(tuple(out_row))
        return ClosureInfo(tuple(components), tuple(comp_colors), tuple(linking))

    def over_strand_colors(self) -> tuple[int, ...]:
        """Color of the over strand of each crossing, in word order."""
        out = []
        levels = self.level_colorings()
        for s, level in zip(self.word, levels):
            i = abs(s) - 1
            out.append(level[i] if s > 0 else level[i + 1])
        return tuple(out)

    def delete_strands(self, keep: Sequence[int]) -> "ColoredBraidWord":
        """Braid of the sublink formed by the kept strands (0-based indices).

        The kept set must be a union of closure components; crossings
        between two kept strands survive with reindexed generators and
        every other crossing is discarded.
        """
        keep_set = set(int(k) for k in keep)
        if not keep_set:
            raise PreconditionViolated("cannot delete every strand")
        perm = self.induced_permutation()
        if any(perm[k] not in keep_set for k in keep_set):
            raise PreconditionViolated("kept strands are not a union of closure components")
        inv = list(range(self.n))
        new_word = []
        for s in self.word:
            i = abs(s) - 1
            a, b = inv[i], inv[i + 1]
            if a in keep_set and b in keep_set:
                # position among kept strands of the lower position i
                kept_below = sum(1 for p in range(i) if inv[p] in keep_set)
                new_word.append((kept_below + 1) * (1 if s > 0 else -1))
            inv[i], inv[i + 1] = inv[i + 1], inv[i]
        kept_sorted = sorted(keep_set)
        new_colors = [self.colors[k] for k in kept_sorted]
        used = sorted(set(new_colors))
        relabel = {c: i + 1 for i, c in enumerate(used)}
        new_colors = [relabel[c] for c in new_colors]
        return ColoredBraidWord(len(kept_sorted), new_colors, new_word)


def parse_braid_file(text: str) -> ColoredBraidWord:
    """Parse a braid description.

    Format: `strands = n`, `colors = c_1 ... c_n`, `word = s_1 s_2 ...`
    with one assignment per line; `#` starts a comment and blank lines
    are ignored.  The word may be empty.
    """
    fields: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"cannot parse line: {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().lower()
        if key in fields:
            raise ValueError(f"duplicate field {key!r}")
        fields[key] = value.strip()
    for required in ("strands", "colors"):
        if required not in fields:
            raise ValueError(f"missing field {required!r}")
    n = int(fields["strands"])
    colors = [int(tok) for tok in fields["colors"].split()]
    word = [int(tok) for tok in fields.get("word", "").split()]
    return ColoredBraidWord(n, colors, word)


def format_braid_file(b: ColoredBraidWord) -> str:
    return (
        f"strands = {b.n}\n"
        f"colors = {' '.join(str(c) for c in b.colors)}\n"
        f"word = {' '.join(str(s) for s in b.word)}\n"
    )


def shipped_braid_names() -> list[str]:
    from importlib import resources

    names = []
    for entry in resources.files("gasslin.data").iterdir():
        if entry.name.endswith(".braid"):
            names.append(entry.name[: -len(".braid")])
    return sorted(names)


def load_braid(source: str) -> ColoredBraidWord:
    """Read a braid from a file path, or fall back to a shipped name.

    Shipped names are the basenames of the .braid files under
    gasslin/data (hopf, trefoil, ...); an existing file path wins over
    a name collision.
    """
    import os

    if os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            return parse_braid_file(fh.read())
    from importlib import resources

    entry = resources.files("gasslin.data") / f"{source}.braid"
    if entry.is_file():
        return parse_braid_file(entry.read_text(encoding="utf-8"))
    raise FileNotFoundError(
        f"no braid file {source!r} and no shipped braid of that name "
        f"(have {', '.join(shipped_braid_names())})"
    )


def random_cc_braid(
    rng: random.Random,
    max_strands: int = 5,
    max_length: int = 12,
    max_colors: int = 3,
    min_strands: int = 2,
) -> ColoredBraidWord:
    """A random (c,c)-braid: random word, then colors constant on orbits.

    Orbits of the induced permutation receive independent random colors,
    which are relabeled onto an initial segment 1..mu.
    """
    n = rng.randint(min_strands, max_strands)
    length = rng.randint(0, max_length)
    word = []
    for _ in range(length):
        i = rng.randint(1, n - 1)
        word.append(i if rng.random() < 0.5 else -i)
    scratch = ColoredBraidWord(n, [1] * n, word)
    perm = scratch.induced_permutation()
    seen = [False] * n
    orbit_id = [0] * n
    n_orbits = 0
    for start in range(n):
        if seen[start]:
            continue
        k = start
        while not seen[k]:
            seen[k] = True
            orbit_id[k] = n_orbits
            k = perm[k]
        n_orbits += 1
    raw = [rng.randint(1, max_colors) for _ in range(n_orbits)]
    used = sorted(set(raw))
    relabel = {c: i + 1 for i, c in enumerate(used)}
    colors = [relabel[raw[orbit_id[k]]] for k in range(n)]
    return ColoredBraidWord(n, colors, word)
