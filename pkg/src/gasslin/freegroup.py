"""Free-group words, the braid action, and Fox derivatives.

Words in the free group on x_1, ..., x_n are tuples of nonzero ints:
the letter k > 0 is x_k and -k is x_k^{-1}.  Words are reduced eagerly
(adjacent inverse pairs cancel).  Group-ring elements with integer
coefficients are dicts mapping reduced words to ints.

The braid group acts on the right: for the generator sigma_i,

    x_i * sigma_i     = x_i x_{i+1} x_i^{-1}
    x_{i+1} * sigma_i = x_i

and all other generators are fixed; the inverse letter acts by
x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^{-1} x_i x_{i+1}.

The alternative basis g_i = x_1 x_2 ... x_i is used for the reduced
matrices; derivatives with respect to it are computed by two
independent routes and compared.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import GeneratorOutOfRange, InternalMismatch
from .laurent import LaurentPoly

Word = tuple[int, ...]
RingElem = dict[Word, int]

__all__ = [
    "reduce_word",
    "word_mul",
    "word_inverse",
    "braid_act_letter",
    "braid_act",
    "fox_derivative",
    "fox_derivative_gbasis",
    "psi_word",
    "psi_ring",
    "ring_add",
    "ring_scale",
    "ring_mul",
    "word_to_gbasis",
    "gbasis_to_word",
    "fundamental_identity_holds",
]


def reduce_word(letters: Sequence[int]) -> Word:
    out: list[int] = []
    for l in letters:
        if l == 0:
            raise GeneratorOutOfRange("0 is not a generator")
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def word_mul(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for l in w:
            if out and out[-1] == -l:
                out.pop()
            else:
                out.append(l)
    return tuple(out)


def word_inverse(w: Sequence[int]) -> Word:
    return tuple(-l for l in reversed(w))


def _check_gen(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise GeneratorOutOfRange(f"generator {i} outside 1..{n}")


def braid_act_letter(w: Sequence[int], letter: int, n: int) -> Word:
    """Right action of one braid letter on a free word."""
    i = abs(letter)
    if not 1 <= i <= n - 1:
        raise GeneratorOutOfRange(f"braid letter {letter} outside the {n}-strand group")
    out: list[int] = []

    def push(seq):
        for l in seq:
            if out and out[-1] == -l:
                out.pop()
            else:
                out.append(l)

    if letter > 0:
        for l in w:
            a = abs(l)
            if a == i:
                image = (i, i + 1, -i)
            elif a == i + 1:
                image = (i,)
            else:
                image = (a,)
            push(image if l > 0 else tuple(-x for x in reversed(image)))
    else:
        for l in w:
            a = abs(l)
            if a == i:
                image = (i + 1,)
            elif a == i + 1:
                image = (-(i + 1), i, i + 1)
            else:
                image = (a,)
            push(image if l > 0 else tuple(-x for x in reversed(image)))
    return tuple(out)


def braid_act(w: Sequence[int], braid_word: Sequence[int], n: int) -> Word:
    """Right action of a braid word (letters applied left to right)."""
    cur = reduce_word(w)
    for s in braid_word:
        cur = braid_act_letter(cur, s, n)
    return cur


# -- group ring helpers ----------------------------------------------------


def ring_add(a: Mapping[Word, int], b: Mapping[Word, int]) -> RingElem:
    out = dict(a)
    for w, c in b.items():
        s = out.get(w, 0) + c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def ring_scale(a: Mapping[Word, int], k: int) -> RingElem:
    if k == 0:
        return {}
    return {w: c * k for w, c in a.items()}


def ring_mul(a: Mapping[Word, int], b: Mapping[Word, int]) -> RingElem:
    out: RingElem = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = word_mul(w1, w2)
            s = out.get(w, 0) + c1 * c2
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def fox_derivative(w: Sequence[int], j: int, n: int) -> RingElem:
    """Fox derivative of a word with respect to x_j, as a group-ring element.

    Satisfies d(x_j)/d(x_j) = 1, d(x_j^{-1})/d(x_j) = -x_j^{-1} and the
    product rule d(uv) = d(u) + u d(v).
    """
    _check_gen(j, n)
    out: RingElem = {}
    prefix: Word = ()
    for l in reduce_word(w):
        if l == j:
            s = out.get(prefix, 0) + 1
            if s:
                out[prefix] = s
            else:
                out.pop(prefix, None)
        elif l == -j:
            key = word_mul(prefix, (-j,))
            s = out.get(key, 0) - 1
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        prefix = word_mul(prefix, (l,))
    return out


def fundamental_identity_holds(w: Sequence[int], n: int) -> bool:
    """Check sum_j d(w)/d(x_j) (x_j - 1) == w - 1 in the group ring."""
    total: RingElem = {}
    for j in range(1, n + 1):
        d = fox_derivative(w, j, n)
        term = ring_mul(d, {(j,): 1, (): -1})
        total = ring_add(total, term)
    expected: RingElem = ring_add({reduce_word(w): 1}, {(): -1})
    return total == expected


# -- the g-basis -----------------------------------------------------------


def gbasis_to_word(i: int, n: int) -> Word:
    """g_i = x_1 x_2 ... x_i."""
    _check_gen(i, n)
    return tuple(range(1, i + 1))


def word_to_gbasis(w: Sequence[int], n: int) -> Word:
    """Rewrite a word over x_1..x_n as a word over g_1..g_n.

    Uses x_1 = g_1 and x_k = g_{k-1}^{-1} g_k.  The result is a reduced
    word whose letters refer to the g generators.
    """
    out: list[int] = []

    def push(seq):
        for l in seq:
            if out and out[-1] == -l:
                out.pop()
            else:
                out.append(l)

    for l in reduce_word(w):
        k = abs(l)
        _check_gen(k, n)
        image = (k,) if k == 1 else (-(k - 1), k)
        push(image if l > 0 else tuple(-x for x in reversed(image)))
    return tuple(out)


def gword_to_xword(w: Sequence[int], n: int) -> Word:
    """Rewrite a word over g_1..g_n back over x_1..x_n."""
    out: list[int] = []

    def push(seq):
        for l in seq:
            if out and out[-1] == -l:
                out.pop()
            else:
                out.append(l)

    for l in w:
        k = abs(l)
        _check_gen(k, n)
        image = gbasis_to_word(k, n)
        push(image if l > 0 else word_inverse(image))
    return tuple(out)


def fox_derivative_gbasis(w: Sequence[int], j: int, n: int) -> RingElem:
    """Fox derivative of an x-word with respect to g_j.

    Computed by two independent routes whose agreement is enforced:

    * rewrite the word over the g alphabet and differentiate there, then
      map the result back to x-words;
    * apply the chain rule d(w)/d(g_j) = sum_k d(w)/d(x_k) d(x_k)/d(g_j)
      with d(x_k)/d(g_k) = g_{k-1}^{-1} and d(x_k)/d(g_{k-1}) =
      -g_{k-1}^{-1} (all other derivatives vanish).
    """
    _check_gen(j, n)
    gword = word_to_gbasis(w, n)
    route_a_g: RingElem = {}
    prefix: Word = ()
    for l in gword:
        if l == j:
            s = route_a_g.get(prefix, 0) + 1
            if s:
                route_a_g[prefix] = s
            else:
                route_a_g.pop(prefix, None)
        elif l == -j:
            key = word_mul(prefix, (-j,))
            s = route_a_g.get(key, 0) - 1
            if s:
                route_a_g[key] = s
            else:
                route_a_g.pop(key, None)
        prefix = word_mul(prefix, (l,))
    route_a = {gword_to_xword(gw, n): c for gw, c in route_a_g.items()}
    route_a = {w_: c for w_, c in route_a.items() if c}

    route_b: RingElem = {}
    for k in (j, j + 1):
        if k > n:
            continue
        dxk = fox_derivative(w, k, n)
        if not dxk:
            continue
        # d(x_k)/d(g_j) expressed over the x alphabet
        gk_minus = word_inverse(gbasis_to_word(k - 1, n)) if k > 1 else ()
        if k == j:
            factor: RingElem = {gk_minus: 1}
        else:  # k == j + 1, derivative with respect to g_{k-1}
            factor = {word_inverse(gbasis_to_word(k - 1, n)): -1}
        route_b = ring_add(route_b, ring_mul(dxk, factor))

    if route_a != route_b:
        raise InternalMismatch(
            f"g-basis Fox derivative routes disagree for word {tuple(w)}, j={j}"
        )
    return route_a


# -- abelianization --------------------------------------------------------


def psi_word(w: Sequence[int], colors: Sequence[int], mu: int) -> LaurentPoly:
    """Monomial image of a word under x_k -> t_{colors[k-1]}."""
    powers = [0] * mu
    for l in w:
        k = abs(l)
        if not 1 <= k <= len(colors):
            raise GeneratorOutOfRange(f"generator {k} has no color")
        powers[colors[k - 1] - 1] += 1 if l > 0 else -1
    return LaurentPoly.monomial(mu, powers)


def psi_ring(elem: Mapping[Word, int], colors: Sequence[int], mu: int) -> LaurentPoly:
    total = LaurentPoly.zero(mu)
    for w, c in elem.items():
        total = total + psi_word(w, colors, mu) * c
    return total
