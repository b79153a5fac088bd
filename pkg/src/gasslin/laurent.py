"""Exact Laurent-polynomial arithmetic in several variables.

Elements of Z[t_1^{+-1}, ..., t_mu^{+-1}], extended by half-integer
exponents so that expressions in t_i^{1/2} (needed by the potential
function of a one-colored link) live in the same representation.

Representation: a polynomial is a map from exponent vectors to integer
coefficients.  Stored exponents count HALF-steps of the variable, so a
stored exponent of 2 means t^1 and a stored exponent of 1 means t^{1/2}.
Coefficients are arbitrary-precision Python ints and zero coefficients
are never stored.
"""

from __future__ import annotations

import cmath
import json
import math
from typing import Iterable, Mapping, Sequence

from .errors import NotDivisible, NotSquare, VariableCountMismatch

__all__ = [
    "LaurentPoly",
    "PolyMatrix",
    "TorusPoint",
    "det",
]


class LaurentPoly:
    """Multivariate Laurent polynomial with half-step exponents."""

    __slots__ = ("mu", "terms")

    def __init__(self, mu: int, terms: Mapping[tuple[int, ...], int] | None = None):
        if mu < 0:
            raise ValueError("variable count must be nonnegative")
        self.mu = mu
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != mu:
                    raise VariableCountMismatch(
                        f"exponent vector {exps} does not have {mu} entries"
                    )
                if coeff:
                    key = tuple(int(e) for e in exps)
                    c = clean.get(key, 0) + int(coeff)
                    if c:
                        clean[key] = c
                    else:
                        clean.pop(key, None)
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, mu: int) -> "LaurentPoly":
        return cls(mu, {})

    @classmethod
    def one(cls, mu: int) -> "LaurentPoly":
        return cls(mu, {(0,) * mu: 1})

    @classmethod
    def const(cls, mu: int, value: int) -> "LaurentPoly":
        return cls(mu, {(0,) * mu: value})

    @classmethod
    def var(cls, mu: int, index: int, power: int = 1) -> "LaurentPoly":
        """t_index^power with an integer power (index is 1-based)."""
        if not 1 <= index <= mu:
            raise VariableCountMismatch(f"variable index {index} outside 1..{mu}")
        exps = [0] * mu
        exps[index - 1] = 2 * power
        return cls(mu, {tuple(exps): 1})

    @classmethod
    def half_var(cls, mu: int, index: int, half_power: int = 1) -> "LaurentPoly":
        """t_index^(half_power/2)."""
        if not 1 <= index <= mu:
            raise VariableCountMismatch(f"variable index {index} outside 1..{mu}")
        exps = [0] * mu
        exps[index - 1] = half_power
        return cls(mu, {tuple(exps): 1})

    @classmethod
    def monomial(cls, mu: int, powers: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        """coeff * prod t_i^powers[i] with integer powers."""
        if len(powers) != mu:
            raise VariableCountMismatch("wrong number of powers")
        return cls(mu, {tuple(2 * int(p) for p in powers): coeff})

    # -- basic predicates ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def integral(self) -> bool:
        """True when every stored exponent is even (no genuine half powers)."""
        return all(e % 2 == 0 for exps in self.terms for e in exps)

    def is_unit_monomial(self) -> bool:
        if len(self.terms) != 1:
            return False
        return abs(next(iter(self.terms.values()))) == 1

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations ------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.mu != self.mu:
                raise VariableCountMismatch(
                    f"cannot combine polynomials in {self.mu} and {other.mu} variables"
                )
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.mu, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            c = out.get(exps, 0) + coeff
            if c:
                out[exps] = c
            else:
                out.pop(exps, None)
        return LaurentPoly(self.mu, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.mu, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                c = out.get(key, 0) + c1 * c2
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        return LaurentPoly(self.mu, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_unit_monomial():
                raise NotDivisible("negative powers only exist for unit monomials")
            return self.unit_inverse() ** (-k)
        result = LaurentPoly.one(self.mu)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def unit_inverse(self) -> "LaurentPoly":
        """Inverse of a +-monomial."""
        if not self.is_unit_monomial():
            raise NotDivisible("only unit monomials are invertible")
        (exps, coeff), = self.terms.items()
        return LaurentPoly(self.mu, {tuple(-e for e in exps): coeff})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(self.mu, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.mu == other.mu and self.terms == other.terms

    def __hash__(self):
        return hash((self.mu, frozenset(self.terms.items())))

    # -- exponent manipulation -------------------------------------------

    def double_exponents(self) -> "LaurentPoly":
        """The ring map sending t_i to t_i^2 (and t_i^{1/2} to t_i)."""
        return LaurentPoly(self.mu, {tuple(2 * e for e in exps): c for exps, c in self.terms.items()})

    def halve_exponents(self) -> "LaurentPoly":
        """Inverse of double_exponents; every stored exponent must be even."""
        out = {}
        for exps, c in self.terms.items():
            if any(e % 2 for e in exps):
                raise NotDivisible("odd stored exponent cannot be halved")
            out[tuple(e // 2 for e in exps)] = c
        return LaurentPoly(self.mu, out)

    def invert_variables(self) -> "LaurentPoly":
        """Substitute t_i -> t_i^{-1}."""
        return LaurentPoly(self.mu, {tuple(-e for e in exps): c for exps, c in self.terms.items()})

    def min_exponents(self) -> tuple[int, ...]:
        """Per-variable minimum of the stored (half-step) exponents."""
        if not self.terms:
            return (0,) * self.mu
        return tuple(min(exps[i] for exps in self.terms) for i in range(self.mu))

    def max_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.mu
        return tuple(max(exps[i] for exps in self.terms) for i in range(self.mu))

    def shift(self, halves: Sequence[int]) -> "LaurentPoly":
        """Multiply by prod t_i^(halves[i]/2)."""
        if len(halves) != self.mu:
            raise VariableCountMismatch("wrong number of shifts")
        return LaurentPoly(
            self.mu,
            {tuple(e + h for e, h in zip(exps, halves)): c for exps, c in self.terms.items()},
        )

    def coefficient_sum(self) -> int:
        return sum(abs(c) for c in self.terms.values())

    # -- normalization and comparison up to units -----------------------

    def unit_normalized(self) -> "LaurentPoly":
        """Canonical representative of the class of self up to +-monomials.

        Shifts the minimal exponent of every variable to zero, then makes
        the coefficient of the lexicographically first exponent vector
        positive.
        """
        if not self.terms:
            return self
        mins = self.min_exponents()
        shifted = self.shift(tuple(-m for m in mins))
        first = min(shifted.terms)
        if shifted.terms[first] < 0:
            shifted = -shifted
        return shifted

    def equal_up_to_units(self, other: "LaurentPoly") -> bool:
        if self.mu != other.mu:
            raise VariableCountMismatch("different variable counts")
        return self.unit_normalized() == other.unit_normalized()

    # -- division ---------------------------------------------------------

    def exact_divide(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Return q with self == divisor * q, or raise NotDivisible.

        Works in the half-exponent ring: both operands are shifted to
        ordinary polynomials (minimal stored exponent zero per variable),
        the quotient is computed by leading-term elimination in graded
        lexicographic order, and the unit shift is undone at the end.  If
        the quotient exists in the Laurent ring the shifted quotient is an
        ordinary polynomial, so the stepwise division never gets stuck on
        a genuine quotient.
        """
        divisor = self._coerce(divisor)
        if divisor is NotImplemented:
            raise TypeError("divisor must be a polynomial or int")
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return LaurentPoly.zero(self.mu)

        smin = self.min_exponents()
        dmin = divisor.min_exponents()
        a = self.shift(tuple(-m for m in smin))
        b = divisor.shift(tuple(-m for m in dmin))

        def order_key(exps: tuple[int, ...]) -> tuple:
            return (sum(exps), exps)

        b_lead = max(b.terms, key=order_key)
        b_lc = b.terms[b_lead]
        rem = dict(a.terms)
        quot: dict[tuple[int, ...], int] = {}
        while rem:
            lead = max(rem, key=order_key)
            lc = rem[lead]
            diff = tuple(x - y for x, y in zip(lead, b_lead))
            if any(d < 0 for d in diff) or lc % b_lc != 0:
                raise NotDivisible("nonzero remainder in exact division")
            q = lc // b_lc
            quot[diff] = quot.get(diff, 0) + q
            for exps, c in b.terms.items():
                key = tuple(x + y for x, y in zip(diff, exps))
                nc = rem.get(key, 0) - q * c
                if nc:
                    rem[key] = nc
                else:
                    rem.pop(key, None)
        result = LaurentPoly(self.mu, quot)
        back = tuple(sm - dm for sm, dm in zip(smin, dmin))
        return result.shift(back)

    # -- evaluation --------------------------------------------------------

    def evaluate(self, point) -> complex:
        """Evaluate at a TorusPoint or a sequence of complex values.

        Stored exponents count half-steps, so the value of a term is
        prod sqrt_i^e_i where sqrt_i is the chosen square root of the
        i-th coordinate.  A TorusPoint carries explicit square roots; for
        a raw sequence the principal branch is used (only relevant when
        the polynomial has genuine half exponents).
        """
        if isinstance(point, TorusPoint):
            sqrts = point.sqrts
        else:
            values = tuple(complex(v) for v in point)
            if len(values) != self.mu:
                raise VariableCountMismatch("wrong number of values")
            sqrts = tuple(cmath.sqrt(v) for v in values)
        if len(sqrts) != self.mu:
            raise VariableCountMismatch("wrong number of coordinates")
        total = 0j
        for exps, coeff in self.terms.items():
            val = complex(coeff)
            for s, e in zip(sqrts, exps):
                if e:
                    val *= s ** e
            total += val
        return total

    def evaluate_error_bound(self) -> float:
        """A priori rounding bound for evaluate on the unit torus."""
        if not self.terms:
            return 0.0
        return len(self.terms) * float(max(abs(c) for c in self.terms.values())) * 2.220446049250313e-16

    def zero_tolerance(self) -> float:
        """Threshold below which an evaluation counts as a zero of self."""
        return 1e-9 * (1.0 + float(self.coefficient_sum()))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list[dict]:
        return [
            {"exponents": list(exps), "coeff": str(coeff)}
            for exps, coeff in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, mu: int, data: Iterable[Mapping]) -> "LaurentPoly":
        terms = {}
        for item in data:
            exps = tuple(int(e) for e in item["exponents"])
            terms[exps] = terms.get(exps, 0) + int(item["coeff"])
        return cls(mu, terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    # -- printing ----------------------------------------------------------

    def _format_term(self, exps: tuple[int, ...], coeff: int) -> str:
        parts = []
        for i, e in enumerate(exps):
            if e == 0:
                continue
            name = f"t{i + 1}" if self.mu > 1 else "t"
            if e == 2:
                parts.append(name)
            elif e % 2 == 0:
                parts.append(f"{name}^{e // 2}")
            else:
                parts.append(f"{name}^({e}/2)")
        body = "*".join(parts)
        if not body:
            return str(coeff)
        if coeff == 1:
            return body
        if coeff == -1:
            return f"-{body}"
        return f"{coeff}*{body}"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = [self._format_term(e, c) for e, c in sorted(self.terms.items(), reverse=True)]
        out = chunks[0]
        for ch in chunks[1:]:
            out += " - " + ch[1:] if ch.startswith("-") else " + " + ch
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self.mu}, {self.terms!r})"


class TorusPoint:
    """A point of the mu-torus with explicit square-root choices.

    Built from angles alpha in (0, pi)^mu the coordinates are
    omega_i = exp(2i alpha_i) with square roots exp(i alpha_i).  Built
    from raw coordinates the square roots default to the upper-half
    branch exp(i theta/2) with theta = arg omega in [0, 2 pi).
    """

    __slots__ = ("omegas", "tolerance", "sqrts")

    def __init__(
        self,
        omegas: Sequence[complex],
        tolerance: float = 1e-9,
        sqrts: Sequence[complex] | None = None,
    ):
        self.omegas = tuple(complex(w) for w in omegas)
        self.tolerance = float(tolerance)
        for w in self.omegas:
            if abs(abs(w) - 1.0) > self.tolerance:
                raise ValueError(f"{w} is not on the unit circle (tolerance {tolerance})")
        if sqrts is None:
            chosen = []
            for w in self.omegas:
                theta = math.atan2(w.imag, w.real)
                if theta < 0.0:
                    theta += 2.0 * math.pi
                chosen.append(cmath.exp(0.5j * theta))
            self.sqrts = tuple(chosen)
        else:
            self.sqrts = tuple(complex(s) for s in sqrts)
            if len(self.sqrts) != len(self.omegas):
                raise VariableCountMismatch("one square root per coordinate required")
            for s, w in zip(self.sqrts, self.omegas):
                if abs(s * s - w) > 1e-9:
                    raise ValueError("square-root choices do not square to the coordinates")

    @classmethod
    def from_angles(cls, alphas: Sequence[float], tolerance: float = 1e-9) -> "TorusPoint":
        omegas = [cmath.exp(2j * a) for a in alphas]
        sqrts = [cmath.exp(1j * a) for a in alphas]
        return cls(omegas, tolerance, sqrts)

    @classmethod
    def from_sqrts(cls, sqrts: Sequence[complex], tolerance: float = 1e-9) -> "TorusPoint":
        """Point with coordinates s_i^2 and the given roots, no branch default."""
        roots = [complex(s) for s in sqrts]
        return cls([s * s for s in roots], tolerance, roots)

    @property
    def mu(self) -> int:
        return len(self.omegas)

    def in_T_star(self) -> bool:
        return all(abs(w - 1.0) > self.tolerance for w in self.omegas)

    def conjugate(self) -> "TorusPoint":
        return TorusPoint([w.conjugate() for w in self.omegas], self.tolerance)

    def replace(self, index: int, omega: complex) -> "TorusPoint":
        """New point with coordinate index (0-based) replaced; default branch."""
        omegas = list(self.omegas)
        omegas[index] = omega
        return TorusPoint(omegas, self.tolerance)

    def __repr__(self) -> str:
        return f"TorusPoint({list(self.omegas)!r})"


class PolyMatrix:
    """Rectangular matrix of LaurentPoly entries over a common variable count."""

    __slots__ = ("mu", "rows", "cols", "entries")

    def __init__(self, mu: int, entries: Sequence[Sequence[LaurentPoly]]):
        self.mu = mu
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for p in row:
                if p.mu != mu:
                    raise VariableCountMismatch("entry has wrong variable count")

    @classmethod
    def identity(cls, mu: int, n: int) -> "PolyMatrix":
        one = LaurentPoly.one(mu)
        zero = LaurentPoly.zero(mu)
        return cls(mu, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, mu: int, rows: int, cols: int) -> "PolyMatrix":
        zero = LaurentPoly.zero(mu)
        return cls(mu, [[zero for _ in range(cols)] for _ in range(rows)])

    def __getitem__(self, idx: tuple[int, int]) -> LaurentPoly:
        return self.entries[idx[0]][idx[1]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.mu == other.mu
            and self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        if self.mu != other.mu:
            raise VariableCountMismatch("different variable counts")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = LaurentPoly.zero(self.mu)
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.mu, out)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix sum")
        return PolyMatrix(
            self.mu,
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix difference")
        return PolyMatrix(
            self.mu,
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def scale(self, p: LaurentPoly | int) -> "PolyMatrix":
        return PolyMatrix(
            self.mu, [[entry * p for entry in row] for row in self.entries]
        )

    def minor_matrix(self, row: int, col: int) -> "PolyMatrix":
        """Delete one row and one column (0-based indices)."""
        ents = [
            [e for j, e in enumerate(r) if j != col]
            for i, r in enumerate(self.entries)
            if i != row
        ]
        return PolyMatrix(self.mu, ents)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(
            self.mu, [[self.entries[i][j] for j in cols] for i in rows]
        )

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.mu,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def integral(self) -> bool:
        return all(p.integral() for row in self.entries for p in row)

    def det(self) -> LaurentPoly:
        return det(self)

    def evaluate(self, point) -> "object":
        """Numerical matrix at a point; returns a numpy complex array."""
        import numpy as np

        out = np.empty((self.rows, self.cols), dtype=complex)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = self.entries[i][j].evaluate(point)
        return out

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[p.to_json() for p in row] for row in self.entries],
        }

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(str(p) for p in row) + "]" for row in self.entries)
        return f"PolyMatrix {self.rows}x{self.cols}:\n{body}"


def _det_cofactor(m: PolyMatrix) -> LaurentPoly:
    n = m.rows
    if n == 0:
        return LaurentPoly.one(m.mu)
    if n == 1:
        return m.entries[0][0]
    if n == 2:
        return m.entries[0][0] * m.entries[1][1] - m.entries[0][1] * m.entries[1][0]
    acc = LaurentPoly.zero(m.mu)
    for j in range(n):
        a = m.entries[0][j]
        if a.is_zero:
            continue
        sub = m.minor_matrix(0, j)
        term = a * _det_cofactor(sub)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _det_bareiss(m: PolyMatrix) -> LaurentPoly:
    n = m.rows
    work = [[m.entries[i][j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = LaurentPoly.one(m.mu)
    for k in range(n - 1):
        if work[k][k].is_zero:
            pivot_row = next((r for r in range(k + 1, n) if not work[r][k].is_zero), None)
            if pivot_row is None:
                return LaurentPoly.zero(m.mu)
            work[k], work[pivot_row] = work[pivot_row], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = work[i][j] * pivot - work[i][k] * work[k][j]
                work[i][j] = num.exact_divide(prev)
            work[i][k] = LaurentPoly.zero(m.mu)
        prev = pivot
    result = work[n - 1][n - 1]
    return result if sign == 1 else -result


def det(m: PolyMatrix) -> LaurentPoly:
    """Exact determinant; the empty matrix has determinant 1."""
    if m.rows != m.cols:
        raise NotSquare(f"matrix is {m.rows}x{m.cols}")
    n = m.rows
    if n <= 3:
        return _det_cofactor(m)
    if m.integral():
        return _det_bareiss(m)
    if n <= 8:
        return _det_cofactor(m)
    return _det_bareiss(m)
