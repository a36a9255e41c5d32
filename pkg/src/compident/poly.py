"""Exact sparse multivariate polynomials over the rationals.

A polynomial lives in a :class:`PolyRing`, which fixes an ordered tuple of
variable names.  Terms are stored as a dict mapping a sparse monomial (a
tuple of ``(variable index, exponent)`` pairs sorted by index) to a rational
coefficient: a plain ``int`` when integral, otherwise a reduced
:class:`fractions.Fraction`.  Zero coefficients are never stored, so the zero
polynomial is the empty dict.

Example, in the ring with variables ``(x1, x2)``::

    2*x1^2*x2 + 3/4   ->   {((0, 2), (1, 1)): 2, (): Fraction(3, 4)}

Everything here is exact; there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple, TypeVar, Union

Monomial = Tuple[Tuple[int, int], ...]
Scalar = Union[int, Fraction]

T = TypeVar("T")


class StructuralError(ValueError):
    """Operands or arguments are incompatible (ring mismatch, missing value...)."""


def _norm(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for i, e in b:
        merged[i] = merged.get(i, 0) + e
    return tuple(sorted(merged.items()))


def _dense(mono: Monomial, nvars: int) -> Tuple[int, ...]:
    vec = [0] * nvars
    for i, e in mono:
        vec[i] = e
    return tuple(vec)


class PolyRing:
    """The ring Q[x_0, ..., x_{n-1}] with named variables."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise StructuralError(f"duplicate variable names in {self.names}")
        self._index = {name: i for i, name in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, var: Union[int, str]) -> int:
        if isinstance(var, str):
            try:
                return self._index[var]
            except KeyError:
                raise StructuralError(f"unknown variable {var!r}") from None
        if not 0 <= var < len(self.names):
            raise StructuralError(f"variable index {var} out of range")
        return var

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, value: Scalar) -> "MultiPoly":
        value = _norm(Fraction(value))
        return MultiPoly(self, {(): value} if value else {})

    def gen(self, var: Union[int, str]) -> "MultiPoly":
        return MultiPoly(self, {((self.index(var), 1),): 1})

    def gens(self) -> Tuple["MultiPoly", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)})"


class MultiPoly:
    """Immutable sparse polynomial.  Use the ring's constructors to build one."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, Scalar]):
        # callers hand over ownership of ``terms``; zero coefficients must already be gone
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other: object) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise StructuralError(
                    f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = _norm(v)
            else:
                out.pop(mono, None)
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero()
        out: Dict[Monomial, Scalar] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = _mono_mul(ma, mb)
                out[mono] = out.get(mono, 0) + ca * cb
        return MultiPoly(self.ring, {m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise StructuralError("exponent must be a non-negative integer")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_term(self) -> Fraction:
        return Fraction(self.terms.get((), 0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def degree_in(self, var: Union[int, str]) -> int:
        i = self.ring.index(var)
        return max((dict(m).get(i, 0) for m in self.terms), default=-1)

    def variables(self) -> Tuple[int, ...]:
        """Indices of the variables that actually occur."""
        return tuple(sorted({i for m in self.terms for i, _ in m}))

    def sorted_terms(self) -> list:
        """Terms in descending graded-lex order on the dense variable index."""
        n = self.ring.nvars
        return sorted(self.terms.items(),
                      key=lambda t: (sum(e for _, e in t[0]), _dense(t[0], n)),
                      reverse=True)

    # -- calculus and evaluation --------------------------------------------

    def partial(self, var: Union[int, str]) -> "MultiPoly":
        i = self.ring.index(var)
        out: Dict[Monomial, Scalar] = {}
        for mono, c in self.terms.items():
            exps = dict(mono)
            e = exps.get(i, 0)
            if not e:
                continue
            if e == 1:
                del exps[i]
            else:
                exps[i] = e - 1
            key = tuple(sorted(exps.items()))
            out[key] = out.get(key, 0) + c * e
        return MultiPoly(self.ring, {m: _norm(c) for m, c in out.items() if c})

    def evaluate(self, point: Union[Mapping, Sequence[Scalar]]) -> Fraction:
        """Exact value at ``point``.

        ``point`` is either a sequence indexed by variable index or a mapping
        keyed by variable index or name.  Every variable that occurs in the
        polynomial must be assigned.
        """
        values = _point_values(self.ring, point, self.variables())
        total: Union[int, Fraction] = 0
        for mono, c in self.terms.items():
            term = c
            for i, e in mono:
                term = term * (values[i] if e == 1 else values[i] ** e)
            total += term
        return Fraction(total)

    def substitute(self, assignment: Mapping[Union[int, str], "MultiPoly | Scalar"]) -> "MultiPoly":
        """Replace some variables by polynomials (or scalars) of the same ring."""
        subs = {self.ring.index(k): self._coerce(v) for k, v in assignment.items()}
        result = self.ring.zero()
        for mono, c in self.terms.items():
            kept: list = []
            factor = self.ring.const(c)
            for i, e in mono:
                if i in subs:
                    factor = factor * subs[i] ** e
                else:
                    kept.append((i, e))
            result = result + factor * MultiPoly(self.ring, {tuple(kept): 1})
        return result

    # -- text ---------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text: graded-lex descending, ``p/q`` coefficients."""
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            factors = []
            for i, e in mono:
                name = self.ring.names[i]
                factors.append(name if e == 1 else f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()})"


def _plain(v: Scalar) -> Scalar:
    # integer arithmetic is much faster than Fraction arithmetic
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _point_values(ring: PolyRing, point, needed: Iterable[int]) -> Dict[int, Scalar]:
    if isinstance(point, Mapping):
        values = {ring.index(k): _plain(v) for k, v in point.items()}
    else:
        values = {i: _plain(v) for i, v in enumerate(point)}
    for i in needed:
        if i not in values:
            raise StructuralError(f"no value assigned to {ring.names[i]}")
    return values


def elementary_symmetric_all(values: Sequence[MultiPoly], upto: int | None = None,
                             ring: PolyRing | None = None) -> list:
    """``[e_0, e_1, ..., e_upto]`` on ``values`` by iterative convolution.

    Uses ``e_m(X + {y}) = e_m(X) + y*e_{m-1}(X)``; no subset enumeration.
    Entries beyond ``len(values)`` are zero.
    """
    if ring is None:
        if not values:
            raise StructuralError("ring required for an empty value list")
        ring = values[0].ring
    if upto is None:
        upto = len(values)
    e = [ring.one()] + [ring.zero()] * upto
    for count, y in enumerate(values, start=1):
        for m in range(min(count, upto), 0, -1):
            e[m] = e[m] + y * e[m - 1]
    return e


def elementary_symmetric(values: Sequence[MultiPoly], m: int,
                         ring: PolyRing | None = None) -> MultiPoly:
    """The m-th elementary symmetric polynomial of ``values``.

    ``e_0`` is 1; ``m > len(values)`` gives 0; negative ``m`` is an error.
    Entries may be arbitrary polynomials (e.g. sums of rate constants).
    """
    if m < 0:
        raise StructuralError(f"negative elementary symmetric index {m}")
    if ring is None and values:
        ring = values[0].ring
    if m > len(values):
        if ring is None:
            raise StructuralError("ring required for an empty value list")
        return ring.zero()
    return elementary_symmetric_all(values, m, ring)[m]


def minor_expansion_det(matrix: Sequence[Sequence[T]], one: T, zero: T,
                        is_zero: Callable[[T], bool] = lambda x: not x) -> T:
    """Determinant by Laplace expansion along rows, memoised on column subsets.

    Works for any commutative ring whose elements support ``+ - *``.  Zero
    entries are skipped, so sparse matrices only visit reachable minors.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise StructuralError("determinant of a non-square matrix")
    memo: Dict[int, T] = {}

    def rec(row: int, mask: int) -> T:
        if row == n:
            return one
        if mask in memo:
            return memo[mask]
        total, pos = zero, 0
        for col in range(n):
            if not mask >> col & 1:
                continue
            entry = matrix[row][col]
            if not is_zero(entry):
                sub = rec(row + 1, mask & ~(1 << col))
                if not is_zero(sub):
                    term = entry * sub
                    total = total + term if pos % 2 == 0 else total - term
            pos += 1
        memo[mask] = total
        return total

    return rec(0, (1 << n) - 1)


def jacobian_of(polys: Sequence[MultiPoly], variables: Sequence[Union[int, str]]) -> list:
    return [[p.partial(v) for v in variables] for p in polys]


def vandermonde_check(n: int) -> bool:
    """Does det of the Jacobian of (e_1..e_n) equal +/- prod_{i<j}(x_i - x_j)?"""
    if n < 1:
        raise StructuralError("n must be at least 1")
    ring = PolyRing(f"x{i}" for i in range(1, n + 1))
    xs = ring.gens()
    esym = elementary_symmetric_all(xs, n)[1:]
    det = minor_expansion_det(jacobian_of(esym, range(n)), ring.one(), ring.zero())
    vdm = ring.one()
    for i, j in combinations(range(n), 2):
        vdm = vdm * (xs[i] - xs[j])
    return det == vdm or det == -vdm
