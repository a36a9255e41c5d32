"""Input-output equations and the coefficient map.

For an output compartment ``i`` the equation is

    det(sI - A) y_i = sum_{j in In} (-1)^(i+j) det((sI - A) minus row j, column i) u_j

where ``s`` stands for d/dt.  Determinants are taken over Q[k][s], with
coefficients in ``s`` held as :class:`SPoly`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .model import ModelError, ModelSpec, ParameterSpace, compartmental_matrix, validate
from .poly import MultiPoly, PolyRing, StructuralError, minor_expansion_det


class SPoly:
    """Polynomial in ``s`` whose coefficients are :class:`MultiPoly`.

    ``coeffs[d]`` is the coefficient of ``s^d``; trailing zeros are stripped,
    so the zero SPoly has no coefficients.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs: Sequence[MultiPoly] = ()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.ring = ring
        self.coeffs: Tuple[MultiPoly, ...] = tuple(coeffs)

    @classmethod
    def const(cls, p: MultiPoly) -> "SPoly":
        return cls(p.ring, [p])

    @classmethod
    def s_plus(cls, p: MultiPoly) -> "SPoly":
        return cls(p.ring, [p, p.ring.one()])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, d: int) -> MultiPoly:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else self.ring.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "SPoly") -> "SPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return SPoly(self.ring, [self.coeff(d) + other.coeff(d) for d in range(n)])

    def __neg__(self) -> "SPoly":
        return SPoly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other: "SPoly") -> "SPoly":
        return self + (-other)

    def __mul__(self, other: "SPoly") -> "SPoly":
        if not self.coeffs or not other.coeffs:
            return SPoly(self.ring)
        out = [self.ring.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, ca in enumerate(self.coeffs):
            if ca.is_zero():
                continue
            for b, cb in enumerate(other.coeffs):
                if not cb.is_zero():
                    out[a + b] = out[a + b] + ca * cb
        return SPoly(self.ring, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def evaluate(self, point, s) -> "Fraction":
        """Value with parameters at ``point`` and ``s`` specialised to a number."""
        total = 0
        for c in reversed(self.coeffs):
            total = total * s + c.evaluate(point)
        return total

    def to_text(self, var: str = "s") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if c.is_zero():
                continue
            power = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
            if not power:
                parts.append(f"({c.to_text()})")
            elif c == 1:
                parts.append(power)
            else:
                parts.append(f"({c.to_text()})*{power}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SPoly({self.to_text()})"


@dataclass(frozen=True)
class CoeffLabel:
    """Where a coefficient came from: output, side, input (rhs only), power of s."""

    output: int
    side: str
    input: Optional[int]
    power: int

    def __str__(self) -> str:
        if self.side == "lhs":
            return f"y{self.output}:lhs:s^{self.power}"
        return f"y{self.output}:rhs:u{self.input}:s^{self.power}"


@dataclass
class IOEquation:
    output: int
    lhs: SPoly
    rhs: Dict[int, SPoly]

    def to_text(self) -> str:
        right = " + ".join(f"[{op.to_text()}] u{j}" for j, op in sorted(self.rhs.items()))
        return f"[{self.lhs.to_text()}] y{self.output} = {right or '0'}"


@dataclass
class CoefficientMap:
    """Ordered non-monic, non-constant coefficients of a model's equations."""

    ring: PolyRing
    entries: List[Tuple[CoeffLabel, MultiPoly]]
    dropped: List[Tuple[CoeffLabel, MultiPoly]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def polys(self) -> List[MultiPoly]:
        return [p for _, p in self.entries]

    @property
    def labels(self) -> List[CoeffLabel]:
        return [lab for lab, _ in self.entries]

    def row_of(self, label: CoeffLabel) -> int:
        return self.labels.index(label)

    def to_dicts(self) -> List[dict]:
        return [{"label": str(lab), "poly": p.to_text()} for lab, p in self.entries]


def char_matrix(m: ModelSpec, params: Optional[ParameterSpace] = None) -> List[List[SPoly]]:
    """The operator matrix ``sI - A``."""
    params = params or ParameterSpace(m)
    A = compartmental_matrix(m, params)
    out = []
    for i in range(m.n):
        row = []
        for j in range(m.n):
            if i == j:
                row.append(SPoly.s_plus(-A[i][j]))
            else:
                row.append(SPoly.const(-A[i][j]))
        out.append(row)
    return out


def det_spoly(M: Sequence[Sequence[SPoly]], ring: Optional[PolyRing] = None) -> SPoly:
    if ring is None:
        if not M:
            raise StructuralError("ring required for an empty matrix")
        ring = M[0][0].ring
    return minor_expansion_det(M, SPoly.const(ring.one()), SPoly(ring),
                               is_zero=SPoly.is_zero)


def delete_row_col(M: Sequence[Sequence], row: int, col: int) -> list:
    """Remove 0-based ``row`` and ``col``."""
    return [[x for c, x in enumerate(r) if c != col] for i, r in enumerate(M) if i != row]


def io_equation(m: ModelSpec, i: int, params: Optional[ParameterSpace] = None,
                matrix: Optional[List[List[SPoly]]] = None,
                lhs: Optional[SPoly] = None) -> IOEquation:
    """The input-output equation for output compartment ``i`` (1-based)."""
    if i not in m.outputs:
        raise ModelError(f"compartment {i} is not an output")
    if not m.inputs:
        raise ModelError("input-output equations need at least one input")
    params = params or ParameterSpace(m)
    M = matrix if matrix is not None else char_matrix(m, params)
    if lhs is None:
        lhs = det_spoly(M, params.ring)
    rhs = {}
    for j in m.inputs:
        minor = det_spoly(delete_row_col(M, j - 1, i - 1), params.ring)
        rhs[j] = minor if (i + j) % 2 == 0 else -minor
    return IOEquation(i, lhs, rhs)


def io_equations(m: ModelSpec, params: Optional[ParameterSpace] = None) -> List[IOEquation]:
    validate(m)
    params = params or ParameterSpace(m)
    M = char_matrix(m, params)
    lhs = det_spoly(M, params.ring)
    return [io_equation(m, i, params, M, lhs) for i in m.outputs]


def coefficient_map(m: ModelSpec, params: Optional[ParameterSpace] = None,
                    equations: Optional[List[IOEquation]] = None) -> CoefficientMap:
    """Concatenate the informative coefficients of every equation.

    Order: outputs ascending; per output the lhs by descending power, then
    each input's rhs by descending power.  The monic ``s^n`` term of the lhs
    is skipped, and constant coefficients (zero, or a monic leading 1 on the
    rhs) are moved to ``dropped`` since their Jacobian rows vanish.
    """
    params = params or ParameterSpace(m)
    equations = equations if equations is not None else io_equations(m, params)
    entries, dropped = [], []
    for eq in equations:
        slots = [(CoeffLabel(eq.output, "lhs", None, d), eq.lhs.coeff(d))
                 for d in range(m.n - 1, -1, -1)]
        for j, op in sorted(eq.rhs.items()):
            slots += [(CoeffLabel(eq.output, "rhs", j, d), op.coeff(d))
                      for d in range(op.degree, -1, -1)]
        for lab, p in slots:
            (dropped if p.is_constant() else entries).append((lab, p))
    return CoefficientMap(params.ring, entries, dropped)
