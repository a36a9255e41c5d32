"""Model families and their closed-form coefficient maps.

Families: catenary, cycle, mammillary, fin (cycle plus every incoming edge
``i -> 1``), wing (cycle plus every outgoing edge ``1 -> j``) and cycles with
an arbitrary subset of incoming or outgoing edges.

Closed forms are returned in the same order as
:func:`compident.ioeq.coefficient_map` (lhs by descending power of s, then
rhs), so they can be compared entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, List, Optional, Sequence, Tuple

from .ioeq import CoeffLabel, CoefficientMap, coefficient_map
from .model import ModelError, ModelSpec, ParameterSpace, validate
from .poly import MultiPoly, elementary_symmetric_all

KINDS = ("catenary", "cycle", "mammillary", "fin", "wing")


def succ(i: int, n: int) -> int:
    """Next compartment around the cycle (n + 1 wraps to 1)."""
    return i % n + 1


def cycle_edges(n: int) -> List[Tuple[int, int]]:
    return [(i, succ(i, n)) for i in range(1, n + 1)]


def incoming_edges(n: int) -> List[Tuple[int, int]]:
    return [(i, 1) for i in range(2, n)]


def outgoing_edges(n: int) -> List[Tuple[int, int]]:
    return [(1, j) for j in range(3, n + 1)]


@dataclass(frozen=True)
class Family:
    """A family member together with its In/Out/Leak placement.

    ``incoming`` and ``outgoing`` list extra edges for a cycle: an incoming
    edge is named by its source ``i`` (edge ``i -> 1``, 2 <= i <= n-1), an
    outgoing edge by its target ``j`` (edge ``1 -> j``, 3 <= j <= n).
    """

    kind: str
    n: int
    inputs: Tuple[int, ...] = (1,)
    outputs: Tuple[int, ...] = (1,)
    leaks: Tuple[int, ...] = ()
    incoming: Tuple[int, ...] = ()
    outgoing: Tuple[int, ...] = ()

    def build(self) -> ModelSpec:
        return build(self)

    def describe(self) -> str:
        parts = [f"{self.kind}({self.n})", f"in={list(self.inputs)}",
                 f"out={list(self.outputs)}", f"leak={list(self.leaks)}"]
        if self.incoming:
            parts.append(f"+in-edges={list(self.incoming)}")
        if self.outgoing:
            parts.append(f"+out-edges={list(self.outgoing)}")
        return " ".join(parts)


def _edges_for(f: Family) -> List[Tuple[int, int]]:
    n = f.n
    if f.kind == "catenary":
        if n < 1:
            raise ModelError("catenary needs n >= 1")
        return [e for i in range(1, n) for e in ((i, i + 1), (i + 1, i))]
    if f.kind == "mammillary":
        if n < 1:
            raise ModelError("mammillary needs n >= 1")
        return [e for i in range(2, n + 1) for e in ((1, i), (i, 1))]
    if f.kind in ("cycle", "fin", "wing"):
        if n < 3:
            raise ModelError(f"{f.kind} needs n >= 3 (n = 1, 2 are catenary models)")
        edges = cycle_edges(n)
        if f.kind == "fin":
            edges += incoming_edges(n)
        elif f.kind == "wing":
            edges += outgoing_edges(n)
        for i in f.incoming:
            if not 2 <= i <= n - 1:
                raise ModelError(f"incoming edge source {i} outside 2..{n - 1}")
        for j in f.outgoing:
            if not 3 <= j <= n:
                raise ModelError(f"outgoing edge target {j} outside 3..{n}")
        edges += [(i, 1) for i in f.incoming] + [(1, j) for j in f.outgoing]
        return sorted(set(edges))
    raise ModelError(f"unknown family {f.kind!r}; expected one of {KINDS}")


def build(f: Family) -> ModelSpec:
    if f.kind not in ("cycle",) and (f.incoming or f.outgoing):
        raise ModelError("extra incoming/outgoing edges only apply to cycle models")
    m = ModelSpec(n=f.n, edges=tuple(_edges_for(f)), inputs=tuple(f.inputs),
                  outputs=tuple(f.outputs), leaks=tuple(f.leaks))
    validate(m)
    return m


def catenary(n: int, **kw) -> ModelSpec:
    return build(Family("catenary", n, **kw))


def cycle(n: int, **kw) -> ModelSpec:
    return build(Family("cycle", n, **kw))


def mammillary(n: int, **kw) -> ModelSpec:
    return build(Family("mammillary", n, **kw))


def fin(n: int, **kw) -> ModelSpec:
    return build(Family("fin", n, **kw))


def wing(n: int, **kw) -> ModelSpec:
    return build(Family("wing", n, **kw))


def cycle_plus_edges(n: int, incoming: Iterable[int] = (), outgoing: Iterable[int] = (),
                     **kw) -> ModelSpec:
    return build(Family("cycle", n, incoming=tuple(incoming), outgoing=tuple(outgoing), **kw))


# -- closed-form coefficient maps -------------------------------------------

def _labelled(output: int, n: int, lhs: Sequence[MultiPoly], lhs_top: int,
              rhs: Sequence[MultiPoly], rhs_top: int, ring) -> CoefficientMap:
    entries = [(CoeffLabel(output, "lhs", None, lhs_top - d), p) for d, p in enumerate(lhs)]
    entries += [(CoeffLabel(output, "rhs", 1, rhs_top - d), p) for d, p in enumerate(rhs)]
    return CoefficientMap(ring, entries)


def _cycle_maps(n: int, p: int, leaks: Tuple[int, ...]) -> Tuple[ModelSpec, ParameterSpace,
                                                                   List[MultiPoly], MultiPoly,
                                                                   List[MultiPoly]]:
    m = cycle(n, inputs=(1,), outputs=(p,), leaks=leaks)
    P = ParameterSpace(m)

    def rate(l: int) -> MultiPoly:
        k = P.edge(l, succ(l, n))
        return k + P.leak(l) if l in leaks else k

    E = [rate(l) for l in range(1, n + 1)]
    E_star = [rate(l) for l in range(p + 1, n + 1)]
    kappa = P.ring.one()
    for i in range(2, p + 1):
        kappa = kappa * P.edge(i - 1, i)
    return m, P, E, kappa, E_star


def cycle_coeff_map_noleak(n: int, p: int) -> CoefficientMap:
    """(e_1..e_{n-1}, kappa, e*_1 kappa, ..., e*_{n-p} kappa) for In={1}, Out={p}.

    e_j is on {k_{l+1,l}}, e*_j on the rates leaving compartments p+1..n,
    kappa = k_{2,1} k_{3,2} ... k_{p,p-1}.
    """
    if n < 3:
        raise ModelError("cycle closed forms need n >= 3")
    if not 2 <= p <= n:
        raise ModelError("the leak-free cycle closed form needs 2 <= p <= n "
                         "(p = 1 goes through the general pipeline)")
    m, P, E, kappa, E_star = _cycle_maps(n, p, ())
    e = elementary_symmetric_all(E, n - 1)
    es = elementary_symmetric_all(E_star, ring=P.ring)
    return _labelled(p, n, e[1:n], n - 1, [es[j] * kappa for j in range(n - p + 1)],
                     n - p, P.ring)


def cycle_coeff_map_leaks(n: int, p: int, leaks: Iterable[int]) -> CoefficientMap:
    """Cycle with In={1}, Out={p} and at least one leak: 2n - p + 1 entries.

    Leaky compartments contribute k_{l+1,l} + k_{0,l} to E and E*.  For
    p = 1 the entry kappa is the constant 1 (empty product).
    """
    leaks = tuple(sorted(set(leaks)))
    if n < 3:
        raise ModelError("cycle closed forms need n >= 3")
    if not 1 <= p <= n:
        raise ModelError(f"output {p} outside 1..{n}")
    if not leaks:
        raise ModelError("no leaks: use cycle_coeff_map_noleak")
    m, P, E, kappa, E_star = _cycle_maps(n, p, leaks)
    e = elementary_symmetric_all(E)
    loop = prod((P.edge(l, succ(l, n)) for l in range(1, n + 1)), start=P.ring.one())
    lhs = e[1:n] + [e[n] - loop]
    es = elementary_symmetric_all(E_star, ring=P.ring)
    return _labelled(p, n, lhs, n - 1, [es[j] * kappa for j in range(n - p + 1)],
                     n - p, P.ring)


def fin_coeff_map(n: int) -> CoefficientMap:
    """Fin_n with In=Out={1}, no leaks.

    With E^[l] = {k_{1,l} + k_{l+1,l}, ..., k_{1,n-1} + k_{n,n-1}, k_{1,n}}
    and P_l = k_{1,l} k_{2,1} k_{3,2} ... k_{l,l-1}:
    lhs = (e^[2]_1 + k_{2,1}, phi_2, ..., phi_{n-1}) where
    phi_l = e^[2]_l + k_{2,1} e^[2]_{l-1} - sum_{i=2}^{l} P_i e^[i+1]_{l-i};
    rhs = (e^[2]_1, ..., e^[2]_{n-1}).
    """
    if n < 3:
        raise ModelError("fin needs n >= 3")
    P = ParameterSpace(fin(n))
    k21 = P.edge(1, 2)

    def K(j: int) -> MultiPoly:
        return P.edge(j, 1) + P.edge(j, j + 1) if j < n else P.edge(n, 1)

    e = {l: elementary_symmetric_all([K(j) for j in range(l, n + 1)], ring=P.ring)
         for l in range(2, n + 2)}

    def Pl(l: int) -> MultiPoly:
        out = P.edge(l, 1)
        for i in range(2, l + 1):
            out = out * P.edge(i - 1, i)
        return out

    def phi(l: int) -> MultiPoly:
        val = e[2][l] + k21 * e[2][l - 1]
        for i in range(2, l + 1):
            val = val - Pl(i) * e[i + 1][l - i]
        return val

    lhs = [phi(l) for l in range(1, n)]
    rhs = [e[2][m] for m in range(1, n)]
    return _labelled(1, n, lhs, n - 1, rhs, n - 2, P.ring)


def wing_coeff_map(n: int) -> CoefficientMap:
    """Wing_n with In=Out={1}, no leaks.

    With E' = {k_{3,2}, ..., k_{n,n-1}, k_{1,n}}, H^j = {k_{3,2}, ..., k_{j,j-1}},
    Q_j = k_{1,n} k_{j,1} k_{j+1,j} ... k_{n,n-1} and K = k_{2,1} + ... + k_{n,1},
    the coefficient of s^{n-j} on the lhs is
    psi_j = e'_j + e'_{j-1} K - sum_{i=n-j+2}^{n} Q_i h^i_{i-n+j-2}
    for j = 1..n-1 (psi_1 = e'_1 + K); the rhs is (e'_1, ..., e'_{n-1}).
    """
    if n < 3:
        raise ModelError("wing needs n >= 3")
    P = ParameterSpace(wing(n))
    Eprime = [P.edge(l, l + 1) for l in range(2, n)] + [P.edge(n, 1)]
    ep = elementary_symmetric_all(Eprime)
    K = sum((P.edge(1, j) for j in range(2, n + 1)), P.ring.zero())
    h = {j: elementary_symmetric_all([P.edge(l - 1, l) for l in range(3, j + 1)], ring=P.ring)
         for j in range(2, n + 1)}

    def Q(j: int) -> MultiPoly:
        out = P.edge(n, 1) * P.edge(1, j)
        for l in range(j, n):
            out = out * P.edge(l, l + 1)
        return out

    def psi(j: int) -> MultiPoly:
        val = ep[j] + ep[j - 1] * K
        for i in range(n - j + 2, n + 1):
            val = val - Q(i) * h[i][i - n + j - 2]
        return val

    lhs = [psi(j) for j in range(1, n)]
    rhs = ep[1:n]
    return _labelled(1, n, lhs, n - 1, rhs, n - 2, P.ring)


def closed_form(f: Family) -> CoefficientMap:
    """The closed-form coefficient map for ``f``, when one is known."""
    single = f.inputs == (1,) and len(f.outputs) == 1
    if f.kind == "cycle" and single and not f.incoming and not f.outgoing:
        p = f.outputs[0]
        if f.leaks:
            return cycle_coeff_map_leaks(f.n, p, f.leaks)
        return cycle_coeff_map_noleak(f.n, p)
    if f.kind in ("fin", "wing") and f.inputs == (1,) and f.outputs == (1,) and not f.leaks:
        return fin_coeff_map(f.n) if f.kind == "fin" else wing_coeff_map(f.n)
    raise ModelError(f"no closed-form coefficient map for {f.describe()}")


def verify_closed_form(f: Family) -> bool:
    """Closed form equals the determinant pipeline's map, position by position.

    Constant entries are not informative and are removed before comparing
    (the pipeline never keeps them; the leaky cycle with p = 1 lists kappa = 1).
    """
    cf = closed_form(f)
    general = coefficient_map(build(f))
    mine = [(lab, p) for lab, p in cf.entries if not p.is_constant()]
    return [lab for lab, _ in mine] == general.labels and \
        all(a == b for (_, a), b in zip(mine, general.polys))
