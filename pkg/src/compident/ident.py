"""Generic local identifiability via the rank of the coefficient-map Jacobian.

A model is identifiable iff the Jacobian of its coefficient map has generic
rank |E| + |Leak|.  The generic rank is estimated from exact ranks at random
integer points: a single full-rank point certifies full generic rank, while a
deficit at every sampled point is only Monte Carlo evidence (unless a
structural certificate proves it).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .ioeq import CoefficientMap, coefficient_map, io_equations
from .model import (ModelError, ModelSpec, ParameterSpace, VarId, dumps_model,
                    is_strongly_connected, validate)
from .poly import MultiPoly, StructuralError

DEFAULT_TRIALS = 5
DEFAULT_SEED = 0
DEFAULT_BOUND = 10_000


class HypothesisError(ModelError):
    """The rank criterion does not apply (not strongly connected, or no input)."""


def jacobian(c: CoefficientMap, params: ParameterSpace) -> List[List[MultiPoly]]:
    """Row r, column v: derivative of the r-th coefficient by the v-th parameter."""
    ring = params.ring
    polys = c.polys
    if c.ring != ring:
        polys = [_rehouse(p, ring) for p in polys]
    return [[p.partial(v) for v in range(len(params))] for p in polys]


def _rehouse(p: MultiPoly, ring) -> MultiPoly:
    terms = {}
    for mono, coef in p.terms.items():
        try:
            key = tuple(sorted((ring.names.index(p.ring.names[i]), e) for i, e in mono))
        except ValueError:
            raise StructuralError(
                f"a coefficient uses a variable that is not a model parameter: {p}") from None
        terms[key] = coef
    return MultiPoly(ring, terms)


def exact_rank(M: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Rows are scaled to integers first, so every intermediate is an integer
    and every division is exact.
    """
    rows = []
    for row in M:
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        rows.append([int(x * den) for x in fr])
    if not rows or not rows[0]:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    rank, prev = 0, 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((r for r in range(rank, nrows) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, nrows):
            a = rows[r][col]
            rows[r] = [(p * rows[r][c] - a * rows[rank][c]) // prev
                       for c in range(ncols)]
        prev = p
        rank += 1
    return rank


def evaluate_matrix(J: Sequence[Sequence[MultiPoly]], point) -> List[List[Fraction]]:
    return [[p.evaluate(point) if p.terms else Fraction(0) for p in row] for row in J]


def _nvars(J) -> int:
    for row in J:
        for p in row:
            return p.ring.nvars
    return 0


def generic_rank(J: Sequence[Sequence[MultiPoly]], trials: int = DEFAULT_TRIALS,
                 seed=DEFAULT_SEED, bound: int = DEFAULT_BOUND
                 ) -> Tuple[int, Dict[int, Fraction]]:
    """Max exact rank of ``J`` over seeded random points in [1, bound]^N.

    Stops early once the rank reaches min(rows, cols).  If the sampled ranks
    disagree, another ``trials`` points are drawn from a separate stream with
    a bound ten times larger.  Returns ``(rank, witness)`` where ``witness``
    maps variable index to value.
    """
    if trials < 1:
        raise StructuralError("trials must be at least 1")
    nrows = len(J)
    ncols = len(J[0]) if nrows else 0
    nvars = _nvars(J)
    ceiling = min(nrows, ncols)
    seed_seq = list(seed) if isinstance(seed, (list, tuple)) else [seed]

    best, witness, seen = -1, {}, set()

    def sample(rng, b):
        nonlocal best, witness
        for _ in range(trials):
            point = {i: Fraction(int(v)) for i, v in enumerate(rng.integers(1, b + 1, size=nvars))}
            r = exact_rank(evaluate_matrix(J, point))
            seen.add(r)
            if r > best:
                best, witness = r, point
            if best == ceiling:
                return True
        return False

    if ceiling == 0:
        return 0, {i: Fraction(1) for i in range(nvars)}
    if not sample(np.random.default_rng(seed_seq + [0]), bound) and len(seen) > 1:
        sample(np.random.default_rng(seed_seq + [1]), bound * 10)
    return best, witness


# -- structural certificates --------------------------------------------------

def counting_certificate(num_params: int, num_coeffs: int) -> Optional[dict]:
    if num_params > num_coeffs:
        return {"kind": "parameter-count",
                "detail": f"{num_params} parameters but only {num_coeffs} coefficients; "
                          f"rank <= {num_coeffs}"}
    return None


def leak_column_certificate(m: ModelSpec, params: ParameterSpace, c: CoefficientMap,
                            J: List[List[MultiPoly]]) -> Optional[dict]:
    """Two leaks whose (edge - leak) column differences share one supporting row.

    For a leak at ``l`` with an outgoing edge ``l -> t``, the columns of
    ``k_{t,l}`` and ``k_{0,l}`` may differ in a single row only.  Two such
    leaks with the same row make four columns linearly dependent, so the
    Jacobian cannot have full column rank.
    """
    by_row: Dict[int, Tuple[int, int]] = {}
    for leak in m.leaks:
        lcol = params.index(VarId.leak(leak))
        for t in m.out_neighbors(leak):
            ecol = params.index(VarId.edge(leak, t))
            support = [r for r, row in enumerate(J) if not (row[ecol] - row[lcol]).is_zero()]
            if len(support) != 1:
                continue
            r = support[0]
            if r in by_row and by_row[r][0] != leak:
                (l1, t1), (l2, t2) = by_row[r], (leak, t)
                return {
                    "kind": "leak-column-dependence",
                    "detail": (f"columns {params.edge(l1, t1)}, {params.leak(l1)}, "
                               f"{params.edge(l2, t2)}, {params.leak(l2)} are dependent: "
                               f"both differences vanish outside row {c.labels[r]}"),
                    "leaks": [l1, l2],
                    "row": str(c.labels[r]),
                }
            by_row.setdefault(r, (leak, t))
    return None


# -- decision -------------------------------------------------------------------

@dataclass
class Verdict:
    identifiable: bool
    certified: bool
    generic_rank: int
    required_rank: int
    num_coefficients: int
    trials: int
    seed: int
    witness_point: Dict[str, Fraction]
    structural_certificates: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "identifiable": self.identifiable,
            "certified": self.certified,
            "generic_rank": self.generic_rank,
            "required_rank": self.required_rank,
            "num_coefficients": self.num_coefficients,
            "trials": self.trials,
            "seed": self.seed,
            "witness_point": {k: str(v) for k, v in self.witness_point.items()},
            "structural_certificates": list(self.structural_certificates),
        }


def model_seed(m: ModelSpec) -> int:
    digest = hashlib.sha256(dumps_model(m).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def check_hypotheses(m: ModelSpec) -> None:
    validate(m)
    if not m.inputs:
        raise HypothesisError("the rank criterion needs at least one input")
    if not is_strongly_connected(m):
        raise HypothesisError("the rank criterion needs a strongly connected model")


@dataclass
class Analysis:
    """Everything computed for one model; ``verdict`` is the decision."""

    model: ModelSpec
    params: ParameterSpace
    equations: list
    cmap: CoefficientMap
    J: List[List[MultiPoly]]
    verdict: Verdict


def analyze(m: ModelSpec, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
            bound: int = DEFAULT_BOUND) -> Analysis:
    check_hypotheses(m)
    params = ParameterSpace(m)
    equations = io_equations(m, params)
    cmap = coefficient_map(m, params, equations)
    J = jacobian(cmap, params)
    required = len(params)

    certificates = [cert for cert in (
        counting_certificate(required, len(cmap)),
        leak_column_certificate(m, params, cmap, J),
    ) if cert]

    rank, witness = generic_rank(J, trials, [seed, model_seed(m)], bound)
    identifiable = rank == required
    if identifiable and certificates:
        raise AssertionError("full-rank witness contradicts a structural certificate")
    verdict = Verdict(
        identifiable=identifiable,
        certified=identifiable or bool(certificates),
        generic_rank=rank,
        required_rank=required,
        num_coefficients=len(cmap),
        trials=trials,
        seed=seed,
        witness_point={params.names[i]: v for i, v in sorted(witness.items())},
        structural_certificates=certificates,
    )
    return Analysis(m, params, equations, cmap, J, verdict)


def decide(m: ModelSpec, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
           bound: int = DEFAULT_BOUND) -> Verdict:
    """Decide generic local identifiability of a strongly connected model with inputs."""
    return analyze(m, trials, seed, bound).verdict
