"""Theorem sweeps: parametrised model families with predicted verdicts.

Each suite yields :class:`Instance` objects carrying the prediction
(``True`` identifiable, ``False`` not, ``None`` informational).  Running an
instance returns an :class:`InstanceResult`; a suite passes when every
non-informational instance matches its prediction.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .families import Family, build, verify_closed_form
from .ident import DEFAULT_SEED, DEFAULT_TRIALS, decide
from .poly import vandermonde_check


@dataclass(frozen=True)
class Instance:
    label: str
    check: str                      # "decide", "closed-form" or "vandermonde"
    family: Optional[Family] = None
    n: int = 0
    expected: Optional[bool] = True
    certificate: Optional[str] = None   # structural certificate that must be attached


@dataclass(frozen=True)
class InstanceResult:
    label: str
    expected: Optional[bool]
    observed: bool
    ok: bool
    detail: str

    def line(self) -> str:
        status = "INFO" if self.expected is None else ("PASS" if self.ok else "FAIL")
        return f"{status}  {self.label}  {self.detail}"


def _subsets(items, min_size: int = 0) -> Iterator[Tuple[int, ...]]:
    items = list(items)
    for r in range(min_size, len(items) + 1):
        yield from combinations(items, r)


def _at_most_one(n: int) -> List[Tuple[int, ...]]:
    return [()] + [(l,) for l in range(1, n + 1)]


def _decide(f: Family, expected: Optional[bool], certificate: Optional[str] = None) -> Instance:
    return Instance(f.describe(), "decide", family=f, expected=expected, certificate=certificate)


# -- suite generators --------------------------------------------------------

def big_cycle(max_n: int) -> Iterator[Instance]:
    """Cycles with one input, one output and at most one leak are identifiable."""
    for n in range(3, max_n + 1):
        for i in range(1, n + 1):
            for o in range(1, n + 1):
                for leaks in _at_most_one(n):
                    yield _decide(Family("cycle", n, (i,), (o,), leaks), True)
    # several inputs and outputs at once, n = 3
    nodes = range(1, 4)
    for ins in _subsets(nodes, 2):
        for outs in _subsets(nodes, 1):
            for leaks in _at_most_one(3):
                yield _decide(Family("cycle", 3, ins, outs, leaks), True)


def leak_converse(max_n: int) -> Iterator[Instance]:
    """In=Out={1}: two or more leaks make the cycle unidentifiable."""
    for n in range(3, max_n + 1):
        for leaks in _subsets(range(1, n + 1), 2):
            yield _decide(Family("cycle", n, leaks=leaks), False, "leak-column-dependence")


def leak_position(max_n: int) -> Iterator[Instance]:
    """In={1}, Out={p}: two leaks at compartments >= p make the cycle unidentifiable."""
    for n in range(3, max_n + 1):
        for p in range(1, n + 1):
            for leaks in _subsets(range(1, n + 1), 2):
                if sum(l >= p for l in leaks) >= 2:
                    yield _decide(Family("cycle", n, (1,), (p,), leaks), False,
                                  "leak-column-dependence")


def too_many_leaks(max_n: int) -> Iterator[Instance]:
    """In={1}, Out={p}: |Leak| >= n - p + 2 leaves more parameters than coefficients."""
    for n in range(3, max_n + 1):
        for p in range(1, n + 1):
            for leaks in _subsets(range(1, n + 1), max(n - p + 2, 1)):
                yield _decide(Family("cycle", n, (1,), (p,), leaks), False, "parameter-count")


def adjacent_in_out(max_n: int) -> Iterator[Instance]:
    """Output just before the input on the cycle: identifiable iff |Leak| <= 1."""
    for n in range(3, max_n + 1):
        for i in range(1, n + 1):
            o = (i - 2) % n + 1
            for leaks in _subsets(range(1, n + 1)):
                yield _decide(Family("cycle", n, (i,), (o,), leaks), len(leaks) <= 1)


def fin_wing(max_n: int) -> Iterator[Instance]:
    """Fin and Wing with In=Out={1} and at most one leak are identifiable."""
    for n in range(3, max_n + 1):
        for kind in ("fin", "wing"):
            for leaks in _at_most_one(n):
                yield _decide(Family(kind, n, leaks=leaks), True)


def add_edges(max_n: int) -> Iterator[Instance]:
    """Cycle plus one incoming edge, or one or two outgoing edges, stays identifiable."""
    for n in range(3, max_n + 1):
        extras = [((i,), ()) for i in range(2, n)]
        extras += [((), (j,)) for j in range(3, n + 1)]
        extras += [((), pair) for pair in combinations(range(3, n + 1), 2)]
        for incoming, outgoing in extras:
            for leaks in _at_most_one(n):
                yield _decide(Family("cycle", n, leaks=leaks, incoming=incoming,
                                     outgoing=outgoing), True)


def leak_removal(max_n: int) -> Iterator[Instance]:
    """Catenary, cycle, mammillary with In=Out={1}: one leak or none, identifiable."""
    for n in range(3, max_n + 1):
        for kind in ("catenary", "cycle", "mammillary"):
            for leaks in _at_most_one(n):
                yield _decide(Family(kind, n, leaks=leaks), True)


def closed_forms(max_n: Optional[int]) -> Iterator[Instance]:
    """Closed-form coefficient maps agree with the determinant pipeline."""
    top_noleak = max_n or 8
    top = max_n or 7
    for n in range(3, top_noleak + 1):
        for p in range(2, n + 1):
            f = Family("cycle", n, (1,), (p,))
            yield Instance(f.describe(), "closed-form", family=f)
    for n in range(3, top + 1):
        for p in range(1, n + 1):
            for leaks in _subsets(range(1, n + 1), 1):
                f = Family("cycle", n, (1,), (p,), leaks)
                yield Instance(f.describe(), "closed-form", family=f)
    for n in range(3, top + 1):
        for kind in ("fin", "wing"):
            f = Family(kind, n)
            yield Instance(f.describe(), "closed-form", family=f)


def vandermonde(max_n: int) -> Iterator[Instance]:
    for n in range(1, max_n + 1):
        yield Instance(f"vandermonde({n})", "vandermonde", n=n)


def conjecture_sweep(max_n: int) -> Iterator[Instance]:
    """Cycle plus any nonempty set of incoming (or outgoing) edges; informational."""
    for n in range(3, max_n + 1):
        for incoming in _subsets(range(2, n), 1):
            yield _decide(Family("cycle", n, incoming=incoming), None)
        for outgoing in _subsets(range(3, n + 1), 1):
            yield _decide(Family("cycle", n, outgoing=outgoing), None)


SUITES: Dict[str, Tuple[Callable, Optional[int]]] = {
    "big-cycle": (big_cycle, 7),
    "leak-converse": (leak_converse, 6),
    "leak-position": (leak_position, 6),
    "too-many-leaks": (too_many_leaks, 6),
    "adjacent-in-out": (adjacent_in_out, 6),
    "fin-wing": (fin_wing, 7),
    "add-edges": (add_edges, 6),
    "leak-removal": (leak_removal, 6),
    "closed-forms": (closed_forms, None),
    "vandermonde": (vandermonde, 6),
    "conjecture-sweep": (conjecture_sweep, 6),
}


def instances(name: str, max_n: Optional[int] = None) -> List[Instance]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    gen, default = SUITES[name]
    return list(gen(max_n if max_n is not None else default))


def run_instance(inst: Instance, trials: int = DEFAULT_TRIALS,
                 seed: int = DEFAULT_SEED) -> InstanceResult:
    if inst.check == "vandermonde":
        observed = vandermonde_check(inst.n)
        return InstanceResult(inst.label, inst.expected, observed,
                              observed == inst.expected, f"det J = +/- Vandermonde: {observed}")
    if inst.check == "closed-form":
        observed = verify_closed_form(inst.family)
        return InstanceResult(inst.label, inst.expected, observed,
                              observed == inst.expected, f"closed form matches: {observed}")
    v = decide(build(inst.family), trials, seed)
    kinds = [c["kind"] for c in v.structural_certificates]
    ok = inst.expected is None or v.identifiable == inst.expected
    if inst.certificate is not None and inst.certificate not in kinds:
        ok = False
    word = "identifiable" if v.identifiable else "unidentifiable"
    detail = (f"{word} ({'certified' if v.certified else 'Monte Carlo'}) "
              f"rank {v.generic_rank}/{v.required_rank} m={v.num_coefficients}")
    if kinds:
        detail += f" certificates={','.join(kinds)}"
    return InstanceResult(inst.label, inst.expected, v.identifiable, ok, detail)


def _run_star(args):
    return run_instance(*args)


def run_suite(name: str, max_n: Optional[int] = None, trials: int = DEFAULT_TRIALS,
              seed: int = DEFAULT_SEED, jobs: int = 1) -> List[InstanceResult]:
    """Run every instance; results keep the generator's order whatever ``jobs`` is."""
    todo = [(inst, trials, seed) for inst in instances(name, max_n)]
    if jobs <= 1:
        return [_run_star(t) for t in todo]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_star, todo, chunksize=8))


def format_suite(name: str, results: List[InstanceResult], max_n: Optional[int],
                 trials: int, seed: int) -> str:
    failures = sum(1 for r in results if r.expected is not None and not r.ok)
    info = sum(1 for r in results if r.expected is None)
    lines = [f"suite {name}  max_n={max_n if max_n is not None else 'default'}  "
             f"trials={trials}  seed={seed}"]
    lines += [r.line() for r in results]
    summary = f"{len(results)} instances, {failures} failures"
    if info:
        ident = sum(1 for r in results if r.expected is None and r.observed)
        summary += f", {info} informational ({ident} identifiable)"
    lines.append(summary)
    return "\n".join(lines) + "\n"
