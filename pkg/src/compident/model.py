"""Linear compartmental models: (G, In, Out, Leak) and the compartmental matrix.

Compartments are numbered 1..n everywhere in the public API.  An edge is the
pair ``(source, target)``; the edge ``j -> i`` carries the rate constant
``k_{i,j}`` and a leak from ``j`` carries ``k_{0,j}``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple, Union

from .poly import MultiPoly, PolyRing

DEFAULT_ISC_LIMIT = 12

_MODEL_KEYS = ("n", "edges", "in", "out", "leak")


class ModelError(ValueError):
    """A model violates its invariants or cannot be parsed."""


@dataclass(frozen=True, order=True)
class VarId:
    """A rate constant: ``kind`` is ``"edge"`` or ``"leak"``.

    For an edge ``source -> target`` the parameter is ``k_{target,source}``;
    for a leak, ``target`` is 0 and ``source`` is the leaking compartment.
    """

    kind: str
    source: int
    target: int = 0

    @classmethod
    def edge(cls, source: int, target: int) -> "VarId":
        return cls("edge", source, target)

    @classmethod
    def leak(cls, compartment: int) -> "VarId":
        return cls("leak", compartment, 0)

    @property
    def name(self) -> str:
        return f"k_{{{self.target},{self.source}}}"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ModelSpec:
    n: int
    edges: Tuple[Tuple[int, int], ...]
    inputs: Tuple[int, ...] = ()
    outputs: Tuple[int, ...] = ()
    leaks: Tuple[int, ...] = ()

    def __post_init__(self):
        # canonical order only; duplicates are kept so validate() can report them
        object.__setattr__(self, "edges", tuple(sorted(tuple(e) for e in self.edges)))
        for field in ("inputs", "outputs", "leaks"):
            object.__setattr__(self, field, tuple(sorted(getattr(self, field))))

    @property
    def num_parameters(self) -> int:
        return len(self.edges) + len(self.leaks)

    def with_changes(self, **kw) -> "ModelSpec":
        fields = dict(n=self.n, edges=self.edges, inputs=self.inputs,
                      outputs=self.outputs, leaks=self.leaks)
        fields.update(kw)
        return ModelSpec(**fields)

    def out_neighbors(self, v: int) -> Tuple[int, ...]:
        return tuple(t for s, t in self.edges if s == v)


class ParameterSpace:
    """Ordered parameters of a model: edges by (source, target), then leaks."""

    def __init__(self, model: ModelSpec):
        self.vars: Tuple[VarId, ...] = (
            tuple(VarId.edge(s, t) for s, t in model.edges)
            + tuple(VarId.leak(j) for j in model.leaks))
        self.ring = PolyRing(v.name for v in self.vars)
        self._pos = {v: i for i, v in enumerate(self.vars)}

    def __len__(self) -> int:
        return len(self.vars)

    def __iter__(self):
        return iter(self.vars)

    def __getitem__(self, i: int) -> VarId:
        return self.vars[i]

    def index(self, var: VarId) -> int:
        return self._pos[var]

    def poly(self, var: VarId) -> MultiPoly:
        return self.ring.gen(self._pos[var])

    def edge(self, source: int, target: int) -> MultiPoly:
        return self.poly(VarId.edge(source, target))

    def leak(self, compartment: int) -> MultiPoly:
        return self.poly(VarId.leak(compartment))

    @property
    def names(self) -> Tuple[str, ...]:
        return self.ring.names


def validate(m: ModelSpec) -> None:
    """Raise :class:`ModelError` listing every violated invariant."""
    problems = []
    if not isinstance(m.n, int) or m.n < 1:
        raise ModelError(f"n must be a positive integer, got {m.n!r}")
    for s, t in m.edges:
        if not (1 <= s <= m.n and 1 <= t <= m.n):
            problems.append(f"edge ({s},{t}) has an index outside 1..{m.n}")
        elif s == t:
            problems.append(f"self-loop ({s},{t})")
    if len(set(m.edges)) != len(m.edges):
        dups = sorted({e for e in m.edges if m.edges.count(e) > 1})
        problems.append(f"duplicate edges {dups}")
    for label, seq in (("input", m.inputs), ("output", m.outputs), ("leak", m.leaks)):
        for v in seq:
            if not 1 <= v <= m.n:
                problems.append(f"{label} compartment {v} outside 1..{m.n}")
        if len(set(seq)) != len(seq):
            problems.append(f"duplicate {label} compartments {list(seq)}")
    if not m.outputs:
        problems.append("no output compartment (Out must be nonempty)")
    if problems:
        raise ModelError("; ".join(problems))


def compartmental_matrix(m: ModelSpec, params: Optional[ParameterSpace] = None) -> list:
    """The n x n matrix A of the linear ODE x' = A x + u (0-indexed lists)."""
    params = params or ParameterSpace(m)
    ring = params.ring
    A = [[ring.zero() for _ in range(m.n)] for _ in range(m.n)]
    for s, t in m.edges:
        k = params.edge(s, t)
        A[t - 1][s - 1] = A[t - 1][s - 1] + k
        A[s - 1][s - 1] = A[s - 1][s - 1] - k
    for j in m.leaks:
        A[j - 1][j - 1] = A[j - 1][j - 1] - params.leak(j)
    return A


def _reaches_all(adj: dict, start: int, vertices: frozenset) -> bool:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adj.get(v, ()):
            if w in vertices and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(vertices)


def _induced_strongly_connected(m: ModelSpec, vertices: frozenset) -> bool:
    if len(vertices) <= 1:
        return True
    fwd: dict = {}
    rev: dict = {}
    for s, t in m.edges:
        fwd.setdefault(s, []).append(t)
        rev.setdefault(t, []).append(s)
    start = min(vertices)
    return _reaches_all(fwd, start, vertices) and _reaches_all(rev, start, vertices)


def is_strongly_connected(m: ModelSpec) -> bool:
    return _induced_strongly_connected(m, frozenset(range(1, m.n + 1)))


def inductive_ordering(m: ModelSpec, limit: int = DEFAULT_ISC_LIMIT) -> Optional[Tuple[int, ...]]:
    """A vertex order starting at 1 whose every prefix is strongly connected.

    Grows the prefix one vertex at a time with backtracking, remembering
    prefix sets already shown to be dead ends.  Worst case is exponential in
    n, hence the ``limit``.
    """
    if m.n > limit:
        raise ModelError(f"inductive connectivity search limit exceeded (n={m.n} > {limit})")
    dead: set = set()

    def grow(prefix: Tuple[int, ...], members: frozenset):
        if len(prefix) == m.n:
            return prefix
        if members in dead:
            return None
        for v in range(2, m.n + 1):
            if v in members:
                continue
            bigger = members | {v}
            if bigger not in dead and _induced_strongly_connected(m, bigger):
                found = grow(prefix + (v,), bigger)
                if found:
                    return found
        dead.add(members)
        return None

    return grow((1,), frozenset({1}))


def is_inductive_ordering(m: ModelSpec, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(1, m.n + 1)) or order[0] != 1:
        return False
    return all(_induced_strongly_connected(m, frozenset(order[:i]))
               for i in range(1, m.n + 1))


def is_inductively_strongly_connected(m: ModelSpec, limit: int = DEFAULT_ISC_LIMIT) -> bool:
    return inductive_ordering(m, limit) is not None


# -- JSON model files ---------------------------------------------------------

def model_to_dict(m: ModelSpec) -> dict:
    return {"n": m.n, "edges": [list(e) for e in m.edges], "in": list(m.inputs),
            "out": list(m.outputs), "leak": list(m.leaks)}


def dumps_model(m: ModelSpec) -> str:
    """Canonical one-line JSON for a model."""
    return json.dumps(model_to_dict(m), separators=(", ", ": "))


def _int_list(value, key: str) -> list:
    if not isinstance(value, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ModelError(f"'{key}' must be a list of integers")
    return value


def model_from_dict(data: dict) -> ModelSpec:
    if not isinstance(data, dict):
        raise ModelError("model JSON must be an object")
    unknown = sorted(set(data) - set(_MODEL_KEYS))
    if unknown:
        raise ModelError(f"unknown keys {unknown}")
    missing = [k for k in ("n", "edges", "out") if k not in data]
    if missing:
        raise ModelError(f"missing keys {missing}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ModelError("'n' must be an integer")
    edges = data["edges"]
    if not isinstance(edges, list):
        raise ModelError("'edges' must be a list of [from, to] pairs")
    pairs = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2):
            raise ModelError(f"edge {e!r} is not a [from, to] pair")
        pairs.append(tuple(_int_list(e, "edges")))
    model = ModelSpec(n=n, edges=tuple(pairs),
                      inputs=tuple(_int_list(data.get("in", []), "in")),
                      outputs=tuple(_int_list(data["out"], "out")),
                      leaks=tuple(_int_list(data.get("leak", []), "leak")))
    validate(model)
    return model


def loads_model(text: str) -> ModelSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        context = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        raise ModelError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}\n"
            f"    {context}") from None
    return model_from_dict(data)


def load_model(path: Union[str, Path]) -> ModelSpec:
    return loads_model(Path(path).read_text(encoding="utf-8"))


def save_model(m: ModelSpec, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_model(m) + "\n", encoding="utf-8")


def edge_list(pairs: Iterable[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted(set(pairs)))
