"""Free completion by the small object argument, with a fuel bound.

Each round enumerates every unfilled lifting problem against the existence
maps (monos) of the doctrine, glues a filler for each by pushout, and then
applies the uniqueness maps (non-monos) as quotients until none is
outstanding.  Rounds repeat until the object is injective against all of J.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..budget import NodeCounter
from ..errors import FuelExhausted, InternalConsistencyError
from .core import (SketchObject, SkMap, _extends, _plan, _to_map, compose_maps,
                   find_extension, first_unfilled, pushout)
from .doctrines import DoctrineSpec, GenMap, is_injective_all


@dataclass(frozen=True)
class Cell:
    round: int
    map: str
    problem: tuple        # key of the lifting problem φ: X → A
    attached: int         # elements of the filler not already in the image


@dataclass
class Completion:
    result: SketchObject
    unit: SkMap                       # the original object into the result
    trace: list = field(default_factory=list)
    rounds: int = 0

    @property
    def productive_steps(self) -> int:
        return len(self.trace)


def _unfilled(g: GenMap, A: SketchObject, counter) -> list:
    """Every φ: X → A not extending along g, in enumeration order."""
    PX = _plan(g.map.src)
    out = []
    for arr in PX.run(A, [None] * PX.size, counter):
        if not _extends(g.map, arr, PX, A, counter):
            out.append(_to_map(PX, g.map.src, A, arr))
    return out


def _attached(j: SkMap) -> int:
    image = sum(len(set(j.comp[s].values())) for s in j.src.cat.sorts)
    return j.tgt.size() - image


class _State:
    def __init__(self, X: SketchObject, fuel: int):
        self.A = X
        self.unit = SkMap(X, X, {s: {x: x for x in X.elems[s]} for s in X.cat.sorts})
        self.fuel = fuel
        self.spent = 0
        self.trace: list = []

    def glue(self, g: GenMap, phi: SkMap, rnd: int, pending) -> SkMap:
        cost = max(1, _attached(g.map))
        if self.spent + cost > self.fuel:
            raise FuelExhausted(self.A, [(g.name, phi)] + pending(), self.trace)
        P, inA, _ = pushout(g.map, phi, label=self.A.label)
        self.spent += cost
        self.trace.append(Cell(rnd, g.name, phi.key(), _attached(g.map)))
        self.A = P
        self.unit = compose_maps(inA, self.unit)
        return inA


def small_object_argument(X: SketchObject, D: DoctrineSpec, fuel: int = 10_000,
                          counter: NodeCounter | None = None) -> Completion:
    """Complete X to a J-injective object, or raise FuelExhausted with the partial result."""
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    counter = counter or NodeCounter("small object argument")
    exist = [g for g in D.J if g.kind == "existence"]
    unique = [g for g in D.J if g.kind != "existence"]
    st = _State(X, fuel)
    rnd = 0
    while True:
        rnd += 1
        before = len(st.trace)
        problems = [(g, phi) for g in exist for phi in _unfilled(g, st.A, counter)]
        moved = SkMap(st.A, st.A, {s: {x: x for x in st.A.elems[s]} for s in st.A.cat.sorts})
        for k, (g, phi) in enumerate(problems):
            phi = compose_maps(moved, phi)
            if find_extension(g.map, phi) is not None:
                continue          # filled by an earlier cell of this round
            inA = st.glue(g, phi, rnd,
                          lambda k=k: [(h.name, p) for h, p in problems[k + 1:]])
            moved = compose_maps(inA, moved)
        while True:
            for g in unique:
                _, phi = first_unfilled(g.map, st.A, counter)
                if phi is not None:
                    st.glue(g, phi, rnd, list)
                    break
            else:
                break
        if len(st.trace) == before:
            break
    check = is_injective_all(st.A, D)
    if not check.ok:
        raise InternalConsistencyError(
            f"completion finished but fails {check.failing_map}")
    return Completion(st.A, st.unit, st.trace, rnd)
