"""PV lock programs: parser, geometric semantics, and deadlock reports.

    sem a = 1; sem b = 2;
    proc { P(a); P(b); V(b); V(a); }
    proc { P(b); V(b); }

Process i becomes axis i; its k-th action sits at (k+1)/(n_i+1). A resource of capacity
c forbids every state in which c+1 processes hold it at once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .category import extremal_points
from .errors import (
    DoubleAcquire,
    PvSyntaxError,
    ReleaseBeforeAcquire,
    TooManyProcesses,
    UnknownResource,
    UnmatchedRelease,
)
from .grid import compactify
from .scene import CubicalScene, fmt, validate_scene

TOKEN = re.compile(r"(?P<ws>\s+)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[=;{}()])|(?P<bad>.)")


@dataclass(frozen=True)
class Action:
    op: str  # "P" or "V"
    resource: str
    line: int
    column: int


@dataclass
class PvProgram:
    resources: dict[str, int]
    processes: list[list[Action]]

    def coordinate(self, i: int, k: int) -> Fraction:
        return Fraction(k + 1, len(self.processes[i]) + 1)

    def holding(self, i: int) -> dict[str, list[tuple[Fraction, Fraction]]]:
        """Open intervals of axis i during which process i holds each resource."""
        out: dict[str, list] = {}
        since: dict[str, Fraction] = {}
        for k, act in enumerate(self.processes[i]):
            x = self.coordinate(i, k)
            if act.op == "P":
                since[act.resource] = x
            else:
                out.setdefault(act.resource, []).append((since.pop(act.resource), x))
        for r, x in since.items():
            out.setdefault(r, []).append((x, Fraction(1)))
        return out

    def program_counter(self, i: int, x: Fraction) -> int:
        """Number of actions of process i already performed at coordinate x."""
        return sum(1 for k in range(len(self.processes[i])) if self.coordinate(i, k) < x)


def _tokens(text: str):
    line, line_start = 1, 0
    for m in TOKEN.finditer(text):
        kind, value = m.lastgroup, m.group()
        col = m.start() - line_start + 1
        if kind == "bad":
            raise PvSyntaxError(f"unexpected character {value!r}", line, col)
        if kind == "ws":
            nl = value.count("\n")
            if nl:
                line += nl
                line_start = m.start() + value.rfind("\n") + 1
            continue
        yield kind, value, line, col


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_tokens(text))
        self.i = 0
        lines = text.split("\n")
        self.eof = (len(lines), len(lines[-1]) + 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", *self.eof)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise PvSyntaxError(f"expected {want!r}, found {got}", tok[2], tok[3])
        self.i += 1
        return tok

    def program(self) -> PvProgram:
        resources: dict[str, int] = {}
        processes: list[list[Action]] = []
        while self.peek()[1] == "sem":
            self.take("name", "sem")
            _, name, line, col = self.take("name")
            self.take("sym", "=")
            num = self.take("num")
            self.take("sym", ";")
            if name in resources:
                raise PvSyntaxError(f"resource {name!r} declared twice", line, col)
            if int(num[1]) < 1:
                raise PvSyntaxError("capacity must be at least 1", num[2], num[3])
            resources[name] = int(num[1])
        while self.peek()[0] != "eof":
            self.take("name", "proc")
            self.take("sym", "{")
            actions = []
            while self.peek()[1] != "}":
                _, op, line, col = self.take("name")
                if op not in ("P", "V"):
                    raise PvSyntaxError(f"expected P or V, found {op!r}", line, col)
                self.take("sym", "(")
                res = self.take("name")
                self.take("sym", ")")
                self.take("sym", ";")
                actions.append(Action(op, res[1], res[2], res[3]))
            self.take("sym", "}")
            processes.append(actions)
        return PvProgram(resources, processes)


def check_program(prog: PvProgram) -> PvProgram:
    for actions in prog.processes:
        held: set[str] = set()
        released: set[str] = set()
        for act in actions:
            if act.op == "V":
                if act.resource not in held:
                    if act.resource in released:
                        raise UnmatchedRelease(f"V({act.resource}) without a matching P", act.line, act.column)
                    raise ReleaseBeforeAcquire(f"V({act.resource}) before any P({act.resource})", act.line, act.column)
                held.discard(act.resource)
                released.add(act.resource)
            else:
                if act.resource not in prog.resources:
                    raise UnknownResource(f"resource {act.resource!r} is not declared", act.line, act.column)
                if act.resource in held:
                    raise DoubleAcquire(f"P({act.resource}) while already holding it", act.line, act.column)
                held.add(act.resource)
    return prog


def parse_pv(text: str) -> PvProgram:
    return check_program(_Parser(text).program())


def to_scene(prog: PvProgram, max_processes: int = 3) -> CubicalScene:
    n = len(prog.processes)
    if n == 0:
        raise PvSyntaxError("program has no process")
    if n > max_processes:
        raise TooManyProcesses(f"{n} processes exceed the limit of {max_processes}", processes=n, limit=max_processes)
    holds = [prog.holding(i) for i in range(n)]
    full = (Fraction(0), Fraction(1))
    boxes = []
    for r, cap in prog.resources.items():
        for group in combinations(range(n), cap + 1):
            choices = [holds[i].get(r, []) for i in group]
            for picked in product(*choices):
                box = [full] * n
                for i, iv in zip(group, picked):
                    box[i] = iv
                boxes.append(tuple(box))
    boxes = sorted(set(boxes))
    points = (("start", (Fraction(0),) * n), ("end", (Fraction(1),) * n))
    return validate_scene(CubicalScene(n, tuple(boxes), (), points))


@dataclass
class DeadlockReport:
    deadlocks: list[tuple]
    unreachable: list[tuple]
    counters: dict = field(default_factory=dict)  # point -> per-process program counters

    def to_dict(self) -> dict:
        def enc(p):
            d = {"point": [fmt(c) for c in p]}
            if p in self.counters:
                d["pc"] = list(self.counters[p])
            return d

        return {"deadlocks": [enc(p) for p in self.deadlocks], "unreachable": [enc(p) for p in self.unreachable]}


def analyze_deadlocks(scene: CubicalScene, program: PvProgram | None = None) -> DeadlockReport:
    if scene.identifications:
        raise ValueError("deadlock analysis needs a scene without identifications")
    grid = compactify(scene)
    mins, maxs = extremal_points(grid)
    top = tuple(Fraction(1) for _ in range(scene.dim))
    bottom = tuple(Fraction(0) for _ in range(scene.dim))
    dead = sorted(grid.vertex_coords(v) for v in maxs if grid.vertex_coords(v) != top)
    unreach = sorted(grid.vertex_coords(v) for v in mins if grid.vertex_coords(v) != bottom)
    counters = {}
    if program is not None:
        for p in dead + unreach:
            counters[p] = tuple(program.program_counter(i, x) for i, x in enumerate(p))
    return DeadlockReport(dead, unreach, counters)
