"""Causal DAGs, interventions, imsets and Markov equivalence."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    GroundSetMismatch,
    OverlappingArguments,
    ParseError,
    UnknownEdge,
    UnknownVariable,
    ValidationError,
    VariableSetMismatch,
)
from .fincat import FinCategory, Quiver, free_category

__all__ = [
    "CausalDag",
    "DeleteEdge",
    "DoVariable",
    "Imset",
    "EquivalenceVerdict",
    "dag_to_category",
    "intervene",
    "standard_imset",
    "elementary_imset",
    "imset_equal",
    "markov_equivalent",
    "enumerate_immoralities",
    "parse_dot",
]


@dataclass(frozen=True)
class CausalDag:
    variables: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    @classmethod
    def build(cls, variables: Sequence[str], edges: Iterable[tuple[str, str]]) -> "CausalDag":
        edges = [tuple(e) for e in edges]
        if len(set(edges)) != len(edges):
            raise ValidationError("duplicate edge", next(e for e in edges if edges.count(e) > 1))
        return cls(tuple(variables), frozenset(edges))

    def __post_init__(self):
        vs = set(self.variables)
        if len(vs) != len(self.variables):
            raise ValidationError("duplicate variable")
        for a, b in self.edges:
            if a not in vs or b not in vs:
                raise UnknownVariable(f"edge {a}->{b} references an unknown variable", (a, b))
            if a == b:
                raise ValidationError(f"self-loop at {a}", (a, a))
        cycle = self.to_quiver().find_cycle()
        if cycle is not None:
            raise ValidationError(
                "directed cycle: " + " -> ".join(self.variables[v] for v in cycle),
                [self.variables[v] for v in cycle],
            )

    @property
    def order(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.variables)}

    def sorted_edges(self) -> list[tuple[str, str]]:
        o = self.order
        return sorted(self.edges, key=lambda e: (o[e[0]], o[e[1]]))

    def parents(self, v: str) -> list[str]:
        o = self.order
        return sorted((a for a, b in self.edges if b == v), key=o.__getitem__)

    def adjacent(self, a: str, b: str) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def skeleton(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(e) for e in self.edges)

    def to_quiver(self) -> Quiver:
        o = {v: i for i, v in enumerate(self.variables)}
        edges = sorted(self.edges, key=lambda e: (o[e[0]], o[e[1]]))
        return Quiver(
            tuple(range(len(self.variables))),
            tuple((k, o[a], o[b]) for k, (a, b) in enumerate(edges)),
            dict(enumerate(self.variables)),
            {k: f"{a}->{b}" for k, (a, b) in enumerate(edges)},
        )

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "edges": [list(e) for e in self.sorted_edges()]}


def dag_to_category(g: CausalDag) -> FinCategory:
    """The free category on the DAG: objects are variables, morphisms are directed paths."""
    return free_category(g.to_quiver())


@dataclass(frozen=True)
class DeleteEdge:
    cause: str
    effect: str


@dataclass(frozen=True)
class DoVariable:
    variable: str


Intervention = Union[DeleteEdge, DoVariable]


def intervene(g: CausalDag, iv: Intervention) -> CausalDag:
    if isinstance(iv, DeleteEdge):
        e = (iv.cause, iv.effect)
        if e not in g.edges:
            raise UnknownEdge(f"no edge {iv.cause}->{iv.effect}", e)
        return CausalDag(g.variables, g.edges - {e})
    if isinstance(iv, DoVariable):
        if iv.variable not in g.variables:
            raise UnknownVariable(f"unknown variable {iv.variable}", iv.variable)
        return CausalDag(g.variables, frozenset(e for e in g.edges if e[1] != iv.variable))
    raise TypeError(f"not an intervention: {iv!r}")


@dataclass(frozen=True)
class Imset:
    """Integer (or rational) function on subsets of ``ground``; subsets are bitmasks."""

    ground: tuple[str, ...]
    coeffs: Mapping[int, int | Fraction]

    @classmethod
    def of(cls, ground: Sequence[str], coeffs: Mapping[int, int | Fraction]) -> "Imset":
        return cls(tuple(ground), {k: v for k, v in sorted(coeffs.items()) if v != 0})

    def mask(self, subset: Iterable[str]) -> int:
        pos = {v: i for i, v in enumerate(self.ground)}
        m = 0
        for v in subset:
            if v not in pos:
                raise UnknownVariable(f"{v} is not in the ground set", v)
            m |= 1 << pos[v]
        return m

    def subset(self, mask: int) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.ground) if mask >> i & 1)

    def __getitem__(self, subset: Iterable[str]) -> int | Fraction:
        return self.coeffs.get(self.mask(subset), 0)

    def total(self) -> int | Fraction:
        return sum(self.coeffs.values())

    def key(self) -> tuple:
        return (self.ground, tuple(sorted((k, v) for k, v in self.coeffs.items() if v != 0)))

    def to_json(self) -> dict:
        """Subsets are written as comma-joined sorted names, so the keys do not
        depend on the variable order."""
        coeffs = {}
        for m, v in self.coeffs.items():
            if v:
                coeffs[",".join(sorted(self.subset(m)))] = v if isinstance(v, int) else str(v)
        return {"ground": sorted(self.ground), "coeffs": dict(sorted(coeffs.items()))}

    def __str__(self) -> str:
        terms = []
        for m, v in sorted(self.coeffs.items(), key=lambda kv: (bin(kv[0]).count("1"), kv[0])):
            name = "δ_" + ("".join(self.subset(m)) if m else "∅")
            terms.append(("+ " if v > 0 else "- ") + (f"{abs(v)}·" if abs(v) != 1 else "") + name)
        return " ".join(terms).lstrip("+ ") if terms else "0"


def _add(coeffs: dict[int, int], mask: int, v: int) -> None:
    coeffs[mask] = coeffs.get(mask, 0) + v


def standard_imset(g: CausalDag) -> Imset:
    """delta_V - delta_empty + sum over i of (delta_Pa(i) - delta_{i, Pa(i)})."""
    pos = g.order
    coeffs: dict[int, int] = {}
    full = (1 << len(g.variables)) - 1
    _add(coeffs, full, 1)
    _add(coeffs, 0, -1)
    for v in g.variables:
        pa = sum(1 << pos[p] for p in g.parents(v))
        _add(coeffs, pa, 1)
        _add(coeffs, pa | 1 << pos[v], -1)
    return Imset.of(g.variables, coeffs)


def elementary_imset(ground: Sequence[str], a: str, b: str, cond: Iterable[str] = ()) -> Imset:
    """delta_{abA} + delta_A - delta_{aA} - delta_{bA} for the statement a ⊥ b | A."""
    cond = set(cond)
    if a == b or a in cond or b in cond:
        raise OverlappingArguments("need a != b and A disjoint from {a, b}", (a, b, tuple(sorted(cond))))
    u = Imset.of(ground, {})
    ma, mb, mA = u.mask([a]), u.mask([b]), u.mask(cond)
    coeffs: dict[int, int] = {}
    _add(coeffs, ma | mb | mA, 1)
    _add(coeffs, mA, 1)
    _add(coeffs, ma | mA, -1)
    _add(coeffs, mb | mA, -1)
    return Imset.of(ground, coeffs)


def imset_equal(u: Imset, v: Imset) -> bool:
    if set(u.ground) != set(v.ground):
        raise GroundSetMismatch("imsets live on different ground sets", (u.ground, v.ground))
    if u.ground != v.ground:
        # re-key v onto u's variable order
        v = Imset.of(u.ground, {u.mask(v.subset(m)): c for m, c in v.coeffs.items()})
    return {k: c for k, c in u.coeffs.items() if c} == {k: c for k, c in v.coeffs.items() if c}


def enumerate_immoralities(g: CausalDag) -> list[tuple[str, str, str]]:
    """Triples (a, b, c) with a -> b <- c, a before c, and a, c non-adjacent."""
    o = g.order
    out = []
    for b in g.variables:
        pa = g.parents(b)
        for i, a in enumerate(pa):
            for c in pa[i + 1:]:
                if not g.adjacent(a, c):
                    out.append((a, b, c))
    return sorted(out, key=lambda t: (o[t[0]], o[t[1]], o[t[2]]))


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    witness: str | None = None

    def __bool__(self):
        return self.equivalent


def markov_equivalent(g1: CausalDag, g2: CausalDag) -> EquivalenceVerdict:
    """Same skeleton and same immoralities."""
    if set(g1.variables) != set(g2.variables):
        raise VariableSetMismatch("DAGs have different variables", (g1.variables, g2.variables))
    o = g1.order

    def canon(e):
        a, b = sorted(e, key=o.__getitem__)
        return (o[a], o[b], a, b)

    s1, s2 = g1.skeleton(), g2.skeleton()
    if s1 != s2:
        diff = min((canon(e) for e in s1 ^ s2))
        side = "first" if frozenset(diff[2:]) in s1 else "second"
        return EquivalenceVerdict(False, f"skeleton: {diff[2]}-{diff[3]} only in the {side} DAG")

    def norm(t):
        a, b, c = t
        a, c = sorted((a, c), key=o.__getitem__)
        return (o[b], o[a], o[c], a, b, c)

    i1 = {norm(t) for t in enumerate_immoralities(g1)}
    i2 = {norm(t) for t in enumerate_immoralities(g2)}
    if i1 != i2:
        diff = min(i1 ^ i2)
        side = "first" if diff in i1 else "second"
        return EquivalenceVerdict(False, f"immorality: {diff[3]}->{diff[4]}<-{diff[5]} only in the {side} DAG")
    return EquivalenceVerdict(True)


_DOT_HEADER = re.compile(r"^\s*(strict\s+)?(di)?graph\b\s*(\"[^\"]*\"|[\w.]+)?\s*\{", re.S)
_ID = r'(?:"[^"]*"|[A-Za-z_][\w.]*|-?\d+(?:\.\d+)?)'


def parse_dot(text: str) -> CausalDag:
    """Read a DAG from a DOT ``digraph``: node and edge statements only.

    Attribute lists are ignored; ``graph``/``node``/``edge`` default statements
    are skipped. Variables are ordered by first appearance.
    """
    text = re.sub(r"//[^\n]*|#[^\n]*|/\*.*?\*/", "", text, flags=re.S)
    m = _DOT_HEADER.match(text)
    if not m:
        raise ParseError("expected a 'digraph { ... }' block")
    if not m.group(2):
        raise ParseError("undirected 'graph' blocks are not supported")
    body_start = m.end()
    close = text.rfind("}")
    if close < body_start:
        raise ParseError("unterminated graph body")
    if text[close + 1:].strip():
        raise ParseError("trailing content after graph body")
    body = re.sub(r"\[[^\]]*\]", "", text[body_start:close])
    variables: list[str] = []
    edges: list[tuple[str, str]] = []

    def unq(tok: str) -> str:
        return tok[1:-1] if tok.startswith('"') else tok

    for stmt in re.split(r"[;\n]", body):
        stmt = stmt.strip()
        if not stmt:
            continue
        if re.match(r"^(graph|node|edge)\b", stmt) or re.match(rf"^{_ID}\s*=\s*{_ID}$", stmt):
            continue
        if "--" in stmt:
            raise ParseError(f"undirected edge in digraph: {stmt!r}")
        parts = [p.strip() for p in stmt.split("->")]
        if any(not re.fullmatch(_ID, p) for p in parts):
            raise ParseError(f"cannot parse statement {stmt!r}")
        names = [unq(p) for p in parts]
        for nm in names:
            if nm not in variables:
                variables.append(nm)
        edges.extend(zip(names, names[1:]))
    seen: list[tuple[str, str]] = []
    for e in edges:
        if e in seen:
            raise ValidationError(f"duplicate edge {e[0]}->{e[1]}", e)
        seen.append(e)
    return CausalDag.build(variables, edges)


def to_dot(g: CausalDag, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in g.variables]
    lines += [f"  {a} -> {b};" for a, b in g.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
