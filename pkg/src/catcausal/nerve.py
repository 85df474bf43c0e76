"""Nerves of finite categories and the full-faithfulness audit."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import IndexOutOfRange, ScaleExceeded, ValidationError
from .fincat import BijectionReport, FinCategory, Functor, enumerate_functors
from .library import MAX_MORPHISMS, MAX_OBJECTS
from .simplex import TruncatedSSet, enumerate_simplicial_maps


class Chain(NamedTuple):
    """C_0 -f_1-> C_1 -> ... -f_n-> C_n; ``start`` is C_0, needed when n = 0."""

    start: int
    arrows: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)


def apply_face_to_chain(c: FinCategory, chain: Chain, i: int) -> Chain:
    """d_i of a chain: drop the first/last arrow at the ends, compose inside."""
    n = chain.length
    if n == 0 or not 0 <= i <= n:
        raise IndexOutOfRange(f"d_{i} undefined on a chain of length {n}")
    a = chain.arrows
    if n == 1:
        return Chain(c.tgt[a[0]] if i == 0 else c.src[a[0]], ())
    if i == 0:
        return Chain(c.tgt[a[0]], a[1:])
    if i == n:
        return Chain(chain.start, a[:-1])
    return Chain(chain.start, a[: i - 1] + (c.compose(a[i], a[i - 1]),) + a[i + 1:])


def apply_degeneracy_to_chain(c: FinCategory, chain: Chain, j: int) -> Chain:
    """s_j: repeat C_j by inserting its identity."""
    n = chain.length
    if not 0 <= j <= n:
        raise IndexOutOfRange(f"s_{j} undefined on a chain of length {n}")
    obj = chain.start if j == 0 else c.tgt[chain.arrows[j - 1]]
    return Chain(chain.start, chain.arrows[:j] + (c.identities[obj],) + chain.arrows[j:])


def composable_chains(c: FinCategory, truncation: int) -> list[list[Chain]]:
    levels = [[Chain(x, ()) for x in c.objects]]
    for _ in range(truncation):
        nxt = []
        for ch in levels[-1]:
            end = c.tgt[ch.arrows[-1]] if ch.arrows else ch.start
            for m in c.out_morphisms[end]:
                nxt.append(Chain(ch.start, ch.arrows + (m,)))
        nxt.sort(key=lambda ch: ch.arrows)
        levels.append(nxt)
    return levels


@dataclass(frozen=True, eq=False)
class NerveResult:
    category: FinCategory
    sset: TruncatedSSet
    chains: tuple[tuple[Chain, ...], ...]

    def index(self, chain: Chain) -> int:
        return self._lookup[chain.length][chain]

    @property
    def _lookup(self) -> list[dict[Chain, int]]:
        cached = self.__dict__.get("_lk")
        if cached is None:
            cached = [{ch: i for i, ch in enumerate(level)} for level in self.chains]
            object.__setattr__(self, "_lk", cached)
        return cached

    def to_json(self) -> dict:
        data = self.sset.to_json()
        data["chains"] = [[{"start": ch.start, "arrows": list(ch.arrows)} for ch in lv] for lv in self.chains]
        return data


def nerve(c: FinCategory, truncation: int) -> NerveResult:
    if truncation < 1:
        raise ValidationError("nerve truncation must be >= 1")
    levels = composable_chains(c, truncation)
    sset = TruncatedSSet.from_keys(
        truncation,
        levels,
        lambda n, i, ch: apply_face_to_chain(c, ch, i),
        lambda n, j, ch: apply_degeneracy_to_chain(c, ch, j),
    )
    return NerveResult(c, sset, tuple(tuple(lv) for lv in levels))


def functor_to_simplicial_map(f: Functor, nx: NerveResult, ny: NerveResult) -> tuple[tuple[int, ...], ...]:
    """theta(F): apply F to every chain."""
    out = []
    for level in nx.chains:
        out.append(
            tuple(ny.index(Chain(f.obj_map[ch.start], tuple(f.mor_map[m] for m in ch.arrows))) for ch in level)
        )
    return tuple(out)


def _check_scale(c: FinCategory) -> None:
    if len(c.objects) > MAX_OBJECTS or len(c.morphisms) > MAX_MORPHISMS:
        raise ScaleExceeded(f"{c!r} exceeds {MAX_OBJECTS} objects / {MAX_MORPHISMS} morphisms")


def nerve_fully_faithful_check(c: FinCategory, d: FinCategory) -> BijectionReport:
    """Compare Fun(c, d) with simplicial maps of 2-truncated nerves via theta."""
    _check_scale(c)
    _check_scale(d)
    nc, nd = nerve(c, 2), nerve(d, 2)
    functors = enumerate_functors(c, d)
    images = [functor_to_simplicial_map(f, nc, nd) for f in functors]
    maps = enumerate_simplicial_maps(nc.sset, nd.sset)
    ok = len(set(images)) == len(images) and set(images) == set(maps)
    return BijectionReport(ok, len(functors), len(maps), tuple(enumerate(images)), "F -> N(F) at truncation 2")
