"""The simplex category and truncated simplicial sets.

A :class:`TruncatedSSet` stores levels ``0..N`` as interned ids with dense
face and degeneracy tables. Horns, fillers and the Kan audit work on those
tables only, so they apply equally to standard simplices and to nerves.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Callable, Hashable, Iterable, Sequence

from .errors import IncompatibleFaces, IndexOutOfRange, RankMismatch, ValidationError


@dataclass(frozen=True)
class MonotoneMap:
    """A non-decreasing map [m] -> [n]."""

    m: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.m + 1:
            raise RankMismatch(f"expected {self.m + 1} values, got {len(self.values)}")
        if any(not 0 <= v <= self.n for v in self.values):
            raise RankMismatch(f"value out of [0, {self.n}]: {self.values}")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise RankMismatch(f"not monotone: {self.values}")

    def __call__(self, k: int) -> int:
        return self.values[k]

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.n + 1))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "values": list(self.values)}


def identity_map(n: int) -> MonotoneMap:
    return MonotoneMap(n, n, tuple(range(n + 1)))


def coface(n: int, i: int) -> MonotoneMap:
    """delta_i: [n] -> [n+1], the injection that skips i."""
    if n < 0 or not 0 <= i <= n + 1:
        raise IndexOutOfRange(f"coface index {i} out of range for [{n}]")
    return MonotoneMap(n, n + 1, tuple(j if j < i else j + 1 for j in range(n + 1)))


def codegeneracy(n: int, j: int) -> MonotoneMap:
    """sigma_j: [n] -> [n-1], the surjection that hits j twice."""
    if n < 1 or not 0 <= j <= n - 1:
        raise IndexOutOfRange(f"codegeneracy index {j} out of range for [{n}]")
    return MonotoneMap(n, n - 1, tuple(k if k <= j else k - 1 for k in range(n + 1)))


def compose_monotone(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g∘f."""
    if f.n != g.m:
        raise RankMismatch(f"cannot compose [{g.m}]->[{g.n}] after [{f.m}]->[{f.n}]")
    return MonotoneMap(f.m, g.n, tuple(g.values[v] for v in f.values))


def monotone_maps(m: int, n: int) -> list[MonotoneMap]:
    """All monotone maps [m] -> [n], in lexicographic order of values."""
    return [MonotoneMap(m, n, vals) for vals in combinations_with_replacement(range(n + 1), m + 1)]


def epi_mono_factorize(f: MonotoneMap) -> tuple[list[int], list[int]]:
    """Normal form f = d_{i1}...d_{ip} s_{j1}...s_{jq}.

    Returns ``(codegeneracy indices j1 < ... < jq, coface indices i1 > ... > ip)``:
    the j's are the positions where f repeats a value, the i's the values it misses.
    """
    sig = [k for k in range(f.m) if f.values[k] == f.values[k + 1]]
    image = set(f.values)
    dels = sorted((v for v in range(f.n + 1) if v not in image), reverse=True)
    return sig, dels


def recompose(m: int, sigma_indices: Sequence[int], delta_indices: Sequence[int]) -> MonotoneMap:
    """Rebuild the composite delta_{i1}∘...∘delta_{ip}∘sigma_{j1}∘...∘sigma_{jq} on [m]."""
    cur = identity_map(m)
    for j in reversed(sigma_indices):
        cur = compose_monotone(codegeneracy(cur.n, j), cur)
    for i in reversed(delta_indices):
        cur = compose_monotone(coface(cur.n, i), cur)
    return cur


@dataclass(frozen=True, eq=False)
class TruncatedSSet:
    """Levels 0..truncation of a simplicial set.

    ``faces[n][i][x]`` is d_i of the n-simplex x (n >= 1) and
    ``degeneracies[n][j][x]`` is s_j of x (n < truncation). ``keys`` gives a
    hashable description per simplex (a monotone map, a chain, ...).
    """

    truncation: int
    sizes: tuple[int, ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    degeneracies: tuple[tuple[tuple[int, ...], ...], ...]
    keys: tuple[tuple[Hashable, ...], ...] | None = None

    @classmethod
    def from_keys(
        cls,
        truncation: int,
        levels: Sequence[Sequence[Hashable]],
        face: Callable[[int, int, Hashable], Hashable],
        degeneracy: Callable[[int, int, Hashable], Hashable],
    ) -> "TruncatedSSet":
        """Intern keyed simplices; ``face(n, i, key)`` and ``degeneracy(n, j, key)`` return keys."""
        if truncation < 0 or len(levels) != truncation + 1:
            raise ValidationError("need exactly truncation+1 levels")
        index = [{k: i for i, k in enumerate(lv)} for lv in levels]
        faces = [()]
        for n in range(1, truncation + 1):
            faces.append(tuple(tuple(index[n - 1][face(n, i, k)] for k in levels[n]) for i in range(n + 1)))
        degens = []
        for n in range(truncation):
            degens.append(tuple(tuple(index[n + 1][degeneracy(n, j, k)] for k in levels[n]) for j in range(n + 1)))
        degens.append(())
        return cls(
            truncation,
            tuple(len(lv) for lv in levels),
            tuple(faces),
            tuple(degens),
            tuple(tuple(lv) for lv in levels),
        )

    def d(self, n: int, i: int, x: int) -> int:
        return self.faces[n][i][x]

    def s(self, n: int, j: int, x: int) -> int:
        return self.degeneracies[n][j][x]

    def key(self, n: int, x: int) -> Hashable:
        return self.keys[n][x] if self.keys is not None else x

    @cached_property
    def degenerate(self) -> tuple[tuple[bool, ...], ...]:
        flags = [[False] * k for k in self.sizes]
        for n in range(self.truncation):
            for table in self.degeneracies[n]:
                for y in table:
                    flags[n + 1][y] = True
        return tuple(tuple(f) for f in flags)

    def nondegenerate(self, n: int) -> list[int]:
        return [x for x in range(self.sizes[n]) if not self.degenerate[n][x]]

    def nondegenerate_counts(self) -> tuple[int, ...]:
        return tuple(len(self.nondegenerate(n)) for n in range(self.truncation + 1))

    @cached_property
    def _face_index(self) -> list[dict[tuple[int, ...], list[int]]]:
        idx: list[dict[tuple[int, ...], list[int]]] = [{}]
        for n in range(1, self.truncation + 1):
            level: dict[tuple[int, ...], list[int]] = {}
            for x in range(self.sizes[n]):
                level.setdefault(tuple(self.faces[n][i][x] for i in range(n + 1)), []).append(x)
            idx.append(level)
        return idx

    def simplices_with_faces(self, n: int, faces: tuple[int, ...]) -> list[int]:
        return self._face_index[n].get(faces, [])

    def to_json(self) -> dict:
        levels = []
        for n in range(self.truncation + 1):
            levels.append(
                {
                    "simplices": list(range(self.sizes[n])),
                    "faces": [list(t) for t in self.faces[n]],
                    "degeneracies": [list(t) for t in self.degeneracies[n]],
                }
            )
        return {"truncation": self.truncation, "levels": levels}

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSSet":
        n_top = data["truncation"]
        levels = data["levels"]
        if len(levels) != n_top + 1:
            raise ValidationError("level count does not match truncation")
        sizes = tuple(len(lv["simplices"]) for lv in levels)
        for n, lv in enumerate(levels):
            if lv["simplices"] != list(range(sizes[n])):
                raise ValidationError("simplex ids must be 0..k-1 at each level")
        x = cls(
            n_top,
            sizes,
            tuple(tuple(tuple(t) for t in lv["faces"]) for lv in levels),
            tuple(tuple(tuple(t) for t in lv["degeneracies"]) for lv in levels),
        )
        _check_shapes(x)
        bad = audit_identities(x)
        if bad:
            raise ValidationError("simplicial identities fail: " + bad[0], bad)
        return x


def _check_shapes(x: TruncatedSSet) -> None:
    for n in range(x.truncation + 1):
        nf = n + 1 if n >= 1 else 0
        if len(x.faces[n]) != nf:
            raise ValidationError(f"level {n} needs {nf} face tables")
        nd = n + 1 if n < x.truncation else 0
        if len(x.degeneracies[n]) != nd:
            raise ValidationError(f"level {n} needs {nd} degeneracy tables")
        for t in x.faces[n]:
            if len(t) != x.sizes[n] or any(not 0 <= v < x.sizes[n - 1] for v in t):
                raise ValidationError(f"bad face table at level {n}")
        for t in x.degeneracies[n]:
            if len(t) != x.sizes[n] or any(not 0 <= v < x.sizes[n + 1] for v in t):
                raise ValidationError(f"bad degeneracy table at level {n}")


def audit_identities(x: TruncatedSSet) -> list[str]:
    """Every simplicial identity that fails, checked wherever both sides exist."""
    bad: list[str] = []
    top = x.truncation
    d, s = x.d, x.s
    for n in range(2, top + 1):
        for j in range(n + 1):
            for i in range(j):
                for v in range(x.sizes[n]):
                    if d(n - 1, i, d(n, j, v)) != d(n - 1, j - 1, d(n, i, v)):
                        bad.append(f"d{i}d{j} != d{j - 1}d{i} at level {n}, simplex {v}")
    for n in range(top):
        for j in range(n + 1):
            for v in range(x.sizes[n]):
                w = s(n, j, v)
                for i in range(n + 2):
                    lhs = d(n + 1, i, w)
                    if i < j:
                        rhs = s(n - 1, j - 1, d(n, i, v))
                    elif i in (j, j + 1):
                        rhs = v
                    else:
                        rhs = s(n - 1, j, d(n, i - 1, v))
                    if lhs != rhs:
                        bad.append(f"d{i}s{j} identity fails at level {n}, simplex {v}")
    for n in range(top - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                for v in range(x.sizes[n]):
                    if s(n + 1, i, s(n, j, v)) != s(n + 1, j + 1, s(n, i, v)):
                        bad.append(f"s{i}s{j} != s{j + 1}s{i} at level {n}, simplex {v}")
    return bad


def restrict(x: TruncatedSSet, keep: Callable[[int, Hashable], bool]) -> TruncatedSSet:
    """The simplicial subset of simplices whose key satisfies ``keep``.

    Raises ValidationError when the kept simplices are not closed under faces
    and degeneracies.
    """
    kept = [[v for v in range(x.sizes[n]) if keep(n, x.key(n, v))] for n in range(x.truncation + 1)]
    new = [{v: i for i, v in enumerate(lv)} for lv in kept]
    try:
        faces = [()] + [
            tuple(tuple(new[n - 1][x.d(n, i, v)] for v in kept[n]) for i in range(n + 1))
            for n in range(1, x.truncation + 1)
        ]
        degens = [
            tuple(tuple(new[n + 1][x.s(n, j, v)] for v in kept[n]) for j in range(n + 1))
            for n in range(x.truncation)
        ] + [()]
    except KeyError as exc:
        raise ValidationError("subset is not closed under faces and degeneracies") from exc
    keys = tuple(tuple(x.key(n, v) for v in kept[n]) for n in range(x.truncation + 1))
    return TruncatedSSet(x.truncation, tuple(len(k) for k in kept), tuple(faces), tuple(degens), keys)


def standard_simplex(n: int, truncation: int) -> TruncatedSSet:
    """Delta^n: the m-simplices are the monotone maps [m] -> [n]."""
    if truncation < 0 or n < 0:
        raise IndexOutOfRange("ranks must be non-negative")
    levels = [[mm.values for mm in monotone_maps(m, n)] for m in range(truncation + 1)]

    def face(m: int, i: int, vals: tuple) -> tuple:
        return vals[:i] + vals[i + 1:]

    def degen(m: int, j: int, vals: tuple) -> tuple:
        return vals[: j + 1] + vals[j:]

    return TruncatedSSet.from_keys(truncation, levels, face, degen)


def boundary(n: int, truncation: int) -> TruncatedSSet:
    """The non-surjective simplices of Delta^n."""
    if n < 1:
        raise IndexOutOfRange("boundary needs n >= 1")
    full = set(range(n + 1))
    return restrict(standard_simplex(n, truncation), lambda m, vals: set(vals) != full)


def horn(n: int, i: int, truncation: int) -> TruncatedSSet:
    """Lambda^n_i: simplices alpha with [n] not contained in image(alpha) + {i}."""
    if n < 1 or not 0 <= i <= n:
        raise IndexOutOfRange(f"no horn Lambda^{n}_{i}")
    full = set(range(n + 1))
    return restrict(standard_simplex(n, truncation), lambda m, vals: not full <= set(vals) | {i})


@dataclass(frozen=True)
class HornInstance:
    """A map Lambda^n_i -> X, given by the faces at every index except ``missing``."""

    ambient: TruncatedSSet
    n: int
    missing: int
    faces: tuple[tuple[int, int], ...]  # (face index, (n-1)-simplex id), sorted

    @classmethod
    def of(cls, ambient: TruncatedSSet, n: int, missing: int, faces: dict[int, int]) -> "HornInstance":
        return cls(ambient, n, missing, tuple(sorted(faces.items())))

    def face_map(self) -> dict[int, int]:
        return dict(self.faces)

    def check(self) -> None:
        x, n, i = self.ambient, self.n, self.missing
        if n < 1 or not 0 <= i <= n:
            raise IndexOutOfRange(f"no horn Lambda^{n}_{i}")
        if n > x.truncation:
            raise IndexOutOfRange(f"dimension {n} is above the truncation {x.truncation}")
        fm = self.face_map()
        if set(fm) != set(range(n + 1)) - {i}:
            raise IncompatibleFaces("faces must be given at every index except the missing one")
        if any(not 0 <= v < x.sizes[n - 1] for v in fm.values()):
            raise IncompatibleFaces("face id out of range")
        if n >= 2:
            for a in fm:
                for b in fm:
                    if a < b and x.d(n - 1, a, fm[b]) != x.d(n - 1, b - 1, fm[a]):
                        raise IncompatibleFaces(f"faces {a} and {b} disagree", (a, b))


def find_horn_fillers(h: HornInstance) -> list[int]:
    """Every n-simplex whose faces agree with the horn away from the missing index."""
    h.check()
    x, n = h.ambient, h.n
    fm = h.face_map()
    return [
        v
        for v in range(x.sizes[n])
        if all(x.d(n, k, v) == fm[k] for k in fm)
    ]


def enumerate_horns(x: TruncatedSSet, n: int, i: int) -> list[HornInstance]:
    """All compatible face tuples for Lambda^n_i in x.

    Faces are chosen in index order; each new face is filtered against the
    earlier ones through the pairwise compatibility condition.
    """
    idx = [k for k in range(n + 1) if k != i]
    size = x.sizes[n - 1]
    out: list[HornInstance] = []
    chosen: dict[int, int] = {}

    def rec(p: int):
        if p == len(idx):
            out.append(HornInstance.of(x, n, i, dict(chosen)))
            return
        b = idx[p]
        for v in range(size):
            if n >= 2 and any(x.d(n - 1, a, v) != x.d(n - 1, b - 1, chosen[a]) for a in idx[:p]):
                continue
            chosen[b] = v
            rec(p + 1)
            del chosen[b]

    rec(0)
    return out


@dataclass
class KanReport:
    up_to: int
    inner_only: bool
    total: int = 0
    filled: int = 0
    unique: int = 0
    unfilled: list[HornInstance] | None = None
    unchecked_dimensions: list[int] | None = None
    per_dimension: dict[int, dict[str, int]] | None = None

    @property
    def all_filled(self) -> bool:
        return self.filled == self.total

    @property
    def all_unique(self) -> bool:
        return self.unique == self.total

    def as_dict(self) -> dict:
        return {
            "up_to": self.up_to,
            "inner_only": self.inner_only,
            "total": self.total,
            "filled": self.filled,
            "unique": self.unique,
            "unfilled": [
                {"n": h.n, "missing": h.missing, "faces": dict(h.faces)} for h in (self.unfilled or [])
            ],
            "unchecked_dimensions": self.unchecked_dimensions or [],
        }


def check_kan_condition(x: TruncatedSSet, up_to: int, inner_only: bool = False) -> KanReport:
    """Count horns of dimension 1..up_to and how many have (unique) fillers."""
    rep = KanReport(up_to, inner_only, unfilled=[], unchecked_dimensions=[], per_dimension={})
    for n in range(1, up_to + 1):
        if n > x.truncation:
            rep.unchecked_dimensions.append(n)
            continue
        stats = {"total": 0, "filled": 0, "unique": 0}
        indices: Iterable[int] = range(1, n) if inner_only else range(n + 1)
        for i in indices:
            for h in enumerate_horns(x, n, i):
                k = len(find_horn_fillers(h))
                stats["total"] += 1
                if k:
                    stats["filled"] += 1
                else:
                    rep.unfilled.append(h)
                if k == 1:
                    stats["unique"] += 1
        rep.per_dimension[n] = stats
        rep.total += stats["total"]
        rep.filled += stats["filled"]
        rep.unique += stats["unique"]
    return rep


def enumerate_simplicial_maps(x: TruncatedSSet, y: TruncatedSSet) -> list[tuple[tuple[int, ...], ...]]:
    """Every map x -> y commuting with faces and degeneracies, level by level.

    A map is returned as one image tuple per level. Both inputs must share a
    truncation.
    """
    if x.truncation != y.truncation:
        raise RankMismatch("truncations differ")
    top = x.truncation
    # for each simplex of x, the (j, lower simplex) pairs it is a degeneracy of
    degen_of: list[list[list[tuple[int, int]]]] = [[[] for _ in range(k)] for k in x.sizes]
    for n in range(top):
        for j in range(n + 1):
            for w in range(x.sizes[n]):
                degen_of[n + 1][x.s(n, j, w)].append((j, w))
    slots = [(n, v) for n in range(top + 1) for v in range(x.sizes[n])]
    img: list[list[int | None]] = [[None] * k for k in x.sizes]
    out: list[tuple[tuple[int, ...], ...]] = []

    def candidates(n: int, v: int) -> list[int]:
        if n == 0:
            cands = list(range(y.sizes[0]))
        else:
            want = tuple(img[n - 1][x.d(n, i, v)] for i in range(n + 1))
            cands = y.simplices_with_faces(n, want)
        for j, w in degen_of[n][v]:
            forced = y.s(n - 1, j, img[n - 1][w])
            cands = [c for c in cands if c == forced]
        return cands

    def rec(k: int):
        if k == len(slots):
            out.append(tuple(tuple(level) for level in img))
            return
        n, v = slots[k]
        for c in candidates(n, v):
            img[n][v] = c
            rec(k + 1)
        img[n][v] = None

    rec(0)
    return out
