"""Normalized chain complexes, Smith normal form and homology profiles.

Profiles of an N-truncated simplicial set cover degrees 0..N-1: degree n
needs the boundary out of level n+1, which the truncation does not have
for n = N.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .elements import category_of_elements
from .errors import BoundarySquareNonzero, TruncationMismatch, ValidationError
from .fincat import FinCategory, SetFunctor
from .nerve import nerve
from .simplex import TruncatedSSet, audit_identities

DEFAULT_TRUNCATION = 4

__all__ = [
    "DEFAULT_TRUNCATION",
    "ChainComplex",
    "HomologyProfile",
    "CausalEffectVerdict",
    "chain_complex",
    "smith_normal_form",
    "homology_profile",
    "classifying_space_profile",
    "hocolim_profile",
    "causal_effect",
    "matmul",
    "to_triplets",
]

Matrix = list[list[int]]


def matmul(a: Matrix, b: Matrix, inner: int) -> Matrix:
    """a (r x inner) times b (inner x c); ``inner`` disambiguates empty shapes."""
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


@dataclass(frozen=True)
class ChainComplex:
    """Boundaries ∂_n for 1 <= n <= N; ``bases[n]`` lists nondegenerate simplex indices."""

    truncation: int
    bases: tuple[tuple[int, ...], ...]
    boundaries: tuple[Matrix, ...]  # boundaries[n-1] is ∂_n: rows bases[n-1], cols bases[n]

    def boundary(self, n: int) -> Matrix:
        return self.boundaries[n - 1]

    def rank(self, n: int) -> int:
        return len(self.bases[n])

    def check_square_zero(self) -> None:
        for n in range(2, self.truncation + 1):
            prod = matmul(self.boundary(n - 1), self.boundary(n), self.rank(n - 1))
            for i, row in enumerate(prod):
                for j, v in enumerate(row):
                    if v:
                        raise BoundarySquareNonzero(
                            f"∂_{n - 1}∂_{n} is nonzero at column {j} (simplex {self.bases[n][j]})",
                            (n, j),
                        )


def chain_complex(x: TruncatedSSet, order: Sequence[Sequence[int]] | None = None) -> ChainComplex:
    """Normalized complex: ∂σ = Σ (-1)^i d_i σ with degenerate faces dropped.

    ``order`` optionally permutes the basis of each level.
    """
    problems = audit_identities(x)
    if problems:
        raise ValidationError(f"simplicial identities fail: {problems[0]}", problems[0])
    bases = []
    for n in range(x.truncation + 1):
        nd = tuple(x.nondegenerate(n))
        if order is not None:
            if sorted(order[n]) != sorted(nd):
                raise ValidationError(f"basis order for level {n} is not a permutation")
            nd = tuple(order[n])
        bases.append(nd)
    mats = []
    for n in range(1, x.truncation + 1):
        row_of = {s: i for i, s in enumerate(bases[n - 1])}
        m = [[0] * len(bases[n]) for _ in bases[n - 1]]
        for j, s in enumerate(bases[n]):
            for i in range(n + 1):
                face = x.d(n, i, s)
                if face in row_of:
                    m[row_of[face]][j] += -1 if i % 2 else 1
        mats.append(m)
    cc = ChainComplex(x.truncation, tuple(bases), tuple(mats))
    cc.check_square_zero()
    return cc


def smith_normal_form(m: Matrix) -> tuple[tuple[int, ...], int]:
    """Invariant factors d_1 | d_2 | ... | d_r (all positive) and the rank r.

    Elimination with the smallest nonzero entry as pivot; Python integers
    are unbounded, so no entry can overflow.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # pivot must divide the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, rows):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, cols):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return tuple(diag), len(diag)


@dataclass(frozen=True)
class HomologyProfile:
    truncation: int
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"truncation": self.truncation, "betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}

    @classmethod
    def from_json(cls, data: dict) -> "HomologyProfile":
        try:
            n = int(data["truncation"])
            betti = tuple(int(b) for b in data["betti"])
            torsion = tuple(tuple(int(x) for x in t) for t in data["torsion"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad profile: {exc}") from exc
        if len(betti) != n or len(torsion) != n:
            raise ValidationError("profile must list one entry per degree below the truncation")
        return cls(n, betti, torsion)


def homology_profile(cc: ChainComplex) -> HomologyProfile:
    n_top = cc.truncation
    snf = [smith_normal_form(cc.boundary(n)) for n in range(1, n_top + 1)]
    ranks = [0] + [r for _, r in snf]  # ranks[n] = rank ∂_n, with ∂_0 = 0
    betti, torsion = [], []
    for n in range(n_top):
        betti.append(cc.rank(n) - ranks[n] - ranks[n + 1])
        torsion.append(tuple(d for d in snf[n][0] if d > 1))
    return HomologyProfile(n_top, tuple(betti), tuple(torsion))


def classifying_space_profile(c: FinCategory, truncation: int = DEFAULT_TRUNCATION) -> HomologyProfile:
    return homology_profile(chain_complex(nerve(c, truncation).sset))


def hocolim_profile(inst: SetFunctor, truncation: int = DEFAULT_TRUNCATION) -> HomologyProfile:
    """Profile of the nerve of the category of elements (discrete fibres)."""
    return classifying_space_profile(category_of_elements(inst).category, truncation)


@dataclass(frozen=True)
class CausalEffectVerdict:
    certified: bool
    degree: int | None
    invariant: str | None  # "betti" or "torsion"
    before: HomologyProfile = field(repr=False)
    after: HomologyProfile = field(repr=False)

    @property
    def kind(self) -> str:
        return "NonIsomorphicCertified" if self.certified else "Inconclusive"

    def to_json(self) -> dict:
        out = {"verdict": self.kind, "before": self.before.to_json(), "after": self.after.to_json()}
        if self.certified:
            out["degree"] = self.degree
            out["invariant"] = self.invariant
        return out


def causal_effect(before: HomologyProfile, after: HomologyProfile) -> CausalEffectVerdict:
    """Certify a non-isomorphic effect at the lowest degree where the profiles differ.

    Equal truncated profiles never certify isomorphism, so they give Inconclusive.
    """
    if before.truncation != after.truncation:
        raise TruncationMismatch(
            f"profiles computed at truncations {before.truncation} and {after.truncation}",
            (before.truncation, after.truncation),
        )
    for n in range(before.truncation):
        if before.betti[n] != after.betti[n]:
            return CausalEffectVerdict(True, n, "betti", before, after)
        if before.torsion[n] != after.torsion[n]:
            return CausalEffectVerdict(True, n, "torsion", before, after)
    return CausalEffectVerdict(False, None, None, before, after)


def to_triplets(m: Matrix) -> str:
    """Nonzero entries as "row col value" lines, after a "rows cols" header."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    lines = [f"{rows} {cols}"]
    lines += [f"{i} {j} {v}" for i, row in enumerate(m) for j, v in enumerate(row) if v]
    return "\n".join(lines) + "\n"
