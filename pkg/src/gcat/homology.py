"""Integer homology of truncated simplicial sets via Smith normal form.

Equal homology is a necessary condition for a functor to be a weak
equivalence after taking nerves; it never proves one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .fincat import FinCat, FinFunctor
from .sset import TruncSSet, nerve


@dataclass
class IntMatrix:
    rows: int
    cols: int
    entries: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.entries:
            self.entries = [[0] * self.cols for _ in range(self.rows)]
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the stated shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(map(int, r)) for r in rows]
        return cls(len(rows), len(rows[0]) if rows else (cols or 0), rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [list(r) for r in self.entries])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(self.rows, other.cols,
                         [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries])

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.entries for v in r)

    def diagonal(self) -> list[int]:
        return [self.entries[k][k] for k in range(min(self.rows, self.cols))]

    def is_diagonal(self) -> bool:
        return all(v == 0 for i, r in enumerate(self.entries) for j, v in enumerate(r) if i != j)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)


@dataclass
class SNF:
    D: IntMatrix
    U: IntMatrix | None
    V: IntMatrix | None

    @property
    def divisors(self) -> list[int]:
        return [d for d in self.D.diagonal() if d]

    @property
    def rank(self) -> int:
        return len(self.divisors)


def smith_normal_form(M: IntMatrix, transforms: bool = True) -> SNF:
    """``U·M·V = D`` with ``D`` diagonal, ``d₁ | d₂ | ...`` and ``U``, ``V`` unimodular.

    Pivots are chosen by smallest nonzero absolute value.
    """
    A = [list(r) for r in M.entries]
    m, n = M.rows, M.cols
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row dst += q * row src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        for r in A:
            r[dst] += q * r[src]
        if V is not None:
            for r in V:
                r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            moved = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        moved = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        moved = True
            if moved:
                # a smaller remainder exists in row/column t; bring it to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if U is not None:
                U[t] = [-v for v in U[t]]
        t += 1
    return SNF(IntMatrix(m, n, A),
               IntMatrix(m, m, U) if U is not None else None,
               IntMatrix(n, n, V) if V is not None else None)


def chain_complex(X: TruncSSet) -> dict[int, IntMatrix]:
    """Boundary maps ``∂ₙ: Cₙ → Cₙ₋₁`` for ``1 ≤ n ≤ dim`` on nondegenerate simplices."""
    out = {}
    for n in range(1, X.dim + 1):
        rows = {x: k for k, x in enumerate(X.simplices[n - 1])}
        M = IntMatrix(len(rows), len(X.simplices[n]))
        for col, x in enumerate(X.simplices[n]):
            for i, (ref, s) in enumerate(X.faces[x]):
                if s == tuple(range(n)):
                    M.entries[rows[ref]][col] += (-1) ** i
        out[n] = M
    return out


@dataclass
class Degree:
    degree: int
    betti: int
    torsion: list[int]
    exact: bool = True

    def as_dict(self) -> dict:
        d = {"degree": self.degree, "betti": self.betti, "torsion": self.torsion}
        if not self.exact:
            d["note"] = "truncated: no simplices above this degree were used, Betti number is only a bound"
        return d

    def __str__(self):
        parts = ([f"Z^{self.betti}" if self.betti > 1 else "Z"] if self.betti else [])
        parts += [f"Z/{t}" for t in self.torsion]
        body = " ⊕ ".join(parts) or "0"
        return f"H{self.degree} = {body}" + ("" if self.exact else "  (truncated bound)")


def homology(X: TruncSSet, include_top: bool = False) -> list[Degree]:
    """Homology in degrees ``0 … dim−1``; with ``include_top`` also degree ``dim``,
    flagged as inexact because ``(dim+1)``-simplices were cut off."""
    d = X.dim
    bd = chain_complex(X)
    snf = {n: smith_normal_form(M, transforms=False) for n, M in bd.items()}
    out = []
    top = d if include_top else d - 1
    for n in range(0, top + 1):
        cn = len(X.simplices.get(n, ()))
        rank_n = snf[n].rank if n in snf else 0
        nxt = snf.get(n + 1)
        rank_next = nxt.rank if nxt else 0
        torsion = [v for v in nxt.divisors if v > 1] if nxt else []
        out.append(Degree(n, cn - rank_n - rank_next, torsion, exact=n < d))
    return out


def nerve_homology(C: FinCat, d: int, include_top: bool = False) -> list[Degree]:
    return homology(nerve(C, d), include_top)


@dataclass
class HomologyComparison:
    source: list[Degree]
    target: list[Degree]
    equal: bool
    verdict: str
    note: str = ("equal homology is necessary for the nerve of the functor to be a weak "
                 "equivalence, never sufficient")

    def as_dict(self) -> dict:
        return {"source": [g.as_dict() for g in self.source],
                "target": [g.as_dict() for g in self.target],
                "equal": self.equal, "verdict": self.verdict, "note": self.note}


def compare_homology(F: FinFunctor, d: int) -> HomologyComparison:
    """Compare homology of ``N(C)`` and ``N(D)`` in degrees below ``d``."""
    a = nerve_homology(F.source, d)
    b = nerve_homology(F.target, d)
    eq = [(g.betti, g.torsion) for g in a] == [(g.betti, g.torsion) for g in b]
    verdict = "homology agrees (inconclusive)" if eq else "not a weak equivalence"
    return HomologyComparison(a, b, eq, verdict)
