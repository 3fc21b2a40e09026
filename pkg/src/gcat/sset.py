"""Truncated simplicial sets: nerve, subdivision, categorification and Ex.

A simplex is a pair ``(ref, surj)``: ``ref`` names a nondegenerate simplex
of dimension ``m`` and ``surj`` is a monotone surjection ``[n] → [m]``
written as a tuple of length ``n + 1``.  Nondegenerate simplices carry
the identity surjection.  Face data of a nondegenerate ``n``-simplex is the
list of its ``n + 1`` faces in this form, which is enough to evaluate
every face operator on every simplex.
"""

from __future__ import annotations

from collections import defaultdict
from graphlib import CycleError, TopologicalSorter
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadFaceData,
    BadIndices,
    ClosureBudgetExceeded,
    CyclicOneSkeleton,
    EnumerationBudgetExceeded,
    NotRegular,
    SimplicialIdentityViolation,
    Violation,
    raise_for,
)
from .fincat import FinCat, FinFunctor, category_violations, poset_to_category
from .presentation import Presentation, UnionFind, present_acyclic, topological_order

Simplex = tuple[str, tuple[int, ...]]

DEFAULT_CLOSURE_BUDGET = 10**5
DEFAULT_ENUMERATION_BUDGET = 10**6


def ident(n: int) -> tuple[int, ...]:
    return tuple(range(n + 1))


def surjections(n: int, m: int):
    """Monotone surjections ``[n] → [m]``."""
    for jumps in combinations(range(1, n + 1), m):
        js = set(jumps)
        out, v = [0], 0
        for i in range(1, n + 1):
            v += i in js
            out.append(v)
        yield tuple(out)


def surj_to_word(surj: Sequence[int]) -> list[int]:
    """Degeneracy word ``s_{i1}...s_{ik}`` (``i1 > ... > ik``) of a surjection."""
    return sorted((j for j in range(len(surj) - 1) if surj[j] == surj[j + 1]), reverse=True)


def word_to_surj(word: Iterable[int], n: int) -> tuple[int, ...]:
    """Surjection on ``[n]`` collapsing the positions in ``word``."""
    w = set(word)
    out, v = [0], 0
    for j in range(n):
        v += j not in w
        out.append(v)
    return tuple(out)


def degenerate(x: Simplex, surj: Sequence[int]) -> Simplex:
    ref, theta = x
    return ref, tuple(theta[v] for v in surj)


class TruncSSet:
    """A simplicial set known up to dimension ``dim``.

    ``simplices[n]`` lists nondegenerate ``n``-simplex ids; ``faces[x]`` the
    faces ``d_0 x, ..., d_n x`` of each one as ``(ref, surj)`` pairs.
    """

    def __init__(self, dim: int, simplices: Mapping[int, Iterable[str]],
                 faces: Mapping[str, Sequence[Simplex]]):
        self.dim = dim
        self.simplices = {n: tuple(simplices.get(n, ())) for n in range(dim + 1)}
        self.faces = {k: tuple((r, tuple(s)) for r, s in v) for k, v in faces.items()}
        self.degree = {x: n for n, xs in self.simplices.items() for x in xs}
        self._index: dict[int, dict] = {}

    def __len__(self):
        return len(self.degree)

    def nondegenerate(self, n: int) -> tuple[str, ...]:
        return self.simplices.get(n, ())

    def simplex(self, ref: str) -> Simplex:
        return ref, ident(self.degree[ref])

    def face(self, x: Simplex, i: int) -> Simplex:
        ref, eta = x
        rest = eta[:i] + eta[i + 1:]
        m = eta[-1]
        if len(set(rest)) == m + 1:
            return ref, rest
        j = eta[i]
        lowered = tuple(v if v < j else v - 1 for v in rest)
        return degenerate(self.faces[ref][j], lowered)

    def vertices(self, ref: str) -> tuple[str, ...]:
        n = self.degree[ref]
        if n == 0:
            return (ref,)
        out = []
        for k in range(n + 1):
            x = self.simplex(ref)
            # vertex k: delete every other position
            for i in reversed(range(n + 1)):
                if i != k:
                    x = self.face(x, i)
            out.append(x[0])
        return tuple(out)

    def all_simplices(self, n: int) -> list[Simplex]:
        """Every ``n``-simplex, degenerate ones included."""
        out = []
        for m in range(min(n, self.dim) + 1):
            for s in surjections(n, m):
                out += [(r, s) for r in self.simplices[m]]
        return out

    def face_tuple(self, x: Simplex) -> tuple:
        n = len(x[1]) - 1
        return tuple(self.face(x, i) for i in range(n + 1)) if n > 0 else ()

    def index(self, n: int) -> dict[tuple, list[Simplex]]:
        """``n``-simplices grouped by their tuple of faces."""
        if n not in self._index:
            idx = defaultdict(list)
            for x in self.all_simplices(n):
                idx[self.face_tuple(x)].append(x)
            self._index[n] = dict(idx)
        return self._index[n]

    def __eq__(self, other):
        if not isinstance(other, TruncSSet):
            return NotImplemented
        return (self.dim == other.dim
                and {n: set(v) for n, v in self.simplices.items()} == {n: set(v) for n, v in other.simplices.items()}
                and self.faces == other.faces)

    __hash__ = None

    def counts(self) -> list[int]:
        return [len(self.simplices[n]) for n in range(self.dim + 1)]

    def __repr__(self):
        return f"TruncSSet(dim={self.dim}, counts={self.counts()})"


def truncate(X: TruncSSet, d: int) -> TruncSSet:
    """``X`` cut down to dimension ``min(d, X.dim)``."""
    d = min(d, X.dim)
    keep = {n: X.simplices[n] for n in range(d + 1)}
    return TruncSSet(d, keep, {x: X.faces[x] for n in range(1, d + 1) for x in keep[n]})


def sset_violations(X: TruncSSet) -> list[Violation]:
    out = []
    seen = set()
    for n, xs in X.simplices.items():
        for x in xs:
            if x in seen:
                out.append(Violation("BadFaceData", f"simplex id {x!r} repeated"))
            seen.add(x)
    for n, xs in X.simplices.items():
        for x in xs:
            fs = X.faces.get(x, ())
            if n == 0:
                if fs:
                    out.append(Violation("BadFaceData", f"vertex {x!r} has faces"))
                continue
            if len(fs) != n + 1:
                out.append(Violation("BadFaceData", f"{x!r} has {len(fs)} faces, expected {n + 1}"))
                continue
            for i, (r, s) in enumerate(fs):
                m = X.degree.get(r)
                if m is None:
                    out.append(Violation("BadFaceData", f"face {i} of {x!r} names unknown {r!r}"))
                elif (len(s) != n or m > n - 1 or s[0] != 0 or s[-1] != m
                      or any(b - a not in (0, 1) for a, b in zip(s, s[1:]))):
                    out.append(Violation("BadFaceData", f"face {i} of {x!r} has a bad degeneracy"))
    if out:
        return out
    for n in range(2, X.dim + 1):
        for x in X.simplices[n]:
            s = X.simplex(x)
            for j in range(n + 1):
                dj = X.face(s, j)
                for i in range(j):
                    if X.face(dj, i) != X.face(X.face(s, i), j - 1):
                        out.append(Violation("SimplicialIdentityViolation", f"d{i}d{j} ≠ d{j - 1}d{i} on {x!r}"))
    return out


def validate_sset(X: TruncSSet) -> TruncSSet:
    raise_for(sset_violations(X))
    return X


def empty_sset(dim: int = 0) -> TruncSSet:
    return TruncSSet(dim, {}, {})


# ---------------------------------------------------------------- nerve

def _longest_chain(C: FinCat) -> int | None:
    graph = {x: set() for x in C.objects}
    for f in C.nonidentity():
        if C.src[f] == C.tgt[f]:
            return None
        graph[C.tgt[f]].add(C.src[f])
    try:
        order = list(TopologicalSorter(graph).static_order())
    except CycleError:
        return None
    depth = {}
    for x in order:
        depth[x] = max((depth[C.src[f]] + 1 for f in C.into[x] if not C.is_identity(f)), default=0)
    return max(depth.values(), default=0)


def chain_name(chain: Sequence[str]) -> str:
    return "[" + ",".join(chain) + "]"


def nerve(C: FinCat, d: int | None = None) -> TruncSSet:
    """Nerve truncated at ``d``; nondegenerate simplices are chains without identities.

    ``d`` may be omitted when ``C`` has no cycles of non-identity morphisms,
    in which case the whole (finite) nerve is returned.
    """
    if d is None:
        d = _longest_chain(C)
        if d is None:
            raise ValueError("nerve is infinite-dimensional; pass a truncation d")

    def normal(objs: list[str], mors: list[str]) -> Simplex:
        keep = [f for f in mors if not C.is_identity(f)]
        surj, v = [0], 0
        for f in mors:
            v += not C.is_identity(f)
            surj.append(v)
        ref = chain_name(keep) if keep else objs[0]
        return ref, tuple(surj)

    simplices = {0: list(C.objects)}
    faces = {}
    level = [((x,), ()) for x in C.objects]
    for n in range(1, d + 1):
        nxt = []
        for objs, mors in level:
            for f in C.out[objs[-1]]:
                if not C.is_identity(f):
                    nxt.append((objs + (C.tgt[f],), mors + (f,)))
        simplices[n] = []
        for objs, mors in nxt:
            name = chain_name(mors)
            simplices[n].append(name)
            fs = []
            for i in range(n + 1):
                if i == 0:
                    fs.append(normal(list(objs[1:]), list(mors[1:])))
                elif i == n:
                    fs.append(normal(list(objs[:-1]), list(mors[:-1])))
                else:
                    m = list(mors[:i - 1]) + [C.table[mors[i], mors[i - 1]]] + list(mors[i + 1:])
                    fs.append(normal(list(objs[:i]) + list(objs[i + 1:]), m))
            faces[name] = fs
        level = nxt
    return TruncSSet(d, simplices, faces)


# ---------------------------------------------------------------- subdivision

def _check_regular(X: TruncSSet) -> None:
    bad = []
    for n in range(1, X.dim + 1):
        for x in X.simplices[n]:
            if any(s != ident(n - 1) for _, s in X.faces[x]):
                bad.append(Violation("NotRegular", f"{x!r} has a degenerate face"))
            elif len(set(X.vertices(x))) != n + 1:
                bad.append(Violation("NotRegular", f"{x!r} has repeated vertices"))
    raise_for(bad)


def _below(X: TruncSSet) -> dict[str, set[str]]:
    below: dict[str, set[str]] = {}
    for n in range(X.dim + 1):
        for x in X.simplices[n]:
            s = set()
            for r, _ in X.faces.get(x, ()):
                s.add(r)
                s |= below[r]
            below[x] = s
    return below


def face_poset(X: TruncSSet) -> FinCat:
    """Nondegenerate simplices ordered by the face relation."""
    _check_regular(X)
    below = _below(X)
    elements = [x for n in range(X.dim + 1) for x in X.simplices[n]]
    return poset_to_category(elements, [(y, x) for x in elements for y in below[x]])


def flag_name(flag: Sequence[str]) -> str:
    return "[" + "|".join(flag) + "]"


def sd(X: TruncSSet) -> TruncSSet:
    """Barycentric subdivision; simplices are flags of nondegenerate simplices.

    Valid for regular inputs (every nondegenerate simplex has distinct
    vertices and nondegenerate faces); others raise ``NotRegular``.
    """
    _check_regular(X)
    below = _below(X)
    order = [x for n in range(X.dim + 1) for x in X.simplices[n]]
    above = defaultdict(list)
    for x in order:
        for y in below[x]:
            above[y].append(x)
    simplices = {0: [flag_name([x]) for x in order]}
    faces = {}
    level = [(x,) for x in order]
    for n in range(1, X.dim + 1):
        nxt = [fl + (z,) for fl in level for z in above[fl[-1]]]
        simplices[n] = [flag_name(fl) for fl in nxt]
        for fl in nxt:
            faces[flag_name(fl)] = [(flag_name(fl[:i] + fl[i + 1:]), ident(n - 1)) for i in range(n + 1)]
        level = nxt
    return TruncSSet(X.dim, simplices, faces)


# ---------------------------------------------------------------- standard complexes

def simplex_name(vertices: Iterable) -> str:
    return "{" + ",".join(str(v) for v in vertices) + "}"


def simplicial_complex(facets: Iterable[Iterable[int]], dim: int | None = None) -> TruncSSet:
    """Ordered simplicial complex generated by ``facets`` (vertex lists)."""
    faces_all = set()
    for fct in facets:
        fct = tuple(sorted(fct))
        for k in range(1, len(fct) + 1):
            faces_all |= set(combinations(fct, k))
    top = max((len(s) - 1 for s in faces_all), default=0)
    dim = top if dim is None else dim
    simplices = {n: [] for n in range(dim + 1)}
    faces = {}
    for s in sorted(faces_all, key=lambda t: (len(t), t)):
        n = len(s) - 1
        simplices[n].append(simplex_name(s))
        if n:
            faces[simplex_name(s)] = [(simplex_name(s[:i] + s[i + 1:]), ident(n - 1)) for i in range(n + 1)]
    return TruncSSet(dim, simplices, faces)


def standard_complex(kind: str, m: int, k: int | None = None) -> TruncSSet:
    """``Δ[m]``, ``∂Δ[m]`` or ``Λ^k[m]``, truncated at ``m``.

    ``kind`` is ``"delta"``, ``"boundary"`` or ``"horn"`` (case-insensitive).
    ``∂Δ[0]`` is the empty simplicial set.
    """
    kind = kind.lower()
    if m < 0:
        raise BadIndices(f"m = {m} is negative")
    verts = list(range(m + 1))
    if kind == "delta":
        return simplicial_complex([verts], m)
    if kind == "boundary":
        if m == 0:
            return empty_sset(0)
        return simplicial_complex([verts[:j] + verts[j + 1:] for j in verts], m)
    if kind == "horn":
        if m < 1 or k is None or not 0 <= k <= m:
            raise BadIndices(f"horn needs m ≥ 1 and 0 ≤ k ≤ m, got m={m}, k={k}")
        return simplicial_complex([verts[:j] + verts[j + 1:] for j in verts if j != k], m)
    raise BadIndices(f"unknown complex kind {kind!r}")


# ---------------------------------------------------------------- categorification

def _edge_path(x: Simplex) -> tuple[str, ...]:
    ref, s = x
    return (ref,) if s == (0, 1) else ()


def present(X: TruncSSet, budget: int = DEFAULT_CLOSURE_BUDGET) -> Presentation:
    """Categorification with the representative path of every morphism."""
    verts = list(X.simplices.get(0, ()))
    edges = list(X.simplices.get(1, ())) if X.dim >= 1 else []
    esrc = {e: X.faces[e][1][0] for e in edges}
    etgt = {e: X.faces[e][0][0] for e in edges}
    relations = []
    for s in (X.simplices.get(2, ()) if X.dim >= 2 else ()):
        d0, d1, d2 = X.faces[s]
        start = X.face(d2, 1)[0]
        relations.append((start, _edge_path(d2) + _edge_path(d0), _edge_path(d1)))
    triples = [(e, esrc[e], etgt[e]) for e in edges]
    topo = topological_order(verts, triples)
    if topo is None:
        return _present_with_fillers(verts, edges, esrc, etgt, relations, budget)
    return present_acyclic(verts, triples, relations, budget, topo)


def _present_with_fillers(verts, edges, esrc, etgt, relations, budget) -> Presentation:
    # Every composable pair must be filled by a 2-simplex; then each path is
    # equal to an edge or an identity and the quotient is finite.
    def ident_cell(v):
        return ("id", v)

    def src(c):
        return c[1] if c[0] == "id" else esrc[c[1]]

    def tgt(c):
        return c[1] if c[0] == "id" else etgt[c[1]]

    cells = [ident_cell(v) for v in verts] + [("e", e) for e in edges]
    uf = UnionFind()
    for c in cells:
        uf.find(c)
    comp = defaultdict(set)  # (first, second) -> results
    for start, left, right in relations:
        res = ("e", right[0]) if right else ident_cell(start)
        if len(left) == 2:
            comp[("e", left[0]), ("e", left[1])].add(res)
        elif len(left) == 1:
            uf.union(("e", left[0]), res)
        else:
            uf.union(ident_cell(start), res)
    work = 0
    changed = True
    while changed:
        changed = False
        table = {}
        for (a, b), results in comp.items():
            key = (uf.find(a), uf.find(b))
            for r in results:
                work += 1
                if work > budget:
                    raise ClosureBudgetExceeded(f"congruence closure exceeded {budget} pairs")
                prev = table.setdefault(key, uf.find(r))
                if uf.find(prev) != uf.find(r):
                    uf.union(prev, r)
                    changed = True
    roots = {}
    for c in cells:
        roots.setdefault(uf.find(c), []).append(c)
    name_of, rep = {}, {}
    morphisms, identities = [], {}
    for root, members in roots.items():
        ids_ = [m for m in members if m[0] == "id"]
        if ids_:
            v = ids_[0][1]
            name = "id_" + v
            rep[name] = (v, ())
        else:
            e = min(m[1] for m in members)
            name = e
            rep[name] = (esrc[e], (e,))
        name_of[root] = name
        morphisms.append((name, src(members[0]), tgt(members[0])))
        if ids_:
            identities[ids_[0][1]] = name
    table = {}
    by_src = defaultdict(list)
    for name, s, t in morphisms:
        by_src[s].append(name)
    for f, s, t in morphisms:
        for g in by_src[t]:
            if f == identities.get(s) or g == identities.get(t):
                table[g, f] = g if f == identities.get(s) else f
                continue
            key = (uf.find(_cell_of(rep[f])), uf.find(_cell_of(rep[g])))
            hit = None
            for (a, b), results in comp.items():
                if (uf.find(a), uf.find(b)) == key:
                    hit = uf.find(next(iter(results)))
                    break
            if hit is None:
                raise CyclicOneSkeleton(f"no 2-simplex fills the composable pair {f!r}, {g!r}")
            table[g, f] = name_of[hit]
    C = FinCat(verts, morphisms, identities, table)
    if category_violations(C):
        raise CyclicOneSkeleton("cyclic 1-skeleton: 2-simplices do not determine an associative composition")

    def lookup(start, path):
        m = identities[start]
        for e in path:
            m = table[name_of[uf.find(("e", e))], m]
        return m

    return Presentation(C, esrc, etgt, rep, lookup)


def _cell_of(rep):
    v, p = rep
    return ("e", p[0]) if p else ("id", v)


def categorify(X: TruncSSet, budget: int = DEFAULT_CLOSURE_BUDGET) -> FinCat:
    """The category ``cX``: vertices, edges, and one relation per 2-simplex."""
    return present(X, budget).category


def categorify_inclusion(sub: TruncSSet, X: TruncSSet, budget: int = DEFAULT_CLOSURE_BUDGET) -> FinFunctor:
    """``c`` applied to a sub-simplicial set (ids of ``sub`` are ids of ``X``)."""
    ps, px = present(sub, budget), present(X, budget)
    C, D = ps.category, px.category
    mor = {m: px.morphism_of(v, p) for m, (v, p) in ps.representative.items()}
    return FinFunctor(C, D, {x: x for x in C.objects}, mor)


def generating_cell(m: int, k: int | None = None, target: str = "delta",
                    budget: int = DEFAULT_CLOSURE_BUDGET) -> FinFunctor:
    """``cSd²∂Δ[m] → cSd²Δ[m]``, or with ``k`` the horn inclusion ``cSd²Λ^k[m] → cSd²(target)``.

    ``target`` is ``"delta"`` (the usual generating acyclic cofibration) or
    ``"boundary"``.
    """
    if k is None:
        sub, whole = standard_complex("boundary", m), standard_complex("delta", m)
    else:
        sub = standard_complex("horn", m, k)
        whole = standard_complex("delta" if target == "delta" else "boundary", m)
    return categorify_inclusion(sd(sd(sub)), sd(sd(whole)), budget)


# ---------------------------------------------------------------- simplicial maps and Ex

def simplicial_maps(S: TruncSSet, Y: TruncSSet, budget: int = DEFAULT_ENUMERATION_BUDGET) -> list[dict[str, Simplex]]:
    """Every simplicial map ``S → Y``, each as images of the nondegenerate simplices of ``S``.

    Simplices of ``Y`` above ``Y.dim`` are taken to be degenerate.
    """
    order = [x for n in range(S.dim + 1) for x in S.simplices[n]]
    out = []
    img: dict[str, Simplex] = {}
    nodes = [0]

    def rec(i):
        if i == len(order):
            out.append(dict(img))
            return
        x = order[i]
        n = S.degree[x]
        want = tuple(degenerate(img[r], s) for r, s in S.faces.get(x, ())) if n else ()
        for y in Y.index(n).get(want, ()):
            nodes[0] += 1
            if nodes[0] > budget:
                raise EnumerationBudgetExceeded(f"map enumeration exceeded {budget} nodes")
            img[x] = y
            rec(i + 1)
        img.pop(x, None)

    rec(0)
    return out


def _subsets_flags(n: int):
    """Nondegenerate simplices of ``Sd Δ[n]`` as flags of vertex tuples, by dimension."""
    subsets = [s for k in range(1, n + 2) for s in combinations(range(n + 1), k)]
    flags = {0: [(s,) for s in subsets]}
    for d in range(1, n + 1):
        flags[d] = [fl + (t,) for fl in flags[d - 1] for t in subsets
                    if len(t) > len(fl[-1]) and set(fl[-1]) < set(t)]
    return flags


def _flag_id(flag) -> str:
    return flag_name([simplex_name(s) for s in flag])


def ex(X: TruncSSet, n_max: int = 3, budget: int = DEFAULT_ENUMERATION_BUDGET) -> TruncSSet:
    """``Ex X`` up to dimension ``n_max``: ``n``-simplices are maps ``Sd Δ[n] → X``."""
    maps: dict[int, list[dict[str, Simplex]]] = {}
    flags: dict[int, dict] = {}
    for n in range(n_max + 1):
        maps[n] = simplicial_maps(sd(standard_complex("delta", n)), X, budget)
        flags[n] = _subsets_flags(n)

    def key(mu):
        return tuple(sorted(mu.items()))

    def face_map(mu, n, i):
        out = {}
        for d, fls in flags[n - 1].items():
            for fl in fls:
                moved = tuple(tuple(v if v < i else v + 1 for v in s) for s in fl)
                out[_flag_id(fl)] = mu[_flag_id(moved)]
        return out

    def degeneracy_map(nu, n, i):
        # nu in Ex_{n-1}; returns s_i nu in Ex_n
        out = {}
        for d, fls in flags[n].items():
            for fl in fls:
                imgs = [tuple(sorted({v if v <= i else v - 1 for v in s})) for s in fl]
                distinct, surj = [], []
                for s in imgs:
                    if not distinct or distinct[-1] != s:
                        distinct.append(s)
                    surj.append(len(distinct) - 1)
                out[_flag_id(fl)] = degenerate(nu[_flag_id(tuple(distinct))], surj)
        return out

    ids: dict[int, dict] = {}
    nondeg: dict[int, list] = {}
    decomposition: dict[tuple, Simplex] = {}
    for n in range(n_max + 1):
        ids[n] = {}
        nondeg[n] = []
        for j, mu in enumerate(maps[n]):
            k = key(mu)
            degen = []
            cur, cur_n = mu, n
            while True:
                for i in range(cur_n):
                    low = face_map(cur, cur_n, i)
                    if key(degeneracy_map(low, cur_n, i)) == key(cur):
                        degen.append(i)
                        cur, cur_n = low, cur_n - 1
                        break
                else:
                    break
            if not degen:
                name = mu[_flag_id(((0,),))][0] if n == 0 else f"ex{n}.{len(nondeg[n])}"
                ids[n][k] = name
                nondeg[n].append((name, mu))
                decomposition[k] = (name, ident(n))
            else:
                base = ids[cur_n][key(cur)]
                surj = list(range(n + 1))
                for i in degen:
                    surj = [v if v <= i else v - 1 for v in surj]
                decomposition[k] = (base, tuple(surj))
    simplices = {n: [name for name, _ in nondeg[n]] for n in range(n_max + 1)}
    faces = {}
    for n in range(1, n_max + 1):
        for name, mu in nondeg[n]:
            faces[name] = [decomposition[key(face_map(mu, n, i))] for i in range(n + 1)]
    return TruncSSet(n_max, simplices, faces)


def ex2_nerve(C: FinCat, n_max: int = 3, budget: int = DEFAULT_ENUMERATION_BUDGET) -> TruncSSet:
    return ex(ex(nerve(C, n_max), n_max, budget), n_max, budget)


# ---------------------------------------------------------------- actions on nerves

def _spine(N: TruncSSet, x: str) -> list[str]:
    """Morphisms of a nondegenerate nerve chain, read off its edges ``i → i+1``."""
    n = N.degree[x]
    out = []
    for k in range(n):
        e = N.simplex(x)
        for i in reversed(range(n + 1)):
            if i not in (k, k + 1):
                e = N.face(e, i)
        out.append(e[0][1:-1])    # a 1-chain is named "[f]"
    return out


def nerve_map(F: FinFunctor, N_src: TruncSSet) -> dict[str, Simplex]:
    """Images of the nondegenerate simplices of ``N(C)`` under ``N(F)``.

    Only meaningful for functors that send non-identities to non-identities
    (e.g. automorphisms), whose nerve maps keep chains nondegenerate.
    """
    out = {}
    for n, xs in N_src.simplices.items():
        for x in xs:
            if n == 0:
                out[x] = (F.ob[x], (0,))
            else:
                out[x] = (chain_name([F.mor[f] for f in _spine(N_src, x)]), ident(n))
    return out


def fixed_subsset(X: TruncSSet, maps: Iterable[Mapping[str, Simplex]]) -> TruncSSet:
    """Simplices fixed by every map in ``maps`` (simplicial automorphisms)."""
    maps = list(maps)
    keep = {x for x in X.degree if all(m[x] == X.simplex(x) for m in maps)}
    simplices = {n: [x for x in xs if x in keep] for n, xs in X.simplices.items()}
    faces = {x: X.faces[x] for x in keep if x in X.faces}
    return TruncSSet(X.dim, simplices, faces)


def nerve_fixed_points(X, H, d: int) -> tuple[TruncSSet, TruncSSet]:
    """``N(X^H)`` and ``(N X)^H`` for a G-category ``X``, truncated at ``d``."""
    from .gaction import fixed_category
    from .group import resolve_subgroup

    Hs = resolve_subgroup(X.group, H)
    N = nerve(X.base, d)
    fixed = fixed_subsset(N, [nerve_map(X.action[h], N) for h in Hs])
    return nerve(fixed_category(X, Hs), d), fixed
