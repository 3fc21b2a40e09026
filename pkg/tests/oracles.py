"""Slow, obviously-correct reference computations used only by the tests."""

import itertools

from gcat.fincat import FinFunctor, functor_violations


def brute_functors(C, D):
    """Every functor ``C → D``, by listing all object maps and all morphism choices."""
    out = []
    for images in itertools.product(D.objects, repeat=len(C.objects)):
        ob = dict(zip(C.objects, images))
        choices = [D.hom(ob[C.src[f]], ob[C.tgt[f]]) for f in C.morphisms]
        for pick in itertools.product(*choices):
            F = FinFunctor(C, D, ob, dict(zip(C.morphisms, pick)))
            if not functor_violations(F):
                out.append(F)
    return out


def brute_equivariant(X, Y):
    G = X.group
    return [F for F in brute_functors(X.base, Y.base)
            if all(X.action[g].then(F) == F.then(Y.action[g]) for g in G.elements)]


def brute_natural(Y, Z):
    """Natural transformations, by the full product of component choices."""
    names = list(Y.orbit.subgroups)
    comps = [brute_functors(Y.values[n], Z.values[n]) for n in names]
    out = []
    for pick in itertools.product(*comps):
        eta = dict(zip(names, pick))
        if all(Y.restrictions[f].then(eta[h]) == eta[k].then(Z.restrictions[f])
               for f, (h, k, _) in Y.orbit.cells.items()):
            out.append(eta)
    return out


def flag_counts(n):
    """Chains of nonempty subsets of {0..n} by length, by direct listing."""
    subsets = [frozenset(s) for k in range(1, n + 2) for s in itertools.combinations(range(n + 1), k)]
    counts = [len(subsets)]
    level = [(s,) for s in subsets]
    for _ in range(n):
        level = [fl + (t,) for fl in level for t in subsets if fl[-1] < t]
        counts.append(len(level))
    return counts


def chain_face_poset(P):
    """Nonempty chains of a poset ordered by inclusion, as (elements, relation)."""
    def less(a, b):
        return a != b and bool(P.hom(a, b))

    chains = []
    def grow(c):
        chains.append(c)
        for x in P.objects:
            if less(c[-1], x):
                grow(c + (x,))
    for x in P.objects:
        grow((x,))
    names = {c: "<" + ",".join(c) + ">" for c in chains}
    rel = [(names[a], names[b]) for a in chains for b in chains if a != b and set(a) <= set(b)]
    return [names[c] for c in chains], rel


def path_category_counts(X, max_len=12):
    """Hom-set sizes of cX by listing every edge path and closing the 2-simplex relations
    under all contexts (acyclic 1-skeleton only)."""
    verts = list(X.simplices[0])
    edges = list(X.simplices[1]) if X.dim >= 1 else []
    src = {e: X.faces[e][1][0] for e in edges}
    tgt = {e: X.faces[e][0][0] for e in edges}
    paths = {(v, ()): v for v in verts}
    frontier = [(v, ()) for v in verts]
    for _ in range(max_len):
        nxt = []
        for v, p in frontier:
            end = tgt[p[-1]] if p else v
            for e in edges:
                if src[e] == end:
                    nxt.append((v, p + (e,)))
        for q in nxt:
            paths[q] = q[0]
        frontier = nxt
    assert not frontier, "path listing did not terminate"

    def edge_path(simplex):
        ref, s = simplex
        return (ref,) if s == (0, 1) else ()

    rels = []
    for t in (X.simplices[2] if X.dim >= 2 else ()):
        d0, d1, d2 = X.faces[t]
        rels.append((edge_path(d2) + edge_path(d0), edge_path(d1), X.face(d2, 1)[0]))
    parent = {q: q for q in paths}

    def find(q):
        while parent[q] != q:
            parent[q] = parent[parent[q]]
            q = parent[q]
        return q

    changed = True
    while changed:
        changed = False
        for (v, p) in list(paths):
            for left, right, start in rels:
                n = len(left)
                for i in range(len(p) - n + 1 if n else len(p) + 1):
                    if tuple(p[i:i + n]) != left:
                        continue
                    here = tgt[p[i - 1]] if i else v
                    if here != start:
                        continue
                    other = (v, p[:i] + right + p[i + n:])
                    a, b = find((v, p)), find(other)
                    if a != b:
                        parent[a] = b
                        changed = True
    homs = {}
    for (v, p) in paths:
        end = tgt[p[-1]] if p else v
        homs.setdefault((v, end), set()).add(find((v, p)))
    return {k: len(s) for k, s in homs.items()}
