"""Seeded verification suites.

Each case draws from its own ``random.Random("<suite>:<seed>:<index>")``,
so a case's outcome depends only on the suite, the seed and its index.
That keeps reports identical whatever the number of worker processes.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from .catalog import (
    adjunction_catalog,
    adjunction_groups,
    filtered_groups,
    fixed_pushout_groups,
    fixed_pushout_instance,
    random_dwyer,
    random_mono_chain,
    random_monotone,
    random_poset,
    random_small_category,
    random_square,
)
from .colimits import (
    dwyer_violations,
    dwyer_witness,
    fixed_square_is_pushout,
    pushout_along_dwyer,
    pushout_oracle,
    pushouts_agree,
    square_violations,
    verify_filtered_mono,
    verify_fixed_point_pushout,
    verify_retract,
)
from .errors import BudgetExceeded, ComparisonNotIso, LemmaFailure, UnknownSuite, ValidationError, raise_for
from .fincat import category_violations, is_poset
from .gaction import fixed_tensor_compare, verify_adjunction
from .group import fixture_groups, subgroup_names
from .homology import compare_homology
from .sset import generating_cell

HOMOLOGY_DIM = 3


@lru_cache(maxsize=None)
def dwyer_cells() -> tuple:
    """``(label, i)`` for every generating cell with ``m ≤ 2``, horns onto both targets."""
    out = [(f"gen{m}", generating_cell(m)) for m in range(3)]
    for m in (1, 2):
        for k in range(m + 1):
            for target in ("delta", "boundary"):
                out.append((f"horn{m},{k}->{target}", generating_cell(m, k, target)))
    return tuple(out)


@lru_cache(maxsize=None)
def homology_cells() -> tuple:
    """``(label, i, expect_equal)``: acyclic horn cells and the boundary cofibrations."""
    out = [(f"gen{m}", generating_cell(m), False) for m in range(3)]
    out += [(f"horn{m},{k}", generating_cell(m, k), True) for m in (1, 2) for k in range(m + 1)]
    return tuple(out)


def _pick(rng, G):
    names = list(subgroup_names(G))
    return rng.choice(names), rng.choice(names)


# ---------------------------------------------------------------- cases

def case_pushout_explicit(rng: random.Random, index: int) -> dict:
    i = random_dwyer(rng, 8)
    C = random_poset(rng, 6, prefix="c")
    F = random_monotone(rng, i.source, C)
    p = pushout_along_dwyer(i, F)
    raise_for(category_violations(p.category))
    q = pushout_oracle(i, F)
    if pushouts_agree(p, q) is None:
        raise ComparisonNotIso("explicit pushout differs from the presented pushout")
    return {"A": len(i.source.objects), "B": len(i.target.objects), "C": len(C.objects),
            "D": len(p.category.objects)}


def case_pushout_fixed(rng: random.Random, index: int) -> dict:
    G = rng.choice(fixed_pushout_groups())
    K, H = _pick(rng, G)
    i, F = fixed_pushout_instance(rng, G, K)
    rep = verify_fixed_point_pushout(G, K, H, i, F)
    return {"group": G.name, "K": K, "H": H, **rep.as_dict()}


def case_filtered_mono(rng: random.Random, index: int) -> dict:
    G = rng.choice(filtered_groups())
    length = rng.randint(1, 4)
    maps = random_mono_chain(rng, G, length)
    sizes = [verify_filtered_mono(maps, H).source_size[0] for H in subgroup_names(G)]
    return {"group": G.name, "length": length, "fixed_objects": sizes}


def case_tensor_fixed(rng: random.Random, index: int) -> dict:
    G = rng.choice(fixture_groups())
    K, H = _pick(rng, G)
    A = random_small_category(rng, 4)
    rep = fixed_tensor_compare(G, K, H, A)
    return {"group": G.name, "K": K, "H": H, "fixed_points": rep.fixed_points,
            "objects": rep.target_size[0]}


def case_adjunction(rng: random.Random, index: int) -> dict:
    G = rng.choice(adjunction_groups())
    gcats, diagrams = adjunction_catalog(G)
    Y, X = rng.choice(diagrams), rng.choice(gcats)
    rep = verify_adjunction(Y, X)
    return {"group": G.name, "maps": rep.gcat_maps, "triangles": rep.triangles}


def case_dwyer_cells(rng: random.Random, index: int) -> dict:
    label, i = dwyer_cells()[index % len(dwyer_cells())]
    if not (is_poset(i.source) and is_poset(i.target)):
        raise LemmaFailure(f"{label}: endpoints are not posets")
    wit = dwyer_witness(i)
    if wit is None or dwyer_violations(i, wit):
        raise LemmaFailure(f"{label}: no Dwyer witness")
    return {"cell": label, "A": len(i.source.objects), "B": len(i.target.objects),
            "W": len(wit.W.objects)}


def case_closure(rng: random.Random, index: int) -> dict:
    G = rng.choice(filtered_groups())
    length = rng.randint(1, 3)
    sq = random_square(rng, G, length)
    raise_for(square_violations(sq))
    names = list(subgroup_names(G))
    for H in names:
        fixed_square_is_pushout(sq, H)
    verify_retract(sq, rng.choice(names))
    return {"group": G.name, "length": length, "Q": len(sq.to_q.target.base.objects)}


def case_homology_cells(rng: random.Random, index: int) -> dict:
    label, i, expect = homology_cells()[index % len(homology_cells())]
    cmp = compare_homology(i, HOMOLOGY_DIM)
    if cmp.equal != expect:
        want = "equal" if expect else "different"
        raise LemmaFailure(f"{label}: expected {want} homology")
    return {"cell": label, "equal": cmp.equal,
            "source": [str(g) for g in cmp.source], "target": [str(g) for g in cmp.target]}


SUITES = {
    "pushout-explicit": case_pushout_explicit,
    "pushout-fixed": case_pushout_fixed,
    "filtered-mono": case_filtered_mono,
    "tensor-fixed": case_tensor_fixed,
    "adjunction": case_adjunction,
    "dwyer-cells": case_dwyer_cells,
    "closure": case_closure,
    "homology-cells": case_homology_cells,
}


# ---------------------------------------------------------------- runner

def case_rng(suite: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{index}")


def run_case(suite: str, seed: int, index: int) -> dict:
    """One case as ``{case, seed, pass, detail}``; lemma failures and budget overruns fail it."""
    rng = case_rng(suite, seed, index)
    result = {"case": f"{suite}-{index:04d}", "seed": seed}
    try:
        result["detail"] = SUITES[suite](rng, index)
        result["pass"] = True
    except (LemmaFailure, BudgetExceeded, ValidationError) as e:
        result["pass"] = False
        result["detail"] = {"error": type(e).__name__, "message": str(e)}
    return result


def _run_star(args):
    return run_case(*args)


def run_suite(suite: str, seed: int = 0, cases: int = 20, jobs: int = 1) -> dict:
    """Run ``cases`` seeded cases; the report is sorted by case id."""
    if suite not in SUITES:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    work = [(suite, seed, k) for k in range(cases)]
    if jobs > 1 and cases > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_star, work))
    else:
        results = [run_case(*w) for w in work]
    results.sort(key=lambda r: r["case"])
    passed = sum(r["pass"] for r in results)
    return {"suite": suite, "seed": seed, "cases": cases, "passed": passed,
            "failed": cases - passed, "ok": passed == cases, "results": results}
