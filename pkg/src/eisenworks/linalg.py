"""Sparse exact linear algebra over the rationals.

Vectors are dicts ``key -> Fraction`` with arbitrary hashable keys.  All
elimination is fraction-exact with deterministic pivoting (pivot keys are
taken in sorted order when the keys are sortable, insertion order otherwise).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _sort_keys(keys):
    try:
        return sorted(keys)
    except TypeError:
        return list(keys)


def _reduce(vec: dict, basis: list) -> dict:
    """Reduce ``vec`` against an echelon ``basis`` of (pivot, row) pairs."""
    vec = dict(vec)
    for pivot, row in basis:
        c = vec.get(pivot)
        if c:
            for k, v in row.items():
                nv = vec.get(k, 0) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
    return vec


def _echelon(vectors: Sequence[dict]):
    """Row-echelon data for the augmented vectors (v_i | e_i).

    Returns the pivot basis and the kernel relations found along the way.
    Rows are reduced only against earlier pivots, which is enough for
    sequential reduction in ``_reduce``.
    """
    n = len(vectors)
    basis = []
    relations = []
    for i, v in enumerate(vectors):
        aug = {("v", k): Fraction(c) for k, c in v.items() if c}
        aug[("e", i)] = Fraction(1)
        red = _reduce(aug, basis)
        vpart = [k for k in red if k[0] == "v"]
        if not vpart:
            rel = [red.get(("e", j), Fraction(0)) for j in range(n)]
            relations.append(_normalize_relation(rel))
            continue
        pivot = _sort_keys(vpart)[0]
        p = red[pivot]
        basis.append((pivot, {k: c / p for k, c in red.items()}))
    return basis, relations


def kernel(vectors: Sequence[dict]) -> list[list[Fraction]]:
    """Basis of {c : sum_i c_i v_i = 0}, each relation a list of Fractions.

    Relations are normalized to integer entries with positive leading entry
    and gcd 1.
    """
    return _echelon(vectors)[1]


def rank(vectors: Sequence[dict]) -> int:
    return len(vectors) - len(kernel(vectors))


def _normalize_relation(rel: list) -> list:
    from math import gcd

    den = 1
    for c in rel:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in rel]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return [Fraction(x) for x in ints]


def solve(columns: Sequence[dict], target: dict, unique: bool = False):
    """Find c with sum_i c_i columns[i] = target exactly.

    Returns ``(coefficients, residual)``; the residual is the part of
    ``target`` outside the span (empty dict when solvable).  Free variables
    are set to zero; with ``unique`` a non-trivial kernel raises ValueError.
    """
    n = len(columns)
    basis, relations = _echelon(columns)
    if unique and relations:
        raise ValueError(f"solution is not unique ({len(relations)} free parameters)")
    t = {("v", k): Fraction(c) for k, c in target.items() if c}
    red = _reduce(t, basis)
    residual = {k[1]: c for k, c in red.items() if k[0] == "v"}
    # red = t - sum_b x_b row_b; the e-part of red is minus the combination
    coeffs = [-red.get(("e", i), Fraction(0)) for i in range(n)]
    return coeffs, residual
