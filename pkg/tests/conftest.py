"""Shared test helpers: random polynomial/ideal generators and the dense
linear-algebra dimension oracle used to cross-check the staircase count."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pytest

from singtrans.poly import MultiPoly


def random_poly(
    rng: random.Random,
    ring: Sequence[str],
    max_terms: int = 4,
    max_degree: int = 4,
    coeff_bound: int = 5,
    force_nonzero: bool = True,
) -> MultiPoly:
    ring = tuple(ring)
    terms = {}
    for _ in range(rng.randint(1 if force_nonzero else 0, max_terms)):
        while True:
            mono = tuple(rng.randint(0, max_degree) for _ in ring)
            if sum(mono) <= max_degree:
                break
        coeff = rng.randint(-coeff_bound, coeff_bound)
        if coeff == 0:
            coeff = 1
        terms[mono] = terms.get(mono, 0) + coeff
    poly = MultiPoly(ring, terms)
    if force_nonzero and poly.is_zero():
        return MultiPoly.constant(ring, 1)
    return poly


def random_ideal_generators(rng: random.Random) -> Tuple[Tuple[str, ...], List[MultiPoly]]:
    nvars = rng.randint(1, 3)
    ring = ("x", "y", "z")[:nvars]
    ngens = rng.randint(1, 3)
    gens = [random_poly(rng, ring, max_terms=4, max_degree=4) for _ in range(ngens)]
    return ring, [g for g in gens if not g.is_zero()]


# ---------------------------------------------------------------------------
# Dense oracle: quotient dimension as the corank of the Macaulay matrix of
# monomial multiples of the generators, with ranks over two large primes.
# ---------------------------------------------------------------------------

_PRIMES = (2_147_483_629, 2_147_483_587)


def _monomials_up_to(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    out = []
    for total in range(degree + 1):
        for c in itertools.combinations_with_replacement(range(nvars), total):
            mono = [0] * nvars
            for i in c:
                mono[i] += 1
            out.append(tuple(mono))
    return out


def _pivot_columns_mod_p(rows: List[List[int]], p: int) -> List[int]:
    """Pivot columns of the row span, scanning columns left to right."""
    if not rows:
        return []
    a = np.array(rows, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if a[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1 :, c].copy()
        mask = below != 0
        if mask.any():
            a[r + 1 :][mask] = (a[r + 1 :][mask] - below[mask, None] * a[r][None, :]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def macaulay_dimension_estimate(
    gens: Sequence[MultiPoly], low_degree: int, high_degree: int, p: int
) -> int:
    """Upper bound for dim R/I from the Macaulay matrix.

    Rows are all monomial multiples m*g of total degree <= high_degree;
    columns are ordered by descending degree, so echelon rows with their
    pivot inside the degree <= low_degree block form a basis of
    span `intersect` R_{<=low_degree} (a subspace of I there).  The bound
    #monomials(<= low) - #(low pivots) decreases to dim R/I as
    high_degree grows, provided the staircase fits in low_degree."""
    ring = gens[0].ring
    nvars = len(ring)
    monos = _monomials_up_to(nvars, high_degree)
    monos.sort(key=lambda m: (-sum(m), m))
    cols = {m: i for i, m in enumerate(monos)}
    low_cols = {i for m, i in cols.items() if sum(m) <= low_degree}
    rows: List[List[int]] = []
    for g in gens:
        gdeg = g.total_degree()
        if gdeg > high_degree:
            continue
        denominator = lcm(*[c.denominator for c in g.terms.values()])
        int_terms = {m: int(c * denominator) for m, c in g.terms.items()}
        for m in _monomials_up_to(nvars, high_degree - gdeg):
            row = [0] * len(cols)
            for gm, c in int_terms.items():
                prod = tuple(a + b for a, b in zip(m, gm))
                row[cols[prod]] = c
            rows.append(row)
    pivots = _pivot_columns_mod_p(rows, p)
    low_rank = sum(1 for c in pivots if c in low_cols)
    n_low = len(low_cols)
    return n_low - low_rank


def oracle_quotient_dimension(
    gens: Sequence[MultiPoly], claimed: int, staircase_degree: int
) -> Optional[int]:
    """Confirm `claimed` by the dense Macaulay estimate at increasing
    truncation degrees; returns claimed on success, or the last (or a
    too-small) estimate on a genuine mismatch."""
    gmax = max(g.total_degree() for g in gens)
    low = staircase_degree + 1
    last = None
    for high in range(low + gmax + 1, low + gmax + 8):
        for p in _PRIMES:
            last = macaulay_dimension_estimate(gens, low, high, p)
            if last == claimed:
                return last
            if last < claimed:
                return last  # the span exceeds what the claim allows
    return last
