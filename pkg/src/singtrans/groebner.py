"""Groebner and standard bases for polynomial ideals over Q.

Global orders use Buchberger's algorithm with the normal selection
strategy plus the product and chain criteria; local orders use Mora's
tangent-cone algorithm, whose ecart-guided weak normal form terminates
on local orders.  Quotient dimensions are counted by staircase
enumeration of the leading-term ideal.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import (
    DEGREVLEX,
    LOCAL_DEGREVLEX,
    Monomial,
    MultiPoly,
    TermOrder,
    mono_degree,
    mono_div,
    mono_divides,
    mono_gcd,
    mono_lcm,
)


class BudgetExceeded(RuntimeError):
    """The configured computation budget was exhausted."""


DEFAULT_BUDGET = 100_000
_STAIRCASE_CAP = 200_000


@dataclass(frozen=True)
class Ideal:
    ring: Tuple[str, ...]
    generators: Tuple[MultiPoly, ...]

    def __init__(self, ring: Sequence[str], generators: Sequence[MultiPoly]):
        ring = tuple(ring)
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator ring mismatch")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))


@dataclass(frozen=True)
class StandardBasis:
    order: TermOrder
    basis: Tuple[MultiPoly, ...]
    reduced: bool
    local: bool
    ring: Tuple[str, ...]

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.basis]


@dataclass(frozen=True)
class Staircase:
    """Standard monomials below a leading-term ideal; None means infinite."""

    leading: Tuple[Monomial, ...]
    standard: Optional[Tuple[Monomial, ...]]

    @property
    def dimension(self) -> Optional[int]:
        return None if self.standard is None else len(self.standard)


def s_polynomial(f: MultiPoly, g: MultiPoly, order: TermOrder) -> MultiPoly:
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    lcm = mono_lcm(mf, mg)
    tf = MultiPoly.monomial(f.ring, mono_div(lcm, mf), Fraction(1) / cf)
    tg = MultiPoly.monomial(g.ring, mono_div(lcm, mg), Fraction(1) / cg)
    return tf * f - tg * g


def divide(
    f: MultiPoly, divisors: Sequence[MultiPoly], order: TermOrder
) -> Tuple[List[MultiPoly], MultiPoly]:
    """Multivariate division for a global order: f = sum(q_i g_i) + r with
    no term of r divisible by any leading monomial of the divisors."""
    if order.is_local:
        raise ValueError("divide requires a global order; use mora_normal_form")
    ring = f.ring
    quots = [MultiPoly.zero(ring) for _ in divisors]
    rem = MultiPoly.zero(ring)
    lead = [g.leading_term(order) for g in divisors]
    h = f
    while not h.is_zero():
        mh, ch = h.leading_term(order)
        for i, (mg, cg) in enumerate(lead):
            if mono_divides(mg, mh):
                t = MultiPoly.monomial(ring, mono_div(mh, mg), ch / cg)
                quots[i] = quots[i] + t
                h = h - t * divisors[i]
                break
        else:
            t = MultiPoly.monomial(ring, mh, ch)
            rem = rem + t
            h = h - t
    return quots, rem


def _ecart(f: MultiPoly, order: TermOrder) -> int:
    return f.total_degree() - mono_degree(f.leading_monomial(order))


def mora_normal_form(f: MultiPoly, basis: Sequence[MultiPoly], order: TermOrder) -> MultiPoly:
    """Mora's weak normal form: u*f = sum(q_i g_i) + h for a unit u, with
    the leading monomial of h outside the leading ideal of the basis."""
    if not order.is_local:
        raise ValueError("mora_normal_form requires a local order")
    pool = [(g, g.leading_term(order), _ecart(g, order)) for g in basis if not g.is_zero()]
    h = f
    while not h.is_zero():
        mh, ch = h.leading_term(order)
        candidates = [(ec, i) for i, (_, (mg, _), ec) in enumerate(pool) if mono_divides(mg, mh)]
        if not candidates:
            return h
        ec_h = h.total_degree() - mono_degree(mh)
        _, i = min(candidates)
        g, (mg, cg), ec_g = pool[i]
        if ec_g > ec_h:
            pool.append((h, (mh, ch), ec_h))
        h = h - MultiPoly.monomial(h.ring, mono_div(mh, mg), ch / cg) * g
    return h


def normal_form(f: MultiPoly, basis: StandardBasis) -> MultiPoly:
    """Remainder of f modulo a computed basis (weak normal form when local)."""
    if f.ring != basis.ring:
        raise ValueError("ring mismatch")
    if basis.local:
        return mora_normal_form(f, basis.basis, basis.order)
    _, rem = divide(f, list(basis.basis), basis.order)
    return rem


def _pair_key(gi: MultiPoly, gj: MultiPoly, order: TermOrder, i: int, j: int):
    lcm = mono_lcm(gi.leading_monomial(order), gj.leading_monomial(order))
    return (mono_degree(lcm), order.key(lcm), i, j)


def _basis_loop(
    gens: Sequence[MultiPoly],
    order: TermOrder,
    budget: int,
    use_criteria: bool,
    local: bool,
) -> List[MultiPoly]:
    ring = gens[0].ring
    basis: List[MultiPoly] = []
    for g in gens:
        if not g.is_zero():
            basis.append(g.monic(order))
    heap: list = []
    treated = set()
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            heapq.heappush(heap, _pair_key(basis[i], basis[j], order, i, j))
    processed = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        processed += 1
        if processed > budget:
            raise BudgetExceeded(f"pair budget of {budget} exceeded")
        mi = basis[i].leading_monomial(order)
        mj = basis[j].leading_monomial(order)
        if use_criteria:
            # product criterion (global orders only)
            if not local and all(e == 0 for e in mono_gcd(mi, mj)):
                treated.add((i, j))
                continue
            # chain criterion: some treated k with LM_k | lcm(i, j)
            lcm = mono_lcm(mi, mj)
            skip = False
            for k in range(len(basis)):
                if k in (i, j):
                    continue
                if not mono_divides(basis[k].leading_monomial(order), lcm):
                    continue
                pi, pj = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if pi in treated and pj in treated:
                    skip = True
                    break
            if skip:
                treated.add((i, j))
                continue
        spoly = s_polynomial(basis[i], basis[j], order)
        if local:
            rem = mora_normal_form(spoly, basis, order)
        else:
            _, rem = divide(spoly, basis, order)
        treated.add((i, j))
        if rem.is_zero():
            continue
        basis.append(rem.monic(order))
        new = len(basis) - 1
        for k in range(new):
            heapq.heappush(heap, _pair_key(basis[k], basis[new], order, k, new))
    return basis


def _minimalize(basis: List[MultiPoly], order: TermOrder) -> List[MultiPoly]:
    """Drop elements whose leading monomial is divisible by another's."""
    lead = [g.leading_monomial(order) for g in basis]
    keep = []
    for i, m in enumerate(lead):
        redundant = False
        for j, mj in enumerate(lead):
            if i == j:
                continue
            if mono_divides(mj, m) and (mj != m or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(basis[i])
    return keep


def buchberger(
    ideal: Ideal,
    order: TermOrder = DEGREVLEX,
    budget: int = DEFAULT_BUDGET,
    use_criteria: bool = True,
) -> StandardBasis:
    """Reduced Groebner basis; deterministic for a fixed generator order."""
    if order.is_local:
        raise ValueError("buchberger requires a global order")
    if not ideal.generators:
        return StandardBasis(order, (), True, False, ideal.ring)
    raw = _basis_loop(ideal.generators, order, budget, use_criteria, local=False)
    minimal = _minimalize(raw, order)
    # tail-reduce every element against the others -> the unique reduced basis
    reduced: List[MultiPoly] = list(minimal)
    changed = True
    while changed:
        changed = False
        for i in range(len(reduced)):
            others = [reduced[j] for j in range(len(reduced)) if j != i]
            _, rem = divide(reduced[i], others, order)
            rem = rem.monic(order)
            if rem != reduced[i]:
                reduced[i] = rem
                changed = True
    reduced.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return StandardBasis(order, tuple(reduced), True, False, ideal.ring)


def mora_standard_basis(
    ideal: Ideal,
    order: TermOrder = LOCAL_DEGREVLEX,
    budget: int = DEFAULT_BUDGET,
    use_criteria: bool = True,
) -> StandardBasis:
    """Standard basis for a local order: leading terms generate the
    leading ideal of the localization at the origin."""
    if not order.is_local:
        raise ValueError("mora_standard_basis requires a local order")
    if not ideal.generators:
        return StandardBasis(order, (), False, True, ideal.ring)
    raw = _basis_loop(ideal.generators, order, budget, use_criteria, local=True)
    minimal = _minimalize(raw, order)
    minimal.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return StandardBasis(order, tuple(minimal), False, True, ideal.ring)


def staircase(basis: StandardBasis) -> Staircase:
    """Standard monomials (not divisible by any leading monomial)."""
    leads = _minimal_monomials(basis.leading_monomials())
    nvars = len(basis.ring)
    if not leads:
        if nvars == 0:
            return Staircase((), ((),))
        return Staircase((), None)
    # finite iff every variable carries a pure power in the leading ideal
    for i in range(nvars):
        if not any(all(e == 0 for k, e in enumerate(m) if k != i) for m in leads):
            return Staircase(tuple(leads), None)
    root = (0,) * nvars
    if any(mono_divides(m, root) for m in leads):
        return Staircase(tuple(leads), ())  # unit ideal
    seen = {root}
    queue = [root]
    out = []
    while queue:
        m = queue.pop()
        out.append(m)
        if len(out) > _STAIRCASE_CAP:
            raise BudgetExceeded("staircase enumeration cap exceeded")
        for i in range(nvars):
            child = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if child in seen:
                continue
            seen.add(child)
            if not any(mono_divides(l, child) for l in leads):
                queue.append(child)
    out.sort(key=lambda m: (sum(m), tuple(-e for e in m)))
    return Staircase(tuple(leads), tuple(out))


def _minimal_monomials(monos: Sequence[Monomial]) -> List[Monomial]:
    out = []
    for i, m in enumerate(monos):
        redundant = False
        for j, other in enumerate(monos):
            if i == j:
                continue
            if mono_divides(other, m) and (other != m or j < i):
                redundant = True
                break
        if not redundant:
            out.append(m)
    return sorted(set(out))


def quotient_dimension(basis: StandardBasis) -> Optional[int]:
    """Vector-space dimension of ring/ideal (None = infinite)."""
    return staircase(basis).dimension


def m_primary_dimension_at_origin(ideal: Ideal, budget: int = DEFAULT_BUDGET) -> Optional[int]:
    """Dimension of the localization at the origin, via a local standard
    basis (None = infinite, i.e. the origin is not an isolated point)."""
    basis = mora_standard_basis(ideal, LOCAL_DEGREVLEX, budget)
    return quotient_dimension(basis)
