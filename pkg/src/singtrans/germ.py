"""Per-germ analysis of isolated hypersurface singularities.

Computes Milnor and Tyurina numbers through local (Mora) and global
staircases, detects weighted homogeneity in the given coordinates,
evaluates the Milnor-Orlik product, splits off the nondegenerate
quadratic part, and classifies simple (ADE) germs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .groebner import (
    DEFAULT_BUDGET,
    Ideal,
    buchberger,
    m_primary_dimension_at_origin,
    mora_standard_basis,
    quotient_dimension,
    staircase,
)
from .poly import (
    DEGREVLEX,
    LOCAL_DEGREVLEX,
    Monomial,
    MultiPoly,
    TermOrder,
    mono_str,
    uni_degree,
    uni_derivative,
    uni_gcd,
    uni_normalize,
)


class NotSingular(ValueError):
    """The germ is smooth at the origin (or does not pass through it)."""


class NonIsolated(ValueError):
    """The singular point is not isolated (infinite local dimension)."""


@dataclass(frozen=True)
class SingularityType:
    """ADE type, or one of the non-simple verdicts.

    kind is "A", "D", "E" (with index), or "NonSimple" / "NotSingular" /
    "NonIsolated".  NonSimple carries the (mu, tau, corank) triple.
    """

    kind: str
    index: Optional[int] = None
    mu: Optional[int] = None
    tau: Optional[int] = None
    corank: Optional[int] = None

    @staticmethod
    def A(n: int) -> "SingularityType":
        if n < 1:
            raise ValueError("A-index must be >= 1")
        return SingularityType("A", n)

    @staticmethod
    def D(n: int) -> "SingularityType":
        if n < 4:
            raise ValueError("D-index must be >= 4")
        return SingularityType("D", n)

    @staticmethod
    def E(n: int) -> "SingularityType":
        if n not in (6, 7, 8):
            raise ValueError("E-index must be 6, 7 or 8")
        return SingularityType("E", n)

    @staticmethod
    def non_simple(mu, tau, corank) -> "SingularityType":
        return SingularityType("NonSimple", None, mu, tau, corank)

    @staticmethod
    def not_singular() -> "SingularityType":
        return SingularityType("NotSingular")

    @staticmethod
    def non_isolated() -> "SingularityType":
        return SingularityType("NonIsolated")

    @property
    def is_ade(self) -> bool:
        return self.kind in ("A", "D", "E")

    @property
    def label(self) -> str:
        if self.is_ade:
            return f"{self.kind}{self.index}"
        return self.kind

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class GermReport:
    mu_local: Optional[int]
    mu_global: Optional[int]
    tau: Optional[int]
    corank: Optional[int]
    weights: Optional[Dict[str, Fraction]]
    type: SingularityType
    t1_basis: Tuple[str, ...]

    def to_json_dict(self) -> dict:
        out: dict = {
            "mu_local": self.mu_local,
            "mu_global": self.mu_global,
            "tau": self.tau,
            "corank": self.corank,
            "type": self.type.label,
            "t1_basis": list(self.t1_basis),
        }
        if self.weights is not None:
            out["weights"] = {v: str(w) for v, w in self.weights.items()}
        return out


def jacobian_ideal(f: MultiPoly) -> Ideal:
    """Ideal of all first partials (zero partials dropped)."""
    return Ideal(f.ring, [f.partial(v) for v in f.ring])


def _gradient_at_origin(f: MultiPoly):
    return [f.partial(v).constant_term() for v in f.ring]


def _require_singular(f: MultiPoly):
    if f.constant_term() != 0:
        raise NotSingular("germ does not vanish at the origin")
    if any(c != 0 for c in _gradient_at_origin(f)):
        raise NotSingular("gradient does not vanish at the origin")


def milnor_number(f: MultiPoly, budget: int = DEFAULT_BUDGET) -> Tuple[int, Optional[int]]:
    """(local Milnor number at the origin, global Jacobian-quotient
    dimension or None when infinite)."""
    _require_singular(f)
    jac = jacobian_ideal(f)
    local = m_primary_dimension_at_origin(jac, budget)
    if local is None:
        raise NonIsolated("Jacobian quotient is infinite at the origin")
    global_dim = quotient_dimension(buchberger(jac, DEGREVLEX, budget))
    return local, global_dim


def detect_weighted_homogeneous(f: MultiPoly) -> Optional[Dict[str, Fraction]]:
    """Positive rational weights giving every monomial of f weighted degree
    one, solved in the given coordinates; None if no positive solution.

    Underdetermined systems are completed by pinning free weights to 1/2
    (the bound available to any germ in the square of the maximal ideal).
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    rows = [list(m) for m in f.terms]
    rhs = [Fraction(1)] * len(rows)
    solved = linalg.solve_affine(rows, rhs)
    if solved is None:
        return None
    particular, nullspace = solved
    weights = list(particular)
    if nullspace:
        # pin the free coordinates to 1/2, then re-solve exactly
        pivot_cols = set()
        reduced, pivots = linalg.row_reduce([row + [r] for row, r in zip(rows, rhs)])
        pivot_cols = set(pivots)
        free_cols = [i for i in range(len(f.ring)) if i not in pivot_cols]
        extra_rows = []
        extra_rhs = []
        for i in free_cols:
            row = [Fraction(0)] * len(f.ring)
            row[i] = Fraction(1)
            extra_rows.append(row)
            extra_rhs.append(Fraction(1, 2))
        solved = linalg.solve_affine(rows + extra_rows, rhs + extra_rhs)
        if solved is None:
            return None
        weights = solved[0]
    if any(w <= 0 for w in weights):
        return None
    return {v: w for v, w in zip(f.ring, weights)}


def milnor_orlik(weights: Sequence[Fraction]) -> int:
    """Product of (1/w - 1) over the weights; the Milnor number of a
    weighted homogeneous germ with an isolated critical point."""
    product = Fraction(1)
    for w in weights:
        w = Fraction(w)
        if not 0 < w <= 1:
            raise ValueError(f"weight {w} outside (0, 1]")
        product *= Fraction(1) / w - 1
    if product.denominator != 1 or product < 0:
        raise ValueError(f"Milnor-Orlik product {product} is not a natural number")
    return int(product)


def hessian_matrix(f: MultiPoly) -> List[List[Fraction]]:
    """Matrix of second partials at the origin."""
    n = len(f.ring)
    h = [[Fraction(0)] * n for _ in range(n)]
    for m, c in f.terms.items():
        if sum(m) != 2:
            continue
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            i = support[0]
            h[i][i] += 2 * c
        else:
            i, j = support
            h[i][j] += c
            h[j][i] += c
    return h


def hessian_corank(f: MultiPoly) -> int:
    _require_singular(f)
    return len(f.ring) - linalg.rank(hessian_matrix(f))


def _diagonalize_quadratic(f: MultiPoly) -> Tuple[MultiPoly, List[str], List[str]]:
    """Linear change of coordinates making the quadratic part diagonal.

    Returns (transformed polynomial, square variables, kernel variables);
    the congruence transform is built by symmetric Gaussian elimination
    over Q, so the result is exact.
    """
    n = len(f.ring)
    h = hessian_matrix(f)
    # p: accumulated change of basis, x_old = p * x_new
    p = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]

    def apply_col(ops):
        # ops: list of (target, source, factor): col_t += factor * col_s
        for t, s, factor in ops:
            for r in range(n):
                h[r][t] += factor * h[r][s]
            for r in range(n):
                h[t][r] += factor * h[s][r]
            for r in range(n):
                p[r][t] += factor * p[r][s]

    done = []
    remaining = list(range(n))
    while remaining:
        pivot = next((i for i in remaining if h[i][i] != 0), None)
        if pivot is None:
            pair = next(
                (
                    (i, j)
                    for i in remaining
                    for j in remaining
                    if i != j and h[i][j] != 0
                ),
                None,
            )
            if pair is None:
                break  # quadratic part vanished on the remaining block
            i, j = pair
            apply_col([(i, j, Fraction(1))])
            continue
        for other in remaining:
            if other != pivot and h[pivot][other] != 0:
                apply_col([(other, pivot, -h[pivot][other] / h[pivot][pivot])])
        done.append(pivot)
        remaining.remove(pivot)
    # substitute x_i -> sum_j p[i][j] * u_j, reusing the original names
    images = {}
    ring = f.ring
    for i, name in enumerate(ring):
        img = MultiPoly.zero(ring)
        for j in range(n):
            if p[i][j]:
                img = img + MultiPoly.variable(ring, ring[j]) * p[i][j]
        images[name] = img
    transformed = f.substitute(images)
    square_vars = [ring[i] for i in done]
    kernel_vars = [ring[i] for i in range(n) if i not in done]
    return transformed, square_vars, kernel_vars


def split_residual(
    f: MultiPoly, jet_degree: Optional[int] = None, mu_local: Optional[int] = None
) -> MultiPoly:
    """Residual germ in the Hessian-kernel variables after splitting off
    the nondegenerate quadratic part (truncated at jet_degree).

    The quadratic part is diagonalised by an exact linear change; the
    square directions are then eliminated by solving the corresponding
    partials with a frozen-Jacobian Newton iteration on jets.  The
    residual has vanishing 2-jet and the same local Milnor number.
    """
    _require_singular(f)
    if mu_local is None:
        mu_local, _ = milnor_number(f)
    corank = hessian_corank(f)
    if corank > 2:
        raise ValueError("split_residual supports corank <= 2 only")
    if jet_degree is None:
        jet_degree = mu_local + 2
    if jet_degree < mu_local + 2:
        raise ValueError("jet_degree must be at least mu + 2")
    g, square_vars, kernel_vars = _diagonalize_quadratic(f)
    g = g.truncate(jet_degree)
    ring = f.ring
    # frozen-Jacobian Newton: u <- u - D^-1 grad_u g(u(v), v); each pass
    # raises the order of the defect by at least one
    d_inv = {}
    for v in square_vars:
        coeff = g.partial(v).partial(v).constant_term()
        assert coeff != 0
        d_inv[v] = Fraction(1) / coeff
    subs: Dict[str, MultiPoly] = {v: MultiPoly.zero(ring) for v in square_vars}
    for _ in range(jet_degree + 1):
        grads = {}
        stable = True
        for v in square_vars:
            grad = g.partial(v).substitute(subs).truncate(jet_degree)
            if not grad.is_zero():
                stable = False
            grads[v] = grad
        if stable:
            break
        for v in square_vars:
            subs[v] = (subs[v] - grads[v] * d_inv[v]).truncate(jet_degree)
    residual = g.substitute(subs).truncate(jet_degree)
    if any(v in residual.variables_used() for v in square_vars):
        raise RuntimeError("splitting did not converge within the jet bound")
    residual_small = residual.embed(tuple(kernel_vars)) if kernel_vars else MultiPoly.zero(())
    if residual_small.truncate(2) != MultiPoly.zero(residual_small.ring):
        raise RuntimeError("residual has a nonzero 2-jet")
    if kernel_vars:
        res_mu = m_primary_dimension_at_origin(jacobian_ideal(residual_small))
        if res_mu != mu_local:
            raise RuntimeError(
                f"splitting lost the Milnor number ({res_mu} != {mu_local}); "
                "increase jet_degree"
            )
    return residual_small


def _binary_cubic_profile(cubic: MultiPoly) -> List[int]:
    """Multiplicity profile of the linear factors of a binary cubic over
    the algebraic closure, e.g. [1,1,1], [2,1] or [3].  Exact, via gcds
    of the dehomogenisation (the factor at infinity is tracked by the
    degree drop)."""
    y, z = cubic.ring
    coeffs = [Fraction(0)] * 4  # coefficient of y^i z^(3-i)
    for m, c in cubic.terms.items():
        if sum(m) != 3:
            raise ValueError("not a cubic form")
        coeffs[m[0]] = c
    p = uni_normalize(coeffs)  # cubic(y, 1) as polynomial in y
    if not p:
        raise ValueError("zero cubic form")
    mult_inf = 3 - uni_degree(p)
    profile = [mult_inf] if mult_inf else []
    if uni_degree(p) >= 1:
        g = uni_gcd(p, uni_derivative(p))
        repeated = uni_degree(g)  # degree drop to the squarefree part
        distinct = uni_degree(p) - repeated
        if repeated == 0:
            profile += [1] * distinct
        elif repeated == 1:
            profile += [2] + [1] * (distinct - 1)
        else:  # repeated == 2 for a cubic: triple root
            profile += [3]
    return sorted(profile, reverse=True)


def _t1_staircase(f: MultiPoly, weights, budget: int):
    """Global staircase of (f) + J_f under a weighted order matching the
    germ's own weights when available (plain degrevlex otherwise)."""
    ideal = Ideal(f.ring, [f] + [f.partial(v) for v in f.ring])
    if weights is not None:
        order = TermOrder("weighted", [weights[v] for v in f.ring])
    else:
        order = DEGREVLEX
    basis = buchberger(ideal, order, budget)
    return staircase(basis), ideal


def tyurina_number(f: MultiPoly, budget: int = DEFAULT_BUDGET) -> Tuple[int, Tuple[str, ...]]:
    """(Tyurina number at the origin, monomial basis of the Tyurina algebra).

    The dimension is always the local one; the printed basis comes from
    the global staircase whenever the global and local dimensions agree
    (they do for every germ whose hypersurface is singular only at the
    origin), and from the local staircase otherwise.
    """
    _require_singular(f)
    weights = detect_weighted_homogeneous(f)
    ideal = Ideal(f.ring, [f] + [f.partial(v) for v in f.ring])
    tau = m_primary_dimension_at_origin(ideal, budget)
    if tau is None:
        raise NonIsolated("Tyurina quotient is infinite at the origin")
    sc, _ = _t1_staircase(f, weights, budget)
    if sc.dimension == tau:
        monos = sc.standard
    else:
        local = staircase(mora_standard_basis(ideal, LOCAL_DEGREVLEX, budget))
        monos = local.standard
    assert monos is not None
    return tau, tuple(mono_str(m, f.ring) for m in monos)


def classify_simple(f: MultiPoly, budget: int = DEFAULT_BUDGET) -> GermReport:
    """Full report with ADE classification of the germ at the origin."""
    empty: Tuple[str, ...] = ()
    if f.constant_term() != 0 or any(c != 0 for c in _gradient_at_origin(f)):
        return GermReport(None, None, None, None, None, SingularityType.not_singular(), empty)
    try:
        mu_local, mu_global = milnor_number(f, budget)
    except NonIsolated:
        return GermReport(None, None, None, None, None, SingularityType.non_isolated(), empty)
    tau, t1 = tyurina_number(f, budget)
    corank = hessian_corank(f)
    weights = detect_weighted_homogeneous(f)
    if weights is not None and milnor_orlik([weights[v] for v in f.ring]) != mu_local:
        # positive weights exist but the germ is not isolated-w.h. in
        # these coordinates; do not report them
        weights = None

    def report(tp: SingularityType) -> GermReport:
        return GermReport(mu_local, mu_global, tau, corank, weights, tp, t1)

    if tau != mu_local:
        return report(SingularityType.non_simple(mu_local, tau, corank))
    if corank == 0:
        assert mu_local == 1
        return report(SingularityType.A(1))
    if corank == 1:
        return report(SingularityType.A(mu_local))
    if corank >= 3:
        return report(SingularityType.non_simple(mu_local, tau, corank))
    residual = split_residual(f, mu_local=mu_local)
    cubic = residual.homogeneous_part(3)
    if cubic.is_zero():
        return report(SingularityType.non_simple(mu_local, tau, corank))
    profile = _binary_cubic_profile(cubic)
    if profile == [1, 1, 1]:
        if mu_local == 4:
            return report(SingularityType.D(4))
        return report(SingularityType.non_simple(mu_local, tau, corank))
    if profile == [2, 1]:
        if mu_local >= 4:
            return report(SingularityType.D(mu_local))
        return report(SingularityType.non_simple(mu_local, tau, corank))
    # perfect cube
    if mu_local in (6, 7, 8):
        return report(SingularityType.E(mu_local))
    return report(SingularityType.non_simple(mu_local, tau, corank))


def du_val_section_type(
    f: MultiPoly, hyperplane: MultiPoly, budget: int = DEFAULT_BUDGET
) -> SingularityType:
    """Type of the germ cut by a hyperplane through the origin.

    The hyperplane is a nonzero linear form; one variable is eliminated
    exactly and the restricted germ is classified in the remaining ones.
    """
    if hyperplane.ring != f.ring:
        raise ValueError("ring mismatch")
    if hyperplane.is_zero() or hyperplane.total_degree() != 1 or hyperplane.constant_term() != 0:
        raise ValueError("hyperplane must be a nonzero linear form through the origin")
    coeffs = {v: hyperplane.coefficient(tuple(1 if u == v else 0 for u in f.ring)) for v in f.ring}
    pivot = next(v for v in reversed(f.ring) if coeffs[v] != 0)
    image = MultiPoly.zero(f.ring)
    for v in f.ring:
        if v == pivot or coeffs[v] == 0:
            continue
        image = image - MultiPoly.variable(f.ring, v) * (coeffs[v] / coeffs[pivot])
    restricted = f.substitute({pivot: image})
    small_ring = tuple(v for v in f.ring if v != pivot)
    restricted = restricted.embed(small_ring)
    return classify_simple(restricted, budget).type


def least_index_estimate(
    f: MultiPoly,
    extra_sections: Sequence[MultiPoly] = (),
    trials: int = 64,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Upper bound for the least ADE index over hyperplane sections.

    Scans the coordinate hyperplanes, any user-supplied sections and
    `trials` seeded random rational hyperplanes; sections whose germ is
    not an isolated ADE point are skipped.
    """
    ring = f.ring
    rng = random.Random(seed)
    candidates: List[MultiPoly] = [MultiPoly.variable(ring, v) for v in ring]
    candidates.extend(extra_sections)
    for _ in range(trials):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in ring]
        if all(c == 0 for c in coeffs):
            coeffs[0] = Fraction(1)
        h = MultiPoly.zero(ring)
        for v, c in zip(ring, coeffs):
            h = h + MultiPoly.variable(ring, v) * c
        candidates.append(h)
    best: Optional[int] = None
    for h in candidates:
        try:
            tp = du_val_section_type(f, h, budget)
        except (NotSingular, NonIsolated, ValueError):
            continue
        if tp.is_ade:
            idx = tp.index
            assert idx is not None
            if best is None or idx < best:
                best = idx
                if best == 1:
                    break
    if best is None:
        raise ValueError("no hyperplane section produced an isolated ADE germ")
    return best
