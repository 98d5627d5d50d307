"""Deformations of the five simple threefold families A_n, D_n, E6, E7, E8.

Each family couples its defining germ F(x,y,z,t) with the monomial basis
of its first-order deformation space T^1.  For a deformation vector
L = (lambda_i), the deformed germ F_L acquires singular points p_L whose
(y, z) coordinates solve the jacobian system; membership of L in the
locus keeping p_L on the hypersurface (the "L locus") and in the loci
producing worse-than-node points (the "V loci") is decided by exact
polynomial conditions.  Fixing the point first turns every such
condition into a linear (or single-variable polynomial) constraint on
the lambda's, which is how the samplers construct explicit rational
deformations realising each adjacency verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .germ import SingularityType, classify_simple
from .groebner import DEFAULT_BUDGET, Ideal, buchberger
from .poly import (
    LEX,
    Monomial,
    MultiPoly,
    mono_str,
    uni_degree,
    uni_derivative,
    uni_gcd,
    uni_normalize,
    uni_rational_roots,
)

FAMILY_RING = ("x", "y", "z", "t")


class DegenerateDeformation(ValueError):
    """The deformed germ has a positive-dimensional critical locus."""


class InconsistentLocus(ValueError):
    """The requested locus constraints admit no (rational) solution."""


def _var(ring, name):
    return MultiPoly.variable(ring, name)


@dataclass(frozen=True)
class ADEFamily:
    kind: str  # "A", "D", "E"
    index: int
    lambda_names: Tuple[str, ...]
    t1_monomials: Tuple[Monomial, ...]  # in FAMILY_RING, printed order
    point_vars: Tuple[str, ...]  # ("z",) for A, ("y", "z") otherwise

    @property
    def label(self) -> str:
        return f"{self.kind}{self.index}"

    @property
    def dim_t1(self) -> int:
        return len(self.lambda_names)

    @property
    def sym_ring(self) -> Tuple[str, ...]:
        return self.point_vars + self.lambda_names

    def defining_polynomial(self) -> MultiPoly:
        R = FAMILY_RING
        x, y, z, t = (_var(R, v) for v in R)
        n = self.index
        if self.kind == "A":
            return x**2 + y**2 + z ** (n + 1) + t**2
        if self.kind == "D":
            return x**2 + y**2 * z + z ** (n - 1) + t**2
        if n == 6:
            return x**2 + y**3 + z**4 + t**2
        if n == 7:
            return x**2 + y**3 + y * z**3 + t**2
        return x**2 + y**3 + z**5 + t**2

    def t1_basis_strings(self) -> Tuple[str, ...]:
        return tuple(mono_str(m, FAMILY_RING) for m in self.t1_monomials)

    # -- symbolic data in sym_ring --------------------------------------

    def _sym(self, name: str) -> MultiPoly:
        return _var(self.sym_ring, name)

    def _lam(self, i) -> MultiPoly:
        return self._sym(self.lambda_names[i] if isinstance(i, int) else i)

    def critical_polys(self) -> Tuple[MultiPoly, ...]:
        """Jacobian conditions on the point coordinates, lambda symbolic.

        Derived from the partials of F_L in the point directions with
        x = t = 0; for A-families the y-partial forces y = 0 and only
        the z-condition remains.
        """
        big = FAMILY_RING + self.lambda_names
        f_l = self.defining_polynomial().embed(big)
        for name, mono in zip(self.lambda_names, self.t1_monomials):
            f_l = f_l + _var(big, name) * MultiPoly.monomial(FAMILY_RING, mono).embed(big)
        zero = {v: Fraction(0) for v in ("x", "t")}
        if self.kind == "A":
            zero["y"] = Fraction(0)
            polys = [f_l.partial("z")]
        else:
            polys = [f_l.partial("y"), f_l.partial("z")]
        return tuple(p.substitute({k: MultiPoly.constant(big, v) for k, v in zero.items()}).embed(self.sym_ring) for p in polys)

    def on_hypersurface_poly(self) -> MultiPoly:
        """F_L evaluated at the symbolic critical point: vanishing says the
        singular point actually lies on the deformed hypersurface."""
        big = FAMILY_RING + self.lambda_names
        f_l = self.defining_polynomial().embed(big)
        for name, mono in zip(self.lambda_names, self.t1_monomials):
            f_l = f_l + _var(big, name) * MultiPoly.monomial(FAMILY_RING, mono).embed(big)
        zero = {v: MultiPoly.constant(big, 0) for v in ("x", "t")}
        if self.kind == "A":
            zero["y"] = MultiPoly.constant(big, 0)
        return f_l.substitute(zero).embed(self.sym_ring)

    def nu_polys(self) -> Dict[int, MultiPoly]:
        """The printed degeneracy expressions nu_k (coefficients of the
        quadratic-and-higher monomials of the translated germ)."""
        S = self.sym_ring
        z = self._sym("z")
        n = self.index
        out: Dict[int, MultiPoly] = {}
        if self.kind == "A":
            for k in range(2, n):
                expr = MultiPoly.constant(S, comb(n + 1, k)) * z ** (n + 1 - k)
                for i in range(k, n):
                    expr = expr + self._lam(f"l{i}") * comb(i, k) * z ** (i - k)
                out[k] = expr
            if n >= 2:
                out[n] = z
            return out
        y = self._sym("y")
        if self.kind == "D":
            out[1] = 2 * y
            for k in range(2, n - 1):
                expr = MultiPoly.constant(S, comb(n - 1, k)) * z ** (n - 1 - k)
                for i in range(k, n - 1):
                    expr = expr + self._lam(f"l{i}") * comb(i, k) * z ** (i - k)
                out[k] = expr
            out[n - 1] = z
            return out
        l = [self._lam(f"l{i}") for i in range(self.dim_t1)]
        if self.index == 6:
            out[1] = l[3] + 2 * l[5] * z
            out[2] = 6 * z**2 + l[4] + l[5] * y
            out[3] = 3 * y
            out[4] = 4 * z
            out[5] = l[5]
        elif self.index == 7:
            out[1] = 3 * z**2 + l[3]
            out[2] = 3 * y * z + l[4] + 3 * l[5] * z + 6 * l[6] * z**2
            out[3] = 3 * y
            out[4] = 3 * z
            out[5] = l[5] + 4 * l[6] * z + y
            out[6] = l[6]
        else:
            out[1] = l[3] + 2 * l[5] * z + 3 * l[7] * z**2
            out[2] = 10 * z**3 + l[4] + l[5] * y + 3 * l[6] * z + 3 * l[7] * y * z
            out[3] = 3 * y
            out[4] = l[5] + 3 * l[7] * z
            out[5] = 10 * z**2 + l[6] + l[7] * y
            out[6] = l[7]
            out[7] = 5 * z
        return out

    def vprime_poly(self) -> Optional[MultiPoly]:
        n = self.index
        nu = self.nu_polys()
        if self.kind == "A":
            return None
        if self.kind == "D":
            # printed form; equals (nu_1^2 - 4 nu_2 nu_{n-1}) / 4
            S = self.sym_ring
            y, z = self._sym("y"), self._sym("z")
            expr = y**2 - MultiPoly.constant(S, comb(n - 1, 2)) * z ** (n - 2)
            for i in range(2, n - 1):
                expr = expr - self._lam(f"l{i}") * comb(i, 2) * z ** (i - 1)
            return expr
        if n == 6:
            return nu[5] ** 2 - 4 * nu[3]
        if n == 7:
            return nu[4] ** 2 - 4 * nu[3] * nu[6]
        return nu[4] ** 2 - 4 * nu[3] * nu[7]

    def vsecond_poly(self) -> Optional[MultiPoly]:
        if self.kind in ("A", "D"):
            return None
        nu = self.nu_polys()
        if self.index == 6:
            return 27 * nu[4] ** 2 + 4 * nu[5] ** 3
        return 27 * nu[5] ** 2 + 4 * nu[4] ** 3

    def worse_than_node_poly(self) -> Optional[MultiPoly]:
        """Degenerate-quadratic condition for the E families (their V locus);
        A and D families have reducible V loci handled separately."""
        if self.kind != "E":
            return None
        nu = self.nu_polys()
        return nu[1] ** 2 - 4 * nu[2] * nu[3]

    def translated_coefficients(self) -> Dict[Monomial, MultiPoly]:
        """Monomial -> symbolic coefficient of the germ translated to the
        critical point, beyond F itself and the linear/constant residuals.
        Used to cross-check the printed nu formulas against the generic
        Taylor expansion."""
        nu = self.nu_polys()
        n = self.index

        def mono(name_exps: Dict[str, int]) -> Monomial:
            return tuple(name_exps.get(v, 0) for v in FAMILY_RING)

        out: Dict[Monomial, MultiPoly] = {}
        if self.kind == "A":
            for k in range(2, n):
                out[mono({"z": k})] = nu[k]
            if n >= 2:
                out[mono({"z": n})] = (n + 1) * self._sym("z")
            return out
        if self.kind == "D":
            out[mono({"y": 1, "z": 1})] = nu[1]
            for k in range(2, n - 1):
                out[mono({"z": k})] = nu[k]
            out[mono({"y": 2})] = nu[n - 1]
            return out
        out[mono({"y": 1, "z": 1})] = nu[1]
        out[mono({"y": 2})] = nu[3]
        out[mono({"z": 2})] = nu[2]
        if self.index == 6:
            out[mono({"z": 3})] = nu[4]
            out[mono({"y": 1, "z": 2})] = nu[5]
        elif self.index == 7:
            out[mono({"y": 1, "z": 2})] = nu[4]
            out[mono({"z": 3})] = nu[5]
            out[mono({"z": 4})] = nu[6]
        else:
            out[mono({"y": 1, "z": 2})] = nu[4]
            out[mono({"z": 3})] = nu[5]
            out[mono({"y": 1, "z": 3})] = nu[6]
            out[mono({"z": 4})] = nu[7]
        return out

    def locus_names(self) -> Tuple[str, ...]:
        names = [f"V{k}" for k in sorted(self.nu_polys())]
        if self.vprime_poly() is not None:
            names.append("Vprime")
        if self.vsecond_poly() is not None:
            names.append("Vsecond")
        return tuple(names)

    def locus_poly(self, name: str) -> MultiPoly:
        if name.startswith("V") and name[1:].isdigit():
            k = int(name[1:])
            nu = self.nu_polys()
            if k in nu:
                return nu[k]
            raise ValueError(f"{self.label} has no locus {name}")
        if name == "Vprime":
            p = self.vprime_poly()
        elif name == "Vsecond":
            p = self.vsecond_poly()
        else:
            raise ValueError(f"unknown locus name {name!r}")
        if p is None:
            raise ValueError(f"{self.label} has no locus {name}")
        return p


def make_family(kind: str, index: Optional[int] = None) -> ADEFamily:
    kind = kind.upper()
    if kind in ("E6", "E7", "E8") and index is None:
        index = int(kind[1])
        kind = "E"
    if index is None:
        raise ValueError("family index required")
    R = FAMILY_RING

    def mono(name_exps: Dict[str, int]) -> Monomial:
        return tuple(name_exps.get(v, 0) for v in R)

    if kind == "A":
        if index < 1:
            raise ValueError("A-family needs index >= 1")
        monos = [mono({"z": i}) for i in range(index)]
        names = tuple(f"l{i}" for i in range(index))
        return ADEFamily("A", index, names, tuple(monos), ("z",))
    if kind == "D":
        if index < 4:
            raise ValueError("D-family needs index >= 4")
        monos = [mono({}), mono({"y": 1})] + [mono({"z": i}) for i in range(1, index - 1)]
        names = ("l0", "l") + tuple(f"l{i}" for i in range(1, index - 1))
        return ADEFamily("D", index, names, tuple(monos), ("y", "z"))
    if kind == "E":
        if index not in (6, 7, 8):
            raise ValueError("E-family needs index 6, 7 or 8")
        if index == 6:
            monos = [mono({}), mono({"y": 1}), mono({"z": 1}), mono({"y": 1, "z": 1}),
                     mono({"z": 2}), mono({"y": 1, "z": 2})]
        elif index == 7:
            monos = [mono({}), mono({"y": 1}), mono({"z": 1}), mono({"y": 1, "z": 1}),
                     mono({"z": 2}), mono({"z": 3}), mono({"z": 4})]
        else:
            monos = [mono({}), mono({"y": 1}), mono({"z": 1}), mono({"y": 1, "z": 1}),
                     mono({"z": 2}), mono({"y": 1, "z": 2}), mono({"z": 3}),
                     mono({"y": 1, "z": 3})]
        names = tuple(f"l{i}" for i in range(len(monos)))
        return ADEFamily("E", index, names, tuple(monos), ("y", "z"))
    raise ValueError(f"unknown family kind {kind!r}")


@dataclass(frozen=True)
class DeformationVector:
    family: ADEFamily
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.family.dim_t1:
            raise ValueError(
                f"{self.family.label} needs {self.family.dim_t1} coordinates, "
                f"got {len(self.values)}"
            )
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def as_mapping(self) -> Dict[str, Fraction]:
        return dict(zip(self.family.lambda_names, self.values))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def __str__(self):
        pairs = ", ".join(f"{n}={v}" for n, v in zip(self.family.lambda_names, self.values))
        return f"({pairs})"


def build_deformed(family: ADEFamily, lam: DeformationVector) -> MultiPoly:
    """F plus the linear combination of T^1 basis monomials."""
    f = family.defining_polynomial()
    for mono, v in zip(family.t1_monomials, lam.values):
        if v:
            f = f + MultiPoly.monomial(FAMILY_RING, mono, v)
    return f


def _eval_sym(family: ADEFamily, poly: MultiPoly, lam: DeformationVector, point) -> Fraction:
    assignment = dict(zip(family.point_vars, point))
    assignment.update(lam.as_mapping())
    return poly.evaluate(assignment)


def critical_system(family: ADEFamily, lam: DeformationVector) -> List[MultiPoly]:
    """The jacobian conditions at a symbolic point, lambda substituted."""
    out = []
    values = {name: MultiPoly.constant(family.sym_ring, v) for name, v in lam.as_mapping().items()}
    for p in family.critical_polys():
        out.append(p.substitute(values).embed(family.point_vars))
    return out


def _poly_coeff_list(p: MultiPoly, var: str) -> List[Fraction]:
    """Dense univariate coefficients; p must involve only `var`."""
    used = set(p.variables_used())
    if not used <= {var}:
        raise ValueError(f"{p} is not univariate in {var}")
    i = p.ring.index(var)
    out = [Fraction(0)] * (p.total_degree() + 1 if not p.is_zero() else 1)
    for m, c in p.terms.items():
        out[m[i]] += c
    return uni_normalize(out)


def _count_rational_vs_all(poly_list: List[Fraction]) -> Tuple[List[Fraction], bool]:
    roots = uni_rational_roots(poly_list)
    g = uni_gcd(poly_list, uni_derivative(poly_list)) if uni_degree(poly_list) >= 1 else []
    squarefree_deg = uni_degree(poly_list) - (uni_degree(g) if g else 0)
    return roots, squarefree_deg > len(roots)


@dataclass(frozen=True)
class CriticalPoint:
    coordinates: Tuple[Fraction, ...]  # matches family.point_vars

    def full_coordinates(self, family: ADEFamily) -> Tuple[Fraction, ...]:
        if family.kind == "A":
            return (Fraction(0), Fraction(0), self.coordinates[0], Fraction(0))
        return (Fraction(0), self.coordinates[0], self.coordinates[1], Fraction(0))


def rational_critical_points(
    family: ADEFamily, lam: DeformationVector, budget: int = DEFAULT_BUDGET
) -> Tuple[List[CriticalPoint], bool]:
    """All rational solutions of the jacobian system, plus a flag telling
    whether non-rational solutions exist as well."""
    system = critical_system(family, lam)
    if family.kind == "A":
        coeffs = _poly_coeff_list(system[0], "z")
        roots, irrational = _count_rational_vs_all(coeffs)
        return [CriticalPoint((r,)) for r in roots], irrational
    ring = family.point_vars  # ("y", "z"), lex with y > z eliminates y
    ideal = Ideal(ring, system)
    if not ideal.generators:
        raise DegenerateDeformation("critical system vanished identically")
    basis = buchberger(ideal, LEX, budget)
    elims = [g for g in basis.basis if set(g.variables_used()) <= {"z"}]
    if not elims:
        raise DegenerateDeformation("positive-dimensional critical locus")
    elim = _poly_coeff_list(elims[0], "z")
    for g in elims[1:]:
        elim = uni_gcd(elim, _poly_coeff_list(g, "z"))
    z_roots, irrational = _count_rational_vs_all(elim)
    points = []
    for z0 in z_roots:
        subs = [p.substitute({"z": MultiPoly.constant(ring, z0)}) for p in system]
        uni: Optional[List[Fraction]] = None
        all_zero = True
        for p in subs:
            if p.is_zero():
                continue
            all_zero = False
            coeffs = _poly_coeff_list(p, "y")
            uni = coeffs if uni is None else uni_gcd(uni, coeffs)
        if all_zero:
            raise DegenerateDeformation(f"critical locus contains the line z = {z0}")
        assert uni is not None
        if uni_degree(uni) < 1:
            continue  # no common y root above this z
        y_roots, irr_y = _count_rational_vs_all(uni)
        irrational = irrational or irr_y
        for y0 in y_roots:
            if all(_eval_sym(family, p, lam, (y0, z0)) == 0 for p in family.critical_polys()):
                points.append(CriticalPoint((y0, z0)))
    return points, irrational


@dataclass(frozen=True)
class LocusReport:
    in_L: bool
    nu: Dict[int, Fraction]
    in_V: bool
    in_Vprime: Optional[bool]
    in_Vsecond: Optional[bool]

    def satisfies(self, name: str) -> bool:
        if name.startswith("V") and name[1:].isdigit():
            return self.nu[int(name[1:])] == 0
        if name == "Vprime":
            return bool(self.in_Vprime)
        if name == "Vsecond":
            return bool(self.in_Vsecond)
        raise ValueError(f"unknown locus {name!r}")


def _check_critical(family: ADEFamily, lam: DeformationVector, point) -> None:
    point = tuple(Fraction(c) for c in point)
    if len(point) != len(family.point_vars):
        raise ValueError(f"point must have coordinates {family.point_vars}")
    for p in family.critical_polys():
        if _eval_sym(family, p, lam, point) != 0:
            raise ValueError("point does not satisfy the critical system")


def locus_membership(family: ADEFamily, lam: DeformationVector, point) -> LocusReport:
    """Exact locus membership of a critical point of the deformed germ."""
    point = tuple(Fraction(c) for c in point)
    _check_critical(family, lam, point)
    nu_vals = {k: _eval_sym(family, p, lam, point) for k, p in family.nu_polys().items()}
    in_l = _eval_sym(family, family.on_hypersurface_poly(), lam, point) == 0
    vp = family.vprime_poly()
    vs = family.vsecond_poly()
    in_vprime = None if vp is None else _eval_sym(family, vp, lam, point) == 0
    in_vsecond = None if vs is None else _eval_sym(family, vs, lam, point) == 0
    if family.kind == "A":
        in_v = any(v == 0 for v in nu_vals.values())
    elif family.kind == "D":
        in_v = (nu_vals[family.index - 1] == 0) or bool(in_vprime)
    else:
        w = family.worse_than_node_poly()
        assert w is not None
        in_v = _eval_sym(family, w, lam, point) == 0
    return LocusReport(in_l, nu_vals, in_v, in_vprime, in_vsecond)


def _random_fraction(rng: random.Random, nonzero=False) -> Fraction:
    while True:
        num = rng.randint(-12, 12)
        if nonzero and num == 0:
            continue
        return Fraction(num, rng.choice((1, 1, 2, 3)))


def solve_lambda_on_locus(
    family: ADEFamily,
    point,
    constraints: Sequence[str],
    free_values: Optional[Dict[str, Fraction]] = None,
    seed: int = 0,
    extra_equations: Sequence[MultiPoly] = (),
) -> DeformationVector:
    """Construct a deformation vector whose deformed germ has a singular
    point at `point` lying on the prescribed loci.

    With the point fixed, the critical system, the on-hypersurface
    condition and every nu_k = 0 constraint are affine-linear in the
    lambda's and are solved exactly; quadratic/cubic loci (Vprime,
    Vsecond) are resolved by rational root extraction when they involve
    a single lambda, and checked after the fact otherwise.  Remaining
    degrees of freedom are filled from free_values, then with seeded
    random rationals.
    """
    point = tuple(Fraction(c) for c in point)
    if len(point) != len(family.point_vars):
        raise ValueError(f"point must have coordinates {family.point_vars}")
    rng = random.Random(f"lambda-solver|{seed}")
    subs = {v: MultiPoly.constant(family.sym_ring, c) for v, c in zip(family.point_vars, point)}

    sym_polys: List[MultiPoly] = list(family.critical_polys())
    sym_polys.append(family.on_hypersurface_poly())
    deferred: List[Tuple[str, MultiPoly]] = []
    linear: List[MultiPoly] = []
    for p in sym_polys:
        linear.append(p.substitute(subs))
    for name in constraints:
        p = family.locus_poly(name).substitute(subs)
        used = p.variables_used()
        if p.total_degree() <= 1:
            linear.append(p)
        elif len(used) == 1:
            var = used[0]
            coeffs = _poly_coeff_list(p, var)
            roots = uni_rational_roots(coeffs)
            if not roots:
                raise InconsistentLocus(
                    f"locus {name} has no rational solution at point {point}"
                )
            root = sorted(roots, key=lambda r: (r == 0, r))[0]
            nonzero = [r for r in roots if r != 0]
            if nonzero:
                root = rng.choice(sorted(nonzero))
            linear.append(_var(family.sym_ring, var) - MultiPoly.constant(family.sym_ring, root))
            deferred.append((name, p))
        else:
            deferred.append((name, p))
    for p in extra_equations:
        q = p.substitute(subs)
        if q.total_degree() > 1:
            raise ValueError("extra equations must be affine-linear in the lambda's")
        linear.append(q)
    if free_values:
        for lname, val in free_values.items():
            linear.append(
                _var(family.sym_ring, lname) - MultiPoly.constant(family.sym_ring, Fraction(val))
            )

    names = family.lambda_names
    unit = {
        name: tuple(1 if v == name else 0 for v in family.sym_ring) for name in names
    }
    rows, rhs = [], []
    for p in linear:
        if p.total_degree() > 1:
            raise InconsistentLocus("constraint is not linear at the given point")
        if p.is_zero():
            continue
        row = [p.coefficient(unit[name]) for name in names]
        const = p.constant_term()
        if all(c == 0 for c in row):
            if const != 0:
                raise InconsistentLocus(
                    f"point {point} is incompatible with the requested loci"
                )
            continue
        rows.append(row)
        rhs.append(-const)
    solved = linalg.solve_affine(rows, rhs) if rows else ([Fraction(0)] * len(names), [])
    if solved is None:
        raise InconsistentLocus("no deformation satisfies the requested loci")
    particular, nullspace = solved
    if not rows:
        nullspace = [
            [Fraction(1) if i == j else Fraction(0) for j in range(len(names))]
            for i in range(len(names))
        ]
    values = list(particular)
    for vec in nullspace:
        t = _random_fraction(rng, nonzero=True)
        values = [v + t * w for v, w in zip(values, vec)]
    lam = DeformationVector(family, tuple(values))

    report = locus_membership(family, lam, point)
    if not report.in_L:
        raise InconsistentLocus("solver failed the on-hypersurface condition")
    for name, _ in deferred:
        if not report.satisfies(name):
            raise InconsistentLocus(f"locus {name} not satisfied at the solved deformation")
    for name in constraints:
        if not report.satisfies(name):
            raise InconsistentLocus(f"locus {name} not satisfied at the solved deformation")
    return lam


def deformation_type_at(
    family: ADEFamily, lam: DeformationVector, point, budget: int = DEFAULT_BUDGET
) -> SingularityType:
    """Translate the critical point to the origin and classify the germ."""
    point = tuple(Fraction(c) for c in point)
    _check_critical(family, lam, point)
    report = locus_membership(family, lam, point)
    if not report.in_L:
        raise ValueError("point is not on the deformed hypersurface")
    f_l = build_deformed(family, lam)
    shift: Dict[str, MultiPoly] = {}
    if family.kind == "A":
        (z0,) = point
        shift["z"] = _var(FAMILY_RING, "z") + z0
    else:
        y0, z0 = point
        shift["y"] = _var(FAMILY_RING, "y") + y0
        shift["z"] = _var(FAMILY_RING, "z") + z0
    translated = f_l.substitute(shift)
    return classify_simple(translated, budget).type


# ---------------------------------------------------------------------------
# Adjacency tables: the printed constraint rows of each family, with point
# samplers producing rational instances of "generic" members of each locus.
# ---------------------------------------------------------------------------


@dataclass
class AdjacencyRow:
    constraints: Tuple[str, ...]
    predicted: Optional[str]  # type label or None for observed-only rows
    sampler: "object"  # callable(rng) -> (point, extra_eqs, free_values)


@dataclass
class AdjacencyResult:
    constraints: Tuple[str, ...]
    predicted: Optional[str]
    observed: Optional[str]
    agree: Optional[bool]
    lam: Optional[DeformationVector]
    point: Optional[Tuple[Fraction, ...]]
    attempts: int
    note: str = ""

    def to_json_dict(self) -> dict:
        return {
            "constraints": list(self.constraints),
            "predicted": self.predicted,
            "observed": self.observed,
            "agree": self.agree,
            "lambda": None if self.lam is None else [str(v) for v in self.lam.values],
            "point": None if self.point is None else [str(c) for c in self.point],
            "attempts": self.attempts,
            "note": self.note,
        }


def _pt(rng, *vals):
    return tuple(Fraction(v) for v in vals)


def adjacency_rows(family: ADEFamily) -> List[AdjacencyRow]:
    n = family.index
    S = family.sym_ring
    rows: List[AdjacencyRow] = []

    def rnz(rng):
        return _random_fraction(rng, nonzero=True)

    if family.kind == "A":
        for m in range(2, n + 1):
            cons = tuple(f"V{k}" for k in range(2, m + 1))
            if m == n:
                rows.append(AdjacencyRow(cons, f"A{m}", lambda rng: ((Fraction(0),), (), None)))
            else:
                rows.append(
                    AdjacencyRow(cons, f"A{m}", lambda rng: ((rnz(rng),), (), None))
                )
        return rows

    if family.kind == "D":
        rows.append(
            AdjacencyRow(("Vprime",), "A2", lambda rng: ((rnz(rng), rnz(rng)), (), None))
        )
        rows.append(
            AdjacencyRow(
                ("V1", f"V{n - 1}"), "A3", lambda rng: ((Fraction(0), Fraction(0)), (), None)
            )
        )
        for l in range(3, n - 1):
            cons = tuple(f"V{k}" for k in range(1, l + 1))
            rows.append(
                AdjacencyRow(cons, f"A{l}", lambda rng: ((Fraction(0), rnz(rng)), (), None))
            )
        for m in range(4, n + 1):
            cons = tuple(f"V{k}" for k in range(1, m - 1)) + (f"V{n - 1}",)
            rows.append(
                AdjacencyRow(cons, f"D{m}", lambda rng: ((Fraction(0), Fraction(0)), (), None))
            )
        return rows

    # E families
    def lam_var(name):
        return _var(S, name)

    rows.append(AdjacencyRow(("V1", "V2"), "A2", lambda rng: ((rnz(rng), rnz(rng)), (), None)))
    rows.append(AdjacencyRow(("V1", "V3"), "A2", lambda rng: ((Fraction(0), rnz(rng)), (), None)))
    if n == 6:
        rows.append(
            AdjacencyRow(("V1", "V2", "V4"), "A3", lambda rng: ((rnz(rng), Fraction(0)), (), None))
        )
        # observed-only: one-dimensional locus through the A5 degenerations
        def e6_aprime(rng):
            s = rnz(rng)
            return ((3 * s**2, Fraction(0)), (), None)

        rows.append(AdjacencyRow(("V1", "V2", "V4", "Vprime"), None, e6_aprime))
        rows.append(
            AdjacencyRow(("V1", "V2", "V3"), "D4", lambda rng: ((Fraction(0), rnz(rng)), (), None))
        )

        def e6_d5(rng):
            w = rnz(rng)
            return ((Fraction(0), 4 * w**3), (), None)

        rows.append(AdjacencyRow(("V1", "V2", "V3", "Vsecond"), "D5", e6_d5))
        rows.append(
            AdjacencyRow(
                tuple(f"V{k}" for k in range(1, 6)),
                "E6",
                lambda rng: ((Fraction(0), Fraction(0)), (), None),
            )
        )
    elif n == 7:
        rows.append(
            AdjacencyRow(("V1", "V2", "V5"), "A3", lambda rng: ((rnz(rng), rnz(rng)), (), None))
        )
        rows.append(
            AdjacencyRow(
                ("V1", "V2", "V5", "Vprime"),
                "A4",
                lambda rng: ((rnz(rng), rnz(rng)), (), None),
            )
        )
        rows.append(
            AdjacencyRow(("V1", "V2", "V3"), "D4", lambda rng: ((Fraction(0), rnz(rng)), (), None))
        )

        def e7_d5(rng):
            u = rnz(rng)
            eq = lam_var("l5") + 4 * lam_var("l6") * (-(u**2)) - MultiPoly.constant(S, 2 * u**3)
            return ((Fraction(0), -(u**2)), (eq,), None)

        rows.append(AdjacencyRow(("V1", "V2", "V3", "Vsecond"), "D5", e7_d5))
        rows.append(
            AdjacencyRow(
                tuple(f"V{k}" for k in range(1, 6)),
                "E6",
                lambda rng: ((Fraction(0), Fraction(0)), (), None),
            )
        )
        rows.append(
            AdjacencyRow(
                tuple(f"V{k}" for k in range(1, 7)),
                "E7",
                lambda rng: ((Fraction(0), Fraction(0)), (), None),
            )
        )
    else:
        rows.append(
            AdjacencyRow(("V1", "V2", "V5"), "A3", lambda rng: ((rnz(rng), rnz(rng)), (), None))
        )

        def e8_a4(rng):
            v, z0 = rnz(rng), rnz(rng)
            y0 = v**2 / (60 * z0)
            eq = lam_var("l5") + 3 * lam_var("l7") * z0 - MultiPoly.constant(S, v)
            return ((y0, z0), (eq,), None)

        rows.append(AdjacencyRow(("V1", "V2", "V5", "Vprime"), "A4", e8_a4))
        rows.append(
            AdjacencyRow(("V1", "V2", "V3"), "D4", lambda rng: ((Fraction(0), rnz(rng)), (), None))
        )

        def e8_d5(rng):
            u, z0 = rnz(rng), rnz(rng)
            eq1 = lam_var("l5") + 3 * lam_var("l7") * z0 - MultiPoly.constant(S, -3 * u**2)
            eq2 = 10 * MultiPoly.constant(S, z0**2) + lam_var("l6") - MultiPoly.constant(
                S, 2 * u**3
            )
            return ((Fraction(0), z0), (eq1, eq2), None)

        rows.append(AdjacencyRow(("V1", "V2", "V3", "Vsecond"), "D5", e8_d5))

        def e8_d6(rng):
            u = rnz(rng)
            eq1 = lam_var("l5") - MultiPoly.constant(S, -3 * u**2)
            eq2 = lam_var("l6") - MultiPoly.constant(S, 2 * u**3)
            return ((Fraction(0), Fraction(0)), (eq1, eq2), None)

        rows.append(
            AdjacencyRow(("V1", "V2", "V3", "V6", "V7", "Vsecond"), "D6", e8_d6)
        )
        rows.append(
            AdjacencyRow(
                tuple(f"V{k}" for k in range(1, 6)),
                "E6",
                lambda rng: ((Fraction(0), rnz(rng)), (), None),
            )
        )
        rows.append(
            AdjacencyRow(
                tuple(f"V{k}" for k in range(1, 6)) + ("V7",),
                "E7",
                lambda rng: ((Fraction(0), Fraction(0)), (), None),
            )
        )
        rows.append(
            AdjacencyRow(
                tuple(f"V{k}" for k in range(1, 8)),
                "E8",
                lambda rng: ((Fraction(0), Fraction(0)), (), None),
            )
        )
    return rows


MAX_ROW_RETRIES = 16


def adjacency_table(
    family: ADEFamily,
    seed: int = 0,
    samples_per_row: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> List[AdjacencyResult]:
    """Sample every printed constraint row, classify the deformed point and
    compare with the predicted type.  Deterministic for a fixed seed; rows
    whose sampler keeps hitting degeneracies are reported, not fatal."""
    results: List[AdjacencyResult] = []
    for ri, row in enumerate(adjacency_rows(family)):
        observed: Optional[str] = None
        lam: Optional[DeformationVector] = None
        point = None
        note = ""
        attempts = 0
        agree: Optional[bool] = None
        for k in range(samples_per_row):
            success = False
            for attempt in range(MAX_ROW_RETRIES):
                attempts += 1
                rng = random.Random(f"{seed}|{family.label}|{ri}|{k}|{attempt}")
                try:
                    pt, extra, frees = row.sampler(rng)
                    cand = solve_lambda_on_locus(
                        family,
                        pt,
                        row.constraints,
                        free_values=frees,
                        seed=rng.randint(0, 10**9),
                        extra_equations=extra,
                    )
                    tp = deformation_type_at(family, cand, pt, budget)
                except (InconsistentLocus, DegenerateDeformation, ValueError) as exc:
                    note = str(exc)
                    continue
                observed = tp.label
                lam, point = cand, pt
                if row.predicted is None or observed == row.predicted:
                    success = True
                    break
            if row.predicted is not None:
                agree = bool(success and observed == row.predicted)
                if not success:
                    break
        if observed is None:
            note = note or "no successful sample"
        results.append(
            AdjacencyResult(row.constraints, row.predicted, observed, agree, lam, point, attempts, note)
        )
    return results
