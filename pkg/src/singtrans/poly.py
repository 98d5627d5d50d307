"""Exact sparse multivariate polynomials over the rationals.

Coefficients are `fractions.Fraction` (arbitrary precision, canonical
reduced form with positive denominator).  A monomial is a tuple of
non-negative exponents whose length equals the number of ring variables;
a polynomial is a map monomial -> coefficient with no stored zeros.
Values are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Coeff = Union[Fraction, int]


class ParseError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_str(mono: Monomial, ring: Sequence[str]) -> str:
    """Human/parser form, e.g. () -> "1", (1,2) -> "x*y^2"."""
    parts = []
    for name, e in zip(ring, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


class TermOrder:
    """Total multiplicative order on monomials of a fixed ring.

    Kinds:
      lex          -- pure lexicographic (first variable strongest)
      degrevlex    -- total degree, ties by reverse lexicographic
      weighted     -- weighted degree (positive weights), ties by revlex
      localdegrevlex -- negative degree order: *lower* total degree is
                        larger, ties by revlex; 1 is the unique maximum.

    The first three are global (1 is the unique minimum).  `key` returns
    a tuple that sorts monomials ascending; comparisons of keys agree
    with the order.
    """

    GLOBAL_KINDS = ("lex", "degrevlex", "weighted")
    KINDS = GLOBAL_KINDS + ("localdegrevlex",)

    def __init__(self, kind: str, weights: Sequence[Coeff] | None = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "weighted":
            if not weights:
                raise ValueError("weighted order needs a weight vector")
            ws = [Fraction(w) for w in weights]
            if any(w <= 0 for w in ws):
                raise ValueError("weights must be positive")
            self.weights: Tuple[Fraction, ...] | None = tuple(ws)
        else:
            if weights is not None:
                raise ValueError(f"{kind} order takes no weights")
            self.weights = None
        self.kind = kind

    @property
    def is_local(self) -> bool:
        return self.kind == "localdegrevlex"

    def key(self, mono: Monomial):
        if self.kind == "lex":
            return mono
        revneg = tuple(-e for e in reversed(mono))
        if self.kind == "degrevlex":
            return (sum(mono), revneg)
        if self.kind == "weighted":
            assert self.weights is not None
            if len(self.weights) != len(mono):
                raise ValueError("weight vector length does not match ring")
            wdeg = sum(w * e for w, e in zip(self.weights, mono))
            return (wdeg, revneg)
        # localdegrevlex: smaller total degree is larger
        return (-sum(mono), revneg)

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def __repr__(self):
        if self.kind == "weighted":
            return f"TermOrder('weighted', {list(self.weights or ())})"
        return f"TermOrder({self.kind!r})"

    def __eq__(self, other):
        return (
            isinstance(other, TermOrder)
            and self.kind == other.kind
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.kind, self.weights))


LEX = TermOrder("lex")
DEGREVLEX = TermOrder("degrevlex")
LOCAL_DEGREVLEX = TermOrder("localdegrevlex")


class MultiPoly:
    """Sparse polynomial over Q in a fixed, ordered tuple of variables.

    Do not mutate `terms` after construction; all arithmetic returns new
    objects.  Two polynomials are equal iff ring and term maps agree.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Sequence[str], terms: Mapping[Monomial, Coeff]):
        rng = tuple(ring)
        clean: Dict[Monomial, Fraction] = {}
        n = len(rng)
        for mono, c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            if len(mono) != n or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for ring {rng}")
            clean[tuple(mono)] = c
        self.ring = rng
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, ring: Sequence[str]) -> "MultiPoly":
        return cls(ring, {})

    @classmethod
    def constant(cls, ring: Sequence[str], c: Coeff) -> "MultiPoly":
        return cls(ring, {(0,) * len(tuple(ring)): Fraction(c)})

    @classmethod
    def variable(cls, ring: Sequence[str], name: str) -> "MultiPoly":
        rng = tuple(ring)
        i = rng.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(rng)))
        return cls(rng, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, ring: Sequence[str], mono: Monomial, c: Coeff = 1) -> "MultiPoly":
        return cls(ring, {tuple(mono): Fraction(c)})

    # -- predicates / accessors ----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.ring), Fraction(0))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def variables_used(self) -> Tuple[str, ...]:
        used = [False] * len(self.ring)
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.ring, used) if u)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def truncate(self, d: int) -> "MultiPoly":
        """Drop all terms of total degree > d (jet of order d)."""
        return MultiPoly(self.ring, {m: c for m, c in self.terms.items() if sum(m) <= d})

    # -- ring arithmetic ----------------------------------------------

    def _check_ring(self, other: "MultiPoly"):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.ring, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return MultiPoly.zero(self.ring)
            return MultiPoly(self.ring, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.ring, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus / maps ----------------------------------------------

    def partial(self, var: str) -> "MultiPoly":
        """Formal partial derivative with respect to `var`."""
        i = self.ring.index(var)
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            dm = m[:i] + (e - 1,) + m[i + 1 :]
            out[dm] = out.get(dm, Fraction(0)) + c * e
        return MultiPoly(self.ring, out)

    def substitute(self, assignments: Mapping[str, Union["MultiPoly", Coeff]]) -> "MultiPoly":
        """Simultaneous substitution var -> polynomial (same ring) or constant."""
        images = []
        for i, name in enumerate(self.ring):
            if name in assignments:
                val = assignments[name]
                if isinstance(val, (int, Fraction)):
                    val = MultiPoly.constant(self.ring, val)
                self._check_ring(val)
                images.append(val)
            else:
                images.append(MultiPoly.variable(self.ring, name))
        unknown = set(assignments) - set(self.ring)
        if unknown:
            raise ValueError(f"unknown variables in substitution: {sorted(unknown)}")
        result = MultiPoly.zero(self.ring)
        pow_cache: Dict[Tuple[int, int], MultiPoly] = {}
        for m, c in self.terms.items():
            term = MultiPoly.constant(self.ring, c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                key = (i, e)
                if key not in pow_cache:
                    pow_cache[key] = images[i] ** e
                term = term * pow_cache[key]
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Coeff]) -> Fraction:
        """Evaluate at a rational point; every used variable must be assigned."""
        missing = set(self.variables_used()) - set(point)
        if missing:
            raise ValueError(f"unassigned variables: {sorted(missing)}")
        total = Fraction(0)
        vals = [Fraction(point.get(v, 0)) for v in self.ring]
        for m, c in self.terms.items():
            prod = c
            for val, e in zip(vals, m):
                if e:
                    prod *= val**e
            total += prod
        return total

    def embed(self, new_ring: Sequence[str]) -> "MultiPoly":
        """Re-express in a ring containing every variable actually used."""
        new_ring = tuple(new_ring)
        for name in self.variables_used():
            if name not in new_ring:
                raise ValueError(f"variable {name} missing from target ring")
        idx = {name: new_ring.index(name) for name in self.ring if name in new_ring}
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            nm = [0] * len(new_ring)
            for i, e in enumerate(m):
                if e:
                    nm[idx[self.ring[i]]] = e
            key = tuple(nm)
            out[key] = out.get(key, Fraction(0)) + c
        return MultiPoly(new_ring, out)

    # -- leading data --------------------------------------------------

    def leading_term(self, order: TermOrder) -> Tuple[Monomial, Fraction]:
        """Order-maximal (monomial, coefficient); error on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: TermOrder) -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order: TermOrder) -> "MultiPoly":
        _, c = self.leading_term(order)
        return self * (Fraction(1) / c)

    # -- printing -------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=DEGREVLEX.key, reverse=True):
            c = self.terms[m]
            mono = mono_str(m, self.ring)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        if text.startswith("+ "):
            text = text[2:]
        elif text.startswith("- "):
            rest = text[2:]
            # a leading sign must open an integer literal in the grammar
            text = "-" + rest if rest[0].isdigit() else "-1*" + rest
        return text

    def __repr__(self):
        return f"MultiPoly({self.ring}, {self})"


# ---------------------------------------------------------------------------
# Parser.  Grammar (whitespace insignificant):
#   expression := term (('+'|'-') term)*
#   term       := factor ('*'? factor)*
#   factor     := rational | ident | factor '^' nat | '(' expression ')'
#   rational   := int ('/' nat)?
# Identifiers are ASCII letters followed by letters/digits/underscore.
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.lastgroup == "num":
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, ring: Tuple[str, ...]):
        self.tokens = tokens
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse_expression(self) -> MultiPoly:
        result = self.parse_term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                rhs = self.parse_term()
                result = result + rhs if val == "+" else result - rhs
            else:
                return result

    def parse_term(self) -> MultiPoly:
        result = self.parse_factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.advance()
                result = result * self.parse_factor()
            elif kind in ("num", "ident") or (kind == "op" and val == "("):
                result = result * self.parse_factor()
            else:
                return result

    def parse_factor(self) -> MultiPoly:
        result = self.parse_primary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "^":
                self.advance()
                kind, val, pos = self.peek()
                if kind != "num":
                    raise ParseError("expected natural number after '^'", pos)
                self.advance()
                result = result ** int(val)
            else:
                return result

    def parse_primary(self) -> MultiPoly:
        kind, val, pos = self.peek()
        if kind == "op" and val == "(":
            self.advance()
            inner = self.parse_expression()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            # sign belongs to an integer literal: int := '-'? digits
            nkind, nval, npos = self.tokens[self.i + 1]
            if nkind != "num":
                raise ParseError("expected digits after '-' in integer literal", npos)
            self.advance()
            return self._parse_rational(-1)
        if kind == "num":
            return self._parse_rational(1)
        if kind == "ident":
            self.advance()
            if val not in self.ring:
                raise ParseError(f"unknown variable {val!r}", pos)
            return MultiPoly.variable(self.ring, val)
        raise ParseError("expected rational, variable or '('", pos)

    def _parse_rational(self, sign: int) -> MultiPoly:
        kind, val, pos = self.advance()
        assert kind == "num"
        num = sign * int(val)
        kind, nxt, _ = self.peek()
        if kind == "op" and nxt == "/":
            dkind, dval, dpos = self.tokens[self.i + 1]
            if dkind != "num":
                raise ParseError("expected natural number denominator", dpos)
            self.advance()
            self.advance()
            den = int(dval)
            if den == 0:
                raise ParseError("zero denominator", dpos)
            return MultiPoly.constant(self.ring, Fraction(num, den))
        return MultiPoly.constant(self.ring, num)


def scan_variables(text: str) -> Tuple[str, ...]:
    """All identifiers in the text, in order of first appearance."""
    seen: list[str] = []
    for kind, val, _ in _tokenize(text):
        if kind == "ident" and val not in seen:
            seen.append(val)
    return tuple(seen)


def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse `text` into a polynomial over the given ordered variables."""
    ring = tuple(variables)
    if len(set(ring)) != len(ring):
        raise ValueError("duplicate variable names")
    parser = _Parser(_tokenize(text), ring)
    poly = parser.parse_expression()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise ParseError("trailing input", pos)
    return poly


# ---------------------------------------------------------------------------
# Dense univariate helpers over Q (coefficient lists, index = degree).
# Used by binary-form analysis and rational critical-point extraction.
# ---------------------------------------------------------------------------


def uni_normalize(p: Sequence[Coeff]) -> list:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def uni_degree(p: Sequence[Fraction]) -> int:
    return len(uni_normalize(p)) - 1


def uni_derivative(p: Sequence[Fraction]) -> list:
    p = uni_normalize(p)
    return uni_normalize([i * c for i, c in enumerate(p)][1:])


def uni_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = uni_normalize(a)
    b = uni_normalize(b)
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        factor = r[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            r[i + shift] -= factor * c
        r = uni_normalize(r)
    return uni_normalize(q), r


def uni_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    """Monic gcd over Q."""
    a = uni_normalize(a)
    b = uni_normalize(b)
    while b:
        _, r = uni_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def uni_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(uni_normalize(p)):
        total = total * x + c
    return total


def _divisors(n: int) -> list:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def uni_rational_roots(p: Sequence[Coeff]) -> list:
    """All rational roots (without multiplicity) of a nonzero polynomial."""
    p = uni_normalize(p)
    if not p:
        raise ValueError("zero polynomial has every root")
    roots = []
    # strip powers of x
    shift = 0
    while p and p[0] == 0:
        p = p[1:]
        shift += 1
    if shift:
        roots.append(Fraction(0))
    if len(p) <= 1:
        return roots
    # clear denominators to an integer polynomial
    from math import lcm

    den = lcm(*[c.denominator for c in p])
    ip = [int(c * den) for c in p]
    from math import gcd as _g

    g = 0
    for c in ip:
        g = _g(g, c)
    if g > 1:
        ip = [c // g for c in ip]
    a0, an = ip[0], ip[-1]
    for num in _divisors(a0):
        for dend in _divisors(an):
            for cand in (Fraction(num, dend), Fraction(-num, dend)):
                if cand not in roots and uni_eval(p, cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def uni_root_multiplicity(p: Sequence[Fraction], x: Fraction) -> int:
    p = uni_normalize(p)
    mult = 0
    while p and uni_eval(p, x) == 0:
        q, r = uni_divmod(p, [-x, Fraction(1)])
        assert not r
        p = q
        mult += 1
    return mult
