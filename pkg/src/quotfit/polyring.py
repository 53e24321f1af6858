"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`PolyRing` fixes the variable names and a term order; a
:class:`Polynomial` is an immutable map from exponent tuples to nonzero
coefficients. Coefficients are Python ``int`` when integral and
:class:`fractions.Fraction` otherwise, so the common integer case stays on
the fast path.
"""

from __future__ import annotations

import enum
import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ParseError, RingMismatchError

Monomial = tuple  # tuple[int, ...] of exponents, one per ring variable


def as_rational(c):
    """Coerce ``c`` to the canonical coefficient type (int when integral)."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    if isinstance(c, str):
        c = Fraction(c.strip())
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not supported")
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class TermOrder(enum.Enum):
    DEGREVLEX = "degrevlex"
    LEX = "lex"

    def key(self, exps: Monomial):
        """Sort key: a larger key means a larger monomial."""
        if self is TermOrder.LEX:
            return exps
        return (sum(exps), tuple(-e for e in reversed(exps)))


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolyRing:
    """The ring Q[v_1, ..., v_k] with a fixed term order."""

    __slots__ = ("names", "order", "nvars", "key", "_index", "_zero_exp")

    def __init__(self, names: Sequence[str], order="degrevlex"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        for v in names:
            if not isinstance(v, str) or not _NAME_RE.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        self.names = names
        self.order = TermOrder(order)
        self.nvars = len(names)
        self.key = self.order.key
        self._index = {v: i for i, v in enumerate(names)}
        self._zero_exp = (0,) * self.nvars

    def __repr__(self):
        return f"PolyRing({list(self.names)!r}, order={self.order.value!r})"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.order is other.order
        )

    def __hash__(self):
        return hash((self.names, self.order))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"{name!r} is not a variable of {self!r}") from None

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = as_rational(c)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def var(self, name: str) -> Polynomial:
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list[Polynomial]:
        return [self.var(v) for v in self.names]

    def monomial(self, exps: Sequence[int], coeff=1) -> Polynomial:
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or min(exps, default=0) < 0:
            raise ValueError(f"bad exponent vector {exps} for {self!r}")
        c = as_rational(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def from_dict(self, terms: Mapping[Monomial, object]) -> Polynomial:
        out = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e} for {self!r}")
            c = as_rational(c)
            if c:
                out[e] = _norm(out.get(e, 0) + c)
                if not out[e]:
                    del out[e]
        return Polynomial(self, out)

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(self, text)

    def to_json(self) -> dict:
        return {"vars": list(self.names), "order": self.order.value}

    @classmethod
    def from_json(cls, data: Mapping) -> PolyRing:
        return cls(data["vars"], data.get("order", "degrevlex"))


class Polynomial:
    """Immutable sparse polynomial over Q.

    ``terms`` maps exponent tuples to nonzero int/Fraction coefficients and
    must not be mutated after construction.
    """

    __slots__ = ("ring", "terms", "_sorted", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._sorted = None
        self._hash = None

    # -- structure -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        """Terms in decreasing term order."""
        if self._sorted is None:
            key = self.ring.key
            self._sorted = sorted(
                self.terms.items(), key=lambda t: key(t[0]), reverse=True
            )
        return self._sorted

    def __iter__(self) -> Iterator[tuple[Monomial, object]]:
        return iter(self.sorted_terms())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (
            len(self.terms) == 1 and self.ring._zero_exp in self.terms
        )

    def constant_value(self):
        """The constant term (0 if absent)."""
        return self.terms.get(self.ring._zero_exp, 0)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        if self._sorted is not None:
            return self._sorted[0][0]
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, indices: Iterable[int]) -> set[int]:
        """Set of partial degrees in the given variable indices over all terms."""
        idx = list(indices)
        return {sum(e[i] for i in idx) for e in self.terms}

    def variables(self) -> list[str]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return [self.ring.names[i] for i in sorted(used)]

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._check(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = _norm(v + c)
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_rational(other)
            if not c:
                return self.ring.zero()
            return Polynomial(
                self.ring, {e: _norm(v * c) for e, v in self.terms.items()}
            )
        other = self._check(other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms.items(), other.terms.items()
        else:
            a, b = other.terms.items(), self.terms.items()
        out: dict = {}
        get = out.get
        for e1, c1 in a:
            for e2, c2 in b:
                e = tuple([x + y for x, y in zip(e1, e2)])
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(
            self.ring, {e: _norm(c) for e, c in out.items() if c}
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return self.exact_div(other)
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (Fraction(1) / c)

    def scale(self, c) -> Polynomial:
        return self * c

    def mul_term(self, exps: Monomial, c=1) -> Polynomial:
        """Multiply by the single term ``c * x^exps``."""
        c = as_rational(c)
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {
                tuple([x + y for x, y in zip(e, exps)]): _norm(v * c)
                for e, v in self.terms.items()
            },
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({self.ring._zero_exp: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def exact_div(self, divisor: Polynomial) -> Polynomial:
        """Quotient ``self / divisor``; raises ``ArithmeticError`` if inexact."""
        divisor = self._check(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.is_constant():
            inv = Fraction(1) / Fraction(divisor.constant_value())
            return self * inv
        key = self.ring.key
        lm = divisor.leading_monomial()
        lc = divisor.terms[lm]
        rem = dict(self.terms)
        quot: dict = {}
        dterms = list(divisor.terms.items())
        while rem:
            m = max(rem, key=key)
            q = [a - b for a, b in zip(m, lm)]
            if min(q) < 0:
                raise ArithmeticError("polynomial division is not exact")
            q = tuple(q)
            c = _norm(Fraction(rem[m]) / lc)
            quot[q] = c
            for e, v in dterms:
                t = tuple([x + y for x, y in zip(e, q)])
                w = _norm(rem.get(t, 0) - c * v)
                if w:
                    rem[t] = w
                else:
                    rem.pop(t, None)
        return Polynomial(self.ring, quot)

    # -- evaluation and normalisation ----------------------------------------

    def evaluate(self, point: Sequence):
        """Exact value at ``point`` (one rational per ring variable)."""
        if len(point) != self.ring.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, ring has {self.ring.nvars}"
            )
        pt = [as_rational(x) for x in point]
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x**k
            total += v
        return _norm(Fraction(total)) if isinstance(total, Fraction) else total

    def substitute(self, values: Mapping[int, Polynomial], target: PolyRing | None = None) -> Polynomial:
        """Replace variable ``i`` by ``values[i]``; remaining variables map by name into ``target``."""
        target = target or self.ring
        image = []
        for i, name in enumerate(self.ring.names):
            if i in values:
                image.append(values[i])
            else:
                image.append(target.var(name))
        out = target.zero()
        cache: dict = {}
        for e, c in self.terms.items():
            term = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = image[i] ** k
                    term = term * cache[key]
            out = out + term
        return out

    def subs_var(self, i: int, value: Polynomial) -> Polynomial:
        """Replace variable ``i`` by ``value`` (same ring)."""
        if not any(e[i] for e in self.terms):
            return self
        powers = {}
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                v = out.get(e)
                out[e] = c if v is None else v + c
                continue
            hk = powers.get(k)
            if hk is None:
                hk = powers[k] = (value ** k).terms
            base = e[:i] + (0,) + e[i + 1:]
            for e2, c2 in hk.items():
                t = tuple([x + y for x, y in zip(base, e2)])
                v = out.get(t)
                out[t] = c * c2 if v is None else v + c * c2
        return Polynomial(self.ring, {e: _norm(c) for e, c in out.items() if c})

    def to_ring(self, target: PolyRing) -> Polynomial:
        """Reinterpret in ``target`` by matching variable names."""
        if target == self.ring:
            return self
        idx = []
        for i, v in enumerate(self.ring.names):
            if v in target._index:
                idx.append((i, target._index[v]))
        out = {}
        used = {i for i, _ in idx}
        for e, c in self.terms.items():
            if any(x and i not in used for i, x in enumerate(e)):
                raise ValueError("polynomial uses variables absent from the target ring")
            t = [0] * target.nvars
            for i, j in idx:
                t[j] = e[i]
            out[tuple(t)] = c
        return Polynomial(target, out)

    def content(self) -> Fraction:
        """Positive rational c with self / c primitive-integral."""
        if not self.terms:
            raise ValueError("the zero polynomial has no content")
        lcm_den = 1
        for c in self.terms.values():
            if type(c) is not int:
                lcm_den = lcm_den * c.denominator // math.gcd(lcm_den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, int(c * lcm_den))
        return Fraction(g, lcm_den)

    def normalize_primitive(self) -> Polynomial:
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            raise ValueError("cannot normalize zero")
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        if c == 1:
            if all(type(v) is int for v in self.terms.values()):
                return self
        inv = 1 / c
        return Polynomial(
            self.ring, {e: _norm(v * inv) for e, v in self.terms.items()}
        )

    def primitive_integer_terms(self) -> dict:
        """Terms of the primitive normalisation as plain ints."""
        p = self.normalize_primitive()
        return {e: int(c) for e, c in p.terms.items()}

    # -- text and JSON -------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.names),
            "terms": [
                {"c": str(Fraction(c)), "e": list(e)} for e, c in self.sorted_terms()
            ],
        }


def polynomial_from_json(data: Mapping, ring: PolyRing | None = None) -> Polynomial:
    """Inverse of :meth:`Polynomial.to_json`."""
    if ring is None:
        ring = PolyRing(data["vars"], data.get("order", "degrevlex"))
    elif "vars" in data and list(data["vars"]) != list(ring.names):
        raise ParseError(f"JSON variables {data['vars']} do not match {ring!r}")
    try:
        terms = {tuple(t["e"]): Fraction(t["c"]) for t in data["terms"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed polynomial JSON: {exc}") from exc
    return ring.from_dict(terms)


def normalize_primitive(f: Polynomial) -> Polynomial:
    return f.normalize_primitive()


def poly_evaluate(f: Polynomial, point: Sequence):
    return f.evaluate(point)


# -- text syntax --------------------------------------------------------------

def _format_coeff(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    parts = []
    for e, c in f.sorted_terms():
        neg = c < 0
        a = -c if neg else c
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        if not factors:
            body = _format_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(a) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    # sums of products of powers; parentheses allowed for convenience

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            raise ParseError("empty polynomial text")
        f = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return f

    def expr(self) -> Polynomial:
        total = self.ring.zero()
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        total = total + self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in ("+", "-"):
                self.take()
                t = self.term()
                total = total + t if val == "+" else total - t
            else:
                return total

    def term(self) -> Polynomial:
        f = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            f = f * self.power()
        return f

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() in (("op", "^"), ("op", "**")):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            try:
                return self.ring.constant(Fraction(val))
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {self.text!r}") from None
        if kind == "name":
            try:
                return self.ring.var(val)
            except ValueError:
                raise ParseError(f"unknown variable {val!r}") from None
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"unbalanced parenthesis in {self.text!r}")
            return f
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse text such as ``a2*a4 - a1*a5`` or ``-2/3*x^2*y + 1/2``."""
    return _Parser(ring, text).parse()

