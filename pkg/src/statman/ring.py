"""Exact scalar arithmetic over a parameter ring.

Three value types live here:

* ``Rational`` -- :class:`fractions.Fraction` (arbitrary precision, always reduced).
* :class:`Poly` -- a multivariate polynomial with rational coefficients over an
  ordered tuple of parameter names.  Terms are kept in graded-lexicographic
  order so that structural equality is mathematical equality.
* :class:`RingQuotient` -- a lazy ``numerator / denominator`` pair of polys,
  normalized by content only (plus exact division when it succeeds).

All values are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Union

from .errors import DivisionError, EvaluationError, StructuralError

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "Poly",
    "RingQuotient",
    "poly_arith",
    "poly_eval",
    "poly_sign",
    "quotient_normalize",
    "as_rational",
]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and rational strings ("3/4") to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _grlex_key(exp):
    return (sum(exp), exp)


class Poly:
    """Multivariate polynomial with exact rational coefficients.

    Parameters
    ----------
    params : iterable of str
        Ordered parameter names.  Two polys combine only if their parameter
        tuples are identical.
    terms : mapping from exponent tuple to coefficient, optional
        Zero coefficients are dropped.
    """

    __slots__ = ("params", "_terms", "_hash")

    def __init__(self, params: Iterable[str] = (), terms: Mapping[tuple, Scalar] | None = None):
        params = tuple(params)
        n = len(params)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise StructuralError(f"exponent vector {exp} does not fit parameters {params}")
            c = as_rational(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.params = params
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, params, terms):
        p = cls.__new__(cls)
        p.params = params
        p._terms = terms
        p._hash = None
        return p

    # constructors ----------------------------------------------------
    @classmethod
    def const(cls, c: Scalar, params: Iterable[str] = ()) -> "Poly":
        params = tuple(params)
        c = as_rational(c)
        return cls._raw(params, {(0,) * len(params): c} if c else {})

    @classmethod
    def zero(cls, params: Iterable[str] = ()) -> "Poly":
        return cls._raw(tuple(params), {})

    @classmethod
    def one(cls, params: Iterable[str] = ()) -> "Poly":
        return cls.const(1, params)

    @classmethod
    def var(cls, name: str, params: Iterable[str]) -> "Poly":
        params = tuple(params)
        if name not in params:
            raise StructuralError(f"unknown parameter {name!r}; declared {params}")
        exp = tuple(1 if p == name else 0 for p in params)
        return cls._raw(params, {exp: Fraction(1)})

    # introspection ---------------------------------------------------
    def terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in canonical (graded-lex, descending) order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise StructuralError(f"{self} is not constant")
        return self._terms.get((0,) * len(self.params), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def free_parameters(self) -> tuple[str, ...]:
        used = set()
        for exp in self._terms:
            used.update(p for p, e in zip(self.params, exp) if e)
        return tuple(p for p in self.params if p in used)

    def leading(self) -> tuple[tuple, Fraction]:
        if not self._terms:
            raise DivisionError("zero polynomial has no leading term")
        exp = max(self._terms, key=_grlex_key)
        return exp, self._terms[exp]

    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self._terms:
            return Fraction(1)
        coeffs = list(self._terms.values())
        den = lcm(*(c.denominator for c in coeffs))
        num = 0
        for c in coeffs:
            num = gcd(num, c.numerator * (den // c.denominator))
        return Fraction(num, den)

    # arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.params != self.params:
                raise StructuralError(
                    f"parameter lists differ: {self.params} vs {other.params}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.params)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp)
            if v is None:
                out[exp] = c
            else:
                v = v + c
                if v:
                    out[exp] = v
                else:
                    del out[exp]
        return Poly._raw(self.params, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.params, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            if not c:
                return Poly._raw(self.params, {})
            return Poly._raw(self.params, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return Poly._raw(self.params, {})
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return Poly._raw(self.params, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational (or constant poly) only."""
        if isinstance(other, Poly):
            if other.params != self.params:
                raise StructuralError("parameter lists differ")
            if not other.is_constant():
                q = divide_exact(self, other)
                if q is None:
                    raise DivisionError(f"{other} does not divide {self}; use RingQuotient")
                return q
            other = other.constant_value()
        c = as_rational(other)
        if not c:
            raise DivisionError("division by zero")
        return Poly._raw(self.params, {e: v / c for e, v in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Poly.one(self.params)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.params)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.params == other.params and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # evaluation ------------------------------------------------------
    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        """Exact substitution; every parameter that occurs must be assigned."""
        missing = [p for p in self.free_parameters() if p not in assignment]
        if missing:
            raise EvaluationError(f"no value assigned to parameter(s) {', '.join(missing)}")
        values = [as_rational(assignment[p]) if p in assignment else Fraction(0) for p in self.params]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(values, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    def evaluate_float(self, assignment: Mapping[str, float]) -> float:
        missing = [p for p in self.free_parameters() if p not in assignment]
        if missing:
            raise EvaluationError(f"no value assigned to parameter(s) {', '.join(missing)}")
        values = [float(assignment.get(p, 0.0)) for p in self.params]
        total = 0.0
        for exp, c in self._terms.items():
            term = float(c)
            for v, e in zip(values, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    def subs(self, assignment: Mapping[str, Scalar]) -> "Poly":
        """Partial substitution; unassigned parameters stay symbolic."""
        idx = [i for i, p in enumerate(self.params) if p in assignment]
        if not idx:
            return self
        vals = {i: as_rational(assignment[self.params[i]]) for i in idx}
        out: dict = {}
        for exp, c in self._terms.items():
            coef = c
            new = list(exp)
            for i in idx:
                if exp[i]:
                    coef *= vals[i] ** exp[i]
                new[i] = 0
            key = tuple(new)
            v = out.get(key, 0) + coef
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        return Poly._raw(self.params, out)

    def coefficient(self, name: str, power: int = 1) -> "Poly":
        """Coefficient of ``name**power`` viewed as a poly in the remaining parameters."""
        i = self.params.index(name)
        out = {}
        for exp, c in self._terms.items():
            if exp[i] == power:
                key = exp[:i] + (0,) + exp[i + 1 :]
                out[key] = c
        return Poly(self.params, out)

    # printing --------------------------------------------------------
    def _monomial_str(self, exp) -> str:
        parts = []
        for p, e in zip(self.params, exp):
            if e == 1:
                parts.append(p)
            elif e > 1:
                parts.append(f"{p}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for k, (exp, c) in enumerate(self.terms()):
            mono = self._monomial_str(exp)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if k == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r}, params={self.params})"

    def is_monomial(self) -> bool:
        return len(self._terms) <= 1


def divide_exact(p: Poly, q: Poly) -> Poly | None:
    """Return p / q when q divides p exactly, else None.

    Single-divisor multivariate division in graded-lex order; a zero
    remainder is equivalent to divisibility because {q} is a Groebner basis
    of the principal ideal it generates.
    """
    if q.is_zero():
        raise DivisionError("division by the zero polynomial")
    lq_exp, lq_c = q.leading()
    quotient: dict = {}
    rem = p
    while not rem.is_zero():
        exp, c = rem.leading()
        shift = tuple(a - b for a, b in zip(exp, lq_exp))
        if any(s < 0 for s in shift):
            return None
        factor = c / lq_c
        quotient[shift] = quotient.get(shift, 0) + factor
        rem = rem - Poly._raw(p.params, {shift: factor}) * q
    return Poly(p.params, quotient)


class RingQuotient:
    """A pair ``numerator / denominator`` of polys.

    Not fully reduced in general: normalization divides out rational content,
    makes the denominator's leading coefficient positive, and performs exact
    division when the denominator divides the numerator.  Equality is decided
    by cross-multiplication.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None):
        if not isinstance(numerator, Poly):
            params = denominator.params if isinstance(denominator, Poly) else ()
            numerator = Poly.const(numerator, params)
        if denominator is None:
            denominator = Poly.one(numerator.params)
        elif not isinstance(denominator, Poly):
            denominator = Poly.const(denominator, numerator.params)
        if numerator.params != denominator.params:
            raise StructuralError("numerator and denominator have different parameter lists")
        if denominator.is_zero():
            raise DivisionError("zero denominator")
        self.numerator = numerator
        self.denominator = denominator

    @property
    def params(self):
        return self.numerator.params

    def normalize(self) -> "RingQuotient":
        return quotient_normalize(self)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        q = quotient_normalize(self)
        return q.denominator == Poly.one(q.params)

    def as_poly(self) -> Poly:
        q = quotient_normalize(self)
        if not q.denominator.is_constant():
            raise StructuralError(f"{self} is not a polynomial")
        return q.numerator / q.denominator.constant_value()

    def evaluate(self, assignment) -> Fraction:
        d = self.denominator.evaluate(assignment)
        if not d:
            raise DivisionError(f"denominator {self.denominator} vanishes at {dict(assignment)}")
        return self.numerator.evaluate(assignment) / d

    def subs(self, assignment) -> "RingQuotient":
        return quotient_normalize(RingQuotient(self.numerator.subs(assignment), self.denominator.subs(assignment)))

    def _coerce(self, other):
        if isinstance(other, RingQuotient):
            return other
        if isinstance(other, Poly):
            return RingQuotient(other)
        if isinstance(other, (int, Fraction)):
            return RingQuotient(Poly.const(other, self.params))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.denominator == o.denominator:
            return quotient_normalize(RingQuotient(self.numerator + o.numerator, self.denominator))
        return quotient_normalize(
            RingQuotient(
                self.numerator * o.denominator + o.numerator * self.denominator,
                self.denominator * o.denominator,
            )
        )

    __radd__ = __add__

    def __neg__(self):
        return RingQuotient(-self.numerator, self.denominator)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return quotient_normalize(
            RingQuotient(self.numerator * o.numerator, self.denominator * o.denominator)
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.numerator.is_zero():
            raise DivisionError("division by zero quotient")
        return quotient_normalize(
            RingQuotient(self.numerator * o.denominator, self.denominator * o.numerator)
        )

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RingQuotient) else other
        if o is NotImplemented:
            return NotImplemented
        return self.numerator * o.denominator == o.numerator * self.denominator

    def __hash__(self):
        q = quotient_normalize(self)
        return hash((q.numerator, q.denominator))

    def __str__(self):
        q = quotient_normalize(self)
        if q.denominator == Poly.one(q.params):
            return str(q.numerator)
        num = str(q.numerator)
        den = str(q.denominator)
        if not q.numerator.is_monomial():
            num = f"({num})"
        if not q.denominator.is_monomial():
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RingQuotient({str(self)!r})"


def quotient_normalize(q: RingQuotient) -> RingQuotient:
    """Canonical representative of a quotient.

    Zero normalizes to ``0/1``; exact division is carried out when possible;
    otherwise both parts are scaled so the denominator has coprime integer
    coefficients, the overall common content is removed, and the
    denominator's leading coefficient is positive.
    """
    num, den = q.numerator, q.denominator
    params = num.params
    if den.is_zero():
        raise DivisionError("zero denominator")
    if num.is_zero():
        return RingQuotient(Poly.zero(params), Poly.one(params))
    exact = divide_exact(num, den)
    if exact is not None:
        return RingQuotient(exact, Poly.one(params))
    # primitive integer parts, with the rational ratio of contents folded back in
    ratio = num.content() / den.content()
    n2 = (num / num.content()) * ratio.numerator
    d2 = (den / den.content()) * ratio.denominator
    if d2.leading()[1] < 0:
        n2, d2 = -n2, -d2
    return RingQuotient(n2, d2)


def poly_arith(op: str, p: Poly, q: Poly | None = None) -> Poly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``neg`` on polys sharing parameters."""
    if op == "neg":
        return -p
    if q is None:
        raise StructuralError(f"{op} needs two operands")
    if not isinstance(p, Poly) or not isinstance(q, Poly) or p.params != q.params:
        raise StructuralError("operands must be polys over the same parameter list")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p: Poly, assignment: Mapping[str, Scalar]) -> Fraction:
    return p.evaluate(assignment)


def poly_sign(p, assignment: Mapping[str, Scalar]) -> str:
    """Sign of ``p`` at ``assignment`` as ``"negative"``, ``"zero"`` or ``"positive"``."""
    v = p.evaluate(assignment)
    if v < 0:
        return "negative"
    if v > 0:
        return "positive"
    return "zero"
