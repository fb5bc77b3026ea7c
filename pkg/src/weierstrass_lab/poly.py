"""Exact multivariate polynomials over the rationals.

A :class:`Polynomial` is an immutable sparse map from exponent tuples to
:class:`fractions.Fraction` coefficients. The ring is identified only by its
arity; variable names live with the caller and are passed to :func:`parse`
and :meth:`Polynomial.format`.
"""

from __future__ import annotations

import ast
import math
import re
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Number = Union[int, Fraction]


class MonomialOrder:
    """Term order on exponent tuples, exposed through a sort key.

    ``kind`` is one of ``"degrevlex"``, ``"lex"`` or ``"block"``. A block
    order compares the first ``split`` variables by degrevlex and breaks ties
    with degrevlex on the remaining ones, so it eliminates the first block.
    """

    __slots__ = ("kind", "split", "key")

    def __init__(self, kind: str = "degrevlex", split: int = 0):
        if kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and split <= 0:
            raise ValueError("block order needs a positive split index")
        self.kind = kind
        self.split = split
        if kind == "lex":
            self.key = _lex_key
        elif kind == "degrevlex":
            self.key = _grevlex_key
        else:
            self.key = lambda e, k=split: (_grevlex_key(e[:k]), _grevlex_key(e[k:]))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.split == other.split
        )

    def __hash__(self):
        return hash((self.kind, self.split))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', {self.split})"
        return f"MonomialOrder({self.kind!r})"


def _lex_key(e: Exponent):
    return e


def _grevlex_key(e: Exponent):
    return (sum(e), tuple(-a for a in reversed(e)))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def block_order(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class Polynomial:
    """Sparse polynomial with rational coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Number] | None = None):
        if nvars < 0:
            raise ValueError("arity must be nonnegative")
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not match arity {nvars}")
                if any(a < 0 for a in e):
                    raise ValueError(f"negative exponent in {e}")
                c = _as_fraction(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, Fraction]) -> "Polynomial":
        # trusted constructor: no zero coefficients, correct arity
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c: Number, nvars: int) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for arity {nvars}")
        e = [0] * nvars
        e[index] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Number = 1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): coeff})

    # -- basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(e[index] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def variables_used(self) -> set:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        """Terms as ``(exponent, coefficient)`` pairs, largest first."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

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

    def scale(self, c: Number) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: c * a for e, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, exps: Exponent, coeff: Fraction) -> "Polynomial":
        return Polynomial._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self.terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == Polynomial.constant(other, self.nvars).terms
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution -------------------------------------------
    def diff(self, index: int) -> "Polynomial":
        if not 0 <= index < self.nvars:
            raise IndexError(f"variable index {index} out of range for arity {self.nvars}")
        out = {}
        for e, c in self.terms.items():
            a = e[index]
            if a:
                f = list(e)
                f[index] = a - 1
                out[tuple(f)] = c * a
        return Polynomial._raw(self.nvars, out)

    def subs(self, values: Mapping[int, Union["Polynomial", Number]], nvars: int | None = None) -> "Polynomial":
        """Substitute polynomials (or numbers) for some variables.

        Variables not in ``values`` are kept in place. The result lives in a
        ring of arity ``nvars`` (default: unchanged), so every substituted
        polynomial and every kept variable index must fit that arity.
        """
        n = self.nvars if nvars is None else nvars
        vals = {}
        for i, v in values.items():
            vals[i] = v if isinstance(v, Polynomial) else Polynomial.constant(v, n)
            if vals[i].nvars != n:
                raise ValueError("substituted polynomial has the wrong arity")
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(i, a):
            key = (i, a)
            if key not in powers:
                powers[key] = vals[i] ** a
            return powers[key]

        result: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            kept = [0] * n
            term = None
            for i, a in enumerate(e):
                if not a:
                    continue
                if i in vals:
                    term = power(i, a) if term is None else term * power(i, a)
                else:
                    kept[i] += a
            piece = Polynomial._raw(n, {tuple(kept): c})
            if term is not None:
                piece = piece * term
            for f, d in piece.terms.items():
                s = result.get(f, 0) + d
                if s:
                    result[f] = s
                else:
                    result.pop(f, None)
        return Polynomial._raw(n, result)

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        pt = [_as_fraction(a) for a in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for a, x in zip(e, pt):
                if a:
                    v *= x ** a
            total += v
        return total

    def remap(self, mapping: Sequence[int], nvars: int) -> "Polynomial":
        """Move variable ``i`` to position ``mapping[i]`` in a ring of arity ``nvars``."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * nvars
            for i, a in enumerate(e):
                if a:
                    f[mapping[i]] += a
            out[tuple(f)] = c
        return Polynomial._raw(nvars, out)

    def dehomogenize(self, index: int) -> "Polynomial":
        """Set variable ``index`` to 1 and drop it from the ring."""
        n = self.nvars - 1
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            f = e[:index] + e[index + 1:]
            s = out.get(f, 0) + c
            if s:
                out[f] = s
            else:
                out.pop(f, None)
        return Polynomial._raw(n, out)

    def homogenize(self, index: int, degree: int | None = None) -> "Polynomial":
        """Insert a new variable at ``index`` making every term of ``degree``."""
        deg = self.total_degree() if degree is None else degree
        out = {}
        for e, c in self.terms.items():
            d = sum(e)
            if d > deg:
                raise ValueError("degree cap below the polynomial's degree")
            out[e[:index] + (deg - d,) + e[index:]] = c
        return Polynomial._raw(self.nvars + 1, out)

    # -- normalizations -----------------------------------------------------
    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def primitive(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        """Integer-primitive associate with positive leading coefficient."""
        if not self.terms:
            return self
        den = reduce(math.lcm, (c.denominator for c in self.terms.values()), 1)
        nums = [int(c * den) for c in self.terms.values()]
        g = reduce(math.gcd, nums, 0)
        scale = Fraction(den, g)
        if self.leading_coefficient(order) < 0:
            scale = -scale
        return self.scale(scale)

    # -- text ---------------------------------------------------------------
    def format(self, names: Sequence[str], order: MonomialOrder = DEGREVLEX) -> str:
        if len(names) != self.nvars:
            raise ValueError("wrong number of variable names")
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Polynomial({self.format(names)!r}, nvars={self.nvars})"


def variables(nvars: int):
    """All ring variables as polynomials, in order."""
    return tuple(Polynomial.variable(i, nvars) for i in range(nvars))


# -- parsing -------------------------------------------------------------------

class ParseError(ValueError):
    pass


# a standalone integer immediately followed by a name or an opening parenthesis
_IMPLICIT_COEFF = re.compile(r"(?<![\w.])(\d+)\s*(?=[A-Za-z_(])")


def parse(text: str, names: Sequence[str]) -> Polynomial:
    """Parse ``3/2*u^2*v - v^3 + 1`` style text over the given variables.

    Division is allowed only by nonzero constants; powers need nonnegative
    integer exponents. A coefficient may be juxtaposed with what follows
    (``3u^2``, ``3/2 u*v``, ``2(u + v)``).
    """
    names = list(names)
    n = len(names)
    index = {name: i for i, name in enumerate(names)}
    src = text.strip()
    if not src:
        raise ParseError("empty polynomial")
    try:
        tree = ast.parse(_IMPLICIT_COEFF.sub(r"\1*", src).replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node) -> Polynomial:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Polynomial.constant(node.value, n)
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise ParseError(f"unknown variable {node.id!r} in {text!r}")
            return Polynomial.variable(index[node.id], n)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                right = ev(node.right)
                if not right.is_constant() or right.constant_value().denominator != 1 or right.constant_value() < 0:
                    raise ParseError(f"exponent must be a nonnegative integer in {text!r}")
                return left ** int(right.constant_value())
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise ParseError(f"division by a non-constant or zero in {text!r}")
                return left.scale(1 / right.constant_value())
        raise ParseError(f"unsupported syntax in {text!r}")

    return ev(tree)


def content_gcd(polys: Iterable[Polynomial]) -> Fraction:
    """Positive rational gcd of all coefficients."""
    num = 0
    den = 1
    for p in polys:
        for c in p.terms.values():
            num = math.gcd(num, c.numerator)
            den = math.lcm(den, c.denominator)
    return Fraction(num, den) if num else Fraction(0)
