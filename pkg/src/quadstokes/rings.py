"""Exact polynomial and truncated power series arithmetic.

``BiPolynomial`` is a sparse integer polynomial in the three variables
``x``, ``y`` and ``t``.  ``TruncatedSeries`` holds rational coefficients of a
univariate power series up to a fixed order.  Nothing here ever touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

VARS = ("x", "y", "t")

Exponent = tuple[int, int, int]


def _as_exponent(e) -> Exponent:
    e = tuple(e)
    if len(e) > 3:
        raise ValueError(f"too many exponents: {e}")
    e = e + (0,) * (3 - len(e))
    if any(k < 0 for k in e):
        raise ValueError(f"negative exponent: {e}")
    return e  # type: ignore[return-value]


class BiPolynomial:
    """Sparse polynomial in ``x, y, t`` with integer coefficients.

    Instances are immutable and hashable.  Terms are kept in a dict from
    exponent triples to nonzero ints.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable | int | None = None):
        if terms is None:
            terms = {}
        elif isinstance(terms, int):
            terms = {(0, 0, 0): terms}
        elif not isinstance(terms, Mapping):
            terms = dict(terms)
        clean: dict[Exponent, int] = {}
        for e, c in terms.items():
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integral coefficient {c}")
                c = c.numerator
            c = int(c)
            if c:
                e = _as_exponent(e)
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def var(cls, name: str) -> "BiPolynomial":
        e = [0, 0, 0]
        e[VARS.index(name)] = 1
        return cls({tuple(e): 1})

    @classmethod
    def const(cls, c: int) -> "BiPolynomial":
        return cls({(0, 0, 0): c})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], var: str = "x") -> "BiPolynomial":
        """Univariate polynomial from a list of coefficients, lowest degree first."""
        k = VARS.index(var)
        terms = {}
        for d, c in enumerate(coeffs):
            e = [0, 0, 0]
            e[k] = d
            terms[tuple(e)] = c
        return cls(terms)

    # -- basic protocol --------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = BiPolynomial(other)
        if not isinstance(other, BiPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"BiPolynomial({self})"

    def __str__(self):
        return render(self)

    def coeff(self, *exps: int) -> int:
        return self._terms.get(_as_exponent(exps), 0)

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in one variable.  The zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e) for e in self._terms)
        k = VARS.index(var)
        return max(e[k] for e in self._terms)

    def is_constant(self) -> bool:
        return all(e == (0, 0, 0) for e in self._terms)

    # -- ring operations -------------------------------------------------------

    def _coerce(self, other) -> "BiPolynomial":
        if isinstance(other, BiPolynomial):
            return other
        if isinstance(other, int):
            return BiPolynomial(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return BiPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for (a1, b1, c1), u in self._terms.items():
            for (a2, b2, c2), v in other._terms.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                out[e] = out.get(e, 0) + u * v
        return BiPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = BiPolynomial(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and substitution ---------------------------------------------

    def diff(self, var: str) -> "BiPolynomial":
        k = VARS.index(var)
        out = {}
        for e, c in self._terms.items():
            if e[k]:
                f = list(e)
                f[k] -= 1
                out[tuple(f)] = c * e[k]
        return BiPolynomial(out)

    def subs(self, var: str, value: "BiPolynomial | int") -> "BiPolynomial":
        """Replace every occurrence of ``var`` by ``value``."""
        k = VARS.index(var)
        value = self._coerce(value)
        powers: dict[int, BiPolynomial] = {0: BiPolynomial(1)}
        result = BiPolynomial()
        for e, c in self._terms.items():
            d = e[k]
            if d not in powers:
                powers[d] = value**d
            rest = list(e)
            rest[k] = 0
            result = result + BiPolynomial({tuple(rest): c}) * powers[d]
        return result

    def evaluate(self, x: int = 0, y: int = 0, t: int = 0):
        """Value at an integer (or rational) point."""
        total = 0
        for (a, b, c), coef in self._terms.items():
            total += coef * x**a * y**b * t**c
        return total

    def __call__(self, x=0, y=0, t=0):
        return self.evaluate(x, y, t)

    def coefficient_in(self, var: str, d: int) -> "BiPolynomial":
        """Coefficient of ``var**d`` as a polynomial in the remaining variables."""
        k = VARS.index(var)
        out = {}
        for e, c in self._terms.items():
            if e[k] == d:
                f = list(e)
                f[k] = 0
                out[tuple(f)] = c
        return BiPolynomial(out)

    def reverse(self, var: str, degree: int) -> "BiPolynomial":
        """``var**degree * p(1/var)``; raises if some exponent exceeds ``degree``."""
        k = VARS.index(var)
        out = {}
        for e, c in self._terms.items():
            if e[k] > degree:
                raise ValueError("degree too small for reversal")
            f = list(e)
            f[k] = degree - e[k]
            out[tuple(f)] = c
        return BiPolynomial(out)

    def coeff_list(self, var: str = "x") -> list[int]:
        """Coefficients of a univariate polynomial, lowest degree first."""
        k = VARS.index(var)
        if any(e[j] for e in self._terms for j in range(3) if j != k):
            raise ValueError(f"not univariate in {var}: {self}")
        out = [0] * (self.degree(var) + 1)
        for e, c in self._terms.items():
            out[e[k]] = c
        return out

    def divexact(self, other: "BiPolynomial", var: str = "x") -> "BiPolynomial":
        """Exact quotient of univariate polynomials; ValueError if a remainder is left."""
        num = self.coeff_list(var)
        den = other.coeff_list(var)
        while den and den[-1] == 0:
            den.pop()
        if not den:
            raise ZeroDivisionError("division by zero polynomial")
        quot = [0] * max(len(num) - len(den) + 1, 0)
        for i in range(len(num) - len(den), -1, -1):
            q, r = divmod(num[i + len(den) - 1], den[-1])
            if r:
                raise ValueError(f"{self} is not divisible by {other}")
            quot[i] = q
            for j, d in enumerate(den):
                num[i + j] -= q * d
        if any(num):
            raise ValueError(f"{self} is not divisible by {other}")
        return BiPolynomial.from_coeffs(quot, var)


X = BiPolynomial.var("x")
Y = BiPolynomial.var("y")
T = BiPolynomial.var("t")
ONE = BiPolynomial(1)
ZERO = BiPolynomial()


def _term_key(e: Exponent):
    return (sum(e), tuple(-k for k in e))


def render(p: BiPolynomial) -> str:
    """Canonical text form, e.g. ``1 + 5*x + 5*x^2 + x^3``.

    Terms are sorted by total degree, and within one degree ``x`` powers come
    before ``y`` powers before ``t`` powers.
    """
    if not p:
        return "0"
    parts = []
    for e in sorted(p.terms, key=_term_key):
        c = p.coeff(*e)
        factors = []
        for name, k in zip(VARS, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def parse(text: str) -> BiPolynomial:
    """Inverse of :func:`render` (accepts any sum of monomials ``c*x^a*y^b*t^c``)."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    terms: dict[Exponent, int] = {}
    tokens = []
    start = 0
    for i, ch in enumerate(text):
        if ch in "+-" and i > start:
            tokens.append(text[start:i])
            start = i
    tokens.append(text[start:])
    for tok in tokens:
        sign = 1
        if tok[0] in "+-":
            sign = -1 if tok[0] == "-" else 1
            tok = tok[1:]
        coef = 1
        e = [0, 0, 0]
        for factor in tok.split("*"):
            if factor.isdigit():
                coef *= int(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in VARS:
                raise ValueError(f"bad factor {factor!r}")
            e[VARS.index(name)] += int(power) if power else 1
        key = tuple(e)
        terms[key] = terms.get(key, 0) + sign * coef
    return BiPolynomial(terms)


def f_to_h_transform(F: BiPolynomial, n_ie: int) -> BiPolynomial:
    """``(x-1)^n F(1/(x-1), (1+(y-1)x)/(x-1))`` expanded in the polynomial ring.

    Each term ``c x^a y^b`` contributes ``c (x-1)^(n-a-b) (1+(y-1)x)^b``.
    """
    if F.degree("t") > 0:
        raise ValueError("F must not involve t")
    if F.degree() > n_ie:
        raise ValueError(f"total degree {F.degree()} exceeds {n_ie}: transform is not polynomial")
    xm1 = X - 1
    shifted = 1 + (Y - 1) * X
    result = ZERO
    for (a, b, _), c in F.items():
        result = result + c * xm1 ** (n_ie - a - b) * shifted**b
    return result


def glue(A: BiPolynomial, B: BiPolynomial) -> BiPolynomial:
    """Pair the ``t^k`` coefficients of two open h-vectors: ``sum_k A_k B_k x^k``."""
    result = ZERO
    for k in range(min(A.degree("t"), B.degree("t")) + 1):
        result = result + A.coefficient_in("t", k) * B.coefficient_in("t", k) * X**k
    return result


# ---------------------------------------------------------------------------
# truncated series


class TruncatedSeries:
    """Power series ``sum c_k X^k`` known up to (excluding) degree ``order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(coeffs)
        coeffs = coeffs[:order] + [Fraction(0)] * (order - len(coeffs))
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    @classmethod
    def gen(cls, order: int) -> "TruncatedSeries":
        """The series ``X``."""
        return cls([0, 1], order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]})"

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            m = min(self.order, other.order)
            return self.coeffs[:m] == other.coeffs[:m]
        return NotImplemented

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = min(self.order, other.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:m], other.coeffs[:m])], m)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = min(self.order, other.order)
        out = [Fraction(0)] * m
        a, b = self.coeffs, other.coeffs
        for i in range(m):
            if a[i]:
                ai = a[i]
                for j in range(m - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return TruncatedSeries(out, m)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return TruncatedSeries([c / k for c in self.coeffs], self.order)

    def __pow__(self, k: int):
        result = TruncatedSeries.one(self.order)
        for _ in range(k):
            result = result * self
        return result

    def dilate(self, k: int) -> "TruncatedSeries":
        """The series ``f(X^k)``."""
        out = [Fraction(0)] * self.order
        for i, c in enumerate(self.coeffs):
            if i * k < self.order:
                out[i * k] += c
        return TruncatedSeries(out, self.order)

    def shift(self) -> "TruncatedSeries":
        """Multiply by ``X``."""
        return TruncatedSeries([Fraction(0)] + self.coeffs[:-1], self.order)

    def integers(self) -> list[int]:
        """Coefficients as ints; ValueError if any is not an integer."""
        out = []
        for k, c in enumerate(self.coeffs):
            if c.denominator != 1:
                raise ValueError(f"coefficient {k} is not integral: {c}")
            out.append(c.numerator)
        return out

    def assert_counting(self) -> list[int]:
        """Coefficients as ints, checked to be nonnegative integers."""
        out = self.integers()
        bad = [k for k, c in enumerate(out) if c < 0]
        if bad:
            raise ValueError(f"negative coefficients at degrees {bad}")
        return out


def series_fixed_point(
    rhs: Callable[[TruncatedSeries], TruncatedSeries], order: int
) -> TruncatedSeries:
    """Solve ``f = rhs(f)`` degree by degree, starting from zero.

    ``rhs`` must carry an ``X`` prefactor so that coefficient ``k`` of the
    result only depends on lower coefficients; iteration then stabilises
    after ``order`` rounds.  A non-contractive ``rhs`` is rejected.
    """
    f = TruncatedSeries.zero(order)
    for _ in range(order + 1):
        g = rhs(f)
        if g == f:
            break
        f = g
    else:
        raise ValueError("right-hand side is not contractive (missing X prefactor?)")
    if rhs(f) != f:
        raise ValueError("right-hand side is not contractive (missing X prefactor?)")
    return f
