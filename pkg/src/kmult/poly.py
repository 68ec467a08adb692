"""Multivariate polynomials over Q and elements of free modules A^N.

A monomial is a bare tuple of exponents of length d.  The fixed order
is graded reverse lexicographic with z1 > z2 > ... > zd, extended to
module terms by comparing monomials first and breaking ties toward the
lower component index.  It is degree compatible: |a| > |b| implies
z^a > z^b, which is what makes leading-term counts compute filtration
dimensions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import ZeroInput

Mono = tuple  # tuple[int, ...] of length d


def mono_deg(a: Mono) -> int:
    return sum(a)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def grevlex_key(a: Mono):
    """Sort key; bigger key = bigger monomial in grevlex with z1 > ... > zd."""
    return (sum(a),) + tuple(-e for e in reversed(a))


def term_key(term):
    """Key for a module term (component, monomial); lower component wins ties."""
    comp, mono = term
    return (grevlex_key(mono), -comp)


def monomials_of_degree(d: int, n: int):
    """All exponent tuples in d variables of total degree exactly n."""
    if d == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in monomials_of_degree(d - 1, n - first):
            yield (first,) + rest


def monomials_up_to(d: int, n: int):
    for k in range(n + 1):
        yield from monomials_of_degree(d, k)


def count_monomials_up_to(d: int, n: int) -> int:
    """Number of monomials of degree <= n in d variables: C(n+d, d)."""
    if n < 0:
        return 0
    num, den = 1, 1
    for i in range(1, d + 1):
        num *= n + i
        den *= i
    return num // den


class Polynomial:
    """Element of Q[z1..zd]; terms maps exponent tuple -> nonzero Fraction."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms=None):
        self.d = d
        tt = {}
        for mono, c in (terms or {}).items():
            if len(mono) != d:
                raise ValueError("exponent tuple of wrong length")
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c != 0:
                tt[tuple(mono)] = c
        self.terms = tt

    @classmethod
    def zero(cls, d: int) -> "Polynomial":
        return cls(d)

    @classmethod
    def constant(cls, d: int, c) -> "Polynomial":
        return cls(d, {(0,) * d: Fraction(c)})

    @classmethod
    def one(cls, d: int) -> "Polynomial":
        return cls.constant(d, 1)

    @classmethod
    def variable(cls, d: int, i: int, power: int = 1) -> "Polynomial":
        e = [0] * d
        e[i] = power
        return cls(d, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, d: int, mono: Mono, c=1) -> "Polynomial":
        return cls(d, {tuple(mono): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mono_deg(m) == 0 for m in self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono_deg(m) for m in self.terms), default=-1)

    def order(self) -> int:
        if not self.terms:
            raise ZeroInput("order of the zero polynomial")
        return min(mono_deg(m) for m in self.terms)

    def leading(self):
        """(monomial, coefficient) of the largest term."""
        m = max(self.terms, key=grevlex_key)
        return m, self.terms[m]

    def __add__(self, other: "Polynomial") -> "Polynomial":
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return Polynomial(self.d, acc)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, Fraction(0)) - c
        return Polynomial(self.d, acc)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.d, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            acc = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mono_mul(m1, m2)
                    acc[m] = acc.get(m, Fraction(0)) + c1 * c2
            return Polynomial(self.d, acc)
        c = Fraction(other)
        return Polynomial(self.d, {m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        out = Polynomial.one(self.d)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "Polynomial":
        return self * c

    def truncate(self, k: int) -> "Polynomial":
        return Polynomial(self.d, {m: c for m, c in self.terms.items() if mono_deg(m) <= k})

    def homogeneous_component(self, m: int) -> "Polynomial":
        return Polynomial(self.d, {mo: c for mo, c in self.terms.items() if mono_deg(mo) == m})

    def evaluate(self, point) -> Fraction:
        if len(point) != self.d:
            raise ValueError("point of wrong dimension")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def substitute(self, images) -> "Polynomial":
        """Ring map z_i -> images[i]; images are polynomials over a common ring."""
        if len(images) != self.d:
            raise ValueError("need one image per variable")
        d_out = images[0].d
        out = Polynomial.zero(d_out)
        for m, c in self.terms.items():
            term = Polynomial.constant(d_out, c)
            for img, e in zip(images, m):
                for _ in range(e):
                    term = term * img
            out = out + term
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)})"


VAR_NAMES_2 = ("z", "w")


def var_names(d: int):
    if d == 1:
        return ("z",)
    if d == 2:
        return VAR_NAMES_2
    return tuple(f"z{i + 1}" for i in range(d))


def format_polynomial(p: Polynomial, names=None) -> str:
    if p.is_zero():
        return "0"
    names = names or var_names(p.d)
    parts = []
    for mono, c in p.sorted_terms():
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        if not body:
            chunk = str(abs(c))
        elif abs(c) == 1:
            chunk = body
        else:
            chunk = f"{abs(c)}*{body}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, chunk))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, chunk in parts[1:]:
        text += f" {sign} {chunk}"
    return text


class VectorPolynomial:
    """Element of the free module A^N: a tuple of N polynomials."""

    __slots__ = ("d", "components")

    def __init__(self, components):
        comps = tuple(components)
        if not comps:
            raise ValueError("a vector polynomial needs at least one component")
        d = comps[0].d
        if any(p.d != d for p in comps):
            raise ValueError("components over different rings")
        self.d = d
        self.components = comps

    @classmethod
    def zero(cls, d: int, n: int) -> "VectorPolynomial":
        return cls([Polynomial.zero(d)] * n)

    @classmethod
    def unit(cls, d: int, n: int, i: int) -> "VectorPolynomial":
        comps = [Polynomial.zero(d)] * n
        comps[i] = Polynomial.one(d)
        return cls(comps)

    @classmethod
    def wrap(cls, p: Polynomial) -> "VectorPolynomial":
        return cls([p])

    @property
    def n(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    def degree(self) -> int:
        return max(p.degree() for p in self.components)

    def order(self) -> int:
        if self.is_zero():
            raise ZeroInput("order of the zero vector")
        return min(p.order() for p in self.components if not p.is_zero())

    def __add__(self, other: "VectorPolynomial") -> "VectorPolynomial":
        return VectorPolynomial([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "VectorPolynomial") -> "VectorPolynomial":
        return VectorPolynomial([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "VectorPolynomial":
        return VectorPolynomial([-p for p in self.components])

    def scale(self, p) -> "VectorPolynomial":
        """Module action of a polynomial or rational scalar."""
        if isinstance(p, Polynomial):
            return VectorPolynomial([p * q for q in self.components])
        return VectorPolynomial([q * p for q in self.components])

    def truncate(self, k: int) -> "VectorPolynomial":
        return VectorPolynomial([p.truncate(k) for p in self.components])

    def homogeneous_component(self, m: int) -> "VectorPolynomial":
        return VectorPolynomial([p.homogeneous_component(m) for p in self.components])

    def evaluate(self, point):
        return tuple(p.evaluate(point) for p in self.components)

    def substitute(self, images) -> "VectorPolynomial":
        return VectorPolynomial([p.substitute(images) for p in self.components])

    def term_dict(self):
        """Flatten to {(component, monomial): coefficient}."""
        out = {}
        for i, p in enumerate(self.components):
            for m, c in p.terms.items():
                out[(i, m)] = c
        return out

    @classmethod
    def from_term_dict(cls, d: int, n: int, terms) -> "VectorPolynomial":
        comps = [dict() for _ in range(n)]
        for (i, m), c in terms.items():
            comps[i][m] = c
        return cls([Polynomial(d, t) for t in comps])

    def leading_term(self):
        """((component, monomial), coefficient) of the largest module term."""
        td = self.term_dict()
        if not td:
            raise ZeroInput("leading term of zero")
        t = max(td, key=term_key)
        return t, td[t]

    def __eq__(self, other):
        return (isinstance(other, VectorPolynomial)
                and self.d == other.d and self.components == other.components)

    def __hash__(self):
        return hash((self.d, self.components))

    def __repr__(self):
        return f"VectorPolynomial({format_vector(self)})"


def format_vector(v: VectorPolynomial, names=None) -> str:
    if v.n == 1:
        return format_polynomial(v.components[0], names)
    return "(" + ", ".join(format_polynomial(p, names) for p in v.components) + ")"


def truncate(f: VectorPolynomial, k: int) -> VectorPolynomial:
    if k < 0:
        raise ValueError("truncation degree must be >= 0")
    return f.truncate(k)


def evaluate(f: VectorPolynomial, point):
    return f.evaluate(point)


def order_at_origin(f: VectorPolynomial) -> int:
    return f.order()


def homogeneous_component(f: VectorPolynomial, m: int) -> VectorPolynomial:
    if m < 0:
        raise ValueError("degree must be >= 0")
    return f.homogeneous_component(m)
