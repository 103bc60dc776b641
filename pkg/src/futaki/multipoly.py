"""Exact arithmetic kernel: Gaussian rationals, sparse polynomials, linear solve.

Rationals are :class:`fractions.Fraction` (always stored reduced, with a
positive denominator).  A monomial is a plain tuple of non-negative exponents.
"""

from fractions import Fraction
from itertools import combinations_with_replacement
from types import MappingProxyType

from .errors import DimensionMismatch, NonHomogeneous, ZeroPolynomial

Rational = Fraction

__all__ = [
    "Rational", "GaussianRational", "Polynomial", "as_gaussian",
    "poly_add", "poly_mul", "homogeneous_degree", "partial_derivative",
    "monomials_of_degree", "solve_linear", "solve_sparse", "matrix_rank",
    "format_rational",
]


def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


_FRACTION_ZERO = Fraction(0)


class GaussianRational:
    """An exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floats are not exact; pass a Fraction or int")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _of(cls, re, im=_FRACTION_ZERO):
        """Trusted constructor for parts that are already Fractions."""
        self = object.__new__(cls)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @property
    def is_real(self):
        return self.im == 0

    def conjugate(self):
        return GaussianRational._of(self.re, -self.im)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._of(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._of(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.im == 0 and other.im == 0:
            return GaussianRational._of(self.re * other.re)
        return GaussianRational._of(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.im == 0:
            if other.re == 0:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return GaussianRational._of(self.re / other.re, self.im / other.re)
        norm = other.re * other.re + other.im * other.im
        num = self * other.conjugate()
        return GaussianRational._of(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** -k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return GaussianRational._of(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return "GaussianRational(%r)" % str(self)

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = format_rational(self.im) + "i"
        if self.re == 0:
            return imag
        if not imag.startswith("-"):
            imag = "+" + imag
        return format_rational(self.re) + imag


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, Fraction):
        return GaussianRational._of(value)
    if isinstance(value, int):
        return GaussianRational._of(Fraction(value))
    return NotImplemented


def as_gaussian(value):
    """Coerce int / Fraction / GaussianRational; anything else is a TypeError."""
    g = _coerce(value)
    if g is NotImplemented:
        raise TypeError("cannot interpret %r as a Gaussian rational" % (value,))
    return g


ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def grlex_key(exps):
    # descending total degree, then descending exponent of z0, z1, ...
    return (-sum(exps), tuple(-e for e in exps))


class Polynomial:
    """Sparse polynomial in ``num_vars`` variables over the Gaussian rationals.

    ``terms`` maps exponent tuples to nonzero coefficients.  Instances are
    immutable; arithmetic returns new polynomials.
    """

    __slots__ = ("num_vars", "_terms", "_hash")

    def __init__(self, num_vars, terms=None):
        if num_vars < 1:
            raise ValueError("need at least one variable")
        clean = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != num_vars:
                raise DimensionMismatch(
                    "monomial %r has %d exponents, expected %d" % (mono, len(mono), num_vars))
            if any((not isinstance(e, int)) or e < 0 for e in mono):
                raise ValueError("exponents must be non-negative integers: %r" % (mono,))
            coeff = as_gaussian(coeff)
            if coeff:
                clean[mono] = coeff
        self.num_vars = num_vars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, num_vars, terms):
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.num_vars = num_vars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, num_vars):
        return cls._raw(num_vars, {})

    @classmethod
    def constant(cls, num_vars, value):
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def variable(cls, num_vars, index):
        if not 0 <= index < num_vars:
            raise IndexError("variable index %d out of range" % index)
        exps = [0] * num_vars
        exps[index] = 1
        return cls._raw(num_vars, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls(len(exps), {tuple(exps): coeff})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def coefficient(self, mono):
        return self._terms.get(tuple(mono), ZERO)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def monomials(self):
        """Monomials in graded-lex order (highest degree first)."""
        return sorted(self._terms, key=grlex_key)

    def degrees(self):
        return {sum(m) for m in self._terms}

    def _check(self, other):
        if self.num_vars != other.num_vars:
            raise DimensionMismatch(
                "polynomials in %d and %d variables" % (self.num_vars, other.num_vars))

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        g = _coerce(other)
        if g is NotImplemented:
            return g
        return Polynomial.constant(self.num_vars, g)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, ZERO) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial._raw(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.num_vars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, factor):
        factor = as_gaussian(factor)
        if not factor:
            return Polynomial.zero(self.num_vars)
        return Polynomial._raw(self.num_vars, {m: c * factor for m, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            g = _coerce(other)
            if g is NotImplemented:
                return g
            return self.scale(g)
        self._check(other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, ZERO) + c1 * c2
        return Polynomial._raw(self.num_vars, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.num_vars == other.num_vars and self._terms == other._terms
        g = _coerce(other)
        if g is NotImplemented:
            return g
        return self == Polynomial.constant(self.num_vars, g)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    def homogeneous_degree(self):
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no degree")
        degs = self.degrees()
        if len(degs) > 1:
            raise NonHomogeneous(degs)
        return degs.pop()

    def partial_derivative(self, index):
        if not 0 <= index < self.num_vars:
            raise IndexError("variable index %d out of range for %d variables"
                             % (index, self.num_vars))
        out = {}
        for mono, c in self._terms.items():
            e = mono[index]
            if e:
                lowered = mono[:index] + (e - 1,) + mono[index + 1:]
                out[lowered] = c * e
        return Polynomial._raw(self.num_vars, out)

    def to_string(self, variables=None):
        """Render in the parser's grammar; re-parsing gives back an equal polynomial."""
        if variables is None:
            variables = ["z%d" % i for i in range(self.num_vars)]
        if len(variables) != self.num_vars:
            raise DimensionMismatch("expected %d variable names" % self.num_vars)
        if not self._terms:
            return "0"
        pieces = []
        for mono in self.monomials():
            coeff = self._terms[mono]
            factors = []
            for name, e in zip(variables, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            negative = False
            if coeff.is_real:
                negative = coeff.re < 0
                mag = abs(coeff.re)
                ctext = None if (mag == 1 and factors) else format_rational(mag)
            elif coeff.re == 0:
                negative = coeff.im < 0
                ctext = str(GaussianRational(0, abs(coeff.im)))
            else:
                ctext = "(%s)" % coeff
            body = "*".join(([ctext] if ctext else []) + factors)
            if not pieces:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append(("- " if negative else "+ ") + body)
        return " ".join(pieces)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return "Polynomial(%d, %r)" % (self.num_vars, self.to_string())


def poly_add(a, b):
    return a + b


def poly_mul(a, b):
    return a * b


def homogeneous_degree(poly):
    return poly.homogeneous_degree()


def partial_derivative(poly, var_index):
    return poly.partial_derivative(var_index)


def monomials_of_degree(num_vars, degree):
    """All exponent tuples of total ``degree`` in ``num_vars`` variables, grlex order."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(num_vars), degree):
        exps = [0] * num_vars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    out.sort(key=grlex_key)
    return out


def solve_linear(matrix, rhs):
    """Solve ``matrix @ x = rhs`` exactly.

    Returns one solution (free variables set to zero) as a list of
    GaussianRational, or ``None`` when the system is inconsistent.
    """
    if len(rhs) != len(matrix):
        raise DimensionMismatch("rhs has %d entries for %d rows" % (len(rhs), len(matrix)))
    cols = len(matrix[0]) if matrix else 0
    rows = []
    for row in matrix:
        if len(row) != cols:
            raise DimensionMismatch("ragged matrix")
        rows.append({j: as_gaussian(v) for j, v in enumerate(row) if v})
    return solve_sparse(rows, rhs, cols)


def solve_sparse(rows, rhs, ncols):
    """Like :func:`solve_linear` with each row given as ``{column: value}``."""
    echelon = SparseEchelon()
    for row, b in zip(rows, rhs):
        if not echelon.add(row, as_gaussian(b)):
            return None
    return echelon.solution(ncols)


def matrix_rank(rows):
    """Rank of a matrix given as sparse ``{column: value}`` rows."""
    echelon = SparseEchelon()
    for row in rows:
        echelon.add(row, ZERO)
    return len(echelon.pivots)


class SparseEchelon:
    """Incremental row echelon form over the Gaussian rationals.

    Each stored pivot row only mentions its own pivot, free columns and
    pivots inserted after it, so reduction in insertion order terminates.
    """

    def __init__(self):
        self.pivots = {}  # column -> (order, row dict, rhs)
        self._order = 0

    def add(self, row, b=ZERO):
        """Insert a row; returns False if it exposes an inconsistency."""
        row = {c: as_gaussian(v) for c, v in row.items() if v}
        b = as_gaussian(b)
        while True:
            hits = [c for c in row if c in self.pivots]
            if not hits:
                break
            col = min(hits, key=lambda c: self.pivots[c][0])
            _, prow, pb = self.pivots[col]
            f = row[col]
            for c, v in prow.items():
                nv = row.get(c, ZERO) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            b = b - f * pb
        if not row:
            return not b
        col = min(row)
        inv = ONE / row[col]
        self.pivots[col] = (self._order, {c: v * inv for c, v in row.items()}, b * inv)
        self._order += 1
        return True

    def solution(self, ncols):
        x = [ZERO] * ncols
        for col, (_, prow, b) in sorted(self.pivots.items(), key=lambda kv: -kv[1][0]):
            acc = b
            for c, v in prow.items():
                if c != col:
                    acc = acc - v * x[c]
            x[col] = acc
        return x
