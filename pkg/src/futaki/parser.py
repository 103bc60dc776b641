"""Parsing of exact literals, polynomial expressions and JSON problem files.

Polynomial grammar::

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := base ("^" uint)?
    base   := identifier | literal | "(" expr ")" | "-" factor

Literals are rationals (``3``, ``-51/5``) optionally suffixed by ``i``; a
bare ``i`` is the imaginary unit unless declared as a variable (it may not
be).  Multiplication is never implicit.
"""

import enum
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NonHomogeneous, ParseError, ValidationError, ZeroPolynomial
from .multipoly import GaussianRational, Polynomial

MAX_EXPONENT = 64
MAX_AMBIENT_DIMENSION = 16

_RATIONAL_RE = re.compile(r"(-?)(\d+)(?:/(\d+))?")
_UNSIGNED_RATIONAL = r"\d+(?:/\d+)?"
_PURE_IMAG_RE = re.compile(r"(-?)(%s)?i" % _UNSIGNED_RATIONAL)
_GAUSSIAN_RE = re.compile(r"(-?%s)(?:([+-])(%s)?i)?" % (_UNSIGNED_RATIONAL, _UNSIGNED_RATIONAL))
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class Convention(enum.Enum):
    PAPER = "paper"
    DT_SURFACE_X3 = "dt-surface-x3"

    @classmethod
    def parse(cls, text):
        key = str(text).strip().lower().replace("_", "-")
        for conv in cls:
            if conv.value == key:
                return conv
        raise ValueError("unknown convention %r (expected 'paper' or 'dt-surface-x3')" % text)


def parse_rational(text):
    """Parse ``[-]digits[/digits]`` into a reduced Fraction."""
    stripped = text.strip()
    m = _RATIONAL_RE.fullmatch(stripped)
    if not m:
        raise ParseError("malformed rational %r" % text, stripped, _first_bad(stripped, "-0123456789/"))
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ParseError("zero denominator in %r" % text, stripped, stripped.index("/") + 1)
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign else value


def parse_gaussian(text):
    """Parse ``a``, ``a+bi``, ``a-bi``, ``bi``, ``i`` or ``-i`` forms."""
    stripped = re.sub(r"\s*([+-])\s*", r"\1", text.strip())
    m = _PURE_IMAG_RE.fullmatch(stripped)
    if m:
        sign, mag = m.groups()
        imag = parse_rational(mag) if mag else Fraction(1)
        return GaussianRational(0, -imag if sign else imag)
    m = _GAUSSIAN_RE.fullmatch(stripped)
    if not m:
        raise ParseError("malformed Gaussian rational %r" % text, stripped,
                         _first_bad(stripped, "-+0123456789/i"))
    real_text, sign, mag = m.groups()
    real = parse_rational(real_text)
    if sign is None:
        return GaussianRational(real)
    imag = parse_rational(mag) if mag else Fraction(1)
    return GaussianRational(real, -imag if sign == "-" else imag)


def _first_bad(text, allowed):
    for pos, ch in enumerate(text):
        if ch not in allowed:
            return pos
    return max(len(text) - 1, 0)


# -- expression parsing -------------------------------------------------------

def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch in "+-*^()":
            tokens.append((ch, ch, pos))
            pos += 1
        elif ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            num = int(text[start:pos])
            den = 1
            if pos < n and text[pos] == "/":
                pos += 1
                dstart = pos
                while pos < n and text[pos].isdigit():
                    pos += 1
                if dstart == pos:
                    raise ParseError("expected denominator digits", text, pos)
                den = int(text[dstart:pos])
                if den == 0:
                    raise ParseError("zero denominator", text, dstart)
            value = Fraction(num, den)
            if pos < n and text[pos] == "i" and not (pos + 1 < n and (text[pos + 1].isalnum() or text[pos + 1] == "_")):
                tokens.append(("num", GaussianRational(0, value), start))
                pos += 1
            else:
                tokens.append(("num", GaussianRational(value), start))
            if pos < n and (text[pos].isalpha() or text[pos] == "_" or text[pos] == "("):
                raise ParseError("implicit multiplication is not allowed; use '*'", text, pos)
        elif ch.isalpha() or ch == "_":
            m = _IDENT_RE.match(text, pos)
            tokens.append(("ident", m.group(0), pos))
            pos = m.end()
        else:
            raise ParseError("unexpected character %r" % ch, text, pos)
    tokens.append(("end", None, n))
    return tokens


class _ExprParser:
    def __init__(self, text, variables):
        self.text = text
        self.index = {name: k for k, name in enumerate(variables)}
        self.nvars = len(variables)
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def fail(self, reason, tok=None):
        tok = tok or self.peek()
        raise ParseError(reason, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("ident", "num", "("):
                self.fail("implicit multiplication is not allowed; use '*'")
            self.fail("unexpected %r" % tok[1])
        return result

    def expr(self):
        acc = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "-":
                self.fail("negative exponent")
            if tok[0] != "num" or not tok[1].is_real or tok[1].re.denominator != 1:
                self.fail("exponent must be a non-negative integer")
            self.take()
            e = tok[1].re.numerator
            if e > MAX_EXPONENT:
                self.fail("exponent %d exceeds limit %d" % (e, MAX_EXPONENT), tok)
            if self.peek()[0] == "^":
                self.fail("chained exponents are ambiguous; use parentheses")
            base = base ** e
        return base

    def base(self):
        tok = self.take()
        kind = tok[0]
        if kind == "num":
            return Polynomial.constant(self.nvars, tok[1])
        if kind == "ident":
            name = tok[1]
            if name in self.index:
                return Polynomial.variable(self.nvars, self.index[name])
            if name == "i":
                return Polynomial.constant(self.nvars, GaussianRational(0, 1))
            self.fail("unknown identifier %r" % name, tok)
        if kind == "(":
            inner = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        if kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail("unexpected %r" % tok[1], tok)


def parse_polynomial(text, variables):
    """Parse an expression over ``variables`` into an expanded Polynomial."""
    return _ExprParser(text, list(variables)).parse()


# -- problem files ------------------------------------------------------------

@dataclass(frozen=True)
class VectorFieldSpec:
    """Either ``diagonal_weights`` (rationals) or a full ``matrix`` is set."""

    diagonal_weights: tuple = None
    matrix: tuple = None

    @property
    def is_diagonal(self):
        if self.diagonal_weights is not None:
            return True
        return all(not self.matrix[i][j]
                   for i in range(len(self.matrix)) for j in range(len(self.matrix)) if i != j)

    def to_matrix(self):
        if self.matrix is not None:
            return [list(row) for row in self.matrix]
        n = len(self.diagonal_weights)
        return [[GaussianRational(self.diagonal_weights[i]) if i == j else GaussianRational(0)
                 for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class Problem:
    ambient_dimension: int
    variables: tuple
    polynomials: tuple  # of (name, Polynomial)
    vector_field: VectorFieldSpec
    convention: Convention = Convention.PAPER
    degrees: tuple = field(default=())

    @property
    def s(self):
        return len(self.polynomials)

    @property
    def polys(self):
        return [p for _, p in self.polynomials]


def _is_identifier(name):
    return isinstance(name, str) and _IDENT_RE.fullmatch(name) is not None


def problem_from_dict(data):
    """Validate a decoded problem document; raises ValidationError listing every issue."""
    errors = []
    if not isinstance(data, dict):
        raise ValidationError("problem must be a JSON object")
    known = {"ambient_dimension", "variables", "polynomials", "vector_field", "convention"}
    for key in sorted(set(data) - known):
        errors.append("unknown key %r" % key)

    N = data.get("ambient_dimension")
    if not isinstance(N, int) or isinstance(N, bool):
        raise ValidationError(errors + ["ambient_dimension must be an integer"])
    if not 1 <= N <= MAX_AMBIENT_DIMENSION:
        raise ValidationError(errors + ["ambient_dimension must be in 1..%d, got %d"
                                        % (MAX_AMBIENT_DIMENSION, N)])

    variables = data.get("variables")
    if variables is None:
        variables = ["z%d" % i for i in range(N + 1)]
    if not isinstance(variables, list):
        raise ValidationError(errors + ["variables must be a list of identifiers"])
    if len(variables) != N + 1:
        errors.append("expected %d variables for ambient_dimension %d, got %d"
                      % (N + 1, N, len(variables)))
    bad = [v for v in variables if not _is_identifier(v)]
    if bad:
        errors.append("invalid variable names %r" % bad)
    if "i" in variables:
        errors.append("'i' is reserved for the imaginary unit")
    if len(set(map(str, variables))) != len(variables):
        errors.append("variable names must be unique")
    if errors:
        raise ValidationError(errors)

    raw_polys = data.get("polynomials", [])
    if not isinstance(raw_polys, list):
        raise ValidationError("polynomials must be a list")
    if len(raw_polys) > N:
        errors.append("too many polynomials: s = %d exceeds N = %d" % (len(raw_polys), N))
    polys = []
    degrees = []
    names = set()
    for k, entry in enumerate(raw_polys):
        if not isinstance(entry, dict) or not isinstance(entry.get("expr"), str):
            errors.append("polynomials[%d] must be an object with an 'expr' string" % k)
            continue
        name = str(entry.get("name", "F%d" % (k + 1)))
        if name in names:
            errors.append("duplicate polynomial name %r" % name)
        names.add(name)
        try:
            poly = parse_polynomial(entry["expr"], variables)
            d = poly.homogeneous_degree()
        except ParseError as exc:
            errors.append("polynomial %r: %s" % (name, exc))
            continue
        except NonHomogeneous as exc:
            errors.append("polynomial %r: NonHomogeneous: %s" % (name, exc))
            continue
        except ZeroPolynomial:
            errors.append("polynomial %r: ZeroPolynomial: expression is identically zero" % name)
            continue
        if d < 1:
            errors.append("polynomial %r: NonHomogeneous: degree-0 constant is not a defining equation"
                          % name)
            continue
        polys.append((name, poly))
        degrees.append(d)

    vf = _vector_field_from(data.get("vector_field"), N, errors)

    convention = Convention.PAPER
    if "convention" in data:
        try:
            convention = Convention.parse(data["convention"])
        except ValueError as exc:
            errors.append(str(exc))

    if errors:
        raise ValidationError(errors)
    return Problem(N, tuple(variables), tuple(polys), vf, convention, tuple(degrees))


def _vector_field_from(spec, N, errors):
    if not isinstance(spec, dict) or len(spec) != 1 or not (set(spec) <= {"diagonal_weights", "matrix"}):
        errors.append("vector_field must be {\"diagonal_weights\": [...]} or {\"matrix\": [[...]]}")
        return None
    if "diagonal_weights" in spec:
        raw = spec["diagonal_weights"]
        if not isinstance(raw, list) or len(raw) != N + 1:
            errors.append("diagonal_weights must list %d rationals" % (N + 1))
            return None
        weights = []
        for k, w in enumerate(raw):
            try:
                weights.append(parse_rational(str(w)))
            except ParseError as exc:
                errors.append("diagonal_weights[%d]: %s" % (k, exc.reason))
        return VectorFieldSpec(diagonal_weights=tuple(weights)) if len(weights) == N + 1 else None
    raw = spec["matrix"]
    if (not isinstance(raw, list) or len(raw) != N + 1
            or any(not isinstance(row, list) or len(row) != N + 1 for row in raw)):
        errors.append("matrix must be %d x %d" % (N + 1, N + 1))
        return None
    rows = []
    ok = True
    for i, row in enumerate(raw):
        parsed = []
        for j, entry in enumerate(row):
            try:
                parsed.append(parse_gaussian(str(entry)))
            except ParseError as exc:
                errors.append("matrix[%d][%d]: %s" % (i, j, exc.reason))
                ok = False
        rows.append(tuple(parsed))
    return VectorFieldSpec(matrix=tuple(rows)) if ok else None


def load_problem(contents):
    """Parse and validate problem-file text (JSON)."""
    try:
        data = json.loads(contents)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc.msg, position=exc.pos) from None
    return problem_from_dict(data)
