"""Futaki invariant of a Fano complete intersection from its eigenvalue data.

Normalizations used throughout:

* ``theta_invariant`` is the integral of theta * omega_FS^n over M (n = N - s),
  i.e. against the Fubini-Study form, whose total volume on M is prod(d_i).
* The Kaehler form in c_1(M) is omega = m * omega_FS, so vol(M) = m^n prod(d_i)
  and the theta term of the Futaki invariant carries a factor m^(n+1).
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotFano
from .multipoly import GaussianRational, as_gaussian
from .parser import Convention

ZERO = GaussianRational(0)


@dataclass(frozen=True)
class FanoData:
    N: int
    degrees: tuple

    @property
    def s(self):
        return len(self.degrees)

    @property
    def n(self):
        return self.N - self.s

    @property
    def m(self):
        return self.N + 1 - sum(self.degrees)

    @property
    def degree_product(self):
        p = 1
        for d in self.degrees:
            p *= d
        return p


def fano_index(N, degrees):
    degrees = tuple(int(d) for d in degrees)
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be >= 1, got %r" % (degrees,))
    if len(degrees) > N:
        raise ValueError("s = %d polynomials exceed ambient dimension N = %d" % (len(degrees), N))
    fano = FanoData(N, degrees)
    if fano.m < 1:
        raise NotFano("m = N + 1 - sum(d) = %d + 1 - %d = %d is not positive; "
                      "the complete intersection is not Fano" % (N, sum(degrees), fano.m))
    return fano


def _kappas(fano, kappas):
    kappas = [as_gaussian(k) for k in kappas]
    if len(kappas) != fano.s:
        raise DimensionMismatch("expected %d eigenvalues, got %d" % (fano.s, len(kappas)))
    return kappas


def theta_invariant(fano, kappas):
    """Integral of theta * omega_FS^n over M: prod(d)/(n+1) * sum(kappa_k/d_k)."""
    kappas = _kappas(fano, kappas)
    weighted = sum((k / d for k, d in zip(kappas, fano.degrees)), ZERO)
    return weighted * Fraction(fano.degree_product, fano.n + 1)


@dataclass(frozen=True)
class ThetaSequence:
    """values[k-1] is the integral of (theta + omega)^(N-k+1) over M_k."""

    values: tuple

    @property
    def final(self):
        return self.values[-1]


def theta_recursion(fano, kappas):
    """Build I_1..I_s from I_1 = kappa_1, I_k = d_k I_{k-1} + kappa_k d_1...d_{k-1}."""
    kappas = _kappas(fano, kappas)
    if not kappas:
        raise ValueError("recursion needs at least one polynomial")
    values = [kappas[0]]
    prefix = fano.degrees[0]
    for d, kappa in zip(fano.degrees[1:], kappas[1:]):
        values.append(values[-1] * d + kappa * prefix)
        prefix *= d
    seq = ThetaSequence(tuple(values))
    expected = theta_invariant(fano, kappas) * (fano.n + 1)
    if seq.final != expected:
        raise AssertionError("recursion %s disagrees with closed form %s" % (seq.final, expected))
    return seq


def futaki_closed_form(fano, kappas):
    kappas = _kappas(fano, kappas)
    m, n = fano.m, fano.n
    total = sum(kappas, ZERO)
    weighted = sum((k / d for k, d in zip(kappas, fano.degrees)), ZERO)
    return (weighted * Fraction(m, n + 1) - total) * (m ** n * fano.degree_product)


def futaki_assembled(fano, kappas):
    """const * vol(M) + m * (theta integral against omega = m * omega_FS), const = -kappa."""
    kappas = _kappas(fano, kappas)
    m, n = fano.m, fano.n
    constant = -sum(kappas, ZERO)
    volume = m ** n * fano.degree_product
    value = constant * volume + theta_invariant(fano, kappas) * m ** (n + 1)
    closed = futaki_closed_form(fano, kappas)
    if value != closed:
        raise AssertionError("assembled %s != closed form %s" % (value, closed))
    return value


def hypersurface_futaki(N, d, kappa):
    """-(N+1-d)^(N-1) (N+1)(d-1)/N * kappa."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d > N:
        raise NotFano("a degree-%d hypersurface in CP^%d is not Fano" % (d, N))
    kappa = as_gaussian(kappa)
    value = -kappa * Fraction((N + 1 - d) ** (N - 1) * (N + 1) * (d - 1), N)
    closed = futaki_closed_form(FanoData(N, (d,)), [kappa])
    if value != closed:
        raise AssertionError("hypersurface shortcut %s != general formula %s" % (value, closed))
    return value


def apply_convention(F, fano, convention):
    """Scale by 3 for surfaces under the Ding-Tian / Jeffres normalization."""
    if Convention.parse(getattr(convention, "value", convention)) is Convention.DT_SURFACE_X3 \
            and fano.n == 2:
        return as_gaussian(F) * 3
    return as_gaussian(F)


class Sign(enum.Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"


def re_sign_report(F):
    re = as_gaussian(F).re
    if re < 0:
        return Sign.NEGATIVE
    if re > 0:
        return Sign.POSITIVE
    return Sign.ZERO
