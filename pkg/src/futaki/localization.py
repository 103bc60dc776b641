"""Fixed-point (Atiyah-Bott) oracle for the theta integral of a diagonal field.

For a traceless diagonal field with pairwise distinct weights a_0..a_N the
torus fixed points of CP^N are the coordinate points p_a.  At p_a the
Hamiltonian theta takes the value c_a = -a_a, and the weights of the tangent
space are differences of the c's.  Each hypersurface {F_k = 0} is cut out by
an equivariant section whose equivariant first Chern class restricts to
``d_k * t + kappa_k`` at a fixed point, so the theta integral over M becomes

    1/(n+1) * sum_a H(c_a) / prod_{b != a} (c_a - c_b),
    H(t) = t^(n+1) * prod_k (d_k t + kappa_k).

Nothing here calls the closed-form theta formula; the two are compared by
:func:`oracle_cross_check`.
"""

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

from .action import VectorField, eigenvalue_kappa, normalize_traceless
from .errors import DimensionMismatch, DuplicateWeights
from .formula import fano_index, theta_invariant
from .multipoly import GaussianRational, Polynomial, as_gaussian

ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def _complete_homogeneous_list(k, values):
    """[h_0, ..., h_k] of values in one pass of the recurrence."""
    h = [ONE] + [ZERO] * k
    for c in values:
        c = as_gaussian(c)
        for j in range(1, k + 1):
            h[j] = h[j] + c * h[j - 1]
    return h


def complete_homogeneous(k, values):
    """h_k(values): sum of all degree-k monomials; h_0 = 1 and h_k = 0 for k < 0."""
    if k < 0:
        return ZERO
    return _complete_homogeneous_list(k, values)[k]


class SymPolyCache:
    """Memoized h_k of a fixed list of values."""

    def __init__(self, values):
        self.values = [as_gaussian(v) for v in values]
        self._h = [ONE]

    def __call__(self, k):
        if k < 0:
            return ZERO
        if k >= len(self._h):
            self._h = _complete_homogeneous_list(max(k, 2 * len(self._h)), self.values)
        return self._h[k]


def _check_distinct(values):
    seen = {}
    for idx, v in enumerate(values):
        if v in seen:
            raise DuplicateWeights(
                "fixed points are not isolated: weights %d and %d coincide (%s)"
                % (seen[v], idx, v))
        seen[v] = idx


def fixed_point_residues(c):
    """1 / prod_{b != a} (c_a - c_b) for each a."""
    c = [as_gaussian(v) for v in c]
    _check_distinct(c)
    residues = []
    for a, ca in enumerate(c):
        denom = ONE
        for b, cb in enumerate(c):
            if b != a:
                denom = denom * (ca - cb)
        residues.append(ONE / denom)
    return residues


def fixed_point_sums(polys, c):
    """fixed_point_sum for several integrands, sharing residues and powers of c_a."""
    c = [as_gaussian(v) for v in c]
    residues = fixed_point_residues(c)
    polys = [[as_gaussian(v) for v in coeffs] for coeffs in polys]
    top = max((len(coeffs) for coeffs in polys), default=0)
    # scaled[a][j] = c_a^j / prod_{b != a} (c_a - c_b)
    scaled = []
    for ca, r in zip(c, residues):
        row = [r]
        for _ in range(1, top):
            row.append(row[-1] * ca)
        scaled.append(row)
    totals = []
    for coeffs in polys:
        total = ZERO
        for j, coeff in enumerate(coeffs):
            if coeff:
                total = total + coeff * sum((row[j] for row in scaled), ZERO)
        totals.append(total)
    return totals


def fixed_point_sum(poly_coeffs, c):
    """sum_a H(c_a) / prod_{b != a} (c_a - c_b), H given by ascending coefficients."""
    return fixed_point_sums([poly_coeffs], c)[0]


def fixed_point_sum_symmetric(poly_coeffs, cache):
    """Same quantity via sum_j coeff_j * h_{j-N}."""
    N = len(cache.values) - 1
    return sum((as_gaussian(coeff) * cache(j - N) for j, coeff in enumerate(poly_coeffs)), ZERO)


@dataclass(frozen=True)
class LocalizationInstance:
    weights: tuple  # traceless diagonal of X
    degrees: tuple
    kappas: tuple
    orientation: int = -1  # theta(p_a) = orientation * weights[a]

    def __post_init__(self):
        if sum(self.weights, ZERO):
            raise ValueError("weights must be traceless")
        if len(self.degrees) != len(self.kappas):
            raise DimensionMismatch("one eigenvalue per degree required")
        _check_distinct(self.weights)

    @classmethod
    def from_weights(cls, weights, degrees, kappas):
        """Normalize raw diagonal weights to trace zero first."""
        weights = [as_gaussian(w) for w in weights]
        mean = sum(weights, ZERO) / len(weights)
        return cls(tuple(w - mean for w in weights), tuple(degrees),
                   tuple(as_gaussian(k) for k in kappas))

    @property
    def fixed_point_values(self):
        return [w * self.orientation for w in self.weights]


def _poly_times_linear(coeffs, slope, intercept):
    out = [ZERO] * (len(coeffs) + 1)
    for j, c in enumerate(coeffs):
        out[j] = out[j] + c * intercept
        out[j + 1] = out[j + 1] + c * slope
    return out


def integrand_coefficients(n, degrees, kappas):
    """Ascending coefficients of t^(n+1) * prod_k (d_k t + kappa_k)."""
    coeffs = [ZERO] * (n + 1) + [ONE]
    for d, kappa in zip(degrees, kappas):
        coeffs = _poly_times_linear(coeffs, as_gaussian(d), as_gaussian(kappa))
    return coeffs


def theta_oracle(instance, fano):
    if len(instance.weights) != fano.N + 1 or tuple(instance.degrees) != tuple(fano.degrees):
        raise DimensionMismatch("instance does not match the Fano data")
    H = integrand_coefficients(fano.n, instance.degrees, instance.kappas)
    return fixed_point_sum(H, instance.fixed_point_values) / (fano.n + 1)


class OracleVerdict(enum.Enum):
    AGREE = "agree"
    DISAGREE = "disagree"
    NOT_APPLICABLE = "not-applicable"


def weight_of(mono, weights):
    return sum((w * e for w, e in zip(weights, mono) if e), ZERO)


def diagonal_kappas(weights, polys):
    """Eigenvalues read off one monomial per polynomial; None if some F is not a weight vector."""
    kappas = []
    for F in polys:
        values = {weight_of(mono, weights) for mono in F.terms}
        if len(values) != 1:
            return None
        kappas.append(values.pop())
    return kappas


def localization_instance_for(problem):
    """Instance for a diagonal-field problem, or a string saying why there is none."""
    X = VectorField.from_spec(problem.vector_field)
    if not X.is_diagonal():
        return "vector field is not diagonal"
    instance_weights = normalize_traceless(X).diagonal_entries()
    if len(set(instance_weights)) != len(instance_weights):
        return "repeated diagonal weights (fixed points are not isolated)"
    kappas = diagonal_kappas(instance_weights, problem.polys)
    if kappas is None:
        return "some polynomial is not a weight vector of the torus"
    return LocalizationInstance(tuple(instance_weights), tuple(problem.degrees), tuple(kappas))


def oracle_cross_check(problem, report):
    """Compare the fixed-point value with ``report.theta_invariant``.

    The eigenvalues are re-derived from the diagonal weights here; the
    report's own kappas are not trusted.
    """
    instance = localization_instance_for(problem)
    if isinstance(instance, str):
        return OracleVerdict.NOT_APPLICABLE
    value = theta_oracle(instance, report.fano)
    return OracleVerdict.AGREE if value == report.theta_invariant else OracleVerdict.DISAGREE


# -- randomized instances -----------------------------------------------------

@dataclass(frozen=True)
class RandomInstance:
    N: int
    raw_weights: tuple
    polys: tuple

    @property
    def degrees(self):
        return tuple(F.homogeneous_degree() for F in self.polys)


def _random_rational(rng, bound=6, den=4):
    return Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))


def _random_monomial(rng, nvars, degree):
    exps = [0] * nvars
    for _ in range(degree):
        exps[rng.randrange(nvars)] += 1
    return tuple(exps)


def random_instance(rng, max_N=8, max_s=3, integer_weights=None):
    """Distinct-weight diagonal field plus eigen-polynomials built by construction.

    Each F_k is a sum of monomials sharing one weight, so X.F_k = kappa_k F_k
    holds identically.  Integer weights are used half the time so that
    several monomials of equal weight actually occur.
    """
    N = rng.randint(1, max_N)
    s = rng.randint(0, min(max_s, N))
    degrees = []
    budget = N  # sum(d) <= N keeps m >= 1
    for _ in range(s):
        room = budget - (s - len(degrees) - 1)
        degrees.append(rng.randint(1, max(1, min(room, 4))))
        budget -= degrees[-1]
    if integer_weights is None:
        integer_weights = rng.random() < 0.5
    weights = set()
    while len(weights) < N + 1:
        weights.add(Fraction(rng.randint(-2 * N - 3, 2 * N + 3)) if integer_weights
                    else _random_rational(rng))
    weights = list(weights)
    rng.shuffle(weights)
    polys = []
    for d in degrees:
        anchor = _random_monomial(rng, N + 1, d)
        target = weight_of(anchor, weights)
        terms = {anchor: _random_coefficient(rng)}
        for _ in range(12):
            mono = _random_monomial(rng, N + 1, d)
            if weight_of(mono, weights) == target:
                terms[mono] = _random_coefficient(rng)
        polys.append(Polynomial(N + 1, terms))
    return RandomInstance(N, tuple(weights), tuple(polys))


def _random_coefficient(rng):
    while True:
        c = GaussianRational(_random_rational(rng, 3, 3), rng.choice([0, 0, _random_rational(rng, 3, 3)]))
        if c:
            return c


@dataclass
class SuiteResult:
    draws: int
    seed: int
    passed: int
    failures: list


def run_equivalence_suite(draws, seed, max_N=8, max_s=3):
    """Oracle vs closed form on ``draws`` random instances; deterministic in ``seed``."""
    rng = random.Random(seed)
    failures = []
    passed = 0
    for k in range(draws):
        inst = random_instance(rng, max_N, max_s)
        X = normalize_traceless(VectorField.diagonal(inst.raw_weights))
        kappas = [eigenvalue_kappa(X, F) for F in inst.polys]
        fano = fano_index(inst.N, inst.degrees)
        oracle = theta_oracle(
            LocalizationInstance.from_weights(inst.raw_weights, inst.degrees, kappas), fano)
        closed = theta_invariant(fano, kappas)
        if oracle == closed:
            passed += 1
        else:
            failures.append((k, inst, oracle, closed))
    return SuiteResult(draws, seed, passed, failures)
