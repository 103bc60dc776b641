"""Linear holomorphic vector fields on CP^N and their action on polynomials.

A field is an (N+1)x(N+1) matrix ``a``; it acts on a polynomial by

    X.F = sum_{i,j} a[i][j] * z_j * dF/dz_i

i.e. the matrix acts on the coordinate column.  For a diagonal field the
monomial ``z^e`` is an eigenvector with eigenvalue ``sum_i a[i][i]*e_i``.
"""

from dataclasses import dataclass

from .errors import DimensionMismatch, LinearlyDependent, NotEigenvector, NotInSpan, NotTangent
from .multipoly import (GaussianRational, Polynomial, SparseEchelon, as_gaussian, grlex_key,
                        matrix_rank, monomials_of_degree)

ZERO = GaussianRational(0)


class VectorField:
    __slots__ = ("entries", "normalized")

    def __init__(self, entries, normalized=False):
        rows = tuple(tuple(as_gaussian(v) for v in row) for row in entries)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("vector field matrix must be square and nonempty")
        self.entries = rows
        self.normalized = normalized

    @classmethod
    def diagonal(cls, weights):
        n = len(weights)
        return cls([[weights[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_spec(cls, spec):
        return cls(spec.to_matrix())

    @property
    def size(self):
        return len(self.entries)

    def trace(self):
        return sum((self.entries[i][i] for i in range(self.size)), ZERO)

    def is_diagonal(self):
        return all(not v for i, row in enumerate(self.entries) for j, v in enumerate(row) if i != j)

    def diagonal_entries(self):
        return [self.entries[i][i] for i in range(self.size)]

    def scale(self, c):
        c = as_gaussian(c)
        return VectorField([[c * v for v in row] for row in self.entries])

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        if other.size != self.size:
            raise DimensionMismatch("vector fields of different size")
        return VectorField([[a + b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def shifted(self, c):
        """X + c*Id."""
        c = as_gaussian(c)
        n = self.size
        return VectorField([[v + c if i == j else v for j, v in enumerate(row)]
                            for i, row in enumerate(self.entries)])

    def conjugate_by_permutation(self, perm):
        """Field in coordinates w_k = z_{perm[k]}."""
        n = self.size
        return VectorField([[self.entries[perm[i]][perm[j]] for j in range(n)] for i in range(n)],
                           self.normalized)

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        rows = "; ".join(" ".join(str(v) for v in row) for row in self.entries)
        return "VectorField([%s]%s)" % (rows, ", normalized" if self.normalized else "")


def normalize_traceless(X):
    """Project onto sl(N+1): X - (trace/(N+1)) Id.  Idempotent."""
    mean = X.trace() / X.size
    if not mean:
        return VectorField(X.entries, normalized=True)
    out = X.shifted(-mean)
    out.normalized = True
    return out


def apply_field(X, F):
    if X.size != F.num_vars:
        raise DimensionMismatch("field on C^%d applied to polynomial in %d variables"
                                % (X.size, F.num_vars))
    out = {}
    n = X.size
    for i in range(n):
        row = X.entries[i]
        if not any(row):
            continue
        dF = F.partial_derivative(i)
        if not dF:
            continue
        for j in range(n):
            a = row[j]
            if not a:
                continue
            for mono, c in dF.terms.items():
                shifted = mono[:j] + (mono[j] + 1,) + mono[j + 1:]
                out[shifted] = out.get(shifted, ZERO) + a * c
    return Polynomial(n, out)


def eigenvalue_kappa(X, F):
    """The scalar kappa with X.F = kappa*F; NotEigenvector otherwise."""
    if not F:
        raise NotEigenvector(None, "the zero polynomial has no eigenvalue")
    XF = apply_field(X, F)
    lead = F.monomials()[0]
    kappa = XF.coefficient(lead) / F.coefficient(lead)
    support = set(F.terms) | set(XF.terms)
    for mono in sorted(support, key=grlex_key):
        if XF.coefficient(mono) != kappa * F.coefficient(mono):
            raise NotEigenvector(
                mono, "X.F is not a multiple of F: the leading monomial gives ratio %s, "
                "but the witness monomial has coefficient %s in X.F and %s in F"
                % (kappa, XF.coefficient(mono), F.coefficient(mono)))
    return kappa


@dataclass(frozen=True)
class Block:
    degree: int
    indices: tuple
    matrix: tuple  # matrix[a][b]: X.F_{indices[a]} = sum_b matrix[a][b] F_{indices[b]}

    @property
    def trace(self):
        return sum((self.matrix[a][a] for a in range(len(self.indices))), ZERO)

    def is_diagonal(self):
        k = len(self.indices)
        return all(not self.matrix[a][b] for a in range(k) for b in range(k) if a != b)


@dataclass(frozen=True)
class BlockAction:
    blocks: tuple

    @property
    def traces(self):
        return [b.trace for b in self.blocks]

    @property
    def kappa(self):
        """Trace of X on span(F_1..F_s)."""
        return sum(self.traces, ZERO)

    def is_diagonal(self):
        return all(b.is_diagonal() for b in self.blocks)

    def kappas(self):
        """Diagonal entries in the original polynomial order.

        These are the per-polynomial eigenvalues when every block is diagonal;
        otherwise they still give the right block traces, which is all the
        invariant formula depends on (degrees are constant inside a block).
        """
        out = {}
        for b in self.blocks:
            for a, idx in enumerate(b.indices):
                out[idx] = b.matrix[a][a]
        return [out[k] for k in sorted(out)]


def _group_by_degree(polys):
    groups = {}
    for k, F in enumerate(polys):
        groups.setdefault(F.homogeneous_degree(), []).append(k)
    return groups


def block_action(X, polys):
    """Matrix of X on span(F_1..F_s), one block per degree."""
    blocks = []
    for degree, idx in sorted(_group_by_degree(polys).items()):
        block_polys = [polys[k] for k in idx]
        columns = _coefficient_rows(block_polys)
        if matrix_rank(_transpose(columns)) < len(idx):
            raise LinearlyDependent(
                "polynomials %s of degree %d are linearly dependent"
                % (", ".join(str(k + 1) for k in idx), degree))
        if len(idx) == 1:
            # 1x1 block: the eigen-relation itself, with a witness on failure
            blocks.append(Block(degree, tuple(idx), ((eigenvalue_kappa(X, polys[idx[0]]),),)))
            continue
        matrix = []
        for a, k in enumerate(idx):
            target = apply_field(X, polys[k])
            coeffs = _solve_columns(columns, target)
            if coeffs is None:
                raise NotInSpan(k, "X.F_%d lies outside the span of the degree-%d polynomials"
                                % (k + 1, degree))
            matrix.append(tuple(coeffs))
        blocks.append(Block(degree, tuple(idx), tuple(matrix)))
    return BlockAction(tuple(blocks))


def _coefficient_rows(polys):
    # one sparse column per polynomial: {monomial: coefficient}
    return [dict(P.terms) for P in polys]


def _transpose(columns):
    rows = {}
    for j, col in enumerate(columns):
        for mono, v in col.items():
            rows.setdefault(mono, {})[j] = v
    return list(rows.values())


def _solve_columns(columns, target):
    """Find x with sum_j x_j * columns[j] == target, or None."""
    rows = {}
    for j, col in enumerate(columns):
        for mono, v in col.items():
            rows.setdefault(mono, {})[j] = v
    for mono in target.terms:
        rows.setdefault(mono, {})
    echelon = SparseEchelon()
    for mono, row in rows.items():
        if not echelon.add(row, target.coefficient(mono)):
            return None
    return echelon.solution(len(columns))


@dataclass(frozen=True)
class TangencyCertificate:
    """multipliers[i][j] = G_ij with X.F_i = sum_j G_ij * F_j."""

    multipliers: tuple

    def verify(self, X, polys):
        for i, F in enumerate(polys):
            total = Polynomial.zero(F.num_vars)
            for j, G in enumerate(self.multipliers[i]):
                if G is not None:
                    total = total + G * polys[j]
            if total != apply_field(X, F):
                return False
        return True


def tangency_certificate(X, polys):
    """Exhibit X.F_i in the ideal (F_1..F_s) in degree d_i, by exact linear algebra."""
    degrees = [F.homogeneous_degree() for F in polys]
    multipliers = []
    for i, F in enumerate(polys):
        target = apply_field(X, F)
        unknowns = []  # (j, monomial)
        columns = []
        for j, Fj in enumerate(polys):
            gap = degrees[i] - degrees[j]
            for mono in monomials_of_degree(F.num_vars, gap):
                unknowns.append((j, mono))
                columns.append({tuple(a + b for a, b in zip(mono, m)): c
                                for m, c in Fj.terms.items()})
        x = _solve_columns(columns, target) if columns else None
        if x is None:
            if not target:
                multipliers.append(tuple(None for _ in polys))
                continue
            raise NotTangent(i, target, "X.F_%d is not in the ideal generated by the "
                             "defining polynomials (checked in degree %d)" % (i + 1, degrees[i]))
        per_j = [dict() for _ in polys]
        for (j, mono), v in zip(unknowns, x):
            if v:
                per_j[j][mono] = v
        row = []
        for j in range(len(polys)):
            if degrees[j] > degrees[i]:
                row.append(None)
            else:
                row.append(Polynomial(F.num_vars, per_j[j]))
        multipliers.append(tuple(row))
    return TangencyCertificate(tuple(multipliers))
