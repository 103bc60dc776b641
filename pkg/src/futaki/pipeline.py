"""parse -> normalize -> tangency / eigenvalues -> formula -> oracle."""

from dataclasses import dataclass, field

from .action import VectorField, block_action, normalize_traceless, tangency_certificate
from .formula import (FanoData, Sign, apply_convention, fano_index, futaki_assembled,
                      re_sign_report, theta_invariant, theta_recursion)
from .localization import OracleVerdict, oracle_cross_check
from .multipoly import GaussianRational
from .parser import Convention

ASSUMPTION_NOTICE = ("assumption: M is taken to be a normal Fano complete intersection "
                     "of dimension N - s; this is not verified")


@dataclass
class FutakiReport:
    """All quantities of one run.

    ``theta_invariant`` is measured against omega_FS; ``futaki`` uses the
    Kaehler class omega = m * omega_FS; ``futaki_reported`` applies the
    requested convention on top of ``futaki``.
    """

    fano: FanoData
    kappas: list
    theta_invariant: GaussianRational
    constant_term: GaussianRational
    futaki: GaussianRational
    futaki_reported: GaussianRational
    convention: Convention
    re_sign: Sign
    theta_sequence: tuple = ()
    block_action: object = None
    certificate: object = None
    oracle: OracleVerdict = None
    notices: list = field(default_factory=list)

    @property
    def oracle_checked(self):
        if self.oracle is None or self.oracle is OracleVerdict.NOT_APPLICABLE:
            return None
        return self.oracle is OracleVerdict.AGREE

    def to_json(self):
        return {
            "m": str(self.fano.m),
            "n": self.fano.n,
            "degrees": list(self.fano.degrees),
            "kappas": [str(k) for k in self.kappas],
            "theta_invariant": str(self.theta_invariant),
            "futaki": str(self.futaki),
            "futaki_reported": str(self.futaki_reported),
            "convention": self.convention.value,
            "re_sign": self.re_sign.value,
            "oracle": self.oracle.value if self.oracle is not None else "skipped",
        }


def build_report(fano, kappas, convention, **extra):
    kappas = list(kappas)
    theta = theta_invariant(fano, kappas)
    futaki = futaki_assembled(fano, kappas)
    sequence = theta_recursion(fano, kappas).values if kappas else ()
    reported = apply_convention(futaki, fano, convention)
    return FutakiReport(
        fano=fano,
        kappas=kappas,
        theta_invariant=theta,
        constant_term=-sum(kappas, GaussianRational(0)),
        futaki=futaki,
        futaki_reported=reported,
        convention=convention,
        re_sign=re_sign_report(reported),
        theta_sequence=sequence,
        **extra,
    )


def analyze(problem, convention=None, run_oracle=True):
    """Full computation for a validated Problem.  Raises MathError subclasses."""
    convention = problem.convention if convention is None else convention
    fano = fano_index(problem.ambient_dimension, problem.degrees)
    X = normalize_traceless(VectorField.from_spec(problem.vector_field))
    polys = problem.polys

    certificate = tangency_certificate(X, polys)
    action = block_action(X, polys) if polys else None
    kappas = action.kappas() if action is not None else []
    report = build_report(fano, kappas, convention, block_action=action, certificate=certificate,
                          notices=[ASSUMPTION_NOTICE])
    if run_oracle:
        report.oracle = oracle_cross_check(problem, report)
    return report
