"""Published examples bundled with the package, and a runner that checks them."""

import json
from dataclasses import dataclass
from importlib import resources

from .errors import FutakiError, ParseError
from .parser import parse_gaussian, problem_from_dict
from .pipeline import analyze


@dataclass(frozen=True)
class ExampleRecord:
    id: str
    citation: str
    problem: object
    expected_kappas: tuple
    expected_futaki_reported: object

    @property
    def convention(self):
        return self.problem.convention


def load_corpus(text=None):
    if text is None:
        text = resources.files("futaki").joinpath("data/corpus.json").read_text(encoding="utf-8")
    try:
        entries = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc.msg, text, exc.pos) from None
    records = []
    for entry in entries:
        records.append(ExampleRecord(
            id=entry["id"],
            citation=entry["citation"],
            problem=problem_from_dict(entry["problem"]),
            expected_kappas=tuple(parse_gaussian(k) for k in entry["expected_kappas"]),
            expected_futaki_reported=parse_gaussian(entry["expected_futaki_reported"]),
        ))
    return records


@dataclass
class ExampleOutcome:
    record: ExampleRecord
    report: object = None
    error: str = None

    @property
    def ok(self):
        return (self.report is not None
                and list(self.report.kappas) == list(self.record.expected_kappas)
                and self.report.futaki_reported == self.record.expected_futaki_reported)


def run_example(record):
    try:
        return ExampleOutcome(record, analyze(record.problem))
    except FutakiError as exc:
        return ExampleOutcome(record, error="%s: %s" % (type(exc).__name__, exc))
