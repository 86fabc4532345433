"""Per-language totals and truncated positive/negative percentage tables.

Percentage cells are truncations (floor), never roundings, to two decimals,
with trailing zeros and a trailing decimal point trimmed: 391/457 displays as
85.55 (rounding would give 85.56) and 26/50 as 52.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .corpus import LANGUAGE_ORDER, LabeledDataset, LanguageCode, SentimentLabel
from .errors import TlaError

REPORT_HEADER = (
    "Language",
    "Total tweets",
    "Positive Tweets Percentage",
    "Negative Tweets Percentage",
)

REPORT_FORMATS = ("csv", "markdown", "plain")


class ZeroDenominatorError(TlaError):
    pass


class EmptyDatasetError(TlaError):
    pass


def truncate_pct(numerator: int, denominator: int) -> str:
    """floor(10000*n/d)/100 rendered without trailing zeros or point."""
    if denominator <= 0:
        raise ZeroDenominatorError(
            f"denominator must be positive, got {denominator}"
        )
    if not 0 <= numerator <= denominator:
        raise ValueError(
            f"numerator must be in [0, denominator], got {numerator}/{denominator}"
        )
    hundredths = (10000 * numerator) // denominator
    text = f"{hundredths // 100}.{hundredths % 100:02d}"
    return text.rstrip("0").rstrip(".")


@dataclass(frozen=True)
class AnalysisRow:
    """One language's label counts; display percentages derive from them."""

    language: LanguageCode
    total: int
    positive_count: int
    negative_count: int

    def __post_init__(self):
        if self.total < 1:
            raise ValueError(f"total must be positive, got {self.total}")
        if self.positive_count < 0 or self.negative_count < 0:
            raise ValueError("label counts must be nonnegative")
        if self.positive_count + self.negative_count != self.total:
            raise ValueError(
                f"counts {self.positive_count}+{self.negative_count} "
                f"do not sum to total {self.total}"
            )

    @property
    def positive_pct(self) -> Fraction:
        return Fraction(100 * self.positive_count, self.total)

    @property
    def negative_pct(self) -> Fraction:
        return Fraction(100 * self.negative_count, self.total)

    @property
    def positive_display(self) -> str:
        return truncate_pct(self.positive_count, self.total)

    @property
    def negative_display(self) -> str:
        return truncate_pct(self.negative_count, self.total)


_CANONICAL_RANK = {lang: i for i, lang in enumerate(LANGUAGE_ORDER)}


@dataclass(frozen=True)
class AnalysisReport:
    """Rows in canonical table order, at most one per language."""

    rows: tuple[AnalysisRow, ...]

    def __post_init__(self):
        languages = [row.language for row in self.rows]
        if len(set(languages)) != len(languages):
            raise ValueError("duplicate language in report")

    @classmethod
    def from_rows(cls, rows: Iterable[AnalysisRow]) -> "AnalysisReport":
        ordered = sorted(rows, key=lambda r: _CANONICAL_RANK[r.language])
        return cls(rows=tuple(ordered))


def aggregate_dataset(dataset: LabeledDataset) -> AnalysisRow:
    """Count labels in one dataset."""
    if not dataset.rows:
        raise EmptyDatasetError(f"dataset for {dataset.language} has no rows")
    positive = sum(1 for row in dataset.rows if row.label is SentimentLabel.POSITIVE)
    return AnalysisRow(
        language=dataset.language,
        total=len(dataset.rows),
        positive_count=positive,
        negative_count=len(dataset.rows) - positive,
    )


def merge_rows(rows: Iterable[AnalysisRow]) -> list[AnalysisRow]:
    """Sum counts of rows sharing a language (multiple files per language)."""
    by_lang: dict[LanguageCode, AnalysisRow] = {}
    for row in rows:
        existing = by_lang.get(row.language)
        if existing is None:
            by_lang[row.language] = row
        else:
            by_lang[row.language] = AnalysisRow(
                language=row.language,
                total=existing.total + row.total,
                positive_count=existing.positive_count + row.positive_count,
                negative_count=existing.negative_count + row.negative_count,
            )
    return list(by_lang.values())


def _row_cells(row: AnalysisRow) -> tuple[str, str, str, str]:
    return (
        row.language.display_name,
        str(row.total),
        row.positive_display,
        row.negative_display,
    )


def render_report(report: AnalysisReport, format: str = "plain") -> str:
    """Render the table as csv, markdown, or plain text (LF line endings)."""
    if format not in REPORT_FORMATS:
        raise ValueError(f"unknown format {format!r}, expected one of {REPORT_FORMATS}")
    cells = [_row_cells(row) for row in report.rows]

    if format == "csv":
        lines = [",".join(REPORT_HEADER)]
        lines.extend(",".join(row) for row in cells)
    elif format == "markdown":
        lines = [
            "| " + " | ".join(REPORT_HEADER) + " |",
            "|" + "|".join(" --- " for _ in REPORT_HEADER) + "|",
        ]
        lines.extend("| " + " | ".join(row) + " |" for row in cells)
    else:
        widths = [
            max(len(REPORT_HEADER[i]), max((len(row[i]) for row in cells), default=0))
            for i in range(len(REPORT_HEADER))
        ]
        lines = ["  ".join(h.ljust(w) for h, w in zip(REPORT_HEADER, widths)).rstrip()]
        lines.extend(
            "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
            for row in cells
        )
    return "\n".join(lines) + "\n"
