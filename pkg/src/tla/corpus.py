"""Core domain types, validation, and the labeled-dataset CSV format."""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable, Mapping, Optional

from .errors import TlaError

MAX_TWEET_LENGTH = 280

CSV_HEADER = ("id", "lang", "text", "tokens", "label")


class LanguageCode(str, Enum):
    """The sixteen supported languages, keyed by two-letter lowercase code.

    Definition order is the canonical report order (which coincides with
    alphabetical order of the codes).
    """

    EN = "en"
    ES = "es"
    FA = "fa"
    FR = "fr"
    HI = "hi"
    ID = "id"
    JA = "ja"
    NL = "nl"
    PT = "pt"
    RO = "ro"
    RU = "ru"
    SV = "sv"
    TH = "th"
    TR = "tr"
    UR = "ur"
    ZH = "zh"

    __str__ = str.__str__

    @classmethod
    def parse(cls, code: str) -> "LanguageCode":
        """Parse a two-letter code; anything outside the closed set is an error."""
        try:
            return cls(code)
        except ValueError:
            raise ValueError(f"unknown language code: {code!r}") from None

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]

    @property
    def unsegmented(self) -> bool:
        """True for scripts without inter-word spaces (tokenized per character)."""
        return self in (LanguageCode.ZH, LanguageCode.JA, LanguageCode.TH)


_DISPLAY_NAMES = {
    LanguageCode.EN: "English",
    LanguageCode.ES: "Spanish",
    LanguageCode.FA: "Persian",
    LanguageCode.FR: "French",
    LanguageCode.HI: "Hindi",
    LanguageCode.ID: "Indonesian",
    LanguageCode.JA: "Japanese",
    LanguageCode.NL: "Dutch",
    LanguageCode.PT: "Portuguese",
    LanguageCode.RO: "Romanian",
    LanguageCode.RU: "Russian",
    LanguageCode.SV: "Swedish",
    LanguageCode.TH: "Thai",
    LanguageCode.TR: "Turkish",
    LanguageCode.UR: "Urdu",
    LanguageCode.ZH: "Chinese",
}

#: Canonical report order: the sixteen languages in definition order.
LANGUAGE_ORDER = tuple(LanguageCode)


class SentimentLabel(Enum):
    """Two-class sentiment label; serializes as the literal strings below."""

    POSITIVE = "Positive"
    NEGATIVE = "Negative"

    @classmethod
    def parse(cls, value: str) -> "SentimentLabel":
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"unknown sentiment label: {value!r}") from None


def validate_token(token: str) -> str:
    """Check a single token against the token rules; returns it unchanged."""
    if not isinstance(token, str) or not token:
        raise ValueError(f"empty token: {token!r}")
    if any(ch.isspace() for ch in token):
        raise ValueError(f"token contains whitespace: {token!r}")
    if token != token.lower():
        raise ValueError(f"token is not lowercase: {token!r}")
    return token


def validate_tokens(tokens: Iterable[str]) -> tuple[str, ...]:
    return tuple(validate_token(t) for t in tokens)


@dataclass(frozen=True)
class RawTweet:
    """One ingested tweet. Use :func:`validate_tweet` to enforce invariants."""

    id: str
    text: str
    lang_hint: Optional[LanguageCode] = None
    like_count: int = 0
    reply_count: Optional[int] = None


class TweetValidationError(TlaError):
    """Raised by validate_tweet; names every violated constraint."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("invalid tweet: " + "; ".join(violations))


class TweetLengthWarning(UserWarning):
    """Issued instead of TextTooLong when validating in lenient mode."""


def validate_tweet(candidate, *, lenient: bool = False) -> RawTweet:
    """Validate a RawTweet or a mapping with RawTweet-shaped keys.

    Collects all violations instead of stopping at the first one.  In lenient
    mode the 280-scalar-value limit produces a TweetLengthWarning rather than
    an error.
    """
    if isinstance(candidate, RawTweet):
        fields = {
            "id": candidate.id,
            "text": candidate.text,
            "lang_hint": candidate.lang_hint,
            "like_count": candidate.like_count,
            "reply_count": candidate.reply_count,
        }
    elif isinstance(candidate, Mapping):
        unknown = set(candidate) - {"id", "text", "lang_hint", "like_count", "reply_count"}
        if unknown:
            raise TweetValidationError([f"BadField({name})" for name in sorted(unknown)])
        fields = dict(candidate)
    else:
        raise TweetValidationError([f"BadType({type(candidate).__name__})"])

    violations: list[str] = []

    tweet_id = fields.get("id")
    if not isinstance(tweet_id, str) or not tweet_id:
        violations.append("EmptyId")

    text = fields.get("text")
    if not isinstance(text, str) or not text.strip():
        violations.append("EmptyText")
    elif len(text) > MAX_TWEET_LENGTH:
        if lenient:
            warnings.warn(f"TextTooLong({len(text)})", TweetLengthWarning, stacklevel=2)
        else:
            violations.append(f"TextTooLong({len(text)})")

    lang_hint = fields.get("lang_hint")
    if lang_hint is not None and not isinstance(lang_hint, LanguageCode):
        violations.append("BadType(lang_hint)")

    like_count = fields.get("like_count", 0)
    if not isinstance(like_count, int) or isinstance(like_count, bool):
        violations.append("BadType(like_count)")
    elif like_count < 0:
        violations.append(f"NegativeCount(like_count={like_count})")

    reply_count = fields.get("reply_count")
    if reply_count is not None:
        if not isinstance(reply_count, int) or isinstance(reply_count, bool):
            violations.append("BadType(reply_count)")
        elif reply_count < 0:
            violations.append(f"NegativeCount(reply_count={reply_count})")

    if violations:
        raise TweetValidationError(violations)

    return RawTweet(
        id=tweet_id,
        text=text,
        lang_hint=lang_hint,
        like_count=like_count,
        reply_count=reply_count,
    )


@dataclass(frozen=True)
class LabeledTweet:
    """A tweet plus its language, preprocessed tokens, and sentiment label."""

    raw: RawTweet
    language: LanguageCode
    tokens: tuple[str, ...]
    label: SentimentLabel

    def __post_init__(self):
        if not isinstance(self.language, LanguageCode):
            raise ValueError(f"language must be a LanguageCode, got {self.language!r}")
        if not isinstance(self.label, SentimentLabel):
            raise ValueError(f"label must be a SentimentLabel, got {self.label!r}")
        object.__setattr__(self, "tokens", validate_tokens(self.tokens))


@dataclass(frozen=True)
class LabeledDataset:
    """A homogeneous-language collection of labeled tweets with unique ids."""

    language: LanguageCode
    rows: tuple[LabeledTweet, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        seen: set[str] = set()
        for i, row in enumerate(self.rows):
            if row.language != self.language:
                raise ValueError(
                    f"row {i}: language {row.language} does not match dataset "
                    f"language {self.language}"
                )
            if row.raw.id in seen:
                raise ValueError(f"row {i}: duplicate id {row.raw.id!r}")
            seen.add(row.raw.id)

    def __len__(self) -> int:
        return len(self.rows)


class DatasetWriteError(TlaError):
    """Sink failure while emitting a dataset CSV, attributed to a row index."""

    def __init__(self, row_index: int, cause: Exception):
        self.row_index = row_index
        super().__init__(f"failed writing row {row_index}: {cause}")


class DatasetReadError(TlaError):
    """Base for dataset CSV parse errors; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class BadHeaderError(DatasetReadError):
    def __init__(self, header):
        super().__init__(1, f"expected header {','.join(CSV_HEADER)}, got {header!r}")


class BadLabelError(DatasetReadError):
    def __init__(self, line: int, value: str):
        self.value = value
        super().__init__(line, f"bad label {value!r} (expected Positive or Negative)")


class BadLanguageError(DatasetReadError):
    def __init__(self, line: int, code: str):
        self.code = code
        super().__init__(line, f"bad language code {code!r}")


class MixedLanguagesError(DatasetReadError):
    def __init__(self, line: int, expected: LanguageCode, got: LanguageCode):
        super().__init__(line, f"mixed languages: expected {expected}, got {got}")


class DuplicateIdError(DatasetReadError):
    def __init__(self, line: int, tweet_id: str):
        super().__init__(line, f"duplicate id {tweet_id!r}")


def write_dataset_csv(dataset: LabeledDataset, sink: IO[bytes]) -> int:
    """Write a dataset as UTF-8 CSV (header id,lang,text,tokens,label).

    Tokens are space-joined; RFC 4180 quoting; LF line endings.  Returns the
    number of data rows written.
    """
    wrapper = io.TextIOWrapper(sink, encoding="utf-8", newline="")
    writer = csv.writer(wrapper, lineterminator="\n")
    count = 0
    try:
        try:
            writer.writerow(CSV_HEADER)
            wrapper.flush()
        except OSError as exc:
            raise DatasetWriteError(0, exc) from exc
        for i, row in enumerate(dataset.rows):
            try:
                writer.writerow(
                    (
                        row.raw.id,
                        row.language.value,
                        row.raw.text,
                        " ".join(row.tokens),
                        row.label.value,
                    )
                )
                wrapper.flush()
            except OSError as exc:
                raise DatasetWriteError(i, exc) from exc
            count += 1
    finally:
        # Hand the buffer back without closing the caller's sink.
        wrapper.detach()
    return count


def read_dataset_csv(
    source: IO[bytes], language: Optional[LanguageCode] = None
) -> LabeledDataset:
    """Read a dataset CSV written by :func:`write_dataset_csv`.

    ``language`` is only required for header-only files, whose language cannot
    be recovered from the fixed schema; when given alongside data rows it must
    agree with them.
    """
    wrapper = io.TextIOWrapper(source, encoding="utf-8", newline="")
    try:
        reader = csv.reader(wrapper)
        try:
            header = next(reader)
        except StopIteration:
            raise BadHeaderError(None) from None
        if tuple(header) != CSV_HEADER:
            raise BadHeaderError(header)

        rows: list[LabeledTweet] = []
        seen_ids: set[str] = set()
        dataset_language = language
        for record in reader:
            line = reader.line_num
            if not record:
                continue
            if len(record) != len(CSV_HEADER):
                raise DatasetReadError(
                    line, f"expected {len(CSV_HEADER)} fields, got {len(record)}"
                )
            tweet_id, lang_field, text, tokens_field, label_field = record

            try:
                lang = LanguageCode.parse(lang_field)
            except ValueError:
                raise BadLanguageError(line, lang_field) from None
            if dataset_language is None:
                dataset_language = lang
            elif lang != dataset_language:
                raise MixedLanguagesError(line, dataset_language, lang)

            try:
                label = SentimentLabel.parse(label_field)
            except ValueError:
                raise BadLabelError(line, label_field) from None

            if tweet_id in seen_ids:
                raise DuplicateIdError(line, tweet_id)
            seen_ids.add(tweet_id)

            tokens = tokens_field.split(" ") if tokens_field else []
            try:
                raw = validate_tweet({"id": tweet_id, "text": text})
                rows.append(
                    LabeledTweet(raw=raw, language=lang, tokens=tokens, label=label)
                )
            except (TweetValidationError, ValueError) as exc:
                raise DatasetReadError(line, str(exc)) from exc

        if dataset_language is None:
            raise DatasetReadError(
                1, "empty dataset file and no expected language supplied"
            )
        return LabeledDataset(language=dataset_language, rows=tuple(rows))
    finally:
        wrapper.detach()
