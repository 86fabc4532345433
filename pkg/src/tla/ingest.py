"""Compile filter specs into search-query strings and ingest JSONL exports."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Union

from .corpus import LanguageCode, RawTweet, TweetValidationError, validate_tweet
from .errors import TlaError

#: JSONL field names, following the export convention of the scraping tool.
FIELD_MAP = {
    "id": "id",
    "text": "text",
    "lang": "lang_hint",
    "likeCount": "like_count",
    "replyCount": "reply_count",
}


@dataclass(frozen=True)
class QuerySpec:
    """Trending-filter parameters: language, like threshold, engagement, cap."""

    language: LanguageCode
    min_faves: int = 9000
    has_engagement: bool = True
    max_results: int = 500

    def __post_init__(self):
        if not isinstance(self.language, LanguageCode):
            raise ValueError(f"language must be a LanguageCode, got {self.language!r}")
        if self.min_faves < 0:
            raise ValueError(f"min_faves must be >= 0, got {self.min_faves}")
        if self.max_results < 1:
            raise ValueError(f"max_results must be >= 1, got {self.max_results}")


def compile_query(spec: QuerySpec) -> str:
    """Render the spec as space-separated search operators in canonical order.

    ``min_faves:<N>`` is omitted when N is 0, ``filter:has_engagement`` when
    disabled; ``lang:<code>`` is always present.
    """
    parts = []
    if spec.min_faves > 0:
        parts.append(f"min_faves:{spec.min_faves}")
    if spec.has_engagement:
        parts.append("filter:has_engagement")
    parts.append(f"lang:{spec.language.value}")
    return " ".join(parts)


class JsonlError(TlaError):
    """Base for line-delimited JSON ingest errors; carries a line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class MalformedLineError(JsonlError):
    def __init__(self, line: int, detail: str):
        super().__init__(line, f"malformed JSON: {detail}")


class MissingFieldError(JsonlError):
    def __init__(self, line: int, fields):
        self.fields = tuple(fields)
        super().__init__(line, "missing required field(s): " + ", ".join(self.fields))


class InvalidRecordError(JsonlError):
    def __init__(self, line: int, violations):
        self.violations = list(violations)
        super().__init__(line, "; ".join(self.violations))


def read_jsonl(
    source: Union[IO[bytes], IO[str]],
    *,
    skip_bad_lines: bool = False,
    lenient: bool = False,
) -> Iterator[RawTweet]:
    """Lazily yield validated tweets from line-delimited JSON.

    One record per nonblank line; unknown fields are ignored.  Bad lines are
    errors unless ``skip_bad_lines`` is set, in which case they are dropped.
    """
    for line_num, line in enumerate(source, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        if not line.strip():
            continue
        try:
            yield _parse_record(line, line_num, lenient=lenient)
        except JsonlError:
            if not skip_bad_lines:
                raise


def _parse_record(line: str, line_num: int, *, lenient: bool) -> RawTweet:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedLineError(line_num, exc.msg) from exc
    if not isinstance(record, dict):
        raise MalformedLineError(line_num, "record is not a JSON object")

    missing = [name for name in ("id", "text") if name not in record]
    if missing:
        raise MissingFieldError(line_num, missing)

    candidate = {}
    for json_name, field in FIELD_MAP.items():
        if json_name not in record:
            continue
        value = record[json_name]
        if field == "id" and isinstance(value, int) and not isinstance(value, bool):
            value = str(value)
        if field == "lang_hint":
            try:
                value = LanguageCode.parse(value)
            except (ValueError, TypeError):
                raise InvalidRecordError(line_num, [f"BadLanguage({value!r})"]) from None
        candidate[field] = value

    try:
        return validate_tweet(candidate, lenient=lenient)
    except TweetValidationError as exc:
        raise InvalidRecordError(line_num, exc.violations) from exc


def filter_trending(tweets: Iterable[RawTweet], spec: QuerySpec) -> list[RawTweet]:
    """Apply the trending rule offline: like threshold, engagement, result cap.

    ``has_engagement`` is interpreted as "has at least one reply".  Input order
    is preserved; iteration stops once ``max_results`` tweets qualify.
    """
    kept: list[RawTweet] = []
    for tweet in tweets:
        if tweet.like_count < spec.min_faves:
            continue
        if spec.has_engagement and (tweet.reply_count is None or tweet.reply_count < 1):
            continue
        kept.append(tweet)
        if len(kept) >= spec.max_results:
            break
    return kept
