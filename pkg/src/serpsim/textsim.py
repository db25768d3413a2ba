"""Tokenization and content-similarity penalties.

Snippets and titles are compared as term-frequency vectors after
stripping stopwords and the search query's own tokens (every result for
a query tends to echo the query, so those words carry no signal). The
per-URL penalty is the cosine distance between the two vectors; a
list-level penalty sums the distances over the URLs both lists share.
"""

from __future__ import annotations

import hashlib
import math
import re
from collections import Counter
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Literal

from .errors import ValidationError
from .model import RankedList

# Alphanumeric runs, Unicode-aware; underscore is a separator, not a word char.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

# Guards the bundled list against silent edits; update when the list changes.
_STOPWORDS_SHA256 = "3eaf18fcf6554bbbeff87ac78ba29dd65f7fdc3c17057861c7ad5665962c9e8b"

ContentField = Literal["snippet", "title"]


def _parse_stopword_lines(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            words.add(word)
    return frozenset(words)


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    """The bundled English stopword list, checksum-verified."""
    data = resources.files("serpsim.data").joinpath("stopwords_en.txt").read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    if digest != _STOPWORDS_SHA256:
        raise ValidationError(
            f"bundled stopword list is corrupted (sha256 {digest})"
        )
    return _parse_stopword_lines(data.decode("utf-8"))


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Load a stopword file: UTF-8, one word per line, '#' comments."""
    return _parse_stopword_lines(Path(path).read_text(encoding="utf-8"))


def tokenize(
    text: str,
    query: str = "",
    stopwords: frozenset[str] | None = None,
) -> Counter[str]:
    """Lowercased term frequencies, minus stopwords and query tokens."""
    if stopwords is None:
        stopwords = default_stopwords()
    drop = set(stopwords)
    drop.update(token.lower() for token in _TOKEN_RE.findall(query))
    counts: Counter[str] = Counter()
    for token in _TOKEN_RE.findall(text.lower()):
        if token not in drop:
            counts[token] += 1
    return counts


def cosine_distance(v1: Counter[str], v2: Counter[str]) -> float:
    """1 minus the cosine of the angle between two count vectors.

    Conventions for degenerate input: two empty vectors are identical
    (distance 0); exactly one empty vector is maximally distant
    (distance 1). Equal vectors short-circuit to exactly 0.0 so that
    self-comparison is float-exact.
    """
    if not v1 and not v2:
        return 0.0
    if not v1 or not v2:
        return 1.0
    if v1 == v2:
        return 0.0
    dot = sum(count * v2[term] for term, count in v1.items())
    norm1 = math.sqrt(sum(count * count for count in v1.values()))
    norm2 = math.sqrt(sum(count * count for count in v2.values()))
    cos = dot / (norm1 * norm2)
    return min(1.0, max(0.0, 1.0 - cos))


def field_distance(
    list_a: RankedList,
    list_b: RankedList,
    url: str,
    field: ContentField,
    stopwords: frozenset[str] | None = None,
) -> float:
    """Cosine distance between one field of the same URL in two lists."""
    result_a = list_a.result_for(url)
    result_b = list_b.result_for(url)
    va = tokenize(getattr(result_a, field), list_a.query, stopwords)
    vb = tokenize(getattr(result_b, field), list_b.query, stopwords)
    return cosine_distance(va, vb)


def content_penalty(
    list_a: RankedList,
    list_b: RankedList,
    field: ContentField,
    stopwords: frozenset[str] | None = None,
) -> float:
    """Summed cosine distances of ``field`` over the shared URLs.

    Ranges over [0, m] where m is the number of URLs the lists share.
    Iteration follows sorted URL order so the result is bitwise
    symmetric in its two list arguments.
    """
    if list_a.n != list_b.n:
        raise ValidationError(
            f"lists must be the same length, got {list_a.n} and {list_b.n}"
        )
    if list_a.query != list_b.query:
        raise ValidationError(
            f"lists answer different queries: {list_a.query!r} vs {list_b.query!r}"
        )
    common = set(list_a.urls()) & set(list_b.urls())
    return sum(
        field_distance(list_a, list_b, url, field, stopwords)
        for url in sorted(common)
    )
