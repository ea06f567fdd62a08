"""The 36 numeric attributes computed for every page.

Layout: in_url, in_ndd, nbr_img, then nb_X / ratio_X / prop_X for each of
the eleven content lexicons in canonical order.

URL attributes use raw substring matching (URLs have no token
boundaries); content attributes match lexicon terms against the token
stream, with multi-word terms matched as contiguous token sequences.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable

from .lexicon import CONTENT_LEXICON_NAMES, Lexicon, LexiconSet
from .page import Page


def _attribute_names() -> tuple[str, ...]:
    names = ["in_url", "in_ndd", "nbr_img"]
    for lex_name in CONTENT_LEXICON_NAMES:
        names += [f"nb_{lex_name}", f"ratio_{lex_name}", f"prop_{lex_name}"]
    return tuple(names)


ATTRIBUTE_NAMES: tuple[str, ...] = _attribute_names()
_ATTRIBUTE_INDEX = {name: i for i, name in enumerate(ATTRIBUTE_NAMES)}

assert len(ATTRIBUTE_NAMES) == 36


@dataclass(frozen=True)
class FeatureVector:
    """Values in ATTRIBUTE_NAMES order; addressable by attribute name."""

    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(ATTRIBUTE_NAMES):
            raise ValueError(
                f"expected {len(ATTRIBUTE_NAMES)} attributes, got {len(self.values)}"
            )

    def __getitem__(self, name: str) -> float:
        return self.values[_ATTRIBUTE_INDEX[name]]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(ATTRIBUTE_NAMES, self.values))


def substring_hits(haystack: str, lexicon: Lexicon) -> int:
    """Distinct lexicon terms occurring as substrings of the haystack."""
    return sum(1 for term in lexicon.terms if term in haystack)


class _Matcher:
    """Single-pass token matcher for one lexicon.

    Multi-word terms are indexed by their first word; matches at distinct
    start positions count separately, overlaps allowed.
    """

    def __init__(self, lexicon: Lexicon):
        self.singles: set[str] = set()
        self.phrases: dict[str, list[tuple[str, ...]]] = {}
        for term in lexicon.terms:
            parts = tuple(term.split(" "))
            if len(parts) == 1:
                self.singles.add(term)
            else:
                self.phrases.setdefault(parts[0], []).append(parts)
        self.term_count = lexicon.term_count

    def scan(self, tokens: tuple[str, ...]) -> tuple[int, int, int]:
        """(total matches, distinct terms matched, token positions covered)."""
        total = 0
        seen: set = set()
        covered: set[int] = set()
        n = len(tokens)
        singles = self.singles
        phrases = self.phrases
        for i, tok in enumerate(tokens):
            if tok in singles:
                total += 1
                seen.add(tok)
                covered.add(i)
            for parts in phrases.get(tok, ()):
                end = i + len(parts)
                if end <= n and tuple(tokens[i:end]) == parts:
                    total += 1
                    seen.add(parts)
                    covered.update(range(i, end))
        return total, len(seen), len(covered)


@lru_cache(maxsize=64)
def _matcher(lexicon: Lexicon) -> _Matcher:
    return _Matcher(lexicon)


def nb_metric(tokens: tuple[str, ...], lexicon: Lexicon) -> int:
    """Occurrences of lexicon terms in the token stream, with multiplicity."""
    return _matcher(lexicon).scan(tokens)[0]


def ratio_metric(tokens: tuple[str, ...], lexicon: Lexicon) -> float:
    """Fraction of the lexicon's terms present at least once."""
    return _matcher(lexicon).scan(tokens)[1] / lexicon.term_count


def prop_metric(tokens: tuple[str, ...], lexicon: Lexicon) -> float:
    """Fraction of token positions covered by at least one match."""
    if not tokens:
        return 0.0
    return _matcher(lexicon).scan(tokens)[2] / len(tokens)


def extract_features(page: Page, lexicons: LexiconSet) -> FeatureVector:
    """All 36 attributes for one page.  Total: no page content can fail."""
    values = [
        float(substring_hits(page.url.full_url, lexicons.url_terms)),
        float(substring_hits(page.url.registrable_domain, lexicons.url_terms)),
        float(page.image_count),
    ]
    for name in CONTENT_LEXICON_NAMES:
        lexicon = lexicons.content(name)
        total, distinct, covered = _matcher(lexicon).scan(page.tokens)
        values.append(float(total))
        values.append(distinct / lexicon.term_count)
        values.append(covered / len(page.tokens) if page.tokens else 0.0)
    return FeatureVector(tuple(values))


def write_feature_csv(
    path: str | Path,
    rows: Iterable[tuple[Page, FeatureVector]],
) -> None:
    """Debug/eval dump: url, label, then the 36 attributes in fixed order."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["url", "label", *ATTRIBUTE_NAMES])
        for page, fv in rows:
            writer.writerow(
                [page.url.full_url, page.label or "unlabeled", *fv.values]
            )
