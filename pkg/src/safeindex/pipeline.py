"""Staged filter over a page stream, producing the safe index.

Stage order, first hit wins: blacklist, disclaimer, .xxx TLD, decision
forest.  Every adult verdict counts toward the per-domain trigger (3 by
default); once a domain hits the trigger it enters the blacklist and its
later pages short-circuit without feature extraction.  Verdicts are
counted once per distinct URL.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .features import extract_features
from .forest import Forest, forest_score
from .lexicon import LexiconSet
from .page import ADULT, SAFE, Page, PageLoadFailure

REASON_BLACKLIST = "blacklist"
REASON_DISCLAIMER = "disclaimer"
REASON_TLD_XXX = "tld_xxx"
REASON_FOREST = "forest"


@dataclass(frozen=True)
class Verdict:
    label: str
    reason: str
    score: float | None = None  # present iff reason == forest


@dataclass
class FilterState:
    blacklist: set[str] = field(default_factory=set)
    unsafe_counts: dict[str, int] = field(default_factory=dict)
    blacklist_trigger: int = 3
    counted_urls: set[str] = field(default_factory=set)


@dataclass
class StageReport:
    blacklist: int = 0
    disclaimer: int = 0
    tld_xxx: int = 0
    forest_adult: int = 0
    forest_safe: int = 0
    skipped: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "blacklist": self.blacklist,
            "disclaimer": self.disclaimer,
            "tld_xxx": self.tld_xxx,
            "forest_adult": self.forest_adult,
            "forest_safe": self.forest_safe,
            "skipped": self.skipped,
        }


def _contains_phrase(tokens: tuple[str, ...], phrase: str) -> bool:
    parts = phrase.split(" ")
    span = len(parts)
    first = parts[0]
    for i, tok in enumerate(tokens):
        if tok == first and list(tokens[i:i + span]) == parts:
            return True
    return False


def has_disclaimer(tokens: tuple[str, ...], phrases: Iterable[str]) -> bool:
    return any(_contains_phrase(tokens, p) for p in phrases)


def filter_page(
    page: Page,
    forest: Forest,
    lexicons: LexiconSet,
    state: FilterState,
) -> tuple[Verdict, FilterState]:
    """Run the staged filter on one page, updating the blacklist state."""
    domain = page.url.registrable_domain
    if domain in state.blacklist:
        verdict = Verdict(ADULT, REASON_BLACKLIST)
    elif has_disclaimer(page.tokens, lexicons.disclaimer_phrases):
        verdict = Verdict(ADULT, REASON_DISCLAIMER)
    elif page.url.tld == "xxx":
        verdict = Verdict(ADULT, REASON_TLD_XXX)
    else:
        score = forest_score(forest, extract_features(page, lexicons))
        label = ADULT if score > forest.vote_threshold else SAFE
        verdict = Verdict(label, REASON_FOREST, score)

    if verdict.label == ADULT and page.url.full_url not in state.counted_urls:
        state.counted_urls.add(page.url.full_url)
        state.unsafe_counts[domain] = state.unsafe_counts.get(domain, 0) + 1
        if state.unsafe_counts[domain] >= state.blacklist_trigger:
            state.blacklist.add(domain)
    return verdict, state


def build_safe_index(
    pages: Iterable[Page | PageLoadFailure],
    forest: Forest,
    lexicons: LexiconSet,
    initial_state: FilterState | None = None,
) -> tuple[list[str], StageReport, FilterState]:
    """Filter a page stream; safe pages' URLs become the index, in order."""
    state = initial_state if initial_state is not None else FilterState()
    report = StageReport()
    index: list[str] = []
    for page in pages:
        if isinstance(page, PageLoadFailure):
            report.skipped += 1
            continue
        verdict, state = filter_page(page, forest, lexicons, state)
        if verdict.reason == REASON_FOREST:
            if verdict.label == ADULT:
                report.forest_adult += 1
            else:
                report.forest_safe += 1
                index.append(page.url.full_url)
        elif verdict.reason == REASON_BLACKLIST:
            report.blacklist += 1
        elif verdict.reason == REASON_DISCLAIMER:
            report.disclaimer += 1
        else:
            report.tld_xxx += 1
    return index, report, state


def load_blacklist(path: str | Path) -> set[str]:
    """One registrable domain per line; '#' comments and blanks skipped."""
    domains = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        stripped = line.strip().lower()
        if stripped and not stripped.startswith("#"):
            domains.add(stripped)
    return domains


def save_blacklist(domains: set[str], path: str | Path) -> None:
    Path(path).write_text(
        "".join(f"{d}\n" for d in sorted(domains)), encoding="utf-8"
    )
