"""Shared test utilities: tiny lexicon sets and independent oracles.

The oracles here deliberately re-derive results with naive algorithms
(exhaustive scans, recursive descent, per-split recomputation) so the
library code is checked against an independent path.
"""

from __future__ import annotations

import math

from safeindex import ADULT, SAFE, FeatureVector, Lexicon, LexiconSet
from safeindex.features import ATTRIBUTE_NAMES
from safeindex.forest import Forest, Leaf, Split
from safeindex.lexicon import CONTENT_LEXICON_NAMES


def make_lexicon_set(
    overrides: dict[str, set[str]] | None = None,
    url_terms: set[str] = frozenset({"porn", "sex", "tube8", "cam4"}),
    disclaimer: tuple[str, ...] = ("you must be 18",),
) -> LexiconSet:
    """A LexiconSet with one placeholder term per list unless overridden."""
    overrides = overrides or {}
    lexicons = {}
    for name in CONTENT_LEXICON_NAMES:
        terms = overrides.get(name, {f"placeholder-{name}"})
        lexicons[name] = Lexicon(name, frozenset(terms))
    return LexiconSet(lexicons, Lexicon("in-url", frozenset(url_terms)), disclaimer)


def make_vector(**values: float) -> FeatureVector:
    """FeatureVector with the named attributes set and everything else 0."""
    return FeatureVector(
        tuple(float(values.get(name, 0.0)) for name in ATTRIBUTE_NAMES)
    )


def vote_forest(adult_votes: int, total: int, vote_threshold: float = 0.5) -> Forest:
    """Forest of leaf-only trees casting a fixed number of adult votes."""
    trees = tuple(
        Leaf(ADULT if i < adult_votes else SAFE) for i in range(total)
    )
    return Forest(trees, vote_threshold)


# ---------------------------------------------------------------------------
# oracle: token/phrase matching over a token stream


def oracle_matches(tokens, lexicon):
    """Every (term, start) match by brute force over all start positions."""
    hits = []
    for term in lexicon.terms:
        parts = term.split(" ")
        for start in range(len(tokens) - len(parts) + 1):
            if list(tokens[start:start + len(parts)]) == parts:
                hits.append((term, start))
    return hits


def oracle_nb(tokens, lexicon):
    return len(oracle_matches(tokens, lexicon))


def oracle_ratio(tokens, lexicon):
    present = {term for term, _ in oracle_matches(tokens, lexicon)}
    return len(present) / lexicon.term_count


def oracle_prop(tokens, lexicon):
    if not tokens:
        return 0.0
    covered = set()
    for term, start in oracle_matches(tokens, lexicon):
        covered.update(range(start, start + len(term.split(" "))))
    return len(covered) / len(tokens)


def oracle_features(page, lexicons) -> list[float]:
    """All 36 attributes computed with the naive matchers above."""

    def url_hits(haystack):
        return sum(1 for t in lexicons.url_terms.terms if t in haystack)

    values = [
        float(url_hits(page.url.full_url)),
        float(url_hits(page.url.registrable_domain)),
        float(page.image_count),
    ]
    for name in CONTENT_LEXICON_NAMES:
        lexicon = lexicons.content(name)
        values.append(float(oracle_nb(page.tokens, lexicon)))
        values.append(oracle_ratio(page.tokens, lexicon))
        values.append(oracle_prop(page.tokens, lexicon))
    return values


# ---------------------------------------------------------------------------
# oracle: split search by exhaustive midpoint enumeration


def oracle_entropy(adult_w: float, safe_w: float) -> float:
    total = adult_w + safe_w
    acc = 0.0
    for w in (adult_w, safe_w):
        if w > 0:
            acc -= (w / total) * math.log2(w / total)
    return acc


def oracle_split_candidates(rows, attr_names, min_leaf_weight):
    """rows: list of (values, is_adult, weight).  Recomputes every split
    from scratch by filtering rows, then applies the same guard and
    tie-break contract as the library.  Returns the guard survivors as
    (gain_ratio, gain, attribute, threshold) tuples, best first."""
    total = sum(w for _, _, w in rows)
    total_adult = sum(w for _, a, w in rows if a)
    total_safe = total - total_adult
    if total_adult <= 0 or total_safe <= 0:
        return []
    parent = oracle_entropy(total_adult, total_safe)

    candidates = []
    for j, name in enumerate(attr_names):
        values = sorted({v[j] for v, _, _ in rows})
        for lo, hi in zip(values, values[1:]):
            thr = (lo + hi) / 2.0
            left = [(v, a, w) for v, a, w in rows if v[j] <= thr]
            right = [(v, a, w) for v, a, w in rows if v[j] > thr]
            wl = sum(w for _, _, w in left)
            wr = sum(w for _, _, w in right)
            if wl < min_leaf_weight or wr < min_leaf_weight:
                continue
            la = sum(w for _, a, w in left if a)
            ra = sum(w for _, a, w in right if a)
            children = (
                wl * oracle_entropy(la, wl - la) + wr * oracle_entropy(ra, wr - ra)
            ) / total
            gain = parent - children
            if gain <= 0:
                continue
            candidates.append((gain / oracle_entropy(wl, wr), gain, name, thr))

    if not candidates:
        return []
    mean_gain = sum(c[1] for c in candidates) / len(candidates)
    eligible = [c for c in candidates if c[1] >= mean_gain - 1e-12]
    return sorted(eligible, key=lambda c: (-c[0], -c[1], c[2], c[3]))


def oracle_best_split(rows, attr_names, min_leaf_weight):
    ranked = oracle_split_candidates(rows, attr_names, min_leaf_weight)
    return ranked[0] if ranked else None


# ---------------------------------------------------------------------------
# oracle: recursive tree interpreter


def oracle_tree_classify(node, fv):
    if isinstance(node, Leaf):
        return node.label, set()
    if fv[node.attribute] <= node.threshold:
        label, visited = oracle_tree_classify(node.left, fv)
    else:
        label, visited = oracle_tree_classify(node.right, fv)
    return label, visited | {node.attribute}


def random_tree(rnd, depth=0, max_depth=4):
    """Random TreeNode over the canonical attributes (plain random module)."""
    if depth >= max_depth or rnd.random() < 0.3:
        return Leaf(rnd.choice([ADULT, SAFE]))
    return Split(
        rnd.choice(ATTRIBUTE_NAMES),
        rnd.uniform(0, 10),
        random_tree(rnd, depth + 1, max_depth),
        random_tree(rnd, depth + 1, max_depth),
    )


def random_vector(rnd) -> FeatureVector:
    return FeatureVector(tuple(rnd.uniform(0, 10) for _ in ATTRIBUTE_NAMES))
