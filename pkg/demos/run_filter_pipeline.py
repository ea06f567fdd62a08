"""Run the staged filter over a stream and watch the blacklist learn.

Run with: python3 demos/run_filter_pipeline.py
"""

import json

from safeindex import (
    FilterState,
    TrainConfig,
    build_safe_index,
    default_lexicon_set,
    extract_features,
    train_forest,
)
from safeindex.synth import generate_corpus

lexicons = default_lexicon_set()

train_pages = generate_corpus(lexicons, n_pages=226, n_adult=120, seed=3)
forest, _ = train_forest(
    [extract_features(p, lexicons) for p in train_pages],
    [p.label for p in train_pages],
    TrainConfig(rng_seed=3),
)

# The stream mixes .xxx hosts and disclaimer pages so the cheap stages
# fire, and repeats adult domains so the three-strike blacklist kicks in.
stream = generate_corpus(
    lexicons,
    n_pages=300,
    n_adult=150,
    seed=4,
    url_prefix="s",
    xxx_fraction=0.2,
    disclaimer_fraction=0.2,
)
# revisit the first adult domains three more times under fresh paths so
# they pass the three-strike trigger and the fourth visit short-circuits
repeats = []
for visit in range(3):
    repeats += generate_corpus(
        lexicons,
        n_pages=300,
        n_adult=150,
        seed=4,
        url_prefix=f"r{visit}-",
        xxx_fraction=0.2,
        disclaimer_fraction=0.2,
    )[:30]

state = FilterState(blacklist_trigger=3)
index, report, state = build_safe_index(stream + repeats, forest, lexicons, state)

print("stage counts:")
print(json.dumps(report.as_dict(), indent=2))
print()
print(f"safe index holds {len(index)} of {len(stream) + len(repeats)} pages")
print(f"self-built blacklist ({len(state.blacklist)} domains), first few:")
for domain in sorted(state.blacklist)[:5]:
    print(f"  {domain}")
