"""Train a boosted forest on a synthetic corpus and score it.

Run with: python3 demos/train_and_evaluate.py
"""

from safeindex import (
    TrainConfig,
    attribute_usage,
    classify,
    default_lexicon_set,
    extract_features,
    metrics,
    score_run,
    train_forest,
)
from safeindex.evaluation import format_confusion
from safeindex.forest import format_report, format_tree
from safeindex.synth import generate_corpus

lexicons = default_lexicon_set()

print("generating corpora...")
train_pages = generate_corpus(lexicons, n_pages=226, n_adult=120, seed=1)
test_pages = generate_corpus(lexicons, n_pages=400, n_adult=200, seed=2, url_prefix="t")

print("training a 10-tree forest with a 20x false-negative cost...")
train_vectors = [extract_features(p, lexicons) for p in train_pages]
forest, report = train_forest(
    train_vectors, [p.label for p in train_pages], TrainConfig(rng_seed=1)
)
print(format_report(report))
print()
print("first tree:")
print(format_tree(forest.trees[0]))

test_vectors = [extract_features(p, lexicons) for p in test_pages]
predictions = [classify(forest, fv) for fv in test_vectors]
cm = score_run([(p.label, pred) for p, pred in zip(test_pages, predictions)])
print(format_confusion(cm))
for name, value in metrics(cm).items():
    print(f"{name}: {value:.2%}")

print()
print("attributes consulted most often across the forest:")
usage = attribute_usage(forest, test_vectors)
for name, freq in sorted(usage.items(), key=lambda kv: -kv[1])[:8]:
    if freq > 0:
        print(f"  {freq:6.1%}  {name}")
