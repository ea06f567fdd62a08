"""Cost-sensitive boosted forest of binary threshold trees.

Induction follows documented C4.5 conventions (gain ratio, midpoint
thresholds, mean-gain guard) with AdaBoost.M1-style reweighting between
trees.  False negatives (adult classified safe) are penalized through the
initial row weights and through expected-cost leaf labeling; the final
vote is a plain equal-weight majority.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .errors import SafeIndexError, TrainingError
from .features import ATTRIBUTE_NAMES, FeatureVector
from .page import ADULT, SAFE

MODEL_VERSION = 1


@dataclass(frozen=True)
class Leaf:
    label: str
    # (adult weight, safe weight) seen at this node during training
    weights: tuple[float, float] = (0.0, 0.0)


@dataclass(frozen=True)
class Split:
    attribute: str
    threshold: float
    left: "TreeNode"   # taken when value <= threshold
    right: "TreeNode"  # taken when value > threshold


TreeNode = Union[Leaf, Split]


@dataclass(frozen=True)
class Forest:
    trees: tuple[TreeNode, ...]
    vote_threshold: float = 0.5

    def __post_init__(self):
        if not self.trees:
            raise ValueError("forest needs at least one tree")
        if not 0.0 < self.vote_threshold <= 1.0:
            raise ValueError("vote_threshold must be in (0, 1]")


@dataclass(frozen=True)
class TrainConfig:
    n_trees: int = 10
    fn_cost: float = 20.0
    min_leaf_weight: float = 2.0
    max_depth: int = 12
    rng_seed: int = 0

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        if self.fn_cost <= 0 or self.min_leaf_weight <= 0:
            raise ValueError("fn_cost and min_leaf_weight must be positive")


@dataclass(frozen=True)
class TreeStats:
    size: int
    training_error: float


@dataclass(frozen=True)
class TrainReport:
    per_tree: tuple[TreeStats, ...]
    global_training_error: float


def entropy(adult_weight: float, safe_weight: float) -> float:
    """Shannon entropy in bits of a two-class weight pair; 0*log0 == 0."""
    total = adult_weight + safe_weight
    if total <= 0:
        raise SafeIndexError("entropy of an empty weight distribution")
    result = 0.0
    for w in (adult_weight, safe_weight):
        if w > 0:
            p = w / total
            result -= p * math.log2(p)
    return result


def leaf_label(adult_weight: float, safe_weight: float, fn_cost: float) -> str:
    """Label minimizing expected misclassification cost (FP cost fixed at 1)."""
    return ADULT if adult_weight * fn_cost > safe_weight else SAFE


def tree_size(node: TreeNode) -> int:
    if isinstance(node, Leaf):
        return 1
    return 1 + tree_size(node.left) + tree_size(node.right)


@dataclass(frozen=True)
class SplitChoice:
    attribute: str
    threshold: float
    gain_ratio: float


def best_split(
    X: np.ndarray,
    y: np.ndarray,
    w: np.ndarray,
    attr_names: Sequence[str],
    min_leaf_weight: float,
) -> SplitChoice | None:
    """Highest gain-ratio midpoint split passing the C4.5 mean-gain guard.

    Candidates whose information gain is below the mean gain of all
    positive-gain candidates are discarded.  Ties break by higher gain,
    then attribute name, then lower threshold.  Returns None when no
    candidate has positive gain or every split starves a side below
    min_leaf_weight.
    """
    total = float(w.sum())
    total_adult = float(w[y].sum())
    total_safe = total - total_adult
    if total_adult <= 0 or total_safe <= 0:
        return None
    parent = entropy(total_adult, total_safe)

    candidates: list[tuple[float, float, str, float]] = []
    for j, name in enumerate(attr_names):
        order = np.argsort(X[:, j], kind="stable")
        xv = X[order, j]
        wv = w[order]
        adultv = np.where(y[order], wv, 0.0)
        cw = np.cumsum(wv)
        ca = np.cumsum(adultv)
        for i in np.flatnonzero(xv[:-1] < xv[1:]):
            wl = float(cw[i])
            wr = total - wl
            if wl < min_leaf_weight or wr < min_leaf_weight:
                continue
            la = float(ca[i])
            ls = max(wl - la, 0.0)
            ra = max(total_adult - la, 0.0)
            rs = max(total_safe - ls, 0.0)
            children = (wl * entropy(la, ls) + wr * entropy(ra, rs)) / total
            gain = parent - children
            if gain <= 0:
                continue
            gain_ratio = gain / entropy(wl, wr)
            threshold = (float(xv[i]) + float(xv[i + 1])) / 2.0
            candidates.append((gain_ratio, gain, name, threshold))

    if not candidates:
        return None
    # epsilon keeps the guard from starving on all-equal gains (float noise)
    mean_gain = sum(c[1] for c in candidates) / len(candidates)
    eligible = [c for c in candidates if c[1] >= mean_gain - 1e-12]
    gr, gain, name, threshold = min(
        eligible, key=lambda c: (-c[0], -c[1], c[2], c[3])
    )
    return SplitChoice(name, threshold, gr)


def grow_tree(
    X: np.ndarray,
    y: np.ndarray,
    w: np.ndarray,
    config: TrainConfig,
    depth: int = 0,
) -> TreeNode:
    """Recursive induction; stops on purity, no useful split, or max depth."""
    adult_w = float(w[y].sum())
    safe_w = float(w.sum()) - adult_w
    if adult_w <= 0 or safe_w <= 0 or depth >= config.max_depth:
        return Leaf(leaf_label(adult_w, safe_w, config.fn_cost), (adult_w, safe_w))
    choice = best_split(X, y, w, ATTRIBUTE_NAMES, config.min_leaf_weight)
    if choice is None:
        return Leaf(leaf_label(adult_w, safe_w, config.fn_cost), (adult_w, safe_w))
    j = ATTRIBUTE_NAMES.index(choice.attribute)
    mask = X[:, j] <= choice.threshold
    return Split(
        choice.attribute,
        choice.threshold,
        grow_tree(X[mask], y[mask], w[mask], config, depth + 1),
        grow_tree(X[~mask], y[~mask], w[~mask], config, depth + 1),
    )


def tree_classify(tree: TreeNode, fv: FeatureVector) -> tuple[str, set[str]]:
    """Root-to-leaf descent; also reports the attributes tested en route."""
    visited: set[str] = set()
    node = tree
    while isinstance(node, Split):
        visited.add(node.attribute)
        node = node.left if fv[node.attribute] <= node.threshold else node.right
    return node.label, visited


def _predict_rows(node: TreeNode, X: np.ndarray) -> np.ndarray:
    """Boolean adult-vote array for every row, one tree."""
    out = np.empty(len(X), dtype=bool)

    def fill(node: TreeNode, idx: np.ndarray):
        if isinstance(node, Leaf):
            out[idx] = node.label == ADULT
            return
        j = ATTRIBUTE_NAMES.index(node.attribute)
        mask = X[idx, j] <= node.threshold
        fill(node.left, idx[mask])
        fill(node.right, idx[~mask])

    fill(node, np.arange(len(X)))
    return out


def forest_score(forest: Forest, fv: FeatureVector) -> float:
    """Fraction of trees voting adult."""
    votes = sum(1 for t in forest.trees if tree_classify(t, fv)[0] == ADULT)
    return votes / len(forest.trees)


def classify(forest: Forest, fv: FeatureVector) -> str:
    """Adult iff the vote score strictly exceeds the forest's threshold."""
    return ADULT if forest_score(forest, fv) > forest.vote_threshold else SAFE


def count_threshold(n_trees: int, min_votes: int) -> float:
    """Vote threshold such that >= min_votes adult votes classify adult."""
    if not 1 <= min_votes <= n_trees:
        raise ValueError("min_votes must be in [1, n_trees]")
    return (min_votes - 0.5) / n_trees


def train_forest(
    vectors: Sequence[FeatureVector],
    labels: Sequence[str],
    config: TrainConfig = TrainConfig(),
) -> tuple[Forest, TrainReport]:
    """Boosted induction of config.n_trees trees.

    Adult rows start at fn_cost times the weight of safe rows; each round
    upweights the previous tree's mistakes by (1-e)/e.  A round with
    weighted error >= 0.5 restarts from perturbed initial weights so the
    forest always reaches its full size.  Weights are kept normalized to
    the row count so min_leaf_weight speaks in "cases".
    """
    if len(vectors) != len(labels):
        raise ValueError("vectors and labels length mismatch")
    n = len(vectors)
    if n < 2:
        raise TrainingError("need at least 2 training rows")
    y = np.array([label == ADULT for label in labels], dtype=bool)
    if y.all() or not y.any():
        raise TrainingError("degenerate class distribution")
    X = np.array([fv.values for fv in vectors], dtype=float)

    initial = np.where(y, config.fn_cost, 1.0)
    initial *= n / initial.sum()
    w = initial.copy()
    rng = np.random.default_rng(config.rng_seed)

    trees: list[TreeNode] = []
    stats: list[TreeStats] = []
    votes = np.zeros(n, dtype=int)
    for _ in range(config.n_trees):
        tree = grow_tree(X, y, w, config)
        pred = _predict_rows(tree, X)
        wrong = pred != y
        trees.append(tree)
        stats.append(TreeStats(tree_size(tree), float(wrong.mean())))
        votes += pred

        eps = float(w[wrong].sum() / w.sum())
        if eps >= 0.5:
            w = initial * rng.uniform(0.8, 1.2, n)
            w *= n / w.sum()
        elif eps > 0.0:
            w = w.copy()
            w[wrong] *= (1.0 - eps) / eps
            w *= n / w.sum()
        # eps == 0: nothing to upweight; weights stay put

    forest = Forest(tuple(trees))
    ensemble_adult = votes / config.n_trees > forest.vote_threshold
    global_error = float((ensemble_adult != y).mean())
    return forest, TrainReport(tuple(stats), global_error)


# ---------------------------------------------------------------------------
# serialization


def _node_to_obj(node: TreeNode) -> dict:
    if isinstance(node, Leaf):
        return {"label": node.label, "weights": list(node.weights)}
    return {
        "attr": node.attribute,
        "thr": node.threshold,
        "left": _node_to_obj(node.left),
        "right": _node_to_obj(node.right),
    }


def _node_from_obj(obj: dict) -> TreeNode:
    if "label" in obj:
        if obj["label"] not in (ADULT, SAFE):
            raise SafeIndexError(f"bad leaf label {obj['label']!r} in model")
        weights = obj.get("weights", [0.0, 0.0])
        return Leaf(obj["label"], (float(weights[0]), float(weights[1])))
    if obj["attr"] not in ATTRIBUTE_NAMES:
        raise SafeIndexError(f"unknown attribute {obj['attr']!r} in model")
    return Split(
        obj["attr"],
        float(obj["thr"]),
        _node_from_obj(obj["left"]),
        _node_from_obj(obj["right"]),
    )


def forest_to_json(forest: Forest) -> str:
    doc = {
        "version": MODEL_VERSION,
        "vote_threshold": forest.vote_threshold,
        "trees": [_node_to_obj(t) for t in forest.trees],
    }
    return json.dumps(doc, indent=2) + "\n"


def forest_from_json(text: str) -> Forest:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SafeIndexError(f"model file is not valid JSON: {exc}") from exc
    if doc.get("version") != MODEL_VERSION:
        raise SafeIndexError(f"unsupported model version {doc.get('version')!r}")
    return Forest(
        tuple(_node_from_obj(t) for t in doc["trees"]),
        float(doc["vote_threshold"]),
    )


def save_forest(forest: Forest, path: str | Path) -> None:
    Path(path).write_text(forest_to_json(forest), encoding="utf-8")


def load_forest(path: str | Path) -> Forest:
    return forest_from_json(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# pretty printing


def format_tree(node: TreeNode, indent: str = "") -> str:
    """Indented if/else rendering of one tree."""
    if isinstance(node, Leaf):
        a, s = node.weights
        return f"{indent}{node.label} ({a:.1f}/{s:.1f})\n"
    text = f"{indent}{node.attribute} > {node.threshold:g}?\n"
    text += f"{indent}  yes:\n" + format_tree(node.right, indent + "    ")
    text += f"{indent}  no:\n" + format_tree(node.left, indent + "    ")
    return text


def format_report(report: TrainReport) -> str:
    lines = ["tree id  size  error"]
    for i, ts in enumerate(report.per_tree):
        lines.append(f"{i:<7d}  {ts.size:<4d}  {ts.training_error:.1%}")
    lines.append(f"global error: {report.global_training_error:.1%}")
    return "\n".join(lines)
