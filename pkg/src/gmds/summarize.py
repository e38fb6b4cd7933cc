"""End-to-end extractive summarization and its evaluation metrics.

A document becomes a cosine-weighted sentence graph; a selector (decimation,
PageRank, or Affinity Propagation) picks sentence ids; the summary emits the
picked sentences in document order.  Word budgets take the selector's
ranking prefix whose cumulative surface word count first reaches the budget.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .baselines import affinity_propagation, pagerank, pagerank_select
from .bpd import BpdConfig, bpd_run
from .errors import InputError
from .text import (SentenceGraph, build_sentence_graph, segment_and_normalize,
                   split_sentences, word_tokens)

METHODS = ("bpd", "pagerank", "ap")

# cosine weights are generic reals, so the counting grid must be much finer
# than the instance-solver default of theta/10
TEXT_GRID_FRACTION = 1e-3


@dataclass(frozen=True)
class Summary:
    """Selected sentence ids (document order) plus the rendered sentences."""

    method: str
    theta: float
    selected_ids: tuple[int, ...]
    sentences: tuple[str, ...]
    total_words: int
    n_sentences: int
    word_budget: int | None = None
    params: dict = field(default_factory=dict, compare=False)

    def text(self) -> str:
        return " ".join(self.sentences)


def _budget_prefix(ranked: list[int], word_counts, budget: int) -> list[int]:
    """Ranking prefix that first reaches the budget (DUC-style 'about N words')."""
    chosen: list[int] = []
    total = 0
    for sid in ranked:
        chosen.append(sid)
        total += word_counts[sid]
        if total >= budget:
            break
    return chosen


def summarize(document: str, method: str = "bpd", theta: float = 1.0,
              word_budget: int | None = None, beta: float = 8.0,
              occupy_fraction: float = 0.01, bp_sweeps_per_round: int = 10,
              seed: int = 0, p: float = 0.85, fraction: float = 0.25,
              self_preference: float = 0.0, ap_damping: float = 0.5,
              stopwords=None, lemma_map=None) -> Summary:
    """Build the sentence graph and select a summary with the chosen method.

    Unbudgeted selection: decimation returns its dominating set, PageRank its
    top ``fraction`` of sentences, Affinity Propagation its exemplars.  With
    ``word_budget``, decimation and PageRank take their ranking prefix (see
    ``_budget_prefix``); Affinity Propagation has no ranking and rejects
    budgets.  Sentences are always emitted in document order.
    """
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}; expected one of {METHODS}")
    if word_budget is not None and word_budget < 1:
        raise InputError("word_budget must be >= 1")
    sentences = split_sentences(document)
    if not sentences:
        raise InputError("document contains no sentences")
    vectors = segment_and_normalize(document, stopwords, lemma_map)
    sgraph: SentenceGraph = build_sentence_graph(vectors, theta, sentences)
    word_counts = [v.word_count for v in vectors]
    params: dict = {"theta": theta}

    if method == "bpd":
        cfg = BpdConfig(beta=beta, occupy_fraction=occupy_fraction,
                        bp_sweeps_per_round=bp_sweeps_per_round, seed=seed,
                        grid=theta * TEXT_GRID_FRACTION)
        result = bpd_run(sgraph.graph, cfg)
        params.update(beta=beta, occupy_fraction=occupy_fraction, seed=seed)
        if word_budget is None:
            selected = sorted(result.dominating_set.members)
        else:
            selected = sorted(_budget_prefix(list(result.order), word_counts, word_budget))
    elif method == "pagerank":
        pr = pagerank(sgraph.graph, p=p)
        params.update(p=p)
        if word_budget is None:
            params.update(fraction=fraction)
            selected = pagerank_select(pr.scores, fraction)
        else:
            ranked = [int(v) for v in np.argsort(-pr.scores, kind="stable")]
            selected = sorted(_budget_prefix(ranked, word_counts, word_budget))
    else:
        if word_budget is not None:
            raise InputError("affinity propagation has no ranking; word_budget unsupported")
        ap = affinity_propagation(sgraph.graph, self_preference=self_preference,
                                  damping=ap_damping)
        params.update(self_preference=self_preference, damping=ap_damping)
        selected = sorted(ap.exemplars)

    return Summary(
        method=method,
        theta=theta,
        selected_ids=tuple(selected),
        sentences=tuple(sentences[i] for i in selected),
        total_words=sum(word_counts[i] for i in selected),
        n_sentences=len(sentences),
        word_budget=word_budget,
        params=params,
    )


def coverage_ratios(system: set[int], reference: set[int]) -> tuple[float, float]:
    """Overlap ratios between selected and reference sentence-id sets.

    Returns (coverage, difference): the fraction of reference ids that the
    system found, and the fraction of system ids outside the reference.
    """
    system = set(system)
    reference = set(reference)
    if not reference:
        raise InputError("reference set is empty; ratios undefined")
    if not system:
        raise InputError("system set is empty; difference ratio undefined")
    r_cov = len(system & reference) / len(reference)
    r_dif = len(system - reference) / len(system)
    return r_cov, r_dif


@dataclass(frozen=True)
class RougeScore:
    recall: float
    precision: float
    fscore: float


@dataclass(frozen=True)
class Rouge1Result:
    per_reference: tuple[RougeScore, ...]
    mean: RougeScore


def rouge1(system_text: str, references: list[str]) -> Rouge1Result:
    """Unigram-overlap recall/precision/F against one or more references.

    Tokenization is plain lowercased surface words with no stop-word removal
    or lemmatization.  The shared-count numerator clips each word at its
    occurrence count in both texts.  Multiple references are aggregated by
    the arithmetic mean of the per-reference scores.
    """
    if not references:
        raise InputError("need at least one reference text")
    sys_counts = Counter(word_tokens(system_text))
    sys_total = sum(sys_counts.values())
    scores = []
    for ref_text in references:
        ref_counts = Counter(word_tokens(ref_text))
        ref_total = sum(ref_counts.values())
        if ref_total == 0:
            raise InputError("reference text contains no words")
        clipped = sum(min(c, sys_counts.get(w, 0)) for w, c in ref_counts.items())
        recall = clipped / ref_total
        precision = clipped / sys_total if sys_total else 0.0
        # recall and precision share the clipped numerator, so the harmonic
        # combination reduces to one exact division
        fscore = 2 * clipped / (ref_total + sys_total) if sys_total else 0.0
        scores.append(RougeScore(recall, precision, fscore))
    k = len(scores)
    mean = RougeScore(
        sum(s.recall for s in scores) / k,
        sum(s.precision for s in scores) / k,
        sum(s.fscore for s in scores) / k,
    )
    return Rouge1Result(tuple(scores), mean)
