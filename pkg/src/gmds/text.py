"""Sentence graphs: segmentation, term vectors, cosine-weighted edges.

Each sentence becomes a sparse count vector over normalized terms
(lowercased, stop words removed, lemma dictionary applied) and a vertex of
a symmetric graph whose edge weights are cosine similarities.  Selecting a
dominating set of that graph at threshold theta then picks sentences that
jointly "cover" the rest.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from importlib import resources

from .errors import InputError
from .graph import WeightedGraph

_WORD_RE = re.compile(r"[^\W_\d]+(?:'[^\W_\d]+)*", re.UNICODE)

# terminal punctuation followed by whitespace and an upper-case/digit start
_BOUNDARY_RE = re.compile(r"([.!?]+)(\s+)(?=[\"'(]?[A-Z0-9])")

DEFAULT_ABBREVIATIONS = frozenset({
    "mr", "mrs", "ms", "dr", "prof", "st", "vs", "etc", "e.g", "i.e",
    "fig", "eq", "no", "al",
})


def word_tokens(text: str) -> list[str]:
    """Lowercased surface words (letters with optional internal apostrophe)."""
    return _WORD_RE.findall(text.lower())


def split_sentences(text: str, abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS
                    ) -> list[str]:
    """Rule-based sentence splitter.

    Splits after terminal ``.?!`` followed by whitespace and a capitalized
    continuation, unless the token in front of the period is a known
    abbreviation.  A trailing fragment without terminal punctuation is kept.
    """
    sentences = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        candidate = text[start:m.end(1)]
        if m.group(1) == ".":
            tail_word = re.search(r"([A-Za-z][A-Za-z.]*)\.$", candidate)
            if tail_word and tail_word.group(1).lower().rstrip(".") in abbreviations:
                continue
        sentence = candidate.strip()
        if sentence:
            sentences.append(sentence)
        start = m.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


@dataclass
class SentenceVector:
    """Sparse term-count vector of one sentence.

    ``word_count`` is the surface word count before any filtering, which is
    what word budgets are charged against.
    """

    sentence_id: int
    counts: dict[str, int]
    word_count: int

    def norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.counts.values()))


def load_word_set(path) -> frozenset[str]:
    with open(path, "r", encoding="utf-8") as fh:
        return frozenset(w.strip().lower() for w in fh if w.strip())


def load_lemma_map(path) -> dict[str, str]:
    lemmas: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise InputError(f"lemma file line {lineno}: expected 'surface<TAB>lemma'")
            lemmas[parts[0].strip().lower()] = parts[1].strip().lower()
    return lemmas


def default_stopwords() -> frozenset[str]:
    data = resources.files("gmds.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(w.strip().lower() for w in data.splitlines() if w.strip())


def default_lemma_map() -> dict[str, str]:
    data = resources.files("gmds.data").joinpath("lemmas.tsv").read_text("utf-8")
    lemmas = {}
    for line in data.splitlines():
        if line.strip():
            surface, lemma = line.split("\t")
            lemmas[surface] = lemma
    return lemmas


def segment_and_normalize(text: str, stopwords: frozenset[str] | None = None,
                          lemma_map: dict[str, str] | None = None
                          ) -> list[SentenceVector]:
    """Split ``text`` into sentences and build normalized term vectors.

    Tokens are lowercased, stop words dropped, and the lemma dictionary
    applied (identity for absent words).  Sentences that are empty after
    filtering keep an empty vector so ids stay aligned with the source.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    if lemma_map is None:
        lemma_map = default_lemma_map()
    vectors = []
    for sid, sentence in enumerate(split_sentences(text)):
        surface = word_tokens(sentence)
        counts: dict[str, int] = {}
        for tok in surface:
            if tok in stopwords:
                continue
            term = lemma_map.get(tok, tok)
            counts[term] = counts.get(term, 0) + 1
        vectors.append(SentenceVector(sid, counts, len(surface)))
    return vectors


def cosine_similarity(a: SentenceVector, b: SentenceVector) -> float:
    """Cosine of the two count vectors; 0 when either is empty."""
    if not a.counts or not b.counts:
        return 0.0
    small, big = (a.counts, b.counts) if len(a.counts) <= len(b.counts) else (b.counts, a.counts)
    dot = sum(c * big[t] for t, c in small.items() if t in big)
    if dot == 0:
        return 0.0
    return dot / (a.norm() * b.norm())


@dataclass
class SentenceGraph:
    """Cosine-weighted sentence graph plus provenance to the source text."""

    graph: WeightedGraph
    sentences: list[str]
    vectors: list[SentenceVector]
    theta: float


def build_sentence_graph(vectors: list[SentenceVector], theta: float,
                         sentences: list[str] | None = None) -> SentenceGraph:
    """All-pairs cosine edges (zero-similarity pairs omitted) at threshold theta."""
    if not vectors:
        raise InputError("need at least one sentence vector")
    n = len(vectors)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            w = cosine_similarity(vectors[i], vectors[j])
            if w > 0:
                edges.append((i, j, w, w))
    graph = WeightedGraph.uniform(n, edges, theta)
    return SentenceGraph(graph, list(sentences) if sentences else [], list(vectors), theta)
