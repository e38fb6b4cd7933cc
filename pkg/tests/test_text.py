import math

import pytest

from gmds.errors import InputError
from gmds.text import (SentenceVector, build_sentence_graph, cosine_similarity,
                       default_lemma_map, default_stopwords,
                       segment_and_normalize, split_sentences, word_tokens)

TWO_SENTENCES = ("Tom is looking at his children with a smile. "
                 "These children are good at singing.")


class TestSegmentation:
    def test_reference_document_vectors(self):
        vecs = segment_and_normalize(TWO_SENTENCES)
        assert len(vecs) == 2
        assert vecs[0].counts == {"tom": 1, "be": 1, "look": 1, "child": 1, "smile": 1}
        assert vecs[1].counts == {"be": 1, "child": 1, "good": 1, "sing": 1}
        assert vecs[0].word_count == 9
        assert vecs[1].word_count == 6

    def test_vocabulary_in_first_appearance_order(self):
        vecs = segment_and_normalize(TWO_SENTENCES)
        vocab = []
        for v in vecs:
            for t in v.counts:
                if t not in vocab:
                    vocab.append(t)
        assert vocab == ["tom", "be", "look", "child", "smile", "good", "sing"]
        assert [vecs[0].counts.get(t, 0) for t in vocab] == [1, 1, 1, 1, 1, 0, 0]
        assert [vecs[1].counts.get(t, 0) for t in vocab] == [0, 1, 0, 1, 0, 1, 1]

    def test_empty_text(self):
        assert segment_and_normalize("") == []

    def test_stopword_only_sentence_keeps_empty_vector(self):
        vecs = segment_and_normalize("At the of with. Dogs bark.")
        assert len(vecs) == 2
        assert vecs[0].counts == {}
        assert vecs[0].word_count == 4

    def test_abbreviations_do_not_split(self):
        got = split_sentences("Dr. Smith arrived. He sat down.")
        assert got == ["Dr. Smith arrived.", "He sat down."]

    def test_trailing_fragment_kept(self):
        assert split_sentences("One. two without cap") == ["One. two without cap"]
        assert split_sentences("Stop! Go now") == ["Stop!", "Go now"]


class TestCosine:
    def test_reference_pair_value(self):
        vecs = segment_and_normalize(TWO_SENTENCES)
        w = cosine_similarity(vecs[0], vecs[1])
        assert abs(w - 2.0 / math.sqrt(20.0)) < 1e-12

    def test_identical_vectors(self):
        v = SentenceVector(0, {"a": 2, "b": 1}, 3)
        assert cosine_similarity(v, v) == pytest.approx(1.0)

    def test_disjoint_supports(self):
        a = SentenceVector(0, {"x": 1}, 1)
        b = SentenceVector(1, {"y": 3}, 1)
        assert cosine_similarity(a, b) == 0.0

    def test_empty_vector_gives_zero(self):
        a = SentenceVector(0, {}, 0)
        b = SentenceVector(1, {"y": 3}, 1)
        assert cosine_similarity(a, b) == 0.0

    def test_scale_invariance(self):
        a = SentenceVector(0, {"a": 1, "b": 2}, 3)
        b = SentenceVector(1, {"b": 1, "c": 1}, 2)
        a3 = SentenceVector(0, {"a": 3, "b": 6}, 3)
        assert cosine_similarity(a3, b) == pytest.approx(cosine_similarity(a, b), abs=1e-14)


class TestSentenceGraph:
    def test_reference_pair_graph(self):
        vecs = segment_and_normalize(TWO_SENTENCES)
        sg = build_sentence_graph(vecs, 1.0)
        assert sg.graph.n_edges == 1
        i, j, wij, wji = sg.graph.edges[0]
        assert wij == wji == pytest.approx(2.0 / math.sqrt(20.0))

    def test_identical_sentences_form_unit_clique(self):
        text = "Cats sleep deeply. Cats sleep deeply. Cats sleep deeply."
        vecs = segment_and_normalize(text)
        sg = build_sentence_graph(vecs, 1.0)
        assert sg.graph.n_edges == 3
        assert all(w == pytest.approx(1.0) for _, _, w, _ in sg.graph.edges)

    def test_zero_similarity_pairs_omitted(self):
        vecs = segment_and_normalize("Dogs bark. Cats sleep.")
        sg = build_sentence_graph(vecs, 1.0)
        assert sg.graph.n_edges == 0

    def test_empty_vector_is_isolated(self):
        vecs = segment_and_normalize("At the of with. Dogs bark. Dogs bark.")
        sg = build_sentence_graph(vecs, 1.0)
        assert all(0 not in (i, j) for i, j, _, _ in sg.graph.edges)

    def test_requires_vectors(self):
        with pytest.raises(InputError):
            build_sentence_graph([], 1.0)

    def test_permutation_equivariance(self):
        text = "Dogs bark loudly. Dogs bark at cats. Cats nap quietly."
        vecs = segment_and_normalize(text)
        sg = build_sentence_graph(vecs, 1.0)
        perm = [2, 0, 1]
        relabeled = [SentenceVector(perm[v.sentence_id], v.counts, v.word_count)
                     for v in vecs]
        relabeled.sort(key=lambda v: v.sentence_id)
        sg2 = build_sentence_graph(relabeled, 1.0)
        want = sorted((min(perm[i], perm[j]), max(perm[i], perm[j]), round(w, 12))
                      for i, j, w, _ in sg.graph.edges)
        got = sorted((min(i, j), max(i, j), round(w, 12))
                     for i, j, w, _ in sg2.graph.edges)
        assert want == got


def test_default_resources_cover_reference_words():
    stop = default_stopwords()
    assert {"a", "an", "at", "do", "but", "of", "with", "his", "these", "this"} <= stop
    assert "is" not in stop and "are" not in stop and "be" not in stop
    lem = default_lemma_map()
    assert lem["looking"] == "look"
    assert lem["children"] == "child"
    assert lem["is"] == "be" and lem["are"] == "be"
    assert lem["airier"] == "airy"


def test_word_tokens_lowercase():
    assert word_tokens("Tom's cat, the Big one!") == ["tom's", "cat", "the", "big", "one"]
