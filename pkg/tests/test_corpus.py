import itertools
import json
import random

import pytest

from conftest import make_corpus, make_doc, write_corpus_jsonl
from emomodes.corpus import (
    SPLITS,
    SegmentAnnotation,
    build_context,
    corpus_stats,
    grouped_split,
    ingest_corpus,
    merge_corpus,
    merge_segments,
)
from emomodes.errors import (
    DuplicateDocId,
    EmptyCorpus,
    IndexOutOfRange,
    MissingGold,
    OffsetOutOfRange,
    ParseError,
)
from emomodes.labels import compose_vector


def seg(doc_id, start, end, mode, category):
    return SegmentAnnotation(doc_id, start, end, mode, category, "a1")


class TestIngest:
    def test_two_document_fixture(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_corpus_jsonl(
            path,
            [
                {"doc_id": "d1", "genre": "novel", "sentences": ["Un.", "Deux."],
                 "segments": []},
                {"doc_id": "d2", "genre": "encyclopedic", "sentences": ["Trois."],
                 "segments": []},
            ],
        )
        corpus = ingest_corpus(path)
        assert corpus.n_texts == 2
        assert [s.sent_id for s in corpus.sentences()] == ["d1:0", "d1:1", "d2:0"]
        assert corpus.n_words == 3

    def test_duplicate_doc_id(self, tmp_path):
        path = tmp_path / "c.jsonl"
        doc = {"doc_id": "d1", "genre": "novel", "sentences": ["Un."], "segments": []}
        write_corpus_jsonl(path, [doc, doc])
        with pytest.raises(DuplicateDocId):
            ingest_corpus(path)

    def test_parse_error_carries_line_number(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"doc_id": "d1", "genre": "novel", "sentences": ["Un."]}\n{oops\n')
        with pytest.raises(ParseError) as err:
            ingest_corpus(path)
        assert err.value.line == 2

    def test_malformed_segment_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_corpus_jsonl(
            path,
            [{"doc_id": "d1", "genre": "novel", "sentences": ["Un deux trois."],
              "segments": [{"start": 0, "end": 4, "mode": "labeled",
                            "category": "boredom", "annotator": "a"}]}],
        )
        with pytest.raises(ParseError):
            ingest_corpus(path)

    def test_unknown_genre_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_corpus_jsonl(
            path, [{"doc_id": "d1", "genre": "poetry", "sentences": ["Un."]}]
        )
        with pytest.raises(ParseError):
            ingest_corpus(path)


class TestMergeSegments:
    def test_single_segment_single_sentence(self):
        doc = make_doc("d", ["Marie a peur du noir.", "Il fait beau."])
        spans = doc.sentence_spans()
        merge_segments(doc, [seg("d", spans[0][0], spans[0][1], "labeled", "fear")])
        assert doc.sentences[0].gold == compose_vector({"labeled"}, {"fear"})
        assert doc.sentences[1].gold.as_ints() == [0] * 19

    def test_two_segments_union_in_one_sentence(self):
        doc = make_doc("d", ["Elle fulmine et claque la porte."])
        merge_segments(
            doc,
            [seg("d", 0, 12, "behavioral", "anger"), seg("d", 13, 30, "suggested", "anger")],
        )
        assert doc.sentences[0].gold == compose_vector(
            {"behavioral", "suggested"}, {"anger"}
        )

    def test_zero_segments_all_false(self):
        doc = make_doc("d", ["Un.", "Deux."])
        merge_segments(doc, [])
        assert all(s.gold.as_ints() == [0] * 19 for s in doc.sentences)

    def test_segment_spanning_two_sentences_contributes_to_both(self):
        doc = make_doc("d", ["Premier cri.", "Deuxieme cri."])
        # span crosses the joining space
        merge_segments(doc, [seg("d", 8, 21, "displayed", "surprise")])
        expected = compose_vector({"displayed"}, {"surprise"})
        assert doc.sentences[0].gold == expected
        assert doc.sentences[1].gold == expected

    def test_offset_out_of_range(self):
        doc = make_doc("d", ["Court."])
        with pytest.raises(OffsetOutOfRange):
            merge_segments(doc, [seg("d", 0, 999, "labeled", "joy")])

    def test_merged_vectors_always_validate(self):
        from emomodes.labels import validate_vector

        doc = make_doc("d", ["Un deux trois quatre.", "Cinq six."])
        merge_segments(
            doc,
            [seg("d", 0, 7, "labeled", "joy"), seg("d", 3, 25, "suggested", "pride")],
        )
        for s in doc.sentences:
            assert validate_vector(s.gold) == []


class TestBuildContext:
    def test_middle_has_both_neighbours(self):
        doc = make_doc("d", ["A.", "B.", "C."])
        ctx = build_context(doc, 1)
        assert (ctx.previous, ctx.target.text, ctx.next) == ("A.", "B.", "C.")

    def test_boundaries(self):
        doc = make_doc("d", ["A.", "B."])
        assert build_context(doc, 0).previous is None
        assert build_context(doc, 1).next is None

    def test_index_out_of_range(self):
        doc = make_doc("d", ["A."])
        with pytest.raises(IndexOutOfRange):
            build_context(doc, 1)


def split_error(corpus, assignment, fractions):
    total = corpus.n_sentences
    achieved = {name: 0 for name in SPLITS}
    for doc in corpus.documents:
        achieved[assignment[doc.doc_id]] += len(doc.sentences)
    return sum(
        abs(achieved[name] / total - frac) for name, frac in zip(SPLITS, fractions)
    )


def enumerate_min_error(corpus, fractions):
    best = None
    for combo in itertools.product(SPLITS, repeat=len(corpus.documents)):
        assignment = {d.doc_id: s for d, s in zip(corpus.documents, combo)}
        err = split_error(corpus, assignment, fractions)
        best = err if best is None else min(best, err)
    return best


class TestGroupedSplit:
    def test_exact_when_counts_match_targets(self):
        corpus = make_corpus([70, 10, 20])
        split = grouped_split(corpus, seed=1)
        achieved = {name: 0 for name in SPLITS}
        for doc in corpus.documents:
            achieved[split.assignment[doc.doc_id]] += len(doc.sentences)
        assert achieved == {"train": 70, "dev": 10, "test": 20}

    def test_fifty_fifty_matches_enumeration_optimum(self):
        corpus = make_corpus([50, 50])
        fractions = (0.7, 0.1, 0.2)
        split = grouped_split(corpus, fractions, seed=3)
        achieved = split_error(corpus, split.assignment, fractions)
        assert achieved == pytest.approx(enumerate_min_error(corpus, fractions))

    def test_deterministic_for_fixed_seed(self):
        corpus = make_corpus([7, 3, 9, 4, 12, 5])
        assert grouped_split(corpus, seed=42) == grouped_split(corpus, seed=42)

    def test_partitions_documents(self):
        rng = random.Random(0)
        for _ in range(50):
            corpus = make_corpus([rng.randint(1, 30) for _ in range(rng.randint(1, 8))])
            split = grouped_split(corpus, seed=rng.randint(0, 10**6))
            assert set(split.assignment) == {d.doc_id for d in corpus.documents}
            assert all(s in SPLITS for s in split.assignment.values())

    def test_empty_corpus(self):
        from emomodes.corpus import Corpus

        with pytest.raises(EmptyCorpus):
            grouped_split(Corpus(documents=[]), seed=0)

    def test_bad_fractions(self):
        corpus = make_corpus([5])
        with pytest.raises(ValueError):
            grouped_split(corpus, (0.5, 0.2, 0.2), seed=0)

    def test_near_target_on_many_docs(self):
        rng = random.Random(5)
        corpus = make_corpus([rng.randint(5, 40) for _ in range(60)])
        split = grouped_split(corpus, seed=9)
        err = split_error(corpus, split.assignment, (0.7, 0.1, 0.2))
        # within +-2 percentage points per split
        assert err <= 3 * 0.02

    def test_split_file_roundtrip(self, tmp_path):
        corpus = make_corpus([4, 6, 2])
        split = grouped_split(corpus, seed=11)
        path = tmp_path / "split.json"
        split.save(path)
        from emomodes.corpus import SplitAssignment

        loaded = SplitAssignment.load(path)
        assert loaded == split
        data = json.loads(path.read_text())
        assert set(data) == {"seed", "assignment"}


class TestCorpusStats:
    def _emotional_corpus(self):
        corpus = make_corpus([10])
        doc = corpus.documents[0]
        spans = doc.sentence_spans()
        segs = [
            seg(doc.doc_id, *spans[0], "labeled", "fear"),
            seg(doc.doc_id, *spans[1], "suggested", "joy"),
        ]
        merge_segments(doc, segs)
        return corpus

    def test_percentages(self):
        table = corpus_stats(self._emotional_corpus())
        assert table.subsets["all"]["label_pct"]["emotional"] == pytest.approx(20.0)
        assert table.subsets["all"]["sentences"] == 10

    def test_missing_gold(self):
        with pytest.raises(MissingGold):
            corpus_stats(make_corpus([3]))

    def test_mode_sum_at_least_emotional_with_multi_mode_sentence(self):
        corpus = make_corpus([5])
        doc = corpus.documents[0]
        spans = doc.sentence_spans()
        merge_segments(
            doc,
            [
                seg(doc.doc_id, *spans[0], "behavioral", "anger"),
                seg(doc.doc_id, *spans[0], "suggested", "anger"),
                seg(doc.doc_id, *spans[2], "labeled", "joy"),
            ],
        )
        pct = corpus_stats(corpus).subsets["all"]["label_pct"]
        mode_sum = sum(pct[m] for m in ("labeled", "behavioral", "displayed", "suggested"))
        assert mode_sum >= pct["emotional"]

    def test_word_count_is_whitespace_tokens(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_corpus_jsonl(
            path,
            [{"doc_id": "d", "genre": "novel",
              "sentences": ["Bonjour, tout le monde !"], "segments": []}],
        )
        corpus = merge_corpus(ingest_corpus(path))
        assert corpus_stats(corpus).subsets["all"]["words"] == 5
