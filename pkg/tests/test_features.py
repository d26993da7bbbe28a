import numpy as np
import pytest
from hypothesis import given, strategies as st

from emomodes.corpus import Sentence
from emomodes.errors import DimensionMismatch, EmptyTrainingSet, UnknownSentence
from emomodes.features import (
    SparseVector,
    build_vocabulary,
    load_embedding_table,
    regex_tokenizer,
    stack,
    vectorize,
)


def sents(*texts):
    return [Sentence(f"s:{i}", t) for i, t in enumerate(texts)]


class TestTokenizer:
    def test_words_and_punctuation(self):
        assert regex_tokenizer("Oh, non... dommage !") == [
            "Oh", ",", "non", ".", ".", ".", "dommage", "!",
        ]

    def test_unicode_words(self):
        assert regex_tokenizer("énervé déçu") == ["énervé", "déçu"]


class TestVocabulary:
    def test_distinct_tokens(self):
        vocab = build_vocabulary(sents("a b", "b c"), str.split)
        assert vocab.size == 3

    def test_first_seen_order_is_deterministic(self):
        a = build_vocabulary(sents("c b", "a"), str.split)
        b = build_vocabulary(sents("c b", "a"), str.split)
        assert a.index == b.index == {"c": 0, "b": 1, "a": 2}

    def test_empty_training_set(self):
        with pytest.raises(EmptyTrainingSet):
            build_vocabulary([], str.split)

    def test_content_hash_changes_with_content(self):
        a = build_vocabulary(sents("a b"), str.split)
        b = build_vocabulary(sents("a c"), str.split)
        assert a.content_hash() != b.content_hash()


class TestVectorize:
    def test_counts(self):
        vocab = build_vocabulary(sents("a b c"), str.split)
        v = vectorize(Sentence("x", "b b a"), vocab, str.split)
        assert (v.indices, v.values) == ((0, 1), (1.0, 2.0))
        assert v.dimension == 3

    def test_out_of_vocabulary_dropped(self):
        vocab = build_vocabulary(sents("a b c"), str.split)
        v = vectorize(Sentence("x", "z z q"), vocab, str.split)
        assert v.indices == ()
        assert v.dimension == 3

    def test_manual_token_count_oracle(self):
        # hand-tokenized: ["très", "très", "heureux", ",", "très", "fier", "!"]
        text = "très très heureux, très fier !"
        tokens = regex_tokenizer(text)
        assert tokens == ["très", "très", "heureux", ",", "très", "fier", "!"]
        vocab = build_vocabulary(sents(text), regex_tokenizer)
        v = vectorize(Sentence("x", text), vocab, regex_tokenizer)
        by_token = {t: n for t, n in zip(vocab.index, [0] * vocab.size)}
        for t in tokens:
            by_token[t] += 1
        expected = {vocab.index[t]: float(n) for t, n in by_token.items() if n}
        assert dict(zip(v.indices, v.values)) == expected

    def test_binary_mode(self):
        vocab = build_vocabulary(sents("a b"), str.split)
        v = vectorize(Sentence("x", "a a a b"), vocab, str.split, binary=True)
        assert v.values == (1.0, 1.0)

    @given(st.lists(st.sampled_from("abcdef"), min_size=0, max_size=30))
    def test_l1_norm_counts_in_vocab_tokens(self, tokens):
        vocab = build_vocabulary(sents("a b c"), str.split)
        text = " ".join(tokens) if tokens else "z"
        v = vectorize(Sentence("x", text), vocab, str.split)
        in_vocab = sum(1 for t in tokens if t in ("a", "b", "c"))
        assert v.l1() == in_vocab

    def test_dev_sentence_never_grows_vocabulary(self):
        vocab = build_vocabulary(sents("a b"), str.split)
        before = dict(vocab.index)
        vectorize(Sentence("x", "unseen words only"), vocab, str.split)
        assert vocab.index == before


class TestSparseVector:
    def test_rejects_unsorted_indices(self):
        with pytest.raises(DimensionMismatch):
            SparseVector(indices=(2, 1), values=(1.0, 1.0), dimension=3)

    def test_rejects_out_of_dimension(self):
        with pytest.raises(DimensionMismatch):
            SparseVector(indices=(3,), values=(1.0,), dimension=3)

    def test_stack_shape(self):
        vocab = build_vocabulary(sents("a b c"), str.split)
        X = stack([vectorize(s, vocab, str.split) for s in sents("a a", "c")])
        assert X.shape == (2, 3)
        assert X.toarray().tolist() == [[2.0, 0.0, 0.0], [0.0, 0.0, 1.0]]


class TestEmbeddingTable:
    def test_load_and_lookup(self, tmp_path):
        path = tmp_path / "emb.tsv"
        path.write_text("s1\t0.1\t0.2\t0.3\t0.4\ns2\t1\t2\t3\t4\n")
        table = load_embedding_table(path)
        assert len(table) == 2 and table.dimension == 4
        assert np.allclose(table["s2"], [1, 2, 3, 4])

    def test_dimension_mismatch(self, tmp_path):
        path = tmp_path / "emb.tsv"
        path.write_text("s1\t1\t2\t3\t4\ns2\t1\t2\t3\n")
        with pytest.raises(DimensionMismatch):
            load_embedding_table(path)

    def test_unknown_sentence(self, tmp_path):
        path = tmp_path / "emb.tsv"
        path.write_text("s1\t1\t2\n")
        table = load_embedding_table(path)
        with pytest.raises(UnknownSentence):
            table["nope"]

    def test_paper_scale_row_width(self, tmp_path):
        row = "s1\t" + "\t".join("0.5" for _ in range(768))
        path = tmp_path / "emb.tsv"
        path.write_text(row + "\n")
        assert load_embedding_table(path).dimension == 768
