import random
import string

from emofinetune.data import render_input, truncate_triple


class TestTemplate:
    def test_full_triple_byte_exact(self):
        assert render_input("p", "t", "n") == "before: p</s>current: t</s>after: n</s>"

    def test_first_sentence_of_document(self):
        assert render_input(None, "t", "n") == "before: </s>current: t</s>after: n</s>"

    def test_last_sentence_of_document(self):
        assert render_input("p", "t", None) == "before: p</s>current: t</s>after: </s>"

    def test_lone_sentence(self):
        assert render_input(None, "t", None) == "before: </s>current: t</s>after: </s>"

    def test_injective_on_marker_free_triples(self):
        rng = random.Random(13)
        alphabet = string.ascii_lowercase + " "

        def field():
            return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))

        seen = {}
        for _ in range(2000):
            triple = (field(), field(), field())
            rendered = render_input(*triple)
            if rendered in seen:
                assert seen[rendered] == triple
            seen[rendered] = triple
        # and a targeted near-collision: shifting text across fields differs
        assert render_input("a b", "c", "") != render_input("a", "b c", "")


class TestTruncation:
    def test_target_kept_whole_when_it_fits(self):
        prev, tgt, nxt = truncate_triple(list("abcdef"), list("XY"), list("ghij"), 6)
        assert tgt == list("XY")
        assert len(prev) + len(tgt) + len(nxt) == 6

    def test_context_shrinks_before_target(self):
        prev, tgt, nxt = truncate_triple(list("abc"), list("WXYZ"), list("de"), 4)
        assert tgt == list("WXYZ")
        assert prev == [] and nxt == []

    def test_target_truncated_only_when_alone_too_long(self):
        prev, tgt, nxt = truncate_triple([], list("WXYZ"), [], 3)
        assert tgt == list("WXY")

    def test_kept_context_hugs_target(self):
        prev, tgt, nxt = truncate_triple(list("abcde"), list("T"), list("fghij"), 5)
        # previous keeps its tail, next keeps its head
        assert prev == list("cde") or prev == list("de")
        assert nxt[0] == "f"
