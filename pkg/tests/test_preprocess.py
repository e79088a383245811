import pytest
from hypothesis import given, strategies as st

from pairminer.errors import MalformedBlocklist
from pairminer.models import Chunk
from pairminer.preprocess import (
    DEFAULT_BLOCKLIST_TERMS,
    Blocklist,
    load_blocklist,
    scrub_chunk,
    tokenize,
)


def chunk(text):
    return Chunk(episode_id="e", index=0, text=text, confidence=1.0)


class TestTokenize:
    def test_punctuation_stripped(self):
        assert [t.text for t in tokenize("Omeprazole, for heartburn.")] == [
            "Omeprazole",
            "for",
            "heartburn",
        ]

    def test_empty(self):
        assert tokenize("") == []

    def test_abbreviated_title(self):
        assert [t.text for t in tokenize("Dr. Sacks")] == ["Dr", "Sacks"]

    def test_offsets_point_at_stripped_core(self):
        text = "(aspirin) helps"
        tokens = tokenize(text)
        for t in tokens:
            assert text[t.start : t.end] == t.text

    def test_internal_apostrophe_kept(self):
        assert [t.text for t in tokenize("alzheimer's disease")] == ["alzheimer's", "disease"]

    def test_pure_punctuation_token_dropped(self):
        assert [t.text for t in tokenize("a -- b")] == ["a", "b"]

    def test_tokens_ordered_and_non_overlapping(self):
        tokens = tokenize("one two three four")
        for a, b in zip(tokens, tokens[1:]):
            assert a.end <= b.start


class TestBlocklist:
    def test_default_contains_table_entries(self):
        bl = load_blocklist(None)
        for term in ("pharmacy", "patient", "poop"):
            assert term in bl.terms

    def test_default_expands_slash_rows(self):
        bl = load_blocklist(None)
        assert {"die", "death", "care", "healthcare"} <= bl.terms

    def test_default_size(self):
        # 29 table rows, two of them slash rows expanding to two
        # variants each.
        assert len(DEFAULT_BLOCKLIST_TERMS) == 31

    def test_file_load(self, tmp_path):
        p = tmp_path / "bl.txt"
        p.write_text("a\nb\n")
        assert load_blocklist(p).terms == {"a", "b"}

    def test_file_slash_expansion(self, tmp_path):
        p = tmp_path / "bl.txt"
        p.write_text("die/death\n")
        assert load_blocklist(p).terms == {"die", "death"}

    def test_file_comments_and_blanks_skipped(self, tmp_path):
        p = tmp_path / "bl.txt"
        p.write_text("# comment\n\nfoo\n")
        assert load_blocklist(p).terms == {"foo"}

    def test_multiword_entry_rejected(self, tmp_path):
        p = tmp_path / "bl.txt"
        p.write_text("intensive care\n")
        with pytest.raises(MalformedBlocklist):
            load_blocklist(p)

    def test_prefix_match_needs_length_four(self):
        bl = load_blocklist(None)
        assert bl.matches("patients")  # "patient" prefix, len 7
        assert bl.matches("healthcare")  # "health" prefix
        assert not bl.matches("drug")  # "dr" is too short to prefix-match
        assert bl.matches("dr")

    def test_case_insensitive(self):
        bl = load_blocklist(None)
        assert bl.matches("ICU")
        assert bl.matches("Medicare")


class TestScrub:
    def test_removes_blocklisted_tokens(self):
        bl = load_blocklist(None)
        out = scrub_chunk(chunk("visited the pharmacy for relief"), bl)
        assert out.text == "visited the for"

    def test_empty_blocklist_is_identity_modulo_joining(self):
        out = scrub_chunk(chunk("some,  plain text."), Blocklist(terms=frozenset()))
        assert out.text == "some plain text"

    def test_prefix_rule_applied(self):
        bl = load_blocklist(None)
        out = scrub_chunk(chunk("patients need aspirin"), bl)
        assert out.text == "need aspirin"

    def test_casing_of_survivors_preserved(self):
        bl = load_blocklist(None)
        out = scrub_chunk(chunk("Aspirin Helps Patients"), bl)
        assert out.text == "Aspirin Helps"

    def test_idempotent(self):
        bl = load_blocklist(None)
        once = scrub_chunk(chunk("the patient took Aspirin, for relief!"), bl)
        assert scrub_chunk(once, bl) == once

    @given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=80))
    def test_idempotent_on_arbitrary_text(self, text):
        bl = load_blocklist(None)
        once = scrub_chunk(chunk(text), bl)
        assert scrub_chunk(once, bl).text == once.text

    @given(st.text(alphabet="abcdefgh .,-'", max_size=80))
    def test_survivors_are_subsequence(self, text):
        bl = Blocklist(terms=frozenset({"abc", "dead"}))
        original = [t.text for t in tokenize(text)]
        survived = [t.text for t in tokenize(scrub_chunk(chunk(text), bl).text)]
        it = iter(original)
        assert all(any(tok == o for o in it) for tok in survived)

    def test_no_survivor_matches_blocklist(self):
        bl = load_blocklist(None)
        out = scrub_chunk(chunk("patient care diagnosis hope aspirin ICU dr"), bl)
        assert all(not bl.matches(t.text) for t in tokenize(out.text))
