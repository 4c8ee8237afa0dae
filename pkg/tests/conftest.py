import numpy as np
import pytest

from crossproj import kernels
from crossproj.corpus import Argument, Predicate, Sentence, SentencePair, Token
from crossproj.inventory import load_inventory


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger JIT compilation once so timed tests measure the algorithms
    kernels.pairwise_dot(np.ones((2, 2)), np.ones((2, 2)))
    kernels.pairwise_cosine(np.ones((2, 2)), np.ones((2, 2)))
    kernels.softmax_rows(np.ones((2, 2)), 1.0)
    kernels.sinkhorn_log(np.ones((2, 2)), np.full(2, 0.5), np.full(2, 0.5), 0.1, 5, 1e-9)


@pytest.fixture(scope="session")
def inventory():
    return load_inventory()


def _tok(i, surface, pos):
    return Token(i, surface, pos)


@pytest.fixture(scope="session")
def consultation_pair() -> SentencePair:
    """EN/ZH pair about continuing a discussion in informal consultations.

    EN has three verbs (said/prefer/continue); ZH adds a fourth (讨论) whose
    counterpart is the English noun "discussion". Gold alignment links the
    verbs plus the surrounding content words.
    """
    en_tokens = (
        _tok(0, "Mr.", "OTHER"), _tok(1, "Repasch", "NOUN"), _tok(2, "(", "OTHER"),
        _tok(3, "USA", "NOUN"), _tok(4, ")", "OTHER"), _tok(5, "said", "VERB"),
        _tok(6, "that", "PART"), _tok(7, "he", "OTHER"), _tok(8, "would", "AUX"),
        _tok(9, "prefer", "VERB"), _tok(10, "to", "PART"), _tok(11, "continue", "VERB"),
        _tok(12, "discussion", "NOUN"), _tok(13, "of", "ADP"), _tok(14, "those", "OTHER"),
        _tok(15, "matters", "NOUN"), _tok(16, "in", "ADP"), _tok(17, "informal", "ADJ"),
        _tok(18, "consultations", "NOUN"), _tok(19, ".", "OTHER"),
    )
    en = Sentence(
        "en", en_tokens,
        predicates=(
            Predicate(5, "AFFIRM", "bn:00082527v"),
            Predicate(9, "CHOOSE", "bn:00019081v"),
            Predicate(11, "CONTINUE", "bn:00083155v"),
        ),
        arguments=(
            Argument(0, "agent", 0, 1), Argument(0, "theme", 6, 18),
            Argument(1, "agent", 7, 7), Argument(1, "theme", 10, 18),
            Argument(2, "agent", 7, 7), Argument(2, "theme", 12, 18),
        ),
    )
    zh_tokens = (
        _tok(0, "Repasch", "NOUN"), _tok(1, "先生", "NOUN"), _tok(2, "（", "OTHER"),
        _tok(3, "美国", "NOUN"), _tok(4, "）", "OTHER"), _tok(5, "说", "VERB"),
        _tok(6, "，", "OTHER"), _tok(7, "他", "OTHER"), _tok(8, "希望", "VERB"),
        _tok(9, "在", "ADP"), _tok(10, "非", "PART"), _tok(11, "正式", "ADJ"),
        _tok(12, "协商", "NOUN"), _tok(13, "时", "PART"), _tok(14, "继续", "VERB"),
        _tok(15, "讨论", "VERB"), _tok(16, "这个", "OTHER"), _tok(17, "问题", "NOUN"),
        _tok(18, "。", "OTHER"),
    )
    zh = Sentence(
        "zh", zh_tokens,
        predicates=(
            Predicate(5, "AFFIRM", "bn:00082527v"),
            Predicate(8, "REQUIRE_NEED_WANT_HOPE", "bn:00087549v"),
            Predicate(14, "CONTINUE", "bn:00083155v"),
            Predicate(15, "DISCUSS", "bn:00027004v"),
        ),
        arguments=(
            Argument(0, "agent", 0, 4), Argument(0, "theme", 7, 17),
            Argument(1, "agent", 7, 7), Argument(1, "source", 9, 13),
            Argument(1, "theme", 14, 17),
            Argument(2, "agent", 7, 7), Argument(2, "theme", 15, 17),
            Argument(3, "agent", 7, 7), Argument(3, "topic", 16, 17),
        ),
    )
    alignment = ((0, 1), (1, 0), (3, 3), (5, 5), (7, 7), (9, 8), (11, 14),
                 (12, 15), (14, 16), (15, 17), (16, 9), (17, 11), (18, 12))
    return SentencePair("consultation", en, zh, alignment)
