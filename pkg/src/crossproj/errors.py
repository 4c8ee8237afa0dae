"""Exception types shared across the package."""


class CrossprojError(Exception):
    """Base class for all crossproj errors."""


# -- corpus parsing ----------------------------------------------------------

class CorpusError(CrossprojError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedJson(CorpusError):
    pass


class InvalidRecord(CorpusError):
    pass


class UnknownRole(CorpusError):
    def __init__(self, role: str, line: int | None = None):
        self.role = role
        super().__init__(f"unknown role {role!r}", line)


class UnknownFrame(CorpusError):
    def __init__(self, frame: str, line: int | None = None):
        self.frame = frame
        super().__init__(f"unknown frame {frame!r}", line)


class SpanOutOfRange(CorpusError):
    pass


# -- embedding store ---------------------------------------------------------

class EmbeddingError(CrossprojError):
    pass


class BadMagic(EmbeddingError):
    pass


class DimMismatch(EmbeddingError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")


class TruncatedFile(EmbeddingError):
    pass


class TokenMapOutOfRange(EmbeddingError):
    pass


class MissingEmbeddings(EmbeddingError):
    def __init__(self, sentence_id: str):
        self.sentence_id = sentence_id
        super().__init__(f"no embeddings for sentence pair {sentence_id!r}")


# -- alignment / projection / evaluation -------------------------------------

class ZeroVector(CrossprojError):
    def __init__(self, row: int, side: str = ""):
        self.row = row
        suffix = f" ({side})" if side else ""
        super().__init__(f"all-zero embedding vector at row {row}{suffix}")


class ShapeMismatch(CrossprojError):
    pass


class IndexOutOfRange(CrossprojError, IndexError):
    pass


class SentenceMismatch(CrossprojError):
    pass


class PredicateNotInPair(CrossprojError):
    pass


class CoverageGap(CrossprojError):
    def __init__(self, ref: str):
        self.ref = ref
        super().__init__(f"no divergence record for predicate {ref}")
