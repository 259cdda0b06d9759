class FramekitError(Exception):
    """Base class for data errors raised by the toolkit."""


class CorpusFormatError(FramekitError):
    """A corpus line could not be parsed or violates the schema."""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class DanglingReferenceError(CorpusFormatError):
    pass


class SpanOutOfBoundsError(CorpusFormatError):
    def __init__(self, message, sentence_id=None, line_number=None):
        self.sentence_id = sentence_id
        super().__init__(message, line_number)


class SplitError(FramekitError):
    pass


class UnknownSentenceError(FramekitError):
    pass


class ModelFormatError(FramekitError):
    pass


class ModelVersionError(ModelFormatError):
    pass


class PredictionFormatError(FramekitError):
    pass


class EmptyTrainingDataError(FramekitError):
    pass
