"""Exception hierarchy shared by every layer of the engine."""


class GCSurgeryError(Exception):
    pass


class WordSyntaxError(GCSurgeryError, ValueError):
    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class InvalidGeneratorError(GCSurgeryError, ValueError):
    pass


class InconsistentInvariantsError(GCSurgeryError, ValueError):
    """Betti numbers could not be solved as nonnegative integers."""


class BlockError(GCSurgeryError, ValueError):
    pass


class SurgeryError(GCSurgeryError, ValueError):
    pass


class UnknownPieceError(GCSurgeryError, KeyError):
    pass
