class NlcError(Exception):
    """Base class for all errors raised by nlcinfer."""


class GraphInputError(NlcError, ValueError):
    """Malformed graph input: unknown nodes, overlapping node sets, bad tuples."""


class PreconditionError(NlcError, ValueError):
    """An operation was called outside its domain (e.g. replacing a terminal node)."""


class DerivationError(NlcError):
    def __init__(self, step, cause):
        self.step = step
        self.cause = cause
        super().__init__(f"derivation step {step}: {cause}")


class SearchLimitError(NlcError):
    """Refusal to run an exhaustive search above the configured size cap."""


class DocumentError(NlcError, ValueError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class NoWitnessError(NlcError):
    """No order/embedding relation pair generates the family."""
