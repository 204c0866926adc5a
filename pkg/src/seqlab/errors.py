"""Exception hierarchy shared by the library and the CLI."""


class SeqlabError(Exception):
    """Base class for every error raised by seqlab."""


class InvalidArgs(SeqlabError, ValueError):
    """Constructor or operation arguments violate a stated precondition."""


class UnsupportedComposition(SeqlabError):
    """An expression has no evaluation rule."""


class UnsupportedOperator(SeqlabError):
    """The operator does not reduce to a convex combination of dilations."""


class HorizonTooLarge(SeqlabError):
    """A materialization request exceeds the configured horizon cap."""


class SchemaError(SeqlabError, ValueError):
    """A JSON description does not match the sequence/operator schema."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class UnknownClaim(SeqlabError, KeyError):
    pass


class InvalidOverride(SeqlabError, ValueError):
    pass
