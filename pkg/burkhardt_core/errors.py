# burkhardt_core/errors.py


class BurkhardtError(Exception):
    """Base class for every error raised by the library."""


class AmbientMismatchError(BurkhardtError):
    pass


class UnknownVariableError(BurkhardtError):
    pass


class ParseError(BurkhardtError):
    """Malformed text input; `offset` is the character position of the problem."""

    def __init__(self, message: str, offset: int = 0, text: str | None = None) -> None:
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
        self.text = text


class NotSymmetricError(BurkhardtError):
    pass


class RelationError(BurkhardtError):
    pass


class PreconditionError(BurkhardtError):
    pass


class HessianPointError(PreconditionError):
    pass


class ConsistencyError(BurkhardtError):
    """An exact internal verification failed."""


class NoConicPointError(BurkhardtError):
    pass


class NotSquarefreeError(BurkhardtError):
    pass


class UnknownCertificateError(BurkhardtError):
    def __init__(self, name: str, available: list[str]) -> None:
        super().__init__(
            f"unknown certificate '{name}'; available: {', '.join(available)}"
        )
        self.name = name
        self.available = list(available)
