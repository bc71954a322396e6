"""Exception hierarchy; ``exit_status`` is what the CLI returns."""


class ToricError(Exception):
    code = "error"
    exit_status = 1

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.details:
            out["details"] = self.details
        return out


class InputError(ToricError):
    """Malformed bundle file; ``path`` points at the offending field."""

    code = "parse_error"
    exit_status = 1


class InvalidFanError(ToricError):
    code = "invalid_fan"
    exit_status = 1


class IncompatibleFiltrationsError(ToricError):
    code = "incompatible_filtrations"
    exit_status = 2


class ConsistencyError(ToricError):
    """An internal cross-check failed; indicates a bug or corrupt input."""

    code = "internal_consistency"
    exit_status = 3
