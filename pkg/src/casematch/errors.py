"""Exception types shared by the loaders, the matcher and the CLI."""


class InputError(ValueError):
    """A malformed or inconsistent input file.

    Carries the file name, 1-based line number and offending token so the
    CLI can point at the exact spot.
    """

    def __init__(self, message, filename=None, line=None, token=None):
        self.message = message
        self.filename = filename
        self.line = line
        self.token = token
        super().__init__(str(self))

    def __str__(self):
        where = self.filename or "<input>"
        if self.line is not None:
            where += f":{self.line}"
        text = f"{where}: {self.message}"
        if self.token is not None:
            text += f" (token {self.token!r})"
        return text


class InvariantError(RuntimeError):
    """Raised when an internal consistency check fails (a bug, not bad input)."""
