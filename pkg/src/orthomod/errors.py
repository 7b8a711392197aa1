"""Exception hierarchy shared by every layer of the package."""


class OrthomodError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class DimensionMismatchError(OrthomodError, ValueError):
    pass


class FieldMismatchError(OrthomodError, ValueError):
    pass


class InvalidInputError(OrthomodError, ValueError):
    """Non-finite entries, out-of-range dimensions and similar malformed input."""


class PreconditionError(OrthomodError):
    """A law was checked on inputs that do not satisfy its hypothesis (e.g. x not below y)."""


class FormulaSyntaxError(OrthomodError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class UnboundVariableError(OrthomodError, KeyError):
    def __init__(self, names):
        self.names = tuple(sorted(names))
        super().__init__(self.names)

    def __str__(self):
        return "unbound: " + ", ".join(self.names)


class ScenarioError(OrthomodError):
    def __init__(self, message, path=()):
        self.path = tuple(path)
        self.message = message
        where = "/".join(str(p) for p in self.path) or "<root>"
        super().__init__(f"{where}: {message}")
