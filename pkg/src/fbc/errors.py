"""Exception types raised across the package."""


class FbcError(Exception):
    pass


class UnknownGenerator(FbcError, ValueError):
    pass


class IdentityInput(FbcError, ValueError):
    pass


class NotBijective(FbcError, ValueError):
    pass


class PresentationMismatch(FbcError, ValueError):
    pass


class NotAMember(FbcError, ValueError):
    pass


class ContextMismatch(FbcError, ValueError):
    pass


class InvalidWitness(FbcError, ValueError):
    pass


class MissingWitness(FbcError, ValueError):
    pass


class AlphabetMismatch(FbcError, ValueError):
    pass


class GrammarSyntaxError(FbcError, ValueError):
    pass


class UnknownTerminal(FbcError, ValueError):
    pass


class BudgetTooLarge(FbcError, ValueError):
    pass


class InputError(FbcError, ValueError):
    """Malformed input file; carries the file name and line number."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)
