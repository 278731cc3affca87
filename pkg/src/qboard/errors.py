"""Exception types raised by qboard."""


class QBoardError(Exception):
    """Base class for all qboard errors."""


class BoardParseError(QBoardError, ValueError):
    """A board file or JSON document is malformed."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class BudgetExceeded(QBoardError):
    """An enumeration would exceed its configured work budget."""


class FieldError(QBoardError, ValueError):
    """Invalid finite-field request (e.g. q not a prime power)."""


class IntegrityError(QBoardError):
    """An exact identity that must hold was violated.

    Raised for failed divisibility or integrality checks; reaching this
    means either a bug or a counterexample to a proven statement.
    """


class ResidueFitError(QBoardError):
    """Samples do not determine a residue polynomial."""
