class LpvError(Exception):
    """Base class for every error the toolkit raises on purpose."""


class ParseError(LpvError):
    def __init__(self, line: int, column: int, message: str, path: str = ""):
        self.line = line
        self.column = column
        self.message = message
        self.path = path
        prefix = f"{path}:" if path else ""
        super().__init__(f"{prefix}{line}:{column}: {message}")

    def in_file(self, path: str) -> "ParseError":
        return ParseError(self.line, self.column, self.message, path)


class ResourceExceeded(LpvError):
    """A slice, grounding or instance count grew past the configured cap."""


class NotDefinite(LpvError):
    """A definite-only operation got a program with negative literals."""


class PairInconsistent(LpvError):
    """S_compl is not contained in S_corr on the checked slice."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"specification pair inconsistent: {report.violation_count} atom(s) in S_compl but not in S_corr")
