"""Exception types shared across the package."""


class SerpSimError(Exception):
    """Base class for all serpsim errors."""


class ValidationError(SerpSimError):
    """A domain object would violate one of its invariants."""


class UrlParseError(SerpSimError):
    """A URL could not be parsed as an absolute URL."""

    def __init__(self, url: str, reason: str = ""):
        self.url = url
        self.reason = reason
        detail = f": {reason}" if reason else ""
        super().__init__(f"cannot canonicalize {url!r}{detail}")


class RedirectError(SerpSimError):
    """Redirect resolution failed (loop, hop limit, or network error)."""

    def __init__(self, message: str, chain: tuple[str, ...] = ()):
        self.chain = chain
        if chain:
            message = f"{message} (chain: {' -> '.join(chain)})"
        super().__init__(message)


class DatasetError(SerpSimError):
    """A data file is malformed or inconsistent."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = path if line is None else f"{path}:{line}"
            prefix += ": "
        super().__init__(prefix + message)
