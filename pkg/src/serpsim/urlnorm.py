"""URL canonicalization and redirect resolution.

Two references to the same document should compare equal as plain
strings. Canonicalization applies conservative, content-preserving
rewrites; redirect resolution follows 3xx chains (online) or a
previously recorded source->target cache (offline) so that variant URLs
map to one final target.
"""

from __future__ import annotations

import string
import threading
import urllib.error
import urllib.parse
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, Literal

from .errors import DatasetError, RedirectError, UrlParseError

DEFAULT_PORTS = {"http": 80, "https": 443, "ftp": 21, "ws": 80, "wss": 443}

# RFC 3986 unreserved characters: safe to percent-decode everywhere.
_UNRESERVED = set(string.ascii_letters + string.digits + "-._~")
_HEX = set(string.hexdigits)

#: (status, location) returned by a fetch callable; location is None unless redirected.
Fetch = Callable[[str], tuple[int, str | None]]


def _normalize_percent(component: str) -> str:
    """Decode unreserved %XX escapes and uppercase the hex of the rest."""
    out: list[str] = []
    i = 0
    while i < len(component):
        ch = component[i]
        if ch == "%" and i + 3 <= len(component) \
                and component[i + 1] in _HEX and component[i + 2] in _HEX:
            decoded = chr(int(component[i + 1 : i + 3], 16))
            if decoded in _UNRESERVED:
                out.append(decoded)
            else:
                out.append("%" + component[i + 1 : i + 3].upper())
            i += 3
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _remove_dot_segments(path: str) -> str:
    """Resolve '.' and '..' segments in an absolute path."""
    if not path.startswith("/"):
        return path
    stack: list[str] = []
    for segment in path.split("/")[1:]:
        if segment == ".":
            continue
        if segment == "..":
            if stack:
                stack.pop()
            continue
        stack.append(segment)
    return "/" + "/".join(stack)


def _split_netloc(netloc: str, url: str) -> tuple[str, str, str]:
    """Split netloc into (userinfo, host, port-string); validates the port."""
    userinfo, sep, hostport = netloc.rpartition("@")
    if hostport.startswith("["):
        close = hostport.find("]")
        if close == -1:
            raise UrlParseError(url, "unterminated IPv6 host")
        host = hostport[: close + 1]
        rest = hostport[close + 1 :]
    else:
        host, _, rest = hostport.partition(":")
        rest = ":" + rest if rest or hostport.endswith(":") else ""
    port = ""
    if rest:
        if not rest.startswith(":"):
            raise UrlParseError(url, f"malformed host/port {hostport!r}")
        port = rest[1:]
        if port and not port.isdigit():
            raise UrlParseError(url, f"invalid port {port!r}")
    return userinfo, host, port


def canonicalize(url: str, *, sort_query: bool = False, strip_www: bool = False) -> str:
    """Return the canonical form of an absolute URL.

    - scheme and host lowercased
    - default port removed
    - fragment removed
    - %XX escapes: unreserved characters decoded, others uppercased
    - dot-segments in the path resolved
    - trailing slash on non-root paths removed; empty path becomes "/"
    - query-parameter order preserved (``sort_query=True`` to sort)

    ``strip_www`` additionally drops a leading "www." host label; it is
    off by default because it is not universally content-preserving.
    """
    if not isinstance(url, str) or not url.strip():
        raise UrlParseError(str(url), "empty input")
    try:
        parts = urllib.parse.urlsplit(url.strip())
    except ValueError as exc:
        raise UrlParseError(url, str(exc)) from exc

    scheme = parts.scheme.lower()
    if not scheme:
        raise UrlParseError(url, "missing scheme (not an absolute URL)")

    netloc = parts.netloc
    if netloc:
        userinfo, host, port = _split_netloc(netloc, url)
        host = host.lower()
        if any(ch.isspace() for ch in host):
            raise UrlParseError(url, f"whitespace in host {host!r}")
        if strip_www and host.startswith("www."):
            host = host[4:]
        if not host:
            raise UrlParseError(url, "empty host")
        new_netloc = host
        if port and int(port) != DEFAULT_PORTS.get(scheme):
            new_netloc += f":{int(port)}"
        if userinfo:
            new_netloc = _normalize_percent(userinfo) + "@" + new_netloc
        netloc = new_netloc
    elif scheme in ("http", "https"):
        raise UrlParseError(url, "http(s) URL without a host")

    path = _normalize_percent(parts.path)
    path = _remove_dot_segments(path)
    if netloc and not path:
        path = "/"
    if len(path) > 1 and path.endswith("/"):
        path = path.rstrip("/") or "/"

    query = _normalize_percent(parts.query)
    if sort_query and query:
        query = "&".join(sorted(query.split("&")))

    return urllib.parse.urlunsplit((scheme, netloc, path, query, ""))


class RedirectCache:
    """Mapping from source URL to final redirect target.

    Both keys and values are stored in canonical form. Reads and writes
    are plain dict operations, safe under concurrent use with
    last-write-wins semantics on identical keys.
    """

    def __init__(self, entries: dict[str, str] | None = None):
        self._entries: dict[str, str] = {}
        self._lock = threading.Lock()
        if entries:
            for source, target in entries.items():
                self.put(source, target)

    def get(self, url: str) -> str | None:
        return self._entries.get(url)

    def put(self, source: str, target: str) -> None:
        self._entries[canonicalize(source)] = canonicalize(target)

    def __contains__(self, url: str) -> bool:
        return url in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    @classmethod
    def from_file(cls, path: str | Path) -> "RedirectCache":
        """Load a cache from a UTF-8 file of "source<TAB>target" lines."""
        cache = cls()
        text = Path(path).read_text(encoding="utf-8")
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise DatasetError(
                    f"expected 'source<TAB>target', got {line!r}", str(path), lineno
                )
            try:
                cache.put(fields[0].strip(), fields[1].strip())
            except UrlParseError as exc:
                raise DatasetError(str(exc), str(path), lineno) from exc
        return cache

    def save(self, path: str | Path) -> None:
        with self._lock:
            lines = [f"{src}\t{dst}\n" for src, dst in sorted(self._entries.items())]
        Path(path).write_text("".join(lines), encoding="utf-8")


class _NoRedirect(urllib.request.HTTPRedirectHandler):
    def redirect_request(self, *args, **kwargs):  # noqa: D102 - stdlib override
        return None


_opener = urllib.request.build_opener(_NoRedirect)


def _probe(url: str, method: str, timeout: float) -> tuple[int, str | None]:
    request = urllib.request.Request(url, method=method)
    try:
        with _opener.open(request, timeout=timeout) as response:
            return response.status, response.headers.get("Location")
    except urllib.error.HTTPError as exc:
        location = exc.headers.get("Location") if exc.headers else None
        return exc.code, location


def default_fetch(url: str, timeout: float = 10.0) -> tuple[int, str | None]:
    """HEAD the URL (GET on 405) and report (status, Location header)."""
    try:
        status, location = _probe(url, "HEAD", timeout)
        if status == 405:
            status, location = _probe(url, "GET", timeout)
        return status, location
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise RedirectError(f"network failure fetching {url}: {exc}") from exc


def resolve_redirects(
    url: str,
    cache: RedirectCache,
    mode: Literal["online", "offline"] = "offline",
    *,
    max_hops: int = 10,
    fetch: Fetch | None = None,
) -> str:
    """Resolve a canonical URL to its final redirect target.

    Offline mode walks the cache (following recorded chains); a URL with
    no cache entry is returned unchanged. Online mode issues requests via
    ``fetch`` (default: stdlib HTTP HEAD/GET), follows 3xx responses up to
    ``max_hops``, records every hop's final target in the cache, and never
    silently swallows a network failure.
    """
    url = canonicalize(url)
    if mode == "offline":
        chain = [url]
        current = url
        for _ in range(max_hops):
            target = cache.get(current)
            if target is None or target == current:
                return current
            if target in chain:
                raise RedirectError("redirect loop in cache", tuple(chain + [target]))
            chain.append(target)
            current = target
        raise RedirectError(f"hop limit {max_hops} exceeded", tuple(chain))

    if mode != "online":
        raise ValueError(f"mode must be 'online' or 'offline', got {mode!r}")

    fetch = fetch or default_fetch
    chain = [url]
    current = url
    for _ in range(max_hops + 1):
        status, location = fetch(current)
        if not (300 <= status < 400 and location):
            for source in chain:
                cache.put(source, current)
            return current
        nxt = canonicalize(urllib.parse.urljoin(current, location))
        if nxt in chain:
            raise RedirectError("redirect loop", tuple(chain + [nxt]))
        chain.append(nxt)
        current = nxt
    raise RedirectError(f"hop limit {max_hops} exceeded", tuple(chain))


def resolve_many(
    urls: Iterable[str],
    cache: RedirectCache,
    mode: Literal["online", "offline"] = "offline",
    *,
    max_workers: int = 8,
    fetch: Fetch | None = None,
) -> list[str]:
    """Resolve several URLs, preserving input order.

    Online lookups run on a bounded thread pool; offline resolution is
    sequential (it is pure dictionary walking).
    """
    urls = list(urls)
    if mode == "offline" or max_workers <= 1:
        return [resolve_redirects(u, cache, mode, fetch=fetch) for u in urls]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda u: resolve_redirects(u, cache, "online", fetch=fetch), urls))
