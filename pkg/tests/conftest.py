"""Shared builders and the acceptance-criteria reporter.

Tests build ranked lists from short URL keys ('a'..'k'). Content comes
in two flavors: "plain" and "alt" use disjoint vocabularies, so the
same URL carries maximally distant snippets/titles across flavors and
identical content within one flavor. All content words avoid the query
and the stopword list.
"""

from __future__ import annotations

import datetime as dt
from collections import defaultdict
from pathlib import Path

import pytest

from serpsim import RankedList, SearchResult

DATA_DIR = Path(__file__).parent / "data"

QUERY = "sample query"
DAY = dt.date(2019, 7, 1)

_FLAVORS = {
    "plain": ("title{u} page{u}", "snippet{u} text{u} info{u}"),
    "alt": ("header{u} name{u}", "words{u} body{u} prose{u}"),
}


def make_result(
    key: str,
    rank: int,
    flavor: str = "plain",
    *,
    title_flavor: str | None = None,
    snippet_flavor: str | None = None,
) -> SearchResult:
    title_tpl = _FLAVORS[title_flavor or flavor][0]
    snippet_tpl = _FLAVORS[snippet_flavor or flavor][1]
    return SearchResult(
        url=f"https://{key}.example.com/page",
        title=title_tpl.format(u=key),
        snippet=snippet_tpl.format(u=key),
        rank=rank,
    )


def make_list(
    keys: str,
    *,
    engine: str = "engine-a",
    query: str = QUERY,
    date: dt.date = DAY,
    flavor: str = "plain",
    title_flavor: str | None = None,
    snippet_flavor: str | None = None,
) -> RankedList:
    """Ranked list from URL keys, e.g. make_list("abcdef")."""
    return RankedList(
        engine=engine,
        query=query,
        date=date,
        results=tuple(
            make_result(
                key, rank, flavor,
                title_flavor=title_flavor, snippet_flavor=snippet_flavor,
            )
            for rank, key in enumerate(keys, start=1)
        ),
    )


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


_acceptance: dict[int, dict[str, int]] = defaultdict(lambda: {"passed": 0, "failed": 0})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    criterion = marker.kwargs.get("criterion", marker.args[0] if marker.args else None)
    if criterion is None:
        return
    bucket = _acceptance[int(criterion)]
    if report.passed:
        bucket["passed"] += 1
    elif report.failed:
        bucket["failed"] += 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(_acceptance):
        bucket = _acceptance[criterion]
        if bucket["failed"]:
            status = "FAIL"
        elif bucket["passed"]:
            status = "PASS"
        else:
            status = "NOT RUN"
        terminalreporter.write_line(
            f"criterion {criterion}: {status} "
            f"({bucket['passed']} passed, {bucket['failed']} failed)"
        )
