"""Reading and writing datasets and result matrices.

Native dataset format: UTF-8 JSON Lines, one ranked list per line:

    {"engine": "...", "query": "...", "date": "YYYY-MM-DD",
     "results": [{"rank": 1, "url": "...", "title": "...", "snippet": "..."}, ...],
     "category": "optional topic label"}

Writers emit a canonical form (records sorted by engine, query, date;
object keys sorted; compact separators; LF line endings) so equal
datasets serialize to equal bytes.

Matrix format: TSV with a leading "# pair" comment naming the engine
pair, a header row of queries, then one row per date with 4-decimal
cells; missing cells are "NA".
"""

from __future__ import annotations

import datetime as dt
import io
import json
from pathlib import Path
from typing import Any, Mapping

from .analysis import SerpDataset
from .errors import DatasetError, SerpSimError, ValidationError
from .model import RankedList, SearchResult, SimilarityMatrix, validate_ranked_list
from .urlnorm import RedirectCache, canonicalize, resolve_redirects

_MATRIX_PAIR_PREFIX = "# pair"


def _require(obj: Mapping[str, Any], key: str, kind: type, path: str, lineno: int) -> Any:
    if key not in obj:
        raise DatasetError(f"missing required field {key!r}", path, lineno)
    value = obj[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise DatasetError(
            f"field {key!r} must be {kind.__name__}, got {type(value).__name__}",
            path,
            lineno,
        )
    return value


def _parse_date(raw: str, path: str, lineno: int) -> dt.date:
    try:
        return dt.date.fromisoformat(raw)
    except ValueError as exc:
        raise DatasetError(f"bad date {raw!r}: {exc}", path, lineno) from exc


def _parse_results(
    raw: Any,
    path: str,
    lineno: int,
    *,
    normalize: bool,
    redirect_cache: RedirectCache | None,
) -> list[SearchResult]:
    if not isinstance(raw, list) or not raw:
        raise DatasetError("field 'results' must be a non-empty array", path, lineno)
    out: list[SearchResult] = []
    for item in raw:
        if not isinstance(item, dict):
            raise DatasetError("each result must be a JSON object", path, lineno)
        url = _require(item, "url", str, path, lineno)
        rank = _require(item, "rank", int, path, lineno)
        title = item.get("title", "")
        snippet = item.get("snippet", "")
        if not isinstance(title, str) or not isinstance(snippet, str):
            raise DatasetError("title and snippet must be strings", path, lineno)
        if normalize:
            url = canonicalize(url)
            if redirect_cache is not None:
                url = resolve_redirects(url, redirect_cache, "offline")
        try:
            out.append(SearchResult(url=url, title=title, snippet=snippet, rank=rank))
        except ValidationError as exc:
            raise DatasetError(str(exc), path, lineno) from exc
    return out


def load_dataset(
    path: str | Path,
    *,
    normalize: bool = False,
    redirect_cache: RedirectCache | None = None,
    strict: bool = False,
    expected_n: int | None = None,
) -> SerpDataset:
    """Load a native JSON Lines dataset.

    ``normalize`` canonicalizes every URL (and resolves redirects when a
    cache is given) before lists are validated, so near-duplicate URLs
    collapse. When ``expected_n`` is not given, every list is truncated
    to the depth of the shortest list so all lists compare at equal
    length. Errors carry the offending path and line number.
    """
    path = Path(path)
    parsed: dict[tuple[str, str, dt.date], tuple[int, list[SearchResult]]] = {}
    categories: dict[str, str] = {}
    text = path.read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"invalid JSON: {exc}", str(path), lineno) from exc
        if not isinstance(obj, dict):
            raise DatasetError("each line must be a JSON object", str(path), lineno)
        engine = _require(obj, "engine", str, str(path), lineno)
        query = _require(obj, "query", str, str(path), lineno)
        date = _parse_date(_require(obj, "date", str, str(path), lineno), str(path), lineno)
        results = _parse_results(
            obj.get("results"),
            str(path),
            lineno,
            normalize=normalize,
            redirect_cache=redirect_cache,
        )
        key = (engine, query, date)
        if key in parsed:
            raise DatasetError(
                f"duplicate record for engine={engine!r} query={query!r} date={date}",
                str(path),
                lineno,
            )
        parsed[key] = (lineno, results)
        category = obj.get("category")
        if category is not None:
            if not isinstance(category, str):
                raise DatasetError("field 'category' must be a string", str(path), lineno)
            categories[query] = category

    if not parsed:
        raise DatasetError("dataset contains no records", str(path))

    if expected_n is None:
        depth = min(
            len({r.url for r in results}) for _, results in parsed.values()
        )
    else:
        depth = expected_n

    records: dict[tuple[str, str, dt.date], RankedList] = {}
    for (engine, query, date), (lineno, results) in parsed.items():
        try:
            records[(engine, query, date)] = validate_ranked_list(
                results, depth, engine=engine, query=query, date=date, strict=strict
            )
        except ValidationError as exc:
            raise DatasetError(str(exc), str(path), lineno) from exc
    return SerpDataset(records, categories)


def _record_to_json(ranked: RankedList, category: str | None) -> str:
    obj: dict[str, Any] = {
        "engine": ranked.engine,
        "query": ranked.query,
        "date": ranked.date.isoformat(),
        "results": [
            {"rank": r.rank, "url": r.url, "title": r.title, "snippet": r.snippet}
            for r in ranked.results
        ],
    }
    if category is not None:
        obj["category"] = category
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def dumps_dataset(dataset: SerpDataset) -> str:
    """Serialize a dataset to canonical JSON Lines text."""
    lines = []
    for engine, query, date in dataset:
        ranked = dataset.get(engine, query, date)
        lines.append(_record_to_json(ranked, dataset.categories.get(query)))
    return "\n".join(lines) + "\n"


def write_dataset(dataset: SerpDataset, path: str | Path) -> None:
    Path(path).write_text(dumps_dataset(dataset), encoding="utf-8", newline="\n")


def format_matrix(matrix: SimilarityMatrix) -> str:
    """Render a matrix as deterministic TSV text."""
    buf = io.StringIO()
    buf.write(f"{_MATRIX_PAIR_PREFIX}\t{matrix.engine_pair[0]}\t{matrix.engine_pair[1]}\n")
    buf.write("date\t" + "\t".join(matrix.queries) + "\n")
    for day, row in zip(matrix.days, matrix.values):
        cells = ["NA" if v is None else f"{v:.4f}" for v in row]
        buf.write(day.isoformat() + "\t" + "\t".join(cells) + "\n")
    return buf.getvalue()


def write_matrix(matrix: SimilarityMatrix, path: str | Path) -> None:
    Path(path).write_text(format_matrix(matrix), encoding="utf-8", newline="\n")


def parse_matrix(text: str, source: str = "<string>") -> SimilarityMatrix:
    """Parse matrix TSV text produced by :func:`format_matrix`."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith(_MATRIX_PAIR_PREFIX + "\t"):
        raise DatasetError(f"missing '{_MATRIX_PAIR_PREFIX}' header line", source, 1)
    pair_fields = lines[0].split("\t")
    if len(pair_fields) != 3:
        raise DatasetError("pair line must name exactly two engines", source, 1)
    engine_pair = (pair_fields[1], pair_fields[2])
    if len(lines) < 2:
        raise DatasetError("missing column header line", source, 2)
    header = lines[1].split("\t")
    if header[0] != "date":
        raise DatasetError("column header must start with 'date'", source, 2)
    queries = tuple(header[1:])

    days: list[dt.date] = []
    values: list[tuple[float | None, ...]] = []
    for lineno, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != len(queries) + 1:
            raise DatasetError(
                f"expected {len(queries) + 1} columns, got {len(fields)}", source, lineno
            )
        days.append(_parse_date(fields[0], source, lineno))
        row: list[float | None] = []
        for cell in fields[1:]:
            if cell == "NA":
                row.append(None)
                continue
            try:
                row.append(float(cell))
            except ValueError as exc:
                raise DatasetError(f"bad cell value {cell!r}", source, lineno) from exc
        values.append(tuple(row))
    try:
        return SimilarityMatrix(
            engine_pair=engine_pair, days=tuple(days), queries=queries, values=tuple(values)
        )
    except ValidationError as exc:
        raise DatasetError(str(exc), source) from exc


def read_matrix(path: str | Path) -> SimilarityMatrix:
    path = Path(path)
    return parse_matrix(path.read_text(encoding="utf-8"), str(path))


def _mapped_value(
    obj: Mapping[str, Any], spec: Any, field: str, path: str, lineno: int
) -> Any:
    """Resolve one field of an import mapping: source key or {"const": ...}."""
    if isinstance(spec, dict):
        if set(spec) != {"const"}:
            raise DatasetError(
                f"mapping for {field!r} must be a source key or {{\"const\": value}}",
                path,
                lineno,
            )
        return spec["const"]
    if not isinstance(spec, str):
        raise DatasetError(f"mapping for {field!r} must be a string key", path, lineno)
    if spec not in obj:
        raise DatasetError(f"source field {spec!r} (for {field!r}) not found", path, lineno)
    return obj[spec]


def import_dataset(
    path: str | Path,
    mapping: Mapping[str, Any],
    *,
    normalize: bool = False,
    redirect_cache: RedirectCache | None = None,
    strict: bool = False,
    expected_n: int | None = None,
) -> SerpDataset:
    """Adapt a foreign flat JSON Lines file (one result per line).

    ``mapping`` names, for each of our fields, the source field to read
    (or a {"const": value} literal): required "engine", "query", "date",
    "rank", "url"; optional "title", "snippet", "category", and a
    "date_format" strptime pattern for non-ISO dates. Lists are grouped
    by (engine, query, date) and ranked by the mapped rank values.
    URL normalization and depth handling mirror :func:`load_dataset`,
    except that the default depth is each list's own length.
    """
    for required in ("engine", "query", "date", "rank", "url"):
        if required not in mapping:
            raise ValidationError(f"import mapping lacks required field {required!r}")

    path = Path(path)
    groups: dict[tuple[str, str, dt.date], list[tuple[int, SearchResult]]] = {}
    categories: dict[str, str] = {}
    date_format = mapping.get("date_format")
    text = path.read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"invalid JSON: {exc}", str(path), lineno) from exc
        if not isinstance(obj, dict):
            raise DatasetError("each line must be a JSON object", str(path), lineno)

        engine = str(_mapped_value(obj, mapping["engine"], "engine", str(path), lineno))
        query = str(_mapped_value(obj, mapping["query"], "query", str(path), lineno))
        raw_date = _mapped_value(obj, mapping["date"], "date", str(path), lineno)
        if date_format:
            try:
                date = dt.datetime.strptime(str(raw_date), date_format).date()
            except ValueError as exc:
                raise DatasetError(f"bad date {raw_date!r}: {exc}", str(path), lineno) from exc
        else:
            date = _parse_date(str(raw_date), str(path), lineno)
        raw_rank = _mapped_value(obj, mapping["rank"], "rank", str(path), lineno)
        try:
            rank = int(raw_rank)
        except (TypeError, ValueError) as exc:
            raise DatasetError(f"bad rank {raw_rank!r}", str(path), lineno) from exc
        url = str(_mapped_value(obj, mapping["url"], "url", str(path), lineno))
        if normalize:
            try:
                url = canonicalize(url)
                if redirect_cache is not None:
                    url = resolve_redirects(url, redirect_cache, "offline")
            except SerpSimError as exc:
                raise DatasetError(str(exc), str(path), lineno) from exc
        title = ""
        snippet = ""
        if "title" in mapping:
            title = str(_mapped_value(obj, mapping["title"], "title", str(path), lineno))
        if "snippet" in mapping:
            snippet = str(_mapped_value(obj, mapping["snippet"], "snippet", str(path), lineno))
        if "category" in mapping:
            categories[query] = str(
                _mapped_value(obj, mapping["category"], "category", str(path), lineno)
            )
        try:
            result = SearchResult(url=url, title=title, snippet=snippet, rank=rank)
        except ValidationError as exc:
            raise DatasetError(str(exc), str(path), lineno) from exc
        groups.setdefault((engine, query, date), []).append((lineno, result))

    if not groups:
        raise DatasetError("no records to import", str(path))

    records: dict[tuple[str, str, dt.date], RankedList] = {}
    for (engine, query, date), items in groups.items():
        results = [result for _, result in sorted(items, key=lambda x: x[1].rank)]
        try:
            records[(engine, query, date)] = validate_ranked_list(
                results,
                expected_n if expected_n is not None else len(results),
                engine=engine,
                query=query,
                date=date,
                strict=strict,
            )
        except ValidationError as exc:
            raise DatasetError(str(exc), str(path), items[0][0]) from exc
    return SerpDataset(records, categories)
