"""Reading series files and the comparison registry.

Series format: UTF-8 CSV with columns ``year,month,value``.  A header row
is optional and detected by a non-numeric first field.  A value field of
``NA`` or an empty field marks a missing month and the row is skipped.
Months must appear in increasing order with no repeats.

Registry format: an INI-style text file (human-diffable) with one section
per dataset and per comparison::

    [dataset:UAH_T2LT]
    kind = satellite            # satellite | surface_landocean | surface_ocean | surface_land
    path = data/uah_t2lt.csv    # relative paths resolve against the registry file
    notes = v5.2                # optional free text

    [comparison:t2lt_uah]
    satellite = UAH_T2LT
    ensemble_trend = 0.215      # deg C/decade
    ensemble_sd = 0.10          # inter-model SD of ensemble-mean trends
    n_models = 19
    start = 1979:01
    end = 2009:06
    mode = trend                # trend | lapse (lapse needs a surface = <id> line)

Loading is schema-only: dataset files are not opened, and windows are not
checked against data coverage until a comparison actually runs.
"""

from __future__ import annotations

import csv
import math
from configparser import ConfigParser, Error as ConfigParserError
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    BadSpec,
    BadWindow,
    DuplicateMonth,
    InputError,
    MissingEnsembleField,
    MonthOutOfRange,
    ParseError,
    UnknownDatasetId,
)
from .series import MonthIndex, MonthlySeries
from .sigtest import EnsembleStats

DATASET_KINDS = frozenset(
    {"satellite", "surface_landocean", "surface_ocean", "surface_land"}
)
COMPARISON_MODES = ("trend", "lapse")

_MISSING_VALUES = ("", "NA")


@dataclass(frozen=True)
class DatasetEntry:
    """One registered dataset: an id, its kind, and where to find it."""

    id: str
    kind: str
    path: Path
    notes: str = ""

    def __post_init__(self) -> None:
        if self.kind not in DATASET_KINDS:
            raise BadSpec(
                f"dataset {self.id!r}: kind must be one of "
                f"{sorted(DATASET_KINDS)}, got {self.kind!r}"
            )


@dataclass(frozen=True)
class ComparisonSpec:
    """One row of a report table: datasets, ensemble stats, window, mode."""

    spec_id: str
    satellite_id: str
    ensemble: EnsembleStats
    window: tuple[MonthIndex, MonthIndex]
    mode: str
    surface_id: str | None = None

    def __post_init__(self) -> None:
        if self.mode not in COMPARISON_MODES:
            raise BadSpec(
                f"comparison {self.spec_id!r}: mode must be one of "
                f"{COMPARISON_MODES}, got {self.mode!r}"
            )
        if self.mode == "lapse" and self.surface_id is None:
            raise BadSpec(
                f"comparison {self.spec_id!r}: mode 'lapse' needs a surface dataset"
            )
        start, end = self.window
        if start > end:
            raise BadWindow(
                f"comparison {self.spec_id!r}: window start {start} is after end {end}"
            )


def read_series(path, format: str = "csv", name: str | None = None) -> MonthlySeries:
    """Load a monthly series from a ``year,month,value`` CSV file.

    ``name`` defaults to the file stem.  Rows whose value field is ``NA``
    or empty are skipped.
    """
    if format != "csv":
        raise InputError(f"unsupported series format {format!r}")
    path = Path(path)
    try:
        handle = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read series file {path}: {exc}") from exc

    months: list[int] = []
    values: list[float] = []
    last_ordinal: int | None = None
    with handle:
        reader = csv.reader(handle)
        first_data_row_seen = False
        for row in reader:
            line = reader.line_num
            if not row or all(not f.strip() for f in row):
                continue
            if not first_data_row_seen:
                try:
                    int(row[0].strip())
                except ValueError:
                    continue  # header row
                finally:
                    first_data_row_seen = True
            if len(row) != 3:
                raise ParseError(
                    f"{path}, line {line}: expected 3 fields (year,month,value), "
                    f"got {len(row)}"
                )
            year_s, month_s, value_s = (f.strip() for f in row)
            try:
                year = int(year_s)
                month = int(month_s)
            except ValueError:
                raise ParseError(
                    f"{path}, line {line}: year and month must be integers"
                ) from None
            try:
                idx = MonthIndex(year, month)
            except MonthOutOfRange as exc:
                raise MonthOutOfRange(f"{path}, line {line}: {exc}") from None
            if value_s in _MISSING_VALUES:
                continue
            try:
                value = float(value_s)
            except ValueError:
                raise ParseError(
                    f"{path}, line {line}: cannot parse value {value_s!r}"
                ) from None
            if not math.isfinite(value):
                raise ParseError(f"{path}, line {line}: non-finite value {value_s!r}")
            if last_ordinal is not None:
                if idx.ordinal == last_ordinal:
                    raise DuplicateMonth(f"{path}, line {line}: month {idx} repeated")
                if idx.ordinal < last_ordinal:
                    raise ParseError(f"{path}, line {line}: months out of order")
            last_ordinal = idx.ordinal
            months.append(idx.ordinal)
            values.append(value)

    return MonthlySeries(name if name is not None else path.stem, months, values)


def write_series(s: MonthlySeries, path) -> None:
    """Write a series as ``year,month,value`` CSV with a header row.

    Values use shortest round-trip float formatting, so a file written by
    this function reads back as an identical series.
    """
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["year", "month", "value"])
        for idx, value in s.points:
            writer.writerow([idx.year, idx.month, repr(value)])


def read_registry(path) -> tuple[list[DatasetEntry], list[ComparisonSpec]]:
    """Load and validate a registry file.

    Returns the datasets and comparisons in file order.  Every comparison's
    dataset ids must resolve; dataset files themselves are not opened.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read registry file {path}: {exc}") from exc

    parser = ConfigParser(interpolation=None, delimiters=("=",))
    try:
        parser.read_string(text, source=str(path))
    except ConfigParserError as exc:
        raise ParseError(f"registry {path}: {exc}") from exc

    datasets: list[DatasetEntry] = []
    comparisons: list[ComparisonSpec] = []
    for section in parser.sections():
        head, sep, ident = section.partition(":")
        if not sep or not ident:
            raise ParseError(
                f"registry {path}: section [{section}] is not "
                f"[dataset:<id>] or [comparison:<id>]"
            )
        if head == "dataset":
            datasets.append(_parse_dataset(parser, section, ident, path))
        elif head == "comparison":
            comparisons.append(_parse_comparison(parser, section, ident))
        else:
            raise ParseError(f"registry {path}: unknown section kind [{section}]")

    known = {d.id for d in datasets}
    for spec in comparisons:
        for ref in (spec.satellite_id, spec.surface_id):
            if ref is not None and ref not in known:
                raise UnknownDatasetId(
                    f"comparison {spec.spec_id!r} references unknown dataset {ref!r}"
                )
    return datasets, comparisons


def _require(parser: ConfigParser, section: str, key: str, exc_type, what: str) -> str:
    value = parser.get(section, key, fallback=None)
    if value is None or not value.strip():
        raise exc_type(f"[{section}] is missing {what} {key!r}")
    return value.strip()


def _parse_dataset(
    parser: ConfigParser, section: str, ident: str, registry_path: Path
) -> DatasetEntry:
    kind = _require(parser, section, "kind", BadSpec, "field")
    raw_path = Path(_require(parser, section, "path", BadSpec, "field"))
    if not raw_path.is_absolute():
        raw_path = registry_path.parent / raw_path
    notes = parser.get(section, "notes", fallback="").strip()
    return DatasetEntry(id=ident, kind=kind, path=raw_path, notes=notes)


def _parse_comparison(parser: ConfigParser, section: str, ident: str) -> ComparisonSpec:
    satellite = _require(parser, section, "satellite", BadSpec, "field")
    surface = parser.get(section, "surface", fallback=None)
    if surface is not None:
        surface = surface.strip() or None
    mode = _require(parser, section, "mode", BadSpec, "field")

    def ensemble_number(key: str, conv):
        raw = _require(parser, section, key, MissingEnsembleField, "ensemble field")
        try:
            return conv(raw)
        except ValueError:
            raise MissingEnsembleField(
                f"[{section}] ensemble field {key!r} is not a number: {raw!r}"
            ) from None

    ensemble = EnsembleStats(
        trend=ensemble_number("ensemble_trend", float),
        inter_model_sd=ensemble_number("ensemble_sd", float),
        n_models=ensemble_number("n_models", int),
    )

    def window_month(key: str) -> MonthIndex:
        raw = _require(parser, section, key, BadWindow, "window field")
        try:
            return MonthIndex.parse(raw)
        except InputError as exc:
            raise BadWindow(f"[{section}] {key}: {exc}") from None

    return ComparisonSpec(
        spec_id=ident,
        satellite_id=satellite,
        surface_id=surface,
        ensemble=ensemble,
        window=(window_month("start"), window_month("end")),
        mode=mode,
    )
