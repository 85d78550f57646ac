"""Core data types and dataset ingestion.

Four dataset shapes are supported:

* membership tables (CSV or JSON): one row per exemplar with membership
  weights for two concepts, their negations, and their combinations;
* coincidence tables (JSON): four joint-measurement blocks of four signed
  outcomes each, the shape of a CHSH experiment;
* state-context-property models (JSON): finite state/context/property sets
  with explicit transition and applicability weights;
* count datasets (JSON): relative frequencies over the N+1 occupation
  splits of N identical instances between two states.

All types are immutable after construction and fully validated in
``__post_init__``; parsers either return validated values or raise a
``QcmError`` subclass.  Serialization followed by parsing is the identity
on membership records and coincidence tables.

CSV schema (header mandatory, UTF-8): the only accepted column names are

    exemplar, conceptA, conceptB, muA, muB, muAp, muBp,
    muAandB, muAandBp, muApandB, muApandBp, muAorB

``exemplar``, ``muA`` and ``muB`` are required; an empty cell means the
value is absent.  JSON membership files are arrays of objects using the
same key names.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, replace
from types import MappingProxyType
from typing import IO, Iterable, Literal, Mapping

from .errors import (
    DataValidationError,
    IncompleteRecordError,
    SchemaError,
    UnknownLabelError,
)

MEMBERSHIP_COLUMNS = (
    "exemplar",
    "conceptA",
    "conceptB",
    "muA",
    "muB",
    "muAp",
    "muBp",
    "muAandB",
    "muAandBp",
    "muApandB",
    "muApandBp",
    "muAorB",
)

_TEXT_COLUMNS = ("exemplar", "conceptA", "conceptB")

_COLUMN_TO_ATTR = {
    "exemplar": "exemplar",
    "conceptA": "concept_a",
    "conceptB": "concept_b",
    "muA": "mu_a",
    "muB": "mu_b",
    "muAp": "mu_ap",
    "muBp": "mu_bp",
    "muAandB": "mu_a_and_b",
    "muAandBp": "mu_a_and_bp",
    "muApandB": "mu_ap_and_b",
    "muApandBp": "mu_ap_and_bp",
    "muAorB": "mu_a_or_b",
}
_ATTR_TO_COLUMN = {attr: col for col, attr in _COLUMN_TO_ATTR.items()}

# combination weights: a record must carry at least one of these
_COMBINATION_COLUMNS = ("muAandB", "muAandBp", "muApandB", "muApandBp", "muAorB")

BLOCKS = ("AB", "ABp", "ApB", "ApBp")

BLOCK_SUM_TOLERANCE = 1e-3  # published tables are 3-decimal rounded

Format = Literal["csv", "json"]


def _read_text(source: bytes | str | IO[bytes] | IO[str]) -> str:
    if isinstance(source, bytes):
        raw = source
    elif isinstance(source, str):
        return source
    else:
        raw = source.read()
        if isinstance(raw, str):
            return raw
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DataValidationError(f"input is not valid UTF-8: {exc}") from None


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what}: invalid JSON: {exc}") from None


def _check_unit_interval(value: float, label: str) -> float:
    value = float(value)
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise DataValidationError(f"{label}={value!r} outside [0, 1]")
    return value


@dataclass(frozen=True)
class MembershipRecord:
    """Membership weights of one exemplar under two concepts A and B.

    Negation weights are free empirical quantities: ``mu_ap`` is NOT
    constrained to equal ``1 - mu_a``.
    """

    exemplar: str
    mu_a: float
    mu_b: float
    concept_a: str = "A"
    concept_b: str = "B"
    mu_ap: float | None = None
    mu_bp: float | None = None
    mu_a_and_b: float | None = None
    mu_a_and_bp: float | None = None
    mu_ap_and_b: float | None = None
    mu_ap_and_bp: float | None = None
    mu_a_or_b: float | None = None

    def __post_init__(self):
        for column, attr in _COLUMN_TO_ATTR.items():
            if column in _TEXT_COLUMNS:
                continue
            value = getattr(self, attr)
            if value is None:
                continue
            try:
                value = _check_unit_interval(value, column)
            except DataValidationError as exc:
                raise DataValidationError(f"exemplar {self.exemplar!r}: {exc}") from None
            object.__setattr__(self, attr, value)
        if all(self.value(c) is None for c in _COMBINATION_COLUMNS):
            raise DataValidationError(
                f"exemplar {self.exemplar!r}: no combination weight present "
                f"(need one of {', '.join(_COMBINATION_COLUMNS)})"
            )

    def value(self, column: str):
        """Field access by canonical column name."""
        try:
            return getattr(self, _COLUMN_TO_ATTR[column])
        except KeyError:
            raise KeyError(f"unknown column {column!r}") from None

    def require(self, *columns: str) -> tuple[float, ...]:
        """Return the named fields, raising IncompleteRecordError if absent."""
        values = []
        for column in columns:
            value = self.value(column)
            if value is None:
                raise IncompleteRecordError(
                    column, f"exemplar {self.exemplar!r}: missing field {column!r}"
                )
            values.append(value)
        return tuple(values)

    def has(self, *columns: str) -> bool:
        return all(self.value(c) is not None for c in columns)

    def negation_complete(self) -> bool:
        """True when all eight weights of the negation quadruple are present."""
        return self.has("muA", "muB", "muAp", "muBp",
                        "muAandB", "muAandBp", "muApandB", "muApandBp")


def _record_from_fields(fields: dict, context: str) -> MembershipRecord:
    for required in ("exemplar", "muA", "muB"):
        if required not in fields:
            raise DataValidationError(f"{context}: missing required column {required!r}")
    kwargs = {_COLUMN_TO_ATTR[col]: val for col, val in fields.items()}
    try:
        return MembershipRecord(**kwargs)
    except DataValidationError as exc:
        raise DataValidationError(f"{context}: {exc}") from None


def parse_membership_table(
    source: bytes | str | IO[bytes] | IO[str], format: Format = "csv"
) -> list[MembershipRecord]:
    """Parse a membership table; empty input parses to an empty list."""
    text = _read_text(source)
    if text.strip() == "":
        return []
    if format == "csv":
        return _membership_from_csv(text)
    if format == "json":
        return _membership_from_json(text)
    raise ValueError(f"unknown format {format!r} (expected 'csv' or 'json')")


def _membership_from_csv(text: str) -> list[MembershipRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [row for row in rows if row]  # csv yields [] for blank lines
    header = [cell.strip() for cell in rows[0]]
    seen = set()
    for name in header:
        if name not in MEMBERSHIP_COLUMNS:
            raise SchemaError(f"header: unknown column {name!r}")
        if name in seen:
            raise SchemaError(f"header: duplicate column {name!r}")
        seen.add(name)
    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if all(cell.strip() == "" for cell in row):
            continue
        if len(row) != len(header):
            raise DataValidationError(
                f"row {lineno}: expected {len(header)} fields, got {len(row)}"
            )
        fields = {}
        for column, cell in zip(header, row):
            cell = cell.strip()
            if cell == "":
                continue
            if column in _TEXT_COLUMNS:
                fields[column] = cell
            else:
                try:
                    fields[column] = float(cell)
                except ValueError:
                    raise DataValidationError(
                        f"row {lineno}, column {column}: {cell!r} is not a number"
                    ) from None
        records.append(_record_from_fields(fields, f"row {lineno}"))
    return records


def _membership_from_json(text: str) -> list[MembershipRecord]:
    doc = _load_json(text, "membership table")
    if not isinstance(doc, list):
        raise SchemaError("membership table: expected a JSON array of objects")
    records = []
    for index, item in enumerate(doc):
        context = f"record {index}"
        if not isinstance(item, dict):
            raise SchemaError(f"{context}: expected an object")
        fields = {}
        for key, value in item.items():
            if key not in MEMBERSHIP_COLUMNS:
                raise SchemaError(f"{context}: unknown key {key!r}")
            if value is None:
                continue
            if key in _TEXT_COLUMNS:
                if not isinstance(value, str):
                    raise DataValidationError(f"{context}: {key} must be a string")
                fields[key] = value
            else:
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise DataValidationError(f"{context}: {key} must be a number")
                fields[key] = float(value)
        records.append(_record_from_fields(fields, context))
    return records


def serialize_membership_table(
    records: Iterable[MembershipRecord], format: Format = "csv"
) -> bytes:
    """Inverse of parse_membership_table (parse(serialize(rs)) == rs)."""
    records = list(records)
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(MEMBERSHIP_COLUMNS)
        for record in records:
            row = []
            for column in MEMBERSHIP_COLUMNS:
                value = record.value(column)
                if value is None:
                    row.append("")
                elif column in _TEXT_COLUMNS:
                    row.append(value)
                else:
                    row.append(repr(value))
            writer.writerow(row)
        return out.getvalue().encode("utf-8")
    if format == "json":
        items = []
        for record in records:
            item = {}
            for column in MEMBERSHIP_COLUMNS:
                value = record.value(column)
                if value is not None:
                    item[column] = value
            items.append(item)
        return (json.dumps(items, indent=2) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {format!r} (expected 'csv' or 'json')")


@dataclass(frozen=True)
class CoincidenceOutcome:
    """One labeled outcome of a joint measurement: labels, sign, probability."""

    first: str
    second: str
    sign: int
    p: float

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DataValidationError(
                f"outcome ({self.first!r}, {self.second!r}): sign must be +1 or -1, "
                f"got {self.sign!r}"
            )
        object.__setattr__(
            self, "p", _check_unit_interval(self.p, f"p({self.first},{self.second})")
        )


@dataclass(frozen=True)
class CoincidenceTable:
    """Four coincidence-measurement blocks of four signed outcomes each.

    Block keys, in fixed order: AB, ABp, ApB, ApBp (p marks the primed
    measurement choice).  Each block must sum to 1 within 1e-3 and carry
    exactly two +1 and two -1 outcomes.
    """

    ab: tuple[CoincidenceOutcome, ...]
    abp: tuple[CoincidenceOutcome, ...]
    apb: tuple[CoincidenceOutcome, ...]
    apbp: tuple[CoincidenceOutcome, ...]

    def __post_init__(self):
        for key in BLOCKS:
            outcomes = tuple(self.block(key))
            object.__setattr__(self, _BLOCK_ATTR[key], outcomes)
            if len(outcomes) != 4:
                raise DataValidationError(
                    f"block {key}: expected 4 outcomes, got {len(outcomes)}"
                )
            signs = sorted(o.sign for o in outcomes)
            if signs != [-1, -1, 1, 1]:
                raise DataValidationError(
                    f"block {key}: needs exactly two +1 and two -1 outcomes"
                )
            total = sum(o.p for o in outcomes)
            # inclusive bound with an epsilon pad: 3-decimal tables can sum
            # to 0.999 exactly, which float addition may overshoot by 1 ulp
            if abs(total - 1.0) > BLOCK_SUM_TOLERANCE + 1e-12:
                raise DataValidationError(
                    f"block {key}: probabilities sum to {total:.6f}, not 1 "
                    f"within {BLOCK_SUM_TOLERANCE}"
                )

    def block(self, key: str) -> tuple[CoincidenceOutcome, ...]:
        try:
            return getattr(self, _BLOCK_ATTR[key])
        except KeyError:
            raise KeyError(f"unknown block {key!r} (expected one of {BLOCKS})") from None

    def blocks(self) -> dict[str, tuple[CoincidenceOutcome, ...]]:
        return {key: self.block(key) for key in BLOCKS}


_BLOCK_ATTR = {"AB": "ab", "ABp": "abp", "ApB": "apb", "ApBp": "apbp"}


def parse_coincidence(source: bytes | str | IO[bytes] | IO[str]) -> CoincidenceTable:
    """Parse a coincidence table from JSON.

    Document shape: an object with exactly the keys AB, ABp, ApB, ApBp,
    each a list of four outcome objects {"first", "second", "sign", "p"}.
    """
    doc = _load_json(_read_text(source), "coincidence table")
    if not isinstance(doc, dict):
        raise SchemaError("coincidence table: expected a JSON object")
    unknown = set(doc) - set(BLOCKS)
    if unknown:
        raise SchemaError(f"coincidence table: unknown block keys {sorted(unknown)}")
    missing = [key for key in BLOCKS if key not in doc]
    if missing:
        raise SchemaError(f"coincidence table: missing blocks {missing}")
    parsed = {}
    for key in BLOCKS:
        entries = doc[key]
        if not isinstance(entries, list):
            raise SchemaError(f"block {key}: expected a list of outcomes")
        outcomes = []
        for entry in entries:
            if not isinstance(entry, dict) or not {"first", "second", "sign", "p"} <= set(entry):
                raise SchemaError(
                    f"block {key}: each outcome needs keys first/second/sign/p"
                )
            sign = entry["sign"]
            if isinstance(sign, bool) or not isinstance(sign, int):
                raise DataValidationError(f"block {key}: sign must be an integer +-1")
            try:
                outcomes.append(
                    CoincidenceOutcome(
                        first=str(entry["first"]),
                        second=str(entry["second"]),
                        sign=sign,
                        p=float(entry["p"]),
                    )
                )
            except DataValidationError as exc:
                raise DataValidationError(f"block {key}: {exc}") from None
        parsed[key] = tuple(outcomes)
    try:
        return CoincidenceTable(
            ab=parsed["AB"], abp=parsed["ABp"], apb=parsed["ApB"], apbp=parsed["ApBp"]
        )
    except DataValidationError:
        raise


def serialize_coincidence(table: CoincidenceTable) -> bytes:
    doc = {
        key: [
            {"first": o.first, "second": o.second, "sign": o.sign, "p": o.p}
            for o in table.block(key)
        ]
        for key in BLOCKS
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


@dataclass(frozen=True, eq=False)
class ScopModel:
    """Finite state-context-property store.

    ``transitions`` maps (target q, context e, source p) to the probability
    of landing on q when context e acts on state p; ``applicability`` maps
    (state, property) to a weight in [0, 1].  Every stored (context, source)
    group must be a complete distribution (sums to 1 within 1e-9).
    """

    states: tuple[str, ...]
    contexts: tuple[str, ...]
    properties: tuple[str, ...]
    ground_state: str
    transitions: Mapping[tuple[str, str, str], float]
    applicability: Mapping[tuple[str, str], float]

    SUM_TOLERANCE = 1e-9

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "contexts", tuple(self.contexts))
        object.__setattr__(self, "properties", tuple(self.properties))
        if self.ground_state not in states:
            raise DataValidationError(
                f"ground state {self.ground_state!r} not in the state set"
            )
        known_states = set(states)
        known_contexts = set(self.contexts)
        known_properties = set(self.properties)
        transitions = dict(self.transitions)
        group_sums: dict[tuple[str, str], float] = {}
        for (target, context, source), prob in transitions.items():
            for state, what in ((target, "target"), (source, "source")):
                if state not in known_states:
                    raise DataValidationError(f"transition {what} state {state!r} unknown")
            if context not in known_contexts:
                raise DataValidationError(f"transition context {context!r} unknown")
            _check_unit_interval(prob, f"transition ({target},{context},{source})")
            group_sums[(context, source)] = group_sums.get((context, source), 0.0) + prob
        for (context, source), total in group_sums.items():
            if abs(total - 1.0) > self.SUM_TOLERANCE:
                raise DataValidationError(
                    f"transition distribution for context {context!r} on state "
                    f"{source!r} sums to {total!r}, not 1"
                )
        applicability = dict(self.applicability)
        for (state, prop), weight in applicability.items():
            if state not in known_states:
                raise DataValidationError(f"applicability state {state!r} unknown")
            if prop not in known_properties:
                raise DataValidationError(f"applicability property {prop!r} unknown")
            _check_unit_interval(weight, f"applicability ({state},{prop})")
        object.__setattr__(self, "transitions", MappingProxyType(transitions))
        object.__setattr__(self, "applicability", MappingProxyType(applicability))


def scop_transition(model: ScopModel, from_state: str, ctx: str) -> dict[str, float]:
    """Distribution over target states when ``ctx`` acts on ``from_state``.

    Returns a map over the full state set (unstored targets get 0.0);
    the values sum to 1 within 1e-9 by construction.
    """
    if from_state not in model.states:
        raise UnknownLabelError(f"unknown state {from_state!r}")
    if ctx not in model.contexts:
        raise UnknownLabelError(f"unknown context {ctx!r}")
    result = {
        state: model.transitions.get((state, ctx, from_state), 0.0)
        for state in model.states
    }
    if not any((state, ctx, from_state) in model.transitions for state in model.states):
        raise UnknownLabelError(
            f"no transition distribution stored for state {from_state!r} "
            f"under context {ctx!r}"
        )
    return result


def scop_applicability(model: ScopModel, state: str, prop: str) -> float:
    if state not in model.states:
        raise UnknownLabelError(f"unknown state {state!r}")
    if prop not in model.properties:
        raise UnknownLabelError(f"unknown property {prop!r}")
    return model.applicability.get((state, prop), 0.0)


def parse_scop(source: bytes | str | IO[bytes] | IO[str]) -> ScopModel:
    doc = _load_json(_read_text(source), "scop model")
    if not isinstance(doc, dict):
        raise SchemaError("scop model: expected a JSON object")
    for key in ("states", "groundState", "contexts", "properties"):
        if key not in doc:
            raise SchemaError(f"scop model: missing key {key!r}")
    transitions = {}
    for entry in doc.get("transitions", []):
        if not isinstance(entry, dict) or not {"from", "context", "to", "p"} <= set(entry):
            raise SchemaError("scop model: transition needs keys from/context/to/p")
        transitions[(str(entry["to"]), str(entry["context"]), str(entry["from"]))] = float(
            entry["p"]
        )
    applicability = {}
    for entry in doc.get("applicability", []):
        if not isinstance(entry, dict) or not {"state", "property", "weight"} <= set(entry):
            raise SchemaError("scop model: applicability needs keys state/property/weight")
        applicability[(str(entry["state"]), str(entry["property"]))] = float(entry["weight"])
    return ScopModel(
        states=tuple(str(s) for s in doc["states"]),
        contexts=tuple(str(c) for c in doc["contexts"]),
        properties=tuple(str(p) for p in doc["properties"]),
        ground_state=str(doc["groundState"]),
        transitions=transitions,
        applicability=applicability,
    )


def serialize_scop(model: ScopModel) -> bytes:
    doc = {
        "states": list(model.states),
        "groundState": model.ground_state,
        "contexts": list(model.contexts),
        "properties": list(model.properties),
        "transitions": [
            {"from": source, "context": context, "to": target, "p": prob}
            for (target, context, source), prob in sorted(model.transitions.items())
        ],
        "applicability": [
            {"state": state, "property": prop, "weight": weight}
            for (state, prop), weight in sorted(model.applicability.items())
        ],
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


@dataclass(frozen=True)
class CountDataset:
    """Observed relative frequencies over the N+1 occupation splits.

    ``observed[n]`` is the frequency of the configuration with n instances
    in the first state and N - n in the second.
    """

    category: str
    n_total: int
    observed: tuple[float, ...]
    state_labels: tuple[str, str] = ("state1", "state2")

    SUM_TOLERANCE = 1e-6

    def __post_init__(self):
        if not isinstance(self.n_total, int) or isinstance(self.n_total, bool) or self.n_total < 1:
            raise DataValidationError(
                f"dataset {self.category!r}: N must be an integer >= 1, got {self.n_total!r}"
            )
        observed = tuple(float(v) for v in self.observed)
        object.__setattr__(self, "observed", observed)
        object.__setattr__(self, "state_labels", tuple(self.state_labels))
        if len(self.state_labels) != 2:
            raise DataValidationError(
                f"dataset {self.category!r}: exactly two state labels required"
            )
        if len(observed) != self.n_total + 1:
            raise DataValidationError(
                f"dataset {self.category!r}: expected {self.n_total + 1} frequencies, "
                f"got {len(observed)}"
            )
        for n, value in enumerate(observed):
            if not math.isfinite(value) or value < 0.0:
                raise DataValidationError(
                    f"dataset {self.category!r}: observed[{n}]={value!r} negative or not finite"
                )
        total = sum(observed)
        if abs(total - 1.0) > self.SUM_TOLERANCE:
            raise DataValidationError(
                f"dataset {self.category!r}: frequencies sum to {total!r}, not 1 "
                f"within {self.SUM_TOLERANCE}"
            )


def parse_count_datasets(source: bytes | str | IO[bytes] | IO[str]) -> list[CountDataset]:
    """Parse one or a list of count datasets from JSON."""
    doc = _load_json(_read_text(source), "count dataset")
    items = doc if isinstance(doc, list) else [doc]
    datasets = []
    for index, item in enumerate(items):
        if not isinstance(item, dict):
            raise SchemaError(f"count dataset {index}: expected an object")
        for key in ("category", "N", "observed"):
            if key not in item:
                raise SchemaError(f"count dataset {index}: missing key {key!r}")
        n_total = item["N"]
        if isinstance(n_total, bool) or not isinstance(n_total, int):
            raise DataValidationError(f"count dataset {index}: N must be an integer")
        labels = item.get("stateLabels", ["state1", "state2"])
        if not isinstance(labels, list) or len(labels) != 2:
            raise SchemaError(f"count dataset {index}: stateLabels must be a pair")
        datasets.append(
            CountDataset(
                category=str(item["category"]),
                n_total=n_total,
                observed=tuple(float(v) for v in item["observed"]),
                state_labels=(str(labels[0]), str(labels[1])),
            )
        )
    return datasets


def serialize_count_datasets(datasets: Iterable[CountDataset]) -> bytes:
    items = [
        {
            "category": d.category,
            "N": d.n_total,
            "stateLabels": list(d.state_labels),
            "observed": list(d.observed),
        }
        for d in datasets
    ]
    return (json.dumps(items, indent=2) + "\n").encode("utf-8")
