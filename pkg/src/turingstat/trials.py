"""Recorded trials: data types, JSON-lines/CSV ingestion and emission.

JSON-lines (``tt-trial/1``) is the primary format, one object per line::

    {"schema": "tt-trial/1", "trial_id": "t01", "format": "three-player",
     "responses": [{"respondent": "machine", "verdict": "machine", "correct": true},
                   {"respondent": "human", "verdict": "human", "correct": true}]}
    {"schema": "tt-trial/1", "trial_id": "m01", "format": "two-player",
     "respondent": "machine", "verdict": "human", "correct": false}

``verdict`` is what the interrogator declared the respondent to be.  Either of
``verdict``/``correct`` may be omitted; if both are given they must agree.
Optional keys: ``duration_note`` (free text) and ``metadata`` (object).

CSV input uses the header ``trial_id,format,respondent,verdict,correct``;
a three-player trial takes two rows sharing one ``trial_id``.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .model import GameFormat, RespondentKind, Verdict

SCHEMA = "tt-trial/1"
CSV_HEADER = ("trial_id", "format", "respondent", "verdict", "correct")


class TrialValidationError(ValueError):
    """A trial or dataset violates the record invariants."""

    def __init__(self, message: str, trial_id: Optional[str] = None, line: Optional[int] = None):
        self.reason = message
        self.trial_id = trial_id
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if trial_id is not None:
            where.append(f"trial {trial_id!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class Response:
    respondent: RespondentKind
    verdict: Verdict

    @property
    def correct(self) -> bool:
        return self.verdict.value == self.respondent.value


@dataclass(frozen=True)
class TrialRecord:
    trial_id: str
    format: GameFormat
    responses: Tuple[Response, ...]
    duration_note: Optional[str] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "format", GameFormat(self.format))
        object.__setattr__(self, "responses", tuple(self.responses))
        if not isinstance(self.trial_id, str) or not self.trial_id:
            raise TrialValidationError("trial_id must be a non-empty string", self.trial_id)
        kinds = sorted(r.respondent.value for r in self.responses)
        if self.format is GameFormat.THREE_PLAYER:
            if kinds != ["human", "machine"]:
                raise TrialValidationError(
                    "a three-player trial needs exactly one machine and one human response", self.trial_id
                )
            a, b = self.responses
            if a.verdict is b.verdict:
                raise TrialValidationError(
                    f"three-player verdicts must be complementary, both were {a.verdict.value!r}",
                    self.trial_id,
                )
        elif len(self.responses) != 1:
            raise TrialValidationError("a two-player trial has exactly one response", self.trial_id)

    def response_for(self, kind: RespondentKind) -> Optional[Response]:
        for r in self.responses:
            if r.respondent is kind:
                return r
        return None

    @property
    def correct(self) -> bool:
        """Three-player: both identified correctly.  Two-player: the one respondent was."""
        return all(r.correct for r in self.responses)


@dataclass(frozen=True)
class ExperimentDataset:
    format: GameFormat
    trials: Tuple[TrialRecord, ...]
    source: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "format", GameFormat(self.format))
        object.__setattr__(self, "trials", tuple(self.trials))
        seen = set()
        for t in self.trials:
            if t.format is not self.format:
                raise TrialValidationError(
                    f"mixed formats: dataset is {self.format.value}, trial is {t.format.value}", t.trial_id
                )
            if t.trial_id in seen:
                raise TrialValidationError("duplicate trial_id", t.trial_id)
            seen.add(t.trial_id)

    def __len__(self) -> int:
        return len(self.trials)


def classify_format(paired_conversations: bool = None, forced_complementary_verdicts: bool = None,
                    descriptor: Optional[Mapping[str, bool]] = None) -> GameFormat:
    """Three-player iff the interrogator talks to both respondents *and* must
    give complementary verdicts; anything else is a (possibly parallel)
    two-player design."""
    if descriptor is not None:
        paired_conversations = descriptor.get("paired_conversations", paired_conversations)
        forced_complementary_verdicts = descriptor.get(
            "forced_complementary_verdicts", forced_complementary_verdicts
        )
    if paired_conversations is None or forced_complementary_verdicts is None:
        raise ValueError("both paired_conversations and forced_complementary_verdicts are required")
    if paired_conversations and forced_complementary_verdicts:
        return GameFormat.THREE_PLAYER
    return GameFormat.TWO_PLAYER


# -- parsing ---------------------------------------------------------------

_TRUE = {"true", "1", "yes", "y", "t"}
_FALSE = {"false", "0", "no", "n", "f"}


def _parse_bool(value, trial_id, line) -> Optional[bool]:
    if value is None or value == "":
        return None
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.strip().lower() in _TRUE:
        return True
    if isinstance(value, str) and value.strip().lower() in _FALSE:
        return False
    raise TrialValidationError(f"cannot read {value!r} as a boolean", trial_id, line)


def _enum(cls, value, what, trial_id, line):
    try:
        return cls(str(value).strip().lower())
    except ValueError:
        allowed = ", ".join(m.value for m in cls)
        raise TrialValidationError(f"bad {what} {value!r} (expected one of: {allowed})", trial_id, line) from None


def _response(obj: Mapping, trial_id, line) -> Response:
    if "respondent" not in obj:
        raise TrialValidationError("missing 'respondent'", trial_id, line)
    kind = _enum(RespondentKind, obj["respondent"], "respondent", trial_id, line)
    verdict_raw = obj.get("verdict")
    verdict = None if verdict_raw in (None, "") else _enum(Verdict, verdict_raw, "verdict", trial_id, line)
    correct = _parse_bool(obj.get("correct"), trial_id, line)
    if verdict is None and correct is None:
        raise TrialValidationError("need 'verdict' or 'correct'", trial_id, line)
    if verdict is None:
        verdict = kind.verdict_if(correct)
    elif correct is not None and correct != (verdict.value == kind.value):
        raise TrialValidationError(
            f"'correct'={correct} contradicts verdict {verdict.value!r} for a {kind.value}", trial_id, line
        )
    return Response(kind, verdict)


def _record_from_obj(obj: Mapping, line: int, format_hint: Optional[GameFormat]) -> TrialRecord:
    if not isinstance(obj, dict):
        raise TrialValidationError("each line must be a JSON object", line=line)
    trial_id = obj.get("trial_id")
    if not isinstance(trial_id, str) or not trial_id:
        raise TrialValidationError("missing or non-string 'trial_id'", line=line)
    schema = obj.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise TrialValidationError(f"unsupported schema {schema!r}", trial_id, line)
    if "format" in obj:
        fmt = _enum(GameFormat, obj["format"], "format", trial_id, line)
    elif format_hint is not None:
        fmt = format_hint
    else:
        raise TrialValidationError("missing 'format' and no format hint given", trial_id, line)
    if "responses" in obj:
        raw = obj["responses"]
        if not isinstance(raw, list):
            raise TrialValidationError("'responses' must be a list", trial_id, line)
        responses = [_response(r, trial_id, line) for r in raw]
    else:
        responses = [_response(obj, trial_id, line)]
    metadata = obj.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise TrialValidationError("'metadata' must be an object", trial_id, line)
    note = obj.get("duration_note")
    try:
        return TrialRecord(trial_id, fmt, tuple(responses), note, metadata)
    except TrialValidationError as exc:
        raise TrialValidationError(exc.reason, trial_id, line) from None


def _build(records: List[TrialRecord], format_hint, source: str) -> ExperimentDataset:
    if not records:
        raise TrialValidationError("empty dataset: no trials found")
    fmt = format_hint or records[0].format
    return ExperimentDataset(fmt, tuple(records), source)


def _parse_jsonl(lines: Iterable[str], format_hint, source) -> ExperimentDataset:
    records = []
    for lineno, text in enumerate(lines, start=1):
        if not text.strip():
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TrialValidationError(f"malformed JSON: {exc.msg}", line=lineno) from None
        records.append(_record_from_obj(obj, lineno, format_hint))
    return _build(records, format_hint, source)


def _parse_csv(text: str, format_hint, source) -> ExperimentDataset:
    reader = csv.reader(io.StringIO(text))
    rows = [(i, r) for i, r in enumerate(reader, start=1) if any(c.strip() for c in r)]
    if not rows:
        raise TrialValidationError("empty dataset: no trials found")
    header = tuple(c.strip() for c in rows[0][1])
    if header != CSV_HEADER:
        raise TrialValidationError(f"CSV header must be {','.join(CSV_HEADER)}", line=rows[0][0])
    groups: Dict[str, dict] = {}
    for lineno, row in rows[1:]:
        if len(row) != len(CSV_HEADER):
            raise TrialValidationError(f"expected {len(CSV_HEADER)} columns, got {len(row)}", line=lineno)
        trial_id, fmt, respondent, verdict, correct = (c.strip() for c in row)
        if not trial_id:
            raise TrialValidationError("missing trial_id", line=lineno)
        g = groups.setdefault(trial_id, {"trial_id": trial_id, "line": lineno, "responses": []})
        if fmt:
            g.setdefault("format", fmt)
            if g["format"] != fmt:
                raise TrialValidationError("rows of one trial disagree on format", trial_id, lineno)
        g["responses"].append({"respondent": respondent, "verdict": verdict, "correct": correct})
    records = []
    for g in groups.values():
        lineno = g.pop("line")
        records.append(_record_from_obj(g, lineno, format_hint))
    return _build(records, format_hint, source)


def _sniff_csv(text: str) -> bool:
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    return first.strip().startswith("trial_id,")


def parse_trials(source: Union[str, os.PathLike, IO[str]], format_hint=None,
                 input_format: Optional[str] = None) -> ExperimentDataset:
    """Read a dataset from a path or text stream.

    ``input_format`` is ``"jsonl"`` or ``"csv"``; by default it is taken from
    the file suffix, else sniffed from the first line.  ``format_hint`` fills
    in missing ``format`` fields and is enforced against present ones.
    """
    hint = GameFormat(format_hint) if format_hint is not None else None
    if hasattr(source, "read"):
        text = source.read()
        name = getattr(source, "name", "<stream>")
    else:
        path = Path(source)
        text = path.read_text(encoding="utf-8")
        name = str(path)
        if input_format is None and path.suffix.lower() == ".csv":
            input_format = "csv"
    if input_format is None:
        input_format = "csv" if _sniff_csv(text) else "jsonl"
    if input_format == "csv":
        return _parse_csv(text, hint, name)
    if input_format == "jsonl":
        return _parse_jsonl(text.splitlines(), hint, name)
    raise ValueError(f"unknown input format {input_format!r}")


# -- emission --------------------------------------------------------------

def record_to_obj(t: TrialRecord) -> dict:
    obj: Dict[str, Any] = {"schema": SCHEMA, "trial_id": t.trial_id, "format": t.format.value}
    items = [
        {"respondent": r.respondent.value, "verdict": r.verdict.value, "correct": r.correct}
        for r in t.responses
    ]
    if t.format is GameFormat.THREE_PLAYER:
        obj["responses"] = items
    else:
        obj.update(items[0])
    if t.duration_note is not None:
        obj["duration_note"] = t.duration_note
    if t.metadata:
        obj["metadata"] = t.metadata
    return obj


def dumps_trials(dataset: ExperimentDataset, output_format: str = "jsonl") -> str:
    if output_format == "jsonl":
        return "".join(json.dumps(record_to_obj(t), sort_keys=False) + "\n" for t in dataset.trials)
    if output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for t in dataset.trials:
            for r in t.responses:
                w.writerow([t.trial_id, t.format.value, r.respondent.value, r.verdict.value,
                            "true" if r.correct else "false"])
        return buf.getvalue()
    raise ValueError(f"unknown output format {output_format!r}")


def dump_trials(dataset: ExperimentDataset, dest: Union[str, os.PathLike, IO[str]],
                output_format: str = "jsonl") -> None:
    text = dumps_trials(dataset, output_format)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")
