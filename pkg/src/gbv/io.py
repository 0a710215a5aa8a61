"""Wire formats: submeasure descriptors, sequence and function files, reports.

Submeasure descriptor (JSON object, exact field names):

    {"type": "summable" | "density" | "unit" | "counting",
     "form": "harmonic" | "power" | "log" | "table",
     "param": number,                  # power exponent
     "table": [..],                    # explicit values ("p/q" strings allowed)
     "wrap": ["shifted" | "max_unit" | {"permuted": [..]}],
     "horizon": N}

``wrap`` entries apply in list order around the base.  ``horizon`` is the
materialization length for closed-form weights (default 4096).

Sequences travel as CSV with one value per line ("p/q" tokens allowed) or as
a descriptor {"form": "power" | "alt" | "table", "param": p, "length": L,
"scale": c, "table": [..]}; functions as CSV lines "t,y" with t strictly
increasing from 0 to 1.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction

from ._util import DescriptorError, parse_number
from .submeasure import (
    DensityBound,
    SequencePrefix,
    Submeasure,
    WatermanWeights,
    counting,
    density,
    harmonic_weights,
    log_weights,
    max_with_unit,
    permuted,
    power_weights,
    shift_normalize,
    summable,
    unit,
)
from .variation import PiecewiseLinearFunction

DEFAULT_DESCRIPTOR_HORIZON = 4096


def submeasure_from_descriptor(desc: dict) -> Submeasure:
    if not isinstance(desc, dict):
        raise DescriptorError("submeasure descriptor must be a JSON object")
    kind = desc.get("type")
    horizon = desc.get("horizon", DEFAULT_DESCRIPTOR_HORIZON)
    if not isinstance(horizon, int) or horizon < 1:
        raise DescriptorError(f"field 'horizon': need a positive integer, got {horizon!r}")
    if kind == "unit":
        phi = unit()
    elif kind == "counting":
        phi = counting()
    elif kind == "summable":
        phi = summable(_weights_from_descriptor(desc, horizon))
    elif kind == "density":
        phi = density(_bound_from_descriptor(desc))
    else:
        raise DescriptorError(f"field 'type': expected summable/density/unit/counting, got {kind!r}")
    for i, wrap in enumerate(desc.get("wrap", [])):
        if wrap == "shifted":
            phi = shift_normalize(phi)
        elif wrap == "max_unit":
            phi = max_with_unit(phi)
        elif isinstance(wrap, dict) and "permuted" in wrap:
            phi = permuted(phi, wrap["permuted"])
        else:
            raise DescriptorError(f"field 'wrap[{i}]': unknown wrapper {wrap!r}")
    return phi


def _weights_from_descriptor(desc: dict, horizon: int) -> WatermanWeights:
    form = desc.get("form")
    if form == "harmonic":
        return harmonic_weights(horizon)
    if form == "power":
        p = desc.get("param")
        if not isinstance(p, (int, float)) or p <= 0:
            raise DescriptorError(f"field 'param': need a positive number, got {p!r}")
        return power_weights(p, horizon)
    if form == "log":
        return log_weights(horizon)
    if form == "table":
        table = desc.get("table")
        if not isinstance(table, list) or not table:
            raise DescriptorError("field 'table': need a nonempty list of values")
        values = [_parse_entry(v, f"table[{i}]") for i, v in enumerate(table)]
        return WatermanWeights(values, form="table",
                               declared_divergent=bool(desc.get("declared_divergent", False)))
    raise DescriptorError(f"field 'form': expected harmonic/power/log/table, got {form!r}")


def _bound_from_descriptor(desc: dict) -> DensityBound:
    form = desc.get("form")
    if form == "power":
        p = desc.get("param")
        if p is None:
            raise DescriptorError("field 'param': required for the power density form")
        return DensityBound("power", p)
    if form == "log":
        return DensityBound("log")
    if form == "table":
        table = desc.get("table")
        if not isinstance(table, list) or not table:
            raise DescriptorError("field 'table': need a nonempty list of integers")
        return DensityBound("table", table=table)
    raise DescriptorError(f"field 'form': expected power/log/table for density, got {form!r}")


def _parse_entry(v, where: str):
    if isinstance(v, str):
        try:
            return parse_number(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise DescriptorError(f"field '{where}': {exc}") from exc
    if isinstance(v, (int, float)):
        return v
    raise DescriptorError(f"field '{where}': expected a number or 'p/q' string, got {v!r}")


def load_submeasure(path) -> Submeasure:
    with open(path) as fh:
        try:
            desc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"{path}: not valid JSON ({exc})") from exc
    return submeasure_from_descriptor(desc)


# ---------------------------------------------------------------------------
# Sequences
# ---------------------------------------------------------------------------


def sequence_from_descriptor(desc: dict) -> SequencePrefix:
    if not isinstance(desc, dict):
        raise DescriptorError("sequence descriptor must be a JSON object")
    form = desc.get("form")
    scale = _parse_entry(desc.get("scale", 1), "scale")
    if form == "table":
        table = desc.get("table")
        if not isinstance(table, list):
            raise DescriptorError("field 'table': need a list of values")
        return SequencePrefix(tuple(scale * _parse_entry(v, f"table[{i}]")
                                    for i, v in enumerate(table)))
    length = desc.get("length")
    if not isinstance(length, int) or length < 1:
        raise DescriptorError(f"field 'length': need a positive integer, got {length!r}")
    p = desc.get("param", 1)
    if form == "power":
        return SequencePrefix(tuple(scale * float(i) ** (-float(p))
                                    for i in range(1, length + 1)))
    if form == "alt":
        return SequencePrefix(tuple((-1) ** (i + 1) * scale * float(i) ** (-float(p))
                                    for i in range(1, length + 1)))
    raise DescriptorError(f"field 'form': expected power/alt/table, got {form!r}")


def load_sequence(path) -> SequencePrefix:
    path = str(path)
    if path.endswith(".json"):
        with open(path) as fh:
            return sequence_from_descriptor(json.load(fh))
    entries = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                entries.append(parse_number(line))
            except (ValueError, ZeroDivisionError) as exc:
                raise DescriptorError(f"{path}:{lineno}: {exc}") from exc
    if not entries:
        raise DescriptorError(f"{path}: no values found")
    return SequencePrefix(tuple(entries))


def save_sequence(path, x) -> None:
    entries = x.entries if isinstance(x, SequencePrefix) else tuple(x)
    with open(path, "w") as fh:
        for v in entries:
            if isinstance(v, Fraction):
                fh.write(f"{v.numerator}/{v.denominator}\n")
            else:
                fh.write(f"{v!r}\n")


# ---------------------------------------------------------------------------
# Piecewise-linear functions
# ---------------------------------------------------------------------------


def load_function_csv(path) -> PiecewiseLinearFunction:
    bps, vals = [], []
    with open(path) as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 2:
                raise DescriptorError(f"{path}:{lineno}: expected 't,y', got {row!r}")
            try:
                bps.append(parse_number(row[0]))
                vals.append(parse_number(row[1]))
            except (ValueError, ZeroDivisionError) as exc:
                raise DescriptorError(f"{path}:{lineno}: {exc}") from exc
    try:
        return PiecewiseLinearFunction(tuple(bps), tuple(vals))
    except ValueError as exc:
        raise DescriptorError(f"{path}: {exc}") from exc


def save_function_csv(path, f: PiecewiseLinearFunction) -> None:
    with open(path, "w") as fh:
        for t, y in zip(f.breakpoints, f.values):
            ts = f"{t.numerator}/{t.denominator}" if isinstance(t, Fraction) else repr(t)
            ys = f"{y.numerator}/{y.denominator}" if isinstance(y, Fraction) else repr(y)
            fh.write(f"{ts},{ys}\n")
