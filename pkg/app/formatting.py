# Rendering helpers shared by the CLI (no computation here).

import csv as _csv
import io as _io
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from pydantic import BaseModel

from .models import OutputRecord
from .rational import render_rational

ROW_KEYS = ('rows', 'maximizers', 'critical_points', 'b')


def render_decimal(value: Fraction, digits: int) -> str:
    """Exact decimal rendering with `digits` places, rounded half-to-even; no floats involved."""
    if digits < 0:
        raise ValueError('digits must be nonnegative')
    scaled = round(value * 10**digits)
    sign = '-' if scaled < 0 else ''
    whole, frac = divmod(abs(scaled), 10**digits)
    if digits == 0:
        return f'{sign}{whole}'
    return f'{sign}{whole}.{frac:0{digits}d}'


def to_plain(value: Any) -> Any:
    """Convert results to JSON-ready values; Fractions become "num/den" strings."""
    if isinstance(value, Fraction):
        return render_rational(value)
    if isinstance(value, BaseModel):
        return value.model_dump(mode='json')
    if isinstance(value, Mapping):
        return {key: to_plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(item) for item in value]
    return value


def decimal_columns(rows: Iterable[Mapping[str, Any]], digits: int) -> list[dict[str, Any]]:
    """Add a `<field>_decimal` column after every rational-valued field of each row."""
    out = []
    for row in rows:
        extended: dict[str, Any] = {}
        for key, item in row.items():
            extended[key] = item
            if isinstance(item, Fraction):
                extended[f'{key}_decimal'] = render_decimal(item, digits)
        out.append(extended)
    return out


def build_record(
    command: str,
    inputs: Mapping[str, Any],
    results: Mapping[str, Any],
    digits: int,
) -> OutputRecord:
    """Assemble an OutputRecord; scalar rational results also get a decimal rendering."""
    decimals = {key: render_decimal(item, digits) for key, item in results.items() if isinstance(item, Fraction)}
    shaped = {}
    for key, item in results.items():
        if key in ROW_KEYS and isinstance(item, (list, tuple)):
            shaped[key] = to_plain(decimal_columns(item, digits))
        else:
            shaped[key] = to_plain(item)
    return OutputRecord(command=command, inputs=to_plain(dict(inputs)), results=shaped, decimals=decimals or None)


def pad_right(text: str, width: int, fill_char: str = ' ') -> str:
    """Pad on the right until len(text) >= width."""
    if width <= len(text):
        return text
    return text + (fill_char * (width - len(text)))


def _cell(value: Any) -> str:
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, (list, dict)):
        return ' | '.join(_cell(item) for item in (value.values() if isinstance(value, dict) else value))
    return str(value)


def _aligned(header: Sequence[str], body: Sequence[Sequence[str]]) -> list[str]:
    widths = [max(len(header[i]), *(len(row[i]) for row in body)) if body else len(header[i]) for i in range(len(header))]
    lines = ['  '.join(pad_right(h, w) for h, w in zip(header, widths)).rstrip()]
    lines.append('  '.join('-' * w for w in widths))
    lines.extend('  '.join(pad_right(c, w) for c, w in zip(row, widths)).rstrip() for row in body)
    return lines


def render_table(record: OutputRecord) -> str:
    """Human-readable rendering; no stability guarantee."""
    lines = [record.command]
    scalars = [(k, v) for k, v in record.inputs.items()]
    scalars += [(k, v) for k, v in record.results.items() if k not in ROW_KEYS]
    decimals = record.decimals or {}
    body = [[key, _cell(value) + (f'  (~{decimals[key]})' if key in decimals else '')] for key, value in scalars]
    lines.extend(_aligned(['field', 'value'], body))
    for key in ROW_KEYS:
        rows = record.results.get(key)
        if isinstance(rows, list) and rows:
            header = list(rows[0].keys())
            lines.append('')
            lines.append(key)
            lines.extend(_aligned(header, [[_cell(row.get(h)) for h in header] for row in rows]))
    return '\n'.join(lines) + '\n'


def _scalar_results(record: OutputRecord) -> dict[str, Any]:
    """Non-row results in order, each rational followed by its `<key>_decimal`."""
    decimals = record.decimals or {}
    flat: dict[str, Any] = {}
    for key, value in record.results.items():
        if key in ROW_KEYS:
            continue
        flat[key] = value
        if key in decimals:
            flat[f'{key}_decimal'] = decimals[key]
    return flat


def render_csv(record: OutputRecord) -> str:
    """Comma-separated with a header row.

    With a row list, the first one is written and the scalar results repeat as
    leading constant columns; otherwise one row of inputs and scalar results.
    """
    buffer = _io.StringIO()
    writer = _csv.writer(buffer, lineterminator='\n')
    scalars = _scalar_results(record)
    row_key = next((k for k in ROW_KEYS if isinstance(record.results.get(k), list)), None)
    if row_key is not None:
        rows = record.results[row_key]
        header = list(rows[0].keys()) if rows else []
        writer.writerow([*scalars, *header])
        constant = [_cell(v) for v in scalars.values()]
        for row in rows:
            writer.writerow(constant + [_cell(row.get(h)) for h in header])
    else:
        flat = {**record.inputs, **scalars}
        writer.writerow(list(flat.keys()))
        writer.writerow([_cell(v) for v in flat.values()])
    return buffer.getvalue()


def render_json(record: OutputRecord) -> str:
    """One JSON object per invocation; key order is fixed by construction."""
    return record.model_dump_json(indent=2) + '\n'


RENDERERS = {'table': render_table, 'csv': render_csv, 'json': render_json}
