import csv
import io
import json
from enum import Enum

from corrcomplete.errors import InvalidInput
from corrcomplete.utils.logger import logger
from corrcomplete.utils.utils import format_float
from .partial_matrix import DenseCorrMatrix, PartialMatrix


class MatrixFormat(str, Enum):
    JSON = 'json'
    CSV = 'csv'

    @classmethod
    def coerce(cls, value):
        try:
            return cls(value.lower() if isinstance(value, str) else value)
        except ValueError:
            raise InvalidInput(f"unknown matrix format {value!r}, expected json or csv")

    @classmethod
    def from_path(cls, path, default=None):
        suffix = str(path).rsplit('.', 1)[-1].lower() if '.' in str(path) else ''
        if suffix in ('json', 'csv'):
            return cls(suffix)
        return default or cls.JSON


def _decode(data):
    if isinstance(data, bytes):
        try:
            return data.decode('utf-8-sig')
        except UnicodeDecodeError as e:
            raise InvalidInput(f"input is not valid UTF-8: {e}")
    return data


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidInput(f"value for {where} must be a number, got {value!r}")
    return float(value)


def _parse_json(text):
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInput(f"malformed JSON: {e}")
    if not isinstance(document, dict):
        raise InvalidInput("JSON input must be an object with 'labels' and 'entries'")
    labels = document.get('labels')
    entries = document.get('entries', [])
    if not isinstance(labels, list):
        raise InvalidInput("JSON input needs a 'labels' list")
    if not isinstance(entries, list):
        raise InvalidInput("'entries' must be a list")
    known = set(label for label in labels if isinstance(label, str))

    collected = {}
    for position, entry in enumerate(entries):
        if not isinstance(entry, dict) or not {'row', 'col', 'value'} <= set(entry):
            raise InvalidInput(f"entry {position} must have 'row', 'col' and 'value'")
        row, col = entry['row'], entry['col']
        for label in (row, col):
            if label not in known:
                raise InvalidInput(f"entry {position} refers to unknown label {label!r}")
        value = _number(entry['value'], f"({row}, {col})")
        if row == col:
            if value != 1.0:
                raise InvalidInput(f"diagonal entry for {row!r} must be 1, got {value!r}")
            continue
        key = frozenset((row, col))
        if key in collected and collected[key][2] != value:
            raise InvalidInput(
                f"pair ({row}, {col}) is given twice with different values "
                f"{collected[key][2]!r} and {value!r}"
            )
        collected.setdefault(key, (row, col, value))
    return PartialMatrix.from_entries(labels, collected.values())


def _parse_csv(text):
    rows = [row for row in csv.reader(io.StringIO(text))]
    while rows and not any(cell.strip() for cell in rows[-1]):
        rows.pop()
    if not rows:
        raise InvalidInput("CSV input is empty")
    labels = [cell.strip() for cell in rows[0][1:]]
    n = len(labels)
    if len(rows) != n + 1:
        raise InvalidInput(f"CSV grid must have {n} data rows, got {len(rows) - 1}")

    cells = []
    for i, row in enumerate(rows[1:]):
        if len(row) != n + 1:
            raise InvalidInput(f"CSV row {i + 1} must have {n + 1} cells, got {len(row)}")
        if row[0].strip() != labels[i]:
            raise InvalidInput(
                f"row label {row[0].strip()!r} does not match column label {labels[i]!r}"
            )
        parsed = []
        for j, cell in enumerate(row[1:]):
            cell = cell.strip()
            if not cell:
                parsed.append(None)
                continue
            try:
                parsed.append(float(cell))
            except ValueError:
                raise InvalidInput(f"cell ({labels[i]}, {labels[j]}) is not a number: {cell!r}")
        cells.append(parsed)

    entries = []
    for i in range(n):
        if cells[i][i] is not None and cells[i][i] != 1.0:
            raise InvalidInput(f"diagonal cell for {labels[i]!r} must be 1 or empty")
        for j in range(i + 1, n):
            upper, lower = cells[i][j], cells[j][i]
            if upper != lower:
                raise InvalidInput(
                    f"cells ({labels[i]}, {labels[j]}) and ({labels[j]}, {labels[i]}) disagree"
                )
            if upper is not None:
                entries.append((labels[i], labels[j], upper))
    return PartialMatrix.from_entries(labels, entries)


def parse_partial(data, fmt):
    '''
    Parse a partially specified correlation matrix from JSON or CSV text.

    Absent JSON entries and empty CSV cells are unspecified.
    '''
    fmt = MatrixFormat.coerce(fmt)
    text = _decode(data)
    m = _parse_json(text) if fmt == MatrixFormat.JSON else _parse_csv(text)
    logger.debug('Parsed partial matrix', extra={'format': fmt.value, 'n': m.n, 'specified': len(m.specified)})
    return m


def parse_dense(data, fmt):
    return DenseCorrMatrix.from_partial(parse_partial(data, fmt))


def _json_bytes(labels, entries):
    document = {
        'labels': list(labels),
        'entries': [{'row': row, 'col': col, 'value': value} for row, col, value in entries],
    }
    return (json.dumps(document, indent=2) + '\n').encode('utf-8')


def _csv_bytes(labels, cell):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow([''] + list(labels))
    for i, label in enumerate(labels):
        writer.writerow([label] + [cell(i, j) for j in range(len(labels))])
    return buffer.getvalue().encode('utf-8')


def serialize_dense(m, fmt):
    fmt = MatrixFormat.coerce(fmt)
    if fmt == MatrixFormat.JSON:
        entries = [
            (m.labels[i], m.labels[j], float(m.values[i, j]))
            for i in range(m.n)
            for j in range(i + 1, m.n)
        ]
        return _json_bytes(m.labels, entries)
    return _csv_bytes(m.labels, lambda i, j: format_float(m.values[i, j]))


def serialize_partial(m, fmt):
    fmt = MatrixFormat.coerce(fmt)
    if fmt == MatrixFormat.JSON:
        entries = [(m.labels[i], m.labels[j], value) for (i, j), value in m.specified.items()]
        return _json_bytes(m.labels, entries)

    def cell(i, j):
        value = m.value(i, j)
        return '' if value is None else format_float(value)

    return _csv_bytes(m.labels, cell)
