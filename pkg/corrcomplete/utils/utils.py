import math

LABEL_FORBIDDEN = (",", "\n", "\r")


def format_float(value):
    '''
    Shortest decimal text that parses back to the identical double.
    '''
    return repr(float(value))


def parse_label_set(text):
    '''
    Split a comma-separated label list, e.g. "E,A,X" -> ["E", "A", "X"].
    '''
    labels = [part.strip() for part in text.split(",")]
    return [label for label in labels if label]


def parse_float_list(text):
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        values.append(float(part))
    return values


def is_correlation_value(value):
    return isinstance(value, float) and math.isfinite(value) and -1.0 < value < 1.0
