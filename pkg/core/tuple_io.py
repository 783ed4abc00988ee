"""Reading and writing tuple files: one map per line as four numbers a b c d."""
import logging
from fractions import Fraction
from pathlib import Path

from core.errors import InvalidMap, TupleParseError
from core.moebius import MoebiusMap

logger = logging.getLogger(__name__)


def _parse_number(token):
    # Fraction accepts integers, p/q and decimal literals exactly
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        pass
    value = float(token)
    if value != value or value in (float('inf'), float('-inf')):
        raise ValueError(f'non-finite value {token!r}')
    return value


def parse_tuple_text(text, source='<string>'):
    maps = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.replace(',', ' ').split()
        if len(tokens) != 4:
            raise TupleParseError(source, number, f'expected 4 coefficients, found {len(tokens)}')
        try:
            coefficients = [_parse_number(t) for t in tokens]
        except ValueError as e:
            raise TupleParseError(source, number, str(e))
        try:
            maps.append(MoebiusMap.from_coefficients(*coefficients))
        except InvalidMap as e:
            raise TupleParseError(source, number, str(e))
    if not maps:
        raise TupleParseError(source, 0, 'tuple is empty')
    logger.debug(f'Parsed {len(maps)} generators from {source}')
    return tuple(maps)


def read_tuple_file(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise TupleParseError(str(path), 0, f'cannot read file: {e}')
    return parse_tuple_text(text, source=str(path))


def format_tuple(maps):
    lines = []
    for m in maps:
        values = m.exact if m.exact is not None else m.coefficients
        lines.append(' '.join(str(v) for v in values))
    return '\n'.join(lines) + '\n'
