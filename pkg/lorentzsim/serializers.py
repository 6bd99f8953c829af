"""
Reading and writing curves, p-shapes, frames and results.

JSON output is deterministic: keys are sorted and floats are written with
``%.17g``, so identical inputs produce byte-identical files.
"""

import csv
import io
import json
import logging
import math
import os
import tempfile
from urllib.parse import parse_qsl, urlsplit

import numpy as np

from . import exceptions
from .catalog import builtin
from .curves import CurveSamples, ParamKind
from .pshape import PShapeProfile
from .reconstruct import InitialFrame


logger = logging.getLogger(__name__)


#: URI scheme for built-in curves, e.g. ``example://self_similar_t?a=1&b=0.5``
EXAMPLE_SCHEME = 'example'
#: Query parameters of an example URI that control sampling rather than the curve
SAMPLING_KEYS = ('start', 'stop', 'n')

CURVE_COLUMNS = ('t', 'x0', 'x1', 'x2')
FRENET_COLUMNS = (
    's', 'sigma', 'kappa', 'tau',
    'e1_0', 'e1_1', 'e1_2',
    'e2_0', 'e2_1', 'e2_2',
    'e3_0', 'e3_1', 'e3_2',
    'eps1', 'eps2', 'eps3',
)


def format_float(value):
    value = float(value)
    if not math.isfinite(value):
        raise exceptions.InputError('cannot serialize non-finite value {!r}'.format(value))
    return '%.17g' % value


def _encode(data):
    if isinstance(data, dict):
        items = sorted((str(k), v) for k, v in data.items())
        return '{' + ', '.join('{}: {}'.format(json.dumps(k), _encode(v)) for k, v in items) + '}'
    if isinstance(data, (list, tuple, np.ndarray)):
        return '[' + ', '.join(_encode(v) for v in data) + ']'
    if data is None or isinstance(data, (bool, np.bool_)):
        return json.dumps(None if data is None else bool(data))
    if isinstance(data, (int, np.integer)):
        return str(int(data))
    if isinstance(data, (float, np.floating)):
        return format_float(data)
    return json.dumps(str(data))


def dumps(data):
    """
    Deterministic JSON encoding with sorted keys and round-trip float precision.
    """
    return _encode(data) + '\n'


def write_text(path, text):
    """
    Writes text to a file atomically, by writing a temporary file alongside it and
    renaming it into place.
    """
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, temporary = tempfile.mkstemp(dir = directory, prefix = '.', suffix = '.tmp')
    try:
        with os.fdopen(fd, 'w', encoding = 'utf-8', newline = '') as stream:
            stream.write(text)
        os.replace(temporary, path)
    except BaseException:
        if os.path.exists(temporary):
            os.unlink(temporary)
        raise
    logger.debug('wrote %d characters to %s', len(text), path)


def read_json(path, error = exceptions.InputError):
    with open(path, encoding = 'utf-8') as stream:
        try:
            return json.load(stream)
        except ValueError as exc:
            raise error('{} is not valid JSON: {}'.format(path, exc))


def _rows(values, columns):
    return [list(row) for row in np.column_stack(values).reshape(-1, columns)]


def curve_to_dict(curve, include_derivatives = True):
    data = dict(
        param_kind = curve.param_kind.value,
        samples = _rows((curve.params, curve.points), 4)
    )
    if include_derivatives and curve.has_derivatives:
        data['derivatives'] = dict(
            d1 = curve.d1.tolist(),
            d2 = curve.d2.tolist(),
            d3 = curve.d3.tolist()
        )
    return data


def curve_from_dict(data):
    """
    Builds a curve from the curve JSON schema.
    """
    try:
        samples = np.array(data['samples'], dtype = float)
        if samples.ndim != 2 or samples.shape[1] != 4:
            raise ValueError('samples must be rows of [t, x0, x1, x2]')
        channels = data.get('derivatives') or {}
        return CurveSamples(
            samples[:, 0],
            samples[:, 1:],
            channels.get('d1'),
            channels.get('d2'),
            channels.get('d3'),
            ParamKind(data.get('param_kind', ParamKind.ARBITRARY.value))
        )
    except exceptions.LorentzSimError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise exceptions.CurveFormatError('invalid curve: {}'.format(exc))


def curve_to_csv(curve):
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator = '\n')
    writer.writerow(CURVE_COLUMNS)
    for row in _rows((curve.params, curve.points), 4):
        writer.writerow([format_float(v) for v in row])
    return stream.getvalue()


def curve_from_csv(text, param_kind = ParamKind.ARBITRARY):
    """
    Reads a curve from CSV text with a ``t,x0,x1,x2`` header.
    """
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or any(c not in reader.fieldnames for c in CURVE_COLUMNS):
        raise exceptions.CurveFormatError('curve CSV must have the header {}'.format(','.join(CURVE_COLUMNS)))
    try:
        rows = np.array([[float(row[c]) for c in CURVE_COLUMNS] for row in reader])
    except (TypeError, ValueError) as exc:
        raise exceptions.CurveFormatError('invalid curve CSV: {}'.format(exc))
    if rows.ndim != 2:
        raise exceptions.CurveFormatError('curve CSV has no samples')
    return CurveSamples(rows[:, 0], rows[:, 1:], param_kind = param_kind)


def parse_example_uri(uri):
    """
    Samples the built-in curve named by an ``example://`` URI.

    Query parameters are the constants of the curve plus the optional sampling
    parameters ``start``, ``stop`` and ``n``.
    """
    parts = urlsplit(uri)
    if parts.scheme != EXAMPLE_SCHEME or not parts.netloc:
        raise exceptions.CurveFormatError('{!r} is not an example URI'.format(uri))
    query = dict(parse_qsl(parts.query, keep_blank_values = True))
    sampling = {key: query.pop(key) for key in SAMPLING_KEYS if key in query}
    try:
        start = float(sampling['start']) if 'start' in sampling else None
        stop = float(sampling['stop']) if 'stop' in sampling else None
        n = int(sampling['n']) if 'n' in sampling else None
    except ValueError as exc:
        raise exceptions.InputError('invalid sampling parameter in {!r}: {}'.format(uri, exc))
    return builtin(parts.netloc, **query).sample(start, stop, n)


def read_curve(source):
    """
    Reads a curve from a JSON or CSV file, or samples an ``example://`` URI.
    """
    source = os.fspath(source)
    if source.startswith(EXAMPLE_SCHEME + '://'):
        return parse_example_uri(source)
    if source.lower().endswith('.csv'):
        with open(source, encoding = 'utf-8', newline = '') as stream:
            return curve_from_csv(stream.read())
    return curve_from_dict(read_json(source, exceptions.CurveFormatError))


def frenet_to_csv(fd):
    """
    The Frenet apparatus as CSV, one row per node.
    """
    n = len(fd)
    signs = np.tile(np.asarray(fd.signs, dtype = float), (n, 1))
    table = np.column_stack((fd.s, fd.sigma, fd.kappa, fd.tau, fd.e1, fd.e2, fd.e3, signs))
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator = '\n')
    writer.writerow(FRENET_COLUMNS)
    for row in table:
        writer.writerow(
            [format_float(v) for v in row[:-3]] + [str(int(v)) for v in row[-3:]]
        )
    return stream.getvalue()


def read_profile(path):
    return PShapeProfile.from_dict(read_json(path, exceptions.InvalidProfile))


def read_frame(path):
    return InitialFrame.from_dict(read_json(path))
