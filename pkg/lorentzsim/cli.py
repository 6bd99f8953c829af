"""
Command line interface.

Every command writes its result to ``--out`` (atomically) or to standard output.
Errors are reported as a JSON object on standard error and the process exits
with 1 for usage, input and I/O errors, 2 for geometric errors and 3 when two
curves have different p-shapes.
"""

import logging
import sys
from dataclasses import dataclass

import click
import numpy as np

from . import exceptions, serializers
from .catalog import builtin, catalog_names
from .curves import transform_curve
from .frenet import RESIDUAL_TRIM, CausalCase, frenet_apparatus, frenet_residual
from .minkowski import UnitSphere, inner
from .pshape import pshape_distance, pshape_from_derivatives, pshape_from_frenet
from .quaternions import PSimilarity, random_psimilarity
from .reconstruct import PShapeSpec, reconstruct_curve, standard_frame
from .registration import estimate_similarity, verify_match
from .settings import setting_or_default


logger = logging.getLogger(__name__)


@dataclass(frozen = True)
class CliConfig:
    """
    Options shared by every command.

    ``None`` means the package setting is used.
    """
    step: float = None
    lightlike_tol: float = None
    curvature_floor: float = None
    match_threshold: float = None
    output_format: str = 'json'
    seed: int = 0
    out: str = None


class LorentzSimGroup(click.Group):
    """
    Group that maps exceptions onto the exit code contract.
    """
    def main(self, args = None, prog_name = None, complete_var = None, **extra):
        extra['standalone_mode'] = False
        try:
            result = super().main(args, prog_name, complete_var, **extra)
        except click.exceptions.Abort:
            _report('aborted', 'aborted')
            sys.exit(1)
        except click.ClickException as exc:
            _report('usage_error', exc.format_message())
            sys.exit(1)
        except exceptions.LorentzSimError as exc:
            click.echo(serializers.dumps(exc.as_dict()), err = True, nl = False)
            sys.exit(exc.exit_code)
        except OSError as exc:
            _report('io_error', str(exc))
            sys.exit(1)
        sys.exit(result if isinstance(result, int) else 0)


def _report(code, message):
    click.echo(serializers.dumps(dict(error = code, message = message)), err = True, nl = False)


def _positive(ctx, param, value):
    if value is not None and not value > 0:
        raise click.BadParameter('must be positive')
    return value


def _vector(size):
    def callback(ctx, param, value):
        if value is None:
            return None
        try:
            values = [float(v) for v in value.split(',')]
        except ValueError:
            raise click.BadParameter('expected {} comma separated numbers'.format(size))
        if len(values) != size:
            raise click.BadParameter('expected {} comma separated numbers'.format(size))
        return np.array(values)
    return callback


def _emit(config, text):
    if config.out:
        serializers.write_text(config.out, text)
    else:
        click.echo(text, nl = False)


def _emit_curve(config, curve):
    if config.output_format == 'csv':
        _emit(config, serializers.curve_to_csv(curve))
    else:
        _emit(config, serializers.dumps(serializers.curve_to_dict(curve)))


def _sphere(curve):
    tol = setting_or_default(None, 'SPHERE_TOLERANCE')
    radius = inner(curve.points, curve.points)
    for sphere in UnitSphere:
        if np.all(np.abs(radius - sphere.radius_sign) <= tol):
            return sphere.value
    return None


@click.group(cls = LorentzSimGroup)
@click.option('--step', type = float, callback = _positive, help = 'Integration step in spherical arc length.')
@click.option('--tol-lightlike', type = float, callback = _positive, help = 'Lightlike band for tangents and normals.')
@click.option('--tol-curvature', type = float, callback = _positive, help = 'Curvature floor.')
@click.option('--match-threshold', type = float, callback = _positive, help = 'Largest p-shape distance for a match.')
@click.option('--format', 'output_format', type = click.Choice(['json', 'csv']), default = 'json', show_default = True)
@click.option('--seed', type = int, default = 0, show_default = True, help = 'Seed for random p-similarities.')
@click.option('--out', type = click.Path(dir_okay = False, writable = True), help = 'Output file, standard output by default.')
@click.option('-v', '--verbose', count = True, help = 'Log more; repeat for debug output.')
@click.version_option(package_name = 'lorentz-similarity')
@click.pass_context
def cli(ctx, step, tol_lightlike, tol_curvature, match_threshold, output_format, seed, out, verbose):
    """
    Similarity invariants of non-lightlike curves in Minkowski 3-space.

    Curves are read from JSON or CSV files, or sampled from built-in curves given
    as example://NAME?a=..&b=..&start=..&stop=..&n=.. URIs.
    """
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(
        level = level,
        stream = click.get_text_stream('stderr'),
        format = '%(levelname)s %(name)s: %(message)s',
        force = True
    )
    ctx.obj = CliConfig(step, tol_lightlike, tol_curvature, match_threshold, output_format, seed, out)


@cli.command()
@click.argument('curve')
@click.option('--method', type = click.Choice(['frenet', 'derivatives']), default = 'frenet', show_default = True)
@click.option('--frenet', 'frenet_out', type = click.Path(dir_okay = False, writable = True), help = 'Also write the Frenet apparatus as CSV.')
@click.pass_obj
def analyze(config, curve, method, frenet_out):
    """
    Compute the Frenet apparatus and p-shape of CURVE.

    With --format json the p-shape profile is written, with --format csv the
    Frenet apparatus.
    """
    samples = serializers.read_curve(curve)
    fd = frenet_apparatus(samples, config.curvature_floor, config.lightlike_tol)
    if frenet_out:
        serializers.write_text(frenet_out, serializers.frenet_to_csv(fd))
    if config.output_format == 'csv':
        _emit(config, serializers.frenet_to_csv(fd))
        return
    if method == 'frenet':
        profile = pshape_from_frenet(fd)
    else:
        profile = pshape_from_derivatives(samples, tol = config.lightlike_tol)
    data = dict(
        profile.to_dict(),
        character = 'timelike' if fd.eps1 < 0 else 'spacelike',
        sphere = _sphere(samples),
        torsion = 'determinant',
        convention = _convention(fd)
    )
    _emit(config, serializers.dumps(data))


def _convention(fd):
    # Which reading of the torsion the frame satisfies, see frenet_residual
    if len(fd) <= 2 * RESIDUAL_TRIM:
        return None
    return frenet_residual(fd).convention


@cli.command()
@click.argument('pshape', type = click.Path(exists = True, dir_okay = False))
@click.option('--case', 'causal_case', type = click.Choice([c.value for c in CausalCase]), help = 'Causal case, taken from the p-shape file by default.')
@click.option('--frame', type = click.Path(exists = True, dir_okay = False), help = 'Initial frame JSON.')
@click.option('--b', 'weight', type = float, default = 1.0, show_default = True, callback = _positive, help = 'Scale of the curve.')
@click.option('--verify', is_flag = True, help = 'Re-analyze the result and print the p-shape residual.')
@click.pass_obj
def reconstruct(config, pshape, causal_case, frame, weight, verify):
    """
    Build a curve with the p-shape in PSHAPE.
    """
    profile = serializers.read_profile(pshape)
    spec = PShapeSpec.from_profile(profile)
    if causal_case:
        spec = PShapeSpec(
            spec.kappa_tilde, spec.tau_tilde, spec.sigma_range, causal_case, spec.dkappa, spec.rho
        )
    init = serializers.read_frame(frame) if frame else standard_frame(spec.causal_case)
    curve = reconstruct_curve(spec, init, weight, config.step)
    if verify:
        fd = frenet_apparatus(curve, config.curvature_floor, config.lightlike_tol)
        residual = pshape_distance(pshape_from_frenet(fd), profile).direct
        click.echo('p-shape residual: {}'.format(serializers.format_float(residual)), err = True)
    _emit_curve(config, curve)


@cli.command()
@click.argument('curve_a')
@click.argument('curve_b')
@click.pass_obj
def match(config, curve_a, curve_b):
    """
    Estimate the p-similarity mapping CURVE_A onto CURVE_B.
    """
    result = estimate_similarity(
        serializers.read_curve(curve_a),
        serializers.read_curve(curve_b),
        config.match_threshold,
        config.curvature_floor,
        config.lightlike_tol
    )
    _emit(config, serializers.dumps(result.to_dict()))


def _similarity(config, mu, q, b, random):
    if random:
        return random_psimilarity(config.seed)
    return PSimilarity.from_parameters(
        mu,
        np.array([1.0, 0.0, 0.0, 0.0]) if q is None else q,
        np.zeros(3) if b is None else b
    )


@cli.command()
@click.argument('curve')
@click.option('--mu', type = float, default = 1.0, show_default = True, help = 'Scale.')
@click.option('--q', callback = _vector(4), help = 'Split quaternion w,x,y,z.')
@click.option('--b', callback = _vector(3), help = 'Translation b0,b1,b2.')
@click.option('--random', is_flag = True, help = 'Use a random p-similarity drawn with --seed.')
@click.option('--similarity-out', type = click.Path(dir_okay = False, writable = True), help = 'Also write the p-similarity as JSON.')
@click.pass_obj
def transform(config, curve, mu, q, b, random, similarity_out):
    """
    Apply a p-similarity to CURVE.
    """
    if mu == 0:
        raise click.BadParameter('must be non-zero', param_hint = '--mu')
    f = _similarity(config, mu, q, b, random)
    if similarity_out:
        serializers.write_text(similarity_out, serializers.dumps(f.to_dict()))
    _emit_curve(config, transform_curve(serializers.read_curve(curve), f))


def _constant(text):
    name, sep, value = text.partition('=')
    if not sep:
        raise click.BadParameter('expected NAME=VALUE, got {!r}'.format(text))
    return name.strip(), value.strip()


@cli.command()
@click.argument('name', type = click.Choice(catalog_names()))
@click.option('-p', '--param', 'params', multiple = True, help = 'Constant as NAME=VALUE, e.g. -p a=1.')
@click.option('--sigma-range', callback = _vector(2), help = 'Parameter range start,stop.')
@click.option('--n', 'count', type = click.IntRange(min = 1), help = 'Number of samples.')
@click.pass_obj
def example(config, name, params, sigma_range, count):
    """
    Sample the built-in curve NAME.
    """
    constants = dict(_constant(p) for p in params)
    start, stop = (None, None) if sigma_range is None else sigma_range
    _emit_curve(config, builtin(name, **constants).sample(start, stop, count))


@cli.command()
@click.argument('curve_a')
@click.argument('curve_b')
@click.option('--similarity', type = click.Path(exists = True, dir_okay = False), help = 'p-similarity JSON, e.g. the output of match.')
@click.option('--mu', type = float, default = 1.0, show_default = True)
@click.option('--q', callback = _vector(4))
@click.option('--b', callback = _vector(3))
@click.pass_obj
def verify(config, curve_a, curve_b, similarity, mu, q, b):
    """
    Measure how well a p-similarity maps CURVE_A onto CURVE_B.
    """
    if similarity:
        f = PSimilarity.from_dict(serializers.read_json(similarity))
    else:
        f = _similarity(config, mu, q, b, False)
    residual = verify_match(
        serializers.read_curve(curve_a),
        serializers.read_curve(curve_b),
        f,
        config.curvature_floor,
        config.lightlike_tol
    )
    _emit(config, serializers.dumps(dict(residual = residual)))


def main():
    cli(prog_name = 'lorentzsim')
