"""
Exceptions raised by ``lorentzsim``.

Every exception carries a machine readable ``code`` and the process exit code the
command line interface uses for it. Extra context for error reports is kept in
``details``, which must be JSON serializable.
"""


class LorentzSimError(Exception):
    """
    Base class for all errors raised by this package.
    """
    code = 'error'
    exit_code = 1

    def __init__(self, message = None, **details):
        super().__init__(message or self.default_message())
        self.details = details

    def default_message(self):
        return self.code.replace('_', ' ')

    def as_dict(self):
        """
        Returns a JSON serializable description of the error.
        """
        return dict(self.details, error = self.code, message = str(self))


class InputError(LorentzSimError, ValueError):
    """
    Raised when an input is malformed or outside the domain of an operation.
    """
    code = 'invalid_input'
    exit_code = 1


class GeometricError(LorentzSimError):
    """
    Raised when a well-formed input violates a geometric precondition.
    """
    code = 'geometric_error'
    exit_code = 2


class PShapeMismatch(LorentzSimError):
    """
    Raised when two curves are matched but their p-shapes differ.
    """
    code = 'pshape_mismatch'
    exit_code = 3

    def __init__(self, distance, message = None, **details):
        super().__init__(
            message or 'p-shapes differ by {!r}'.format(distance),
            distance = float(distance),
            **details
        )
        self.distance = float(distance)


class CurveFormatError(InputError):
    code = 'curve_format'


class InvalidProfile(InputError):
    code = 'invalid_profile'


class UnknownExample(InputError):
    code = 'unknown_example'


class InvalidConstants(InputError):
    code = 'invalid_constants'


class NotUnitTimelike(InputError):
    code = 'not_unit_timelike'


class DegenerateQuaternion(InputError):
    code = 'degenerate_quaternion'


class GridTooCoarse(InputError):
    code = 'grid_too_coarse'


class NullInput(GeometricError):
    code = 'null_input'


class LightlikeTangent(GeometricError):
    code = 'lightlike_tangent'


class LightlikeNormal(GeometricError):
    code = 'lightlike_normal'


class VanishingCurvature(GeometricError):
    code = 'vanishing_curvature'


class VanishingTorsion(GeometricError):
    code = 'vanishing_torsion'


class CharacterChange(GeometricError):
    code = 'character_change'


class NotOnSphere(GeometricError):
    code = 'not_on_sphere'


class NotUnitSpeed(GeometricError):
    code = 'not_unit_speed'


class DegenerateOsculating(GeometricError):
    code = 'degenerate_osculating'


class FrameDegenerate(GeometricError):
    code = 'frame_degenerate'


class CaseMismatch(GeometricError):
    code = 'case_mismatch'


class NoOverlap(GeometricError):
    code = 'no_overlap'


class CausalMismatch(GeometricError):
    code = 'causal_mismatch'


class QuaternionExtractionFailure(GeometricError):
    """
    Raised when a pseudo-orthogonal matrix cannot be written as ``r -> q r q^-1``.

    The matrix is kept so that callers can still use the map in matrix form.
    """
    code = 'quaternion_extraction_failure'

    def __init__(self, matrix, message = None):
        super().__init__(
            message or 'linear map is not in the identity component of O(1,2)',
            matrix = [[float(v) for v in row] for row in matrix]
        )
        self.matrix = matrix
