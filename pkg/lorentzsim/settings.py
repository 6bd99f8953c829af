import os

from django.conf import settings

from settings_object.appsettings import SettingsObject, Setting


# Outside of a Django project there is nothing to read the settings from, so
# configure an empty settings object and let every setting fall back to its default
if not settings.configured and 'DJANGO_SETTINGS_MODULE' not in os.environ:
    settings.configure()


class SimilaritySettings(SettingsObject):
    """
    Settings for the ``lorentzsim`` package.

    Inside a Django project, values are taken from the ``LORENTZSIM`` dict in the
    project settings. Every library function that uses one of these values also
    accepts it as a keyword argument, which takes precedence.
    """
    #: Band within which a vector is treated as lightlike,
    #: relative to 1 + its squared Euclidean norm
    LIGHTLIKE_TOLERANCE = Setting(default = 1e-10)
    #: The same band, used for tangents and principal normals of sampled curves
    #: These carry finite difference noise, so the band is wider
    TANGENT_LIGHTLIKE_TOLERANCE = Setting(default = 1e-8)
    #: Curvatures at or below this value are treated as zero
    CURVATURE_FLOOR = Setting(default = 1e-10)
    #: Torsions below this value (in absolute value) are treated as zero
    TORSION_FLOOR = Setting(default = 1e-10)
    #: Minimum Lorentzian norm of the cross product of the first two derivatives
    OSCULATING_FLOOR = Setting(default = 1e-10)
    #: Maximum p-shape distance for two curves to be considered a match
    MATCH_THRESHOLD = Setting(default = 1e-3)

    #: Integration step, in spherical arc length, for the Sabban system
    STEP = Setting(default = 1e-3)
    #: Number of integration steps between pseudo-Gram-Schmidt re-projections
    REPROJECT_EVERY = Setting(default = 100)
    #: Frame drift above which an integration is abandoned
    DRIFT_LIMIT = Setting(default = 1e-6)

    #: Allowed deviation of <c, c> from ±1 for samples of a spherical curve
    SPHERE_TOLERANCE = Setting(default = 1e-6)
    #: Allowed deviation of the speed of a spherical curve from 1
    UNIT_SPEED_TOLERANCE = Setting(default = 1e-4)

    #: Allowed deviation of N(q) from 1 for the rotation part of a p-similarity
    QUATERNION_TOLERANCE = Setting(default = 1e-8)
    #: Deviation of N(q) from 1 above which normalizing a user supplied q is logged
    QUATERNION_WARN_TOLERANCE = Setting(default = 1e-6)

    #: Default number of samples when sampling a built-in curve
    SAMPLES = Setting(default = 2001)


app_settings = SimilaritySettings('LORENTZSIM')


def setting_or_default(value, name):
    """
    Returns the given value, or the named setting if the value is ``None``.
    """
    return getattr(app_settings, name) if value is None else value
