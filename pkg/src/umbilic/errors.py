"""Exception hierarchy. Every failure mode of the pipeline has its own class so the
CLI can map domain errors to exit code 2 without string matching."""


class UmbilicError(Exception):
    """Base class for all errors raised by this package."""


class OutOfChart(UmbilicError):
    pass


class DegenerateMetric(UmbilicError):
    pass


class StencilOutOfDomain(UmbilicError):
    pass


class NotSpacelike(UmbilicError):
    pass


class DegenerateInducedMetric(NotSpacelike):
    pass


class FrameDegeneracy(UmbilicError):
    pass


class FrameBranchCut(UmbilicError):
    pass


class NotNormal(UmbilicError):
    pass


class NotOrthoUmbilical(UmbilicError):
    pass


class NotConformallyFlat(UmbilicError):
    pass


class NotSpaceForm(UmbilicError):
    pass


class SurfaceNotOrthogonal(UmbilicError):
    pass


class ConfigError(UmbilicError):
    pass
