"""Exception types raised by qdnsim."""


class QDNError(ValueError):
    """Base class for every error raised by this package."""


class RankError(QDNError):
    pass


class ShapeError(QDNError):
    pass


class DetectorError(QDNError):
    pass


class NormalizationError(QDNError):
    pass


class SemiUnitarityError(QDNError):
    pass


class OverlapError(QDNError):
    pass


class DomainError(QDNError):
    pass
