"""Exception types raised across the package."""


class CStarError(Exception):
    """Base class for every error raised by this package."""


class NonPrimitiveVector(CStarError, ValueError):
    pass


class InvalidCone(CStarError, ValueError):
    pass


class InvalidFan(CStarError, ValueError):
    pass


class ConeNotInFan(CStarError, KeyError):
    pass


class TorusFactor(CStarError, ValueError):
    pass


class NotCartier(CStarError, ValueError):
    pass


class NotCompactCurve(CStarError, ValueError):
    pass


class NotSmoothCone(CStarError, ValueError):
    pass


class NoLimit(CStarError):
    """The flow of the one-parameter subgroup leaves the support of the fan."""


class InvalidType(CStarError, ValueError):
    pass


class RankMismatch(CStarError, ValueError):
    pass


class NotCayley(CStarError, ValueError):
    pass


class InadmissibleType(CStarError, ValueError):
    pass


class InvalidNode(CStarError, ValueError):
    pass


class NodeInMarking(CStarError, ValueError):
    pass


class CertificationFailure(CStarError):
    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        self.detail = detail
        super().__init__(f"{clause}: {detail}" if detail else clause)
