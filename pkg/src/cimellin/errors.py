"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CimellinError(Exception):
    """Base class for every error raised by the toolkit."""


class DimensionError(CimellinError):
    pass


class SingularityError(CimellinError):
    def __init__(self, message: str = "matrix is singular", det: int = 0):
        super().__init__(message)
        self.det = det


class PlacementRuleError(CimellinError):
    """An auxiliary placement breaks one of the admissibility rules.

    ``rule`` is ``"a"`` (a variable loses every unmodified monomial) or
    ``"b"`` (a polynomial loses every unmodified monomial); ``index`` names
    the offending variable or polynomial (0-based).
    """

    def __init__(self, rule: str, index: int, message: str):
        super().__init__(f"placement rule {rule} violated at index {index}: {message}")
        self.rule = rule
        self.index = index


class ShapeError(CimellinError):
    pass


class DegeneracyError(CimellinError):
    pass


class NotSimpliciableError(CimellinError):
    pass


class StructuralError(CimellinError):
    pass


class RankError(CimellinError):
    pass


class MismatchError(CimellinError):
    pass


class WeightError(CimellinError):
    pass


class ConditionError(CimellinError):
    def __init__(self, condition: str, message: str):
        super().__init__(f"condition {condition} failed: {message}")
        self.condition = condition


class SamplingError(CimellinError):
    pass


class NoDegreeError(CimellinError):
    pass


class ParseError(CimellinError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


class UsageError(CimellinError):
    pass
