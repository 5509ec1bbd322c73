"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class MHGError(Exception):
    """Base class for all library errors."""


class InvalidInput(MHGError, ValueError):
    """Structurally invalid input (bad lengths, bad parameter values)."""


class NonPositiveDistance(InvalidInput):
    def __init__(self, x: int, y: int, value: int):
        self.x, self.y, self.value = x, y, value
        super().__init__(f"distance d({x},{y}) = {value} is not a positive integer")


class TriangleViolation(InvalidInput):
    """The triangle inequality fails: d(x,z) > d(x,y) + d(y,z)."""

    def __init__(self, x: int, y: int, z: int, sides: tuple[int, int, int] | None = None):
        self.x, self.y, self.z = x, y, z
        self.sides = sides
        msg = f"triangle inequality fails on points ({x},{y},{z})"
        if sides is not None:
            msg += f" with distances d(x,y)={sides[0]}, d(y,z)={sides[1]}, d(x,z)={sides[2]}"
        super().__init__(msg)

    @property
    def witness(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


class EmptyRange(MHGError):
    """No magic parameter exists for the given sequence."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"empty magic range: {reason}")


class ResourceLimit(MHGError):
    """Type-count or wall-time budget exceeded during enumeration."""


class NotInClass(MHGError, ValueError):
    """Space is not a member of the bipartite antipodal diameter-3 age."""
