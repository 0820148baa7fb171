"""Design specifications: an ordered list of variables and a chain of
inequality links between consecutive variables."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import Distribution

__all__ = ["Relation", "ConstraintLink", "DesignSpec", "SpecError", "BoundsError"]


class SpecError(ValueError):
    """Raised when a design specification violates a structural rule."""


class BoundsError(SpecError):
    """Raised when the marginal bounds of a link make the constraint infeasible."""


class Relation(str, enum.Enum):
    LESS = "<"
    GREATER = ">"

    @classmethod
    def parse(cls, value) -> "Relation":
        if isinstance(value, cls):
            return value
        aliases = {"<": cls.LESS, "less": cls.LESS, "lt": cls.LESS, "increasing": cls.LESS,
                   ">": cls.GREATER, "greater": cls.GREATER, "gt": cls.GREATER,
                   "decreasing": cls.GREATER}
        try:
            return aliases[str(value).strip().lower()]
        except KeyError:
            raise SpecError(f"unknown relation {value!r}; use '<' or '>'") from None

    def holds(self, left, right):
        """Row-wise strict comparison ``left < right`` (or ``>``)."""
        left = np.asarray(left)
        right = np.asarray(right)
        return left < right if self is Relation.LESS else left > right


@dataclass(frozen=True)
class ConstraintLink:
    """Constraint ``x[left] <rel> x[right]`` with ``right == left + 1``.

    Indices are zero-based column positions.
    """

    left: int
    right: int
    relation: Relation = Relation.LESS

    def __post_init__(self):
        object.__setattr__(self, "relation", Relation.parse(self.relation))
        if self.left < 0:
            raise SpecError("link indices must be non-negative")
        if self.right != self.left + 1:
            raise SpecError("links must join consecutive variables "
                            f"(got {self.left + 1} -> {self.right + 1})")


def _bounds_message(left: Distribution, right: Distribution, rel: Relation) -> str | None:
    bl, hl = left.support()
    br, hr = right.support()
    if not (math.isfinite(bl) and math.isfinite(hl) and math.isfinite(br) and math.isfinite(hr)):
        return "constraint requires bounded marginals"
    if rel is Relation.LESS:
        if bl > br:
            return f"b_left <= b_right violated: {bl} > {br}"
        if hl > hr:
            return f"h_left <= h_right violated: {hl} > {hr}"
    else:
        if bl < br:
            return f"b_left >= b_right violated: {bl} < {br}"
        if hl < hr:
            return f"h_left >= h_right violated: {hl} < {hr}"
    return None


@dataclass(frozen=True)
class DesignSpec:
    """Ordered variables plus the inequality links between neighbours.

    Links are validated at construction: names must be unique, every link
    must join consecutive columns, and the marginals of each linked pair
    must have bounds ordered in the direction of the relation.
    """

    variables: tuple
    links: tuple = ()
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        variables = tuple(self.variables)
        if not variables:
            raise SpecError("a design needs at least one variable")
        named = []
        for j, dist in enumerate(variables):
            if not isinstance(dist, Distribution):
                raise SpecError(f"variables[{j}] is not a Distribution")
            if not dist.name:
                dist = Distribution(dist.kind, dist.params, f"x{j + 1}")
            named.append(dist)
        names = [d.name for d in named]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise SpecError(f"variable names must be unique; duplicated: {dupes}")
        links = tuple(sorted(self.links, key=lambda l: l.left))
        seen = set()
        for link in links:
            if link.right >= len(named):
                raise SpecError(f"link {link.left + 1}->{link.right + 1} refers to a "
                                f"missing variable (p={len(named)})")
            if link.left in seen:
                raise SpecError(f"duplicate link on variables {link.left + 1}->{link.right + 1}")
            seen.add(link.left)
            msg = _bounds_message(named[link.left], named[link.right], link.relation)
            if msg is not None:
                raise BoundsError(f"link {names[link.left]} {link.relation.value} "
                                  f"{names[link.right]}: {msg}")
        object.__setattr__(self, "variables", tuple(named))
        object.__setattr__(self, "links", links)
        object.__setattr__(self, "metadata", dict(self.metadata))

    @classmethod
    def chain(cls, variables, relation=Relation.LESS, metadata=None) -> "DesignSpec":
        """Spec where every consecutive pair is linked by ``relation``."""
        links = [ConstraintLink(j, j + 1, relation) for j in range(len(variables) - 1)]
        return cls(tuple(variables), tuple(links), metadata or {})

    @property
    def p(self) -> int:
        return len(self.variables)

    @property
    def names(self) -> list[str]:
        return [d.name for d in self.variables]

    def link_into(self, j: int) -> ConstraintLink | None:
        """The link whose right-hand side is column ``j``, if any."""
        for link in self.links:
            if link.right == j:
                return link
        return None
