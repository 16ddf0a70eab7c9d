"""Surface types ``(g, n)``, disjoint unions and cutting bookkeeping."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import InvalidCut, NonHyperbolicType

SurfaceType = tuple[int, int]

# Classes of connected types whose completed curve complexes coincide.
EXCEPTIONAL_CLASSES: tuple[frozenset[SurfaceType], ...] = (
    frozenset({(2, 0), (0, 6)}),
    frozenset({(1, 2), (0, 5)}),
    frozenset({(1, 1), (0, 4)}),
)


def euler_excess(t: SurfaceType) -> int:
    g, n = t
    return 2 * g - 2 + n


def type_dimension(t: SurfaceType) -> int:
    g, n = t
    return 3 * g - 3 + n


@dataclass(frozen=True)
class SurfaceSpec:
    """A multiset of connected types, stored sorted.

    Punctures are unordered and carry no labels.  Pants ``(0, 3)`` are
    allowed and reported by :attr:`pants`.
    """

    components: tuple[SurfaceType, ...] = ()

    def __post_init__(self):
        comps = []
        for g, n in self.components:
            g, n = int(g), int(n)
            if g < 0 or n < 0:
                raise ValueError(f"genus and puncture count must be nonnegative, got ({g},{n})")
            comps.append((g, n))
        object.__setattr__(self, "components", tuple(sorted(comps)))

    @classmethod
    def of(cls, *types: SurfaceType) -> "SurfaceSpec":
        return cls(tuple(types))

    @classmethod
    def parse(cls, text: str) -> "SurfaceSpec":
        """Read ``"g,n(+g,n)*"``, e.g. ``"1,1+0,4"``; empty text is the empty surface."""
        text = text.strip()
        if not text:
            return cls()
        comps = []
        for part in text.split("+"):
            pieces = part.split(",")
            if len(pieces) != 2:
                raise ValueError(f"bad surface component {part!r}; expected 'g,n'")
            comps.append((int(pieces[0]), int(pieces[1])))
        return cls(tuple(comps))

    def __str__(self):
        return "+".join(f"{g},{n}" for g, n in self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @property
    def multiset(self) -> Counter:
        return Counter(self.components)

    @property
    def pants(self) -> tuple[SurfaceType, ...]:
        return tuple(t for t in self.components if t == (0, 3))


def _spec(s) -> SurfaceSpec:
    if isinstance(s, SurfaceSpec):
        return s
    if isinstance(s, str):
        return SurfaceSpec.parse(s)
    if isinstance(s, tuple) and len(s) == 2 and all(isinstance(x, int) for x in s):
        return SurfaceSpec((s,))
    return SurfaceSpec(tuple(s))


def is_hyperbolic(s) -> bool:
    return all(euler_excess(t) > 0 for t in _spec(s))


def modular_dimension(s) -> int:
    """Sum of ``3g - 3 + n`` over the components."""
    s = _spec(s)
    for t in s:
        if euler_excess(t) <= 0:
            raise NonHyperbolicType(f"component {t} is not hyperbolic")
    return sum(type_dimension(t) for t in s)


def disjoint_union(a, b) -> SurfaceSpec:
    return SurfaceSpec(_spec(a).components + _spec(b).components)


def cut_type(t: SurfaceType, kind: str = "nonseparating",
             pieces: tuple[SurfaceType, SurfaceType] | None = None) -> SurfaceSpec:
    """Type of the surface obtained by cutting ``t`` along one essential curve.

    ``kind`` is ``"nonseparating"`` or ``"separating"``; in the latter case
    ``pieces`` gives the two resulting types, each counting its new puncture.
    """
    g, n = t
    if euler_excess(t) <= 0:
        raise InvalidCut(f"{t} is not hyperbolic")
    if kind == "nonseparating":
        if g < 1:
            raise InvalidCut("a nonseparating cut needs genus at least 1")
        return SurfaceSpec(((g - 1, n + 2),))
    if kind != "separating":
        raise InvalidCut(f"unknown cut kind {kind!r}")
    if pieces is None:
        raise InvalidCut("a separating cut needs the two resulting types")
    (g1, n1), (g2, n2) = pieces
    if g1 + g2 != g or n1 + n2 != n + 2 or n1 < 1 or n2 < 1:
        raise InvalidCut(f"{pieces} is not a separating cut of {t}")
    if euler_excess((g1, n1)) <= 0 or euler_excess((g2, n2)) <= 0:
        raise InvalidCut(f"{pieces} has a non-hyperbolic piece")
    return SurfaceSpec(((g1, n1), (g2, n2)))


def separating_cuts(t: SurfaceType) -> list[tuple[SurfaceType, SurfaceType]]:
    g, n = t
    out = []
    for g1 in range(g + 1):
        for n1 in range(1, n + 2):
            a, b = (g1, n1), (g - g1, n + 2 - n1)
            if a <= b and euler_excess(a) > 0 and euler_excess(b) > 0:
                out.append((a, b))
    return out


def exceptional_partners(t: SurfaceType) -> list[SurfaceType]:
    t = (int(t[0]), int(t[1]))
    if euler_excess(t) <= 0:
        raise NonHyperbolicType(f"{t} is not hyperbolic")
    for cls in EXCEPTIONAL_CLASSES:
        if t in cls:
            return sorted(cls - {t})
    return []
