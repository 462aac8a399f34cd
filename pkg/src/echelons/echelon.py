"""Finitary echelons: generators with assigned scopes, the region of initial
exponents they cover, and its partition into slices."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .orders import MonomialOrder, Term, initial_term
from .series import DimensionError, Exponent, Series


class DegenerateInputError(ValueError):
    """A generator is the zero series."""


@dataclass(frozen=True)
class ScopedGenerator:
    series: Series
    scope: int

    def __post_init__(self):
        if not 0 <= self.scope <= self.series.nvars:
            raise ValueError(f"scope {self.scope} outside 0..{self.series.nvars}")


@dataclass(frozen=True)
class EchelonPresentation:
    nvars: int
    generators: Tuple[ScopedGenerator, ...]
    order: MonomialOrder
    names: Tuple[str, ...] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.order.nvars != self.nvars:
            raise DimensionError(f"order on {self.order.nvars} variables, echelon on {self.nvars}")
        for g in self.generators:
            if g.series.nvars != self.nvars:
                raise DimensionError("generator with wrong number of variables")
        if self.names is None:
            object.__setattr__(self, "names", tuple(_names(self.nvars)))
        else:
            object.__setattr__(self, "names", tuple(self.names))

    @property
    def prec(self) -> int:
        return min(g.series.prec for g in self.generators)

    def with_generators(self, gens: Iterable[ScopedGenerator]) -> "EchelonPresentation":
        return EchelonPresentation(self.nvars, tuple(gens), self.order, self.names)

    def initial_terms(self) -> List[Optional[Term]]:
        return [initial_term(g.series, self.order) for g in self.generators]


def _names(n):
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def in_translate(a: Exponent, base: Exponent, scope: int) -> bool:
    """Whether ``a`` lies in ``base + (N^scope x 0^(n-scope))``."""
    for i, (u, v) in enumerate(zip(a, base)):
        if i < scope:
            if u < v:
                return False
        elif u != v:
            return False
    return True


@dataclass(frozen=True)
class Slice:
    base: Exponent
    scope: int
    owner: int  # index of the generator in the original presentation


@dataclass(frozen=True)
class RegionPartition:
    """Slice ``i`` is ``base_i + (N^s_i x 0)`` minus all earlier slices."""

    nvars: int
    slices: Tuple[Slice, ...]

    def classify(self, a: Exponent) -> Optional[int]:
        """Index of the slice containing ``a``, or ``None`` if ``a`` is in the
        complement."""
        for k, sl in enumerate(self.slices):
            if in_translate(a, sl.base, sl.scope):
                return k
        return None

    def owner_of(self, a: Exponent) -> Optional[int]:
        k = self.classify(a)
        return None if k is None else self.slices[k].owner

    def in_region(self, a: Exponent) -> bool:
        return self.classify(a) is not None


COMPLEMENT = None


def build_partition(p: EchelonPresentation) -> RegionPartition:
    """Slices ordered by decreasing scope, ties kept in generator order."""
    bases = []
    for i, g in enumerate(p.generators):
        t = initial_term(g.series, p.order)
        if t is None:
            raise DegenerateInputError(f"generator {i} is zero")
        bases.append(t.exp)
    idx = sorted(range(len(bases)), key=lambda i: -p.generators[i].scope)
    return RegionPartition(
        p.nvars, tuple(Slice(bases[i], p.generators[i].scope, i) for i in idx)
    )


def classify_exponent(rp: RegionPartition, a: Exponent) -> Optional[int]:
    return rp.classify(tuple(a))


def exponents_up_to(nvars: int, d: int) -> Iterator[Exponent]:
    """All exponents of total degree ``<= d``, in graded order."""
    for total in range(d + 1):
        yield from _compositions(nvars, total)


def _compositions(n: int, total: int) -> Iterator[Exponent]:
    if n == 0:
        if total == 0:
            yield ()
        return
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest


def scope_monomials(nvars: int, scope: int, d: int) -> Iterator[Exponent]:
    """Exponents supported on the first ``scope`` variables, degree ``<= d``."""
    for e in exponents_up_to(scope, d):
        yield e + (0,) * (nvars - scope)


def initial_region_to_degree(
    p: EchelonPresentation, basis: Sequence[ScopedGenerator], d: int
) -> Set[Exponent]:
    """Exponents of degree ``<= d`` covered by the scope-translates of the
    initial exponents of ``basis`` (under ``p.order``)."""
    translates = []
    for g in basis:
        t = initial_term(g.series, p.order)
        if t is None:
            raise DegenerateInputError("basis element is zero")
        translates.append((t.exp, g.scope))
    return {
        a
        for a in exponents_up_to(p.nvars, d)
        if any(in_translate(a, b, s) for b, s in translates)
    }


def ascii_staircase(region: Set[Exponent], nvars: int, d: int, fixed=None) -> str:
    """Plain-text picture of a 2D section of a region (first two variables on
    the axes, remaining exponents fixed)."""
    fixed = tuple(fixed or (0,) * max(nvars - 2, 0))
    rows = []
    for j in range(d, -1, -1):
        row = []
        for i in range(d + 1):
            a = (i, j) + fixed if nvars >= 2 else (i,)
            row.append("#" if a in region else ".")
        rows.append("".join(row))
    return "\n".join(rows)
