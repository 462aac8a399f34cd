"""Brute-force certification by exact linear algebra.

Truncated membership ``f = sum(a_i f_i) mod (degree > d)`` and the truncated
relation module are set up coefficientwise, with one unknown per
scope-monomial of degree ``<= d`` for every generator.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .echelon import EchelonPresentation, exponents_up_to, scope_monomials
from .linalg import nullspace, rref, solve
from .series import Exponent, Series


class PrecisionError(ValueError):
    """Inputs are not known to the requested degree."""


@dataclass(frozen=True)
class LinearSystem:
    labels: Tuple[Tuple[int, Exponent], ...]  # (generator index, exponent)
    rows: Tuple[Exponent, ...]  # one equation per exponent of degree <= d
    matrix: Tuple[Dict[int, Fraction], ...]
    degree: int


def build_system(p: EchelonPresentation, d: int, multiplier_degree: Optional[int] = None) -> LinearSystem:
    """``multiplier_degree`` bounds the degree of the multiplier unknowns
    (default ``d``)."""
    if d > p.prec:
        raise PrecisionError(f"degree {d} exceeds generator precision {p.prec}")
    rows = list(exponents_up_to(p.nvars, d))
    row_index = {e: k for k, e in enumerate(rows)}
    labels = []
    matrix: List[Dict[int, Fraction]] = [dict() for _ in rows]
    for i, g in enumerate(p.generators):
        gterms = [(e, c) for e, c in g.series.items()]
        for m in scope_monomials(p.nvars, g.scope, d if multiplier_degree is None else multiplier_degree):
            col = len(labels)
            labels.append((i, m))
            dm = sum(m)
            for e, c in gterms:
                if dm + sum(e) > d:
                    continue
                s = tuple(u + v for u, v in zip(e, m))
                matrix[row_index[s]][col] = c
    return LinearSystem(tuple(labels), tuple(rows), tuple(matrix), d)


@dataclass(frozen=True)
class MembershipCertificate:
    feasible: bool
    solution: Optional[Tuple[Series, ...]]


def oracle_membership(f: Series, p: EchelonPresentation, d: int) -> MembershipCertificate:
    if d > f.prec:
        raise PrecisionError(f"degree {d} exceeds input precision {f.prec}")
    sys_ = build_system(p, d)
    rhs = [f.coeff(e) for e in sys_.rows]
    sol = solve(sys_.matrix, rhs, len(sys_.labels))
    if sol is None:
        return MembershipCertificate(False, None)
    quot = [dict() for _ in p.generators]
    for col, v in sol.items():
        i, m = sys_.labels[col]
        quot[i][m] = v
    return MembershipCertificate(True, tuple(Series(p.nvars, d, q) for q in quot))


@dataclass(frozen=True)
class RelationReport:
    degree: int
    multiplier_degree: int
    kernel_dim: int
    min_order: Optional[int]  # None: kernel is trivial
    threshold: int
    census: Dict[int, int]  # order -> number of independent relations of that order

    @property
    def genuine(self) -> bool:
        """A relation below the artifact threshold was found."""
        return self.min_order is not None and self.min_order < self.threshold


def artifact_threshold(p: EchelonPresentation, d: int) -> int:
    # a monomial multiplier of degree d + 1 - ord(f_i) kills f_i modulo degree > d
    return d + 1 - max(g.series.order() for g in p.generators)


def oracle_relation_order(
    p: EchelonPresentation, d: int, multiplier_degree: Optional[int] = None
) -> RelationReport:
    """Orders of the truncated relations ``sum(a_i f_i) = 0 mod (degree > d)``.

    The order of a relation is the least degree of a nonzero term among its
    entries.  ``census`` gives the dimension jumps of the kernel filtered by
    order.  With ``multiplier_degree`` below ``d`` the truncation can no
    longer absorb whole generator multiples, and the kernel of a direct sum
    empties once ``d`` is large enough.
    """
    sys_ = build_system(p, d, multiplier_degree)
    ncols = len(sys_.labels)
    kern = nullspace(sys_.matrix, ncols)
    # pivot on low-degree columns first so each reduced row starts at its order
    by_degree = sorted(range(ncols), key=lambda c: (sum(sys_.labels[c][1]), c))
    red, pivots = rref(kern, ncols, by_degree)
    census = Counter(sum(sys_.labels[c][1]) for c in pivots)
    return RelationReport(
        degree=d,
        multiplier_degree=d if multiplier_degree is None else multiplier_degree,
        kernel_dim=len(kern),
        min_order=min(census) if census else None,
        threshold=artifact_threshold(p, d),
        census=dict(sorted(census.items())),
    )
