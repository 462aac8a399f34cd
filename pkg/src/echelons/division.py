"""Echelon division of a series by scoped generators.

The quotients are built by term rewriting: the least unprocessed term of the
working series is either absorbed by the generator owning its slice or moved
to the remainder.  Every rewriting step only creates strictly larger terms,
so the loop terminates on the finite set of exponents of degree ``<= prec``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .echelon import EchelonPresentation, RegionPartition, build_partition
from .orders import initial_term
from .series import Exponent, Series, add, mul


@dataclass(frozen=True)
class DivisionResult:
    quotients: Tuple[Series, ...]
    remainder: Series
    min_witness: Optional[Exponent]
    remainder_scope: Optional[int]
    prec: int

    def reconstruct(self, p: EchelonPresentation) -> Series:
        """``sum(a_i * f_i) + b`` at the result precision, quotients taken as
        exact polynomials."""
        total = self.remainder
        for a, g in zip(self.quotients, p.generators):
            if a:
                total = add(total, mul(a.with_prec(self.prec), g.series))
        return total.truncate(self.prec)


def echelon_divide(
    f: Series,
    p: EchelonPresentation,
    scope: Optional[int] = None,
    partition: Optional[RegionPartition] = None,
) -> DivisionResult:
    """Divide ``f`` by the generators of ``p``.

    ``scope`` is the assigned scope of ``f`` when it is known to lie in the
    echelon; it only affects ``remainder_scope``.
    """
    rp = partition or build_partition(p)
    gens = p.generators
    n = p.nvars
    prec = min([f.prec] + [g.series.prec for g in gens])
    key = p.order.key

    lead = []
    for g in gens:
        t = initial_term(g.series, p.order)
        lead.append(t)
    tails = [list(g.series.items()) for g in gens]

    work = {e: c for e, c in f.items() if sum(e) <= prec}
    heap = [(key(e), e) for e in work]
    heapq.heapify(heap)
    quot = [dict() for _ in gens]
    rem = {}
    witness = None

    while heap:
        _, t = heapq.heappop(heap)
        c = work.pop(t, None)
        if not c:
            continue
        owner = rp.owner_of(t)
        if owner is None:
            rem[t] = c
            continue
        lt = lead[owner]
        q = c / lt.coeff
        beta = tuple(u - v for u, v in zip(t, lt.exp))
        quot[owner][beta] = quot[owner].get(beta, 0) + q
        if witness is None:
            witness = t
        # work -= q * x^beta * f_owner
        for e, v in tails[owner]:
            s = tuple(u + w for u, w in zip(e, beta))
            if s == t or sum(s) > prec:
                continue
            old = work.get(s)
            new = (old or 0) - q * v
            if new:
                if old is None:
                    heapq.heappush(heap, (key(s), s))
                work[s] = new
            else:
                del work[s]

    quotients = []
    for i, g in enumerate(gens):
        qprec = max(prec - sum(lead[i].exp), 0)
        quotients.append(Series(n, qprec, {e: v for e, v in quot[i].items() if v}))
    used = [gens[i].scope for i, qd in enumerate(quot) if any(qd.values())]
    scopes = used + ([scope] if scope is not None else [])
    return DivisionResult(
        quotients=tuple(quotients),
        remainder=Series(n, prec, rem),
        min_witness=witness,
        remainder_scope=min(scopes) if scopes else None,
        prec=prec,
    )


def verify_star(result: DivisionResult, f: Series, p: EchelonPresentation) -> bool:
    """Check ``in(f - b) == min(in(a_i) * in(f_i))`` over nonzero quotients."""
    cands = []
    for a, g in zip(result.quotients, p.generators):
        ta = initial_term(a, p.order)
        if ta is None:
            continue
        tg = initial_term(g.series, p.order)
        cands.append(tuple(u + v for u, v in zip(ta.exp, tg.exp)))
    if not cands:
        return True
    m = min(cands, key=p.order.key)
    diff = add(f.truncate(result.prec), -result.remainder)
    t = initial_term(diff, p.order)
    return t is not None and t.exp == m


def check_supports(result: DivisionResult, p: EchelonPresentation, rp: RegionPartition = None) -> List[str]:
    """Violations of the scope and support constraints (empty when valid)."""
    rp = rp or build_partition(p)
    problems = []
    for i, (a, g) in enumerate(zip(result.quotients, p.generators)):
        if not a.uses_only_first(g.scope):
            problems.append(f"quotient {i} uses variables outside scope {g.scope}")
        alpha = initial_term(g.series, p.order).exp
        for e in a.exponents():
            s = tuple(u + v for u, v in zip(e, alpha))
            if rp.owner_of(s) != i:
                problems.append(f"quotient {i} term {e} lands outside its slice")
    for e in result.remainder.exponents():
        if rp.in_region(e):
            problems.append(f"remainder term {e} lies in the region")
    return problems
