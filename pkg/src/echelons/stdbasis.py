"""Scope-respecting S-pair enlargement of a finite generator system, and
membership up to a degree.

:func:`enlarge` follows the basic loop literally (no reduction of the
S-combinations).  :func:`enlarge_reduced` divides every admissible
S-combination by the current system before inserting it.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .division import DivisionResult, echelon_divide
from .echelon import EchelonPresentation, ScopedGenerator, in_translate
from .orders import MonomialOrder, Term, initial_term
from .series import Exponent, Series, add, monomial_mul

log = logging.getLogger(__name__)

DEFAULT_MAX_ROUNDS = 10000


def default_max_rounds() -> int:
    return int(os.environ.get("ECHELON_MAX_ROUNDS", DEFAULT_MAX_ROUNDS))


class InadmissibleTargetError(ValueError):
    pass


# exit reasons
COVERED = "covered"
SATURATED = "saturated"
DEGREE_CAP = "degree_cap"
MAX_ROUNDS = "max_rounds"


def minimal_relation(ti: Term, tj: Term, order: MonomialOrder) -> Tuple[Term, Term]:
    """Terms ``(m_i, m_j)`` with ``m_i*t_i + m_j*t_j == 0``.

    With ``gamma = lcm`` of the two exponents, the element whose initial
    monomial is larger under ``order`` (the second one on ties) gets the
    multiplier ``-x^(gamma - alpha)``; the other one gets
    ``(e_large/e_small) * x^(gamma - alpha)``.
    """
    gamma = tuple(max(a, b) for a, b in zip(ti.exp, tj.exp))
    ui = tuple(g - a for g, a in zip(gamma, ti.exp))
    uj = tuple(g - a for g, a in zip(gamma, tj.exp))
    if order.key(ti.exp) > order.key(tj.exp):
        return Term(Fraction(-1), ui), Term(ti.coeff / tj.coeff, uj)
    return Term(tj.coeff / ti.coeff, ui), Term(Fraction(-1), uj)


@dataclass(frozen=True)
class SPair:
    i: int
    j: int
    m_i: Term
    m_j: Term
    admissible: bool
    lcm: Exponent


def _supported_on(e: Exponent, s: int) -> bool:
    return not any(e[s:])


def make_pair(F: List[ScopedGenerator], i: int, j: int, order: MonomialOrder) -> SPair:
    ti = initial_term(F[i].series, order)
    tj = initial_term(F[j].series, order)
    mi, mj = minimal_relation(ti, tj, order)
    ok = _supported_on(mi.exp, F[i].scope) and _supported_on(mj.exp, F[j].scope)
    lcm = tuple(max(a, b) for a, b in zip(ti.exp, tj.exp))
    return SPair(i, j, mi, mj, ok, lcm)


def s_combination(
    F: List[ScopedGenerator], i: int, j: int, order: MonomialOrder
) -> Optional[Tuple[Series, int]]:
    """``m_i f_i + m_j f_j`` with scope ``min(s_i, s_j)``, or ``None`` when the
    minimal relation violates a scope."""
    pair = make_pair(F, i, j, order)
    if not pair.admissible:
        return None
    return _combine(F, pair), min(F[i].scope, F[j].scope)


def _combine(F, pair: SPair) -> Series:
    a = monomial_mul(F[pair.i].series, pair.m_i.exp, pair.m_i.coeff)
    b = monomial_mul(F[pair.j].series, pair.m_j.exp, pair.m_j.coeff)
    return add(a, b)


@dataclass
class TraceEntry:
    round: int
    pair: Tuple[int, int]
    outcome: str  # inadmissible | zero | duplicate | beyond_cap | inserted
    lcm: Optional[Exponent] = None
    new_index: Optional[int] = None
    scope: Optional[int] = None
    initial: Optional[Exponent] = None
    raw_initial: Optional[Exponent] = None
    raw_scope: Optional[int] = None
    extra_index: Optional[int] = None  # raw element kept alongside its reduction

    def to_json(self) -> dict:
        d = {"round": self.round, "pair": list(self.pair), "outcome": self.outcome}
        for k in ("lcm", "new_index", "scope", "initial", "raw_initial", "raw_scope", "extra_index"):
            v = getattr(self, k)
            if v is not None:
                d[k] = list(v) if isinstance(v, tuple) else v
        return d


@dataclass
class EnlargementState:
    F: List[ScopedGenerator]
    order: MonomialOrder
    ell: int
    ell1: int
    status: str = ""
    rounds: int = 0
    trace: List[TraceEntry] = field(default_factory=list)
    target: Optional[Exponent] = None
    degree_cap: Optional[int] = None

    @property
    def covered(self) -> bool:
        return self.status == COVERED

    @property
    def determinate(self) -> bool:
        return self.status != MAX_ROUNDS

    def presentation(self, base: EchelonPresentation) -> EchelonPresentation:
        return base.with_generators(self.F)

    def covering_element(self, a: Exponent) -> Optional[int]:
        for k, g in enumerate(self.F):
            t = initial_term(g.series, self.order)
            if t is not None and in_translate(a, t.exp, g.scope):
                return k
        return None


def _same_series(a: Series, b: Series) -> bool:
    return a.agrees_with(b)


def _insert_allowed(F, g: Series, scope: int) -> bool:
    # skip g unless it is new or arrives with a strictly larger scope
    equal_scopes = [h.scope for h in F if _same_series(h.series, g)]
    return not equal_scopes or max(equal_scopes) < scope


def enlarge(
    p: EchelonPresentation,
    target: Optional[Exponent] = None,
    degree_cap: Optional[int] = None,
    max_rounds: Optional[int] = None,
) -> EnlargementState:
    """Unreduced enlargement loop: pairs with one index new since the last
    round, scope-violating pairs discarded, new elements with scope
    ``min(s_i, s_j)``."""
    return _run(p, target, degree_cap, max_rounds, reduce=False)


def enlarge_reduced(
    p: EchelonPresentation,
    target: Optional[Exponent] = None,
    degree_cap: Optional[int] = None,
    max_rounds: Optional[int] = None,
    keep_raw: bool = True,
) -> EnlargementState:
    """Enlargement where each S-combination is divided by the current system.

    The reduced element carries the least scope among the pair and the
    generators used in the division.  When that scope is smaller than the
    pair's own scope and ``keep_raw`` is set, the unreduced combination is
    inserted as well with the pair scope, so that no scope-multiple of its
    initial monomial is lost.
    """
    return _run(p, target, degree_cap, max_rounds, reduce=True, keep_raw=keep_raw)


def _run(p, target, degree_cap, max_rounds, reduce, keep_raw=True) -> EnlargementState:
    order = p.order
    if max_rounds is None:
        max_rounds = default_max_rounds()
    if target is not None:
        target = tuple(target)
        if len(target) != p.nvars:
            raise InadmissibleTargetError(f"target {target} has wrong length")
    F = list(p.generators)
    if not F and (target is None or sum(target) == 0):
        raise InadmissibleTargetError("empty generator system")
    for k, g in enumerate(F):
        if g.series.is_zero():
            raise ValueError(f"generator {k} is zero")

    st = EnlargementState(F=F, order=order, ell=len(F), ell1=0, target=target, degree_cap=degree_cap)
    capped = False

    def covered() -> bool:
        return target is not None and st.covering_element(target) is not None

    while st.ell1 < st.ell and not covered():
        if st.rounds >= max_rounds:
            st.status = MAX_ROUNDS
            log.info("enlargement stopped after %d rounds", st.rounds)
            return st
        st.rounds += 1
        pairs = [(i, j) for j in range(st.ell) for i in range(j) if j >= st.ell1]
        pairs.sort()
        st.ell1 = st.ell
        for i, j in pairs:
            pair = make_pair(F, i, j, order)
            entry = TraceEntry(st.rounds, (i, j), "", lcm=pair.lcm)
            st.trace.append(entry)
            if not pair.admissible:
                entry.outcome = "inadmissible"
                continue
            if degree_cap is not None and sum(pair.lcm) > degree_cap:
                entry.outcome = "beyond_cap"
                capped = True
                continue
            g = _combine(F, pair)
            scope = min(F[i].scope, F[j].scope)
            raw, raw_scope = g, scope
            if reduce and not g.is_zero():
                res = echelon_divide(g, p.with_generators(F), scope=scope)
                g = res.remainder
                scope = res.remainder_scope if res.remainder_scope is not None else scope
                entry.raw_initial = _init(raw, order)
                entry.raw_scope = raw_scope
                if keep_raw and scope < raw_scope and _insert_allowed(F, raw, raw_scope):
                    _append(st, raw, raw_scope)
                    entry.extra_index = st.ell - 1
            if g.is_zero():
                entry.outcome = "zero"
                continue
            init = _init(g, order)
            if order.key(init) <= order.key(pair.lcm):
                raise AssertionError(f"S-combination of {i},{j} did not ascend: {init} vs {pair.lcm}")
            if degree_cap is not None and sum(init) > degree_cap and order.satisfies_sharp():
                entry.outcome = "beyond_cap"
                entry.initial = init
                capped = True
                continue
            if not _insert_allowed(F, g, scope):
                entry.outcome = "duplicate"
                entry.initial = init
                continue
            _append(st, g, scope)
            entry.outcome = "inserted"
            entry.new_index = st.ell - 1
            entry.scope = scope
            entry.initial = init

    if covered():
        st.status = COVERED
    elif capped:
        st.status = DEGREE_CAP
    else:
        st.status = SATURATED
    return st


def _init(g: Series, order) -> Exponent:
    return initial_term(g, order).exp


def _append(st: EnlargementState, g: Series, scope: int) -> None:
    st.F.append(ScopedGenerator(g, scope))
    st.ell += 1


@dataclass(frozen=True)
class MembershipResult:
    member: Optional[bool]  # None: indeterminate (round limit or precision)
    witness: DivisionResult
    state: EnlargementState


def membership_mod_degree(
    f: Series, p: EchelonPresentation, d: int, max_rounds: Optional[int] = None
) -> MembershipResult:
    """Whether ``f`` lies in the echelon modulo terms of degree ``> d``.

    Under an order that is not graded a generator may have tail terms of
    lower degree than its initial term, and the division then pulls unknown
    terms above the working precision back down by one degree per step.  In
    that case the answer is only trusted when ``f`` and the generators are
    known at least one degree beyond ``d``; otherwise it is reported as
    indeterminate.
    """
    if d > f.prec:
        raise ValueError(f"degree {d} exceeds input precision {f.prec}")
    st = enlarge_reduced(p, degree_cap=d, max_rounds=max_rounds)
    basis = p.with_generators(st.F)
    res = echelon_divide(f, basis)
    residue = res.remainder.truncate(d)
    trusted = st.determinate and (p.order.graded or min(f.prec, p.prec) > d)
    if not trusted:
        member = None
    else:
        member = residue.is_zero()
    return MembershipResult(member, res, st)
