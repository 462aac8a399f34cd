"""Sparse multivariate power series over Q, truncated at a total-degree precision.

A :class:`Series` is exact modulo all terms of total degree ``> prec``.
Arithmetic propagates the precision so that every result is again exact
up to its own ``prec``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping, Tuple, Union

Exponent = Tuple[int, ...]
Number = Union[int, Fraction]


class DimensionError(ValueError):
    """Operands live in rings with different numbers of variables."""


class DivisibilityError(ArithmeticError):
    """A term is not divisible by the requested monomial."""


def degree(e: Exponent) -> int:
    return sum(e)


def admin_key(e: Exponent):
    # graded lexicographic, used only for storage and serialization
    return (sum(e), e)


def parse_rational(s: Union[str, int, Fraction]) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise TypeError(f"rational must be a string, got {type(s).__name__}")
    s = s.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"decimal notation not accepted for exact rationals: {s!r}")
    return Fraction(s)


def format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Series:
    """Immutable truncated power series.

    ``terms`` maps exponent tuples to nonzero :class:`~fractions.Fraction`
    coefficients; exponents of total degree above ``prec`` are dropped on
    construction.
    """

    __slots__ = ("_nvars", "_prec", "_terms", "_hash")

    def __init__(self, nvars: int, prec: int, terms: Mapping[Exponent, Number] = ()):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        if prec < 0:
            raise ValueError("prec must be non-negative")
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(int(v) for v in e)
            if len(e) != nvars:
                raise DimensionError(f"exponent {e} has length {len(e)}, expected {nvars}")
            if any(v < 0 for v in e):
                raise ValueError(f"negative exponent {e}")
            if sum(e) > prec:
                continue
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._nvars = nvars
        self._prec = prec
        self._terms = dict(sorted(clean.items(), key=lambda kv: admin_key(kv[0])))
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, prec: int, terms: dict) -> "Series":
        # trusted constructor: terms already clean and within prec
        s = object.__new__(cls)
        s._nvars = nvars
        s._prec = prec
        s._terms = dict(sorted(terms.items(), key=lambda kv: admin_key(kv[0])))
        s._hash = None
        return s

    # constructors

    @classmethod
    def zero(cls, nvars: int, prec: int) -> "Series":
        return cls._raw(nvars, prec, {})

    @classmethod
    def constant(cls, nvars: int, prec: int, c: Number = 1) -> "Series":
        return cls(nvars, prec, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, nvars: int, prec: int, exp: Exponent, c: Number = 1) -> "Series":
        return cls(nvars, prec, {tuple(exp): c})

    @classmethod
    def variable(cls, nvars: int, prec: int, index: int) -> "Series":
        e = [0] * nvars
        e[index] = 1
        return cls(nvars, prec, {tuple(e): 1})

    # accessors

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def prec(self) -> int:
        return self._prec

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def exponents(self) -> Iterator[Exponent]:
        return iter(self._terms)

    def coeff(self, e: Exponent) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def order(self) -> int:
        """Least total degree of a nonzero term; ``prec`` for the zero series."""
        if not self._terms:
            return self._prec
        return min(sum(e) for e in self._terms)

    def uses_only_first(self, s: int) -> bool:
        return all(not any(e[s:]) for e in self._terms)

    # comparisons

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self._nvars, self._prec, self._terms) == (other._nvars, other._prec, other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, self._prec, tuple(self._terms.items())))
        return self._hash

    def agrees_with(self, other: "Series", upto: int = None) -> bool:
        """Equality of coefficients up to total degree ``upto``
        (default: the smaller precision)."""
        _check(self, other)
        if upto is None:
            upto = min(self._prec, other._prec)
        return self.truncate(upto)._terms == other.truncate(upto)._terms

    def __repr__(self) -> str:
        return f"Series(nvars={self._nvars}, prec={self._prec}, {self.to_str()})"

    def to_str(self, names: Iterable[str] = None) -> str:
        names = list(names) if names is not None else _default_names(self._nvars)
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = format_rational(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # precision

    def truncate(self, prec: int) -> "Series":
        if prec >= self._prec:
            return self
        if prec < 0:
            raise ValueError("prec must be non-negative")
        return Series._raw(
            self._nvars, prec, {e: c for e, c in self._terms.items() if sum(e) <= prec}
        )

    def with_prec(self, prec: int) -> "Series":
        """Reinterpret the stored terms at another precision.

        Raising the precision asserts that the stored polynomial is exact
        up to the new degree (used for polynomials known exactly).
        """
        if prec <= self._prec:
            return self.truncate(prec)
        return Series._raw(self._nvars, prec, self._terms)

    # arithmetic

    def __neg__(self) -> "Series":
        return Series._raw(self._nvars, self._prec, {e: -c for e, c in self._terms.items()})

    def __add__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        return add(self, -other)

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return NotImplemented


def _default_names(n: int):
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def _check(f: Series, g: Series) -> None:
    if f.nvars != g.nvars:
        raise DimensionError(f"series in {f.nvars} and {g.nvars} variables")


def add(f: Series, g: Series) -> Series:
    _check(f, g)
    prec = min(f.prec, g.prec)
    out = {e: c for e, c in f.items() if sum(e) <= prec}
    for e, c in g.items():
        if sum(e) > prec:
            continue
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return Series._raw(f.nvars, prec, out)


def mul(f: Series, g: Series) -> Series:
    _check(f, g)
    prec = min(f.prec + g.order(), g.prec + f.order())
    out: dict = {}
    gitems = list(g.items())
    for e1, c1 in f.items():
        d1 = sum(e1)
        for e2, c2 in gitems:
            if d1 + sum(e2) > prec:
                continue
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return Series._raw(f.nvars, prec, out)


def scale(f: Series, c: Number) -> Series:
    c = Fraction(c)
    if not c:
        return Series.zero(f.nvars, f.prec)
    return Series._raw(f.nvars, f.prec, {e: v * c for e, v in f.items()})


def monomial_mul(f: Series, exp: Exponent, c: Number = 1) -> Series:
    """Multiply by the term ``c * x**exp``; the precision rises by ``deg(exp)``."""
    exp = tuple(exp)
    if len(exp) != f.nvars:
        raise DimensionError(f"exponent {exp} has length {len(exp)}, expected {f.nvars}")
    c = Fraction(c)
    prec = f.prec + sum(exp)
    if not c:
        return Series.zero(f.nvars, prec)
    return Series._raw(
        f.nvars,
        prec,
        {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in f.items()},
    )


def divide_by_monomial(f: Series, exp: Exponent) -> Series:
    """Exact division by ``x**exp``; the precision drops by ``deg(exp)``."""
    exp = tuple(exp)
    if len(exp) != f.nvars:
        raise DimensionError(f"exponent {exp} has length {len(exp)}, expected {f.nvars}")
    d = sum(exp)
    if d > f.prec:
        raise DivisibilityError(f"precision {f.prec} too small to divide by degree {d}")
    out = {}
    for e, c in f.items():
        q = tuple(a - b for a, b in zip(e, exp))
        if any(v < 0 for v in q):
            raise DivisibilityError(f"term with exponent {e} is not divisible by {exp}")
        out[q] = c
    return Series._raw(f.nvars, f.prec - d, out)


def exp_series(nvars: int, var_index: int, prec: int) -> Series:
    """``exp`` of one variable, summed up to degree ``prec``."""
    if not 0 <= var_index < nvars:
        raise IndexError(f"variable index {var_index} out of range for {nvars} variables")
    terms = {}
    for k in range(prec + 1):
        e = [0] * nvars
        e[var_index] = k
        terms[tuple(e)] = Fraction(1, factorial(k))
    return Series._raw(nvars, prec, terms)


def linear_combination(pairs: Iterable[Tuple[Series, Series]]) -> Series:
    """Sum of products ``a * f`` over the given pairs."""
    total = None
    for a, f in pairs:
        t = mul(a, f)
        total = t if total is None else add(total, t)
    if total is None:
        raise ValueError("empty linear combination")
    return total


# serialization


def series_to_json(f: Series, names: Iterable[str]) -> dict:
    names = list(names)
    if len(names) != f.nvars:
        raise DimensionError(f"{len(names)} variable names for a series in {f.nvars} variables")
    return {
        "vars": names,
        "prec": f.prec,
        "terms": [{"e": list(e), "c": format_rational(c)} for e, c in f.items()],
    }


def series_from_json(doc: Mapping) -> Tuple[Series, list]:
    names = list(doc["vars"])
    terms = {}
    for t in doc["terms"]:
        e = tuple(t["e"])
        if e in terms:
            raise ValueError(f"duplicate exponent {list(e)}")
        terms[e] = parse_rational(t["c"])
    return Series(len(names), int(doc["prec"]), terms), names
