"""Sparse multivariate Laurent polynomials with exact rational coefficients.

Exponent vectors are packed into a single Python integer, 16 bits per
variable in balanced (signed-digit) form.  Monomial multiplication is then
integer addition, and integer order on keys is a translation-invariant lex
order, which is what exact division needs.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Number = Union[int, Fraction]

NAMED_VARS = ("q", "c", "a", "b", "x", "y", "t", "s", "nu", "alpha", "z", "d")
SEQ_FAMILIES = ("a", "b", "c", "d", "lam")
SEQ_DEPTH = 16

VARS: Tuple[str, ...] = NAMED_VARS + tuple(
    f"{fam}_{i}" for fam in SEQ_FAMILIES for i in range(SEQ_DEPTH)
)
VAR_INDEX: Dict[str, int] = {v: i for i, v in enumerate(VARS)}
NVARS = len(VARS)
_RVARS = VARS[::-1]

_W = 16
_HALF = 1 << (_W - 1)
_MASK = (1 << _W) - 1
_SHIFT = tuple(1 << (_W * i) for i in range(NVARS))
# Exponents must stay strictly inside (-_LIMIT, _LIMIT).
_LIMIT = 1 << 13
_OFF_LIMIT = sum(_LIMIT << (_W * i) for i in range(NVARS))
_HIGH_BITS = sum(((_MASK ^ ((1 << 14) - 1)) << (_W * i)) for i in range(NVARS))
_OFF_HALF = sum(_HALF << (_W * i) for i in range(NVARS))

ONE_KEY = 0


class ExponentOverflow(OverflowError):
    pass


def seqvar(family: str, i: int) -> str:
    """Name of the i-th symbol of an indexed sequence family, e.g. ``a_2``."""
    if family not in SEQ_FAMILIES or not 0 <= i < SEQ_DEPTH:
        raise KeyError(f"no sequence symbol {family}_{i}")
    return f"{family}_{i}"


def encode(exps: Mapping[str, int]) -> int:
    key = 0
    for name, e in exps.items():
        if e == 0:
            continue
        if not -_LIMIT < e < _LIMIT:
            raise ExponentOverflow(f"exponent {e} of {name} out of range")
        key += e * _SHIFT[VAR_INDEX[name]]
    return key


def decode(key: int) -> Dict[str, int]:
    out = {}
    i = 0
    while key:
        e = ((key + _HALF) & _MASK) - _HALF
        if e:
            out[VARS[i]] = e
        key = (key - e) >> _W
        i += 1
    return out


def _decode_vec(key: int) -> list:
    vec = [0] * NVARS
    i = 0
    while key:
        e = ((key + _HALF) & _MASK) - _HALF
        vec[i] = e
        key = (key - e) >> _W
        i += 1
    return vec


def field(key: int, idx: int) -> int:
    """Exponent of variable number ``idx`` in a packed key."""
    return (((key + _OFF_HALF) >> (_W * idx)) & _MASK) - _HALF


def _check_keys(keys: Iterable[int]) -> None:
    for k in keys:
        if (k + _OFF_LIMIT) & _HIGH_BITS:
            raise ExponentOverflow("exponent overflow in polynomial product")


def _norm_coeff(c: Number) -> Number:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div_coeff(a: Number, b: Number) -> Number:
    if type(a) is int and type(b) is int:
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return _norm_coeff(Fraction(a) / b)


class Poly:
    """Immutable sparse Laurent polynomial over the rationals."""

    __slots__ = ("terms", "_hash", "_bounds")

    def __init__(self, terms: Mapping[int, Number] | None = None):
        # Callers inside the package pass a fresh dict with no zero entries.
        self.terms: Dict[int, Number] = dict(terms) if terms else {}
        self._hash = None
        self._bounds = None

    @classmethod
    def _raw(cls, terms: Dict[int, Number]) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        p._bounds = None
        return p

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "Poly":
        c = _norm_coeff(c) if isinstance(c, Fraction) else c
        return cls._raw({ONE_KEY: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        return cls._raw({encode({name: power}): 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Number = 1) -> "Poly":
        if not coeff:
            return cls._raw({})
        return cls._raw({encode(exps): _norm_coeff(coeff) if isinstance(coeff, Fraction) else coeff})

    @classmethod
    def from_terms(cls, items: Iterable[Tuple[Mapping[str, int], Number]]) -> "Poly":
        d: Dict[int, Number] = {}
        for exps, c in items:
            k = encode(exps)
            d[k] = d.get(k, 0) + c
        return cls._raw({k: _norm_coeff(v) for k, v in d.items() if v})

    # basic predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_KEY in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> Number:
        return self.terms.get(ONE_KEY, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({ONE_KEY: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        raise TypeError(f"cannot use {type(other).__name__} as Poly")

    def __add__(self, other) -> "Poly":
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        other = Poly._coerce(other)
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        d = dict(big)
        for k, c in small.items():
            v = d.get(k, 0) + c
            if v:
                d[k] = v
            else:
                d.pop(k, None)
        return Poly._raw(d)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        other = Poly._coerce(other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            v = d.get(k, 0) - c
            if v:
                d[k] = v
            else:
                d.pop(k, None)
        return Poly._raw(d)

    def __rsub__(self, other) -> "Poly":
        return Poly._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw({})
            return Poly._raw({k: _norm_coeff(c * other) for k, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly._raw({})
        if len(a) > len(b):
            a, b = b, a
        if len(a) == 1:
            (k1, c1), = a.items()
            if k1 == ONE_KEY:
                d = {k: c * c1 for k, c in b.items()}
            else:
                d = {k + k1: c * c1 for k, c in b.items()}
                _check_keys(d)
            return Poly._raw(d)
        d: Dict[int, Number] = {}
        get = d.get
        bitems = list(b.items())
        for k1, c1 in a.items():
            for k2, c2 in bitems:
                k = k1 + k2
                d[k] = get(k, 0) + c1 * c2
        d = {k: v for k, v in d.items() if v}
        _check_keys(d)
        return Poly._raw(d)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Poly")
            (k, c), = self.terms.items()
            return Poly._raw({k * n: _norm_coeff(Fraction(1) / Fraction(c) ** (-n))})._checked()
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _checked(self) -> "Poly":
        _check_keys(self.terms)
        return self

    def scale(self, c: Number) -> "Poly":
        return self * c

    def mul_monomial(self, key: int, coeff: Number = 1) -> "Poly":
        d = {k + key: c * coeff for k, c in self.terms.items()}
        _check_keys(d)
        return Poly._raw(d)

    # structure ------------------------------------------------------------
    def variables(self) -> set:
        names = set()
        for k in self.terms:
            names.update(decode(k))
        return names

    def exponent_bounds(self) -> Dict[str, Tuple[int, int]]:
        """Per-variable (min, max) exponents over all terms (absent = 0)."""
        if not self.terms:
            return {}
        if self._bounds is not None:
            return dict(self._bounds)
        keys = list(self.terms)
        top = max(max(keys), -min(keys)).bit_length()
        out = {}
        for i in range(min(NVARS, top // _W + 2)):
            col = [field(k, i) for k in keys]
            lo, hi = min(col), max(col)
            if lo or hi:
                out[VARS[i]] = (lo, hi)
        self._bounds = out
        return dict(out)

    def degree(self, name: str) -> int:
        idx = VAR_INDEX[name]
        return max(field(k, idx) for k in self.terms) if self.terms else 0

    def low_degree(self, name: str) -> int:
        idx = VAR_INDEX[name]
        return min(field(k, idx) for k in self.terms) if self.terms else 0

    def coefficients_in(self, name: str) -> Dict[int, "Poly"]:
        """Split into {exponent of ``name``: coefficient Poly free of ``name``}."""
        idx = VAR_INDEX[name]
        shift = _SHIFT[idx]
        out: Dict[int, Dict[int, Number]] = {}
        for k, c in self.terms.items():
            e = field(k, idx)
            out.setdefault(e, {})[k - e * shift] = c
        return {e: Poly._raw(d) for e, d in out.items()}

    def monomial_content(self) -> int:
        """Key of the gcd monomial (per-variable minimum exponent)."""
        if not self.terms:
            return ONE_KEY
        bounds = self.exponent_bounds()
        return encode({v: lo for v, (lo, _) in bounds.items()})

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        g = 0
        m = 1
        for c in self.terms.values():
            if type(c) is int:
                g = gcd(g, c)
            else:
                g = gcd(g, c.numerator)
                m = lcm(m, c.denominator)
        return Fraction(g, m) if g else Fraction(0)

    def leading_key(self) -> int:
        return max(self.terms)

    def leading_coeff(self) -> Number:
        return self.terms[max(self.terms)]

    def primitive(self) -> Tuple[Fraction, int, "Poly"]:
        """Split into (scalar, monomial key, primitive part).

        The primitive part has integer coprime coefficients, every variable's
        minimum exponent is zero, and its sign is fixed: positive constant term
        when it has one, otherwise positive leading coefficient.
        """
        if not self.terms:
            raise ZeroDivisionError("zero-divisor")
        mkey = self.monomial_content()
        cont = self.content()
        if self.terms.get(mkey, 0):
            sign = 1 if self.terms[mkey] > 0 else -1
        else:
            sign = 1 if self.terms[max(self.terms)] > 0 else -1
        cont = cont * sign
        if cont.denominator == 1 and all(type(c) is int for c in self.terms.values()):
            n = cont.numerator
            d = {k - mkey: c // n for k, c in self.terms.items()}
        else:
            d = {k - mkey: _norm_coeff(Fraction(c) / cont) for k, c in self.terms.items()}
        return cont, mkey, Poly._raw(d)

    # division -------------------------------------------------------------
    def divexact(self, f: "Poly") -> "Poly | None":
        """Return self / f when f divides self in the Laurent ring, else None."""
        if not f.terms:
            raise ZeroDivisionError("zero-divisor")
        if not self.terms:
            return Poly._raw({})
        if len(f.terms) == 1:
            (k, c), = f.terms.items()
            return Poly._raw({kk - k: _div_coeff(cc, c) for kk, cc in self.terms.items()})
        if len(f.terms) > len(self.terms):
            return None
        nb = self.exponent_bounds()
        fb = f.exponent_bounds()
        box = {}
        for v in set(nb) | set(fb):
            nlo, nhi = nb.get(v, (0, 0))
            flo, fhi = fb.get(v, (0, 0))
            lo, hi = nlo - flo, nhi - fhi
            if lo > hi:
                return None
            box[VAR_INDEX[v]] = (lo, hi)
        box_items = list(box.items())

        lead = max(f.terms)
        lc = f.terms[lead]
        rest = [(k - lead, c) for k, c in f.terms.items() if k != lead]
        rem = dict(self.terms)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        quot: Dict[int, Number] = {}
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            k = -pop(heap)
            c = rem.pop(k, None)
            if c is None:
                continue
            qk = k - lead
            for idx, (lo, hi) in box_items:
                if not lo <= field(qk, idx) <= hi:
                    return None
            qc = _div_coeff(c, lc)
            quot[qk] = qc
            for dk, fc in rest:
                kk = k + dk
                old = rem.get(kk)
                if old is None:
                    rem[kk] = -qc * fc
                    push(heap, -kk)
                else:
                    v = old - qc * fc
                    if v:
                        rem[kk] = v
                    else:
                        del rem[kk]
        return Poly._raw(quot)

    # substitution / evaluation -------------------------------------------
    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        total = Fraction(0)
        for k, c in self.terms.items():
            term = Fraction(c)
            for name, e in decode(k).items():
                if name not in values:
                    raise KeyError(f"no value supplied for {name}")
                term *= Fraction(values[name]) ** e
            total += term
        return total

    def substitute(self, rules: Mapping[str, "Poly"]) -> "Poly":
        """Substitute Polys for variables.  Negative powers need monomial images."""
        if not rules:
            return self
        idxs = {}
        for v, p in rules.items():
            if not isinstance(p, (Poly, int, Fraction)):
                # e.g. a symbolic exponent such as q^nu
                raise ValueError("unsupported-substitution")
            idxs[VAR_INDEX[v]] = Poly._coerce(p)
        cache: Dict[Tuple[int, int], Poly] = {}
        out = Poly._raw({})
        acc: Dict[int, Number] = {}
        for k, c in self.terms.items():
            vec = _decode_vec(k)
            base_key = k
            factor = None
            for idx, img in idxs.items():
                e = vec[idx]
                if e:
                    base_key -= e * _SHIFT[idx]
                    pk = cache.get((idx, e))
                    if pk is None:
                        if e < 0 and not img.is_monomial():
                            raise ValueError("unsupported-substitution: negative power of non-monomial image")
                        pk = img ** e
                        cache[(idx, e)] = pk
                    factor = pk if factor is None else factor * pk
            if factor is None:
                acc[base_key] = acc.get(base_key, 0) + c
            else:
                out = out + factor.mul_monomial(base_key, c)
        if acc:
            out = out + Poly._raw({k: v for k, v in acc.items() if v})
        return out

    def map_exponent(self, name: str, scale: int) -> "Poly":
        """Replace ``name`` by ``name**scale`` (e.g. x -> x^2)."""
        idx = VAR_INDEX[name]
        shift = _SHIFT[idx]
        d = {}
        for k, c in self.terms.items():
            e = field(k, idx)
            d[k + (scale - 1) * e * shift] = c
        _check_keys(d)
        return Poly._raw(d)

    # rendering --------------------------------------------------------------
    def sorted_terms(self) -> list:
        """Terms in canonical order: total degree descending, then lex descending.

        Exponent vectors come back most significant variable first.
        """
        items = []
        for k, c in self.terms.items():
            vec = _decode_vec(k)[::-1]
            items.append((vec, c))
        items.sort(key=lambda vc: (sum(vc[0]), vc[0]), reverse=True)
        return items

    def canonical(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for vec, c in self.sorted_terms():
            factors = [str(c)]
            for i, e in enumerate(vec):
                if e:
                    factors.append(f"{_RVARS[i]}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def pretty(self, ascending: bool = True) -> str:
        if not self.terms:
            return "0"
        items = self.sorted_terms()
        if ascending:
            items.reverse()
        out = []
        for vec, c in items:
            mono = "*".join(
                _RVARS[i] if e == 1 else f"{_RVARS[i]}^{e}" for i, e in enumerate(vec) if e
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def latex(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for vec, c in reversed(self.sorted_terms()):
            mono = "".join(
                _latex_var(_RVARS[i]) + ("" if e == 1 else f"^{{{e}}}") for i, e in enumerate(vec) if e
            )
            mag = abs(c)
            if isinstance(mag, Fraction):
                coef = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            else:
                coef = str(mag)
            body = (mono if mag == 1 else coef + mono) if mono else coef
            sign = "-" if c < 0 else "+"
            out.append(body if not out and c > 0 else (f"{sign}{body}" if not out else f" {sign} {body}"))
        return "".join(out)

    def __repr__(self) -> str:
        return f"Poly({self.pretty()})"

    __str__ = canonical

    def iter_terms(self) -> Iterator[Tuple[Dict[str, int], Number]]:
        for k, c in self.terms.items():
            yield decode(k), c


def _latex_var(name: str) -> str:
    if name == "nu":
        return "\\nu "
    if name == "alpha":
        return "\\alpha "
    if "_" in name:
        fam, idx = name.split("_")
        fam = "\\lambda" if fam == "lam" else fam
        return f"{fam}_{{{idx}}}"
    return name


ZERO = Poly._raw({})
ONE = Poly._raw({ONE_KEY: 1})


def var(name: str) -> Poly:
    return Poly.var(name)
