"""
Exact Laurent-polynomial arithmetic over arbitrary-precision integers.

Everything in this package is computed in a single internal variable ``s``
with ``q = s**2``.  Working in ``s`` keeps all quantum-group bookkeeping
integral: quantum integers [n] = (s^n - s^-n)/(s - s^-1), trace weights
s^(N+1-2i) and framing monomials all have integer s-exponents even when
their q-exponents would be half-integers.  A polynomial is *q-expressible*
when every s-exponent is even; results are converted to q on output when
that holds.

The module also provides reduced rational functions (needed for Hecke
idempotent coefficients, whose denominators are products of quantum
integers) and a tiny sparse-matrix type over these rings.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "SparseOperator",
    "ExactDivisionError",
    "exact_divide",
    "vanish_order_at_1",
    "mutant_product_polynomial",
    "S",
    "ONE",
    "ZERO",
]


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder.

    The offending remainder is attached as a witness.
    """

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class LaurentPoly:
    """A Laurent polynomial in ``s`` with integer coefficients.

    Stored as a map from integer exponent to nonzero integer coefficient;
    the canonical form never contains zero coefficients.  Instances are
    immutable and hashable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, v in items:
            if v:
                nv = c.get(e, 0) + v
                if nv:
                    c[e] = nv
                elif e in c:
                    del c[e]
        self._c = c
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def monomial(exp: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({exp: coeff} if coeff else {})

    @staticmethod
    def from_int(n: int) -> "LaurentPoly":
        return LaurentPoly({0: n} if n else {})

    @staticmethod
    def from_q(coeffs: Mapping[int, int]) -> "LaurentPoly":
        """Build from a map of q-exponents (each q-exponent doubles in s)."""
        return LaurentPoly({2 * e: v for e, v in coeffs.items()})

    # -- inspection ----------------------------------------------------

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == {0: 1}

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_unit(self) -> bool:
        """True when this is ±s^k, the units of Z[s, s^-1]."""
        return len(self._c) == 1 and abs(next(iter(self._c.values()))) == 1

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def is_q_expressible(self) -> bool:
        return all(e % 2 == 0 for e in self._c)

    def q_items(self) -> list[tuple[int, int]]:
        """Exponent/coefficient pairs in q.  Requires q-expressibility."""
        if not self.is_q_expressible():
            raise ValueError("polynomial has odd s-exponents; not a polynomial in q = s^2")
        return [(e // 2, v) for e, v in sorted(self._c.items())]

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            nv = c.get(e, 0) + v
            if nv:
                c[e] = nv
            elif e in c:
                del c[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e: -v for e, v in self._c.items()}
        out._hash = None
        return out

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._c, other._c
        if len(a) > len(b):
            a, b = b, a
        c: dict[int, int] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                nv = c.get(e, 0) + v1 * v2
                if nv:
                    c[e] = nv
                elif e in c:
                    del c[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        out._hash = None
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative powers only defined for unit monomials")
            e, v = next(iter(self._c.items()))
            return LaurentPoly.monomial(e * n, 1 if (v == 1 or n % 2 == 0) else -1)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by s^k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e + k: v for e, v in self._c.items()}
        out._hash = None
        return out

    def invert_s(self) -> "LaurentPoly":
        """Substitute s -> s^-1."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {-e: v for e, v in self._c.items()}
        out._hash = None
        return out

    def evaluate(self, s_value):
        """Evaluate at a numeric value of s (int, Fraction, mpz, ...)."""
        total = 0
        for e, v in self._c.items():
            if e >= 0:
                total += v * s_value ** e
            else:
                total += Fraction(v, s_value ** (-e)) if isinstance(s_value, int) else v * s_value ** e
        return total

    def evaluate_mod(self, s_value: int, p: int):
        """Evaluate at s = s_value in Z/p (s_value must be a unit mod p)."""
        inv = pow(s_value, p - 2, p)
        total = 0
        for e, v in self._c.items():
            base = s_value if e >= 0 else inv
            total = (total + v * pow(base, abs(e), p)) % p
        return total % p

    def derivative_q(self) -> "LaurentPoly":
        """d/dq of a q-expressible polynomial, again in the s-encoding."""
        return LaurentPoly({2 * (e - 1): c * e for e, c in self.q_items()})

    # -- text form -------------------------------------------------------

    def text(self) -> str:
        """Render like ``3*q^-2 + q + 5*q^3`` (ascending exponents).

        Uses q when all exponents are even, otherwise s (with a leading
        marker handled by the caller; this just switches the variable name).
        """
        if self.is_zero():
            return "0"
        in_q = self.is_q_expressible()
        var = "q" if in_q else "s"
        pairs = self.q_items() if in_q else list(self.items())
        parts = []
        for e, v in pairs:
            if e == 0:
                term = str(abs(v))
            else:
                mag = abs(v)
                head = "" if mag == 1 else f"{mag}*"
                term = f"{head}{var}" if e == 1 else f"{head}{var}^{e}"
            if not parts:
                parts.append(term if v > 0 else "-" + term)
            else:
                parts.append(("+ " if v > 0 else "- ") + term)
        return " ".join(parts)

    @staticmethod
    def parse(text: str) -> "LaurentPoly":
        """Parse the ``text()`` format (either variable, any term order)."""
        text = text.strip()
        if text in ("0", ""):
            return ZERO
        coeffs: dict[int, int] = {}
        # Split into signed terms; '-' directly after '^' belongs to an
        # exponent, not a term boundary.
        chunks: list[str] = []
        current = ""
        prev_nonspace = ""
        for ch in text:
            if ch in "+-" and prev_nonspace != "^" and current.strip():
                chunks.append(current)
                current = "" if ch == "+" else "-"
            else:
                current += ch
            if not ch.isspace():
                prev_nonspace = ch
        if current.strip():
            chunks.append(current)
        for chunk in chunks:
            chunk = chunk.strip()
            if not chunk:
                continue
            sign = 1
            if chunk.startswith("-"):
                sign = -1
                chunk = chunk[1:].strip()
            var = "q" if "q" in chunk else ("s" if "s" in chunk else None)
            if var is None:
                e, v = 0, int(chunk)
            else:
                head, _, tail = chunk.partition(var)
                v = int(head.rstrip("* ")) if head.strip(" *") else 1
                e = int(tail[1:]) if tail.startswith("^") else (1 if tail == "" else int(tail))
            scale = 2 if var == "q" else 1
            e *= scale
            coeffs[e] = coeffs.get(e, 0) + sign * v
        return LaurentPoly(coeffs)

    # -- protocol ----------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly({self.text()!r})"


def _coerce(x) -> "LaurentPoly":
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.from_int(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
S = LaurentPoly({1: 1})
Q = LaurentPoly({2: 1})


def quantum_integer(n: int) -> LaurentPoly:
    """[n] = s^(n-1) + s^(n-3) + ... + s^(1-n)."""
    if n < 0:
        return -quantum_integer(-n)
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})


def exact_divide(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Quotient p/d when d divides p exactly in Z[s, s^-1].

    Raises ExactDivisionError (with the remainder as witness) otherwise.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    # Normalize to ordinary polynomials: strip the minimal exponents.
    dp = sorted(p._c.items())
    dd = sorted(d._c.items())
    shift = dp[0][0] - dd[0][0]
    num = {e - dp[0][0]: v for e, v in dp}
    den = {e - dd[0][0]: v for e, v in dd}
    den_deg = max(den)
    den_lead = den[den_deg]
    quot: dict[int, int] = {}
    rem = dict(num)
    while rem:
        deg = max(rem)
        if deg < den_deg:
            break
        lead = rem[deg]
        if lead % den_lead:
            break
        qc = lead // den_lead
        qe = deg - den_deg
        quot[qe] = qc
        for e, v in den.items():
            ne = e + qe
            nv = rem.get(ne, 0) - qc * v
            if nv:
                rem[ne] = nv
            elif ne in rem:
                del rem[ne]
    if rem:
        witness = LaurentPoly({e + dp[0][0]: v for e, v in rem.items()})
        raise ExactDivisionError("inexact division", remainder=witness)
    return LaurentPoly({e + shift: v for e, v in quot.items()})


ONE_MINUS_Q = ONE - Q


def vanish_order_at_1(p: LaurentPoly) -> int | float:
    """Largest m with (1-q)^m dividing p, for q-expressible p.

    Returns math.inf for the zero polynomial; raises on odd s-exponents.
    """
    if p.is_zero():
        return math.inf
    if not p.is_q_expressible():
        raise ValueError("vanish order at q=1 requires a polynomial in q = s^2")
    order = 0
    while True:
        # (1-q) | p  iff  p(1) == 0; division keeps everything integral.
        if sum(v for _, v in p.items()) != 0:
            return order
        p = exact_divide(p, ONE_MINUS_Q)
        order += 1


def _poly_q(coeffs: dict[int, int]) -> LaurentPoly:
    return LaurentPoly.from_q(coeffs)


def mutant_product_polynomial() -> LaurentPoly:
    """Expanded product form of the colored-sl(4) mutant quotient.

    This is the factored polynomial recorded for the quotient
    ``(Q_Kg(q) - Q_Kh(q)) / Q_O(q)`` of the (2,1)-colored sl(4) invariants
    of the mutant pretzel pair Kg = P(3,3,-3,-2), Kh = P(3,-3,3,-2); it is
    divisible by (1-q)^11 and by no higher power.  Entered as its twelve
    factors and expanded exactly.
    """
    factors = [
        _poly_q({8: 1}),                                     # q^8
        _poly_q({0: -1, 1: 1}) ** 11,                        # (-1+q)^11
        _poly_q({0: 1, 1: 1}) ** 11,                         # (1+q)^11
        _poly_q({0: 1, 2: 1}) ** 3,                          # (1+q^2)^3
        _poly_q({0: 1, 1: -1, 2: 1}) ** 3,                   # (1-q+q^2)^3
        _poly_q({0: 1, 1: 1, 2: 1}) ** 3,                    # (1+q+q^2)^3
        _poly_q({0: 1, 4: 1}) ** 2,                          # (1+q^4)^2
        _poly_q({0: 1, 2: -1, 4: 1}),                        # 1-q^2+q^4
        _poly_q({i: (-1) ** i for i in range(7)}) ** 2,      # (1-q+...+q^6)^2
        _poly_q({i: 1 for i in range(7)}) ** 2,              # (1+q+...+q^6)^2
        _poly_q({0: 1, 8: 1}),                               # 1+q^8
        _poly_q({2 * i: (-1) ** i for i in range(7)}),       # 1-q^2+...+q^12
    ]
    out = ONE
    for f in factors:
        out = out * f
    return out


class RationalFunction:
    """A reduced fraction of Laurent polynomials.

    Canonical form: gcd(num, den) is a unit, the denominator has minimal
    exponent 0 and positive leading coefficient, and integer content is
    moved into the numerator.  Equality of canonical forms is therefore
    literal equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly | int, den: LaurentPoly | int = 1):
        num = _coerce(num)
        den = _coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        num, den = _reduce_fraction(num, den)
        self.num, self.den = num, den

    @staticmethod
    def from_poly(p: LaurentPoly) -> "RationalFunction":
        return RationalFunction(p, ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> LaurentPoly:
        if not self.den.is_one():
            raise ExactDivisionError("rational function is not polynomial", remainder=self.den)
        return self.num

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_rf(other) + (-self)

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_one():
            return f"RationalFunction({self.num.text()!r})"
        return f"RationalFunction({self.num.text()!r} / {self.den.text()!r})"


def _coerce_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (LaurentPoly, int)):
        return RationalFunction(x, 1)
    return NotImplemented


def _content(p: LaurentPoly) -> int:
    g = 0
    for _, v in p.items():
        g = math.gcd(g, v)
    return g or 1


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd in Q[s] lifted back to a primitive integer polynomial."""
    fa = _to_frac_list(a)
    fb = _to_frac_list(b)
    while fb:
        fa, fb = fb, _frac_mod(fa, fb)
    return _from_frac_list(fa)


def _to_frac_list(p: LaurentPoly) -> list[Fraction]:
    if p.is_zero():
        return []
    items = sorted(p._c.items())
    lo = items[0][0]
    deg = items[-1][0] - lo
    out = [Fraction(0)] * (deg + 1)
    for e, v in items:
        out[e - lo] = Fraction(v)
    return out


def _frac_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1] / b[-1]
        offset = len(a) - 1 - db
        for i, bv in enumerate(b):
            a[offset + i] -= factor * bv
        while a and a[-1] == 0:
            a.pop()
    return a


def _from_frac_list(f: list[Fraction]) -> LaurentPoly:
    if not f:
        return ZERO
    denom = 1
    for x in f:
        denom = denom * x.denominator // math.gcd(denom, x.denominator)
    ints = [int(x * denom) for x in f]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    g = g or 1
    return LaurentPoly({e: v // g for e, v in enumerate(ints) if v})


def _reduce_fraction(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    g = _poly_gcd(num, den)
    if not g.is_one():
        num = exact_divide_frac(num, g)
        den = exact_divide_frac(den, g)
    # Clear rational content between num and den.
    cn, cd = _content(num), _content(den)
    g = math.gcd(cn, cd)
    if g > 1:
        num = LaurentPoly({e: v // g for e, v in num.items()})
        den = LaurentPoly({e: v // g for e, v in den.items()})
    # Denominator normal form: min exponent zero, positive leading coeff.
    k = den.min_exp()
    if k:
        den = den.shift(-k)
        num = num.shift(-k)
    if den.coeff(den.max_exp()) < 0:
        den, num = -den, -num
    return num, den


def exact_divide_frac(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Exact division where the quotient is known to be integral up to
    content; used internally by fraction reduction (gcd is primitive)."""
    fa, fb = _to_frac_list(p), _to_frac_list(d)
    out: list[Fraction] = [Fraction(0)] * (len(fa) - len(fb) + 1)
    a = list(fa)
    db = len(fb) - 1
    while a and len(a) - 1 >= db:
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1] / fb[-1]
        offset = len(a) - 1 - db
        out[offset] = factor
        for i, bv in enumerate(fb):
            a[offset + i] -= factor * bv
        while a and a[-1] == 0:
            a.pop()
    if a:
        raise ExactDivisionError("inexact division in fraction reduction", remainder=p)
    shift = p.min_exp() - d.min_exp()
    denom = 1
    for x in out:
        denom = denom * x.denominator // math.gcd(denom, x.denominator)
    if denom != 1:
        raise ExactDivisionError("non-integral quotient in fraction reduction", remainder=p)
    return LaurentPoly({e + shift: int(v) for e, v in enumerate(out) if v})


class SparseOperator:
    """A sparse matrix over LaurentPoly/RationalFunction entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], object] = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i},{j}) outside {rows}x{cols}")
                if not _is_zero_entry(v):
                    self.entries[(i, j)] = v

    def __getitem__(self, ij):
        return self.entries.get(ij, ZERO)

    def compose(self, other: "SparseOperator") -> "SparseOperator":
        """self @ other (apply other first)."""
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in composition")
        by_row: dict[int, list[tuple[int, object]]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        out: dict[tuple[int, int], object] = {}
        for (i, k), v in self.entries.items():
            for j, w in by_row.get(k, ()):
                key = (i, j)
                prev = out.get(key)
                out[key] = v * w if prev is None else prev + v * w
        return SparseOperator(self.rows, other.cols, out)

    def __eq__(self, other):
        if not isinstance(other, SparseOperator):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        keys = set(self.entries) | set(other.entries)
        return all(_entries_equal(self[k], other[k]) for k in keys)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    @staticmethod
    def identity(n: int) -> "SparseOperator":
        return SparseOperator(n, n, {(i, i): ONE for i in range(n)})

    def __repr__(self):
        return f"SparseOperator({self.rows}x{self.cols}, {len(self.entries)} entries)"


def _is_zero_entry(v) -> bool:
    if isinstance(v, LaurentPoly):
        return v.is_zero()
    if isinstance(v, RationalFunction):
        return v.is_zero()
    return v == 0


def _entries_equal(a, b) -> bool:
    if isinstance(a, RationalFunction) or isinstance(b, RationalFunction):
        return _coerce_rf(a) == _coerce_rf(b)
    return _coerce(a) == _coerce(b)
