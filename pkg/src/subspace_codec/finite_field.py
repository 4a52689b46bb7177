"""Exact arithmetic in GF(p^e) and in towers GF(q^m) over GF(q).

Elements are encoded as non-negative integers whose base-p digits are the
coefficient vector, little-endian in the residue of x. A field built over a
non-prime base keeps its modulus over that base, so the digits of an element
group into ``degree`` blocks of base-field digits.
"""

from __future__ import annotations

import builtins
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    InvalidModulus,
    LengthMismatch,
    NonPrimeCharacteristic,
    ParamViolation,
    ReducibleModulus,
)

FIELD_ORDER_CAP = 1 << 20

# full add/mul tables up to this order, log/exp tables up to _LOG_TABLE_MAX
_FULL_TABLE_MAX = 256
_LOG_TABLE_MAX = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, e)`` with ``q == p**e``; raises if impossible."""
    if q < 2:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return p, e


class FieldSpec:
    """A finite field, either GF(p) or a simple extension of another field.

    Args:
        p: characteristic.
        degree: degree over the immediate base (1 for a prime field).
        modulus: little-endian coefficients of the monic defining polynomial
            over the immediate base (encoded base elements).
        base: the field being extended, ``None`` for GF(p).

    Instances are immutable and compare by value. Use :func:`field_create`,
    :func:`extension_field` or :func:`galois_field` instead of calling the
    constructor directly: it performs no validation.
    """

    def __init__(self, p: int, degree: int, modulus: Sequence[int],
                 base: FieldSpec | None = None):
        self.p = p
        self.base = base
        self.degree = degree
        self.modulus = tuple(int(c) for c in modulus)
        self.order = p if base is None else base.order ** degree
        self.e = 1 if base is None else base.e * degree
        self._key = (p, None if base is None else base._key, degree, self.modulus)
        self._hash = hash(self._key)
        self._log: np.ndarray | None = None
        self._exp: np.ndarray | None = None
        self._add_tab: np.ndarray | None = None
        self._mul_tab: np.ndarray | None = None
        self._tables_built = False

    # -- identity ---------------------------------------------------------

    @property
    def is_prime_field(self) -> bool:
        return self.base is None

    @property
    def prime_field(self) -> FieldSpec:
        f = self
        while f.base is not None:
            f = f.base
        return f

    def subfield_orders(self) -> list[int]:
        """Orders of this field and every field below it in the tower."""
        out, f = [], self
        while f is not None:
            out.append(f.order)
            f = f.base
        return out

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.base is None:
            return f"GF({self.p})"
        if self.base.base is None:
            return f"GF({self.p}^{self.e}, modulus={self.modulus})"
        return f"GF({self.base.order}^{self.degree}) over {self.base!r}"

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    def check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.order:
            raise ParamViolation(f"{a} is not an element encoding of {self!r}")
        return a

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, a) for a in range(self.order)]

    # -- coordinates --------------------------------------------------------

    def to_vec(self, a: int) -> list[int]:
        """Coordinates of ``a`` over the immediate base (length ``degree``)."""
        if self.base is None:
            return [a]
        qb = self.base.order
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, qb)
            out.append(r)
        return out

    def from_vec(self, v: Sequence[int]) -> int:
        if self.base is None:
            return int(v[0])
        qb = self.base.order
        a = 0
        for c in reversed(v):
            a = a * qb + int(c)
        return a

    def digits(self, a: int) -> list[int]:
        """Base-p digits of ``a`` (length ``e``)."""
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    # -- scalar arithmetic on encodings -----------------------------------

    def add_int(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p, out, scale = self.p, 0, 1
        for _ in range(self.e):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * scale
            scale *= p
        return out

    def neg_int(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.p
        if self.p == 2:
            return a
        p, out, scale = self.p, 0, 1
        for _ in range(self.e):
            a, r = divmod(a, p)
            out += ((-r) % p) * scale
            scale *= p
        return out

    def sub_int(self, a: int, b: int) -> int:
        return self.add_int(a, self.neg_int(b))

    def mul_int(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        self._ensure_tables()
        if self._log is not None:
            return int(self._exp[(self._log[a] + self._log[b]) % (self.order - 1)])
        return self._mul_slow(a, b)

    def inv_int(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        if self.base is None:
            return builtins.pow(a, self.p - 2, self.p)
        self._ensure_tables()
        if self._log is not None:
            return int(self._exp[(-self._log[a]) % (self.order - 1)])
        return self.pow_int(a, self.order - 2)

    def pow_int(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow_int(self.inv_int(a), -n)
        if self.base is None:
            return builtins.pow(a, n, self.p)
        result = 1
        while n:
            if n & 1:
                result = self.mul_int(result, a)
            a = self.mul_int(a, a)
            n >>= 1
        return result

    def _mul_slow(self, a: int, b: int) -> int:
        base = self.base
        va, vb = self.to_vec(a), self.to_vec(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(va):
            if x == 0:
                continue
            for j, y in enumerate(vb):
                if y:
                    prod[i + j] = base.add_int(prod[i + j], base.mul_int(x, y))
        return self.from_vec(_poly_rem_monic(prod, self.modulus, base))

    def _ensure_tables(self) -> None:
        if self._tables_built:
            return
        self._tables_built = True
        if self.base is None or self.order > _LOG_TABLE_MAX:
            return
        n = self.order - 1
        for g in range(2 if self.order > 2 else 1, self.order):
            exp = np.empty(n, dtype=np.int64)
            x = 1
            for i in range(n):
                exp[i] = x
                x = self._mul_slow(x, g)
                if x == 1 and i < n - 1:
                    break
            else:
                break
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(n)
        self._exp, self._log = exp, log
        if self.order <= _FULL_TABLE_MAX:
            a = np.arange(self.order)
            self._add_tab = self.np_add(a[:, None], a[None, :])
            self._mul_tab = self.np_mul(a[:, None], a[None, :])

    # -- vectorized arithmetic on encodings --------------------------------

    def np_add(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.base is None:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_tab is not None:
            return self._add_tab[a, b]
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.e):
            out += ((a % p + b % p) % p) * scale
            a, b = a // p, b // p
            scale *= p
        return out

    def np_neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.base is None:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        p = self.p
        out = np.zeros_like(a)
        scale = 1
        for _ in range(self.e):
            out += ((-(a % p)) % p) * scale
            a = a // p
            scale *= p
        return out

    def np_sub(self, a, b) -> np.ndarray:
        if self.base is None:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        if self.p == 2:
            return np.asarray(a, dtype=np.int64) ^ np.asarray(b, dtype=np.int64)
        return self.np_add(a, self.np_neg(b))

    def np_mul(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.base is None:
            return (a * b) % self.p
        self._ensure_tables()
        if self._mul_tab is not None:
            return self._mul_tab[a, b]
        if self._log is not None:
            s = (self._log[a] + self._log[b]) % (self.order - 1)
            return np.where((a == 0) | (b == 0), 0, self._exp[s])
        return np.frompyfunc(self.mul_int, 2, 1)(a, b).astype(np.int64)

    def np_inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("0 has no inverse")
        if self.base is None:
            return np.frompyfunc(lambda x: builtins.pow(int(x), self.p - 2, self.p), 1, 1)(a).astype(np.int64)
        self._ensure_tables()
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return np.frompyfunc(self.inv_int, 1, 1)(a).astype(np.int64)

    def np_sum(self, a, axis: int) -> np.ndarray:
        """Field sum along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.base is None:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis) if a.shape[axis] else np.zeros(
                np.delete(a.shape, axis), dtype=np.int64)
        a = np.moveaxis(a, axis, 0)
        out = np.zeros(a.shape[1:], dtype=np.int64)
        for part in a:
            out = self.np_add(out, part)
        return out


class FieldElement:
    """An element of a :class:`FieldSpec`; ``value`` packs its coefficient vector."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        self.field = field
        self.value = field.check(value)

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Residues mod p, one per power of the generator (length ``e``)."""
        return tuple(self.field.digits(self.value))

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add_int(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub_int(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub_int(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul_int(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul_int(self.value, self.field.inv_int(b)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_int(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow_int(self.value, int(n)))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv_int(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"


# -- module-level operations ------------------------------------------------

def _same_field(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    return a.field


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same_field(a, b)
    return FieldElement(f, f.add_int(a.value, b.value))


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same_field(a, b)
    return FieldElement(f, f.sub_int(a.value, b.value))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same_field(a, b)
    return FieldElement(f, f.mul_int(a.value, b.value))


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, n: int | FieldElement) -> FieldElement:
    """``a**n``; an element exponent is read as its integer encoding."""
    return FieldElement(a.field, a.field.pow_int(a.value, int(n)))


def frobenius(a: FieldElement, q: int | None = None) -> FieldElement:
    """Return ``a**q`` for ``q`` the order of a subfield of ``a.field``.

    ``q`` defaults to the order of the immediate base field.
    """
    field = a.field
    if q is None:
        q = field.base.order if field.base is not None else field.order
    if q not in field.subfield_orders():
        raise FieldMismatch(f"GF({q}) is not a subfield in the tower of {field!r}")
    return FieldElement(field, field.pow_int(a.value, q))


def expand(a: FieldElement) -> tuple[FieldElement, ...]:
    """Coordinates of ``a`` over the base field in the basis 1, b, ..., b^(m-1)."""
    field = a.field
    if field.base is None:
        raise FieldMismatch(f"{field!r} is not an extension field")
    return tuple(FieldElement(field.base, c) for c in field.to_vec(a.value))


def compress(v: Sequence[FieldElement | int], field: FieldSpec) -> FieldElement:
    """Inverse of :func:`expand`."""
    if field.base is None:
        raise FieldMismatch(f"{field!r} is not an extension field")
    if len(v) != field.degree:
        raise LengthMismatch(f"expected {field.degree} coordinates, got {len(v)}")
    coords = []
    for c in v:
        if isinstance(c, FieldElement):
            if c.field != field.base:
                raise FieldMismatch(f"coordinate in {c.field!r}, expected {field.base!r}")
            coords.append(c.value)
        else:
            coords.append(field.base.check(c))
    return FieldElement(field, field.from_vec(coords))


def generator(field: FieldSpec) -> FieldElement:
    """The residue of x (the basis element b); 1 in a degree-1 field."""
    if field.base is None or field.degree == 1:
        return field.one
    return FieldElement(field, field.base.order)


# -- polynomials over a field (little-endian lists of encodings) -----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem_monic(a: Sequence[int], mod: Sequence[int], f: FieldSpec) -> list[int]:
    a = list(a)
    d = len(mod) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] = f.sub_int(a[i - d + j], f.mul_int(c, mod[j]))
    return a[:d] if len(a) >= d else a + [0] * (d - len(a))


def _poly_rem(a: Sequence[int], b: Sequence[int], f: FieldSpec) -> list[int]:
    b = _trim(list(b))
    lead_inv = f.inv_int(b[-1])
    monic = [f.mul_int(c, lead_inv) for c in b]
    return _trim(_poly_rem_monic(a, monic, f))


def _poly_mul(a: Sequence[int], b: Sequence[int], f: FieldSpec) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = f.add_int(out[i + j], f.mul_int(x, y))
    return _trim(out)


def _poly_powmod(a: list[int], n: int, mod: Sequence[int], f: FieldSpec) -> list[int]:
    result = [1]
    a = _poly_rem(a, mod, f)
    while n:
        if n & 1:
            result = _poly_rem(_poly_mul(result, a, f), mod, f)
        a = _poly_rem(_poly_mul(a, a, f), mod, f)
        n >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], f: FieldSpec) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b, f)
    return a


def _poly_eval(a: Sequence[int], x: int, f: FieldSpec) -> int:
    acc = 0
    for c in reversed(a):
        acc = f.add_int(f.mul_int(acc, x), c)
    return acc


def is_irreducible(poly: Sequence[int], f: FieldSpec) -> bool:
    """Irreducibility of a monic polynomial over ``f``.

    Degree <= 4 uses a root scan plus (degree 4) a scan of all monic
    quadratic divisors; above that, Ben-Or's test gcd(poly, x^(Q^i) - x) = 1
    for i <= degree/2.
    """
    poly = _trim(list(poly))
    d = len(poly) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if d <= 4:
        if any(_poly_eval(poly, r, f) == 0 for r in range(f.order)):
            return False
        if d == 4:
            for a in range(f.order):
                for b in range(f.order):
                    if not _poly_rem(poly, [b, a, 1], f):
                        return False
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = _poly_powmod(h, f.order, poly, f)
        diff = _trim([f.sub_int(c, x[i] if i < 2 else 0) for i, c in enumerate(h + [0, 0])])
        if len(_poly_gcd(poly, diff, f)) > 1:
            return False
    return True


# -- construction -----------------------------------------------------------

@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldSpec:
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    return FieldSpec(p, 1, (0, 1))


def _parse_modulus(modulus: int | Iterable[int], base: FieldSpec, degree: int) -> tuple[int, ...]:
    if isinstance(modulus, (int, np.integer)):
        coeffs, m = [], int(modulus)
        while m:
            m, r = divmod(m, base.order)
            coeffs.append(r)
    else:
        coeffs = [int(c) for c in modulus]
    if len(coeffs) != degree + 1 or coeffs[-1] != 1:
        raise InvalidModulus(f"modulus must be monic of degree {degree}, got {coeffs}")
    if any(not 0 <= c < base.order for c in coeffs):
        raise InvalidModulus(f"modulus coefficients must lie in [0, {base.order})")
    return tuple(coeffs)


def default_modulus(base: FieldSpec, degree: int) -> tuple[int, ...]:
    """Lexicographically least irreducible monic polynomial of ``degree``.

    Candidates are ordered by the integer whose base-|base| digits are the
    non-leading coefficients (little-endian).
    """
    Q = base.order
    for c in range(Q ** degree):
        coeffs = []
        for _ in range(degree):
            c, r = divmod(c, Q)
            coeffs.append(r)
        coeffs.append(1)
        if is_irreducible(coeffs, base):
            return tuple(coeffs)
    raise AssertionError("irreducible polynomials exist in every degree")


@lru_cache(maxsize=None)
def _default_extension(base: FieldSpec, degree: int) -> FieldSpec:
    return FieldSpec(base.p, degree, default_modulus(base, degree), base=base)


def _extend(base: FieldSpec, degree: int, modulus, cap: int) -> FieldSpec:
    if degree < 1:
        raise ParamViolation(f"degree must be positive, got {degree}")
    order = base.order ** degree
    if order > cap:
        raise FieldTooLarge(f"field order {order} exceeds cap {cap}")
    if modulus is None:
        return _default_extension(base, degree)
    coeffs = _parse_modulus(modulus, base, degree)
    if not is_irreducible(coeffs, base):
        raise ReducibleModulus(f"{coeffs} is reducible over {base!r}")
    return FieldSpec(base.p, degree, coeffs, base=base)


def field_create(p: int, e: int = 1, modulus: int | Iterable[int] | None = None,
                 cap: int = FIELD_ORDER_CAP) -> FieldSpec:
    """GF(p^e) with the given (or the least irreducible) monic modulus.

    ``modulus`` is a coefficient sequence (little-endian, leading 1 included)
    or an integer whose base-p digits are those coefficients, e.g. ``0b10011``
    for x^4 + x + 1.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if e < 1:
        raise ParamViolation(f"degree must be positive, got {e}")
    if p ** e > cap:
        raise FieldTooLarge(f"field order {p}^{e} exceeds cap {cap}")
    prime = prime_field(p)
    if e == 1 and (modulus is None or _parse_modulus(modulus, prime, 1) == (0, 1)):
        return prime
    return _extend(prime, e, modulus, cap)


def extension_field(base: FieldSpec, m: int, modulus: int | Iterable[int] | None = None,
                    cap: int = FIELD_ORDER_CAP) -> FieldSpec:
    """GF(q^m) as a degree-m extension of ``base`` (order q) with basis 1, b, ..., b^(m-1)."""
    return _extend(base, m, modulus, cap)


def galois_field(q: int, cap: int = FIELD_ORDER_CAP) -> FieldSpec:
    """GF(q) with the default modulus."""
    p, e = prime_power(q)
    return field_create(p, e, cap=cap)
