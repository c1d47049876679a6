"""This module defines exact rational and quadratic-field numbers, certified balls
and the exact comparison of products of rational powers."""
from __future__ import annotations

import contextlib as _contextlib
import dataclasses as _dc
import enum as _enum
import functools as _functools
import math as _math
import re as _re
from fractions import Fraction

import flint as _flint
import sympy as _sympy

from . import errors as _errors
from .. import settings as _settings

RationalLike = int | Fraction | str

RATIONAL_PATTERN = _re.compile(r'\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*')
BALL_PATTERN = _re.compile(r'\[(.*?) ?\+/- (.+)]')


def parse_rational(s: str) -> Fraction:
    """Parse a rational number in the form "p" or "p/q".

    :param s: The string to parse.
    :return: The corresponding fraction in lowest terms.
    :raise ValueError: If the string is not a valid rational.
    """
    m = RATIONAL_PATTERN.fullmatch(s)
    if not m or m.group(2) is not None and int(m.group(2)) == 0:
        raise ValueError(f'Invalid rational: {s!r}')
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


def format_rational(q: int | Fraction) -> str:
    """Format a rational number as "p/q", or "p" if it is an integer."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f'{q.numerator}/{q.denominator}'


def to_rational(x: RationalLike) -> Fraction:
    """Convert an int, a fraction or a "p/q" string into a fraction.

    :raise TypeError: If the value has another type.
    """
    match x:
        case bool():
            raise TypeError(f'Expected a rational, got {x!r}')
        case int() | Fraction():
            return Fraction(x)
        case str():
            return parse_rational(x)
    raise TypeError(f'Expected a rational, got {x!r}')


@_functools.lru_cache(maxsize=512)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Decompose n as s²·m with m squarefree. The sign of n is carried by m.

    :param n: A nonzero integer.
    :return: The pair (s, m).
    """
    if n == 0:
        raise ValueError('0 has no squarefree decomposition')
    s, m = 1, -1 if n < 0 else 1
    for p, e in _sympy.factorint(abs(n)).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


@_functools.total_ordering
class QuadElem:
    """An exact element a + b√d of the field Q(√d). The value d = 0 encodes plain rationals."""
    __slots__ = ('_a', '_b', '_d')

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: int = 0):
        """Create a quadratic field element. A non-squarefree d is rewritten, e.g. √8 becomes 2√2,
        and perfect squares collapse to rationals.

        :param a: The rational part.
        :param b: The coefficient of √d.
        :param d: The radicand.
        :raise ValueError: If b ≠ 0 while d = 0.
        """
        a = to_rational(a)
        b = to_rational(b)
        if not isinstance(d, int) or isinstance(d, bool):
            raise TypeError(f'Expected an int radicand, got {d!r}')
        if d == 0 and b != 0:
            raise ValueError('b must be 0 when d = 0')
        if b != 0:
            s, d = squarefree_decomposition(d)
            b *= s
            if d == 1:
                a, b = a + b, Fraction(0)
        self._set(a, b, d)

    def _set(self, a: Fraction, b: Fraction, d: int):
        self._a = a
        self._b = b
        self._d = d if b != 0 else 0

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> QuadElem:
        # d must already be squarefree
        x = object.__new__(cls)
        x._set(a, b, d)
        return x

    @classmethod
    def sqrt(cls, d: int) -> QuadElem:
        """Return √d."""
        return cls(0, 1, d) if d != 0 else cls(0)

    @property
    def a(self) -> Fraction:
        """The rational part."""
        return self._a

    @property
    def b(self) -> Fraction:
        """The coefficient of √d."""
        return self._b

    @property
    def d(self) -> int:
        """The squarefree radicand, 0 for rationals."""
        return self._d

    def _field(self, other: QuadElem) -> int:
        if self._d == 0 or self._d == other._d:
            return other._d
        if other._d == 0:
            return self._d
        raise _errors.MixedFieldError(f'cannot combine elements of Q(√{self._d}) and Q(√{other._d})')

    @staticmethod
    def _coerce(other) -> QuadElem | None:
        if isinstance(other, QuadElem):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadElem._raw(Fraction(other), Fraction(0), 0)
        return None

    def __add__(self, other):
        if (o := self._coerce(other)) is None:
            return NotImplemented
        return QuadElem._raw(self._a + o._a, self._b + o._b, self._field(o))

    __radd__ = __add__

    def __neg__(self) -> QuadElem:
        return QuadElem._raw(-self._a, -self._b, self._d)

    def __sub__(self, other):
        if (o := self._coerce(other)) is None:
            return NotImplemented
        return self + -o

    def __rsub__(self, other):
        if (o := self._coerce(other)) is None:
            return NotImplemented
        return o + -self

    def __mul__(self, other):
        if (o := self._coerce(other)) is None:
            return NotImplemented
        d = self._field(o)
        return QuadElem._raw(
            self._a * o._a + self._b * o._b * d,
            self._a * o._b + self._b * o._a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadElem:
        """Return the multiplicative inverse.

        :raise ZeroDivisionError: If this element is 0.
        """
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError('QuadElem division by zero')
        return QuadElem._raw(self._a / n, -self._b / n, self._d)

    def __truediv__(self, other):
        if (o := self._coerce(other)) is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        if (o := self._coerce(other)) is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadElem:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** -n
        result = QuadElem._raw(Fraction(1), Fraction(0), 0)
        base = self
        while n:
            if n & 1:
                result *= base
            base *= base
            n >>= 1
        return result

    def conjugate(self) -> QuadElem:
        """Return a − b√d. For d < 0 this is also the complex conjugate."""
        return QuadElem._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """Return the field norm a² − b²d, i.e. the product of this element by its conjugate."""
        return self._a * self._a - self._b * self._b * self._d

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self._b == 0

    def is_integer(self) -> bool:
        return self._b == 0 and self._a.denominator == 1

    def is_real(self) -> bool:
        return self._d >= 0

    def sign(self) -> int:
        """Exact sign of a real element.

        :return: -1, 0 or 1.
        :raise ValueError: If this element is not real.
        """
        if not self.is_real():
            raise ValueError(f'{self} is not real')
        sa = (self._a > 0) - (self._a < 0)
        sb = (self._b > 0) - (self._b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        # Opposite signs: the larger of a² and b²d wins, they cannot be equal.
        return sa if self._a * self._a > self._b * self._b * self._d else sb

    def __abs__(self) -> QuadElem:
        return -self if self.sign() < 0 else self

    def abs_squared(self) -> QuadElem:
        """Return |x|² as a real element: x² for real x, x·conj(x) otherwise."""
        if self.is_real():
            return self * self
        return QuadElem._raw(self.norm(), Fraction(0), 0)

    def to_fraction(self) -> Fraction:
        """Return this element as a fraction.

        :raise ValueError: If it is not rational.
        """
        if self._b != 0:
            raise ValueError(f'{self} is not rational')
        return self._a

    def embed(self, precision: int) -> Ball:
        """Shortcut for ``embed(self, precision)``."""
        return embed(self, precision)

    def __eq__(self, other) -> bool:
        if (o := self._coerce(other)) is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __lt__(self, other) -> bool:
        if (o := self._coerce(other)) is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._d))

    def __repr__(self) -> str:
        return f'QuadElem({format_rational(self._a)!r}, {format_rational(self._b)!r}, {self._d})'

    def __str__(self) -> str:
        if self._b == 0:
            return format_rational(self._a)
        root = 'i' if self._d == -1 else f'√{self._d}'
        b = '' if self._b == 1 else '-' if self._b == -1 else f'{format_rational(self._b)}·'
        if self._a == 0:
            return f'{b}{root}'
        b_abs = '' if abs(self._b) == 1 else f'{format_rational(abs(self._b))}·'
        return f'{format_rational(self._a)} {"+" if self._b > 0 else "-"} {b_abs}{root}'

    def to_json(self) -> dict[str, str | int]:
        return {'a': format_rational(self._a), 'b': format_rational(self._b), 'd': self._d}

    @classmethod
    def from_json(cls, obj) -> QuadElem:
        """Build an element from its JSON form: {"a": "p/q", "b": "p/q", "d": int},
        a bare integer or a "p/q" string.

        :raise ValueError: If the object is malformed.
        """
        match obj:
            case {'a': a, **rest}:
                return cls(to_rational(a), to_rational(rest.get('b', 0)), int(rest.get('d', 0)))
            case int() | str():
                return cls(to_rational(obj))
        raise ValueError(f'Invalid quadratic field element: {obj!r}')


def field_of(*elements: QuadElem) -> int:
    """Return the common radicand of the given elements.

    :raise MixedFieldError: If two of them live in different quadratic fields.
    """
    ds = {x.d for x in elements if x.d != 0}
    if len(ds) > 1:
        raise _errors.MixedFieldError(f'elements live in different fields: {sorted(ds)}')
    return ds.pop() if ds else 0


@_contextlib.contextmanager
def working_precision(bits: int):
    """Context manager that sets the flint working precision to the given number of bits."""
    old = _flint.ctx.prec
    _flint.ctx.prec = bits
    try:
        yield
    finally:
        _flint.ctx.prec = old


def arb_of(q: int | Fraction) -> _flint.arb:
    """Convert an exact rational into an arb at the current working precision."""
    q = Fraction(q)
    return _flint.arb(_flint.fmpq(q.numerator, q.denominator))


def precisions(start: int = None, stop: int = None):
    """Yield doubling precisions from start up to stop (both in bits, stop included)."""
    p = start or _settings.DEFAULT_PRECISION
    stop = stop or _settings.MAX_PRECISION
    while True:
        yield min(p, stop)
        if p >= stop:
            return
        p *= 2


def _split_ball_str(x: _flint.arb) -> tuple[str, str]:
    s = x.str(20, radius=True)
    if m := BALL_PATTERN.fullmatch(s):
        return m.group(1) or '0', m.group(2)
    return s, '0'


class Ball:
    """A certified complex ball: a center at an explicit working precision
    and a radius bounding the distance to the true value."""

    def __init__(self, value: _flint.acb | _flint.arb, precision: int):
        """Wrap a flint ball.

        :param value: The ball, real or complex.
        :param precision: Working precision (in bits) it was computed at.
        """
        if isinstance(value, _flint.arb):
            value = _flint.acb(value)
        self._value = value
        self._precision = precision

    @property
    def value(self) -> _flint.acb:
        """The underlying flint complex ball."""
        return self._value

    @property
    def precision(self) -> int:
        """Working precision in bits."""
        return self._precision

    @property
    def real(self) -> _flint.arb:
        return self._value.real

    @property
    def imag(self) -> _flint.arb:
        return self._value.imag

    @property
    def radius(self) -> _flint.arb:
        """Upper bound on the distance from the center to the true value."""
        with working_precision(self._precision):
            return self.real.rad() + self.imag.rad()

    def is_real(self) -> bool:
        """Whether the imaginary part is exactly zero."""
        return self.imag.is_zero()

    def contains_zero(self) -> bool:
        """Whether zero lies in the ball, so its sign is not certified."""
        return 0 in self.real and 0 in self.imag

    def is_positive(self) -> bool:
        """Whether the value is certainly a positive real."""
        return self.is_real() and self.real > 0

    def is_negative(self) -> bool:
        """Whether the value is certainly a negative real."""
        return self.is_real() and self.real < 0

    def __repr__(self) -> str:
        return f'Ball({self._value}, {self._precision})'

    def to_json(self) -> dict[str, str | list[str]]:
        """Serialize as {"center": …, "radius": …}. Complex centers are [re, im] pairs.
        The printed radius accounts for the rounding of the printed center."""
        with working_precision(self._precision):
            re_c, re_r = _split_ball_str(self.real)
            if self.is_real():
                return {'center': re_c, 'radius': re_r}
            im_c, im_r = _split_ball_str(self.imag)
            radius = _flint.arb(re_r) + _flint.arb(im_r) if re_r != '0' or im_r != '0' else None
            return {
                'center': [re_c, im_c],
                'radius': radius.upper().str(5, radius=False) if radius is not None else '0',
            }


def conjugate(x: QuadElem) -> QuadElem:
    return x.conjugate()


def embed(x: QuadElem, precision_bits: int) -> Ball:
    """Embed a quadratic field element into the complex numbers, √d being imaginary when d < 0.

    :param x: The element.
    :param precision_bits: Working precision, at least 32 bits.
    :return: A ball containing the exact value of x.
    :raise ParameterOutOfRangeError: If the precision is too low.
    """
    if precision_bits < _settings.MIN_PRECISION:
        raise _errors.ParameterOutOfRangeError(
            f'precision must be at least {_settings.MIN_PRECISION} bits, got {precision_bits}')
    with working_precision(precision_bits):
        a = arb_of(x.a)
        if x.b == 0:
            return Ball(_flint.acb(a), precision_bits)
        s = _flint.arb(abs(x.d)).sqrt() * arb_of(x.b)
        if x.d > 0:
            return Ball(_flint.acb(a + s), precision_bits)
        return Ball(_flint.acb(a, s), precision_bits)


@_functools.total_ordering
@_dc.dataclass(frozen=True, eq=False)
class Magnitude:
    """A nonnegative real number known exactly through its square.
    When the number itself lies in the field (always the case for real fields) it is kept too."""
    square: QuadElem
    value: QuadElem | None = None

    def __post_init__(self):
        if not self.square.is_real() or self.square.sign() < 0:
            raise ValueError(f'invalid magnitude square: {self.square}')

    @classmethod
    def of(cls, x: QuadElem | int | Fraction) -> Magnitude:
        """Return |x|."""
        if not isinstance(x, QuadElem):
            x = QuadElem(x)
        if x.is_real():
            v = abs(x)
            return cls(v * v, v)
        return cls(x.abs_squared())

    def is_zero(self) -> bool:
        return self.square.is_zero()

    def is_exact(self) -> bool:
        """Whether the value itself is known exactly."""
        return self.value is not None

    def __mul__(self, other: Magnitude) -> Magnitude:
        value = self.value * other.value if self.value is not None and other.value is not None else None
        return Magnitude(self.square * other.square, value)

    def __truediv__(self, other: Magnitude) -> Magnitude:
        value = self.value / other.value if self.value is not None and other.value is not None else None
        return Magnitude(self.square / other.square, value)

    def __pow__(self, n: int) -> Magnitude:
        return Magnitude(self.square ** n, self.value ** n if self.value is not None else None)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Magnitude):
            return NotImplemented
        return self.square == other.square

    def __lt__(self, other: Magnitude) -> bool:
        return self.square < other.square

    def __hash__(self) -> int:
        return hash(self.square)

    def ball(self, precision: int) -> _flint.arb:
        """Return a real ball containing this magnitude."""
        with working_precision(precision):
            if self.value is not None:
                return embed(self.value, precision).real
            if self.square.is_zero():
                return _flint.arb(0)
            return embed(self.square, precision).real.sqrt()

    def __str__(self) -> str:
        return str(self.value) if self.value is not None else f'√({self.square})'

    def to_json(self, precision: int = None):
        """Serialize as a "p/q" string when rational, a quadratic element when exact,
        or a {"center", "radius"} ball otherwise."""
        if self.value is not None:
            return format_rational(self.value.a) if self.value.is_rational() else self.value.to_json()
        precision = precision or _settings.DEFAULT_PRECISION
        return Ball(self.ball(precision), precision).to_json()


class Ordering(_enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@_dc.dataclass(frozen=True)
class PowerProduct:
    """An exact product ∏ base^exponent with positive rational bases and rational exponents."""
    factors: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        factors = tuple((to_rational(b), to_rational(e)) for b, e in self.factors)
        for b, _ in factors:
            if b <= 0:
                raise ValueError(f'power product bases must be positive, got {b}')
        object.__setattr__(self, 'factors', factors)

    @classmethod
    def of(cls, *factors: tuple[RationalLike, RationalLike]) -> PowerProduct:
        return cls(tuple(factors))

    def __mul__(self, other: PowerProduct) -> PowerProduct:
        return PowerProduct(self.factors + other.factors)

    def inverse(self) -> PowerProduct:
        return PowerProduct(tuple((b, -e) for b, e in self.factors))

    def simplified(self) -> PowerProduct:
        """Merge equal bases and drop trivial factors, keeping first-occurrence order."""
        merged: dict[Fraction, Fraction] = {}
        for b, e in self.factors:
            merged[b] = merged.get(b, Fraction(0)) + e
        return PowerProduct(tuple((b, e) for b, e in merged.items() if b != 1 and e != 0))

    def log_ball(self, precision: int) -> _flint.arb:
        """Return a ball containing the natural logarithm of this product."""
        with working_precision(precision):
            total = _flint.arb(0)
            for b, e in self.factors:
                if b != 1 and e != 0:
                    total += arb_of(e) * arb_of(b).log()
            return total

    def log10_ball(self, precision: int) -> _flint.arb:
        """Return a ball containing the decimal logarithm of this product."""
        with working_precision(precision):
            return self.log_ball(precision) / _flint.arb(10).log()

    def __str__(self) -> str:
        if not self.factors:
            return '1'
        return '·'.join(f'{format_rational(b)}^({format_rational(e)})' for b, e in self.factors)

    def to_json(self) -> list[dict[str, str]]:
        return [{'base': format_rational(b), 'exponent': format_rational(e)} for b, e in self.factors]


def compare_power_product(lhs: PowerProduct, rhs: PowerProduct, *, digit_budget: int = None,
                          fast_path: bool = True) -> Ordering:
    """Compare two products of rational powers exactly.

    A certified logarithmic comparison is tried first. It only decides when its ball excludes equality.
    Otherwise both sides are raised to the lcm of the exponent denominators and compared as exact integers.

    :param lhs: Left-hand side.
    :param rhs: Right-hand side.
    :param digit_budget: Maximum number of decimal digits the exact path may produce.
        Defaults to the configured budget.
    :param fast_path: Whether to try the logarithmic comparison first.
    :return: The ordering of lhs relative to rhs.
    :raise DigitBudgetExceededError: If the exact comparison would exceed the digit budget.
    """
    ratio = (lhs * rhs.inverse()).simplified()
    if not ratio.factors:
        return Ordering.EQUAL
    if fast_path:
        for bits in (128, 512):
            lg = ratio.log_ball(bits)
            if lg > 0:
                return Ordering.GREATER
            if lg < 0:
                return Ordering.LESS
        _settings.LOGGER.debug(f'Logarithmic comparison inconclusive for {ratio}, switching to exact path')

    budget = digit_budget if digit_budget is not None else _settings.DIGIT_BUDGET
    lcm = _math.lcm(*(e.denominator for _, e in ratio.factors))
    estimate = 0
    for b, e in ratio.factors:
        estimate += abs(e * lcm) * (len(str(max(b.numerator, b.denominator))))
    estimate = int(estimate)
    if estimate > budget:
        _settings.LOGGER.warning(f'Exact comparison of {ratio} refused: about {estimate} digits')
        raise _errors.DigitBudgetExceededError(estimate, budget)

    num = den = 1
    for b, e in ratio.factors:
        k = int(e * lcm)
        if k > 0:
            num *= b.numerator ** k
            den *= b.denominator ** k
        else:
            num *= b.denominator ** -k
            den *= b.numerator ** -k
    return Ordering((num > den) - (num < den))
