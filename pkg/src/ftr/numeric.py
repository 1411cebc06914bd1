"""Arbitrary-precision quantities carrying exact rational dimension signatures.

Every physical value in the package is a :class:`Quantity`: an ``mpmath``
real at the configured working precision together with a :class:`DimSig`
whose exponents are :class:`fractions.Fraction` so that cgs-Gaussian charge
(``esu = g^1/2 cm^3/2 s^-1``) composes without rounding.

Counts are plain Python ``int`` (exact, unbounded) and exact ratios are
``Fraction``.
"""
from __future__ import annotations

import io
import re
from contextlib import contextmanager
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import IO, Iterator, Mapping, Union

from mpmath import mp, mpf

from .errors import (
    DimensionMismatch,
    DuplicateName,
    MissingConstant,
    NegativeBase,
    ParseError,
)

DEFAULT_PRECISION = 50

BigCount = int
ExactRational = Fraction
Number = Union[int, float, Fraction, Decimal, mpf]

#: Bond factor converting between the theoretical and observational systems.
BETA = Fraction(137, 136)

PROVENANCES = ("paper-era-1946", "modern", "user")


def set_precision(digits: int) -> None:
    """Set the global working precision in decimal digits."""
    if digits < 15:
        raise ValueError("working precision must be at least 15 digits")
    mp.dps = int(digits)


def get_precision() -> int:
    return mp.dps


@contextmanager
def working_precision(digits: int) -> Iterator[None]:
    with mp.workdps(int(digits)):
        yield


def real(x) -> mpf:
    """Convert an exact or inexact number to an mpf at the current precision."""
    if isinstance(x, mpf):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return mpf(x)
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, (str, Decimal)):
        return mpf(str(x))
    if isinstance(x, float):
        return mpf(x)
    if isinstance(x, Quantity):
        if not x.dims.dimensionless:
            raise DimensionMismatch(f"expected a dimensionless value, got {x.dims}")
        return x.magnitude
    return mpf(x)


def rel_error(value, reference) -> mpf:
    value, reference = _magnitude(value), _magnitude(reference)
    if reference == 0:
        return abs(value)
    return abs(value - reference) / abs(reference)


def _magnitude(x) -> mpf:
    return x.magnitude if isinstance(x, Quantity) else real(x)


# --------------------------------------------------------------------------
# dimension signatures

_BASES = ("mass", "length", "time", "charge", "temperature")
_SYMBOLS = {"mass": "g", "length": "cm", "time": "s", "charge": "esu", "temperature": "K"}


def _fmt_exp(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


@dataclass(frozen=True)
class DimSig:
    """Exponents of g, cm, s, esu and K, plus an optional dimension-index.

    The dimension-index is the power of the single extraneous length standard
    in Eddington's scheme; it is carried along but does not take part in the
    cgs compatibility test unless both operands define it.
    """

    mass: Fraction = Fraction(0)
    length: Fraction = Fraction(0)
    time: Fraction = Fraction(0)
    charge: Fraction = Fraction(0)
    temperature: Fraction = Fraction(0)
    index: int | None = None

    def __post_init__(self):
        for name in _BASES:
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(getattr(self, b) for b in _BASES)

    @property
    def dimensionless(self) -> bool:
        return not any(self.reduced().exponents)

    def reduced(self) -> "DimSig":
        """Fold the charge exponent into g^1/2 cm^3/2 s^-1."""
        q = self.charge
        if q == 0:
            return self
        return DimSig(
            self.mass + q / 2,
            self.length + q * Fraction(3, 2),
            self.time - q,
            0,
            self.temperature,
            self.index,
        )

    def same_as(self, other: "DimSig") -> bool:
        if self.reduced().exponents != other.reduced().exponents:
            return False
        if self.index is not None and other.index is not None:
            return self.index == other.index
        return True

    def __add__(self, other: "DimSig") -> "DimSig":
        if self.index is None:
            index = other.index
        elif other.index is None:
            index = self.index
        else:
            index = self.index + other.index
        return DimSig(*(a + b for a, b in zip(self.exponents, other.exponents)), index=index)

    def __neg__(self) -> "DimSig":
        return self * -1

    def __sub__(self, other: "DimSig") -> "DimSig":
        return self + (-other)

    def __mul__(self, r) -> "DimSig":
        r = Fraction(r)
        index = None
        if self.index is not None and (self.index * r).denominator == 1:
            index = int(self.index * r)
        return DimSig(*(a * r for a in self.exponents), index=index)

    __rmul__ = __mul__

    def __str__(self) -> str:
        parts = []
        for name in _BASES:
            exp = getattr(self, name)
            if exp == 0:
                continue
            sym = _SYMBOLS[name]
            parts.append(sym if exp == 1 else sym + _fmt_exp(exp))
        return ".".join(parts) or "1"


DIMENSIONLESS = DimSig()
MASS = DimSig(mass=1)
LENGTH = DimSig(length=1)
TIME = DimSig(time=1)
CHARGE = DimSig(charge=1)
TEMPERATURE = DimSig(temperature=1)
ENERGY = DimSig(1, 2, -2)
MOMENTUM = DimSig(1, 1, -1)
ACTION = DimSig(1, 2, -1)

# factors are exact decimals in cgs base units
_UNITS: dict[str, tuple[Fraction, DimSig]] = {
    "1": (Fraction(1), DIMENSIONLESS),
    "g": (Fraction(1), MASS),
    "cm": (Fraction(1), LENGTH),
    "s": (Fraction(1), TIME),
    "esu": (Fraction(1), CHARGE),
    "statC": (Fraction(1), CHARGE),
    "K": (Fraction(1), TEMPERATURE),
    "kg": (Fraction(1000), MASS),
    "m": (Fraction(100), LENGTH),
    "km": (Fraction(10**5), LENGTH),
    "fm": (Fraction(1, 10**13), LENGTH),
    "Mpc": (Fraction("3.0857e24"), LENGTH),
    "erg": (Fraction(1), ENERGY),
    "J": (Fraction(10**7), ENERGY),
    "dyn": (Fraction(1), DimSig(1, 1, -2)),
    "eV": (Fraction("1.602176634e-12"), ENERGY),
    "MeV": (Fraction("1.602176634e-6"), ENERGY),
    "GeV": (Fraction("1.602176634e-3"), ENERGY),
}

_TOKEN = re.compile(r"^([A-Za-z]+)(-?\d+(?:/\d+)?)?$")


def parse_unit(expr: str) -> tuple[Fraction, DimSig]:
    """Parse a dot-separated unit product such as ``cm3.g-1.s-2`` or ``g1/2``."""
    expr = expr.strip()
    if not expr:
        raise ParseError("empty unit expression")
    factor = Fraction(1)
    dims = DIMENSIONLESS
    for token in expr.split("."):
        if token == "1":
            continue
        m = _TOKEN.match(token)
        if not m or m.group(1) not in _UNITS:
            raise ParseError(f"bad unit token {token!r} in {expr!r}")
        base_factor, base_dims = _UNITS[m.group(1)]
        exp = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if exp.denominator == 1:
            factor *= base_factor ** int(exp)
        elif base_factor != 1:
            raise ParseError(f"rational exponent on scaled unit {token!r}")
        dims = dims + base_dims * exp
    return factor, dims


# --------------------------------------------------------------------------
# quantities


@dataclass(frozen=True, eq=False)
class Quantity:
    """A magnitude (cgs base units) with its dimension signature."""

    magnitude: mpf
    dims: DimSig = DIMENSIONLESS
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "magnitude", real(self.magnitude))

    @classmethod
    def of(cls, value, unit: str = "1", label: str = "") -> "Quantity":
        factor, dims = parse_unit(unit)
        return cls(real(value) * real(factor), dims, label)

    def to(self, unit: str) -> mpf:
        """Magnitude expressed in ``unit``."""
        factor, dims = parse_unit(unit)
        if not self.dims.same_as(dims):
            raise DimensionMismatch(f"cannot express {self.dims} in {unit}")
        return self.magnitude / real(factor)

    def labelled(self, label: str) -> "Quantity":
        return Quantity(self.magnitude, self.dims, label)

    def __mul__(self, other):
        return qmul(self, other)

    def __rmul__(self, other):
        return qmul(other, self)

    def __truediv__(self, other):
        return qdiv(self, other)

    def __rtruediv__(self, other):
        return qdiv(other, self)

    def __add__(self, other):
        return qadd(self, other)

    def __radd__(self, other):
        return qadd(other, self)

    def __sub__(self, other):
        return qadd(self, -_as_quantity(other))

    def __rsub__(self, other):
        return qadd(other, -self)

    def __neg__(self):
        return Quantity(-self.magnitude, self.dims, self.label)

    def __abs__(self):
        return Quantity(abs(self.magnitude), self.dims, self.label)

    def __pow__(self, r):
        return qpow(self, r)

    def __float__(self):
        return float(self.magnitude)

    def _cmp_value(self, other) -> mpf:
        if isinstance(other, Quantity):
            _require_same(self, other)
            return other.magnitude
        other = real(other)
        if other != 0 and not self.dims.dimensionless:
            raise DimensionMismatch(f"cannot compare {self.dims} with a bare number")
        return other

    def __lt__(self, other):
        return self.magnitude < self._cmp_value(other)

    def __le__(self, other):
        return self.magnitude <= self._cmp_value(other)

    def __gt__(self, other):
        return self.magnitude > self._cmp_value(other)

    def __ge__(self, other):
        return self.magnitude >= self._cmp_value(other)

    def __eq__(self, other):
        if isinstance(other, Quantity):
            return self.dims.same_as(other.dims) and self.magnitude == other.magnitude
        if isinstance(other, (int, float, Fraction, mpf)) and self.dims.dimensionless:
            return self.magnitude == real(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.magnitude, self.dims.reduced().exponents))

    def __repr__(self):
        label = f", {self.label!r}" if self.label else ""
        return f"Quantity({mp.nstr(self.magnitude, 12)} {self.dims}{label})"


def _as_quantity(x) -> Quantity:
    if isinstance(x, Quantity):
        return x
    return Quantity(real(x))


def _require_same(a: Quantity, b: Quantity) -> None:
    if not a.dims.same_as(b.dims):
        raise DimensionMismatch(f"{a.dims} vs {b.dims}")


def _fold(dims: DimSig) -> DimSig:
    # products are reported in g, cm, s: e^2 reads as g.cm3.s-2
    return dims.reduced()


def qmul(a, b) -> Quantity:
    a, b = _as_quantity(a), _as_quantity(b)
    return Quantity(a.magnitude * b.magnitude, _fold(a.dims + b.dims))


def qdiv(a, b) -> Quantity:
    a, b = _as_quantity(a), _as_quantity(b)
    return Quantity(a.magnitude / b.magnitude, _fold(a.dims - b.dims))


def qadd(a, b) -> Quantity:
    a, b = _as_quantity(a), _as_quantity(b)
    _require_same(a, b)
    return Quantity(a.magnitude + b.magnitude, a.dims)


def qpow(a, r) -> Quantity:
    """Raise to an exact rational power; exponents scale exactly."""
    a = _as_quantity(a)
    r = Fraction(r)
    if r == 0:
        return Quantity(1)
    if r.denominator == 1:
        mag = a.magnitude ** int(r)
    else:
        if a.magnitude < 0:
            raise NegativeBase(f"non-integer power {r} of a negative magnitude")
        mag = a.magnitude ** (mpf(r.numerator) / r.denominator)
    return Quantity(mag, _fold(a.dims * r))


def sqrt(a) -> Quantity:
    return qpow(a, Fraction(1, 2))


def beta_power(r) -> mpf:
    """BETA ** r at working precision (exact for integer r)."""
    r = Fraction(r)
    if r.denominator == 1:
        return real(BETA ** int(r))
    return real(BETA) ** (mpf(r.numerator) / r.denominator)


# --------------------------------------------------------------------------
# constant sets

#: Expected unit of every well-known constant name.
REGISTRY = {
    "c": "cm.s-1",
    "h": "g.cm2.s-1",
    "hbar": "g.cm2.s-1",
    "e": "esu",
    "G": "cm3.g-1.s-2",
    "m_e": "g",
    "m_p": "g",
    "m_h": "g",
    "m_u": "g",
    "k_B": "erg.K-1",
    "faraday_h": "esu.g-1.s.cm-1",
}


@dataclass(frozen=True)
class _Entry:
    name: str
    text: str
    unit: str
    provenance: str


class ConstantSet(Mapping):
    """Named constants with provenance, read-only.

    Magnitudes are rebuilt from their stored decimal text on access, so a set
    loaded at one precision serves any later working precision faithfully.
    """

    def __init__(self, entries, provenance: str | None = None, source: str = ""):
        self._entries: dict[str, _Entry] = {}
        for entry in entries:
            if entry.name in self._entries:
                raise DuplicateName(f"duplicate constant {entry.name!r}")
            self._entries[entry.name] = entry
        if provenance is None:
            tags = {e.provenance for e in self._entries.values()}
            provenance = tags.pop() if len(tags) == 1 else "user"
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        self.provenance = provenance
        self.source = source

    @classmethod
    def from_values(cls, values: Mapping[str, tuple], provenance: str = "user", source: str = ""):
        """Build from ``{name: (value, unit)}`` or ``{name: Quantity}``."""
        entries = []
        for name, spec in values.items():
            if isinstance(spec, Quantity):
                text, unit = mp.nstr(spec.magnitude, mp.dps, min_fixed=1, max_fixed=0), str(spec.dims)
            else:
                value, unit = spec
                text = str(value) if not isinstance(value, mpf) else mp.nstr(value, mp.dps, min_fixed=1, max_fixed=0)
                if isinstance(value, Fraction):
                    text = _fraction_text(value)
            parse_unit(unit)
            entries.append(_Entry(name, text, unit, provenance))
        return cls(entries, provenance, source)

    def replace(self, **values) -> "ConstantSet":
        """Copy with some entries replaced or added; the result is user data."""
        merged = {e.name: (e.text, e.unit) for e in self._entries.values()}
        for name, spec in values.items():
            merged[name] = spec
        return ConstantSet.from_values(merged, "user", self.source)

    def without(self, *names: str) -> "ConstantSet":
        entries = [e for e in self._entries.values() if e.name not in names]
        return ConstantSet(entries, self.provenance, self.source)

    def __getitem__(self, name: str) -> Quantity:
        try:
            entry = self._entries[name]
        except KeyError:
            raise MissingConstant(name) from None
        factor, dims = parse_unit(entry.unit)
        return Quantity(real(entry.text) * real(factor), dims, name)

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def require(self, *names: str) -> tuple[Quantity, ...]:
        """Fetch several constants, failing on the first absent name."""
        return tuple(self[n] for n in names)

    def text(self, name: str) -> str:
        return self._entries[name].text

    def unit(self, name: str) -> str:
        return self._entries[name].unit

    def entry_provenance(self, name: str) -> str:
        return self._entries[name].provenance

    def __repr__(self):
        return f"ConstantSet({self.provenance!r}, {list(self._entries)})"


def _fraction_text(x: Fraction) -> str:
    return mp.nstr(real(x), mp.dps, min_fixed=1, max_fixed=0)


_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _read_text(source) -> str:
    if isinstance(source, (bytes, bytearray)):
        return bytes(source).decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data


def load_constants(source: bytes | str | IO, name: str = "") -> ConstantSet:
    """Parse the constants dataset format.

    One entry per line: ``name decimal unit-expression provenance``; ``#``
    starts a comment.  Errors carry the 1-based line number.
    """
    text = _read_text(source)
    entries: list[_Entry] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4:
            raise ParseError(f"expected 4 fields, got {len(fields)}: {line!r}", lineno, name or None)
        cname, value, unit, prov = fields
        if not _NAME.match(cname):
            raise ParseError(f"bad constant name {cname!r}", lineno, name or None)
        try:
            Decimal(value)
            if not Decimal(value).is_finite():
                raise InvalidOperation
        except InvalidOperation:
            raise ParseError(f"bad decimal {value!r}", lineno, name or None) from None
        try:
            _, dims = parse_unit(unit)
        except ParseError as exc:
            raise ParseError(str(exc), lineno, name or None) from None
        if prov not in PROVENANCES:
            raise ParseError(f"unknown provenance {prov!r}", lineno, name or None)
        if cname in REGISTRY and not dims.same_as(parse_unit(REGISTRY[cname])[1]):
            raise ParseError(f"{cname} must have units {REGISTRY[cname]}, got {unit}", lineno, name or None)
        if cname in seen:
            raise DuplicateName(f"duplicate constant {cname!r}", lineno, name or None)
        seen.add(cname)
        entries.append(_Entry(cname, value, unit, prov))
    return ConstantSet(entries, source=name)


def load_constants_file(path: str | Path) -> ConstantSet:
    path = Path(path)
    return load_constants(path.read_bytes(), name=str(path))


def dump_constants(constants: ConstantSet) -> str:
    lines = ["# name value unit provenance"]
    for name in constants:
        lines.append(
            f"{name} {constants.text(name)} {constants.unit(name)} {constants.entry_provenance(name)}"
        )
    return "\n".join(lines) + "\n"


BUNDLED = ("paper-era-1946", "modern")


def bundled(name: str) -> ConstantSet:
    """One of the datasets shipped with the package."""
    if name not in BUNDLED:
        raise ValueError(f"no bundled dataset {name!r}; choose from {BUNDLED}")
    data = resources.files("ftr").joinpath("data", f"{name}.cst").read_bytes()
    return load_constants(data, name=f"{name}.cst")


def natural_value(q: Quantity, basis: ConstantSet) -> tuple[mpf, int | Fraction]:
    """Express ``q`` purely in powers of seconds with c = hbar = 1.

    With c = 1 a centimetre is 1/c seconds, and with hbar = 1 a gram becomes
    c**2/hbar inverse seconds.  Returns (value, power of s).
    """
    c, hbar = basis.require("c", "hbar")
    dims = q.dims.reduced()
    if dims.temperature:
        raise DimensionMismatch("temperature has no natural-unit reduction without k_B")
    c_cgs = c.to("cm.s-1")
    hbar_cgs = hbar.to("g.cm2.s-1")
    value = q.magnitude
    value *= _rpow(c_cgs**2 / hbar_cgs, dims.mass)
    value *= _rpow(1 / c_cgs, dims.length)
    power = -dims.mass + dims.length + dims.time
    return value, int(power) if power.denominator == 1 else power


def _rpow(x: mpf, r: Fraction) -> mpf:
    if r.denominator == 1:
        return x ** int(r)
    return x ** (mpf(r.numerator) / r.denominator)
