"""S-box representation, validation, text format, and seeded generators.

An S-box is a lookup table for a vectorial boolean function from n input bits
to m output bits.  Everything else in the package (metrics, search,
experiments) consumes the :class:`SBox` type defined here.
"""

import re
from dataclasses import dataclass

from .rng import RngStream


class SBoxError(ValueError):
    """Base class for S-box validation and parsing failures."""


class WrongLengthError(SBoxError):
    """Table length is not 2^n."""


class ValueOutOfRangeError(SBoxError):
    """A table entry does not fit in m bits."""


class MalformedTokenError(SBoxError):
    """A token is neither a decimal nor a 0x-prefixed hex integer."""


class IndexOutOfRangeError(SBoxError):
    """A position argument is outside the S-box domain."""


def hamming_weight(v: int) -> int:
    """Number of set bits of a nonnegative integer."""
    if v < 0:
        raise ValueError(f"hamming_weight is defined for nonnegative values, got {v}")
    return v.bit_count()


@dataclass(frozen=True)
class SBox:
    """An n-to-m-bit substitution box held as a flat table of 2^n outputs.

    Immutable after construction; all operations return new instances.
    Component i of the output is bit i (least-significant bit first).
    """

    n: int
    m: int
    table: tuple[int, ...]

    def __post_init__(self):
        if not 2 <= self.n <= 16:
            raise SBoxError(f"input width n={self.n} outside supported range 2..16")
        if not 1 <= self.m <= 16:
            raise SBoxError(f"output width m={self.m} outside supported range 1..16")
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        size = 1 << self.n
        if len(self.table) != size:
            raise WrongLengthError(
                f"expected {size} entries for n={self.n}, got {len(self.table)}"
            )
        limit = 1 << self.m
        for x, v in enumerate(self.table):
            if not 0 <= v < limit:
                raise ValueOutOfRangeError(
                    f"entry {v} at position {x} does not fit in m={self.m} bits"
                )

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def is_bijective(self) -> bool:
        """True when n = m and the table is a permutation of its domain."""
        return self.n == self.m and len(set(self.table)) == self.size

    def __str__(self) -> str:
        return f"SBox {self.n}x{self.m} {list(self.table)}"


def identity_sbox(n: int) -> SBox:
    """The n-bit identity permutation."""
    return SBox(n, n, tuple(range(1 << n)))


def constant_sbox(n: int, m: int, value: int = 0) -> SBox:
    """The S-box mapping every input to `value`."""
    return SBox(n, m, (value,) * (1 << n))


_TOKEN_SPLIT = re.compile(r"[\s,]+")


def parse_sbox(text: str, n: int, m: int) -> SBox:
    """Parse an S-box from whitespace/comma separated integers.

    Tokens may be decimal or 0x-prefixed hexadecimal, row-major.  The widths
    n and m are supplied externally (they are not encoded in the file).
    """
    values = []
    for token in _TOKEN_SPLIT.split(text.strip()):
        if not token:
            continue
        try:
            if token.lower().startswith("0x"):
                values.append(int(token, 16))
            else:
                values.append(int(token, 10))
        except ValueError:
            raise MalformedTokenError(f"cannot parse token {token!r}") from None
    if len(values) != 1 << n:
        raise WrongLengthError(f"expected {1 << n} entries for n={n}, got {len(values)}")
    return SBox(n, m, tuple(values))


def serialize_sbox(sbox: SBox, per_line: int = 16) -> str:
    """Render an S-box in the text format accepted by parse_sbox (decimal)."""
    lines = []
    for start in range(0, sbox.size, per_line):
        lines.append(" ".join(str(v) for v in sbox.table[start : start + per_line]))
    return "\n".join(lines) + "\n"


def random_bijective_sbox(n: int, rng: RngStream) -> SBox:
    """A uniformly random n-bit permutation (unbiased Fisher-Yates)."""
    if not 2 <= n <= 16:
        raise SBoxError(f"input width n={n} outside supported range 2..16")
    return SBox(n, n, tuple(rng.permutation(1 << n)))


def swap_outputs(sbox: SBox, i: int, j: int) -> SBox:
    """A copy of `sbox` with the outputs at positions i and j exchanged."""
    size = sbox.size
    if not (0 <= i < size and 0 <= j < size):
        raise IndexOutOfRangeError(f"positions ({i}, {j}) outside [0, {size})")
    if i == j:
        raise IndexOutOfRangeError("swap positions must differ")
    table = list(sbox.table)
    table[i], table[j] = table[j], table[i]
    return SBox(sbox.n, sbox.m, tuple(table))


@dataclass(frozen=True)
class HwClasses:
    """Partition of the domain by the Hamming weight of the S-box output.

    positions[w] lists the inputs x with HW(F(x)) = w; values[w] holds the
    outputs at those positions, aligned index-for-index with positions[w].
    """

    m: int
    positions: tuple[tuple[int, ...], ...]
    values: tuple[tuple[int, ...], ...]


def hw_classes(sbox: SBox) -> HwClasses:
    """Group domain positions by output Hamming weight."""
    positions: list[list[int]] = [[] for _ in range(sbox.m + 1)]
    values: list[list[int]] = [[] for _ in range(sbox.m + 1)]
    for x, v in enumerate(sbox.table):
        w = hamming_weight(v)
        positions[w].append(x)
        values[w].append(v)
    return HwClasses(
        sbox.m,
        tuple(tuple(p) for p in positions),
        tuple(tuple(v) for v in values),
    )


def hw_class_shuffle(sbox: SBox, rng: RngStream) -> SBox:
    """Re-permute outputs uniformly within each Hamming-weight class.

    The result F' satisfies HW(F'(x)) = HW(F(x)) for every x, so its
    confusion-coefficient profile (and CCV) is exactly that of `sbox`.
    Bijectivity is preserved.  One independent shuffle is drawn per weight
    class; the draw may coincide with the input table.
    """
    classes = hw_classes(sbox)
    table = list(sbox.table)
    for positions, values in zip(classes.positions, classes.values):
        if not positions:
            continue
        shuffled = list(values)
        rng.shuffle(shuffled)
        for pos, v in zip(positions, shuffled):
            table[pos] = v
    return SBox(sbox.n, sbox.m, tuple(table))
