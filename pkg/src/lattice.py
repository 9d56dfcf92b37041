"""
Exact arithmetic in the odd unimodular lattice Z^{1,9}

Basis order is fixed as (h, e1, ..., e9); the bilinear form is
    (a; b1..b9) . (a'; b1'..b9') = a*a' - sum(b_l * b_l').
All coordinates are Python ints, so nothing overflows.
"""

import json
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

RANK = 10
EXCEPTIONAL_COUNT = 9


@dataclass(frozen=True)
class LatticeVector:
    """An element a*h + sum(b_i * e_i) of Z^{1,9}"""
    coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if len(coords) != RANK:
            raise ValueError(
                f"LatticeVector needs {RANK} coordinates, got {len(coords)}"
            )
        for value in coords:
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"Coordinate {value!r} is not an integer")
        object.__setattr__(self, 'coords', coords)

    @classmethod
    def of(cls, a: int, b: Sequence[int]) -> 'LatticeVector':
        return cls((a, *b))

    @classmethod
    def zero(cls) -> 'LatticeVector':
        return cls((0,) * RANK)

    @property
    def h_coefficient(self) -> int:
        return self.coords[0]

    @property
    def e_coefficients(self) -> Tuple[int, ...]:
        return self.coords[1:]

    def __add__(self, other: 'LatticeVector') -> 'LatticeVector':
        if not isinstance(other, LatticeVector):
            return NotImplemented
        return LatticeVector(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: 'LatticeVector') -> 'LatticeVector':
        if not isinstance(other, LatticeVector):
            return NotImplemented
        return LatticeVector(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> 'LatticeVector':
        return LatticeVector(tuple(-x for x in self.coords))

    def __mul__(self, scalar: int) -> 'LatticeVector':
        if isinstance(scalar, bool) or not isinstance(scalar, int):
            return NotImplemented
        return LatticeVector(tuple(scalar * x for x in self.coords))

    __rmul__ = __mul__

    def to_list(self) -> List[int]:
        return list(self.coords)

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_json(cls, text: str) -> 'LatticeVector':
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("LatticeVector JSON must be an array of 10 integers")
        return cls(tuple(data))

    def to_text(self) -> str:
        """Compact CLI form "a;b1,b2,...,b9" """
        return f"{self.coords[0]};" + ",".join(str(b) for b in self.coords[1:])

    @classmethod
    def from_text(cls, text: str) -> 'LatticeVector':
        head, sep, tail = text.strip().partition(';')
        if not sep:
            raise ValueError(f"Expected 'a;b1,...,b9', got {text!r}")
        try:
            a = int(head)
            b = [int(part) for part in tail.split(',')]
        except ValueError:
            raise ValueError(f"Non-integer coordinate in {text!r}") from None
        return cls.of(a, b)

    def __str__(self) -> str:
        return f"({self.to_text()})"


def basis_h() -> LatticeVector:
    return LatticeVector((1,) + (0,) * EXCEPTIONAL_COUNT)


def basis_e(i: int) -> LatticeVector:
    """The exceptional class e_i, 1 <= i <= 9"""
    if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= EXCEPTIONAL_COUNT:
        raise ValueError(f"Exceptional index must be in 1..9, got {i!r}")
    coords = [0] * RANK
    coords[i] = 1
    return LatticeVector(tuple(coords))


def pairing(x: LatticeVector, y: LatticeVector) -> int:
    """x.y = a*a' - sum b_l*b_l'"""
    a, *b = x.coords
    a2, *b2 = y.coords
    return a * a2 - sum(p * q for p, q in zip(b, b2))


def canonical_class() -> LatticeVector:
    """k = -3h + e1 + ... + e9; -k is the elliptic fibre class f"""
    return LatticeVector((-3,) + (1,) * EXCEPTIONAL_COUNT)


def fibre_class() -> LatticeVector:
    return -canonical_class()


def triple_sum(i: int) -> LatticeVector:
    """f_i = e_{3i-2} + e_{3i-1} + e_{3i}"""
    if isinstance(i, bool) or not isinstance(i, int) or i not in (1, 2, 3):
        raise ValueError(f"Triple index must be 1, 2 or 3, got {i!r}")
    return basis_e(3 * i - 2) + basis_e(3 * i - 1) + basis_e(3 * i)


def degree(x: LatticeVector) -> int:
    """Anticanonical degree x.(-k)"""
    return pairing(x, fibre_class())


def combine(h_coeff: int, f_coeffs: Sequence[int]) -> LatticeVector:
    """h_coeff*h + f_coeffs[0]*f1 + f_coeffs[1]*f2 + f_coeffs[2]*f3"""
    if len(f_coeffs) != 3:
        raise ValueError("Need exactly three f-coefficients")
    vector = h_coeff * basis_h()
    for i, c in enumerate(f_coeffs, start=1):
        vector = vector + c * triple_sum(i)
    return vector


def gram_matrix() -> List[List[int]]:
    basis = [basis_h()] + [basis_e(i) for i in range(1, EXCEPTIONAL_COUNT + 1)]
    return [[pairing(x, y) for y in basis] for x in basis]


def lattice_sum(vectors: Iterable[LatticeVector]) -> LatticeVector:
    total = LatticeVector.zero()
    for v in vectors:
        total = total + v
    return total
