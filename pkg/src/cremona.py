"""
Reflection calculus of quadratic (Cremona) transformations on Z^{1,9}

A quadratic transformation based at p_i, p_j, p_k acts on the Picard
lattice as the reflection in alpha_ijk = h - e_i - e_j - e_k. All Picard
groups of the surfaces S_i are identified with one fixed copy of Z^{10}, so
relabelling of exceptional classes never has to be tracked explicitly.
"""

import json
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

from .lattice import (
    LatticeVector, basis_e, basis_h, combine, pairing
)

Triple = Tuple[int, int, int]

# psi_S applies these in order: phi_789^*(phi_456^*(phi_123^*(x)))
PSI_TRIPLES: Tuple[Triple, ...] = ((1, 2, 3), (4, 5, 6), (7, 8, 9))


def _validate_triple(triple: Sequence[int]) -> Triple:
    if len(triple) != 3:
        raise ValueError(f"Root needs three indices, got {tuple(triple)!r}")
    for idx in triple:
        if isinstance(idx, bool) or not isinstance(idx, int) or not 1 <= idx <= 9:
            raise ValueError(f"Root index must be in 1..9, got {idx!r}")
    if len(set(triple)) != 3:
        raise ValueError(f"Root indices must be distinct, got {tuple(triple)!r}")
    i, j, k = sorted(triple)
    return (i, j, k)


@dataclass(frozen=True)
class Root:
    """alpha_ijk = h - e_i - e_j - e_k with i < j < k"""
    indices: Triple
    vector: LatticeVector = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        i, j, k = _validate_triple(self.indices)
        object.__setattr__(self, 'indices', (i, j, k))
        object.__setattr__(self, 'vector', basis_h() - basis_e(i) - basis_e(j) - basis_e(k))

    @classmethod
    def from_indices(cls, i: int, j: int, k: int) -> 'Root':
        return cls((i, j, k))


def reflect(x: LatticeVector, r: Root) -> LatticeVector:
    """x + (x.alpha) alpha"""
    return x + pairing(x, r.vector) * r.vector


def quadratic_pullback(i: int, j: int, k: int) -> LatticeVector:
    """phi_ijk^* H_ijk = 2h - e_i - e_j - e_k"""
    return reflect(basis_h(), Root.from_indices(i, j, k))


_PSI_ROOTS: Tuple[Root, ...] = tuple(Root(t) for t in PSI_TRIPLES)


def psi_step(x: LatticeVector) -> LatticeVector:
    for root in _PSI_ROOTS:
        x = reflect(x, root)
    return x


def phi_pullback_iterative(m: int, x: LatticeVector) -> LatticeVector:
    """phi_m^* x by applying psi_step 2m times (psi_i is six transformations)"""
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    for _ in range(2 * m):
        x = psi_step(x)
    return x


def phi_pullback_closed(m: int) -> LatticeVector:
    """(27m^2+1)h - (9m^2-3m)f1 - 9m^2 f2 - (9m^2+3m)f3"""
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    mm = m * m
    return combine(27 * mm + 1, (-(9 * mm - 3 * m), -9 * mm, -(9 * mm + 3 * m)))


def iter_phi_pullbacks(m_max: int, x: Optional[LatticeVector] = None) -> Iterator[Tuple[int, LatticeVector]]:
    """Yield (m, phi_m^* x) for m = 0..m_max, reusing the previous image"""
    current = basis_h() if x is None else x
    yield 0, current
    for m in range(1, m_max + 1):
        current = psi_step(psi_step(current))
        yield m, current


@dataclass(frozen=True)
class CremonaWord:
    """Composite of quadratic transformations, applied left to right"""
    steps: Tuple[Triple, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, 'steps', tuple(_validate_triple(t) for t in self.steps)
        )

    @property
    def roots(self) -> Tuple[Root, ...]:
        return tuple(Root(t) for t in self.steps)

    def reversed(self) -> 'CremonaWord':
        return CremonaWord(tuple(reversed(self.steps)))

    def __add__(self, other: 'CremonaWord') -> 'CremonaWord':
        return CremonaWord(self.steps + other.steps)

    def __len__(self) -> int:
        return len(self.steps)

    @classmethod
    def psi(cls) -> 'CremonaWord':
        return cls(PSI_TRIPLES)

    @classmethod
    def phi(cls, m: int) -> 'CremonaWord':
        if m < 0:
            raise ValueError(f"m must be non-negative, got {m}")
        return cls(PSI_TRIPLES * (2 * m))

    def to_list(self) -> List[List[int]]:
        return [list(t) for t in self.steps]

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_json(cls, text: str) -> 'CremonaWord':
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("CremonaWord JSON must be a list of 3-integer lists")
        return cls(tuple(tuple(step) for step in data))

    @classmethod
    def from_text(cls, text: str) -> 'CremonaWord':
        """Parse "1,2,3;4,5,6"; an empty string is the empty word"""
        text = text.strip()
        if not text:
            return cls(())
        steps = []
        for chunk in text.split(';'):
            try:
                steps.append(tuple(int(part) for part in chunk.split(',')))
            except ValueError:
                raise ValueError(f"Malformed triple {chunk!r} in word {text!r}") from None
        return cls(tuple(steps))

    def to_text(self) -> str:
        return ";".join(",".join(str(i) for i in t) for t in self.steps)


def apply_word(w: CremonaWord, x: LatticeVector) -> LatticeVector:
    if not isinstance(w, CremonaWord):
        w = CremonaWord(tuple(tuple(step) for step in w))
    for root in w.roots:
        x = reflect(x, root)
    return x
