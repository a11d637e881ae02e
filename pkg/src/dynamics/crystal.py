"""
Crystals B_l of the symmetric tensor representations of U_q(A_1^(1)) at q=0
Elements, the combinatorial R-matrix with its energy function, the signature
rule for Kashiwara operators and the extended affine Weyl group generators
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from src.utils.errors import InvalidPathError
from src.utils.logger import get_logger

logger = get_logger("crystal")


@dataclass(frozen=True)
class CrystalElement:
    """An element (x1, x2) of B_l, rendered as the tableau 1^x1 2^x2."""
    x1: int
    x2: int

    def __post_init__(self):
        if self.x1 < 0 or self.x2 < 0 or self.x1 + self.x2 < 1:
            raise ValueError(f"Invalid crystal element ({self.x1},{self.x2})")

    @property
    def capacity(self) -> int:
        return self.x1 + self.x2

    def component(self, i: int) -> int:
        """Return x_i with the index read in Z_2 (x_0 = x_2)."""
        return self.x1 if i % 2 == 1 else self.x2

    @classmethod
    def highest(cls, capacity: int) -> "CrystalElement":
        """The element u_l = (l, 0)."""
        return cls(capacity, 0)

    @classmethod
    def lowest(cls, capacity: int) -> "CrystalElement":
        """The element omega(u_l) = (0, l)."""
        return cls(0, capacity)

    @classmethod
    def from_tableau(cls, text: str) -> "CrystalElement":
        if not text or set(text) - {"1", "2"} or "21" in text:
            raise InvalidPathError(f"Not a one-row tableau: {text!r}")
        return cls(text.count("1"), text.count("2"))

    def __str__(self) -> str:
        return "1" * self.x1 + "2" * self.x2


TensorWord = Tuple[CrystalElement, ...]


@dataclass(frozen=True)
class RMatrixOutput:
    """Image y~ (x) x~ of x (x) y under R together with the local energy H."""
    y_tilde: CrystalElement
    x_tilde: CrystalElement
    energy_h: int


def r_matrix_components(
    x1: int, x2: int, y1: int, y2: int
) -> Tuple[int, int, int, int, int]:
    """
    Integer kernel of the combinatorial R.

    Returns:
        (y~1, y~2, x~1, x~2, H) with Q_i = min(x_{i+1}, y_i)
    """
    q0 = min(x1, y2)
    q1 = min(x2, y1)
    return y1 + q0 - q1, y2 + q1 - q0, x1 + q1 - q0, x2 + q0 - q1, -q0


def combinatorial_r(x: CrystalElement, y: CrystalElement) -> RMatrixOutput:
    """
    Apply R: B_l (x) B_k -> B_k (x) B_l.

    Args:
        x: Left factor in B_l
        y: Right factor in B_k

    Returns:
        RMatrixOutput with y~ in B_k, x~ in B_l and H in [-min(l,k), 0]
    """
    yt1, yt2, xt1, xt2, h = r_matrix_components(x.x1, x.x2, y.x1, y.x2)
    return RMatrixOutput(CrystalElement(yt1, yt2), CrystalElement(xt1, xt2), h)


def affine_r(
    x: CrystalElement, d: int, y: CrystalElement, e: int
) -> Tuple[CrystalElement, int, CrystalElement, int]:
    """R on affinizations: zeta^d x (x) zeta^e y -> zeta^(e+H) y~ (x) zeta^(d-H) x~."""
    out = combinatorial_r(x, y)
    return out.y_tilde, e + out.energy_h, out.x_tilde, d - out.energy_h


# Reduced signatures are stored as runs (component index, multiplicity).
Runs = List[List[int]]


def _reduced_signature(word: Sequence[CrystalElement], i: int) -> Tuple[Runs, Runs]:
    """
    Cancel every (+, -) pair of the i-signature in one stack pass.

    Each component contributes -^eps +^phi with eps = x_{i+1}, phi = x_i.

    Returns:
        (unmatched minus runs left to right, unmatched plus runs left to right)
    """
    minus: Runs = []
    plus: Runs = []
    for index, element in enumerate(word):
        eps = element.component(i + 1)
        while eps and plus:
            take = min(eps, plus[-1][1])
            plus[-1][1] -= take
            eps -= take
            if plus[-1][1] == 0:
                plus.pop()
        if eps:
            minus.append([index, eps])
        phi = element.component(i)
        if phi:
            plus.append([index, phi])
    return minus, plus


def epsilon(word: Sequence[CrystalElement], i: int) -> int:
    minus, _ = _reduced_signature(word, i)
    return sum(n for _, n in minus)


def phi(word: Sequence[CrystalElement], i: int) -> int:
    _, plus = _reduced_signature(word, i)
    return sum(n for _, n in plus)


def _lower(element: CrystalElement, i: int, count: int) -> CrystalElement:
    """f~_i applied `count` times to a single element: x_i -= count, x_{i+1} += count."""
    if i % 2 == 1:
        return CrystalElement(element.x1 - count, element.x2 + count)
    return CrystalElement(element.x1 + count, element.x2 - count)


def kashiwara(word: Sequence[CrystalElement], op: str, i: int) -> Optional[TensorWord]:
    """
    Apply e~_i or f~_i by the signature rule.

    Args:
        word: Tensor word
        op: "e" or "f"
        i: 0 or 1

    Returns:
        The new word, or None for the crystal zero
    """
    if op not in ("e", "f"):
        raise ValueError(f"Unknown Kashiwara operator: {op}")
    minus, plus = _reduced_signature(word, i)
    result = list(word)
    if op == "f":
        if not plus:
            return None
        index = plus[0][0]
        result[index] = _lower(result[index], i, 1)
    else:
        if not minus:
            return None
        index = minus[-1][0]
        result[index] = _lower(result[index], i, -1)
    return tuple(result)


def weyl_s(word: Sequence[CrystalElement], i: int) -> TensorWord:
    """
    Simple reflection s_i: the reduced signature -^a +^b becomes -^b +^a.

    For b > a the leftmost b - a unmatched pluses flip, otherwise the
    rightmost a - b unmatched minuses flip.
    """
    minus, plus = _reduced_signature(word, i)
    alpha = sum(n for _, n in minus)
    beta = sum(n for _, n in plus)
    result = list(word)
    if beta > alpha:
        remaining = beta - alpha
        for index, n in plus:
            take = min(n, remaining)
            result[index] = _lower(result[index], i, take)
            remaining -= take
            if remaining == 0:
                break
    elif alpha > beta:
        remaining = alpha - beta
        for index, n in reversed(minus):
            take = min(n, remaining)
            result[index] = _lower(result[index], i, -take)
            remaining -= take
            if remaining == 0:
                break
    return tuple(result)


def omega(word: Sequence[CrystalElement]) -> TensorWord:
    """Dynkin diagram automorphism, (x1, x2) -> (x2, x1) componentwise."""
    return tuple(CrystalElement(b.x2, b.x1) for b in word)


def reverse_word(word: Sequence[CrystalElement]) -> TensorWord:
    """The reversal rho of the tensor order."""
    return tuple(reversed(tuple(word)))


def word_weight(word: Sequence[CrystalElement]) -> int:
    """wt = sum of (x1 - x2), in units of Lambda_1."""
    return sum(b.x1 - b.x2 for b in word)


def parse_word(text: str) -> TensorWord:
    """Parse "11112 12 2 1122" (or components joined by the tensor sign)."""
    parts = text.replace("⊗", " ").split()
    if not parts:
        raise InvalidPathError("Empty tensor word")
    return tuple(CrystalElement.from_tableau(part) for part in parts)


def render_word(word: Sequence[CrystalElement], separator: str = " ") -> str:
    return separator.join(str(b) for b in word)
