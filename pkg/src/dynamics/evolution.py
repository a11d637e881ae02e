"""
Time evolutions of the periodic box-ball system on B_1^{(x)L}
Carriers, energies, inverse evolution, T_infinity and the Weyl group action on paths
"""

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from src.dynamics.crystal import (
    CrystalElement,
    TensorWord,
    omega,
    r_matrix_components,
    weyl_s,
)
from src.utils.errors import InvalidPathError
from src.utils.logger import get_logger

logger = get_logger("evolution")

# A path is the string of its letters over {1, 2}.
Path = str

WEYL_GENERATORS = ("omega", "s0", "s1")


@dataclass(frozen=True)
class EvolutionResult:
    """Outcome of one application of T_l."""
    next: Path
    energy: int
    carrier: CrystalElement


def parse_path(text: str) -> Path:
    """
    Validate path text.

    Args:
        text: Candidate path, surrounding whitespace ignored

    Returns:
        The path string
    """
    path = text.strip()
    if not path or set(path) - {"1", "2"}:
        raise InvalidPathError(f"Path must be a nonempty word over 1 and 2: {text!r}")
    return path


def weight(p: Path) -> int:
    return p.count("1") - p.count("2")


def is_highest(p: Path) -> bool:
    """Every prefix has at least as many 1s as 2s."""
    height = 0
    for letter in p:
        height += 1 if letter == "1" else -1
        if height < 0:
            return False
    return True


def reverse(p: Path) -> Path:
    return p[::-1]


def omega_path(p: Path) -> Path:
    return p.translate(str.maketrans("12", "21"))


def to_word(p: Path) -> TensorWord:
    return tuple(CrystalElement(1, 0) if c == "1" else CrystalElement(0, 1) for c in p)


def from_word(word: Sequence[CrystalElement]) -> Path:
    if any(b.capacity != 1 for b in word):
        raise InvalidPathError("Paths are words in B_1 only")
    return "".join(str(b) for b in word)


def pass_carrier(p: Path, c1: int, c2: int) -> Tuple[List[str], int, int, int]:
    """
    Thread the carrier (c1, c2) through p from left to right.

    Returns:
        (output letters, final c1, final c2, accumulated -sum H)
    """
    out: List[str] = []
    energy = 0
    for letter in p:
        y1, y2 = (1, 0) if letter == "1" else (0, 1)
        yt1, _, c1, c2, h = r_matrix_components(c1, c2, y1, y2)
        out.append("1" if yt1 else "2")
        energy -= h
    return out, c1, c2, energy


def carrier(p: Path, capacity: int) -> CrystalElement:
    """
    The carrier v_l of p: u_l (or omega(u_l) when wt < 0) passed through p once.

    Args:
        p: Path
        capacity: l >= 1

    Returns:
        v_l in B_l
    """
    seed = (capacity, 0) if weight(p) >= 0 else (0, capacity)
    _, c1, c2, _ = pass_carrier(p, *seed)
    return CrystalElement(c1, c2)


def seed_energy(p: Path, capacity: int) -> int:
    """D_l(p): the energy gathered while the seed u_l builds the carrier."""
    seed = (capacity, 0) if weight(p) >= 0 else (0, capacity)
    return pass_carrier(p, *seed)[3]


def evolve(p: Path, capacity: int) -> EvolutionResult:
    """
    Apply T_l once.

    Args:
        p: Path
        capacity: l >= 1

    Returns:
        EvolutionResult with T_l(p), E_l(p) and the carrier v_l
    """
    if capacity < 1:
        raise ValueError(f"Carrier capacity must be positive, got {capacity}")
    v = carrier(p, capacity)
    out, c1, c2, energy = pass_carrier(p, v.x1, v.x2)
    if (c1, c2) != (v.x1, v.x2):
        logger.error("Carrier did not close", path=p, capacity=capacity)
        raise AssertionError(f"carrier of {p} under T_{capacity} is not periodic")
    return EvolutionResult("".join(out), energy, v)


def carrier_candidates(p: Path, capacity: int) -> List[CrystalElement]:
    """All b in B_l that return unchanged after passing through p."""
    found = []
    for a in range(capacity + 1):
        _, c1, c2, _ = pass_carrier(p, capacity - a, a)
        if (c1, c2) == (capacity - a, a):
            found.append(CrystalElement(capacity - a, a))
    return found


def evolve_with_carrier(p: Path, b: CrystalElement) -> Tuple[Path, int]:
    """T_l(p) and E_l(p) computed with a given fixed-point carrier b."""
    out, _, _, energy = pass_carrier(p, b.x1, b.x2)
    return "".join(out), energy


def energy(p: Path, capacity: int) -> int:
    return evolve(p, capacity).energy


def energies(p: Path, kmax: int) -> Tuple[int, ...]:
    """(E_1(p), ..., E_kmax(p))."""
    return tuple(energy(p, k) for k in range(1, kmax + 1))


def action_from_energies(values: Sequence[int]) -> dict:
    """
    Recover soliton content from energies by second differences.

    Args:
        values: (E_1, ..., E_K); E_K must already be saturated for m_K to be exact

    Returns:
        Mapping length j -> m_j for j < K with m_j > 0
    """
    padded = (0,) + tuple(values)
    content = {}
    for l in range(1, len(values)):
        m_l = 2 * padded[l] - padded[l - 1] - padded[l + 1]
        if m_l:
            content[l] = m_l
    return content


def t1(p: Path) -> Path:
    """Cyclic shift to the right by one site."""
    return p[-1] + p[:-1]


def t1_power(p: Path, d: int) -> Path:
    """T_1^d for any integer d."""
    if not p:
        return p
    d %= len(p)
    return p[len(p) - d:] + p[:len(p) - d] if d else p


def evolve_inverse(p: Path, capacity: int) -> Path:
    """T_l^{-1}(p) = rho T_l rho (p)."""
    return reverse(evolve(reverse(p), capacity).next)


def t_infinity(p: Path) -> Path:
    """T_infinity = omega s_0 when wt >= 0, omega s_1 otherwise."""
    i = 0 if weight(p) >= 0 else 1
    return from_word(omega(weyl_s(to_word(p), i)))


def weyl_on_path(p: Path, generators: Iterable[str]) -> Path:
    """
    Apply generators of the extended affine Weyl group, leftmost first.

    Args:
        p: Path
        generators: Sequence drawn from "omega", "s0", "s1"

    Returns:
        The transformed path
    """
    word = to_word(p)
    for g in generators:
        if g == "omega":
            word = omega(word)
        elif g == "s0":
            word = weyl_s(word, 0)
        elif g == "s1":
            word = weyl_s(word, 1)
        else:
            raise ValueError(f"Unknown Weyl generator: {g}")
    return from_word(word)


def iterate(p: Path, capacity: int, steps: int) -> Path:
    """T_l^steps(p) by repeated evolution; negative steps use the inverse."""
    step = evolve_inverse if steps < 0 else (lambda q, l: evolve(q, l).next)
    for _ in range(abs(steps)):
        p = step(p, capacity)
    return p
