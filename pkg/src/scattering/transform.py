"""
Inverse scattering transform
Decomposition p = T_1^d(p_+), the action variable, the maps Phi and Phi^{-1},
and fast evolution through the linearized flow
"""

from itertools import accumulate
from typing import List, Optional, Tuple

from src.dynamics.evolution import Path, omega_path, t1_power, weight
from src.scattering.angle import AngleRep, linear_evolve, normalize
from src.scattering.kkr import ActionVariable, RiggedConfiguration, kkr_inverse, kkr_map
from src.utils.errors import NegativeWeightError
from src.utils.logger import get_logger

logger = get_logger("transform")


def _heights(p: Path) -> List[int]:
    """h_0 = 0 and h_k = (#1 - #2) among the first k letters."""
    return [0] + list(accumulate(1 if c == "1" else -1 for c in p))


def all_decompositions(p: Path) -> List[int]:
    """
    Every d in [0, L) with p = T_1^d(p_+) for a highest p_+.

    Cutting at d is valid when h_d is a minimum of the heights to its right
    and is not above any height to its left once wt(p) is added.
    """
    wt = weight(p)
    if wt < 0:
        raise NegativeWeightError(f"{p} has weight {wt}; apply omega first")
    h = _heights(p)
    L = len(p)
    suffix_min = list(accumulate(reversed(h), min))[::-1]
    prefix_min = list(accumulate(h, min))
    return [
        d for d in range(L)
        if h[d] <= suffix_min[d] and h[d] <= prefix_min[d] + wt
    ]


def decompose(p: Path) -> Tuple[int, Path]:
    """
    Split p into the minimal shift d and the highest path p_+.

    Args:
        p: Path with wt(p) >= 0

    Returns:
        (d, p_+) with p = T_1^d(p_+)
    """
    candidates = all_decompositions(p)
    if not candidates:
        raise AssertionError(f"no highest rotation of {p}")
    d = candidates[0]
    return d, p[d:] + p[:d]


def action(p: Path) -> ActionVariable:
    """The action variable mu(p); omega is applied first when wt(p) < 0."""
    if weight(p) < 0:
        p = omega_path(p)
    _, highest = decompose(p)
    return kkr_map(highest).action


def direct(p: Path) -> AngleRep:
    """
    Phi: a path of nonnegative weight to its angle representative (d, J).

    Args:
        p: Path with wt(p) >= 0

    Returns:
        AngleRep with (m, J) = phi(p_+)
    """
    d, highest = decompose(p)
    return AngleRep.from_rigged_configuration(kkr_map(highest), d)


def inverse(a: AngleRep) -> Path:
    """Phi^{-1}: normalize, remove boxes, then shift by the offset."""
    reduced = normalize(a)
    highest = kkr_inverse(RiggedConfiguration.from_blocks(reduced.L, reduced.blocks()))
    return t1_power(highest, reduced.d)


def fast_evolve(p: Path, capacity: int, t: int, period: Optional[int] = None) -> Path:
    """
    T_l^t(p) through the linearized flow.

    Args:
        p: Path
        capacity: l >= 1
        t: Number of steps, negative for the inverse evolution
        period: When given, t is first reduced modulo this period of T_l

    Returns:
        T_l^t(p)
    """
    if capacity < 1:
        raise ValueError(f"Carrier capacity must be positive, got {capacity}")
    if weight(p) < 0:
        return omega_path(fast_evolve(omega_path(p), capacity, t, period))
    if period:
        t %= period
    try:
        return inverse(linear_evolve(direct(p), capacity, t))
    except AssertionError as e:
        logger.error("Fast evolution failed", path=p, capacity=capacity, steps=t, error=str(e))
        raise
