"""
Brute-force oracle for small systems
Path enumeration classified by energies, level sets, iterated-evolution periods
and orbit counting under families of time evolutions
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import networkx as nx
from tqdm import tqdm

from src.dynamics.evolution import Path, energies, evolve, weight
from src.scattering.kkr import ActionVariable
from src.scattering.transform import action
from src.utils.config_loader import get_config
from src.utils.errors import PeriodCapExceeded, SizeGuardError
from src.utils.logger import get_logger

logger = get_logger("oracle")

__all__ = [
    "Census",
    "OrbitCount",
    "all_paths",
    "brute_orbits",
    "brute_period",
    "census",
    "level_set",
]


@dataclass
class Census:
    """
    Every path of size L (optionally with M letters 2) classified by its energies.

    `full` holds the sets P^(m) of all weights, `level_sets` the parts P(m) of
    weight L - 2 sum_j j m_j.
    """
    L: int
    M: Optional[int] = None
    full: Dict[ActionVariable, List[Path]] = field(default_factory=dict)
    level_sets: Dict[ActionVariable, List[Path]] = field(default_factory=dict)
    energies: Dict[Path, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(len(paths) for paths in self.full.values())

    def counts(self) -> Dict[ActionVariable, int]:
        return {m: len(paths) for m, paths in self.level_sets.items()}


def all_paths(L: int, M: Optional[int] = None) -> Iterator[Path]:
    """Paths in lexicographic order, restricted to M letters 2 when given."""
    for letters in product("12", repeat=L):
        p = "".join(letters)
        if M is None or p.count("2") == M:
            yield p


def _guard(L: int, limit: int, what: str) -> None:
    if L < 1:
        raise SizeGuardError(f"{what} needs a positive system size")
    if L > limit:
        raise SizeGuardError(f"{what} of L={L} exceeds the configured limit {limit}")


def census(L: int, M: Optional[int] = None) -> Census:
    """
    Classify paths by their energy vectors.

    The energies (E_1, ..., E_{L//2 + 1}) determine m through second
    differences; each class is checked against the action variable computed
    through the KKR bijection.

    Args:
        L: System size
        M: Number of letters 2, or None for all paths

    Returns:
        Census of the requested paths
    """
    config = get_config()
    _guard(L, config.census_max_l, "Census")
    kmax = L // 2 + 1
    result = Census(L, M)
    total = 2 ** L if M is None else None
    for p in tqdm(all_paths(L, M), total=total, desc=f"census L={L}", disable=not config.show_progress):
        values = energies(p, kmax)
        m = _classify(L, values)
        if m != action(p):
            logger.error("Census classification failed", path=p, energies=values)
            raise AssertionError(f"energies of {p} give {m}, KKR gives {action(p)}")
        result.energies[p] = values
        result.full.setdefault(m, []).append(p)
        if weight(p) == L - 2 * m.total:
            result.level_sets.setdefault(m, []).append(p)
    logger.info("Census completed", L=L, M=M, classes=len(result.full), paths=result.total)
    return result


def _classify(L: int, values: Tuple[int, ...]) -> ActionVariable:
    padded = (0,) + tuple(values)
    content = {
        l: 2 * padded[l] - padded[l - 1] - padded[l + 1]
        for l in range(1, len(values))
    }
    return ActionVariable.from_mapping(L, content)


def level_set(L: int, m: ActionVariable) -> List[Path]:
    """P(m) in lexicographic order."""
    return census(L, m.total).level_sets.get(ActionVariable(L, m.multiplicities), [])


def brute_period(p: Path, capacity: int, cap: Optional[int] = None) -> int:
    """
    The least N with T_l^N(p) = p, found by iterating single steps.

    Raises:
        PeriodCapExceeded: No return within `cap` steps
    """
    cap = cap or get_config().period_cap
    current = p
    for n in range(1, cap + 1):
        current = evolve(current, capacity).next
        if current == p:
            return n
    raise PeriodCapExceeded(p, capacity, cap)


@dataclass
class OrbitCount:
    """Orbits of a level set under a family of evolutions."""
    count: int
    sizes: List[int]


def brute_orbits(L: int, m: ActionVariable, capacities: Iterable[int]) -> OrbitCount:
    """
    Connected components of the level set under the listed T_l.

    Args:
        L: System size
        m: Configuration
        capacities: The l of every evolution in the family

    Returns:
        OrbitCount with sizes in increasing order
    """
    _guard(L, get_config().orbit_max_l, "Orbit count")
    paths = level_set(L, m)
    graph = nx.Graph()
    graph.add_nodes_from(paths)
    for capacity in capacities:
        for p in paths:
            graph.add_edge(p, evolve(p, capacity).next)
    sizes = sorted(len(component) for component in nx.connected_components(graph))
    return OrbitCount(len(sizes), sizes)
