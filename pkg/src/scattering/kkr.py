"""
Rigged configurations over B_1^{(x)L} and the KKR bijection
Box addition (path -> rigged configuration), box removal (rigged configuration -> path),
the piecewise-linear formula for the inverse, and the concatenation and carrier-shift rules
"""

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions

from src.dynamics.evolution import Path, is_highest, pass_carrier
from src.utils.config_loader import get_config
from src.utils.errors import InvalidConfigurationError, NotHighestError, SizeGuardError
from src.utils.logger import get_logger

logger = get_logger("kkr")

Row = Tuple[int, int]
Chooser = Callable[[List[List[int]]], List[int]]


def vacancy_number(size: int, multiplicities: Mapping[int, int], j: int) -> int:
    """p_j = L - 2 sum_k min(j,k) m_k; p_0 = L."""
    return size - 2 * sum(min(j, k) * n for k, n in multiplicities.items())


@dataclass(frozen=True)
class ActionVariable:
    """Soliton content m = (m_j) of a system of size L."""
    L: int
    multiplicities: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        cleaned = tuple(sorted((j, n) for j, n in dict(self.multiplicities).items() if n))
        object.__setattr__(self, "multiplicities", cleaned)

    @classmethod
    def from_mapping(cls, L: int, content: Mapping[int, int]) -> "ActionVariable":
        return cls(L, tuple(content.items()))

    @classmethod
    def from_list(cls, L: int, content: Sequence[int]) -> "ActionVariable":
        """Build from the (m_1, m_2, ...) notation."""
        return cls(L, tuple((j + 1, n) for j, n in enumerate(content)))

    @property
    def content(self) -> Dict[int, int]:
        return dict(self.multiplicities)

    @property
    def lengths(self) -> Tuple[int, ...]:
        """H = {j_1 < ... < j_s}."""
        return tuple(j for j, _ in self.multiplicities)

    def m(self, j: int) -> int:
        return self.content.get(j, 0)

    @property
    def total(self) -> int:
        """M = sum_j j m_j, the number of letters 2."""
        return sum(j * n for j, n in self.multiplicities)

    def vacancy(self, j: int) -> int:
        return vacancy_number(self.L, self.content, j)

    def is_admissible(self) -> bool:
        return all(j >= 1 and n > 0 for j, n in self.multiplicities) and 2 * self.total <= self.L

    def validate(self) -> None:
        if not self.is_admissible():
            raise InvalidConfigurationError(
                f"Configuration {self.content} is not admissible for L={self.L}"
            )

    def as_tuple(self) -> Tuple[int, ...]:
        if not self.multiplicities:
            return ()
        return tuple(self.m(j) for j in range(1, self.lengths[-1] + 1))

    def __str__(self) -> str:
        return "(" + ",".join(str(n) for n in self.as_tuple()) + ")"


@dataclass(frozen=True)
class RiggedConfiguration:
    """
    Young diagram with riggings for a path of length L.

    Rows are stored as (length, rigging) sorted by length then rigging,
    both descending.
    """
    L: int
    rows: Tuple[Row, ...] = field(default=())

    def __post_init__(self):
        canonical = tuple(sorted((tuple(r) for r in self.rows), reverse=True))
        object.__setattr__(self, "rows", canonical)

    @classmethod
    def from_blocks(cls, L: int, blocks: Mapping[int, Sequence[int]]) -> "RiggedConfiguration":
        return cls(L, tuple((j, r) for j, riggings in blocks.items() for r in riggings))

    @property
    def action(self) -> ActionVariable:
        counts: Dict[int, int] = {}
        for j, _ in self.rows:
            counts[j] = counts.get(j, 0) + 1
        return ActionVariable.from_mapping(self.L, counts)

    def vacancy(self, j: int) -> int:
        return self.action.vacancy(j)

    def blocks(self) -> Dict[int, Tuple[int, ...]]:
        """Riggings per length, ascending (J_1 <= ... <= J_m)."""
        grouped: Dict[int, List[int]] = {}
        for j, r in self.rows:
            grouped.setdefault(j, []).append(r)
        return {j: tuple(sorted(grouped[j])) for j in sorted(grouped)}

    def problems(self) -> List[str]:
        found = []
        if self.L < 1:
            found.append("system size must be positive")
        action = self.action
        if any(j < 1 for j, _ in self.rows):
            found.append("row lengths must be positive")
            return found
        if 2 * action.total > self.L:
            found.append(f"sum j*m_j = {action.total} exceeds L/2")
        for j, riggings in self.blocks().items():
            p = action.vacancy(j)
            if p < 0:
                found.append(f"negative vacancy p_{j} = {p}")
            elif riggings[0] < 0 or riggings[-1] > p:
                found.append(f"riggings {riggings} of length {j} outside [0, {p}]")
        return found

    def is_valid(self) -> bool:
        return not self.problems()

    def validate(self) -> None:
        found = self.problems()
        if found:
            raise InvalidConfigurationError("; ".join(found))


def _counts(rows: Sequence[Sequence[int]]) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for row in rows:
        counts[row[0]] = counts.get(row[0], 0) + 1
    return counts


def _first(candidates: List[List[int]]) -> List[int]:
    return candidates[0]


def kkr_map(p: Path, choose: Optional[Chooser] = None) -> RiggedConfiguration:
    """
    Box addition: the rigged configuration of a highest path.

    Letters are read from the left. A 2 extends a longest singular string
    (or creates a row of length 1) and makes it singular again for the
    enlarged system.

    Args:
        p: Highest path
        choose: Picks one of several longest singular strings; the result does not
            depend on the pick

    Returns:
        phi(p)
    """
    if not is_highest(p):
        raise NotHighestError(f"{p} is not highest")
    rows: List[List[int]] = []
    size = 0
    for letter in p:
        if letter == "2":
            counts = _counts(rows)
            singular = [r for r in rows if r[1] == vacancy_number(size, counts, r[0])]
            if singular:
                longest = max(r[0] for r in singular)
                target = (choose or _first)([r for r in singular if r[0] == longest])
                target[0] += 1
            else:
                target = [1, 0]
                rows.append(target)
            target[1] = vacancy_number(size + 1, _counts(rows), target[0])
        size += 1
    return RiggedConfiguration(size, tuple((j, r) for j, r in rows))


def kkr_inverse(rc: RiggedConfiguration, choose: Optional[Chooser] = None) -> Path:
    """
    Box removal: the highest path of a rigged configuration.

    Sites are produced from the right. When a singular string exists the
    site is 2 and the shortest singular string loses a box, its rigging
    reset to the new vacancy number; otherwise the site is 1.

    Args:
        rc: Valid rigged configuration
        choose: Picks one of several shortest singular strings

    Returns:
        Highest path of length rc.L
    """
    rc.validate()
    rows = [list(r) for r in rc.rows]
    letters = []
    for size in range(rc.L, 0, -1):
        counts = _counts(rows)
        singular = [r for r in rows if r[1] == vacancy_number(size, counts, r[0])]
        if not singular:
            letters.append("1")
            continue
        letters.append("2")
        shortest = min(r[0] for r in singular)
        target = (choose or _first)([r for r in singular if r[0] == shortest])
        target[0] -= 1
        if target[0] == 0:
            rows = [r for r in rows if r is not target]
        else:
            target[1] = vacancy_number(size - 1, _counts(rows), target[0])
    if rows:
        raise AssertionError(f"box removal left rows {rows}")
    return "".join(reversed(letters))


def kkr_inverse_pwl(rc: RiggedConfiguration) -> Path:
    """
    The inverse bijection through its piecewise-linear (tropical tau function) form.

    tau_i(n) is a maximum over subsets of rows; for fixed subset size the
    dependence on n is linear, so each size keeps only its best constant.
    """
    rc.validate()
    guard = get_config().pwl_max_rows
    if len(rc.rows) > guard:
        raise SizeGuardError(f"{len(rc.rows)} rows exceed the piecewise-linear guard {guard}")
    rows = rc.rows
    best: Dict[int, List[Optional[int]]] = {0: [], 1: []}
    for s in range(len(rows) + 1):
        top = {0: None, 1: None}
        for subset in combinations(rows, s):
            length_sum = sum(nu for nu, _ in subset)
            rig_sum = sum(rig for _, rig in subset)
            pair_sum = 2 * sum(min(a[0], b[0]) for a, b in combinations(subset, 2))
            for i in (0, 1):
                value = (i - 2) * length_sum - rig_sum - pair_sum
                if top[i] is None or value > top[i]:
                    top[i] = value
        best[0].append(top[0])
        best[1].append(top[1])

    def tau(i: int, n: int) -> int:
        return max(s * n + c for s, c in enumerate(best[i]))

    letters = []
    for n in range(1, rc.L + 1):
        x = tau(1, n) - tau(1, n - 1) - tau(0, n) + tau(0, n - 1)
        if x not in (0, 1):
            raise AssertionError(f"piecewise-linear formula produced x_{n} = {x}")
        letters.append("2" if x else "1")
    return "".join(letters)


def concat_rc(qrc: RiggedConfiguration, rrc: RiggedConfiguration) -> RiggedConfiguration:
    """
    Rigged configuration of q (x) r from those of the highest paths q and r.

    Rows of q are kept; a row (j, K) of r becomes (j, K - 2 sum_k min(j,k) l_k + d)
    where l is the configuration of q and d its length.
    """
    qrc.validate()
    rrc.validate()
    left = qrc.action.content
    d = qrc.L
    shifted = tuple(
        (j, rig - 2 * sum(min(j, k) * n for k, n in left.items()) + d)
        for j, rig in rrc.rows
    )
    return RiggedConfiguration(qrc.L + rrc.L, qrc.rows + shifted)


def carrier_rigging_shift_check(p: Path, capacity: int, padding: int) -> bool:
    """
    Check that passing u_l through p (x) 1^n shifts every rigging by min(l, j).

    Args:
        p: Highest path
        capacity: l
        padding: n, large enough for u_l to leave the solitons behind

    Returns:
        True when phi(xi) equals (m, J + min(l, j))
    """
    rc = kkr_map(p)
    extended = p + "1" * padding
    out, c1, c2, _ = pass_carrier(extended, capacity, 0)
    if (c1, c2) != (capacity, 0):
        logger.warning("Carrier did not return to u_l", path=p, capacity=capacity, padding=padding)
        return False
    xi = "".join(out)
    if not is_highest(xi):
        return False
    shifted = RiggedConfiguration(
        len(extended), tuple((j, r + min(capacity, j)) for j, r in rc.rows)
    )
    return kkr_map(xi) == shifted


def partitions_in_range(L: int, M: int) -> Iterator[ActionVariable]:
    """Every m with sum_j j m_j = M that fits in a system of size L."""
    if M < 0 or 2 * M > L:
        return
    for part in partitions(M):
        yield ActionVariable.from_mapping(L, dict(part))


def rigging_choices(action: ActionVariable) -> Iterator[Dict[int, Tuple[int, ...]]]:
    """All elements of Rig(m) as block mappings."""
    per_block = [
        list(combinations_with_replacement(range(action.vacancy(j) + 1), n))
        for j, n in action.multiplicities
    ]
    for choice in product(*per_block):
        yield dict(zip(action.lengths, choice))


def enumerate_configurations(L: int, M: Optional[int] = None) -> Iterator[RiggedConfiguration]:
    """Every valid rigged configuration of size L (with M boxes when given)."""
    totals = [M] if M is not None else range(L // 2 + 1)
    for total in totals:
        for action in partitions_in_range(L, total):
            for blocks in rigging_choices(action):
                yield RiggedConfiguration.from_blocks(L, blocks)


def render_diagram(rc: RiggedConfiguration) -> str:
    """
    ASCII Young diagram: vacancy number, row of boxes, rigging.

    Example for L=7, rows (2,1),(1,2):
        1 |##| 1
        3 |#|  2
    """
    if not rc.rows:
        return "(empty)"
    width = max(len(str(rc.vacancy(j))) for j, _ in rc.rows)
    longest = rc.rows[0][0]
    lines = []
    for j, rig in rc.rows:
        boxes = ("|" + "#" * j + "|").ljust(longest + 2)
        lines.append(f"{str(rc.vacancy(j)).rjust(width)} {boxes} {rig}")
    return "\n".join(lines)
