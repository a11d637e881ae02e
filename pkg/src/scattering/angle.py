"""
Angle variables of the periodic box-ball system
Quasi-periodically extended riggings, slides, the linear flow and normalization
back into rigged configurations
"""

from dataclasses import dataclass
from typing import Dict, Mapping, Sequence, Tuple

from src.scattering.kkr import ActionVariable, RiggedConfiguration
from src.utils.config_loader import get_config
from src.utils.errors import InvalidConfigurationError
from src.utils.logger import get_logger

logger = get_logger("angle")

Window = Tuple[int, ...]


def extended(window: Sequence[int], period: int, index: int) -> int:
    """J_index of the sequence with J_{i+m} = J_i + p, from the window J_1..J_m."""
    q, r = divmod(index - 1, len(window))
    return window[r] + q * period


@dataclass(frozen=True)
class AngleRep:
    """
    Representative (d, J) of the angle variable [iota(J) + d].

    `riggings` holds one window (J_1, ..., J_{m_j}) per length of the
    action variable, in increasing order of length.
    """
    action: ActionVariable
    d: int
    riggings: Tuple[Window, ...]

    def __post_init__(self):
        object.__setattr__(self, "riggings", tuple(tuple(w) for w in self.riggings))
        if len(self.riggings) != len(self.action.multiplicities):
            raise InvalidConfigurationError("One rigging window per row length is required")
        for (j, n), window in zip(self.action.multiplicities, self.riggings):
            if len(window) != n:
                raise InvalidConfigurationError(
                    f"Block {j} needs {n} riggings, got {len(window)}"
                )
            p = self.action.vacancy(j)
            if p < 0:
                raise InvalidConfigurationError(f"Negative vacancy p_{j} = {p}")
            if any(a > b for a, b in zip(window, window[1:])) or window[-1] > window[0] + p:
                raise InvalidConfigurationError(
                    f"Block {j} window {window} is not quasi-periodic with period {p}"
                )

    @property
    def L(self) -> int:
        return self.action.L

    @classmethod
    def from_blocks(
        cls, L: int, d: int, blocks: Mapping[int, Sequence[int]]
    ) -> "AngleRep":
        action = ActionVariable.from_mapping(L, {j: len(w) for j, w in blocks.items()})
        return cls(action, d, tuple(tuple(sorted(blocks[j])) for j in action.lengths))

    @classmethod
    def from_rigged_configuration(cls, rc: RiggedConfiguration, d: int = 0) -> "AngleRep":
        return cls.from_blocks(rc.L, d, rc.blocks())

    def blocks(self) -> Dict[int, Window]:
        return dict(zip(self.action.lengths, self.riggings))

    def absolute(self) -> Dict[int, Window]:
        """Windows of iota(J) + d."""
        return {j: tuple(r + self.d for r in w) for j, w in self.blocks().items()}

    def to_rigged_configuration(self) -> RiggedConfiguration:
        return RiggedConfiguration.from_blocks(self.L, self.blocks())

    def with_offset(self, d: int) -> "AngleRep":
        return AngleRep(self.action, d, self.riggings)


def slide(a: AngleRep, k: int, n: int = 1) -> AngleRep:
    """
    Apply sigma_k^n.

    Block k moves its index window by n and gains 2kn; any other block j
    gains 2 min(j,k) n.
    """
    if k < 1:
        raise ValueError(f"Slide index must be positive, got {k}")
    windows = []
    for (j, m_j), window in zip(a.action.multiplicities, a.riggings):
        if j == k:
            p = a.action.vacancy(j)
            windows.append(tuple(
                extended(window, p, i + n) + 2 * k * n for i in range(1, m_j + 1)
            ))
        else:
            windows.append(tuple(r + 2 * min(j, k) * n for r in window))
    return AngleRep(a.action, a.d, tuple(windows))


def linear_evolve(a: AngleRep, capacity: int, t: int) -> AngleRep:
    """T_l^t on angle variables: every rigging of block j gains t min(j, l)."""
    return AngleRep(
        a.action,
        a.d,
        tuple(
            tuple(r + t * min(j, capacity) for r in window)
            for j, window in zip(a.action.lengths, a.riggings)
        ),
    )


def evolve_composite(a: AngleRep, betas: Mapping[int, int]) -> AngleRep:
    """The flow of prod_l T_l^{beta_l}."""
    for capacity, t in betas.items():
        a = linear_evolve(a, capacity, t)
    return a


def shift(a: AngleRep, t: int) -> AngleRep:
    """T_1^t: the offset moves by t."""
    return a.with_offset(a.d + t)


def _interval(absolute: Mapping[int, Window], action: ActionVariable, lengths) -> Tuple[int, int]:
    """Common offsets d with every listed block inside [d, d + p_j]."""
    lo = max(absolute[j][-1] - action.vacancy(j) for j in lengths)
    hi = min(absolute[j][0] for j in lengths)
    return lo, hi


def normalize(a: AngleRep) -> AngleRep:
    """
    Slide a representative into the rigged-configuration range.

    Blocks are fitted from the longest row length down. Sliding a block
    relative to the longer ones only moves its index window, so the
    exponent is the first index whose entry reaches the current lower
    bound. The common offset is finally reduced modulo L, which is a slide
    by sigma_{j_1}^{m_{j_1}} ... sigma_{j_s}^{m_{j_s}}.

    Returns:
        (d', J') with 0 <= d' < L and J' in Rig(m)
    """
    if not a.action.multiplicities:
        return a.with_offset(a.d % a.L)
    lengths = a.action.lengths
    current = a
    absolute = current.absolute()
    lo, hi = _interval(absolute, a.action, lengths[-1:])
    for position in range(len(lengths) - 2, -1, -1):
        j = lengths[position]
        p = a.action.vacancy(j)
        window = absolute[j]
        if p > 0:
            first = min(
                -(-(lo - r) // p) * len(window) + index + 1
                for index, r in enumerate(window)
            )
            exponent = first - 1
            if exponent:
                current = slide(current, j, exponent)
                absolute = current.absolute()
        lo, hi = _interval(absolute, a.action, lengths[position:])
    if lo > hi:
        logger.error("Normalization failed", L=a.L, action=str(a.action))
        raise AssertionError(f"no admissible offset in [{lo}, {hi}]")
    d = lo
    riggings = tuple(tuple(r - d for r in absolute[j]) for j in lengths)
    rc = RiggedConfiguration.from_blocks(a.L, dict(zip(lengths, riggings)))
    if not rc.is_valid():
        raise AssertionError(f"normalized riggings {riggings} are not in Rig(m)")
    result = AngleRep(a.action, d % a.L, riggings)
    if get_config().strict_checks:
        from src.bethe.string_system import canonical_invariant

        if canonical_invariant(result) != canonical_invariant(a):
            raise AssertionError("normalization changed the angle class")
    return result
