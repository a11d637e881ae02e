"""
Periods of the time evolutions
Generic and fundamental periods from the string center matrices, symmetry
orders of rigging blocks and orbit counts of level sets
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import binomial, divisors, ilcm, totient

from src.bethe.string_system import build, omega_count
from src.dynamics.evolution import Path, omega_path, weight
from src.oracle.census import brute_orbits
from src.scattering.angle import AngleRep, extended
from src.scattering.kkr import ActionVariable
from src.scattering.transform import direct
from src.utils.logger import get_logger

logger = get_logger("periods")


def lcm_rationals(values: Sequence[Fraction]) -> int:
    """
    LCM(1, r_1, ..., r_n): the least positive integer in Z r_1 cap ... cap Z r_n.

    For r = a/b in lowest terms, Z r cap Z = a Z, so only numerators matter.
    """
    result = 1
    for value in values:
        value = Fraction(value)
        if value == 0:
            raise ValueError("LCM of rationals is undefined for zero")
        result = int(ilcm(result, abs(value.numerator)))
    return result


def _column_vector(action: ActionVariable, betas: Mapping[int, int]) -> Tuple[int, ...]:
    """sum_l beta_l h'_l."""
    return tuple(
        sum(beta * min(j, capacity) for capacity, beta in betas.items())
        for j in action.lengths
    )


def _f_ratios(
    action: ActionVariable,
    vector: Tuple[int, ...],
    orders: Optional[Mapping[int, int]] = None,
) -> List[Fraction]:
    """det F / (g_j det F[j]) over the lengths with det F[j] != 0."""
    system = build(action)
    det_f = system.det_f()
    ratios = []
    for j in action.lengths:
        minor = system.det_f_column(j, vector)
        if minor:
            g = orders.get(j, 1) if orders else 1
            ratios.append(Fraction(det_f, g * minor))
    return ratios


def union_prime_terms(action: ActionVariable, capacity: int) -> List[Fraction]:
    """
    The simplified argument list p_{i_{n+1}} p_{i_n} / ((i_{n+1} - i_n) p_{i_s}).

    Here i_n = min(l, j_n), i_0 = 0 and p_0 = L. Repeated i_n give no term; when
    p_{i_s} = 0 only the terms that stay finite after cancellation are kept.
    """
    i = [0] + [min(capacity, j) for j in action.lengths]
    p = [action.L] + [action.vacancy(k) for k in i[1:]]
    top = p[-1]
    terms = []
    for n in range(len(i) - 1):
        step = i[n + 1] - i[n]
        if step == 0:
            continue
        if top == 0:
            if p[n + 1] == 0:
                terms.append(Fraction(p[n], step))
            continue
        terms.append(Fraction(p[n + 1] * p[n], step * top))
    return terms


def generic_period(action: ActionVariable, capacity: int) -> int:
    """
    The generic period N of T_l on the level set of m.

    Computed from the F-determinants and from the simplified list, which
    must agree.
    """
    if capacity < 1:
        raise ValueError(f"Carrier capacity must be positive, got {capacity}")
    if not action.multiplicities:
        return 1
    system = build(action, capacity)
    from_f = lcm_rationals(_f_ratios(action, system.h_prime))
    from_terms = lcm_rationals(union_prime_terms(action, capacity))
    if from_f != from_terms:
        logger.error("Period formulas disagree", action=str(action), capacity=capacity,
                     from_f=from_f, from_terms=from_terms)
        raise AssertionError(f"generic period {from_f} != {from_terms}")
    top, top_n = action.multiplicities[-1]
    if 2 * action.total == action.L and capacity >= top and from_f != 2 * top_n:
        raise AssertionError(f"zero-weight period {from_f} != 2 m_{top}")
    return from_f


def generic_period_from_a(action: ActionVariable, capacity: int) -> int:
    """N as LCM(1, det A / det A[j alpha]) over the nonvanishing minors."""
    if not action.multiplicities:
        return 1
    system = build(action, capacity)
    det_a = system.det_a()
    ratios = []
    for j, alpha in system.indices:
        minor = system.det_a_column(j, alpha)
        if minor:
            ratios.append(Fraction(det_a, minor))
    return lcm_rationals(ratios)


def composite_period(action: ActionVariable, betas: Mapping[int, int]) -> int:
    """Generic period of prod_l T_l^{beta_l}, h' replaced by sum_l beta_l h'_l."""
    if not action.multiplicities:
        return 1
    return lcm_rationals(_f_ratios(action, _column_vector(action, betas)))


def symmetry_orders(a: AngleRep) -> Dict[int, int]:
    """
    The largest g_j dividing gcd(m_j, p_j) with J_{i + m_j/g} - J_i = p_j/g for all i.

    A block with p_j = 0 is constant and has g_j = m_j.
    """
    orders = {}
    for (j, n), window in zip(a.action.multiplicities, a.riggings):
        p = a.action.vacancy(j)
        if p == 0:
            orders[j] = n
            continue
        for g in sorted(divisors(gcd(n, p)), reverse=True):
            step = n // g
            if all(extended(window, p, i + step) - window[i - 1] == p // g for i in range(1, n + 1)):
                orders[j] = int(g)
                break
    return orders


def _positive(p: Path) -> Path:
    return omega_path(p) if weight(p) < 0 else p


def fundamental_period(p: Path, capacity: int) -> int:
    """
    The least N >= 1 with T_l^N(p) = p.

    Args:
        p: Path
        capacity: l >= 1

    Returns:
        LCM(1, det F / (g_j det F[j])) over the nonvanishing minors
    """
    return fundamental_period_composite(p, {capacity: 1})


def fundamental_period_composite(p: Path, betas: Mapping[int, int]) -> int:
    """Fundamental period of prod_l T_l^{beta_l} applied to p."""
    a = direct(_positive(p))
    if not a.action.multiplicities:
        return 1
    vector = _column_vector(a.action, betas)
    return lcm_rationals(_f_ratios(a.action, vector, symmetry_orders(a)))


def cyclic_orbit_count(total: int, parts: int) -> int:
    """
    C(p, m): orbits of monomials of degree p in m variables under cyclic rotation.

    Burnside's lemma over the rotation group of order m.
    """
    if parts < 1:
        raise ValueError("At least one variable is required")
    fixed = sum(
        totient(d) * binomial(total // d + parts // d - 1, parts // d - 1)
        for d in divisors(gcd(parts, total))
    )
    return int(fixed) // parts


def cyclic_orbit_count_brute(total: int, parts: int) -> int:
    """C(p, m) by listing weak compositions and keeping one rotation per orbit."""
    seen = set()
    for bars in combinations(range(total + parts - 1), parts - 1):
        edges = (-1,) + bars + (total + parts - 1,)
        composition = tuple(edges[k + 1] - edges[k] - 1 for k in range(parts))
        seen.add(min(composition[k:] + composition[:k] for k in range(parts)))
    return len(seen)


def orbit_count_all_evolutions(action: ActionVariable) -> int:
    """Orbits of the level set under all T_l together: prod_j C(p_j, m_j)."""
    count = 1
    for j, n in action.multiplicities:
        count *= cyclic_orbit_count(action.vacancy(j), n)
    return count


def is_generic(action: ActionVariable) -> bool:
    """gcd(p_j, m_j) = 1 for every occurring length."""
    return all(gcd(action.vacancy(j), n) == 1 for j, n in action.multiplicities)


def orbit_count_single(action: ActionVariable, capacity: int) -> int:
    """
    Number of T_l orbits in the level set of m.

    Omega(m)/N when every block is generic, otherwise counted on the level set.
    """
    if not action.multiplicities:
        return 1
    if is_generic(action):
        omega = omega_count(action)
        period = generic_period(action, capacity)
        if omega % period:
            raise AssertionError(f"Omega = {omega} is not a multiple of N = {period}")
        return omega // period
    logger.info("Counting orbits on the level set", action=str(action), capacity=capacity)
    return brute_orbits(action.L, action, [capacity]).count


@dataclass
class PeriodReport:
    """Period data of a path under T_l."""
    capacity: int
    action: ActionVariable
    generic: int
    fundamental: int
    symmetry_orders: Dict[int, int] = field(default_factory=dict)
    det_f: int = 1
    det_f_columns: Dict[int, int] = field(default_factory=dict)
    lcm_arguments: List[Fraction] = field(default_factory=list)

    def lines(self) -> List[str]:
        """Plain-text explanation of the LCM computation."""
        columns = ", ".join(f"det F[{j}] = {v}" for j, v in self.det_f_columns.items())
        orders = ", ".join(f"g_{j} = {g}" for j, g in self.symmetry_orders.items())
        arguments = ", ".join(str(r) for r in self.lcm_arguments)
        return [
            f"m = {self.action} L = {self.action.L} l = {self.capacity}",
            f"det F = {self.det_f}" + (f", {columns}" if columns else ""),
            f"symmetry orders: {orders or '-'}",
            f"LCM(1, {arguments})" if arguments else "LCM(1)",
            f"generic period = {self.generic}",
            f"fundamental period = {self.fundamental}",
        ]


def period_report(p: Path, capacity: int) -> PeriodReport:
    a = direct(_positive(p))
    action = a.action
    if not action.multiplicities:
        return PeriodReport(capacity, action, 1, 1)
    system = build(action, capacity)
    orders = symmetry_orders(a)
    return PeriodReport(
        capacity=capacity,
        action=action,
        generic=generic_period(action, capacity),
        fundamental=fundamental_period(p, capacity),
        symmetry_orders=orders,
        det_f=system.det_f(),
        det_f_columns={j: system.det_f_column(j) for j in action.lengths},
        lcm_arguments=_f_ratios(action, system.h_prime, orders),
    )
