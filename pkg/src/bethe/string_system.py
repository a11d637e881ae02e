"""
String center equations of the q=0 Bethe ansatz
The matrices A and F with their column-replaced determinants, the counting
formula Omega(m), the map Psi to string centers and the class invariant it induces
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy import ImmutableMatrix, Rational, binomial, prod

from src.scattering.angle import AngleRep
from src.scattering.kkr import ActionVariable
from src.utils.config_loader import get_config
from src.utils.logger import get_logger

logger = get_logger("bethe")

Index = Tuple[int, int]


def _det(matrix: ImmutableMatrix) -> int:
    if matrix.rows == 0:
        return 1
    return int(matrix.det(method="bareiss"))


def _replace_column(matrix: ImmutableMatrix, column: int, vector: List[int]) -> ImmutableMatrix:
    mutable = matrix.as_mutable()
    mutable[:, column] = ImmutableMatrix(vector)
    return ImmutableMatrix(mutable)


@dataclass(frozen=True)
class StringSystem:
    """
    Linear data of the string center equation for one configuration.

    Attributes:
        action: Configuration m of size L
        capacity: l, used by the h-vectors
        indices: Row labels (j, alpha) of A, ordered by j then alpha
        A: gamma x gamma integer matrix
        F: s x s integer matrix
        h: (min(j, l)) repeated per row
        h_prime: (min(j, l)) per length
    """
    action: ActionVariable
    capacity: int
    indices: Tuple[Index, ...]
    A: ImmutableMatrix
    F: ImmutableMatrix
    h: Tuple[int, ...]
    h_prime: Tuple[int, ...]

    @property
    def L(self) -> int:
        return self.action.L

    @property
    def gamma(self) -> int:
        return len(self.indices)

    def det_a(self) -> int:
        return _det(self.A)

    def det_f(self) -> int:
        return _det(self.F)

    def det_a_column(self, j: int, alpha: int, vector: Optional[Tuple[int, ...]] = None) -> int:
        """det A[j alpha]: column (j, alpha) replaced by h (or the given vector)."""
        column = self.indices.index((j, alpha))
        return _det(_replace_column(self.A, column, list(vector or self.h)))

    def det_f_column(self, j: int, vector: Optional[Tuple[int, ...]] = None) -> int:
        """det F[j]: column j replaced by h' (or the given vector)."""
        column = self.action.lengths.index(j)
        return _det(_replace_column(self.F, column, list(vector or self.h_prime)))

    def expected_det_f(self) -> int:
        """L p_{j_1} ... p_{j_{s-1}}."""
        return self.L * prod(self.action.vacancy(j) for j in self.action.lengths[:-1])

    def expected_det_a(self) -> int:
        """det F prod_j (p_j + m_j)^(m_j - 1)."""
        return self.expected_det_f() * prod(
            (self.action.vacancy(j) + n) ** (n - 1) for j, n in self.action.multiplicities
        )

    def check_identities(self, with_a: bool = True) -> None:
        """Assert the determinant formulas and the row sums L."""
        if not self.action.multiplicities:
            return
        if self.det_f() != self.expected_det_f():
            raise AssertionError(f"det F = {self.det_f()}, expected {self.expected_det_f()}")
        if any(sum(self.F.row(r)) != self.L for r in range(self.F.rows)):
            raise AssertionError("rows of F do not sum to L")
        if with_a:
            if self.det_a() != self.expected_det_a():
                raise AssertionError(f"det A = {self.det_a()}, expected {self.expected_det_a()}")
            if any(sum(self.A.row(r)) != self.L for r in range(self.A.rows)):
                raise AssertionError("rows of A do not sum to L")


@lru_cache(maxsize=512)
def build(action: ActionVariable, capacity: int = 1) -> StringSystem:
    """
    Assemble A, F and the h-vectors of a configuration.

    Args:
        action: m in the admissible set for its L
        capacity: l >= 1

    Returns:
        StringSystem with verified determinant identities
    """
    action.validate()
    content = action.content
    lengths = action.lengths
    indices = tuple((j, alpha) for j in lengths for alpha in range(1, content[j] + 1))
    vacancy = {j: action.vacancy(j) for j in lengths}

    def a_entry(row: Index, col: Index) -> int:
        (j, alpha), (k, beta) = row, col
        value = 2 * min(j, k) - (1 if j == k else 0)
        if row == col:
            value += vacancy[j] + content[j]
        return value

    A = ImmutableMatrix(len(indices), len(indices), lambda r, c: a_entry(indices[r], indices[c]))
    F = ImmutableMatrix(
        len(lengths),
        len(lengths),
        lambda r, c: (vacancy[lengths[r]] if r == c else 0)
        + 2 * min(lengths[r], lengths[c]) * content[lengths[c]],
    )
    system = StringSystem(
        action=action,
        capacity=capacity,
        indices=indices,
        A=A,
        F=F,
        h=tuple(min(j, capacity) for j, _ in indices),
        h_prime=tuple(min(j, capacity) for j in lengths),
    )
    system.check_identities(with_a=get_config().strict_checks)
    return system


def omega_count(action: ActionVariable) -> int:
    """
    Omega(m), the number of off-diagonal string center solutions.

    Both closed forms are evaluated and compared; a vanishing top vacancy
    p_{j_s} = 0 turns the factor L/p_{j_s} into L/m_{j_s}.
    """
    if not action.multiplicities:
        return 1
    system = build(action)
    first = Rational(system.det_f()) * prod(
        Rational(1, n) * binomial(action.vacancy(j) + n - 1, n - 1)
        for j, n in action.multiplicities
    )
    top, top_n = action.multiplicities[-1]
    top_p = action.vacancy(top)
    second = prod(
        binomial(action.vacancy(j) + n - 1, n) for j, n in action.multiplicities[:-1]
    )
    if top_p == 0:
        second *= Rational(action.L, top_n) * binomial(top_n - 1, top_n - 1)
    else:
        second *= Rational(action.L, top_p) * binomial(top_p + top_n - 1, top_n)
    if first != second or not first.is_integer:
        logger.error("Counting formulas disagree", action=str(action), first=str(first), second=str(second))
        raise AssertionError(f"Omega formulas disagree: {first} != {second}")
    return int(first)


@dataclass(frozen=True)
class BetheRoots:
    """String centers u^(j)_alpha, one tuple per length in increasing order."""
    action: ActionVariable
    roots: Tuple[Tuple[Fraction, ...], ...]

    def blocks(self) -> Dict[int, Tuple[Fraction, ...]]:
        return dict(zip(self.action.lengths, self.roots))

    def flat(self) -> List[Fraction]:
        return [u for block in self.roots for u in block]


def _fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


@lru_cache(maxsize=4096)
def psi(a: AngleRep) -> BetheRoots:
    """
    Solve A u = c + J + rho for the absolute riggings of a.

    c^(j) = (p_j + m_j + 1)/2 and rho^(j)_alpha = alpha - 1.
    """
    action = a.action
    if not action.multiplicities:
        return BetheRoots(action, ())
    system = build(action)
    absolute = a.absolute()
    rhs = [
        Rational(action.vacancy(j) + action.m(j) + 1, 2) + absolute[j][alpha - 1] + alpha - 1
        for j, alpha in system.indices
    ]
    solution = system.A.LUsolve(ImmutableMatrix(rhs))
    values = [_fraction(x) for x in solution]
    roots = []
    position = 0
    for j, n in action.multiplicities:
        block = tuple(values[position:position + n])
        position += n
        if len({u % 1 for u in block}) != n:
            raise AssertionError(f"string centers of length {j} are diagonal: {block}")
        if any(x >= y for x, y in zip(block, block[1:])) or block[-1] - block[0] >= 1:
            raise AssertionError(f"string centers of length {j} leave a unit window: {block}")
        roots.append(block)
    return BetheRoots(action, tuple(roots))


def canonical_invariant(a: AngleRep) -> Tuple:
    """
    Complete invariant of the angle class of a.

    Per length, the sorted fractional parts of the string centers.
    """
    u = psi(a)
    return (a.action, tuple(
        (j, tuple(sorted(x % 1 for x in block))) for j, block in u.blocks().items()
    ))


def eigenvalue_exponent(a: AngleRep, capacity: int) -> Fraction:
    """sum_{j alpha} min(j, l) (u^(j)_alpha + 1/2)."""
    u = psi(a)
    return sum(
        (min(j, capacity) * (x + Fraction(1, 2)) for j, block in u.blocks().items() for x in block),
        Fraction(0),
    )


def eigenvalue_is_root_of_unity(a: AngleRep, capacity: int, n: int) -> bool:
    """True when Lambda_l^N = 1, i.e. N times the exponent is an integer."""
    return (n * eigenvalue_exponent(a, capacity)).denominator == 1


def linear_flow_vector(system: StringSystem) -> Tuple[Fraction, ...]:
    """A^{-1} h: the change of the string centers under one step of T_l."""
    if not system.gamma:
        return ()
    solution = system.A.LUsolve(ImmutableMatrix(list(system.h)))
    return tuple(_fraction(x) for x in solution)
