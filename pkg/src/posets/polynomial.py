"""Integer polynomials in one variable, used for Poincare and KL polynomials."""

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union


@dataclass(frozen=True)
class IntPolynomial:
    """Exact integer polynomial; ``coeffs[i]`` is the coefficient of the i-th power."""

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, power: int, coefficient: int = 1) -> "IntPolynomial":
        return cls((0,) * power + (coefficient,))

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "IntPolynomial":
        """Sum of t^e over the given exponents (with repetition)."""
        counts: dict = {}
        for e in exponents:
            counts[e] = counts.get(e, 0) + 1
        if not counts:
            return cls.zero()
        return cls(tuple(counts.get(i, 0) for i in range(max(counts) + 1)))

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, power: int) -> int:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return IntPolynomial.zero()
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    product[i + j] += a * b
        return IntPolynomial(tuple(product))

    __rmul__ = __mul__

    def shift(self, power: int) -> "IntPolynomial":
        """Multiply by the variable raised to a nonnegative power."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * power + self.coeffs)

    def evaluate(self, value: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * value + c
        return total

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    @property
    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    @property
    def is_zero_one(self) -> bool:
        """Constant polynomial 0 or 1."""
        return self.coeffs in ((), (1,))

    def to_list(self) -> list:
        return list(self.coeffs)

    def format(self, variable: str = "t") -> str:
        if self.is_zero:
            return "0"
        terms = []
        for power, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
                continue
            monomial = variable if power == 1 else f"{variable}^{power}"
            terms.append(monomial if c == 1 else f"{c}{monomial}")
        return " + ".join(terms).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.format()


def is_palindromic(f: Union[IntPolynomial, Sequence[int]]) -> bool:
    """coeff(i) == coeff(deg - i) for every i."""
    if not isinstance(f, IntPolynomial):
        f = IntPolynomial(tuple(f))
    return f.is_palindromic()
