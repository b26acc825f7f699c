"""Cutpoint semantics and language descriptors.

A cutpoint turns an automaton into a language: the words whose accepting
value is above the cutpoint (strict), equal to it (inclusive), or different
from it (exclusive).  The descriptors here name the Parikh-closed languages a
one-state generalized automaton can recognize: a *solution* component (a
linear inequality or equation on letter counts, kept multiplicatively as
exact rational bases so that no logarithm is ever evaluated), a *parity*
component on a subset of letters, and an *indicator* component (words
containing at least one letter from a set).

``UnaryName`` enumerates the regular languages over a one-letter alphabet
that two-state probabilistic automata can recognize with a strict cutpoint.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .automata import Automaton, Gfa, Pfa, unary_values
from .exactmath import GaussianRational, scalar_kind

#: default tolerance for inclusive/exclusive comparison of binary64 values
VALUE_TOL = 1e-9

STRICT = "strict"
INCLUSIVE = "inclusive"
EXCLUSIVE = "exclusive"


@dataclass(frozen=True)
class CutpointSpec:
    """A cutpoint value together with the comparison mode."""

    value: Union[Fraction, float]
    mode: str = STRICT

    def __post_init__(self):
        if self.mode not in (STRICT, INCLUSIVE, EXCLUSIVE):
            raise ValueError(f"unknown cutpoint mode {self.mode!r}")
        if isinstance(self.value, int):
            object.__setattr__(self, "value", Fraction(self.value))


def cut_member(v, cp: CutpointSpec, eps: float = VALUE_TOL) -> bool:
    """Membership of a value relative to a cutpoint.

    Exact scalars compare exactly.  Approximate scalars use a strict
    comparison in strict mode and the tolerance ``eps`` for the inclusive and
    exclusive modes.
    """
    if isinstance(v, (complex, GaussianRational)):
        raise ValueError("cutpoint comparison needs a real value")
    exact = scalar_kind(v) == "rational" and scalar_kind(cp.value) == "rational"
    if cp.mode == STRICT:
        return v > cp.value
    equal = v == cp.value if exact else abs(v - cp.value) <= eps
    return equal if cp.mode == INCLUSIVE else not equal


def check_cutpoint_range(aut: Automaton, cp: CutpointSpec) -> None:
    """Enforce the admissible cutpoint range: probabilistic and quantum models
    need value in [0, 1) for strict mode and [0, 1] otherwise; generalized
    automata are unrestricted."""
    if isinstance(aut, Gfa) and not isinstance(aut, Pfa):
        return
    hi_ok = cp.value <= 1 if cp.mode != STRICT else cp.value < 1
    if cp.value < 0 or not hi_ok:
        bound = "[0, 1)" if cp.mode == STRICT else "[0, 1]"
        raise ValueError(f"cutpoint {cp.value} outside {bound} for this model")


def enum_unary(aut: Automaton, cp: CutpointSpec, limit: int, eps: float = VALUE_TOL) -> str:
    """Membership bits of a^0 .. a^limit as a string of '0'/'1'."""
    check_cutpoint_range(aut, cp)
    return "".join(
        "1" if cut_member(v, cp, eps) else "0" for v in unary_values(aut, limit)
    )


# Parikh vectors

@dataclass(frozen=True)
class ParikhVector:
    alphabet: tuple
    counts: tuple

    def __post_init__(self):
        if len(self.alphabet) != len(self.counts):
            raise ValueError("alphabet and counts length mismatch")
        if any(c < 0 for c in self.counts):
            raise ValueError("negative letter count")

    def count(self, letter) -> int:
        return self.counts[self.alphabet.index(letter)]


def parikh(word, alphabet=None) -> ParikhVector:
    """Letter-occurrence counts of a word; the alphabet defaults to the sorted
    letters occurring in the word."""
    c = Counter(word)
    if alphabet is None:
        alphabet = tuple(sorted(c))
    else:
        alphabet = tuple(alphabet)
        unknown = set(c) - set(alphabet)
        if unknown:
            raise ValueError(f"letters {sorted(unknown)} outside alphabet {alphabet}")
    return ParikhVector(alphabet, tuple(c.get(a, 0) for a in alphabet))


# descriptors

LESS = "<"
EQUALS = "="


@dataclass(frozen=True)
class SolutionDescriptor:
    """A linear condition on letter counts.

    In exact mode each coefficient is stored as a positive rational base
    ``c`` standing for the coefficient ``log c``, and the threshold as a
    positive rational ``tau`` standing for ``log tau`` (``math.inf`` means an
    unbounded threshold).  Membership is then decided multiplicatively over
    exact rationals.  In approximate mode the coefficients and threshold are
    the binary64 values themselves.
    """

    alphabet: tuple
    coefficients: dict
    threshold: Union[Fraction, float]
    relation: str = LESS
    exact: bool = True

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        if set(self.coefficients) != set(self.alphabet):
            raise ValueError("coefficients must cover exactly the alphabet")
        if self.relation not in (LESS, EQUALS):
            raise ValueError(f"unknown relation {self.relation!r}")
        unbounded = self.threshold == math.inf
        if unbounded and self.relation == EQUALS:
            raise ValueError("equality relation cannot have an unbounded threshold")
        if self.exact:
            coeffs = {a: Fraction(c) for a, c in self.coefficients.items()}
            if any(c <= 0 for c in coeffs.values()):
                raise ValueError("exact coefficient bases must be positive rationals")
            object.__setattr__(self, "coefficients", coeffs)
            if unbounded:
                object.__setattr__(self, "threshold", math.inf)
            else:
                tau = Fraction(self.threshold)
                if tau <= 0:
                    raise ValueError("exact threshold base must be a positive rational")
                object.__setattr__(self, "threshold", tau)
        else:
            object.__setattr__(
                self, "coefficients", {a: float(c) for a, c in self.coefficients.items()}
            )
            object.__setattr__(
                self, "threshold", math.inf if unbounded else float(self.threshold)
            )

    def member(self, counts: Counter) -> bool:
        """Solution membership for a word already reduced to letter counts;
        the word must lie in alphabet^*."""
        if any(c not in self.coefficients and n > 0 for c, n in counts.items()):
            return False
        if self.threshold == math.inf:
            return True
        if self.exact:
            product = Fraction(1)
            for a, base in self.coefficients.items():
                n = counts.get(a, 0)
                if n:
                    product *= base**n
            if self.relation == LESS:
                return product < self.threshold
            return product == self.threshold
        total = sum(b * counts.get(a, 0) for a, b in self.coefficients.items())
        if self.relation == LESS:
            return total < self.threshold
        return total == self.threshold


@dataclass(frozen=True)
class ParityDescriptor:
    """Words over ``alphabet`` whose number of letters from ``subset`` has the
    given parity bit."""

    alphabet: tuple
    subset: frozenset
    bit: int

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "subset", frozenset(self.subset))
        if not self.subset <= set(self.alphabet):
            raise ValueError("parity subset must lie inside its alphabet")
        if self.bit not in (0, 1):
            raise ValueError("parity bit must be 0 or 1")

    def member(self, counts: Counter) -> bool:
        if any(c not in self.alphabet and n > 0 for c, n in counts.items()):
            return False
        return sum(counts.get(a, 0) for a in self.subset) % 2 == self.bit


@dataclass(frozen=True)
class IndicatorDescriptor:
    """Words over ``sigma`` containing at least one letter from ``subset``."""

    sigma: tuple
    subset: frozenset

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "subset", frozenset(self.subset))
        if not self.subset <= set(self.sigma):
            raise ValueError("indicator subset must lie inside the alphabet")

    def member(self, counts: Counter) -> bool:
        return any(counts.get(a, 0) > 0 for a in self.subset)


@dataclass(frozen=True)
class LambdaForm:
    """Solution-and-parity intersection over a sub-alphabet X of sigma."""

    sigma: tuple
    solution: SolutionDescriptor
    parity: ParityDescriptor

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        _check_shared_x(self.solution, self.parity, self.sigma)


@dataclass(frozen=True)
class VForm:
    """Solution-or-parity-or-indicator union; the indicator catches words with
    letters outside X, so the solution threshold must be finite."""

    solution: SolutionDescriptor
    parity: ParityDescriptor
    indicator: IndicatorDescriptor

    def __post_init__(self):
        _check_shared_x(self.solution, self.parity, self.indicator.sigma)
        if self.solution.threshold == math.inf:
            raise ValueError("union form needs a finite solution threshold")
        expected = set(self.indicator.sigma) - set(self.solution.alphabet)
        if set(self.indicator.subset) != expected:
            raise ValueError("indicator subset must be the letters outside X")

    @property
    def sigma(self) -> tuple:
        return self.indicator.sigma


@dataclass(frozen=True)
class InclusiveForm:
    """Equality-solution-and-parity intersection."""

    sigma: tuple
    solution: SolutionDescriptor
    parity: ParityDescriptor

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        if self.solution.relation != EQUALS:
            raise ValueError("inclusive form needs an equality solution component")
        _check_shared_x(self.solution, self.parity, self.sigma)


@dataclass(frozen=True)
class IndicatorOnly:
    indicator: IndicatorDescriptor

    @property
    def sigma(self) -> tuple:
        return self.indicator.sigma


LanguageDescriptor = Union[LambdaForm, VForm, InclusiveForm, IndicatorOnly]


def _check_shared_x(sol: SolutionDescriptor, par: ParityDescriptor, sigma) -> None:
    if tuple(sol.alphabet) != tuple(par.alphabet):
        raise ValueError("solution and parity components must share the sub-alphabet X")
    if not set(sol.alphabet) <= set(sigma):
        raise ValueError("sub-alphabet X must lie inside sigma")


def desc_member(d: LanguageDescriptor, word) -> bool:
    """Membership of a word in the language a descriptor denotes.

    Only letter counts matter, so membership is invariant under permuting the
    word; a ``Counter`` of letter counts is accepted in place of the word.
    Letters outside the descriptor's alphabet are an error.
    """
    counts = word if isinstance(word, Counter) else Counter(word)
    unknown = set(counts) - set(d.sigma)
    if unknown:
        raise ValueError(f"letters {sorted(unknown)} outside alphabet {d.sigma}")
    if isinstance(d, LambdaForm):
        return d.solution.member(counts) and d.parity.member(counts)
    if isinstance(d, VForm):
        return (
            d.indicator.member(counts)
            or d.parity.member(counts)
            or d.solution.member(counts)
        )
    if isinstance(d, InclusiveForm):
        return d.solution.member(counts) and d.parity.member(counts)
    if isinstance(d, IndicatorOnly):
        return d.indicator.member(counts)
    raise TypeError(f"not a language descriptor: {type(d).__name__}")


# named unary regular languages

@dataclass(frozen=True)
class UnaryName:
    """A named regular language over a one-letter alphabet.

    ``kind`` selects the family; ``n`` is the numeric parameter for the
    Less/CoLess/Singleton/Mod families and ``inner`` the wrapped name for
    complements.
    """

    kind: str
    n: Optional[int] = None
    inner: Optional["UnaryName"] = None

    def __post_init__(self):
        if self.kind == "Complement":
            if not isinstance(self.inner, UnaryName) or self.n is not None:
                raise ValueError("complement wraps exactly one inner name")
        elif self.kind in _PARAMETRIC:
            floor = 1 if self.kind == "ModN" else 0
            if self.inner is not None or not isinstance(self.n, int) or self.n < floor:
                raise ValueError(f"{self.kind} needs an integer parameter >= {floor}")
        elif self.kind in _PLAIN:
            if self.n is not None or self.inner is not None:
                raise ValueError(f"{self.kind} takes no parameters")
        else:
            raise ValueError(f"unknown unary language name {self.kind!r}")

    def __str__(self):
        if self.kind == "Complement":
            return f"Complement({self.inner})"
        if self.n is not None:
            return f"{self.kind}({self.n})"
        return self.kind


_PARAMETRIC = {
    "Less",
    "CoLess",
    "LessAndEven",
    "LessAndCoEven",
    "CoLessAndEven",
    "CoLessAndCoEven",
    "LessOrEven",
    "LessOrCoEven",
    "CoLessOrEven",
    "CoLessOrCoEven",
    "SingletonLength",
    "ModN",
}
_PLAIN = {"Empty", "All", "EpsilonOnly", "APlus", "Even", "CoEven"}

EMPTY = UnaryName("Empty")
ALL = UnaryName("All")
EPSILON_ONLY = UnaryName("EpsilonOnly")
A_PLUS = UnaryName("APlus")
EVEN = UnaryName("Even")
CO_EVEN = UnaryName("CoEven")


def less(n: int) -> UnaryName:
    return UnaryName("Less", n)


def co_less(n: int) -> UnaryName:
    return UnaryName("CoLess", n)


def singleton_length(n: int) -> UnaryName:
    return UnaryName("SingletonLength", n)


def mod_n(n: int) -> UnaryName:
    return UnaryName("ModN", n)


def complement(inner: UnaryName) -> UnaryName:
    return UnaryName("Complement", inner=inner)


def named_member(name: UnaryName, m: int) -> bool:
    """Membership of the word a^m in a named unary regular language."""
    if m < 0:
        raise ValueError("word length must be nonnegative")
    k, n = name.kind, name.n
    if k == "Empty":
        return False
    if k == "All":
        return True
    if k == "EpsilonOnly":
        return m == 0
    if k == "APlus":
        return m >= 1
    if k == "Even":
        return m % 2 == 0
    if k == "CoEven":
        return m % 2 == 1
    if k == "Less":
        return m <= n
    if k == "CoLess":
        return m > n
    if k == "LessAndEven":
        return m <= n and m % 2 == 0
    if k == "LessAndCoEven":
        return m <= n and m % 2 == 1
    if k == "CoLessAndEven":
        return m > n and m % 2 == 0
    if k == "CoLessAndCoEven":
        return m > n and m % 2 == 1
    if k == "LessOrEven":
        return m <= n or m % 2 == 0
    if k == "LessOrCoEven":
        return m <= n or m % 2 == 1
    if k == "CoLessOrEven":
        return m > n or m % 2 == 0
    if k == "CoLessOrCoEven":
        return m > n or m % 2 == 1
    if k == "SingletonLength":
        return m == n
    if k == "ModN":
        return m % n == 0
    if k == "Complement":
        return not named_member(name.inner, m)
    raise ValueError(f"unknown unary language name {k!r}")


def parse_unary_name(text: str) -> UnaryName:
    """Inverse of str(UnaryName), e.g. 'CoLessAndEven(3)' or 'Complement(Even)'."""
    text = text.strip()
    if "(" not in text:
        if text in _PLAIN:
            return UnaryName(text)
        raise ValueError(f"unknown unary language name {text!r}")
    head, _, rest = text.partition("(")
    if not rest.endswith(")"):
        raise ValueError(f"malformed name {text!r}")
    arg = rest[:-1]
    if head == "Complement":
        return complement(parse_unary_name(arg))
    if head in _PARAMETRIC:
        return UnaryName(head, int(arg))
    raise ValueError(f"unknown unary language name {head!r}")


def unary_name_of_descriptor(d: LanguageDescriptor) -> UnaryName:
    """Identify the unary regular language denoted by a descriptor produced
    from a one-state inclusive-cutpoint machine.

    Only descriptors over a one-letter alphabet built from an equality
    solution component (or a bare indicator) are supported.
    """
    if isinstance(d, IndicatorOnly):
        if len(d.sigma) != 1:
            raise ValueError("descriptor is not unary")
        return A_PLUS if d.indicator.subset else EMPTY
    if not isinstance(d, InclusiveForm):
        raise ValueError("expected an inclusive or indicator descriptor")
    if len(d.sigma) != 1:
        raise ValueError("descriptor is not unary")
    letter = d.sigma[0]
    x = d.solution.alphabet
    if not x:
        # only the empty word is over an empty X; it belongs iff both
        # components accept it
        ok = d.solution.threshold == 1 and d.parity.bit == 0
        return singleton_length(0) if ok else EMPTY
    base = d.solution.coefficients[letter]
    tau = d.solution.threshold
    parity_all = not d.parity.subset and d.parity.bit == 0
    parity_none = not d.parity.subset and d.parity.bit == 1
    if parity_none:
        return EMPTY
    if base == 1:
        if tau != 1:
            return EMPTY
        if parity_all:
            return ALL
        return EVEN if d.parity.bit == 0 else CO_EVEN
    n = _exact_log(tau, base)
    if n is None:
        return EMPTY
    if not parity_all and n % 2 != d.parity.bit:
        return EMPTY
    return singleton_length(n)


def _exact_log(tau: Fraction, base: Fraction) -> Optional[int]:
    """The nonnegative integer n with base**n == tau, or None."""
    if tau == 1:
        return 0
    increasing = base > 1
    product, n = Fraction(1), 0
    while True:
        product *= base
        n += 1
        if product == tau:
            return n
        if (increasing and product > tau) or (not increasing and product < tau):
            return None
