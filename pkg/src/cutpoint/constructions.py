"""Concrete automaton families and the complete small-machine classifiers.

The rotation family turns a primitive Pythagorean triple into an exact
rational rotation matrix whose angle is an irrational fraction of pi, so the
accepting-value sequence never repeats.  The three-state probabilistic family
realizes a damped oscillation around an exact rational limit.  The two-state
probabilistic classifier and the one-state decomposition translate machines
into named languages and descriptors, both decided entirely in exact rational
arithmetic.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from . import langsem
from .automata import Gfa, Mcqfa, Pfa, basis_state
from .exactmath import Matrix, complete_to_unitary, kron, scalar_to_float
from .langsem import (
    EQUALS,
    IndicatorDescriptor,
    IndicatorOnly,
    InclusiveForm,
    LambdaForm,
    LanguageDescriptor,
    ParityDescriptor,
    SolutionDescriptor,
    UnaryName,
    VForm,
)


@dataclass(frozen=True)
class PythTriple:
    """Generator pair (m, n) of a primitive Pythagorean triple.

    Primitivity (coprime, opposite parity) guarantees that the rotation by
    theta with cos theta = (m^2 - n^2) / (m^2 + n^2) has theta/pi irrational,
    since the only rational cosines at rational angles are 0, +-1/2, +-1.
    """

    m: int
    n: int

    def __post_init__(self):
        if not (self.m > self.n >= 1):
            raise ValueError("need m > n >= 1")
        if math.gcd(self.m, self.n) != 1 or (self.m - self.n) % 2 == 0:
            raise ValueError(f"({self.m}, {self.n}) does not generate a primitive triple")

    @property
    def legs(self) -> tuple[int, int]:
        return (self.m**2 - self.n**2, 2 * self.m * self.n)

    @property
    def hypotenuse(self) -> int:
        return self.m**2 + self.n**2

    @property
    def cosine(self) -> Fraction:
        return Fraction(self.legs[0], self.hypotenuse)

    @property
    def sine(self) -> Fraction:
        return Fraction(self.legs[1], self.hypotenuse)


def rotation_matrix(t: PythTriple) -> Matrix:
    c, s = t.cosine, t.sine
    return Matrix([[c, -s], [s, c]])


def rotation_automaton(t: PythTriple, model: str = "gfa") -> Union[Gfa, Mcqfa]:
    """Two-state rotation machine on {a}.

    As a generalized automaton the accepting value on a^k is cos(k theta); as
    a measure-once quantum automaton (the same matrix is real unitary) the
    accepting probability is cos^2(k theta).
    """
    r = rotation_matrix(t)
    if model == "gfa":
        return Gfa(
            state_count=2,
            alphabet=("a",),
            transitions={"a": r},
            initial=basis_state(2, 1),
            final=basis_state(2, 1).transpose(),
        )
    if model == "mcqfa":
        return Mcqfa(
            state_count=2,
            alphabet=("a",),
            transitions={"a": r},
            initial=basis_state(2, 1),
            accept_states=frozenset({1}),
        )
    raise ValueError(f"unknown model {model!r}; expected 'gfa' or 'mcqfa'")


def rotation_cosine_pairs(t: PythTriple) -> Iterator[tuple[int, int]]:
    """Yield (numerator, denominator) of cos(k theta) for k = 0, 1, 2, ...

    cos(k theta) = N_k / h^k with the integer recurrence
    N_k = 2 a N_{k-1} - h^2 N_{k-2}, N_0 = 1, N_1 = a, where a / h is the
    cosine of the triple.  N_k stays coprime to h (mod h it equals
    a (2a)^(k-1), and gcd(2a, h) = 1 for a primitive triple since h is odd),
    so the pair is always in lowest terms and no gcd is ever computed.
    """
    a = t.legs[0]
    h = t.hypotenuse
    h2 = h * h
    prev, cur = 1, a
    power = 1
    yield prev, power
    while True:
        power *= h
        yield cur, power
        prev, cur = cur, 2 * a * cur - h2 * prev


def rotation_cosines(t: PythTriple) -> Iterator[Fraction]:
    """Exact cos(k theta) for k = 0, 1, 2, ... via the three-term recurrence."""
    for num, den in rotation_cosine_pairs(t):
        yield Fraction(num, den)


# three-state unary PFA family

def three_state_pfa(x) -> Pfa:
    """The three-state unary PFA with parameter x in (0, 1/2]: a cycle through
    the states with a damped return, final state q3."""
    x = Fraction(x)
    if not 0 < x <= Fraction(1, 2):
        raise ValueError("parameter must lie in (0, 1/2]")
    a = Matrix(
        [
            [Fraction(0), Fraction(0), x],
            [Fraction(1), Fraction(0), x],
            [Fraction(0), Fraction(1), 1 - 2 * x],
        ]
    )
    return Pfa(
        state_count=3,
        alphabet=("a",),
        transitions={"a": a},
        initial=basis_state(3, 1),
        final=basis_state(3, 3).transpose(),
    )


@dataclass(frozen=True)
class ThreeStateParams:
    """Closed-form quantities of the three-state family.

    The accepting value on a^m is mean + amplitude * x^(m/2) *
    cos(m * angle + phase).  ``cutpoint`` holds the limit value 1/(3x+1) as
    an exact rational (``mean`` is its binary64 mirror); cos_coeff and
    sin_coeff are the raw oscillation coefficients that amplitude and phase
    collect into a single cosine.
    """

    x: Fraction
    cutpoint: Fraction
    mean: float
    cos_coeff: float
    sin_coeff: float
    amplitude: float
    angle: float
    phase: float


def three_state_params(x) -> ThreeStateParams:
    x = Fraction(x)
    if not 0 < x <= Fraction(1, 2):
        raise ValueError("parameter must lie in (0, 1/2]")
    lam = 1 / (3 * x + 1)
    b = -1 / (6 * x + 2)
    var = x - x * x
    c = float((x + 1) / (6 * x + 2)) / math.sqrt(float(var))
    amplitude = 1.0 / math.sqrt(float((3 * x + 1) * var))
    angle = math.acos(-math.sqrt(float(x)))
    phase = math.acos(-math.sqrt(float(var / (3 * x + 1))))
    return ThreeStateParams(
        x=x,
        cutpoint=lam,
        mean=float(lam),
        cos_coeff=float(b),
        sin_coeff=c,
        amplitude=amplitude,
        angle=angle,
        phase=phase,
    )


def three_state_closed_form(x, m: int) -> float:
    """Binary64 closed form of the accepting value on a^m."""
    p = three_state_params(x)
    return p.mean + p.amplitude * float(p.x) ** (m / 2) * math.cos(m * p.angle + p.phase)


# two-state unary PFA classification

@dataclass(frozen=True)
class TwoStatePfaAnalysis:
    """Exact decomposition of a two-state unary PFA's value sequence.

    Away from the degenerate cases the value on a^m is limit + swing * decay^m
    with |decay| < 1; ``language`` names the resulting strict-cutpoint
    language.
    """

    case: str
    x: Fraction
    y: Fraction
    offset: Optional[Fraction]
    limit: Optional[Fraction]
    swing: Optional[Fraction]
    decay: Optional[Fraction]
    language: UnaryName


def analyze_two_state_pfa(p: Pfa, cutpoint) -> TwoStatePfaAnalysis:
    """Name the language a two-state unary PFA recognizes with a strict
    cutpoint, deciding every comparison in exact rational arithmetic."""
    lam = Fraction(cutpoint)
    if p.state_count != 2:
        raise ValueError("classifier needs a two-state machine")
    if len(p.alphabet) != 1:
        raise ValueError("classifier needs a unary alphabet")
    if not p.is_exact:
        raise ValueError("classifier needs exact rational entries")
    issues = p.validate()
    if issues:
        raise ValueError(f"invalid probabilistic machine: {issues[0]}")
    a = p.transitions[p.alphabet[0]]
    v = p.initial if p.left_marker is None else p.left_marker @ p.initial
    frow = p.final if p.right_marker is None else p.final @ p.right_marker
    x, y = a[1, 0], a[0, 1]
    f0 = (frow @ v)[0, 0]
    b0 = f0 > lam

    if x == 0 and y == 0:
        return TwoStatePfaAnalysis(
            "identity", x, y, None, None, None, None, langsem.ALL if b0 else langsem.EMPTY
        )
    if x == 1 and y == 1:
        f1 = (frow @ (a @ v))[0, 0]
        name = {
            (True, True): langsem.ALL,
            (True, False): langsem.EVEN,
            (False, True): langsem.CO_EVEN,
            (False, False): langsem.EMPTY,
        }[(b0, f1 > lam)]
        return TwoStatePfaAnalysis("alternating", x, y, None, None, None, None, name)

    stationary = y / (x + y)
    offset = v[0, 0] - stationary
    limit = frow[0, 0] * stationary + frow[0, 1] * (x / (x + y))
    swing = offset * (frow[0, 0] - frow[0, 1])
    decay = 1 - (x + y)

    if swing == 0 or decay == 0:
        tail = limit > lam
        name = {
            (True, True): langsem.ALL,
            (True, False): langsem.EPSILON_ONLY,
            (False, True): langsem.A_PLUS,
            (False, False): langsem.EMPTY,
        }[(b0, tail)]
        case = "constant" if swing == 0 else "split-at-zero"
        return TwoStatePfaAnalysis(case, x, y, offset, limit, swing, decay, name)

    if limit == lam:
        if decay > 0:
            name = langsem.ALL if swing > 0 else langsem.EMPTY
        else:
            name = langsem.EVEN if swing > 0 else langsem.CO_EVEN
        return TwoStatePfaAnalysis(
            "on-limit", x, y, offset, limit, swing, decay, name
        )

    # sign of value - cutpoint settles once |swing| |decay|^m < |limit - cutpoint|
    gap = abs(limit - lam)
    term = abs(swing)
    horizon = 0
    while term >= gap:
        term *= abs(decay)
        horizon += 1
    bits = []
    power = Fraction(1)
    for _ in range(horizon):
        bits.append(limit + swing * power > lam)
        power *= decay
    tail = limit > lam
    case = "monotone" if decay > 0 else "oscillating"
    name = _name_from_bits(bits, tail)
    return TwoStatePfaAnalysis(case, x, y, offset, limit, swing, decay, name)


def classify_two_state_pfa(p: Pfa, cutpoint) -> UnaryName:
    return analyze_two_state_pfa(p, cutpoint).language


_ALL, _NONE, _PREFIX, _SUFFIX = "all", "none", "prefix", "suffix"


def _parity_pattern(members: list[tuple[int, bool]], tail: bool):
    """Collapse one parity class (explicit bits followed by a constant tail)
    into all / none / prefix-up-to / suffix-from.

    The n of a suffix is the first member in the class, of a prefix the last;
    anything that switches more than once cannot come from a damped geometric
    sequence and is reported as a bug.
    """
    trues = [m for m, b in members if b]
    falses = [m for m, b in members if not b]
    if tail:
        if not falses:
            return (_ALL, None)
        boundary = max(falses)
        if all(b == (m > boundary) for m, b in members):
            return (_SUFFIX, boundary + 2)
        raise RuntimeError("parity class switches more than once")
    if not trues:
        return (_NONE, None)
    boundary = max(trues)
    if all(b == (m <= boundary) for m, b in members):
        return (_PREFIX, boundary)
    raise RuntimeError("parity class switches more than once")


def _name_from_bits(bits: list[bool], tail: bool) -> UnaryName:
    horizon = len(bits)
    patterns = []
    for par in (0, 1):
        members = [(m, bits[m]) for m in range(par, horizon, 2)]
        patterns.append(_parity_pattern(members, tail))
    (even_kind, even_n), (odd_kind, odd_n) = patterns

    table = {
        (_ALL, _ALL): lambda: langsem.ALL,
        (_NONE, _NONE): lambda: langsem.EMPTY,
        (_ALL, _NONE): lambda: langsem.EVEN,
        (_NONE, _ALL): lambda: langsem.CO_EVEN,
        (_PREFIX, _NONE): lambda: UnaryName("LessAndEven", even_n),
        (_NONE, _PREFIX): lambda: UnaryName("LessAndCoEven", odd_n),
        (_SUFFIX, _NONE): lambda: UnaryName("CoLessAndEven", even_n - 1),
        (_NONE, _SUFFIX): lambda: UnaryName("CoLessAndCoEven", odd_n - 1),
        (_ALL, _SUFFIX): lambda: UnaryName("CoLessOrEven", odd_n - 1),
        (_SUFFIX, _ALL): lambda: UnaryName("CoLessOrCoEven", even_n - 1),
        (_ALL, _PREFIX): lambda: UnaryName("LessOrEven", odd_n),
        (_PREFIX, _ALL): lambda: UnaryName("LessOrCoEven", even_n),
        (_PREFIX, _PREFIX): lambda: _adjacent(langsem.less, max(even_n, odd_n), even_n, odd_n),
        (_SUFFIX, _SUFFIX): lambda: _adjacent(langsem.co_less, min(even_n, odd_n) - 1, even_n, odd_n),
    }
    key = (even_kind, odd_kind)
    if key not in table:
        raise RuntimeError(f"unexpected parity pattern pair {key}")
    return table[key]()


def _adjacent(ctor, n, a, b) -> UnaryName:
    if abs(a - b) != 1:
        raise RuntimeError(f"parity thresholds {a} and {b} are not adjacent")
    return ctor(n)


# one-state generalized automata

DIRECTION_LESS = "less"
DIRECTION_GREATER = "greater"


@dataclass(frozen=True)
class OneStateGfaSpec:
    """A one-state machine: one transition number per letter, a cutpoint, and
    the acceptance condition (strict directional comparison, or equality for
    the inclusive mode, which ignores the direction)."""

    numbers: dict
    cutpoint: Fraction
    direction: str = DIRECTION_LESS
    mode: str = langsem.STRICT

    def __post_init__(self):
        object.__setattr__(
            self, "numbers", {a: Fraction(v) for a, v in self.numbers.items()}
        )
        object.__setattr__(self, "cutpoint", Fraction(self.cutpoint))
        if self.direction not in (DIRECTION_LESS, DIRECTION_GREATER):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.mode not in (langsem.STRICT, langsem.INCLUSIVE):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def alphabet(self) -> tuple:
        return tuple(sorted(self.numbers))


def one_state_accepts(spec: OneStateGfaSpec, word) -> bool:
    """Direct evaluation of the acceptance condition: the product of the
    per-letter numbers raised to the letter counts, compared to the cutpoint
    (with the empty product equal to 1, including 0^0 = 1).  A ``Counter`` of
    letter counts is accepted in place of the word."""
    counts = word if isinstance(word, Counter) else Counter(word)
    unknown = set(counts) - set(spec.numbers)
    if unknown:
        raise ValueError(f"letters {sorted(unknown)} outside alphabet {spec.alphabet}")
    product = Fraction(1)
    for a, k in counts.items():
        if k:
            product *= spec.numbers[a] ** k
    if spec.mode == langsem.INCLUSIVE:
        return product == spec.cutpoint
    if spec.direction == DIRECTION_LESS:
        return product < spec.cutpoint
    return product > spec.cutpoint


def decompose_one_state(spec: OneStateGfaSpec) -> LanguageDescriptor:
    """Translate a one-state machine into a language descriptor with the same
    membership on every word.

    X collects the letters with nonzero numbers and Y those with negative
    numbers.  A strict condition whose cutpoint lies on the sign's far side
    becomes an intersection form; otherwise words leaving X^* or with the odd
    parity are accepted outright and a union form results.  The inclusive
    mode yields an equality form, or a bare indicator when the cutpoint is 0.
    """
    sigma = spec.alphabet
    lam = spec.cutpoint
    x_letters = tuple(a for a in sigma if spec.numbers[a] != 0)
    y_letters = frozenset(a for a in x_letters if spec.numbers[a] < 0)

    if spec.mode == langsem.INCLUSIVE:
        if lam == 0:
            zeros = frozenset(a for a in sigma if spec.numbers[a] == 0)
            return IndicatorOnly(IndicatorDescriptor(sigma, zeros))
        sol = SolutionDescriptor(
            x_letters,
            {a: abs(spec.numbers[a]) for a in x_letters},
            abs(lam),
            relation=EQUALS,
        )
        bit = 0 if lam > 0 else 1
        return InclusiveForm(sigma, sol, ParityDescriptor(x_letters, y_letters, bit))

    if spec.direction == DIRECTION_LESS:
        if lam <= 0:
            # negative products only: stay in X^*, odd parity, magnitude above |cutpoint|
            sol = SolutionDescriptor(
                x_letters,
                {a: 1 / abs(spec.numbers[a]) for a in x_letters},
                math.inf if lam == 0 else 1 / abs(lam),
            )
            return LambdaForm(sigma, sol, ParityDescriptor(x_letters, y_letters, 1))
        sol = SolutionDescriptor(
            x_letters, {a: abs(spec.numbers[a]) for a in x_letters}, lam
        )
        return VForm(
            sol,
            ParityDescriptor(x_letters, y_letters, 1),
            IndicatorDescriptor(sigma, frozenset(sigma) - set(x_letters)),
        )

    if lam >= 0:
        sol = SolutionDescriptor(
            x_letters,
            {a: 1 / abs(spec.numbers[a]) for a in x_letters},
            math.inf if lam == 0 else 1 / lam,
        )
        return LambdaForm(sigma, sol, ParityDescriptor(x_letters, y_letters, 0))
    sol = SolutionDescriptor(
        x_letters, {a: abs(spec.numbers[a]) for a in x_letters}, abs(lam)
    )
    return VForm(
        sol,
        ParityDescriptor(x_letters, y_letters, 0),
        IndicatorDescriptor(sigma, frozenset(sigma) - set(x_letters)),
    )


def build_one_state(d: LanguageDescriptor) -> OneStateGfaSpec:
    """Inverse of the decomposition: a one-state machine whose acceptance
    condition denotes the descriptor's language.

    Intersection forms invert the solution bases (number magnitudes 1/c with
    cutpoint magnitude 1/tau); union and equality forms keep them; letters in
    Y get the negative sign, letters outside X the number 0.
    """
    if isinstance(d, IndicatorOnly):
        numbers = {
            a: Fraction(0) if a in d.indicator.subset else Fraction(1) for a in d.sigma
        }
        return OneStateGfaSpec(numbers, Fraction(0), mode=langsem.INCLUSIVE)

    sol = d.solution
    if not sol.exact:
        raise ValueError("building a machine needs exact solution coefficients")
    y = d.parity.subset
    bit = d.parity.bit

    def signed(a, magnitude):
        return -magnitude if a in y else magnitude

    if isinstance(d, LambdaForm):
        numbers = {a: Fraction(0) for a in d.sigma}
        for a in sol.alphabet:
            numbers[a] = signed(a, 1 / sol.coefficients[a])
        magnitude = Fraction(0) if sol.threshold == math.inf else 1 / sol.threshold
        if bit == 1:
            return OneStateGfaSpec(numbers, -magnitude, DIRECTION_LESS)
        return OneStateGfaSpec(numbers, magnitude, DIRECTION_GREATER)

    if isinstance(d, VForm):
        numbers = {a: Fraction(0) for a in d.sigma}
        for a in sol.alphabet:
            numbers[a] = signed(a, sol.coefficients[a])
        if bit == 1:
            return OneStateGfaSpec(numbers, sol.threshold, DIRECTION_LESS)
        return OneStateGfaSpec(numbers, -sol.threshold, DIRECTION_GREATER)

    if isinstance(d, InclusiveForm):
        numbers = {a: Fraction(0) for a in d.sigma}
        for a in sol.alphabet:
            numbers[a] = signed(a, sol.coefficients[a])
        lam = sol.threshold if bit == 0 else -sol.threshold
        return OneStateGfaSpec(numbers, lam, mode=langsem.INCLUSIVE)

    raise TypeError(f"not a language descriptor: {type(d).__name__}")


def normalize_one_state(
    numbers,
    initial,
    final,
    cutpoint,
    direction: str = DIRECTION_LESS,
    mode: str = langsem.STRICT,
) -> Union[OneStateGfaSpec, LanguageDescriptor]:
    """Fold nontrivial initial/final weights of a one-state machine into the
    cutpoint: the acceptance condition is unchanged under dividing by
    final * initial, flipping the direction if that factor is negative.

    A zero factor makes the value identically zero; the result is then the
    trivial descriptor (empty language or all words) directly.
    """
    weight = Fraction(initial) * Fraction(final)
    lam = Fraction(cutpoint)
    sigma = tuple(sorted(numbers))
    if weight == 0:
        if mode == langsem.INCLUSIVE:
            everything = lam == 0
        elif direction == DIRECTION_LESS:
            everything = lam > 0
        else:
            everything = lam < 0
        return _trivial_descriptor(sigma, everything)
    lam = lam / weight
    if weight < 0 and mode == langsem.STRICT:
        direction = (
            DIRECTION_GREATER if direction == DIRECTION_LESS else DIRECTION_LESS
        )
    return OneStateGfaSpec(dict(numbers), lam, direction, mode)


def _trivial_descriptor(sigma, everything: bool) -> LanguageDescriptor:
    if not everything:
        return IndicatorOnly(IndicatorDescriptor(sigma, frozenset()))
    sol = SolutionDescriptor((), {}, Fraction(2))
    return VForm(
        sol,
        ParityDescriptor((), frozenset(), 0),
        IndicatorDescriptor(sigma, frozenset(sigma)),
    )


# measure-once quantum constructions

def exclusive_to_zero(mc: Mcqfa, cutpoint) -> Mcqfa:
    """Rebuild an exclusive-cutpoint quantum machine as one with exclusive
    cutpoint 0.

    The new machine runs the conjugate tensor square of the original on a
    state space extended by one flag coordinate, and a right end-marker whose
    first row combines the accept-diagonal filter with the old cutpoint; its
    accepting probability is (f - cutpoint)^2 / (2 (cutpoint^2 + |accept|)),
    which is positive exactly where f differs from the cutpoint.

    The output is a binary64 machine (the end-marker completion and the
    1/sqrt(2) split are irrational); use :func:`exclusive_zero_value` for the
    exact value when the input machine is exact.
    """
    lam = Fraction(cutpoint)
    if lam == 0:
        warnings.warn("cutpoint 0 already is the target form; machine returned unchanged")
        return mc
    if not 0 < lam <= 1:
        raise ValueError("cutpoint must lie in (0, 1]")
    n = mc.state_count
    accept = sorted(mc.accept_states)
    cmplx = mc.kind in ("complex-rational", "complex-float")
    cast = complex if cmplx else float

    def fl(matrix: Matrix) -> Matrix:
        return Matrix([[cast(scalar_to_float(v)) for v in row] for row in matrix.data])

    def conj(matrix: Matrix) -> Matrix:
        return Matrix([[v.conjugate() if cmplx else v for v in row] for row in matrix.data])

    v0 = mc.initial if mc.left_marker is None else mc.left_marker @ mc.initial
    v0 = fl(v0)
    pair0 = kron(conj(v0), v0)
    half = 1 / math.sqrt(2.0)
    initial = Matrix.column([cast(half)] + [half * pair0[i, 0] for i in range(n * n)])

    transitions = {}
    for s, u in mc.transitions.items():
        uf = fl(u)
        tensor = kron(conj(uf), uf)
        rows = [[cast(1.0)] + [cast(0.0)] * (n * n)]
        for i in range(n * n):
            rows.append([cast(0.0)] + list(tensor.data[i]))
        transitions[s] = Matrix(rows)

    c = 1 / math.sqrt(float(lam * lam + len(accept)))
    # positions of the diagonal tensor coordinates |q_j> (x) |q_j>, shifted by
    # the flag coordinate
    diag = {1 + (j - 1) * (n + 1) for j in accept}
    first_row = [cast(-c * float(lam))] + [
        cast(c) if 1 + i in diag else cast(0.0) for i in range(n * n)
    ]
    marker = complete_to_unitary(first_row)

    return Mcqfa(
        state_count=n * n + 1,
        alphabet=mc.alphabet,
        transitions=transitions,
        initial=initial,
        accept_states=frozenset({1}),
        right_marker=marker,
    )


def exclusive_zero_value(mc: Mcqfa, cutpoint, word) -> Fraction:
    """Exact accepting value of the exclusive-to-zero transform: zero exactly
    when the original machine's value equals the cutpoint."""
    lam = Fraction(cutpoint)
    if not mc.is_exact:
        raise ValueError("exact evaluation needs an exact machine")
    f = mc.value(word)
    c_squared = 1 / (lam * lam + len(mc.accept_states))
    return c_squared / 2 * (f - lam) ** 2


def modn_mcqfa(n: int) -> Mcqfa:
    """Two-state quantum machine rotating by pi/n per letter; the accepting
    probability on a^k is cos^2(k pi / n), so the inclusive cutpoint 1 picks
    out exactly the multiples of n."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    theta = math.pi / n
    u = Matrix(
        [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
    )
    return Mcqfa(
        state_count=2,
        alphabet=("a",),
        transitions={"a": u},
        initial=Matrix.column([1.0, 0.0]),
        accept_states=frozenset({1}),
    )
