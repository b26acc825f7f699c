"""The four machine models and their accepting-value semantics.

All models read a word left to right.  A generalized automaton keeps a column
vector ``v`` and applies ``v -> A_sigma v`` per symbol; the accepting value is
``f v`` for a final row vector ``f``.  A probabilistic automaton is the
stochastic special case.  A measure-once quantum automaton keeps a unit
vector, applies a unitary per symbol and measures the accept states at the
end.  A general quantum automaton keeps a density matrix and applies one
superoperator (a list of operation elements) per symbol.

Optional end-markers transform the initial object before the word is read
(left marker) and the final object after it (right marker).

Automata are immutable after construction and evaluation is pure, so a single
machine can be evaluated concurrently over many words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .exactmath import (
    KIND_COMPLEX_FLOAT,
    KIND_COMPLEX_RATIONAL,
    KIND_RATIONAL,
    VALIDATION_TOL,
    Matrix,
    is_exact_kind,
    join_kinds,
    scalar_abs_squared,
    scalar_real,
    validate_matrix,
)


class UnknownSymbolError(ValueError):
    """A word contains a symbol outside the automaton's alphabet."""


def _check_alphabet(alphabet, transitions):
    alphabet = tuple(alphabet)
    if len(set(alphabet)) != len(alphabet):
        raise ValueError("duplicate symbols in alphabet")
    missing = [s for s in alphabet if s not in transitions]
    if missing:
        raise ValueError(f"missing transitions for symbols {missing}")
    extra = [s for s in transitions if s not in alphabet]
    if extra:
        raise ValueError(f"transitions for symbols outside the alphabet: {extra}")
    return alphabet


def _check_word(aut, word) -> list:
    word = list(word)
    for s in word:
        if s not in aut.transitions:
            raise UnknownSymbolError(f"symbol {s!r} not in alphabet {aut.alphabet}")
    return word


@dataclass(frozen=True)
class Gfa:
    """Generalized finite automaton: arbitrary real transition matrices."""

    state_count: int
    alphabet: tuple
    transitions: dict
    initial: Matrix
    final: Matrix
    left_marker: Optional[Matrix] = None
    right_marker: Optional[Matrix] = None

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet, self.transitions))
        n = self.state_count
        if self.initial.shape != (n, 1):
            raise ValueError(f"initial vector must be {n} x 1, got {self.initial.shape}")
        if self.final.shape != (1, n):
            raise ValueError(f"final vector must be 1 x {n}, got {self.final.shape}")
        kind = join_kinds(self.initial.kind, self.final.kind)
        for m in self._all_matrices():
            if m.shape != (n, n):
                raise ValueError(f"transition matrices must be {n} x {n}, got {m.shape}")
            kind = join_kinds(kind, m.kind)
        if kind in (KIND_COMPLEX_RATIONAL, KIND_COMPLEX_FLOAT):
            raise ValueError("generalized automata use real scalars")
        object.__setattr__(self, "_kind", kind)

    def _all_matrices(self):
        out = list(self.transitions.values())
        if self.left_marker is not None:
            out.append(self.left_marker)
        if self.right_marker is not None:
            out.append(self.right_marker)
        return out

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def is_exact(self) -> bool:
        return is_exact_kind(self.kind)

    def _initial_state(self) -> Matrix:
        v = self.initial
        if self.left_marker is not None:
            v = self.left_marker @ v
        return v

    def _final_row(self) -> Matrix:
        f = self.final
        if self.right_marker is not None:
            f = f @ self.right_marker
        return f

    def value(self, word):
        word = _check_word(self, word)
        v = self._initial_state()
        for s in word:
            v = self.transitions[s] @ v
        return (self._final_row() @ v)[0, 0]

    def trace(self, word) -> list[Matrix]:
        word = _check_word(self, word)
        states = [self._initial_state()]
        for s in word:
            states.append(self.transitions[s] @ states[-1])
        return states

    def unary_values(self, limit: int):
        """Yield the accepting value on a^m for m = 0..limit."""
        sym = _unary_symbol(self)
        f = self._final_row()
        v = self._initial_state()
        a = self.transitions[sym]
        for m in range(limit + 1):
            yield (f @ v)[0, 0]
            if m < limit:
                v = a @ v
        return

    def validate(self, tol=None) -> list[str]:
        return []

    def as_gfa(self) -> "Gfa":
        """Forget any stochasticity constraints; evaluation is unchanged."""
        return Gfa(
            self.state_count,
            self.alphabet,
            dict(self.transitions),
            self.initial,
            self.final,
            self.left_marker,
            self.right_marker,
        )


class Pfa(Gfa):
    """Probabilistic automaton: left-stochastic matrices, stochastic initial
    vector, final vector with entries in [0, 1] (0/1 when there is no right
    marker)."""

    def validate(self, tol=None) -> list[str]:
        tol = _default_tol(self, tol)
        issues = []
        for s, m in self.transitions.items():
            issues.extend(f"transition {s!r}: {v}" for v in validate_matrix("stochastic", m, tol))
        if self.left_marker is not None:
            issues.extend(
                f"left marker: {v}" for v in validate_matrix("stochastic", self.left_marker, tol)
            )
        if self.right_marker is not None:
            issues.extend(
                f"right marker: {v}" for v in validate_matrix("stochastic", self.right_marker, tol)
            )
        col = [self.initial[i, 0] for i in range(self.state_count)]
        if any(x < -tol for x in col):
            issues.append("initial vector has a negative entry")
        if abs(sum(col) - 1) > tol:
            issues.append(f"initial vector sums to {sum(col)}, not 1")
        frow = [self.final[0, j] for j in range(self.state_count)]
        if self.right_marker is None:
            if any(abs(x) > tol and abs(x - 1) > tol for x in frow):
                issues.append("final vector entries must be 0 or 1 without a right marker")
        elif any(x < -tol or x > 1 + tol for x in frow):
            issues.append("final vector entries must lie in [0, 1]")
        return issues


@dataclass(frozen=True)
class Mcqfa:
    """Measure-once quantum automaton: one unitary per symbol, a single
    projective measurement on the accept states at the end of the input.

    ``initial`` may be any unit vector; a machine whose initial state is not a
    basis state is understood as carrying a left end-marker.  ``accept_states``
    holds 1-based state indices.
    """

    state_count: int
    alphabet: tuple
    transitions: dict
    initial: Matrix
    accept_states: frozenset = field(default_factory=frozenset)
    left_marker: Optional[Matrix] = None
    right_marker: Optional[Matrix] = None

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet, self.transitions))
        object.__setattr__(self, "accept_states", frozenset(self.accept_states))
        n = self.state_count
        if self.initial.shape != (n, 1):
            raise ValueError(f"initial state must be {n} x 1, got {self.initial.shape}")
        kind = self.initial.kind
        for m in self._all_matrices():
            if m.shape != (n, n):
                raise ValueError(f"unitaries must be {n} x {n}, got {m.shape}")
            kind = join_kinds(kind, m.kind)
        if any(not 1 <= q <= n for q in self.accept_states):
            raise ValueError("accept states must be 1-based state indices")
        object.__setattr__(self, "_kind", kind)

    def _all_matrices(self):
        out = list(self.transitions.values())
        if self.left_marker is not None:
            out.append(self.left_marker)
        if self.right_marker is not None:
            out.append(self.right_marker)
        return out

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def is_exact(self) -> bool:
        return is_exact_kind(self.kind)

    def _initial_state(self) -> Matrix:
        v = self.initial
        if self.left_marker is not None:
            v = self.left_marker @ v
        return v

    def _measure(self, v: Matrix):
        if self.right_marker is not None:
            v = self.right_marker @ v
        total = None
        for q in sorted(self.accept_states):
            p = scalar_abs_squared(v[q - 1, 0])
            total = p if total is None else total + p
        if total is None:
            return Fraction(0) if self.is_exact else 0.0
        return total

    def value(self, word):
        word = _check_word(self, word)
        v = self._initial_state()
        for s in word:
            v = self.transitions[s] @ v
        return self._measure(v)

    def trace(self, word) -> list[Matrix]:
        word = _check_word(self, word)
        states = [self._initial_state()]
        for s in word:
            states.append(self.transitions[s] @ states[-1])
        return states

    def unary_values(self, limit: int):
        sym = _unary_symbol(self)
        v = self._initial_state()
        u = self.transitions[sym]
        for m in range(limit + 1):
            yield self._measure(v)
            if m < limit:
                v = u @ v
        return

    def validate(self, tol=None) -> list[str]:
        tol = _default_tol(self, tol)
        issues = []
        for s, m in self.transitions.items():
            issues.extend(f"transition {s!r}: {v}" for v in validate_matrix("unitary", m, tol))
        if self.left_marker is not None:
            issues.extend(
                f"left marker: {v}" for v in validate_matrix("unitary", self.left_marker, tol)
            )
        if self.right_marker is not None:
            issues.extend(
                f"right marker: {v}" for v in validate_matrix("unitary", self.right_marker, tol)
            )
        norm = sum(scalar_abs_squared(self.initial[i, 0]) for i in range(self.state_count))
        if abs(norm - 1) > tol:
            issues.append(f"initial state has squared norm {norm}, not 1")
        return issues


@dataclass(frozen=True)
class Qfa:
    """General quantum automaton: one superoperator (list of operation
    elements) per symbol acting on a density matrix; the accepting value is
    the probability mass on the accept states at the end.
    """

    state_count: int
    alphabet: tuple
    transitions: dict
    initial: Matrix
    accept_states: frozenset = field(default_factory=frozenset)
    left_marker: Optional[tuple] = None
    right_marker: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet, self.transitions))
        object.__setattr__(
            self, "transitions", {s: tuple(es) for s, es in self.transitions.items()}
        )
        object.__setattr__(self, "accept_states", frozenset(self.accept_states))
        if self.left_marker is not None:
            object.__setattr__(self, "left_marker", tuple(self.left_marker))
        if self.right_marker is not None:
            object.__setattr__(self, "right_marker", tuple(self.right_marker))
        n = self.state_count
        if isinstance(self.initial, int):
            object.__setattr__(self, "initial", basis_density(n, self.initial))
        if self.initial.shape != (n, n):
            raise ValueError(f"initial density matrix must be {n} x {n}")
        kind = self.initial.kind
        for es in self._all_superoperators():
            for e in es:
                if e.shape != (n, n):
                    raise ValueError(f"operation elements must be {n} x {n}, got {e.shape}")
                kind = join_kinds(kind, e.kind)
        if any(not 1 <= q <= n for q in self.accept_states):
            raise ValueError("accept states must be 1-based state indices")
        object.__setattr__(self, "_kind", kind)

    def _all_superoperators(self):
        out = list(self.transitions.values())
        if self.left_marker is not None:
            out.append(self.left_marker)
        if self.right_marker is not None:
            out.append(self.right_marker)
        return out

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def is_exact(self) -> bool:
        return is_exact_kind(self.kind)

    @staticmethod
    def apply(elements, rho: Matrix) -> Matrix:
        total = None
        for e in elements:
            term = e @ rho @ e.conj_transpose()
            total = term if total is None else total + term
        return total

    def _initial_state(self) -> Matrix:
        rho = self.initial
        if self.left_marker is not None:
            rho = self.apply(self.left_marker, rho)
        return rho

    def _measure(self, rho: Matrix):
        if self.right_marker is not None:
            rho = self.apply(self.right_marker, rho)
        total = None
        for q in sorted(self.accept_states):
            p = scalar_real(rho[q - 1, q - 1])
            total = p if total is None else total + p
        if total is None:
            return Fraction(0) if self.is_exact else 0.0
        return total

    def value(self, word):
        word = _check_word(self, word)
        rho = self._initial_state()
        for s in word:
            rho = self.apply(self.transitions[s], rho)
        return self._measure(rho)

    def trace(self, word) -> list[Matrix]:
        word = _check_word(self, word)
        states = [self._initial_state()]
        for s in word:
            states.append(self.apply(self.transitions[s], states[-1]))
        return states

    def unary_values(self, limit: int):
        sym = _unary_symbol(self)
        rho = self._initial_state()
        es = self.transitions[sym]
        for m in range(limit + 1):
            yield self._measure(rho)
            if m < limit:
                rho = self.apply(es, rho)
        return

    def validate(self, tol=None) -> list[str]:
        tol = _default_tol(self, tol)
        issues = []
        for s, es in self.transitions.items():
            issues.extend(f"symbol {s!r}: {v}" for v in validate_matrix("kraus-set", es, tol))
        if self.left_marker is not None:
            issues.extend(
                f"left marker: {v}" for v in validate_matrix("kraus-set", self.left_marker, tol)
            )
        if self.right_marker is not None:
            issues.extend(
                f"right marker: {v}" for v in validate_matrix("kraus-set", self.right_marker, tol)
            )
        issues.extend(f"initial state: {v}" for v in validate_matrix("density", self.initial, tol))
        return issues


Automaton = Union[Gfa, Pfa, Mcqfa, Qfa]


def basis_state(n: int, index: int) -> Matrix:
    """Column vector |q_index> (1-based) as an exact rational matrix."""
    if not 1 <= index <= n:
        raise ValueError(f"basis index {index} out of range 1..{n}")
    return Matrix.column([Fraction(1 if i + 1 == index else 0) for i in range(n)])


def basis_density(n: int, index: int) -> Matrix:
    """Density matrix |q_index><q_index| (1-based) as an exact rational matrix."""
    v = basis_state(n, index)
    return v @ v.transpose()


def accept_projector(n: int, accept_states, kind: str = KIND_RATIONAL) -> Matrix:
    """Diagonal 0/1 projector selecting the given 1-based accept states."""
    m = Matrix.zeros(n, n, kind)
    rows = [list(r) for r in m.data]
    one = Matrix.identity(1, kind)[0, 0]
    for q in accept_states:
        rows[q - 1][q - 1] = one
    return Matrix(rows)


def _default_tol(aut, tol):
    if tol is None:
        return 0 if aut.is_exact else VALIDATION_TOL
    return tol


def _unary_symbol(aut):
    if len(aut.alphabet) != 1:
        raise ValueError(f"automaton is not unary: alphabet {aut.alphabet}")
    return aut.alphabet[0]


def is_unary(aut: Automaton) -> bool:
    return len(aut.alphabet) == 1


def value(aut: Automaton, word):
    """Accepting value (generalized) or accepting probability of the automaton
    on the word, with end-markers applied when present."""
    return aut.value(word)


def trace_run(aut: Automaton, word) -> list[Matrix]:
    """States after each symbol: a list of length |word| + 1 starting from the
    marker-adjusted initial object."""
    return aut.trace(word)


def validate(aut: Automaton, tol=None) -> list[str]:
    """Model-appropriate structural violations; the default tolerance is 0 for
    exact machines and 1e-12 for binary64 ones."""
    return aut.validate(tol)


def unary_values(aut: Automaton, limit: int):
    """Iterate the accepting value on a^m for m = 0..limit (incremental, one
    matrix application per step)."""
    return aut.unary_values(limit)
