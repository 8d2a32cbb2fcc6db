"""Deterministic two-sided Turing machines.

A machine is a finite set of states, an initial state, a finite alphabet
with a designated blank, and a partial transition function
``delta : (state, symbol) -> (state, symbol, L|R)``.  A configuration
keeps the head between two finite stacks of tape symbols:

* ``left``  - symbols to the left of the head, nearest first,
* ``right`` - the head symbol and everything to its right, head first.

Cells beyond both stacks read blank; configurations are kept canonical by
trimming trailing blanks at both far ends, so equal tapes compare equal.
The display order is ``reversed(left) state right``, e.g. ``0 S S q0 S 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

__all__ = [
    "MachineError", "TmSpec", "TmConfig", "TmOutcome", "FunResult",
    "make_config", "display_config", "parse_config",
    "tm_step", "tm_final", "initial_fun_config", "initial_rel_config",
    "eval_fun", "eval_rel",
]


class MachineError(Exception):
    pass


@dataclass(frozen=True)
class TmSpec:
    name: str
    states: tuple[str, ...]
    initial: str
    blank: str
    alphabet: tuple[str, ...]
    delta: Mapping[tuple[str, str], tuple[str, str, str]]

    def __post_init__(self):
        q, g = set(self.states), set(self.alphabet)
        if q & g:
            raise MachineError(f"states and alphabet overlap: {sorted(q & g)}")
        if self.initial not in q:
            raise MachineError(f"initial state {self.initial} not declared")
        if self.blank not in g:
            raise MachineError(f"blank {self.blank} not in alphabet")
        for (s, f), (s2, f2, d) in self.delta.items():
            if s not in q or s2 not in q or f not in g or f2 not in g:
                raise MachineError(f"delta entry ({s},{f})->({s2},{f2},{d}) "
                                   "uses undeclared names")
            if d not in ("L", "R"):
                raise MachineError(f"bad direction {d!r}")


@dataclass(frozen=True)
class TmConfig:
    """Canonical configuration; build with make_config."""

    left: tuple[str, ...]
    state: str
    right: tuple[str, ...]


def _trim(blank: str, seq: tuple[str, ...]) -> tuple[str, ...]:
    i = len(seq)
    while i > 0 and seq[i - 1] == blank:
        i -= 1
    return seq[:i]


def make_config(m: TmSpec, left, state: str, right) -> TmConfig:
    if state not in m.states:
        raise MachineError(f"unknown state {state!r}")
    left, right = tuple(left), tuple(right)
    for f in left + right:
        if f not in m.alphabet:
            raise MachineError(f"unknown tape symbol {f!r}")
    return TmConfig(_trim(m.blank, left), state, _trim(m.blank, right))


def display_config(c: TmConfig) -> str:
    toks = list(reversed(c.left)) + [c.state] + list(c.right)
    return " ".join(toks)


def parse_config(m: TmSpec, text: str) -> TmConfig:
    toks = text.split()
    hits = [i for i, t in enumerate(toks) if t in m.states]
    if len(hits) != 1:
        raise MachineError(f"config must contain exactly one state token: {text!r}")
    i = hits[0]
    return make_config(m, tuple(reversed(toks[:i])), toks[i], tuple(toks[i + 1:]))


def tm_step(m: TmSpec, c: TmConfig) -> Optional[TmConfig]:
    """The unique successor configuration, or None at a normal form.

    On R the written symbol is pushed onto the left stack.  On L the
    nearest left symbol (blank if none) becomes the new head symbol,
    followed by the written one.
    """
    head = c.right[0] if c.right else m.blank
    ent = m.delta.get((c.state, head))
    if ent is None:
        return None
    q2, f2, d = ent
    rest = c.right[1:] if c.right else ()
    if d == "R":
        left = (f2,) + c.left
        right = rest
    else:
        g = c.left[0] if c.left else m.blank
        left = c.left[1:]
        right = (g, f2) + rest
    return TmConfig(_trim(m.blank, left), q2, _trim(m.blank, right))


@dataclass(frozen=True)
class TmOutcome:
    kind: str  # "final" | "timeout"
    config: TmConfig
    steps: int


def tm_final(m: TmSpec, c: TmConfig, fuel: int) -> TmOutcome:
    """Iterate tm_step at most fuel times; final once no entry applies."""
    if fuel < 0:
        raise MachineError("fuel must be >= 0")
    cur = c
    for k in range(fuel):
        nxt = tm_step(m, cur)
        if nxt is None:
            return TmOutcome("final", cur, k)
        cur = nxt
    if tm_step(m, cur) is None:
        return TmOutcome("final", cur, fuel)
    return TmOutcome("timeout", cur, fuel)


def _require_numeric(m: TmSpec) -> None:
    if "S" not in m.alphabet or "0" not in m.alphabet:
        raise MachineError("machine alphabet must contain S and 0")


def initial_fun_config(m: TmSpec, n: int) -> TmConfig:
    _require_numeric(m)
    return make_config(m, (), m.initial, ("S",) * n + ("0",))


def initial_rel_config(m: TmSpec, n: int, k: int) -> TmConfig:
    _require_numeric(m)
    return make_config(m, ("S",) * n + ("0",), m.initial, ("S",) * k + ("0",))


@dataclass(frozen=True)
class FunResult:
    kind: str  # "value" | "undefined" | "unknown"
    value: Optional[int] = None


def eval_fun(m: TmSpec, n: int, fuel: int) -> FunResult:
    """Run from the numeric input S^n 0 and decode the final head word.

    The value is the length of the maximal S-run at the head, which must
    be terminated by an explicit 0; any other final shape is undefined,
    and fuel exhaustion stays distinct as unknown.
    """
    out = tm_final(m, initial_fun_config(m, n), fuel)
    if out.kind == "timeout":
        return FunResult("unknown")
    r = out.config.right
    i = 0
    while i < len(r) and r[i] == "S":
        i += 1
    if i < len(r) and r[i] == "0":
        return FunResult("value", i)
    return FunResult("undefined")


def eval_rel(m: TmSpec, n: int, k: int, fuel: int) -> str:
    """Decide the pair relation: run from `0 S^n q0 S^k 0` and test
    whether the final head symbol is 0.  Returns holds/fails/unknown."""
    out = tm_final(m, initial_rel_config(m, n, k), fuel)
    if out.kind == "timeout":
        return "unknown"
    head = out.config.right[0] if out.config.right else m.blank
    return "holds" if head == "0" else "fails"
