"""Non-deterministic one-sided Turing machines on ultimately periodic
omega-tapes.

Tapes are words ``prefix . cycle^w`` over the machine alphabet; a
configuration is a state, a head position ``i >= 0`` and a finite overlay
of written cells on top of the base word.  Writes that merely restore the
base symbol are dropped, so overlay equality is semantic.

Run exploration expands the run tree breadth-first, deduplicating
configurations by (state, head phase within the cycle, local tape window)
and attaching a lasso certificate when a branch revisits such a key on its
own ancestry.  A lasso is only certified after a static window check plus
an explicit replay of the candidate cycle; its net head displacement `d`
then classifies the run: d > 0 means every position is eventually passed
and left behind (complete, non-oscillating, hence accepting), d = 0 means
the same configurations recur forever (oscillating, not complete).
Anything without a certified lasso stays unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .turing import MachineError

__all__ = [
    "NdTmSpec", "OmegaWord", "NdConfig", "Lasso", "RunPrefix", "RunClass",
    "Membership", "parse_word", "format_word", "word_at", "nd_steps",
    "explore_runs", "classify_run", "membership_semidecide", "visit_stats",
]


@dataclass(frozen=True)
class NdTmSpec:
    name: str
    states: tuple[str, ...]
    initial: str
    blank: str
    alphabet: tuple[str, ...]
    delta: Mapping[tuple[str, str], tuple[tuple[str, str, str], ...]]

    def __post_init__(self):
        q, g = set(self.states), set(self.alphabet)
        if q & g:
            raise MachineError(f"states and alphabet overlap: {sorted(q & g)}")
        if self.initial not in q:
            raise MachineError(f"initial state {self.initial} not declared")
        if self.blank not in g:
            raise MachineError(f"blank {self.blank} not in alphabet")
        for (s, f), choices in self.delta.items():
            for (s2, f2, d) in choices:
                if s not in q or s2 not in q or f not in g or f2 not in g:
                    raise MachineError(
                        f"delta entry ({s},{f})->({s2},{f2},{d}) undeclared")
                if d not in ("L", "R"):
                    raise MachineError(f"bad direction {d!r}")


@dataclass(frozen=True)
class OmegaWord:
    """An ultimately periodic word prefix . cycle^w."""

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        if not self.cycle:
            raise MachineError("omega-word cycle must be nonempty")

    def at(self, i: int) -> str:
        if i < 0:
            raise MachineError("negative tape position")
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def normalized(self) -> "OmegaWord":
        cyc = list(self.cycle)
        for p in range(1, len(cyc)):
            if len(cyc) % p == 0 and cyc == cyc[:p] * (len(cyc) // p):
                cyc = cyc[:p]
                break
        pre = list(self.prefix)
        while pre and pre[-1] == cyc[-1]:
            pre.pop()
            cyc = [cyc[-1]] + cyc[:-1]
        return OmegaWord(tuple(pre), tuple(cyc))


def parse_word(text: str, alphabet=None) -> OmegaWord:
    """Parse `<prefix>(<cycle>)^w`, one character per symbol."""
    text = text.strip()
    i = text.find("(")
    if i < 0 or not text.endswith(")^w"):
        raise MachineError(f"bad omega-word syntax {text!r}")
    prefix = tuple(text[:i])
    cycle = tuple(text[i + 1:-3])
    if not cycle:
        raise MachineError("omega-word cycle must be nonempty")
    w = OmegaWord(prefix, cycle)
    if alphabet is not None:
        for s in prefix + cycle:
            if s not in alphabet:
                raise MachineError(f"word symbol {s!r} not in alphabet")
    return w


def format_word(w: OmegaWord) -> str:
    return "".join(w.prefix) + "(" + "".join(w.cycle) + ")^w"


class NdConfig:
    """State, head and finite write overlay on a base omega-word."""

    __slots__ = ("word", "state", "head", "writes")

    def __init__(self, word: OmegaWord, state: str, head: int,
                 writes: Optional[dict[int, str]] = None):
        if head < 0:
            raise MachineError("head must be >= 0 on a one-sided tape")
        self.word = word
        self.state = state
        self.head = head
        self.writes = dict(writes) if writes else {}

    def symbol_at(self, i: int) -> str:
        got = self.writes.get(i)
        return got if got is not None else self.word.at(i)

    def written(self, i: int, f: str) -> "NdConfig":
        nw = dict(self.writes)
        if self.word.at(i) == f:
            nw.pop(i, None)
        else:
            nw[i] = f
        return NdConfig(self.word, self.state, self.head, nw)

    def _key(self):
        return (self.state, self.head, tuple(sorted(self.writes.items())))

    def __eq__(self, other):
        return isinstance(other, NdConfig) and self.word == other.word \
            and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"<{self.state}@{self.head} writes={self.writes}>"


def word_at(w: OmegaWord, i: int) -> str:
    return w.at(i)


def nd_steps(m: NdTmSpec, c: NdConfig) -> list[NdConfig]:
    """All successor configurations; left moves are blocked at head 0.
    Order follows the machine's delta declaration order."""
    out = []
    head_sym = c.symbol_at(c.head)
    for (q2, f2, d) in m.delta.get((c.state, head_sym), ()):
        if d == "L":
            if c.head == 0:
                continue
            nxt = c.written(c.head, f2)
            out.append(NdConfig(c.word, q2, c.head - 1, nxt.writes))
        else:
            nxt = c.written(c.head, f2)
            out.append(NdConfig(c.word, q2, c.head + 1, nxt.writes))
    return out


def _choices(m: NdTmSpec, c: NdConfig) -> list[tuple[tuple[str, str, str], "NdConfig"]]:
    out = []
    head_sym = c.symbol_at(c.head)
    for ch in m.delta.get((c.state, head_sym), ()):
        q2, f2, d = ch
        if d == "L" and c.head == 0:
            continue
        nxt = c.written(c.head, f2)
        out.append((ch, NdConfig(c.word, q2, c.head + (1 if d == "R" else -1),
                                 nxt.writes)))
    return out


@dataclass(frozen=True)
class Lasso:
    cycle_start: int
    cycle_length: int
    displacement: int
    window: tuple[int, int]
    window_syms: tuple[str, ...]


@dataclass
class RunPrefix:
    """An explored run: configs from the start plus an optional lasso.

    status is one of lassoed/stuck/merged/cut/failed; only lassoed runs
    classify beyond unknown.
    """

    configs: list[NdConfig]
    choices: list[tuple[str, str, str]]
    status: str
    lasso: Optional[Lasso] = None


@dataclass(frozen=True)
class RunClass:
    complete: str
    oscillating: str
    accepting: str


def _default_radius(m: NdTmSpec, w: OmegaWord) -> int:
    return min(64, len(w.cycle) + len(m.states) + 2)


def _dedup_key(c: NdConfig, w: OmegaWord, radius: int):
    p, cl = len(w.prefix), len(w.cycle)
    if c.head < p:
        phase = ("abs", c.head)
    else:
        phase = ("cyc", (c.head - p) % cl)
    window = tuple(c.symbol_at(c.head + off) if c.head + off >= 0 else "<"
                   for off in range(-radius, radius + 1))
    return (c.state, phase, window)


def _validate_lasso(m: NdTmSpec, configs: list[NdConfig],
                    choices: list[tuple[str, str, str]],
                    j: int, k: int) -> Optional[Lasso]:
    """Certify that the cycle configs[j..k] repeats forever.

    d = 0 requires literal recurrence of the whole configuration.  d > 0
    requires phase-aligned recurrence of the touched window, no writes
    beyond it, and an exact replay of the cycle shifted by d.
    """
    cj, ck = configs[j], configs[k]
    d = ck.head - cj.head
    if d < 0 or ck.state != cj.state:
        return None
    w = cj.word
    p, cl = len(w.prefix), len(w.cycle)
    if d == 0:
        if cj != ck:
            return None
        lo = min(c.head for c in configs[j:k + 1]) - cj.head
        hi = max(c.head for c in configs[j:k + 1]) - cj.head
        syms = tuple(cj.symbol_at(cj.head + off) for off in range(lo, hi + 1))
        return Lasso(j, k - j, 0, (lo, hi), syms)
    if d % cl != 0 or cj.head < p:
        return None
    touched = [c.head for c in configs[j:k + 1]]
    lo = min(touched) - cj.head
    hi = max(touched) - cj.head
    if cj.head + lo < 0:
        return None
    for off in range(lo, hi + 1):
        if cj.symbol_at(cj.head + off) != ck.symbol_at(ck.head + off):
            return None
    if any(pos > ck.head + hi for pos in ck.writes):
        return None
    # Replay the cycle once from ck following the recorded choices.
    cur = ck
    for t in range(j, k):
        want = choices[t]
        legal = dict()
        for ch, nxt in _choices(m, cur):
            legal[ch] = nxt
        if want not in legal:
            return None
        expected_read = configs[t].symbol_at(configs[t].head)
        if cur.symbol_at(cur.head) != expected_read:
            return None
        cur = legal[want]
    if cur.state != ck.state or cur.head != ck.head + d:
        return None
    for off in range(lo, hi + 1):
        if cur.symbol_at(cur.head + off) != ck.symbol_at(ck.head + off):
            return None
    syms = tuple(cj.symbol_at(cj.head + off) for off in range(lo, hi + 1))
    return Lasso(j, k - j, d, (lo, hi), syms)


def explore_runs(m: NdTmSpec, w: OmegaWord, fuel: int = 200, width: int = 64,
                 radius: Optional[int] = None) -> list[RunPrefix]:
    """Breadth-first run-tree expansion up to fuel steps and width frontier.

    Returns the maximal explored branches in a canonical order.  Branch
    ends: stuck (no successor), lassoed (certified recurrence on the own
    ancestry), merged (key seen on another branch), failed (recurrence
    seen but not certifiable), cut (bounds).
    """
    if fuel < 1 or width < 1:
        raise MachineError("fuel and width must be >= 1")
    radius = radius if radius is not None else _default_radius(m, w)
    start = NdConfig(w, m.initial, 0)
    Branch = tuple  # (configs, choices, key_index dict)
    runs: list[RunPrefix] = []
    seen_global: set = set()
    frontier: list[tuple[list[NdConfig], list, dict]] = [
        ([start], [], {_dedup_key(start, w, radius): 0})]
    seen_global.add(_dedup_key(start, w, radius))
    depth = 0
    while frontier and depth < fuel:
        depth += 1
        nxt_frontier = []
        for configs, choices, keyidx in frontier:
            succ = _choices(m, configs[-1])
            if not succ:
                runs.append(RunPrefix(configs, choices, "stuck"))
                continue
            for ch, nc in succ:
                key = _dedup_key(nc, w, radius)
                nconfigs = configs + [nc]
                nchoices = choices + [ch]
                if key in keyidx:
                    j = keyidx[key]
                    lasso = _validate_lasso(m, nconfigs, nchoices, j,
                                            len(nconfigs) - 1)
                    status = "lassoed" if lasso else "failed"
                    runs.append(RunPrefix(nconfigs, nchoices, status, lasso))
                    continue
                if key in seen_global:
                    runs.append(RunPrefix(nconfigs, nchoices, "merged"))
                    continue
                seen_global.add(key)
                nkeyidx = dict(keyidx)
                nkeyidx[key] = len(nconfigs) - 1
                nxt_frontier.append((nconfigs, nchoices, nkeyidx))
        if len(nxt_frontier) > width:
            for configs, choices, _ in nxt_frontier[width:]:
                runs.append(RunPrefix(configs, choices, "cut"))
            nxt_frontier = nxt_frontier[:width]
        frontier = nxt_frontier
    for configs, choices, _ in frontier:
        runs.append(RunPrefix(configs, choices, "cut"))
    runs.sort(key=lambda r: (len(r.configs), [c._key() for c in r.configs]))
    return runs


def classify_run(r: RunPrefix) -> RunClass:
    """Classify from a validated lasso; everything else is unknown."""
    if r.lasso is None:
        return RunClass("unknown", "unknown", "unknown")
    if r.lasso.displacement > 0:
        return RunClass("yes", "no", "yes")
    return RunClass("no", "yes", "no")


@dataclass(frozen=True)
class Membership:
    kind: str  # "accepted" | "rejected_exhausted" | "unknown"
    run: Optional[RunPrefix] = None


def membership_semidecide(m: NdTmSpec, w: OmegaWord, fuel: int = 200,
                          width: int = 64,
                          radius: Optional[int] = None) -> Membership:
    """Search the run tree for an accepting run.

    accepted as soon as some branch pumps with positive displacement;
    rejected_exhausted only when the whole tree was exhausted and every
    branch ended stuck, merged, or in a certified zero-displacement lasso.
    """
    runs = explore_runs(m, w, fuel=fuel, width=width, radius=radius)
    for r in runs:
        if classify_run(r).accepting == "yes":
            return Membership("accepted", r)
    if all(r.status in ("stuck", "merged") or
           (r.status == "lassoed" and r.lasso.displacement == 0)
           for r in runs):
        return Membership("rejected_exhausted")
    return Membership("unknown")


def visit_stats(m: NdTmSpec, w: OmegaWord, steps: int) -> dict:
    """Brute-force statistics of the first-choice run prefix: per-position
    visit counts, the maximum visited position, and the run length."""
    c = NdConfig(w, m.initial, 0)
    counts: dict[int, int] = {}
    n = 0
    for _ in range(steps):
        counts[c.head] = counts.get(c.head, 0) + 1
        succ = _choices(m, c)
        if not succ:
            break
        c = succ[0][1]
        n += 1
    return {
        "visits": counts,
        "max_position": max(counts) if counts else 0,
        "max_revisit": max(counts.values()) if counts else 0,
        "steps": n,
    }
