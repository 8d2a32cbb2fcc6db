"""First-order rewriting on finite and rational terms.

The engine provides matching and single steps, deterministic strategies,
decidable normal-form checking on rational terms, and bounded breadth-first
search for normalization and reachability.  Reductions are recorded as
traces made of epochs: a finite run of steps optionally closed by one
omega-limit.  A limit is only ever attached together with a pump
certificate stating that the closing run wraps a fixed context forever at
strictly increasing depth; certificates can be revalidated independently.

Limit detection is sound but deliberately incomplete: a reduction that
converges without exhibiting a literal pump is reported as "no closure
found", never as a wrong limit.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from .terms import (
    PositionError, Signature, Symbol, Term, TermError, TermSyntaxError,
    bisim_equal, canon_key, cyclify, is_finite, is_ground, is_var,
    parse_term, print_term, replace_at, subterm_at, term_symbols,
    truncate_prefix, var, variables,
)

__all__ = [
    "Rule", "Trs", "TrsError", "NoMatchError", "Step", "PumpCertificate",
    "Closure", "Epoch", "Trace", "StrategyRun", "ClosureAttempt",
    "NormalizeResult", "ReachResult", "Reachability",
    "DEFAULT_DEPTH_BOUND", "DEFAULT_MAX_EPOCHS", "DEFAULT_FUEL",
    "match", "instantiate", "find_redexes", "first_redex", "apply_step",
    "is_normal_form", "run_strategy", "close_limit", "validate_certificate",
    "bounded_normalize", "bounded_reach", "step_reachability",
    "limit_approximant", "replay_trace", "parse_trs", "format_trs",
    "render_trace",
]

DEFAULT_DEPTH_BOUND = 32
DEFAULT_MAX_EPOCHS = 4
DEFAULT_FUEL = 10_000


class TrsError(TermError):
    """Bad rule, bad system, or a rewrite request that cannot be served."""


class NoMatchError(TrsError):
    """The named rule does not match at the requested (valid) position."""


@dataclass(frozen=True)
class Rule:
    """A rewrite rule lhs -> rhs; both sides are finite patterns."""

    rid: str
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if is_var(self.lhs):
            raise TrsError(f"rule {self.rid}: left-hand side is a variable")
        if not is_finite(self.lhs) or not is_finite(self.rhs):
            raise TrsError(f"rule {self.rid}: rule sides must be finite")
        missing = variables(self.rhs) - variables(self.lhs)
        if missing:
            raise TrsError(
                f"rule {self.rid}: rhs variables {sorted(missing)} not in lhs")


class Trs:
    """An ordered list of rules over a signature.

    Rule order is the tie-break order everywhere a choice must be
    deterministic.
    """

    def __init__(self, sig: Signature, rules: Iterable[Rule], name: str = "",
                 construction: str = ""):
        self.sig = sig
        self.rules: tuple[Rule, ...] = tuple(rules)
        self.name = name
        self.construction = construction
        self._by_id: dict[str, Rule] = {}
        self._by_root: dict = {}
        for r in self.rules:
            if r.rid in self._by_id:
                raise TrsError(f"duplicate rule id {r.rid}")
            self._by_id[r.rid] = r
            self._by_root.setdefault(r.lhs.label, []).append(r)
            for s in term_symbols(r.lhs) | term_symbols(r.rhs):
                if sig.get(s.name) != s:
                    raise TrsError(
                        f"rule {r.rid}: symbol {s!r} not declared in signature")

    def rule(self, rid: str) -> Rule:
        try:
            return self._by_id[rid]
        except KeyError:
            raise TrsError(f"no rule named {rid!r}") from None

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def without(self, *rids: str) -> "Trs":
        return Trs(self.sig, [r for r in self.rules if r.rid not in rids],
                   name=self.name, construction=self.construction)

    def __repr__(self):
        return f"<trs {self.name or '?'} {len(self.rules)} rules>"


def match(pattern: Term, subject: Term,
          binding: Optional[dict[str, Term]] = None) -> Optional[dict[str, Term]]:
    """First-order matching of a finite pattern against a term.

    Repeated pattern variables are compared with bisim_equal, so non-linear
    patterns work on rational subjects.
    """
    bnd = dict(binding) if binding else {}
    todo = [(pattern, subject)]
    while todo:
        p, s = todo.pop()
        if is_var(p):
            old = bnd.get(p.label)
            if old is None:
                bnd[p.label] = s
            elif not bisim_equal(old, s):
                return None
            continue
        if is_var(s) or p.label != s.label:
            return None
        todo.extend(zip(p.children, s.children))
    return bnd


def instantiate(pattern: Term, binding: dict[str, Term]) -> Term:
    """Build the instance of a finite pattern under a binding."""
    if is_var(pattern):
        return binding[pattern.label]
    if not pattern.children:
        return pattern
    return Term(pattern.label,
                tuple(instantiate(c, binding) for c in pattern.children))


def find_redexes(trs: Trs, t: Term, depth_bound: int) -> list[tuple[tuple[int, ...], str]]:
    """All (position, rule id) pairs with |position| <= depth_bound, in
    lexicographic position order, rule order within a position.

    The depth bound is mandatory because rational terms have infinitely
    many positions.
    """
    if depth_bound < 0:
        raise TrsError("depth_bound must be >= 0")
    out: list[tuple[tuple[int, ...], str]] = []
    stack: list[tuple[tuple[int, ...], Term]] = [((), t)]
    while stack:
        pos, node = stack.pop()
        if not is_var(node):
            for r in trs._by_root.get(node.label, ()):
                if match(r.lhs, node) is not None:
                    out.append((pos, r.rid))
            if len(pos) < depth_bound:
                for i in range(len(node.children), 0, -1):
                    stack.append((pos + (i,), node.children[i - 1]))
    return out


def first_redex(trs: Trs, t: Term, depth_bound: int) -> Optional[tuple[tuple[int, ...], str]]:
    """The first redex in find_redexes order, without materializing all."""
    stack: list[tuple[tuple[int, ...], Term]] = [((), t)]
    while stack:
        pos, node = stack.pop()
        if not is_var(node):
            for r in trs._by_root.get(node.label, ()):
                if match(r.lhs, node) is not None:
                    return (pos, r.rid)
            if len(pos) < depth_bound:
                for i in range(len(node.children), 0, -1):
                    stack.append((pos + (i,), node.children[i - 1]))
    return None


@dataclass(frozen=True)
class Step:
    """A single rewrite step at a recorded position."""

    position: tuple[int, ...]
    rule_id: str
    before: Term
    after: Term

    @property
    def depth(self) -> int:
        return len(self.position)


def apply_step(trs: Trs, t: Term, pos: tuple[int, ...], rule_id: str) -> Step:
    """Rewrite t at pos with the named rule; the position must match."""
    rule = trs.rule(rule_id)
    sub = subterm_at(t, tuple(pos))
    bnd = match(rule.lhs, sub)
    if bnd is None:
        raise NoMatchError(f"rule {rule_id} does not match at {list(pos)}")
    after = replace_at(t, tuple(pos), instantiate(rule.rhs, bnd))
    return Step(tuple(pos), rule_id, t, after)


def is_normal_form(trs: Trs, t: Term) -> bool:
    """Decide normality of a ground (finite or rational) term.

    A rational term has finitely many distinct nodes; a rule matches at
    some position iff it matches at one of them.
    """
    if not is_ground(t):
        raise TrsError("is_normal_form requires a ground term")
    seen: set[int] = set()
    stack = [t]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        for r in trs._by_root.get(n.label, ()):
            if match(r.lhs, n) is not None:
                return False
        stack.extend(n.children)
    return True


# ---------------------------------------------------------------------------
# Traces and omega-limits


@dataclass(frozen=True)
class PumpCertificate:
    """Evidence that a run of steps wraps a fixed context forever.

    From `cycle_start`, every `cycle_length` steps repeat the previous
    block shifted by `offset` below `hole`; the minimal step depth then
    grows by |offset| per iteration, which forces convergence.
    """

    cycle_start: int
    cycle_length: int
    hole: tuple[int, ...]
    offset: tuple[int, ...]
    context_growth: str
    min_depth_profile: tuple[int, ...]


@dataclass(frozen=True)
class Closure:
    limit: Term
    certificate: PumpCertificate


@dataclass(frozen=True)
class Epoch:
    """A finite run of steps, optionally closed by one omega-limit."""

    steps: tuple[Step, ...]
    closure: Optional[Closure] = None

    @property
    def end(self) -> Term:
        if self.closure is not None:
            return self.closure.limit
        if self.steps:
            return self.steps[-1].after
        raise TrsError("empty epoch has no end term")


@dataclass(frozen=True)
class Trace:
    """An ordinal-indexed reduction at desk scale: a tower of epochs."""

    start: Term
    epochs: tuple[Epoch, ...]

    @property
    def final(self) -> Term:
        for ep in reversed(self.epochs):
            if ep.closure is not None or ep.steps:
                return ep.end
        return self.start

    @property
    def all_steps(self) -> list[Step]:
        return [s for ep in self.epochs for s in ep.steps]

    @property
    def total_steps(self) -> int:
        return sum(len(ep.steps) for ep in self.epochs)

    @property
    def closures(self) -> int:
        return sum(1 for ep in self.epochs if ep.closure is not None)


@dataclass(frozen=True)
class ClosureAttempt:
    closure: Optional[Closure]
    diagnostics: dict


def _hole_context_str(u: Term, offset: tuple[int, ...]) -> str:
    return print_term(replace_at(u, offset, var("HOLE")))


def _try_pump(steps: list[Step], i: int, length: int) -> Optional[Closure]:
    """Validate the pump candidate starting at step i with the given cycle
    length, requiring the pattern to persist to the end of the run."""
    n = len(steps)
    if i + 2 * length > n:
        return None
    hole = steps[i].position
    for s in steps[i:]:
        hole = hole[:len(_common_prefix(hole, s.position))]
    rel = [s.position[len(hole):] for s in steps[i:]]
    base, shifted = rel[0], rel[length]
    if len(shifted) <= len(base) or shifted[len(shifted) - len(base):] != base:
        return None
    offset = shifted[:len(shifted) - len(base)]
    if not offset:
        return None
    for j in range(len(rel) - length):
        if steps[i + j + length].rule_id != steps[i + j].rule_id:
            return None
        if rel[j + length] != offset + rel[j]:
            return None
    t0 = steps[i].before
    t1 = steps[i + length].before
    try:
        seed = subterm_at(t0, hole)
        wrapped = subterm_at(t1, hole)
        reentry = subterm_at(wrapped, offset)
    except PositionError:
        return None
    if not bisim_equal(reentry, seed):
        return None
    if not bisim_equal(replace_at(t0, hole, wrapped), t1):
        return None
    profile = []
    for k in range(0, (n - i) // length):
        block = steps[i + k * length:i + (k + 1) * length]
        profile.append(min(s.depth for s in block))
    if any(b <= a for a, b in zip(profile, profile[1:])):
        return None
    limit = replace_at(t0, hole, cyclify(wrapped, offset))
    cert = PumpCertificate(
        cycle_start=i,
        cycle_length=length,
        hole=hole,
        offset=offset,
        context_growth=_hole_context_str(wrapped, offset),
        min_depth_profile=tuple(profile),
    )
    return Closure(limit, cert)


def _common_prefix(a: tuple, b: tuple) -> tuple:
    out = []
    for x, y in zip(a, b):
        if x != y:
            break
        out.append(x)
    return tuple(out)


def close_limit(steps: Iterable[Step], suffix_only: bool = False) -> ClosureAttempt:
    """Look for a certified pump in a chained run of steps.

    Returns the rational limit term and its certificate when the run is
    seen to wrap a fixed nonempty context at strictly increasing depth;
    otherwise returns no closure together with a bounded min-depth
    witness.  With ``suffix_only`` only pumps whose second iteration ends
    exactly at the last step are considered (used by the search, which
    retries at every node).
    """
    steps = list(steps)
    n = len(steps)
    for a, b in zip(steps, steps[1:]):
        if a.after is not b.before and not bisim_equal(a.after, b.before):
            raise TrsError("close_limit requires a chained run of steps")
    if n >= 2:
        if suffix_only:
            candidates = [(n - 2 * length, length) for length in range(1, n // 2 + 1)]
        else:
            candidates = [(i, length)
                          for i in range(n - 1)
                          for length in range(1, (n - i) // 2 + 1)]
        for i, length in candidates:
            got = _try_pump(steps, i, length)
            if got is not None:
                return ClosureAttempt(got, {})
    min_depth = min((s.depth for s in steps), default=0)
    witness = max((j for j, s in enumerate(steps) if s.depth == min_depth),
                  default=None)
    return ClosureAttempt(None, {
        "min_depth": min_depth,
        "min_depth_index": witness,
        "scanned_steps": n,
    })


def validate_certificate(epoch: Epoch) -> bool:
    """Recheck an epoch's closure against its own steps."""
    if epoch.closure is None:
        return True
    cert = epoch.closure.certificate
    redo = _try_pump(list(epoch.steps), cert.cycle_start, cert.cycle_length)
    if redo is None:
        return False
    prof = redo.certificate.min_depth_profile
    if any(b <= a for a, b in zip(prof, prof[1:])):
        return False
    return bisim_equal(redo.limit, epoch.closure.limit)


# ---------------------------------------------------------------------------
# Strategies


@dataclass(frozen=True)
class StrategyRun:
    trace: Trace
    fuel_exhausted: bool


def run_strategy(trs: Trs, t: Term, strategy: str = "leftmost-outermost",
                 fuel: int = DEFAULT_FUEL,
                 depth_bound: int = DEFAULT_DEPTH_BOUND,
                 seed: int = 0) -> StrategyRun:
    """Iterate one redex choice until no redex remains or fuel runs out.

    ``leftmost-outermost`` takes the first redex in find_redexes order;
    ``seeded-random`` draws uniformly from all redexes within the depth
    bound using the given seed.  Redexes whose contraction reproduces the
    current term (pure self-loops) are skipped: taking one forever makes
    no progress and would trap any position-first choice at the shallowest
    such rule.  Fuel exhaustion is a normal outcome and is flagged on the
    result.
    """
    if fuel < 0:
        raise TrsError("fuel must be >= 0")
    rng = None
    if strategy == "seeded-random":
        import random
        rng = random.Random(seed)
    elif strategy != "leftmost-outermost":
        raise TrsError(f"unknown strategy {strategy!r}")

    def productive(cur: Term) -> Optional[Step]:
        reds = find_redexes(trs, cur, depth_bound)
        steps = []
        for pos, rid in reds:
            st = apply_step(trs, cur, pos, rid)
            if not bisim_equal(st.after, st.before):
                if rng is None:
                    return st
                steps.append(st)
        if not steps:
            return None
        return rng.choice(steps)

    steps: list[Step] = []
    cur = t
    exhausted = False
    for k in range(fuel + 1):
        st = productive(cur)
        if st is None:
            break
        if k == fuel:
            exhausted = True
            break
        steps.append(st)
        cur = st.after
    return StrategyRun(Trace(t, (Epoch(tuple(steps)),)), exhausted)


# ---------------------------------------------------------------------------
# Bounded search


@dataclass
class _Node:
    term: Term
    steps: int
    closures: int
    parent: Optional["_Node"]
    via_step: Optional[Step]
    via_closure: Optional[Closure]
    epoch_len: int


_CLOSE_HISTORY_CAP = 512


def _epoch_steps(node: _Node) -> list[Step]:
    out: list[Step] = []
    cur: Optional[_Node] = node
    while cur is not None and cur.via_step is not None:
        out.append(cur.via_step)
        cur = cur.parent
        if len(out) > _CLOSE_HISTORY_CAP:
            return []
    out.reverse()
    return out


def _node_trace(node: _Node, start: Term) -> Trace:
    moves: list[tuple[Optional[Step], Optional[Closure]]] = []
    cur: Optional[_Node] = node
    while cur is not None and (cur.via_step or cur.via_closure):
        moves.append((cur.via_step, cur.via_closure))
        cur = cur.parent
    moves.reverse()
    epochs: list[Epoch] = []
    pending: list[Step] = []
    for st, cl in moves:
        if st is not None:
            pending.append(st)
        else:
            epochs.append(Epoch(tuple(pending), cl))
            pending = []
    epochs.append(Epoch(tuple(pending)))
    if len(epochs) > 1 and not epochs[-1].steps:
        epochs = epochs[:-1]
    return Trace(start, tuple(epochs))


@dataclass(frozen=True)
class NormalizeResult:
    found: bool
    trace: Optional[Trace]
    normal_form: Optional[Term]
    diagnostics: dict


@dataclass(frozen=True)
class ReachResult:
    reached: bool
    trace: Optional[Trace]
    diagnostics: dict


def _search(trs: Trs, start: Term, goal: Callable[[Term, str], bool],
            fuel: int, max_epochs: int, depth_bound: int):
    """Deterministic best-first search over (steps, closures), preferring
    fewer closures; ties broken by position-then-rule order.  States are
    memoized modulo bisimilarity via canonical keys."""
    if not is_ground(start):
        raise TrsError("search requires a ground start term")
    root = _Node(start, 0, 0, None, None, None, 0)
    heap: list[tuple[int, int, int, _Node]] = [(0, 0, 0, root)]
    seq = 1
    done: set[str] = set()
    expansions = 0
    deepest = root
    pending: Optional[_Node] = None  # goal reached via a fresh closure
    while heap and expansions < fuel:
        _, _, _, node = heapq.heappop(heap)
        if pending is not None and node.steps >= pending.steps:
            return pending, None
        key = canon_key(node.term)
        if key in done:
            continue
        done.add(key)
        expansions += 1
        if node.steps > deepest.steps:
            deepest = node
        if goal(node.term, key):
            return node, None
        for pos, rid in find_redexes(trs, node.term, depth_bound):
            st = apply_step(trs, node.term, pos, rid)
            child = _Node(st.after, node.steps + 1, node.closures,
                          node, st, None, node.epoch_len + 1)
            heapq.heappush(heap, (child.steps, child.closures, seq, child))
            seq += 1
            # Certified limits enter the frontier as soon as the pump is
            # visible, so a closing run is not starved by level breadth.
            if child.closures < max_epochs - 1 and child.epoch_len >= 2:
                hist = _epoch_steps(child)
                if len(hist) >= 2:
                    attempt = close_limit(hist, suffix_only=True)
                    if attempt.closure is not None:
                        cl = attempt.closure
                        lk = canon_key(cl.limit)
                        gchild = _Node(cl.limit, child.steps,
                                       child.closures + 1, child, None, cl, 0)
                        if lk not in done and goal(cl.limit, lk):
                            if pending is None or \
                                    (gchild.steps, gchild.closures) < \
                                    (pending.steps, pending.closures):
                                pending = gchild
                        else:
                            heapq.heappush(heap, (gchild.steps, gchild.closures,
                                                  seq, gchild))
                            seq += 1
    if pending is not None:
        return pending, None
    reason = "fuel" if heap else "frontier"
    diag = {
        "reason": reason,
        "expansions": expansions,
        "distinct_terms": len(done),
        "max_steps": deepest.steps,
    }
    trace = _node_trace(deepest, start)
    stable_depth = -1
    prefix = None
    for d in range(0, depth_bound + 1):
        approx = limit_approximant(trace, d)
        if not approx.stable:
            break
        stable_depth = d
        prefix = approx.prefix
    diag["stable_prefix_depth"] = stable_depth
    diag["stable_prefix"] = print_term(prefix) if prefix is not None else None
    return None, diag


def bounded_normalize(trs: Trs, t: Term, fuel: int = DEFAULT_FUEL,
                      max_epochs: int = DEFAULT_MAX_EPOCHS,
                      depth_bound: int = DEFAULT_DEPTH_BOUND) -> NormalizeResult:
    """Search for a normal form, branching on redex choice and on closing
    the current epoch with a certified omega-limit."""
    nf_cache: dict[str, bool] = {}

    def goal(term: Term, key: str) -> bool:
        got = nf_cache.get(key)
        if got is None:
            got = is_normal_form(trs, term)
            nf_cache[key] = got
        return got

    node, diag = _search(trs, t, goal, fuel, max_epochs, depth_bound)
    if node is None:
        return NormalizeResult(False, None, None, diag)
    return NormalizeResult(True, _node_trace(node, t), node.term, {})


def bounded_reach(trs: Trs, source: Term, target: Term,
                  fuel: int = DEFAULT_FUEL,
                  max_epochs: int = DEFAULT_MAX_EPOCHS,
                  depth_bound: int = DEFAULT_DEPTH_BOUND) -> ReachResult:
    """Same search as bounded_normalize with goal `current ~ target`."""
    if not is_ground(target):
        raise TrsError("reach target must be ground")
    tkey = canon_key(target)

    def goal(term: Term, key: str) -> bool:
        return key == tkey

    node, diag = _search(trs, source, goal, fuel, max_epochs, depth_bound)
    if node is None:
        return ReachResult(False, None, diag)
    return ReachResult(True, _node_trace(node, source), {})


@dataclass
class Reachability:
    """Plain step reachability (no closures): BFS distances and edges."""

    start: Term
    dist: dict[str, int]
    terms: dict[str, Term]
    edges: list[tuple[str, str, str]]
    frontier_exhausted: bool
    expansions: int


def step_reachability(trs: Trs, t: Term, fuel: int = DEFAULT_FUEL,
                      depth_bound: int = DEFAULT_DEPTH_BOUND) -> Reachability:
    """Breadth-first enumeration of the finite-step reduction graph."""
    from collections import deque
    if not is_ground(t):
        raise TrsError("search requires a ground start term")
    k0 = canon_key(t)
    dist = {k0: 0}
    terms = {k0: t}
    edges: list[tuple[str, str, str]] = []
    q = deque([t])
    expansions = 0
    while q and expansions < fuel:
        cur = q.popleft()
        ck = canon_key(cur)
        expansions += 1
        for pos, rid in find_redexes(trs, cur, depth_bound):
            st = apply_step(trs, cur, pos, rid)
            nk = canon_key(st.after)
            if nk not in dist:
                dist[nk] = dist[ck] + 1
                terms[nk] = st.after
                q.append(st.after)
            edges.append((ck, nk, rid))
    return Reachability(t, dist, terms, edges, not q, expansions)


# ---------------------------------------------------------------------------
# Convergence diagnostics


@dataclass(frozen=True)
class Approximant:
    stable: bool
    prefix: Optional[Term]
    witness: Optional[int]


def limit_approximant(trace: Trace, d: int) -> Approximant:
    """Check whether the recorded rewrite activity has left depth < d.

    Stable means that from some step onward every rewrite position has
    length >= d; on a finite record this holds iff the last step is at
    depth >= d (vacuously if there are no steps).  The stable value is the
    depth-d truncation of the final term; otherwise the witness is the
    last too-shallow step index.
    """
    steps = trace.all_steps
    shallow = [j for j, s in enumerate(steps) if s.depth < d]
    if shallow and shallow[-1] == len(steps) - 1:
        return Approximant(False, None, shallow[-1])
    return Approximant(True, truncate_prefix(trace.final, d), None)


def replay_trace(trs: Trs, trace: Trace) -> bool:
    """Re-apply every recorded step and closure; True iff all reproduce."""
    cur = trace.start
    for ep in trace.epochs:
        for st in ep.steps:
            if not bisim_equal(cur, st.before):
                return False
            redo = apply_step(trs, cur, st.position, st.rule_id)
            if not bisim_equal(redo.after, st.after):
                return False
            cur = st.after
        if ep.closure is not None:
            if not validate_certificate(ep):
                return False
            cur = ep.closure.limit
    return True


# ---------------------------------------------------------------------------
# TRS files and trace rendering


def format_trs(trs: Trs, header: Iterable[str] = ()) -> str:
    """Emit the file form: comments, one `sig` line, then rules in order."""
    lines = [f"# {h}" for h in header]
    syms = " ".join(f"{s.name}/{s.arity}" for s in trs.sig)
    if syms:
        lines.append(f"sig {syms}")
    for r in trs.rules:
        lines.append(f"rule {r.rid}: {print_term(r.lhs)} -> {print_term(r.rhs)}")
    return "\n".join(lines) + "\n"


_RULE_RE = re.compile(r"rule\s+(?P<rid>\S+)\s*:\s*(?P<lhs>.*?)->(?P<rhs>.*)$")
_SIG_ITEM_RE = re.compile(r"([A-Za-z0-9_][A-Za-z0-9_']*)/(\d+)")


def parse_trs(text: str, name: str = "") -> Trs:
    """Parse the TRS file format.

    `sig` lines are optional; without them, symbols are inferred from
    applied occurrences, and bare identifiers that occur at a lhs root or
    unbound on a rhs are promoted to constants.
    """
    sig = Signature()
    rule_lines: list[tuple[str, str, str, int]] = []
    construction = ""
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = re.match(r"#\s*construction:\s*(\S+)", line)
            if m:
                construction = m.group(1)
            continue
        if line.startswith("sig"):
            body = line[3:]
            for nm, ar in _SIG_ITEM_RE.findall(body):
                sig.declare(Symbol(nm, int(ar)))
            continue
        m = _RULE_RE.match(line)
        if not m:
            raise TermSyntaxError(f"bad TRS line: {raw!r}", ln, 1)
        rule_lines.append((m.group("rid"), m.group("lhs"), m.group("rhs"), ln))
    # Infer applied symbols when no sig declares them.
    for _, lhs, rhs, _ in rule_lines:
        for side in (lhs, rhs):
            for m in re.finditer(r"([A-Za-z0-9_][A-Za-z0-9_']*)\s*\(", side):
                nm = m.group(1)
                if nm != "rec" and nm not in sig:
                    depth, count, i = 0, 1, m.end()
                    while i < len(side):
                        ch = side[i]
                        if ch == "(":
                            depth += 1
                        elif ch == ")":
                            if depth == 0:
                                break
                            depth -= 1
                        elif ch == "," and depth == 0:
                            count += 1
                        i += 1
                    sig.declare(Symbol(nm, count))
    for _ in range(10):
        try:
            rules = []
            for rid, lhs, rhs, ln in rule_lines:
                lt = parse_term(lhs, sig)
                rt = parse_term(rhs, sig)
                rules.append(Rule(rid, lt, rt))
            return Trs(sig, rules, name=name, construction=construction)
        except TrsError as e:
            msg = str(e)
            m = re.search(r"left-hand side is a variable", msg)
            if m:
                rid = msg.split(":", 1)[0].split()[-1]
                for r, lhs, _, _ in rule_lines:
                    if r == rid:
                        nm = lhs.strip()
                        sig.declare(Symbol(nm, 0))
                        break
                continue
            m = re.search(r"rhs variables \['?([A-Za-z0-9_]+)'?", msg)
            if m:
                sig.declare(Symbol(m.group(1), 0))
                continue
            raise
    raise TrsError("could not infer a signature for the TRS file")


def _ordinal(epoch: int, i: int) -> str:
    if epoch == 0:
        return str(i)
    if epoch == 1:
        return f"w+{i}"
    return f"w*{epoch}+{i}"


def render_trace(trace: Trace, show_terms: bool = False) -> str:
    """Line-oriented trace: `<ordinal> @<dot-path> <rule-id>` per step,
    `omega-limit:` plus a certificate summary per closure."""
    lines = [f"start: {print_term(trace.start)}"]
    for e, ep in enumerate(trace.epochs):
        for i, st in enumerate(ep.steps):
            path = ".".join(str(p) for p in st.position) or "root"
            lines.append(f"{_ordinal(e, i)} @{path} {st.rule_id}")
            if show_terms:
                lines.append(f"    {print_term(st.after)}")
        if ep.closure is not None:
            cert = ep.closure.certificate
            lines.append(f"omega-limit: {print_term(ep.closure.limit)}")
            lines.append(
                f"    pump: start={cert.cycle_start} len={cert.cycle_length}"
                f" hole={list(cert.hole)} offset={list(cert.offset)}"
                f" context={cert.context_growth}"
                f" depths={list(cert.min_depth_profile)}")
    return "\n".join(lines)
