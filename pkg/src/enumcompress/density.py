"""Priority construction filtering an enumeration A* into D against oracles.

Requirements P_0 > N_0 > P_1 > N_1 > ... watch lengths of agreement p_s(e)
and q_s(e) between the sets B, B*+D (B* on evens, D on odds) and A.  When a
value a enters A*, the least requirement with a below its agreement length
decides: a enters D exactly when that requirement is a P_e and a exceeds every
lower-priority q_s(i), i < e (vacuously -1 for e = 0).

Two oracle modes: rK (membership of one prefix in a functional's output set at
the other prefix) and K/C (stage-indexed complexity tables compared up to the
additive constant e).  Oracles are finite user-supplied families; every report
is relative to the supplied family, never a claim about all reductions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .traces import EnumerationTrace, parse_trace, raw_trace

MODE_RK = "rK"
MODE_K = "K"
MODE_C = "C"
MODES = (MODE_RK, MODE_K, MODE_C)


class ScenarioError(ValueError):
    """One or more scenario invariants are violated; lists all of them."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class OracleUndefined(LookupError):
    """An oracle table has no value at a point the construction needs."""


class CapExceeded(RuntimeError):
    """An agreement scan matched at the length cap, so the exact maximum is
    not determined within the cap."""


def bits(members, length):
    """The characteristic string of a set restricted below the length."""
    return "".join("1" if i in members else "0" for i in range(length))


@dataclass(frozen=True)
class FunctionalApprox:
    """A stage-indexed approximation of an rK-functional.

    entries are (stage, input, output) triples; the stage-t value at a string
    is the union of outputs declared at stages <= t (absent inputs give the
    empty set, the c.e. reading).
    """

    index: int
    bound: int = 1
    entries: tuple = ()

    def at(self, t, sigma):
        return {out for st, inp, out in self.entries if st <= t and inp == sigma}

    def validate(self, horizon):
        problems = []
        for st, inp, out in self.entries:
            if len(out) != len(inp):
                problems.append(
                    f"functional {self.index}: output {out!r} at input {inp!r} "
                    "has mismatched length"
                )
        domain = {inp for _, inp, _ in self.entries}
        for sigma in domain:
            vals = self.at(horizon, sigma)
            if len(vals) > self.bound:
                problems.append(
                    f"functional {self.index}: |value set at {sigma!r}| = {len(vals)} "
                    f"exceeds bound {self.bound}"
                )
        for sigma in domain:
            for tau in domain:
                if len(sigma) < len(tau) and tau.startswith(sigma):
                    shorts = self.at(horizon, sigma)
                    for long in self.at(horizon, tau):
                        if not any(long.startswith(s) for s in shorts):
                            problems.append(
                                f"functional {self.index}: {long!r} at {tau!r} has no "
                                f"prefix in the value set at {sigma!r}"
                            )
        return problems


@dataclass(frozen=True)
class ComplexityApprox:
    """A stage-indexed complexity table: entries (stage, input, value); the
    stage-t value at a string is the declaration with the largest stage <= t."""

    entries: tuple = ()

    def get(self, t, sigma):
        """The declared value, or None where the table is silent (a silent
        point witnesses nothing, so agreement comparisons treat it as a
        non-match rather than an error)."""
        best = None
        for st, inp, value in self.entries:
            if inp == sigma and st <= t and (best is None or st >= best[0]):
                best = (st, value)
        return None if best is None else best[1]

    def at(self, t, sigma):
        value = self.get(t, sigma)
        if value is None:
            raise OracleUndefined(f"complexity undefined at {sigma!r} (stage {t})")
        return value

    def validate(self):
        problems = []
        by_input = {}
        for st, inp, value in self.entries:
            by_input.setdefault(inp, []).append((st, value))
        for inp, decls in by_input.items():
            decls.sort()
            for (t0, v0), (t1, v1) in zip(decls, decls[1:]):
                if v1 > v0:
                    problems.append(
                        f"complexity at {inp!r} increases {v0} -> {v1} "
                        f"between stages {t0} and {t1}"
                    )
        return problems


@dataclass
class DensityState:
    """All inputs of a run plus the run's evolving outputs."""

    mode: str
    length_cap: int
    horizon: int
    b: EnumerationTrace
    bstar: EnumerationTrace
    a: EnumerationTrace
    astar: EnumerationTrace
    functionals: tuple = ()
    complexity: ComplexityApprox | None = None
    requirement_indices: tuple = ()
    d_events: list = field(default_factory=list)
    p_hist: dict = field(default_factory=dict)  # e -> [p_0(e), p_1(e), ...]
    q_hist: dict = field(default_factory=dict)
    log: list = field(default_factory=list)

    @property
    def indices(self):
        if self.requirement_indices:
            return self.requirement_indices
        if self.mode == MODE_RK:
            return tuple(sorted(f.index for f in self.functionals))
        return (0,)

    def d_members(self, stage):
        return frozenset(v for t, v in self.d_events if t <= stage)

    def d_trace(self):
        return raw_trace(tuple(self.d_events), self.horizon)


def _bstar_oplus_d(state, stage, length):
    """bits of B* oplus D (B* on evens, D on odds), matching oplus_k(k=2)."""
    bstar = state.bstar.members_at(stage)
    d = state.d_members(stage)
    merged = {2 * i for i in bstar} | {2 * j + 1 for j in d}
    return bits(merged, length)


def _match_length(state, e, t, side):
    """Largest l <= cap at which the side's stage-t agreement holds, 0 if none."""
    cap = state.length_cap
    best = 0
    for length in range(1, cap + 1):
        if side == "p":
            lhs = _bstar_oplus_d(state, t, length)
            rhs = bits(state.b.members_at(t), length)
        else:
            lhs = bits(state.a.members_at(t), length)
            rhs = _bstar_oplus_d(state, t, length)
        if state.mode == MODE_RK:
            fn = next((f for f in state.functionals if f.index == e), None)
            ok = fn is not None and lhs in fn.at(t, rhs)
        else:
            kl = state.complexity.get(t, lhs)
            kr = state.complexity.get(t, rhs)
            ok = kl is not None and kr is not None and kl <= kr + e
        if ok:
            best = length
    if best >= cap:
        raise CapExceeded(
            f"{side}_{{{t}}}({e}) agreement reached the length cap {cap}"
        )
    return best


def agreement_p(state: DensityState, e: int, s: int) -> int:
    """p_s(e): the largest l with B*+D|l in Phi_e(B|l) at some stage t <= s
    (rK mode), or the complexity comparison analogue (K/C mode)."""
    return max(_match_length(state, e, t, "p") for t in range(s + 1))


def agreement_q(state: DensityState, e: int, s: int) -> int:
    """q_s(e): the largest l with A|l in Phi_e(B*+D|l) at some stage t <= s."""
    return max(_match_length(state, e, t, "q") for t in range(s + 1))


def run_construction(state: DensityState, horizon: int | None = None):
    """Execute the priority construction through the horizon.

    Returns (D trace, {"p": p histories, "q": q histories}, action log).  The
    run is deterministic; re-running resets D, the histories and the log.
    """
    horizon = state.horizon if horizon is None else horizon
    if horizon > state.horizon:
        raise ScenarioError([f"requested horizon {horizon} beyond scenario horizon {state.horizon}"])
    astar_by_stage = {}
    for t, v in state.astar.events:
        astar_by_stage.setdefault(t, []).append(v)
    for t, vs in astar_by_stage.items():
        if len(vs) > 1:
            raise ScenarioError([f"A* enumerates {len(vs)} values at stage {t}; at most one allowed"])
    state.d_events.clear()
    state.log.clear()
    indices = sorted(set(state.indices))
    p = {e: _match_length(state, e, 0, "p") for e in indices}
    q = {e: _match_length(state, e, 0, "q") for e in indices}
    state.p_hist = {e: [p[e]] for e in indices}
    state.q_hist = {e: [q[e]] for e in indices}
    for s1 in range(1, horizon + 1):
        entered = astar_by_stage.get(s1, [])
        if entered:
            a = entered[0]
            chosen = None
            for e in indices:
                if a < p[e]:
                    chosen = (e, "P")
                    break
                if a < q[e]:
                    chosen = (e, "N")
                    break
            enumerated = False
            guard = None
            if chosen and chosen[1] == "P":
                e = chosen[0]
                guard = max((q[i] for i in indices if i < e), default=-1)
                if a > guard:
                    state.d_events.append((s1, a))
                    enumerated = True
            state.log.append(
                {
                    "stage": s1,
                    "value": a,
                    "requirement": f"{chosen[1]}{chosen[0]}" if chosen else None,
                    "guard": guard,
                    "enumerated": enumerated,
                }
            )
        for e in indices:
            p[e] = max(p[e], _match_length(state, e, s1, "p"))
            q[e] = max(q[e], _match_length(state, e, s1, "q"))
            state.p_hist[e].append(p[e])
            state.q_hist[e].append(q[e])
    return state.d_trace(), {"p": dict(state.p_hist), "q": dict(state.q_hist)}, list(state.log)


def _parse_functional(obj, problems):
    index = obj.get("index", 0)
    kind = obj.get("kind", "table")
    if kind == "empty":
        return FunctionalApprox(index, obj.get("bound", 1), ())
    if kind == "table":
        entries = tuple(
            (int(e["stage"]), str(e["input"]), str(e["output"]))
            for e in obj.get("entries", ())
        )
        return FunctionalApprox(index, obj.get("bound", 1), entries)
    problems.append(f"functional {index}: unknown kind {kind!r}")
    return FunctionalApprox(index, obj.get("bound", 1), ())


def load_scenario(source) -> DensityState:
    """Build and validate a DensityState from a JSON config (path, JSON text,
    or an already-parsed dict)."""
    if isinstance(source, dict):
        obj = source
    else:
        text = Path(source).read_text() if Path(str(source)).exists() else str(source)
        obj = json.loads(text)
    problems = []
    mode = obj.get("mode", MODE_RK)
    if mode not in MODES:
        problems.append(f"unknown mode {mode!r}")
    caps = obj.get("caps", {})
    length_cap = int(caps.get("length", 0))
    horizon = int(caps.get("horizon", 0))
    if length_cap < 1:
        problems.append("caps.length must be positive")
    if horizon < 0:
        problems.append("caps.horizon must be a natural")
    traces = {}
    for name in ("A", "Astar", "B", "Bstar"):
        text = obj.get("traces", {}).get(name, "")
        try:
            traces[name] = parse_trace(text) if text else raw_trace((), horizon)
        except Exception as exc:  # collect rather than abort
            problems.append(f"trace {name}: {exc}")
            traces[name] = raw_trace((), horizon)
    functionals = tuple(
        _parse_functional(f, problems) for f in obj.get("functionals", ())
    )
    for fn in functionals:
        problems.extend(fn.validate(horizon))
    complexity = None
    tables = obj.get("complexity_tables", {})
    if mode in (MODE_K, MODE_C):
        raw = tables.get(mode, tables.get("K", []))
        complexity = ComplexityApprox(
            tuple((int(e["stage"]), str(e["input"]), int(e["value"])) for e in raw)
        )
        problems.extend(complexity.validate())
        if not complexity.entries:
            problems.append(f"mode {mode} requires a complexity table")
    if problems:
        raise ScenarioError(problems)
    return DensityState(
        mode=mode,
        length_cap=length_cap,
        horizon=horizon,
        b=traces["B"],
        bstar=traces["Bstar"],
        a=traces["A"],
        astar=traces["Astar"],
        functionals=functionals,
        complexity=complexity,
        requirement_indices=tuple(obj.get("requirements", ())),
    )
