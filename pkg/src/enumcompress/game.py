"""The k-even positional game and its reduced variant.

Each round player-1 picks k fresh numbers R; player-2 must answer with a fresh
even number inside [min R, max R] or lose.  In the reduced variant player-1
picks evens, player-2 may only answer with numbers player-1 has chosen (the
current round's R included), and answering with two evens that differ by
exactly 2 loses immediately.  The module provides legality, hand-crafted
winning strategies for player-1 (k in {2, 3}), configuration detection, a
horizon-bounded minimax solver, and interactive play sessions.
"""

from __future__ import annotations

import itertools
import threading
import uuid
from dataclasses import dataclass, field, replace
from random import Random

EVEN = "even"
REDUCED = "reduced"
P1 = "p1"
P2 = "p2"
ONGOING = "ongoing"
P1_WINS = "p1_wins"
P2_SURVIVED = "p2_survived"

SPACING_RADIUS = 6  # fresh strategy numbers keep this distance from the board


class IllegalMove(ValueError):
    """A move that violates a game rule; .rule names the violated rule."""

    def __init__(self, rule, detail=""):
        super().__init__(f"{rule}: {detail}" if detail else rule)
        self.rule = rule


class StrategyError(RuntimeError):
    """The strategy found no applicable configuration (should not occur)."""


class BudgetExceeded(RuntimeError):
    def __init__(self, explored):
        super().__init__(f"solver budget exceeded after {explored} nodes")
        self.explored = explored


@dataclass(frozen=True)
class GameConfig:
    k: int = 3
    variant: str = REDUCED
    max_rounds: int = 8
    universe_bound: int | None = None

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if self.variant not in (EVEN, REDUCED):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be positive")


@dataclass(frozen=True)
class GameState:
    p1_chosen: frozenset = frozenset()
    p2_chosen: frozenset = frozenset()
    history: tuple = ()  # completed or pending rounds: (R tuple, reply or None)
    to_move: str = P1
    outcome: str = ONGOING

    @property
    def pending_r(self):
        """The current round's R while player-2 is to move, else None."""
        if self.history and self.history[-1][1] is None and self.outcome == ONGOING:
            return self.history[-1][0]
        return None

    @property
    def rounds_played(self):
        return len(self.history)

    @property
    def last_reply(self):
        for r, reply in reversed(self.history):
            if reply is not None:
                return reply
        return None


def start_state() -> GameState:
    return GameState()


def _p2_replies(state: GameState, config: GameConfig, r):
    lo, hi = min(r), max(r)
    replies = []
    for n in range(lo + (lo % 2), hi + 1, 2):
        if n in state.p2_chosen:
            continue
        if config.variant == REDUCED and n not in state.p1_chosen:
            continue
        replies.append(n)
    return replies


def legal_moves(state: GameState, config: GameConfig):
    """All legal moves for the side to move.

    Player-1 moves are k-subsets of fresh numbers below the enumeration bound
    (config.universe_bound, else just past the board plus the spacing radius);
    player-2 moves are single numbers.
    """
    if state.outcome != ONGOING:
        return []
    if state.to_move == P2:
        return _p2_replies(state, config, state.pending_r)
    bound = config.universe_bound
    if bound is None:
        board = state.p1_chosen | state.p2_chosen
        bound = (max(board) if board else 0) + 4 * SPACING_RADIUS
    pool = [
        n
        for n in range(bound)
        if n not in state.p1_chosen
        and (config.variant == EVEN or n % 2 == 0)
    ]
    return [tuple(c) for c in itertools.combinations(pool, config.k)]


def apply_move(state: GameState, config: GameConfig, move) -> GameState:
    """Validate and apply one move; loss conditions are evaluated immediately
    after each player-2 reply, and stuck-ness at reply time."""
    if state.outcome != ONGOING:
        raise IllegalMove("finished", "the game is over")
    if state.to_move == P1:
        try:
            r = tuple(sorted(set(int(n) for n in move)))
        except TypeError:
            raise IllegalMove("move-shape", "player-1 moves are sets of numbers")
        if len(r) != config.k:
            raise IllegalMove("move-size", f"player-1 must pick {config.k} distinct numbers")
        if any(n < 0 for n in r):
            raise IllegalMove("not-natural", "picks must be naturals")
        if config.variant == REDUCED and any(n % 2 for n in r):
            raise IllegalMove("parity", "reduced-variant player-1 picks must be even")
        stale = [n for n in r if n in state.p1_chosen]
        if stale:
            raise IllegalMove("not-fresh", f"player-1 already chose {stale[0]}")
        nxt = replace(
            state,
            p1_chosen=state.p1_chosen | set(r),
            history=state.history + ((r, None),),
            to_move=P2,
        )
        if not _p2_replies(nxt, config, r):
            return replace(nxt, outcome=P1_WINS)
        return nxt
    n = int(move)
    r = state.pending_r
    if n % 2:
        raise IllegalMove("parity", "player-2 replies must be even")
    if not min(r) <= n <= max(r):
        raise IllegalMove("span", f"reply must lie in [{min(r)}, {max(r)}]")
    if n in state.p2_chosen:
        raise IllegalMove("not-fresh", f"player-2 already chose {n}")
    if config.variant == REDUCED and n not in state.p1_chosen:
        raise IllegalMove("not-p1-chosen", "reduced-variant replies must be player-1 picks")
    p2 = state.p2_chosen | {n}
    nxt = replace(
        state,
        p2_chosen=p2,
        history=state.history[:-1] + ((r, n),),
        to_move=P1,
    )
    if config.variant == REDUCED and (n - 2 in p2 or n + 2 in p2):
        return replace(nxt, outcome=P1_WINS)
    if len(nxt.history) >= config.max_rounds:
        return replace(nxt, outcome=P2_SURVIVED)
    return nxt


@dataclass(frozen=True)
class Configuration:
    """A letter pattern on the board: X both-chosen, O player-1 only, T the
    current round's picks awaiting a reply."""

    pattern: str
    positions: tuple
    spaced: bool = True


def _has_space(state: GameState, positions):
    board = state.p1_chosen | state.p2_chosen
    for p in positions:
        for e in range(max(0, p - SPACING_RADIUS), p + SPACING_RADIUS + 1, 2):
            if e in board and e not in positions:
                return False
    return True


def detect_configurations(state: GameState) -> list[Configuration]:
    """All X, XX and XOX patterns over player-1's picks in increasing order,
    plus the pending T letters; adjacency in a pattern means no player-1 pick
    lies strictly between."""
    pending = set(state.pending_r or ())
    letters = []
    for p in sorted(state.p1_chosen):
        if p in pending:
            letters.append(("T", p))
        elif p in state.p2_chosen:
            letters.append(("X", p))
        else:
            letters.append(("O", p))
    out = []
    for i, (a, p) in enumerate(letters):
        if a == "X":
            out.append(Configuration("X", (p,), _has_space(state, (p,))))
        if i + 1 < len(letters):
            b, q = letters[i + 1]
            if a == b == "X":
                out.append(Configuration("XX", (p, q), _has_space(state, (p, q))))
        if i + 2 < len(letters):
            b, q = letters[i + 1]
            c, w = letters[i + 2]
            if (a, b, c) == ("X", "O", "X"):
                out.append(Configuration("XOX", (p, q, w), _has_space(state, (p, q, w))))
    return out


def _fresh(state, numbers, parity_even=True):
    return all(
        n >= 0 and n not in state.p1_chosen and (not parity_even or n % 2 == 0)
        for n in numbers
    )


def _killer_move(state: GameState, config: GameConfig):
    """A one-round kill: a legal player-1 move whose every reply loses at once
    (reduced adjacency), or which leaves player-2 stuck."""
    if not state.p2_chosen:
        return None
    lo = max(0, min(state.p2_chosen) - SPACING_RADIUS)
    hi = max(state.p2_chosen) + SPACING_RADIUS
    pool = [
        n
        for n in range(lo + (lo % 2), hi + 1, 2)
        if n not in state.p1_chosen
    ]
    for r in itertools.combinations(pool, config.k):
        probe = replace(
            state,
            p1_chosen=state.p1_chosen | set(r),
            history=state.history + ((tuple(r), None),),
            to_move=P2,
        )
        replies = _p2_replies(probe, config, r)
        if all(n - 2 in state.p2_chosen or n + 2 in state.p2_chosen for n in replies):
            return tuple(r)
    return None


def _opening_move(state: GameState, k: int):
    """k fresh evens spaced far from each other and from the whole board."""
    board = state.p1_chosen | state.p2_chosen
    if not board:
        base = 16
    else:
        base = max(board) + 2 * SPACING_RADIUS
        base += base % 2
    step = 2 * SPACING_RADIUS + 4
    return tuple(base + step * i for i in range(k))


def p1_strategy_reduced(state: GameState, config: GameConfig | None = None):
    """Player-1's winning strategy in the reduced game (k = 3).

    Priority: a verified one-round kill (covers the XX configuration); the
    T1 X1 O1 T2 X2 T3 move on XOX; the T1 X T2 T3 move on a spaced X; a spaced
    opening otherwise.
    """
    config = config or GameConfig(variant=REDUCED)
    if state.outcome != ONGOING or state.to_move != P1:
        raise StrategyError("player-1 is not to move")
    kill = _killer_move(state, config)
    if kill:
        return kill
    configs = detect_configurations(state)
    for c in configs:
        if c.pattern == "XOX":
            x1, o, x2 = c.positions
            move = (x1 - 2, x2 - 2, x2 + 2)
            if o < x2 - 2 and _fresh(state, move):
                return move
    for c in configs:
        if c.pattern == "X" and c.spaced:
            x = c.positions[0]
            move = (x - 6, x + 6, x + 12)
            if _fresh(state, move):
                return move
    if not state.p1_chosen and not state.p2_chosen:
        return _opening_move(state, config.k)
    return _opening_move(state, config.k)


def _k2_strategy(state: GameState, config: GameConfig):
    """Player-1's win in the 2-even game: pin an even n with {n+1, n+2}, then
    strand player-2 between his own picks with {n+1, n+3}."""
    for n in sorted(state.p2_chosen):
        if n + 2 in state.p2_chosen and _fresh(state, (n + 1, n + 3), parity_even=False):
            return (n + 1, n + 3)
    for n in sorted(state.p2_chosen):
        if n + 2 not in state.p2_chosen and _fresh(state, (n + 1, n + 2), parity_even=False):
            return (n + 1, n + 2)
    board = state.p1_chosen | state.p2_chosen
    base = 0 if not board else max(board) + 2 * SPACING_RADIUS
    base += base % 2
    return (base, base + 1)


def p1_strategy_even(state: GameState, config: GameConfig | None = None):
    """Player-1's winning strategy in the k-even game for k in {2, 3}.

    For k = 3: if player-2's last reply n was never a player-1 pick, answer
    {n-1, n, n+1}; if player-2 holds adjacent evens n, n+2 (both player-1
    picks) with n-1, n+1, n+3 free, answer {n-1, n+1, n+3}; otherwise play the
    reduced-game strategy verbatim.
    """
    config = config or GameConfig(variant=EVEN)
    if state.outcome != ONGOING or state.to_move != P1:
        raise StrategyError("player-1 is not to move")
    if config.k == 2:
        return _k2_strategy(state, config)
    last = state.last_reply
    if last is not None and last not in state.p1_chosen:
        move = (last - 1, last, last + 1)
        if _fresh(state, move, parity_even=False):
            return move
    for n in sorted(state.p2_chosen):
        if (
            n + 2 in state.p2_chosen
            and n in state.p1_chosen
            and n + 2 in state.p1_chosen
            and _fresh(state, (n - 1, n + 1, n + 3), parity_even=False)
        ):
            return (n - 1, n + 1, n + 3)
    return p1_strategy_reduced(state, replace(config, variant=REDUCED))


@dataclass(frozen=True)
class SolveResult:
    status: str  # "p1_wins_within" or "p2_survives"
    depth: int | None
    explored: int
    line: tuple = ()  # one principal line of (R, reply) pairs when p1 wins


def solve(config: GameConfig, state: GameState | None = None, budget: int = 2_000_000):
    """Horizon-bounded exact minimax over [0, universe_bound).

    Reports the least number of further rounds within which player-1 can force
    a win, or that player-2 survives every line up to max_rounds.  This is
    never an answer about the unbounded game: surviving the horizon is not
    winning it.
    """
    if config.universe_bound is None:
        raise ValueError("solver requires universe_bound")
    state = state or start_state()
    memo = {}
    counter = [0]
    inf = config.max_rounds + 1

    def p1_value(st, rounds_left):
        # least rounds p1 needs from here (p1 to move), inf if > rounds_left
        if st.outcome == P1_WINS:
            return 0
        if st.outcome != ONGOING or rounds_left == 0:
            return inf
        key = (st.p1_chosen, st.p2_chosen, rounds_left)
        if key in memo:
            return memo[key]
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceeded(counter[0])
        best = inf
        moves = sorted(legal_moves(st, config), key=lambda r: (max(r) - min(r), min(r)))
        for r in moves:
            mid = apply_move(st, config, r)
            if mid.outcome == P1_WINS:
                best = 1
                break
            worst = 0
            for reply in legal_moves(mid, config):
                after = apply_move(mid, config, reply)
                worst = max(worst, p1_value(after, rounds_left - 1))
                if worst >= best:  # cannot improve on the current best
                    break
            best = min(best, 1 + worst if worst < inf else inf)
            if best == 1:
                break
        memo[key] = best
        return best

    rounds_left = config.max_rounds - state.rounds_played
    depth = p1_value(state, rounds_left)
    if depth > config.max_rounds:
        return SolveResult("p2_survives", None, counter[0])
    # reconstruct one principal line
    line = []
    st, left = state, rounds_left
    while st.outcome == ONGOING and left > 0:
        moves = sorted(legal_moves(st, config), key=lambda r: (max(r) - min(r), min(r)))
        target = p1_value(st, left)
        for r in moves:
            mid = apply_move(st, config, r)
            if mid.outcome == P1_WINS:
                if target == 1:
                    line.append((r, None))
                    st = mid
                break
            worst = max(
                (p1_value(apply_move(mid, config, n), left - 1) for n in legal_moves(mid, config)),
                default=0,
            )
            if worst < inf and 1 + worst == target:
                reply = max(
                    legal_moves(mid, config),
                    key=lambda n: p1_value(apply_move(mid, config, n), left - 1),
                )
                line.append((r, reply))
                st = apply_move(mid, config, reply)
                break
        else:
            break
        left -= 1
        if st.outcome == P1_WINS:
            break
    return SolveResult("p1_wins_within", depth, counter[0], tuple(line))


# --- interactive sessions -------------------------------------------------

_registry = {}
_registry_lock = threading.Lock()


class SessionError(KeyError):
    pass


@dataclass
class Session:
    id: str
    config: GameConfig
    human: str  # "p1" or "p2"
    policy: str  # engine policy for the non-human side
    state: GameState = field(default_factory=start_state)
    rng: Random = field(default_factory=lambda: Random(0))
    lock: threading.Lock = field(default_factory=threading.Lock)


def _engine_move(session: Session):
    st, cfg = session.state, session.config
    if st.to_move == P1:
        if session.policy == "solver" and cfg.universe_bound is not None:
            result = solve(cfg, st)
            if result.status == "p1_wins_within" and result.line:
                return result.line[0][0]
        if cfg.variant == EVEN:
            return p1_strategy_even(st, cfg)
        return p1_strategy_reduced(st, cfg)
    replies = legal_moves(st, cfg)
    if session.policy == "solver" and cfg.universe_bound is not None:
        # prefer a reply the solver cannot refute within the horizon
        for n in replies:
            after = apply_move(st, cfg, n)
            if after.outcome == ONGOING:
                result = solve(cfg, after)
                if result.status == "p2_survives":
                    return n
        return replies[0]
    if session.policy == "random":
        return session.rng.choice(replies)
    # survival heuristic: avoid immediately losing replies when possible
    safe = [n for n in replies if apply_move(st, cfg, n).outcome == ONGOING]
    return (safe or replies)[0]


def _advance_engine(session: Session):
    engine = P2 if session.human == P1 else P1
    while session.state.outcome == ONGOING and session.state.to_move == engine:
        session.state = apply_move(session.state, session.config, _engine_move(session))


def new_session(config: GameConfig, human: str = P2, policy: str = "survival", seed: int = 0):
    if human not in (P1, P2):
        raise ValueError("human role must be 'p1' or 'p2'")
    sid = uuid.uuid4().hex[:12]
    session = Session(sid, config, human, policy, rng=Random(seed))
    with _registry_lock:
        _registry[sid] = session
    with session.lock:
        _advance_engine(session)
    return sid


def get_session(session_id: str) -> Session:
    with _registry_lock:
        if session_id not in _registry:
            raise SessionError(session_id)
        return _registry[session_id]


def get_state(session_id: str) -> GameState:
    return get_session(session_id).state


def submit_move(session_id: str, move) -> GameState:
    session = get_session(session_id)
    with session.lock:
        if session.state.outcome != ONGOING:
            raise IllegalMove("finished", "the game is over")
        if session.state.to_move != session.human:
            raise IllegalMove("wrong-turn", "it is not the human's turn")
        session.state = apply_move(session.state, session.config, move)
        _advance_engine(session)
        return session.state


def hint(session_id: str):
    """The engine's suggestion for the human side plus the configurations it
    sees, with a one-line rationale."""
    session = get_session(session_id)
    with session.lock:
        st, cfg = session.state, session.config
        configs = detect_configurations(st)
        if st.outcome != ONGOING:
            return {"move": None, "configurations": configs, "rationale": "the game is over"}
        if st.to_move == P1:
            move = p1_strategy_even(st, cfg) if cfg.variant == EVEN else p1_strategy_reduced(st, cfg)
            patterns = [c.pattern for c in configs] or ["empty board"]
            rationale = f"strategy move on {'/'.join(sorted(set(patterns)))}"
            return {"move": move, "configurations": configs, "rationale": rationale}
        replies = legal_moves(st, cfg)
        safe = [n for n in replies if apply_move(st, cfg, n).outcome == ONGOING]
        if safe:
            return {
                "move": safe[0],
                "configurations": configs,
                "rationale": "a reply that does not lose immediately",
            }
        return {
            "move": replies[0] if replies else None,
            "configurations": configs,
            "rationale": "every reply loses immediately",
        }
