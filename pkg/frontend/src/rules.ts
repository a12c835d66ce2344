import type { GameStatePayload } from "./types.js";

/** Margin beyond the largest involved number so "sufficient space" context is
 * always visible. */
export const BOARD_MARGIN = 8;
const MIN_BOARD = 24;

/** Inclusive upper end of the rendered number line. */
export function boardMax(state: GameStatePayload): number {
  const involved = [
    ...state.p1_chosen,
    ...state.p2_chosen,
    ...(state.pending_r ?? []),
  ];
  const top = involved.length ? Math.max(...involved) : 0;
  return Math.max(top + BOARD_MARGIN, MIN_BOARD);
}

export type Marker = "X" | "O" | "T" | "P2";

/** Marker vocabulary: X both players, O p1 only, T a pending p1 pick awaiting
 * p2's reply, P2 a p2-only pick (even variant). */
export function markerAt(state: GameStatePayload, n: number): Marker | null {
  const p1 = state.p1_chosen.includes(n);
  const p2 = state.p2_chosen.includes(n);
  if (p1 && p2) return "X";
  if (!p2 && (state.pending_r ?? []).includes(n)) return "T";
  if (p1) return "O";
  if (p2) return "P2";
  return null;
}

/** Pairs (n, n+2) of p2-held evens whose +2 neighbor is also held — the
 * positions one step from an adjacency loss. */
export function adjacencyRisks(state: GameStatePayload): [number, number][] {
  const held = new Set([...state.p1_chosen, ...state.p2_chosen]);
  const risks: [number, number][] = [];
  for (const n of state.p2_chosen) {
    if (n % 2 === 0 && held.has(n + 2)) risks.push([n, n + 2]);
  }
  return risks.sort((a, b) => a[0] - b[0]);
}

/** How many numbers the human must select on their turn. */
export function selectionSize(state: GameStatePayload): number {
  return state.to_move === "p1" ? state.k : 1;
}

/** Cheap client-side legality pre-check mirroring the server's rule names
 * where the rule is locally decidable; null means "send it to the server". */
export function precheck(
  state: GameStatePayload,
  selection: number[],
): string | null {
  if (selection.length !== selectionSize(state)) return "move-size";
  if (selection.some((n) => !Number.isInteger(n) || n < 0)) return "not-natural";
  const needsEven =
    state.to_move === "p2" || state.variant === "reduced";
  if (needsEven && selection.some((n) => n % 2 !== 0)) return "parity";
  if (state.to_move === "p2" && state.pending_r && state.pending_r.length) {
    const lo = Math.min(...state.pending_r);
    const hi = Math.max(...state.pending_r);
    if (selection.some((n) => n < lo || n > hi)) return "span";
  }
  return null;
}

/** Text for the outcome banner; null while the game is ongoing. */
export function lossBanner(state: GameStatePayload): string | null {
  if (state.outcome === "p1_wins") {
    if (state.loss_pair) {
      const [a, b] = state.loss_pair;
      return `Player 1 wins: player 2 holds the adjacent evens ${a} and ${b}.`;
    }
    return "Player 1 wins: player 2 has no legal reply.";
  }
  if (state.outcome === "p2_survived") {
    return `Player 2 survived all ${state.max_rounds} rounds.`;
  }
  return null;
}

/** One-line board caption. */
export function caption(state: GameStatePayload): string {
  return `${state.variant} game, k = ${state.k} — you play ${state.human}`;
}
