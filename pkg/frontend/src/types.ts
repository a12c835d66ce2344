export type Variant = "even" | "reduced";
export type Player = "p1" | "p2";
export type Outcome = "ongoing" | "p1_wins" | "p2_survived";

export interface Configuration {
  pattern: string;
  positions: number[];
  spaced: boolean;
}

export interface GameStatePayload {
  id: string;
  k: number;
  variant: Variant;
  max_rounds: number;
  human: Player;
  outcome: Outcome;
  to_move: Player;
  p1_chosen: number[];
  p2_chosen: number[];
  pending_r: number[] | null;
  history: { r: number[]; reply: number | null }[];
  configurations: Configuration[];
  loss_pair: number[] | null;
}

export interface HintPayload {
  move: number[] | number | null;
  configurations: Configuration[];
  rationale: string;
}

export interface NewGameRequest {
  k?: number;
  variant?: Variant;
  human?: Player;
  policy?: string;
  max_rounds?: number;
  universe?: number;
  seed?: number;
}
