import { describe, expect, it } from "vitest";

import {
  adjacencyRisks,
  boardMax,
  caption,
  lossBanner,
  markerAt,
  precheck,
  selectionSize,
} from "../src/rules.js";
import type { GameStatePayload } from "../src/types.js";

function state(overrides: Partial<GameStatePayload> = {}): GameStatePayload {
  return {
    id: "abc",
    k: 3,
    variant: "reduced",
    max_rounds: 8,
    human: "p2",
    outcome: "ongoing",
    to_move: "p2",
    p1_chosen: [],
    p2_chosen: [],
    pending_r: null,
    history: [],
    configurations: [],
    loss_pair: null,
    ...overrides,
  };
}

describe("boardMax", () => {
  it("is max involved number plus the margin", () => {
    const st = state({ p1_chosen: [10, 40], pending_r: [10, 40, 44] });
    expect(boardMax(st)).toBe(52);
  });

  it("has a floor for the empty board", () => {
    expect(boardMax(state())).toBe(24);
  });
});

describe("markerAt", () => {
  const st = state({
    p1_chosen: [8, 10, 14, 16],
    p2_chosen: [10, 14, 20],
    pending_r: [8, 16],
    variant: "even",
  });

  it("distinguishes X, O, T and p2-only", () => {
    expect(markerAt(st, 10)).toBe("X");
    expect(markerAt(st, 8)).toBe("T");
    expect(markerAt(st, 20)).toBe("P2");
    expect(markerAt(st, 12)).toBeNull();
  });

  it("marks non-pending p1 picks O", () => {
    const later = state({ p1_chosen: [8], pending_r: null });
    expect(markerAt(later, 8)).toBe("O");
  });
});

describe("adjacencyRisks", () => {
  it("flags a p2-held even next to a held neighbor", () => {
    const st = state({ p1_chosen: [10, 12, 14], p2_chosen: [10] });
    expect(adjacencyRisks(st)).toEqual([[10, 12]]);
  });

  it("is empty at gap 4", () => {
    const st = state({ p1_chosen: [10, 14], p2_chosen: [10, 14] });
    expect(adjacencyRisks(st)).toEqual([]);
  });

  it("flags both ends of a p2-held adjacent pair", () => {
    const st = state({ p1_chosen: [20, 22, 30], p2_chosen: [20, 22] });
    expect(adjacencyRisks(st)).toEqual([[20, 22]]);
  });
});

describe("precheck", () => {
  const p2turn = state({ pending_r: [8, 12, 16], to_move: "p2" });

  it("accepts a legal reply", () => {
    expect(precheck(p2turn, [12])).toBeNull();
  });

  it("blocks odd numbers with the parity rule name", () => {
    expect(precheck(p2turn, [13])).toBe("parity");
  });

  it("blocks out-of-interval replies with the span rule name", () => {
    expect(precheck(p2turn, [20])).toBe("span");
  });

  it("blocks wrong selection sizes", () => {
    expect(precheck(p2turn, [8, 12])).toBe("move-size");
    const p1turn = state({ to_move: "p1", human: "p1" });
    expect(selectionSize(p1turn)).toBe(3);
    expect(precheck(p1turn, [8, 12])).toBe("move-size");
    expect(precheck(p1turn, [8, 12, 16])).toBeNull();
  });
});

describe("lossBanner", () => {
  it("names the adjacent pair on an adjacency loss", () => {
    const st = state({ outcome: "p1_wins", loss_pair: [24, 26] });
    expect(lossBanner(st)).toContain("adjacent evens 24 and 26");
  });

  it("reports stuckness without a pair", () => {
    const st = state({ outcome: "p1_wins", loss_pair: null });
    expect(lossBanner(st)).toContain("no legal reply");
  });

  it("is null while ongoing and reports survival", () => {
    expect(lossBanner(state())).toBeNull();
    expect(lossBanner(state({ outcome: "p2_survived" }))).toContain("8 rounds");
  });
});

describe("caption", () => {
  it("shows variant, k and seat", () => {
    expect(caption(state())).toBe("reduced game, k = 3 — you play p2");
  });
});
