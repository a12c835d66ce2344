import { ApiError, GameApi } from "./api.js";
import { renderBoard } from "./board.js";
import { renderHint } from "./hintPanel.js";
import { caption, lossBanner, precheck, selectionSize } from "./rules.js";
import type { GameStatePayload, NewGameRequest } from "./types.js";

export interface AppController {
  newGame(req: NewGameRequest): Promise<void>;
  load(id: string): Promise<void>;
  refresh(): Promise<void>;
  toggle(n: number): void;
  clearSelection(): void;
  /** Pre-check the current selection, then submit it. */
  submitSelection(): Promise<void>;
  /** Submit raw numbers without the client pre-check; the server stays the
   * authority and its rule name is surfaced verbatim on rejection. */
  submitNumbers(numbers: number[]): Promise<void>;
  requestHint(): Promise<void>;
  state(): GameStatePayload | null;
  selection(): number[];
}

const els = (root: HTMLElement) => ({
  caption: root.querySelector<HTMLElement>(".caption")!,
  banner: root.querySelector<HTMLElement>(".banner")!,
  error: root.querySelector<HTMLElement>(".error-banner")!,
  board: root.querySelector<HTMLElement>(".board")!,
  hint: root.querySelector<HTMLElement>(".hint-panel")!,
  turn: root.querySelector<HTMLElement>(".turn")!,
});

function skeleton(root: HTMLElement): void {
  root.innerHTML = `
    <div class="caption"></div>
    <div class="banner" hidden></div>
    <div class="error-banner" hidden></div>
    <div class="turn"></div>
    <div class="board"></div>
    <div class="controls">
      <button type="button" class="submit">Submit move</button>
      <button type="button" class="clear">Clear</button>
      <button type="button" class="hint-btn">Hint</button>
    </div>
    <div class="hint-panel"></div>
  `;
}

function readFragment(): string | null {
  if (typeof window === "undefined") return null;
  const m = /#g=([0-9a-f]+)/.exec(window.location.hash);
  return m ? m[1] : null;
}

function writeFragment(id: string): void {
  if (typeof window !== "undefined") window.location.hash = `g=${id}`;
}

export function initApp(root: HTMLElement, api = new GameApi()): AppController {
  skeleton(root);
  const ui = els(root);
  let current: GameStatePayload | null = null;
  let picked = new Set<number>();

  function render(): void {
    if (!current) return;
    ui.caption.textContent = caption(current);
    const banner = lossBanner(current);
    ui.banner.hidden = banner === null;
    ui.banner.textContent = banner ?? "";
    const humanTurn =
      current.outcome === "ongoing" && current.to_move === current.human;
    ui.turn.textContent = humanTurn
      ? `your move — pick ${selectionSize(current)} number(s)`
      : current.outcome === "ongoing"
        ? "engine is thinking"
        : "";
    renderBoard(ui.board, current, picked, (n) => controller.toggle(n));
  }

  function showError(message: string): void {
    ui.error.hidden = false;
    ui.error.textContent = message;
  }

  function clearError(): void {
    ui.error.hidden = true;
    ui.error.textContent = "";
  }

  async function apply(action: () => Promise<GameStatePayload>): Promise<void> {
    try {
      current = await action();
      clearError();
    } catch (err) {
      if (err instanceof ApiError) {
        showError(`rejected: ${err.rule}`);
        return;
      }
      showError("server unreachable — retry");
      throw err;
    } finally {
      render();
    }
  }

  const controller: AppController = {
    async newGame(req) {
      const { id } = await api.newGame(req);
      writeFragment(id);
      picked = new Set();
      renderHint(ui.hint, null, false);
      await apply(() => api.getState(id));
    },

    async load(id) {
      picked = new Set();
      await apply(() => api.getState(id));
    },

    async refresh() {
      if (current) await apply(() => api.getState(current!.id));
    },

    toggle(n) {
      if (!current || current.outcome !== "ongoing") return;
      if (picked.has(n)) {
        picked.delete(n);
      } else {
        if (picked.size >= selectionSize(current)) picked.clear();
        picked.add(n);
      }
      render();
    },

    clearSelection() {
      picked.clear();
      render();
    },

    async submitSelection() {
      if (!current) return;
      const numbers = [...picked].sort((a, b) => a - b);
      const blocked = precheck(current, numbers);
      if (blocked) {
        showError(`blocked: ${blocked}`);
        return;
      }
      await controller.submitNumbers(numbers);
    },

    async submitNumbers(numbers) {
      if (!current) return;
      const id = current.id;
      picked = new Set();
      await apply(() => api.postMove(id, numbers));
    },

    async requestHint() {
      if (!current) return;
      const finished = current.outcome !== "ongoing";
      if (finished) {
        renderHint(ui.hint, null, true);
        return;
      }
      try {
        renderHint(ui.hint, await api.getHint(current.id), false);
      } catch {
        showError("hint unavailable — retry");
      }
    },

    state: () => current,
    selection: () => [...picked].sort((a, b) => a - b),
  };

  root
    .querySelector(".submit")!
    .addEventListener("click", () => void controller.submitSelection());
  root
    .querySelector(".clear")!
    .addEventListener("click", () => controller.clearSelection());
  root
    .querySelector(".hint-btn")!
    .addEventListener("click", () => void controller.requestHint());

  const existing = readFragment();
  if (existing) void controller.load(existing);
  return controller;
}
