import { adjacencyRisks, boardMax, markerAt } from "./rules.js";
import type { GameStatePayload } from "./types.js";

/** Render the number line into `root`: even positions emphasized, X/O/T/P2
 * markers, configuration range highlights, adjacency-risk flags, and the
 * current (not yet submitted) selection. */
export function renderBoard(
  root: HTMLElement,
  state: GameStatePayload,
  selection: ReadonlySet<number>,
  onToggle: (n: number) => void,
): void {
  root.textContent = "";
  const top = boardMax(state);
  const risky = new Set(adjacencyRisks(state).flat());
  const highlights = new Map<number, string>();
  for (const cfg of state.configurations) {
    const lo = Math.min(...cfg.positions);
    const hi = Math.max(...cfg.positions);
    for (let n = lo; n <= hi; n += 1) {
      highlights.set(n, cfg.pattern.toLowerCase());
    }
  }
  for (let n = 0; n <= top; n += 1) {
    const cell = document.createElement("button");
    cell.type = "button";
    cell.className = "cell";
    cell.dataset.n = String(n);
    if (n % 2 === 0) cell.classList.add("even");
    const marker = markerAt(state, n);
    if (marker) {
      cell.classList.add(`mark-${marker.toLowerCase()}`);
      cell.textContent = marker === "P2" ? "o" : marker;
      cell.title = `${n}: ${marker}`;
    } else {
      cell.textContent = String(n);
    }
    const pattern = highlights.get(n);
    if (pattern) cell.classList.add(`cfg-${pattern}`);
    if (risky.has(n)) {
      cell.classList.add("risk");
      cell.title = `${n}: adjacency risk`;
    }
    if (selection.has(n)) cell.classList.add("selected");
    cell.addEventListener("click", () => onToggle(n));
    root.appendChild(cell);
  }
}
