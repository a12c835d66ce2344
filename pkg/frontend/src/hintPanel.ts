import type { HintPayload } from "./types.js";

/** Render the hint panel: the strategy move, the configuration it answers,
 * and the engine's rationale string (verbatim — including the "no strategy
 * known; solver exploration only" notice for open cases). */
export function renderHint(
  root: HTMLElement,
  hint: HintPayload | null,
  finished: boolean,
): void {
  root.textContent = "";
  if (finished) {
    root.classList.add("disabled");
    root.textContent = "game over — hints disabled";
    return;
  }
  root.classList.remove("disabled");
  if (!hint) {
    root.textContent = "press Hint for the engine's suggestion";
    return;
  }
  const move = document.createElement("div");
  move.className = "hint-move";
  if (hint.move === null) {
    move.textContent = "no move suggested";
  } else {
    const numbers = Array.isArray(hint.move) ? hint.move : [hint.move];
    move.textContent = `suggested: {${numbers.join(", ")}}`;
  }
  root.appendChild(move);
  for (const cfg of hint.configurations) {
    const tag = document.createElement("span");
    tag.className = "hint-config";
    tag.textContent = `${cfg.pattern} at (${cfg.positions.join(", ")})`;
    root.appendChild(tag);
  }
  const why = document.createElement("div");
  why.className = "hint-rationale";
  why.textContent = hint.rationale;
  root.appendChild(why);
}
