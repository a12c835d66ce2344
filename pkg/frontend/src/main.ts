import { initApp } from "./app.js";
import type { NewGameRequest, Player, Variant } from "./types.js";

const form = document.getElementById("new-game") as HTMLFormElement | null;
const root = document.getElementById("app");

if (root) {
  const app = initApp(root);
  if (form) {
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      const data = new FormData(form);
      const req: NewGameRequest = {
        k: Number(data.get("k") ?? 3),
        variant: (data.get("variant") as Variant) ?? "reduced",
        human: (data.get("human") as Player) ?? "p2",
      };
      void app.newGame(req);
    });
  }
}
