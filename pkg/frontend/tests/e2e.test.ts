/** End-to-end tests against the real Python game server.  A jsdom document
 * hosts the single-page app; all state flows through the HTTP JSON API. */
import { spawn, type ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";
import { JSDOM } from "jsdom";
import { afterAll, beforeAll, beforeEach, describe, expect, it } from "vitest";

import { ApiError, GameApi } from "../src/api.js";
import { initApp, type AppController } from "../src/app.js";

const repoRoot = join(dirname(fileURLToPath(import.meta.url)), "..", "..");

let server: ChildProcess;
let base: string;

beforeAll(async () => {
  server = spawn("python3", ["-m", "enumcompress.cli", "serve", "--port", "0"], {
    cwd: repoRoot,
    stdio: ["ignore", "pipe", "inherit"],
  });
  base = await new Promise<string>((resolve, reject) => {
    let buffer = "";
    server.stdout!.on("data", (chunk: Buffer) => {
      buffer += chunk.toString();
      const m = /serving on (http:\/\/127\.0\.0\.1:\d+)/.exec(buffer);
      if (m) resolve(m[1]);
    });
    server.on("exit", (code) => reject(new Error(`server exited: ${code}`)));
    setTimeout(() => reject(new Error("server did not start")), 15_000);
  });
}, 20_000);

afterAll(() => {
  server.kill();
});

describe("game API", () => {
  it("rejects an odd move with the server's rule name verbatim", async () => {
    const api = new GameApi(base);
    const { id } = await api.newGame({ k: 3, variant: "reduced", human: "p2" });
    const err = await api.postMove(id, [17]).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).rule).toBe("parity");
    expect((err as ApiError).status).toBe(422);
  });

  it("404s on unknown sessions", async () => {
    const api = new GameApi(base);
    const err = await api.getState("0123456789ab").catch((e: unknown) => e);
    expect((err as ApiError).rule).toBe("unknown-session");
    expect((err as ApiError).status).toBe(404);
  });
});

describe("single-page app", () => {
  let app: AppController;
  let root: HTMLElement;

  beforeEach(() => {
    const dom = new JSDOM('<div id="app"></div>', { url: "http://localhost/" });
    (globalThis as Record<string, unknown>).document = dom.window.document;
    (globalThis as Record<string, unknown>).window = dom.window;
    (globalThis as Record<string, unknown>).HTMLElement = dom.window.HTMLElement;
    root = dom.window.document.getElementById("app")!;
    app = initApp(root, new GameApi(base));
  });

  it("plays a losing line as human p2 and shows the loss banner", async () => {
    await app.newGame({ k: 3, variant: "reduced", human: "p2" });
    let guard = 0;
    // always accept p1's smallest pending pick -- the scripted losing line
    while (app.state()!.outcome === "ongoing" && guard++ < 20) {
      const pending = app.state()!.pending_r!;
      app.toggle(pending[0]);
      await app.submitSelection();
    }
    const final = app.state()!;
    expect(final.outcome).toBe("p1_wins");
    const banner = root.querySelector<HTMLElement>(".banner")!;
    expect(banner.hidden).toBe(false);
    if (final.loss_pair) {
      const [a, b] = final.loss_pair;
      expect(b - a).toBe(2);
      expect(banner.textContent).toContain(`adjacent evens ${a} and ${b}`);
    } else {
      expect(banner.textContent).toContain("no legal reply");
    }
  }, 20_000);

  it("surfaces the server's parity rejection in the error banner", async () => {
    await app.newGame({ k: 3, variant: "reduced", human: "p2" });
    await app.submitNumbers([17]); // bypass the client pre-check
    const error = root.querySelector<HTMLElement>(".error-banner")!;
    expect(error.hidden).toBe(false);
    expect(error.textContent).toContain("parity");
    expect(app.state()!.outcome).toBe("ongoing");
  });

  it("pre-blocks an odd selection client-side", async () => {
    await app.newGame({ k: 3, variant: "reduced", human: "p2" });
    const pending = app.state()!.pending_r!;
    app.toggle(pending[0] + 1);
    await app.submitSelection();
    const error = root.querySelector<HTMLElement>(".error-banner")!;
    expect(error.textContent).toContain("parity");
  });

  it("renders X markers and highlights for both-chosen numbers", async () => {
    await app.newGame({ k: 3, variant: "reduced", human: "p2" });
    const pending = app.state()!.pending_r!;
    app.toggle(pending[0]);
    await app.submitSelection();
    const cells = root.querySelectorAll(".cell.mark-x");
    expect(cells.length).toBeGreaterThan(0);
  });

  it("shows the open-case hint notice for k = 4", async () => {
    await app.newGame({ k: 4, variant: "even", human: "p1" });
    await app.requestHint();
    const panel = root.querySelector<HTMLElement>(".hint-panel")!;
    expect(panel.textContent).toContain("no strategy known; solver exploration only");
  });

  it("reconstructs the identical board from the server on reload", async () => {
    await app.newGame({ k: 3, variant: "reduced", human: "p2" });
    const id = app.state()!.id;
    const before = JSON.stringify(app.state());
    await app.load(id);
    expect(JSON.stringify(app.state())).toBe(before);
  });
});
