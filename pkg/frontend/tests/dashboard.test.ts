// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { rawHitRates, renderDashboard } from "../src/dashboard.js";

/* Bodies below use the server's wire format: compact floats straight from
 * Python's json encoder, including the "1.0" spelling that JavaScript's
 * own number printing would collapse to "1". */

const RUNNING = JSON.stringify({
  studyId: "s1",
  perUser: {
    u1: { hits: 14, trials: 20, expectedTrials: 20, hitRate: 0.7 },
    u2: { hits: 0, trials: 0, expectedTrials: 20, hitRate: null },
  },
  overall: { hits: 14, trials: 20, expectedTrials: 40, hitRate: 0.7 },
  complete: false,
});

// JSON.stringify(1.0) gives "1", so splice the Python spelling in by hand.
const COMPLETE = RUNNING.replace(
  '"u2":{"hits":0,"trials":0,"expectedTrials":20,"hitRate":null}',
  '"u2":{"hits":20,"trials":20,"expectedTrials":20,"hitRate":1.0}',
)
  .replace(
    '"overall":{"hits":14,"trials":20,"expectedTrials":40,"hitRate":0.7}',
    '"overall":{"hits":34,"trials":40,"expectedTrials":40,"hitRate":0.8500000000000001}',
  )
  .replace('"complete":false', '"complete":true');

describe("rawHitRates", () => {
  it("returns the exact byte spans for each rate", () => {
    const rates = rawHitRates(COMPLETE);
    expect(rates.perUser.u1).toBe("0.7");
    expect(rates.perUser.u2).toBe("1.0");
    expect(rates.overall).toBe("0.8500000000000001");
  });

  it("would disagree with JavaScript's own float printing", () => {
    const rates = rawHitRates(COMPLETE);
    const parsed = JSON.parse(COMPLETE);
    expect(String(parsed.perUser.u2.hitRate)).toBe("1");
    expect(rates.perUser.u2).toBe("1.0");
  });

  it("keeps a null rate as the literal token", () => {
    const rates = rawHitRates(RUNNING);
    expect(rates.perUser.u2).toBe("null");
    expect(rates.perUser.u1).toBe("0.7");
  });

  it("handles pretty-printed bodies too", () => {
    const pretty = JSON.stringify(JSON.parse(RUNNING), null, 2).replace(
      '"hitRate": 0.7',
      '"hitRate": 0.7',
    );
    const rates = rawHitRates(pretty);
    expect(rates.overall).toBe("0.7");
    expect(rates.perUser.u2).toBe("null");
  });
});

describe("renderDashboard", () => {
  function mount(text: string) {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const api = {
      reportRaw: async () => ({ text, report: JSON.parse(text) }),
    };
    const view = renderDashboard(root, api);
    return { root, view };
  }

  it("shows hit rates exactly as the API spelled them", async () => {
    const { root, view } = mount(COMPLETE);
    await view.load("s1");
    const cells = new Map(
      Array.from(root.querySelectorAll<HTMLElement>(".hit-rate")).map((c) => [
        c.dataset.user,
        c.textContent,
      ]),
    );
    expect(cells.get("u1")).toBe("0.7");
    expect(cells.get("u2")).toBe("1.0");
    expect(cells.get("overall")).toBe("0.8500000000000001");
    expect(root.textContent).toContain("Study s1 is complete.");
  });

  it("shows n/a for users with no trials yet", async () => {
    const { root, view } = mount(RUNNING);
    await view.load("s1");
    const u2 = root.querySelector<HTMLElement>('.hit-rate[data-user="u2"]');
    expect(u2?.textContent).toBe("n/a");
    expect(root.textContent).toContain("still running");
  });

  it("shows counts from the parsed report", async () => {
    const { root, view } = mount(RUNNING);
    await view.load("s1");
    const firstRow = root.querySelector("tbody tr")!;
    const texts = Array.from(firstRow.cells).map((c) => c.textContent);
    expect(texts).toEqual(["u1", "14", "20", "20", "0.7"]);
  });

  it("surfaces request errors instead of a stale table", async () => {
    const root = document.createElement("div");
    const api = {
      reportRaw: async () => {
        throw new Error("404: no such study: s9");
      },
    };
    const view = renderDashboard(root, api);
    await view.load("s9");
    expect(root.textContent).toContain("no such study");
    expect(root.querySelectorAll("td")).toHaveLength(0);
  });
});
